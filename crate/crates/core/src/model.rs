//! Coin family of the two-phase walk and validated initial coin states.
//!
//! Sites `x >= 1` use `U+`, sites `x <= -1` use `U-`, and the origin carries the
//! fixed defect coin `diag(1, -1)`. Each coin splits into a left-moving part `P`
//! (top row) and a right-moving part `Q` (bottom row).

use std::f64::consts::{FRAC_1_SQRT_2, TAU};
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QwError, Result};

/// A coin state `(upper, lower)` attached to one lattice site.
pub type Spinor = [Complex64; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense 2x2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

/// Coins and the `P`/`Q` propagators share the matrix representation.
pub type CoinMatrix = Mat2;

impl Mat2 {
    pub const ZERO: Mat2 = Mat2([[ZERO, ZERO], [ZERO, ZERO]]);
    pub const IDENTITY: Mat2 = Mat2([[ONE, ZERO], [ZERO, ONE]]);

    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn scale(&self, k: Complex64) -> Self {
        let m = &self.0;
        Mat2([[m[0][0] * k, m[0][1] * k], [m[1][0] * k, m[1][1] * k]])
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Mat2([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn apply(&self, v: &Spinor) -> Spinor {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ]
    }

    /// Outer product of a column vector with a row vector.
    pub fn outer(col: Spinor, row: Spinor) -> Self {
        Mat2([
            [col[0] * row[0], col[0] * row[1]],
            [col[1] * row[0], col[1] * row[1]],
        ])
    }

    pub fn column(&self, j: usize) -> Spinor {
        [self.0[0][j], self.0[1][j]]
    }

    pub fn from_columns(c0: Spinor, c1: Spinor) -> Self {
        Mat2([[c0[0], c1[0]], [c0[1], c1[1]]])
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        (self.adjoint() * *self - Mat2::IDENTITY).max_abs() <= tol
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        Mat2([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        Mat2([
            [a[0][0] - b[0][0], a[0][1] - b[0][1]],
            [a[1][0] - b[1][0], a[1][1] - b[1][1]],
        ])
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        Mat2([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }
}

/// Reduce an angle to `[0, 2pi)`.
pub fn reduce_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// `sgn` with the convention `sgn(0) = +1`.
pub fn sgn(v: f64) -> f64 {
    if v >= 0.0 {
        1.0
    } else {
        -1.0
    }
}

/// Phase pair `(sigma_plus, sigma_minus)` of the two-phase coin family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCoinParameters", into = "RawCoinParameters")]
pub struct CoinParameters {
    sigma_plus: f64,
    sigma_minus: f64,
}

#[derive(Serialize, Deserialize)]
struct RawCoinParameters {
    sigma_plus: f64,
    sigma_minus: f64,
}

impl TryFrom<RawCoinParameters> for CoinParameters {
    type Error = QwError;
    fn try_from(raw: RawCoinParameters) -> Result<Self> {
        if !(raw.sigma_plus.is_finite() && raw.sigma_minus.is_finite()) {
            return Err(QwError::Domain("coin phases must be finite".into()));
        }
        Ok(CoinParameters::new(raw.sigma_plus, raw.sigma_minus))
    }
}

impl From<CoinParameters> for RawCoinParameters {
    fn from(p: CoinParameters) -> Self {
        RawCoinParameters {
            sigma_plus: p.sigma_plus,
            sigma_minus: p.sigma_minus,
        }
    }
}

impl CoinParameters {
    pub fn new(sigma_plus: f64, sigma_minus: f64) -> Self {
        CoinParameters {
            sigma_plus: reduce_angle(sigma_plus),
            sigma_minus: reduce_angle(sigma_minus),
        }
    }

    /// The one-defect model: the same coin on both half-lines.
    pub fn one_defect(sigma: f64) -> Self {
        Self::new(sigma, sigma)
    }

    /// `sigma_plus = 3pi/2`, `sigma_minus = pi`: the worked example with
    /// `U+ = [[1, -i], [i, -1]]/sqrt2` and `U- = [[1, -1], [-1, -1]]/sqrt2`.
    pub fn worked_example() -> Self {
        Self::new(1.5 * std::f64::consts::PI, std::f64::consts::PI)
    }

    pub fn sigma_plus(&self) -> f64 {
        self.sigma_plus
    }

    pub fn sigma_minus(&self) -> f64 {
        self.sigma_minus
    }

    /// Half phase difference `(sigma_plus - sigma_minus) / 2`.
    pub fn sigma(&self) -> f64 {
        0.5 * (self.sigma_plus - self.sigma_minus)
    }

    /// Half phase sum `(sigma_plus + sigma_minus) / 2`.
    pub fn sigma_tilde(&self) -> f64 {
        0.5 * (self.sigma_plus + self.sigma_minus)
    }
}

fn half_line_coin(phase: f64) -> Mat2 {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let e = Complex64::from_polar(1.0, phase);
    Mat2::new(h, h * e, h * e.conj(), -h)
}

/// Coin acting at site `x`; depends on `x` only through its sign.
pub fn coin_at(params: &CoinParameters, x: i64) -> CoinMatrix {
    let (p, q) = propagators_at(params, x);
    p + q
}

/// Left (`P`, top row) and right (`Q`, bottom row) movers at site `x`.
pub fn propagators_at(params: &CoinParameters, x: i64) -> (CoinMatrix, CoinMatrix) {
    let u = match x.signum() {
        1 => half_line_coin(params.sigma_plus),
        -1 => half_line_coin(params.sigma_minus),
        _ => Mat2::new(ONE, ZERO, ZERO, -ONE),
    };
    let m = u.0;
    (
        Mat2([[m[0][0], m[0][1]], [ZERO, ZERO]]),
        Mat2([[ZERO, ZERO], [m[1][0], m[1][1]]]),
    )
}

/// Initial coin state `(alpha, beta)` with its polar decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialState {
    alpha: Complex64,
    beta: Complex64,
    a: f64,
    b: f64,
    phi1: f64,
    phi2: f64,
}

impl InitialState {
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        make_initial_state(alpha, beta)
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn phi1(&self) -> f64 {
        self.phi1
    }

    pub fn phi2(&self) -> f64 {
        self.phi2
    }

    /// `phi1 - phi2`.
    pub fn phi12_tilde(&self) -> f64 {
        self.phi1 - self.phi2
    }

    pub fn spinor(&self) -> Spinor {
        [self.alpha, self.beta]
    }
}

/// Tolerance on `|alpha|^2 + |beta|^2 - 1` accepted before renormalising.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Validate and renormalise `(alpha, beta)`.
///
/// Inputs whose squared norm deviates from one by more than [`NORM_TOLERANCE`]
/// are rejected as a domain error; a vanishing state is a `ZeroState` error.
pub fn make_initial_state(alpha: Complex64, beta: Complex64) -> Result<InitialState> {
    let norm_sq = alpha.norm_sqr() + beta.norm_sqr();
    if !norm_sq.is_finite() {
        return Err(QwError::Domain("initial amplitudes must be finite".into()));
    }
    if norm_sq < 1e-12 {
        return Err(QwError::ZeroState { norm_sq });
    }
    if (norm_sq - 1.0).abs() > NORM_TOLERANCE {
        return Err(QwError::Domain(format!(
            "|alpha|^2 + |beta|^2 = {norm_sq} is not within {NORM_TOLERANCE:e} of 1"
        )));
    }
    let scale = norm_sq.sqrt().recip();
    let (alpha, beta) = (alpha * scale, beta * scale);
    let (a, phi1) = polar(alpha);
    let (b, phi2) = polar(beta);
    Ok(InitialState {
        alpha,
        beta,
        a,
        b,
        phi1,
        phi2,
    })
}

fn polar(z: Complex64) -> (f64, f64) {
    if z == ZERO {
        (0.0, 0.0)
    } else {
        z.to_polar()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: &Mat2, b: &Mat2, tol: f64) -> bool {
        (*a - *b).max_abs() <= tol
    }

    #[test]
    fn worked_example_plus_coin() {
        let p = CoinParameters::worked_example();
        let h = FRAC_1_SQRT_2;
        let want = Mat2::new(c(h, 0.0), c(0.0, -h), c(0.0, h), c(-h, 0.0));
        assert!(close(&coin_at(&p, 1), &want, 1e-15));
        let want_minus = Mat2::new(c(h, 0.0), c(-h, 0.0), c(-h, 0.0), c(-h, 0.0));
        assert!(close(&coin_at(&p, -1), &want_minus, 1e-15));
    }

    #[test]
    fn origin_coin_is_defect() {
        for &(sp, sm) in &[(0.0, 0.0), (1.3, 4.2), (1.5 * PI, PI)] {
            let u = coin_at(&CoinParameters::new(sp, sm), 0);
            assert_eq!(u, Mat2::new(ONE, ZERO, ZERO, -ONE));
        }
    }

    #[test]
    fn zero_phase_is_hadamard() {
        let h = FRAC_1_SQRT_2;
        let want = Mat2::new(c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0));
        assert!(close(&coin_at(&CoinParameters::new(0.0, 0.0), 5), &want, 1e-16));
    }

    #[test]
    fn propagators_split_rows() {
        let p = CoinParameters::worked_example();
        let (p0, q0) = propagators_at(&p, 0);
        assert_eq!(p0, Mat2::new(ONE, ZERO, ZERO, ZERO));
        assert_eq!(q0, Mat2::new(ZERO, ZERO, ZERO, -ONE));

        let h = FRAC_1_SQRT_2;
        let (p2, q2) = propagators_at(&p, 2);
        assert!(close(&p2, &Mat2::new(c(h, 0.0), c(0.0, -h), ZERO, ZERO), 1e-15));
        assert!(close(&q2, &Mat2::new(ZERO, ZERO, c(0.0, h), c(-h, 0.0)), 1e-15));
    }

    #[test]
    fn angles_are_reduced() {
        let p = CoinParameters::new(-FRAC_PI_2, 5.0 * PI);
        assert!((p.sigma_plus() - 1.5 * PI).abs() < 1e-15);
        assert!((p.sigma_minus() - PI).abs() < 1e-14);
        assert!((0.0..TAU).contains(&reduce_angle(-1e-300)));
        assert!((p.sigma() - 0.5 * (p.sigma_plus() - p.sigma_minus())).abs() == 0.0);
    }

    #[test]
    fn initial_state_polar_forms() {
        let s = make_initial_state(ONE, ZERO).unwrap();
        assert_eq!((s.a(), s.b(), s.phi1()), (1.0, 0.0, 0.0));

        let s = make_initial_state(ZERO, c(0.0, 1.0)).unwrap();
        assert_eq!(s.a(), 0.0);
        assert!((s.b() - 1.0).abs() < 1e-15);
        assert!((s.phi2() - FRAC_PI_2).abs() < 1e-15);

        let h = FRAC_1_SQRT_2;
        let s = make_initial_state(c(h, 0.0), Complex64::from_polar(h, FRAC_PI_3)).unwrap();
        assert!((s.a() - h).abs() < 1e-15 && (s.b() - h).abs() < 1e-15);
        assert!((s.phi12_tilde() + FRAC_PI_3).abs() < 1e-15);
    }

    #[test]
    fn initial_state_renormalises_and_rejects() {
        let s = make_initial_state(c(1.0 + 2e-10, 0.0), ZERO).unwrap();
        assert!((s.alpha().norm_sqr() + s.beta().norm_sqr() - 1.0).abs() < 1e-15);

        assert!(matches!(
            make_initial_state(ZERO, c(1e-7, 0.0)),
            Err(QwError::ZeroState { .. })
        ));
        assert!(matches!(
            make_initial_state(c(1.0, 0.0), c(1.0, 0.0)),
            Err(QwError::Domain(_))
        ));
    }

    #[test]
    fn one_defect_coins_agree_off_origin() {
        let p = CoinParameters::one_defect(0.7);
        assert_eq!(coin_at(&p, 3), coin_at(&p, -2));
    }
}
