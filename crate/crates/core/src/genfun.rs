//! Generating functions of the path weights and the residue route to the
//! limit density.
//!
//! Inside the unit disk `Xi~_x(z) = sum_t Xi_t(x) z^t` has a closed form in the
//! transfer quantities `f~0^(+/-)(z)` (roots of two quadratics) and
//! `lambda~^(+/-)(z)`. On the unit circle their boundary values are explicit on
//! the band `|sin theta| <= 1/sqrt2`, and the poles of
//! `1 / (1 - e^{+/-ik} lambda~^(+/-)(z))` there carry the ballistic part of the
//! walk. Summing squared residues over those poles and changing variables from
//! momentum `k` to velocity `x = -d theta / dk` reproduces `w(x) f_K(x; 1/sqrt2)`.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{QwError, Result};
use crate::limits::{konno_density, Side, SUPPORT_EDGE};
use crate::model::{reduce_angle, sgn, CoinParameters, InitialState, Mat2};

/// Points with `|z|` this close to 1 are outside the open disk for [`gf_at`].
pub const DISK_MARGIN: f64 = 1e-9;

/// Distance from `+/-1/sqrt2` inside which the residue route refuses to evaluate.
pub const EDGE_MARGIN: f64 = 1e-6;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Transfer quantities at a point `z` of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GFValue {
    pub z: Complex64,
    pub f_plus: Complex64,
    pub f_minus: Complex64,
    pub lambda_plus: Complex64,
    pub lambda_minus: Complex64,
    /// `1 + f_plus * f_minus`.
    pub lambda0: Complex64,
}

/// Phase entering the quadratic for `f~0` on the given side:
/// `e^{i sigma_plus}` for `+`, `e^{-i sigma_minus}` for `-`.
fn side_phase(side: Side, params: &CoinParameters) -> Complex64 {
    match side {
        Side::Plus => Complex64::from_polar(1.0, params.sigma_plus()),
        Side::Minus => Complex64::from_polar(1.0, -params.sigma_minus()),
    }
}

/// Both roots of `f^2 - sqrt2 e (1 + z^2) f + e^2 z^2 = 0` with `e` the side phase.
pub fn quadratic_roots(z: Complex64, side: Side, params: &CoinParameters) -> [Complex64; 2] {
    let e = side_phase(side, params);
    let b = e * SQRT_2 * (ONE + z * z);
    let c = e * e * z * z;
    let d = (b * b - c * 4.0).sqrt();
    // pick the sign that avoids cancellation, then use the product of roots
    let q = if (b + d).norm() >= (b - d).norm() { b + d } else { b - d };
    if q == ZERO {
        return [ZERO, ZERO];
    }
    [q * 0.5, c * 2.0 / q]
}

/// Residual of the defining quadratic at `f`.
pub fn quadratic_residual(f: Complex64, z: Complex64, side: Side, params: &CoinParameters) -> f64 {
    let e = side_phase(side, params);
    (f * f - e * SQRT_2 * (ONE + z * z) * f + e * e * z * z).norm()
}

/// `lambda~^(+)(z) = z / (e^{-i sigma_plus} f - sqrt2)`,
/// `lambda~^(-)(z) = z / (sqrt2 - e^{i sigma_minus} f)`.
pub fn lambda_for(z: Complex64, f: Complex64, side: Side, params: &CoinParameters) -> Complex64 {
    let u = side_phase(side, params).conj() * f;
    match side {
        Side::Plus => z / (u - SQRT_2),
        Side::Minus => z / (SQRT_2 - u),
    }
}

fn select_root(z: Complex64, side: Side, params: &CoinParameters) -> Result<(Complex64, Complex64)> {
    if z == ZERO {
        return Ok((ZERO, ZERO));
    }
    let mut admissible = quadratic_roots(z, side, params)
        .into_iter()
        .map(|f| (f, lambda_for(z, f, side, params)))
        .filter(|(_, l)| l.norm() < 1.0);
    match (admissible.next(), admissible.next()) {
        (Some(pair), None) => Ok(pair),
        (None, _) => Err(QwError::Branch(format!("no root with |lambda| < 1 at z = {z}"))),
        (Some(_), Some(_)) => Err(QwError::Branch(format!("both roots have |lambda| < 1 at z = {z}"))),
    }
}

/// Transfer quantities at `z`, `|z| < 1`, choosing for each side the unique
/// quadratic root with `|lambda~| < 1`.
pub fn gf_at(z: Complex64, params: &CoinParameters) -> Result<GFValue> {
    if !(z.norm() < 1.0 - DISK_MARGIN) {
        return Err(QwError::Domain(format!("|z| = {} is not inside the unit disk", z.norm())));
    }
    let (f_plus, lambda_plus) = select_root(z, Side::Plus, params)?;
    let (f_minus, lambda_minus) = select_root(z, Side::Minus, params)?;
    let lambda0 = ONE + f_plus * f_minus;
    if lambda0.norm() < 1e-14 {
        return Err(QwError::Degenerate(format!("1 + f+ f- vanishes at z = {z}")));
    }
    Ok(GFValue {
        z,
        f_plus,
        f_minus,
        lambda_plus,
        lambda_minus,
        lambda0,
    })
}

fn xi0_from(gf: &GFValue) -> Mat2 {
    Mat2::new(ONE, -gf.f_plus, gf.f_minus, ONE).scale(gf.lambda0.inv())
}

fn xi_x_from(gf: &GFValue, x: i64) -> Mat2 {
    let xi0 = xi0_from(gf);
    match x.signum() {
        0 => xi0,
        1 => {
            let col = [gf.lambda_plus * gf.f_plus, gf.z];
            let row = [ZERO, -ONE];
            Mat2::outer(col, row).scale(gf.lambda_plus.powi((x - 1) as i32)) * xi0
        }
        _ => {
            let col = [gf.z, gf.lambda_minus * gf.f_minus];
            let row = [ONE, ZERO];
            Mat2::outer(col, row).scale(gf.lambda_minus.powi((-x - 1) as i32)) * xi0
        }
    }
}

/// `Xi~_0(z) = [[1, -f+], [f-, 1]] / (1 + f+ f-)`.
pub fn xi0(z: Complex64, params: &CoinParameters) -> Result<Mat2> {
    Ok(xi0_from(&gf_at(z, params)?))
}

/// `Xi~_x(z)` for any site `x` (the origin included).
pub fn xi_x(z: Complex64, x: i64, params: &CoinParameters) -> Result<Mat2> {
    Ok(xi_x_from(&gf_at(z, params)?, x))
}

fn band_root(theta: f64) -> Result<(f64, f64)> {
    let c = theta.cos();
    let disc = 2.0 * c * c - 1.0;
    if disc < -4.0 * f64::EPSILON {
        return Err(QwError::Domain(format!(
            "theta = {theta} outside the band |sin theta| <= 1/sqrt2"
        )));
    }
    Ok((c, disc.max(0.0).sqrt()))
}

/// Boundary value `f~0^(+/-)(e^{i theta})` on the band `|sin theta| <= 1/sqrt2`:
/// `sgn(cos theta) e^{i(theta + sigma_plus)} (sqrt2 |cos theta| - sqrt(2 cos^2 theta - 1))`
/// for `+`, and the same with `-sigma_minus` for `-`.
pub fn unit_circle_f0(theta: f64, side: Side, params: &CoinParameters) -> Result<Complex64> {
    let (c, root) = band_root(theta)?;
    let modulus = SQRT_2 * c.abs() - root;
    Ok(side_phase(side, params) * Complex64::from_polar(sgn(c) * modulus, theta))
}

/// Boundary value `lambda~^(+/-)(e^{i theta}) = -/+ (sgn(cos theta) sqrt(2cos^2 theta - 1) + i sqrt2 sin theta)`.
pub fn unit_circle_lambda(theta: f64, side: Side) -> Result<Complex64> {
    let (c, root) = band_root(theta)?;
    let v = Complex64::new(sgn(c) * root, SQRT_2 * theta.sin());
    Ok(v * -side.sign())
}

/// `d lambda~^(+)/dz` on the band, by implicit differentiation of the quadratic
/// in `u = e^{-i sigma_plus} f / z`, i.e. `z u^2 - sqrt2 (1 + z^2) u + z = 0`.
/// The minus side satisfies `lambda~^(-) = -lambda~^(+)`.
fn unit_circle_lambda_derivative(theta: f64, params: &CoinParameters) -> Result<Complex64> {
    let z = Complex64::from_polar(1.0, theta);
    let f = unit_circle_f0(theta, Side::Plus, params)?;
    let u = side_phase(Side::Plus, params).conj() * f / z;
    let du = -(u * u - z * u * (2.0 * SQRT_2) + ONE) / (z * u * 2.0 - (ONE + z * z) * SQRT_2);
    let den = z * u - SQRT_2;
    Ok((-(z * z * du) - SQRT_2) / (den * den))
}

/// A pole `e^{i theta}` of `1 / (1 - e^{+/-ik} lambda~^(+/-)(z))` at momentum `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingularPoint {
    pub k: f64,
    pub branch: Side,
    pub theta: f64,
    /// `x = -d theta / dk`.
    pub x_slope: f64,
    /// `sgn(sin k cos k)`.
    pub s: f64,
}

impl SingularPoint {
    /// `|1 - e^{+/-ik} lambda~^(+/-)(e^{i theta})|`; zero at an exact pole.
    pub fn residual(&self) -> f64 {
        let lambda = match unit_circle_lambda(self.theta, self.branch) {
            Ok(l) => l,
            Err(_) => return f64::INFINITY,
        };
        let phase = Complex64::from_polar(1.0, self.branch.sign() * self.k);
        (ONE - phase * lambda).norm()
    }
}

/// The two singular points (branches `+` and `-`) at momentum `k`.
///
/// `x_+ = |cos k| / sqrt(1 + cos^2 k) = -x_-`,
/// `cos theta^(+/-) = -/+ sgn(cos k) / sqrt(2 (1 - x^2))`,
/// `sin theta^(+/-) = sgn(sin k) sqrt((1 - 2x^2) / (2 (1 - x^2)))`.
pub fn singular_points(k: f64) -> Result<[SingularPoint; 2]> {
    let (sk, ck) = k.sin_cos();
    if (sk * ck).abs() < 1e-14 || !k.is_finite() {
        return Err(QwError::Degenerate(format!("sin k cos k = 0 at k = {k}")));
    }
    let x = ck.abs() / (1.0 + ck * ck).sqrt();
    let one_minus = 1.0 - x * x;
    let cos_mag = (2.0 * one_minus).sqrt().recip();
    let sin_theta = sgn(sk) * ((1.0 - 2.0 * x * x) / (2.0 * one_minus)).sqrt();
    let s = sgn(sk * ck);
    let point = |branch: Side, cos_theta: f64, x_slope: f64| SingularPoint {
        k: reduce_angle(k),
        branch,
        theta: reduce_angle(sin_theta.atan2(cos_theta)),
        x_slope,
        s,
    };
    Ok([
        point(Side::Plus, -sgn(ck) * cos_mag, x),
        point(Side::Minus, sgn(ck) * cos_mag, -x),
    ])
}

/// The four momenta in `(0, 2pi)` whose singular point on branch `sgn(x)` has slope `x`.
pub fn momenta_for(x: f64) -> Result<[f64; 4]> {
    check_open_support(x)?;
    let ck = x.abs() / (1.0 - x * x).sqrt();
    let k0 = ck.acos();
    Ok([k0, PI - k0, PI + k0, TAU - k0])
}

fn check_open_support(x: f64) -> Result<()> {
    if x == 0.0 || !(x.abs() < SUPPORT_EDGE - EDGE_MARGIN) {
        return Err(QwError::Domain(format!(
            "x = {x} must satisfy 0 < |x| < 1/sqrt2 - {EDGE_MARGIN:e}"
        )));
    }
    Ok(())
}

/// Squared-modulus factors of one residue:
/// `r1 = |Res 1/(1 - e^{+/-ik} lambda~)|^2`, `r2 = 1/|Lambda~0|^2`,
/// `r3` the initial-state factor, `r4` the squared norm of the column vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidueComponents {
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
    pub r4: f64,
}

impl ResidueComponents {
    pub fn product(&self) -> f64 {
        self.r1 * self.r2 * self.r3 * self.r4
    }
}

/// Residue factors in closed form as functions of the velocity `x` and
/// `s = sgn(sin k cos k)`; the branch is `sgn(x)`.
pub fn residue_components(x: f64, s: f64, params: &CoinParameters, init: &InitialState) -> Result<ResidueComponents> {
    check_open_support(x)?;
    let s = sgn(s);
    let sigma = params.sigma();
    let (a, b) = (init.a(), init.b());
    let q = (1.0 - 2.0 * x * x).sqrt();
    let base = 1.0 + x * x * (1.0 + (2.0 * sigma).cos());
    let sin_2s = (2.0 * sigma).sin();
    let x2 = x * x;
    if x > 0.0 {
        let gamma = init.phi12_tilde() - params.sigma_minus();
        Ok(ResidueComponents {
            r1: x2,
            r2: (1.0 + x).powi(2) / (2.0 * (base + s * q * sin_2s)),
            r3: a * a * (1.0 - x) / (1.0 + x)
                + b * b
                + SQRT_2 * a * b / (1.0 + x) * (gamma.cos() + s * q * gamma.sin()),
            r4: 2.0 / (1.0 + x),
        })
    } else {
        let gamma = -init.phi12_tilde() + params.sigma_plus();
        Ok(ResidueComponents {
            r1: x2,
            r2: (1.0 - x).powi(2) / (2.0 * (base - s * q * sin_2s)),
            r3: a * a - SQRT_2 * a * b / (1.0 - x) * (gamma.cos() - s * q * gamma.sin())
                + b * b * (1.0 + x) / (1.0 - x),
            r4: 2.0 / (1.0 - x),
        })
    }
}

/// Residue factors evaluated directly from the boundary values of the
/// generating functions at a singular point.
pub fn residue_components_at(
    point: &SingularPoint,
    params: &CoinParameters,
    init: &InitialState,
) -> Result<ResidueComponents> {
    let theta = point.theta;
    let f_plus = unit_circle_f0(theta, Side::Plus, params)?;
    let f_minus = unit_circle_f0(theta, Side::Minus, params)?;
    let lambda = unit_circle_lambda(theta, point.branch)?;
    let derivative = unit_circle_lambda_derivative(theta, params)?;
    let (alpha, beta) = (init.alpha(), init.beta());
    let (r3, own_f) = match point.branch {
        Side::Plus => ((alpha * f_minus + beta).norm_sqr(), f_plus),
        Side::Minus => ((alpha - beta * f_plus).norm_sqr(), f_minus),
    };
    Ok(ResidueComponents {
        r1: derivative.norm_sqr().recip(),
        r2: (ONE + f_plus * f_minus).norm_sqr().recip(),
        r3,
        r4: 1.0 + (lambda * own_f).norm_sqr(),
    })
}

/// Limit density at `x` assembled from the residues at the four momenta that
/// map to `x`: `g(x) = (1/2) sum_k |Res|^2 f_K(x; 1/sqrt2)`.
///
/// `|dk/dx| = pi f_K(x)` and the `dk / 2pi` measure together give the factor 1/2.
pub fn assemble_density(x: f64, params: &CoinParameters, init: &InitialState) -> Result<f64> {
    let branch = Side::of(x);
    let mut total = 0.0;
    for k in momenta_for(x)? {
        let point = singular_points(k)?
            .into_iter()
            .find(|p| p.branch == branch)
            .expect("one point per branch");
        total += residue_components_at(&point, params, init)?.product();
    }
    Ok(0.5 * total * konno_density(x, FRAC_1_SQRT_2)?)
}

/// Same assembly from the closed-form factors; each sign `s` covers two of the
/// four momenta, so `g(x) = sum_s r1 r2 r3 r4 f_K(x; 1/sqrt2)`.
pub fn assemble_density_closed(x: f64, params: &CoinParameters, init: &InitialState) -> Result<f64> {
    let mut total = 0.0;
    for s in [1.0, -1.0] {
        total += residue_components(x, s, params, init)?.product();
    }
    Ok(total * konno_density(x, FRAC_1_SQRT_2)?)
}
