//! Closed-form weak-limit measure and time-averaged localisation measure.
//!
//! `X_t / t` converges weakly to `C delta_0(dx) + w(x) f_K(x; 1/sqrt2) dx`. The
//! weight `w` is a rational function whose coefficients depend on the half
//! phase difference `sigma`, the initial moduli `a, b`, and a side-dependent
//! angle `gamma`. The mass `C` is the total of the time-averaged measure.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use serde::Serialize;

use crate::error::{QwError, Result};
use crate::model::{reduce_angle, CoinParameters, InitialState};
use crate::quadrature::{self, QuadratureResult};

/// Half-width of the support of the absolutely continuous part.
pub const SUPPORT_EDGE: f64 = FRAC_1_SQRT_2;

/// Below this `|cos 2 sigma|` the constant term of the denominator is treated
/// as exactly zero and the common `x^2` factor is cancelled.
const S0_SNAP: f64 = 1e-12;

/// Default absolute tolerance for the absolutely continuous mass.
pub const AC_MASS_TOL: f64 = 1e-10;

/// Half-line selector: `Plus` for `x >= 0`, `Minus` for `x < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn of(x: f64) -> Side {
        if x >= 0.0 {
            Side::Plus
        } else {
            Side::Minus
        }
    }

    pub fn sign(self) -> f64 {
        match self {
            Side::Plus => 1.0,
            Side::Minus => -1.0,
        }
    }
}

/// Konno density `sqrt(1 - a^2) / (pi (1 - x^2) sqrt(a^2 - x^2))` on `(-a, a)`.
pub fn konno_density(x: f64, a: f64) -> Result<f64> {
    if !(a > 0.0 && a < 1.0) {
        return Err(QwError::Domain(format!("Konno parameter a = {a} not in (0, 1)")));
    }
    if x.abs() >= a {
        return Ok(0.0);
    }
    let root = ((a - x) * (a + x)).sqrt();
    Ok((1.0 - a * a).sqrt() / (PI * (1.0 - x * x) * root))
}

fn konno_half(x: f64) -> f64 {
    konno_density(x, SUPPORT_EDGE).expect("1/sqrt2 is a valid Konno parameter")
}

/// Numerator/denominator coefficients of `w` on one half-line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightCoefficients {
    pub s0: f64,
    pub s1: f64,
    pub s2: f64,
    pub t0: f64,
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    pub gamma_plus: f64,
    pub gamma_minus: f64,
    pub side: Side,
}

impl WeightCoefficients {
    /// `w(x)` using these coefficients regardless of the sign of `x`.
    pub fn eval(&self, x: f64) -> f64 {
        let tail = ((self.t3 * x + self.t2) * x + self.t1) * x + self.t0;
        if self.s0 == 0.0 {
            tail / (self.s2 * x * x + self.s1)
        } else {
            let x2 = x * x;
            x2 * tail / ((self.s2 * x2 + self.s1) * x2 + self.s0)
        }
    }
}

pub fn weight_coefficients(params: &CoinParameters, init: &InitialState, side: Side) -> WeightCoefficients {
    let sigma = params.sigma();
    let (sin_s, cos_s) = sigma.sin_cos();
    let cos2 = cos_s * cos_s;
    let cos_2s = (2.0 * sigma).cos();
    let sin_2s = (2.0 * sigma).sin();
    let (a, b) = (init.a(), init.b());
    let gamma_plus = reduce_angle(init.phi12_tilde() - params.sigma_minus());
    let gamma_minus = reduce_angle(-init.phi12_tilde() + params.sigma_plus());
    let gamma = match side {
        Side::Plus => gamma_plus,
        Side::Minus => gamma_minus,
    };
    let k = SQRT_2 * a * b * side.sign();
    let (sin_g, cos_g) = gamma.sin_cos();
    let diff = b * b - a * a;
    WeightCoefficients {
        s0: if cos_2s.abs() <= S0_SNAP { 0.0 } else { cos_2s * cos_2s },
        s1: 4.0 * cos2 * (1.0 + 2.0 * sin_s * sin_s),
        s2: 4.0 * cos2 * cos2,
        t0: 2.0 * (1.0 + k * cos_g - k * sin_g * sin_2s),
        t1: 2.0 * diff,
        t2: 4.0 * (cos2 * (1.0 + k * cos_g) + k * sin_g * sin_2s),
        t3: 4.0 * cos2 * diff,
        gamma_plus,
        gamma_minus,
        side,
    }
}

fn check_support(x: f64) -> Result<()> {
    if x.is_finite() && x.abs() < SUPPORT_EDGE {
        Ok(())
    } else {
        Err(QwError::Domain(format!("x = {x} outside (-1/sqrt2, 1/sqrt2)")))
    }
}

/// Weight function `w(x)`; the side is `sgn(x)` with `sgn(0) = +1`.
pub fn weight(x: f64, params: &CoinParameters, init: &InitialState) -> Result<f64> {
    check_support(x)?;
    Ok(weight_coefficients(params, init, Side::of(x)).eval(x))
}

/// Weight function of the one-defect walk (`sigma_plus = sigma_minus = sigma`).
pub fn one_defect_weight(x: f64, sigma: f64, init: &InitialState) -> Result<f64> {
    check_support(x)?;
    let re = (num_complex::Complex64::from_polar(1.0, -sigma) * init.alpha() * init.beta().conj()).re;
    let diff = init.b() * init.b() - init.a() * init.a();
    let x2 = x * x;
    Ok(2.0 * x2 / (1.0 + 2.0 * x2) * (1.0 + Side::of(x).sign() * SQRT_2 * re + diff * x))
}

/// Absolutely continuous density `w(x) f_K(x; 1/sqrt2)`; zero off the support.
pub fn limit_density(x: f64, params: &CoinParameters, init: &InitialState) -> f64 {
    if !(x.abs() < SUPPORT_EDGE) {
        return 0.0;
    }
    weight_coefficients(params, init, Side::of(x)).eval(x) * konno_half(x)
}

/// Mass of the absolutely continuous part, to [`AC_MASS_TOL`].
pub fn ac_mass(params: &CoinParameters, init: &InitialState) -> Result<f64> {
    ac_mass_detailed(params, init, AC_MASS_TOL).map(|r| r.value)
}

pub fn ac_mass_detailed(params: &CoinParameters, init: &InitialState, tol: f64) -> Result<QuadratureResult> {
    let plus = weight_coefficients(params, init, Side::Plus);
    let minus = weight_coefficients(params, init, Side::Minus);
    quadrature::integrate_on_support(
        |x| {
            let c = if x >= 0.0 { &plus } else { &minus };
            c.eval(x) * konno_half(x)
        },
        SUPPORT_EDGE,
        tol,
    )
}

/// One branch `nu^(+/-)(x; sigma)` of the time-averaged measure.
pub fn nu_pm(x: i64, sign: Side, params: &CoinParameters, init: &InitialState) -> Result<f64> {
    let s = sign.sign();
    let sin_s = params.sigma().sin();
    let den = 3.0 + s * 2.0 * SQRT_2 * sin_s;
    if den.abs() < 1e-300 {
        return Err(QwError::Degenerate("3 +/- 2 sqrt2 sin(sigma) vanishes".into()));
    }
    let pre = ((1.0 + s * SQRT_2 * sin_s) / den).powi(2)
        * (1.0 + s * 2.0 * init.a() * init.b() * (init.phi12_tilde() - params.sigma_tilde()).sin());
    if x == 0 {
        Ok(pre)
    } else {
        let decay = den.recip().powi(x.unsigned_abs().min(i32::MAX as u64) as i32);
        Ok(pre * (2.0 + s * SQRT_2 * sin_s) * decay)
    }
}

fn plus_branch_active(sin_s: f64) -> bool {
    sin_s >= -FRAC_1_SQRT_2
}

fn minus_branch_active(sin_s: f64) -> bool {
    sin_s <= FRAC_1_SQRT_2
}

/// Time-averaged limit measure at site `x`; symmetric in `x`.
pub fn time_averaged_measure(x: i64, params: &CoinParameters, init: &InitialState) -> f64 {
    let sin_s = params.sigma().sin();
    let mut total = 0.0;
    // both denominators are >= 3 - 2 sqrt2 > 0, so nu_pm cannot fail here
    if plus_branch_active(sin_s) {
        total += nu_pm(x, Side::Plus, params, init).unwrap_or(0.0);
    }
    if minus_branch_active(sin_s) {
        total += nu_pm(x, Side::Minus, params, init).unwrap_or(0.0);
    }
    total
}

/// Localisation mass `C = sum_x mu_bar(x)`, summed in closed form.
///
/// Each active branch contributes
/// `(1 +/- sqrt2 s) / (3 +/- 2 sqrt2 s) * (1 +/- 2ab sin(phi12 - sigma_tilde))`
/// with `s = sin(sigma)`.
pub fn loc_mass(params: &CoinParameters, init: &InitialState) -> f64 {
    let sin_s = params.sigma().sin();
    let interference = 2.0 * init.a() * init.b() * (init.phi12_tilde() - params.sigma_tilde()).sin();
    let branch = |s: f64| (1.0 + s * SQRT_2 * sin_s) / (3.0 + s * 2.0 * SQRT_2 * sin_s) * (1.0 + s * interference);
    let mut c = 0.0;
    if plus_branch_active(sin_s) {
        c += branch(1.0);
    }
    if minus_branch_active(sin_s) {
        c += branch(-1.0);
    }
    c
}

/// The full weak-limit measure for one parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitMeasure {
    pub loc_mass: f64,
    pub coeffs_pos: WeightCoefficients,
    pub coeffs_neg: WeightCoefficients,
    pub a_param: f64,
}

impl LimitMeasure {
    pub fn new(params: &CoinParameters, init: &InitialState) -> Self {
        LimitMeasure {
            loc_mass: loc_mass(params, init),
            coeffs_pos: weight_coefficients(params, init, Side::Plus),
            coeffs_neg: weight_coefficients(params, init, Side::Minus),
            a_param: SUPPORT_EDGE,
        }
    }

    pub fn density(&self, x: f64) -> f64 {
        if !(x.abs() < SUPPORT_EDGE) {
            return 0.0;
        }
        let c = if x >= 0.0 { &self.coeffs_pos } else { &self.coeffs_neg };
        c.eval(x) * konno_half(x)
    }
}
