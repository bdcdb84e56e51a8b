//! Cross-checks between the independent routes to the limit measure, and
//! finite-time convergence diagnostics.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::ops::RangeInclusive;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{QwError, Result};
use crate::evolution::{bin_index, binned_density, distribution, empirical_moment, evolve, weight_matrices};
use crate::genfun::{assemble_density, xi_x};
use crate::limits::{ac_mass, limit_density, loc_mass, one_defect_weight, weight, LimitMeasure, SUPPORT_EDGE};
use crate::model::{make_initial_state, CoinParameters, InitialState};
use crate::quadrature::{self, QuadratureResult};

/// Smallest tolerance accepted by [`integrate_density`].
pub const MIN_DENSITY_TOL: f64 = 1e-12;

pub const CONVERGENCE_BIN_WIDTH: f64 = 0.02;

/// Half-width of the window around the origin left out of finite-time
/// comparisons, where the point mass smears over neighbouring bins.
pub const CONVERGENCE_EXCLUSION: f64 = 0.05;

/// Calibrated bound on the binned deviation at `t = 10^4`.
pub const CONVERGENCE_MAD_TOL: f64 = 0.05;

pub const CONVERGENCE_MEAN_TOL: f64 = 0.01;

/// Rounding allowance added to the analytic tail bound of the series check.
pub const SERIES_ROUNDING: f64 = 1e-12;

pub const RESIDUE_TOL: f64 = 1e-10;
pub const MASS_TOL: f64 = 1e-6;
pub const REDUCTION_TOL: f64 = 1e-12;

/// Seed and size of the versioned random parameter fixture.
pub const FIXTURE_SEED: u64 = 20_240_917;
pub const FIXTURE_LEN: usize = 200;

const FIXTURE_JSON: &str = include_str!("../data/random_tuples.json");

/// Integrate a density on `(-1/sqrt2, 1/sqrt2)` after `x = sin(u) / sqrt2`.
pub fn integrate_density<F: Fn(f64) -> f64>(f: F, tol: f64) -> Result<QuadratureResult> {
    if !(tol >= MIN_DENSITY_TOL) {
        return Err(QwError::Domain(format!("tolerance {tol:e} below {MIN_DENSITY_TOL:e}")));
    }
    quadrature::integrate_on_support(f, SUPPORT_EDGE, tol)
}

/// `C + integral of w f_K`; equals one when the limit measure is a probability.
pub fn mass_check(params: &CoinParameters, init: &InitialState) -> Result<f64> {
    Ok(mass_report(params, init)?.total)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MassReport {
    pub loc_mass: f64,
    pub ac_mass: f64,
    pub total: f64,
    pub sigma_plus: f64,
    pub sigma_minus: f64,
    pub alpha: Complex64,
    pub beta: Complex64,
}

pub fn mass_report(params: &CoinParameters, init: &InitialState) -> Result<MassReport> {
    let c = loc_mass(params, init);
    let ac = ac_mass(params, init)?;
    Ok(MassReport {
        loc_mass: c,
        ac_mass: ac,
        total: c + ac,
        sigma_plus: params.sigma_plus(),
        sigma_minus: params.sigma_minus(),
        alpha: init.alpha(),
        beta: init.beta(),
    })
}

/// `2 |z|^{T+1} / (1 - |z|)`: the tail of the series once `||Xi_t(x)|| <= 1`.
pub fn gf_tail_bound(z: Complex64, horizon: usize) -> f64 {
    let r = z.norm();
    2.0 * r.powi(horizon as i32 + 1) / (1.0 - r)
}

/// Largest entrywise gap between the closed form `Xi~_x(z)` and the partial
/// sum of the path weights up to `horizon`, over `xs`.
pub fn gf_series_check(
    params: &CoinParameters,
    z: Complex64,
    horizon: usize,
    xs: RangeInclusive<i64>,
) -> Result<f64> {
    if !(z.norm() <= 0.9) {
        return Err(QwError::Domain(format!("|z| = {} exceeds 0.9", z.norm())));
    }
    if horizon < 20 {
        return Err(QwError::Domain(format!("series horizon {horizon} below 20")));
    }
    let series = weight_matrices(params, horizon)?;
    let mut worst: f64 = 0.0;
    for x in xs {
        let closed = xi_x(z, x, params)?;
        worst = worst.max((closed - series.partial_sum(x, z)).max_abs());
    }
    Ok(worst)
}

/// `{+/-0.01, ..., +/-0.69}`.
pub fn residue_grid() -> Vec<f64> {
    (1..=69)
        .flat_map(|i| {
            let x = i as f64 / 100.0;
            [-x, x]
        })
        .collect()
}

/// Largest gap between the residue-assembled density and `w f_K` over `grid`.
pub fn residue_theorem_check(params: &CoinParameters, init: &InitialState, grid: &[f64]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &x in grid {
        if x == 0.0 || !(x.abs() < 0.69 + 1e-12) {
            return Err(QwError::Domain(format!("grid point {x} outside (-0.69, 0.69) minus the origin")));
        }
        worst = worst.max((assemble_density(x, params, init)? - limit_density(x, params, init)).abs());
    }
    Ok(worst)
}

/// Largest gap between the general weight with `sigma_plus = sigma_minus` and
/// the one-defect weight on a uniform grid of `points` values in `[-0.7, 0.7]`.
pub fn one_defect_reduction_check(sigma: f64, init: &InitialState, points: usize) -> Result<f64> {
    let params = CoinParameters::one_defect(sigma);
    let mut worst: f64 = 0.0;
    for i in 0..points {
        let x = -0.7 + 1.4 * i as f64 / (points - 1).max(1) as f64;
        worst = worst.max((weight(x, &params, init)? - one_defect_weight(x, sigma, init)?).abs());
    }
    Ok(worst)
}

/// Integral of the absolutely continuous density over `[lo, hi]`, clamped to
/// the support and split at the origin.
fn ac_integral(measure: &LimitMeasure, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let lo = lo.max(-SUPPORT_EDGE);
    let hi = hi.min(SUPPORT_EDGE);
    if lo >= hi {
        return Ok(0.0);
    }
    let angle = |x: f64| (x / SUPPORT_EDGE).clamp(-1.0, 1.0).asin();
    let g = |u: f64| {
        let (s, c) = u.sin_cos();
        measure.density(SUPPORT_EDGE * s) * SUPPORT_EDGE * c
    };
    let (a, b) = (angle(lo), angle(hi));
    if a < 0.0 && b > 0.0 {
        Ok(quadrature::integrate(g, a, 0.0, 0.5 * tol)?.value + quadrature::integrate(g, 0.0, b, 0.5 * tol)?.value)
    } else {
        Ok(quadrature::integrate(g, a, b, tol)?.value)
    }
}

/// `G(p) = integral of w f_K over (-1/sqrt2, p]` at ascending points `p`.
pub fn ac_cdf_at(measure: &LimitMeasure, points: &[f64]) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(points.len());
    let mut prev = -SUPPORT_EDGE;
    let mut acc = 0.0;
    for &p in points {
        if p < prev && p > -SUPPORT_EDGE {
            return Err(QwError::Domain("CDF points must be ascending".into()));
        }
        if p > prev {
            acc += ac_integral(measure, prev, p, 1e-13)?;
            prev = p;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Finite-time diagnostics at one time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceEntry {
    pub t: usize,
    /// Mean over bins meeting the support (centre outside the exclusion window)
    /// of `|binned empirical density - bin average of w f_K|`.
    pub binned_mad: f64,
    pub bins_compared: usize,
    /// Sup over occupied sites outside the exclusion window of the gap between
    /// the empirical CDF and `C 1{x >= 0} + G(x)`.
    pub cdf_sup: f64,
    pub mean_empirical: f64,
    pub mean_analytic: f64,
    pub second_moment_empirical: f64,
    pub second_moment_analytic: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub bin_width: f64,
    pub exclusion: f64,
    pub entries: Vec<ConvergenceEntry>,
    pub note: String,
}

impl ConvergenceReport {
    pub fn mad_strictly_decreasing(&self) -> bool {
        self.entries.windows(2).all(|w| w[1].binned_mad < w[0].binned_mad)
    }
}

pub fn convergence_report(params: &CoinParameters, init: &InitialState, ts: &[usize]) -> Result<ConvergenceReport> {
    if ts.windows(2).any(|w| w[1] <= w[0]) || ts.iter().any(|&t| t < 100) {
        return Err(QwError::Domain("times must be ascending and at least 100".into()));
    }
    let measure = LimitMeasure::new(params, init);
    let mean_analytic = integrate_density(|x| x * measure.density(x), MIN_DENSITY_TOL)?.value;
    let second_analytic = integrate_density(|x| x * x * measure.density(x), MIN_DENSITY_TOL)?.value;
    let w = CONVERGENCE_BIN_WIDTH;
    let mut entries = Vec::with_capacity(ts.len());
    for &t in ts {
        let dist = distribution(&evolve(params, init, t)?);

        let bins: Vec<(f64, f64)> = binned_density(&dist, w)?
            .into_iter()
            .filter(|&(c, _)| c.abs() >= CONVERGENCE_EXCLUSION && c.abs() - 0.5 * w < SUPPORT_EDGE)
            .collect();
        // G at every edge (k - 1/2) w of the bin grid, so edges are shared and ascending
        let k_min = bin_index(-1.0, w);
        let k_max = bin_index(1.0, w);
        let edges: Vec<f64> = (k_min..=k_max + 1).map(|k| (k as f64 - 0.5) * w).collect();
        let cdf = ac_cdf_at(&measure, &edges)?;
        let total: f64 = bins
            .iter()
            .map(|&(c, emp)| {
                let i = (bin_index(c, w) - k_min) as usize;
                (emp - (cdf[i + 1] - cdf[i]) / w).abs()
            })
            .sum();

        let sites: Vec<(f64, f64)> = dist.sites().map(|(x, p)| (dist.scaled(x), p)).collect();
        let points: Vec<f64> = sites.iter().map(|s| s.0).collect();
        let g = ac_cdf_at(&measure, &points)?;
        let mut before = 0.0;
        let mut cdf_sup: f64 = 0.0;
        for (i, &(v, p)) in sites.iter().enumerate() {
            let after = before + p;
            if v.abs() >= CONVERGENCE_EXCLUSION {
                let limit = g[i] + if v >= 0.0 { measure.loc_mass } else { 0.0 };
                cdf_sup = cdf_sup.max((after - limit).abs()).max((before - limit).abs());
            }
            before = after;
        }

        entries.push(ConvergenceEntry {
            t,
            binned_mad: total / bins.len() as f64,
            bins_compared: bins.len(),
            cdf_sup,
            mean_empirical: empirical_moment(&dist, 1),
            mean_analytic,
            second_moment_empirical: empirical_moment(&dist, 2),
            second_moment_analytic: second_analytic,
        });
    }
    Ok(ConvergenceReport {
        bin_width: w,
        exclusion: CONVERGENCE_EXCLUSION,
        entries,
        note: format!(
            "the {CONVERGENCE_MAD_TOL} bound on the binned deviation is a calibration, not a derived rate"
        ),
    })
}

/// One randomly drawn parameter set, in the same field layout as a run configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParameterTuple {
    pub sigma_plus: f64,
    pub sigma_minus: f64,
    pub alpha_re: f64,
    pub alpha_im: f64,
    pub beta_re: f64,
    pub beta_im: f64,
}

impl ParameterTuple {
    pub fn params(&self) -> CoinParameters {
        CoinParameters::new(self.sigma_plus, self.sigma_minus)
    }

    pub fn init(&self) -> Result<InitialState> {
        make_initial_state(
            Complex64::new(self.alpha_re, self.alpha_im),
            Complex64::new(self.beta_re, self.beta_im),
        )
    }
}

/// Draw `n` tuples: phases uniform on `[0, 2pi)`, `|alpha|^2` uniform on `[0, 1]`,
/// coin-state phases uniform.
pub fn random_tuples(seed: u64, n: usize) -> Vec<ParameterTuple> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let sigma_plus = rng.gen_range(0.0..2.0 * PI);
            let sigma_minus = rng.gen_range(0.0..2.0 * PI);
            let a2: f64 = rng.gen_range(0.0..=1.0);
            let phi1 = rng.gen_range(0.0..2.0 * PI);
            let phi2 = rng.gen_range(0.0..2.0 * PI);
            let alpha = Complex64::from_polar(a2.sqrt(), phi1);
            let beta = Complex64::from_polar((1.0 - a2).sqrt(), phi2);
            ParameterTuple {
                sigma_plus,
                sigma_minus,
                alpha_re: alpha.re,
                alpha_im: alpha.im,
                beta_re: beta.re,
                beta_im: beta.im,
            }
        })
        .collect()
}

/// The versioned fixture drawn with [`FIXTURE_SEED`].
pub fn fixture_tuples() -> Vec<ParameterTuple> {
    serde_json::from_str(FIXTURE_JSON).expect("bundled fixture is valid JSON")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub value: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckRecord {
    /// Passes when `value <= tolerance`.
    pub fn at_most(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        CheckRecord {
            name: name.into(),
            status: if value <= tolerance { Status::Pass } else { Status::Fail },
            value,
            tolerance,
            detail: None,
        }
    }

    pub fn flag(name: impl Into<String>, ok: bool, value: f64, tolerance: f64) -> Self {
        CheckRecord {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            value,
            tolerance,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Mass,
    Gf,
    Residue,
    Converge,
    All,
}

impl std::str::FromStr for Suite {
    type Err = QwError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mass" => Ok(Suite::Mass),
            "gf" => Ok(Suite::Gf),
            "residue" => Ok(Suite::Residue),
            "converge" => Ok(Suite::Converge),
            "all" => Ok(Suite::All),
            other => Err(QwError::Domain(format!("unknown suite {other:?}"))),
        }
    }
}

/// Inputs shared by the suites: the primary parameter set, the random tuples,
/// and the convergence times.
#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub params: CoinParameters,
    pub init: InitialState,
    pub tuples: Vec<ParameterTuple>,
    pub ts: Vec<usize>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            params: CoinParameters::worked_example(),
            init: make_initial_state(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
                .expect("basis state is normalised"),
            tuples: fixture_tuples(),
            ts: vec![100, 1000, 10_000],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convergence: Option<ConvergenceReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckRecord::passed)
    }
}

fn tuple_label(t: &ParameterTuple) -> String {
    format!(
        "sigma+={} sigma-={} alpha=({}, {}) beta=({}, {})",
        t.sigma_plus, t.sigma_minus, t.alpha_re, t.alpha_im, t.beta_re, t.beta_im
    )
}

fn mass_checks(opts: &SuiteOptions, out: &mut Vec<CheckRecord>) -> Result<()> {
    let r = mass_report(&opts.params, &opts.init)?;
    out.push(
        CheckRecord::at_most("mass.primary", (r.total - 1.0).abs(), MASS_TOL)
            .with_detail(format!("C = {}, ac = {}, sum = {}", r.loc_mass, r.ac_mass, r.total)),
    );
    let h = FRAC_1_SQRT_2;
    let hadamard = make_initial_state(Complex64::new(h, 0.0), Complex64::new(0.0, h))?;
    let total = mass_check(&CoinParameters::one_defect(0.0), &hadamard)?;
    out.push(CheckRecord::at_most("mass.one_defect_hadamard", (total - 1.0).abs(), MASS_TOL));

    let mut worst: f64 = 0.0;
    let mut culprit = None;
    for t in &opts.tuples {
        let dev = (mass_check(&t.params(), &t.init()?)? - 1.0).abs();
        if dev > worst || culprit.is_none() {
            worst = worst.max(dev);
            culprit = Some(*t);
        }
    }
    let mut rec = CheckRecord::at_most(format!("mass.random_sweep[{}]", opts.tuples.len()), worst, MASS_TOL);
    if let Some(t) = culprit.filter(|_| !rec.passed()) {
        rec = rec.with_detail(tuple_label(&t));
    }
    out.push(rec);

    let mut worst: f64 = 0.0;
    for t in opts.tuples.iter().take(50) {
        worst = worst.max(one_defect_reduction_check(t.sigma_plus, &t.init()?, 1001)?);
    }
    out.push(CheckRecord::at_most("mass.one_defect_reduction", worst, REDUCTION_TOL));
    Ok(())
}

fn gf_checks(opts: &SuiteOptions, out: &mut Vec<CheckRecord>) -> Result<()> {
    let horizon = 80;
    let z = Complex64::from_polar(0.5, PI / 7.0);
    let tol = gf_tail_bound(z, horizon) + SERIES_ROUNDING;
    out.push(CheckRecord::at_most("gf.primary", gf_series_check(&opts.params, z, horizon, -4..=4)?, tol));
    out.push(CheckRecord::at_most(
        "gf.origin",
        gf_series_check(&opts.params, Complex64::new(0.0, 0.0), horizon, -4..=4)?,
        0.0,
    ));
    let mut worst: f64 = 0.0;
    for (i, t) in opts.tuples.iter().take(20).enumerate() {
        let z = Complex64::from_polar(0.5, 0.3 * i as f64);
        worst = worst.max(gf_series_check(&t.params(), z, horizon, -4..=4)?);
    }
    out.push(CheckRecord::at_most("gf.random_tuples", worst, tol));
    Ok(())
}

fn residue_checks(opts: &SuiteOptions, out: &mut Vec<CheckRecord>) -> Result<()> {
    let grid = residue_grid();
    out.push(CheckRecord::at_most(
        "residue.primary",
        residue_theorem_check(&opts.params, &opts.init, &grid)?,
        RESIDUE_TOL,
    ));
    let mut worst: f64 = 0.0;
    for t in opts.tuples.iter().take(20) {
        worst = worst.max(residue_theorem_check(&t.params(), &t.init()?, &grid)?);
    }
    out.push(CheckRecord::at_most("residue.random_tuples", worst, RESIDUE_TOL));
    let mut worst: f64 = 0.0;
    for t in opts.tuples.iter().skip(20).take(20) {
        let params = CoinParameters::one_defect(t.sigma_plus);
        worst = worst.max(residue_theorem_check(&params, &t.init()?, &grid)?);
    }
    out.push(CheckRecord::at_most("residue.one_defect", worst, RESIDUE_TOL));
    Ok(())
}

fn converge_checks(opts: &SuiteOptions, out: &mut Vec<CheckRecord>) -> Result<ConvergenceReport> {
    let report = convergence_report(&opts.params, &opts.init, &opts.ts)?;
    let mads: Vec<String> = report.entries.iter().map(|e| format!("{}", e.binned_mad)).collect();
    out.push(
        CheckRecord::flag("converge.mad_decreasing", report.mad_strictly_decreasing(), 0.0, 0.0)
            .with_detail(mads.join(", ")),
    );
    if let Some(last) = report.entries.last() {
        out.push(
            CheckRecord::at_most(format!("converge.mad_t{}", last.t), last.binned_mad, CONVERGENCE_MAD_TOL)
                .with_detail(report.note.clone()),
        );
        out.push(CheckRecord::at_most(
            format!("converge.mean_t{}", last.t),
            (last.mean_empirical - last.mean_analytic).abs(),
            CONVERGENCE_MEAN_TOL,
        ));
    }
    Ok(report)
}

/// Run one suite; an `Err` means a check could not be evaluated at all.
pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    let mut convergence = None;
    if matches!(suite, Suite::Mass | Suite::All) {
        mass_checks(opts, &mut checks)?;
    }
    if matches!(suite, Suite::Gf | Suite::All) {
        gf_checks(opts, &mut checks)?;
    }
    if matches!(suite, Suite::Residue | Suite::All) {
        residue_checks(opts, &mut checks)?;
    }
    if matches!(suite, Suite::Converge | Suite::All) {
        convergence = Some(converge_checks(opts, &mut checks)?);
    }
    Ok(SuiteReport { checks, convergence })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::konno_density;

    fn up() -> InitialState {
        make_initial_state(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)).unwrap()
    }

    #[test]
    fn density_integrals() {
        let r = integrate_density(|x| konno_density(x, FRAC_1_SQRT_2).unwrap(), 1e-12).unwrap();
        assert!((r.value - 1.0).abs() < 1e-8);
        let p = CoinParameters::worked_example();
        let r = integrate_density(|x| limit_density(x, &p, &up()), 1e-12).unwrap();
        assert!((r.value - 0.6).abs() < 1e-8);
        assert_eq!(integrate_density(|_| 0.0, 1e-12).unwrap().value, 0.0);
        assert!(integrate_density(|_| 1.0, 1e-13).is_err());
    }

    #[test]
    fn worked_example_mass() {
        let r = mass_report(&CoinParameters::worked_example(), &up()).unwrap();
        assert!((r.total - 1.0).abs() < 1e-8, "{r:?}");
    }

    #[test]
    fn series_check_preconditions_and_origin() {
        let p = CoinParameters::worked_example();
        assert_eq!(gf_series_check(&p, Complex64::new(0.0, 0.0), 20, -3..=3).unwrap(), 0.0);
        assert!(gf_series_check(&p, Complex64::new(0.95, 0.0), 40, 0..=0).is_err());
        assert!(gf_series_check(&p, Complex64::new(0.5, 0.0), 19, 0..=0).is_err());
    }

    #[test]
    fn tail_bound_value() {
        let b = gf_tail_bound(Complex64::new(0.5, 0.0), 80);
        assert!((b / (4.0 * 0.5f64.powi(81)) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn grid_shape() {
        let g = residue_grid();
        assert_eq!(g.len(), 138);
        assert!(g.iter().all(|x| *x != 0.0 && x.abs() <= 0.69 + 1e-15));
    }

    #[test]
    fn residue_check_rejects_origin() {
        let p = CoinParameters::worked_example();
        assert!(residue_theorem_check(&p, &up(), &[0.0]).is_err());
        assert!(residue_theorem_check(&p, &up(), &[0.7]).is_err());
    }

    #[test]
    fn ac_cdf_reaches_ac_mass() {
        let p = CoinParameters::worked_example();
        let m = LimitMeasure::new(&p, &up());
        let g = ac_cdf_at(&m, &[-0.8, -0.3, 0.0, 0.2, 0.9]).unwrap();
        assert_eq!(g[0], 0.0);
        assert!(g.windows(2).all(|w| w[1] >= w[0]));
        assert!((g[4] - 0.6).abs() < 1e-10);
    }

    #[test]
    fn random_tuples_are_seeded_and_normalised() {
        let a = random_tuples(3, 10);
        assert_eq!(a, random_tuples(3, 10));
        assert_ne!(a, random_tuples(4, 10));
        for t in a {
            assert!(t.init().is_ok());
            assert!((0.0..2.0 * PI).contains(&t.sigma_plus));
        }
    }

    #[test]
    fn fixture_matches_generator() {
        let fixture = fixture_tuples();
        let fresh = random_tuples(FIXTURE_SEED, FIXTURE_LEN);
        assert_eq!(fixture.len(), FIXTURE_LEN);
        for (f, g) in fixture.iter().zip(&fresh) {
            let pairs = [
                (f.sigma_plus, g.sigma_plus),
                (f.sigma_minus, g.sigma_minus),
                (f.alpha_re, g.alpha_re),
                (f.alpha_im, g.alpha_im),
                (f.beta_re, g.beta_re),
                (f.beta_im, g.beta_im),
            ];
            assert!(pairs.iter().all(|(a, b)| a == b), "{f:?} vs {g:?}");
        }
    }

    #[test]
    fn suite_names_parse() {
        assert_eq!("gf".parse::<Suite>().unwrap(), Suite::Gf);
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn record_status() {
        assert!(CheckRecord::at_most("a", 1e-9, 1e-8).passed());
        assert!(!CheckRecord::at_most("a", f64::NAN, 1e-8).passed());
    }
}
