//! Exact amplitude evolution on the lattice and the empirical statistics built
//! from it.
//!
//! States are stored densely over `[-t, t]` (index `x + t`). Only sites with
//! `x + t` even are ever occupied; the update loop visits exactly those.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use num_complex::Complex64;

use crate::error::{QwError, Result};
use crate::model::{propagators_at, CoinParameters, InitialState, Mat2, Spinor};

/// Default cap on the evolution horizon.
pub const DEFAULT_MAX_T: usize = 1_000_000;

/// Default cap on the horizon of [`weight_matrices`] (memory grows as `T^2`).
pub const DEFAULT_MAX_SERIES_T: usize = 2_048;

const ZERO_SPINOR: Spinor = [Complex64::new(0.0, 0.0); 2];

/// Wave function `Psi_t` at a fixed time.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkState {
    t: usize,
    amplitudes: Vec<Spinor>,
}

impl WalkState {
    /// Walker localised at the origin with coin state `init`.
    pub fn initial(init: &InitialState) -> Self {
        WalkState {
            t: 0,
            amplitudes: vec![init.spinor()],
        }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Amplitude at site `x`; zero outside `[-t, t]`.
    pub fn amplitude(&self, x: i64) -> Spinor {
        self.index(x)
            .map(|i| self.amplitudes[i])
            .unwrap_or(ZERO_SPINOR)
    }

    /// Dense amplitudes over `[-t, t]`.
    pub fn amplitudes(&self) -> &[Spinor] {
        &self.amplitudes
    }

    pub fn total_probability(&self) -> f64 {
        compensated_sum(self.amplitudes.iter().map(spinor_norm_sqr))
    }

    fn index(&self, x: i64) -> Option<usize> {
        let t = self.t as i64;
        (-t..=t).contains(&x).then(|| (x + t) as usize)
    }
}

fn spinor_norm_sqr(v: &Spinor) -> f64 {
    v[0].norm_sqr() + v[1].norm_sqr()
}

/// Neumaier summation; keeps norm checks at rounding level for `t ~ 1e4`.
pub(crate) fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let s = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - s) + v;
        } else {
            comp += (v - s) + sum;
        }
        sum = s;
    }
    sum + comp
}

// `1/sqrt2` and `sqrt2` as unevaluated sums `hi + lo`.
const HALF_HI: f64 = FRAC_1_SQRT_2;
const HALF_LO: f64 = -4.833_646_656_726_457e-17;
const SQRT2_HI: f64 = SQRT_2;
const SQRT2_LO: f64 = -9.667_293_313_452_913e-17;

/// `v * (hi + lo)` with a single rounding per component.
#[inline]
fn scale_split(v: Complex64, hi: f64, lo: f64) -> Complex64 {
    Complex64::new(v.re.mul_add(hi, v.re * lo), v.im.mul_add(hi, v.im * lo))
}

/// Off-diagonal phases of the half-line coins `[[1, e], [conj(e), -1]] / sqrt2`.
///
/// Multiplying by a rounded `1/sqrt2` every step biases the norm upwards by
/// about `1.4e-16` per step. Instead the kernel applies the unscaled coin and
/// the stored state alternates between the true amplitudes (even source time)
/// and `sqrt2` times them (odd source time); the pair of factors becomes an
/// exact `0.5`. The origin is only occupied at even times and gets a correctly
/// rounded `sqrt2` there.
struct Coins {
    minus: Complex64,
    plus: Complex64,
}

/// `|v|^2 - 1` with the squares formed exactly.
fn modulus_defect(v: Complex64) -> f64 {
    let (a, b) = if v.re.abs() >= v.im.abs() { (v.re, v.im) } else { (v.im, v.re) };
    let (pa, pb) = (a * a, b * b);
    let (ea, eb) = (a.mul_add(a, -pa), b.mul_add(b, -pb));
    ((pa - 1.0) + pb) + (ea + eb)
}

fn next_toward(x: f64, steps: i64) -> f64 {
    if x == 0.0 || steps == 0 {
        return x;
    }
    f64::from_bits((x.to_bits() as i64 + steps) as u64)
}

/// `e^{i theta}` nudged by at most two ulps per component so that its squared
/// modulus is as close to 1 as doubles allow; a unit-modulus error would
/// otherwise grow the norm linearly in time.
fn unit_phase(theta: f64) -> Complex64 {
    let base = Complex64::from_polar(1.0, theta);
    let mut best = base;
    for dr in -2..=2 {
        for di in -2..=2 {
            let v = Complex64::new(next_toward(base.re, dr), next_toward(base.im, di));
            if modulus_defect(v).abs() < modulus_defect(best).abs() {
                best = v;
            }
        }
    }
    best
}

impl Coins {
    fn new(params: &CoinParameters) -> Self {
        Coins {
            minus: unit_phase(params.sigma_minus()),
            plus: unit_phase(params.sigma_plus()),
        }
    }

    #[inline]
    fn apply(&self, x: i64, v: &Spinor, odd_source: bool) -> Spinor {
        let e = match x.signum() {
            1 => self.plus,
            -1 => self.minus,
            _ if odd_source => return [scale_split(v[0], HALF_HI, HALF_LO), -scale_split(v[1], HALF_HI, HALF_LO)],
            _ => return [scale_split(v[0], SQRT2_HI, SQRT2_LO), -scale_split(v[1], SQRT2_HI, SQRT2_LO)],
        };
        let up = v[0] + e * v[1];
        let down = e.conj() * v[0] - v[1];
        if odd_source {
            [up * 0.5, down * 0.5]
        } else {
            [up, down]
        }
    }
}

/// One application of `Psi(x) <- P_{x+1} Psi(x+1) + Q_{x-1} Psi(x-1)` in the
/// alternating scaling described on [`Coins`].
///
/// `src` holds time `t` with site `x` at `x + src_off`; results for time
/// `t + 1` are written to `dst` at `x + dst_off`. Only sites of parity `t + 1`
/// in `[-t-1, t+1]` are written; callers guarantee the others are already zero.
fn propagate(coins: &Coins, t: usize, src: &[Spinor], src_off: usize, dst: &mut [Spinor], dst_off: usize) {
    let odd = t % 2 == 1;
    let t = t as i64;
    let (src_off, dst_off) = (src_off as i64, dst_off as i64);
    dst[(t + 1 + dst_off) as usize][0] = Complex64::new(0.0, 0.0);
    dst[(-t - 1 + dst_off) as usize][1] = Complex64::new(0.0, 0.0);
    let mut y = -t;
    while y <= t {
        let phi = coins.apply(y, &src[(y + src_off) as usize], odd);
        dst[(y - 1 + dst_off) as usize][0] = phi[0];
        dst[(y + 1 + dst_off) as usize][1] = phi[1];
        y += 2;
    }
}

fn rescale(amplitudes: &mut [Spinor], hi: f64, lo: f64) {
    for v in amplitudes {
        *v = [scale_split(v[0], hi, lo), scale_split(v[1], hi, lo)];
    }
}

/// Advance a state by one time step.
pub fn step(state: &WalkState, params: &CoinParameters) -> WalkState {
    let t = state.t;
    let mut next = vec![ZERO_SPINOR; 2 * t + 3];
    propagate(&Coins::new(params), t, &state.amplitudes, t, &mut next, t + 1);
    // undo the kernel's scaling, since `state` holds true amplitudes
    if t % 2 == 0 {
        rescale(&mut next, HALF_HI, HALF_LO);
    } else {
        rescale(&mut next, SQRT2_HI, SQRT2_LO);
    }
    WalkState {
        t: t + 1,
        amplitudes: next,
    }
}

/// Evolve from the origin for `t` steps, capped at [`DEFAULT_MAX_T`].
pub fn evolve(params: &CoinParameters, init: &InitialState, t: usize) -> Result<WalkState> {
    evolve_capped(params, init, t, DEFAULT_MAX_T)
}

/// Evolve from the origin for `t` steps with an explicit horizon cap.
///
/// Runs in `O(t^2)` time using two buffers of `2t + 1` sites.
pub fn evolve_capped(
    params: &CoinParameters,
    init: &InitialState,
    t: usize,
    max_t: usize,
) -> Result<WalkState> {
    if t > max_t {
        return Err(QwError::Resource {
            requested: t,
            max: max_t,
        });
    }
    let coins = Coins::new(params);
    let width = 2 * t + 1;
    let mut cur = vec![ZERO_SPINOR; width];
    let mut next = vec![ZERO_SPINOR; width];
    cur[t] = init.spinor();
    for s in 0..t {
        propagate(&coins, s, &cur, t, &mut next, t);
        std::mem::swap(&mut cur, &mut next);
    }
    if t % 2 == 1 {
        rescale(&mut cur, HALF_HI, HALF_LO);
    }
    Ok(WalkState { t, amplitudes: cur })
}

/// Probability distribution `P_t(x) = |Psi_t(x)|^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    t: usize,
    probs: Vec<f64>,
}

impl Distribution {
    /// Build from dense probabilities over `[-t, t]`.
    pub fn new(t: usize, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != 2 * t + 1 {
            return Err(QwError::Domain(format!(
                "expected {} probabilities for t = {t}, got {}",
                2 * t + 1,
                probs.len()
            )));
        }
        if probs.iter().any(|p| !(0.0..=1.0 + 1e-12).contains(p)) {
            return Err(QwError::Domain("probabilities must lie in [0, 1]".into()));
        }
        Ok(Distribution { t, probs })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn prob(&self, x: i64) -> f64 {
        let t = self.t as i64;
        if (-t..=t).contains(&x) {
            self.probs[(x + t) as usize]
        } else {
            0.0
        }
    }

    /// Sites of the occupied parity, `x = -t, -t + 2, ..., t`, with their probabilities.
    pub fn sites(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let t = self.t as i64;
        (0..=self.t).map(move |k| {
            let x = -t + 2 * k as i64;
            (x, self.probs[(x + t) as usize])
        })
    }

    pub fn total(&self) -> f64 {
        compensated_sum(self.probs.iter().copied())
    }

    /// `x / t`, with the convention `0` at `t = 0`.
    pub fn scaled(&self, x: i64) -> f64 {
        if self.t == 0 {
            0.0
        } else {
            x as f64 / self.t as f64
        }
    }
}

pub fn distribution(state: &WalkState) -> Distribution {
    Distribution {
        t: state.t,
        probs: state.amplitudes.iter().map(spinor_norm_sqr).collect(),
    }
}

/// Index of the bin `[c - w/2, c + w/2)` with centre `c = k w` containing `v`.
pub fn bin_index(v: f64, bin_width: f64) -> i64 {
    (v / bin_width + 0.5).floor() as i64
}

/// Histogram density of `x / t` over `[-1, 1]`: `(centre, mass / bin_width)`.
///
/// Bins are left-closed with centres on the grid `k * bin_width`. Every bin must
/// contain at least one site of the occupied parity, i.e. `bin_width >= 2 / t`.
pub fn binned_density(dist: &Distribution, bin_width: f64) -> Result<Vec<(f64, f64)>> {
    if !(bin_width > 0.0 && bin_width < 1.0) {
        return Err(QwError::Domain(format!("bin width {bin_width} not in (0, 1)")));
    }
    let min = if dist.t == 0 {
        f64::INFINITY
    } else {
        2.0 / dist.t as f64
    };
    if bin_width * (dist.t as f64) < 2.0 * (1.0 - 1e-12) {
        return Err(QwError::Bin {
            width: bin_width,
            min,
            t: dist.t,
        });
    }
    let k_min = bin_index(-1.0, bin_width);
    let k_max = bin_index(1.0, bin_width);
    let mut mass = vec![0.0; (k_max - k_min + 1) as usize];
    for (x, p) in dist.sites() {
        mass[(bin_index(dist.scaled(x), bin_width) - k_min) as usize] += p;
    }
    Ok(mass
        .into_iter()
        .enumerate()
        .map(|(i, m)| ((k_min + i as i64) as f64 * bin_width, m / bin_width))
        .collect())
}

/// Right-continuous empirical CDF of `X_t / t`, sampled at each occupied-parity site.
pub fn empirical_cdf(dist: &Distribution) -> Vec<(f64, f64)> {
    let mut acc = 0.0;
    let mut comp = 0.0;
    dist.sites()
        .map(|(x, p)| {
            // running Neumaier sum so the final value is 1 to rounding
            let s = acc + p;
            if acc.abs() >= p.abs() {
                comp += (acc - s) + p;
            } else {
                comp += (p - s) + acc;
            }
            acc = s;
            (dist.scaled(x), acc + comp)
        })
        .collect()
}

/// `sum_x (x/t)^m P_t(x)`.
pub fn empirical_moment(dist: &Distribution, m: u32) -> f64 {
    compensated_sum(dist.sites().map(|(x, p)| dist.scaled(x).powi(m as i32) * p))
}

/// Path weights `Xi_t(x)` for all `t <= horizon`; column `j` of `Xi_t(x)` is
/// `Psi_t(x)` evolved from the basis state `e_j`.
#[derive(Debug, Clone)]
pub struct WeightMatrixSeries {
    layers: Vec<Vec<Mat2>>,
}

impl WeightMatrixSeries {
    pub fn horizon(&self) -> usize {
        self.layers.len() - 1
    }

    /// `Xi_t(x)`, zero outside `[-t, t]`. Panics if `t` exceeds the horizon.
    pub fn get(&self, t: usize, x: i64) -> Mat2 {
        let layer = &self.layers[t];
        let ti = t as i64;
        if (-ti..=ti).contains(&x) {
            layer[(x + ti) as usize]
        } else {
            Mat2::ZERO
        }
    }

    /// Truncated generating function `sum_{t <= horizon} Xi_t(x) z^t`.
    pub fn partial_sum(&self, x: i64, z: Complex64) -> Mat2 {
        // Horner in z, from the top layer down
        self.layers
            .iter()
            .enumerate()
            .rev()
            .fold(Mat2::ZERO, |acc, (t, _)| acc.scale(z) + self.get(t, x))
    }
}

pub fn weight_matrices(params: &CoinParameters, horizon: usize) -> Result<WeightMatrixSeries> {
    weight_matrices_capped(params, horizon, DEFAULT_MAX_SERIES_T)
}

pub fn weight_matrices_capped(
    params: &CoinParameters,
    horizon: usize,
    max_t: usize,
) -> Result<WeightMatrixSeries> {
    if horizon > max_t {
        return Err(QwError::Resource {
            requested: horizon,
            max: max_t,
        });
    }
    let props: [(Mat2, Mat2); 3] = [
        propagators_at(params, -1),
        propagators_at(params, 0),
        propagators_at(params, 1),
    ];
    let pq = |x: i64| &props[(x.signum() + 1) as usize];
    let mut layers = Vec::with_capacity(horizon + 1);
    layers.push(vec![Mat2::IDENTITY]);
    for t in 0..horizon as i64 {
        let prev = &layers[t as usize];
        let at = |x: i64| -> Mat2 {
            if (-t..=t).contains(&x) {
                prev[(x + t) as usize]
            } else {
                Mat2::ZERO
            }
        };
        let next: Vec<Mat2> = (-(t + 1)..=t + 1)
            .map(|x| pq(x + 1).0 * at(x + 1) + pq(x - 1).1 * at(x - 1))
            .collect();
        layers.push(next);
    }
    Ok(WeightMatrixSeries { layers })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{coin_at, make_initial_state};
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn unit_phase_is_closer_to_unit_modulus() {
        for i in 0..200 {
            let theta = 0.0317 * i as f64;
            let e = unit_phase(theta);
            assert!(modulus_defect(e).abs() <= modulus_defect(Complex64::from_polar(1.0, theta)).abs());
            assert!((e - Complex64::from_polar(1.0, theta)).norm() < 1e-15);
        }
    }

    #[test]
    fn kernel_matches_coin_matrices() {
        let p = CoinParameters::new(0.8, 4.1);
        let coins = Coins::new(&p);
        let v = [c(0.3, -0.2), c(-0.5, 0.7)];
        for x in [-3, -1, 0, 1, 5] {
            let slow = coin_at(&p, x).apply(&v);
            // even source: stored result is sqrt2 times the true one
            let fast = coins.apply(x, &v, false);
            for i in 0..2 {
                assert!((fast[i] * FRAC_1_SQRT_2 - slow[i]).norm() < 1e-15);
            }
            // odd source: input is sqrt2 times the true one
            let fast = coins.apply(x, &[v[0] * SQRT_2, v[1] * SQRT_2], true);
            for i in 0..2 {
                assert!((fast[i] - slow[i]).norm() < 1e-15);
            }
        }
        assert!((HALF_HI * SQRT2_HI - 1.0).abs() < 1e-15);
    }

    fn spinor_close(a: Spinor, b: Spinor, tol: f64) -> bool {
        (a[0] - b[0]).norm() <= tol && (a[1] - b[1]).norm() <= tol
    }

    #[test]
    fn first_step_by_hand() {
        let params = CoinParameters::new(1.1, 2.3);
        let (alpha, beta) = (c(0.6, 0.0), c(0.0, 0.8));
        let init = make_initial_state(alpha, beta).unwrap();
        let s1 = step(&WalkState::initial(&init), &params);
        assert_eq!(s1.t(), 1);
        assert!(spinor_close(s1.amplitude(-1), [alpha, c(0.0, 0.0)], 1e-15));
        assert!(spinor_close(s1.amplitude(1), [c(0.0, 0.0), -beta], 1e-15));
        assert_eq!(s1.amplitude(0), ZERO_SPINOR);

        let d = distribution(&s1);
        assert!((d.prob(-1) - 0.36).abs() < 1e-15);
        assert!((d.prob(1) - 0.64).abs() < 1e-15);
    }

    #[test]
    fn second_step_by_hand() {
        let sm = 2.3;
        let params = CoinParameters::new(0.4, sm);
        let init = make_initial_state(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let s2 = evolve(&params, &init, 2).unwrap();
        let h = FRAC_1_SQRT_2;
        assert!(spinor_close(s2.amplitude(-2), [c(h, 0.0), c(0.0, 0.0)], 1e-15));
        let lower = Complex64::from_polar(h, -sm);
        assert!(spinor_close(s2.amplitude(0), [c(0.0, 0.0), lower], 1e-15));
        assert_eq!(s2.amplitude(2), ZERO_SPINOR);
    }

    #[test]
    fn worked_example_two_steps() {
        let init = make_initial_state(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let d = distribution(&evolve(&CoinParameters::worked_example(), &init, 2).unwrap());
        assert!((d.prob(-2) - 0.5).abs() < 1e-15);
        assert!((d.prob(0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn evolve_zero_is_identity() {
        let init = make_initial_state(c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        let s = evolve(&CoinParameters::new(0.3, 0.2), &init, 0).unwrap();
        assert_eq!(s, WalkState::initial(&init));
    }

    #[test]
    fn evolve_matches_repeated_step() {
        let params = CoinParameters::new(0.9, 5.1);
        let init = make_initial_state(c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        let mut s = WalkState::initial(&init);
        for _ in 0..37 {
            s = step(&s, &params);
        }
        let e = evolve(&params, &init, 37).unwrap();
        for x in -38..=38 {
            assert!(spinor_close(s.amplitude(x), e.amplitude(x), 1e-15));
        }
    }

    #[test]
    fn evolve_respects_cap() {
        let init = make_initial_state(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let err = evolve_capped(&CoinParameters::new(0.0, 0.0), &init, 11, 10).unwrap_err();
        assert_eq!(err, QwError::Resource { requested: 11, max: 10 });
    }

    #[test]
    fn toy_distribution_bins() {
        let t = 100;
        let mut probs = vec![0.0; 2 * t + 1];
        probs[t] = 1.0;
        let d = Distribution::new(t, probs).unwrap();
        let bins = binned_density(&d, 0.05).unwrap();
        let nonzero: Vec<_> = bins.iter().filter(|b| b.1 != 0.0).collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!(nonzero[0].0, 0.0);
        assert!((nonzero[0].1 - 20.0).abs() < 1e-12);
    }

    #[test]
    fn bins_reject_too_narrow() {
        let init = make_initial_state(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let d = distribution(&evolve(&CoinParameters::new(0.0, 0.0), &init, 100).unwrap());
        assert!(binned_density(&d, 0.02).is_ok());
        assert!(matches!(binned_density(&d, 0.019), Err(QwError::Bin { .. })));
        assert!(binned_density(&d, 1.5).is_err());
    }

    #[test]
    fn bins_integrate_to_one() {
        let init = make_initial_state(c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        let d = distribution(&evolve(&CoinParameters::worked_example(), &init, 500).unwrap());
        for w in [0.02, 0.05, 0.1, 0.3] {
            let bins = binned_density(&d, w).unwrap();
            assert!(bins.iter().all(|b| b.1 >= 0.0));
            let total: f64 = bins.iter().map(|b| b.1 * w).sum();
            assert!((total - 1.0).abs() < 1e-12, "{w}: {total}");
        }
    }

    #[test]
    fn cdf_of_two_point_distribution() {
        let d = Distribution::new(1, vec![0.5, 0.0, 0.5]).unwrap();
        let cdf = empirical_cdf(&d);
        assert_eq!(cdf, vec![(-1.0, 0.5), (1.0, 1.0)]);
    }

    #[test]
    fn cdf_is_monotone_and_ends_at_one() {
        let init = make_initial_state(c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        let d = distribution(&evolve(&CoinParameters::new(2.0, 4.0), &init, 300).unwrap());
        let cdf = empirical_cdf(&d);
        assert!(cdf.windows(2).all(|w| w[0].1 <= w[1].1 && w[0].0 < w[1].0));
        assert!((cdf.last().unwrap().1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn moments_of_toy_distributions() {
        let d = Distribution::new(2, vec![0.25, 0.0, 0.5, 0.0, 0.25]).unwrap();
        assert_eq!(empirical_moment(&d, 1), 0.0);
        assert!((empirical_moment(&d, 2) - 0.5).abs() < 1e-15);

        let init = make_initial_state(c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        let d = distribution(&evolve(&CoinParameters::new(1.0, 3.0), &init, 200).unwrap());
        assert!(empirical_moment(&d, 2) <= 1.0);
    }

    #[test]
    fn support_and_parity() {
        let init = make_initial_state(c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        let params = CoinParameters::new(PI / 3.0, 5.0);
        for t in [1usize, 2, 7, 50] {
            let s = evolve(&params, &init, t).unwrap();
            let ti = t as i64;
            for x in -ti - 3..=ti + 3 {
                if x.abs() > ti || (x + ti) % 2 != 0 {
                    assert_eq!(s.amplitude(x), ZERO_SPINOR, "t={t} x={x}");
                }
            }
        }
    }

    #[test]
    fn weight_matrix_base_cases() {
        let params = CoinParameters::worked_example();
        let series = weight_matrices(&params, 3).unwrap();
        assert_eq!(series.get(0, 0), Mat2::IDENTITY);
        assert_eq!(series.get(1, -1), propagators_at(&params, 0).0);
        assert_eq!(series.get(1, 1), propagators_at(&params, 0).1);
        assert_eq!(series.get(1, 0), Mat2::ZERO);
    }

    #[test]
    fn weight_matrices_cap() {
        let err = weight_matrices_capped(&CoinParameters::new(0.0, 0.0), 9, 8).unwrap_err();
        assert!(matches!(err, QwError::Resource { .. }));
    }
}
