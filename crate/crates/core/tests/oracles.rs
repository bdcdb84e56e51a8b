//! Independent oracles: brute-force path enumeration, linearity, long-time
//! simulation against the closed-form measures.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use qwalk_core::evolution::{
    binned_density, distribution, empirical_cdf, empirical_moment, evolve, step, weight_matrices, WalkState,
};
use qwalk_core::limits::{limit_density, loc_mass, time_averaged_measure};
use qwalk_core::model::{make_initial_state, propagators_at, CoinParameters, InitialState, Mat2};
use qwalk_core::verify::{fixture_tuples, integrate_density};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn up() -> InitialState {
    make_initial_state(c(1.0, 0.0), c(0.0, 0.0)).unwrap()
}

/// Sum over all `2^t` move sequences of the ordered propagator products.
fn path_sum(params: &CoinParameters, t: usize, x: i64) -> Mat2 {
    let mut total = Mat2::ZERO;
    for moves in 0u32..(1 << t) {
        let mut pos = 0i64;
        let mut m = Mat2::IDENTITY;
        for s in 0..t {
            let (p, q) = propagators_at(params, pos);
            if moves >> s & 1 == 0 {
                m = p * m;
                pos -= 1;
            } else {
                m = q * m;
                pos += 1;
            }
        }
        if pos == x {
            total = total + m;
        }
    }
    total
}

#[test]
fn weight_matrices_match_path_enumeration() {
    for p in [CoinParameters::worked_example(), CoinParameters::new(0.4, 5.1)] {
        let series = weight_matrices(&p, 12).unwrap();
        for t in 0..=12 {
            for x in -(t as i64)..=t as i64 {
                let d = (series.get(t, x) - path_sum(&p, t, x)).max_abs();
                assert!(d < 1e-13, "t={t} x={x}: {d}");
            }
        }
    }
}

#[test]
fn evolve_matches_path_enumeration() {
    let p = CoinParameters::new(2.2, 0.9);
    let init = make_initial_state(c(0.6, 0.0), Complex64::from_polar(0.8, 1.3)).unwrap();
    let state = evolve(&p, &init, 11).unwrap();
    for x in -11..=11 {
        let want = path_sum(&p, 11, x).apply(&init.spinor());
        let got = state.amplitude(x);
        assert!((got[0] - want[0]).norm() < 1e-13 && (got[1] - want[1]).norm() < 1e-13);
    }
}

#[test]
fn first_path_weights() {
    let series = weight_matrices(&CoinParameters::worked_example(), 3).unwrap();
    assert_eq!(series.get(0, 0), Mat2::IDENTITY);
    assert_eq!(series.get(1, -1), Mat2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)));
}

#[test]
fn weight_matrices_reproduce_evolution() {
    let tuples = fixture_tuples();
    let p = CoinParameters::new(1.1, 3.7);
    let series = weight_matrices(&p, 30).unwrap();
    for tup in tuples.iter().take(20) {
        let init = tup.init().unwrap();
        for t in [0, 1, 7, 30] {
            let state = evolve(&p, &init, t).unwrap();
            for x in -(t as i64)..=t as i64 {
                let want = series.get(t, x).apply(&init.spinor());
                let got = state.amplitude(x);
                assert!((got[0] - want[0]).norm() < 1e-12 && (got[1] - want[1]).norm() < 1e-12);
            }
        }
    }
    for t in 0..=30 {
        for x in -(t as i64)..=t as i64 {
            assert!(series.get(t, x).max_abs() <= 1.0 + 1e-12);
        }
    }
}

#[test]
fn evolution_is_linear() {
    let p = CoinParameters::new(5.5, 2.0);
    let (c1, c2) = (Complex64::from_polar(0.6, 0.4), Complex64::from_polar(0.8, -2.0));
    let e1 = make_initial_state(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
    let e2 = make_initial_state(c(0.0, 0.0), c(1.0, 0.0)).unwrap();
    let mix = make_initial_state(c1, c2).unwrap();
    let t = 200;
    let (s1, s2, s) = (
        evolve(&p, &e1, t).unwrap(),
        evolve(&p, &e2, t).unwrap(),
        evolve(&p, &mix, t).unwrap(),
    );
    for x in -(t as i64)..=t as i64 {
        let (a, b, m) = (s1.amplitude(x), s2.amplitude(x), s.amplitude(x));
        for i in 0..2 {
            assert!((m[i] - (c1 * a[i] + c2 * b[i])).norm() < 1e-12);
        }
    }
}

#[test]
fn long_run_against_limit() {
    let p = CoinParameters::worked_example();
    let dist = distribution(&evolve(&p, &up(), 10_000).unwrap());

    let bins = binned_density(&dist, 0.02).unwrap();
    let (_, near_half) = bins.iter().find(|(centre, _)| (centre - 0.5).abs() < 1e-9).unwrap();
    assert!((near_half - limit_density(0.5, &p, &up())).abs() < 0.05, "{near_half}");

    let cdf = empirical_cdf(&dist);
    let below = cdf.iter().take_while(|(v, _)| *v <= -0.8).last().map_or(0.0, |(_, f)| *f);
    assert!(below <= 1e-3, "{below}");

    let mean = integrate_density(|x| x * limit_density(x, &p, &up()), 1e-12).unwrap().value;
    assert!((empirical_moment(&dist, 1) - mean).abs() < 0.01);
    assert!(empirical_moment(&dist, 2) <= 1.0);
}

#[test]
fn cesaro_average_approaches_time_averaged_measure() {
    let p = CoinParameters::worked_example();
    let horizon = 4000;
    let mut state = WalkState::initial(&up());
    let mut sums = [0.0f64; 7];
    for _ in 0..horizon {
        for (i, x) in (-3..=3).enumerate() {
            let a = state.amplitude(x);
            sums[i] += a[0].norm_sqr() + a[1].norm_sqr();
        }
        state = step(&state, &p);
    }
    for (i, x) in (-3..=3).enumerate() {
        let avg = sums[i] / horizon as f64;
        let want = time_averaged_measure(x, &p, &up());
        assert!((avg - want).abs() < 2e-3, "x={x}: {avg} vs {want}");
    }
}

#[test]
fn worked_example_time_average_table() {
    let p = CoinParameters::worked_example();
    let want = [12.0 / 3125.0, 12.0 / 625.0, 12.0 / 125.0, 4.0 / 25.0, 12.0 / 125.0, 12.0 / 625.0, 12.0 / 3125.0];
    for (x, w) in (-3..=3).zip(want) {
        assert!((time_averaged_measure(x, &p, &up()) - w).abs() < 1e-15);
    }
}

#[test]
fn lower_state_time_average_sums_to_loc_mass() {
    let p = CoinParameters::new(0.3, 2.1);
    let init = make_initial_state(c(0.0, 0.0), c(0.0, 1.0)).unwrap();
    let total: f64 = (-300..=300).map(|x| time_averaged_measure(x, &p, &init)).sum();
    assert!((total - loc_mass(&p, &init)).abs() < 1e-12);
}

#[test]
fn hadamard_one_defect_is_a_probability_measure() {
    let h = FRAC_1_SQRT_2;
    let init = make_initial_state(c(h, 0.0), c(0.0, h)).unwrap();
    let p = CoinParameters::one_defect(0.0);
    let ac = integrate_density(|x| limit_density(x, &p, &init), 1e-12).unwrap().value;
    assert!((ac + loc_mass(&p, &init) - 1.0).abs() < 1e-6);
    assert!(loc_mass(&p, &init) > 0.0);
}
