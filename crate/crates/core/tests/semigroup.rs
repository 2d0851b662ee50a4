mod common;

use fockwc_core::classify::check_j_selfadjoint;
use fockwc_core::linalg::{c64, CMatrix};
use fockwc_core::oracle::j_symmetry_defect;
use fockwc_core::semigroup::DEFAULT_EXPM_TOL;
use fockwc_core::{sampling, CVector, MPoly, SemigroupParams, C64};
use proptest::prelude::*;
use rand::Rng;

const TOL: f64 = 1e-9;
const TIMES: [f64; 6] = [0.1, 0.25, 0.5, 1.0, 1.5, 2.0];

/// `ψ_t(z)·f(φ_t(z))`.
fn evolved_value(p: &SemigroupParams, f: &MPoly, z: &CVector, t: f64) -> C64 {
    let (psi, phi) = p.symbol_at(t, DEFAULT_EXPM_TOL).unwrap().eval(z).unwrap();
    psi * f.eval(&phi).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laws_hold_on_the_unit_square(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let d = 1 + (seed % 3) as usize;
        let p = sampling::semigroup_params(&mut r, d, 1.0);
        for _ in 0..20 {
            let t = r.random_range(0.0..1.0);
            let s = r.random_range(0.0..1.0);
            let report = p.check_laws(t, s, TOL).unwrap();
            prop_assert!(report.holds, "t={} s={} {:?}", t, s, report);
        }
    }

    #[test]
    fn drift_free_laws_are_exact(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let d = 1 + (seed % 3) as usize;
        let p = SemigroupParams::new(
            CMatrix::zeros(d),
            sampling::vector(&mut r, d, 1.0),
            sampling::vector(&mut r, d, 1.0),
            sampling::complex(&mut r, 0.5),
        )
        .unwrap();
        let t = r.random_range(0.0..3.0);
        let s = r.random_range(0.0..3.0);
        prop_assert!(p.check_laws(t, s, 1e-13).unwrap().holds);
    }

    #[test]
    fn time_zero_is_exactly_the_identity(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let d = 1 + (seed % 3) as usize;
        let p = sampling::semigroup_params(&mut r, d, 2.0);
        let s = p.symbol_at(0.0, DEFAULT_EXPM_TOL).unwrap();
        prop_assert_eq!(s, fockwc_core::WcSymbol::identity(d));
    }

    #[test]
    fn j_conditions_make_every_member_j_selfadjoint(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let d = 1 + (seed % 3) as usize;
        let j = sampling::conjugation(&mut r, d, true);
        let p = sampling::j_semigroup_params(&mut r, &j, 1.0);
        prop_assert!(p.validate_j_conditions(&j, TOL).unwrap().holds);
        let pts = sampling::points(&mut r, d, 4, 0.6);
        for t in TIMES {
            let s = p.symbol_at(t, DEFAULT_EXPM_TOL).unwrap();
            let report = check_j_selfadjoint(&s, &j, TOL).unwrap();
            prop_assert!(report.holds, "t={} {:?}", t, report);
            prop_assert!(j_symmetry_defect(&s, &j, &pts).unwrap() <= 1e-10);
        }
    }

    #[test]
    fn leaving_the_j_conditions_is_detected(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let d = 1 + (seed % 3) as usize;
        let j = sampling::conjugation(&mut r, d, true);
        let p = sampling::j_semigroup_params(&mut r, &j, 1.0);
        let mut ell = p.exponent_rate().clone();
        let k = r.random_range(0..d);
        ell[k] += sampling::unit_phase(&mut r) * 0.1;
        let moved = p.with_exponent_rate(ell).unwrap();
        prop_assert!(!moved.validate_j_conditions(&j, TOL).unwrap().holds);
        let fails = TIMES.iter().any(|&t| {
            let s = moved.symbol_at(t, DEFAULT_EXPM_TOL).unwrap();
            !check_j_selfadjoint(&s, &j, TOL).unwrap().holds
        });
        prop_assert!(fails);
    }

    #[test]
    fn generator_is_linear(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let d = 1 + (seed % 3) as usize;
        let p = sampling::semigroup_params(&mut r, d, 1.0);
        let f = sampling::polynomial(&mut r, d, 3, 5);
        let g = sampling::polynomial(&mut r, d, 2, 4);
        let (a, b) = (sampling::complex(&mut r, 1.0), sampling::complex(&mut r, 1.0));
        let lhs = p.generator_apply(&f.scale(a).add(&g.scale(b)).unwrap()).unwrap();
        let rhs = p
            .generator_apply(&f)
            .unwrap()
            .scale(a)
            .add(&p.generator_apply(&g).unwrap().scale(b))
            .unwrap();
        let z = sampling::ball_point(&mut r, d, 1.0);
        prop_assert!(common::rel_gap(lhs.eval(&z).unwrap(), rhs.eval(&z).unwrap()) <= 1e-13);
        prop_assert_eq!(lhs.degree(), Some(4));
    }

    #[test]
    fn generator_is_the_time_derivative(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let d = 1 + (seed % 3) as usize;
        let p = sampling::semigroup_params(&mut r, d, 1.0);
        let f = sampling::polynomial(&mut r, d, 3, 5);
        let z = sampling::ball_point(&mut r, d, 0.8);
        let h = 1e-4;
        // One-sided second-order difference at t = 0.
        let derivative = (evolved_value(&p, &f, &z, h) * 4.0
            - evolved_value(&p, &f, &z, 2.0 * h)
            - evolved_value(&p, &f, &z, 0.0) * 3.0)
            / (2.0 * h);
        let g = p.generator_apply(&f).unwrap().eval(&z).unwrap();
        prop_assert!(common::rel_gap(derivative, g) <= 1e-6, "{} vs {}", derivative, g);
    }

    #[test]
    fn finite_differences_converge_at_first_order(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let d = 1 + (seed % 2) as usize;
        let p = sampling::semigroup_params(&mut r, d, 1.0);
        let f = sampling::polynomial(&mut r, d, 2, 4);
        let steps = [1e-2, 5e-3, 2.5e-3];
        let res: Vec<f64> = steps.iter().map(|&h| p.generator_fd_residual(&f, h, 8).unwrap()).collect();
        for w in res.windows(2) {
            let ratio = w[1] / w[0];
            prop_assert!((0.4..=0.6).contains(&ratio), "{:?}", res);
        }
    }

    #[test]
    fn continuity_defect_shrinks_with_time(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let d = 1 + (seed % 3) as usize;
        let p = sampling::semigroup_params(&mut r, d, 1.0);
        let w = sampling::ball_point(&mut r, d, 1.0);
        prop_assert_eq!(p.continuity_defect(&w, 0.0).unwrap(), 0.0);
        let defects: Vec<f64> = (1..=6).map(|k| p.continuity_defect(&w, 10f64.powi(-k)).unwrap()).collect();
        for pair in defects.windows(2) {
            prop_assert!(pair[1] < pair[0], "{:?}", defects);
        }
        // O(t): each decade shrinks the defect by about ten.
        let ratio = defects[5] / defects[4];
        prop_assert!((0.05..=0.2).contains(&ratio), "{:?}", defects);
    }

    #[test]
    fn generator_is_j_symmetric(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let d = 1 + (seed % 2) as usize;
        let j = sampling::conjugation(&mut r, d, true);
        let p = sampling::j_semigroup_params(&mut r, &j, 1.0);
        let polys: Vec<MPoly> = (0..4)
            .map(|k| sampling::polynomial(&mut r, d, k as u32 + 1, 3))
            .collect();
        prop_assert!(p.generator_j_symmetry_defect(&j, &polys, 8).unwrap() <= 1e-9);
    }
}

#[test]
fn generator_asymmetry_is_visible_off_the_conditions() {
    let mut r = common::rng(7);
    let j = sampling::conjugation(&mut r, 1, true);
    let p = sampling::j_semigroup_params(&mut r, &j, 1.0);
    let mut ell = p.exponent_rate().clone();
    ell[0] += c64(0.1, 0.0);
    let moved = p.with_exponent_rate(ell).unwrap();
    let polys: Vec<MPoly> = (0..4).map(|k| sampling::polynomial(&mut r, 1, k + 1, 3)).collect();
    assert!(moved.generator_j_symmetry_defect(&j, &polys, 8).unwrap() > 1e-4);
}

#[test]
fn zero_polynomial_has_zero_residual() {
    let mut r = common::rng(3);
    let p = sampling::semigroup_params(&mut r, 2, 1.0);
    assert_eq!(p.generator_fd_residual(&MPoly::zero(2), 1e-3, 4).unwrap(), 0.0);
}

#[test]
fn negative_time_is_rejected() {
    let mut r = common::rng(5);
    let p = sampling::semigroup_params(&mut r, 2, 1.0);
    assert!(p.symbol_at(-1e-3, DEFAULT_EXPM_TOL).is_err());
}
