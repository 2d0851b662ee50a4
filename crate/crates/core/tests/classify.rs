mod common;

use fockwc_core::classify::{
    check_bounded_necessary, check_j_selfadjoint, check_normal_bounded, check_real_symmetric,
    check_skew_real_symmetric,
};
use fockwc_core::conjugation::{find_conjugation_normal, find_conjugation_real_symmetric};
use fockwc_core::linalg::{c64, CMatrix};
use fockwc_core::{sampling, WcSymbol, C64};
use proptest::prelude::*;
use rand::Rng;

const TOL: f64 = 1e-9;

/// A candidate that either satisfies the class conditions or has one of them
/// broken by a random amount.
fn candidate<R: Rng>(r: &mut R, d: usize, skew: bool) -> WcSymbol {
    let repeated = r.random::<bool>();
    let s = if skew {
        sampling::skew_real_symmetric_symbol(r, d, repeated)
    } else {
        sampling::real_symmetric_symbol(r, d, repeated)
    };
    let size = 10f64.powf(r.random_range(-8.0..-1.0));
    match r.random_range(0..4) {
        0 => s,
        1 => s.with_coeff(s.coeff() + sampling::complex(r, size)).unwrap(),
        2 => {
            let mut ell = s.exponent().clone();
            ell[0] += sampling::complex(r, size);
            s.with_exponent(ell).unwrap()
        }
        _ => {
            let mut m = s.linear().clone();
            let k = r.random_range(0..d);
            let idx = (k, (k + 1) % d);
            let delta = sampling::complex(r, size);
            let bump = CMatrix::from_fn(d, |a, b| if (a, b) == idx { delta } else { c64(0.0, 0.0) });
            m = &m + &bump;
            s.with_linear(m).unwrap()
        }
    }
}

fn bump(s: &WcSymbol, which: usize, size: f64) -> WcSymbol {
    let d = s.dim();
    match which {
        0 => {
            // Push the coefficient off the real axis.
            s.with_coeff(s.coeff() + c64(0.0, size)).unwrap()
        }
        1 => {
            let mut ell = s.exponent().clone();
            ell[d - 1] += c64(size, 0.0);
            s.with_exponent(ell).unwrap()
        }
        _ => {
            let mut m = s.linear().clone();
            m = &m + &CMatrix::from_fn(d, |a, b| if a == 0 && b == d - 1 { c64(0.0, size) } else { c64(0.0, 0.0) });
            s.with_linear(m).unwrap()
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn real_symmetry_is_adjoint_fixed_point(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let d = 1 + (seed % 3) as usize;
        let s = candidate(&mut r, d, false);
        let fixed = s.adjoint().approx_eq(&s, TOL).unwrap();
        prop_assert_eq!(check_real_symmetric(&s, TOL).holds, fixed);
    }

    #[test]
    fn skew_symmetry_is_negated_fixed_point(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let d = 1 + (seed % 3) as usize;
        let s = candidate(&mut r, d, true);
        let fixed = s.adjoint().approx_eq(&s.negate_coeff(), TOL).unwrap();
        prop_assert_eq!(check_skew_real_symmetric(&s, TOL).holds, fixed);
    }

    #[test]
    fn j_selfadjointness_is_j_adjoint_fixed_point(seed in any::<u64>(), broken in any::<bool>()) {
        let mut r = common::rng(seed);
        let d = 1 + (seed % 3) as usize;
        let j = sampling::conjugation(&mut r, d, true);
        let mut s = sampling::j_selfadjoint_symbol(&mut r, &j);
        if broken {
            let mut ell = s.exponent().clone();
            ell[0] += c64(1e-4, 0.0);
            s = s.with_exponent(ell).unwrap();
        }
        let verdict = check_j_selfadjoint(&s, &j, TOL).unwrap().holds;
        prop_assert_eq!(verdict, !broken);
        prop_assert_eq!(s.j_adjoint(&j).unwrap().approx_eq(&s, TOL).unwrap(), verdict);
    }

    #[test]
    fn classes_admit_constructed_conjugations(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let d = 1 + (seed % 4) as usize;
        let s = sampling::real_symmetric_symbol(&mut r, d, true);
        prop_assert!(check_real_symmetric(&s, TOL).holds);
        let j = find_conjugation_real_symmetric(&s, TOL).unwrap();
        prop_assert!(check_j_selfadjoint(&s, &j, TOL).unwrap().holds);
        let (repeated, unit) = (r.random::<bool>(), r.random::<bool>());
        let n = sampling::normal_bounded_symbol(&mut r, d, repeated, unit);
        prop_assert!(check_normal_bounded(&n, TOL).holds);
        prop_assert!(check_bounded_necessary(&n, TOL).holds);
        let j = find_conjugation_normal(&n, TOL).unwrap();
        prop_assert!(check_j_selfadjoint(&n, &j, TOL).unwrap().holds);
    }

    #[test]
    fn single_condition_perturbation_flips_verdict(seed in any::<u64>(), which in 0usize..3) {
        let mut r = common::rng(seed);
        let d = 1 + (seed % 3) as usize;
        let s = sampling::real_symmetric_symbol(&mut r, d, false);
        prop_assert!(check_real_symmetric(&s, TOL).holds);
        let p = bump(&s, which, 1e3 * TOL * (1.0 + s.magnitude()));
        prop_assert!(!check_real_symmetric(&p, TOL).holds);
    }

    #[test]
    fn near_contractions_pass_the_necessary_check(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let d = 1 + (seed % 4) as usize;
        let u = sampling::unitary(&mut r, d).scale_real(0.99);
        let s = WcSymbol::identity(d).with_linear(u).unwrap();
        prop_assert!(check_bounded_necessary(&s, TOL).holds);
    }
}

#[test]
fn necessary_check_rejects_expansion() {
    let q = CMatrix::from_diagonal(&[c64(1.5, 0.0), c64(0.0, 0.0)]);
    let s = WcSymbol::identity(2).with_linear(q).unwrap();
    assert!(!check_bounded_necessary(&s, TOL).holds);
}

#[test]
fn zero_coefficient_is_not_a_symbol() {
    let s = WcSymbol::identity(1);
    assert!(s.with_coeff(C64::new(0.0, 0.0)).is_err());
}
