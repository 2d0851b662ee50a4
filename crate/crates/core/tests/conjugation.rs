mod common;

use common::{kernel_at, rel_gap};
use fockwc_core::classify::check_j_selfadjoint;
use fockwc_core::conjugation::{find_conjugation_normal, find_conjugation_real_symmetric};
use fockwc_core::linalg::{is_symmetric, CMatrix};
use fockwc_core::oracle::{involution_defect, isometry_defect, KernelCombo};
use fockwc_core::{sampling, CVector, ConjugationParams};
use proptest::prelude::*;
use rand::Rng;

fn combo<R: Rng>(r: &mut R, d: usize, n: usize) -> KernelCombo {
    let pts = sampling::points(r, d, n, 1.2);
    KernelCombo::from_terms(d, pts.into_iter().map(|p| (sampling::complex(r, 1.0), p)).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sampled_conjugations_are_valid(seed in any::<u64>(), shifted in any::<bool>()) {
        let mut r = common::rng(seed);
        let d = 1 + (seed % 4) as usize;
        let j = sampling::conjugation(&mut r, d, shifted);
        let report = j.validate(1e-12);
        prop_assert!(report.holds, "{:?}", report);
    }

    #[test]
    fn kernel_image_pointwise(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let d = 1 + (seed % 3) as usize;
        let j = sampling::conjugation(&mut r, d, true);
        let w = sampling::ball_point(&mut r, d, 1.2);
        let k = j.apply_to_kernel(&w).unwrap();
        for _ in 0..10 {
            let x = sampling::ball_point(&mut r, d, 1.2);
            let lhs = j.apply_pointwise(|y| kernel_at(&w, y), &x).unwrap();
            prop_assert!(rel_gap(lhs, k.eval(&x)) < 1e-10);
        }
    }

    #[test]
    fn involution_and_isometry_on_spans(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let d = 1 + (seed % 3) as usize;
        let j = sampling::conjugation(&mut r, d, true);
        let f = combo(&mut r, d, 6);
        let g = combo(&mut r, d, 6);
        let probes = sampling::points(&mut r, d, 6, 1.2);
        prop_assert!(involution_defect(&j, &f, &probes).unwrap() <= 1e-10);
        prop_assert!(isometry_defect(&j, &f, &g).unwrap() <= 1e-10);
    }

    #[test]
    fn real_symmetric_construction(seed in any::<u64>(), repeated in any::<bool>(), skew in any::<bool>()) {
        let mut r = common::rng(seed);
        let d = 1 + (seed % 4) as usize;
        let s = if skew {
            sampling::skew_real_symmetric_symbol(&mut r, d, repeated)
        } else {
            sampling::real_symmetric_symbol(&mut r, d, repeated)
        };
        let j = find_conjugation_real_symmetric(&s, 1e-9).unwrap();
        prop_assert!(j.validate(1e-9).holds);
        prop_assert!(j.shift().max_abs() == 0.0 && j.scale() == fockwc_core::linalg::c64(1.0, 0.0));
        let report = check_j_selfadjoint(&s, &j, 1e-9).unwrap();
        prop_assert!(report.holds, "{:?}", report);
        let aq = j.matrix() * s.linear();
        prop_assert!(is_symmetric(&aq, 1e-10).holds);
        prop_assert_eq!(find_conjugation_real_symmetric(&s, 1e-9).unwrap(), j);
    }

    #[test]
    fn normal_construction(seed in any::<u64>(), repeated in any::<bool>(), unit in any::<bool>()) {
        let mut r = common::rng(seed);
        let d = 1 + (seed % 4) as usize;
        let s = sampling::normal_bounded_symbol(&mut r, d, repeated, unit);
        let j = find_conjugation_normal(&s, 1e-9).unwrap();
        prop_assert!(j.validate(1e-9).holds, "{:?}", j.validate(1e-9));
        let report = check_j_selfadjoint(&s, &j, 1e-9).unwrap();
        prop_assert!(report.holds, "{:?}", report);
        let aq = j.matrix() * s.linear();
        prop_assert!(is_symmetric(&aq, 1e-10).holds);
        prop_assert_eq!(find_conjugation_normal(&s, 1e-9).unwrap(), j);
    }
}

#[test]
fn identity_conjugation_on_combo() {
    let f = KernelCombo::from_terms(
        2,
        vec![(fockwc_core::linalg::c64(0.5, -1.0), CVector::from_real(&[0.3, -0.2]))],
    )
    .unwrap();
    let j = ConjugationParams::identity(2);
    let probes = vec![CVector::zeros(2), CVector::from_real(&[1.0, 0.5])];
    assert!(involution_defect(&j, &f, &probes).unwrap() < 1e-15);
}

#[test]
fn unitary_diagonal_normal_with_zero_offset() {
    let u = CMatrix::from_diagonal(&[
        fockwc_core::linalg::c64(0.0, 1.0),
        fockwc_core::linalg::c64(-1.0, 0.0),
    ]);
    let s = fockwc_core::WcSymbol::identity(2).with_linear(u).unwrap();
    let j = find_conjugation_normal(&s, 1e-9).unwrap();
    assert_eq!(j.matrix(), &CMatrix::identity(2));
}
