//! Matrix exponential by scaling and squaring around a truncated Taylor core,
//! and the φ-functions `φ₁(X) = Σ Xⁿ/(n+1)!`, `φ₂(X) = Σ Xⁿ/(n+2)!` obtained
//! from the exponential of an augmented block matrix.

use super::CMatrix;
use crate::error::{Error, Result};

/// Norm the scaled argument is reduced below before the Taylor sum.
const SCALED_NORM: f64 = 0.5;
const MAX_TERMS: usize = 60;

fn check_args(m: &CMatrix, tol: f64) -> Result<()> {
    if !m.is_finite() {
        return Err(Error::InvalidArgument("matrix has non-finite entries".into()));
    }
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    Ok(())
}

/// `e^M`, with the truncation chosen so the backward error relative to `‖M‖`
/// stays below `tol` (floored at unit roundoff).
pub fn expm(m: &CMatrix, tol: f64) -> Result<CMatrix> {
    check_args(m, tol)?;
    let n = m.dim();
    let norm = m.norm_one();
    if norm == 0.0 {
        return Ok(CMatrix::identity(n));
    }

    let mut squarings = 0u32;
    let mut scaled_norm = norm;
    while scaled_norm > SCALED_NORM {
        scaled_norm *= 0.5;
        squarings += 1;
    }
    let x = m.scale_real(libm::ldexp(1.0, -(squarings as i32)));

    // Remainder after the k-th term is bounded by ‖X‖^{k+1}/(k+1)! · 1/(1 − ‖X‖/(k+2)).
    // Stopping once that is below tol·‖X‖ keeps the backward error of the scaled
    // problem, and hence of the squared result, below tol relative to ‖M‖.
    let target = tol.max(f64::EPSILON / 4.0) * scaled_norm;
    let mut sum = CMatrix::identity(n);
    let mut term = CMatrix::identity(n);
    let mut term_bound = 1.0;
    for k in 1..=MAX_TERMS {
        term = (&term * &x).scale_real(1.0 / k as f64);
        sum = &sum + &term;
        term_bound *= scaled_norm / k as f64;
        let tail = term_bound * scaled_norm / (k as f64 + 1.0) / (1.0 - scaled_norm / (k as f64 + 2.0));
        if tail <= target {
            break;
        }
    }

    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    Ok(sum)
}

/// `e^M`, `φ₁(M)` and `φ₂(M)` computed together.
#[derive(Debug, Clone)]
pub struct PhiFunctions {
    pub exp: CMatrix,
    pub phi1: CMatrix,
    pub phi2: CMatrix,
}

/// Exponentiates the block matrix `[[M, I, 0], [0, 0, I], [0, 0, 0]]`, whose
/// first block row is `[e^M, φ₁(M), φ₂(M)]`. No inverse of `M` is needed, so
/// singular arguments are fine.
pub fn phi_functions(m: &CMatrix, tol: f64) -> Result<PhiFunctions> {
    check_args(m, tol)?;
    let n = m.dim();
    let eye = CMatrix::identity(n);
    let mut aug = CMatrix::zeros(3 * n);
    aug.set_block(0, 0, m);
    aug.set_block(0, n, &eye);
    aug.set_block(n, 2 * n, &eye);
    let e = expm(&aug, tol)?;
    Ok(PhiFunctions {
        exp: e.block(0, 0, n),
        phi1: e.block(0, n, n),
        phi2: e.block(0, 2 * n, n),
    })
}

pub fn phi1(m: &CMatrix, tol: f64) -> Result<CMatrix> {
    Ok(phi_functions(m, tol)?.phi1)
}

pub fn phi2(m: &CMatrix, tol: f64) -> Result<CMatrix> {
    Ok(phi_functions(m, tol)?.phi2)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c64;

    const TOL: f64 = 1e-15;

    fn scalar(x: f64) -> CMatrix {
        CMatrix::from_diagonal(&[c64(x, 0.0)])
    }

    fn nilpotent() -> CMatrix {
        let mut m = CMatrix::zeros(2);
        m[(0, 1)] = c64(1.0, 0.0);
        m
    }

    #[test]
    fn exp_of_zero_is_identity() {
        assert_eq!(expm(&CMatrix::zeros(2), TOL).unwrap(), CMatrix::identity(2));
    }

    #[test]
    fn exp_of_scalar() {
        let e = expm(&scalar(1.0), TOL).unwrap();
        assert!((e[(0, 0)] - c64(core::f64::consts::E, 0.0)).norm() < 4e-15);
    }

    #[test]
    fn exp_of_nilpotent_terminates() {
        let e = expm(&nilpotent(), TOL).unwrap();
        let mut expected = CMatrix::identity(2);
        expected[(0, 1)] = c64(1.0, 0.0);
        assert!((&e - &expected).max_abs() < 1e-15);
    }

    #[test]
    fn rejects_non_finite_and_bad_tol() {
        let mut m = CMatrix::identity(2);
        m[(1, 0)] = c64(f64::NAN, 0.0);
        assert!(matches!(expm(&m, TOL), Err(Error::InvalidArgument(_))));
        assert!(matches!(phi1(&CMatrix::identity(1), 0.0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn phi_functions_at_zero() {
        let p = phi_functions(&CMatrix::zeros(3), TOL).unwrap();
        assert!((&p.phi1 - &CMatrix::identity(3)).max_abs() < 1e-15);
        assert!((&p.phi2 - &CMatrix::identity(3).scale_real(0.5)).max_abs() < 1e-15);
    }

    #[test]
    fn phi1_of_scalar_one() {
        let p = phi1(&scalar(1.0), TOL).unwrap();
        assert!((p[(0, 0)].re - (core::f64::consts::E - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn phi1_of_nilpotent() {
        let m = nilpotent();
        let p = phi1(&m, TOL).unwrap();
        let expected = &CMatrix::identity(2) + &m.scale_real(0.5);
        assert!((&p - &expected).max_abs() < 1e-15);
    }

    #[test]
    fn large_argument_scalar() {
        let e = expm(&scalar(10.0), TOL).unwrap();
        let exact = libm::exp(10.0);
        assert!((e[(0, 0)].re - exact).abs() / exact < 1e-13);
        let p = phi_functions(&scalar(-8.0), TOL).unwrap();
        let exact1 = (libm::exp(-8.0) - 1.0) / -8.0;
        let exact2 = (libm::exp(-8.0) - 1.0 + 8.0) / 64.0;
        assert!((p.phi1[(0, 0)].re - exact1).abs() < 1e-14);
        assert!((p.phi2[(0, 0)].re - exact2).abs() < 1e-14);
    }
}
