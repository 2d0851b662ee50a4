//! Decision procedures for the symmetry classes. Every check returns its
//! residuals alongside the verdict.
//!
//! Residuals are max-abs deviations of the defining identity divided by
//! `1 + magnitude` of the symbol, so that a check agrees with the matching
//! fixed-point comparison in [`WcSymbol::deviation`].

use alloc::vec::Vec;

use crate::conjugation::ConjugationParams;
use crate::error::{check_dim, Result};
use crate::linalg::{is_normal, op_norm, CMatrix};
use crate::symbol::WcSymbol;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub name: &'static str,
    pub value: f64,
}

impl Residual {
    pub fn new(name: &'static str, value: f64) -> Self {
        Residual { name, value }
    }
}

/// Verdict plus the residuals it was decided from.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub holds: bool,
    pub residuals: Vec<Residual>,
}

impl CheckReport {
    /// `holds` iff every residual is at most `tol`.
    pub fn from_residuals(residuals: Vec<Residual>, tol: f64) -> Self {
        let holds = residuals.iter().all(|r| r.value <= tol);
        CheckReport { holds, residuals }
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.value).fold(0.0, f64::max)
    }

    pub fn residual(&self, name: &str) -> Option<f64> {
        self.residuals.iter().find(|r| r.name == name).map(|r| r.value)
    }
}

fn scale(s: &WcSymbol) -> f64 {
    1.0 + s.magnitude()
}

fn self_adjoint_parts(s: &WcSymbol) -> (f64, f64) {
    let m = scale(s);
    let linear = (s.linear() - &s.linear().adjoint()).max_abs() / m;
    let exponent = (s.exponent() - s.offset()).max_abs() / m;
    (linear, exponent)
}

/// `Q = Q*`, `ℓ = q`, `θ ∈ ℝ`.
pub fn check_real_symmetric(s: &WcSymbol, tol: f64) -> CheckReport {
    let (linear, exponent) = self_adjoint_parts(s);
    let theta = 2.0 * s.coeff().im.abs() / scale(s);
    CheckReport::from_residuals(
        alloc::vec![
            Residual::new("hermitian_linear", linear),
            Residual::new("exponent_equals_offset", exponent),
            Residual::new("real_coeff", theta),
        ],
        tol,
    )
}

/// `Q = Q*`, `ℓ = q`, `θ ∈ iℝ`.
pub fn check_skew_real_symmetric(s: &WcSymbol, tol: f64) -> CheckReport {
    let (linear, exponent) = self_adjoint_parts(s);
    let theta = 2.0 * s.coeff().re.abs() / scale(s);
    CheckReport::from_residuals(
        alloc::vec![
            Residual::new("hermitian_linear", linear),
            Residual::new("exponent_equals_offset", exponent),
            Residual::new("imaginary_coeff", theta),
        ],
        tol,
    )
}

/// `(AQ)ᵗ = AQ` and `ℓ = conj(Aq) + b̄ − Q*b̄`; the coefficient is free.
pub fn check_j_selfadjoint(s: &WcSymbol, j: &ConjugationParams, tol: f64) -> Result<CheckReport> {
    check_dim(s.dim(), j.dim())?;
    j.require_valid()?;
    let m = scale(s);
    let aq = j.matrix() * s.linear();
    let symmetry = (&aq - &aq.transpose()).max_abs() / m;
    let b_bar = j.shift().conj();
    let expected = &(&(j.matrix() * s.offset()).conj() + &b_bar) - &(&s.linear().adjoint() * &b_bar);
    let exponent = (s.exponent() - &expected).max_abs() / m;
    Ok(CheckReport::from_residuals(
        alloc::vec![
            Residual::new("symmetric_product", symmetry),
            Residual::new("exponent_relation", exponent),
        ],
        tol,
    ))
}

/// `Q` normal with `‖Q‖ ≤ 1`, `(I − Q)ℓ = (I − Q*)q` and `‖ℓ‖ = ‖q‖`.
pub fn check_normal_bounded(s: &WcSymbol, tol: f64) -> CheckReport {
    let m = scale(s);
    let q_lin = s.linear();
    let d = s.dim();
    let normality = is_normal(q_lin, f64::INFINITY).defect;
    let excess = (op_norm(q_lin) - 1.0).max(0.0);
    let id = CMatrix::identity(d);
    let lhs = &(&id - q_lin) * s.exponent();
    let rhs = &(&id - &q_lin.adjoint()) * s.offset();
    let intertwining = (&lhs - &rhs).max_abs() / m;
    let norms = (s.exponent().norm() - s.offset().norm()).abs() / m;
    CheckReport::from_residuals(
        alloc::vec![
            Residual::new("normal_linear", normality),
            Residual::new("norm_excess", excess),
            Residual::new("intertwining", intertwining),
            Residual::new("norm_match", norms),
        ],
        tol,
    )
}

/// `‖Q‖ ≤ 1`. Necessary for boundedness, not sufficient.
pub fn check_bounded_necessary(s: &WcSymbol, tol: f64) -> CheckReport {
    let excess = (op_norm(s.linear()) - 1.0).max(0.0);
    CheckReport::from_residuals(alloc::vec![Residual::new("norm_excess", excess)], tol)
}
