//! Conjugations `𝒥f(z) = c·e^{⟨z,b̄⟩}·conj(f(conj(Az + b)))` and constructions
//! of a conjugation making a given operator `𝒥`-selfadjoint.

use alloc::format;
use alloc::vec::Vec;

use crate::classify::{check_normal_bounded, check_real_symmetric, check_skew_real_symmetric, CheckReport, Residual};
use crate::error::{check_dim, Error, Result};
use crate::linalg::{c64, default_group_tol, herm_eig, is_finite, is_symmetric, is_unitary, CMatrix, CVector, C64};
use crate::linalg::decomp::schur_spectral;
use crate::symbol::{ScaledKernel, WcSymbol};

/// Tolerance at which operations that require a conjugation accept the
/// parameters.
pub const PARAMS_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct ConjugationParams {
    matrix: CMatrix,
    shift: CVector,
    scale: C64,
}

impl ConjugationParams {
    /// Stores the parameters; only shapes and finiteness are checked here, the
    /// conjugation conditions are reported by [`ConjugationParams::validate`].
    pub fn new(matrix: CMatrix, shift: CVector, scale: C64) -> Result<Self> {
        if matrix.dim() == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        check_dim(matrix.dim(), shift.dim())?;
        if !matrix.is_finite() || !shift.is_finite() || !is_finite(scale) {
            return Err(Error::InvalidArgument("conjugation has non-finite entries".into()));
        }
        Ok(ConjugationParams { matrix, shift, scale })
    }

    /// Coordinatewise conjugation `f ↦ conj(f(z̄))`.
    pub fn identity(d: usize) -> Self {
        ConjugationParams {
            matrix: CMatrix::identity(d),
            shift: CVector::zeros(d),
            scale: c64(1.0, 0.0),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn shift(&self) -> &CVector {
        &self.shift
    }

    pub fn scale(&self) -> C64 {
        self.scale
    }

    /// Residuals of the three conditions: `A` unitary and symmetric,
    /// `A b̄ + b = 0`, and `|c|² e^{|b|²} = 1`.
    pub fn validate(&self, tol: f64) -> CheckReport {
        let a = &self.matrix;
        let matrix_defect = is_unitary(a, f64::INFINITY)
            .defect
            .max((a - &a.transpose()).max_abs());
        let shift_defect = (&(a * &self.shift.conj()) + &self.shift).norm();
        let scale_defect = (self.scale.norm_sqr() * crate::real::exp(self.shift.norm_sqr()) - 1.0).abs();
        CheckReport::from_residuals(
            alloc::vec![
                Residual::new("unitary_symmetric_matrix", matrix_defect),
                Residual::new("shift_relation", shift_defect),
                Residual::new("scale_normalisation", scale_defect),
            ],
            tol,
        )
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        let report = self.validate(PARAMS_TOL);
        if report.holds {
            Ok(())
        } else {
            Err(Error::PreconditionViolation(format!(
                "conjugation parameters are invalid (max residual {:e})",
                report.max_residual()
            )))
        }
    }

    /// `𝒥K_w = c·e^{⟨b,w̄⟩}·K_{A*w̄ + b̄}`.
    pub fn apply_to_kernel(&self, w: &CVector) -> Result<ScaledKernel> {
        check_dim(self.dim(), w.dim())?;
        self.require_valid()?;
        let w_bar = w.conj();
        Ok(ScaledKernel {
            coeff: self.scale * self.shift.inner(&w_bar).exp(),
            point: &(&self.matrix.adjoint() * &w_bar) + &self.shift.conj(),
        })
    }

    /// `(𝒥f)(x)` given a way to evaluate `f`.
    pub fn apply_pointwise(&self, f: impl Fn(&CVector) -> C64, x: &CVector) -> Result<C64> {
        check_dim(self.dim(), x.dim())?;
        let inner = (&(&self.matrix * x) + &self.shift).conj();
        Ok(self.scale * x.inner(&self.shift.conj()).exp() * f(&inner).conj())
    }
}

/// Conjugation `𝒥_{A,0,1}` for a real-symmetric or skew-real-symmetric
/// operator, with `A = V̄·D·V*` where `Q = V·M·V*` and `D` is a diagonal phase
/// matrix making `D·(V*q)` the conjugate of `V*q`.
pub fn find_conjugation_real_symmetric(s: &WcSymbol, tol: f64) -> Result<ConjugationParams> {
    if !check_real_symmetric(s, tol).holds && !check_skew_real_symmetric(s, tol).holds {
        return Err(Error::NotApplicable(
            "operator is neither real symmetric nor skew-real symmetric".into(),
        ));
    }
    let q_lin = s.linear();
    let herm = (q_lin + &q_lin.adjoint()).scale_real(0.5);
    let spectral = herm_eig(&herm, default_group_tol(&herm))?;
    let v = &spectral.unitary;
    let u = &v.adjoint() * s.offset();
    let phases: Vec<C64> = u.iter().map(|&x| phase_pair(x, x)).collect();
    let matrix = &(&v.conj() * &CMatrix::from_diagonal(&phases)) * &v.adjoint();
    ConjugationParams::new(symmetrise(&matrix), CVector::zeros(s.dim()), c64(1.0, 0.0))
}

/// Conjugation `𝒥_{A,0,1}` for an operator that is normal in the bounded sense.
///
/// Away from the eigenvalue 1 the phase of each eigen-coordinate is fixed by
/// the intertwining relation. On the eigenspace of 1 that relation is empty and
/// only the norms agree, so a symmetric unitary block carrying the offset
/// coordinates onto the conjugated exponent coordinates is used instead.
pub fn find_conjugation_normal(s: &WcSymbol, tol: f64) -> Result<ConjugationParams> {
    if !check_normal_bounded(s, tol).holds {
        return Err(Error::NotApplicable("operator is not normal in the bounded sense".into()));
    }
    let q_lin = s.linear();
    let group_tol = default_group_tol(q_lin);
    let spectral = schur_spectral(q_lin, group_tol);
    let v = &spectral.unitary;
    let v_adj = v.adjoint();
    let u = &v_adj * s.offset();
    let m = &v_adj * s.exponent();
    let d = s.dim();

    let mut block = CMatrix::zeros(d);
    for group in &spectral.groups {
        let lambda = spectral.eigenvalues[group.start];
        if (lambda - c64(1.0, 0.0)).norm() <= group_tol {
            let x = CVector::new(group.clone().map(|k| u[k]).collect());
            let y = CVector::new(group.clone().map(|k| m[k].conj()).collect());
            block.set_block(group.start, group.start, &symmetric_unitary_map(&x, &y));
        } else {
            for k in group.clone() {
                block[(k, k)] = phase_pair(u[k], m[k]);
            }
        }
    }
    let matrix = &(&v.conj() * &block) * &v_adj;
    ConjugationParams::new(symmetrise(&matrix), CVector::zeros(d), c64(1.0, 0.0))
}

/// Unimodular `ω` with `ω·u = conj(m)` whenever `|u| = |m|`; `1` if either vanishes.
fn phase_pair(u: C64, m: C64) -> C64 {
    let z = (u * m).conj();
    let r = z.norm();
    if r == 0.0 {
        c64(1.0, 0.0)
    } else {
        z / r
    }
}

/// Removes the roundoff asymmetry of `V̄ D V*`.
fn symmetrise(m: &CMatrix) -> CMatrix {
    if is_symmetric(m, 0.0).holds {
        return m.clone();
    }
    (m + &m.transpose()).scale_real(0.5)
}

/// A symmetric unitary `W` with `W x = y`, for `‖x‖ = ‖y‖`.
///
/// With `κ = xᵗy` and `ρ = ‖x‖` the vector `s = ρe^{iη}(cos τ·e₁ + i sin τ·e₂)`,
/// `η = arg κ / 2`, `cos 2τ = |κ|/ρ²`, satisfies `sᵗs = κ`. A unitary `U` with
/// `U s = y` and `U s̄ = x̄` then exists because both pairs have the same Gram
/// matrix, and `W = U Uᵗ` works: `Uᵗx = conj(U* x̄) = s`.
pub(crate) fn symmetric_unitary_map(x: &CVector, y: &CVector) -> CMatrix {
    let k = x.dim();
    let rho = x.norm();
    if rho <= f64::EPSILON * (1.0 + y.norm()) {
        return CMatrix::identity(k);
    }
    if k == 1 {
        let w = y[0] / x[0];
        return CMatrix::from_diagonal(&[w / w.norm()]);
    }
    let kappa = x.dot(y);
    let eta = kappa.arg() / 2.0;
    let cos2tau = (kappa.norm() / (rho * rho)).min(1.0);
    let tau = libm::acos(cos2tau) / 2.0;
    let mut s = CVector::zeros(k);
    let lead = c64(0.0, eta).exp() * rho;
    s[0] = lead * crate::real::cos(tau);
    s[1] = lead * c64(0.0, crate::real::sin(tau));

    let source = orthonormal_frame(&[s.clone(), s.conj()], k);
    let target = orthonormal_frame(&[y.clone(), x.conj()], k);
    let u = &CMatrix::from_columns(&target) * &CMatrix::from_columns(&source).adjoint();
    &u * &u.transpose()
}

/// Gram–Schmidt on `seeds` followed by the standard basis, keeping the first
/// `k` independent directions. Seeds that are (numerically) dependent on the
/// earlier ones are skipped the same way for matching Gram matrices.
fn orthonormal_frame(seeds: &[CVector], k: usize) -> Vec<CVector> {
    let mut frame: Vec<CVector> = Vec::with_capacity(k);
    let scale = seeds.iter().map(|s| s.norm()).fold(0.0, f64::max).max(1.0);
    let push = |frame: &mut Vec<CVector>, v: &CVector, threshold: f64| {
        let mut r = v.clone();
        for _ in 0..2 {
            for e in frame.iter() {
                let proj = r.inner(e);
                r = &r - &e.scale(proj);
            }
        }
        let n = r.norm();
        if n > threshold {
            frame.push(r.scale(c64(1.0 / n, 0.0)));
        }
    };
    for s in seeds {
        push(&mut frame, s, 1e-12 * scale);
    }
    for i in 0..k {
        if frame.len() == k {
            break;
        }
        push(&mut frame, &CVector::unit(k, i), 1e-6);
    }
    frame
}
