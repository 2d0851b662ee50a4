//! One-parameter semigroups `C(t) = C_{ψ_t, φ_t}` with
//! `φ_t(z) = e^{tΩ}z + ∫₀ᵗ e^{sΩ}q◇ ds` and
//! `ψ_t(z) = exp(θ◇t + ∫₀ᵗ⟨q_s, ℓ◇⟩ds + ⟨z, ∫₀ᵗ e^{sΩ*}ℓ◇ ds⟩)`,
//! and their generators on polynomials.
//!
//! The integrals are closed forms in the φ-functions:
//! `∫₀ᵗ e^{sΩ}ds = tφ₁(tΩ)` and `∫₀ᵗ∫₀^σ e^{sΩ}ds dσ = t²φ₂(tΩ)`.

use alloc::vec::Vec;

use crate::classify::{CheckReport, Residual};
use crate::conjugation::ConjugationParams;
use crate::error::{check_dim, Error, Result};
use crate::linalg::{c64, is_finite, phi_functions, CMatrix, CVector, C64};
use crate::oracle::{trunc_conjugation_matrix, trunc_symbol_matrix, MPoly, MonomialBasis, MultiIndex};
use crate::real;
use crate::symbol::WcSymbol;

/// Tolerance used for the matrix functions when none is supplied.
pub const DEFAULT_EXPM_TOL: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct SemigroupParams {
    drift: CMatrix,
    offset_rate: CVector,
    exponent_rate: CVector,
    coeff_rate: C64,
}

/// Coefficients of `C(t)` together with `ln θ_t`.
struct Evolved {
    symbol: WcSymbol,
    log_coeff: C64,
}

impl SemigroupParams {
    /// `drift` is `Ω`, `offset_rate` is `q◇`, `exponent_rate` is `ℓ◇` and
    /// `coeff_rate` is `θ◇`.
    pub fn new(drift: CMatrix, offset_rate: CVector, exponent_rate: CVector, coeff_rate: C64) -> Result<Self> {
        let d = drift.dim();
        if d == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        check_dim(d, offset_rate.dim())?;
        check_dim(d, exponent_rate.dim())?;
        if !drift.is_finite() || !offset_rate.is_finite() || !exponent_rate.is_finite() || !is_finite(coeff_rate) {
            return Err(Error::InvalidArgument("semigroup data has non-finite entries".into()));
        }
        Ok(SemigroupParams {
            drift,
            offset_rate,
            exponent_rate,
            coeff_rate,
        })
    }

    pub fn dim(&self) -> usize {
        self.drift.dim()
    }

    pub fn drift(&self) -> &CMatrix {
        &self.drift
    }

    pub fn offset_rate(&self) -> &CVector {
        &self.offset_rate
    }

    pub fn exponent_rate(&self) -> &CVector {
        &self.exponent_rate
    }

    pub fn coeff_rate(&self) -> C64 {
        self.coeff_rate
    }

    pub fn with_exponent_rate(&self, exponent_rate: CVector) -> Result<Self> {
        SemigroupParams::new(self.drift.clone(), self.offset_rate.clone(), exponent_rate, self.coeff_rate)
    }

    fn evolve(&self, t: f64, tol: f64) -> Result<Evolved> {
        if !t.is_finite() || t < 0.0 {
            return Err(Error::InvalidArgument("time must be finite and non-negative".into()));
        }
        let phi = phi_functions(&self.drift.scale_real(t), tol)?;
        let linear = phi.exp;
        let offset = (&phi.phi1 * &self.offset_rate).scale(c64(t, 0.0));
        let exponent = (&phi.phi1.adjoint() * &self.exponent_rate).scale(c64(t, 0.0));
        let integrated = (&phi.phi2 * &self.offset_rate).scale(c64(t * t, 0.0));
        let log_coeff = self.coeff_rate * t + integrated.inner(&self.exponent_rate);
        let symbol = WcSymbol::new(log_coeff.exp(), exponent, linear, offset)?;
        Ok(Evolved { symbol, log_coeff })
    }

    /// The symbol of `C(t)`.
    pub fn symbol_at(&self, t: f64, tol: f64) -> Result<WcSymbol> {
        Ok(self.evolve(t, tol)?.symbol)
    }

    /// Conditions on `(Ω, q◇, ℓ◇)` making every `C(t)` `𝒥`-selfadjoint.
    ///
    /// Three residuals are reported: symmetry of `AΩ`, the drift relation
    /// `Ω*ℓ◇ = conj(AΩq◇) − (Ω*)²b̄`, and the offset relation
    /// `ℓ◇ = conj(Aq◇) − Ω*b̄`. The verdict uses the symmetry and the offset
    /// relation: the drift relation is the offset relation multiplied by `Ω*`
    /// and loses information when `Ω` is singular.
    pub fn validate_j_conditions(&self, j: &ConjugationParams, tol: f64) -> Result<CheckReport> {
        check_dim(self.dim(), j.dim())?;
        j.require_valid()?;
        let a = j.matrix();
        let omega = &self.drift;
        let omega_adj = omega.adjoint();
        let b_bar = j.shift().conj();
        let scale = 1.0
            + omega
                .max_abs()
                .max(self.offset_rate.max_abs())
                .max(self.exponent_rate.max_abs());

        let a_omega = a * omega;
        let symmetry = (&a_omega - &a_omega.transpose()).max_abs() / scale;

        let lhs = &omega_adj * &self.exponent_rate;
        let rhs = &(&a_omega * &self.offset_rate).conj() - &(&omega_adj * &(&omega_adj * &b_bar));
        let drift_relation = (&lhs - &rhs).max_abs() / (scale * scale);

        let expected = &(a * &self.offset_rate).conj() - &(&omega_adj * &b_bar);
        let offset_relation = (&self.exponent_rate - &expected).max_abs() / scale;

        let holds = symmetry <= tol && offset_relation <= tol;
        Ok(CheckReport {
            holds,
            residuals: alloc::vec![
                Residual::new("symmetric_drift", symmetry),
                Residual::new("drift_relation", drift_relation),
                Residual::new("offset_relation", offset_relation),
            ],
        })
    }

    /// Semiflow and semicocycle laws at `(t, s)`: both products
    /// `C(t)C(s)` and `C(s)C(t)` compared with `C(t+s)`.
    pub fn check_laws(&self, t: f64, s: f64, tol: f64) -> Result<CheckReport> {
        let st = self.symbol_at(t, DEFAULT_EXPM_TOL)?;
        let ss = self.symbol_at(s, DEFAULT_EXPM_TOL)?;
        let sum = self.symbol_at(t + s, DEFAULT_EXPM_TOL)?;
        let forward = st.compose(&ss)?.deviation(&sum)?;
        let reverse = ss.compose(&st)?.deviation(&sum)?;
        Ok(CheckReport::from_residuals(
            alloc::vec![
                Residual::new("forward_product", forward),
                Residual::new("reverse_product", reverse),
            ],
            tol,
        ))
    }

    /// `Gf = (θ◇ + Σₖ zₖ·conj(ℓ◇ₖ))·f + Σₖ ∂ₖf·(Ωz + q◇)ₖ`.
    pub fn generator_apply(&self, f: &MPoly) -> Result<MPoly> {
        let d = self.dim();
        check_dim(d, f.dim())?;
        let mut multiplier = MPoly::constant(d, self.coeff_rate);
        for k in 0..d {
            multiplier.add_term(MultiIndex::unit(d, k), self.exponent_rate[k].conj());
        }
        let mut out = multiplier.mul(f)?;
        for k in 0..d {
            let partial = f.derivative(k)?;
            if partial.is_zero() {
                continue;
            }
            let mut field = MPoly::constant(d, self.offset_rate[k]);
            for j in 0..d {
                field.add_term(MultiIndex::unit(d, j), self.drift[(k, j)]);
            }
            out = out.add(&partial.mul(&field)?)?;
        }
        Ok(out)
    }

    /// `‖(C(h)f − f)/h − Gf‖` over the coordinates of degree `≤ deg f + 1`,
    /// with `C(h)` taken as its degree-`N` section.
    pub fn generator_fd_residual(&self, f: &MPoly, h: f64, degree: u32) -> Result<f64> {
        check_dim(self.dim(), f.dim())?;
        if h.is_nan() || h <= 0.0 {
            return Err(Error::InvalidArgument("step must be positive".into()));
        }
        let Some(deg_f) = f.degree() else {
            return Ok(0.0);
        };
        if degree < deg_f + 2 {
            return Err(Error::InvalidArgument(alloc::format!(
                "section degree {degree} must be at least deg f + 2 = {}",
                deg_f + 2
            )));
        }
        let op = trunc_symbol_matrix(&self.symbol_at(h, DEFAULT_EXPM_TOL)?, degree)?;
        let v = f.to_coeff_vector(op.basis())?;
        let image = op.apply(&v)?;
        let g = self.generator_apply(f)?.to_coeff_vector(op.basis())?;
        let keep = op.basis().prefix_len(deg_f + 1);
        Ok(real::sqrt(
            (0..keep)
                .map(|i| ((image[i] - v[i]) / h - g[i]).norm_sqr())
                .sum(),
        ))
    }

    /// `‖C(t)K_w − K_w‖`, exact.
    ///
    /// With `C(t)K_w = a·K_u` and `ln a + ⟨w,u⟩ − |w|² = β + iγ`,
    /// `‖aK_u − K_w‖² = e^{|w|²}[(e^β − 1)² + e^{2β}(e^{|u−w|²} − 1) + 4e^β sin²(γ/2)]`,
    /// which stays accurate as `t → 0`.
    pub fn continuity_defect(&self, w: &CVector, t: f64) -> Result<f64> {
        check_dim(self.dim(), w.dim())?;
        let evolved = self.evolve(t, DEFAULT_EXPM_TOL)?;
        let kernel = evolved.symbol.act_on_kernel(w)?;
        let log_a = evolved.log_coeff + evolved.symbol.offset().inner(w);
        let u = &kernel.point;
        let e = log_a + w.inner(u) - w.norm_sqr();
        let (beta, gamma) = (e.re, e.im);
        let half_sin = real::sin(gamma / 2.0);
        let bracket = real::expm1(beta) * real::expm1(beta)
            + real::exp(2.0 * beta) * real::expm1((u - w).norm_sqr())
            + 4.0 * real::exp(beta) * half_sin * half_sin;
        Ok(real::sqrt((real::exp(w.norm_sqr()) * bracket).max(0.0)))
    }

    /// Asymmetry of `(p, r) ↦ ⟨Gp, 𝒥r⟩` over pairs from `polys`, computed on
    /// degree-`N` coordinate vectors. Each value is relative to the product of
    /// the coordinate norms of `Gp` and `𝒥r`.
    pub fn generator_j_symmetry_defect(&self, j: &ConjugationParams, polys: &[MPoly], degree: u32) -> Result<f64> {
        check_dim(self.dim(), j.dim())?;
        let jop = trunc_conjugation_matrix(j, degree)?;
        let basis: &MonomialBasis = jop.basis();
        let mut images = Vec::with_capacity(polys.len());
        let mut conjugated = Vec::with_capacity(polys.len());
        for p in polys {
            if p.degree().unwrap_or(0) + 2 > degree {
                return Err(Error::InvalidArgument(alloc::format!(
                    "polynomial degree must be at most {}",
                    degree.saturating_sub(2)
                )));
            }
            images.push(self.generator_apply(p)?.to_coeff_vector(basis)?);
            conjugated.push(jop.apply(&p.to_coeff_vector(basis)?)?);
        }
        let pairing = |x: &[C64], y: &[C64]| -> C64 { x.iter().zip(y).map(|(a, b)| *a * b.conj()).sum() };
        let norm = |x: &[C64]| real::sqrt(x.iter().map(|a| a.norm_sqr()).sum());
        let mut worst = 0.0f64;
        for a in 0..polys.len() {
            for b in a + 1..polys.len() {
                let lhs = pairing(&images[a], &conjugated[b]);
                let rhs = pairing(&images[b], &conjugated[a]);
                let scale = (norm(&images[a]) * norm(&conjugated[b]))
                    .max(norm(&images[b]) * norm(&conjugated[a]))
                    .max(f64::MIN_POSITIVE);
                worst = worst.max((lhs - rhs).norm() / scale);
            }
        }
        Ok(worst)
    }
}
