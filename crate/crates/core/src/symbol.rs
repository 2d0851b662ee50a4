//! Affine-exponential symbols `ψ(z) = θ·e^{⟨z,ℓ⟩}`, `φ(z) = Qz + q` and the
//! exact calculus of the operators `C f = ψ·(f∘φ)` they define.
//!
//! A symbol is stored as the quadruple `(θ, ℓ, Q, q)`; the accessors are named
//! after their role: [`WcSymbol::coeff`] is `θ = ψ(0)`, [`WcSymbol::exponent`]
//! is `ℓ`, [`WcSymbol::linear`] is `Q` and [`WcSymbol::offset`] is `q`.

use alloc::format;

use crate::conjugation::ConjugationParams;
use crate::error::{check_dim, Error, Result};
use crate::linalg::{c64, is_finite, is_unitary, CMatrix, CVector, C64};

/// Unitarity tolerance for the similarity transform arguments.
const UNITARY_TOL: f64 = 1e-10;

/// `coeff · K_point`, a scaled reproducing kernel.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledKernel {
    pub coeff: C64,
    pub point: CVector,
}

impl ScaledKernel {
    /// `coeff · e^{⟨x, point⟩}`.
    pub fn eval(&self, x: &CVector) -> C64 {
        self.coeff * x.inner(&self.point).exp()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WcSymbol {
    coeff: C64,
    exponent: CVector,
    linear: CMatrix,
    offset: CVector,
}

impl WcSymbol {
    pub fn new(coeff: C64, exponent: CVector, linear: CMatrix, offset: CVector) -> Result<Self> {
        let d = linear.dim();
        if d == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        check_dim(d, exponent.dim())?;
        check_dim(d, offset.dim())?;
        if !is_finite(coeff) || !exponent.is_finite() || !linear.is_finite() || !offset.is_finite() {
            return Err(Error::InvalidArgument("symbol has non-finite entries".into()));
        }
        if coeff == c64(0.0, 0.0) {
            return Err(Error::InvalidArgument("weight coefficient must be nonzero".into()));
        }
        Ok(WcSymbol {
            coeff,
            exponent,
            linear,
            offset,
        })
    }

    /// `ψ ≡ 1`, `φ = id`.
    pub fn identity(d: usize) -> Self {
        WcSymbol {
            coeff: c64(1.0, 0.0),
            exponent: CVector::zeros(d),
            linear: CMatrix::identity(d),
            offset: CVector::zeros(d),
        }
    }

    pub fn dim(&self) -> usize {
        self.linear.dim()
    }

    pub fn coeff(&self) -> C64 {
        self.coeff
    }

    pub fn exponent(&self) -> &CVector {
        &self.exponent
    }

    pub fn linear(&self) -> &CMatrix {
        &self.linear
    }

    pub fn offset(&self) -> &CVector {
        &self.offset
    }

    /// Largest modulus over all components.
    pub fn magnitude(&self) -> f64 {
        self.coeff
            .norm()
            .max(self.exponent.max_abs())
            .max(self.linear.max_abs())
            .max(self.offset.max_abs())
    }

    /// `(ψ(z), φ(z))`.
    pub fn eval(&self, z: &CVector) -> Result<(C64, CVector)> {
        check_dim(self.dim(), z.dim())?;
        let psi = self.coeff * z.inner(&self.exponent).exp();
        let phi = &(&self.linear * z) + &self.offset;
        Ok((psi, phi))
    }

    /// `C K_w = θe^{⟨q,w⟩} K_{Q*w + ℓ}`.
    pub fn act_on_kernel(&self, w: &CVector) -> Result<ScaledKernel> {
        check_dim(self.dim(), w.dim())?;
        Ok(ScaledKernel {
            coeff: self.coeff * self.offset.inner(w).exp(),
            point: &(&self.linear.adjoint() * w) + &self.exponent,
        })
    }

    /// Symbol of the product `C_self ∘ C_other`, i.e. `ψ = ψ₁·(ψ₂∘φ₁)`,
    /// `φ = φ₂∘φ₁`.
    pub fn compose(&self, other: &WcSymbol) -> Result<WcSymbol> {
        check_dim(self.dim(), other.dim())?;
        let coeff = self.coeff * other.coeff * self.offset.inner(&other.exponent).exp();
        let exponent = &self.exponent + &(&self.linear.adjoint() * &other.exponent);
        let linear = &other.linear * &self.linear;
        let offset = &(&other.linear * &self.offset) + &other.offset;
        WcSymbol::new(coeff, exponent, linear, offset)
    }

    /// Symbol of the Hilbert-space adjoint: `(θ̄, q, Q*, ℓ)`.
    pub fn adjoint(&self) -> WcSymbol {
        WcSymbol {
            coeff: self.coeff.conj(),
            exponent: self.offset.clone(),
            linear: self.linear.adjoint(),
            offset: self.exponent.clone(),
        }
    }

    /// `θ ↦ −θ`.
    pub fn negate_coeff(&self) -> WcSymbol {
        WcSymbol {
            coeff: -self.coeff,
            ..self.clone()
        }
    }

    /// The symbol `S̃` with `C_S = C_U C_S̃ C_V`, namely `(θ, Uℓ, V*QU*, V*q)`.
    pub fn unitary_similarity(&self, u: &CMatrix, v: &CMatrix) -> Result<WcSymbol> {
        check_dim(self.dim(), u.dim())?;
        check_dim(self.dim(), v.dim())?;
        for (name, m) in [("U", u), ("V", v)] {
            let check = is_unitary(m, UNITARY_TOL);
            if !check.holds {
                return Err(Error::PreconditionViolation(format!(
                    "{name} is not unitary (defect {:e})",
                    check.defect
                )));
            }
        }
        let v_adj = v.adjoint();
        WcSymbol::new(
            self.coeff,
            u * &self.exponent,
            &(&v_adj * &self.linear) * &u.adjoint(),
            &v_adj * &self.offset,
        )
    }

    /// The symbol of the composition operator `f ↦ f∘U`.
    pub fn of_linear_map(u: &CMatrix) -> WcSymbol {
        let d = u.dim();
        WcSymbol {
            coeff: c64(1.0, 0.0),
            exponent: CVector::zeros(d),
            linear: u.clone(),
            offset: CVector::zeros(d),
        }
    }

    /// Symbol of `𝒥 C 𝒥` for `𝒥 = 𝒥_{A,b,c}`.
    pub fn conjugate_by(&self, j: &ConjugationParams) -> Result<WcSymbol> {
        check_dim(self.dim(), j.dim())?;
        j.require_valid()?;
        let a = j.matrix();
        let b = j.shift();
        let b_bar = b.conj();
        let aq = a * &self.linear;
        let aq_bar = aq.conj();

        let linear = &aq_bar * a;
        let offset = &(&(&aq_bar * b) + &(a * &self.offset).conj()) + &b_bar;
        let a_adj = a.adjoint();
        let exponent = &(&(&a_adj * &self.exponent.conj()) + &(&a_adj * &(&self.linear.transpose() * b))) + &b_bar;
        let phase = b.inner(&self.exponent.conj())
            + (&self.linear.conj() * b).inner(b)
            + self.offset.conj().inner(b);
        let coeff = self.coeff.conj() * j.scale().norm_sqr() * phase.exp();
        WcSymbol::new(coeff, exponent, linear, offset)
    }

    /// Symbol of `𝒥 C* 𝒥`.
    pub fn j_adjoint(&self, j: &ConjugationParams) -> Result<WcSymbol> {
        self.adjoint().conjugate_by(j)
    }

    /// Largest componentwise deviation, relative to `1 + max magnitude`.
    pub fn deviation(&self, other: &WcSymbol) -> Result<f64> {
        check_dim(self.dim(), other.dim())?;
        let raw = (self.coeff - other.coeff)
            .norm()
            .max((&self.exponent - &other.exponent).max_abs())
            .max((&self.linear - &other.linear).max_abs())
            .max((&self.offset - &other.offset).max_abs());
        Ok(raw / (1.0 + self.magnitude().max(other.magnitude())))
    }

    pub fn approx_eq(&self, other: &WcSymbol, tol: f64) -> Result<bool> {
        Ok(self.deviation(other)? <= tol)
    }

    pub fn with_coeff(&self, coeff: C64) -> Result<WcSymbol> {
        WcSymbol::new(coeff, self.exponent.clone(), self.linear.clone(), self.offset.clone())
    }

    pub fn with_exponent(&self, exponent: CVector) -> Result<WcSymbol> {
        WcSymbol::new(self.coeff, exponent, self.linear.clone(), self.offset.clone())
    }

    pub fn with_linear(&self, linear: CMatrix) -> Result<WcSymbol> {
        WcSymbol::new(self.coeff, self.exponent.clone(), linear, self.offset.clone())
    }

    pub fn with_offset(&self, offset: CVector) -> Result<WcSymbol> {
        WcSymbol::new(self.coeff, self.exponent.clone(), self.linear.clone(), offset)
    }
}
