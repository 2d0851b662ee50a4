//! Weighted composition operators `f ↦ ψ·(f∘φ)` on the Fock space `F²(Cᵈ)`
//! with affine-exponential symbols `ψ(z) = θ·e^{⟨z,ℓ⟩}`, `φ(z) = Qz + q`.
//!
//! The crate provides
//!
//! * dense complex linear algebra for small dimensions ([`linalg`]),
//! * the exact symbol calculus of the class: kernel action, products,
//!   adjoints, unitary similarity and conjugation by `𝒥_{A,b,c}` ([`symbol`]),
//! * conjugation parameters and constructive conjugations ([`conjugation`]),
//! * decision procedures for the symmetry classes ([`classify`]),
//! * two independent verification engines: kernel spans and truncated
//!   monomial sections ([`oracle`]),
//! * `𝒥`-selfadjoint semigroups and their generators ([`semigroup`]).
//!
//! Throughout, `⟨u, v⟩ = Σₖ uₖ·conj(vₖ)` is linear in the first slot and the
//! reproducing kernel is `K_z(u) = e^{⟨u,z⟩}`.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod classify;
pub mod conjugation;
mod error;
pub mod linalg;
pub mod oracle;
pub(crate) mod real;
#[cfg(any(test, feature = "sampling"))]
pub mod sampling;
pub mod semigroup;
pub mod symbol;

pub use classify::{CheckReport, Residual};
pub use conjugation::ConjugationParams;
pub use error::{Error, Result};
pub use linalg::{CMatrix, CVector, C64};
pub use oracle::{KernelCombo, MPoly, MultiIndex};
pub use semigroup::SemigroupParams;
pub use symbol::{ScaledKernel, WcSymbol};

/// Default decision tolerance for the symmetry checks.
pub const DEFAULT_TOL: f64 = 1e-9;
