//! Dense complex vectors and matrices for small dimensions, plus the matrix
//! functions and decompositions the operator calculus relies on.

pub(crate) mod decomp;
mod expm;
mod matrix;
mod vector;

pub use decomp::{
    cholesky, default_group_tol, herm_eig, normal_eig, op_norm, schur, SpectralDecomposition,
};
pub use expm::{expm, phi1, phi2, phi_functions, PhiFunctions};
pub use matrix::CMatrix;
pub use vector::CVector;

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex<f64>;

#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub(crate) fn is_finite(z: C64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Outcome of a structural matrix predicate: the verdict plus the defect it was
/// decided from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Check {
    pub holds: bool,
    pub defect: f64,
}

impl Check {
    pub(crate) fn new(defect: f64, tol: f64) -> Self {
        Check {
            holds: defect <= tol,
            defect,
        }
    }
}

/// `‖M*M − I‖_max`.
pub fn is_unitary(m: &CMatrix, tol: f64) -> Check {
    let gram = &m.adjoint() * m;
    Check::new((&gram - &CMatrix::identity(m.dim())).max_abs(), tol)
}

/// `‖M − Mᵗ‖_max / (1 + ‖M‖_max)`.
pub fn is_symmetric(m: &CMatrix, tol: f64) -> Check {
    Check::new((m - &m.transpose()).max_abs() / (1.0 + m.max_abs()), tol)
}

/// `‖M − M*‖_max / (1 + ‖M‖_max)`.
pub fn is_hermitian(m: &CMatrix, tol: f64) -> Check {
    Check::new((m - &m.adjoint()).max_abs() / (1.0 + m.max_abs()), tol)
}

/// `‖MM* − M*M‖_max / (1 + ‖M‖_max)²`.
pub fn is_normal(m: &CMatrix, tol: f64) -> Check {
    let adj = m.adjoint();
    let comm = &(m * &adj) - &(&adj * m);
    let s = 1.0 + m.max_abs();
    Check::new(comm.max_abs() / (s * s), tol)
}
