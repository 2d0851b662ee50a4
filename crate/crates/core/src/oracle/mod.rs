//! Independent verification engines: exact arithmetic on spans of reproducing
//! kernels, and finite sections on the orthonormal monomial basis
//! `e_α = z^α/√(α!)`.

mod kernel;
mod poly;
mod trunc;

pub use kernel::{
    adjoint_defect, adjoint_defect_against, gram_is_positive_definite, gram_matrix,
    involution_defect, isometry_defect, j_symmetry_defect, KernelCombo,
};
pub use poly::{MPoly, MonomialBasis, MultiIndex, MAX_BASIS_SIZE, MAX_DEGREE};
pub use trunc::{
    cross_check, kernel_coeff_vector, kernel_image_residual, kernel_tail_bound,
    trunc_conjugation_matrix, trunc_symbol_matrix, AntilinearTruncOp, TruncOp,
};
