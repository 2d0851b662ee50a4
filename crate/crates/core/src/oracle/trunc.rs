use alloc::format;
use alloc::vec::Vec;

use super::poly::MonomialBasis;
use crate::conjugation::ConjugationParams;
use crate::error::{check_dim, Error, Result};
use crate::linalg::{c64, CMatrix, CVector, C64};
use crate::real;
use crate::symbol::{ScaledKernel, WcSymbol};

/// Finite section of a linear operator on `span{e_α : |α| ≤ N}`.
#[derive(Debug, Clone)]
pub struct TruncOp {
    basis: MonomialBasis,
    matrix: CMatrix,
}

/// Finite section of an antilinear operator, applied as `v ↦ M·conj(v)`.
#[derive(Debug, Clone)]
pub struct AntilinearTruncOp {
    basis: MonomialBasis,
    matrix: CMatrix,
}

impl TruncOp {
    pub fn basis(&self) -> &MonomialBasis {
        &self.basis
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        check_dim(self.basis.len(), v.len())?;
        Ok((&self.matrix * &CVector::new(v.to_vec())).into_inner())
    }
}

impl AntilinearTruncOp {
    pub fn basis(&self) -> &MonomialBasis {
        &self.basis
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        check_dim(self.basis.len(), v.len())?;
        let conj: Vec<C64> = v.iter().map(|x| x.conj()).collect();
        Ok((&self.matrix * &CVector::new(conj)).into_inner())
    }
}

/// Section of `f ↦ coeff · e^{Σₖ weightₖ zₖ} · f̃(Lz + t)` on the monomial
/// basis, where `f̃` has the conjugated coefficients of `f` when the operator
/// is antilinear (the matrix is the same; only its application differs).
///
/// Entry `(β, α)` is `√(β!/α!)·[z^β] coeff·e^{Σ weightₖzₖ}·(Lz + t)^α`.
fn section(coeff: C64, weight: &CVector, lin: &CMatrix, shift: &CVector, basis: &MonomialBasis) -> CMatrix {
    let n = basis.len();
    let d = basis.dim();
    let indices = basis.indices();
    let succ = basis.successors();

    // (Lz + t)^α for every α, each obtained from a predecessor α − e_k.
    let mut powers: Vec<Vec<C64>> = Vec::with_capacity(n);
    let mut one = alloc::vec![c64(0.0, 0.0); n];
    one[0] = c64(1.0, 0.0);
    powers.push(one);
    for alpha in indices.iter().skip(1) {
        let k = alpha.exponents().iter().position(|&a| a > 0).unwrap_or(0);
        let pred = basis
            .position(&alpha.lowered(k).unwrap_or_else(|| alpha.clone()))
            .unwrap_or(0);
        let src = &powers[pred];
        let mut out = alloc::vec![c64(0.0, 0.0); n];
        for (pos, &x) in src.iter().enumerate() {
            if x == c64(0.0, 0.0) {
                continue;
            }
            out[pos] += x * shift[k];
            for j in 0..d {
                if let Some(next) = succ[pos][j] {
                    out[next] += x * lin[(k, j)];
                }
            }
        }
        powers.push(out);
    }

    let weighted = weight.iter().any(|w| *w != c64(0.0, 0.0));
    let mut matrix = CMatrix::zeros(n);
    for (col, alpha) in indices.iter().enumerate() {
        let mut poly = core::mem::take(&mut powers[col]);
        if weighted {
            for k in 0..d {
                if weight[k] == c64(0.0, 0.0) {
                    continue;
                }
                let mut out = poly.clone();
                for (pos, &x) in poly.iter().enumerate() {
                    if x == c64(0.0, 0.0) {
                        continue;
                    }
                    let mut factor = c64(1.0, 0.0);
                    let mut cur = pos;
                    let mut m = 1.0;
                    while let Some(next) = succ[cur][k] {
                        factor *= weight[k] / m;
                        out[next] += x * factor;
                        cur = next;
                        m += 1.0;
                    }
                }
                poly = out;
            }
        }
        let inv = 1.0 / alpha.sqrt_factorial();
        for (row, beta) in indices.iter().enumerate() {
            let x = poly[row];
            if x != c64(0.0, 0.0) {
                matrix[(row, col)] = coeff * x * (beta.sqrt_factorial() * inv);
            }
        }
    }
    matrix
}

/// Section of `C_S` up to total degree `N`.
pub fn trunc_symbol_matrix(s: &WcSymbol, degree: u32) -> Result<TruncOp> {
    let basis = MonomialBasis::new(s.dim(), degree)?;
    let matrix = section(s.coeff(), &s.exponent().conj(), s.linear(), s.offset(), &basis);
    Ok(TruncOp { basis, matrix })
}

/// Section of `𝒥_{A,b,c}` up to total degree `N`, from
/// `𝒥e_α = c·e^{⟨z,b̄⟩}·(Az + b)^α/√(α!)`.
pub fn trunc_conjugation_matrix(j: &ConjugationParams, degree: u32) -> Result<AntilinearTruncOp> {
    j.require_valid()?;
    let basis = MonomialBasis::new(j.dim(), degree)?;
    let matrix = section(j.scale(), j.shift(), j.matrix(), j.shift(), &basis);
    Ok(AntilinearTruncOp { basis, matrix })
}

/// Coordinates of `K_w` truncated to the basis: `conj(w)^α/√(α!)`.
pub fn kernel_coeff_vector(w: &CVector, basis: &MonomialBasis) -> Result<Vec<C64>> {
    check_dim(basis.dim(), w.dim())?;
    let w_bar = w.conj();
    Ok(basis
        .indices()
        .iter()
        .map(|a| a.eval(&w_bar) / a.sqrt_factorial())
        .collect())
}

/// Upper bound on the part of `C_S K_w` in degrees `≤ N/2` that the degree-`N`
/// section misses (the columns of degree above `N`).
pub fn kernel_tail_bound(s: &WcSymbol, w: &CVector, degree: u32) -> Result<f64> {
    check_dim(s.dim(), w.dim())?;
    let half = degree / 2;
    let rho = (&s.linear().adjoint() * w).norm();
    let gamma = s.offset().inner(w).norm();
    let lambda = s.exponent().norm();

    let mut total = 0.0;
    let mut rho_pow = 1.0;
    for k in 0..=half {
        if k > 0 {
            rho_pow *= rho / k as f64;
        }
        let mut weight_sum = 0.0;
        let mut lam_pow = 1.0;
        for a in 0..=(half - k) {
            if a > 0 {
                lam_pow *= lambda / a as f64;
            }
            weight_sum += lam_pow * real::sqrt_factorial(a + k);
        }
        total += rho_pow * weight_sum * exp_series_tail(gamma, degree + 1 - k);
    }
    Ok(s.coeff().norm() * total)
}

/// `Σ_{j ≥ m} x^j / j!` for `x ≥ 0`.
fn exp_series_tail(x: f64, m: u32) -> f64 {
    if x == 0.0 {
        return if m == 0 { 1.0 } else { 0.0 };
    }
    let mut term = 1.0;
    for j in 1..=m {
        term *= x / j as f64;
    }
    let mut sum = 0.0;
    let mut j = m;
    loop {
        sum += term;
        j += 1;
        term *= x / j as f64;
        if (j as f64 > x && term <= f64::EPSILON * 1e-3 * sum) || j > m + 10_000 {
            break;
        }
    }
    sum
}

/// Euclidean distance, over degrees `≤ N/2`, between the section of `C_S`
/// applied to the truncated `K_w` and the truncated `expected` kernel.
pub fn kernel_image_residual(s: &WcSymbol, w: &CVector, degree: u32, expected: &ScaledKernel) -> Result<f64> {
    check_dim(s.dim(), expected.point.dim())?;
    let op = trunc_symbol_matrix(s, degree)?;
    let image = op.apply(&kernel_coeff_vector(w, op.basis())?)?;
    let target = kernel_coeff_vector(&expected.point, op.basis())?;
    let keep = op.basis().prefix_len(degree / 2);
    Ok(real::sqrt(
        image[..keep]
            .iter()
            .zip(&target[..keep])
            .map(|(x, t)| (*x - expected.coeff * *t).norm_sqr())
            .sum(),
    ))
}

/// Agreement of the two oracle paths for `C_S K_w`: the kernel-action closed
/// form against the degree-`N` section. Fails when the declared tail bound is
/// not below `tol`.
pub fn cross_check(s: &WcSymbol, w: &CVector, degree: u32, tol: f64) -> Result<f64> {
    let bound = kernel_tail_bound(s, w, degree)?;
    if bound.is_nan() || bound >= tol {
        return Err(Error::PreconditionViolation(format!(
            "truncation tail bound {bound:e} is not below tolerance {tol:e}"
        )));
    }
    kernel_image_residual(s, w, degree, &s.act_on_kernel(w)?)
}
