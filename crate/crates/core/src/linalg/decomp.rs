//! Eigendecompositions of Hermitian and normal matrices, spectral norm and
//! Cholesky factorisation.
//!
//! Hermitian matrices go through cyclic complex Jacobi. Normal matrices go
//! through a complex Schur form (Householder reduction to Hessenberg form,
//! then shifted QR with Givens rotations); for a normal input the Schur
//! factor is diagonal up to roundoff and its unitary carries the eigenvectors.

use alloc::vec::Vec;
use core::ops::Range;

use super::{c64, CMatrix, C64};
use crate::error::{Error, Result};
use crate::real;

/// `M = U · diag(λ) · U*` with eigenvalues clustered into contiguous groups.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    /// Columns are orthonormal eigenvectors.
    pub unitary: CMatrix,
    pub eigenvalues: Vec<C64>,
    /// Contiguous index ranges of eigenvalues considered equal.
    pub groups: Vec<Range<usize>>,
}

impl SpectralDecomposition {
    pub fn multiplicities(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.len()).collect()
    }

    /// `U · diag(λ) · U*`.
    pub fn reconstruct(&self) -> CMatrix {
        let d = CMatrix::from_diagonal(&self.eigenvalues);
        &(&self.unitary * &d) * &self.unitary.adjoint()
    }
}

/// Default clustering tolerance `1e-8·(1 + ‖M‖_F)`.
pub fn default_group_tol(m: &CMatrix) -> f64 {
    1e-8 * (1.0 + m.norm_fro())
}

/// Eigendecomposition of a Hermitian matrix; eigenvalues are real and sorted
/// ascending.
pub fn herm_eig(m: &CMatrix, group_tol: f64) -> Result<SpectralDecomposition> {
    if !m.is_finite() {
        return Err(Error::InvalidArgument("matrix has non-finite entries".into()));
    }
    let defect = (m - &m.adjoint()).norm_fro();
    if defect > 1e-12 * m.norm_fro() {
        return Err(Error::PreconditionViolation(alloc::format!(
            "matrix is not Hermitian (‖M − M*‖ = {defect:e})"
        )));
    }
    let (values, vectors) = jacobi_hermitian(m);
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let eigenvalues: Vec<C64> = order.iter().map(|&i| c64(values[i], 0.0)).collect();
    let unitary = CMatrix::from_columns(&order.iter().map(|&i| vectors.column(i)).collect::<Vec<_>>());
    let groups = group_sorted(&eigenvalues, group_tol);
    Ok(SpectralDecomposition {
        unitary,
        eigenvalues,
        groups,
    })
}

/// Unitary diagonalisation of a normal matrix. Eigenvalues are ordered so that
/// each cluster is contiguous; clusters appear in order of their first member
/// by `(re, im)`.
pub fn normal_eig(m: &CMatrix, group_tol: f64) -> Result<SpectralDecomposition> {
    if !m.is_finite() {
        return Err(Error::InvalidArgument("matrix has non-finite entries".into()));
    }
    let adj = m.adjoint();
    let defect = (&(m * &adj) - &(&adj * m)).norm_fro();
    let scale = m.norm_fro();
    if defect > 1e-10 * scale * scale {
        return Err(Error::PreconditionViolation(alloc::format!(
            "matrix is not normal (‖MM* − M*M‖ = {defect:e})"
        )));
    }
    Ok(schur_spectral(m, group_tol))
}

/// Spectral data read off the Schur form without the normality gate. Callers
/// that already established normality at a looser tolerance use this.
pub(crate) fn schur_spectral(m: &CMatrix, group_tol: f64) -> SpectralDecomposition {
    let (z, t) = schur(m);
    let raw: Vec<C64> = t.diagonal();
    let order = cluster_order(&raw, group_tol);
    let eigenvalues: Vec<C64> = order.iter().map(|&i| raw[i]).collect();
    let unitary = CMatrix::from_columns(&order.iter().map(|&i| z.column(i)).collect::<Vec<_>>());
    let groups = group_sorted(&eigenvalues, group_tol);
    SpectralDecomposition {
        unitary,
        eigenvalues,
        groups,
    }
}

/// Largest singular value, via the top eigenvalue of `M*M`.
pub fn op_norm(m: &CMatrix) -> f64 {
    let g = &m.adjoint() * m;
    let g = (&g + &g.adjoint()).scale_real(0.5);
    let (values, _) = jacobi_hermitian(&g);
    real::sqrt(values.into_iter().fold(0.0, f64::max))
}

/// Lower-triangular `L` with `M = L L*` for Hermitian positive definite `M`.
pub fn cholesky(m: &CMatrix) -> Result<CMatrix> {
    let n = m.dim();
    let mut l = CMatrix::zeros(n);
    for j in 0..n {
        let mut diag = m[(j, j)].re;
        for k in 0..j {
            diag -= l[(j, k)].norm_sqr();
        }
        if diag.is_nan() || diag <= 0.0 {
            return Err(Error::PreconditionViolation(alloc::format!(
                "matrix is not positive definite (pivot {j} = {diag:e})"
            )));
        }
        let ljj = real::sqrt(diag);
        l[(j, j)] = c64(ljj, 0.0);
        for i in j + 1..n {
            let mut s = m[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / ljj;
        }
    }
    Ok(l)
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += a[(r, c)].norm_sqr();
            }
        }
    }
    real::sqrt(s)
}

/// Cyclic Jacobi for a Hermitian matrix: returns eigenvalues (unsorted) and
/// the accumulated unitary.
fn jacobi_hermitian(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.dim();
    let mut a = m.clone();
    let mut v = CMatrix::identity(n);
    let scale = a.norm_fro();
    if scale == 0.0 {
        return (alloc::vec![0.0; n], v);
    }
    for _sweep in 0..64 {
        if off_diagonal_norm(&a) <= 1e-17 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= f64::MIN_POSITIVE {
                    continue;
                }
                let phase = apq / mag;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * mag);
                let t = if theta >= 0.0 {
                    1.0 / (theta + real::sqrt(theta * theta + 1.0))
                } else {
                    -1.0 / (-theta + real::sqrt(theta * theta + 1.0))
                };
                let c = 1.0 / real::sqrt(t * t + 1.0);
                let s = t * c;
                let ph = phase.conj();
                let g = [
                    [c64(c, 0.0), c64(s, 0.0)],
                    [-ph * s, ph * c],
                ];
                a.rotate_similarity(p, q, &g);
                a[(p, q)] = c64(0.0, 0.0);
                a[(q, p)] = c64(0.0, 0.0);
                v.rotate_columns(p, q, &g);
            }
        }
    }
    (a.diagonal().into_iter().map(|z| z.re).collect(), v)
}

/// Complex Givens rotation `G = [[c, s], [−s̄, c]]` with `G·[a; b] = [r; 0]`.
fn givens(a: C64, b: C64) -> [[C64; 2]; 2] {
    let na = a.norm();
    let nb = b.norm();
    if nb == 0.0 {
        return [[c64(1.0, 0.0), c64(0.0, 0.0)], [c64(0.0, 0.0), c64(1.0, 0.0)]];
    }
    let rho = libm::hypot(na, nb);
    if na == 0.0 {
        let s = b.conj() / nb;
        return [[c64(0.0, 0.0), s], [-s.conj(), c64(0.0, 0.0)]];
    }
    let phase = a / na;
    let c = na / rho;
    let s = phase * b.conj() / rho;
    [[c64(c, 0.0), s], [-s.conj(), c64(c, 0.0)]]
}

/// Complex Schur decomposition `M = Z T Z*` with `T` upper triangular.
/// Returns `(Z, T)`.
pub fn schur(m: &CMatrix) -> (CMatrix, CMatrix) {
    let n = m.dim();
    let mut h = m.clone();
    let mut z = CMatrix::identity(n);
    hessenberg(&mut h, &mut z);

    let scale = h.norm_fro().max(f64::MIN_POSITIVE);
    let mut hi = n;
    let mut iter_since_deflation = 0usize;
    let mut total_iter = 0usize;
    while hi > 1 {
        let last = hi - 1;
        // Find the start of the unreduced trailing block.
        let mut lo = last;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let local = h[(lo, lo)].norm() + h[(lo - 1, lo - 1)].norm();
            if sub <= f64::EPSILON * local || sub <= f64::EPSILON * 1e-3 * scale {
                h[(lo, lo - 1)] = c64(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == last {
            hi -= 1;
            iter_since_deflation = 0;
            continue;
        }
        total_iter += 1;
        iter_since_deflation += 1;
        if total_iter > 200 * n {
            break;
        }

        let shift = if iter_since_deflation % 11 == 10 {
            // Exceptional shift to break cycles.
            h[(last, last)] + c64(h[(last, last - 1)].norm() * 0.75, 0.0)
        } else {
            wilkinson_shift(
                h[(last - 1, last - 1)],
                h[(last - 1, last)],
                h[(last, last - 1)],
                h[(last, last)],
            )
        };

        for k in lo..=last {
            h[(k, k)] -= shift;
        }
        let mut rotations = Vec::with_capacity(last - lo);
        for k in lo..last {
            let g = givens(h[(k, k)], h[(k + 1, k)]);
            for c in 0..n {
                let a = h[(k, c)];
                let b = h[(k + 1, c)];
                h[(k, c)] = g[0][0] * a + g[0][1] * b;
                h[(k + 1, c)] = g[1][0] * a + g[1][1] * b;
            }
            h[(k + 1, k)] = c64(0.0, 0.0);
            rotations.push(g);
        }
        for (offset, g) in rotations.iter().enumerate() {
            let k = lo + offset;
            let ga = [
                [g[0][0].conj(), g[1][0].conj()],
                [g[0][1].conj(), g[1][1].conj()],
            ];
            h.rotate_columns(k, k + 1, &ga);
            z.rotate_columns(k, k + 1, &ga);
        }
        for k in lo..=last {
            h[(k, k)] += shift;
        }
    }
    for r in 1..n {
        for c in 0..r {
            h[(r, c)] = c64(0.0, 0.0);
        }
    }
    (z, h)
}

fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half_tr = (a + d) * 0.5;
    let disc = ((a - d) * 0.5) * ((a - d) * 0.5) + b * c;
    let root = disc.sqrt();
    let l1 = half_tr + root;
    let l2 = half_tr - root;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Householder reduction `H = Z* M Z` to upper Hessenberg form.
fn hessenberg(h: &mut CMatrix, z: &mut CMatrix) {
    let n = h.dim();
    if n < 3 {
        return;
    }
    for k in 0..n - 2 {
        let mut v: Vec<C64> = (k + 1..n).map(|r| h[(r, k)]).collect();
        let xnorm = real::sqrt(v.iter().map(|x| x.norm_sqr()).sum());
        if xnorm == 0.0 {
            continue;
        }
        let x0 = v[0];
        let phase = if x0.norm() == 0.0 { c64(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * xnorm;
        v[0] -= alpha;
        let vnorm = real::sqrt(v.iter().map(|x| x.norm_sqr()).sum());
        if vnorm == 0.0 {
            continue;
        }
        for x in v.iter_mut() {
            *x /= vnorm;
        }
        // Left: rows k+1.. ← (I − 2vv*) rows.
        for c in 0..n {
            let mut dot = c64(0.0, 0.0);
            for (i, vi) in v.iter().enumerate() {
                dot += vi.conj() * h[(k + 1 + i, c)];
            }
            for (i, vi) in v.iter().enumerate() {
                h[(k + 1 + i, c)] -= *vi * dot * 2.0;
            }
        }
        // Right: columns k+1.. ← columns (I − 2vv*), same for Z.
        for target in [&mut *h, &mut *z] {
            for r in 0..n {
                let mut dot = c64(0.0, 0.0);
                for (i, vi) in v.iter().enumerate() {
                    dot += target[(r, k + 1 + i)] * vi;
                }
                for (i, vi) in v.iter().enumerate() {
                    target[(r, k + 1 + i)] -= dot * vi.conj() * 2.0;
                }
            }
        }
        for r in k + 2..n {
            h[(r, k)] = c64(0.0, 0.0);
        }
    }
}

/// Orders eigenvalues so clusters (single-linkage at `tol`) are contiguous.
fn cluster_order(values: &[C64], tol: f64) -> Vec<usize> {
    let n = values.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn root(label: &mut [usize], mut i: usize) -> usize {
        while label[i] != i {
            label[i] = label[label[i]];
            i = label[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (values[i] - values[j]).norm() <= tol {
                let (ri, rj) = (root(&mut label, i), root(&mut label, j));
                if ri != rj {
                    label[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|i| root(&mut label, i)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    let key = |i: usize| {
        let r = roots[i];
        (values[r].re, values[r].im, r, values[i].re, values[i].im)
    };
    order.sort_by(|&i, &j| {
        let (a, b) = (key(i), key(j));
        a.0.total_cmp(&b.0)
            .then(a.1.total_cmp(&b.1))
            .then(a.2.cmp(&b.2))
            .then(a.3.total_cmp(&b.3))
            .then(a.4.total_cmp(&b.4))
    });
    order
}

/// Splits an already cluster-ordered list into groups at gaps larger than `tol`.
fn group_sorted(values: &[C64], tol: f64) -> Vec<Range<usize>> {
    let mut groups = Vec::new();
    let mut start = 0;
    for k in 1..=values.len() {
        if k == values.len() || (values[k] - values[k - 1]).norm() > tol {
            if k > start {
                groups.push(start..k);
            }
            start = k;
        }
    }
    groups
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::is_unitary;

    fn real(rows: &[&[f64]]) -> CMatrix {
        CMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| c64(x, 0.0)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn herm_identity_single_group() {
        let d = herm_eig(&CMatrix::identity(2), 1e-8).unwrap();
        assert_eq!(d.eigenvalues, alloc::vec![c64(1.0, 0.0), c64(1.0, 0.0)]);
        assert_eq!(d.multiplicities(), alloc::vec![2]);
    }

    #[test]
    fn herm_swap_two_groups() {
        let d = herm_eig(&real(&[&[0.0, 1.0], &[1.0, 0.0]]), 1e-8).unwrap();
        assert!((d.eigenvalues[0] - c64(-1.0, 0.0)).norm() < 1e-15);
        assert!((d.eigenvalues[1] - c64(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(d.groups.len(), 2);
    }

    #[test]
    fn herm_complex_entries_reconstruct() {
        let m = CMatrix::from_rows(alloc::vec![
            alloc::vec![c64(2.0, 0.0), c64(1.0, -1.0), c64(0.0, 0.5)],
            alloc::vec![c64(1.0, 1.0), c64(-1.0, 0.0), c64(0.3, 0.0)],
            alloc::vec![c64(0.0, -0.5), c64(0.3, 0.0), c64(0.5, 0.0)],
        ])
        .unwrap();
        let d = herm_eig(&m, 1e-8).unwrap();
        assert!((&d.reconstruct() - &m).max_abs() < 1e-13);
        assert!(is_unitary(&d.unitary, 1e-13).holds);
    }

    #[test]
    fn herm_rejects_non_hermitian() {
        let m = real(&[&[1.0, 1.0], &[0.0, 1.0]]);
        assert!(matches!(herm_eig(&m, 1e-8), Err(Error::PreconditionViolation(_))));
    }

    #[test]
    fn normal_diag_groups() {
        let m = CMatrix::from_diagonal(&[c64(0.0, 1.0), c64(2.0, 0.0), c64(0.0, 1.0)]);
        let d = normal_eig(&m, 1e-8).unwrap();
        assert_eq!(d.groups.len(), 2);
        let mut groups: Vec<(C64, usize)> =
            d.groups.iter().map(|g| (d.eigenvalues[g.start], g.len())).collect();
        groups.sort_by_key(|g| g.1);
        assert!((groups[0].0 - c64(2.0, 0.0)).norm() < 1e-14 && groups[0].1 == 1);
        assert!((groups[1].0 - c64(0.0, 1.0)).norm() < 1e-14 && groups[1].1 == 2);
    }

    #[test]
    fn normal_rotation_eigenvalues() {
        let m = real(&[&[0.0, -1.0], &[1.0, 0.0]]);
        let d = normal_eig(&m, 1e-8).unwrap();
        let mut ims: Vec<f64> = d.eigenvalues.iter().map(|z| z.im).collect();
        ims.sort_by(f64::total_cmp);
        assert!((ims[0] + 1.0).abs() < 1e-14 && (ims[1] - 1.0).abs() < 1e-14);
        assert!(d.eigenvalues.iter().all(|z| z.re.abs() < 1e-14));
        assert!((&d.reconstruct() - &m).max_abs() < 1e-13);
    }

    #[test]
    fn normal_rejects_shear() {
        let m = real(&[&[1.0, 1.0], &[0.0, 1.0]]);
        assert!(matches!(normal_eig(&m, 1e-8), Err(Error::PreconditionViolation(_))));
    }

    #[test]
    fn schur_of_general_matrix_is_triangular_similarity() {
        let m = CMatrix::from_fn(4, |r, c| c64((r * 7 + c * 3) as f64 % 5.0 - 2.0, (r as f64 - c as f64) * 0.3));
        let (z, t) = schur(&m);
        assert!(is_unitary(&z, 1e-13).holds);
        let back = &(&z * &t) * &z.adjoint();
        assert!((&back - &m).max_abs() < 1e-12);
    }

    #[test]
    fn op_norm_examples() {
        assert!((op_norm(&CMatrix::identity(3)) - 1.0).abs() < 1e-15);
        assert!((op_norm(&real(&[&[2.0, 0.0], &[0.0, 1.0]])) - 2.0).abs() < 1e-15);
        assert!((op_norm(&real(&[&[0.0, 2.0], &[0.0, 0.0]])) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn cholesky_of_gram() {
        let g = real(&[&[1.0, 1.0], &[1.0, core::f64::consts::E]]);
        let l = cholesky(&g).unwrap();
        assert!((&(&l * &l.adjoint()) - &g).max_abs() < 1e-14);
        assert!(cholesky(&real(&[&[1.0, 2.0], &[2.0, 1.0]])).is_err());
    }
}
