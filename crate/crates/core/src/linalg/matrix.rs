use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

use super::{is_finite, CVector, C64};
use crate::error::{Error, Result};
use crate::real;

/// A square complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix {
            n,
            data: alloc::vec![C64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(&alloc::vec![C64::new(1.0, 0.0); n])
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (k, &z) in diag.iter().enumerate() {
            m[(k, k)] = z;
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                data.push(f(r, c));
            }
        }
        CMatrix { n, data }
    }

    /// Builds a matrix from its rows; every row must have length `rows.len()`.
    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::InvalidArgument(alloc::format!(
                    "matrix must be square: row of length {} in a {n}-row matrix",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(CMatrix { n, data })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[CVector]) -> Self {
        let n = cols.len();
        Self::from_fn(n, |r, c| cols[c][r])
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> impl Iterator<Item = &[C64]> {
        self.data.chunks(self.n.max(1)).take(self.n)
    }

    pub fn column(&self, c: usize) -> CVector {
        CVector::new((0..self.n).map(|r| self[(r, c)]).collect())
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.n).map(|k| self[(k, k)]).collect()
    }

    pub fn transpose(&self) -> CMatrix {
        Self::from_fn(self.n, |r, c| self[(c, r)])
    }

    pub fn conj(&self) -> CMatrix {
        CMatrix {
            n: self.n,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Conjugate transpose `M*`.
    pub fn adjoint(&self) -> CMatrix {
        Self::from_fn(self.n, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, s: C64) -> CMatrix {
        CMatrix {
            n: self.n,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> CMatrix {
        self.scale(C64::new(s, 0.0))
    }

    pub fn trace(&self) -> C64 {
        (0..self.n).map(|k| self[(k, k)]).sum()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn norm_fro(&self) -> f64 {
        real::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    /// Induced 1-norm (largest column sum).
    pub fn norm_one(&self) -> f64 {
        (0..self.n)
            .map(|c| (0..self.n).map(|r| self[(r, c)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|&z| is_finite(z))
    }

    /// Copies `block` into `self` with its top-left corner at `(row, col)`.
    pub fn set_block(&mut self, row: usize, col: usize, block: &CMatrix) {
        for r in 0..block.n {
            for c in 0..block.n {
                self[(row + r, col + c)] = block[(r, c)];
            }
        }
    }

    /// The `size × size` block with top-left corner at `(row, col)`.
    pub fn block(&self, row: usize, col: usize, size: usize) -> CMatrix {
        Self::from_fn(size, |r, c| self[(row + r, col + c)])
    }

    /// Solves `self · x = rhs` by LU factorisation with partial pivoting.
    pub fn solve(&self, rhs: &CVector) -> Result<CVector> {
        let n = self.n;
        crate::error::check_dim(n, rhs.dim())?;
        let mut a = self.clone();
        let mut x: Vec<C64> = rhs.as_slice().to_vec();
        let scale = a.max_abs();
        for k in 0..n {
            let pivot = (k..n)
                .max_by(|&i, &j| a[(i, k)].norm().total_cmp(&a[(j, k)].norm()))
                .unwrap_or(k);
            if a[(pivot, k)].norm() <= f64::EPSILON * scale * n as f64 {
                return Err(Error::PreconditionViolation(
                    "matrix is singular to working precision".into(),
                ));
            }
            if pivot != k {
                for c in 0..n {
                    let tmp = a[(k, c)];
                    a[(k, c)] = a[(pivot, c)];
                    a[(pivot, c)] = tmp;
                }
                x.swap(k, pivot);
            }
            for r in k + 1..n {
                let f = a[(r, k)] / a[(k, k)];
                if f == C64::new(0.0, 0.0) {
                    continue;
                }
                for c in k..n {
                    let t = a[(k, c)];
                    a[(r, c)] -= f * t;
                }
                let t = x[k];
                x[r] -= f * t;
            }
        }
        for k in (0..n).rev() {
            let mut acc = x[k];
            for c in k + 1..n {
                acc -= a[(k, c)] * x[c];
            }
            x[k] = acc / a[(k, k)];
        }
        Ok(CVector::new(x))
    }

    /// Matrix inverse via column-wise solves.
    pub fn inverse(&self) -> Result<CMatrix> {
        let cols = (0..self.n)
            .map(|k| self.solve(&CVector::unit(self.n, k)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_columns(&cols))
    }

    /// Applies the 2×2 unitary `g` (acting on coordinates `p`, `q`) as
    /// `self ← g* · self · g`.
    pub(crate) fn rotate_similarity(&mut self, p: usize, q: usize, g: &[[C64; 2]; 2]) {
        self.rotate_columns(p, q, g);
        for c in 0..self.n {
            let a = self[(p, c)];
            let b = self[(q, c)];
            self[(p, c)] = g[0][0].conj() * a + g[1][0].conj() * b;
            self[(q, c)] = g[0][1].conj() * a + g[1][1].conj() * b;
        }
    }

    /// `self ← self · g` restricted to columns `p`, `q`.
    pub(crate) fn rotate_columns(&mut self, p: usize, q: usize, g: &[[C64; 2]; 2]) {
        for r in 0..self.n {
            let a = self[(r, p)];
            let b = self[(r, q)];
            self[(r, p)] = a * g[0][0] + b * g[1][0];
            self[(r, q)] = a * g[0][1] + b * g[1][1];
        }
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.n + c]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.n + c]
    }
}

impl<'a> Mul<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "matrix dimensions differ");
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self[(r, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += a * rhs.data[k * n + c];
                }
            }
        }
        out
    }
}

impl<'a> Mul<&'a CVector> for &'a CMatrix {
    type Output = CVector;
    fn mul(self, v: &CVector) -> CVector {
        assert_eq!(self.n, v.dim(), "matrix/vector dimensions differ");
        CVector::new(
            self.rows()
                .map(|row| row.iter().zip(v.iter()).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }
}

impl<'a> Add<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "matrix dimensions differ");
        CMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "matrix dimensions differ");
        CMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}
