use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{check_dim, Error, Result};
use crate::linalg::{c64, CVector, C64};
use crate::real;

/// Largest total degree accepted for a monomial basis.
pub const MAX_DEGREE: u32 = 24;
/// Largest number of basis elements accepted for a monomial basis.
pub const MAX_BASIS_SIZE: usize = 2000;

/// Exponent tuple `α = (α₁, …, α_d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(d: usize) -> Self {
        MultiIndex(alloc::vec![0; d])
    }

    pub fn unit(d: usize, k: usize) -> Self {
        let mut e = alloc::vec![0; d];
        e[k] = 1;
        MultiIndex(e)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `α! = Πₖ αₖ!`.
    pub fn factorial(&self) -> f64 {
        self.0.iter().map(|&a| real::factorial(a)).product()
    }

    pub fn sqrt_factorial(&self) -> f64 {
        self.0.iter().map(|&a| real::sqrt_factorial(a)).product()
    }

    /// `z^α`.
    pub fn eval(&self, z: &CVector) -> C64 {
        self.0
            .iter()
            .zip(z.iter())
            .map(|(&a, &x)| x.powu(a))
            .product()
    }

    pub fn plus(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub(crate) fn bumped(&self, k: usize) -> MultiIndex {
        let mut e = self.0.clone();
        e[k] += 1;
        MultiIndex(e)
    }

    pub(crate) fn lowered(&self, k: usize) -> Option<MultiIndex> {
        if self.0[k] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[k] -= 1;
        Some(MultiIndex(e))
    }
}

/// Graded order: total degree ascending, then lexicographically descending
/// (`z₁` before `z₂` in each degree).
impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial `Σ_α f_α z^α` in `d` variables with finitely many nonzero
/// coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct MPoly {
    dim: usize,
    coeffs: BTreeMap<MultiIndex, C64>,
}

impl MPoly {
    pub fn zero(dim: usize) -> Self {
        MPoly {
            dim,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: C64) -> Self {
        let mut p = MPoly::zero(dim);
        p.add_term(MultiIndex::zero(dim), c);
        p
    }

    /// `c·z^α`.
    pub fn monomial(alpha: MultiIndex, c: C64) -> Self {
        let mut p = MPoly::zero(alpha.dim());
        p.add_term(alpha, c);
        p
    }

    /// `z_k`.
    pub fn variable(dim: usize, k: usize) -> Self {
        MPoly::monomial(MultiIndex::unit(dim, k), c64(1.0, 0.0))
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (MultiIndex, C64)>) -> Result<Self> {
        let mut p = MPoly::zero(dim);
        for (alpha, c) in terms {
            check_dim(dim, alpha.dim())?;
            p.add_term(alpha, c);
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms in graded order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &C64)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> C64 {
        self.coeffs.get(alpha).copied().unwrap_or(c64(0.0, 0.0))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|a| a.degree()).max()
    }

    pub fn add_term(&mut self, alpha: MultiIndex, c: C64) {
        let entry = self.coeffs.entry(alpha.clone()).or_insert(c64(0.0, 0.0));
        *entry += c;
        if *entry == c64(0.0, 0.0) {
            self.coeffs.remove(&alpha);
        }
    }

    pub fn add(&self, other: &MPoly) -> Result<MPoly> {
        check_dim(self.dim, other.dim)?;
        let mut out = self.clone();
        for (a, c) in &other.coeffs {
            out.add_term(a.clone(), *c);
        }
        Ok(out)
    }

    pub fn scale(&self, s: C64) -> MPoly {
        let mut out = MPoly::zero(self.dim);
        for (a, c) in &self.coeffs {
            out.add_term(a.clone(), *c * s);
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> Result<MPoly> {
        check_dim(self.dim, other.dim)?;
        let mut out = MPoly::zero(self.dim);
        for (a, c) in &self.coeffs {
            for (b, e) in &other.coeffs {
                out.add_term(a.plus(b), *c * *e);
            }
        }
        Ok(out)
    }

    /// `∂f/∂z_k`.
    pub fn derivative(&self, k: usize) -> Result<MPoly> {
        if k >= self.dim {
            return Err(Error::InvalidArgument(format!("variable {k} out of range")));
        }
        let mut out = MPoly::zero(self.dim);
        for (a, c) in &self.coeffs {
            if let Some(lower) = a.lowered(k) {
                out.add_term(lower, *c * a.exponents()[k] as f64);
            }
        }
        Ok(out)
    }

    pub fn eval(&self, z: &CVector) -> Result<C64> {
        check_dim(self.dim, z.dim())?;
        Ok(self.coeffs.iter().map(|(a, c)| *c * a.eval(z)).sum())
    }

    /// Coordinates in the orthonormal basis `e_α = z^α/√(α!)`, i.e.
    /// `f_α·√(α!)`. Terms beyond the basis degree are an error.
    pub fn to_coeff_vector(&self, basis: &MonomialBasis) -> Result<Vec<C64>> {
        check_dim(basis.dim(), self.dim)?;
        let mut v = alloc::vec![c64(0.0, 0.0); basis.len()];
        for (a, c) in &self.coeffs {
            let pos = basis.position(a).ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "polynomial degree {} exceeds basis degree {}",
                    a.degree(),
                    basis.degree()
                ))
            })?;
            v[pos] = *c * a.sqrt_factorial();
        }
        Ok(v)
    }

    /// Inverse of [`MPoly::to_coeff_vector`]; exact zeros are dropped.
    pub fn from_coeff_vector(basis: &MonomialBasis, v: &[C64]) -> Result<MPoly> {
        check_dim(basis.len(), v.len())?;
        let mut p = MPoly::zero(basis.dim());
        for (a, c) in basis.indices().iter().zip(v) {
            if *c != c64(0.0, 0.0) {
                p.add_term(a.clone(), *c / a.sqrt_factorial());
            }
        }
        Ok(p)
    }
}

/// The multi-indices `{α : |α| ≤ N}` in graded order, with positions.
#[derive(Debug, Clone)]
pub struct MonomialBasis {
    dim: usize,
    degree: u32,
    indices: Vec<MultiIndex>,
    positions: BTreeMap<MultiIndex, usize>,
}

impl MonomialBasis {
    pub fn new(dim: usize, degree: u32) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        if degree > MAX_DEGREE {
            return Err(Error::ResourceLimit(format!(
                "degree {degree} exceeds the cap {MAX_DEGREE}"
            )));
        }
        let size = binomial(degree as usize + dim, dim);
        if size > MAX_BASIS_SIZE as f64 {
            return Err(Error::ResourceLimit(format!(
                "basis of {size} monomials exceeds the cap {MAX_BASIS_SIZE}"
            )));
        }
        let mut indices = Vec::with_capacity(size as usize);
        for n in 0..=degree {
            let mut current = alloc::vec![0u32; dim];
            compositions(n, 0, &mut current, &mut indices);
        }
        let positions = indices
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        Ok(MonomialBasis {
            dim,
            degree,
            indices,
            positions,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn position(&self, alpha: &MultiIndex) -> Option<usize> {
        self.positions.get(alpha).copied()
    }

    /// Number of basis elements of degree at most `n`.
    pub fn prefix_len(&self, n: u32) -> usize {
        self.indices.partition_point(|a| a.degree() <= n)
    }

    /// `succ[i][k]` is the position of `αᵢ + e_k`, if within the basis.
    pub(crate) fn successors(&self) -> Vec<Vec<Option<usize>>> {
        self.indices
            .iter()
            .map(|a| (0..self.dim).map(|k| self.position(&a.bumped(k))).collect())
            .collect()
    }
}

/// All `α` of total degree `n` in lexicographically descending order.
fn compositions(n: u32, k: usize, current: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
    let d = current.len();
    if k == d - 1 {
        current[k] = n;
        out.push(MultiIndex(current.clone()));
        return;
    }
    for a in (0..=n).rev() {
        current[k] = a;
        compositions(n - a, k + 1, current, out);
    }
    current[k] = 0;
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}
