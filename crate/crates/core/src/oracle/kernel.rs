use alloc::vec::Vec;

use crate::conjugation::ConjugationParams;
use crate::error::{check_dim, Error, Result};
use crate::linalg::{c64, cholesky, CMatrix, CVector, C64};
use crate::symbol::{ScaledKernel, WcSymbol};

/// A finite combination `Σᵢ cᵢ K_{zᵢ}` of reproducing kernels.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelCombo {
    dim: usize,
    terms: Vec<(C64, CVector)>,
}

impl KernelCombo {
    /// The zero function.
    pub fn zero(dim: usize) -> Self {
        KernelCombo {
            dim,
            terms: Vec::new(),
        }
    }

    pub fn single(coeff: C64, point: CVector) -> Self {
        KernelCombo {
            dim: point.dim(),
            terms: alloc::vec![(coeff, point)],
        }
    }

    pub fn from_terms(dim: usize, terms: Vec<(C64, CVector)>) -> Result<Self> {
        for (_, p) in &terms {
            check_dim(dim, p.dim())?;
        }
        Ok(KernelCombo { dim, terms })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(C64, CVector)] {
        &self.terms
    }

    pub fn push(&mut self, coeff: C64, point: CVector) -> Result<()> {
        check_dim(self.dim, point.dim())?;
        self.terms.push((coeff, point));
        Ok(())
    }

    pub fn scale(&self, s: C64) -> KernelCombo {
        KernelCombo {
            dim: self.dim,
            terms: self.terms.iter().map(|(c, p)| (*c * s, p.clone())).collect(),
        }
    }

    /// Concatenation of the term lists, i.e. the sum of the functions.
    pub fn add(&self, other: &KernelCombo) -> Result<KernelCombo> {
        check_dim(self.dim, other.dim)?;
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(KernelCombo { dim: self.dim, terms })
    }

    /// `Σᵢ |cᵢ| e^{|zᵢ|²/2}`, the sum of the term norms.
    pub fn term_norm_sum(&self) -> f64 {
        self.terms
            .iter()
            .map(|(c, p)| c.norm() * libm::exp(p.norm_sqr() / 2.0))
            .sum()
    }

    /// `F(x) = Σᵢ cᵢ e^{⟨x, zᵢ⟩}`.
    pub fn eval(&self, x: &CVector) -> Result<C64> {
        check_dim(self.dim, x.dim())?;
        Ok(self.terms.iter().map(|(c, p)| *c * x.inner(p).exp()).sum())
    }

    /// `⟨F, G⟩ = Σᵢⱼ cᵢ·conj(dⱼ)·e^{⟨wⱼ, zᵢ⟩}`.
    pub fn inner(&self, other: &KernelCombo) -> Result<C64> {
        check_dim(self.dim, other.dim)?;
        let mut acc = c64(0.0, 0.0);
        for (c, z) in &self.terms {
            for (e, w) in &other.terms {
                acc += *c * e.conj() * w.inner(z).exp();
            }
        }
        Ok(acc)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.inner(self).map(|z| z.re).unwrap_or(0.0)
    }

    /// `C_S F`, termwise through the kernel action.
    pub fn apply_symbol(&self, s: &WcSymbol) -> Result<KernelCombo> {
        check_dim(self.dim, s.dim())?;
        let terms = self
            .terms
            .iter()
            .map(|(c, p)| {
                let k = s.act_on_kernel(p)?;
                Ok((*c * k.coeff, k.point))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(KernelCombo { dim: self.dim, terms })
    }

    /// `𝒥F`; the coefficients are conjugated since `𝒥` is antilinear.
    pub fn apply_conjugation(&self, j: &ConjugationParams) -> Result<KernelCombo> {
        check_dim(self.dim, j.dim())?;
        let terms = self
            .terms
            .iter()
            .map(|(c, p)| {
                let k: ScaledKernel = j.apply_to_kernel(p)?;
                Ok((c.conj() * k.coeff, k.point))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(KernelCombo { dim: self.dim, terms })
    }
}

/// `G_{ij} = ⟨K_{zᵢ}, K_{zⱼ}⟩ = e^{⟨zⱼ, zᵢ⟩}`.
pub fn gram_matrix(points: &[CVector]) -> Result<CMatrix> {
    if let Some(first) = points.first() {
        for p in points {
            check_dim(first.dim(), p.dim())?;
        }
    }
    Ok(CMatrix::from_fn(points.len(), |i, j| points[j].inner(&points[i]).exp()))
}

pub fn gram_is_positive_definite(points: &[CVector]) -> Result<bool> {
    let g = gram_matrix(points)?;
    Ok(cholesky(&g).is_ok())
}

fn require_points(points: &[CVector], d: usize) -> Result<()> {
    if points.len() < 2 {
        return Err(Error::InvalidArgument("at least two kernel points are required".into()));
    }
    for p in points {
        check_dim(d, p.dim())?;
    }
    Ok(())
}

fn relative_gap(lhs: C64, rhs: C64) -> f64 {
    (lhs - rhs).norm() / lhs.norm().max(rhs.norm()).max(1.0)
}

/// `max_{i,j} |⟨C_S K_{zᵢ}, K_{zⱼ}⟩ − ⟨K_{zᵢ}, C_{S†} K_{zⱼ}⟩| / scale` with
/// `S†` the adjoint symbol.
pub fn adjoint_defect(s: &WcSymbol, points: &[CVector]) -> Result<f64> {
    adjoint_defect_against(s, &s.adjoint(), points)
}

/// As [`adjoint_defect`] with an arbitrary candidate for the adjoint symbol.
pub fn adjoint_defect_against(s: &WcSymbol, candidate: &WcSymbol, points: &[CVector]) -> Result<f64> {
    require_points(points, s.dim())?;
    check_dim(s.dim(), candidate.dim())?;
    let kernels: Vec<KernelCombo> = points
        .iter()
        .map(|p| KernelCombo::single(c64(1.0, 0.0), p.clone()))
        .collect();
    let forward: Vec<KernelCombo> = kernels.iter().map(|k| k.apply_symbol(s)).collect::<Result<_>>()?;
    let backward: Vec<KernelCombo> = kernels
        .iter()
        .map(|k| k.apply_symbol(candidate))
        .collect::<Result<_>>()?;
    let mut worst = 0.0f64;
    for i in 0..points.len() {
        for j in 0..points.len() {
            let lhs = forward[i].inner(&kernels[j])?;
            let rhs = kernels[i].inner(&backward[j])?;
            worst = worst.max(relative_gap(lhs, rhs));
        }
    }
    Ok(worst)
}

/// `max_{i,j} |⟨C_S K_{zᵢ}, 𝒥K_{zⱼ}⟩ − ⟨C_S K_{zⱼ}, 𝒥K_{zᵢ}⟩| / scale`, the
/// asymmetry of the bilinear form `[f, g] = ⟨C_S f, 𝒥g⟩`.
pub fn j_symmetry_defect(s: &WcSymbol, j: &ConjugationParams, points: &[CVector]) -> Result<f64> {
    require_points(points, s.dim())?;
    check_dim(s.dim(), j.dim())?;
    j.require_valid()?;
    let kernels: Vec<KernelCombo> = points
        .iter()
        .map(|p| KernelCombo::single(c64(1.0, 0.0), p.clone()))
        .collect();
    let images: Vec<KernelCombo> = kernels.iter().map(|k| k.apply_symbol(s)).collect::<Result<_>>()?;
    let conjugated: Vec<KernelCombo> = kernels
        .iter()
        .map(|k| k.apply_conjugation(j))
        .collect::<Result<_>>()?;
    let mut worst = 0.0f64;
    for a in 0..points.len() {
        for b in a + 1..points.len() {
            let lhs = images[a].inner(&conjugated[b])?;
            let rhs = images[b].inner(&conjugated[a])?;
            worst = worst.max(relative_gap(lhs, rhs));
        }
    }
    Ok(worst)
}

/// `max_x |(𝒥𝒥F)(x) − F(x)|` over the probe points, relative to the sum of
/// the term norms of `F` (pointwise values are inner products with kernels).
pub fn involution_defect(j: &ConjugationParams, f: &KernelCombo, probes: &[CVector]) -> Result<f64> {
    let twice = f.apply_conjugation(j)?.apply_conjugation(j)?;
    let scale = f.term_norm_sum().max(1.0);
    let mut worst = 0.0f64;
    for x in probes {
        let norm_x = libm::exp(x.norm_sqr() / 2.0);
        worst = worst.max((twice.eval(x)? - f.eval(x)?).norm() / (scale * norm_x));
    }
    Ok(worst)
}

/// `|⟨𝒥F, 𝒥G⟩ − ⟨G, F⟩|` relative to the product of the term norm sums.
pub fn isometry_defect(j: &ConjugationParams, f: &KernelCombo, g: &KernelCombo) -> Result<f64> {
    let lhs = f.apply_conjugation(j)?.inner(&g.apply_conjugation(j)?)?;
    let rhs = g.inner(f)?;
    Ok((lhs - rhs).norm() / (f.term_norm_sum() * g.term_norm_sum()).max(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn inner_of_constant_kernels() {
        let k0 = KernelCombo::single(c64(1.0, 0.0), CVector::zeros(1));
        assert_eq!(k0.inner(&k0).unwrap(), c64(1.0, 0.0));
    }

    #[test]
    fn gram_of_zero_and_one() {
        let g = gram_matrix(&[CVector::zeros(1), CVector::from_real(&[1.0])]).unwrap();
        assert_eq!(g[(0, 0)], c64(1.0, 0.0));
        assert_eq!(g[(0, 1)], c64(1.0, 0.0));
        assert_eq!(g[(1, 0)], c64(1.0, 0.0));
        assert!((g[(1, 1)] - c64(core::f64::consts::E, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn symbol_on_constant_kernel() {
        let s = WcSymbol::new(
            c64(1.0, 0.0),
            CVector::from_real(&[2.0]),
            CMatrix::from_diagonal(&[c64(0.0, 1.0)]),
            CVector::from_real(&[1.0]),
        )
        .unwrap();
        let out = KernelCombo::single(c64(1.0, 0.0), CVector::zeros(1)).apply_symbol(&s).unwrap();
        assert_eq!(out.terms(), &[(c64(1.0, 0.0), CVector::from_real(&[2.0]))]);
    }

    #[test]
    fn coordinate_conjugation_on_combo() {
        let f = KernelCombo::from_terms(
            1,
            vec![(c64(1.0, 2.0), CVector::new(vec![c64(0.5, 0.5)]))],
        )
        .unwrap();
        let g = f.apply_conjugation(&ConjugationParams::identity(1)).unwrap();
        assert_eq!(g.terms(), &[(c64(1.0, -2.0), CVector::new(vec![c64(0.5, -0.5)]))]);
    }

    #[test]
    fn identity_defects_vanish() {
        let pts = vec![CVector::from_real(&[0.1, 0.2]), CVector::new(vec![c64(0.0, 0.5), c64(-0.3, 0.1)])];
        let id = WcSymbol::identity(2);
        assert!(adjoint_defect(&id, &pts).unwrap() < 1e-12);
        assert!(j_symmetry_defect(&id, &ConjugationParams::identity(2), &pts).unwrap() < 1e-12);
    }

    #[test]
    fn single_point_rejected() {
        assert!(adjoint_defect(&WcSymbol::identity(1), &[CVector::zeros(1)]).is_err());
    }
}
