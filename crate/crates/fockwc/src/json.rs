//! File formats. Complex numbers are `[re, im]`, vectors are arrays of
//! complex numbers and matrices are row-major arrays of rows.

use std::path::Path;

use fockwc_core::linalg::c64;
use fockwc_core::{CMatrix, CVector, ConjugationParams, KernelCombo, MPoly, MultiIndex, SemigroupParams, WcSymbol, C64};
use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::CliError;

pub type Complex = [f64; 2];

fn complex(z: Complex) -> C64 {
    c64(z[0], z[1])
}

fn encode(z: C64) -> Complex {
    [z.re, z.im]
}

fn vector(d: usize, field: &str, v: &[Complex]) -> Result<CVector, CliError> {
    if v.len() != d {
        return Err(CliError::Format(format!("\"{field}\" has {} entries, expected {d}", v.len())));
    }
    Ok(CVector::new(v.iter().copied().map(complex).collect()))
}

fn matrix(d: usize, field: &str, rows: &[Vec<Complex>]) -> Result<CMatrix, CliError> {
    if rows.len() != d || rows.iter().any(|r| r.len() != d) {
        return Err(CliError::Format(format!("\"{field}\" must be {d}×{d}")));
    }
    Ok(CMatrix::from_rows(rows.iter().map(|r| r.iter().copied().map(complex).collect()).collect())?)
}

fn encode_vector(v: &CVector) -> Vec<Complex> {
    v.iter().copied().map(encode).collect()
}

fn encode_matrix(m: &CMatrix) -> Vec<Vec<Complex>> {
    m.rows().map(|r| r.iter().copied().map(encode).collect()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolJson {
    pub d: usize,
    pub theta: Complex,
    pub ell: Vec<Complex>,
    #[serde(rename = "Q")]
    pub q_matrix: Vec<Vec<Complex>>,
    pub q: Vec<Complex>,
}

impl SymbolJson {
    pub fn decode(&self) -> Result<WcSymbol, CliError> {
        Ok(WcSymbol::new(
            complex(self.theta),
            vector(self.d, "ell", &self.ell)?,
            matrix(self.d, "Q", &self.q_matrix)?,
            vector(self.d, "q", &self.q)?,
        )?)
    }
}

impl From<&WcSymbol> for SymbolJson {
    fn from(s: &WcSymbol) -> Self {
        SymbolJson {
            d: s.dim(),
            theta: encode(s.coeff()),
            ell: encode_vector(s.exponent()),
            q_matrix: encode_matrix(s.linear()),
            q: encode_vector(s.offset()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConjugationJson {
    pub d: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<Complex>>,
    pub b: Vec<Complex>,
    pub c: Complex,
}

impl ConjugationJson {
    pub fn decode(&self) -> Result<ConjugationParams, CliError> {
        Ok(ConjugationParams::new(
            matrix(self.d, "A", &self.a)?,
            vector(self.d, "b", &self.b)?,
            complex(self.c),
        )?)
    }
}

impl From<&ConjugationParams> for ConjugationJson {
    fn from(j: &ConjugationParams) -> Self {
        ConjugationJson {
            d: j.dim(),
            a: encode_matrix(j.matrix()),
            b: encode_vector(j.shift()),
            c: encode(j.scale()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupJson {
    pub d: usize,
    #[serde(rename = "Omega")]
    pub omega: Vec<Vec<Complex>>,
    pub q_star: Vec<Complex>,
    pub ell_star: Vec<Complex>,
    pub theta_star: Complex,
}

impl SemigroupJson {
    pub fn decode(&self) -> Result<SemigroupParams, CliError> {
        Ok(SemigroupParams::new(
            matrix(self.d, "Omega", &self.omega)?,
            vector(self.d, "q_star", &self.q_star)?,
            vector(self.d, "ell_star", &self.ell_star)?,
            complex(self.theta_star),
        )?)
    }
}

impl From<&SemigroupParams> for SemigroupJson {
    fn from(p: &SemigroupParams) -> Self {
        SemigroupJson {
            d: p.dim(),
            omega: encode_matrix(p.drift()),
            q_star: encode_vector(p.offset_rate()),
            ell_star: encode_vector(p.exponent_rate()),
            theta_star: encode(p.coeff_rate()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialJson {
    pub alpha: Vec<u32>,
    pub coeff: Complex,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyJson {
    pub d: usize,
    pub terms: Vec<MonomialJson>,
}

impl PolyJson {
    /// Repeated multi-indices are summed.
    pub fn decode(&self) -> Result<MPoly, CliError> {
        if self.d == 0 {
            return Err(CliError::Format("\"d\" must be positive".into()));
        }
        let mut p = MPoly::zero(self.d);
        for t in &self.terms {
            if t.alpha.len() != self.d {
                return Err(CliError::Format(format!("multi-index {:?} has length ≠ {}", t.alpha, self.d)));
            }
            p.add_term(MultiIndex::new(t.alpha.clone()), complex(t.coeff));
        }
        Ok(p)
    }
}

impl From<&MPoly> for PolyJson {
    fn from(p: &MPoly) -> Self {
        PolyJson {
            d: p.dim(),
            terms: p
                .terms()
                .map(|(a, c)| MonomialJson {
                    alpha: a.exponents().to_vec(),
                    coeff: encode(*c),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelTermJson {
    pub coeff: Complex,
    pub point: Vec<Complex>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelComboJson {
    pub d: usize,
    pub terms: Vec<KernelTermJson>,
}

impl KernelComboJson {
    pub fn decode(&self) -> Result<KernelCombo, CliError> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((complex(t.coeff), vector(self.d, "point", &t.point)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(KernelCombo::from_terms(self.d, terms)?)
    }
}

impl From<&KernelCombo> for KernelComboJson {
    fn from(f: &KernelCombo) -> Self {
        KernelComboJson {
            d: f.dim(),
            terms: f
                .terms()
                .iter()
                .map(|(c, p)| KernelTermJson {
                    coeff: encode(*c),
                    point: encode_vector(p),
                })
                .collect(),
        }
    }
}

/// A points file is a bare array of vectors.
pub fn decode_points(points: &[Vec<Complex>], d: usize) -> Result<Vec<CVector>, CliError> {
    points.iter().map(|p| vector(d, "point", p)).collect()
}

pub fn encode_points(points: &[CVector]) -> Vec<Vec<Complex>> {
    points.iter().map(encode_vector).collect()
}

pub fn read<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Json(path.display().to_string(), e))
}
