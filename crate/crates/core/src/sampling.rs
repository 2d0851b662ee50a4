//! Random members of the operator classes, for test drivers and the command
//! line. Every generator is a pure function of the supplied RNG state.

use alloc::vec::Vec;

use rand::Rng;

use crate::conjugation::ConjugationParams;
use crate::linalg::{c64, op_norm, CMatrix, CVector, C64};
use crate::oracle::{MPoly, MultiIndex};
use crate::semigroup::SemigroupParams;
use crate::symbol::WcSymbol;

/// Real and imaginary parts uniform in `[−radius, radius]`.
pub fn complex<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> C64 {
    c64(
        rng.random_range(-radius..=radius),
        rng.random_range(-radius..=radius),
    )
}

pub fn unit_phase<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    c64(0.0, rng.random_range(-core::f64::consts::PI..core::f64::consts::PI)).exp()
}

/// Modulus in `[0.3, 1.5]`, uniform phase.
pub fn nonzero_coeff<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    unit_phase(rng) * rng.random_range(0.3..1.5)
}

pub fn real_vector<R: Rng + ?Sized>(rng: &mut R, d: usize, radius: f64) -> Vec<f64> {
    (0..d).map(|_| rng.random_range(-radius..=radius)).collect()
}

pub fn vector<R: Rng + ?Sized>(rng: &mut R, d: usize, radius: f64) -> CVector {
    CVector::new((0..d).map(|_| complex(rng, radius)).collect())
}

/// A point with Euclidean norm at most `radius`.
pub fn ball_point<R: Rng + ?Sized>(rng: &mut R, d: usize, radius: f64) -> CVector {
    let v = vector(rng, d, 1.0);
    let n = v.norm();
    if n == 0.0 {
        return v;
    }
    v.scale(c64(radius * rng.random_range(0.0..=1.0) / n, 0.0))
}

pub fn points<R: Rng + ?Sized>(rng: &mut R, d: usize, count: usize, radius: f64) -> Vec<CVector> {
    (0..count).map(|_| ball_point(rng, d, radius)).collect()
}

pub fn matrix<R: Rng + ?Sized>(rng: &mut R, d: usize, radius: f64) -> CMatrix {
    CMatrix::from_fn(d, |_, _| complex(rng, radius))
}

pub fn hermitian<R: Rng + ?Sized>(rng: &mut R, d: usize, radius: f64) -> CMatrix {
    let m = matrix(rng, d, radius);
    (&m + &m.adjoint()).scale_real(0.5)
}

/// Gram–Schmidt on random columns.
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
    loop {
        let mut cols: Vec<CVector> = Vec::with_capacity(d);
        let mut ok = true;
        for _ in 0..d {
            let mut v = vector(rng, d, 1.0);
            for _ in 0..2 {
                for e in &cols {
                    let p = v.inner(e);
                    v = &v - &e.scale(p);
                }
            }
            let n = v.norm();
            if n < 1e-3 {
                ok = false;
                break;
            }
            cols.push(v.scale(c64(1.0 / n, 0.0)));
        }
        if ok {
            return CMatrix::from_columns(&cols);
        }
    }
}

/// `M` rescaled so that `‖M‖ ≤ bound`.
pub fn scaled_to_norm<R: Rng + ?Sized>(rng: &mut R, m: &CMatrix, bound: f64) -> CMatrix {
    let n = op_norm(m);
    if n == 0.0 {
        return m.clone();
    }
    m.scale_real(bound * rng.random_range(0.2..=1.0) / n)
}

/// A generic symbol with entries of modulus at most `radius`.
pub fn symbol<R: Rng + ?Sized>(rng: &mut R, d: usize, radius: f64) -> WcSymbol {
    WcSymbol::new(
        nonzero_coeff(rng),
        vector(rng, d, radius),
        matrix(rng, d, radius),
        vector(rng, d, radius),
    )
    .expect("sampled symbol is valid")
}

/// A symbol with `‖Q‖ ≤ norm` and `|ℓ|, |q| ≤ radius`.
pub fn contraction_symbol<R: Rng + ?Sized>(rng: &mut R, d: usize, norm: f64, radius: f64) -> WcSymbol {
    let raw = matrix(rng, d, 1.0);
    let q_lin = scaled_to_norm(rng, &raw, norm);
    WcSymbol::new(nonzero_coeff(rng), ball_point(rng, d, radius), q_lin, ball_point(rng, d, radius))
        .expect("sampled symbol is valid")
}

/// `A = UUᵗ`, `b = U(i·r)` with `r` real, `c = e^{−|b|²/2}·e^{iφ}`; `b = 0`
/// unless `shifted`.
pub fn conjugation<R: Rng + ?Sized>(rng: &mut R, d: usize, shifted: bool) -> ConjugationParams {
    conjugation_with_shift(rng, d, if shifted { 0.6 } else { 0.0 })
}

/// As [`conjugation`] with the entries of `r` drawn from `[−radius, radius]`.
pub fn conjugation_with_shift<R: Rng + ?Sized>(rng: &mut R, d: usize, radius: f64) -> ConjugationParams {
    let u = unitary(rng, d);
    let a = &u * &u.transpose();
    let a = (&a + &a.transpose()).scale_real(0.5);
    let b = if radius > 0.0 {
        let r = real_vector(rng, d, radius);
        &u * &CVector::new(r.into_iter().map(|x| c64(0.0, x)).collect())
    } else {
        CVector::zeros(d)
    };
    let c = unit_phase(rng) * libm::exp(-b.norm_sqr() / 2.0);
    ConjugationParams::new(a, b, c).expect("sampled conjugation is valid")
}

fn real_spectrum<R: Rng + ?Sized>(rng: &mut R, d: usize, repeated: bool) -> Vec<C64> {
    let mut eig: Vec<C64> = real_vector(rng, d, 1.5).into_iter().map(|x| c64(x, 0.0)).collect();
    if repeated && d >= 2 {
        eig[1] = eig[0];
    }
    eig
}

fn real_symmetric_parts<R: Rng + ?Sized>(rng: &mut R, d: usize, repeated: bool) -> (CMatrix, CVector) {
    let u = unitary(rng, d);
    let q_lin = &(&u * &CMatrix::from_diagonal(&real_spectrum(rng, d, repeated))) * &u.adjoint();
    let q_lin = (&q_lin + &q_lin.adjoint()).scale_real(0.5);
    (q_lin, vector(rng, d, 1.0))
}

/// `Q` Hermitian, `ℓ = q`, `θ` real.
pub fn real_symmetric_symbol<R: Rng + ?Sized>(rng: &mut R, d: usize, repeated: bool) -> WcSymbol {
    let (q_lin, q) = real_symmetric_parts(rng, d, repeated);
    let theta = rng.random_range(0.3..1.5) * if rng.random::<bool>() { 1.0 } else { -1.0 };
    WcSymbol::new(c64(theta, 0.0), q.clone(), q_lin, q).expect("sampled symbol is valid")
}

/// `Q` Hermitian, `ℓ = q`, `θ` imaginary.
pub fn skew_real_symmetric_symbol<R: Rng + ?Sized>(rng: &mut R, d: usize, repeated: bool) -> WcSymbol {
    let (q_lin, q) = real_symmetric_parts(rng, d, repeated);
    let theta = rng.random_range(0.3..1.5) * if rng.random::<bool>() { 1.0 } else { -1.0 };
    WcSymbol::new(c64(0.0, theta), q.clone(), q_lin, q).expect("sampled symbol is valid")
}

/// `A*·(X + Xᵗ)/2`, so that `A` times the result is symmetric.
fn symmetric_after<R: Rng + ?Sized>(rng: &mut R, a: &CMatrix, radius: f64) -> CMatrix {
    let x = a * &matrix(rng, a.dim(), radius);
    let sym = (&x + &x.transpose()).scale_real(0.5);
    &a.adjoint() * &sym
}

/// A symbol that is `𝒥`-selfadjoint for `j`: `(AQ)ᵗ = AQ` and
/// `ℓ = conj(Aq) + b̄ − Q*b̄`.
pub fn j_selfadjoint_symbol<R: Rng + ?Sized>(rng: &mut R, j: &ConjugationParams) -> WcSymbol {
    let d = j.dim();
    let q_lin = symmetric_after(rng, j.matrix(), 0.8);
    let q = vector(rng, d, 0.8);
    let b_bar = j.shift().conj();
    let ell = &(&(j.matrix() * &q).conj() + &b_bar) - &(&q_lin.adjoint() * &b_bar);
    WcSymbol::new(nonzero_coeff(rng), ell, q_lin, q).expect("sampled symbol is valid")
}

/// A symbol that is normal in the bounded sense: `Q = UΛU*` with `|λ| ≤ 1`,
/// `(I − Q)ℓ = (I − Q*)q` and `‖ℓ‖ = ‖q‖`. With `unit_eigenvalue` the
/// eigenvalue 1 is present (twice when `repeated` and `d ≥ 2`); otherwise
/// `repeated` duplicates an eigenvalue.
pub fn normal_bounded_symbol<R: Rng + ?Sized>(
    rng: &mut R,
    d: usize,
    repeated: bool,
    unit_eigenvalue: bool,
) -> WcSymbol {
    let mut eig: Vec<C64> = (0..d)
        .map(|_| unit_phase(rng) * rng.random_range(0.0..=1.0))
        .collect();
    let mut unit_slots = 0;
    if unit_eigenvalue {
        eig[0] = c64(1.0, 0.0);
        unit_slots = 1;
        if repeated && d >= 2 {
            eig[1] = c64(1.0, 0.0);
            unit_slots = 2;
        }
    } else if repeated && d >= 2 {
        eig[1] = eig[0];
    }
    let u = unitary(rng, d);
    let offset_coords = vector(rng, d, 1.0);
    let mut exponent_coords = CVector::zeros(d);
    for k in unit_slots..d {
        let lambda = eig[k];
        exponent_coords[k] = offset_coords[k] * ((c64(1.0, 0.0) - lambda.conj()) / (c64(1.0, 0.0) - lambda));
    }
    if unit_slots > 0 {
        let target: f64 = (0..unit_slots).map(|k| offset_coords[k].norm_sqr()).sum::<f64>();
        let target = libm::sqrt(target);
        let raw = vector(rng, unit_slots, 1.0);
        let scale = target / raw.norm();
        for k in 0..unit_slots {
            exponent_coords[k] = raw[k] * scale;
        }
    }
    let q_lin = &(&u * &CMatrix::from_diagonal(&eig)) * &u.adjoint();
    WcSymbol::new(
        nonzero_coeff(rng),
        &u * &exponent_coords,
        q_lin,
        &u * &offset_coords,
    )
    .expect("sampled symbol is valid")
}

/// Generic semigroup data with `‖Ω‖ ≤ drift_norm`.
pub fn semigroup_params<R: Rng + ?Sized>(rng: &mut R, d: usize, drift_norm: f64) -> SemigroupParams {
    let raw = matrix(rng, d, 1.0);
    let drift = scaled_to_norm(rng, &raw, drift_norm);
    SemigroupParams::new(drift, vector(rng, d, 0.8), vector(rng, d, 0.8), complex(rng, 0.5))
        .expect("sampled parameters are valid")
}

/// Semigroup data with `(AΩ)ᵗ = AΩ` and `ℓ◇ = conj(Aq◇) − Ω*b̄`, so that every
/// member is `𝒥`-selfadjoint for `j`.
pub fn j_semigroup_params<R: Rng + ?Sized>(rng: &mut R, j: &ConjugationParams, drift_norm: f64) -> SemigroupParams {
    let d = j.dim();
    let raw = symmetric_after(rng, j.matrix(), 1.0);
    let drift = scaled_to_norm(rng, &raw, drift_norm);
    let offset_rate = vector(rng, d, 0.8);
    let exponent_rate = &(j.matrix() * &offset_rate).conj() - &(&drift.adjoint() * &j.shift().conj());
    SemigroupParams::new(drift, offset_rate, exponent_rate, complex(rng, 0.5))
        .expect("sampled parameters are valid")
}

/// A polynomial of total degree exactly `degree` with up to `terms` terms.
pub fn polynomial<R: Rng + ?Sized>(rng: &mut R, d: usize, degree: u32, terms: usize) -> MPoly {
    let mut p = MPoly::zero(d);
    let mut top = alloc::vec![0u32; d];
    top[rng.random_range(0..d)] = degree;
    p.add_term(MultiIndex::new(top), nonzero_coeff(rng));
    for _ in 1..terms {
        let mut alpha = alloc::vec![0u32; d];
        let total = rng.random_range(0..=degree);
        for _ in 0..total {
            alpha[rng.random_range(0..d)] += 1;
        }
        p.add_term(MultiIndex::new(alpha), complex(rng, 1.0));
    }
    p
}
