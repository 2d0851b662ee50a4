#![allow(dead_code)]

use fockwc_core::{CVector, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `e^{⟨x, w⟩}`, written out coordinate by coordinate.
pub fn kernel_at(w: &CVector, x: &CVector) -> C64 {
    let mut s = C64::new(0.0, 0.0);
    for k in 0..x.dim() {
        s += x[k] * w[k].conj();
    }
    s.exp()
}

pub fn rel_gap(a: C64, b: C64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1.0)
}
