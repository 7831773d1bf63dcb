#![allow(dead_code)]

use qlag::FamilyParams;
use qlag::PrecReal;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const P: u32 = 256;
pub const GRID_Q: [&str; 5] = ["0.23", "0.5", "0.89", "0.94", "0.997"];
pub const GRID_DELTA: [&str; 3] = ["-1.9", "-1.5", "-1.1"];

pub fn params(q: &str, d: &str) -> FamilyParams {
    FamilyParams::parse(q, d, P).unwrap()
}

/// Every `(q, delta)` of the standard grid.
pub fn grid() -> Vec<(&'static str, &'static str)> {
    GRID_Q
        .iter()
        .flat_map(|&q| GRID_DELTA.iter().map(move |&d| (q, d)))
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `+-10^u` with `u` uniform in `[-3, 3]`.
pub fn random_point(rng: &mut ChaCha8Rng) -> PrecReal {
    let u: f64 = rng.gen_range(-3.0..3.0);
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    PrecReal::from_f64(sign * 10f64.powf(u), P)
}

pub fn rel_err(a: &PrecReal, b: &PrecReal) -> PrecReal {
    let scale = a.abs().max(b.abs());
    if scale.is_zero() {
        return PrecReal::zero(P);
    }
    (a - b).abs() / scale
}
