//! Deterministic random divergence-free fields for tests and sampling.

use crate::error::Result;
use crate::spectral::field::{Coef, SpectralField};
use crate::spectral::pair::FieldPair;
use crate::spectral::wave::canonical_modes;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    // Box-Muller; two uniforms per draw keeps the stream simple.
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Mean-zero, divergence-free field with Gaussian coefficients damped by
/// |k|^(−spectrum_decay). Deterministic per seed; every canonical mode in
/// the cube is populated (modes parallel to k collapse under projection and
/// may come out small, never nonsolenoidal).
pub fn random_field(seed: u64, d: usize, cutoff: i32, spectrum_decay: f64) -> Result<SpectralField> {
    let mut field = SpectralField::zero(d, cutoff)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in canonical_modes(d, cutoff) {
        let amp = k.modulus_pow(-spectrum_decay);
        let coef: Coef = (0..d)
            .map(|_| Complex64::new(standard_normal(&mut rng), standard_normal(&mut rng)) * amp)
            .collect();
        field.set_mode(k, coef)?;
    }
    Ok(field.leray_project())
}

/// Divergence-free random pair; the two slots use independent substreams.
pub fn random_pair(seed: u64, d: usize, cutoff: i32, spectrum_decay: f64) -> Result<FieldPair> {
    FieldPair::new(
        random_field(seed.wrapping_mul(2).wrapping_add(1), d, cutoff, spectrum_decay)?,
        random_field(seed.wrapping_mul(2).wrapping_add(2), d, cutoff, spectrum_decay)?,
    )
}
