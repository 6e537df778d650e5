//! Finite Fourier representation of mean-zero vector fields on the d-torus
//! Tᵈ = (ℝ/2πℤ)ᵈ, with exact Sobolev norms, fractional Laplacian powers and
//! the Leray projection.
//!
//! Conventions: a field v = Σₖ v_k e_k with e_k(x) = (2π)^(−d/2) e^(i k·x),
//! v₋ₖ = conj(vₖ) (real fields), ⟨v⟩ = 0. Sobolev norms weight coefficients
//! by |k|^(2p), any real p. Truncation keeps the cube max_i |k_i| ≤ M.

mod field;
mod io;
mod pair;
mod random;
mod wave;

pub use field::{Coef, SpectralField};
pub use io::{validate_document, FieldDocument, FieldReport, ModeEntry, PairDocument, DIV_FREE_TOL};
pub use pair::{dissipation, FieldPair};
pub use random::{random_field, random_pair};
pub use wave::{canonical_modes, ModeCube, WaveVector};
