//! Velocity/magnetic field pairs — the state of the MHD system.

use crate::error::{Error, Result};
use crate::spectral::field::SpectralField;

/// Ordered pair (velocity, magnetic) sharing dimension and cutoff.
/// The pair norm is ‖(v,c)‖ₚ = sqrt(‖v‖ₚ² + ‖c‖ₚ²).
#[derive(Clone, Debug, PartialEq)]
pub struct FieldPair {
    velocity: SpectralField,
    magnetic: SpectralField,
}

impl FieldPair {
    pub fn new(velocity: SpectralField, magnetic: SpectralField) -> Result<Self> {
        if velocity.dim() != magnetic.dim() {
            return Err(Error::DimensionMismatch(velocity.dim(), magnetic.dim()));
        }
        if velocity.cutoff() != magnetic.cutoff() {
            return Err(Error::CutoffMismatch(velocity.cutoff(), magnetic.cutoff()));
        }
        Ok(FieldPair { velocity, magnetic })
    }

    pub fn zero(dim: usize, cutoff: i32) -> Result<Self> {
        Ok(FieldPair {
            velocity: SpectralField::zero(dim, cutoff)?,
            magnetic: SpectralField::zero(dim, cutoff)?,
        })
    }

    pub fn velocity(&self) -> &SpectralField {
        &self.velocity
    }

    pub fn magnetic(&self) -> &SpectralField {
        &self.magnetic
    }

    pub fn dim(&self) -> usize {
        self.velocity.dim()
    }

    pub fn cutoff(&self) -> i32 {
        self.velocity.cutoff()
    }

    pub fn sobolev_norm(&self, p: f64) -> f64 {
        let a = self.velocity.sobolev_norm(p);
        let b = self.magnetic.sobolev_norm(p);
        a.hypot(b)
    }

    pub fn inner(&self, other: &FieldPair, p: f64) -> Result<f64> {
        Ok(self.velocity.inner(&other.velocity, p)? + self.magnetic.inner(&other.magnetic, p)?)
    }

    pub fn add_scaled(&self, other: &FieldPair, s: f64) -> FieldPair {
        FieldPair {
            velocity: self.velocity.add_scaled(&other.velocity, s),
            magnetic: self.magnetic.add_scaled(&other.magnetic, s),
        }
    }

    pub fn sub(&self, other: &FieldPair) -> FieldPair {
        self.add_scaled(other, -1.0)
    }

    pub fn scaled(&self, s: f64) -> FieldPair {
        FieldPair {
            velocity: self.velocity.scaled(s),
            magnetic: self.magnetic.scaled(s),
        }
    }

    /// Exact heat flow of the diagonal dissipation over time t: the
    /// velocity slot evolves by e^{ν t Δ}, the magnetic slot by e^{η t Δ}.
    pub fn heat_scaled(&self, nu: f64, eta: f64, t: f64) -> FieldPair {
        FieldPair {
            velocity: self.velocity.heat_scaled(nu, t),
            magnetic: self.magnetic.heat_scaled(eta, t),
        }
    }

    pub fn truncated(&self, m: i32) -> FieldPair {
        FieldPair {
            velocity: self.velocity.truncated(m),
            magnetic: self.magnetic.truncated(m),
        }
    }

    pub fn padded_to(&self, m: i32) -> FieldPair {
        FieldPair {
            velocity: self.velocity.padded_to(m),
            magnetic: self.magnetic.padded_to(m),
        }
    }

    pub fn tail_beyond(&self, m: i32) -> FieldPair {
        FieldPair {
            velocity: self.velocity.tail_beyond(m),
            magnetic: self.magnetic.tail_beyond(m),
        }
    }

    pub fn leray_project(&self) -> FieldPair {
        FieldPair {
            velocity: self.velocity.leray_project(),
            magnetic: self.magnetic.leray_project(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.velocity.is_finite() && self.magnetic.is_finite()
    }

    pub fn divergence_residual(&self) -> f64 {
        self.velocity
            .divergence_residual()
            .max(self.magnetic.divergence_residual())
    }
}

/// The diagonal dissipation term (ν Δv, η Δc).
///
/// Satisfies ⟨·|𝐯⟩ₚ = −ν‖v‖²ₚ₊₁ − η‖c‖²ₚ₊₁ ≤ −μ‖𝐯‖²ₚ₊₁ with μ = min(ν, η).
pub fn dissipation(pair: &FieldPair, nu: f64, eta: f64) -> Result<FieldPair> {
    if !(nu > 0.0) || !(eta > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "viscosity and resistivity must be positive (got nu = {nu}, eta = {eta})"
        )));
    }
    // Δ scales each mode by −|k|²
    let neg_lap = |f: &SpectralField, a: f64| f.fractional_laplacian(2.0).scaled(-a);
    Ok(FieldPair {
        velocity: neg_lap(&pair.velocity, nu),
        magnetic: neg_lap(&pair.magnetic, eta),
    })
}
