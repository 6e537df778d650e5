//! Mean-zero real vector fields on Tᵈ in truncated Fourier representation.

use crate::error::{Error, Result};
use crate::spectral::wave::WaveVector;
use num_complex::Complex64;
use smallvec::SmallVec;
use std::collections::BTreeMap;

/// Complex coefficient vector of one mode, one entry per space dimension.
pub type Coef = SmallVec<[Complex64; 3]>;

pub(crate) fn coef_conj(c: &Coef) -> Coef {
    c.iter().map(|z| z.conj()).collect()
}

pub(crate) fn coef_norm_sq(c: &Coef) -> f64 {
    c.iter().map(|z| z.norm_sqr()).sum()
}

/// k · v with integer k and complex v.
pub(crate) fn dot_k(k: &WaveVector, v: &Coef) -> Complex64 {
    k.components()
        .iter()
        .zip(v.iter())
        .map(|(&ki, &vi)| vi * ki as f64)
        .sum()
}

/// Stores one coefficient per canonical mode (first nonzero component of k
/// positive); the Hermitian partner v₋ₖ = conj(vₖ) is implied, so the field
/// is real by construction and the zero mode is never representable.
///
/// Truncation is the cube max_i |k_i| ≤ M.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralField {
    dim: usize,
    cutoff: i32,
    modes: BTreeMap<WaveVector, Coef>,
    div_free: bool,
}

impl SpectralField {
    pub fn zero(dim: usize, cutoff: i32) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension(dim));
        }
        if cutoff < 1 {
            return Err(Error::InvalidCutoff(cutoff));
        }
        Ok(SpectralField {
            dim,
            cutoff,
            modes: BTreeMap::new(),
            div_free: true,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cutoff(&self) -> i32 {
        self.cutoff
    }

    pub fn num_modes(&self) -> usize {
        self.modes.len()
    }

    pub fn is_zero(&self) -> bool {
        self.modes.is_empty()
    }

    /// Whether the field was produced by a divergence-free-preserving path.
    pub fn div_free_flag(&self) -> bool {
        self.div_free
    }

    pub(crate) fn set_div_free_flag(&mut self, v: bool) {
        self.div_free = v;
    }

    /// Canonical modes and their coefficients, in sorted order.
    pub fn modes(&self) -> impl Iterator<Item = (&WaveVector, &Coef)> {
        self.modes.iter()
    }

    /// Canonical modes plus their implied Hermitian partners.
    pub fn full_modes(&self) -> impl Iterator<Item = (WaveVector, Coef)> + '_ {
        self.modes.iter().flat_map(|(k, c)| {
            [(k.clone(), c.clone()), (k.negated(), coef_conj(c))]
        })
    }

    fn check_mode(&self, k: &WaveVector, coef: &Coef) -> Result<()> {
        k.check_dim(self.dim)?;
        if k.is_zero() {
            return Err(Error::ZeroMode);
        }
        if k.sup_norm() > self.cutoff {
            return Err(Error::ModeOutsideCutoff(k.components().to_vec(), self.cutoff));
        }
        if coef.len() != self.dim {
            return Err(Error::CoefficientLength(k.components().to_vec()));
        }
        Ok(())
    }

    /// Sets the coefficient of mode k (replacing any previous value). A
    /// non-canonical k is folded onto its canonical partner by conjugation.
    pub fn set_mode(&mut self, k: WaveVector, coef: Coef) -> Result<()> {
        self.check_mode(&k, &coef)?;
        let (key, value) = if k.is_canonical() {
            (k, coef)
        } else {
            (k.negated(), coef_conj(&coef))
        };
        self.div_free = false;
        self.modes.insert(key, value);
        Ok(())
    }

    /// Accumulates into mode k. Used by convolution and linear combinations.
    pub(crate) fn add_to_mode(&mut self, k: WaveVector, coef: Coef) {
        debug_assert!(!k.is_zero());
        let (key, value) = if k.is_canonical() {
            (k, coef)
        } else {
            (k.negated(), coef_conj(&coef))
        };
        let entry = self.modes.entry(key).or_insert_with(|| {
            SmallVec::from_elem(Complex64::new(0.0, 0.0), value.len())
        });
        for (e, v) in entry.iter_mut().zip(value.iter()) {
            *e += v;
        }
    }

    pub fn coefficient(&self, k: &WaveVector) -> Option<Coef> {
        if k.is_canonical() {
            self.modes.get(k).cloned()
        } else {
            self.modes.get(&k.negated()).map(|c| coef_conj(c))
        }
    }

    /// ‖v‖ₚ = sqrt(Σ_{k≠0} |k|^{2p} |v_k|²), the sum running over the full
    /// (both-signs) mode set. Exact on the truncated space; 0 for the empty
    /// field.
    pub fn sobolev_norm(&self, p: f64) -> f64 {
        let s: f64 = self
            .modes
            .iter()
            .map(|(k, c)| k.modulus_pow(2.0 * p) * coef_norm_sq(c))
            .sum();
        (2.0 * s).sqrt()
    }

    /// ⟨v|w⟩ₚ = Σ |k|^{2p} conj(v_k)·w_k over the full mode set (real for
    /// real fields).
    pub fn inner(&self, other: &SpectralField, p: f64) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let mut acc = 0.0;
        for (k, c) in &self.modes {
            if let Some(d) = other.coefficient(k) {
                let dot: Complex64 = c.iter().zip(d.iter()).map(|(a, b)| a.conj() * b).sum();
                acc += k.modulus_pow(2.0 * p) * dot.re;
            }
        }
        Ok(2.0 * acc)
    }

    /// Modewise orthogonal projection onto k⊥: v_k ↦ v_k − (k·v_k) k/|k|².
    /// Idempotent; annihilates gradients; fixes divergence-free fields.
    pub fn leray_project(&self) -> SpectralField {
        let mut out = self.clone();
        for (k, c) in out.modes.iter_mut() {
            let kv = dot_k(k, c);
            let inv = 1.0 / k.norm_sq() as f64;
            for (ci, &ki) in c.iter_mut().zip(k.components()) {
                *ci -= kv * (ki as f64 * inv);
            }
        }
        out.div_free = true;
        out
    }

    /// (−Δ)^{p/2}: coefficients scaled by |k|^p. p = 2 is −Δ; p may be
    /// negative or fractional.
    pub fn fractional_laplacian(&self, p: f64) -> SpectralField {
        let mut out = self.clone();
        for (k, c) in out.modes.iter_mut() {
            let s = k.modulus_pow(p);
            for ci in c.iter_mut() {
                *ci *= s;
            }
        }
        out
    }

    /// Scales every coefficient by e^{−a |k|² t}: the exact heat flow of
    /// ∂v/∂t = a Δv over time t.
    pub fn heat_scaled(&self, a: f64, t: f64) -> SpectralField {
        let mut out = self.clone();
        for (k, c) in out.modes.iter_mut() {
            let s = (-a * k.norm_sq() as f64 * t).exp();
            for ci in c.iter_mut() {
                *ci *= s;
            }
        }
        out
    }

    pub fn scaled(&self, s: f64) -> SpectralField {
        let mut out = self.clone();
        for c in out.modes.values_mut() {
            for ci in c.iter_mut() {
                *ci *= s;
            }
        }
        out
    }

    /// self + s · other. Panics on dimension/shape mismatch; callers that
    /// take untrusted inputs validate at construction time.
    pub fn add_scaled(&self, other: &SpectralField, s: f64) -> SpectralField {
        assert_eq!(self.dim, other.dim, "field dimension mismatch");
        let mut out = self.clone();
        out.cutoff = self.cutoff.max(other.cutoff);
        out.div_free = self.div_free && other.div_free;
        // integrator stages all share one mode cube; a zipped in-place add
        // avoids per-mode map lookups on that path
        if self.modes.len() == other.modes.len()
            && self.modes.keys().zip(other.modes.keys()).all(|(a, b)| a == b)
        {
            for (mine, theirs) in out.modes.values_mut().zip(other.modes.values()) {
                for (a, b) in mine.iter_mut().zip(theirs.iter()) {
                    *a += *b * s;
                }
            }
            return out;
        }
        for (k, c) in &other.modes {
            let mut scaled: Coef = c.clone();
            for ci in scaled.iter_mut() {
                *ci *= s;
            }
            out.add_to_mode(k.clone(), scaled);
        }
        out
    }

    pub fn sub(&self, other: &SpectralField) -> SpectralField {
        self.add_scaled(other, -1.0)
    }

    /// Keeps modes with max_i |k_i| ≤ m.
    pub fn truncated(&self, m: i32) -> SpectralField {
        let mut out = SpectralField {
            dim: self.dim,
            cutoff: m.min(self.cutoff),
            modes: BTreeMap::new(),
            div_free: self.div_free,
        };
        for (k, c) in &self.modes {
            if k.sup_norm() <= m {
                out.modes.insert(k.clone(), c.clone());
            }
        }
        out
    }

    /// The same field viewed inside a larger cube (cutoff must not shrink).
    pub fn padded_to(&self, m: i32) -> SpectralField {
        assert!(m >= self.cutoff, "padded_to cannot drop modes");
        let mut out = self.clone();
        out.cutoff = m;
        out
    }

    /// Keeps modes with max_i |k_i| > m (the Galerkin tail).
    pub fn tail_beyond(&self, m: i32) -> SpectralField {
        let mut out = SpectralField {
            dim: self.dim,
            cutoff: self.cutoff,
            modes: BTreeMap::new(),
            div_free: self.div_free,
        };
        for (k, c) in &self.modes {
            if k.sup_norm() > m {
                out.modes.insert(k.clone(), c.clone());
            }
        }
        out
    }

    /// Largest |k·v_k| / (|k| · C) over stored modes, where C is the
    /// largest coefficient magnitude of the field; 0 for an empty field.
    ///
    /// Normalizing by the field scale (rather than per mode) keeps the
    /// measure meaningful for modes that projection has cancelled down to
    /// roundoff: such modes carry no information about solenoidality.
    pub fn divergence_residual(&self) -> f64 {
        let scale = self.max_coefficient();
        if scale == 0.0 {
            return 0.0;
        }
        let mut worst = 0.0_f64;
        for (k, c) in &self.modes {
            let r = dot_k(k, c).norm() / (k.modulus() * scale);
            worst = worst.max(r);
        }
        worst
    }

    pub fn is_finite(&self) -> bool {
        self.modes
            .values()
            .all(|c| c.iter().all(|z| z.re.is_finite() && z.im.is_finite()))
    }

    pub fn max_coefficient(&self) -> f64 {
        self.modes
            .values()
            .flat_map(|c| c.iter())
            .fold(0.0_f64, |m, z| m.max(z.norm()))
    }

    /// Drops stored coefficients with magnitude ≤ `abs_tol` (exact zeros by
    /// default in constructors; callers use this to keep documents small).
    pub fn pruned(&self, abs_tol: f64) -> SpectralField {
        let mut out = self.clone();
        out.modes.retain(|_, c| coef_norm_sq(c).sqrt() > abs_tol);
        out
    }
}
