//! Field (de)serialization and raw-document validation.
//!
//! The on-disk form lists canonical representatives only:
//! `{"d": 2, "cutoff": 2, "modes": [{"k": [1,0], "re": [..], "im": [..]}]}`.
//! The loader re-derives Hermitian partners and validates the mean-zero,
//! cube and (optionally) divergence-free invariants.

use crate::error::{Error, Result};
use crate::spectral::field::{Coef, SpectralField};
use crate::spectral::pair::FieldPair;
use crate::spectral::wave::WaveVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Relative divergence residual below which a loaded field is flagged
/// divergence-free.
pub const DIV_FREE_TOL: f64 = 1e-12;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModeEntry {
    pub k: Vec<i32>,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FieldDocument {
    pub d: usize,
    pub cutoff: i32,
    pub modes: Vec<ModeEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairDocument {
    pub velocity: FieldDocument,
    pub magnetic: FieldDocument,
}

/// Findings from inspecting a raw field document. Nothing here throws:
/// loaders decide what to reject.
#[derive(Clone, Debug, Serialize)]
pub struct FieldReport {
    /// A k = 0 entry is present (nonzero mean).
    pub zero_mode: bool,
    /// Largest |k·v_k| / (|k| · C) over modes, C the largest coefficient
    /// magnitude of the document.
    pub max_divergence_residual: f64,
    /// Entries where both k and −k are listed with non-conjugate values.
    pub hermitian_conflicts: usize,
    /// Entries repeated or falling outside the cube / dimension.
    pub shape_errors: usize,
    pub mode_count: usize,
    pub divergence_free: bool,
}

fn entry_coef(entry: &ModeEntry, d: usize) -> Option<Coef> {
    if entry.re.len() != d || entry.im.len() != d || entry.k.len() != d {
        return None;
    }
    Some(
        entry
            .re
            .iter()
            .zip(&entry.im)
            .map(|(&re, &im)| Complex64::new(re, im))
            .collect(),
    )
}

/// Inspects a raw document without constructing a field.
pub fn validate_document(doc: &FieldDocument) -> FieldReport {
    let d = doc.d;
    let mut zero_mode = false;
    let mut shape_errors = 0usize;
    let mut conflicts = 0usize;
    let mut seen: BTreeMap<WaveVector, Coef> = BTreeMap::new();

    for entry in &doc.modes {
        let k = WaveVector::new(&entry.k);
        let coef = match entry_coef(entry, d) {
            Some(c) => c,
            None => {
                shape_errors += 1;
                continue;
            }
        };
        if k.is_zero() {
            zero_mode = true;
            continue;
        }
        if k.sup_norm() > doc.cutoff {
            shape_errors += 1;
            continue;
        }
        let cn = coef.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        // Hermitian consistency against a previously-listed partner
        let partner = k.negated();
        if let Some(prev) = seen.get(&partner) {
            let mismatch = prev
                .iter()
                .zip(coef.iter())
                .map(|(a, b)| (a.conj() - b).norm())
                .fold(0.0_f64, f64::max);
            if mismatch > 1e-12 * cn.max(1e-300) {
                conflicts += 1;
            }
        } else if seen.contains_key(&k) {
            shape_errors += 1; // duplicate listing of the same k
        }
        seen.insert(k, coef);
    }

    let scale = seen
        .values()
        .flat_map(|c| c.iter())
        .fold(0.0_f64, |m, z| m.max(z.norm()));
    let mut max_div = 0.0_f64;
    if scale > 0.0 {
        for (k, coef) in &seen {
            let kv: Complex64 = k
                .components()
                .iter()
                .zip(coef.iter())
                .map(|(&ki, &vi)| vi * ki as f64)
                .sum();
            max_div = max_div.max(kv.norm() / (k.modulus() * scale));
        }
    }

    FieldReport {
        zero_mode,
        max_divergence_residual: max_div,
        hermitian_conflicts: conflicts,
        shape_errors,
        mode_count: seen.len(),
        divergence_free: max_div <= DIV_FREE_TOL,
    }
}

impl SpectralField {
    pub fn to_document(&self) -> FieldDocument {
        let modes = self
            .modes()
            .map(|(k, c)| ModeEntry {
                k: k.components().to_vec(),
                re: c.iter().map(|z| z.re).collect(),
                im: c.iter().map(|z| z.im).collect(),
            })
            .collect();
        FieldDocument {
            d: self.dim(),
            cutoff: self.cutoff(),
            modes,
        }
    }

    /// Strict loader: rejects zero modes, misshapen entries, duplicates and
    /// Hermitian conflicts; folds ±k pairs; flags divergence-freeness.
    pub fn from_document(doc: &FieldDocument) -> Result<Self> {
        let mut field = SpectralField::zero(doc.d, doc.cutoff)?;
        let mut seen: BTreeMap<WaveVector, Coef> = BTreeMap::new();
        for entry in &doc.modes {
            let k = WaveVector::new(&entry.k);
            k.check_dim(doc.d)?;
            if k.is_zero() {
                return Err(Error::ZeroMode);
            }
            let coef =
                entry_coef(entry, doc.d).ok_or_else(|| Error::CoefficientLength(entry.k.clone()))?;
            if let Some(prev) = seen.get(&k.negated()) {
                let scale = coef
                    .iter()
                    .map(|z| z.norm_sqr())
                    .sum::<f64>()
                    .sqrt()
                    .max(1e-300);
                let mismatch = prev
                    .iter()
                    .zip(coef.iter())
                    .map(|(a, b)| (a.conj() - b).norm())
                    .fold(0.0_f64, f64::max);
                if mismatch > 1e-12 * scale {
                    return Err(Error::HermitianConflict(entry.k.clone()));
                }
                continue; // consistent partner already stored
            }
            if seen.contains_key(&k) {
                return Err(Error::DuplicateMode(entry.k.clone()));
            }
            seen.insert(k.clone(), coef.clone());
            field.set_mode(k, coef)?;
        }
        let div_free = field.divergence_residual() <= DIV_FREE_TOL;
        field.set_div_free_flag(div_free);
        Ok(field)
    }

    /// Report for an in-memory field. Zero modes and Hermitian conflicts are
    /// unrepresentable here, so only the divergence residual can be nonzero.
    pub fn validate(&self) -> FieldReport {
        validate_document(&self.to_document())
    }
}

impl FieldPair {
    pub fn to_document(&self) -> PairDocument {
        PairDocument {
            velocity: self.velocity().to_document(),
            magnetic: self.magnetic().to_document(),
        }
    }

    pub fn from_document(doc: &PairDocument) -> Result<Self> {
        FieldPair::new(
            SpectralField::from_document(&doc.velocity)?,
            SpectralField::from_document(&doc.magnetic)?,
        )
    }
}
