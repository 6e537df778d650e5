//! Empirical lower bounds for the inequality constants.
//!
//! Randomized sampling of the inequality ratios gives floors that any
//! admissible K_{pn}, G_{pn} must exceed. This cannot certify a configured
//! table — sharp values come from outside — but it catches gross
//! misconfiguration.

use crate::bilinear::direct::projected_advect;
use crate::bilinear::ConstantsTable;
use crate::error::{Error, Result};
use crate::spectral::random_field;
use rayon::prelude::*;

#[derive(Clone, Copy, Debug)]
pub struct ConstantFloors {
    /// Largest sampled ratio for the product inequality.
    pub k_lower: f64,
    /// Largest sampled ratio for the pairing inequality; `None` when
    /// n ≤ d/2 + 1 (the inequality does not apply there).
    pub g_lower: Option<f64>,
    pub samples: usize,
}

fn sample_ratios(seed: u64, index: u64, p: f64, n: f64, d: usize, cutoff: i32) -> (f64, f64) {
    let s = seed.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let v = random_field(s, d, cutoff, 1.0).expect("valid sampling parameters");
    let w = random_field(s ^ 0xD1B5_4A32_D192_ED03, d, cutoff, 1.0).expect("valid sampling parameters");
    if v.is_zero() || w.is_zero() {
        return (0.0, 0.0);
    }
    let q = projected_advect(&v, &w).expect("compatible sample fields");

    let vp = v.sobolev_norm(p);
    let vn = v.sobolev_norm(n);
    let k_denom = 0.5 * (vp * w.sobolev_norm(n + 1.0) + vn * w.sobolev_norm(p + 1.0));
    let k_ratio = if k_denom > 0.0 {
        q.sobolev_norm(p) / k_denom
    } else {
        0.0
    };

    let wp = w.sobolev_norm(p);
    let g_denom = 0.5 * (vp * w.sobolev_norm(n) + vn * wp) * wp;
    let g_ratio = if g_denom > 0.0 {
        q.inner(&w, p).expect("same dimension").abs() / g_denom
    } else {
        0.0
    };
    (k_ratio, g_ratio)
}

/// Maximizes the inequality ratios over `sample_count` random field pairs.
/// Deterministic per seed regardless of thread count (each sample derives
/// its own stream; the reduction is a max).
pub fn estimate_constants(
    p: f64,
    n: f64,
    d: usize,
    cutoff: i32,
    sample_count: usize,
    seed: u64,
) -> Result<ConstantFloors> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    if n <= d as f64 / 2.0 {
        return Err(Error::InvalidOrder {
            value: n,
            reason: format!("sampling needs n > d/2 = {}", d as f64 / 2.0),
        });
    }
    if p < n {
        return Err(Error::InvalidOrder {
            value: p,
            reason: "sampling needs p >= n".into(),
        });
    }
    if cutoff < 1 {
        return Err(Error::InvalidCutoff(cutoff));
    }
    let ratios: Vec<(f64, f64)> = (0..sample_count as u64)
        .into_par_iter()
        .map(|i| sample_ratios(seed, i, p, n, d, cutoff))
        .collect();
    let k_lower = ratios.iter().fold(0.0_f64, |m, r| m.max(r.0));
    let g_applicable = n > d as f64 / 2.0 + 1.0;
    let g_lower = g_applicable.then(|| ratios.iter().fold(0.0_f64, |m, r| m.max(r.1)));
    Ok(ConstantFloors {
        k_lower,
        g_lower,
        samples: sample_count,
    })
}

#[derive(Clone, Copy, Debug)]
pub struct ConstantsAudit {
    pub floors: ConstantFloors,
    pub k_configured: f64,
    pub g_configured: Option<f64>,
    /// Configured value below the sampled floor — the table cannot be valid.
    pub k_violated: bool,
    pub g_violated: bool,
}

/// Soft check of a configured table against sampled floors. Violations are
/// reported (and logged), never silently ignored.
pub fn audit_constants(
    table: &ConstantsTable,
    p: f64,
    n: f64,
    cutoff: i32,
    sample_count: usize,
    seed: u64,
) -> Result<ConstantsAudit> {
    let floors = estimate_constants(p, n, table.d, cutoff, sample_count, seed)?;
    let k_configured = table.k(p, n)?;
    let g_configured = if n > table.d as f64 / 2.0 + 1.0 {
        Some(table.g(p, n)?)
    } else {
        None
    };
    let k_violated = floors.k_lower > k_configured;
    let g_violated = match (floors.g_lower, g_configured) {
        (Some(fl), Some(cfg)) => fl > cfg,
        _ => false,
    };
    if k_violated {
        log::warn!(
            "configured K({p},{n}) = {k_configured} is below the sampled floor {:.6}",
            floors.k_lower
        );
    }
    if g_violated {
        log::warn!(
            "configured G({p},{n}) = {:?} is below the sampled floor {:?}",
            g_configured,
            floors.g_lower
        );
    }
    Ok(ConstantsAudit {
        floors,
        k_configured,
        g_configured,
        k_violated,
        g_violated,
    })
}
