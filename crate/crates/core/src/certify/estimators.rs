//! Error/growth estimator bundles for an approximate solution.
//!
//! An approximate solution 𝐮ₐ is summarized, per Sobolev order p, by a
//! differential-error series ε_p(t) ≥ ‖d𝐮ₐ/dt − 𝒜𝐮ₐ − 𝓑(𝐮ₐ,𝐮ₐ)‖ₚ, a datum
//! error δ_p ≥ ‖𝐮₀ − 𝐮ₐ(0)‖ₚ and a growth series D_p(t) ≥ ‖𝐮ₐ(t)‖ₚ, all on
//! a shared uniform time grid. The tautological choice takes equalities.

use crate::digest::digest_of;
use crate::error::{Error, Result};
use crate::order::OrderKey;
use crate::quad::uniform_step;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Debug, Serialize)]
pub struct EstimatorSet {
    times: Vec<f64>,
    eps: BTreeMap<OrderKey, Vec<f64>>,
    delta: BTreeMap<OrderKey, f64>,
    growth: BTreeMap<OrderKey, Vec<f64>>,
}

impl EstimatorSet {
    pub fn new(times: Vec<f64>) -> Result<Self> {
        uniform_step(&times)?;
        Ok(EstimatorSet {
            times,
            eps: BTreeMap::new(),
            delta: BTreeMap::new(),
            growth: BTreeMap::new(),
        })
    }

    fn check_series(&self, series: &[f64], what: &str) -> Result<()> {
        if series.len() != self.times.len() {
            return Err(Error::InvalidEstimators(format!(
                "{what} series length {} does not match the grid ({})",
                series.len(),
                self.times.len()
            )));
        }
        if series.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidEstimators(format!(
                "{what} series must be finite and nonnegative"
            )));
        }
        Ok(())
    }

    pub fn set_eps(&mut self, p: f64, series: Vec<f64>) -> Result<()> {
        self.check_series(&series, "differential error")?;
        self.eps.insert(OrderKey::new(p)?, series);
        Ok(())
    }

    pub fn set_delta(&mut self, p: f64, value: f64) -> Result<()> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::InvalidEstimators(
                "datum error must be finite and nonnegative".into(),
            ));
        }
        self.delta.insert(OrderKey::new(p)?, value);
        Ok(())
    }

    pub fn set_growth(&mut self, p: f64, series: Vec<f64>) -> Result<()> {
        self.check_series(&series, "growth")?;
        self.growth.insert(OrderKey::new(p)?, series);
        Ok(())
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn step(&self) -> f64 {
        self.times[1] - self.times[0]
    }

    /// Growth estimator of order p; required data.
    pub fn growth(&self, p: f64) -> Result<&[f64]> {
        self.growth
            .get(&OrderKey::new(p)?)
            .map(|v| v.as_slice())
            .ok_or(Error::MissingOrder {
                what: "growth estimator",
                order: p,
            })
    }

    /// Differential-error estimator of order p. Missing entries mean an
    /// exact-equation approximant: ε_p ≡ 0.
    pub fn eps(&self, p: f64) -> Result<Vec<f64>> {
        Ok(match self.eps.get(&OrderKey::new(p)?) {
            Some(v) => v.clone(),
            None => vec![0.0; self.times.len()],
        })
    }

    pub fn eps_is_zero(&self, p: f64) -> bool {
        match OrderKey::new(p).ok().and_then(|k| self.eps.get(&k)) {
            Some(v) => v.iter().all(|&x| x == 0.0),
            None => true,
        }
    }

    /// Datum error of order p (0 when unset).
    pub fn delta(&self, p: f64) -> f64 {
        OrderKey::new(p)
            .ok()
            .and_then(|k| self.delta.get(&k).copied())
            .unwrap_or(0.0)
    }

    pub fn digest(&self) -> String {
        digest_of(self)
    }
}
