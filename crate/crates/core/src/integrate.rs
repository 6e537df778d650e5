//! Deterministic time integration of the Galerkin-truncated projected MHD
//! system d𝐮/dt = (νΔu, ηΔb) + 𝓑(𝐮,𝐮), where 𝓑 is the coupled advection
//! map truncated back to the cutoff cube.
//!
//! The scheme is an integrating-factor RK4: the stiff diagonal heat part is
//! applied exactly through e^{−ν|k|²t}, e^{−η|k|²t} factors, and classical
//! RK4 advances the nonlinearity in the transformed variables. With the
//! bilinear term disabled the step is exact for any dt.

use crate::bilinear::{mhd_advect, PseudoSpectral};
use crate::digest::digest_of;
use crate::error::{Error, Result};
use crate::order::OrderKey;
use crate::spectral::{dissipation, FieldPair, PairDocument};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolverConfig {
    pub dim: usize,
    pub cutoff: i32,
    pub nu: f64,
    pub eta: f64,
    pub dt: f64,
    pub t_end: f64,
    /// Sobolev orders whose norms are recorded at every step. Certificate
    /// workflows need n, n+1 and every requested p, p+1 present.
    pub recorded_orders: Vec<f64>,
    /// Full states are kept every `record_stride` steps (norms every step).
    pub record_stride: usize,
}

impl SolverConfig {
    pub fn mu(&self) -> f64 {
        self.nu.min(self.eta)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(Error::InvalidDimension(self.dim));
        }
        if self.cutoff < 1 {
            return Err(Error::InvalidCutoff(self.cutoff));
        }
        if !(self.nu > 0.0) || !(self.eta > 0.0) {
            return Err(Error::InvalidConfig("nu and eta must be positive".into()));
        }
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::InvalidConfig("dt must be positive".into()));
        }
        if !(self.t_end >= self.dt) {
            return Err(Error::InvalidConfig("t_end must be at least dt".into()));
        }
        if self.recorded_orders.is_empty() {
            return Err(Error::InvalidConfig(
                "recorded_orders must not be empty".into(),
            ));
        }
        let mut sorted = self.recorded_orders.clone();
        sorted.sort_by(f64::total_cmp);
        if sorted.windows(2).any(|w| (w[1] - w[0]).abs() < 1e-12) {
            return Err(Error::InvalidConfig(
                "recorded_orders contains duplicates".into(),
            ));
        }
        if sorted.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidConfig("recorded_orders must be finite".into()));
        }
        if self.record_stride == 0 {
            return Err(Error::InvalidConfig("record_stride must be >= 1".into()));
        }
        Ok(())
    }
}

/// Time grid, per-step Sobolev norms of the state, and periodic full
/// snapshots, with the producing configuration attached.
#[derive(Clone, Debug)]
pub struct Trajectory {
    config: SolverConfig,
    times: Vec<f64>,
    norms: BTreeMap<OrderKey, Vec<f64>>,
    /// (index into `times`, state) pairs, every `record_stride` steps.
    snapshots: Vec<(usize, FieldPair)>,
}

impl Trajectory {
    /// Builds a trajectory by sampling states of a known map (used for
    /// closed-form exact solutions; the integrator records its own).
    pub fn from_states<F>(config: SolverConfig, state_at: F) -> Result<Trajectory>
    where
        F: Fn(f64) -> FieldPair,
    {
        config.validate()?;
        let steps = (config.t_end / config.dt).round().max(1.0) as usize;
        let mut traj = Trajectory {
            config: config.clone(),
            times: Vec::with_capacity(steps + 1),
            norms: BTreeMap::new(),
            snapshots: Vec::new(),
        };
        for i in 0..=steps {
            let t = i as f64 * config.dt;
            let state = state_at(t);
            traj.record(i, t, &state);
        }
        Ok(traj)
    }

    fn record(&mut self, index: usize, t: f64, state: &FieldPair) {
        self.times.push(t);
        for &p in &self.config.recorded_orders {
            let key = OrderKey::new(p).expect("validated order");
            self.norms
                .entry(key)
                .or_insert_with(Vec::new)
                .push(state.sobolev_norm(p));
        }
        if index % self.config.record_stride == 0 {
            self.snapshots.push((index, state.clone()));
        }
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn norm_series(&self, p: f64) -> Result<&[f64]> {
        let key = OrderKey::new(p)?;
        self.norms
            .get(&key)
            .map(|v| v.as_slice())
            .ok_or(Error::MissingOrder {
                what: "trajectory norms",
                order: p,
            })
    }

    pub fn recorded_orders(&self) -> impl Iterator<Item = f64> + '_ {
        self.norms.keys().map(|k| k.value())
    }

    pub fn snapshots(&self) -> impl Iterator<Item = (f64, &FieldPair)> {
        self.snapshots.iter().map(|(i, s)| (self.times[*i], s))
    }

    pub fn snapshot_times(&self) -> Vec<f64> {
        self.snapshots.iter().map(|(i, _)| self.times[*i]).collect()
    }

    pub fn final_state(&self) -> Option<&FieldPair> {
        self.snapshots.last().map(|(_, s)| s)
    }

    /// Norm table restricted to the snapshot grid (used when estimators must
    /// share a grid with Galerkin residuals).
    pub fn norms_on_snapshot_grid(&self, p: f64) -> Result<Vec<f64>> {
        let dense = self.norm_series(p)?;
        Ok(self.snapshots.iter().map(|(i, _)| dense[*i]).collect())
    }

    pub fn digest(&self) -> String {
        digest_of(&(&self.config, &self.times, &self.norms))
    }

    pub fn to_document(&self, include_states: bool) -> TrajectoryDocument {
        TrajectoryDocument {
            config: self.config.clone(),
            times: self.times.clone(),
            norms: self.norms.clone(),
            snapshots: if include_states {
                self.snapshots
                    .iter()
                    .map(|(i, s)| SnapshotEntry {
                        index: *i,
                        state: s.to_document(),
                    })
                    .collect()
            } else {
                Vec::new()
            },
        }
    }

    pub fn from_document(doc: &TrajectoryDocument) -> Result<Trajectory> {
        doc.config.validate()?;
        if doc.times.is_empty() {
            return Err(Error::InvalidConfig("trajectory document has no times".into()));
        }
        if doc.times.windows(2).any(|w| w[1] <= w[0]) || doc.times[0] != 0.0 {
            return Err(Error::InvalidConfig(
                "trajectory times must increase strictly from 0".into(),
            ));
        }
        for series in doc.norms.values() {
            if series.len() != doc.times.len() {
                return Err(Error::InvalidConfig(
                    "trajectory norm series length does not match the grid".into(),
                ));
            }
        }
        let mut snapshots = Vec::with_capacity(doc.snapshots.len());
        for entry in &doc.snapshots {
            if entry.index >= doc.times.len() {
                return Err(Error::InvalidConfig("snapshot index out of range".into()));
            }
            snapshots.push((entry.index, FieldPair::from_document(&entry.state)?));
        }
        Ok(Trajectory {
            config: doc.config.clone(),
            times: doc.times.clone(),
            norms: doc.norms.clone(),
            snapshots,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SnapshotEntry {
    pub index: usize,
    pub state: PairDocument,
}

/// On-disk trajectory: config provenance, the dense norm table, and
/// (optionally) full state snapshots.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrajectoryDocument {
    pub config: SolverConfig,
    pub times: Vec<f64>,
    pub norms: BTreeMap<OrderKey, Vec<f64>>,
    #[serde(default)]
    pub snapshots: Vec<SnapshotEntry>,
}

/// The exact right-hand side at one state: dissipation plus the coupled
/// advection truncated to the state's cutoff. Direct-convolution path; the
/// integrator uses the FFT engine but must agree with this.
pub fn mhd_rhs(pair: &FieldPair, nu: f64, eta: f64) -> Result<FieldPair> {
    let lin = dissipation(pair, nu, eta)?;
    let bil = mhd_advect(pair, pair)?.truncated(pair.cutoff());
    Ok(lin.add_scaled(&bil, 1.0))
}

/// Integrates the truncated system from `pair0`. Deterministic; aborts with
/// the last finite time on overflow.
pub fn integrate(pair0: &FieldPair, config: &SolverConfig) -> Result<Trajectory> {
    config.validate()?;
    if pair0.dim() != config.dim {
        return Err(Error::DimensionMismatch(pair0.dim(), config.dim));
    }
    if pair0.cutoff() != config.cutoff {
        return Err(Error::CutoffMismatch(pair0.cutoff(), config.cutoff));
    }
    if pair0.divergence_residual() > 1e-10 {
        return Err(Error::InvalidConfig(
            "initial datum is not divergence-free".into(),
        ));
    }

    let m = config.cutoff;
    let (nu, eta, dt) = (config.nu, config.eta, config.dt);
    let steps = (config.t_end / dt).round().max(1.0) as usize;
    let mut engine = PseudoSpectral::for_product(config.dim, m, m, m);

    let mut traj = Trajectory {
        config: config.clone(),
        times: Vec::with_capacity(steps + 1),
        norms: BTreeMap::new(),
        snapshots: Vec::new(),
    };

    let mut u = pair0.clone();
    traj.record(0, 0.0, &u);

    for i in 0..steps {
        let k1 = engine.mhd_self_advect(&u, m)?;
        let u2 = u.add_scaled(&k1, 0.5 * dt).heat_scaled(nu, eta, 0.5 * dt);
        let k2 = engine.mhd_self_advect(&u2, m)?;
        let u_half = u.heat_scaled(nu, eta, 0.5 * dt);
        let u3 = u_half.add_scaled(&k2, 0.5 * dt);
        let k3 = engine.mhd_self_advect(&u3, m)?;
        let u_full = u_half.heat_scaled(nu, eta, 0.5 * dt);
        let u4 = u_full.add_scaled(&k3.heat_scaled(nu, eta, 0.5 * dt), dt);
        let k4 = engine.mhd_self_advect(&u4, m)?;

        // u' = E₂u + dt/6 (E₂k₁ + 2E(k₂+k₃) + k₄), E = e^{(dt/2)A}
        let mut increment = k1.heat_scaled(nu, eta, dt);
        increment = increment.add_scaled(&k2.add_scaled(&k3, 1.0).heat_scaled(nu, eta, 0.5 * dt), 2.0);
        increment = increment.add_scaled(&k4, 1.0);
        u = u_full.add_scaled(&increment, dt / 6.0);

        let t = (i + 1) as f64 * dt;
        if !u.is_finite() {
            return Err(Error::NonFiniteState {
                t,
                t_last: i as f64 * dt,
            });
        }
        traj.record(i + 1, t, &u);
    }
    Ok(traj)
}

/// Sobolev norm of the Galerkin tail of 𝓑(𝐮,𝐮) at every snapshot: the modes
/// the truncated system never sees, i.e. a differential-error estimator
/// ε_p(t) for the trajectory viewed inside the untruncated system.
pub fn galerkin_residual(traj: &Trajectory, p: f64) -> Result<Vec<f64>> {
    let m = traj.config.cutoff;
    let d = traj.config.dim;
    if traj.snapshots.is_empty() {
        return Err(Error::InvalidConfig(
            "trajectory has no stored states; integrate with record_stride >= 1".into(),
        ));
    }
    let mut engine = PseudoSpectral::for_product(d, m, m, 2 * m);
    let mut out = Vec::with_capacity(traj.snapshots.len());
    for (_, state) in &traj.snapshots {
        let full = engine.mhd_self_advect(state, 2 * m)?;
        out.push(full.tail_beyond(m).sobolev_norm(p));
    }
    Ok(out)
}
