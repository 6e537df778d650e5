//! End-to-end certification of an approximate trajectory.

use crate::bilinear::ConstantsTable;
use crate::certify::estimators::EstimatorSet;
use crate::certify::linear::linear_bound;
use crate::certify::riccati::{riccati_certify, Horizon};
use crate::digest::digest_of;
use crate::error::{Error, Result};
use crate::integrate::{galerkin_residual, Trajectory};
use crate::order::OrderKey;
use serde::Serialize;
use std::collections::BTreeMap;

/// How the differential error of the approximate trajectory is estimated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DifferentialError {
    /// The trajectory solves its equation exactly (closed-form solutions).
    Zero,
    /// Galerkin trajectories: ε_p(t) is the Sobolev norm of the truncated
    /// tail of 𝓑(𝐮,𝐮), computed from stored snapshots.
    GalerkinResidual,
}

#[derive(Clone, Debug)]
pub struct CertifyOptions {
    pub n: f64,
    pub orders_p: Vec<f64>,
    pub differential_error: DifferentialError,
}

/// Output of the control machinery: the horizon T_c, the order-n control
/// series Rₙ and the order-p series R_p, with the inputs that produced them
/// digested for reproducibility.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub n: f64,
    pub mu: f64,
    pub t_c: Horizon,
    pub times: Vec<f64>,
    pub rn: Vec<f64>,
    pub rp: BTreeMap<OrderKey, Vec<f64>>,
    pub delta: BTreeMap<OrderKey, f64>,
    pub inputs_digest: String,
    pub method: String,
}

impl Certificate {
    pub fn rp_series(&self, p: f64) -> Result<&[f64]> {
        self.rp
            .get(&OrderKey::new(p)?)
            .map(|v| v.as_slice())
            .ok_or(Error::MissingOrder {
                what: "certificate order-p series",
                order: p,
            })
    }

    pub fn digest(&self) -> String {
        digest_of(self)
    }
}

/// Builds the tautological estimator set of a trajectory: growth from the
/// recorded norms, the given datum errors, and the differential error per
/// `mode`. With `GalerkinResidual` everything lives on the snapshot grid.
pub fn tautological_estimators(
    traj: &Trajectory,
    datum_error: &BTreeMap<OrderKey, f64>,
    orders: &[f64],
    mode: DifferentialError,
) -> Result<EstimatorSet> {
    let mut est = match mode {
        DifferentialError::Zero => {
            let mut est = EstimatorSet::new(traj.times().to_vec())?;
            for &p in orders {
                est.set_growth(p, traj.norm_series(p)?.to_vec())?;
            }
            est
        }
        DifferentialError::GalerkinResidual => {
            let times = traj.snapshot_times();
            let mut est = EstimatorSet::new(times)?;
            for &p in orders {
                est.set_growth(p, traj.norms_on_snapshot_grid(p)?)?;
            }
            for &p in orders {
                est.set_eps(p, galerkin_residual(traj, p)?)?;
            }
            est
        }
    };
    for (key, &value) in datum_error {
        est.set_delta(key.value(), value)?;
    }
    Ok(est)
}

/// Runs the order-n Riccati control and the order-p linear bounds on the
/// tautological estimators of `traj`, and assembles the certificate.
///
/// The returned bounds are valid for the exact solution of the system the
/// trajectory approximates: exact for the Galerkin system at the
/// trajectory's cutoff, heuristic (in the cutoff) for the untruncated
/// equations.
pub fn certify(
    traj: &Trajectory,
    datum_error: &BTreeMap<OrderKey, f64>,
    opts: &CertifyOptions,
    constants: &ConstantsTable,
) -> Result<Certificate> {
    let n = opts.n;
    let mu = traj.config().mu();

    let mut orders = vec![n, n + 1.0];
    for &p in &opts.orders_p {
        if !(p > n) {
            return Err(Error::InvalidOrder {
                value: p,
                reason: format!("certificate orders must exceed n = {n}"),
            });
        }
        orders.push(p);
        orders.push(p + 1.0);
    }
    orders.sort_by(f64::total_cmp);
    orders.dedup_by(|a, b| (*a - *b).abs() < 1e-12);

    let est = tautological_estimators(traj, datum_error, &orders, opts.differential_error)?;

    let rn = riccati_certify(&est, n, mu, constants)?;
    let mut rp = BTreeMap::new();
    for &p in &opts.orders_p {
        let series = linear_bound(&est, p, n, &rn.values, mu, constants)?;
        rp.insert(OrderKey::new(p)?, series);
    }

    let mut delta = BTreeMap::new();
    delta.insert(OrderKey::new(n)?, est.delta(n));
    for &p in &opts.orders_p {
        delta.insert(OrderKey::new(p)?, est.delta(p));
    }

    let inputs_digest = digest_of(&(est.digest(), constants.digest(), mu));
    let method = match opts.differential_error {
        DifferentialError::Zero => "riccati: rk4(equality); linear: quadrature; eps: zero",
        DifferentialError::GalerkinResidual => {
            "riccati: rk4(equality); linear: quadrature; eps: galerkin tail"
        }
    };

    Ok(Certificate {
        n,
        mu,
        t_c: rn.horizon,
        times: est.times()[..rn.values.len()].to_vec(),
        rn: rn.values,
        rp,
        delta,
        inputs_digest,
        method: method.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrate::{integrate, SolverConfig};
    use crate::spectral::random_pair;

    #[test]
    fn exact_self_certificate_is_trivial() {
        // a trajectory certified against its own datum: δ ≡ 0, ε ≡ 0
        let u0 = random_pair(3, 2, 2, 1.0).unwrap().scaled(0.01);
        let config = SolverConfig {
            dim: 2,
            cutoff: 2,
            nu: 0.2,
            eta: 0.3,
            dt: 1e-3,
            t_end: 0.2,
            recorded_orders: vec![2.5, 3.5, 4.5, 5.5],
            record_stride: 1,
        };
        let traj = integrate(&u0, &config).unwrap();
        let table = crate::bilinear::ConstantsTable::builtin(2).unwrap();
        let opts = CertifyOptions {
            n: 2.5,
            orders_p: vec![3.5],
            differential_error: DifferentialError::Zero,
        };
        let cert = certify(&traj, &BTreeMap::new(), &opts, &table).unwrap();
        assert!(cert.t_c.is_unbounded());
        assert!(cert.rn.iter().all(|&v| v == 0.0));
        assert!(cert.rp_series(3.5).unwrap().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn galerkin_mode_uses_snapshot_grid() {
        let u0 = random_pair(8, 2, 2, 1.0).unwrap().scaled(0.01);
        let config = SolverConfig {
            dim: 2,
            cutoff: 2,
            nu: 0.2,
            eta: 0.2,
            dt: 1e-3,
            t_end: 0.05,
            recorded_orders: vec![2.5, 3.5],
            record_stride: 5,
        };
        let traj = integrate(&u0, &config).unwrap();
        let table = crate::bilinear::ConstantsTable::builtin(2).unwrap();
        let opts = CertifyOptions {
            n: 2.5,
            orders_p: vec![],
            differential_error: DifferentialError::GalerkinResidual,
        };
        let cert = certify(&traj, &BTreeMap::new(), &opts, &table).unwrap();
        assert_eq!(cert.times.len(), traj.snapshot_times().len());
        // residual forcing makes the bound strictly positive after t = 0
        assert!(cert.rn[0] == 0.0);
        assert!(cert.rn[1] > 0.0);
    }

    #[test]
    fn rejects_p_not_above_n() {
        let u0 = random_pair(5, 2, 2, 1.0).unwrap().scaled(0.01);
        let config = SolverConfig {
            dim: 2,
            cutoff: 2,
            nu: 0.2,
            eta: 0.3,
            dt: 1e-2,
            t_end: 0.1,
            recorded_orders: vec![2.5, 3.5],
            record_stride: 1,
        };
        let traj = integrate(&u0, &config).unwrap();
        let table = crate::bilinear::ConstantsTable::builtin(2).unwrap();
        let opts = CertifyOptions {
            n: 2.5,
            orders_p: vec![2.5],
            differential_error: DifferentialError::Zero,
        };
        assert!(certify(&traj, &BTreeMap::new(), &opts, &table).is_err());
    }
}
