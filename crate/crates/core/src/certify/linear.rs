//! The linear, order-p control inequalities (p > n).
//!
//! Given the order-n control function Rₙ, each order p obeys a linear ODE
//! whose minimal solution is explicit:
//!
//!   R_p(t) = e^{−μt + A_p(t)} ( δ_p + ∫₀ᵗ e^{μs − A_p(s)} ε_p(s) ds ),
//!   A_p(t) = ∫₀ᵗ ( Ĝ_p D_p + K̂_p D_{p+1} + Ĝ_{pn} Rₙ ) ds .
//!
//! The computed series is checked to satisfy the ODE by a fourth-order
//! finite-difference residual.

use crate::bilinear::ConstantsTable;
use crate::certify::estimators::EstimatorSet;
use crate::error::{Error, Result};
use crate::quad::cumulative_simpson_checked;

const QUAD_CHECK_TOL: f64 = 1e-6;
const RESIDUAL_TOL: f64 = 1e-8;

/// Evaluates the closed-form R_p on the estimator grid, truncated to the
/// length of `rn` (the controlled window).
pub fn linear_bound(
    est: &EstimatorSet,
    p: f64,
    n: f64,
    rn: &[f64],
    mu: f64,
    constants: &ConstantsTable,
) -> Result<Vec<f64>> {
    if !(p > n) {
        return Err(Error::InvalidOrder {
            value: p,
            reason: format!("linear bounds need p > n = {n}"),
        });
    }
    let g_p = constants.g_pair_diag(p)?;
    let k_p = constants.k_pair_diag(p)?;
    let g_pn = constants.g_pair(p, n)?;

    let len = rn.len().min(est.times().len());
    if len < 3 {
        return Err(Error::InvalidEstimators(
            "controlled window too short for an order-p bound".into(),
        ));
    }
    let times = &est.times()[..len];
    let h = est.step();
    let d_p = &est.growth(p)?[..len];
    let d_p1 = &est.growth(p + 1.0)?[..len];
    let eps = est.eps(p)?;
    let eps = &eps[..len];
    let delta = est.delta(p);

    let coeff: Vec<f64> = (0..len)
        .map(|i| g_p * d_p[i] + k_p * d_p1[i] + g_pn * rn[i])
        .collect();
    let a = cumulative_simpson_checked(&coeff, h, QUAD_CHECK_TOL, "order-p coefficient quadrature")?;

    // inner integrand e^{μs − A(s)} ε_p(s)
    let inner: Vec<f64> = (0..len)
        .map(|i| (mu * times[i] - a[i]).exp() * eps[i])
        .collect();
    let forced = cumulative_simpson_checked(&inner, h, QUAD_CHECK_TOL, "order-p forcing quadrature")?;

    let rp: Vec<f64> = (0..len)
        .map(|i| (-mu * times[i] + a[i]).exp() * (delta + forced[i]))
        .collect();

    // residual of dR/dt = (−μ + coeff) R + ε, fourth-order interior stencil
    if len >= 5 {
        let mut scale = 0.0_f64;
        for i in 0..len {
            scale = scale.max((mu + coeff[i].abs()) * rp[i].abs() + eps[i]);
        }
        let scale = scale.max(f64::MIN_POSITIVE);
        let mut worst = 0.0_f64;
        for i in 2..len - 2 {
            let drdt = (rp[i - 2] - 8.0 * rp[i - 1] + 8.0 * rp[i + 1] - rp[i + 2]) / (12.0 * h);
            let rhs = (-mu + coeff[i]) * rp[i] + eps[i];
            worst = worst.max((drdt - rhs).abs() / scale);
        }
        if worst > RESIDUAL_TOL {
            return Err(Error::Refinement {
                what: "order-p linear ODE residual",
                achieved: worst,
                target: RESIDUAL_TOL,
            });
        }
    }

    Ok(rp)
}
