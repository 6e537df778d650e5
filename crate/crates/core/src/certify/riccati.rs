//! The order-n Riccati control inequality.
//!
//! The minimal admissible control function solves the equality ODE
//!
//!   dR/dt = −μR + (Ĝₙ Dₙ(t) + K̂ₙ Dₙ₊₁(t)) R + Ĝₙ R² + εₙ(t),  R(0) = δₙ ,
//!
//! where Ĝₙ, K̂ₙ are the pair-map constants. Two routes are provided: a
//! fixed-step RK4 on the estimator grid (general εₙ) and, for εₙ ≡ 0, the
//! closed form
//!
//!   R(t) = δₙ e^{−μt + Ĝₙ𝒥ₙ(t) + K̂ₙ𝒥ₙ₊₁(t)} / (1 − Ĝₙ δₙ L(t)) ,
//!
//! with 𝒥 the running integrals of the growth estimators and L the running
//! integral of the exponential factor. The horizon T_c is the first
//! blow-up: for the ODE route a conservative bracket, for the closed form
//! the unique root of Ĝₙ δₙ L(t) = 1 (L is strictly increasing).

use crate::bilinear::ConstantsTable;
use crate::certify::estimators::EstimatorSet;
use crate::error::{Error, Result};
use crate::quad::{adaptive_simpson, bisect_increasing, cumulative_simpson_checked, Series};
use serde::Serialize;

/// Control horizon: all series are guaranteed on [0, T_c).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", content = "t", rename_all = "snake_case")]
pub enum Horizon {
    /// No blow-up detected on the sampled window.
    Unbounded,
    Finite(f64),
}

impl Horizon {
    pub fn is_unbounded(&self) -> bool {
        matches!(self, Horizon::Unbounded)
    }

    pub fn finite(&self) -> Option<f64> {
        match self {
            Horizon::Finite(t) => Some(*t),
            Horizon::Unbounded => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RiccatiSolution {
    pub horizon: Horizon,
    /// R on the estimator grid; shorter than the grid exactly when the
    /// horizon is finite (values stop at the last controlled point).
    pub values: Vec<f64>,
}

/// Growth factor R may exceed its initial scale by this much before the ODE
/// route declares divergence.
const BLOWUP_FACTOR: f64 = 1e12;
/// Relative tolerance of the internal step-halving consistency check.
const STEP_CHECK_TOL: f64 = 1e-6;
/// Relative target of the quadrature step-halving check.
const QUAD_CHECK_TOL: f64 = 1e-6;
/// Width of the T_c bisection bracket.
const TC_BISECT_TOL: f64 = 1e-10;

struct OdeRun {
    values: Vec<f64>, // one per substep, index 0 = initial value
    blowup_at: Option<usize>,
}

/// RK4 for dR/dt = −μR + a(t)R + gR² + ε(t) with `substeps` steps per grid
/// interval; coefficient series are evaluated by cubic interpolation.
fn run_rk4(
    times: &[f64],
    a: &Series,
    eps: &Series,
    mu: f64,
    g: f64,
    delta: f64,
    cap: f64,
    substeps: usize,
) -> OdeRun {
    let h = (times[1] - times[0]) / substeps as f64;
    let total = (times.len() - 1) * substeps;
    let f = |t: f64, r: f64| -> f64 { (-mu + a.eval(t)) * r + g * r * r + eps.eval(t) };
    let mut values = Vec::with_capacity(total + 1);
    values.push(delta);
    let mut r = delta;
    for j in 0..total {
        let t = times[0] + j as f64 * h;
        let k1 = f(t, r);
        let k2 = f(t + 0.5 * h, r + 0.5 * h * k1);
        let k3 = f(t + 0.5 * h, r + 0.5 * h * k2);
        let k4 = f(t + h, r + h * k3);
        r += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if !r.is_finite() || r.abs() > cap {
            return OdeRun {
                values,
                blowup_at: Some(j),
            };
        }
        values.push(r);
    }
    OdeRun {
        values,
        blowup_at: None,
    }
}

/// ODE route for general εₙ. T_c is reported as the start of the step in
/// which R crossed the divergence threshold (the conservative side).
pub fn riccati_certify(
    est: &EstimatorSet,
    n: f64,
    mu: f64,
    constants: &ConstantsTable,
) -> Result<RiccatiSolution> {
    let g_hat = constants.g_pair_diag(n)?;
    let k_hat = constants.k_pair_diag(n)?;
    let times = est.times();
    let d_n = est.growth(n)?;
    let d_n1 = est.growth(n + 1.0)?;
    let eps = est.eps(n)?;
    let delta = est.delta(n);

    let a_vals: Vec<f64> = d_n
        .iter()
        .zip(d_n1)
        .map(|(a, b)| g_hat * a + k_hat * b)
        .collect();
    let a = Series::new(times, a_vals)?;
    let eps_sup = eps.iter().fold(0.0_f64, |m, v| m.max(*v));
    let eps_series = Series::new(times, eps)?;

    let scale0 = delta.max(eps_sup / mu.max(f64::MIN_POSITIVE));
    if scale0 == 0.0 {
        // equilibrium: R ≡ 0
        return Ok(RiccatiSolution {
            horizon: Horizon::Unbounded,
            values: vec![0.0; times.len()],
        });
    }
    let cap = BLOWUP_FACTOR * scale0;

    // the halved run is the answer; the coarse run only feeds the
    // consistency check
    let fine = run_rk4(times, &a, &eps_series, mu, g_hat, delta, cap, 2);
    let coarse = run_rk4(times, &a, &eps_series, mu, g_hat, delta, cap, 1);

    // Compare on common grid points while the grid still resolves the ODE:
    // once h (|a| + Ĝ R) leaves the resolved regime the two runs lawfully
    // diverge on the approach to a pole, and the conservative T_c bracket
    // covers that region instead.
    let h = times[1] - times[0];
    let a_sup = a.values().iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let fine_grid: Vec<f64> = fine.values.iter().step_by(2).copied().collect();
    let common = fine_grid.len().min(coarse.values.len());
    let mut worst = 0.0_f64;
    let mut compared = 0usize;
    for i in 0..common {
        let (x, y) = (fine_grid[i], coarse.values[i]);
        if h * (mu + a_sup + g_hat * x.abs().max(y.abs())) > 0.05 {
            break;
        }
        let rel = (x - y).abs() / x.abs().max(y.abs()).max(scale0);
        worst = worst.max(rel);
        compared += 1;
    }
    if compared < 2 {
        // stiff from the very first step: nothing can be certified here
        return Err(Error::Refinement {
            what: "riccati ODE grid stiffness",
            achieved: h * (mu + a_sup + g_hat * delta),
            target: 0.05,
        });
    }
    if worst > STEP_CHECK_TOL {
        return Err(Error::Refinement {
            what: "riccati ODE step-halving",
            achieved: worst,
            target: STEP_CHECK_TOL,
        });
    }

    let h_sub = (times[1] - times[0]) / 2.0;
    match fine.blowup_at {
        None => Ok(RiccatiSolution {
            horizon: Horizon::Unbounded,
            values: fine_grid,
        }),
        Some(j) => {
            let t_c = times[0] + j as f64 * h_sub;
            // keep grid values strictly before the bracket
            let keep = fine_grid
                .iter()
                .take_while(|_| true)
                .count()
                .min((j / 2).saturating_add(1));
            Ok(RiccatiSolution {
                horizon: Horizon::Finite(t_c),
                values: fine_grid[..keep].to_vec(),
            })
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClosedFormSolution {
    pub horizon: Horizon,
    pub values: Vec<f64>,
    /// L(t) on the grid (strictly increasing).
    pub l_values: Vec<f64>,
}

/// Closed-form route; requires εₙ ≡ 0.
pub fn riccati_closed_form(
    est: &EstimatorSet,
    n: f64,
    mu: f64,
    constants: &ConstantsTable,
) -> Result<ClosedFormSolution> {
    if !est.eps_is_zero(n) {
        return Err(Error::InvalidEstimators(
            "closed-form Riccati solution requires a vanishing differential error".into(),
        ));
    }
    let g_hat = constants.g_pair_diag(n)?;
    let k_hat = constants.k_pair_diag(n)?;
    let times = est.times();
    let h = est.step();
    let delta = est.delta(n);

    let j_n = cumulative_simpson_checked(est.growth(n)?, h, QUAD_CHECK_TOL, "growth quadrature (order n)")?;
    let j_n1 = cumulative_simpson_checked(
        est.growth(n + 1.0)?,
        h,
        QUAD_CHECK_TOL,
        "growth quadrature (order n+1)",
    )?;

    // φ(t) = −μt + Ĝ𝒥ₙ + K̂𝒥ₙ₊₁ and L(t) = ∫ e^φ
    let phi: Vec<f64> = times
        .iter()
        .zip(j_n.iter().zip(&j_n1))
        .map(|(&t, (a, b))| -mu * t + g_hat * a + k_hat * b)
        .collect();
    let exp_phi: Vec<f64> = phi.iter().map(|&x| x.exp()).collect();
    let l_values = cumulative_simpson_checked(&exp_phi, h, QUAD_CHECK_TOL, "control-kernel quadrature")?;

    let mut values = Vec::with_capacity(times.len());
    let mut crossing = None;
    for i in 0..times.len() {
        let denom = 1.0 - g_hat * delta * l_values[i];
        if denom <= 0.0 {
            crossing = Some(i);
            break;
        }
        values.push(delta * exp_phi[i] / denom);
    }

    let horizon = match crossing {
        None => Horizon::Unbounded,
        Some(i) => {
            // refine the root of Ĝ δ L(t) = 1 inside (t_{i-1}, t_i]
            let lo = times[i - 1];
            let hi = times[i];
            let phi_series = Series::new(times, phi.clone())?;
            let l_lo = l_values[i - 1];
            let g = |t: f64| -> f64 {
                let tail = adaptive_simpson(&|s| phi_series.eval(s).exp(), lo, t, 1e-14);
                g_hat * delta * (l_lo + tail) - 1.0
            };
            Horizon::Finite(bisect_increasing(&g, lo, hi, TC_BISECT_TOL))
        }
    };

    Ok(ClosedFormSolution {
        horizon,
        values,
        l_values,
    })
}
