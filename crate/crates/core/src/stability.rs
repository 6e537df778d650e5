//! Global stability of decaying solutions: the stability radius, explicit
//! perturbation envelopes, the small-data criterion, decay diagnostics and
//! decay budgets.
//!
//! For a global decaying base solution 𝐯 with decay budget J_p ≥
//! ∫₀^∞ ‖𝐯(t)‖_p dt, every datum within
//!
//!   ρₙ = (μ/Ĝₙ) e^{−Ĝₙ Jₙ − K̂ₙ Jₙ₊₁}
//!
//! of 𝐯(0) in ‖·‖ₙ (n > d/2 + 1) yields a global decaying solution, with
//! explicit exponential envelopes on the distance to 𝐯.

use crate::bilinear::ConstantsTable;
use crate::digest::digest_of;
use crate::error::{Error, Result};
use crate::integrate::Trajectory;
use crate::order::OrderKey;
use crate::quad::{cumulative_simpson, fit_line, uniform_step};
use crate::spectral::FieldPair;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BudgetProvenance {
    /// Closed-form Beltrami-pair budget.
    AnalyticBeltrami,
    /// Quadrature over a finite window plus an analytic small-data tail.
    QuadratureWithTail,
    UserSupplied,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct BudgetEntry {
    pub bound: f64,
    pub provenance: BudgetProvenance,
}

/// Upper bounds J_p on ∫₀^∞ ‖𝐯(t)‖_p dt, with provenance per order. ρₙ is
/// only as rigorous as the budget that produced it.
#[derive(Clone, Debug, Default, Serialize)]
pub struct DecayBudget {
    entries: BTreeMap<OrderKey, BudgetEntry>,
}

impl DecayBudget {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, p: f64, bound: f64, provenance: BudgetProvenance) -> Result<()> {
        if !bound.is_finite() || bound < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "decay budget at order {p} must be finite and nonnegative (got {bound})"
            )));
        }
        self.entries.insert(OrderKey::new(p)?, BudgetEntry { bound, provenance });
        Ok(())
    }

    pub fn get(&self, p: f64) -> Result<f64> {
        self.entries
            .get(&OrderKey::new(p)?)
            .map(|e| e.bound)
            .ok_or(Error::MissingOrder {
                what: "decay budget",
                order: p,
            })
    }

    pub fn entry(&self, p: f64) -> Option<&BudgetEntry> {
        OrderKey::new(p).ok().and_then(|k| self.entries.get(&k))
    }

    pub fn orders(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries.keys().map(|k| k.value())
    }

    pub fn digest(&self) -> String {
        digest_of(self)
    }
}

/// ρₙ = (μ/Ĝₙ) e^{−Ĝₙ Jₙ − K̂ₙ Jₙ₊₁}. With an empty budget this reduces to
/// the small-data radius μ/Ĝₙ.
pub fn stability_radius(budget: &DecayBudget, n: f64, mu: f64, constants: &ConstantsTable) -> Result<f64> {
    let g_hat = constants.g_pair_diag(n)?;
    let k_hat = constants.k_pair_diag(n)?;
    let j_n = budget.get(n)?;
    let j_n1 = budget.get(n + 1.0)?;
    Ok(mu / g_hat * (-g_hat * j_n - k_hat * j_n1).exp())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// δₙ ≥ ρₙ: no conclusion, envelopes absent.
    Outside,
    /// δₙ < ρₙ: general envelopes apply.
    Inside,
    /// δₙ ≤ ρₙ/2: the simplified linear-in-δ envelopes apply as well.
    InsideHalf,
}

/// Envelope constants C so that ‖𝐮(t) − 𝐯(t)‖ ≤ C δ e^{−μt}.
#[derive(Clone, Debug, Serialize)]
pub struct EnvelopeSet {
    pub c_n: f64,
    pub c_p: BTreeMap<OrderKey, f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilityReport {
    pub n: f64,
    pub mu: f64,
    pub rho_n: f64,
    pub delta_n: f64,
    pub regime: Regime,
    /// Present when δₙ < ρₙ.
    pub general: Option<EnvelopeSet>,
    /// Present when δₙ ≤ ρₙ/2.
    pub simplified: Option<EnvelopeSet>,
    pub budget_digest: String,
    pub constants_digest: String,
}

/// Perturbation envelopes of the main stability statement for datum error
/// δₙ (and δ_p at each requested p > n; the δ_p values scale the envelopes
/// but only the constants are reported).
pub fn perturbation_envelopes(
    delta_n: f64,
    orders_p: &[f64],
    budget: &DecayBudget,
    n: f64,
    mu: f64,
    constants: &ConstantsTable,
) -> Result<StabilityReport> {
    let rho_n = stability_radius(budget, n, mu, constants)?;
    let g_n = constants.g_pair_diag(n)?;
    let k_n = constants.k_pair_diag(n)?;
    let j_n = budget.get(n)?;
    let j_n1 = budget.get(n + 1.0)?;
    let base_exp = (g_n * j_n + k_n * j_n1).exp();

    let regime = if delta_n >= rho_n {
        Regime::Outside
    } else if delta_n <= 0.5 * rho_n {
        Regime::InsideHalf
    } else {
        Regime::Inside
    };

    let mut general = None;
    let mut simplified = None;
    if regime != Regime::Outside {
        let ratio = delta_n / rho_n;
        let mut c_p = BTreeMap::new();
        for &p in orders_p {
            if !(p > n) {
                return Err(Error::InvalidOrder {
                    value: p,
                    reason: format!("envelope orders must exceed n = {n}"),
                });
            }
            let g_p = constants.g_pair_diag(p)?;
            let k_p = constants.k_pair_diag(p)?;
            let g_pn = constants.g_pair(p, n)?;
            let j_p = budget.get(p)?;
            let j_p1 = budget.get(p + 1.0)?;
            let c = (g_p * j_p + k_p * j_p1 + g_pn * ratio / (g_n * (1.0 - ratio))).exp();
            c_p.insert(OrderKey::new(p)?, c);
        }
        general = Some(EnvelopeSet {
            c_n: base_exp / (1.0 - ratio),
            c_p,
        });

        if regime == Regime::InsideHalf {
            let mut c_p = BTreeMap::new();
            for &p in orders_p {
                let g_p = constants.g_pair_diag(p)?;
                let k_p = constants.k_pair_diag(p)?;
                let g_pn = constants.g_pair(p, n)?;
                let j_p = budget.get(p)?;
                let j_p1 = budget.get(p + 1.0)?;
                let c = (g_p * j_p + k_p * j_p1 + g_pn / g_n).exp();
                c_p.insert(OrderKey::new(p)?, c);
            }
            simplified = Some(EnvelopeSet {
                c_n: 2.0 * base_exp,
                c_p,
            });
        }
    }

    Ok(StabilityReport {
        n,
        mu,
        rho_n,
        delta_n,
        regime,
        general,
        simplified,
        budget_digest: budget.digest(),
        constants_digest: constants.digest(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SmallDataReport {
    pub admissible: bool,
    /// The strict threshold μ/Ĝₙ.
    pub threshold: f64,
    pub norm_n: f64,
    /// Decay constants: ‖𝐰(t)‖_p ≤ C_p e^{−μt}. Empty when not admissible.
    pub c: BTreeMap<OrderKey, f64>,
}

/// Small-data criterion: ‖𝐰₀‖ₙ < μ/Ĝₙ (strict) certifies a global decaying
/// solution with explicit envelope constants
/// C_p = ‖𝐰₀‖_p (1 − Ĝₙ‖𝐰₀‖ₙ/μ)^{−Ĝ_pn/Ĝₙ} for p ≥ n, C_p = C_n below n.
pub fn small_data_check(
    pair0: &FieldPair,
    n: f64,
    mu: f64,
    orders: &[f64],
    constants: &ConstantsTable,
) -> Result<SmallDataReport> {
    let g_n = constants.g_pair_diag(n)?;
    let threshold = mu / g_n;
    let norm_n = pair0.sobolev_norm(n);
    let admissible = norm_n < threshold;
    let mut c = BTreeMap::new();
    if admissible {
        let margin = 1.0 - g_n * norm_n / mu;
        let c_n = pair0.sobolev_norm(n) * margin.powf(-1.0);
        for &p in orders {
            let value = if p >= n {
                let g_pn = constants.g_pair(p, n)?;
                pair0.sobolev_norm(p) * margin.powf(-g_pn / g_n)
            } else {
                c_n
            };
            c.insert(OrderKey::new(p)?, value);
        }
    }
    Ok(SmallDataReport {
        admissible,
        threshold,
        norm_n,
        c,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecayVerdict {
    Decaying,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecayDiagnostics {
    pub verdict: DecayVerdict,
    /// μ/Ĝₙ.
    pub threshold: f64,
    /// First grid time with ‖𝐯(t)‖ₙ strictly below the threshold.
    pub first_below: Option<f64>,
    /// log₁₀ of the observed norm contraction over the window.
    pub decades: f64,
    /// Exponential rate fitted on the tail half of the window (≥ μ for a
    /// decaying solution, up to fitting error).
    pub fitted_rate: Option<f64>,
    pub fitted_amplitude: Option<f64>,
    /// ∫‖𝐯‖ₙ over the window by composite Simpson.
    pub integral_window: f64,
    /// Fraction of nonincreasing steps over the final quarter.
    pub tail_monotone_fraction: f64,
}

/// Numerical screening of the decay conditions: threshold crossing,
/// norm trend, window integral, and an exponential tail fit.
///
/// The verdict is `Decaying` only if the norm fell below μ/Ĝₙ and decayed
/// by at least one decade over the window (a zero trajectory passes
/// trivially); anything weaker stays `Inconclusive`.
pub fn decay_diagnostics(
    traj: &Trajectory,
    n: f64,
    mu: f64,
    constants: &ConstantsTable,
) -> Result<DecayDiagnostics> {
    let g_n = constants.g_pair_diag(n)?;
    let threshold = mu / g_n;
    let times = traj.times();
    let s = traj.norm_series(n)?;
    let h = uniform_step(times)?;

    let first_below = times
        .iter()
        .zip(s)
        .find(|(_, &v)| v < threshold)
        .map(|(&t, _)| t);

    let s0 = s[0];
    let s_end = s[s.len() - 1];
    let zero_floor = 1e-300;
    let decades = if s0 <= zero_floor {
        f64::INFINITY
    } else {
        (s0 / s_end.max(zero_floor)).log10()
    };

    let integral_window = *cumulative_simpson(s, h).last().unwrap();

    let tail_start = s.len() - s.len() / 4 - 1;
    let tail = &s[tail_start..];
    let mut nonincreasing = 0usize;
    for w in tail.windows(2) {
        if w[1] <= w[0] * (1.0 + 1e-12) {
            nonincreasing += 1;
        }
    }
    let tail_monotone_fraction = if tail.len() > 1 {
        nonincreasing as f64 / (tail.len() - 1) as f64
    } else {
        1.0
    };

    // exponential fit on the later half, where the slowest mode dominates
    let half = s.len() / 2;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for i in half..s.len() {
        if s[i] > zero_floor {
            xs.push(times[i]);
            ys.push(s[i].ln());
        }
    }
    let fit = fit_line(&xs, &ys);
    let (fitted_amplitude, fitted_rate) = match fit {
        Some((intercept, slope)) => (Some(intercept.exp()), Some(-slope)),
        None => (None, None),
    };

    let trivially_zero = s.iter().all(|&v| v <= zero_floor);
    let verdict = if trivially_zero || (first_below.is_some() && decades >= 1.0) {
        DecayVerdict::Decaying
    } else {
        DecayVerdict::Inconclusive
    };

    Ok(DecayDiagnostics {
        verdict,
        threshold,
        first_below,
        decades,
        fitted_rate,
        fitted_amplitude,
        integral_window,
        tail_monotone_fraction,
    })
}

/// Decay budget from a trajectory: Simpson quadrature over the window plus
/// the analytic small-data tail C_p(t₀)/μ anchored at the final sample t₀.
///
/// Any time achieving the small-data criterion justifies the tail; the end
/// of the window is the admissible anchor with the largest margin, hence
/// the tightest budget. Refuses when the diagnostics do not certify decay
/// or the window does not end inside the small-data ball (extrapolation
/// would be unjustified).
pub fn budget_from_trajectory(
    traj: &Trajectory,
    n: f64,
    orders: &[f64],
    mu: f64,
    constants: &ConstantsTable,
) -> Result<DecayBudget> {
    let diag = decay_diagnostics(traj, n, mu, constants)?;
    if diag.verdict != DecayVerdict::Decaying {
        return Err(Error::NotDecaying);
    }
    let times = traj.times();
    let h = uniform_step(times)?;
    let s_n = traj.norm_series(n)?;
    let g_n = constants.g_pair_diag(n)?;
    let threshold = mu / g_n;
    let i0 = s_n.len() - 1;
    if !(s_n[i0] < threshold) {
        return Err(Error::NotDecaying);
    }
    let margin = 1.0 - g_n * s_n[i0] / mu;

    let mut budget = DecayBudget::new();
    for &p in orders {
        let series = traj.norm_series(p)?;
        let quad = *cumulative_simpson(series, h).last().unwrap();
        // envelope constant at t0 for the tail ∫_{t0}^∞ ≤ C_p(t0)/μ
        let c_p = if p >= n {
            let g_pn = constants.g_pair(p, n)?;
            series[i0] * margin.powf(-g_pn / g_n)
        } else {
            s_n[i0] * margin.powf(-1.0)
        };
        budget.insert(p, quad + c_p / mu, BudgetProvenance::QuadratureWithTail)?;
    }
    Ok(budget)
}
