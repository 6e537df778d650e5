//! Generalized Beltrami flows and pairs: constructors, a numerical
//! verifier, closed-form decaying solutions, and their analytic decay
//! budgets.
//!
//! A generalized Beltrami flow is a mean-zero, divergence-free Laplacian
//! eigenfield (Δw₀ = −κ²w₀, κ ≥ 1) whose projected self-advection
//! vanishes. A generalized Beltrami pair (v₀, c₀) is two such flows with
//! (v₀·∇)c₀ = (c₀·∇)v₀; the MHD flow started there is exactly
//! (e^{−κ²νt} v₀, e^{−λ²ηt} c₀) — the strongest oracle in this crate.

use crate::bilinear::direct::{advect, projected_advect};
use crate::error::{Error, Result};
use crate::integrate::{SolverConfig, Trajectory};
use crate::spectral::{Coef, FieldPair, SpectralField, WaveVector};
use crate::stability::{BudgetProvenance, DecayBudget};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// Relative tolerance of the verifier's numerical checks.
pub const VERIFY_TOL: f64 = 1e-12;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dot_ik(a: &[f64], k: &[i32]) -> f64 {
    a.iter().zip(k).map(|(x, &y)| x * y as f64).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn k_norm(k: &[i32]) -> f64 {
    (k.iter().map(|&c| (c as i64) * (c as i64)).sum::<i64>() as f64).sqrt()
}

/// Two-mode field for √2 (2π)^{−d/2} W sin(k·x + ψ). Admissible as a
/// generalized Beltrami flow iff W ⊥ k; the eigenvalue is κ = |k|, the
/// norms are ‖w₀‖_p = |k|^p |W|.
pub fn make_gb_flow(w: &[f64], k: &[i32], psi: f64, cutoff: i32) -> Result<SpectralField> {
    let d = w.len();
    if k.len() != d {
        return Err(Error::ModeDimension(k.to_vec(), k.len(), d));
    }
    let kvec = WaveVector::new(k);
    if kvec.is_zero() {
        return Err(Error::Rejected {
            condition: "k != 0".into(),
        });
    }
    let wk = dot_ik(w, k);
    if wk.abs() > VERIFY_TOL * norm(w).max(1e-300) * k_norm(k) {
        return Err(Error::Rejected {
            condition: format!("W . k = 0 (got {wk:.3e})"),
        });
    }
    let mut field = SpectralField::zero(d, cutoff)?;
    if norm(w) == 0.0 {
        field.set_div_free_flag(true);
        return Ok(field); // the zero flow, trivially Beltrami
    }
    // sin(k·x + ψ) = (e^{i(k·x+ψ)} − e^{−i(k·x+ψ)}) / 2i, so the k-mode
    // coefficient is −(i/√2) e^{iψ} W (phase taken mod 2π)
    let phase = Complex64::new(0.0, -1.0) * Complex64::from_polar(1.0, psi.rem_euclid(TWO_PI))
        / std::f64::consts::SQRT_2;
    let coef: Coef = w.iter().map(|&wi| phase * wi).collect();
    field.set_mode(kvec, coef)?;
    field.set_div_free_flag(true);
    Ok(field)
}

/// The planar rotating Beltrami flow on T³:
/// w₀(x) = (2π)^{−3/2} [ ε(α,β,0) sin(κx₃) + (−β,α,0) cos(κx₃) ],
/// satisfying curl w₀ = εκ w₀ exactly and ‖w₀‖_p = κ^p √(α²+β²).
pub fn make_beltrami_3d(alpha: f64, beta: f64, eps: i8, kappa: u32, cutoff: i32) -> Result<SpectralField> {
    if eps != 1 && eps != -1 {
        return Err(Error::Rejected {
            condition: format!("eps in {{+1, -1}} (got {eps})"),
        });
    }
    if kappa < 1 {
        return Err(Error::Rejected {
            condition: format!("kappa >= 1 (got {kappa})"),
        });
    }
    let mut field = SpectralField::zero(3, cutoff)?;
    if alpha == 0.0 && beta == 0.0 {
        field.set_div_free_flag(true);
        return Ok(field);
    }
    // coefficient at k = (0,0,κ): ½[(−β, α, 0) − iε(α, β, 0)]
    let e = eps as f64;
    let coef: Coef = SmallVec::from_vec(vec![
        Complex64::new(-0.5 * beta, -0.5 * e * alpha),
        Complex64::new(0.5 * alpha, -0.5 * e * beta),
        Complex64::new(0.0, 0.0),
    ]);
    field.set_mode(WaveVector::new(&[0, 0, kappa as i32]), coef)?;
    field.set_div_free_flag(true);
    Ok(field)
}

/// curl on T³: coefficientwise i k × v_k. Divergence-free, mean-zero.
pub fn curl3d(field: &SpectralField) -> Result<SpectralField> {
    if field.dim() != 3 {
        return Err(Error::InvalidDimension(field.dim()));
    }
    let mut out = SpectralField::zero(3, field.cutoff())?;
    for (k, c) in field.modes() {
        let kk = k.components();
        let (k1, k2, k3) = (kk[0] as f64, kk[1] as f64, kk[2] as f64);
        let cross: Coef = SmallVec::from_vec(vec![
            Complex64::i() * (k2 * c[2] - k3 * c[1]),
            Complex64::i() * (k3 * c[0] - k1 * c[2]),
            Complex64::i() * (k1 * c[1] - k2 * c[0]),
        ]);
        out.add_to_mode(k.clone(), cross);
    }
    out.set_div_free_flag(true);
    Ok(out)
}

/// Which slot of a scaled pair carries the α factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Slot {
    Velocity,
    Magnetic,
}

/// Parameters of a single generalized Beltrami flow.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GbFlowSpec {
    /// √2 (2π)^{−d/2} W sin(k·x + ψ).
    Sine { w: Vec<f64>, k: Vec<i32>, psi: f64 },
    /// The T³ Beltrami flow with parameters (α, β, ε, κ).
    Beltrami3d { alpha: f64, beta: f64, eps: i8, kappa: u32 },
}

impl GbFlowSpec {
    pub fn build(&self, cutoff: i32) -> Result<SpectralField> {
        match self {
            GbFlowSpec::Sine { w, k, psi } => make_gb_flow(w, k, *psi, cutoff),
            GbFlowSpec::Beltrami3d { alpha, beta, eps, kappa } => {
                make_beltrami_3d(*alpha, *beta, *eps, *kappa, cutoff)
            }
        }
    }
}

/// Parameters of a generalized Beltrami pair.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BeltramiPairSpec {
    /// (w₀, αw₀) or (αw₀, w₀) for a generalized Beltrami flow w₀; the
    /// `scaled_slot` carries the α factor.
    Scaled {
        base: GbFlowSpec,
        alpha: f64,
        scaled_slot: Slot,
    },
    /// v₀ = √2(2π)^{−d/2} V sin(k·x), c₀ = √2(2π)^{−d/2} C sin(ℓ·x + φ);
    /// admissible iff V·k = 0, C·ℓ = 0, (V·ℓ)C = 0 and (C·k)V = 0.
    Sinusoidal {
        v: Vec<f64>,
        c: Vec<f64>,
        k: Vec<i32>,
        l: Vec<i32>,
        phi: f64,
    },
    /// Two planar T³ Beltrami flows, (α,β,ε,κ) and (γ,δ,σ,λ); both depend
    /// on x₃ only, so the cross-advection terms vanish identically.
    Trkal {
        alpha: f64,
        beta: f64,
        gamma: f64,
        delta: f64,
        eps: i8,
        sigma: i8,
        kappa: u32,
        lambda: u32,
    },
}

/// Per-slot verification results.
#[derive(Clone, Debug, Serialize)]
pub struct FlowCheck {
    pub solenoidal: bool,
    pub divergence_residual: f64,
    /// κ² when the support is a single Laplacian shell; `None` for
    /// mixed-shell fields (rejected rather than fitted).
    pub eigenvalue: Option<f64>,
    pub self_advection_residual: f64,
    pub self_advection_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GbPairReport {
    pub velocity: FlowCheck,
    pub magnetic: FlowCheck,
    pub cross_advection_residual: f64,
    pub cross_advection_ok: bool,
    /// Detected κ (1 for a zero slot).
    pub kappa: f64,
    pub lambda: f64,
    pub passed: bool,
    pub failures: Vec<String>,
}

fn detect_shell(field: &SpectralField) -> Option<f64> {
    let mut shell: Option<i64> = None;
    for (k, _) in field.modes() {
        match shell {
            None => shell = Some(k.norm_sq()),
            Some(s) if s == k.norm_sq() => {}
            Some(_) => return None,
        }
    }
    Some(shell.map(|s| s as f64).unwrap_or(1.0)) // zero field: trivial shell
}

fn check_flow(field: &SpectralField, name: &str, failures: &mut Vec<String>) -> Result<FlowCheck> {
    let div = field.divergence_residual();
    let solenoidal = div <= VERIFY_TOL;
    if !solenoidal {
        failures.push(format!("{name}: divergence residual {div:.3e}"));
    }
    let eigenvalue = detect_shell(field);
    if eigenvalue.is_none() {
        failures.push(format!("{name}: not a Laplacian eigenfield (mixed shells)"));
    }
    let q = projected_advect(field, field)?;
    let scale = (field.sobolev_norm(0.0) * field.sobolev_norm(1.0)).max(1e-300);
    let self_res = q.sobolev_norm(0.0) / scale;
    let self_ok = self_res <= VERIFY_TOL;
    if !self_ok {
        failures.push(format!(
            "{name}: projected self-advection residual {self_res:.3e}"
        ));
    }
    Ok(FlowCheck {
        solenoidal,
        divergence_residual: div,
        eigenvalue,
        self_advection_residual: self_res,
        self_advection_ok: self_ok,
    })
}

/// Numerically checks the generalized-Beltrami-pair conditions. Everything
/// is reported; nothing throws.
pub fn verify_gb_pair(pair: &FieldPair) -> Result<GbPairReport> {
    let mut failures = Vec::new();
    let velocity = check_flow(pair.velocity(), "velocity", &mut failures)?;
    let magnetic = check_flow(pair.magnetic(), "magnetic", &mut failures)?;

    let a_vc = advect(pair.velocity(), pair.magnetic())?;
    let a_cv = advect(pair.magnetic(), pair.velocity())?;
    let scale = (pair.velocity().sobolev_norm(0.0) * pair.magnetic().sobolev_norm(1.0))
        .max(pair.magnetic().sobolev_norm(0.0) * pair.velocity().sobolev_norm(1.0))
        .max(1e-300);
    let cross = a_vc.sub(&a_cv).sobolev_norm(0.0) / scale;
    let cross_ok = cross <= VERIFY_TOL;
    if !cross_ok {
        failures.push(format!(
            "pair: (v.grad)c = (c.grad)v residual {cross:.3e}"
        ));
    }

    let passed = failures.is_empty();
    Ok(GbPairReport {
        kappa: velocity.eigenvalue.map(|s| s.sqrt()).unwrap_or(f64::NAN),
        lambda: magnetic.eigenvalue.map(|s| s.sqrt()).unwrap_or(f64::NAN),
        velocity,
        magnetic,
        cross_advection_residual: cross,
        cross_advection_ok: cross_ok,
        passed,
        failures,
    })
}

/// A verified generalized Beltrami pair with its eigenvalues — the carrier
/// of the closed-form solution.
#[derive(Clone, Debug)]
pub struct GbPair {
    pair: FieldPair,
    kappa_sq: f64,
    lambda_sq: f64,
    report: GbPairReport,
    spec: Option<BeltramiPairSpec>,
}

impl GbPair {
    /// Verifies an arbitrary pair; refuses unless every condition holds.
    pub fn verify(pair: FieldPair) -> Result<GbPair> {
        let report = verify_gb_pair(&pair)?;
        if !report.passed {
            return Err(Error::UnverifiedPair(report.failures.join("; ")));
        }
        Ok(GbPair {
            kappa_sq: report.velocity.eigenvalue.expect("verified"),
            lambda_sq: report.magnetic.eigenvalue.expect("verified"),
            pair,
            report,
            spec: None,
        })
    }

    pub fn pair(&self) -> &FieldPair {
        &self.pair
    }

    pub fn report(&self) -> &GbPairReport {
        &self.report
    }

    pub fn spec(&self) -> Option<&BeltramiPairSpec> {
        self.spec.as_ref()
    }

    pub fn kappa(&self) -> f64 {
        self.kappa_sq.sqrt()
    }

    pub fn lambda(&self) -> f64 {
        self.lambda_sq.sqrt()
    }

    /// The exact solution (e^{−κ²νt} v₀, e^{−λ²ηt} c₀) at time t.
    pub fn exact_solution(&self, nu: f64, eta: f64, t: f64) -> Result<FieldPair> {
        if !(nu > 0.0) || !(eta > 0.0) {
            return Err(Error::InvalidConfig(
                "nu and eta must be positive".into(),
            ));
        }
        FieldPair::new(
            self.pair.velocity().scaled((-self.kappa_sq * nu * t).exp()),
            self.pair.magnetic().scaled((-self.lambda_sq * eta * t).exp()),
        )
    }

    /// Pair norm of the exact solution at time t, any order p:
    /// sqrt(e^{−2κ²νt} κ^{2p} ‖v₀‖₀² + e^{−2λ²ηt} λ^{2p} ‖c₀‖₀²).
    pub fn exact_norm(&self, nu: f64, eta: f64, t: f64, p: f64) -> f64 {
        let v0 = self.pair.velocity().sobolev_norm(0.0);
        let c0 = self.pair.magnetic().sobolev_norm(0.0);
        let a = (-self.kappa_sq * nu * t).exp() * self.kappa_sq.powf(0.5 * p) * v0;
        let b = (-self.lambda_sq * eta * t).exp() * self.lambda_sq.powf(0.5 * p) * c0;
        a.hypot(b)
    }

    /// Samples the closed form on a uniform grid as a [`Trajectory`]
    /// (snapshots every `record_stride` samples).
    pub fn exact_trajectory(
        &self,
        nu: f64,
        eta: f64,
        dt: f64,
        t_end: f64,
        recorded_orders: Vec<f64>,
        record_stride: usize,
    ) -> Result<Trajectory> {
        let config = SolverConfig {
            dim: self.pair.dim(),
            cutoff: self.pair.cutoff(),
            nu,
            eta,
            dt,
            t_end,
            recorded_orders,
            record_stride,
        };
        config.validate()?;
        Trajectory::from_states(config, |t| {
            self.exact_solution(nu, eta, t).expect("validated coefficients")
        })
    }

    /// Closed-form decay budget J_p = κ^{p−2}/ν ‖v₀‖₀ + λ^{p−2}/η ‖c₀‖₀.
    pub fn analytic_budget(&self, nu: f64, eta: f64, orders: &[f64]) -> Result<DecayBudget> {
        if !(nu > 0.0) || !(eta > 0.0) {
            return Err(Error::InvalidConfig(
                "nu and eta must be positive".into(),
            ));
        }
        let v0 = self.pair.velocity().sobolev_norm(0.0);
        let c0 = self.pair.magnetic().sobolev_norm(0.0);
        let mut budget = DecayBudget::new();
        for &p in orders {
            let j = self.kappa_sq.powf(0.5 * (p - 2.0)) / nu * v0
                + self.lambda_sq.powf(0.5 * (p - 2.0)) / eta * c0;
            budget.insert(p, j, BudgetProvenance::AnalyticBeltrami)?;
        }
        Ok(budget)
    }
}

/// Builds and verifies a pair from its parameters; admissibility violations
/// name the violated condition.
pub fn make_gb_pair(spec: &BeltramiPairSpec, cutoff: i32) -> Result<GbPair> {
    let pair = match spec {
        BeltramiPairSpec::Scaled { base, alpha, scaled_slot } => {
            let w0 = base.build(cutoff)?;
            let scaled = w0.scaled(*alpha).pruned(0.0);
            match scaled_slot {
                Slot::Magnetic => FieldPair::new(w0, scaled)?,
                Slot::Velocity => FieldPair::new(scaled, w0)?,
            }
        }
        BeltramiPairSpec::Sinusoidal { v, c, k, l, phi } => {
            let vk = dot_ik(v, k);
            if vk.abs() > VERIFY_TOL * norm(v).max(1e-300) * k_norm(k) {
                return Err(Error::Rejected {
                    condition: format!("V . k = 0 (got {vk:.3e})"),
                });
            }
            let cl = dot_ik(c, l);
            if cl.abs() > VERIFY_TOL * norm(c).max(1e-300) * k_norm(l) {
                return Err(Error::Rejected {
                    condition: format!("C . l = 0 (got {cl:.3e})"),
                });
            }
            let vl = dot_ik(v, l);
            if vl.abs() * norm(c) > VERIFY_TOL * norm(v) * k_norm(l) * norm(c).max(1e-300) {
                return Err(Error::Rejected {
                    condition: format!("(V . l) C = 0 (got |V.l| = {:.3e}, |C| = {:.3e})", vl.abs(), norm(c)),
                });
            }
            let ck = dot_ik(c, k);
            if ck.abs() * norm(v) > VERIFY_TOL * norm(c) * k_norm(k) * norm(v).max(1e-300) {
                return Err(Error::Rejected {
                    condition: format!("(C . k) V = 0 (got |C.k| = {:.3e}, |V| = {:.3e})", ck.abs(), norm(v)),
                });
            }
            let v0 = make_gb_flow(v, k, 0.0, cutoff)?;
            let c0 = make_gb_flow(c, l, *phi, cutoff)?;
            FieldPair::new(v0, c0)?
        }
        BeltramiPairSpec::Trkal {
            alpha,
            beta,
            gamma,
            delta,
            eps,
            sigma,
            kappa,
            lambda,
        } => {
            let v0 = make_beltrami_3d(*alpha, *beta, *eps, *kappa, cutoff)?;
            let c0 = make_beltrami_3d(*gamma, *delta, *sigma, *lambda, cutoff)?;
            FieldPair::new(v0, c0)?
        }
    };
    let mut gb = GbPair::verify(pair)?;
    gb.spec = Some(spec.clone());
    Ok(gb)
}
