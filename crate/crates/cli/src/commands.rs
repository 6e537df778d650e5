//! Subcommand implementations.

use crate::config::{load_spec_arg, parse_order_value, CommonArgs, Settings};
use crate::output::{certificate_csv, ensure_dir, trajectory_csv, write_json, write_text, Stamped};
use clap::Args;
use mhd_core::beltrami::{make_gb_pair, BeltramiPairSpec, GbPair, GbPairReport};
use mhd_core::certify::{certify, CertifyOptions, DifferentialError, Horizon};
use mhd_core::error::{Error, Result};
use mhd_core::integrate::{integrate, SolverConfig, Trajectory, TrajectoryDocument};
use mhd_core::order::OrderKey;
use mhd_core::spectral::{FieldPair, PairDocument};
use mhd_core::stability::{
    budget_from_trajectory, decay_diagnostics, perturbation_envelopes, stability_radius,
    DecayBudget, DecayDiagnostics,
};
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::PathBuf;

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidConfig(msg.into())
}

/// Orders the certificate machinery needs recorded: n, n+1 and p, p+1 for
/// every requested p.
fn certificate_orders(n: f64, p_list: &[f64]) -> Vec<f64> {
    let mut orders = vec![n, n + 1.0];
    for &p in p_list {
        orders.push(p);
        orders.push(p + 1.0);
    }
    orders.sort_by(f64::total_cmp);
    orders.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    orders
}

enum BaseInput {
    Datum(FieldPair),
    Beltrami(Box<GbPair>),
}

fn load_base(
    settings: &Settings,
    datum: &Option<PathBuf>,
    beltrami: &Option<String>,
) -> Result<BaseInput> {
    match (datum, beltrami) {
        (Some(path), None) => {
            let doc: PairDocument = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            Ok(BaseInput::Datum(FieldPair::from_document(&doc)?))
        }
        (None, Some(arg)) => {
            let spec: BeltramiPairSpec = load_spec_arg(arg)?;
            Ok(BaseInput::Beltrami(Box::new(make_gb_pair(&spec, settings.cutoff)?)))
        }
        _ => Err(usage("exactly one of --datum and --beltrami is required")),
    }
}

fn solver_config(settings: &Settings, pair: &FieldPair, orders: Vec<f64>) -> SolverConfig {
    SolverConfig {
        dim: pair.dim(),
        cutoff: pair.cutoff(),
        nu: settings.nu,
        eta: settings.eta,
        dt: settings.dt,
        t_end: settings.t_end,
        recorded_orders: orders,
        record_stride: settings.stride,
    }
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Initial datum as a field-pair JSON file.
    #[arg(long)]
    pub datum: Option<PathBuf>,
    /// Beltrami-pair spec (inline JSON or a path to one).
    #[arg(long)]
    pub beltrami: Option<String>,
    /// Sobolev orders to record (repeatable; defaults to 0, 1 plus any
    /// certificate orders implied by --n/--p).
    #[arg(long = "order")]
    pub orders: Vec<f64>,
}

pub fn cmd_simulate(args: &SimulateArgs) -> Result<()> {
    let settings = Settings::resolve(&args.common)?;
    let pair = match load_base(&settings, &args.datum, &args.beltrami)? {
        BaseInput::Datum(p) => p,
        BaseInput::Beltrami(gb) => gb.pair().clone(),
    };
    let mut orders = if args.orders.is_empty() {
        let mut o = vec![0.0, 1.0];
        if settings.n.is_some() || !settings.p.is_empty() {
            o.extend(certificate_orders(settings.order_n(), &settings.p));
        }
        o
    } else {
        args.orders.clone()
    };
    orders.sort_by(f64::total_cmp);
    orders.dedup_by(|a, b| (*a - *b).abs() < 1e-12);

    let config = solver_config(&settings, &pair, orders.clone());
    let traj = integrate(&pair, &config)?;

    ensure_dir(&settings.out)?;
    let digest = settings.digest();
    if settings.format.csv() {
        write_text(&settings.out, "trajectory.csv", &trajectory_csv(&traj, &digest))?;
    }
    if settings.format.json() {
        write_json(
            &settings.out,
            "trajectory.json",
            &Stamped {
                config_digest: digest.clone(),
                payload: traj.to_document(true),
            },
        )?;
    }

    println!("simulated {} steps to t = {}", traj.times().len() - 1, config.t_end);
    println!("{:>8} {:>14} {:>14}", "order", "norm(0)", "norm(t_end)");
    for &p in &orders {
        let series = traj.norm_series(p)?;
        println!("{:>8} {:>14.6e} {:>14.6e}", p, series[0], series[series.len() - 1]);
    }
    println!("artifacts in {}", settings.out.display());
    Ok(())
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Approximate solution: a Galerkin run from this datum (JSON pair).
    #[arg(long)]
    pub datum: Option<PathBuf>,
    /// Approximate solution: the closed-form flow of this Beltrami pair.
    #[arg(long)]
    pub beltrami: Option<String>,
    /// Datum errors per order, as ORDER=VALUE (repeatable).
    #[arg(long = "delta", value_parser = parse_order_value)]
    pub delta: Vec<(f64, f64)>,
}

pub fn cmd_certify(args: &CertifyArgs) -> Result<()> {
    let settings = Settings::resolve(&args.common)?;
    let n = settings.order_n();
    let orders = certificate_orders(n, &settings.p);

    let (traj, mode) = match load_base(&settings, &args.datum, &args.beltrami)? {
        BaseInput::Beltrami(gb) => {
            let traj = gb.exact_trajectory(
                settings.nu,
                settings.eta,
                settings.dt,
                settings.t_end,
                orders,
                settings.stride,
            )?;
            (traj, DifferentialError::Zero)
        }
        BaseInput::Datum(pair) => {
            let config = solver_config(&settings, &pair, orders);
            (integrate(&pair, &config)?, DifferentialError::GalerkinResidual)
        }
    };

    let mut datum_error = BTreeMap::new();
    for &(order, value) in &args.delta {
        datum_error.insert(OrderKey::new(order)?, value);
    }
    let opts = CertifyOptions {
        n,
        orders_p: settings.p.clone(),
        differential_error: mode,
    };
    let table = settings.constants_for(traj.config().dim)?;
    let cert = certify(&traj, &datum_error, &opts, &table)?;

    ensure_dir(&settings.out)?;
    let digest = settings.digest();
    if settings.format.json() {
        write_json(
            &settings.out,
            "certificate.json",
            &Stamped {
                config_digest: digest.clone(),
                payload: &cert,
            },
        )?;
    }
    if settings.format.csv() {
        write_text(&settings.out, "certificate.csv", &certificate_csv(&cert, &digest))?;
    }

    match cert.t_c {
        Horizon::Unbounded => println!(
            "T_c: +inf (no blow-up on [0, {}]); the exact solution is controlled on the whole window",
            settings.t_end
        ),
        Horizon::Finite(t) => println!("T_c = {t:.6} (control lost before t_end)"),
    }
    let rn_end = *cert.rn.last().unwrap_or(&f64::NAN);
    println!("Rn({n}): starts {:.6e}, ends {rn_end:.6e}", cert.rn.first().unwrap_or(&0.0));
    for (key, series) in &cert.rp {
        println!(
            "Rp({key}): starts {:.6e}, ends {:.6e}",
            series.first().unwrap_or(&0.0),
            series.last().unwrap_or(&f64::NAN)
        );
    }
    println!("artifacts in {}", settings.out.display());
    Ok(())
}

#[derive(Args, Debug)]
pub struct RadiusArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Base flow as a Beltrami-pair spec (inline JSON or a path).
    #[arg(long)]
    pub beltrami: String,
    /// Datum error at order n for the perturbation envelopes.
    #[arg(long = "delta-n", default_value_t = 0.0)]
    pub delta_n: f64,
    /// Emit a table of rho over these orders n (comma separated) instead
    /// of a single report.
    #[arg(long = "sweep-n", value_delimiter = ',')]
    pub sweep_n: Vec<f64>,
}

#[derive(Serialize)]
struct SweepRow {
    n: f64,
    rho: f64,
}

#[derive(Serialize)]
struct SweepArtifact {
    rows: Vec<SweepRow>,
}

pub fn cmd_radius(args: &RadiusArgs) -> Result<()> {
    let settings = Settings::resolve(&args.common)?;
    let spec: BeltramiPairSpec = load_spec_arg(&args.beltrami)?;
    let gb = make_gb_pair(&spec, settings.cutoff)?;
    let table = settings.constants_for(gb.pair().dim())?;
    let mu = settings.mu();
    ensure_dir(&settings.out)?;
    let digest = settings.digest();

    if !args.sweep_n.is_empty() {
        let mut rows = Vec::new();
        println!("{:>8} {:>16}", "n", "rho_n");
        for &n in &args.sweep_n {
            let budget = gb.analytic_budget(settings.nu, settings.eta, &[n, n + 1.0])?;
            let rho = stability_radius(&budget, n, mu, &table)?;
            println!("{n:>8} {rho:>16.8e}");
            rows.push(SweepRow { n, rho });
        }
        write_json(
            &settings.out,
            "sweep.json",
            &Stamped {
                config_digest: digest,
                payload: SweepArtifact { rows },
            },
        )?;
        return Ok(());
    }

    let n = settings.order_n();
    let orders = certificate_orders(n, &settings.p);
    let budget = gb.analytic_budget(settings.nu, settings.eta, &orders)?;
    let report = perturbation_envelopes(args.delta_n, &settings.p, &budget, n, mu, &table)?;

    write_json(
        &settings.out,
        "stability.json",
        &Stamped {
            config_digest: digest,
            payload: &report,
        },
    )?;

    println!("stability radius rho_{n} = {:.8e} (mu = {mu})", report.rho_n);
    println!("datum error delta_n = {:.3e}: regime {:?}", report.delta_n, report.regime);
    if let Some(general) = &report.general {
        println!("general envelope:   |u(t) - v(t)|_{n} <= {:.6e} * delta_n * exp(-mu t)", general.c_n);
        for (key, c) in &general.c_p {
            println!("                    |u(t) - v(t)|_{key} <= {c:.6e} * delta_{key} * exp(-mu t)");
        }
    }
    if let Some(simplified) = &report.simplified {
        println!("simplified (delta <= rho/2): order-n coefficient {:.6e}", simplified.c_n);
        for (key, c) in &simplified.c_p {
            println!("                    order-{key} coefficient {c:.6e}");
        }
    }
    println!("artifacts in {}", settings.out.display());
    Ok(())
}

#[derive(Args, Debug)]
pub struct BeltramiArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Pair spec (inline JSON or a path to one).
    #[arg(long)]
    pub spec: String,
}

#[derive(Serialize)]
struct PairArtifact<'a> {
    velocity: mhd_core::spectral::FieldDocument,
    magnetic: mhd_core::spectral::FieldDocument,
    provenance: Provenance<'a>,
}

#[derive(Serialize)]
struct Provenance<'a> {
    spec: &'a BeltramiPairSpec,
    kappa: f64,
    lambda: f64,
    cutoff: i32,
    verification: &'a GbPairReport,
}

pub fn cmd_beltrami(args: &BeltramiArgs) -> Result<()> {
    let settings = Settings::resolve(&args.common)?;
    let spec: BeltramiPairSpec = load_spec_arg(&args.spec)?;
    let gb = make_gb_pair(&spec, settings.cutoff)?;
    ensure_dir(&settings.out)?;
    let doc = gb.pair().to_document();
    let artifact = PairArtifact {
        velocity: doc.velocity,
        magnetic: doc.magnetic,
        provenance: Provenance {
            spec: &spec,
            kappa: gb.kappa(),
            lambda: gb.lambda(),
            cutoff: settings.cutoff,
            verification: gb.report(),
        },
    };
    write_json(
        &settings.out,
        "pair.json",
        &Stamped {
            config_digest: settings.digest(),
            payload: artifact,
        },
    )?;
    let report = gb.report();
    println!(
        "constructed generalized Beltrami pair: kappa = {}, lambda = {}",
        gb.kappa(),
        gb.lambda()
    );
    println!(
        "verification: solenoidal {}/{}, self-advection residuals {:.2e}/{:.2e}, cross {:.2e}",
        report.velocity.solenoidal,
        report.magnetic.solenoidal,
        report.velocity.self_advection_residual,
        report.magnetic.self_advection_residual,
        report.cross_advection_residual
    );
    println!("pair written to {}", settings.out.join("pair.json").display());
    Ok(())
}

#[derive(Args, Debug)]
pub struct DiagnoseArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Trajectory JSON produced by `simulate` (with or without states).
    #[arg(long)]
    pub trajectory: Option<PathBuf>,
    /// Or solve first: datum pair JSON.
    #[arg(long)]
    pub datum: Option<PathBuf>,
    /// Or solve first: Beltrami-pair spec.
    #[arg(long)]
    pub beltrami: Option<String>,
    /// Also extrapolate a decay budget (requires a decaying verdict).
    #[arg(long)]
    pub budget: bool,
}

#[derive(Serialize)]
struct DiagnoseArtifact {
    n: f64,
    mu: f64,
    diagnostics: DecayDiagnostics,
    #[serde(skip_serializing_if = "Option::is_none")]
    budget: Option<DecayBudget>,
}

pub fn cmd_diagnose(args: &DiagnoseArgs) -> Result<()> {
    let settings = Settings::resolve(&args.common)?;
    let n = settings.order_n();
    let orders = certificate_orders(n, &settings.p);

    let traj: Trajectory = if let Some(path) = &args.trajectory {
        let doc: TrajectoryDocument = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        Trajectory::from_document(&doc)?
    } else {
        match load_base(&settings, &args.datum, &args.beltrami)? {
            BaseInput::Beltrami(gb) => gb.exact_trajectory(
                settings.nu,
                settings.eta,
                settings.dt,
                settings.t_end,
                orders.clone(),
                settings.stride,
            )?,
            BaseInput::Datum(pair) => {
                let config = solver_config(&settings, &pair, orders.clone());
                integrate(&pair, &config)?
            }
        }
    };

    let table = settings.constants_for(traj.config().dim)?;
    let mu = traj.config().mu();
    let diagnostics = decay_diagnostics(&traj, n, mu, &table)?;
    println!("decay verdict: {:?}", diagnostics.verdict);
    println!(
        "threshold mu/Ghat_n = {:.6e}; first time below: {:?}",
        diagnostics.threshold, diagnostics.first_below
    );
    println!(
        "window contraction: {:.2} decades; fitted tail rate {:?} (mu = {mu})",
        diagnostics.decades, diagnostics.fitted_rate
    );

    let budget = if args.budget {
        let b = budget_from_trajectory(&traj, n, &orders, mu, &table)?;
        for p in b.orders() {
            println!("J_{p} <= {:.6e}", b.get(p)?);
        }
        Some(b)
    } else {
        None
    };

    ensure_dir(&settings.out)?;
    write_json(
        &settings.out,
        "diagnostics.json",
        &Stamped {
            config_digest: settings.digest(),
            payload: DiagnoseArtifact {
                n,
                mu,
                diagnostics,
                budget,
            },
        },
    )?;
    println!("artifacts in {}", settings.out.display());
    Ok(())
}
