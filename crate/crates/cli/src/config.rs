//! Run configuration: CLI flags override config-file entries, which
//! override the documented defaults.

use clap::Args;
use mhd_core::bilinear::ConstantsTable;
use mhd_core::digest::digest_of;
use mhd_core::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Both,
}

impl Format {
    pub fn csv(self) -> bool {
        matches!(self, Format::Csv | Format::Both)
    }

    pub fn json(self) -> bool {
        matches!(self, Format::Json | Format::Both)
    }
}

/// Flags shared by every subcommand. All are optional here; resolution
/// against the config file and defaults happens in [`Settings::resolve`].
#[derive(Args, Clone, Debug, Default)]
pub struct CommonArgs {
    /// TOML config file; flags given on the command line take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Space dimension d >= 2.
    #[arg(long)]
    pub d: Option<usize>,
    /// Fourier cutoff M (modes with max_i |k_i| <= M).
    #[arg(long)]
    pub cutoff: Option<i32>,
    /// Viscosity.
    #[arg(long)]
    pub nu: Option<f64>,
    /// Resistivity.
    #[arg(long)]
    pub eta: Option<f64>,
    /// Time step.
    #[arg(long)]
    pub dt: Option<f64>,
    /// End time of the run.
    #[arg(long = "t-end")]
    pub t_end: Option<f64>,
    /// Certificate order n (> d/2 + 1).
    #[arg(long)]
    pub n: Option<f64>,
    /// Additional orders p > n (repeatable).
    #[arg(long = "p")]
    pub p: Vec<f64>,
    /// Inequality-constants table (.toml or .json); defaults ship with the
    /// library and are not sharp.
    #[arg(long)]
    pub constants: Option<PathBuf>,
    /// RNG seed for anything randomized.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output formats for data artifacts.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Snapshot stride (full states kept every this many steps).
    #[arg(long)]
    pub stride: Option<usize>,
}

/// Config-file counterpart of [`CommonArgs`].
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub d: Option<usize>,
    pub cutoff: Option<i32>,
    pub nu: Option<f64>,
    pub eta: Option<f64>,
    pub dt: Option<f64>,
    pub t_end: Option<f64>,
    pub n: Option<f64>,
    pub p: Option<Vec<f64>>,
    pub constants: Option<PathBuf>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub stride: Option<usize>,
}

/// Fully resolved settings; serialized into every artifact digest.
#[derive(Clone, Debug, Serialize)]
pub struct Settings {
    pub d: usize,
    pub cutoff: i32,
    pub nu: f64,
    pub eta: f64,
    pub dt: f64,
    pub t_end: f64,
    pub n: Option<f64>,
    pub p: Vec<f64>,
    pub constants_path: Option<PathBuf>,
    pub seed: u64,
    pub out: PathBuf,
    pub format: Format,
    pub stride: usize,
}

impl Settings {
    pub fn resolve(args: &CommonArgs) -> Result<Settings> {
        let file = match &args.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)?;
                toml::from_str::<FileConfig>(&text)?
            }
            None => FileConfig::default(),
        };
        let d = args.d.or(file.d).unwrap_or(3);
        let settings = Settings {
            d,
            cutoff: args.cutoff.or(file.cutoff).unwrap_or(4),
            nu: args.nu.or(file.nu).unwrap_or(0.1),
            eta: args.eta.or(file.eta).unwrap_or(0.1),
            dt: args.dt.or(file.dt).unwrap_or(1e-3),
            t_end: args.t_end.or(file.t_end).unwrap_or(5.0),
            n: args.n.or(file.n),
            p: if args.p.is_empty() {
                file.p.unwrap_or_default()
            } else {
                args.p.clone()
            },
            constants_path: args.constants.clone().or(file.constants),
            seed: args.seed.or(file.seed).unwrap_or(0),
            out: args.out.clone().or(file.out).unwrap_or_else(|| PathBuf::from("mhd-out")),
            format: args.format.or(file.format).unwrap_or(Format::Both),
            stride: args.stride.or(file.stride).unwrap_or(1),
        };
        if settings.d < 2 {
            return Err(Error::InvalidConfig("d must be at least 2".into()));
        }
        if settings.stride == 0 {
            return Err(Error::InvalidConfig("stride must be >= 1".into()));
        }
        Ok(settings)
    }

    pub fn mu(&self) -> f64 {
        self.nu.min(self.eta)
    }

    /// Certificate order: given explicitly or the smallest admissible
    /// half-integer d/2 + 1.5.
    pub fn order_n(&self) -> f64 {
        self.n.unwrap_or(self.d as f64 / 2.0 + 1.5)
    }

    /// Constants table for the given space dimension (which should come
    /// from the data being processed, not from the `d` default).
    pub fn constants_for(&self, d: usize) -> Result<ConstantsTable> {
        match &self.constants_path {
            Some(path) => ConstantsTable::load(path),
            None => ConstantsTable::builtin(d),
        }
    }

    /// Digest over the semantic settings (everything that can alter the
    /// numbers; output location and format are excluded so reruns into a
    /// different directory stay byte-identical).
    pub fn digest(&self) -> String {
        digest_of(&(
            self.d,
            self.cutoff,
            self.nu,
            self.eta,
            self.dt,
            self.t_end,
            &self.n,
            &self.p,
            &self.constants_path,
            self.seed,
            self.stride,
        ))
    }
}

/// Spec arguments accept inline JSON (leading `{`) or a path to a JSON file.
pub fn load_spec_arg<T: serde::de::DeserializeOwned>(arg: &str) -> Result<T> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(Path::new(arg))?
    };
    Ok(serde_json::from_str(&text)?)
}

/// Parses a repeatable `ORDER=VALUE` pair (e.g. `--delta 2.5=1e-3`).
pub fn parse_order_value(s: &str) -> std::result::Result<(f64, f64), String> {
    let (a, b) = s
        .split_once('=')
        .ok_or_else(|| format!("expected ORDER=VALUE, got `{s}`"))?;
    let order: f64 = a.trim().parse().map_err(|_| format!("bad order `{a}`"))?;
    let value: f64 = b.trim().parse().map_err(|_| format!("bad value `{b}`"))?;
    Ok((order, value))
}
