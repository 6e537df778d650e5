//! Artifact writers. Every file carries the resolved-config digest; CSV
//! floats use the shortest round-trip representation, so repeated runs are
//! byte-identical.

use mhd_core::certify::Certificate;
use mhd_core::error::Result;
use mhd_core::integrate::Trajectory;
use serde::Serialize;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    Ok(())
}

pub fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<PathBuf> {
    let path = dir.join(name);
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(&path, text)?;
    Ok(path)
}

pub fn write_text(dir: &Path, name: &str, text: &str) -> Result<PathBuf> {
    let path = dir.join(name);
    std::fs::write(&path, text)?;
    Ok(path)
}

pub fn trajectory_csv(traj: &Trajectory, digest: &str) -> String {
    let orders: Vec<f64> = traj.recorded_orders().collect();
    let mut out = String::new();
    let _ = writeln!(out, "# config_digest={digest}");
    let mut header = String::from("t");
    for p in &orders {
        let _ = write!(header, ",norm_{p}");
    }
    out.push_str(&header);
    out.push('\n');
    let series: Vec<&[f64]> = orders
        .iter()
        .map(|&p| traj.norm_series(p).expect("recorded order"))
        .collect();
    for (i, &t) in traj.times().iter().enumerate() {
        let _ = write!(out, "{t}");
        for s in &series {
            let _ = write!(out, ",{}", s[i]);
        }
        out.push('\n');
    }
    out
}

pub fn certificate_csv(cert: &Certificate, digest: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# config_digest={digest}");
    let orders: Vec<String> = cert.rp.keys().map(|k| k.to_string()).collect();
    let mut header = String::from("t,Rn");
    for p in &orders {
        let _ = write!(header, ",Rp_{p}");
    }
    out.push_str(&header);
    out.push('\n');
    let series: Vec<&Vec<f64>> = cert.rp.values().collect();
    for (i, &t) in cert.times.iter().enumerate() {
        let _ = write!(out, "{t},{}", cert.rn[i]);
        for s in &series {
            if i < s.len() {
                let _ = write!(out, ",{}", s[i]);
            } else {
                out.push(',');
            }
        }
        out.push('\n');
    }
    out
}

/// Wrapper adding the config digest to any serializable payload.
#[derive(Serialize)]
pub struct Stamped<T: Serialize> {
    pub config_digest: String,
    #[serde(flatten)]
    pub payload: T,
}
