//! Reproducible file outputs: CSV traces and JSON summaries.
//!
//! CSV uses '.' decimal, no thousands separators, LF line endings and a
//! header row; every file starts with a comment line embedding the
//! config hash and code version so reruns can be diffed bit-exactly.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::analysis::PowerLawFit;
use crate::error::Result;
use crate::oracle::OracleCurves;
use crate::trace::SolverTrace;
use crate::two_time::TwoTimeField;

pub fn header_comment(config_hash: &str) -> String {
    format!("# config_hash={config_hash} version={}\n", crate::VERSION)
}

fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v}")
    } else {
        String::new()
    }
}

pub fn write_trace_csv(path: &Path, trace: &SolverTrace, config_hash: &str) -> Result<()> {
    let mut out = header_comment(config_hash);
    let has_curvature = trace.curvature.is_some();
    out.push_str(if has_curvature {
        "t,s,z,epsilon,constraint_residual,A\n"
    } else {
        "t,s,z,epsilon,constraint_residual\n"
    });
    for i in 0..trace.times.len() {
        let z = trace.z[i].map(fmt_f64).unwrap_or_default();
        write!(
            out,
            "{},{},{z},{},{}",
            fmt_f64(trace.times[i]),
            fmt_f64(trace.s[i]),
            fmt_f64(trace.energy[i]),
            fmt_f64(trace.constraint_residual[i]),
        )
        .expect("string write");
        if let Some(a) = &trace.curvature {
            out.push(',');
            out.push_str(&fmt_f64(a[i]));
        }
        out.push('\n');
    }
    std::fs::write(path, out)?;
    Ok(())
}

pub fn write_sweep_csv(path: &Path, points: &[(f64, f64)], config_hash: &str) -> Result<()> {
    let mut out = header_comment(config_hash);
    out.push_str("tau,epsilon\n");
    for &(tau, eps) in points {
        out.push_str(&format!("{tau},{eps}\n"));
    }
    std::fs::write(path, out)?;
    Ok(())
}

pub fn write_oracle_csv(path: &Path, curves: &OracleCurves, config_hash: &str) -> Result<()> {
    let mut out = header_comment(config_hash);
    out.push_str("t,epsilon_mean,epsilon_stderr,c_t0_mean,c_t0_stderr,n_samples\n");
    for i in 0..curves.times.len() {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            fmt_f64(curves.times[i]),
            fmt_f64(curves.energy_mean[i]),
            fmt_f64(curves.energy_stderr[i]),
            fmt_f64(curves.c_t0_mean[i]),
            fmt_f64(curves.c_t0_stderr[i]),
            curves.n_samples,
        ));
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Full kernel dump (O(n²) file size; flag-gated at the CLI).
pub fn write_kernel_csv(path: &Path, field: &TwoTimeField, config_hash: &str) -> Result<()> {
    let mut out = header_comment(config_hash);
    out.push_str("k,kp,value\n");
    for k in 0..field.n_points() {
        for (kp, v) in field.row(k).iter().enumerate() {
            out.push_str(&format!("{k},{kp},{v}\n"));
        }
    }
    std::fs::write(path, out)?;
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub epsilon_final: f64,
    pub z_final: Option<f64>,
    pub runtime_seconds: f64,
    pub dt: f64,
    pub tau: f64,
    pub config_hash: String,
    pub version: String,
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct FitReport {
    #[serde(flatten)]
    pub fit: PowerLawFit,
    pub threshold_energy: f64,
    /// epsilon_inf - threshold_energy; negative means the fitted
    /// asymptote lies below the threshold.
    pub epsilon_inf_minus_threshold: f64,
    pub config_hash: String,
    pub version: String,
}
