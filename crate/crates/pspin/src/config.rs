//! Run configuration: a single JSON document, with CLI flags overriding
//! individual keys.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::model::MixtureSpec;
use crate::oracle::OracleParams;
use crate::schedule::{Schedule, TimeGrid};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[clap(rename_all = "snake_case")]
pub enum SolverKind {
    Langevin,
    Keldysh,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridConfig {
    pub dt: f64,
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

fn default_memory_cap() -> u64 {
    8 * 1024 * 1024 * 1024
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    /// Mixture as [degree, weight] pairs, e.g. [[3, 1.0], [14, 1.0]].
    pub model: MixtureSpec,
    pub schedule: Schedule,
    pub grid: GridConfig,
    pub solver: SolverKind,
    /// Protocol runtimes for sweep mode; each must be a multiple of dt.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleParams>,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default = "default_memory_cap")]
    pub memory_cap_bytes: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        let cfg: RunConfig = serde_json::from_str(&text)
            .map_err(|e| Error::Config(format!("invalid config {}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.schedule.validate()?;
        if !(self.grid.dt > 0.0) {
            return Err(Error::Config(format!("grid.dt = {} must be > 0", self.grid.dt)));
        }
        // tau and every sweep tau must sit on the grid exactly.
        TimeGrid::new(self.grid.dt, self.schedule.tau)?;
        if let Some(sweep) = &self.sweep {
            for &tau in sweep {
                TimeGrid::new(self.grid.dt, tau)
                    .map_err(|_| Error::Config(format!(
                        "sweep tau = {tau} is not an integer multiple of dt = {}",
                        self.grid.dt
                    )))?;
            }
        }
        if self.solver == SolverKind::Keldysh && self.schedule.s_at(0.0) != 0.0 {
            return Err(Error::Config(
                "solver = keldysh requires a schedule with s(0) = 0".into(),
            ));
        }
        Ok(())
    }

    /// Schedule with the runtime replaced (sweep points reuse the
    /// protocol shape at different tau).
    pub fn schedule_for_tau(&self, tau: f64) -> Schedule {
        let mut sched = self.schedule;
        sched.tau = tau;
        if sched.switch_time.is_some() {
            // Keep the switch fraction, not the absolute time.
            let frac = self.schedule.switch_time.unwrap() / self.schedule.tau;
            sched.switch_time = Some(frac * tau);
        }
        sched
    }

    /// Hex digest of the canonical JSON form; embedded in output headers
    /// so files can be traced back to the exact configuration.
    ///
    /// Execution-environment fields (output directory, thread count,
    /// memory cap) do not affect the computed results and are excluded,
    /// so reruns into different directories stay bit-identical.
    pub fn hash(&self) -> String {
        let mut canonical = self.clone();
        canonical.output_dir = default_output_dir();
        canonical.threads = None;
        canonical.memory_cap_bytes = default_memory_cap();
        let canon = serde_json::to_string(&canonical).expect("config serializes");
        let digest = Sha256::digest(canon.as_bytes());
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        hex[..16].to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schedule::ScheduleKind;

    fn base() -> RunConfig {
        RunConfig {
            model: MixtureSpec::pure(3).unwrap(),
            schedule: Schedule::new(ScheduleKind::LinearAnneal, 10.0).unwrap(),
            grid: GridConfig { dt: 0.1 },
            solver: SolverKind::Langevin,
            sweep: None,
            oracle: None,
            output_dir: default_output_dir(),
            memory_cap_bytes: default_memory_cap(),
            threads: None,
        }
    }

    #[test]
    fn json_round_trip() {
        let cfg = base();
        let text = serde_json::to_string(&cfg).unwrap();
        let back: RunConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back.hash(), cfg.hash());
    }

    #[test]
    fn parses_documented_schema() {
        let text = r#"{
            "model": [[3, 1.0], [14, 1.0]],
            "schedule": {"kind": "two_stage", "s0": 0.6, "tau": 100.0},
            "grid": {"dt": 0.02},
            "solver": "langevin"
        }"#;
        let cfg: RunConfig = serde_json::from_str(text).unwrap();
        cfg.validate().unwrap();
        assert_eq!(cfg.schedule.s_at(10.0), 0.6);
    }

    #[test]
    fn keldysh_rejects_nonzero_initial_s() {
        let mut cfg = base();
        cfg.solver = SolverKind::Keldysh;
        cfg.schedule = Schedule::new(ScheduleKind::NaiveQuench, 10.0).unwrap();
        assert!(matches!(cfg.validate(), Err(Error::Config(_))));
    }

    #[test]
    fn sweep_taus_must_sit_on_grid() {
        let mut cfg = base();
        cfg.sweep = Some(vec![12.5, 25.0]);
        cfg.validate().unwrap();
        cfg.sweep = Some(vec![12.55]);
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn hash_changes_with_config() {
        let a = base();
        let mut b = base();
        b.grid.dt = 0.05;
        assert_ne!(a.hash(), b.hash());
    }
}
