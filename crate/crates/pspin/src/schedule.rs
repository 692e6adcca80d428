//! Annealing protocols `s(t)` and the uniform time grid.
//!
//! Three protocols from the comparison study, plus a constant schedule
//! used for equilibrium and free-field diagnostics:
//! a naive quench `s(t) = 1`, a two-stage quench (`s = s_0` then 1),
//! and a linear anneal `s(t) = t/τ`. The quantum solver consumes the
//! coefficient pair `s_J = s`, `s_K = 1/(1 - s)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScheduleKind {
    /// `s(t) = 1` for all t.
    #[serde(rename = "quench")]
    NaiveQuench,
    /// `s(t) = s0` for t < switch time, 1 afterwards (switch included).
    TwoStage { s0: f64 },
    /// `s(t) = t / tau`.
    #[serde(rename = "anneal")]
    LinearAnneal,
    /// `s(t) = s` for all t; diagnostic protocol (equilibrium FDT checks,
    /// free-field runs at s = 0).
    Constant { s: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    #[serde(flatten)]
    pub kind: ScheduleKind,
    pub tau: f64,
    /// Two-stage switch time; defaults to tau / 2.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub switch_time: Option<f64>,
}

/// Quantum kinetic coefficient `s_K = 1/(1 - s)`; divergent at s = 1.
/// The solvers must never consume a divergent value in an update step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Stiffness {
    Finite(f64),
    Divergent,
}

impl Stiffness {
    pub fn finite(self) -> Option<f64> {
        match self {
            Stiffness::Finite(v) => Some(v),
            Stiffness::Divergent => None,
        }
    }

    /// Unwraps a value that the caller guarantees is finite.
    pub fn expect_finite(self, ctx: &str) -> f64 {
        match self {
            Stiffness::Finite(v) => v,
            Stiffness::Divergent => panic!("internal contract violation: divergent s_K consumed ({ctx})"),
        }
    }
}

impl Schedule {
    pub fn new(kind: ScheduleKind, tau: f64) -> Result<Self> {
        let sched = Self { kind, tau, switch_time: None };
        sched.validate()?;
        Ok(sched)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tau > 0.0) || !self.tau.is_finite() {
            return Err(Error::Config(format!("schedule.tau = {} must be finite and > 0", self.tau)));
        }
        match self.kind {
            ScheduleKind::TwoStage { s0 } => {
                if !(0.0 < s0 && s0 < 1.0) {
                    return Err(Error::Config(format!("schedule.s0 = {s0} must lie in (0, 1)")));
                }
                if let Some(ts) = self.switch_time {
                    if !(0.0 < ts && ts < self.tau) {
                        return Err(Error::Config(format!(
                            "schedule.switch_time = {ts} must lie in (0, tau)"
                        )));
                    }
                }
            }
            ScheduleKind::Constant { s } => {
                if !(0.0..=1.0).contains(&s) {
                    return Err(Error::Config(format!("constant schedule s = {s} must lie in [0, 1]")));
                }
            }
            _ => {}
        }
        Ok(())
    }

    fn switch(&self) -> f64 {
        self.switch_time.unwrap_or(self.tau / 2.0)
    }

    /// Protocol value `s(t)` for `0 <= t <= tau`.
    pub fn s_at(&self, t: f64) -> f64 {
        assert!(
            -1e-12 <= t && t <= self.tau * (1.0 + 1e-12),
            "t = {t} outside [0, {}]",
            self.tau
        );
        match self.kind {
            ScheduleKind::NaiveQuench => 1.0,
            // Convention: the second stage includes its left endpoint,
            // s(switch) = 1.
            ScheduleKind::TwoStage { s0 } => {
                if t < self.switch() {
                    s0
                } else {
                    1.0
                }
            }
            ScheduleKind::LinearAnneal => (t / self.tau).min(1.0),
            ScheduleKind::Constant { s } => s,
        }
    }

    /// Quantum coefficient pair `(s_J, s_K) = (s, 1/(1 - s))`.
    pub fn quantum_coefficients(&self, t: f64) -> (f64, Stiffness) {
        let s = self.s_at(t);
        if s >= 1.0 {
            (s, Stiffness::Divergent)
        } else {
            (s, Stiffness::Finite(1.0 / (1.0 - s)))
        }
    }
}

/// Uniform grid `t_k = k Δt`, `k = 0..=n`, with `n Δt = τ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub dt: f64,
    pub n_steps: usize,
}

impl TimeGrid {
    /// Builds the grid, requiring tau to be an exact multiple of dt
    /// (within 1e-9 relative rounding tolerance).
    pub fn new(dt: f64, tau: f64) -> Result<Self> {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::Config(format!("grid.dt = {dt} must be finite and > 0")));
        }
        let ratio = tau / dt;
        let n = ratio.round();
        if n < 1.0 || (ratio - n).abs() > 1e-9 * ratio.max(1.0) {
            return Err(Error::Config(format!(
                "tau = {tau} is not an integer multiple of dt = {dt}"
            )));
        }
        Ok(Self { dt, n_steps: n as usize })
    }

    pub fn t(&self, k: usize) -> f64 {
        k as f64 * self.dt
    }

    pub fn n_points(&self) -> usize {
        self.n_steps + 1
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points()).map(|k| self.t(k))
    }
}
