//! Two-time dynamics of spherical mixed p-spin models under annealing.
//!
//! The model is specified by its mixture polynomial `f[Q] = Σ_p a_p Q^p`.
//! Two integrators are provided, both exact in the thermodynamic limit:
//!
//! * [`langevin`] — the classical (simulated-annealing) Langevin equations
//!   for the correlation `C(t, t')`, response `R(t, t')`, Lagrange
//!   multiplier `z(t)` and energy density `ε(t)`;
//! * [`keldysh`] — the real-time quantum-annealing equations for the same
//!   quantities, integrated with the three-point stencil in the
//!   time-dependent kinetic coefficient `s_K(t)`.
//!
//! A finite-N Monte Carlo integrator ([`oracle`]) validates the mean-field
//! solver at small system sizes, and [`analysis`] fits residual-energy
//! sweeps `ε(τ) ≈ ε_∞ + C τ^{-α}`.
//!
//! See the crate `examples/` directory for one runnable program per
//! capability; the `pspin` binary wraps the same entry points as CLI
//! subcommands.

pub mod analysis;
pub mod config;
pub mod driver;
pub mod error;
pub mod keldysh;
pub mod langevin;
pub mod model;
pub mod oracle;
pub mod output;
pub mod schedule;
pub mod trace;
pub mod two_time;

pub use error::Error;
pub use model::MixtureSpec;
pub use schedule::{Schedule, ScheduleKind, Stiffness, TimeGrid};
pub use trace::SolverTrace;
pub use two_time::TwoTimeField;

/// Crate version string embedded in every output file header.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
