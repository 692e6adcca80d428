//! Finite-N validation of the mean-field solver.
//!
//! Runs a batch of finite-N Langevin simulations (explicit Gaussian
//! couplings, Euler-Maruyama with spherical projection) for a short
//! p = 3 quench and compares the sample-averaged energy density against
//! the thermodynamic-limit solver on the same time window.

use pspin::oracle::{self, OracleParams};
use pspin::schedule::{Schedule, ScheduleKind, TimeGrid};
use pspin::{langevin, MixtureSpec};

fn main() {
    let spec = MixtureSpec::pure(3).unwrap();
    let t_max = 3.0;
    let sched = Schedule::new(ScheduleKind::NaiveQuench, t_max).unwrap();

    let params =
        OracleParams { n_spins: 64, n_samples: 32, base_seed: 42, dt: 0.01, t_max };
    let curves = oracle::run(&spec, &sched, &params).unwrap();

    let solver_dt = 0.02;
    let grid = TimeGrid::new(solver_dt, t_max).unwrap();
    let sol = langevin::solve(&spec, &sched, &grid, None).unwrap();

    let stride = (solver_dt / params.dt).round() as usize;
    println!(
        "N = {}, {} samples vs mean-field solver",
        params.n_spins, params.n_samples
    );
    println!("{:>6} {:>12} {:>12} {:>10}", "t", "oracle", "solver", "dev/stderr");
    let mut max_dev: f64 = 0.0;
    for (k, &eps_solver) in sol.trace.energy.iter().enumerate() {
        let oi = k * stride;
        let dev = (curves.energy_mean[oi] - eps_solver).abs();
        max_dev = max_dev.max(dev);
        if k % 25 == 0 {
            let stderr = curves.energy_stderr[oi].max(1e-12);
            println!(
                "{:>6.2} {:>12.5} {:>12.5} {:>10.2}",
                sol.trace.times[k],
                curves.energy_mean[oi],
                eps_solver,
                dev / stderr
            );
        }
    }
    println!("\nmax |deviation| = {max_dev:.5}");
}
