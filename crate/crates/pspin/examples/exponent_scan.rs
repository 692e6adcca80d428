//! Decay-exponent scan across pure models (long-running).
//!
//! For each degree p, sweeps the protocol runtime for both the
//! classical quench and the quantum anneal, fits the residual-energy
//! power law ε(τ) = ε_th + C τ^{-α}, and tabulates the exponents. With
//! the default settings each degree costs a few minutes of single-core
//! time; the full scan is meant to run unattended.
//!
//! Usage:
//!   cargo run --release --example exponent_scan [-- p_min p_max]
//!
//! Defaults: p in 3..=6. Larger p values work unchanged, the dynamics
//! just stiffens and benefits from a smaller quantum dt.

use pspin::schedule::{Schedule, ScheduleKind, TimeGrid};
use pspin::{analysis, keldysh, langevin, MixtureSpec};

fn fit_sweep(
    taus: &[f64],
    mut eps_at: impl FnMut(f64) -> f64,
) -> (f64, f64) {
    let points: Vec<(f64, f64)> = taus.iter().map(|&t| (t, eps_at(t))).collect();
    let fit = analysis::fit_power_law(&points, 4).unwrap();
    (fit.epsilon_inf, fit.alpha)
}

fn main() {
    let args: Vec<u32> = std::env::args().skip(1).map(|a| a.parse().unwrap()).collect();
    let (p_min, p_max) = match args.as_slice() {
        [] => (3, 6),
        [lo, hi] => (*lo, *hi),
        _ => {
            eprintln!("usage: exponent_scan [p_min p_max]");
            std::process::exit(2);
        }
    };

    let sa_taus = [12.5, 25.0, 50.0, 100.0, 200.0];
    let qa_taus = [25.0, 50.0, 100.0, 200.0];
    println!(
        "{:>4} {:>12} {:>10} {:>10} {:>12} {:>12}",
        "p", "eps_th", "alpha_SA", "alpha_QA", "eps_inf_SA", "eps_inf_QA"
    );
    for p in p_min..=p_max {
        let spec = MixtureSpec::pure(p).unwrap();
        let (eps_sa, alpha_sa) = fit_sweep(&sa_taus, |tau| {
            let sched = Schedule::new(ScheduleKind::NaiveQuench, tau).unwrap();
            let grid = TimeGrid::new(0.1, tau).unwrap();
            langevin::solve(&spec, &sched, &grid, None).unwrap().trace.final_energy()
        });
        let (eps_qa, alpha_qa) = fit_sweep(&qa_taus, |tau| {
            let sched = Schedule::new(ScheduleKind::LinearAnneal, tau).unwrap();
            let grid = TimeGrid::new(0.04, tau).unwrap();
            keldysh::solve(&spec, &sched, &grid, None).unwrap().trace.final_energy()
        });
        println!(
            "{:>4} {:>12.6} {:>10.4} {:>10.4} {:>12.6} {:>12.6}",
            p,
            spec.threshold_energy(),
            alpha_sa,
            alpha_qa,
            eps_sa,
            eps_qa
        );
    }
}
