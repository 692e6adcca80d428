//! Residual-energy scaling: sweep the protocol runtime tau, fit
//! ε(τ) = ε_∞ + C τ^{-α}, and compare the asymptote to the analytic
//! threshold energy.

use pspin::schedule::{Schedule, ScheduleKind, TimeGrid};
use pspin::{analysis, langevin, MixtureSpec};

fn main() {
    let spec = MixtureSpec::pure(3).unwrap();
    let dt = 0.1;
    let taus = [12.5, 25.0, 50.0, 100.0, 200.0];

    let mut points = Vec::new();
    for &tau in &taus {
        let sched = Schedule::new(ScheduleKind::NaiveQuench, tau).unwrap();
        let grid = TimeGrid::new(dt, tau).unwrap();
        let eps = langevin::solve(&spec, &sched, &grid, None).unwrap().trace.final_energy();
        println!("tau = {tau:>6}: epsilon = {eps:.6}");
        points.push((tau, eps));
    }

    let fit = analysis::fit_power_law(&points, 4).unwrap();
    let eps_th = spec.threshold_energy();
    println!("\nfit: epsilon_inf = {:.6}, C = {:.4}, alpha = {:.4}", fit.epsilon_inf, fit.amplitude, fit.alpha);
    println!("threshold: {eps_th:.6} (asymptote deviation {:+.2e})", fit.epsilon_inf - eps_th);
}
