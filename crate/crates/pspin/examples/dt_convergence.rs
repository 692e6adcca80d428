//! Step-size convergence study.
//!
//! Both integrators are first order in the step size. This runs a fixed
//! protocol on a geometric Δt ladder, prints the final energies, and
//! Richardson-extrapolates to Δt = 0 together with the empirically
//! observed convergence order.

use pspin::schedule::{Schedule, ScheduleKind, TimeGrid};
use pspin::{analysis, keldysh, langevin, MixtureSpec};

fn main() {
    let spec = MixtureSpec::pure(3).unwrap();
    let tau = 25.0;

    let quench = Schedule::new(ScheduleKind::NaiveQuench, tau).unwrap();
    let anneal = Schedule::new(ScheduleKind::LinearAnneal, tau).unwrap();
    let ladder = [0.2, 0.1, 0.05, 0.025];

    for (label, solve) in [
        ("classical quench", Box::new(|dt: f64| {
            let grid = TimeGrid::new(dt, tau).unwrap();
            langevin::solve(&spec, &quench, &grid, None).unwrap().trace.final_energy()
        }) as Box<dyn Fn(f64) -> f64>),
        ("quantum anneal", Box::new(|dt: f64| {
            let grid = TimeGrid::new(dt, tau).unwrap();
            keldysh::solve(&spec, &anneal, &grid, None).unwrap().trace.final_energy()
        })),
    ] {
        println!("{label} (tau = {tau}):");
        let mut pairs = Vec::new();
        for &dt in &ladder {
            let eps = solve(dt);
            println!("  dt = {dt:>6}: epsilon = {eps:.8}");
            pairs.push((dt, eps));
        }
        let (eps0, order) = analysis::dt_extrapolate(&pairs).unwrap();
        println!("  extrapolated: {eps0:.8} (observed order {order:.2})\n");
    }
}
