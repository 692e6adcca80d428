//! Quantum anneal of the pure p = 3 model.
//!
//! The system starts in the ground state of the decoupled kinetic term
//! (s = 0) and the couplings are ramped linearly to s = 1 over a time
//! tau. The integrator evolves the Keldysh correlation and response
//! kernels; the final energy approaches the threshold energy from above
//! as tau grows, with a different power-law exponent than the classical
//! protocols.

use pspin::schedule::{Schedule, ScheduleKind, TimeGrid};
use pspin::{keldysh, MixtureSpec};

fn main() {
    let spec = MixtureSpec::pure(3).unwrap();
    let tau = 50.0;
    let dt = 0.04;
    let sched = Schedule::new(ScheduleKind::LinearAnneal, tau).unwrap();
    let grid = TimeGrid::new(dt, tau).unwrap();

    let sol = keldysh::solve(&spec, &sched, &grid, None).unwrap();
    let trace = &sol.trace;
    let curvature = trace.curvature.as_ref().unwrap();

    println!("threshold: {:.6}", spec.threshold_energy());
    println!("{:>8} {:>8} {:>12} {:>12} {:>12}", "t", "s", "epsilon", "z", "A");
    for &t in &[0.0, 10.0, 20.0, 30.0, 40.0, 49.0, 50.0] {
        let k = (t / dt).round() as usize;
        // z and A are absent at t = tau where the stiffness diverges
        let z = trace.z[k].map_or("-".into(), |v| format!("{v:.6}"));
        let a = if curvature[k].is_finite() { format!("{:.6}", curvature[k]) } else { "-".into() };
        println!("{:>8} {:>8.3} {:>12.6} {:>12} {:>12}", t, trace.s[k], trace.energy[k], z, a);
    }
    println!("\nfinal energy: {:.6}", trace.final_energy());
}
