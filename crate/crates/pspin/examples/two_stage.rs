//! Two-stage quench on the 3 + 14 mixture.
//!
//! A naive quench of this mixture gets stuck at an energy controlled by
//! the threshold; holding the coupling at an intermediate s0 for the
//! first half of the protocol before switching to s = 1 relaxes below
//! it. This scans s0 at fixed runtime and reports the gain over the
//! naive quench.

use pspin::schedule::{Schedule, ScheduleKind, TimeGrid};
use pspin::{langevin, MixtureSpec};

fn main() {
    let spec = MixtureSpec::new(vec![(3, 1.0), (14, 1.0)]).unwrap();
    let tau = 50.0;
    let dt = 0.02;
    let grid = TimeGrid::new(dt, tau).unwrap();

    let quench = Schedule::new(ScheduleKind::NaiveQuench, tau).unwrap();
    let eps_quench = langevin::solve(&spec, &quench, &grid, None).unwrap().trace.final_energy();
    println!("threshold:      {:.6}", spec.threshold_energy());
    println!("naive quench:   {eps_quench:.6}\n");

    let mut best = (f64::NAN, f64::INFINITY);
    for s0 in [0.3, 0.4, 0.5, 0.6, 0.7, 0.8] {
        let sched = Schedule::new(ScheduleKind::TwoStage { s0 }, tau).unwrap();
        let eps = langevin::solve(&spec, &sched, &grid, None).unwrap().trace.final_energy();
        println!("s0 = {s0}: epsilon = {eps:.6} (gain {:+.6})", eps_quench - eps);
        if eps < best.1 {
            best = (s0, eps);
        }
    }
    println!("\nbest s0 = {} with epsilon = {:.6}", best.0, best.1);
}
