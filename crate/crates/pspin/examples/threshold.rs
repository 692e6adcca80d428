//! Analytic threshold energies.
//!
//! For a pure p-spin model the aging dynamics relaxes toward
//! ε_th = -sqrt(2 (p-1) / p), not the ground state. Mixtures get the
//! general closed form in terms of f, f', f'' at overlap 1.

use pspin::MixtureSpec;

fn main() {
    println!("{:>6} {:>16}", "model", "epsilon_th");
    for p in 2..=14 {
        let spec = MixtureSpec::pure(p).unwrap();
        println!("{:>6} {:>16.12}", format!("p={p}"), spec.threshold_energy());
    }
    let mixed = MixtureSpec::new(vec![(3, 1.0), (14, 1.0)]).unwrap();
    println!("{:>6} {:>16.12}", "3+14", mixed.threshold_energy());
}
