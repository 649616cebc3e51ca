//! How the support/claim balance eta reorders two comparisons.

use argsim::similarity::{combine, crossover_eta};

fn main() {
    let (a1a2, a2a3) = ((0.795, 0.757), (0.913, 0.653));
    for eta in [0.2, 0.4, 0.5, 0.6, 0.8] {
        let s12 = combine(eta, a1a2.0, a1a2.1);
        let s23 = combine(eta, a2a3.0, a2a3.1);
        let closer = if s12 > s23 { "A1" } else { "A3" };
        println!("eta {eta:.1}: sim(A1, A2) = {s12:.4}  sim(A2, A3) = {s23:.4}  A2 is closer to {closer}");
    }
    match crossover_eta(a1a2.0, a1a2.1, a2a3.0, a2a3.1) {
        Some(eta) => println!("crossover at eta = {eta:.3}"),
        None => println!("no crossover in (0, 1)"),
    }
}
