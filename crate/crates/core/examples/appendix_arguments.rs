//! The three zoo arguments under contextual weights with exact matching,
//! and the ranking flip driven by eta.

use argsim::cnf::{compile_argument, CompiledArgument};
use argsim::explain::explain;
use argsim::similarity::{crossover_eta, Model, SimConfig};
use argsim::simp::ExactMatch;
use argsim::syntax::parse_argument;
use argsim::weights::{ComparisonWeights, ValidateOptions};

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn load(name: &str) -> CompiledArgument {
    compile_argument(&parse_argument(&fixture(name)).unwrap())
}

fn main() {
    let (a1, a2, a3) = (load("a1.json"), load("a2.json"), load("a3.json"));
    let model = Model::new(SimConfig::default(), &ExactMatch);
    let mut scores = Vec::new();
    for (x, y, w) in [(&a1, &a2, "a1a2.w.json"), (&a2, &a3, "a2a3.w.json")] {
        let weights = ComparisonWeights::from_json(&fixture(w)).unwrap();
        let (wx, wy) = weights.resolve(x, y, ValidateOptions::default()).unwrap();
        let e = explain(&model, x, y, &wx, &wy).unwrap();
        println!(
            "sim({}, {}): support {:.3}  claim {:.3}  eta 0.5 -> {:.3}",
            x.id, y.id, e.support.score, e.claim.score, e.score
        );
        scores.push((e.support.score, e.claim.score));
    }
    match crossover_eta(scores[0].0, scores[0].1, scores[1].0, scores[1].1) {
        Some(eta) => println!("exact-match crossover at eta = {eta:.3}"),
        None => println!("no exact-match crossover in (0, 1)"),
    }
    // component scores reported with a sentence-embedding backend
    let eta = crossover_eta(0.795, 0.757, 0.913, 0.653).unwrap();
    println!("embedding-backend crossover at eta = {eta:.3}");
}
