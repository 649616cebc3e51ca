//! Audits all fourteen principles for the exact-match backend and for a
//! lookup table that is sensitive to renaming.

use argsim::audit::{run_audit, syntax_sensitive_table, GeneratorParams, Principle};
use argsim::simp::ExactMatch;

fn main() {
    let params = GeneratorParams::default();
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100);

    let eq = run_audit(&Principle::ALL, &params, n, &ExactMatch).expect("audit runs");
    println!("{}", eq.summary());

    let table = syntax_sensitive_table(&params);
    let lookup = run_audit(&Principle::ALL, &params, n, &table).expect("audit runs");
    println!("{}", lookup.summary());

    for report in [&eq, &lookup] {
        for r in &report.results {
            if let Some(v) = r.violations.first() {
                println!("{} {} seed {}: {}", report.backend, r.principle, v.case_seed, v.detail);
            }
        }
    }
}
