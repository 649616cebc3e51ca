//! Writes the T1/T2 score decomposition as JSON, CSV and SVG.

use argsim::cnf::compile_argument;
use argsim::explain::{bar_groups, emit, explain};
use argsim::similarity::{Model, SimConfig};
use argsim::simp::LookupTable;
use argsim::syntax::parse_argument;
use argsim::weights::{ComparisonWeights, ValidateOptions};

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn main() {
    let t1 = compile_argument(&parse_argument(&fixture("t1.json")).unwrap());
    let t2 = compile_argument(&parse_argument(&fixture("t2.json")).unwrap());
    let weights = ComparisonWeights::from_json(&fixture("t1t2.w.json")).unwrap();
    let (w1, w2) = weights.resolve(&t1, &t2, ValidateOptions::default()).unwrap();
    let table = LookupTable::from_json(&fixture("t1t2.json")).unwrap();
    let model = Model::new(SimConfig::default(), &table);

    let e = explain(&model, &t1, &t2, &w1, &w2).unwrap();
    println!("score {:.3} (recomputed {:.3})", e.score, e.recompute());
    for g in bar_groups(&e.support) {
        println!("  {:<50} weighted {:.3}  proportion {:.3}", g.label, g.weighted, g.proportion);
    }

    let dir = std::env::temp_dir().join("argsim-explain");
    std::fs::create_dir_all(&dir).unwrap();
    for ext in ["json", "csv", "svg"] {
        let path = dir.join(format!("t1t2.{ext}"));
        emit(&e, &path).unwrap();
        println!("wrote {}", path.display());
    }
}
