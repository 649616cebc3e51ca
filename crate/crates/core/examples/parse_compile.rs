//! Parses formulas and an argument file, then prints the compiled clauses.

use argsim::cnf::{compile_argument, compile_formula, Namespace};
use argsim::syntax::{parse_argument, parse_formula, render};

fn main() {
    for text in [
        "forall x. Dog(x) -> exists y. (Bone(y) & Loves(x, y))",
        "~(P(a) & Q(a))",
        "P <-> Q",
        "exists x. forall y. R(x, y)",
    ] {
        let f = parse_formula(text).expect("well-formed");
        println!("{text}\n  parsed:   {}", render(&f));
        for c in compile_formula(&f, &mut Namespace::new()).iter() {
            println!("  clause:   {c}");
        }
    }

    match parse_formula("forall x. P(x) & Q(y)") {
        Ok(_) => unreachable!(),
        Err(e) => println!("\nrejected: {e}"),
    }

    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/a1.json");
    let arg = parse_argument(&std::fs::read_to_string(path).unwrap()).unwrap();
    let compiled = compile_argument(&arg);
    println!("\n{} support:\n{}", compiled.id, compiled.support.render_lines());
    println!("{} claim:\n{}", compiled.id, compiled.claim.render_lines());
}
