//! Under exact matching with positive weights, a score of 1 means the two
//! arguments are equal up to variable renaming, and conversely.

mod common;

use argsim::audit::generator::Generator;
use argsim::audit::GeneratorParams;
use argsim::cnf::ClauseSet;
use argsim::syntax::parse_formula;
use argsim::{bijective_equal, compile_set, default_uniform, CompiledArgument, ExactMatch, Model, SimConfig};
use rand::seq::SliceRandom;

fn sim(a: &CompiledArgument, b: &CompiledArgument) -> f64 {
    let (wa, wb) = (default_uniform(a), default_uniform(b));
    Model::new(SimConfig::default(), &ExactMatch).sim_arg(a, b, &wa, &wb).unwrap()
}

fn compile(id: &str, premises: &[&str], claim: &str) -> CompiledArgument {
    let fs: Vec<_> = premises.iter().map(|p| parse_formula(p).unwrap()).collect();
    CompiledArgument::new(id, compile_set(&fs), compile_set(&[parse_formula(claim).unwrap()]))
}

#[test]
fn random_pairs_score_one_exactly_when_equal() {
    let tiny = GeneratorParams {
        predicates: 1,
        constants: 1,
        functions: 1,
        max_clauses: 1,
        max_literals: 1,
        max_arity: 1,
        ..GeneratorParams::default()
    };
    let mut equal = 0;
    for (i, params) in [GeneratorParams::default(), tiny].iter().enumerate() {
        let mut g = Generator::new(*params, 100 + i as u64);
        for _ in 0..100 {
            let v = g.vocabulary(0);
            let (a, b) = (g.argument("A", &v), g.argument("B", &v));
            let one = (sim(&a, &b) - 1.0).abs() <= 1e-12;
            assert_eq!(one, bijective_equal(&a, &b), "{a:?} vs {b:?}");
            equal += one as usize;
        }
    }
    assert!(equal > 0, "no equal pairs sampled");
}

#[test]
fn constructed_equal_pairs_score_one() {
    let mut g = Generator::new(GeneratorParams::default(), 7);
    for _ in 0..40 {
        let v = g.vocabulary(0);
        let a = g.argument("A", &v);
        let mut support = a.support.clauses().to_vec();
        support.shuffle(&mut g.rng);
        let b = CompiledArgument::new("B", ClauseSet::new(support), a.claim.clone());
        assert!(bijective_equal(&a, &b));
        assert!((sim(&a, &b) - 1.0).abs() <= 1e-12);
    }
    let texts = [
        (
            ["forall x. (Dog(x) -> Animal(x))", "Dog(rex)"],
            ["Dog(rex)", "forall y. (Dog(y) -> Animal(y))"],
        ),
        (
            ["forall u. exists v. Loves(u, v)", "forall w. (P(w) | Q(w))"],
            ["forall z. (Q(z) | P(z))", "forall x. exists y. Loves(x, y)"],
        ),
    ];
    for (i, (pa, pb)) in texts.iter().cycle().take(10).enumerate() {
        let a = compile("A", pa, "Animal(rex)").canonicalize_variables();
        let b = compile("B", pb, "Animal(rex)").canonicalize_variables();
        assert!(bijective_equal(&a, &b), "pair {i}");
        assert!((sim(&a, &b) - 1.0).abs() <= 1e-12, "pair {i}");
    }
}

#[test]
fn uncanonicalized_alpha_variants_score_below_one() {
    // compiled names record the premise position, so reordering premises
    // changes variable names without changing meaning
    let a = compile("A", &["Dog(rex)", "forall x. (Dog(x) -> Animal(x))"], "Animal(rex)");
    let b = compile("B", &["forall x. (Dog(x) -> Animal(x))", "Dog(rex)"], "Animal(rex)");
    assert!(bijective_equal(&a, &b));
    assert!(sim(&a, &b) < 1.0);
    let (a, b) = (a.canonicalize_variables(), b.canonicalize_variables());
    assert!((sim(&a, &b) - 1.0).abs() <= 1e-12);
}
