//! Shared generators and loaders for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use argsim::cnf::{compile_argument, Clause, ClauseSet, CompiledArgument};
use argsim::syntax::{parse_argument, Formula, Term};
use argsim::weights::{ComparisonWeights, ValidateOptions};
use argsim::ArgumentWeights;
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

pub fn load(name: &str) -> CompiledArgument {
    compile_argument(&parse_argument(&fixture(name)).unwrap())
}

pub fn t1t2() -> (CompiledArgument, CompiledArgument, ArgumentWeights, ArgumentWeights) {
    let (t1, t2) = (load("t1.json"), load("t2.json"));
    let w = ComparisonWeights::from_json(&fixture("t1t2.w.json")).unwrap();
    let (w1, w2) = w.resolve(&t1, &t2, ValidateOptions::default()).unwrap();
    (t1, t2, w1, w2)
}

pub fn depth(f: &Formula) -> usize {
    match f {
        Formula::Atom(..) => 0,
        Formula::Not(a) | Formula::ForAll(_, a) | Formula::Exists(_, a) => 1 + depth(a),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            1 + depth(a).max(depth(b))
        }
    }
}

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["x", "y", "z"]).prop_map(Term::var),
        prop::sample::select(vec!["a", "b", "c"]).prop_map(Term::constant),
    ];
    prop_oneof![
        3 => leaf.clone(),
        1 => (prop::sample::select(vec!["f", "g"]), leaf).prop_map(|(f, t)| Term::func(f, vec![t])),
    ]
}

fn atom() -> impl Strategy<Value = Formula> {
    (prop::sample::select(vec!["P", "Q", "R"]), prop::collection::vec(term(), 0..=2))
        .prop_map(|(p, args)| Formula::atom(p, args))
}

/// Formulas over x, y, z that may have free variables.
fn open_formula() -> impl Strategy<Value = Formula> {
    atom().prop_recursive(4, 24, 2, |inner| {
        let var = prop::sample::select(vec!["x", "y", "z"]);
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::iff(a, b)),
            (var.clone(), inner.clone()).prop_map(|(v, a)| Formula::forall(v, a)),
            (var, inner).prop_map(|(v, a)| Formula::exists(v, a)),
        ]
    })
}

/// Closed formulas of depth at most 6: free variables are bound at the top.
pub fn sentence() -> impl Strategy<Value = Formula> {
    (open_formula(), prop::collection::vec(any::<bool>(), 3))
        .prop_map(|(f, kinds)| {
            let free: Vec<String> = f.free_variables().into_iter().collect();
            free.into_iter().zip(kinds).fold(f, |body, (v, universal)| {
                if universal {
                    Formula::forall(v, body)
                } else {
                    Formula::exists(v, body)
                }
            })
        })
        .prop_filter("depth at most 6", |f| depth(f) <= 6)
}

/// Quantifier-free ground formulas over at most five atoms.
pub fn ground_formula() -> impl Strategy<Value = Formula> {
    let atom = prop::sample::select(vec!["P", "Q(a)", "R(a, b)", "Q(b)", "S"]).prop_map(|s| match s {
        "Q(a)" => Formula::atom("Q", vec![Term::constant("a")]),
        "Q(b)" => Formula::atom("Q", vec![Term::constant("b")]),
        "R(a, b)" => Formula::atom("R", vec![Term::constant("a"), Term::constant("b")]),
        p => Formula::atom(p, vec![]),
    });
    atom.prop_recursive(5, 32, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
        ]
    })
}

/// `n` deterministic samples of a strategy.
pub fn samples<S: Strategy>(s: S, n: usize) -> Vec<S::Value> {
    let mut runner = TestRunner::deterministic();
    (0..n).map(|_| s.new_tree(&mut runner).unwrap().current()).collect()
}

/// The clause set as a sentence: a conjunction of universally closed disjunctions.
pub fn as_formula(set: &ClauseSet) -> Formula {
    let clause = |c: &Clause| {
        let body = c
            .literals()
            .iter()
            .map(|l| Formula::atom(l.predicate.clone(), l.args.clone()))
            .reduce(Formula::or)
            .unwrap();
        c.variables().into_iter().rev().fold(body, |b, v| Formula::forall(v, b))
    };
    set.iter().map(clause).reduce(Formula::and).unwrap_or_else(Formula::verum)
}

pub fn atoms_of(f: &Formula, out: &mut BTreeSet<String>) {
    match f {
        Formula::Atom(..) => {
            out.insert(f.to_string());
        }
        Formula::Not(a) | Formula::ForAll(_, a) | Formula::Exists(_, a) => atoms_of(a, out),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            atoms_of(a, out);
            atoms_of(b, out);
        }
    }
}

/// Truth value of a quantifier-free formula; atoms are keyed by rendering.
pub fn eval(f: &Formula, true_atoms: &BTreeSet<String>) -> bool {
    match f {
        Formula::Atom(..) => f.is_verum() || true_atoms.contains(&f.to_string()),
        Formula::Not(a) => !eval(a, true_atoms),
        Formula::And(a, b) => eval(a, true_atoms) && eval(b, true_atoms),
        Formula::Or(a, b) => eval(a, true_atoms) || eval(b, true_atoms),
        Formula::Implies(a, b) => !eval(a, true_atoms) || eval(b, true_atoms),
        Formula::Iff(a, b) => eval(a, true_atoms) == eval(b, true_atoms),
        Formula::ForAll(..) | Formula::Exists(..) => panic!("quantified formula"),
    }
}
