//! With crisp literal similarities the fuzzy Tversky ratio is the classical
//! set ratio, checked against exact rational arithmetic.

use argsim::cnf::{Clause, Literal};
use argsim::{ExactMatch, Model, SimConfig, Term, Tversky};
use num_rational::Ratio;

/// Atoms with pairwise distinct predicates and arguments, so every literal
/// pair scores exactly 0 or 1.
fn atoms(n: usize) -> Vec<Literal> {
    (0..n)
        .map(|i| Literal::new(format!("P{i}"), vec![Term::constant(format!("a{i}"))]))
        .collect()
}

fn subsets(universe: &[Literal]) -> Vec<Vec<usize>> {
    (1u32..(1 << universe.len()))
        .map(|m| (0..universe.len()).filter(|i| m & (1 << i) != 0).collect())
        .collect()
}

fn to_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn check(preset: Tversky, oracle: impl Fn(i64, i64, i64) -> Ratio<i64>) -> usize {
    let model = Model::new(SimConfig { tversky: preset, ..SimConfig::default() }, &ExactMatch);
    let mut pairs = 0;
    for n in 3..=5 {
        let universe = atoms(n);
        let sets = subsets(&universe);
        for x in &sets {
            for y in &sets {
                let cx = Clause::new(x.iter().map(|&i| universe[i].clone()).collect());
                let cy = Clause::new(y.iter().map(|&i| universe[i].clone()).collect());
                let inter = x.iter().filter(|i| y.contains(i)).count() as i64;
                let expected = to_f64(oracle(inter, x.len() as i64, y.len() as i64));
                let got = model.sim_clause_flat(&cx, &cy);
                assert_eq!(got.to_bits(), expected.to_bits(), "{preset} {cx} ~ {cy}");
                pairs += 1;
            }
        }
    }
    pairs
}

#[test]
fn jaccard_equals_set_jaccard() {
    let pairs = check(Tversky::Jac, |i, x, y| Ratio::new(i, x + y - i));
    assert!(pairs >= 1000);
}

#[test]
fn dice_equals_set_dice() {
    let pairs = check(Tversky::Dic, |i, x, y| Ratio::new(2 * i, x + y));
    assert!(pairs >= 1000);
}
