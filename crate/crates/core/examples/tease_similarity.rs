//! The dog/monkey teasing comparison at every level of the model.

use argsim::cnf::{Clause, ClauseSet};
use argsim::similarity::{sim_ord, sim_para, Model, SimConfig};
use argsim::simp::LookupTable;
use argsim::weights::ComponentWeights;

fn weights(tease: &str) -> ComponentWeights {
    let mut w = ComponentWeights::default();
    for (k, v) in [("AtLocation(dog, zoo)", 0.05), ("AtLocation(monkey, zoo)", 0.05), (tease, 0.9)] {
        w.clauses.insert(k.into(), v);
    }
    for (k, v) in [("Tease", 0.1), ("AtLocation", 0.1), ("dog", 0.35), ("monkey", 0.35), ("zoo", 0.1)] {
        w.symbols.insert(k.into(), v);
    }
    w
}

fn main() {
    let table = LookupTable::new([("dog", "monkey", 0.466)]).unwrap();
    let model = Model::new(SimConfig::default(), &table);

    let c1 = Clause::parse("Tease(dog, monkey)").unwrap();
    let c2 = Clause::parse("Tease(monkey, dog)").unwrap();
    let (l1, l2) = (&c1.literals()[0], &c2.literals()[0]);
    let (a, b) = (l1.arg_symbols(), l2.arg_symbols());
    let (w1, w2) = (weights("Tease(dog, monkey)"), weights("Tease(monkey, dog)"));

    println!("sim_ord          {:.3}", sim_ord(&a, &b, &table));
    println!("sim_para         {:.3}", sim_para(&a, &b, 0.8, &table));
    println!("sim_lit flat     {:.3}", model.sim_lit_flat(l1, l2));
    println!("sim_lit weighted {:.3}", model.sim_lit_weighted(l1, l2, &w1, &w2).unwrap());

    let t1 = ClauseSet::parse(&["AtLocation(dog, zoo)", "AtLocation(monkey, zoo)", "Tease(dog, monkey)"]).unwrap();
    let t2 = ClauseSet::parse(&["AtLocation(dog, zoo)", "AtLocation(monkey, zoo)", "Tease(monkey, dog)"]).unwrap();
    println!("sim_sets         {:.3}", model.sim_sets(&t1, &t2, &w1, &w2).unwrap());
    for m in model.best_matches(&t1, &t2, &w1, &w2).unwrap() {
        println!("  {:<9} {} ~ {}  weighted {:.3}  w_g {:.3}", m.direction, m.source, m.matched, m.weighted, m.w_g);
    }
}
