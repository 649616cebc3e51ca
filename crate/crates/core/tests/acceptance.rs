//! One PASS/FAIL line per acceptance criterion. Exits nonzero on any failure
//! other than the documented Reinforcement (>=) limitation.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use argsim::audit::generator::Generator;
use argsim::audit::{run_audit, syntax_sensitive_table, AuditReport, GeneratorParams, Principle, Status};
use argsim::cnf::{compile_formula, compile_set, Clause, ClauseSet, Literal, Namespace};
use argsim::explain::{bar_groups, to_svg};
use argsim::similarity::{combine, crossover_eta, sim_ord, sim_para};
use argsim::{
    bijective_equal, default_uniform, explain, CompiledArgument, Component, ExactMatch, LookupTable, Model,
    SimConfig, SymbolSimilarity, Term, Tversky,
};
use common::*;
use rand::seq::SliceRandom;

enum Outcome {
    Pass,
    Fail(String),
    /// A failure analysed and recorded in the README.
    Known(String),
}

type Check = Result<Outcome, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn close(name: &str, got: f64, want: f64, tol: f64) -> Result<(), String> {
    ensure((got - want).abs() <= tol, || format!("{name} = {got}, want {want}"))
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn golden_pipeline() -> Check {
    let start = Instant::now();
    let (t1, t2, w1, w2) = t1t2();
    let table = LookupTable::from_json(&fixture("t1t2.json")).map_err(|e| e.to_string())?;
    let model = Model::new(SimConfig::default(), &table);
    let tease = |s: &ClauseSet| -> Literal {
        s.iter().flat_map(|c| c.literals()).find(|l| l.predicate == "Tease").unwrap().clone()
    };
    let (l1, l2) = (tease(&t1.support), tease(&t2.support));
    let (a, b) = (l1.arg_symbols(), l2.arg_symbols());
    close("sim_ord", sim_ord(&a, &b, &table), 0.466, 1e-3)?;
    close("sim_para", sim_para(&a, &b, 0.8, &table), 0.573, 1e-3)?;
    close("sim_lit flat", model.sim_lit_flat(&l1, &l2), 0.786, 1e-3)?;
    let weighted = model.sim_lit_weighted(&l1, &l2, &w1.support, &w2.support).map_err(|e| e.to_string())?;
    close("sim_lit weighted", weighted, 0.587, 1e-3)?;
    let sets = model.sim_sets(&t1.support, &t2.support, &w1.support, &w2.support).map_err(|e| e.to_string())?;
    close("sim_sets", sets, 0.628, 1e-3)?;
    within(start, Duration::from_secs(1))?;
    Ok(Outcome::Pass)
}

fn eta_combination() -> Check {
    close("(0.795, 0.757) at 0.5", combine(0.5, 0.795, 0.757), 0.776, 1e-3)?;
    close("(0.795, 0.757) at 0.2", combine(0.2, 0.795, 0.757), 0.7646, 1e-3)?;
    close("(0.913, 0.653) at 0.5", combine(0.5, 0.913, 0.653), 0.783, 1e-3)?;
    close("(0.913, 0.653) at 0.2", combine(0.2, 0.913, 0.653), 0.705, 1e-3)?;
    let eta = crossover_eta(0.795, 0.757, 0.913, 0.653).ok_or("no crossover")?;
    close("crossover", eta, 0.468, 1e-3)?;
    Ok(Outcome::Pass)
}

fn cnf_golden() -> Check {
    let a = load("example1.json");
    // name the Skolem function f, then compare up to variable names
    let renamed: Vec<String> = a.support.iter().map(|c| c.to_string().replace("sk0", "f")).collect();
    let got = ClauseSet::parse(&renamed).map_err(|e| e.to_string())?.canonicalize_variables();
    let want = ClauseSet::parse(&["notDog(x) | Bone(f(x))", "notDog(x) | Loves(x, f(x))"])
        .map_err(|e| e.to_string())?
        .canonicalize_variables();
    ensure(got == want, || format!("example 1 compiled to {renamed:?}"))?;

    let formulas = samples(sentence(), 1000);
    for f in &formulas {
        ensure(depth(f) <= 6, || "sample deeper than 6".into())?;
        let cs = compile_formula(f, &mut Namespace::new());
        let rebuilt = ClauseSet::new(cs.iter().map(|c| Clause::new(c.literals().to_vec())).collect());
        let recompiled = compile_set(&[as_formula(&cs)]).canonicalize_variables();
        ensure(rebuilt == cs && recompiled == cs.canonicalize_variables(), || {
            format!("not idempotent on {}", argsim::syntax::render(f))
        })?;
    }
    Ok(Outcome::Pass)
}

fn crisp_oracle() -> Check {
    let start = Instant::now();
    let mut pairs = 0usize;
    for (preset, oracle) in [
        (Tversky::Jac, (|i, x, y| (i, x + y - i)) as fn(i64, i64, i64) -> (i64, i64)),
        (Tversky::Dic, |i, x, y| (2 * i, x + y)),
    ] {
        let model = Model::new(SimConfig { tversky: preset, ..SimConfig::default() }, &ExactMatch);
        for n in 3..=5usize {
            let atoms: Vec<Literal> = (0..n)
                .map(|i| Literal::new(format!("P{i}"), vec![Term::constant(format!("a{i}"))]))
                .collect();
            let subset = |m: u32| -> Vec<usize> { (0..n).filter(|i| m & (1 << i) != 0).collect() };
            for mx in 1u32..(1 << n) {
                for my in 1u32..(1 << n) {
                    let (x, y) = (subset(mx), subset(my));
                    let cx = Clause::new(x.iter().map(|&i| atoms[i].clone()).collect());
                    let cy = Clause::new(y.iter().map(|&i| atoms[i].clone()).collect());
                    let inter = (mx & my).count_ones() as i64;
                    let (p, q) = oracle(inter, x.len() as i64, y.len() as i64);
                    let r = num_rational::Ratio::new(p, q);
                    let want = *r.numer() as f64 / *r.denom() as f64;
                    let got = model.sim_clause_flat(&cx, &cy);
                    ensure(got.to_bits() == want.to_bits(), || format!("{preset}: {cx} ~ {cy} = {got}, want {r}"))?;
                    pairs += 1;
                }
            }
        }
    }
    ensure(pairs >= 2000, || format!("only {pairs} pairs"))?;
    within(start, Duration::from_secs(10))?;
    Ok(Outcome::Pass)
}

const REINFORCEMENT_GEQ: [Principle; 2] = [Principle::SReinforcementGeq, Principle::CReinforcementGeq];

fn axiom_suite(provider: &dyn SymbolSimilarity, expected_violation: Principle) -> Check {
    let start = Instant::now();
    let report: AuditReport =
        run_audit(&Principle::ALL, &GeneratorParams::default(), 100, provider).map_err(|e| e.to_string())?;
    within(start, Duration::from_secs(120))?;
    let mut known = Vec::new();
    for r in &report.results {
        ensure(r.cases >= 100, || format!("{}: {} cases", r.principle, r.cases))?;
        if r.principle == Principle::Nonzero || r.principle == expected_violation {
            ensure(r.status() == Status::ExpectedFail, || format!("{}: no violation found", r.principle))?;
        } else if r.status() != Status::Pass {
            if REINFORCEMENT_GEQ.contains(&r.principle) {
                known.push(format!("{} {}/{}", r.principle, r.violations.len(), r.cases));
            } else {
                return Ok(Outcome::Fail(format!("{}: {} violations", r.principle, r.violations.len())));
            }
        }
    }
    if known.is_empty() {
        Ok(Outcome::Pass)
    } else {
        Ok(Outcome::Known(format!(
            "violations in {}; flat best-match selection vs weighted aggregation",
            known.join(", ")
        )))
    }
}

fn eq_suite() -> Check {
    axiom_suite(&ExactMatch, Principle::Nonzero)
}

fn sensitive_suite() -> Check {
    let table = syntax_sensitive_table(&GeneratorParams::default());
    axiom_suite(&table, Principle::SyntaxIndependence)
}

fn characterization() -> Check {
    let model = Model::new(SimConfig::default(), &ExactMatch);
    let sim = |a: &CompiledArgument, b: &CompiledArgument| {
        model.sim_arg(a, b, &default_uniform(a), &default_uniform(b)).unwrap()
    };
    let tiny = GeneratorParams {
        predicates: 1,
        constants: 1,
        functions: 1,
        max_clauses: 1,
        max_literals: 1,
        max_arity: 1,
        ..GeneratorParams::default()
    };
    let mut g = Generator::new(GeneratorParams::default(), 100);
    let mut h = Generator::new(tiny, 101);
    for i in 0..200 {
        let g = if i % 2 == 0 { &mut g } else { &mut h };
        let v = g.vocabulary(0);
        let (a, b) = (g.argument("A", &v), g.argument("B", &v));
        let one = (sim(&a, &b) - 1.0).abs() <= 1e-12;
        ensure(one == bijective_equal(&a, &b), || format!("random pair {i}: {a:?} vs {b:?}"))?;
    }
    let mut g = Generator::new(GeneratorParams::default(), 7);
    for i in 0..50 {
        let v = g.vocabulary(0);
        let a = g.argument("A", &v);
        let mut support = a.support.clauses().to_vec();
        support.shuffle(&mut g.rng);
        let b = CompiledArgument::new("B", ClauseSet::new(support), a.claim.clone());
        ensure(bijective_equal(&a, &b) && (sim(&a, &b) - 1.0).abs() <= 1e-12, || format!("constructed pair {i}"))?;
    }
    Ok(Outcome::Pass)
}

fn explanation_consistency() -> Check {
    let mut g = Generator::new(GeneratorParams::default(), 11);
    let model = Model::new(SimConfig::default(), &ExactMatch);
    for i in 0..100 {
        let v = g.vocabulary(0);
        let (a, b) = (g.argument("A", &v), g.argument("B", &v));
        let (wa, wb) = (g.weights(&a), g.weights(&b));
        let e = explain(&model, &a, &b, &wa, &wb).map_err(|e| e.to_string())?;
        let direct = model.sim_arg(&a, &b, &wa, &wb).map_err(|e| e.to_string())?;
        close(&format!("pair {i} recomputed"), e.recompute(), direct, 1e-12)?;
        for c in Component::BOTH {
            close(&format!("pair {i} proportions"), e.component(c).proportion_sum(), 1.0, 1e-9)?;
        }
    }
    let (t1, t2, w1, w2) = t1t2();
    let table = LookupTable::from_json(&fixture("t1t2.json")).map_err(|e| e.to_string())?;
    let e = explain(&Model::new(SimConfig::default(), &table), &t1, &t2, &w1, &w2).map_err(|e| e.to_string())?;
    let mut p: Vec<f64> = bar_groups(&e.support).iter().map(|g| g.proportion).collect();
    p.sort_by(f64::total_cmp);
    ensure(p.len() == 3, || format!("{} bars", p.len()))?;
    for (got, want) in p.iter().zip([0.05, 0.05, 0.9]) {
        close("proportion", *got, want, 1e-9)?;
    }
    ensure(to_svg(&e).contains(r#"class="score" data-score="0.628"#), || "no 0.628 reference line".into())?;
    Ok(Outcome::Pass)
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("golden pipeline T1/T2", golden_pipeline),
        ("eta combination and crossover", eta_combination),
        ("CNF golden and idempotence", cnf_golden),
        ("crisp Tversky oracle", crisp_oracle),
        ("axiom suite, exact-match family", eq_suite),
        ("axiom suite, syntax-sensitive family", sensitive_suite),
        ("characterization", characterization),
        ("explanation consistency", explanation_consistency),
    ];
    let mut unexpected = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = match catch_unwind(AssertUnwindSafe(check)) {
            Ok(Ok(o)) => o,
            Ok(Err(msg)) => Outcome::Fail(msg),
            Err(_) => Outcome::Fail("panicked".into()),
        };
        match outcome {
            Outcome::Pass => println!("PASS {} {name}", i + 1),
            Outcome::Known(msg) => println!("FAIL {} {name}: {msg} (known limitation)", i + 1),
            Outcome::Fail(msg) => {
                unexpected += 1;
                println!("FAIL {} {name}: {msg}", i + 1);
            }
        }
    }
    if unexpected > 0 {
        std::process::exit(1);
    }
}
