//! Audit outcomes for both backend families over the default generator.

use argsim::audit::{
    check_principle, replay, run_audit, syntax_sensitive_table, GeneratorParams, Principle, Status,
};
use argsim::{ExactMatch, SymbolSimilarity};

const REINFORCEMENT_GEQ: [Principle; 2] = [Principle::SReinforcementGeq, Principle::CReinforcementGeq];

fn audit_family(provider: &dyn SymbolSimilarity, expected_fail: &[Principle]) {
    let params = GeneratorParams::default();
    let report = run_audit(&Principle::ALL, &params, 100, provider).unwrap();
    for r in &report.results {
        assert!(r.cases >= 100, "{}", r.principle);
        if expected_fail.contains(&r.principle) {
            assert_eq!(r.status(), Status::ExpectedFail, "{}", r.principle);
        } else if REINFORCEMENT_GEQ.contains(&r.principle) {
            // flat best matches can move to a clause with a higher weighted
            // score; see tests/reinforcement_counterexample.rs
            assert_eq!(r.status(), Status::Fail, "{}", r.principle);
        } else {
            assert_eq!(r.status(), Status::Pass, "{}: {:?}", r.principle, r.violations.first());
        }
        for v in &r.violations {
            let again = replay(r.principle, &params, v.case_seed, provider).unwrap();
            assert!(!again.held);
            assert_eq!(again.scores, v.scores);
        }
    }
}

#[test]
fn exact_match_family() {
    audit_family(&ExactMatch, &[Principle::Nonzero]);
}

#[test]
fn syntax_sensitive_family() {
    let table = syntax_sensitive_table(&GeneratorParams::default());
    audit_family(&table, &[Principle::Nonzero, Principle::SyntaxIndependence]);
}

#[test]
fn strict_reinforcement_holds_over_more_seeds() {
    for seed in 1..4 {
        let params = GeneratorParams { seed, ..GeneratorParams::default() };
        for p in [Principle::SReinforcementGt, Principle::CReinforcementGt] {
            let r = check_principle(p, &params, 200, &ExactMatch).unwrap();
            assert_eq!(r.status(), Status::Pass, "{p} seed {seed}");
        }
    }
}

#[test]
fn reports_serialize_reproducers() {
    let report = run_audit(&[Principle::Nonzero], &GeneratorParams::default(), 5, &ExactMatch).unwrap();
    let json = report.to_json();
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let violation = &v["results"][0]["violations"][0];
    assert!(violation["case_seed"].is_u64());
    assert_eq!(violation["arguments"].as_array().unwrap().len(), 2);
    assert!(violation["arguments"][0]["weights"]["support"]["symbols"]["s0"] == 0.0);
}
