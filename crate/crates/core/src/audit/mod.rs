//! Property checks of the similarity principles over generated arguments.

pub mod generator;
pub mod principles;

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use generator::{gen_argument, rename, GeneratorError, GeneratorParams, RenameError, Renaming, Vocabulary};
pub use principles::{case_seed, run_case, ArgumentRecord, CaseError, Principle, Verdict, TOLERANCE};

use crate::similarity::{SimConfig, SimError};
use crate::simp::{LookupTable, SymbolSimilarity};

#[derive(Debug, Error)]
pub enum AuditError {
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error("{principle}: {source}")]
    Sim {
        principle: Principle,
        source: SimError,
    },
    #[error("{principle}: could only construct {built} of {wanted} cases; last reason: {reason}")]
    Infeasible {
        principle: Principle,
        built: usize,
        wanted: usize,
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolationRecord {
    pub case_seed: u64,
    pub config: SimConfig,
    pub detail: String,
    pub arguments: Vec<ArgumentRecord>,
    pub scores: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    ExpectedFail,
    /// Expected to fail, but no counterexample was found.
    UnexpectedPass,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::ExpectedFail => "expected-fail",
            Status::UnexpectedPass => "unexpected-pass",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrincipleResult {
    pub principle: Principle,
    pub cases: usize,
    pub skipped: usize,
    pub expected_fail: bool,
    pub violations: Vec<ViolationRecord>,
}

impl PrincipleResult {
    pub fn status(&self) -> Status {
        match (self.expected_fail, self.violations.is_empty()) {
            (false, true) => Status::Pass,
            (false, false) => Status::Fail,
            (true, false) => Status::ExpectedFail,
            (true, true) => Status::UnexpectedPass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub backend: String,
    pub params: GeneratorParams,
    pub results: Vec<PrincipleResult>,
}

impl AuditReport {
    pub fn result(&self, p: Principle) -> Option<&PrincipleResult> {
        self.results.iter().find(|r| r.principle == p)
    }

    /// True when every principle passed or failed as expected.
    pub fn conforms(&self) -> bool {
        self.results
            .iter()
            .all(|r| matches!(r.status(), Status::Pass | Status::ExpectedFail))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "backend: {}  seed: {}", self.backend, self.params.seed);
        let _ = writeln!(s, "{:<22} {:>6} {:>8} {:>11}  status", "principle", "cases", "skipped", "violations");
        for r in &self.results {
            let _ = writeln!(
                s,
                "{:<22} {:>6} {:>8} {:>11}  {}",
                r.principle.name(),
                r.cases,
                r.skipped,
                r.violations.len(),
                r.status().as_str()
            );
        }
        let count = |st: Status| self.results.iter().filter(|r| r.status() == st).count();
        let _ = writeln!(
            s,
            "{} pass, {} expected-fail, {} fail, {} unexpected-pass",
            count(Status::Pass),
            count(Status::ExpectedFail),
            count(Status::Fail),
            count(Status::UnexpectedPass)
        );
        s
    }
}

/// Runs `n` constructed cases of one principle. Seeds whose preconditions
/// cannot be built are skipped, up to ten times `n` attempts.
pub fn check_principle(
    principle: Principle,
    params: &GeneratorParams,
    n: usize,
    provider: &dyn SymbolSimilarity,
) -> Result<PrincipleResult, AuditError> {
    params.validate()?;
    let mut result = PrincipleResult {
        principle,
        cases: 0,
        skipped: 0,
        expected_fail: principle.expected_to_fail(provider),
        violations: Vec::new(),
    };
    let mut reason = String::new();
    let mut i = 0u64;
    while result.cases < n && (i as usize) < n.max(1) * 10 {
        let seed = case_seed(params.seed, principle, i);
        i += 1;
        let (config, outcome) = run_case(principle, params, seed, provider);
        match outcome {
            Ok(v) => {
                result.cases += 1;
                if !v.held {
                    result.violations.push(ViolationRecord {
                        case_seed: seed,
                        config,
                        detail: v.detail,
                        arguments: v.arguments,
                        scores: v.scores,
                    });
                }
            }
            Err(CaseError::Skip(r)) => {
                result.skipped += 1;
                reason = r;
            }
            Err(CaseError::Sim(source)) => return Err(AuditError::Sim { principle, source }),
        }
    }
    if result.cases < n {
        return Err(AuditError::Infeasible {
            principle,
            built: result.cases,
            wanted: n,
            reason,
        });
    }
    Ok(result)
}

/// Checks every principle in `principles`, one thread each.
pub fn run_audit(
    principles: &[Principle],
    params: &GeneratorParams,
    n: usize,
    provider: &dyn SymbolSimilarity,
) -> Result<AuditReport, AuditError> {
    params.validate()?;
    let results = std::thread::scope(|s| {
        let handles: Vec<_> = principles
            .iter()
            .map(|&p| s.spawn(move || check_principle(p, params, n, provider)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("audit worker panicked"))
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(AuditReport {
        backend: provider.label(),
        params: *params,
        results,
    })
}

/// Re-evaluates the case behind a recorded seed.
pub fn replay(
    principle: Principle,
    params: &GeneratorParams,
    case_seed: u64,
    provider: &dyn SymbolSimilarity,
) -> Result<Verdict, CaseError> {
    run_case(principle, params, case_seed, provider).1
}

/// A lookup table over the generator's first vocabulary pool with random
/// scores, so that bijective renamings change similarities.
pub fn syntax_sensitive_table(params: &GeneratorParams) -> LookupTable {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed ^ 0x5EED);
    let neg = crate::cnf::NEGATION_PREFIX;
    let predicates: Vec<String> = (0..params.predicates)
        .flat_map(|i| [format!("P{i}"), format!("{neg}P{i}")])
        .collect();
    let leaves: Vec<String> = (0..params.constants)
        .map(|i| format!("c{i}"))
        .chain((0..3).map(|i| format!("v{i}")))
        .collect();
    let mut terms = leaves.clone();
    for f in 0..params.functions {
        terms.extend(leaves.iter().map(|x| format!("f{f}({x})")));
    }
    let mut pairs = Vec::new();
    for class in [&predicates, &terms] {
        for (i, a) in class.iter().enumerate() {
            for b in &class[i + 1..] {
                if rng.gen_bool(0.5) {
                    let s = (rng.gen_range(0.1..0.9f64) * 1000.0).round() / 1000.0;
                    pairs.push((a.clone(), b.clone(), s));
                }
            }
        }
    }
    LookupTable::new(pairs).expect("generated scores are valid")
}
