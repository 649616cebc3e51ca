//! Contextual weights: `w_p` over symbols and `w_c` over clauses, per
//! argument and per component, attached to one comparison.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cnf::{Clause, ClauseSet, CompiledArgument, Component};

/// Allowed deviation of a component's weight sum from 1.
pub const SUM_TOLERANCE: f64 = 1e-6;

/// Weights for one component (support or claim) of one argument.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ComponentWeights {
    /// `w_c`, keyed by rendered clause.
    #[serde(default)]
    pub clauses: BTreeMap<String, f64>,
    /// `w_p` for predicates and terms.
    #[serde(default)]
    pub symbols: BTreeMap<String, f64>,
}

impl ComponentWeights {
    /// 1/n per clause and 1/m per distinct symbol.
    pub fn uniform(set: &ClauseSet) -> Self {
        let symbols = set.symbols();
        let ws = 1.0 / symbols.len().max(1) as f64;
        let wc = 1.0 / set.len().max(1) as f64;
        ComponentWeights {
            clauses: set.iter().map(|c| (c.to_string(), wc)).collect(),
            symbols: symbols.into_iter().map(|s| (s, ws)).collect(),
        }
    }

    pub fn symbol(&self, s: &str) -> Result<f64, MissingWeight> {
        self.symbols
            .get(s)
            .copied()
            .ok_or_else(|| MissingWeight::Symbol(s.to_string()))
    }

    pub fn clause(&self, c: &Clause) -> Result<f64, MissingWeight> {
        let key = c.to_string();
        self.clauses
            .get(&key)
            .copied()
            .ok_or(MissingWeight::Clause(key))
    }
}

/// Weights for both components of one argument.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ArgumentWeights {
    #[serde(default)]
    pub support: ComponentWeights,
    #[serde(default)]
    pub claim: ComponentWeights,
}

impl ArgumentWeights {
    pub fn component(&self, c: Component) -> &ComponentWeights {
        match c {
            Component::Support => &self.support,
            Component::Claim => &self.claim,
        }
    }

    pub fn component_mut(&mut self, c: Component) -> &mut ComponentWeights {
        match c {
            Component::Support => &mut self.support,
            Component::Claim => &mut self.claim,
        }
    }
}

/// Uniform weights for every component of `a`.
pub fn default_uniform(a: &CompiledArgument) -> ArgumentWeights {
    ArgumentWeights {
        support: ComponentWeights::uniform(&a.support),
        claim: ComponentWeights::uniform(&a.claim),
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MissingWeight {
    #[error("no weight for symbol `{0}`")]
    Symbol(String),
    #[error("no weight for clause `{0}`")]
    Clause(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    Sum {
        component: Component,
        kind: &'static str,
        actual: f64,
    },
    Missing {
        component: Component,
        entry: String,
    },
    Unknown {
        component: Component,
        entry: String,
    },
    Negative {
        component: Component,
        entry: String,
        weight: f64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Sum { component, kind, actual } => {
                write!(f, "{component}: {kind} weights sum to {actual}, expected 1")
            }
            Violation::Missing { component, entry } => write!(f, "{component}: no weight for `{entry}`"),
            Violation::Unknown { component, entry } => {
                write!(f, "{component}: `{entry}` does not occur in this component")
            }
            Violation::Negative { component, entry, weight } => {
                write!(f, "{component}: negative weight {weight} for `{entry}`")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum WeightError {
    #[error("invalid weights for `{id}`: {}", .violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid { id: String, violations: Vec<Violation> },
    #[error("weights file has no profile for argument `{0}`")]
    MissingProfile(String),
    #[error("weights file is for pair ({0}, {1}), not ({2}, {3})")]
    PairMismatch(String, String, String, String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed weights file: {0}")]
    Format(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ValidateOptions {
    /// Rescale each weight map to sum 1 instead of rejecting it.
    pub auto_normalize: bool,
}

/// Checks `w` against `a` and returns a completed profile (omitted variables
/// filled with 0, optionally rescaled). All violations are reported together.
pub fn validate(
    w: &ArgumentWeights,
    a: &CompiledArgument,
    opts: ValidateOptions,
) -> Result<ArgumentWeights, WeightError> {
    let mut out = w.clone();
    let mut violations = Vec::new();
    for component in Component::BOTH {
        let set = a.component(component);
        let cw = out.component_mut(component);
        for v in set.variable_symbols() {
            cw.symbols.entry(v).or_insert(0.0);
        }
        let clause_keys: Vec<String> = set.iter().map(Clause::to_string).collect();
        let symbol_keys: Vec<String> = set.symbols().into_iter().collect();
        check_map(component, "clause", &mut cw.clauses, &clause_keys, opts, &mut violations);
        check_map(component, "symbol", &mut cw.symbols, &symbol_keys, opts, &mut violations);
    }
    if violations.is_empty() {
        Ok(out)
    } else {
        Err(WeightError::Invalid {
            id: a.id.clone(),
            violations,
        })
    }
}

fn check_map(
    component: Component,
    kind: &'static str,
    map: &mut BTreeMap<String, f64>,
    expected: &[String],
    opts: ValidateOptions,
    violations: &mut Vec<Violation>,
) {
    let before = violations.len();
    for key in expected {
        if !map.contains_key(key) {
            violations.push(Violation::Missing {
                component,
                entry: key.clone(),
            });
        }
    }
    for (key, &weight) in map.iter() {
        if !expected.contains(key) {
            violations.push(Violation::Unknown {
                component,
                entry: key.clone(),
            });
        }
        if weight < 0.0 || !weight.is_finite() {
            violations.push(Violation::Negative {
                component,
                entry: key.clone(),
                weight,
            });
        }
    }
    if violations.len() > before || expected.is_empty() {
        return;
    }
    let sum: f64 = map.values().sum();
    if opts.auto_normalize && sum > 0.0 {
        map.values_mut().for_each(|w| *w /= sum);
    } else if (sum - 1.0).abs() > SUM_TOLERANCE {
        violations.push(Violation::Sum {
            component,
            kind,
            actual: sum,
        });
    }
}

/// Weights for one comparison: one profile per argument id.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonWeights {
    pub pair: (String, String),
    #[serde(flatten)]
    pub profiles: BTreeMap<String, ArgumentWeights>,
}

impl ComparisonWeights {
    pub fn uniform(a: &CompiledArgument, b: &CompiledArgument) -> Self {
        let mut profiles = BTreeMap::new();
        profiles.insert(a.id.clone(), default_uniform(a));
        profiles.insert(b.id.clone(), default_uniform(b));
        ComparisonWeights {
            pair: (a.id.clone(), b.id.clone()),
            profiles,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, WeightError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, WeightError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| WeightError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Validated profiles for `a` and `b`, in that order.
    pub fn resolve(
        &self,
        a: &CompiledArgument,
        b: &CompiledArgument,
        opts: ValidateOptions,
    ) -> Result<(ArgumentWeights, ArgumentWeights), WeightError> {
        let (p, q) = (&self.pair.0, &self.pair.1);
        let matches = (*p == a.id && *q == b.id) || (*p == b.id && *q == a.id);
        if !matches {
            return Err(WeightError::PairMismatch(
                p.clone(),
                q.clone(),
                a.id.clone(),
                b.id.clone(),
            ));
        }
        let get = |id: &str| {
            self.profiles
                .get(id)
                .ok_or_else(|| WeightError::MissingProfile(id.to_string()))
        };
        Ok((validate(get(&a.id)?, a, opts)?, validate(get(&b.id)?, b, opts)?))
    }
}
