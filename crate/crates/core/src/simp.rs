//! Symbol similarity backends (`simP`): exact match, lookup table, embedding cache.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimPError {
    #[error("symbol `{0}` has no embedding")]
    MissingSymbol(String),
    #[error("score {score} for ({a}, {b}) outside [0, 1]")]
    OutOfRange { a: String, b: String, score: f64 },
    #[error("conflicting scores for ({a}, {b}): {first} and {second}")]
    Conflict {
        a: String,
        b: String,
        first: f64,
        second: f64,
    },
    #[error("self-pair ({0}, {0}) must score 1, got {1}")]
    SelfPair(String, f64),
    #[error("vector for `{symbol}` has dimension {got}, expected {expected}")]
    Dimension {
        symbol: String,
        got: usize,
        expected: usize,
    },
    #[error("vector for `{0}` is zero or not finite")]
    DegenerateVector(String),
    #[error("unknown backend `{0}` (expected eq, lookup:<file> or embedding:<file>)")]
    UnknownBackend(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed file: {0}")]
    Format(#[from] serde_json::Error),
}

/// A symmetric similarity on symbol strings with values in [0, 1] and
/// `score(t, t) = 1`.
pub trait SymbolSimilarity: Send + Sync {
    fn score(&self, a: &str, b: &str) -> f64;

    /// Symbols this backend cannot score. Empty for total backends.
    fn missing(&self, _symbols: &BTreeSet<String>) -> Vec<String> {
        Vec::new()
    }

    /// Fails on the first symbol the backend cannot score.
    fn require(&self, symbols: &BTreeSet<String>) -> Result<(), SimPError> {
        match self.missing(symbols).into_iter().next() {
            Some(s) => Err(SimPError::MissingSymbol(s)),
            None => Ok(()),
        }
    }

    /// True when the score only depends on whether the symbols are equal, so
    /// any bijective renaming leaves it unchanged.
    fn syntax_independent(&self) -> bool {
        false
    }

    /// Short label used in reports.
    fn label(&self) -> String;
}

/// 1 for byte-equal symbols, 0 otherwise.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactMatch;

pub fn sim_eq(a: &str, b: &str) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

impl SymbolSimilarity for ExactMatch {
    fn score(&self, a: &str, b: &str) -> f64 {
        sim_eq(a, b)
    }

    fn syntax_independent(&self) -> bool {
        true
    }

    fn label(&self) -> String {
        "eq".into()
    }
}

/// Explicit symmetric table; absent pairs score `default_missing`.
#[derive(Debug, Clone, PartialEq)]
pub struct LookupTable {
    entries: BTreeMap<(String, String), f64>,
    pub default_missing: f64,
}

#[derive(Serialize, Deserialize)]
struct LookupFile {
    pairs: Vec<(String, String, f64)>,
}

fn key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

impl LookupTable {
    pub fn new<I, S>(pairs: I) -> Result<Self, SimPError>
    where
        I: IntoIterator<Item = (S, S, f64)>,
        S: AsRef<str>,
    {
        let mut entries = BTreeMap::new();
        for (a, b, score) in pairs {
            let (a, b) = (a.as_ref(), b.as_ref());
            if !(0.0..=1.0).contains(&score) {
                return Err(SimPError::OutOfRange {
                    a: a.into(),
                    b: b.into(),
                    score,
                });
            }
            if a == b {
                if score != 1.0 {
                    return Err(SimPError::SelfPair(a.into(), score));
                }
                continue;
            }
            if let Some(&first) = entries.get(&key(a, b)) {
                if first != score {
                    return Err(SimPError::Conflict {
                        a: a.into(),
                        b: b.into(),
                        first,
                        second: score,
                    });
                }
            }
            entries.insert(key(a, b), score);
        }
        Ok(LookupTable {
            entries,
            default_missing: 0.0,
        })
    }

    /// Reads `{"pairs": [["dog", "monkey", 0.466], ...]}`.
    pub fn from_json(text: &str) -> Result<Self, SimPError> {
        let f: LookupFile = serde_json::from_str(text)?;
        LookupTable::new(f.pairs)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, SimPError> {
        Self::from_json(&read(path.as_ref())?)
    }

    pub fn to_json(&self) -> String {
        let pairs = self
            .entries
            .iter()
            .map(|((a, b), s)| (a.clone(), b.clone(), *s))
            .collect();
        serde_json::to_string_pretty(&LookupFile { pairs }).expect("serializable")
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl SymbolSimilarity for LookupTable {
    fn score(&self, a: &str, b: &str) -> f64 {
        if a == b {
            return 1.0;
        }
        self.entries
            .get(&key(a, b))
            .copied()
            .unwrap_or(self.default_missing)
    }

    fn label(&self) -> String {
        format!("lookup({} pairs)", self.entries.len())
    }
}

/// Precomputed symbol vectors scored by clamped cosine.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingCache {
    pub model_tag: String,
    dim: usize,
    vectors: BTreeMap<String, Vec<f64>>,
    norms: BTreeMap<String, f64>,
}

#[derive(Serialize, Deserialize)]
struct EmbeddingFile {
    model: String,
    dim: usize,
    vectors: BTreeMap<String, Vec<f64>>,
}

impl EmbeddingCache {
    pub fn new(
        model_tag: impl Into<String>,
        dim: usize,
        vectors: BTreeMap<String, Vec<f64>>,
    ) -> Result<Self, SimPError> {
        let mut norms = BTreeMap::new();
        for (symbol, v) in &vectors {
            if v.len() != dim {
                return Err(SimPError::Dimension {
                    symbol: symbol.clone(),
                    got: v.len(),
                    expected: dim,
                });
            }
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if !norm.is_finite() || norm == 0.0 {
                return Err(SimPError::DegenerateVector(symbol.clone()));
            }
            norms.insert(symbol.clone(), norm);
        }
        Ok(EmbeddingCache {
            model_tag: model_tag.into(),
            dim,
            vectors,
            norms,
        })
    }

    /// Reads `{"model": "<tag>", "dim": d, "vectors": {"dog": [...], ...}}`.
    pub fn from_json(text: &str) -> Result<Self, SimPError> {
        let f: EmbeddingFile = serde_json::from_str(text)?;
        EmbeddingCache::new(f.model, f.dim, f.vectors)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, SimPError> {
        Self::from_json(&read(path.as_ref())?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&EmbeddingFile {
            model: self.model_tag.clone(),
            dim: self.dim,
            vectors: self.vectors.clone(),
        })
        .expect("serializable")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.vectors.keys().map(String::as_str)
    }

    /// `max(0, cos(v_a, v_b))`, or an error naming the first absent symbol.
    pub fn try_score(&self, a: &str, b: &str) -> Result<f64, SimPError> {
        let va = self.vectors.get(a).ok_or_else(|| SimPError::MissingSymbol(a.into()))?;
        let vb = self.vectors.get(b).ok_or_else(|| SimPError::MissingSymbol(b.into()))?;
        if a == b {
            return Ok(1.0);
        }
        let dot: f64 = va.iter().zip(vb).map(|(x, y)| x * y).sum();
        let cos = dot / (self.norms[a] * self.norms[b]);
        Ok(cos.clamp(0.0, 1.0))
    }
}

impl SymbolSimilarity for EmbeddingCache {
    /// Absent symbols score 0; callers are expected to [`require`](SymbolSimilarity::require) first.
    fn score(&self, a: &str, b: &str) -> f64 {
        self.try_score(a, b).unwrap_or(0.0)
    }

    fn missing(&self, symbols: &BTreeSet<String>) -> Vec<String> {
        symbols
            .iter()
            .filter(|s| !self.vectors.contains_key(*s))
            .cloned()
            .collect()
    }

    fn label(&self) -> String {
        format!("embedding({})", self.model_tag)
    }
}

fn read(path: &Path) -> Result<String, SimPError> {
    std::fs::read_to_string(path).map_err(|source| SimPError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Builds a backend from `eq`, `lookup:<file>` or `embedding:<file>`.
pub fn load_backend(name: &str) -> Result<Box<dyn SymbolSimilarity>, SimPError> {
    if name == "eq" {
        return Ok(Box::new(ExactMatch));
    }
    match name.split_once(':') {
        Some(("lookup", path)) => Ok(Box::new(LookupTable::load(path)?)),
        Some(("embedding", path)) => Ok(Box::new(EmbeddingCache::load(path)?)),
        _ => Err(SimPError::UnknownBackend(name.into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn table() -> LookupTable {
        LookupTable::from_json(r#"{"pairs": [["dog", "monkey", 0.466]]}"#).unwrap()
    }

    #[test]
    fn exact_match() {
        assert_eq!(sim_eq("dog", "dog"), 1.0);
        assert_eq!(sim_eq("dog", "monkey"), 0.0);
        assert_eq!(sim_eq("Tease", "notTease"), 0.0);
    }

    #[test]
    fn lookup() {
        let t = table();
        assert_eq!(t.score("monkey", "dog"), 0.466);
        assert_eq!(t.score("dog", "monkey"), 0.466);
        assert_eq!(t.score("zoo", "zoo"), 1.0);
        assert_eq!(t.score("dog", "banana"), 0.0);
        assert_eq!(LookupTable::from_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn lookup_validation() {
        assert!(matches!(
            LookupTable::new([("a", "b", 1.5)]),
            Err(SimPError::OutOfRange { .. })
        ));
        assert!(matches!(
            LookupTable::new([("a", "b", 0.5), ("b", "a", 0.4)]),
            Err(SimPError::Conflict { .. })
        ));
        assert!(matches!(LookupTable::new([("a", "a", 0.5)]), Err(SimPError::SelfPair(..))));
        assert!(LookupTable::new([("a", "b", 0.5), ("b", "a", 0.5)]).is_ok());
    }

    fn cache() -> EmbeddingCache {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        EmbeddingCache::from_json(&format!(
            r#"{{"model":"test","dim":2,"vectors":{{"a":[1,0],"b":[0,1],"c":[{h},{h}],"d":[-1,0]}}}}"#
        ))
        .unwrap()
    }

    #[test]
    fn embedding_cosine() {
        let c = cache();
        assert_eq!(c.score("a", "a"), 1.0);
        assert_eq!(c.score("a", "b"), 0.0);
        assert!((c.score("a", "c") - 0.5f64.sqrt()).abs() < 1e-12);
        assert_eq!(c.score("a", "d"), 0.0, "negative cosine clamps to 0");
        assert!(matches!(c.try_score("a", "zebra"), Err(SimPError::MissingSymbol(s)) if s == "zebra"));
        let vocab: BTreeSet<String> = ["a", "zebra"].iter().map(|s| s.to_string()).collect();
        assert!(c.require(&vocab).is_err());
        assert_eq!(EmbeddingCache::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn embedding_validation() {
        assert!(matches!(
            EmbeddingCache::from_json(r#"{"model":"m","dim":2,"vectors":{"a":[1,0,0]}}"#),
            Err(SimPError::Dimension { .. })
        ));
        assert!(matches!(
            EmbeddingCache::from_json(r#"{"model":"m","dim":2,"vectors":{"a":[0,0]}}"#),
            Err(SimPError::DegenerateVector(_))
        ));
        assert!(matches!(EmbeddingCache::from_json("{}"), Err(SimPError::Format(_))));
    }

    #[test]
    fn backend_names() {
        assert_eq!(load_backend("eq").unwrap().label(), "eq");
        assert!(matches!(load_backend("sbert"), Err(SimPError::UnknownBackend(_))));
        assert!(matches!(load_backend("lookup:/no/such/file"), Err(SimPError::Io { .. })));
    }

    fn symbol() -> impl Strategy<Value = String> {
        prop::sample::select(vec!["a", "b", "c", "d", "dog", "monkey", "zoo"]).prop_map(String::from)
    }

    proptest! {
        #[test]
        fn providers_are_reflexive_symmetric_bounded(x in symbol(), y in symbol(),
                vs in prop::collection::vec(prop::collection::vec(-1.0f64..1.0, 3), 7)) {
            let names = ["a", "b", "c", "d", "dog", "monkey", "zoo"];
            let vectors: BTreeMap<String, Vec<f64>> = names.iter().zip(&vs)
                .map(|(n, v)| (n.to_string(), v.iter().map(|x| x + 2.0).collect()))
                .collect();
            let emb = EmbeddingCache::new("p", 3, vectors).unwrap();
            let lookup = LookupTable::new([("a", "b", 0.3), ("dog", "monkey", 0.466), ("c", "zoo", 1.0)]).unwrap();
            let providers: [&dyn SymbolSimilarity; 3] = [&ExactMatch, &lookup, &emb];
            for p in providers {
                prop_assert_eq!(p.score(&x, &x), 1.0);
                prop_assert_eq!(p.score(&x, &y), p.score(&y, &x));
                let s = p.score(&x, &y);
                prop_assert!((0.0..=1.0).contains(&s));
            }
        }
    }
}
