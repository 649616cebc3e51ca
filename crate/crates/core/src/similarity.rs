//! The four-level similarity model: symbols, literals, clauses, clause sets,
//! combined into an argument score with the support/claim factor `eta`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cnf::{Clause, ClauseSet, CompiledArgument, Component, Literal};
use crate::simp::{SimPError, SymbolSimilarity};
use crate::weights::{ArgumentWeights, ComponentWeights, MissingWeight};

/// Scores closer than this are treated as tied when choosing best matches.
pub const TIE_EPSILON: f64 = 1e-12;

/// Tversky coefficients `(alpha, beta)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tversky {
    Jac,
    Dic,
    Sor,
    Adb,
    Ss,
    Custom { alpha: f64, beta: f64 },
}

impl Tversky {
    pub const PRESETS: [Tversky; 5] = [Tversky::Jac, Tversky::Dic, Tversky::Sor, Tversky::Adb, Tversky::Ss];

    pub fn coefficients(self) -> (f64, f64) {
        match self {
            Tversky::Jac => (1.0, 1.0),
            Tversky::Dic => (0.5, 0.5),
            Tversky::Sor => (0.25, 0.25),
            Tversky::Adb => (0.125, 0.125),
            Tversky::Ss => (2.0, 2.0),
            Tversky::Custom { alpha, beta } => (alpha, beta),
        }
    }
}

impl fmt::Display for Tversky {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tversky::Jac => f.write_str("jac"),
            Tversky::Dic => f.write_str("dic"),
            Tversky::Sor => f.write_str("sor"),
            Tversky::Adb => f.write_str("adb"),
            Tversky::Ss => f.write_str("ss"),
            Tversky::Custom { alpha, beta } => write!(f, "tversky({alpha},{beta})"),
        }
    }
}

impl FromStr for Tversky {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "jac" => Ok(Tversky::Jac),
            "dic" => Ok(Tversky::Dic),
            "sor" => Ok(Tversky::Sor),
            "adb" => Ok(Tversky::Adb),
            "ss" => Ok(Tversky::Ss),
            _ => Err(format!("unknown preset `{s}` (expected jac, dic, sor, adb or ss)")),
        }
    }
}

/// How the two clause weights of a matched pair combine into `w_g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairWeight {
    Avg,
    Prod,
}

impl PairWeight {
    pub fn combine(self, a: f64, b: f64) -> f64 {
        match self {
            PairWeight::Avg => (a + b) / 2.0,
            PairWeight::Prod => a * b,
        }
    }
}

impl fmt::Display for PairWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairWeight::Avg => "avg",
            PairWeight::Prod => "prod",
        })
    }
}

impl FromStr for PairWeight {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "avg" => Ok(PairWeight::Avg),
            "prod" => Ok(PairWeight::Prod),
            _ => Err(format!("unknown pair weight `{s}` (expected avg or prod)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub lambda: f64,
    pub eta: f64,
    pub tversky: Tversky,
    pub pair_weight: PairWeight,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            lambda: 0.8,
            eta: 0.5,
            tversky: Tversky::Dic,
            pair_weight: PairWeight::Avg,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("lambda must lie in (0, 1), got {0}")]
    Lambda(f64),
    #[error("eta must lie in (0, 1), got {0}")]
    Eta(f64),
    #[error("tversky coefficients must be finite and non-negative, got ({0}, {1})")]
    Coefficients(f64, f64),
}

pub fn in_open_unit(x: f64) -> bool {
    x > 0.0 && x < 1.0
}

impl SimConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !in_open_unit(self.lambda) {
            return Err(ConfigError::Lambda(self.lambda));
        }
        if !in_open_unit(self.eta) {
            return Err(ConfigError::Eta(self.eta));
        }
        let (a, b) = self.tversky.coefficients();
        if !(a >= 0.0 && b >= 0.0 && a.is_finite() && b.is_finite()) {
            return Err(ConfigError::Coefficients(a, b));
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum SimError {
    #[error(transparent)]
    Weight(#[from] MissingWeight),
    #[error(transparent)]
    Symbol(#[from] SimPError),
    #[error(transparent)]
    Config(#[from] ConfigError),
}

/// Index of the first element of `ys` maximizing `simP(x, y)`.
pub fn best(x: &str, ys: &[String], p: &dyn SymbolSimilarity) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, y) in ys.iter().enumerate() {
        let s = p.score(x, y);
        if best.is_none_or(|(_, b)| s > b) {
            best = Some((i, s));
        }
    }
    best.map(|(i, _)| i)
}

/// Mean positional similarity over the shorter length.
/// Both empty gives 1, exactly one empty gives 0.
pub fn sim_ord(a: &[String], b: &[String], p: &dyn SymbolSimilarity) -> f64 {
    let n = a.len().min(b.len());
    if n == 0 {
        return if a.is_empty() && b.is_empty() { 1.0 } else { 0.0 };
    }
    a.iter().zip(b).map(|(x, y)| p.score(x, y)).sum::<f64>() / n as f64
}

/// Best-match similarity in both directions. Both empty gives 1.
pub fn sim_unord(a: &[String], b: &[String], p: &dyn SymbolSimilarity) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 1.0;
    }
    let half = |xs: &[String], ys: &[String]| -> f64 {
        xs.iter()
            .map(|x| best(x, ys, p).map_or(0.0, |j| p.score(x, &ys[j])))
            .sum()
    };
    (half(a, b) + half(b, a)) / (a.len() + b.len()) as f64
}

pub fn sim_para(a: &[String], b: &[String], lambda: f64, p: &dyn SymbolSimilarity) -> f64 {
    lambda * sim_ord(a, b, p) + (1.0 - lambda) * sim_unord(a, b, p)
}

pub fn sim_lit_flat(l1: &Literal, l2: &Literal, lambda: f64, p: &dyn SymbolSimilarity) -> f64 {
    let (a, b) = (l1.arg_symbols(), l2.arg_symbols());
    0.5 * (p.score(&l1.predicate, &l2.predicate) + sim_para(&a, &b, lambda, p))
}

/// Argument-weight mass `(w_ord, w_unord)` of two term vectors.
pub fn term_weights(
    a: &[String],
    b: &[String],
    p: &dyn SymbolSimilarity,
    wa: &ComponentWeights,
    wb: &ComponentWeights,
) -> Result<(f64, f64), MissingWeight> {
    let mut w_ord = 0.0;
    for (x, y) in a.iter().zip(b) {
        w_ord += wa.symbol(x)? * wb.symbol(y)?;
    }
    // halves summed separately so swapping the two sides is bit-exact
    let mut forward = 0.0;
    for x in a {
        if let Some(j) = best(x, b, p) {
            forward += wa.symbol(x)? * wb.symbol(&b[j])?;
        }
    }
    let mut backward = 0.0;
    for y in b {
        if let Some(i) = best(y, a, p) {
            backward += wb.symbol(y)? * wa.symbol(&a[i])?;
        }
    }
    Ok((w_ord, forward + backward))
}

/// Weighted literal similarity; `w1` holds the weights of `l1`'s side and
/// `w2` those of `l2`'s side. A zero denominator falls back to the flat score.
pub fn sim_lit_weighted(
    l1: &Literal,
    l2: &Literal,
    lambda: f64,
    p: &dyn SymbolSimilarity,
    w1: &ComponentWeights,
    w2: &ComponentWeights,
) -> Result<f64, MissingWeight> {
    let (a, b) = (l1.arg_symbols(), l2.arg_symbols());
    let wpq = w1.symbol(&l1.predicate)? * w2.symbol(&l2.predicate)?;
    let (w_ord, w_unord) = term_weights(&a, &b, p, w1, w2)?;
    let w_args = lambda * w_ord + (1.0 - lambda) * w_unord;
    let den = wpq + w_args;
    if den == 0.0 {
        return Ok(sim_lit_flat(l1, l2, lambda, p));
    }
    let num = wpq * p.score(&l1.predicate, &l2.predicate) + sim_para(&a, &b, lambda, p) * w_args;
    Ok(num / den)
}

/// `max_{y in Y} sim(x, y)`, 0 for an empty `Y`.
pub fn membership<T>(x: &T, ys: &[T], sim: impl Fn(&T, &T) -> f64) -> f64 {
    ys.iter().map(|y| sim(x, y)).fold(0.0, f64::max)
}

/// Fuzzy Tversky ratio `A / (A + alpha B + beta C)` for a fallible element
/// similarity. Returns 0 when `A = 0`.
pub fn try_tversky<T, E>(
    xs: &[T],
    ys: &[T],
    alpha: f64,
    beta: f64,
    sim: impl Fn(&T, &T) -> Result<f64, E>,
) -> Result<f64, E> {
    let member = |x: &T, zs: &[T]| -> Result<f64, E> {
        let mut m = 0.0f64;
        for z in zs {
            m = m.max(sim(x, z)?);
        }
        Ok(m)
    };
    let mx = xs.iter().map(|x| member(x, ys)).collect::<Result<Vec<_>, E>>()?;
    let my = ys.iter().map(|y| member(y, xs)).collect::<Result<Vec<_>, E>>()?;
    let a = 0.5 * (mx.iter().sum::<f64>() + my.iter().sum::<f64>());
    if a == 0.0 {
        return Ok(0.0);
    }
    let b: f64 = mx.iter().map(|m| 1.0 - m).sum();
    let c: f64 = my.iter().map(|m| 1.0 - m).sum();
    Ok(a / (a + alpha * b + beta * c))
}

pub fn tversky<T>(xs: &[T], ys: &[T], alpha: f64, beta: f64, sim: impl Fn(&T, &T) -> f64) -> f64 {
    try_tversky(xs, ys, alpha, beta, |x, y| Ok::<f64, std::convert::Infallible>(sim(x, y)))
        .unwrap_or_else(|e| match e {})
}

/// Which literal similarity a clause comparison uses.
#[derive(Debug, Clone, Copy)]
pub enum ClauseMode<'w> {
    Flat,
    /// Weights of the first clause's side, then of the second's.
    Weighted(&'w ComponentWeights, &'w ComponentWeights),
}

/// Direction of a best-match pair: a clause of the first set matched into
/// the second, or the reverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        })
    }
}

/// One best-match pair with its scores.
#[derive(Debug, Clone, PartialEq)]
pub struct Match<'c> {
    pub source: &'c Clause,
    pub matched: &'c Clause,
    pub direction: Direction,
    pub flat: f64,
    pub weighted: f64,
    pub w_g: f64,
}

/// A similarity model: configuration plus symbol similarity backend.
#[derive(Clone, Copy)]
pub struct Model<'p> {
    pub config: SimConfig,
    pub provider: &'p dyn SymbolSimilarity,
}

impl<'p> Model<'p> {
    pub fn new(config: SimConfig, provider: &'p dyn SymbolSimilarity) -> Self {
        Model { config, provider }
    }

    pub fn sim_lit_flat(&self, l1: &Literal, l2: &Literal) -> f64 {
        sim_lit_flat(l1, l2, self.config.lambda, self.provider)
    }

    pub fn sim_lit_weighted(
        &self,
        l1: &Literal,
        l2: &Literal,
        w1: &ComponentWeights,
        w2: &ComponentWeights,
    ) -> Result<f64, MissingWeight> {
        sim_lit_weighted(l1, l2, self.config.lambda, self.provider, w1, w2)
    }

    pub fn sim_clause(&self, c1: &Clause, c2: &Clause, mode: ClauseMode<'_>) -> Result<f64, MissingWeight> {
        let (alpha, beta) = self.config.tversky.coefficients();
        match mode {
            ClauseMode::Flat => Ok(tversky(c1.literals(), c2.literals(), alpha, beta, |x, y| {
                self.sim_lit_flat(x, y)
            })),
            ClauseMode::Weighted(w1, w2) => weighted_tversky(c1.literals(), c2.literals(), alpha, beta, |x, y| {
                self.sim_lit_weighted(x, y, w1, w2)
            }),
        }
    }

    pub fn sim_clause_flat(&self, c1: &Clause, c2: &Clause) -> f64 {
        self.sim_clause(c1, c2, ClauseMode::Flat).expect("flat mode needs no weights")
    }

    pub fn sim_clause_weighted(
        &self,
        c1: &Clause,
        c2: &Clause,
        w1: &ComponentWeights,
        w2: &ComponentWeights,
    ) -> Result<f64, MissingWeight> {
        self.sim_clause(c1, c2, ClauseMode::Weighted(w1, w2))
    }

    /// Best-match pairs with their flat, weighted and pair-weight scores:
    /// every clause of `phi` matched into `psi` (forward), then every clause of
    /// `psi` matched into `phi` (backward). The match maximizes flat
    /// similarity; near-ties prefer higher weighted similarity, then higher
    /// `w_g`, then the canonically smaller clause.
    pub fn best_matches<'c>(
        &self,
        phi: &'c ClauseSet,
        psi: &'c ClauseSet,
        w_phi: &ComponentWeights,
        w_psi: &ComponentWeights,
    ) -> Result<Vec<Match<'c>>, MissingWeight> {
        let mut out = Vec::with_capacity(phi.len() + psi.len());
        for (from, into, w_from, w_into, direction) in [
            (phi, psi, w_phi, w_psi, Direction::Forward),
            (psi, phi, w_psi, w_phi, Direction::Backward),
        ] {
            for c1 in from {
                let mut candidates = Vec::with_capacity(into.len());
                for c2 in into {
                    let flat = self.sim_clause_flat(c1, c2);
                    let weighted = self.sim_clause_weighted(c1, c2, w_from, w_into)?;
                    let w_g = self
                        .config
                        .pair_weight
                        .combine(w_from.clause(c1)?, w_into.clause(c2)?);
                    candidates.push(Match {
                        source: c1,
                        matched: c2,
                        direction,
                        flat,
                        weighted,
                        w_g,
                    });
                }
                if let Some(m) = pick_best(candidates) {
                    out.push(m);
                }
            }
        }
        Ok(out)
    }

    /// The clause pairs chosen by [`best_matches`](Self::best_matches).
    pub fn best_match_pairs<'c>(
        &self,
        phi: &'c ClauseSet,
        psi: &'c ClauseSet,
        w_phi: &ComponentWeights,
        w_psi: &ComponentWeights,
    ) -> Result<Vec<(&'c Clause, &'c Clause)>, MissingWeight> {
        Ok(self
            .best_matches(phi, psi, w_phi, w_psi)?
            .into_iter()
            .map(|m| (m.source, m.matched))
            .collect())
    }

    /// Weighted average best-match similarity of two clause sets.
    pub fn sim_sets(
        &self,
        phi: &ClauseSet,
        psi: &ClauseSet,
        w_phi: &ComponentWeights,
        w_psi: &ComponentWeights,
    ) -> Result<f64, MissingWeight> {
        Ok(set_score(phi, psi, &self.best_matches(phi, psi, w_phi, w_psi)?))
    }

    /// Support and claim scores.
    pub fn component_scores(
        &self,
        a: &CompiledArgument,
        b: &CompiledArgument,
        wa: &ArgumentWeights,
        wb: &ArgumentWeights,
    ) -> Result<(f64, f64), SimError> {
        self.config.validate()?;
        let mut scores = [0.0; 2];
        for (i, c) in Component::BOTH.into_iter().enumerate() {
            let (x, y) = (a.component(c), b.component(c));
            let mut vocab = x.symbols();
            vocab.extend(y.symbols());
            self.provider.require(&vocab)?;
            scores[i] = self.sim_sets(x, y, wa.component(c), wb.component(c))?;
        }
        Ok((scores[0], scores[1]))
    }

    pub fn sim_arg(
        &self,
        a: &CompiledArgument,
        b: &CompiledArgument,
        wa: &ArgumentWeights,
        wb: &ArgumentWeights,
    ) -> Result<f64, SimError> {
        let (s, c) = self.component_scores(a, b, wa, wb)?;
        Ok(combine(self.config.eta, s, c))
    }
}

fn weighted_tversky(
    xs: &[Literal],
    ys: &[Literal],
    alpha: f64,
    beta: f64,
    sim: impl Fn(&Literal, &Literal) -> Result<f64, MissingWeight>,
) -> Result<f64, MissingWeight> {
    // one evaluation per literal pair serves both memberships: the weighted
    // literal score is symmetric when the two sides' weights swap with it
    let mut mx = vec![0.0f64; xs.len()];
    let mut my = vec![0.0f64; ys.len()];
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in ys.iter().enumerate() {
            let s = sim(x, y)?;
            mx[i] = mx[i].max(s);
            my[j] = my[j].max(s);
        }
    }
    let a = 0.5 * (mx.iter().sum::<f64>() + my.iter().sum::<f64>());
    if a == 0.0 {
        return Ok(0.0);
    }
    let b: f64 = mx.iter().map(|m| 1.0 - m).sum();
    let c: f64 = my.iter().map(|m| 1.0 - m).sum();
    Ok(a / (a + alpha * b + beta * c))
}

fn pick_best(candidates: Vec<Match<'_>>) -> Option<Match<'_>> {
    let top = candidates.iter().map(|m| m.flat).fold(f64::NEG_INFINITY, f64::max);
    candidates
        .into_iter()
        .filter(|m| m.flat >= top - TIE_EPSILON)
        .reduce(|best, m| {
            let better = if (m.weighted - best.weighted).abs() > TIE_EPSILON {
                m.weighted > best.weighted
            } else if (m.w_g - best.w_g).abs() > TIE_EPSILON {
                m.w_g > best.w_g
            } else {
                false
            };
            if better {
                m
            } else {
                best
            }
        })
}

/// `sum w_g * weighted / sum w_g` over the matches, with the empty-set
/// conventions: both sets empty gives 1, one empty gives 0, zero total weight gives 0.
pub fn set_score(phi: &ClauseSet, psi: &ClauseSet, matches: &[Match<'_>]) -> f64 {
    if phi.is_empty() && psi.is_empty() {
        return 1.0;
    }
    if phi.is_empty() || psi.is_empty() {
        return 0.0;
    }
    let total: f64 = matches.iter().map(|m| m.w_g).sum();
    if total == 0.0 {
        return 0.0;
    }
    matches.iter().map(|m| m.w_g * m.weighted).sum::<f64>() / total
}

/// `eta * support + (1 - eta) * claim`.
pub fn combine(eta: f64, support: f64, claim: f64) -> f64 {
    eta * support + (1.0 - eta) * claim
}

/// The `eta` in (0, 1) at which two arguments' combined scores coincide, if any.
pub fn crossover_eta(sup1: f64, cl1: f64, sup2: f64, cl2: f64) -> Option<f64> {
    let slope = (sup1 - cl1) - (sup2 - cl2);
    if slope.abs() < TIE_EPSILON {
        return None;
    }
    let eta = (cl2 - cl1) / slope;
    in_open_unit(eta).then_some(eta)
}
