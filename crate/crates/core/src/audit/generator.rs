//! Seeded random arguments over small vocabularies, and bijective renamings.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cnf::{Clause, ClauseSet, CompiledArgument, Literal, NEGATION_PREFIX};
use crate::syntax::Term;
use crate::weights::{ArgumentWeights, ComponentWeights};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorParams {
    pub seed: u64,
    pub predicates: usize,
    pub constants: usize,
    pub functions: usize,
    pub max_clauses: usize,
    pub max_literals: usize,
    pub max_arity: usize,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        GeneratorParams {
            seed: 0,
            predicates: 4,
            constants: 4,
            functions: 2,
            max_clauses: 4,
            max_literals: 3,
            max_arity: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("infeasible generator parameters: {0}")]
    Infeasible(String),
}

impl GeneratorParams {
    pub fn validate(&self) -> Result<(), GeneratorError> {
        for (name, v) in [
            ("predicates", self.predicates),
            ("constants", self.constants),
            ("functions", self.functions),
            ("max_clauses", self.max_clauses),
            ("max_literals", self.max_literals),
            ("max_arity", self.max_arity),
        ] {
            if v == 0 {
                return Err(GeneratorError::Infeasible(format!("{name} must be at least 1")));
            }
        }
        Ok(())
    }
}

/// Name families of the disjoint vocabulary pools.
const POOLS: [(&str, &str, &str, &str); 3] = [("P", "c", "f", "v"), ("Q", "d", "g", "w"), ("S", "e", "h", "u")];

/// Vocabulary of one pool: predicates with arities, constants, functions.
#[derive(Debug, Clone, PartialEq)]
pub struct Vocabulary {
    pub predicates: Vec<(String, usize)>,
    pub constants: Vec<String>,
    pub functions: Vec<String>,
    pub variable_prefix: String,
}

impl Vocabulary {
    /// Pool `index` (0, 1 or 2); pools never share a name.
    pub fn pool(index: usize, params: &GeneratorParams, rng: &mut impl Rng) -> Vocabulary {
        let (p, c, f, v) = POOLS[index];
        Vocabulary {
            predicates: (0..params.predicates)
                .map(|i| (format!("{p}{i}"), rng.gen_range(1..=params.max_arity)))
                .collect(),
            constants: (0..params.constants).map(|i| format!("{c}{i}")).collect(),
            functions: (0..params.functions).map(|i| format!("{f}{i}")).collect(),
            variable_prefix: v.to_string(),
        }
    }

    /// Every base name: predicates, constants and functions.
    pub fn names(&self) -> Vec<String> {
        self.predicates
            .iter()
            .map(|(p, _)| p.clone())
            .chain(self.constants.iter().cloned())
            .chain(self.functions.iter().cloned())
            .collect()
    }
}

/// Random clause material drawn from a seeded stream.
pub struct Generator {
    pub rng: ChaCha8Rng,
    pub params: GeneratorParams,
}

impl Generator {
    pub fn new(params: GeneratorParams, seed: u64) -> Self {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            params,
        }
    }

    pub fn vocabulary(&mut self, pool: usize) -> Vocabulary {
        Vocabulary::pool(pool, &self.params, &mut self.rng)
    }

    fn term(&mut self, v: &Vocabulary) -> Term {
        let roll: f64 = self.rng.gen();
        let leaf = |g: &mut Generator| {
            if g.rng.gen_bool(0.3) {
                Term::var(format!("x{}", g.rng.gen_range(0..3)))
            } else {
                Term::constant(v.constants.choose(&mut g.rng).unwrap().clone())
            }
        };
        if roll < 0.15 {
            let f = v.functions.choose(&mut self.rng).unwrap().clone();
            Term::func(f, vec![leaf(self)])
        } else {
            leaf(self)
        }
    }

    pub fn literal(&mut self, v: &Vocabulary) -> Literal {
        let (p, arity) = v.predicates.choose(&mut self.rng).unwrap().clone();
        let name = if self.rng.gen_bool(0.3) {
            format!("{NEGATION_PREFIX}{p}")
        } else {
            p
        };
        Literal::new(name, (0..arity).map(|_| self.term(v)).collect())
    }

    pub fn clause(&mut self, v: &Vocabulary) -> Clause {
        let n = self.rng.gen_range(1..=self.params.max_literals);
        Clause::new((0..n).map(|_| self.literal(v)).collect()).canonicalize_variables_with(&v.variable_prefix)
    }

    pub fn clause_set(&mut self, v: &Vocabulary, max: usize) -> ClauseSet {
        let n = self.rng.gen_range(1..=max.max(1));
        ClauseSet::new((0..n).map(|_| self.clause(v)).collect())
    }

    pub fn argument(&mut self, id: &str, v: &Vocabulary) -> CompiledArgument {
        let support = self.clause_set(v, self.params.max_clauses);
        let claim = self.clause_set(v, self.params.max_clauses.min(2));
        CompiledArgument::new(id, support, claim)
    }

    /// Random positive weights, normalized per component.
    pub fn weights(&mut self, a: &CompiledArgument) -> ArgumentWeights {
        let mut component = |set: &ClauseSet| {
            let clauses = normalized(set.iter().map(|c| (c.to_string(), self.rng.gen_range(0.05..1.0))));
            let symbols = normalized(set.symbols().into_iter().map(|s| (s, self.rng.gen_range(0.05..1.0))));
            ComponentWeights { clauses, symbols }
        };
        ArgumentWeights {
            support: component(&a.support),
            claim: component(&a.claim),
        }
    }
}

/// Rescales values to sum to 1 (left unchanged when they sum to 0).
pub fn normalized(items: impl IntoIterator<Item = (String, f64)>) -> BTreeMap<String, f64> {
    let map: BTreeMap<String, f64> = items.into_iter().collect();
    let total: f64 = map.values().sum();
    if total == 0.0 {
        return map;
    }
    map.into_iter().map(|(k, w)| (k, w / total)).collect()
}

/// A non-trivial argument over pool 0, deterministic in `params.seed`.
pub fn gen_argument(params: &GeneratorParams) -> CompiledArgument {
    let mut g = Generator::new(*params, params.seed);
    let v = g.vocabulary(0);
    g.argument("A", &v)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenameError {
    #[error("renaming is not injective: `{0}` and `{1}` both map to `{2}`")]
    NotInjective(String, String, String),
    #[error("renaming has no image for `{0}`")]
    Partial(String),
}

/// A bijection over base predicate names and term symbols. Variables are
/// left unchanged; a negated predicate `notP` follows `P`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Renaming {
    pub map: BTreeMap<String, String>,
}

impl Renaming {
    pub fn new(map: BTreeMap<String, String>) -> Result<Renaming, RenameError> {
        let mut seen: BTreeMap<&str, &str> = BTreeMap::new();
        for (k, v) in &map {
            if let Some(prev) = seen.insert(v, k) {
                return Err(RenameError::NotInjective(prev.into(), k.clone(), v.clone()));
            }
        }
        Ok(Renaming { map })
    }

    pub fn identity<I: IntoIterator<Item = String>>(names: I) -> Renaming {
        Renaming {
            map: names.into_iter().map(|n| (n.clone(), n)).collect(),
        }
    }

    pub fn inverse(&self) -> Renaming {
        Renaming {
            map: self.map.iter().map(|(k, v)| (v.clone(), k.clone())).collect(),
        }
    }

    /// A random permutation within each name class of `v`.
    pub fn random(v: &Vocabulary, rng: &mut impl Rng) -> Renaming {
        let mut map = BTreeMap::new();
        // predicates only permute among equal arities so literals stay well-formed
        let arities: BTreeSet<usize> = v.predicates.iter().map(|(_, a)| *a).collect();
        for arity in arities {
            let names: Vec<String> = v
                .predicates
                .iter()
                .filter(|(_, a)| *a == arity)
                .map(|(p, _)| p.clone())
                .collect();
            permute_into(&names, rng, &mut map);
        }
        permute_into(&v.constants, rng, &mut map);
        permute_into(&v.functions, rng, &mut map);
        Renaming { map }
    }

    fn predicate(&self, name: &str) -> Result<String, RenameError> {
        if let Some(n) = self.map.get(name) {
            return Ok(n.clone());
        }
        match name.strip_prefix(NEGATION_PREFIX).and_then(|base| self.map.get(base)) {
            Some(n) => Ok(format!("{NEGATION_PREFIX}{n}")),
            None => Err(RenameError::Partial(name.to_string())),
        }
    }

    fn term(&self, t: &Term) -> Result<Term, RenameError> {
        let image = |n: &str| self.map.get(n).cloned().ok_or_else(|| RenameError::Partial(n.to_string()));
        Ok(match t {
            Term::Variable(_) => t.clone(),
            Term::Constant(n) => Term::Constant(image(n)?),
            Term::Function(n, args) => Term::Function(
                image(n)?,
                args.iter().map(|a| self.term(a)).collect::<Result<_, _>>()?,
            ),
        })
    }

    fn literal(&self, l: &Literal) -> Result<Literal, RenameError> {
        Ok(Literal::new(
            self.predicate(&l.predicate)?,
            l.args.iter().map(|a| self.term(a)).collect::<Result<_, _>>()?,
        ))
    }

    pub fn clause(&self, c: &Clause) -> Result<Clause, RenameError> {
        Ok(Clause::new(
            c.literals().iter().map(|l| self.literal(l)).collect::<Result<_, _>>()?,
        ))
    }

    fn clause_set(&self, s: &ClauseSet) -> Result<ClauseSet, RenameError> {
        Ok(ClauseSet::new(s.iter().map(|c| self.clause(c)).collect::<Result<_, _>>()?))
    }

    /// Carries weights over: each rendered symbol and clause of `a` is keyed
    /// by its image.
    pub fn weights(&self, a: &CompiledArgument, w: &ArgumentWeights) -> Result<ArgumentWeights, RenameError> {
        let mut out = w.clone();
        for comp in crate::cnf::Component::BOTH {
            let (src, dst) = (w.component(comp), out.component_mut(comp));
            dst.clauses.clear();
            dst.symbols.clear();
            for c in a.component(comp) {
                let image = self.clause(c)?;
                if let Some(&x) = src.clauses.get(&c.to_string()) {
                    dst.clauses.insert(image.to_string(), x);
                }
                for l in c.literals() {
                    let li = self.literal(l)?;
                    if let Some(&x) = src.symbols.get(&l.predicate) {
                        dst.symbols.insert(li.predicate.clone(), x);
                    }
                    for (s, si) in l.arg_symbols().iter().zip(li.arg_symbols()) {
                        if let Some(&x) = src.symbols.get(s) {
                            dst.symbols.insert(si, x);
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

fn permute_into(names: &[String], rng: &mut impl Rng, map: &mut BTreeMap<String, String>) {
    let mut images = names.to_vec();
    images.shuffle(rng);
    map.extend(names.iter().cloned().zip(images));
}

/// Applies `pi` to every predicate and term symbol of `a`, then re-normalizes.
pub fn rename(pi: &Renaming, a: &CompiledArgument) -> Result<CompiledArgument, RenameError> {
    let mut out = CompiledArgument::new(a.id.clone(), pi.clause_set(&a.support)?, pi.clause_set(&a.claim)?);
    out.multi_clause_claim = a.multi_clause_claim;
    Ok(out)
}
