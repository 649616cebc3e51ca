//! One executable check per principle. Each case is built from a single seed
//! so that any verdict can be replayed.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::generator::{normalized, rename, GeneratorParams, Generator, Renaming};
use crate::cnf::{Clause, ClauseSet, CompiledArgument, Component, Literal};
use crate::similarity::{Model, PairWeight, SimConfig, SimError, Tversky};
use crate::simp::SymbolSimilarity;
use crate::syntax::Term;
use crate::weights::{default_uniform, ArgumentWeights};

/// Tolerance for score equalities and inequalities.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Principle {
    Maximality,
    Symmetry,
    Substitution,
    SyntaxIndependence,
    Minimality,
    Nonzero,
    SMonotony0,
    SMonotony1,
    CMonotony0,
    CMonotony1,
    SReinforcementGeq,
    SReinforcementGt,
    CReinforcementGeq,
    CReinforcementGt,
}

impl Principle {
    pub const ALL: [Principle; 14] = [
        Principle::Maximality,
        Principle::Symmetry,
        Principle::Substitution,
        Principle::SyntaxIndependence,
        Principle::Minimality,
        Principle::Nonzero,
        Principle::SMonotony0,
        Principle::SMonotony1,
        Principle::CMonotony0,
        Principle::CMonotony1,
        Principle::SReinforcementGeq,
        Principle::SReinforcementGt,
        Principle::CReinforcementGeq,
        Principle::CReinforcementGt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Principle::Maximality => "maximality",
            Principle::Symmetry => "symmetry",
            Principle::Substitution => "substitution",
            Principle::SyntaxIndependence => "syntax_independence",
            Principle::Minimality => "minimality",
            Principle::Nonzero => "nonzero",
            Principle::SMonotony0 => "s_monotony0",
            Principle::SMonotony1 => "s_monotony1",
            Principle::CMonotony0 => "c_monotony0",
            Principle::CMonotony1 => "c_monotony1",
            Principle::SReinforcementGeq => "s_reinforcement_geq",
            Principle::SReinforcementGt => "s_reinforcement_gt",
            Principle::CReinforcementGeq => "c_reinforcement_geq",
            Principle::CReinforcementGt => "c_reinforcement_gt",
        }
    }

    fn index(self) -> u64 {
        Principle::ALL.iter().position(|&p| p == self).unwrap() as u64
    }

    /// Whether a model with this backend is known not to satisfy the principle.
    pub fn expected_to_fail(self, provider: &dyn SymbolSimilarity) -> bool {
        match self {
            Principle::Nonzero => true,
            Principle::SyntaxIndependence => !provider.syntax_independent(),
            _ => false,
        }
    }
}

impl fmt::Display for Principle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Principle {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Principle::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown principle `{s}`"))
    }
}

/// Seed of case `i` of `principle` under a base seed (splitmix64 mixing).
pub fn case_seed(base: u64, principle: Principle, i: u64) -> u64 {
    splitmix(splitmix(base ^ (principle.index() + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)) ^ i)
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// λ in {0.2, 0.8}, preset in {jac, dic, ss}, g in {avg, prod}, η in {0.3, 0.5, 0.7}.
pub fn sample_config(rng: &mut impl Rng) -> SimConfig {
    SimConfig {
        lambda: *[0.2, 0.8].choose(rng).unwrap(),
        eta: *[0.3, 0.5, 0.7].choose(rng).unwrap(),
        tversky: *[Tversky::Jac, Tversky::Dic, Tversky::Ss].choose(rng).unwrap(),
        pair_weight: *[PairWeight::Avg, PairWeight::Prod].choose(rng).unwrap(),
    }
}

/// An argument with its weight profile, serialized for replay.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArgumentRecord {
    pub id: String,
    pub support: Vec<String>,
    pub claim: Vec<String>,
    pub weights: ArgumentWeights,
}

impl ArgumentRecord {
    fn new(a: &CompiledArgument, w: &ArgumentWeights) -> Self {
        let lines = |s: &ClauseSet| s.iter().map(Clause::to_string).collect();
        ArgumentRecord {
            id: a.id.clone(),
            support: lines(&a.support),
            claim: lines(&a.claim),
            weights: w.clone(),
        }
    }
}

/// The evaluated conclusion of one case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub held: bool,
    pub detail: String,
    pub arguments: Vec<ArgumentRecord>,
    pub scores: Vec<f64>,
}

#[derive(Debug)]
pub enum CaseError {
    /// The preconditions could not be constructed from this seed.
    Skip(String),
    Sim(SimError),
}

impl From<SimError> for CaseError {
    fn from(e: SimError) -> Self {
        CaseError::Sim(e)
    }
}

impl From<crate::weights::MissingWeight> for CaseError {
    fn from(e: crate::weights::MissingWeight) -> Self {
        CaseError::Sim(e.into())
    }
}

type Weighted = (CompiledArgument, ArgumentWeights);

struct Case<'p> {
    g: Generator,
    model: Model<'p>,
}

impl Case<'_> {
    fn sim(&self, a: &Weighted, b: &Weighted) -> Result<f64, SimError> {
        self.model.sim_arg(&a.0, &b.0, &a.1, &b.1)
    }

    fn random(&mut self, id: &str, pool: usize) -> Weighted {
        let v = self.g.vocabulary(pool);
        let a = self.g.argument(id, &v);
        let w = self.g.weights(&a);
        (a, w)
    }
}

fn verdict(held: bool, detail: String, args: &[&Weighted], scores: Vec<f64>) -> Verdict {
    Verdict {
        held,
        detail,
        arguments: args.iter().map(|(a, w)| ArgumentRecord::new(a, w)).collect(),
        scores,
    }
}

fn uniform(a: CompiledArgument) -> Weighted {
    let w = default_uniform(&a);
    (a, w)
}

fn with_component(a: &CompiledArgument, comp: Component, set: ClauseSet, id: &str) -> CompiledArgument {
    match comp {
        Component::Support => CompiledArgument::new(id, set, a.claim.clone()),
        Component::Claim => CompiledArgument::new(id, a.support.clone(), set),
    }
}

fn other(comp: Component) -> Component {
    match comp {
        Component::Support => Component::Claim,
        Component::Claim => Component::Support,
    }
}

/// Builds and evaluates one case. The configuration is drawn from the same
/// seed and returned alongside.
pub fn run_case(
    principle: Principle,
    params: &GeneratorParams,
    seed: u64,
    provider: &dyn SymbolSimilarity,
) -> (SimConfig, Result<Verdict, CaseError>) {
    let mut g = Generator::new(*params, seed);
    let config = sample_config(&mut g.rng);
    let mut case = Case {
        g,
        model: Model::new(config, provider),
    };
    let out = match principle {
        Principle::Maximality => maximality(&mut case),
        Principle::Symmetry => symmetry(&mut case),
        Principle::Substitution => substitution(&mut case),
        Principle::SyntaxIndependence => syntax_independence(&mut case),
        Principle::Minimality => minimality(&mut case),
        Principle::Nonzero => nonzero(&mut case),
        Principle::SMonotony0 => monotony(&mut case, Component::Support, false),
        Principle::SMonotony1 => monotony(&mut case, Component::Support, true),
        Principle::CMonotony0 => monotony(&mut case, Component::Claim, false),
        Principle::CMonotony1 => monotony(&mut case, Component::Claim, true),
        Principle::SReinforcementGeq => reinforcement(&mut case, Component::Support, false),
        Principle::SReinforcementGt => reinforcement(&mut case, Component::Support, true),
        Principle::CReinforcementGeq => reinforcement(&mut case, Component::Claim, false),
        Principle::CReinforcementGt => reinforcement(&mut case, Component::Claim, true),
    };
    (config, out)
}

fn maximality(case: &mut Case) -> Result<Verdict, CaseError> {
    let a = case.random("A", 0);
    let s = case.sim(&a, &a)?;
    Ok(verdict((s - 1.0).abs() <= TOLERANCE, format!("sim(A, A) = {s}"), &[&a], vec![s]))
}

fn symmetry(case: &mut Case) -> Result<Verdict, CaseError> {
    let a = case.random("A", 0);
    let b = case.random("B", 0);
    let (ab, ba) = (case.sim(&a, &b)?, case.sim(&b, &a)?);
    Ok(verdict(
        (ab - ba).abs() <= TOLERANCE,
        format!("sim(A, B) = {ab}, sim(B, A) = {ba}"),
        &[&a, &b],
        vec![ab, ba],
    ))
}

/// B is A rebuilt from shuffled, alpha-renamed clauses, so `sim(A, B) = 1`.
fn substitution(case: &mut Case) -> Result<Verdict, CaseError> {
    let a = case.random("A", 0);
    let mut rebuild = |set: &ClauseSet| {
        let mut clauses: Vec<Clause> = set
            .iter()
            .map(|c| c.canonicalize_variables_with("y").canonicalize_variables_with("v"))
            .collect();
        clauses.shuffle(&mut case.g.rng);
        ClauseSet::new(clauses)
    };
    let b = (CompiledArgument::new("B", rebuild(&a.0.support), rebuild(&a.0.claim)), a.1.clone());
    let c = case.random("C", 0);
    let ab = case.sim(&a, &b)?;
    if (ab - 1.0).abs() > TOLERANCE {
        return Ok(verdict(false, format!("precondition sim(A, B) = {ab} is not 1"), &[&a, &b, &c], vec![ab]));
    }
    let (ac, bc) = (case.sim(&a, &c)?, case.sim(&b, &c)?);
    Ok(verdict(
        (ac - bc).abs() <= TOLERANCE,
        format!("sim(A, C) = {ac}, sim(B, C) = {bc}"),
        &[&a, &b, &c],
        vec![ab, ac, bc],
    ))
}

fn syntax_independence(case: &mut Case) -> Result<Verdict, CaseError> {
    let v = case.g.vocabulary(0);
    let (a, b) = (case.g.argument("A", &v), case.g.argument("B", &v));
    let (wa, wb) = (case.g.weights(&a), case.g.weights(&b));
    let pi = Renaming::random(&v, &mut case.g.rng);
    let skip = |e: super::generator::RenameError| CaseError::Skip(e.to_string());
    let ra = (rename(&pi, &a).map_err(skip)?, pi.weights(&a, &wa).map_err(skip)?);
    let rb = (rename(&pi, &b).map_err(skip)?, pi.weights(&b, &wb).map_err(skip)?);
    let (a, b) = ((a, wa), (b, wb));
    let (before, after) = (case.sim(&a, &b)?, case.sim(&ra, &rb)?);
    Ok(verdict(
        (before - after).abs() <= TOLERANCE,
        format!("sim(A, B) = {before}, sim(pi A, pi B) = {after}"),
        &[&a, &b, &ra, &rb],
        vec![before, after],
    ))
}

fn minimality(case: &mut Case) -> Result<Verdict, CaseError> {
    let a = case.random("A", 0);
    let b = case.random("B", 1);
    let s = case.sim(&a, &b)?;
    Ok(verdict(s.abs() <= TOLERANCE, format!("sim(A, B) = {s}"), &[&a, &b], vec![s]))
}

/// Disjoint arguments that share one constant at the same position of one
/// support literal each. The shared constant carries weight 0 on both sides,
/// so the local similarity never reaches the aggregate.
fn nonzero(case: &mut Case) -> Result<Verdict, CaseError> {
    let shared = "s0";
    let inject = |case: &mut Case, pool: usize, id: &str, predicate: &str| {
        let (a, mut w) = case.random(id, pool);
        let i = case.g.rng.gen_range(0..a.support.len());
        let mut clauses = a.support.clauses().to_vec();
        let mut lits = clauses[i].literals().to_vec();
        lits.push(Literal::new(predicate, vec![Term::constant(shared)]));
        clauses[i] = Clause::new(lits);
        let support = ClauseSet::new(clauses);
        let a = CompiledArgument::new(id, support, a.claim.clone());
        let fresh = case.g.weights(&a);
        w.support = fresh.support;
        let mut symbols = w.support.symbols.clone();
        symbols.insert(shared.to_string(), 0.0);
        w.support.symbols = normalized(symbols);
        (a, w)
    };
    let a = inject(case, 0, "A", "Pz");
    let b = inject(case, 1, "B", "Qz");
    let s = case.sim(&a, &b)?;
    Ok(verdict(
        s > 0.0,
        format!("supports share `{shared}` at position 0 but sim(A, B) = {s}"),
        &[&a, &b],
        vec![s],
    ))
}

/// B adds one clause to A's component. Weights are uniform on every
/// argument, which keeps every clause pair's weight equal within a comparison.
fn monotony(case: &mut Case, comp: Component, perfect: bool) -> Result<Verdict, CaseError> {
    let v = case.g.vocabulary(0);
    let a = case.g.argument("A", &v);
    let mut c = case.g.argument("C", &v);
    let beta = if perfect {
        let mut tries = 0;
        loop {
            let fresh: Vec<&Clause> = c.component(comp).iter().filter(|x| !a.component(comp).contains(x)).collect();
            if let Some(x) = fresh.choose(&mut case.g.rng) {
                break (*x).clone();
            }
            tries += 1;
            if tries > 10 {
                return Err(CaseError::Skip("C's component is contained in A's".into()));
            }
            c = case.g.argument("C", &v);
        }
    } else {
        let fresh = case.g.vocabulary(2);
        case.g.clause(&fresh)
    };
    let b = with_component(&a, comp, a.component(comp).with(beta.clone()), "B");
    let (a, b, c) = (uniform(a), uniform(b), uniform(c));

    let mut hit = false;
    for alpha in c.0.component(comp) {
        let flat = case.model.sim_clause_flat(alpha, &beta);
        let weighted =
            case.model
                .sim_clause_weighted(alpha, &beta, c.1.component(comp), b.1.component(comp))?;
        if perfect {
            hit |= flat == 1.0 && (weighted - 1.0).abs() <= TOLERANCE;
        } else if flat != 0.0 || weighted != 0.0 {
            return Err(CaseError::Skip(format!("beta scores {flat}/{weighted} against {alpha}")));
        }
    }
    if perfect && !hit {
        return Err(CaseError::Skip("no clause of C matches beta perfectly".into()));
    }
    let o = other(comp);
    let (ao, bo) = (
        case.model.sim_sets(a.0.component(o), c.0.component(o), a.1.component(o), c.1.component(o))?,
        case.model.sim_sets(b.0.component(o), c.0.component(o), b.1.component(o), c.1.component(o))?,
    );
    if (ao - bo).abs() > TOLERANCE {
        return Err(CaseError::Skip(format!("{o} scores differ: {ao} vs {bo}")));
    }

    let (ac, bc) = (case.sim(&a, &c)?, case.sim(&b, &c)?);
    let (held, rel) = if perfect {
        (ac <= bc + TOLERANCE, "<=")
    } else {
        (ac >= bc - TOLERANCE, ">=")
    };
    Ok(verdict(
        held,
        format!("expected sim(A, C) {rel} sim(B, C); got {ac} and {bc} (beta = {beta})"),
        &[&a, &b, &c],
        vec![ac, bc],
    ))
}

/// A and B share a component except for one clause each: alpha in A, beta in
/// B. For `>=`, beta is alpha with one symbol replaced by a fresh one, which can
/// only lower its clause similarities. For `>`, alpha copies one literal from
/// every clause of C's component and beta uses fresh vocabulary only.
fn reinforcement(case: &mut Case, comp: Component, strict: bool) -> Result<Verdict, CaseError> {
    let v = case.g.vocabulary(0);
    let base = case.g.argument("A", &v);
    let c = case.g.argument("C", &v);
    let phi = base.component(comp).clone();
    let fresh = case.g.vocabulary(2);

    let (alpha, beta) = if strict {
        let lits = c
            .component(comp)
            .iter()
            .map(|x| x.literals().choose(&mut case.g.rng).unwrap().clone())
            .collect();
        (Clause::new(lits).canonicalize_variables(), case.g.clause(&fresh))
    } else {
        let alpha = case.g.clause(&v);
        let names: Vec<String> = alpha
            .literals()
            .iter()
            .flat_map(|l| {
                let base = l.predicate.strip_prefix(crate::cnf::NEGATION_PREFIX).unwrap_or(&l.predicate);
                let mut out = vec![base.to_string()];
                for t in &l.args {
                    t.visit(&mut |t| {
                        if !t.is_variable() {
                            out.push(t.name().to_string());
                        }
                    });
                }
                out
            })
            .collect();
        let target = names.choose(&mut case.g.rng).unwrap().clone();
        let replacement = format!("{}_{}", fresh.constants[0], target);
        let negated = format!("{}{target}", crate::cnf::NEGATION_PREFIX);
        let beta = alpha.rename_symbols(&mut |n| {
            if n == target {
                replacement.clone()
            } else if n == negated {
                format!("{}{replacement}", crate::cnf::NEGATION_PREFIX)
            } else {
                n.to_string()
            }
        });
        (alpha, beta)
    };
    if phi.contains(&alpha) || phi.contains(&beta) || alpha == beta {
        return Err(CaseError::Skip("alpha or beta already in the shared component".into()));
    }
    let a = uniform(with_component(&base, comp, phi.with(alpha.clone()), "A"));
    let b = uniform(with_component(&base, comp, phi.with(beta.clone()), "B"));
    let c = uniform(c);

    let wc = c.1.component(comp);
    for x in c.0.component(comp) {
        let fa = case.model.sim_clause_flat(&alpha, x);
        let fb = case.model.sim_clause_flat(&beta, x);
        let wa = case.model.sim_clause_weighted(&alpha, x, a.1.component(comp), wc)?;
        let wb = case.model.sim_clause_weighted(&beta, x, b.1.component(comp), wc)?;
        let dominated = if strict {
            fa > fb && wa > wb
        } else {
            fa >= fb - TOLERANCE && wa >= wb - TOLERANCE
        };
        if !dominated {
            return Err(CaseError::Skip(format!("alpha does not dominate beta on {x}")));
        }
    }
    let o = other(comp);
    if a.0.component(o) != b.0.component(o) {
        return Err(CaseError::Skip(format!("{o} differs")));
    }

    let (ac, bc) = (case.sim(&a, &c)?, case.sim(&b, &c)?);
    let (held, rel) = if strict {
        (ac > bc, ">")
    } else {
        (ac >= bc - TOLERANCE, ">=")
    };
    Ok(verdict(
        held,
        format!("expected sim(A, C) {rel} sim(B, C); got {ac} and {bc} (alpha = {alpha}, beta = {beta})"),
        &[&a, &b, &c],
        vec![ac, bc],
    ))
}
