//! Compilation of sentences into normalized, quantifier-free CNF.
//!
//! Pipeline per formula: eliminate `->`/`<->`, negation normal form,
//! standardize bound variables apart, Skolemize, drop universals, distribute
//! `|` over `&`, fold polarity into predicate names, then sort and dedupe.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::syntax::{parse_open_formula, write_args, Argument, Formula, ParseError, Term, TRUE};

/// Prefix carried by predicates of negative literals.
pub const NEGATION_PREFIX: &str = "not";

/// A polarity-folded literal: `~P(a)` is stored as `notP(a)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl Literal {
    pub fn new(predicate: impl Into<String>, args: Vec<Term>) -> Self {
        Literal {
            predicate: predicate.into(),
            args,
        }
    }

    /// Rendered top-level argument terms, the units scored by `simP`.
    pub fn arg_symbols(&self) -> Vec<String> {
        self.args.iter().map(Term::to_string).collect()
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for a in &self.args {
            a.visit(&mut |t| {
                if let Term::Variable(v) = t {
                    out.insert(v.clone());
                }
            });
        }
        out
    }

    fn map_terms(&self, f: &mut impl FnMut(&Term) -> Term) -> Literal {
        Literal::new(self.predicate.clone(), self.args.iter().map(f).collect())
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.predicate)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            write_args(f, &self.args)?;
            f.write_str(")")?;
        }
        Ok(())
    }
}

fn canonical_cmp<T: fmt::Display + Ord>(a: &(String, T), b: &(String, T)) -> Ordering {
    a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1))
}

// Total order on literals: rendering first, structure as tie-break
// (a variable and a constant may render identically).
impl Ord for Literal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_string()
            .cmp(&other.to_string())
            .then_with(|| self.predicate.cmp(&other.predicate))
            .then_with(|| self.args.cmp(&other.args))
    }
}

impl PartialOrd for Literal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A disjunction of literals, sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    /// Sorts and dedupes. Panics on an empty literal list.
    pub fn new(literals: Vec<Literal>) -> Self {
        assert!(!literals.is_empty(), "a clause needs at least one literal");
        let mut keyed: Vec<(String, Literal)> =
            literals.into_iter().map(|l| (l.to_string(), l)).collect();
        keyed.sort_by(canonical_cmp);
        keyed.dedup();
        Clause {
            literals: keyed.into_iter().map(|(_, l)| l).collect(),
        }
    }

    /// Parses clause text such as `notTease(x, y) | Dominant(x)`.
    /// `~P` is accepted and folded to `notP`.
    pub fn parse(text: &str) -> Result<Clause, ClauseParseError> {
        let f = parse_open_formula(text)?;
        let mut lits = Vec::new();
        collect_disjuncts(&f, &mut lits)?;
        Ok(Clause::new(lits))
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.literals.iter().flat_map(Literal::variables).collect()
    }

    /// Predicates and rendered argument terms.
    pub fn symbols(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for l in &self.literals {
            out.insert(l.predicate.clone());
            out.extend(l.arg_symbols());
        }
        out
    }

    /// Renames variables to `v0, v1, ...` choosing the assignment with the
    /// smallest rendering, so alpha-variants map to the same clause. Clauses
    /// with more than six variables fall back to first-occurrence order.
    pub fn canonicalize_variables(&self) -> Clause {
        self.canonicalize_variables_with("v")
    }

    /// As [`canonicalize_variables`](Self::canonicalize_variables) with a
    /// custom name prefix.
    pub fn canonicalize_variables_with(&self, prefix: &str) -> Clause {
        let vars = self.first_occurrence_variables();
        if vars.is_empty() {
            return self.clone();
        }
        let rename = |order: &[usize]| {
            let map: BTreeMap<&str, String> = vars
                .iter()
                .zip(order)
                .map(|(v, &i)| (v.as_str(), format!("{prefix}{i}")))
                .collect();
            self.rename_variables(&map)
        };
        let identity: Vec<usize> = (0..vars.len()).collect();
        if vars.len() > 6 {
            return rename(&identity);
        }
        let mut best: Option<(String, Clause)> = None;
        for perm in permutations(vars.len()) {
            let c = rename(&perm);
            let key = c.to_string();
            if best.as_ref().is_none_or(|(k, b)| (&key, &c.literals) < (k, &b.literals)) {
                best = Some((key, c));
            }
        }
        best.map(|(_, c)| c).unwrap()
    }

    fn first_occurrence_variables(&self) -> Vec<String> {
        let mut seen = Vec::new();
        for l in &self.literals {
            for a in &l.args {
                a.visit(&mut |t| {
                    if let Term::Variable(v) = t {
                        if !seen.contains(v) {
                            seen.push(v.clone());
                        }
                    }
                });
            }
        }
        seen
    }

    fn rename_variables(&self, map: &BTreeMap<&str, String>) -> Clause {
        let lits = self
            .literals
            .iter()
            .map(|l| {
                l.map_terms(&mut |t| {
                    t.map_names_where(&mut |name, is_var| match map.get(name) {
                        Some(n) if is_var => n.clone(),
                        _ => name.to_string(),
                    })
                })
            })
            .collect();
        Clause::new(lits)
    }

    /// Applies `f` to every predicate and term symbol name.
    pub fn rename_symbols(&self, f: &mut impl FnMut(&str) -> String) -> Clause {
        Clause::new(
            self.literals
                .iter()
                .map(|l| {
                    Literal::new(f(&l.predicate), l.args.iter().map(|a| a.map_names(f)).collect())
                })
                .collect(),
        )
    }
}

impl Term {
    fn map_names_where(&self, f: &mut impl FnMut(&str, bool) -> String) -> Term {
        match self {
            Term::Variable(n) => Term::Variable(f(n, true)),
            Term::Constant(n) => Term::Constant(f(n, false)),
            Term::Function(n, args) => Term::Function(
                f(n, false),
                args.iter().map(|a| a.map_names_where(f)).collect(),
            ),
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.literals.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Ord for Clause {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_string()
            .cmp(&other.to_string())
            .then_with(|| self.literals.cmp(&other.literals))
    }
}

impl PartialOrd for Clause {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ClauseParseError {
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error("not a clause: `{0}` is not a disjunction of literals")]
    NotClausal(String),
}

fn collect_disjuncts(f: &Formula, out: &mut Vec<Literal>) -> Result<(), ClauseParseError> {
    match f {
        Formula::Or(a, b) => {
            collect_disjuncts(a, out)?;
            collect_disjuncts(b, out)
        }
        other => {
            let lit = fold_polarity(other).ok_or_else(|| ClauseParseError::NotClausal(other.to_string()))?;
            out.push(lit);
            Ok(())
        }
    }
}

/// A sorted, duplicate-free set of clauses.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ClauseSet {
    clauses: Vec<Clause>,
}

impl ClauseSet {
    pub fn new(clauses: Vec<Clause>) -> Self {
        let mut keyed: Vec<(String, Clause)> =
            clauses.into_iter().map(|c| (c.to_string(), c)).collect();
        keyed.sort_by(canonical_cmp);
        keyed.dedup();
        ClauseSet {
            clauses: keyed.into_iter().map(|(_, c)| c).collect(),
        }
    }

    /// Builds a set from clause texts; see [`Clause::parse`].
    pub fn parse<S: AsRef<str>>(texts: &[S]) -> Result<ClauseSet, ClauseParseError> {
        texts
            .iter()
            .map(|t| Clause::parse(t.as_ref()))
            .collect::<Result<Vec<_>, _>>()
            .map(ClauseSet::new)
    }

    pub fn verum() -> Self {
        ClauseSet::new(vec![Clause::new(vec![Literal::new(TRUE, vec![])])])
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Clause> {
        self.clauses.iter()
    }

    pub fn contains(&self, c: &Clause) -> bool {
        self.clauses.binary_search(c).is_ok()
    }

    /// Union with one more clause, re-normalized.
    pub fn with(&self, c: Clause) -> ClauseSet {
        let mut v = self.clauses.clone();
        v.push(c);
        ClauseSet::new(v)
    }

    /// All predicate and term symbols occurring in the set.
    pub fn symbols(&self) -> BTreeSet<String> {
        self.clauses.iter().flat_map(Clause::symbols).collect()
    }

    /// Top-level argument symbols that are variables.
    pub fn variable_symbols(&self) -> BTreeSet<String> {
        self.clauses
            .iter()
            .flat_map(|c| c.literals.iter())
            .flat_map(|l| l.args.iter())
            .filter(|t| t.is_variable())
            .map(Term::to_string)
            .collect()
    }

    pub fn canonicalize_variables(&self) -> ClauseSet {
        ClauseSet::new(self.clauses.iter().map(Clause::canonicalize_variables).collect())
    }

    /// One clause per line, literals joined by ` | `.
    pub fn render_lines(&self) -> String {
        let mut s = String::new();
        for c in &self.clauses {
            s.push_str(&c.to_string());
            s.push('\n');
        }
        s
    }
}

impl<'a> IntoIterator for &'a ClauseSet {
    type Item = &'a Clause;
    type IntoIter = std::slice::Iter<'a, Clause>;
    fn into_iter(self) -> Self::IntoIter {
        self.clauses.iter()
    }
}

/// An argument whose support and claim are clause sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompiledArgument {
    pub id: String,
    pub support: ClauseSet,
    pub claim: ClauseSet,
    /// Set when the compiled claim has more than one clause.
    pub multi_clause_claim: bool,
}

impl CompiledArgument {
    pub fn new(id: impl Into<String>, support: ClauseSet, claim: ClauseSet) -> Self {
        let multi_clause_claim = claim.len() > 1;
        CompiledArgument {
            id: id.into(),
            support,
            claim,
            multi_clause_claim,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.support.is_empty() && self.claim == ClauseSet::verum()
    }

    pub fn component(&self, c: Component) -> &ClauseSet {
        match c {
            Component::Support => &self.support,
            Component::Claim => &self.claim,
        }
    }

    /// Renames variables of every clause to the canonical `v0, v1, ...` scheme.
    pub fn canonicalize_variables(&self) -> CompiledArgument {
        CompiledArgument::new(
            self.id.clone(),
            self.support.canonicalize_variables(),
            self.claim.canonicalize_variables(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    Support,
    Claim,
}

impl Component {
    pub const BOTH: [Component; 2] = [Component::Support, Component::Claim];

    pub fn as_str(self) -> &'static str {
        match self {
            Component::Support => "support",
            Component::Claim => "claim",
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Fresh-name state for one compilation: Skolem counter, formula index, and
/// the identifiers generated names must avoid.
#[derive(Debug, Clone, Default)]
pub struct Namespace {
    pub next_skolem: usize,
    pub formula_index: usize,
    reserved: BTreeSet<String>,
}

impl Namespace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn reserve<I: IntoIterator<Item = String>>(&mut self, names: I) {
        self.reserved.extend(names);
    }

    fn fresh_skolem(&mut self) -> String {
        loop {
            let name = format!("sk{}", self.next_skolem);
            self.next_skolem += 1;
            if self.reserved.insert(name.clone()) {
                return name;
            }
        }
    }

    fn fresh_variable(&mut self, orig: &str) -> String {
        let base = format!("{orig}{}", self.formula_index);
        if self.reserved.insert(base.clone()) {
            return base;
        }
        (1..)
            .map(|k| format!("{base}_{k}"))
            .find(|n| self.reserved.insert(n.clone()))
            .unwrap()
    }
}

/// `~P(...)` becomes `notP(...)`; positive atoms are unchanged. Returns `None`
/// for anything other than an atom or a negated atom.
pub fn fold_polarity(f: &Formula) -> Option<Literal> {
    match f {
        Formula::Atom(p, args) => Some(Literal::new(p.clone(), args.clone())),
        Formula::Not(inner) => match inner.as_ref() {
            Formula::Atom(p, args) => Some(Literal::new(format!("{NEGATION_PREFIX}{p}"), args.clone())),
            _ => None,
        },
        _ => None,
    }
}

fn eliminate_arrows(f: &Formula) -> Formula {
    match f {
        Formula::Atom(..) => f.clone(),
        Formula::Not(a) => Formula::not(eliminate_arrows(a)),
        Formula::And(a, b) => Formula::and(eliminate_arrows(a), eliminate_arrows(b)),
        Formula::Or(a, b) => Formula::or(eliminate_arrows(a), eliminate_arrows(b)),
        Formula::Implies(a, b) => Formula::or(Formula::not(eliminate_arrows(a)), eliminate_arrows(b)),
        Formula::Iff(a, b) => {
            let (a, b) = (eliminate_arrows(a), eliminate_arrows(b));
            Formula::and(
                Formula::or(Formula::not(a.clone()), b.clone()),
                Formula::or(a, Formula::not(b)),
            )
        }
        Formula::ForAll(v, body) => Formula::forall(v.clone(), eliminate_arrows(body)),
        Formula::Exists(v, body) => Formula::exists(v.clone(), eliminate_arrows(body)),
    }
}

/// Negation normal form of an arrow-free formula.
fn nnf(f: &Formula, negated: bool) -> Formula {
    match f {
        Formula::Atom(..) => {
            if negated {
                Formula::not(f.clone())
            } else {
                f.clone()
            }
        }
        Formula::Not(a) => nnf(a, !negated),
        Formula::And(a, b) if negated => Formula::or(nnf(a, true), nnf(b, true)),
        Formula::And(a, b) => Formula::and(nnf(a, false), nnf(b, false)),
        Formula::Or(a, b) if negated => Formula::and(nnf(a, true), nnf(b, true)),
        Formula::Or(a, b) => Formula::or(nnf(a, false), nnf(b, false)),
        Formula::ForAll(v, body) if negated => Formula::exists(v.clone(), nnf(body, true)),
        Formula::ForAll(v, body) => Formula::forall(v.clone(), nnf(body, false)),
        Formula::Exists(v, body) if negated => Formula::forall(v.clone(), nnf(body, true)),
        Formula::Exists(v, body) => Formula::exists(v.clone(), nnf(body, false)),
        Formula::Implies(..) | Formula::Iff(..) => unreachable!("arrows are eliminated first"),
    }
}

fn substitute(t: &Term, env: &BTreeMap<String, Term>) -> Term {
    match t {
        Term::Variable(v) => env.get(v).cloned().unwrap_or_else(|| t.clone()),
        Term::Constant(_) => t.clone(),
        Term::Function(n, args) => Term::Function(n.clone(), args.iter().map(|a| substitute(a, env)).collect()),
    }
}

/// Renames binders apart, Skolemizes existentials and drops universals,
/// producing a quantifier-free NNF formula.
fn skolemize(
    f: &Formula,
    env: &mut BTreeMap<String, Term>,
    universals: &mut Vec<String>,
    ns: &mut Namespace,
) -> Formula {
    match f {
        Formula::Atom(p, args) => Formula::Atom(p.clone(), args.iter().map(|a| substitute(a, env)).collect()),
        Formula::Not(a) => Formula::not(skolemize(a, env, universals, ns)),
        Formula::And(a, b) => {
            let a = skolemize(a, env, universals, ns);
            Formula::and(a, skolemize(b, env, universals, ns))
        }
        Formula::Or(a, b) => {
            let a = skolemize(a, env, universals, ns);
            Formula::or(a, skolemize(b, env, universals, ns))
        }
        Formula::ForAll(v, body) => {
            let fresh = ns.fresh_variable(v);
            let saved = env.insert(v.clone(), Term::Variable(fresh.clone()));
            universals.push(fresh);
            let out = skolemize(body, env, universals, ns);
            universals.pop();
            restore(env, v, saved);
            out
        }
        Formula::Exists(v, body) => {
            let name = ns.fresh_skolem();
            let witness = if universals.is_empty() {
                Term::Constant(name)
            } else {
                Term::Function(name, universals.iter().cloned().map(Term::Variable).collect())
            };
            let saved = env.insert(v.clone(), witness);
            let out = skolemize(body, env, universals, ns);
            restore(env, v, saved);
            out
        }
        Formula::Implies(..) | Formula::Iff(..) => unreachable!("arrows are eliminated first"),
    }
}

fn restore(env: &mut BTreeMap<String, Term>, v: &str, saved: Option<Term>) {
    match saved {
        Some(t) => env.insert(v.to_string(), t),
        None => env.remove(v),
    };
}

/// Clauses of a quantifier-free NNF formula, distributing `|` over `&`.
fn distribute(f: &Formula) -> Vec<Vec<Literal>> {
    match f {
        Formula::And(a, b) => {
            let mut out = distribute(a);
            out.extend(distribute(b));
            out
        }
        Formula::Or(a, b) => {
            let (left, right) = (distribute(a), distribute(b));
            let mut out = Vec::with_capacity(left.len() * right.len());
            for l in &left {
                for r in &right {
                    out.push(l.iter().chain(r).cloned().collect());
                }
            }
            out
        }
        other => vec![vec![fold_polarity(other).expect("NNF leaves are literals")]],
    }
}

/// Compiles one sentence. Fresh variable names carry the namespace's current
/// formula index, which is advanced afterwards.
pub fn compile_formula(f: &Formula, ns: &mut Namespace) -> ClauseSet {
    ns.reserve(f.identifiers());
    let arrow_free = eliminate_arrows(f);
    let negation_normal = nnf(&arrow_free, false);
    let matrix = skolemize(&negation_normal, &mut BTreeMap::new(), &mut Vec::new(), ns);
    ns.formula_index += 1;
    ClauseSet::new(distribute(&matrix).into_iter().map(Clause::new).collect())
}

/// Compiles a formula list with one shared namespace, so variables and Skolem
/// symbols from different formulae never clash.
pub fn compile_set(formulas: &[Formula]) -> ClauseSet {
    let mut ns = Namespace::new();
    for f in formulas {
        ns.reserve(f.identifiers());
    }
    let clauses = formulas
        .iter()
        .flat_map(|f| compile_formula(f, &mut ns).clauses)
        .collect();
    ClauseSet::new(clauses)
}

pub fn compile_argument(a: &Argument) -> CompiledArgument {
    CompiledArgument::new(
        a.id.clone(),
        compile_set(&a.premises),
        compile_set(std::slice::from_ref(&a.claim)),
    )
}

/// Equality of supports and claims after per-clause variable canonicalization.
pub fn bijective_equal(a: &CompiledArgument, b: &CompiledArgument) -> bool {
    a.support.canonicalize_variables() == b.support.canonicalize_variables()
        && a.claim.canonicalize_variables() == b.claim.canonicalize_variables()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_argument, parse_formula};

    fn compile(text: &str) -> ClauseSet {
        compile_formula(&parse_formula(text).unwrap(), &mut Namespace::new())
    }

    fn lines(cs: &ClauseSet) -> Vec<String> {
        cs.iter().map(Clause::to_string).collect()
    }

    #[test]
    fn every_dog_loves_some_bone() {
        let cs = compile("forall x. Dog(x) -> exists y. (Bone(y) & Loves(x,y))");
        assert_eq!(
            lines(&cs),
            ["Bone(sk0(x0)) | notDog(x0)", "Loves(x0, sk0(x0)) | notDog(x0)"]
        );
    }

    #[test]
    fn single_atom_and_de_morgan() {
        assert_eq!(lines(&compile("P(a)")), ["P(a)"]);
        assert_eq!(lines(&compile("~(P(a) & Q(a))")), ["notP(a) | notQ(a)"]);
        assert_eq!(lines(&compile("~~P(a)")), ["P(a)"]);
    }

    #[test]
    fn skolem_constant_outside_universals() {
        assert_eq!(lines(&compile("exists y. P(y)")), ["P(sk0)"]);
        let cs = compile("~forall x. P(x)");
        assert_eq!(lines(&cs), ["notP(sk0)"]);
    }

    #[test]
    fn skolem_names_avoid_existing_identifiers() {
        assert_eq!(lines(&compile("exists y. P(y, sk0)")), ["P(sk1, sk0)"]);
    }

    #[test]
    fn biconditional_elimination() {
        assert_eq!(lines(&compile("P <-> Q")), ["P | notQ", "Q | notP"]);
    }

    #[test]
    fn fold_polarity_examples() {
        let x = Term::constant("x");
        let neg = Formula::not(Formula::atom("Tease", vec![x.clone(), Term::constant("y")]));
        assert_eq!(fold_polarity(&neg).unwrap().to_string(), "notTease(x, y)");
        let pos = Formula::atom("Even", vec![x]);
        assert_eq!(fold_polarity(&pos).unwrap().to_string(), "Even(x)");
        assert!(fold_polarity(&Formula::not(Formula::not(pos))).is_none());
    }

    #[test]
    fn compile_set_separates_variables() {
        let fs = [parse_formula("forall x. P(x)").unwrap(), parse_formula("forall x. Q(x)").unwrap()];
        assert_eq!(lines(&compile_set(&fs)), ["P(x0)", "Q(x1)"]);
        assert!(compile_set(&[]).is_empty());
    }

    #[test]
    fn repeated_binders_in_one_formula_get_distinct_names() {
        let cs = compile("(forall x. P(x)) & (forall x. Q(x))");
        assert_eq!(lines(&cs), ["P(x0)", "Q(x0_1)"]);
    }

    #[test]
    fn tautologies_and_duplicates() {
        assert_eq!(lines(&compile("P(a) | ~P(a)")), ["P(a) | notP(a)"]);
        assert_eq!(lines(&compile("P(a) | P(a)")), ["P(a)"]);
        assert_eq!(lines(&compile("P(a) & P(a)")), ["P(a)"]);
    }

    #[test]
    fn appendix_support() {
        let a = parse_argument(
            r#"{"id":"A1","premises":["AtLocation(dog, zoo)","AtLocation(monkey, zoo)",
                "forall x. forall y. (Tease(x, y) -> Dominant(x) | Playful(x))","Tease(dog, monkey)"],
                "claim":"Dominant(dog) | Playful(dog)"}"#,
        )
        .unwrap();
        let c = compile_argument(&a);
        assert_eq!(c.support.len(), 4);
        assert!(c.support.contains(&Clause::parse("notTease(x2, y2) | Dominant(x2) | Playful(x2)").unwrap()));
        assert_eq!(lines(&c.claim), ["Dominant(dog) | Playful(dog)"]);
        assert!(!c.multi_clause_claim);
    }

    #[test]
    fn compiled_argument_flags() {
        let a = parse_argument(r#"{"id":"A","premises":["P(a) & P(b)"],"claim":"P(a)"}"#).unwrap();
        let c = compile_argument(&a);
        assert_eq!(lines(&c.support), ["P(a)", "P(b)"]);
        assert_eq!(lines(&c.claim), ["P(a)"]);
        assert!(!c.multi_clause_claim);

        let t = compile_argument(&parse_argument(r#"{"id":"T","premises":[],"claim":"True"}"#).unwrap());
        assert!(t.is_trivial());

        let m = compile_argument(&parse_argument(r#"{"id":"M","premises":["P(a)"],"claim":"P(a) & Q(a)"}"#).unwrap());
        assert!(m.multi_clause_claim);
    }

    #[test]
    fn bijective_equality() {
        let mk = |prem: &[&str], claim: &str| {
            let fs: Vec<_> = prem.iter().map(|p| parse_formula(p).unwrap()).collect();
            CompiledArgument::new("x", compile_set(&fs), compile_set(&[parse_formula(claim).unwrap()]))
        };
        let a = mk(&["Square(a)", "Square(a) -> Rectangle(a)"], "Rectangle(a)");
        let b = mk(&["Rectangle(a)", "Rectangle(a) -> Square(a)"], "Square(a)");
        assert!(bijective_equal(&a, &a));
        assert!(!bijective_equal(&a, &b));

        let c = mk(&["Square(a)", "Square(a) -> Rectangle(a)"], "Rectangle(b)");
        assert!(!bijective_equal(&a, &c));

        // alpha-variants and premise order do not matter
        let d = mk(&["forall x. forall y. R(x, y)", "P(a)"], "P(a)");
        let e = mk(&["P(a)", "forall y. forall x. R(y, x)"], "P(a)");
        assert_ne!(d.support, e.support);
        assert!(bijective_equal(&d, &e));
    }

    #[test]
    fn canonical_variables_are_permutation_invariant() {
        let c1 = Clause::parse("R(x, y) | S(y, x)").unwrap();
        let c2 = Clause::parse("R(y, x) | S(x, y)").unwrap();
        assert_eq!(c1.canonicalize_variables(), c2.canonicalize_variables());
        assert_eq!(c1.canonicalize_variables().to_string(), "R(v0, v1) | S(v1, v0)");
    }

    #[test]
    fn clause_parse_folds_negation() {
        let c = Clause::parse("~Tease(x, y) | Dominant(x)").unwrap();
        assert_eq!(c.to_string(), "Dominant(x) | notTease(x, y)");
        assert!(Clause::parse("P(a) & Q(a)").is_err());
    }
}
