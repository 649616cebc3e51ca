//! First-order formulae: AST, concrete grammar, parser and printer.
//!
//! Grammar, lowest to highest precedence:
//!
//! ```text
//! formula  := iff
//! iff      := implies ("<->" implies)*
//! implies  := or ("->" implies)?
//! or       := and ("|" and)*
//! and      := unary ("&" unary)*
//! unary    := "~" unary | quant | primary
//! quant    := ("forall" | "exists") IDENT "." formula
//! primary  := "(" formula ")" | IDENT ("(" term ("," term)* ")")?
//! term     := IDENT ("(" term ("," term)* ")")?
//! ```
//!
//! A quantifier body extends as far right as possible. Identifiers in term
//! position that are bound by an enclosing quantifier are variables, all other
//! nullary term identifiers are constants. An unbound identifier that is
//! spelled like a variable (`u`..`z` optionally followed by digits) is rejected
//! as a free variable.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Reserved nullary atom for verum.
pub const TRUE: &str = "True";
/// Reserved nullary atom for falsum.
pub const FALSE: &str = "False";

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Variable(String),
    Constant(String),
    Function(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Variable(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::Constant(name.into())
    }

    pub fn func(name: impl Into<String>, args: Vec<Term>) -> Self {
        Term::Function(name.into(), args)
    }

    pub fn name(&self) -> &str {
        match self {
            Term::Variable(n) | Term::Constant(n) | Term::Function(n, _) => n,
        }
    }

    pub fn is_variable(&self) -> bool {
        matches!(self, Term::Variable(_))
    }

    /// Calls `f` on this term and every nested subterm, outermost first.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Term)) {
        f(self);
        if let Term::Function(_, args) = self {
            for a in args {
                a.visit(f);
            }
        }
    }

    /// Rewrites every symbol name (variables, constants and function names).
    pub fn map_names(&self, f: &mut impl FnMut(&str) -> String) -> Term {
        match self {
            Term::Variable(n) => Term::Variable(f(n)),
            Term::Constant(n) => Term::Constant(f(n)),
            Term::Function(n, args) => {
                let name = f(n);
                Term::Function(name, args.iter().map(|a| a.map_names(f)).collect())
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Variable(n) | Term::Constant(n) => f.write_str(n),
            Term::Function(n, args) => {
                write!(f, "{n}(")?;
                write_args(f, args)?;
                f.write_str(")")
            }
        }
    }
}

pub(crate) fn write_args(f: &mut fmt::Formatter<'_>, args: &[Term]) -> fmt::Result {
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{a}")?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(String, Vec<Term>),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    ForAll(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn atom(pred: impl Into<String>, args: Vec<Term>) -> Self {
        Formula::Atom(pred.into(), args)
    }

    pub fn verum() -> Self {
        Formula::Atom(TRUE.to_string(), Vec::new())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(v: impl Into<String>, body: Formula) -> Self {
        Formula::ForAll(v.into(), Box::new(body))
    }

    pub fn exists(v: impl Into<String>, body: Formula) -> Self {
        Formula::Exists(v.into(), Box::new(body))
    }

    pub fn is_verum(&self) -> bool {
        matches!(self, Formula::Atom(p, args) if p == TRUE && args.is_empty())
    }

    /// Variables occurring outside the scope of any binder for them.
    pub fn free_variables(&self) -> BTreeSet<String> {
        fn go(f: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
            match f {
                Formula::Atom(_, args) => {
                    for a in args {
                        a.visit(&mut |t| {
                            if let Term::Variable(v) = t {
                                if !bound.contains(v) {
                                    out.insert(v.clone());
                                }
                            }
                        });
                    }
                }
                Formula::Not(a) => go(a, bound, out),
                Formula::And(a, b)
                | Formula::Or(a, b)
                | Formula::Implies(a, b)
                | Formula::Iff(a, b) => {
                    go(a, bound, out);
                    go(b, bound, out);
                }
                Formula::ForAll(v, body) | Formula::Exists(v, body) => {
                    bound.push(v.clone());
                    go(body, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_sentence(&self) -> bool {
        self.free_variables().is_empty()
    }

    /// Every identifier used anywhere in the formula (predicates, binders, term symbols).
    pub fn identifiers(&self) -> BTreeSet<String> {
        fn go(f: &Formula, out: &mut BTreeSet<String>) {
            match f {
                Formula::Atom(p, args) => {
                    out.insert(p.clone());
                    for a in args {
                        a.visit(&mut |t| {
                            out.insert(t.name().to_string());
                        });
                    }
                }
                Formula::Not(a) => go(a, out),
                Formula::And(a, b)
                | Formula::Or(a, b)
                | Formula::Implies(a, b)
                | Formula::Iff(a, b) => {
                    go(a, out);
                    go(b, out);
                }
                Formula::ForAll(v, body) | Formula::Exists(v, body) => {
                    out.insert(v.clone());
                    go(body, out);
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut out);
        out
    }
}

/// Fully parenthesized canonical rendering; `parse_formula` inverts it.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(p, args) => {
                f.write_str(p)?;
                if !args.is_empty() {
                    f.write_str("(")?;
                    write_args(f, args)?;
                    f.write_str(")")?;
                }
                Ok(())
            }
            Formula::Not(a) => write!(f, "~{a}"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
            Formula::Implies(a, b) => write!(f, "({a} -> {b})"),
            Formula::Iff(a, b) => write!(f, "({a} <-> {b})"),
            Formula::ForAll(v, body) => write!(f, "(forall {v}. {body})"),
            Formula::Exists(v, body) => write!(f, "(exists {v}. {body})"),
        }
    }
}

pub fn render(f: &Formula) -> String {
    f.to_string()
}

/// An argument as given: premises supporting a claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Argument {
    pub id: String,
    pub premises: Vec<Formula>,
    pub claim: Formula,
}

impl Argument {
    /// Trivial iff there are no premises and the claim is `True`.
    pub fn is_trivial(&self) -> bool {
        self.premises.is_empty() && self.claim.is_verum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {position}: expected {expected}, found {found}")]
    Syntax {
        position: usize,
        expected: String,
        found: String,
    },
    #[error("free variable `{0}`")]
    FreeVariable(String),
}

impl ParseError {
    pub fn position(&self) -> Option<usize> {
        match self {
            ParseError::Syntax { position, .. } => Some(*position),
            _ => None,
        }
    }
}

#[derive(Debug, Error)]
pub enum ArgumentError {
    #[error("malformed argument document: {0}")]
    Format(#[from] serde_json::Error),
    #[error("premise {index}: {source}")]
    Premise { index: usize, source: ParseError },
    #[error("claim: {0}")]
    Claim(ParseError),
    #[error("argument is not trivial but has no premises")]
    MissingPremises,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Not => f.write_str("`~`"),
            Tok::And => f.write_str("`&`"),
            Tok::Or => f.write_str("`|`"),
            Tok::Implies => f.write_str("`->`"),
            Tok::Iff => f.write_str("`<->`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'.' => Tok::Dot,
            b'~' => Tok::Not,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Implies
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 2;
                Tok::Iff
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let found = text[start..].chars().next().map(|c| format!("`{c}`")).unwrap();
                return Err(ParseError::Syntax {
                    position: start,
                    expected: "a token".into(),
                    found,
                });
            }
        };
        toks.push((tok, start));
        i += 1;
    }
    toks.push((Tok::Eof, text.len()));
    Ok(toks)
}

/// Unbound identifiers spelled like this are treated as free variables:
/// `[u-z][0-9]*`, optionally followed by `_[0-9]+` as the compiler writes
/// repeated binders.
fn looks_like_variable(name: &str) -> bool {
    let (stem, suffix) = match name.split_once('_') {
        Some((stem, k)) => (stem, Some(k)),
        None => (name, None),
    };
    let mut chars = stem.chars();
    matches!(chars.next(), Some('u'..='z'))
        && chars.all(|c| c.is_ascii_digit())
        && suffix.is_none_or(|k| !k.is_empty() && k.chars().all(|c| c.is_ascii_digit()))
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    bound: Vec<String>,
    open: bool,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError::Syntax {
            position: self.offset(),
            expected: expected.to_string(),
            found: self.peek().to_string(),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn ident(&mut self, expected: &str) -> Result<String, ParseError> {
        match self.peek() {
            Tok::Ident(s) if s != "forall" && s != "exists" => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => Err(self.error(expected)),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.implies()?;
        while *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.implies()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let rhs = self.implies()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Ident(kw) if kw == "forall" || kw == "exists" => {
                self.bump();
                let var = self.ident("a variable name")?;
                self.expect(Tok::Dot, "`.` after the quantified variable")?;
                self.bound.push(var.clone());
                let body = self.formula();
                self.bound.pop();
                let body = body?;
                Ok(if kw == "forall" {
                    Formula::forall(var, body)
                } else {
                    Formula::exists(var, body)
                })
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        if *self.peek() == Tok::LParen {
            self.bump();
            let f = self.formula()?;
            self.expect(Tok::RParen, "`)`")?;
            return Ok(f);
        }
        let pred = self.ident("a formula")?;
        let args = if *self.peek() == Tok::LParen {
            self.bump();
            self.term_list()?
        } else {
            Vec::new()
        };
        Ok(Formula::Atom(pred, args))
    }

    fn term_list(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut args = vec![self.term()?];
        loop {
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                    args.push(self.term()?);
                }
                Tok::RParen => {
                    self.bump();
                    return Ok(args);
                }
                _ => return Err(self.error("`,` or `)`")),
            }
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let name = self.ident("a term")?;
        if *self.peek() == Tok::LParen {
            self.bump();
            let args = self.term_list()?;
            return Ok(Term::Function(name, args));
        }
        if self.bound.contains(&name) || (self.open && looks_like_variable(&name)) {
            Ok(Term::Variable(name))
        } else if looks_like_variable(&name) {
            Err(ParseError::FreeVariable(name))
        } else {
            Ok(Term::Constant(name))
        }
    }
}

fn parse(text: &str, open: bool) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        bound: Vec::new(),
        open,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error("end of input"));
    }
    Ok(f)
}

/// Parses a closed formula.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let f = parse(text, false)?;
    if let Some(v) = f.free_variables().into_iter().next() {
        return Err(ParseError::FreeVariable(v));
    }
    Ok(f)
}

/// Parses a formula that may mention free variables (identifiers `u`..`z`,
/// optionally followed by digits). Used for clause text such as
/// `notTease(x, y) | Dominant(x)`.
pub fn parse_open_formula(text: &str) -> Result<Formula, ParseError> {
    parse(text, true)
}

/// On-disk argument document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArgumentDocument {
    pub id: String,
    pub premises: Vec<String>,
    pub claim: String,
}

impl ArgumentDocument {
    pub fn parse(&self) -> Result<Argument, ArgumentError> {
        let premises = self
            .premises
            .iter()
            .enumerate()
            .map(|(index, text)| {
                parse_formula(text).map_err(|source| ArgumentError::Premise { index, source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let claim = parse_formula(&self.claim).map_err(ArgumentError::Claim)?;
        let arg = Argument {
            id: self.id.clone(),
            premises,
            claim,
        };
        if arg.premises.is_empty() && !arg.is_trivial() {
            return Err(ArgumentError::MissingPremises);
        }
        Ok(arg)
    }
}

/// Parses an argument file (JSON with `id`, `premises`, `claim`).
pub fn parse_argument(document: &str) -> Result<Argument, ArgumentError> {
    let doc: ArgumentDocument = serde_json::from_str(document)?;
    doc.parse()
}
