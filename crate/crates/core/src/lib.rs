//! First-order-logic arguments compiled to clause sets and compared with an
//! explainable four-level similarity model (symbols, literals, clauses,
//! clause sets), plus a property-checking harness for its principles.
//!
//! ```
//! use argsim::{compile_argument, default_uniform, parse_argument, ExactMatch, Model, SimConfig};
//!
//! let a = compile_argument(&parse_argument(r#"{"id":"A","premises":["P(a)"],"claim":"Q(a)"}"#).unwrap());
//! let w = default_uniform(&a);
//! let model = Model::new(SimConfig::default(), &ExactMatch);
//! assert_eq!(model.sim_arg(&a, &a, &w, &w).unwrap(), 1.0);
//! ```

pub mod audit;
pub mod cnf;
pub mod explain;
pub mod simp;
pub mod similarity;
pub mod syntax;
pub mod weights;

pub use cnf::{bijective_equal, compile_argument, compile_set, Clause, ClauseSet, CompiledArgument, Component, Literal};
pub use explain::{explain, Explanation};
pub use simp::{load_backend, EmbeddingCache, ExactMatch, LookupTable, SymbolSimilarity};
pub use similarity::{combine, crossover_eta, Model, PairWeight, SimConfig, Tversky};
pub use syntax::{parse_argument, parse_formula, Argument, Formula, Term};
pub use weights::{default_uniform, validate, ArgumentWeights, ComparisonWeights, ComponentWeights, ValidateOptions};
