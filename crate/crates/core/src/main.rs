use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use argsim::audit::{run_audit, syntax_sensitive_table, GeneratorParams, Principle};
use argsim::cnf::{compile_argument, ClauseSet, CompiledArgument};
use argsim::explain::{emit, explain};
use argsim::similarity::{crossover_eta, in_open_unit, Model, PairWeight, SimConfig, Tversky};
use argsim::simp::{load_backend, SymbolSimilarity};
use argsim::syntax::{parse_argument, ArgumentError};
use argsim::weights::{ComparisonWeights, ValidateOptions};

#[derive(Parser)]
#[command(name = "argsim", version, about = "Compile FOL arguments and score their similarity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the clause sets of an argument file.
    Compile {
        file: PathBuf,
        /// Emit JSON with clauses and the symbol vocabulary.
        #[arg(long)]
        json: bool,
    },
    /// Score two argument files.
    Sim(SimArgs),
    /// The eta at which two (support, claim) score pairs cross.
    Crossover {
        #[arg(allow_negative_numbers = true)]
        sup1: f64,
        #[arg(allow_negative_numbers = true)]
        cl1: f64,
        #[arg(allow_negative_numbers = true)]
        sup2: f64,
        #[arg(allow_negative_numbers = true)]
        cl2: f64,
    },
    /// Property-check the similarity principles on generated arguments.
    Audit(AuditArgs),
}

#[derive(Args)]
struct SimArgs {
    a: PathBuf,
    b: PathBuf,
    /// Weights file; uniform weights when omitted.
    #[arg(long)]
    weights: Option<PathBuf>,
    /// Rescale weight sums to 1 instead of rejecting them.
    #[arg(long)]
    auto_normalize: bool,
    #[arg(long, default_value = "dic")]
    preset: Tversky,
    /// Custom Tversky alpha; requires --beta and overrides --preset.
    #[arg(long, requires = "beta")]
    alpha: Option<f64>,
    #[arg(long, requires = "alpha")]
    beta: Option<f64>,
    #[arg(long, default_value_t = 0.8, value_parser = open_unit)]
    lambda: f64,
    #[arg(long, default_value_t = 0.5, value_parser = open_unit)]
    eta: f64,
    #[arg(long = "g", default_value = "avg")]
    pair_weight: PairWeight,
    /// eq, lookup:<file> or embedding:<file>.
    #[arg(long, default_value = "eq")]
    backend: String,
    /// Write the score decomposition to a .json, .csv or .svg file.
    #[arg(long)]
    explain: Option<PathBuf>,
}

#[derive(Args)]
struct AuditArgs {
    /// eq, lookup:<file>, embedding:<file>, or `sensitive` for a generated
    /// lookup table that renaming changes.
    #[arg(long, default_value = "eq")]
    backend: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short = 'n', long = "cases", default_value_t = 100)]
    cases: usize,
    /// Comma-separated principle names; all when omitted.
    #[arg(long, value_delimiter = ',')]
    principles: Vec<Principle>,
    #[arg(long, default_value_t = 4)]
    predicates: usize,
    #[arg(long, default_value_t = 4)]
    constants: usize,
    #[arg(long, default_value_t = 2)]
    functions: usize,
    #[arg(long, default_value_t = 4)]
    max_clauses: usize,
    #[arg(long, default_value_t = 3)]
    max_literals: usize,
    #[arg(long, default_value_t = 2)]
    max_arity: usize,
    /// Write the full JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn open_unit(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if in_open_unit(x) {
        Ok(x)
    } else {
        Err(format!("{x} is not in (0, 1)"))
    }
}

/// Domain failures exit with 1, malformed input with 2.
enum Failure {
    Domain(String),
    Usage(String),
}

impl Failure {
    fn domain(e: impl std::fmt::Display) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compile { file, json } => cmd_compile(&file, json),
        Command::Sim(args) => cmd_sim(&args),
        Command::Crossover { sup1, cl1, sup2, cl2 } => {
            match crossover_eta(sup1, cl1, sup2, cl2) {
                Some(eta) => println!("{eta:.3}"),
                None => println!("none"),
            }
            Ok(())
        }
        Command::Audit(args) => cmd_audit(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn load_argument(path: &Path) -> Result<CompiledArgument, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    match parse_argument(&text) {
        Ok(a) => Ok(compile_argument(&a)),
        Err(e @ ArgumentError::MissingPremises) => Err(Failure::domain(format!("{}: {e}", path.display()))),
        Err(e) => Err(Failure::Usage(format!("{}: {e}", path.display()))),
    }
}

#[derive(Serialize)]
struct CompileOutput<'a> {
    id: &'a str,
    support: Vec<String>,
    claim: Vec<String>,
    multi_clause_claim: bool,
    trivial: bool,
    symbols: Vec<String>,
}

fn lines(set: &ClauseSet) -> Vec<String> {
    set.iter().map(|c| c.to_string()).collect()
}

fn cmd_compile(path: &Path, json: bool) -> Result<(), Failure> {
    let a = load_argument(path)?;
    if json {
        let mut symbols = a.support.symbols();
        symbols.extend(a.claim.symbols());
        // variables are not vocabulary
        let vars: std::collections::BTreeSet<String> = a
            .support
            .variable_symbols()
            .into_iter()
            .chain(a.claim.variable_symbols())
            .collect();
        let out = CompileOutput {
            id: &a.id,
            support: lines(&a.support),
            claim: lines(&a.claim),
            multi_clause_claim: a.multi_clause_claim,
            trivial: a.is_trivial(),
            symbols: symbols.difference(&vars).cloned().collect(),
        };
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
        return Ok(());
    }
    println!("argument {}", a.id);
    if a.is_trivial() {
        println!("trivial argument: no premises, claim True");
        return Ok(());
    }
    println!("support:");
    for l in lines(&a.support) {
        println!("  {l}");
    }
    println!("claim:");
    for l in lines(&a.claim) {
        println!("  {l}");
    }
    if a.multi_clause_claim {
        println!("note: the claim compiles to {} clauses", a.claim.len());
    }
    Ok(())
}

fn backend(name: &str) -> Result<Box<dyn SymbolSimilarity>, Failure> {
    load_backend(name).map_err(Failure::domain)
}

fn cmd_sim(args: &SimArgs) -> Result<(), Failure> {
    let a = load_argument(&args.a)?;
    let b = load_argument(&args.b)?;
    let tversky = match (args.alpha, args.beta) {
        (Some(alpha), Some(beta)) => Tversky::Custom { alpha, beta },
        _ => args.preset,
    };
    let config = SimConfig {
        lambda: args.lambda,
        eta: args.eta,
        tversky,
        pair_weight: args.pair_weight,
    };
    config.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    let weights = match &args.weights {
        Some(p) => ComparisonWeights::load(p).map_err(Failure::domain)?,
        None => ComparisonWeights::uniform(&a, &b),
    };
    let opts = ValidateOptions {
        auto_normalize: args.auto_normalize,
    };
    let (wa, wb) = weights.resolve(&a, &b, opts).map_err(Failure::domain)?;
    let provider = backend(&args.backend)?;
    let model = Model::new(config, provider.as_ref());
    let e = explain(&model, &a, &b, &wa, &wb).map_err(Failure::domain)?;
    println!("{:.3}", e.score);
    if let Some(path) = &args.explain {
        emit(&e, path).map_err(Failure::domain)?;
    }
    Ok(())
}

fn cmd_audit(args: &AuditArgs) -> Result<(), Failure> {
    let params = GeneratorParams {
        seed: args.seed,
        predicates: args.predicates,
        constants: args.constants,
        functions: args.functions,
        max_clauses: args.max_clauses,
        max_literals: args.max_literals,
        max_arity: args.max_arity,
    };
    params.validate().map_err(Failure::domain)?;
    let provider: Box<dyn SymbolSimilarity> = if args.backend == "sensitive" {
        Box::new(syntax_sensitive_table(&params))
    } else {
        backend(&args.backend)?
    };
    let principles = if args.principles.is_empty() {
        Principle::ALL.to_vec()
    } else {
        args.principles.clone()
    };
    let report = run_audit(&principles, &params, args.cases, provider.as_ref()).map_err(Failure::domain)?;
    print!("{}", report.summary());
    if let Some(path) = &args.out {
        std::fs::write(path, report.to_json()).map_err(|e| Failure::domain(format!("cannot write {}: {e}", path.display())))?;
    }
    if report.conforms() {
        Ok(())
    } else {
        Err(Failure::Domain("some principles have unexpected results".into()))
    }
}
