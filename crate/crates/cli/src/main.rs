mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use weyl_lie::chains::{chain_i, chain_ii, Chain, ChainOptions};
use weyl_lie::closure::{lie_closure, ClosureConfig, ClosureStatus};
use weyl_lie::coeff::int;
use weyl_lie::decider::{decide, validate, GeneratorSet};
use weyl_lie::dsl::{self, SourceFile};
use weyl_lie::skew::skew_commutator;
use weyl_lie::subspace::support;
use weyl_lie::{Error, MultiIndex, Sign, SkewPolynomial};

const EXIT_INFINITE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(
    name = "wlie",
    version,
    about = "Exact commutators, chains and finiteness checks for skew-hermitian Weyl algebra generators"
)]
struct Cli {
    /// Emit a JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, ValueEnum)]
enum Kind {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    Ii,
}

#[derive(Subcommand)]
enum Command {
    /// Subspace labels of every statement.
    Classify { file: PathBuf },
    /// Exact commutator of two statements.
    Commute {
        file: PathBuf,
        name1: String,
        name2: String,
        /// Keep only terms of degree at least D.
        #[arg(long, value_name = "D")]
        upto: Option<u32>,
    },
    /// Commutator chain table.
    Chain {
        #[arg(long = "type", value_enum)]
        kind: Kind,
        #[arg(long)]
        steps: usize,
        /// Statement name or basis label such as `1,1;1,0`. Defaults to the first statement.
        #[arg(long)]
        seed: Option<String>,
        /// Diagonal partner for Type I chains, as a statement name or basis label.
        #[arg(long)]
        partner: Option<String>,
        /// Track only top-degree parts.
        #[arg(long)]
        leading_only: bool,
        file: Option<PathBuf>,
    },
    /// Decide whether the generated Lie algebra is finite-dimensional.
    Decide {
        file: PathBuf,
        /// Evaluate every condition instead of stopping at the first failure.
        #[arg(long)]
        all: bool,
    },
    /// Bounded Lie closure of the statements (plus free operators unless `#no-free`).
    Closure {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_degree: u32,
        #[arg(long, default_value_t = 5000)]
        max_dim: usize,
        #[arg(long, default_value_t = 64)]
        max_iters: usize,
        /// Print the basis in text mode.
        #[arg(long)]
        basis: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classify { .. } => "classify",
            Command::Commute { .. } => "commute",
            Command::Chain { .. } => "chain",
            Command::Decide { .. } => "decide",
            Command::Closure { .. } => "closure",
        }
    }
}

/// A finished command: text for humans, a JSON payload, and the exit code.
struct Outcome {
    n: usize,
    text: String,
    result: Value,
    code: u8,
}

struct Failure {
    code: u8,
    message: String,
    detail: Value,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
            detail: Value::Null,
        }
    }

    fn engine(e: Error) -> Self {
        let code = match e {
            Error::TermLimit { .. } | Error::LeadingCancellation { .. } => EXIT_CAP,
            _ => EXIT_INPUT,
        };
        Self {
            code,
            message: e.to_string(),
            detail: Value::Null,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::engine(e)
    }
}

type Res<T> = Result<T, Failure>;

fn load(path: &Path) -> Res<SourceFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    dsl::parse(&text).map_err(|d| Failure {
        code: EXIT_INPUT,
        message: format!("{}:{d}", path.display()),
        detail: json!({ "line": d.line, "column": d.column, "message": d.message, "token": d.token }),
    })
}

fn skew_statement(file: &SourceFile, name: &str) -> Res<SkewPolynomial> {
    let s = file
        .get(name)
        .ok_or_else(|| Failure::input(format!("no statement named `{name}`")))?;
    SkewPolynomial::from_weyl(&s.poly).map_err(|e| Failure::input(format!("{name}: {e}")))
}

fn classify(file: &SourceFile) -> Res<Outcome> {
    let mut text = String::new();
    let mut rows = Vec::new();
    for s in &file.statements {
        let x = SkewPolynomial::from_weyl(&s.poly)
            .map_err(|e| Failure::input(format!("{}: {e}", s.name)))?;
        let labels: Vec<&str> = support(&x).into_iter().map(|l| l.name()).collect();
        text.push_str(&format!("{}: {}  [{}]\n", s.name, x, labels.join(", ")));
        rows.push(json!({ "name": s.name, "labels": labels, "value": render::skew(&x) }));
    }
    Ok(Outcome {
        n: file.n,
        text,
        result: json!({ "statements": rows }),
        code: 0,
    })
}

fn commute(file: &SourceFile, a: &str, b: &str, upto: Option<u32>) -> Res<Outcome> {
    let x = skew_statement(file, a)?;
    let y = skew_statement(file, b)?;
    let mut c = skew_commutator(&x, &y)?;
    if let Some(d) = upto {
        c = c.truncate_below(d);
    }
    let text = match upto {
        Some(d) => format!("[{a}, {b}] = {c} + (terms of degree < {d})\n"),
        None => format!("[{a}, {b}] = {c}\n"),
    };
    let result = json!({
        "left": a,
        "right": b,
        "upto": upto,
        "degree": render::degree(c.degree()),
        "commutator": render::skew(&c),
    });
    Ok(Outcome {
        n: file.n,
        text,
        result,
        code: 0,
    })
}

/// A statement that is a single basis element, or a literal label.
fn resolve_index(file: Option<&SourceFile>, text: &str) -> Res<MultiIndex> {
    if let Some(f) = file {
        if f.get(text).is_some() {
            let x = skew_statement(f, text)?;
            return match x.terms().collect::<Vec<_>>().as_slice() {
                [(e, _)] => Ok(e.gamma().clone()),
                _ => Err(Failure::input(format!(
                    "{text}: expected a single basis element, found {x}"
                ))),
            };
        }
    }
    let (_, gamma) =
        dsl::parse_basis_label(text).map_err(|d| Failure::input(format!("label `{text}`: {d}")))?;
    if let Some(f) = file {
        if gamma.modes() != f.n {
            return Err(Failure::engine(Error::ModeMismatch {
                left: f.n,
                right: gamma.modes(),
            }));
        }
    }
    Ok(gamma)
}

fn chain_table(c: &Chain) -> String {
    let mut out = format!(
        "{:>5}  {:>6}  {:>9}  leading terms of the plus element\n",
        "level", "degree", "predicted"
    );
    for el in &c.elements {
        let deg = el
            .degree()
            .finite()
            .map_or("-inf".to_string(), |d| d.to_string());
        out.push_str(&format!(
            "{:>5}  {:>6}  {:>9}  {}\n",
            el.level,
            deg,
            el.predicted_bound,
            el.plus.leading_part()
        ));
    }
    if let Some(l) = c.died_at {
        out.push_str(&format!("chain vanishes from level {l} on\n"));
    }
    out
}

fn chain(
    file: Option<&SourceFile>,
    kind: Kind,
    steps: usize,
    seed: Option<&str>,
    partner: Option<&str>,
    leading_only: bool,
) -> Res<Outcome> {
    let seed = match (seed, file) {
        (Some(s), _) => resolve_index(file, s)?,
        (None, Some(f)) => {
            let first = f
                .statements
                .first()
                .ok_or_else(|| Failure::input("file has no statements"))?;
            resolve_index(file, &first.name.clone())?
        }
        (None, None) => return Err(Failure::input("give --seed or a file")),
    };
    // Seeds may be written with either orientation; the chain starts from the canonical one.
    let seed = if seed.alpha_vs_beta().is_lt() {
        seed.dagger()
    } else {
        seed
    };
    let opts = ChainOptions {
        leading_only,
        ..ChainOptions::default()
    };
    let c = match kind {
        Kind::I => {
            let p = partner.ok_or_else(|| Failure::input("a Type I chain needs --partner"))?;
            chain_i(&seed, &resolve_index(file, p)?, steps, &opts)?
        }
        Kind::Ii => chain_ii(&seed, steps, &opts)?,
    };
    Ok(Outcome {
        n: seed.modes(),
        text: chain_table(&c),
        result: render::chain(&c, leading_only),
        code: 0,
    })
}

fn generator_set(file: &SourceFile) -> Res<GeneratorSet> {
    GeneratorSet::from_source(file).map_err(|(name, e)| Failure::input(format!("{name}: {e}")))
}

fn run_decide(file: &SourceFile, all: bool) -> Res<Outcome> {
    let set = generator_set(file)?;
    let validated = validate(&set).map_err(|violations| Failure {
        code: EXIT_INPUT,
        message: violations
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("\n"),
        detail: json!({
            "violations": violations.iter().map(|v| json!({
                "kind": render::violation_kind(v),
                "message": v.to_string(),
            })).collect::<Vec<_>>(),
        }),
    })?;
    let v = decide(&validated, all)?;
    let mut text = String::new();
    for o in &v.outcomes {
        let mark = if o.holds() { "ok  " } else { "FAIL" };
        text.push_str(&format!("{mark} {}\n", o.condition));
        if let Some(w) = &o.witness {
            text.push_str(&format!(
                "     witness {}: {}\n",
                w.labels.join(", "),
                w.offending
            ));
        }
    }
    text.push_str(if v.finite { "finite\n" } else { "infinite\n" });
    let code = if v.finite { 0 } else { EXIT_INFINITE };
    Ok(Outcome {
        n: file.n,
        text,
        result: render::verdict(&v),
        code,
    })
}

fn closure_generators(file: &SourceFile) -> Res<Vec<SkewPolynomial>> {
    let mut gens = Vec::new();
    if !file.no_free {
        for k in 0..file.n {
            let tau = MultiIndex::tau(file.n, k)?;
            gens.push(SkewPolynomial::labelled(Sign::Plus, &tau, &int(1)));
        }
    }
    for s in &file.statements {
        gens.push(skew_statement(file, &s.name)?);
    }
    Ok(gens)
}

fn closure(file: &SourceFile, config: &ClosureConfig, show_basis: bool) -> Res<Outcome> {
    let r = lie_closure(&closure_generators(file)?, config)?;
    let trace: Vec<String> = r.trace.iter().map(usize::to_string).collect();
    let mut text = format!(
        "status: {}\ndimension: {} ({} modulo constants)\ntrace: {}\ndiscarded above degree {}: {}\n",
        render::status(r.status),
        r.dimension(),
        r.dimension_mod_constants(),
        trace.join(" "),
        config.max_degree,
        r.discarded,
    );
    if show_basis {
        for b in &r.basis {
            text.push_str(&format!("  {b}\n"));
        }
    }
    let code = if r.status == ClosureStatus::Closed {
        0
    } else {
        EXIT_CAP
    };
    Ok(Outcome {
        n: file.n,
        text,
        result: render::closure(&r),
        code,
    })
}

fn run(command: &Command) -> Res<Outcome> {
    match command {
        Command::Classify { file } => classify(&load(file)?),
        Command::Commute {
            file,
            name1,
            name2,
            upto,
        } => commute(&load(file)?, name1, name2, *upto),
        Command::Chain {
            kind,
            steps,
            seed,
            partner,
            leading_only,
            file,
        } => {
            let source = file.as_deref().map(load).transpose()?;
            chain(
                source.as_ref(),
                *kind,
                *steps,
                seed.as_deref(),
                partner.as_deref(),
                *leading_only,
            )
        }
        Command::Decide { file, all } => run_decide(&load(file)?, *all),
        Command::Closure {
            file,
            max_degree,
            max_dim,
            max_iters,
            basis,
        } => {
            let config = ClosureConfig {
                max_degree: *max_degree,
                max_dimension: *max_dim,
                max_iterations: *max_iters,
                ..ClosureConfig::default()
            };
            closure(&load(file)?, &config, *basis)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    match run(&cli.command) {
        Ok(out) => {
            if cli.json {
                println!(
                    "{}",
                    json!({ "command": name, "n": out.n, "result": out.result })
                );
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            if cli.json {
                println!(
                    "{}",
                    json!({ "command": name, "error": { "message": f.message, "exit_code": f.code, "detail": f.detail } })
                );
            } else {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
