mod check;
mod show;

use clap::{Parser, Subcommand, ValueEnum};
use qpel_core::parse::{parse_module, Decl, Module};
use qpel_core::session::{check_module, Failure};
use qpel_core::{Packs, Type};
use qpel_semantics::{Interp, QuantumBackend, SemError, SetBackend, StochasticBackend, Triangle};
use rayon::prelude::*;
use std::process::ExitCode;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Code {
    Ok = 0,
    Usage = 1,
    Parse = 2,
    Type = 3,
    Proof = 4,
    Semantic = 5,
}

impl Code {
    /// The earliest failing stage wins.
    pub fn worst(self, other: Code) -> Code {
        match (self, other) {
            (Code::Ok, c) | (c, Code::Ok) => c,
            (a, b) => {
                if (a as i32) <= (b as i32) {
                    a
                } else {
                    b
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    Set,
    Stochastic,
    Quantum,
}

impl Backend {
    pub const ALL: [Backend; 3] = [Backend::Set, Backend::Stochastic, Backend::Quantum];

    pub fn name(self) -> &'static str {
        match self {
            Backend::Set => "set",
            Backend::Stochastic => "stochastic",
            Backend::Quantum => "quantum",
        }
    }

    pub fn from_name(s: &str) -> Option<Backend> {
        Backend::ALL.into_iter().find(|b| b.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VerifyArg {
    Set,
    Stochastic,
    Quantum,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(name = "qpel", version, about = "Linear quantum programs and their effect logic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse, typecheck and check the lemmas of each file.
    Check {
        /// Evaluate every lemma in these backends.
        #[arg(long, value_enum)]
        verify: Vec<VerifyArg>,
        /// Comma separated rule packs: core, qubit, beta-iso, scalars.
        #[arg(long)]
        rules: Option<String>,
        #[arg(long, default_value_t = 6)]
        auto_depth: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Leave out per-file timings.
        #[arg(long)]
        no_timing: bool,
        #[arg(required = true)]
        files: Vec<String>,
    },
    /// Print the denotation of a closed term.
    Eval {
        #[arg(long, value_enum)]
        backend: Backend,
        file: String,
        decl: String,
    },
    /// Print the weakest precondition of an effect under a term.
    Wp {
        #[arg(long)]
        cross_check: bool,
        file: String,
        term: String,
        effect: String,
    },
}

struct Fail(Code, String);

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check { verify, rules, auto_depth, format, no_timing, files } => {
            run_check(verify, rules, auto_depth, format, !no_timing, files)
        }
        Command::Eval { backend, file, decl } => run_eval(backend, &file, &decl),
        Command::Wp { cross_check, file, term, effect } => run_wp(cross_check, &file, &term, &effect),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code as u8)
        }
    }
}

fn run_check(
    verify: Vec<VerifyArg>,
    rules: Option<String>,
    auto_depth: u32,
    format: Format,
    timing: bool,
    files: Vec<String>,
) -> Result<Code, Fail> {
    let packs = match rules {
        Some(r) => Packs::parse(&r).map_err(|e| Fail(Code::Usage, e))?,
        None => Packs::default(),
    };
    let mut backends = Vec::new();
    for v in verify {
        let bs = match v {
            VerifyArg::Set => vec![Backend::Set],
            VerifyArg::Stochastic => vec![Backend::Stochastic],
            VerifyArg::Quantum => vec![Backend::Quantum],
            VerifyArg::All => Backend::ALL.to_vec(),
        };
        for b in bs {
            if !backends.contains(&b) {
                backends.push(b);
            }
        }
    }
    let opts = check::Options { verify: backends, packs, auto_depth };
    let reports: Vec<check::FileReport> = files
        .par_iter()
        .map(|path| match std::fs::read_to_string(path) {
            Ok(src) => check::check_source(path, &src, &opts),
            Err(e) => check::FileReport {
                path: path.clone(),
                parse_error: Some(format!("cannot read: {e}")),
                decls: Vec::new(),
                millis: 0,
            },
        })
        .collect();
    let code = reports.iter().map(|r| r.code()).fold(Code::Ok, Code::worst);
    match format {
        Format::Text => print!("{}", check::render_text(&reports, timing)),
        Format::Json => println!("{}", serde_json::to_string_pretty(&check::render_json(&reports, timing, code)).unwrap()),
    }
    Ok(code)
}

/// Parses and checks a file, failing on the first broken declaration.
fn load(path: &str) -> Result<Module, Fail> {
    let src = std::fs::read_to_string(path).map_err(|e| Fail(Code::Usage, format!("{path}: {e}")))?;
    let module = parse_module(&src).map_err(|e| Fail(Code::Parse, format!("{path}:{e}")))?;
    for r in check_module(&module, &Packs::all(), 6) {
        match r.outcome {
            Err(Failure::Type(m)) => return Err(Fail(Code::Type, format!("{} (line {}): {m}", r.name, r.line))),
            Err(Failure::Proof(m)) => return Err(Fail(Code::Proof, format!("{} (line {}): {m}", r.name, r.line))),
            Ok(_) => {}
        }
    }
    Ok(module)
}

fn find<'m>(m: &'m Module, name: &str) -> Result<&'m Decl, Fail> {
    m.find(name).ok_or_else(|| Fail(Code::Usage, format!("no declaration named `{name}`")))
}

fn sem(e: SemError) -> Fail {
    match e {
        SemError::Unsupported { .. } => Fail(Code::Usage, e.to_string()),
        _ => Fail(Code::Semantic, e.to_string()),
    }
}

fn run_eval(backend: Backend, file: &str, name: &str) -> Result<Code, Fail> {
    let module = load(file)?;
    let Decl::Term { ctx, ty, body, .. } = find(&module, name)? else {
        return Err(Fail(Code::Usage, format!("`{name}` is not a term")));
    };
    if !ctx.is_empty() {
        return Err(Fail(Code::Usage, format!("`{name}` is not closed: it depends on {ctx}")));
    }
    let out = match backend {
        Backend::Set => show::element(ty, &Interp::new(&SetBackend).term(ctx, body, ty).map_err(sem)?),
        Backend::Stochastic => {
            show::distribution(ty, &Interp::new(&StochasticBackend).term(ctx, body, ty).map_err(sem)?)
        }
        Backend::Quantum => {
            let f = Interp::new(&QuantumBackend).term(ctx, body, ty).map_err(sem)?;
            show::blocks(ty, &f.image(0, 0, 0))
        }
    };
    println!("{out}");
    Ok(Code::Ok)
}

fn run_wp(cross_check: bool, file: &str, term: &str, effect: &str) -> Result<Code, Fail> {
    let module = load(file)?;
    let Decl::Term { ctx, ty, body, .. } = find(&module, term)? else {
        return Err(Fail(Code::Usage, format!("`{term}` is not a term")));
    };
    let Decl::Effect { ctx: post_ctx, body: post, .. } = find(&module, effect)? else {
        return Err(Fail(Code::Usage, format!("`{effect}` is not an effect")));
    };
    let x = match post_ctx.0.as_slice() {
        [(x, a)] if a == ty => x.clone(),
        _ => {
            return Err(Fail(
                Code::Type,
                format!("shape mismatch: `{effect}` lives over {post_ctx} but `{term}` has type {ty}"),
            ))
        }
    };
    let q = QuantumBackend;
    let (pre, direct) = Interp::new(&q).wp_cross_check(ctx, body, ty, &x, post).map_err(sem)?;
    let over = ctx
        .0
        .iter()
        .map(|(_, a)| a.clone())
        .reduce(Type::tensor)
        .unwrap_or(Type::Unit);
    println!("{}", show::blocks(&over, &pre));
    if !cross_check {
        return Ok(Code::Ok);
    }
    println!("direct: {}", show::blocks(&over, &direct));
    let dev = show::max_abs_deviation(&pre, &direct);
    println!("max abs deviation: {dev:.3e}");
    Ok(if dev <= 1e-9 && q.pred_eq(&pre, &direct) { Code::Ok } else { Code::Semantic })
}
