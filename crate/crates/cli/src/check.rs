//! The `check` pipeline: parse, typecheck, check derivations, and evaluate
//! lemmas in the requested backends.

use crate::{Backend, Code};
use qpel_core::parse::{parse_module, Decl, Module};
use qpel_core::session::{check_module, DeclReport, Failure};
use qpel_core::{Derivation, Packs};
use qpel_semantics::{Interp, QuantumBackend, SemError, SetBackend, StochasticBackend, Triangle, Verdict};
use serde_json::{json, Value};
use std::fmt::Write;
use std::time::Instant;

pub struct Options {
    pub verify: Vec<Backend>,
    pub packs: Packs,
    pub auto_depth: u32,
}

pub struct BackendResult {
    pub backend: Backend,
    pub status: &'static str,
    pub deviation: Option<f64>,
    pub detail: Option<String>,
}

pub struct DeclResult {
    pub name: String,
    pub kind: &'static str,
    pub line: usize,
    pub status: &'static str,
    pub error: Option<String>,
    pub code: Code,
    pub backends: Vec<BackendResult>,
}

pub struct FileReport {
    pub path: String,
    pub parse_error: Option<String>,
    pub decls: Vec<DeclResult>,
    pub millis: u128,
}

impl FileReport {
    pub fn code(&self) -> Code {
        if self.parse_error.is_some() {
            return Code::Parse;
        }
        self.decls.iter().map(|d| d.code).fold(Code::Ok, Code::worst)
    }
}

fn verify_in<T: Triangle>(t: &T, backend: Backend, ds: &[Derivation]) -> BackendResult {
    match Interp::new(t).verify(ds, false) {
        Verdict::Holds { deviation, .. } => BackendResult {
            backend,
            status: "true",
            deviation: Some(deviation),
            detail: None,
        },
        Verdict::Skipped(what) => BackendResult {
            backend,
            status: "skipped",
            deviation: None,
            detail: Some(what),
        },
        Verdict::Fails { judgement, deviation, reason } => BackendResult {
            backend,
            status: "false",
            deviation: deviation.is_finite().then_some(deviation),
            detail: Some(match reason {
                Some(r) => format!("{judgement}: {r}"),
                None => judgement.to_string(),
            }),
        },
    }
}

pub fn verify(backend: Backend, ds: &[Derivation]) -> BackendResult {
    match backend {
        Backend::Set => verify_in(&SetBackend, backend, ds),
        Backend::Stochastic => verify_in(&StochasticBackend, backend, ds),
        Backend::Quantum => verify_in(&QuantumBackend, backend, ds),
    }
}

fn defined_in<T: Triangle>(t: &T, backend: Backend, decl: &Decl) -> BackendResult {
    let i = Interp::new(t);
    let r = match decl {
        Decl::Term { ctx, ty, body, .. } => i.term(ctx, body, ty).map(|_| ()),
        Decl::Effect { ctx, body, .. } => i.effect(ctx, body).map(|_| ()),
        _ => Ok(()),
    };
    let (status, detail) = match r {
        Ok(()) => ("true", None),
        Err(SemError::Unsupported { what, .. }) => ("skipped", Some(what)),
        Err(e) => ("false", Some(e.to_string())),
    };
    BackendResult {
        backend,
        status,
        deviation: None,
        detail,
    }
}

fn defined(backend: Backend, decl: &Decl) -> BackendResult {
    match backend {
        Backend::Set => defined_in(&SetBackend, backend, decl),
        Backend::Stochastic => defined_in(&StochasticBackend, backend, decl),
        Backend::Quantum => defined_in(&QuantumBackend, backend, decl),
    }
}

fn has_false(rs: &[BackendResult]) -> bool {
    rs.iter().any(|r| r.status == "false")
}

pub fn check_source(path: &str, src: &str, opts: &Options) -> FileReport {
    let start = Instant::now();
    let module = match parse_module(src) {
        Ok(m) => m,
        Err(e) => {
            return FileReport {
                path: path.to_string(),
                parse_error: Some(e.to_string()),
                decls: Vec::new(),
                millis: start.elapsed().as_millis(),
            }
        }
    };
    let reports = check_module(&module, &opts.packs, opts.auto_depth);
    let mut decls = check_decls(&reports, opts);
    decls.extend(run_directives(&module, &reports));
    FileReport {
        path: path.to_string(),
        parse_error: None,
        decls,
        millis: start.elapsed().as_millis(),
    }
}

fn check_decls(reports: &[DeclReport], opts: &Options) -> Vec<DeclResult> {
    let mut out = Vec::new();
    for r in reports {
        let mut d = DeclResult {
            name: r.name.clone(),
            kind: r.kind,
            line: r.line,
            status: if r.kind == "lemma" { "lemma-checked" } else { "typechecked" },
            error: None,
            code: Code::Ok,
            backends: Vec::new(),
        };
        match &r.outcome {
            Err(Failure::Type(m)) => {
                d.status = "type-error";
                d.error = Some(m.clone());
                d.code = Code::Type;
            }
            Err(Failure::Proof(m)) => {
                d.status = "proof-error";
                d.error = Some(m.clone());
                d.code = Code::Proof;
            }
            Ok(ds) if r.kind == "lemma" => {
                d.backends = opts.verify.iter().map(|&b| verify(b, ds)).collect();
                if has_false(&d.backends) {
                    d.status = "semantic-mismatch";
                    d.code = Code::Semantic;
                } else if d.backends.iter().any(|b| b.status == "true") {
                    d.status = "backend-verified";
                }
            }
            Ok(_) => {}
        }
        out.push(d);
    }
    out
}

fn run_directives(module: &Module, reports: &[DeclReport]) -> Vec<DeclResult> {
    let mut out = Vec::new();
    for decl in &module.decls {
        let Decl::Check { name, backend, line } = decl else { continue };
        let mut d = DeclResult {
            name: name.clone(),
            kind: "check",
            line: *line,
            status: "backend-verified",
            error: None,
            code: Code::Ok,
            backends: Vec::new(),
        };
        let backends = match backend.as_str() {
            "all" => Backend::ALL.to_vec(),
            b => match Backend::from_name(b) {
                Some(b) => vec![b],
                None => {
                    d.status = "type-error";
                    d.error = Some(format!("unknown backend `{b}`"));
                    d.code = Code::Type;
                    out.push(d);
                    continue;
                }
            },
        };
        let target = module.find(name);
        let prior = reports.iter().find(|r| &r.name == name).map(|r| &r.outcome);
        match (target, prior) {
            (None, _) => {
                d.status = "type-error";
                d.error = Some(format!("no declaration named `{name}`"));
                d.code = Code::Type;
            }
            (Some(_), Some(Err(_))) => {
                d.status = "skipped";
                d.error = Some(format!("`{name}` did not check"));
            }
            (Some(Decl::Lemma { .. }), Some(Ok(ds))) => {
                d.backends = backends.iter().map(|&b| verify(b, ds)).collect();
            }
            (Some(target), _) => {
                d.backends = backends.iter().map(|&b| defined(b, target)).collect();
            }
        }
        if has_false(&d.backends) {
            d.status = "semantic-mismatch";
            d.code = Code::Semantic;
        }
        out.push(d);
    }
    out
}

fn deviation_text(d: f64) -> String {
    if d == 0.0 {
        "exact".into()
    } else {
        format!("deviation {d:.3e}")
    }
}

pub fn render_text(reports: &[FileReport], timing: bool) -> String {
    let mut s = String::new();
    for r in reports {
        let _ = write!(s, "{}", r.path);
        if timing {
            let _ = write!(s, " ({} ms)", r.millis);
        }
        s.push('\n');
        if let Some(e) = &r.parse_error {
            let _ = writeln!(s, "  parse error at {e}");
            continue;
        }
        for d in &r.decls {
            let _ = write!(s, "  {} {} (line {}): {}", d.kind, d.name, d.line, d.status);
            if let Some(e) = &d.error {
                let _ = write!(s, ": {e}");
            }
            s.push('\n');
            for b in &d.backends {
                let _ = write!(s, "    {}: {}", b.backend.name(), b.status);
                match (b.status, b.deviation) {
                    ("true", Some(dev)) if b.backend == Backend::Quantum => {
                        let _ = write!(s, " ({})", deviation_text(dev));
                    }
                    _ => {}
                }
                if let Some(x) = &b.detail {
                    let _ = write!(s, " ({x})");
                }
                s.push('\n');
            }
        }
        let failed = r.decls.iter().filter(|d| d.code != Code::Ok).count();
        let _ = writeln!(s, "  {} declarations, {failed} failed", r.decls.len());
    }
    s
}

pub fn render_json(reports: &[FileReport], timing: bool, exit: Code) -> Value {
    let files: Vec<Value> = reports
        .iter()
        .map(|r| {
            let decls: Vec<Value> = r
                .decls
                .iter()
                .map(|d| {
                    let backends: serde_json::Map<String, Value> = d
                        .backends
                        .iter()
                        .map(|b| {
                            (
                                b.backend.name().to_string(),
                                json!({ "status": b.status, "deviation": b.deviation, "detail": b.detail }),
                            )
                        })
                        .collect();
                    json!({
                        "name": d.name,
                        "kind": d.kind,
                        "line": d.line,
                        "status": d.status,
                        "error": d.error,
                        "exit": d.code as i32,
                        "backends": backends,
                    })
                })
                .collect();
            let mut v = json!({
                "path": r.path,
                "exit": r.code() as i32,
                "parse_error": r.parse_error,
                "declarations": decls,
            });
            if timing {
                v["time_ms"] = json!(r.millis as u64);
            }
            v
        })
        .collect();
    json!({ "files": files, "exit": exit as i32 })
}
