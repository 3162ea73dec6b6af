//! Checking every declaration of a parsed module in order.

use crate::derivation::{Checker, Derivation, ProofError};
use crate::parse::{Decl, Module};
use crate::rules::Packs;
use crate::syntax::Judgement;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    /// The declaration or lemma statement is ill formed.
    Type(String),
    /// The statement is well formed but its proof script is rejected.
    Proof(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Type(m) => write!(f, "type error: {m}"),
            Failure::Proof(m) => write!(f, "proof error: {m}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DeclReport {
    pub name: String,
    pub kind: &'static str,
    pub line: usize,
    pub outcome: Result<Vec<Derivation>, Failure>,
}

impl DeclReport {
    pub fn is_ok(&self) -> bool {
        self.outcome.is_ok()
    }
}

/// Checks one declaration, leaving the checker's hints set to its `using` blocks.
pub fn check_decl(checker: &mut Checker, decl: &Decl) -> Option<Result<Vec<Derivation>, Failure>> {
    let as_type = |e: ProofError| Failure::Type(e.to_string());
    match decl {
        Decl::Term { ctx, ty, body, using, .. } => {
            checker.set_hints(using.clone());
            let j = Judgement::typing(ctx, body.clone(), ty.clone());
            Some(checker.formation(&j).map(|d| vec![d]).map_err(as_type))
        }
        Decl::Effect { ctx, body, using, .. } => {
            checker.set_hints(using.clone());
            let j = Judgement::form(ctx, body.clone());
            Some(checker.formation(&j).map(|d| vec![d]).map_err(as_type))
        }
        Decl::Lemma { goal, proofs, using, .. } => {
            checker.set_hints(using.clone());
            for j in goal.expand() {
                if let Err(e) = checker.type_checker().check_judgement(&j) {
                    return Some(Err(Failure::Type(e.to_string())));
                }
            }
            Some(checker.check_goal(goal, proofs).map_err(|e| Failure::Proof(e.to_string())))
        }
        Decl::Check { .. } => None,
    }
}

/// Checks a module top to bottom. Proved lemmas become available to later
/// declarations as obligation discharges.
pub fn check_module(module: &Module, packs: &Packs, auto_depth: u32) -> Vec<DeclReport> {
    let mut checker = Checker::new(packs.clone()).with_depth(auto_depth);
    let mut out = Vec::new();
    for decl in &module.decls {
        let Some(outcome) = check_decl(&mut checker, decl) else {
            continue;
        };
        if let (Decl::Lemma { .. }, Ok(ds)) = (decl, &outcome) {
            for d in ds {
                checker.add_lemma(d.clone());
            }
        }
        out.push(DeclReport {
            name: decl.name().to_string(),
            kind: match decl {
                Decl::Term { .. } => "term",
                Decl::Effect { .. } => "effect",
                _ => "lemma",
            },
            line: decl.line(),
            outcome,
        });
    }
    out
}
