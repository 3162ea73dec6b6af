//! Core of qpel: syntax, parsing, typing and derivation checking for a linear
//! quantum programming language with an effect logic.

pub mod derivation;
pub mod emit;
pub mod gen;
pub mod mutate;
pub mod parse;
pub mod rules;
pub mod script;
pub mod search;
pub mod session;
pub mod subst;
pub mod syntax;
pub mod typecheck;

pub use derivation::{Checker, Derivation, Premise, ProofError};
pub use rules::{Pack, Packs, Rule};
pub use script::{ProofScript, ScriptArg};
pub use syntax::{Context, Effect, Goal, Judgement, Term, Type};
