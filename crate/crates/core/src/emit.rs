//! Derivations of typing and formation judgements, read off a successful type check.

use crate::derivation::{canonical, Checker, Derivation, Key, Premise, ProofError};
use crate::rules::Rule;
use crate::script::ScriptArg;
use crate::syntax::{Context, Effect, Judgement, Term};
use crate::typecheck::CheckInfo;
use std::collections::HashMap;

/// The rule that introduces the outermost constructor of a formation judgement.
pub fn syntax_rule(j: &Judgement) -> Option<Rule> {
    Some(match j {
        Judgement::Typing { term, .. } => match term {
            Term::Var(_) => Rule::Var,
            Term::Unit => Rule::UnitIntro,
            Term::Plus => Rule::QbitNew,
            Term::Pair(_, _) => Rule::Tensor,
            Term::Cz(_, _) => Rule::QbitCz,
            Term::Inl(_) => Rule::Inl,
            Term::Inr(_) => Rule::Inr,
            Term::PauliX(_) => Rule::QbitX,
            Term::PauliZ(_) => Rule::QbitZ,
            Term::LetPair { .. } => Rule::Let,
            Term::Case { .. } => Rule::Case,
            Term::Measure(_) => Rule::Measure,
        },
        Judgement::EffForm { eff, .. } => match eff {
            Effect::Zero => Rule::Eff0,
            Effect::Const(_) => Rule::EffConst,
            Effect::Orth(_) => Rule::EffBot,
            Effect::Ovee(_, _) => Rule::EffOvee,
            Effect::Scale(_, _) => Rule::EffMult,
            Effect::Case { .. } => Rule::EffCase,
            Effect::Proj(_, _) => Rule::QbitProj,
        },
        _ => return None,
    })
}

/// Context order in which a multiplicative rule states its conclusion.
fn conclusion_order(rule: Rule, j: &Judgement) -> Option<Context> {
    let ctx = j.ctx();
    let first = match (rule, j) {
        (Rule::Tensor | Rule::QbitCz, Judgement::Typing { term: Term::Pair(m, _) | Term::Cz(m, _), .. }) => {
            m.free_vars()
        }
        (Rule::Let, Judgement::Typing { term: Term::LetPair { bound, .. }, .. }) => bound.free_vars(),
        (Rule::Case, Judgement::Typing { term: Term::Case { scrutinee, .. }, .. }) => scrutinee.free_vars(),
        (Rule::Measure, Judgement::Typing { term: Term::Measure(bs), .. }) => {
            bs.iter().flat_map(|b| b.guard.free_vars()).collect()
        }
        (Rule::EffCase, Judgement::EffForm { eff: Effect::Case { scrutinee, .. }, .. }) => {
            let fm = scrutinee.free_vars();
            let mut out = ctx.without(&fm);
            out.0.extend(ctx.restrict(&fm).0);
            return Some(out);
        }
        _ => return None,
    };
    let mut out = ctx.restrict(&first);
    out.0.extend(ctx.without(&first).0);
    Some(out)
}

/// Adjacent swaps turning `from` into `to`, as `exch` positions.
fn swaps(from: &Context, to: &Context) -> Vec<usize> {
    let mut cur = from.0.clone();
    let mut out = Vec::new();
    for i in 0..to.0.len() {
        let j = match cur.iter().position(|e| *e == to.0[i]) {
            Some(j) => j,
            None => return Vec::new(),
        };
        for k in (i..j).rev() {
            cur.swap(k, k + 1);
            out.push(k);
        }
    }
    out
}

impl Checker {
    /// Builds the derivation of `j` from the result of type checking it.
    pub fn emit(&self, j: &Judgement, info: &CheckInfo) -> Result<Derivation, ProofError> {
        let obligations: HashMap<Key, Derivation> = info
            .obligations
            .iter()
            .filter_map(|(o, d)| d.clone().map(|d| (canonical(o), d)))
            .collect();
        self.emit_node(j, &obligations)
    }

    fn emit_node(&self, j: &Judgement, obl: &HashMap<Key, Derivation>) -> Result<Derivation, ProofError> {
        let rule = syntax_rule(j).expect("formation judgement");
        let ctx = j.ctx();
        let mut chain = Vec::new();
        let mut target = j.clone();
        if let Some(order) = conclusion_order(rule, j) {
            if ctx.normalized() == *ctx && order != *ctx {
                let mut cur = ctx.clone();
                for k in swaps(ctx, &order) {
                    chain.push((k, j.with_ctx(cur.clone())));
                    cur.0.swap(k, k + 1);
                }
                target = j.with_ctx(cur);
            }
        }
        let premises = self
            .instantiate(rule, &[], &target)
            .map_err(|reason| ProofError::NoMatch {
                rule,
                goal: target.to_string(),
                reason,
            })?;
        let mut kids = Vec::new();
        for p in premises {
            match p {
                Premise::Form(pj) => kids.push(self.emit_node(&pj, obl)?),
                Premise::Proof(pj) => match obl.get(&canonical(&pj)) {
                    Some(d) => kids.push(d.clone()),
                    None => kids.push(self.discharge(&pj, self.auto_depth)?),
                },
                Premise::Equiv(..) => unreachable!("formation rules have no equivalence premises"),
            }
        }
        let mut d = Derivation {
            rule,
            args: Vec::new(),
            conclusion: target,
            premises: kids,
        };
        for (k, concl) in chain.into_iter().rev() {
            d = Derivation {
                rule: Rule::Exch,
                args: vec![("at".into(), ScriptArg::Nat(k))],
                conclusion: concl,
                premises: vec![d],
            };
        }
        Ok(d)
    }
}
