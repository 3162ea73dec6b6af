//! Bounded proof search for inequalities, used by `auto`, holes and obligations.

use crate::derivation::{canonical, Checker, Derivation, Key, Premise, ProofError};
use crate::rules::Rule;
use crate::script::ScriptArg;
use crate::syntax::{Context, Effect, Judgement};
use std::collections::HashMap;

/// Rules whose premises are all formation judgements, tried first.
const AXIOMS: &[Rule] = &[
    Rule::LeqRef,
    Rule::ZeroLeq,
    Rule::BotBot,
    Rule::Ovee0,
    Rule::Ortho2,
    Rule::UnitL,
    Rule::UnitR,
    Rule::Assoc,
    Rule::Comm,
    Rule::CaseBot,
    Rule::CaseTimes,
    Rule::BetaPlus1Eff,
    Rule::BetaPlus2Eff,
    Rule::EtaPlusEff,
    Rule::QbitXProj,
    Rule::QbitZProj,
    Rule::QbitXzZx,
];

const STRUCTURAL: &[Rule] = &[
    Rule::BotAntitone,
    Rule::LeqOvee,
    Rule::OveeComm,
    Rule::PerpRotate,
    Rule::OveeAssoc,
    Rule::Ortho1,
    Rule::OveeMono,
    Rule::DistL,
    Rule::DistR,
    Rule::CaseMono,
    Rule::CaseOvee,
    Rule::CaseLeq,
    Rule::CaseCong,
];

struct Search<'c> {
    checker: &'c Checker,
    pool: Vec<Effect>,
    failed: HashMap<(Key, bool), u32>,
}

fn candidate_pool(ctx: &Context, lhs: &Effect, rhs: &Effect, checker: &Checker) -> Vec<Effect> {
    let mut subs = Vec::new();
    lhs.subeffects(&mut subs);
    rhs.subeffects(&mut subs);
    let mut pool = vec![Effect::Zero, Effect::one()];
    for s in subs {
        let o = Effect::orth(s.clone());
        if let Effect::Case { scrutinee, left, on_left, right, on_right } = &s {
            pool.push(Effect::case(
                (**scrutinee).clone(),
                left,
                Effect::orth((**on_left).clone()),
                right,
                Effect::orth((**on_right).clone()),
            ));
        }
        if let Effect::Ovee(a, b) = &s {
            pool.push(Effect::Ovee(b.clone(), a.clone()));
        }
        pool.push(s);
        pool.push(Effect::orth(o.clone()));
        pool.push(o);
    }
    let mut out: Vec<Effect> = Vec::new();
    for e in pool {
        if out.contains(&e) {
            continue;
        }
        if checker.type_checker().check_effect(ctx, &e).is_ok() {
            out.push(e);
        }
    }
    out
}

impl Checker {
    /// Iterative-deepening search for a derivation of `goal`.
    pub fn prove(&self, goal: &Judgement, depth: u32) -> Result<Derivation, ProofError> {
        if goal.is_formation() {
            return self.formation(goal);
        }
        let key = canonical(goal);
        if let Some(d) = self.proved.borrow().get(&key) {
            return Ok(d.clone());
        }
        let pool = match goal {
            Judgement::EffLeq { ctx, lhs, rhs } => candidate_pool(ctx, lhs, rhs, self),
            _ => Vec::new(),
        };
        let mut s = Search {
            checker: self,
            pool,
            failed: HashMap::new(),
        };
        for d in 1..=depth {
            if let Some(found) = s.go(goal, d, false) {
                self.proved.borrow_mut().insert(key, found.clone());
                return Ok(found);
            }
        }
        Err(ProofError::SearchFailed {
            goal: goal.to_string(),
            depth,
        })
    }
}

impl Search<'_> {
    fn go(&mut self, goal: &Judgement, depth: u32, no_trans: bool) -> Option<Derivation> {
        if goal.is_formation() {
            return self.checker.formation(goal).ok();
        }
        if depth == 0 {
            return None;
        }
        let key = canonical(goal);
        if let Some(d) = self.checker.proved.borrow().get(&key) {
            return Some(d.clone());
        }
        let mkey = (key.clone(), no_trans);
        if self.failed.get(&mkey).is_some_and(|&d| d >= depth) {
            return None;
        }
        let found = self.attempt(goal, depth, no_trans);
        match &found {
            Some(d) => {
                self.checker.proved.borrow_mut().insert(key, d.clone());
            }
            None => {
                let e = self.failed.entry(mkey).or_insert(0);
                *e = (*e).max(depth);
            }
        }
        found
    }

    fn attempt(&mut self, goal: &Judgement, depth: u32, no_trans: bool) -> Option<Derivation> {
        let rules: Vec<Rule> = match goal {
            Judgement::TermEq { .. } => vec![Rule::Ref],
            Judgement::EffLeq { .. } => AXIOMS.iter().chain(STRUCTURAL).copied().collect(),
            _ => return None,
        };
        for rule in rules {
            if !self.checker.packs.allows(rule) {
                continue;
            }
            if let Some(d) = self.apply(rule, Vec::new(), goal, depth, None) {
                return Some(d);
            }
        }
        if no_trans {
            return None;
        }
        let (lhs, rhs) = match goal {
            Judgement::EffLeq { lhs, rhs, .. } => (lhs, rhs),
            _ => return None,
        };
        let pool = self.pool.clone();
        for mid in pool {
            if mid == *lhs || mid == *rhs {
                continue;
            }
            let args = vec![("mid".to_string(), ScriptArg::Effect(mid))];
            if let Some(d) = self.apply(Rule::LeqTrans, args, goal, depth, Some(0)) {
                return Some(d);
            }
        }
        None
    }

    fn apply(
        &mut self,
        rule: Rule,
        args: Vec<(String, ScriptArg)>,
        goal: &Judgement,
        depth: u32,
        no_trans_at: Option<usize>,
    ) -> Option<Derivation> {
        let premises = self.checker.instantiate(rule, &args, goal).ok()?;
        let mut proofs: Vec<(usize, Judgement)> = Vec::new();
        let mut out: Vec<Option<Derivation>> = vec![None; premises.len()];
        for (i, p) in premises.iter().enumerate() {
            match p {
                Premise::Proof(j) => proofs.push((i, j.clone())),
                Premise::Form(_) => {}
                Premise::Equiv(..) => return None,
            }
        }
        for (i, j) in &proofs {
            out[*i] = Some(self.go(j, depth - 1, no_trans_at == Some(*i))?);
        }
        for (i, p) in premises.iter().enumerate() {
            if let Premise::Form(j) = p {
                out[i] = Some(self.checker.formation(j).ok()?);
            }
        }
        Some(Derivation {
            rule,
            args,
            conclusion: goal.clone(),
            premises: out.into_iter().map(Option::unwrap).collect(),
        })
    }
}
