//! Derivation trees and the top-down checker that builds them from proof scripts.

use crate::parse::print::{effect_inline, term_inline};
use crate::rules::{ArgKind, Packs, Rule};
use crate::script::{ProofScript, ScriptArg};
use crate::subst::{
    align, align2, canonical_effect, canonical_term, fresh_name, open, subst_effect,
    subst_term, subst_term_many, Binding,
};
use crate::syntax::{Branch, Context, Effect, Goal, Judgement, Name, Term, Type};
use crate::typecheck::{ObligationResolver, TypeChecker, TypeError, TypeMap};
use serde_json::{json, Value};
use std::cell::{Cell, RefCell};
use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

/// A node of a derivation: one rule instance with its conclusion and premises.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation {
    pub rule: Rule,
    pub args: Vec<(String, ScriptArg)>,
    pub conclusion: Judgement,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    pub fn leaf(rule: Rule, conclusion: Judgement) -> Derivation {
        Derivation {
            rule,
            args: Vec::new(),
            conclusion,
            premises: Vec::new(),
        }
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.premises.iter().map(Derivation::depth).max().unwrap_or(0)
    }

    pub fn rules_used(&self) -> BTreeSet<Rule> {
        let mut out = BTreeSet::new();
        self.visit(&mut |d| {
            out.insert(d.rule);
        });
        out
    }

    pub fn visit<F: FnMut(&Derivation)>(&self, f: &mut F) {
        f(self);
        for p in &self.premises {
            p.visit(f);
        }
    }

    /// A fully explicit script that reproduces this derivation.
    pub fn to_script(&self) -> ProofScript {
        let premises = if self.rule == Rule::MeasureEq && !self.premises.is_empty() {
            let n = (self.premises.len() - 1) / 3;
            let mut out = vec![self.premises[0].to_script()];
            for i in 0..n {
                out.push(ProofScript::Both(
                    Box::new(self.premises[1 + 2 * i].to_script()),
                    Box::new(self.premises[2 + 2 * i].to_script()),
                ));
            }
            for p in &self.premises[1 + 2 * n..] {
                out.push(p.to_script());
            }
            out
        } else {
            self.premises.iter().map(Derivation::to_script).collect()
        };
        ProofScript::Rule {
            rule: self.rule,
            args: self.args.clone(),
            premises,
        }
    }

    pub fn to_json(&self) -> Value {
        let args: serde_json::Map<String, Value> = self
            .args
            .iter()
            .map(|(k, v)| (k.clone(), json!(v.to_surface())))
            .collect();
        json!({
            "rule": self.rule.name(),
            "args": Value::Object(args),
            "conclusion": self.conclusion.to_string(),
            "premises": self.premises.iter().map(Derivation::to_json).collect::<Vec<_>>(),
        })
    }

    /// Indented text rendering, one rule instance per line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(0, &mut out);
        out
    }

    fn render_into(&self, indent: usize, out: &mut String) {
        out.push_str(&"  ".repeat(indent));
        out.push_str(&format!("[{}] {}\n", self.rule, self.conclusion));
        for p in &self.premises {
            p.render_into(indent + 1, out);
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum ProofError {
    #[error("rule `{rule}` does not apply to {goal}: {reason}")]
    NoMatch {
        rule: Rule,
        goal: String,
        reason: String,
    },
    #[error("rule `{0}` belongs to the `{1}` pack, which is not enabled")]
    Disabled(Rule, &'static str),
    #[error("rule `{rule}` has {expected} premises ({proofs} besides formation), but the script gives {got}")]
    Arity {
        rule: Rule,
        expected: usize,
        proofs: usize,
        got: usize,
    },
    #[error("rule `{rule}`: {message}")]
    BadArgument { rule: Rule, message: String },
    #[error("{0}")]
    Type(#[from] TypeError),
    #[error("no derivation of {goal} found within depth {depth}")]
    SearchFailed { goal: String, depth: u32 },
    #[error("{search}; the `using` scripts failed too, the first with: {hint}")]
    HintsFailed {
        hint: Box<ProofError>,
        search: Box<ProofError>,
    },
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("a `both` script only proves an equivalence premise")]
    MisplacedBoth,
    #[error("in premise {index} of `{rule}`: {inner}")]
    InPremise {
        rule: Rule,
        index: usize,
        inner: Box<ProofError>,
    },
}

impl ProofError {
    /// The innermost error, skipping premise wrappers.
    pub fn root(&self) -> &ProofError {
        match self {
            ProofError::InPremise { inner, .. } => inner.root(),
            other => other,
        }
    }
}

/// A premise of a rule instance.
#[derive(Clone, Debug, PartialEq)]
pub enum Premise {
    /// Inequality or term equation, proved by a child script.
    Proof(Judgement),
    /// Typing or effect formation, discharged by the type checker when omitted.
    Form(Judgement),
    /// Effect equivalence, proved in both directions.
    Equiv(Context, Effect, Effect),
}

impl Premise {
    fn is_form(&self) -> bool {
        matches!(self, Premise::Form(_))
    }
}

pub(crate) type Key = Judgement;

pub(crate) fn canonical(j: &Judgement) -> Key {
    match j {
        Judgement::Typing { ctx, term, ty } => Judgement::Typing {
            ctx: ctx.clone(),
            term: canonical_term(term),
            ty: ty.clone(),
        },
        Judgement::TermEq { ctx, lhs, rhs, ty } => Judgement::TermEq {
            ctx: ctx.clone(),
            lhs: canonical_term(lhs),
            rhs: canonical_term(rhs),
            ty: ty.clone(),
        },
        Judgement::EffForm { ctx, eff } => Judgement::EffForm {
            ctx: ctx.clone(),
            eff: canonical_effect(eff),
        },
        Judgement::EffLeq { ctx, lhs, rhs } => Judgement::EffLeq {
            ctx: ctx.clone(),
            lhs: canonical_effect(lhs),
            rhs: canonical_effect(rhs),
        },
    }
}

/// Proof checker and prover for one rule-pack configuration.
///
/// Obligations raised while type checking are resolved, in order, by the
/// `using` hints of the current declaration, by previously proved lemmas and
/// finally by bounded search.
pub struct Checker {
    pub packs: Packs,
    pub auto_depth: u32,
    hints: Vec<ProofScript>,
    lemmas: Vec<(Key, Derivation)>,
    epoch: Cell<u64>,
    formation_cache: RefCell<HashMap<Key, Result<Derivation, (u64, ProofError)>>>,
    pub(crate) proved: RefCell<HashMap<Key, Derivation>>,
    stack: RefCell<Vec<Key>>,
}

pub const DEFAULT_AUTO_DEPTH: u32 = 6;

impl Checker {
    pub fn new(packs: Packs) -> Checker {
        Checker {
            packs,
            auto_depth: DEFAULT_AUTO_DEPTH,
            hints: Vec::new(),
            lemmas: Vec::new(),
            epoch: Cell::new(0),
            formation_cache: RefCell::new(HashMap::new()),
            proved: RefCell::new(HashMap::new()),
            stack: RefCell::new(Vec::new()),
        }
    }

    pub fn with_depth(mut self, depth: u32) -> Checker {
        self.auto_depth = depth;
        self
    }

    /// Replaces the obligation hints (the `using` blocks of a declaration).
    pub fn set_hints(&mut self, hints: Vec<ProofScript>) {
        self.hints = hints;
        self.epoch.set(self.epoch.get() + 1);
    }

    pub fn add_lemma(&mut self, d: Derivation) {
        self.lemmas.push((canonical(&d.conclusion), d));
        self.epoch.set(self.epoch.get() + 1);
    }

    pub fn type_checker(&self) -> TypeChecker<'_> {
        TypeChecker::new(self.packs.clone(), Some(self))
    }

    fn trusting(&self) -> TypeChecker<'static> {
        TypeChecker::trusting(self.packs.clone())
    }

    /// Checks the statement of a lemma and then its proof scripts. An
    /// equivalence takes one script for both directions or one per direction.
    pub fn check_goal(&self, goal: &Goal, scripts: &[ProofScript]) -> Result<Vec<Derivation>, ProofError> {
        let js = goal.expand();
        for j in &js {
            self.type_checker().check_judgement(j)?;
        }
        if scripts.is_empty() || scripts.len() > js.len() {
            return Err(ProofError::BadArgument {
                rule: Rule::LeqRef,
                message: format!("expected {} proof scripts, got {}", js.len(), scripts.len()),
            });
        }
        let mut out = Vec::new();
        for (i, j) in js.iter().enumerate() {
            let s = scripts.get(i).unwrap_or(&scripts[0]);
            out.push(self.check(s, j)?);
        }
        Ok(out)
    }

    /// Checks `script` against `goal`, returning the full derivation.
    pub fn check(&self, script: &ProofScript, goal: &Judgement) -> Result<Derivation, ProofError> {
        match script {
            ProofScript::Hole | ProofScript::Auto(None) => self.discharge(goal, self.auto_depth),
            ProofScript::Auto(Some(d)) => self.discharge(goal, *d),
            ProofScript::Both(_, _) => Err(ProofError::MisplacedBoth),
            ProofScript::Unknown(name) => Err(ProofError::UnknownRule(name.clone())),
            ProofScript::Rule {
                rule,
                args,
                premises,
            } => {
                let rule = *rule;
                if !self.packs.allows(rule) {
                    return Err(ProofError::Disabled(rule, rule.pack().name()));
                }
                validate_args(rule, args)?;
                let inst = self.instantiate(rule, args, goal).map_err(|reason| {
                    ProofError::NoMatch {
                        rule,
                        goal: goal.to_string(),
                        reason,
                    }
                })?;
                let proofs = inst.iter().filter(|p| !p.is_form()).count();
                let all = premises.len() == inst.len();
                if !all && premises.len() != proofs {
                    return Err(ProofError::Arity {
                        rule,
                        expected: inst.len(),
                        proofs,
                        got: premises.len(),
                    });
                }
                let mut children = premises.iter();
                let mut out = Vec::new();
                for (index, p) in inst.iter().enumerate() {
                    let script = if all || !p.is_form() {
                        children.next()
                    } else {
                        None
                    };
                    let wrap = |inner: ProofError| ProofError::InPremise {
                        rule,
                        index: index + 1,
                        inner: Box::new(inner),
                    };
                    match (p, script) {
                        (Premise::Form(j), None) => out.push(self.formation(j).map_err(wrap)?),
                        (Premise::Form(j), Some(s)) | (Premise::Proof(j), Some(s)) => {
                            out.push(self.check(s, j).map_err(wrap)?)
                        }
                        (Premise::Equiv(ctx, a, b), Some(s)) => {
                            let fwd = Judgement::leq(ctx, a.clone(), b.clone());
                            let bwd = Judgement::leq(ctx, b.clone(), a.clone());
                            let (s1, s2) = match s {
                                ProofScript::Both(s1, s2) => (&**s1, &**s2),
                                other => (other, other),
                            };
                            out.push(self.check(s1, &fwd).map_err(wrap)?);
                            out.push(self.check(s2, &bwd).map_err(wrap)?);
                        }
                        (_, None) => unreachable!("proof premises always take a script"),
                    }
                }
                Ok(Derivation {
                    rule,
                    args: args.clone(),
                    conclusion: goal.clone(),
                    premises: out,
                })
            }
        }
    }

    /// Automatic discharge: formation by type checking, everything else by
    /// hints, lemmas and search.
    pub fn discharge(&self, goal: &Judgement, depth: u32) -> Result<Derivation, ProofError> {
        if goal.is_formation() {
            return self.formation(goal);
        }
        self.resolve_at(goal, depth)
    }

    /// Derivation of a typing or formation judgement, built by the type checker.
    pub fn formation(&self, j: &Judgement) -> Result<Derivation, ProofError> {
        let key = canonical(j);
        if let Some(hit) = self.formation_cache.borrow().get(&key) {
            match hit {
                Ok(d) => return Ok(d.clone()),
                Err((epoch, e)) if *epoch == self.epoch.get() => return Err(e.clone()),
                Err(_) => {}
            }
        }
        let result = self.formation_uncached(j);
        let stored = match &result {
            Ok(d) => Ok(d.clone()),
            Err(e) => Err((self.epoch.get(), e.clone())),
        };
        self.formation_cache.borrow_mut().insert(key, stored);
        result
    }

    fn formation_uncached(&self, j: &Judgement) -> Result<Derivation, ProofError> {
        let tc = self.type_checker();
        let info = match j {
            Judgement::Typing { ctx, term, ty } => tc.check_term(ctx, term, ty)?,
            Judgement::EffForm { ctx, eff } => tc.check_effect(ctx, eff)?,
            _ => unreachable!("formation of a non-formation judgement"),
        };
        self.emit(j, &info)
    }

    fn resolve_at(&self, goal: &Judgement, depth: u32) -> Result<Derivation, ProofError> {
        let key = canonical(goal);
        if self.stack.borrow().contains(&key) {
            return Err(ProofError::SearchFailed {
                goal: goal.to_string(),
                depth,
            });
        }
        self.stack.borrow_mut().push(key.clone());
        let result = self.resolve_inner(goal, &key, depth);
        self.stack.borrow_mut().pop();
        result
    }

    fn resolve_inner(&self, goal: &Judgement, key: &Key, depth: u32) -> Result<Derivation, ProofError> {
        let mut hint_error = None;
        for h in &self.hints {
            match self.check(h, goal) {
                Ok(d) => return Ok(d),
                Err(e) => {
                    hint_error.get_or_insert(e);
                }
            }
        }
        for (k, d) in &self.lemmas {
            if k == key {
                return Ok(d.clone());
            }
        }
        self.prove(goal, depth).map_err(|e| match hint_error {
            Some(h) if matches!(e, ProofError::SearchFailed { .. }) => ProofError::HintsFailed {
                hint: Box::new(h),
                search: Box::new(e),
            },
            _ => e,
        })
    }

    // ---- helpers shared by rule instantiation

    pub(crate) fn term_types(&self, ctx: &Context, t: &Term, ty: &Type) -> Result<TypeMap, String> {
        self.trusting()
            .check_term(ctx, t, ty)
            .map(|i| i.types)
            .map_err(|e| e.to_string())
    }

    pub(crate) fn effect_types(&self, ctx: &Context, e: &Effect) -> Result<TypeMap, String> {
        self.trusting()
            .check_effect(ctx, e)
            .map(|i| i.types)
            .map_err(|e| e.to_string())
    }

    fn infer(&self, ctx: &Context, t: &Term) -> Result<Type, String> {
        self.trusting()
            .infer_term(ctx, t)
            .map(|(ty, _)| ty)
            .map_err(|e| e.to_string())
    }

    /// Premises of `rule` concluding `goal`, or the reason it does not apply.
    pub fn instantiate(
        &self,
        rule: Rule,
        args: &[(String, ScriptArg)],
        goal: &Judgement,
    ) -> Result<Vec<Premise>, String> {
        if let Some((ctx, a, b)) = leq_parts(goal) {
            if let Some(r) = self.try_leq_rule(rule, args, ctx, a, b) {
                return r;
            }
            if is_equivalence_rule(rule) {
                let first = self.equiv_rule(rule, args, ctx, a, b);
                if first.is_ok() {
                    return first;
                }
                if let Ok(p) = self.equiv_rule(rule, args, ctx, b, a) {
                    return Ok(p);
                }
                return first;
            }
        }
        self.other_rule(rule, args, goal)
    }
}

fn validate_args(rule: Rule, args: &[(String, ScriptArg)]) -> Result<(), ProofError> {
    for (k, v) in args {
        match rule.arg_schema().iter().find(|(n, _)| n == k) {
            None => {
                return Err(ProofError::BadArgument {
                    rule,
                    message: format!("unexpected argument `{k}`"),
                })
            }
            Some((_, kind)) if *kind != v.kind() => {
                return Err(ProofError::BadArgument {
                    rule,
                    message: format!("argument `{k}` has the wrong kind"),
                })
            }
            _ => {}
        }
    }
    for (k, _) in rule.arg_schema() {
        if !args.iter().any(|(n, _)| n == k) {
            return Err(ProofError::BadArgument {
                rule,
                message: format!("missing argument `{k}`"),
            });
        }
    }
    Ok(())
}

fn is_equivalence_rule(rule: Rule) -> bool {
    matches!(
        rule,
        Rule::DistL
            | Rule::DistR
            | Rule::UnitL
            | Rule::UnitR
            | Rule::Assoc
            | Rule::Comm
            | Rule::CaseCong
            | Rule::BetaPlus1Eff
            | Rule::BetaPlus2Eff
            | Rule::EtaPlusEff
            | Rule::CaseOvee
            | Rule::CaseBot
            | Rule::CaseTimes
            | Rule::QbitXProj
            | Rule::QbitZProj
            | Rule::QbitXzZx
            | Rule::BetaIso
    )
}

fn leq_parts(j: &Judgement) -> Option<(&Context, &Effect, &Effect)> {
    match j {
        Judgement::EffLeq { ctx, lhs, rhs } => Some((ctx, lhs, rhs)),
        _ => None,
    }
}

fn arg<'a>(args: &'a [(String, ScriptArg)], key: &str) -> Result<&'a ScriptArg, String> {
    args.iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v)
        .ok_or_else(|| format!("missing argument `{key}`"))
}

fn arg_term(args: &[(String, ScriptArg)], key: &str) -> Result<Term, String> {
    match arg(args, key)? {
        ScriptArg::Term(t) => Ok(t.clone()),
        _ => Err(format!("argument `{key}` must be a term")),
    }
}

fn arg_effect(args: &[(String, ScriptArg)], key: &str) -> Result<Effect, String> {
    match arg(args, key)? {
        ScriptArg::Effect(e) => Ok(e.clone()),
        _ => Err(format!("argument `{key}` must be an effect")),
    }
}

fn split(ctx: &Context, used: &BTreeSet<Name>) -> (Context, Context) {
    (ctx.restrict(used), ctx.without(used))
}

fn union(sets: &[BTreeSet<Name>]) -> BTreeSet<Name> {
    sets.iter().flat_map(|s| s.iter().cloned()).collect()
}

fn minus(mut s: BTreeSet<Name>, xs: &[&Name]) -> BTreeSet<Name> {
    for x in xs {
        s.remove(*x);
    }
    s
}

fn sum_parts(t: Option<&Type>) -> Result<(Type, Type), String> {
    match t {
        Some(Type::Sum(a, b)) => Ok(((**a).clone(), (**b).clone())),
        Some(other) => Err(format!("expected a sum type, found {other}")),
        None => Err("missing type information".into()),
    }
}

fn tensor_parts(t: Option<&Type>) -> Result<(Type, Type), String> {
    match t {
        Some(Type::Tensor(a, b)) => Ok(((**a).clone(), (**b).clone())),
        Some(other) => Err(format!("expected a tensor type, found {other}")),
        None => Err("missing type information".into()),
    }
}

fn same_t(a: &Term, b: &Term, what: &str) -> Result<(), String> {
    if a.aeq(b) {
        Ok(())
    } else {
        Err(format!("{what}: `{}` differs from `{}`", term_inline(a), term_inline(b)))
    }
}

fn same_e(a: &Effect, b: &Effect, what: &str) -> Result<(), String> {
    if a.aeq(b) {
        Ok(())
    } else {
        Err(format!(
            "{what}: `{}` differs from `{}`",
            effect_inline(a),
            effect_inline(b)
        ))
    }
}

fn shape<T>(o: Option<T>, what: &str) -> Result<T, String> {
    o.ok_or_else(|| format!("expected {what}"))
}

struct CaseE<'a> {
    m: &'a Term,
    x: &'a Name,
    a: &'a Effect,
    y: &'a Name,
    b: &'a Effect,
}

fn as_case_e(e: &Effect) -> Option<CaseE<'_>> {
    match e {
        Effect::Case {
            scrutinee,
            left,
            on_left,
            right,
            on_right,
        } => Some(CaseE {
            m: scrutinee,
            x: left,
            a: on_left,
            y: right,
            b: on_right,
        }),
        _ => None,
    }
}

struct CaseT<'a> {
    m: &'a Term,
    x: &'a Name,
    n: &'a Term,
    y: &'a Name,
    p: &'a Term,
}

fn as_case_t(t: &Term) -> Option<CaseT<'_>> {
    match t {
        Term::Case {
            scrutinee,
            left,
            on_left,
            right,
            on_right,
        } => Some(CaseT {
            m: scrutinee,
            x: left,
            n: on_left,
            y: right,
            p: on_right,
        }),
        _ => None,
    }
}

struct LetT<'a> {
    x: &'a Name,
    y: &'a Name,
    m: &'a Term,
    n: &'a Term,
}

fn as_let(t: &Term) -> Option<LetT<'_>> {
    match t {
        Term::LetPair {
            left,
            right,
            bound,
            body,
        } => Some(LetT {
            x: left,
            y: right,
            m: bound,
            n: body,
        }),
        _ => None,
    }
}

fn as_ovee(e: &Effect) -> Option<(&Effect, &Effect)> {
    match e {
        Effect::Ovee(a, b) => Some((a, b)),
        _ => None,
    }
}

fn as_scale(e: &Effect) -> Option<(&Effect, &Effect)> {
    match e {
        Effect::Scale(a, b) => Some((a, b)),
        _ => None,
    }
}

fn as_orth(e: &Effect) -> Option<&Effect> {
    match e {
        Effect::Orth(a) => Some(a),
        _ => None,
    }
}

fn as_pair(t: &Term) -> Option<(&Term, &Term)> {
    match t {
        Term::Pair(a, b) => Some((a, b)),
        _ => None,
    }
}

/// Binder for moving `body` under a new scope without capturing `free`.
fn rebinder(x: &Name, body: &Term, free: &BTreeSet<Name>) -> (Name, Term) {
    if !free.contains(x) {
        return (x.clone(), body.clone());
    }
    let mut avoid = free.clone();
    avoid.extend(body.all_names());
    let z = fresh_name(x, &avoid);
    (z.clone(), body.rename(x, &z))
}

fn form(ctx: &Context, e: &Effect) -> Premise {
    Premise::Form(Judgement::form(ctx, e.clone()))
}

fn typing(ctx: &Context, t: &Term, ty: &Type) -> Premise {
    Premise::Form(Judgement::typing(ctx, t.clone(), ty.clone()))
}

fn leq(ctx: &Context, a: Effect, b: Effect) -> Premise {
    Premise::Proof(Judgement::leq(ctx, a, b))
}

fn teq(ctx: &Context, a: &Term, b: &Term, ty: &Type) -> Premise {
    Premise::Proof(Judgement::term_eq(ctx, a.clone(), b.clone(), ty.clone()))
}

impl Checker {
    /// Rules whose conclusion is an inequality read in one fixed direction.
    fn try_leq_rule(
        &self,
        rule: Rule,
        args: &[(String, ScriptArg)],
        ctx: &Context,
        lhs: &Effect,
        rhs: &Effect,
    ) -> Option<Result<Vec<Premise>, String>> {
        let empty = Context::new();
        let r = match rule {
            Rule::LeqRef => (|| {
                same_e(lhs, rhs, "sides differ")?;
                Ok(vec![form(ctx, lhs)])
            })(),
            Rule::LeqTrans => (|| {
                let mid = arg_effect(args, "mid")?;
                Ok(vec![
                    leq(ctx, lhs.clone(), mid.clone()),
                    leq(ctx, mid, rhs.clone()),
                ])
            })(),
            Rule::ZeroLeq => (|| {
                if *lhs != Effect::Zero {
                    return Err("left side must be 0".into());
                }
                Ok(vec![form(ctx, rhs)])
            })(),
            Rule::BotAntitone => (|| {
                let psi = shape(as_orth(lhs), "an orthosupplement on the left")?;
                let phi = shape(as_orth(rhs), "an orthosupplement on the right")?;
                Ok(vec![leq(ctx, phi.clone(), psi.clone())])
            })(),
            Rule::BotBot => (|| {
                let inner = shape(as_orth(rhs).and_then(as_orth), "a double orthosupplement on the right")?;
                same_e(lhs, inner, "double orthosupplement")?;
                Ok(vec![form(ctx, lhs)])
            })(),
            Rule::LeqOvee => (|| {
                let (phi, psi) = shape(as_ovee(rhs), "a sum on the right")?;
                same_e(lhs, phi, "first summand")?;
                Ok(vec![leq(ctx, phi.clone(), Effect::orth(psi.clone()))])
            })(),
            Rule::OveeMono => (|| {
                let (phi, chi) = shape(as_ovee(lhs), "a sum on the left")?;
                let (psi, chi2) = shape(as_ovee(rhs), "a sum on the right")?;
                same_e(chi, chi2, "second summands")?;
                Ok(vec![
                    leq(ctx, phi.clone(), psi.clone()),
                    leq(ctx, psi.clone(), Effect::orth(chi.clone())),
                ])
            })(),
            Rule::OveeComm => (|| {
                let (phi, psi) = shape(as_ovee(lhs), "a sum on the left")?;
                let (psi2, phi2) = shape(as_ovee(rhs), "a sum on the right")?;
                same_e(phi, phi2, "summands")?;
                same_e(psi, psi2, "summands")?;
                Ok(vec![leq(ctx, phi.clone(), Effect::orth(psi.clone()))])
            })(),
            Rule::PerpRotate => (|| {
                let (psi, chi) = shape(as_ovee(lhs), "a sum on the left")?;
                let phi = shape(as_orth(rhs), "an orthosupplement on the right")?;
                Ok(vec![leq(
                    ctx,
                    Effect::ovee(phi.clone(), psi.clone()),
                    Effect::orth(chi.clone()),
                )])
            })(),
            Rule::OveeAssoc => (|| {
                let (phi, rest) = shape(as_ovee(lhs), "a sum on the left")?;
                let (psi, chi) = shape(as_ovee(rest), "a right-nested sum on the left")?;
                let (first, chi2) = shape(as_ovee(rhs), "a sum on the right")?;
                let (phi2, psi2) = shape(as_ovee(first), "a left-nested sum on the right")?;
                same_e(phi, phi2, "summands")?;
                same_e(psi, psi2, "summands")?;
                same_e(chi, chi2, "summands")?;
                Ok(vec![leq(
                    ctx,
                    Effect::ovee(phi.clone(), psi.clone()),
                    Effect::orth(chi.clone()),
                )])
            })(),
            Rule::Ovee0 => (|| {
                let (phi, z) = shape(as_ovee(lhs), "a sum on the left")?;
                if *z != Effect::Zero {
                    return Err("second summand must be 0".into());
                }
                same_e(phi, rhs, "sides")?;
                Ok(vec![form(ctx, phi)])
            })(),
            Rule::Ortho1 => (|| {
                let psi = shape(as_orth(lhs), "an orthosupplement on the left")?;
                Ok(vec![leq(
                    ctx,
                    Effect::one(),
                    Effect::ovee(rhs.clone(), psi.clone()),
                )])
            })(),
            Rule::Ortho2 => (|| {
                if !lhs.is_one() {
                    return Err("left side must be 1".into());
                }
                let (phi, o) = shape(as_ovee(rhs), "a sum on the right")?;
                let phi2 = shape(as_orth(o), "an orthosupplement as second summand")?;
                same_e(phi, phi2, "summands")?;
                Ok(vec![form(ctx, phi)])
            })(),
            Rule::DistL => (|| {
                let (phi, chi) = shape(as_scale(lhs), "a product on the left")?;
                let (psi, chi2) = shape(as_orth(rhs).and_then(as_scale), "the orthosupplement of a product")?;
                same_e(chi, chi2, "right factors")?;
                Ok(vec![
                    leq(&empty, phi.clone(), Effect::orth(psi.clone())),
                    form(ctx, chi),
                ])
            })(),
            Rule::DistR => (|| {
                let (phi, psi) = shape(as_scale(lhs), "a product on the left")?;
                let (phi2, chi) = shape(as_orth(rhs).and_then(as_scale), "the orthosupplement of a product")?;
                same_e(phi, phi2, "left factors")?;
                Ok(vec![
                    form(&empty, phi),
                    leq(ctx, psi.clone(), Effect::orth(chi.clone())),
                ])
            })(),
            Rule::CaseMono => (|| {
                let l = shape(as_case_e(lhs), "`caseE` on the left")?;
                let r = shape(as_case_e(rhs), "`caseE` on the right")?;
                same_t(l.m, r.m, "scrutinees")?;
                let types = self.effect_types(ctx, lhs)?;
                let (ta, tb) = sum_parts(types.at(&[0]))?;
                let (dm, g) = split(ctx, &l.m.free_vars());
                let (x, a1, a2) = align(l.x, l.a, r.x, r.a, &BTreeSet::new());
                let (y, b1, b2) = align(l.y, l.b, r.y, r.b, &BTreeSet::new());
                Ok(vec![
                    leq(&g.extend(&x, ta.clone()), a1, a2),
                    leq(&g.extend(&y, tb.clone()), b1, b2),
                    typing(&dm, l.m, &Type::sum(ta, tb)),
                ])
            })(),
            Rule::CaseLeq => (|| {
                let l = shape(as_case_e(lhs), "`caseE` on the left")?;
                let types = self.effect_types(ctx, lhs)?;
                let (ta, tb) = sum_parts(types.at(&[0]))?;
                let (gm, d) = split(ctx, &l.m.free_vars());
                let avoid = rhs.free_vars();
                let (x, a) = open(l.x, l.a, &avoid);
                let (y, b) = open(l.y, l.b, &avoid);
                Ok(vec![
                    typing(&gm, l.m, &Type::sum(ta.clone(), tb.clone())),
                    leq(&d.extend(&x, ta), a, rhs.clone()),
                    leq(&d.extend(&y, tb), b, rhs.clone()),
                ])
            })(),
            Rule::BetaIso => (|| {
                let (x, psi, phi, m, n) = beta_iso_args(args)?;
                let (l, r) = beta_iso_sides(&x, &psi, &phi, &m, &n);
                let (_, r_over) = (l, r);
                let (left, right) = shape(as_ovee(&r_over), "sum")?;
                same_e(lhs, left, "left side of the orthogonality")?;
                let want = Effect::orth(right.clone());
                same_e(rhs, &want, "right side of the orthogonality")?;
                self.beta_iso_premises(ctx, &x, &psi, &phi, &m, &n)
            })(),
            _ => return None,
        };
        match (rule, &r) {
            (Rule::DistL | Rule::DistR | Rule::BetaIso, Err(_)) => None,
            _ => Some(r),
        }
    }

    fn beta_iso_premises(
        &self,
        ctx: &Context,
        x: &Name,
        psi: &Effect,
        phi: &Effect,
        m: &Term,
        n: &Term,
    ) -> Result<Vec<Premise>, String> {
        let used = union(&[m.free_vars(), n.free_vars()]);
        let (g, d) = split(ctx, &used);
        let meas = Term::measure(vec![
            (phi.clone(), m.clone()),
            (Effect::orth(phi.clone()), n.clone()),
        ]);
        let ta = self.infer(&g, &meas)?;
        Ok(vec![
            form(&Context::new(), phi),
            typing(&g, m, &ta),
            typing(&g, n, &ta),
            form(&d.extend(x, ta), psi),
        ])
    }

    /// Equivalence rules, with `l` and `r` matched against the rule's
    /// left and right sides as printed.
    fn equiv_rule(
        &self,
        rule: Rule,
        args: &[(String, ScriptArg)],
        ctx: &Context,
        l: &Effect,
        r: &Effect,
    ) -> Result<Vec<Premise>, String> {
        let empty = Context::new();
        match rule {
            Rule::DistL => {
                let (sum, chi) = shape(as_scale(l), "a product")?;
                let (phi, psi) = shape(as_ovee(sum), "a sum as left factor")?;
                let want = Effect::ovee(
                    Effect::scale(phi.clone(), chi.clone()),
                    Effect::scale(psi.clone(), chi.clone()),
                );
                same_e(r, &want, "distributed form")?;
                Ok(vec![
                    leq(&empty, phi.clone(), Effect::orth(psi.clone())),
                    form(ctx, chi),
                ])
            }
            Rule::DistR => {
                let (phi, sum) = shape(as_scale(l), "a product")?;
                let (psi, chi) = shape(as_ovee(sum), "a sum as right factor")?;
                let want = Effect::ovee(
                    Effect::scale(phi.clone(), psi.clone()),
                    Effect::scale(phi.clone(), chi.clone()),
                );
                same_e(r, &want, "distributed form")?;
                Ok(vec![
                    form(&empty, phi),
                    leq(ctx, psi.clone(), Effect::orth(chi.clone())),
                ])
            }
            Rule::UnitL => {
                let (one, phi) = shape(as_scale(l), "a product")?;
                if !one.is_one() {
                    return Err("left factor must be 1".into());
                }
                same_e(r, phi, "unit law")?;
                Ok(vec![form(ctx, phi)])
            }
            Rule::UnitR => {
                let (phi, one) = shape(as_scale(l), "a product")?;
                if !one.is_one() {
                    return Err("right factor must be 1".into());
                }
                same_e(r, phi, "unit law")?;
                Ok(vec![form(&empty, phi)])
            }
            Rule::Assoc => {
                let (phi, rest) = shape(as_scale(l), "a product")?;
                let (psi, chi) = shape(as_scale(rest), "a right-nested product")?;
                let want = Effect::scale(Effect::scale(phi.clone(), psi.clone()), chi.clone());
                same_e(r, &want, "associated form")?;
                Ok(vec![form(&empty, phi), form(&empty, psi), form(ctx, chi)])
            }
            Rule::Comm => {
                let (phi, psi) = shape(as_scale(l), "a product")?;
                let want = Effect::scale(psi.clone(), phi.clone());
                same_e(r, &want, "commuted form")?;
                Ok(vec![form(&empty, phi), form(&empty, psi)])
            }
            Rule::CaseCong => {
                let a = shape(as_case_e(l), "`caseE`")?;
                let b = shape(as_case_e(r), "`caseE`")?;
                let (x, a1, a2) = align(a.x, a.a, b.x, b.a, &BTreeSet::new());
                let (y, b1, b2) = align(a.y, a.b, b.y, b.b, &BTreeSet::new());
                same_e(&a1, &a2, "left branches")?;
                same_e(&b1, &b2, "right branches")?;
                let types = self.effect_types(ctx, l)?;
                let (ta, tb) = sum_parts(types.at(&[0]))?;
                let used = union(&[a.m.free_vars(), b.m.free_vars()]);
                let (dm, g) = split(ctx, &used);
                Ok(vec![
                    form(&g.extend(&x, ta.clone()), &a1),
                    form(&g.extend(&y, tb.clone()), &b1),
                    teq(&dm, a.m, b.m, &Type::sum(ta, tb)),
                ])
            }
            Rule::BetaPlus1Eff | Rule::BetaPlus2Eff => {
                let c = shape(as_case_e(l), "`caseE`")?;
                let (m, want) = match (rule, c.m) {
                    (Rule::BetaPlus1Eff, Term::Inl(m)) => (m, subst_effect(c.a, c.x, m)),
                    (Rule::BetaPlus2Eff, Term::Inr(m)) => (m, subst_effect(c.b, c.y, m)),
                    _ => return Err("scrutinee must be an injection of the matching side".into()),
                };
                same_e(r, &want, "reduct")?;
                let types = self.effect_types(ctx, l)?;
                let (ta, tb) = sum_parts(types.at(&[0]))?;
                let (dm, g) = split(ctx, &m.free_vars());
                let tm = if rule == Rule::BetaPlus1Eff { ta.clone() } else { tb.clone() };
                Ok(vec![
                    form(&g.extend(c.x, ta), c.a),
                    form(&g.extend(c.y, tb), c.b),
                    typing(&dm, m, &tm),
                ])
            }
            Rule::EtaPlusEff => {
                let c = shape(as_case_e(r), "`caseE` on one side")?;
                let z = match c.m {
                    Term::Var(z) => z,
                    _ => return Err("scrutinee must be a variable".into()),
                };
                match ctx.lookup(z) {
                    Some(Type::Sum(_, _)) => {}
                    _ => return Err(format!("`{z}` must have a sum type in the context")),
                }
                let fv = l.free_vars();
                if c.x == z || c.y == z || fv.contains(c.x) || fv.contains(c.y) {
                    return Err("branch variables must be fresh".into());
                }
                let want = Effect::case(
                    c.m.clone(),
                    c.x,
                    subst_effect(l, z, &Term::inl(Term::Var(c.x.clone()))),
                    c.y,
                    subst_effect(l, z, &Term::inr(Term::Var(c.y.clone()))),
                );
                same_e(r, &want, "expansion")?;
                Ok(vec![form(ctx, l)])
            }
            Rule::CaseOvee => {
                let c = shape(as_case_e(l), "`caseE`")?;
                let (a1, a2) = shape(as_ovee(c.a), "a sum in the left branch")?;
                let (b1, b2) = shape(as_ovee(c.b), "a sum in the right branch")?;
                let want = Effect::ovee(
                    Effect::case(c.m.clone(), c.x, a1.clone(), c.y, b1.clone()),
                    Effect::case(c.m.clone(), c.x, a2.clone(), c.y, b2.clone()),
                );
                same_e(r, &want, "split form")?;
                let types = self.effect_types(ctx, l)?;
                let (ta, tb) = sum_parts(types.at(&[0]))?;
                let (dm, g) = split(ctx, &c.m.free_vars());
                Ok(vec![
                    leq(&g.extend(c.x, ta.clone()), a1.clone(), Effect::orth(a2.clone())),
                    leq(&g.extend(c.y, tb.clone()), b1.clone(), Effect::orth(b2.clone())),
                    typing(&dm, c.m, &Type::sum(ta, tb)),
                ])
            }
            Rule::CaseBot => {
                let c = shape(as_case_e(l), "`caseE`")?;
                let a = shape(as_orth(c.a), "an orthosupplement in the left branch")?;
                let b = shape(as_orth(c.b), "an orthosupplement in the right branch")?;
                let want = Effect::orth(Effect::case(c.m.clone(), c.x, a.clone(), c.y, b.clone()));
                same_e(r, &want, "orthosupplement form")?;
                let types = self.effect_types(ctx, l)?;
                let (ta, tb) = sum_parts(types.at(&[0]))?;
                let (dm, g) = split(ctx, &c.m.free_vars());
                Ok(vec![
                    form(&g.extend(c.x, ta.clone()), a),
                    form(&g.extend(c.y, tb.clone()), b),
                    typing(&dm, c.m, &Type::sum(ta, tb)),
                ])
            }
            Rule::CaseTimes => {
                let c = shape(as_case_e(l), "`caseE`")?;
                let (chi, a) = shape(as_scale(c.a), "a product in the left branch")?;
                let (chi2, b) = shape(as_scale(c.b), "a product in the right branch")?;
                same_e(chi, chi2, "scalars")?;
                let want = Effect::scale(
                    chi.clone(),
                    Effect::case(c.m.clone(), c.x, a.clone(), c.y, b.clone()),
                );
                same_e(r, &want, "factored form")?;
                let types = self.effect_types(ctx, l)?;
                let (ta, tb) = sum_parts(types.at(&[0]))?;
                let (dm, g) = split(ctx, &c.m.free_vars());
                Ok(vec![
                    form(&g.extend(c.x, ta.clone()), a),
                    form(&g.extend(c.y, tb.clone()), b),
                    typing(&dm, c.m, &Type::sum(ta, tb)),
                    form(&empty, chi),
                ])
            }
            Rule::QbitXProj | Rule::QbitZProj | Rule::QbitXzZx => {
                let (lm, la) = match l {
                    Effect::Proj(m, a) => (&**m, *a),
                    _ => return Err("expected a projection".into()),
                };
                let (m, want) = match (rule, lm) {
                    (Rule::QbitXProj, Term::PauliX(m)) => {
                        (&**m, Effect::proj((**m).clone(), la.neg()))
                    }
                    (Rule::QbitZProj, Term::PauliZ(m)) => {
                        (&**m, Effect::proj((**m).clone(), la.minus_pi()))
                    }
                    (Rule::QbitXzZx, Term::PauliX(inner)) => match &**inner {
                        Term::PauliZ(m) => (&**m, Effect::proj(Term::z(Term::x((**m).clone())), la)),
                        _ => return Err("expected `X (Z M)`".into()),
                    },
                    _ => return Err("projection argument has the wrong gate".into()),
                };
                same_e(r, &want, "projection")?;
                Ok(vec![typing(ctx, m, &Type::Qbit)])
            }
            Rule::BetaIso => {
                let (x, psi, phi, m, n) = beta_iso_args(args)?;
                let (want_l, want_r) = beta_iso_sides(&x, &psi, &phi, &m, &n);
                same_e(l, &want_l, "substituted measurement")?;
                same_e(r, &want_r, "weighted sum")?;
                self.beta_iso_premises(ctx, &x, &psi, &phi, &m, &n)
            }
            _ => Err("not an equivalence rule".into()),
        }
    }

    fn other_rule(
        &self,
        rule: Rule,
        args: &[(String, ScriptArg)],
        goal: &Judgement,
    ) -> Result<Vec<Premise>, String> {
        match goal {
            Judgement::Typing { ctx, term, ty } => self.typing_rule(rule, args, ctx, term, ty),
            Judgement::TermEq { ctx, lhs, rhs, ty } => self.term_eq_rule(rule, args, ctx, lhs, rhs, ty),
            Judgement::EffForm { ctx, eff } => self.form_rule(rule, args, ctx, eff),
            Judgement::EffLeq { ctx, .. } => match rule {
                Rule::Exch => exch(args, goal, ctx),
                _ => Err("rule does not conclude an inequality of this shape".into()),
            },
        }
    }

    fn typing_rule(
        &self,
        rule: Rule,
        args: &[(String, ScriptArg)],
        ctx: &Context,
        term: &Term,
        ty: &Type,
    ) -> Result<Vec<Premise>, String> {
        match (rule, term) {
            (Rule::Exch, _) => exch(args, &Judgement::typing(ctx, term.clone(), ty.clone()), ctx),
            (Rule::Var, Term::Var(x)) => match ctx.lookup(x) {
                Some(t) if t == ty => Ok(vec![]),
                Some(t) => Err(format!("`{x}` has type {t}, not {ty}")),
                None => Err(format!("`{x}` is not in the context")),
            },
            (Rule::UnitIntro, Term::Unit) if *ty == Type::Unit => Ok(vec![]),
            (Rule::QbitNew, Term::Plus) if *ty == Type::Qbit => Ok(vec![]),
            (Rule::Tensor, Term::Pair(m, n)) | (Rule::QbitCz, Term::Cz(m, n)) => {
                let (a, b) = tensor_parts(Some(ty))?;
                if rule == Rule::QbitCz && (a != Type::Qbit || b != Type::Qbit) {
                    return Err("`E` has type qbit * qbit".into());
                }
                let fm = m.free_vars();
                if let Some(x) = fm.intersection(&n.free_vars()).next() {
                    return Err(format!("`{x}` is used on both sides"));
                }
                let (g, d) = split(ctx, &fm);
                Ok(vec![typing(&g, m, &a), typing(&d, n, &b)])
            }
            (Rule::Inl, Term::Inl(m)) | (Rule::Inr, Term::Inr(m)) => {
                let (a, b) = sum_parts(Some(ty))?;
                let t = if rule == Rule::Inl { a } else { b };
                Ok(vec![typing(ctx, m, &t)])
            }
            (Rule::QbitX, Term::PauliX(m)) | (Rule::QbitZ, Term::PauliZ(m)) if *ty == Type::Qbit => {
                Ok(vec![typing(ctx, m, &Type::Qbit)])
            }
            (Rule::Let, Term::LetPair { left, right, bound, body }) => {
                if left == right {
                    return Err("binders must differ".into());
                }
                let types = self.term_types(ctx, term, ty)?;
                let (a, b) = tensor_parts(types.at(&[0]))?;
                let (g, d) = split(ctx, &bound.free_vars());
                Ok(vec![
                    typing(&g, bound, &Type::tensor(a.clone(), b.clone())),
                    typing(&d.extend(left, a).extend(right, b), body, ty),
                ])
            }
            (Rule::Case, Term::Case { .. }) => {
                let c = as_case_t(term).unwrap();
                let types = self.term_types(ctx, term, ty)?;
                let (a, b) = sum_parts(types.at(&[0]))?;
                let (g, d) = split(ctx, &c.m.free_vars());
                Ok(vec![
                    typing(&g, c.m, &Type::sum(a.clone(), b.clone())),
                    typing(&d.extend(c.x, a), c.n, ty),
                    typing(&d.extend(c.y, b), c.p, ty),
                ])
            }
            (Rule::Measure, Term::Measure(bs)) => {
                let (g, d) = split(ctx, &guard_vars(bs));
                let mut out = vec![leq(&g, Effect::one(), guards_sum(bs))];
                for b in bs {
                    out.push(typing(&d, &b.body, ty));
                }
                Ok(out)
            }
            _ => Err("rule does not conclude a typing judgement of this shape".into()),
        }
    }

    fn form_rule(
        &self,
        rule: Rule,
        args: &[(String, ScriptArg)],
        ctx: &Context,
        eff: &Effect,
    ) -> Result<Vec<Premise>, String> {
        match (rule, eff) {
            (Rule::Exch, _) => exch(args, &Judgement::form(ctx, eff.clone()), ctx),
            (Rule::Eff0, Effect::Zero) => Ok(vec![]),
            (Rule::EffConst, Effect::Const(_)) => Ok(vec![]),
            (Rule::EffBot, Effect::Orth(a)) => Ok(vec![form(ctx, a)]),
            (Rule::EffOvee, Effect::Ovee(a, b)) => {
                Ok(vec![leq(ctx, (**a).clone(), Effect::orth((**b).clone()))])
            }
            (Rule::EffMult, Effect::Scale(a, b)) => Ok(vec![form(&Context::new(), a), form(ctx, b)]),
            (Rule::EffCase, Effect::Case { .. }) => {
                let c = as_case_e(eff).unwrap();
                let types = self.effect_types(ctx, eff)?;
                let (ta, tb) = sum_parts(types.at(&[0]))?;
                let (dm, g) = split(ctx, &c.m.free_vars());
                Ok(vec![
                    form(&g.extend(c.x, ta.clone()), c.a),
                    form(&g.extend(c.y, tb.clone()), c.b),
                    typing(&dm, c.m, &Type::sum(ta, tb)),
                ])
            }
            (Rule::QbitProj, Effect::Proj(m, _)) => Ok(vec![typing(ctx, m, &Type::Qbit)]),
            _ => Err("rule does not conclude a formation judgement of this shape".into()),
        }
    }

    fn term_eq_rule(
        &self,
        rule: Rule,
        args: &[(String, ScriptArg)],
        ctx: &Context,
        lhs: &Term,
        rhs: &Term,
        ty: &Type,
    ) -> Result<Vec<Premise>, String> {
        match rule {
            Rule::Exch => exch(args, &Judgement::term_eq(ctx, lhs.clone(), rhs.clone(), ty.clone()), ctx),
            Rule::Ref => {
                same_t(lhs, rhs, "sides differ")?;
                Ok(vec![typing(ctx, lhs, ty)])
            }
            Rule::Sym => Ok(vec![teq(ctx, rhs, lhs, ty)]),
            Rule::Trans => {
                let mid = arg_term(args, "mid")?;
                Ok(vec![teq(ctx, lhs, &mid, ty), teq(ctx, &mid, rhs, ty)])
            }
            Rule::TensorEq => {
                let (m1, n1) = shape(as_pair(lhs), "a pair on the left")?;
                let (m2, n2) = shape(as_pair(rhs), "a pair on the right")?;
                let (a, b) = tensor_parts(Some(ty))?;
                let (g, d) = split(ctx, &union(&[m1.free_vars(), m2.free_vars()]));
                Ok(vec![teq(&g, m1, m2, &a), teq(&d, n1, n2, &b)])
            }
            Rule::InlEq | Rule::InrEq => {
                let (m, n) = match (rule, lhs, rhs) {
                    (Rule::InlEq, Term::Inl(m), Term::Inl(n)) => (m, n),
                    (Rule::InrEq, Term::Inr(m), Term::Inr(n)) => (m, n),
                    _ => return Err("both sides must be the matching injection".into()),
                };
                let (a, b) = sum_parts(Some(ty))?;
                let t = if rule == Rule::InlEq { a } else { b };
                Ok(vec![teq(ctx, m, n, &t)])
            }
            Rule::LetEq => {
                let l = shape(as_let(lhs), "`let` on the left")?;
                let r = shape(as_let(rhs), "`let` on the right")?;
                let types = self.term_types(ctx, lhs, ty)?;
                let (a, b) = tensor_parts(types.at(&[0]))?;
                let (g, d) = split(ctx, &union(&[l.m.free_vars(), r.m.free_vars()]));
                let (x, y, n1, n2) = align2((l.x, l.y, l.n), (r.x, r.y, r.n), &BTreeSet::new());
                Ok(vec![
                    teq(&g, l.m, r.m, &Type::tensor(a.clone(), b.clone())),
                    teq(&d.extend(&x, a).extend(&y, b), &n1, &n2, ty),
                ])
            }
            Rule::CaseEq => {
                let l = shape(as_case_t(lhs), "`case` on the left")?;
                let r = shape(as_case_t(rhs), "`case` on the right")?;
                let types = self.term_types(ctx, lhs, ty)?;
                let (a, b) = sum_parts(types.at(&[0]))?;
                let (g, d) = split(ctx, &union(&[l.m.free_vars(), r.m.free_vars()]));
                let (x, n1, n2) = align(l.x, l.n, r.x, r.n, &BTreeSet::new());
                let (y, p1, p2) = align(l.y, l.p, r.y, r.p, &BTreeSet::new());
                Ok(vec![
                    teq(&g, l.m, r.m, &Type::sum(a.clone(), b.clone())),
                    teq(&d.extend(&x, a), &n1, &n2, ty),
                    teq(&d.extend(&y, b), &p1, &p2, ty),
                ])
            }
            Rule::MeasureEq => {
                let (bl, br) = match (lhs, rhs) {
                    (Term::Measure(a), Term::Measure(b)) if a.len() == b.len() => (a, b),
                    _ => return Err("both sides must be measurements with equally many branches".into()),
                };
                let used = union(&[guard_vars(bl), guard_vars(br)]);
                let (g, d) = split(ctx, &used);
                let mut out = vec![leq(&g, Effect::one(), guards_sum(bl))];
                for (p, q) in bl.iter().zip(br) {
                    out.push(Premise::Equiv(g.clone(), p.guard.clone(), q.guard.clone()));
                }
                for (p, q) in bl.iter().zip(br) {
                    out.push(teq(&d, &p.body, &q.body, ty));
                }
                Ok(out)
            }
            Rule::BetaTensor => {
                let l = shape(as_let(lhs), "`let` on the left")?;
                let (m, n) = shape(as_pair(l.m), "a pair as bound term")?;
                let want = subst_term_many(l.n, &[(l.x.clone(), m.clone()), (l.y.clone(), n.clone())]);
                same_t(rhs, &want, "reduct")?;
                let types = self.term_types(ctx, lhs, ty)?;
                let (a, b) = tensor_parts(types.at(&[0]))?;
                let (g, rest) = split(ctx, &m.free_vars());
                let (d, th) = split(&rest, &n.free_vars());
                Ok(vec![
                    typing(&g, m, &a),
                    typing(&d, n, &b),
                    typing(&th.extend(l.x, a).extend(l.y, b), l.n, ty),
                ])
            }
            Rule::BetaPlus1 | Rule::BetaPlus2 => {
                let c = shape(as_case_t(lhs), "`case` on the left")?;
                let (m, want) = match (rule, c.m) {
                    (Rule::BetaPlus1, Term::Inl(m)) => (m, subst_term(c.n, c.x, m)),
                    (Rule::BetaPlus2, Term::Inr(m)) => (m, subst_term(c.p, c.y, m)),
                    _ => return Err("scrutinee must be an injection of the matching side".into()),
                };
                same_t(rhs, &want, "reduct")?;
                let types = self.term_types(ctx, lhs, ty)?;
                let (a, b) = sum_parts(types.at(&[0]))?;
                let (g, d) = split(ctx, &m.free_vars());
                let tm = if rule == Rule::BetaPlus1 { a.clone() } else { b.clone() };
                Ok(vec![
                    typing(&g, m, &tm),
                    typing(&d.extend(c.x, a), c.n, ty),
                    typing(&d.extend(c.y, b), c.p, ty),
                ])
            }
            Rule::EtaTensor => {
                let r = shape(as_let(rhs), "`let` on the right")?;
                let want = Term::pair(Term::Var(r.x.clone()), Term::Var(r.y.clone()));
                if r.x == r.y || *r.n != want {
                    return Err("body must rebuild the pair".into());
                }
                same_t(lhs, r.m, "expanded term")?;
                tensor_parts(Some(ty))?;
                Ok(vec![typing(ctx, lhs, ty)])
            }
            Rule::EtaUnit => {
                if *rhs != Term::Unit || *ty != Type::Unit {
                    return Err("right side must be `unit` at type I".into());
                }
                Ok(vec![typing(ctx, lhs, ty)])
            }
            Rule::EtaPlus => {
                let c = shape(as_case_t(rhs), "`case` on the right")?;
                if *c.n != Term::inl(Term::Var(c.x.clone())) || *c.p != Term::inr(Term::Var(c.y.clone())) {
                    return Err("branches must rebuild the injections".into());
                }
                same_t(lhs, c.m, "expanded term")?;
                sum_parts(Some(ty))?;
                Ok(vec![typing(ctx, lhs, ty)])
            }
            Rule::LetCommute => {
                let outer = shape(as_let(lhs), "`let` on the left")?;
                let inner = shape(as_let(outer.n), "a nested `let`")?;
                let fp = minus(inner.n.free_vars(), &[inner.x, inner.y]);
                if fp.contains(outer.x) || fp.contains(outer.y) {
                    return Err("the outer variables must not occur in the innermost body".into());
                }
                let want = Term::let_pair(
                    inner.x,
                    inner.y,
                    Term::let_pair(outer.x, outer.y, outer.m.clone(), inner.m.clone()),
                    inner.n.clone(),
                );
                same_t(rhs, &want, "commuted form")?;
                let types = self.term_types(ctx, lhs, ty)?;
                let (a, b) = tensor_parts(types.at(&[0]))?;
                let (c, dd) = tensor_parts(types.at(&[1, 0]))?;
                let (g, rest) = split(ctx, &outer.m.free_vars());
                let fnn = minus(inner.m.free_vars(), &[outer.x, outer.y]);
                let (d, th) = split(&rest, &fnn);
                Ok(vec![
                    typing(&g, outer.m, &Type::tensor(a.clone(), b.clone())),
                    typing(&d.extend(outer.x, a).extend(outer.y, b), inner.m, &Type::tensor(c.clone(), dd.clone())),
                    typing(&th.extend(inner.x, c).extend(inner.y, dd), inner.n, ty),
                ])
            }
            Rule::LetCase => {
                let l = shape(as_let(lhs), "`let` on the left")?;
                let c = shape(as_case_t(l.m), "a `case` as bound term")?;
                let fq = minus(l.n.free_vars(), &[l.x, l.y]);
                let (x, n) = rebinder(c.x, c.n, &fq);
                let (y, p) = rebinder(c.y, c.p, &fq);
                let want = Term::case(
                    c.m.clone(),
                    &x,
                    Term::let_pair(l.x, l.y, n, l.n.clone()),
                    &y,
                    Term::let_pair(l.x, l.y, p, l.n.clone()),
                );
                same_t(rhs, &want, "distributed form")?;
                let types = self.term_types(ctx, lhs, ty)?;
                let (cc, dd) = tensor_parts(types.at(&[0]))?;
                let (a, b) = sum_parts(types.at(&[0, 0]))?;
                let (g, rest) = split(ctx, &c.m.free_vars());
                let fb = union(&[minus(c.n.free_vars(), &[c.x]), minus(c.p.free_vars(), &[c.y])]);
                let (d, th) = split(&rest, &fb);
                let cd = Type::tensor(cc.clone(), dd.clone());
                Ok(vec![
                    typing(&g, c.m, &Type::sum(a.clone(), b.clone())),
                    typing(&d.extend(c.x, a), c.n, &cd),
                    typing(&d.extend(c.y, b), c.p, &cd),
                    typing(&th.extend(l.x, cc).extend(l.y, dd), l.n, ty),
                ])
            }
            Rule::LetTensor => {
                let (first, p) = shape(as_pair(lhs), "a pair on the left")?;
                let l = shape(as_let(first), "a `let` as first component")?;
                let fp = p.free_vars();
                let mut avoid = fp.clone();
                avoid.extend(l.m.free_vars());
                let (x, y, body, _) = align2((l.x, l.y, l.n), (l.x, l.y, l.n), &fp);
                let want = Term::let_pair(&x, &y, l.m.clone(), Term::pair(body, p.clone()));
                same_t(rhs, &want, "extruded form")?;
                let (c, d) = tensor_parts(Some(ty))?;
                let types = self.term_types(ctx, lhs, ty)?;
                let (a, b) = tensor_parts(types.at(&[0, 0]))?;
                let (g, rest) = split(ctx, &l.m.free_vars());
                let (dd, th) = split(&rest, &minus(l.n.free_vars(), &[l.x, l.y]));
                Ok(vec![
                    typing(&g, l.m, &Type::tensor(a.clone(), b.clone())),
                    typing(&dd.extend(l.x, a).extend(l.y, b), l.n, &c),
                    typing(&th, p, &d),
                ])
            }
            Rule::CaseCommute => {
                let outer = shape(as_case_t(rhs), "`case` on the right")?;
                let inner = shape(as_case_t(outer.m), "a `case` as scrutinee on the right")?;
                let fqr = union(&[minus(outer.n.free_vars(), &[outer.x]), minus(outer.p.free_vars(), &[outer.y])]);
                let (x, n) = rebinder(inner.x, inner.n, &fqr);
                let (y, p) = rebinder(inner.y, inner.p, &fqr);
                let rebuild = |s: Term| Term::case(s, outer.x, outer.n.clone(), outer.y, outer.p.clone());
                let want = Term::case(inner.m.clone(), &x, rebuild(n), &y, rebuild(p));
                same_t(lhs, &want, "nested form")?;
                let types = self.term_types(ctx, rhs, ty)?;
                let (c, d) = sum_parts(types.at(&[0]))?;
                let (a, b) = sum_parts(types.at(&[0, 0]))?;
                let (g, rest) = split(ctx, &inner.m.free_vars());
                let fb = union(&[minus(inner.n.free_vars(), &[inner.x]), minus(inner.p.free_vars(), &[inner.y])]);
                let (dd, th) = split(&rest, &fb);
                let cd = Type::sum(c.clone(), d.clone());
                Ok(vec![
                    typing(&g, inner.m, &Type::sum(a.clone(), b.clone())),
                    typing(&dd.extend(inner.x, a), inner.n, &cd),
                    typing(&dd.extend(inner.y, b), inner.p, &cd),
                    typing(&th.extend(outer.x, c), outer.n, ty),
                    typing(&th.extend(outer.y, d), outer.p, ty),
                ])
            }
            Rule::CaseTensor => {
                let (first, p) = shape(as_pair(lhs), "a pair on the left")?;
                let c = shape(as_case_t(first), "a `case` as first component")?;
                let fp = p.free_vars();
                let (x, m) = rebinder(c.x, c.n, &fp);
                let (y, n) = rebinder(c.y, c.p, &fp);
                let want = Term::case(
                    c.m.clone(),
                    &x,
                    Term::pair(m, p.clone()),
                    &y,
                    Term::pair(n, p.clone()),
                );
                same_t(rhs, &want, "distributed form")?;
                let (tc, td) = tensor_parts(Some(ty))?;
                let types = self.term_types(ctx, lhs, ty)?;
                let (a, b) = sum_parts(types.at(&[0, 0]))?;
                let (g, rest) = split(ctx, &c.m.free_vars());
                let fb = union(&[minus(c.n.free_vars(), &[c.x]), minus(c.p.free_vars(), &[c.y])]);
                let (d, th) = split(&rest, &fb);
                Ok(vec![
                    typing(&g, c.m, &Type::sum(a.clone(), b.clone())),
                    typing(&d.extend(c.x, a), c.n, &tc),
                    typing(&d.extend(c.y, b), c.p, &tc),
                    typing(&th, p, &td),
                ])
            }
            Rule::MeasurePerm => {
                let bs = match lhs {
                    Term::Measure(bs) => bs,
                    _ => return Err("left side must be a measurement".into()),
                };
                let perm = match arg(args, "perm")? {
                    ScriptArg::Perm(p) => p.clone(),
                    _ => return Err("`perm` must be a list".into()),
                };
                let mut sorted = perm.clone();
                sorted.sort();
                if sorted != (1..=bs.len()).collect::<Vec<_>>() {
                    return Err(format!("`perm` must be a permutation of 1..{}", bs.len()));
                }
                let want = Term::Measure(perm.iter().map(|&i| bs[i - 1].clone()).collect());
                same_t(rhs, &want, "permuted measurement")?;
                let (g, d) = split(ctx, &guard_vars(bs));
                let mut out = vec![leq(&g, Effect::one(), guards_sum(bs))];
                for b in bs {
                    out.push(typing(&d, &b.body, ty));
                }
                Ok(out)
            }
            Rule::Measure0 => {
                let bs = match lhs {
                    Term::Measure(bs) if bs.len() >= 2 => bs,
                    _ => return Err("left side must be a measurement with at least two branches".into()),
                };
                let (last, init) = bs.split_last().unwrap();
                if last.guard != Effect::Zero {
                    return Err("last guard must be 0".into());
                }
                same_t(rhs, &Term::Measure(init.to_vec()), "shortened measurement")?;
                let (g, d) = split(ctx, &guard_vars(init));
                let mut out = vec![leq(&g, Effect::one(), guards_sum(init))];
                for b in bs {
                    out.push(typing(&d, &b.body, ty));
                }
                Ok(out)
            }
            Rule::Measure1 => {
                let b = match lhs {
                    Term::Measure(bs) if bs.len() == 1 && bs[0].guard.is_one() => &bs[0],
                    _ => return Err("left side must be `measure { 1 -> M }`".into()),
                };
                same_t(rhs, &b.body, "body")?;
                Ok(vec![typing(ctx, &b.body, ty)])
            }
            Rule::MeasurePlus => {
                let bs = match lhs {
                    Term::Measure(bs) => bs,
                    _ => return Err("left side must be a measurement".into()),
                };
                let (phi, psi) = shape(as_ovee(&bs[0].guard), "a sum as first guard")?;
                if !guard_vars(bs).is_empty() {
                    return Err("guards must be closed".into());
                }
                let m = &bs[0].body;
                let mut split_bs = vec![
                    Branch { guard: phi.clone(), body: m.clone() },
                    Branch { guard: psi.clone(), body: m.clone() },
                ];
                split_bs.extend(bs[1..].iter().cloned());
                same_t(rhs, &Term::Measure(split_bs.clone()), "split measurement")?;
                let guards: Vec<Effect> = split_bs.iter().map(|b| b.guard.clone()).collect();
                let mut out = vec![leq(&Context::new(), Effect::one(), Effect::big_ovee(&guards))];
                for b in bs {
                    out.push(typing(ctx, &b.body, ty));
                }
                Ok(out)
            }
            Rule::MeasureCase => self.measure_case(ctx, lhs, rhs, ty),
            Rule::QbitCzX | Rule::QbitCzZ => {
                let (g1, n) = match lhs {
                    Term::Cz(a, b) => (&**a, &**b),
                    _ => return Err("left side must be `E M N`".into()),
                };
                let m = match (rule, g1) {
                    (Rule::QbitCzX, Term::PauliX(m)) | (Rule::QbitCzZ, Term::PauliZ(m)) => &**m,
                    _ => return Err("first argument has the wrong gate".into()),
                };
                let r = shape(as_let(rhs), "`let` on the right")?;
                if r.x == r.y {
                    return Err("binders must differ".into());
                }
                let (vx, vy) = (Term::Var(r.x.clone()), Term::Var(r.y.clone()));
                let body = if rule == Rule::QbitCzX {
                    Term::pair(Term::x(vx), Term::z(vy))
                } else {
                    Term::pair(Term::z(vx), vy)
                };
                let want = Term::let_pair(r.x, r.y, Term::cz(m.clone(), n.clone()), body);
                same_t(rhs, &want, "rewritten form")?;
                if *ty != Type::tensor(Type::Qbit, Type::Qbit) {
                    return Err("type must be qbit * qbit".into());
                }
                let (g, d) = split(ctx, &m.free_vars());
                Ok(vec![typing(&g, m, &Type::Qbit), typing(&d, n, &Type::Qbit)])
            }
            Rule::QbitXX | Rule::QbitZZ => {
                let m = match (rule, lhs) {
                    (Rule::QbitXX, Term::PauliX(a)) => match &**a {
                        Term::PauliX(m) => m,
                        _ => return Err("expected `X (X M)`".into()),
                    },
                    (Rule::QbitZZ, Term::PauliZ(a)) => match &**a {
                        Term::PauliZ(m) => m,
                        _ => return Err("expected `Z (Z M)`".into()),
                    },
                    _ => return Err("wrong gate".into()),
                };
                same_t(rhs, m, "involution")?;
                if *ty != Type::Qbit {
                    return Err("type must be qbit".into());
                }
                Ok(vec![typing(ctx, m, ty)])
            }
            _ => Err("rule does not conclude a term equation of this shape".into()),
        }
    }

    fn measure_case(&self, ctx: &Context, lhs: &Term, rhs: &Term, ty: &Type) -> Result<Vec<Premise>, String> {
        let bs = match lhs {
            Term::Measure(bs) => bs,
            _ => return Err("left side must be a measurement".into()),
        };
        let mut cases = Vec::new();
        for b in bs {
            cases.push(shape(as_case_e(&b.guard), "`caseE` guards")?);
        }
        let m = cases[0].m;
        for c in &cases {
            same_t(c.m, m, "scrutinees")?;
        }
        let mut avoid = ctx.names();
        for b in bs {
            avoid.extend(b.body.free_vars());
        }
        for c in &cases {
            avoid.extend(minus(c.a.free_vars(), &[c.x]));
            avoid.extend(minus(c.b.free_vars(), &[c.y]));
        }
        let mut all = avoid.clone();
        for b in bs {
            all.extend(b.guard.all_names());
            all.extend(b.body.all_names());
        }
        let x = fresh_name(cases[0].x, &all);
        all.insert(x.clone());
        let y = fresh_name(cases[0].y, &all);
        let phis: Vec<Effect> = cases.iter().map(|c| c.a.rename(c.x, &x)).collect();
        let psis: Vec<Effect> = cases.iter().map(|c| c.b.rename(c.y, &y)).collect();
        let left = Term::Measure(
            phis.iter()
                .zip(bs)
                .map(|(p, b)| Branch { guard: p.clone(), body: b.body.clone() })
                .collect(),
        );
        let right = Term::Measure(
            psis.iter()
                .zip(bs)
                .map(|(p, b)| Branch { guard: p.clone(), body: b.body.clone() })
                .collect(),
        );
        let want = Term::case(m.clone(), &x, left, &y, right);
        same_t(rhs, &want, "case split")?;
        let types = self.term_types(ctx, lhs, ty)?;
        let (a, b) = sum_parts(types.at(&[0, 0]))?;
        let (dm, rest) = split(ctx, &m.free_vars());
        let mut fe = BTreeSet::new();
        for p in phis.iter() {
            fe.extend(minus(p.free_vars(), &[&x]));
        }
        for p in psis.iter() {
            fe.extend(minus(p.free_vars(), &[&y]));
        }
        let (g, th) = split(&rest, &fe);
        let mut out = vec![
            leq(&g.extend(&x, a.clone()), Effect::one(), Effect::big_ovee(&phis)),
            leq(&g.extend(&y, b.clone()), Effect::one(), Effect::big_ovee(&psis)),
            typing(&dm, m, &Type::sum(a, b)),
        ];
        for br in bs {
            out.push(typing(&th, &br.body, ty));
        }
        Ok(out)
    }
}

fn guard_vars(bs: &[Branch]) -> BTreeSet<Name> {
    let mut s = BTreeSet::new();
    for b in bs {
        s.extend(b.guard.free_vars());
    }
    s
}

fn guards_sum(bs: &[Branch]) -> Effect {
    let gs: Vec<Effect> = bs.iter().map(|b| b.guard.clone()).collect();
    Effect::big_ovee(&gs)
}

fn exch(args: &[(String, ScriptArg)], goal: &Judgement, ctx: &Context) -> Result<Vec<Premise>, String> {
    let k = match arg(args, "at")? {
        ScriptArg::Nat(k) => *k,
        _ => return Err("`at` must be a number".into()),
    };
    if k + 1 >= ctx.len() {
        return Err(format!("cannot swap positions {k} and {} in a context of length {}", k + 1, ctx.len()));
    }
    let mut c = ctx.clone();
    c.0.swap(k, k + 1);
    let j = goal.with_ctx(c);
    Ok(vec![if j.is_formation() {
        Premise::Form(j)
    } else {
        Premise::Proof(j)
    }])
}

type BetaIsoArgs = (Name, Effect, Effect, Term, Term);

fn beta_iso_args(args: &[(String, ScriptArg)]) -> Result<BetaIsoArgs, String> {
    let x = match arg(args, "var")? {
        ScriptArg::Name(x) => x.clone(),
        _ => return Err("`var` must be a name".into()),
    };
    Ok((
        x,
        arg_effect(args, "body")?,
        arg_effect(args, "scalar")?,
        arg_term(args, "left")?,
        arg_term(args, "right")?,
    ))
}

/// Both sides of the measurement-substitution equivalence.
pub fn beta_iso_sides(x: &Name, psi: &Effect, phi: &Effect, m: &Term, n: &Term) -> (Effect, Effect) {
    let meas = Term::measure(vec![
        (phi.clone(), m.clone()),
        (Effect::orth(phi.clone()), n.clone()),
    ]);
    let l = subst_effect(psi, x, &meas);
    let r = Effect::ovee(
        Effect::scale(phi.clone(), subst_effect(psi, x, m)),
        Effect::scale(Effect::orth(phi.clone()), subst_effect(psi, x, n)),
    );
    (l, r)
}

impl ObligationResolver for Checker {
    fn resolve(&self, goal: &Judgement) -> Result<Derivation, String> {
        self.resolve_at(goal, self.auto_depth).map_err(|e| e.to_string())
    }
}

/// Argument kinds are checked again here for scripts built in code.
pub fn arg_kind_ok(rule: Rule, key: &str, kind: ArgKind) -> bool {
    rule.arg_schema().iter().any(|(k, t)| *k == key && *t == kind)
}
