//! Linear type checking of terms and well-formedness of effects.
//!
//! Injection types are inferred by unification; metavariables left open at the
//! end default to `I`. Every `o+` and every `measure` produces an obligation (an
//! inequality judgement) which is handed to an [`ObligationResolver`].

use crate::derivation::Derivation;
use crate::rules::{Pack, Packs};
use crate::syntax::{Context, Effect, Judgement, Name, Term, Type};
use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

pub type Path = Vec<u16>;

/// Types of term nodes, keyed by their position below the checked root.
///
/// Children are numbered: pair and `E` operands 0, 1; `let` bound 0, body 1;
/// injections and gates 0; `case` scrutinee 0, branches 1, 2; measurement
/// branch `i` guard `2i`, body `2i+1`. Inside effects: `bot` 0; `o+` and `.`
/// 0, 1; `caseE` scrutinee 0, branches 1, 2; `proj` 0.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TypeMap(pub HashMap<Path, Type>);

impl TypeMap {
    pub fn at(&self, path: &[u16]) -> Option<&Type> {
        self.0.get(path)
    }

    pub fn root(&self) -> Option<&Type> {
        self.0.get(&Vec::new())
    }
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum TypeError {
    #[error("unbound variable `{0}`")]
    Unbound(Name),
    #[error("variable `{name}` is used on both sides of {construct}; linear variables cannot be copied (no-cloning)")]
    Linearity { name: Name, construct: &'static str },
    #[error("type mismatch in {construct}: expected {expected}, found {found}")]
    Mismatch {
        construct: &'static str,
        expected: String,
        found: String,
    },
    #[error("{0}")]
    Malformed(String),
    #[error("the scalar `{0}` in a product must be closed")]
    OpenScalar(String),
    #[error("{0} requires the `{1}` rule pack")]
    PackDisabled(&'static str, &'static str),
    #[error("cannot discharge obligation {judgement}: {reason}")]
    Obligation { judgement: String, reason: String },
}

/// Supplies derivations for the inequality obligations raised during checking.
pub trait ObligationResolver {
    fn resolve(&self, goal: &Judgement) -> Result<Derivation, String>;
}

#[derive(Clone, Debug, Default)]
pub struct CheckInfo {
    pub types: TypeMap,
    /// Obligations in traversal order, with derivations when a resolver was used.
    pub obligations: Vec<(Judgement, Option<Derivation>)>,
}

#[derive(Clone, Debug, PartialEq)]
enum Ty {
    Unit,
    Qbit,
    Tensor(Box<Ty>, Box<Ty>),
    Sum(Box<Ty>, Box<Ty>),
    Meta(usize),
}

impl Ty {
    fn from_type(t: &Type) -> Ty {
        match t {
            Type::Unit => Ty::Unit,
            Type::Qbit => Ty::Qbit,
            Type::Tensor(a, b) => Ty::Tensor(Box::new(Ty::from_type(a)), Box::new(Ty::from_type(b))),
            Type::Sum(a, b) => Ty::Sum(Box::new(Ty::from_type(a)), Box::new(Ty::from_type(b))),
        }
    }
}

type Scope = Vec<(Name, Ty)>;

fn restrict(scope: &Scope, keep: &BTreeSet<Name>) -> Scope {
    normalize(scope)
        .into_iter()
        .filter(|(n, _)| keep.contains(n))
        .collect()
}

fn without(scope: &Scope, drop: &BTreeSet<Name>) -> Scope {
    normalize(scope)
        .into_iter()
        .filter(|(n, _)| !drop.contains(n))
        .collect()
}

fn normalize(scope: &Scope) -> Scope {
    let mut out: Scope = Vec::new();
    for (n, t) in scope {
        out.retain(|(m, _)| m != n);
        out.push((n.clone(), t.clone()));
    }
    out
}

fn extend(scope: &Scope, x: &Name, t: Ty) -> Scope {
    let mut s = scope.clone();
    s.retain(|(n, _)| n != x);
    s.push((x.clone(), t));
    s
}

enum PendingGoal {
    Leq(Effect, Effect),
}

struct Engine<'p> {
    packs: &'p Packs,
    metas: Vec<Option<Ty>>,
    recorded: Vec<(Path, Ty)>,
    pending: Vec<(Scope, PendingGoal)>,
}

fn first_shared(a: &BTreeSet<Name>, b: &BTreeSet<Name>) -> Option<Name> {
    a.intersection(b).next().cloned()
}

impl<'p> Engine<'p> {
    fn fresh(&mut self) -> Ty {
        self.metas.push(None);
        Ty::Meta(self.metas.len() - 1)
    }

    fn resolve(&self, t: &Ty) -> Ty {
        match t {
            Ty::Meta(i) => match &self.metas[*i] {
                Some(u) => self.resolve(u),
                None => t.clone(),
            },
            other => other.clone(),
        }
    }

    fn zonk(&self, t: &Ty) -> Type {
        match self.resolve(t) {
            Ty::Unit | Ty::Meta(_) => Type::Unit,
            Ty::Qbit => Type::Qbit,
            Ty::Tensor(a, b) => Type::tensor(self.zonk(&a), self.zonk(&b)),
            Ty::Sum(a, b) => Type::sum(self.zonk(&a), self.zonk(&b)),
        }
    }

    fn show(&self, t: &Ty) -> String {
        fn go(e: &Engine<'_>, t: &Ty, prec: u8) -> String {
            match e.resolve(t) {
                Ty::Unit => "I".into(),
                Ty::Qbit => "qbit".into(),
                Ty::Meta(i) => format!("?{i}"),
                Ty::Sum(a, b) => {
                    let s = format!("{} + {}", go(e, &a, 1), go(e, &b, 0));
                    if prec > 0 {
                        format!("({s})")
                    } else {
                        s
                    }
                }
                Ty::Tensor(a, b) => {
                    let s = format!("{} * {}", go(e, &a, 2), go(e, &b, 1));
                    if prec > 1 {
                        format!("({s})")
                    } else {
                        s
                    }
                }
            }
        }
        go(self, t, 0)
    }

    fn occurs(&self, m: usize, t: &Ty) -> bool {
        match self.resolve(t) {
            Ty::Meta(i) => i == m,
            Ty::Tensor(a, b) | Ty::Sum(a, b) => self.occurs(m, &a) || self.occurs(m, &b),
            _ => false,
        }
    }

    fn unify(&mut self, a: &Ty, b: &Ty) -> bool {
        let a = self.resolve(a);
        let b = self.resolve(b);
        match (&a, &b) {
            (Ty::Meta(i), Ty::Meta(j)) if i == j => true,
            (Ty::Meta(i), other) | (other, Ty::Meta(i)) => {
                if self.occurs(*i, other) {
                    return false;
                }
                self.metas[*i] = Some(other.clone());
                true
            }
            (Ty::Unit, Ty::Unit) | (Ty::Qbit, Ty::Qbit) => true,
            (Ty::Tensor(a1, a2), Ty::Tensor(b1, b2)) | (Ty::Sum(a1, a2), Ty::Sum(b1, b2)) => {
                self.unify(a1, b1) && self.unify(a2, b2)
            }
            _ => false,
        }
    }

    fn expect(&mut self, construct: &'static str, expected: &Ty, found: &Ty) -> Result<(), TypeError> {
        if self.unify(expected, found) {
            Ok(())
        } else {
            Err(TypeError::Mismatch {
                construct,
                expected: self.show(expected),
                found: self.show(found),
            })
        }
    }

    fn need(&self, pack: Pack, what: &'static str) -> Result<(), TypeError> {
        if self.packs.contains(pack) {
            Ok(())
        } else {
            Err(TypeError::PackDisabled(what, pack.name()))
        }
    }

    fn child(path: &mut Path, i: u16) -> Path {
        let mut p = path.clone();
        p.push(i);
        p
    }

    fn infer(&mut self, scope: &Scope, t: &Term, path: &mut Path) -> Result<Ty, TypeError> {
        let ty = self.infer_inner(scope, t, path)?;
        self.recorded.push((path.clone(), ty.clone()));
        Ok(ty)
    }

    fn infer_inner(&mut self, scope: &Scope, t: &Term, path: &mut Path) -> Result<Ty, TypeError> {
        match t {
            Term::Var(x) => scope
                .iter()
                .rev()
                .find(|(n, _)| n == x)
                .map(|(_, t)| t.clone())
                .ok_or_else(|| TypeError::Unbound(x.clone())),
            Term::Unit => Ok(Ty::Unit),
            Term::Plus => {
                self.need(Pack::Qubit, "the qubit state `plus`")?;
                Ok(Ty::Qbit)
            }
            Term::Pair(a, b) | Term::Cz(a, b) => {
                let is_cz = matches!(t, Term::Cz(_, _));
                let construct = if is_cz { "`E`" } else { "a pair" };
                if is_cz {
                    self.need(Pack::Qubit, "the gate `E`")?;
                }
                let fa = a.free_vars();
                if let Some(x) = first_shared(&fa, &b.free_vars()) {
                    return Err(TypeError::Linearity { name: x, construct });
                }
                let ta = self.infer(&restrict(scope, &fa), a, &mut Self::child(path, 0))?;
                let tb = self.infer(&without(scope, &fa), b, &mut Self::child(path, 1))?;
                if is_cz {
                    self.expect("`E`", &Ty::Qbit, &ta)?;
                    self.expect("`E`", &Ty::Qbit, &tb)?;
                }
                Ok(Ty::Tensor(Box::new(ta), Box::new(tb)))
            }
            Term::Inl(a) | Term::Inr(a) => {
                let ta = self.infer(scope, a, &mut Self::child(path, 0))?;
                let other = self.fresh();
                Ok(if matches!(t, Term::Inl(_)) {
                    Ty::Sum(Box::new(ta), Box::new(other))
                } else {
                    Ty::Sum(Box::new(other), Box::new(ta))
                })
            }
            Term::PauliX(a) | Term::PauliZ(a) => {
                self.need(Pack::Qubit, "a Pauli gate")?;
                let ta = self.infer(scope, a, &mut Self::child(path, 0))?;
                self.expect("a Pauli gate", &Ty::Qbit, &ta)?;
                Ok(Ty::Qbit)
            }
            Term::LetPair {
                left,
                right,
                bound,
                body,
            } => {
                if left == right {
                    return Err(TypeError::Malformed(format!(
                        "`let` binds `{left}` twice"
                    )));
                }
                let fm = bound.free_vars();
                let mut fb = body.free_vars();
                fb.remove(left);
                fb.remove(right);
                if let Some(x) = first_shared(&fm, &fb) {
                    return Err(TypeError::Linearity {
                        name: x,
                        construct: "`let`",
                    });
                }
                let tm = self.infer(&restrict(scope, &fm), bound, &mut Self::child(path, 0))?;
                let (a, b) = (self.fresh(), self.fresh());
                let want = Ty::Tensor(Box::new(a.clone()), Box::new(b.clone()));
                self.expect("`let`", &want, &tm)?;
                let inner = extend(&extend(&without(scope, &fm), left, a), right, b);
                self.infer(&inner, body, &mut Self::child(path, 1))
            }
            Term::Case {
                scrutinee,
                left,
                on_left,
                right,
                on_right,
            } => {
                let fm = scrutinee.free_vars();
                let mut fb = on_left.free_vars();
                fb.remove(left);
                let mut fr = on_right.free_vars();
                fr.remove(right);
                fb.extend(fr);
                if let Some(x) = first_shared(&fm, &fb) {
                    return Err(TypeError::Linearity {
                        name: x,
                        construct: "`case`",
                    });
                }
                let tm = self.infer(&restrict(scope, &fm), scrutinee, &mut Self::child(path, 0))?;
                let (a, b) = (self.fresh(), self.fresh());
                let want = Ty::Sum(Box::new(a.clone()), Box::new(b.clone()));
                self.expect("`case`", &want, &tm)?;
                let rest = without(scope, &fm);
                let t1 = self.infer(&extend(&rest, left, a), on_left, &mut Self::child(path, 1))?;
                let t2 = self.infer(&extend(&rest, right, b), on_right, &mut Self::child(path, 2))?;
                self.expect("`case` branches", &t1, &t2)?;
                Ok(t1)
            }
            Term::Measure(bs) => {
                if bs.is_empty() {
                    return Err(TypeError::Malformed("`measure` needs a branch".into()));
                }
                let mut fe = BTreeSet::new();
                for b in bs {
                    fe.extend(b.guard.free_vars());
                }
                let mut fbody = BTreeSet::new();
                for b in bs {
                    fbody.extend(b.body.free_vars());
                }
                if let Some(x) = first_shared(&fe, &fbody) {
                    return Err(TypeError::Linearity {
                        name: x,
                        construct: "`measure`",
                    });
                }
                let gamma = restrict(scope, &fe);
                for (i, b) in bs.iter().enumerate() {
                    self.effect(&gamma, &b.guard, &mut Self::child(path, 2 * i as u16))?;
                }
                let guards: Vec<Effect> = bs.iter().map(|b| b.guard.clone()).collect();
                self.pending.push((
                    gamma,
                    PendingGoal::Leq(Effect::one(), Effect::big_ovee(&guards)),
                ));
                let delta = without(scope, &fe);
                let mut result: Option<Ty> = None;
                for (i, b) in bs.iter().enumerate() {
                    let tb = self.infer(&delta, &b.body, &mut Self::child(path, 2 * i as u16 + 1))?;
                    match &result {
                        None => result = Some(tb),
                        Some(r) => {
                            let r = r.clone();
                            self.expect("`measure` branches", &r, &tb)?
                        }
                    }
                }
                Ok(result.unwrap())
            }
        }
    }

    fn effect(&mut self, scope: &Scope, e: &Effect, path: &mut Path) -> Result<(), TypeError> {
        match e {
            Effect::Zero => Ok(()),
            Effect::Const(_) => self.need(Pack::Scalars, "a scalar constant"),
            Effect::Orth(a) => self.effect(scope, a, &mut Self::child(path, 0)),
            Effect::Ovee(a, b) => {
                self.effect(scope, a, &mut Self::child(path, 0))?;
                self.effect(scope, b, &mut Self::child(path, 1))?;
                self.pending.push((
                    normalize(scope),
                    PendingGoal::Leq((**a).clone(), Effect::orth((**b).clone())),
                ));
                Ok(())
            }
            Effect::Scale(a, b) => {
                if !a.free_vars().is_empty() {
                    return Err(TypeError::OpenScalar(crate::parse::print::effect_inline(a)));
                }
                self.effect(&Vec::new(), a, &mut Self::child(path, 0))?;
                self.effect(scope, b, &mut Self::child(path, 1))
            }
            Effect::Proj(m, _) => {
                self.need(Pack::Qubit, "the projection `proj`")?;
                let tm = self.infer(scope, m, &mut Self::child(path, 0))?;
                self.expect("`proj`", &Ty::Qbit, &tm)
            }
            Effect::Case {
                scrutinee,
                left,
                on_left,
                right,
                on_right,
            } => {
                let fm = scrutinee.free_vars();
                let mut fb = on_left.free_vars();
                fb.remove(left);
                let mut fr = on_right.free_vars();
                fr.remove(right);
                fb.extend(fr);
                if let Some(x) = first_shared(&fm, &fb) {
                    return Err(TypeError::Linearity {
                        name: x,
                        construct: "`caseE`",
                    });
                }
                let tm = self.infer(&restrict(scope, &fm), scrutinee, &mut Self::child(path, 0))?;
                let (a, b) = (self.fresh(), self.fresh());
                let want = Ty::Sum(Box::new(a.clone()), Box::new(b.clone()));
                self.expect("`caseE`", &want, &tm)?;
                let rest = without(scope, &fm);
                self.effect(&extend(&rest, left, a), on_left, &mut Self::child(path, 1))?;
                self.effect(&extend(&rest, right, b), on_right, &mut Self::child(path, 2))
            }
        }
    }

    fn finish(
        self,
        resolver: Option<&dyn ObligationResolver>,
    ) -> Result<CheckInfo, TypeError> {
        let mut types = TypeMap::default();
        for (p, t) in &self.recorded {
            types.0.insert(p.clone(), self.zonk(t));
        }
        let mut obligations = Vec::new();
        for (scope, goal) in &self.pending {
            let ctx = Context(
                scope
                    .iter()
                    .map(|(n, t)| (n.clone(), self.zonk(t)))
                    .collect(),
            );
            let PendingGoal::Leq(l, r) = goal;
            let j = Judgement::leq(&ctx, l.clone(), r.clone());
            let d = match resolver {
                Some(res) => Some(res.resolve(&j).map_err(|reason| TypeError::Obligation {
                    judgement: j.to_string(),
                    reason,
                })?),
                None => None,
            };
            obligations.push((j, d));
        }
        Ok(CheckInfo { types, obligations })
    }
}

/// Type checker parameterised by the enabled rule packs and an optional
/// obligation resolver. Without a resolver obligations are collected but not
/// discharged.
pub struct TypeChecker<'r> {
    pub packs: Packs,
    pub resolver: Option<&'r dyn ObligationResolver>,
}

fn scope_of(ctx: &Context) -> Scope {
    ctx.0.iter().map(|(n, t)| (n.clone(), Ty::from_type(t))).collect()
}

impl<'r> TypeChecker<'r> {
    pub fn new(packs: Packs, resolver: Option<&'r dyn ObligationResolver>) -> Self {
        TypeChecker { packs, resolver }
    }

    /// Checker that collects obligations without discharging them.
    pub fn trusting(packs: Packs) -> TypeChecker<'static> {
        TypeChecker {
            packs,
            resolver: None,
        }
    }

    fn engine(&self) -> Engine<'_> {
        Engine {
            packs: &self.packs,
            metas: Vec::new(),
            recorded: Vec::new(),
            pending: Vec::new(),
        }
    }

    fn check_ctx(&self, ctx: &Context) -> Result<(), TypeError> {
        if !self.packs.contains(Pack::Qubit) && ctx.0.iter().any(|(_, t)| t.mentions_qbit()) {
            return Err(TypeError::PackDisabled("the type `qbit`", "qubit"));
        }
        Ok(())
    }

    pub fn check_term(&self, ctx: &Context, t: &Term, ty: &Type) -> Result<CheckInfo, TypeError> {
        self.check_ctx(ctx)?;
        if ty.mentions_qbit() && !self.packs.contains(Pack::Qubit) {
            return Err(TypeError::PackDisabled("the type `qbit`", "qubit"));
        }
        let mut e = self.engine();
        let found = e.infer(&scope_of(ctx), t, &mut Vec::new())?;
        e.expect("the declared type", &Ty::from_type(ty), &found)?;
        e.finish(self.resolver)
    }

    pub fn infer_term(&self, ctx: &Context, t: &Term) -> Result<(Type, CheckInfo), TypeError> {
        self.check_ctx(ctx)?;
        let mut e = self.engine();
        let found = e.infer(&scope_of(ctx), t, &mut Vec::new())?;
        let ty = e.zonk(&found);
        Ok((ty, e.finish(self.resolver)?))
    }

    pub fn check_effect(&self, ctx: &Context, eff: &Effect) -> Result<CheckInfo, TypeError> {
        self.check_ctx(ctx)?;
        let mut e = self.engine();
        e.effect(&scope_of(ctx), eff, &mut Vec::new())?;
        e.finish(self.resolver)
    }

    /// Checks the formation side of a judgement: both sides typed or well formed.
    pub fn check_judgement(&self, j: &Judgement) -> Result<Vec<CheckInfo>, TypeError> {
        match j {
            Judgement::Typing { ctx, term, ty } => Ok(vec![self.check_term(ctx, term, ty)?]),
            Judgement::TermEq { ctx, lhs, rhs, ty } => Ok(vec![
                self.check_term(ctx, lhs, ty)?,
                self.check_term(ctx, rhs, ty)?,
            ]),
            Judgement::EffForm { ctx, eff } => Ok(vec![self.check_effect(ctx, eff)?]),
            Judgement::EffLeq { ctx, lhs, rhs } => Ok(vec![
                self.check_effect(ctx, lhs)?,
                self.check_effect(ctx, rhs)?,
            ]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_effect, parse_term, parse_type};

    fn tc() -> TypeChecker<'static> {
        TypeChecker::trusting(Packs::all())
    }

    fn ctx(items: &[(&str, &str)]) -> Context {
        Context(
            items
                .iter()
                .map(|(n, t)| (n.to_string(), parse_type(t).unwrap()))
                .collect(),
        )
    }

    #[test]
    fn infers_injection_types_from_context() {
        let t = parse_term("case c of inl a -> inr a | inr b -> inl b").unwrap();
        let (ty, _) = tc().infer_term(&ctx(&[("c", "I + qbit")]), &t).unwrap();
        assert_eq!(ty, parse_type("qbit + I").unwrap());
    }

    #[test]
    fn rejects_cloning() {
        let t = parse_term("q * q").unwrap();
        let err = tc().infer_term(&ctx(&[("q", "qbit")]), &t).unwrap_err();
        assert!(matches!(err, TypeError::Linearity { .. }), "{err}");
        assert!(err.to_string().contains("no-cloning"));
    }

    #[test]
    fn case_branches_share_context() {
        let t = parse_term("case c of inl a -> q | inr b -> X q").unwrap();
        assert!(tc().check_term(&ctx(&[("c", "I + I"), ("q", "qbit")]), &t, &Type::Qbit).is_ok());
    }

    #[test]
    fn unused_variables_are_allowed() {
        let t = parse_term("unit").unwrap();
        assert!(tc().check_term(&ctx(&[("q", "qbit")]), &t, &Type::Unit).is_ok());
    }

    #[test]
    fn measure_records_obligation() {
        let t = parse_term("measure { 1/2 -> inl unit | bot(1/2) -> inr unit }").unwrap();
        let info = tc().check_term(&Context::new(), &t, &Type::bit()).unwrap();
        assert_eq!(info.obligations.len(), 1);
        assert_eq!(
            info.obligations[0].0.to_string(),
            "() : 1 <= 1/2 o+ bot(1/2)"
        );
    }

    #[test]
    fn products_need_closed_scalars() {
        let e = parse_effect("proj(q, 0) . 1").unwrap();
        assert!(matches!(
            tc().check_effect(&ctx(&[("q", "qbit")]), &e),
            Err(TypeError::OpenScalar(_))
        ));
    }

    #[test]
    fn qubit_pack_can_be_disabled() {
        let t = TypeChecker::trusting(Packs::new(&[]));
        assert!(matches!(
            t.infer_term(&Context::new(), &Term::Plus),
            Err(TypeError::PackDisabled(..))
        ));
    }

    #[test]
    fn type_map_paths() {
        let t = parse_term("let x * y = a in y * x").unwrap();
        let info = tc()
            .check_term(&ctx(&[("a", "I * qbit")]), &t, &parse_type("qbit * I").unwrap())
            .unwrap();
        assert_eq!(info.types.at(&[0]), Some(&parse_type("I * qbit").unwrap()));
        assert_eq!(info.types.at(&[1, 0]), Some(&Type::Qbit));
    }
}
