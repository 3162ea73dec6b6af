//! Interpretation of types, terms and effects in any triangle, truth of
//! judgements, and weakest preconditions.
//!
//! A context `x1 : A1, ..., xn : An` denotes `[[A1]] * ... * [[An]]`. When a
//! rule splits the context, the symmetry bringing the needed variables
//! together is composed first. Variables left over at `unit`, variables and
//! `plus` are discarded.

use crate::triangle::{cotuple_all, dist_r_all, permute, tensor_all, tensor_mors, SemError, Triangle};
use qpel_core::derivation::Derivation;
use qpel_core::rules::Packs;
use qpel_core::subst::subst_effect;
use qpel_core::syntax::{Context, Effect, Judgement, Name, Term, Type};
use qpel_core::typecheck::{TypeChecker, TypeMap};
use std::collections::BTreeSet;

type Entries = [(Name, Type)];

pub struct Interp<'t, T: Triangle> {
    pub t: &'t T,
}

fn child(path: &[u16], k: u16) -> Vec<u16> {
    let mut p = path.to_vec();
    p.push(k);
    p
}

fn type_error(e: impl std::fmt::Display) -> SemError {
    SemError::Type(e.to_string())
}

/// Indices of the entries that `names` refer to, and of all the others.
fn split(ctx: &Entries, names: &BTreeSet<Name>) -> (Vec<usize>, Vec<usize>) {
    let mut used = Vec::new();
    for n in names {
        if let Some(i) = ctx.iter().rposition(|(m, _)| m == n) {
            used.push(i);
        }
    }
    used.sort();
    let rest = (0..ctx.len()).filter(|i| !used.contains(i)).collect();
    (used, rest)
}

fn pick(ctx: &Entries, idx: &[usize]) -> Vec<(Name, Type)> {
    idx.iter().map(|&i| ctx[i].clone()).collect()
}

fn effect_free_vars(guards: &[&Effect]) -> BTreeSet<Name> {
    guards.iter().flat_map(|g| g.free_vars()).collect()
}

impl<'t, T: Triangle> Interp<'t, T> {
    pub fn new(t: &'t T) -> Self {
        Interp { t }
    }

    pub fn object(&self, ty: &Type) -> Result<T::Ob, SemError> {
        Ok(match ty {
            Type::Unit => self.t.unit(),
            Type::Qbit => self.t.qbit()?,
            Type::Tensor(a, b) => self.t.tensor(&self.object(a)?, &self.object(b)?),
            Type::Sum(a, b) => self.t.sum(&self.object(a)?, &self.object(b)?),
        })
    }

    pub fn context(&self, ctx: &Entries) -> Result<T::Ob, SemError> {
        let obs = self.objects(ctx)?;
        Ok(tensor_all(self.t, &obs))
    }

    fn objects(&self, ctx: &Entries) -> Result<Vec<T::Ob>, SemError> {
        ctx.iter().map(|(_, ty)| self.object(ty)).collect()
    }

    fn checker() -> TypeChecker<'static> {
        TypeChecker::trusting(Packs::all())
    }

    /// `[[ctx |- m : ty]]`.
    pub fn term(&self, ctx: &Context, m: &Term, ty: &Type) -> Result<T::Mor, SemError> {
        let info = Self::checker().check_term(ctx, m, ty).map_err(type_error)?;
        self.term_at(&ctx.0, m, &info.types, &[])
    }

    /// `[[ctx |- e eff]]`.
    pub fn effect(&self, ctx: &Context, e: &Effect) -> Result<T::Pred, SemError> {
        let info = Self::checker().check_effect(ctx, e).map_err(type_error)?;
        self.effect_at(&ctx.0, e, &info.types, &[])
    }

    fn ty_at(types: &TypeMap, path: &[u16]) -> Result<Type, SemError> {
        types
            .at(path)
            .cloned()
            .ok_or_else(|| SemError::Type(format!("no type recorded at {path:?}")))
    }

    /// The symmetry `ctx -> first * second` for a split of `ctx`.
    fn regroup(&self, ctx: &Entries, first: &[usize], second: &[usize]) -> Result<T::Mor, SemError> {
        let obs = self.objects(ctx)?;
        let order: Vec<usize> = first.iter().chain(second).copied().collect();
        Ok(permute(self.t, &obs, &order))
    }

    fn term_at(&self, ctx: &Entries, m: &Term, types: &TypeMap, path: &[u16]) -> Result<T::Mor, SemError> {
        let t = self.t;
        match m {
            Term::Var(x) => {
                let k = ctx
                    .iter()
                    .rposition(|(n, _)| n == x)
                    .ok_or_else(|| SemError::Type(format!("unbound variable {x}")))?;
                let parts: Vec<T::Mor> = ctx
                    .iter()
                    .enumerate()
                    .map(|(i, (_, ty))| {
                        let o = self.object(ty)?;
                        Ok(if i == k { t.id(&o) } else { t.bang(&o) })
                    })
                    .collect::<Result<_, SemError>>()?;
                Ok(tensor_mors(t, &parts))
            }
            Term::Unit => Ok(t.bang(&self.context(ctx)?)),
            Term::Plus => Ok(t.compose(&t.plus()?, &t.bang(&self.context(ctx)?))),
            Term::Pair(a, b) | Term::Cz(a, b) => {
                let (l, r) = split(ctx, &a.free_vars());
                let fa = self.term_at(&pick(ctx, &l), a, types, &child(path, 0))?;
                let fb = self.term_at(&pick(ctx, &r), b, types, &child(path, 1))?;
                let pair = t.compose(&t.tensor_mor(&fa, &fb), &self.regroup(ctx, &l, &r)?);
                match m {
                    Term::Cz(..) => Ok(t.compose(&t.cz()?, &pair)),
                    _ => Ok(pair),
                }
            }
            Term::Inl(a) | Term::Inr(a) => {
                let Type::Sum(ta, tb) = Self::ty_at(types, path)? else {
                    return Err(SemError::Type("injection without a sum type".into()));
                };
                let (oa, ob) = (self.object(&ta)?, self.object(&tb)?);
                let inj = if matches!(m, Term::Inl(_)) { t.inl(&oa, &ob) } else { t.inr(&oa, &ob) };
                Ok(t.compose(&inj, &self.term_at(ctx, a, types, &child(path, 0))?))
            }
            Term::PauliX(a) | Term::PauliZ(a) => {
                let gate = if matches!(m, Term::PauliX(_)) { t.pauli_x()? } else { t.pauli_z()? };
                Ok(t.compose(&gate, &self.term_at(ctx, a, types, &child(path, 0))?))
            }
            Term::LetPair { left, right, bound, body } => {
                let (used, rest) = split(ctx, &bound.free_vars());
                let Type::Tensor(ta, tb) = Self::ty_at(types, &child(path, 0))? else {
                    return Err(SemError::Type("let over a non-tensor".into()));
                };
                let g2 = pick(ctx, &rest);
                let fm = self.term_at(&pick(ctx, &used), bound, types, &child(path, 0))?;
                let mut inner = g2.clone();
                inner.push((left.clone(), *ta));
                inner.push((right.clone(), *tb));
                let fb = self.term_at(&inner, body, types, &child(path, 1))?;
                let head = t.tensor_mor(&t.id(&self.context(&g2)?), &fm);
                Ok(t.compose(&fb, &t.compose(&head, &self.regroup(ctx, &rest, &used)?)))
            }
            Term::Case { scrutinee, left, on_left, right, on_right } => {
                let (used, rest) = split(ctx, &scrutinee.free_vars());
                let Type::Sum(ta, tb) = Self::ty_at(types, &child(path, 0))? else {
                    return Err(SemError::Type("case over a non-sum".into()));
                };
                let g2 = pick(ctx, &rest);
                let into = self.scrutinise(ctx, &used, &rest, scrutinee, &ta, &tb, types, path)?;
                let mut l = g2.clone();
                l.push((left.clone(), *ta));
                let mut r = g2;
                r.push((right.clone(), *tb));
                let fl = self.term_at(&l, on_left, types, &child(path, 1))?;
                let fr = self.term_at(&r, on_right, types, &child(path, 2))?;
                Ok(t.compose(&t.cotuple(&fl, &fr), &into))
            }
            Term::Measure(bs) => {
                let guards: Vec<&Effect> = bs.iter().map(|b| &b.guard).collect();
                let (used, rest) = split(ctx, &effect_free_vars(&guards));
                let gamma = pick(ctx, &used);
                let delta = pick(ctx, &rest);
                let preds = bs
                    .iter()
                    .enumerate()
                    .map(|(i, b)| self.effect_at(&gamma, &b.guard, types, &child(path, 2 * i as u16)))
                    .collect::<Result<Vec<_>, _>>()?;
                let meas = t.meas(&self.context(&gamma)?, &preds)?;
                let od = self.context(&delta)?;
                let spread = dist_r_all(t, &vec![t.unit(); bs.len()], &od);
                let bodies = bs
                    .iter()
                    .enumerate()
                    .map(|(i, b)| self.term_at(&delta, &b.body, types, &child(path, 2 * i as u16 + 1)))
                    .collect::<Result<Vec<_>, _>>()?;
                let head = t.compose(&spread, &t.tensor_mor(&meas, &t.id(&od)));
                Ok(t.compose(&cotuple_all(t, &bodies), &t.compose(&head, &self.regroup(ctx, &used, &rest)?)))
            }
        }
    }

    /// `ctx -> rest * (A + B) -> rest * A + rest * B` for a case split.
    #[allow(clippy::too_many_arguments)]
    fn scrutinise(
        &self,
        ctx: &Entries,
        used: &[usize],
        rest: &[usize],
        scrutinee: &Term,
        ta: &Type,
        tb: &Type,
        types: &TypeMap,
        path: &[u16],
    ) -> Result<T::Mor, SemError> {
        let t = self.t;
        let og2 = self.context(&pick(ctx, rest))?;
        let fm = self.term_at(&pick(ctx, used), scrutinee, types, &child(path, 0))?;
        let head = t.tensor_mor(&t.id(&og2), &fm);
        let dist = t.dist_l(&og2, &self.object(ta)?, &self.object(tb)?);
        Ok(t.compose(&dist, &t.compose(&head, &self.regroup(ctx, rest, used)?)))
    }

    fn effect_at(&self, ctx: &Entries, e: &Effect, types: &TypeMap, path: &[u16]) -> Result<T::Pred, SemError> {
        let t = self.t;
        match e {
            Effect::Zero => Ok(t.pred_zero(&self.context(ctx)?)),
            Effect::Orth(a) => Ok(t.pred_orth(&self.effect_at(ctx, a, types, &child(path, 0))?)),
            Effect::Ovee(a, b) => {
                let pa = self.effect_at(ctx, a, types, &child(path, 0))?;
                let pb = self.effect_at(ctx, b, types, &child(path, 1))?;
                t.pred_ovee(&pa, &pb)
                    .ok_or_else(|| SemError::Undefined(format!("the sum {e} is not defined")))
            }
            Effect::Scale(a, b) => {
                let r = t.pred_scalar(&self.effect_at(&[], a, types, &child(path, 0))?);
                Ok(t.pred_scale(&r, &self.effect_at(ctx, b, types, &child(path, 1))?))
            }
            Effect::Const(r) => Ok(t.pred_scale(&t.scalar_const(r)?, &t.pred_one(&self.context(ctx)?))),
            Effect::Proj(m, angle) => {
                let fm = self.term_at(ctx, m, types, &child(path, 0))?;
                Ok(t.apply_p(&fm, &t.proj(angle)?))
            }
            Effect::Case { scrutinee, left, on_left, right, on_right } => {
                let (used, rest) = split(ctx, &scrutinee.free_vars());
                let Type::Sum(ta, tb) = Self::ty_at(types, &child(path, 0))? else {
                    return Err(SemError::Type("caseE over a non-sum".into()));
                };
                let g2 = pick(ctx, &rest);
                let into = self.scrutinise(ctx, &used, &rest, scrutinee, &ta, &tb, types, path)?;
                let mut l = g2.clone();
                l.push((left.clone(), *ta));
                let mut r = g2;
                r.push((right.clone(), *tb));
                let pl = self.effect_at(&l, on_left, types, &child(path, 1))?;
                let pr = self.effect_at(&r, on_right, types, &child(path, 2))?;
                Ok(t.apply_p(&into, &t.pred_cotuple(&pl, &pr)))
            }
        }
    }

    /// Truth of a judgement. Formation judgements are true when their
    /// denotation is defined.
    pub fn truth(&self, j: &Judgement) -> Result<Truth, SemError> {
        Ok(match j {
            Judgement::Typing { ctx, term, ty } => {
                self.term(ctx, term, ty)?;
                Truth::exact(true)
            }
            Judgement::EffForm { ctx, eff } => {
                self.effect(ctx, eff)?;
                Truth::exact(true)
            }
            Judgement::TermEq { ctx, lhs, rhs, ty } => {
                let f = self.term(ctx, lhs, ty)?;
                let g = self.term(ctx, rhs, ty)?;
                Truth {
                    holds: self.t.mor_eq(&f, &g),
                    deviation: self.t.mor_distance(&f, &g),
                }
            }
            Judgement::EffLeq { ctx, lhs, rhs } => {
                let p = self.effect(ctx, lhs)?;
                let q = self.effect(ctx, rhs)?;
                Truth::exact(self.t.pred_leq(&p, &q))
            }
        })
    }

    /// `P(f)(q)` for `f = [[ctx |- m : ty]]`.
    pub fn wp(&self, ctx: &Context, m: &Term, ty: &Type, q: &T::Pred) -> Result<T::Pred, SemError> {
        Ok(self.t.apply_p(&self.term(ctx, m, ty)?, q))
    }

    /// The precondition of `x : ty |- post eff` under `m`, next to
    /// `[[ctx |- [m/x]post eff]]`.
    pub fn wp_cross_check(
        &self,
        ctx: &Context,
        m: &Term,
        ty: &Type,
        x: &str,
        post: &Effect,
    ) -> Result<(T::Pred, T::Pred), SemError> {
        let q = self.effect(&Context::from_pairs(&[(x, ty.clone())]), post)?;
        let pre = self.wp(ctx, m, ty, &q)?;
        let direct = self.effect(ctx, &subst_effect(post, x, m))?;
        Ok((pre, direct))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Truth {
    pub holds: bool,
    /// Distance between the two sides of an equation; zero otherwise.
    pub deviation: f64,
}

impl Truth {
    fn exact(holds: bool) -> Truth {
        Truth { holds, deviation: 0.0 }
    }
}

/// Names of the elements of a finite type, in index order.
pub fn labels(ty: &Type) -> Option<Vec<String>> {
    Some(match ty {
        Type::Unit => vec!["<>".into()],
        Type::Qbit => return None,
        Type::Sum(a, b) => {
            let wrap = |tag: &str, s: String| {
                if s.starts_with('<') || s.starts_with('(') {
                    format!("{tag}{s}")
                } else {
                    format!("{tag}({s})")
                }
            };
            let mut out: Vec<String> = labels(a)?.into_iter().map(|s| wrap("inl", s)).collect();
            out.extend(labels(b)?.into_iter().map(|s| wrap("inr", s)));
            out
        }
        Type::Tensor(a, b) => {
            let lb = labels(b)?;
            labels(a)?
                .into_iter()
                .flat_map(|x| lb.iter().map(move |y| format!("({x}, {y})")))
                .collect()
        }
    })
}

/// Outcome of evaluating the judgements of a derivation in one backend.
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    /// Every judgement holds; the largest deviation seen.
    Holds { checked: usize, deviation: f64 },
    /// The first judgement that does not hold.
    Fails { judgement: Judgement, deviation: f64, reason: Option<String> },
    /// The backend lacks a primitive the judgement needs.
    Skipped(String),
}

impl<'t, T: Triangle> Interp<'t, T> {
    /// Evaluates the conclusions of `ds`, and with `nodes` every judgement
    /// inside them.
    pub fn verify(&self, ds: &[Derivation], nodes: bool) -> Verdict {
        let mut js = Vec::new();
        for d in ds {
            if nodes {
                d.visit(&mut |n| js.push(n.conclusion.clone()));
            } else {
                js.push(d.conclusion.clone());
            }
        }
        let mut worst: f64 = 0.0;
        for j in &js {
            match self.truth(j) {
                Ok(t) if t.holds => worst = worst.max(t.deviation),
                Ok(t) => {
                    return Verdict::Fails { judgement: j.clone(), deviation: t.deviation, reason: None };
                }
                Err(SemError::Unsupported { what, .. }) => return Verdict::Skipped(what),
                Err(e) => {
                    return Verdict::Fails { judgement: j.clone(), deviation: f64::NAN, reason: Some(e.to_string()) };
                }
            }
        }
        Verdict::Holds { checked: js.len(), deviation: worst }
    }
}
