//! Abstract syntax of types, terms, effects and judgements.

use num_rational::Rational64;
use std::collections::BTreeSet;
use std::fmt;

pub type Name = String;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Type {
    Unit,
    Tensor(Box<Type>, Box<Type>),
    Sum(Box<Type>, Box<Type>),
    Qbit,
}

impl Type {
    pub fn tensor(a: Type, b: Type) -> Type {
        Type::Tensor(Box::new(a), Box::new(b))
    }

    pub fn sum(a: Type, b: Type) -> Type {
        Type::Sum(Box::new(a), Box::new(b))
    }

    /// `I + I`, the type of booleans.
    pub fn bit() -> Type {
        Type::sum(Type::Unit, Type::Unit)
    }

    pub fn mentions_qbit(&self) -> bool {
        match self {
            Type::Unit => false,
            Type::Qbit => true,
            Type::Tensor(a, b) | Type::Sum(a, b) => a.mentions_qbit() || b.mentions_qbit(),
        }
    }
}

/// A phase `q * pi` with rational `q` kept in `[0, 2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle(Rational64);

impl Angle {
    pub fn new(q: Rational64) -> Angle {
        let two = Rational64::from_integer(2);
        let mut r = q % two;
        if r < Rational64::from_integer(0) {
            r += two;
        }
        Angle(r)
    }

    pub fn zero() -> Angle {
        Angle(Rational64::from_integer(0))
    }

    /// Coefficient of pi.
    pub fn turns(&self) -> Rational64 {
        self.0
    }

    pub fn neg(&self) -> Angle {
        Angle::new(-self.0)
    }

    pub fn minus_pi(&self) -> Angle {
        Angle::new(self.0 - Rational64::from_integer(1))
    }

    pub fn radians(&self) -> f64 {
        (*self.0.numer() as f64 / *self.0.denom() as f64) * std::f64::consts::PI
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Branch {
    pub guard: Effect,
    pub body: Term,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Name),
    Pair(Box<Term>, Box<Term>),
    LetPair {
        left: Name,
        right: Name,
        bound: Box<Term>,
        body: Box<Term>,
    },
    Unit,
    Inl(Box<Term>),
    Inr(Box<Term>),
    Case {
        scrutinee: Box<Term>,
        left: Name,
        on_left: Box<Term>,
        right: Name,
        on_right: Box<Term>,
    },
    Measure(Vec<Branch>),
    Plus,
    PauliX(Box<Term>),
    PauliZ(Box<Term>),
    Cz(Box<Term>, Box<Term>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Effect {
    Zero,
    Orth(Box<Effect>),
    Ovee(Box<Effect>, Box<Effect>),
    Scale(Box<Effect>, Box<Effect>),
    Case {
        scrutinee: Box<Term>,
        left: Name,
        on_left: Box<Effect>,
        right: Name,
        on_right: Box<Effect>,
    },
    Proj(Box<Term>, Angle),
    /// Opaque closed scalar strictly between 0 and 1.
    Const(Rational64),
}

pub fn var(x: &str) -> Term {
    Term::Var(x.to_string())
}

impl Term {
    pub fn pair(m: Term, n: Term) -> Term {
        Term::Pair(Box::new(m), Box::new(n))
    }

    pub fn let_pair(x: &str, y: &str, m: Term, n: Term) -> Term {
        Term::LetPair {
            left: x.to_string(),
            right: y.to_string(),
            bound: Box::new(m),
            body: Box::new(n),
        }
    }

    pub fn inl(m: Term) -> Term {
        Term::Inl(Box::new(m))
    }

    pub fn inr(m: Term) -> Term {
        Term::Inr(Box::new(m))
    }

    pub fn case(m: Term, x: &str, n: Term, y: &str, p: Term) -> Term {
        Term::Case {
            scrutinee: Box::new(m),
            left: x.to_string(),
            on_left: Box::new(n),
            right: y.to_string(),
            on_right: Box::new(p),
        }
    }

    pub fn measure(branches: Vec<(Effect, Term)>) -> Term {
        Term::Measure(
            branches
                .into_iter()
                .map(|(guard, body)| Branch { guard, body })
                .collect(),
        )
    }

    pub fn x(m: Term) -> Term {
        Term::PauliX(Box::new(m))
    }

    pub fn z(m: Term) -> Term {
        Term::PauliZ(Box::new(m))
    }

    pub fn cz(m: Term, n: Term) -> Term {
        Term::Cz(Box::new(m), Box::new(n))
    }

    /// `let x = M in N`, encoded as `let x * y = M * <> in N` with `y` fresh.
    pub fn let_single(x: &str, m: Term, n: Term) -> Term {
        let mut avoid = n.all_names();
        avoid.insert(x.to_string());
        let y = crate::subst::fresh_name("u", &avoid);
        Term::let_pair(x, &y, Term::pair(m, Term::Unit), n)
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub(crate) fn collect_free(&self, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
        match self {
            Term::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            Term::Unit | Term::Plus => {}
            Term::Pair(a, b) | Term::Cz(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Term::Inl(a) | Term::Inr(a) | Term::PauliX(a) | Term::PauliZ(a) => {
                a.collect_free(bound, out)
            }
            Term::LetPair {
                left,
                right,
                bound: m,
                body,
            } => {
                m.collect_free(bound, out);
                bound.push(left.clone());
                bound.push(right.clone());
                body.collect_free(bound, out);
                bound.pop();
                bound.pop();
            }
            Term::Case {
                scrutinee,
                left,
                on_left,
                right,
                on_right,
            } => {
                scrutinee.collect_free(bound, out);
                bound.push(left.clone());
                on_left.collect_free(bound, out);
                bound.pop();
                bound.push(right.clone());
                on_right.collect_free(bound, out);
                bound.pop();
            }
            Term::Measure(bs) => {
                for b in bs {
                    b.guard.collect_free(bound, out);
                    b.body.collect_free(bound, out);
                }
            }
        }
    }

    /// Every name occurring in the term, free or bound.
    pub fn all_names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    pub(crate) fn collect_names(&self, out: &mut BTreeSet<Name>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::Unit | Term::Plus => {}
            Term::Pair(a, b) | Term::Cz(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            Term::Inl(a) | Term::Inr(a) | Term::PauliX(a) | Term::PauliZ(a) => {
                a.collect_names(out)
            }
            Term::LetPair {
                left,
                right,
                bound,
                body,
            } => {
                out.insert(left.clone());
                out.insert(right.clone());
                bound.collect_names(out);
                body.collect_names(out);
            }
            Term::Case {
                scrutinee,
                left,
                on_left,
                right,
                on_right,
            } => {
                out.insert(left.clone());
                out.insert(right.clone());
                scrutinee.collect_names(out);
                on_left.collect_names(out);
                on_right.collect_names(out);
            }
            Term::Measure(bs) => {
                for b in bs {
                    b.guard.collect_names(out);
                    b.body.collect_names(out);
                }
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Unit | Term::Plus => 1,
            Term::Pair(a, b) | Term::Cz(a, b) => 1 + a.size() + b.size(),
            Term::Inl(a) | Term::Inr(a) | Term::PauliX(a) | Term::PauliZ(a) => 1 + a.size(),
            Term::LetPair { bound, body, .. } => 1 + bound.size() + body.size(),
            Term::Case {
                scrutinee,
                on_left,
                on_right,
                ..
            } => 1 + scrutinee.size() + on_left.size() + on_right.size(),
            Term::Measure(bs) => {
                1 + bs
                    .iter()
                    .map(|b| b.guard.size() + b.body.size())
                    .sum::<usize>()
            }
        }
    }

    pub fn uses_qubits(&self) -> bool {
        match self {
            Term::Plus | Term::PauliX(_) | Term::PauliZ(_) | Term::Cz(_, _) => true,
            Term::Var(_) | Term::Unit => false,
            Term::Pair(a, b) => a.uses_qubits() || b.uses_qubits(),
            Term::Inl(a) | Term::Inr(a) => a.uses_qubits(),
            Term::LetPair { bound, body, .. } => bound.uses_qubits() || body.uses_qubits(),
            Term::Case {
                scrutinee,
                on_left,
                on_right,
                ..
            } => scrutinee.uses_qubits() || on_left.uses_qubits() || on_right.uses_qubits(),
            Term::Measure(bs) => bs
                .iter()
                .any(|b| b.guard.uses_qubits() || b.body.uses_qubits()),
        }
    }

    pub fn uses_constants(&self) -> bool {
        match self {
            Term::Var(_) | Term::Unit | Term::Plus => false,
            Term::Pair(a, b) | Term::Cz(a, b) => a.uses_constants() || b.uses_constants(),
            Term::Inl(a) | Term::Inr(a) | Term::PauliX(a) | Term::PauliZ(a) => {
                a.uses_constants()
            }
            Term::LetPair { bound, body, .. } => bound.uses_constants() || body.uses_constants(),
            Term::Case {
                scrutinee,
                on_left,
                on_right,
                ..
            } => {
                scrutinee.uses_constants() || on_left.uses_constants() || on_right.uses_constants()
            }
            Term::Measure(bs) => bs
                .iter()
                .any(|b| b.guard.uses_constants() || b.body.uses_constants()),
        }
    }
}

impl Effect {
    /// `1`, written as the orthosupplement of `0`.
    pub fn one() -> Effect {
        Effect::Orth(Box::new(Effect::Zero))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Effect::Orth(e) if **e == Effect::Zero)
    }

    pub fn orth(e: Effect) -> Effect {
        Effect::Orth(Box::new(e))
    }

    pub fn ovee(a: Effect, b: Effect) -> Effect {
        Effect::Ovee(Box::new(a), Box::new(b))
    }

    pub fn scale(a: Effect, b: Effect) -> Effect {
        Effect::Scale(Box::new(a), Box::new(b))
    }

    pub fn case(m: Term, x: &str, a: Effect, y: &str, b: Effect) -> Effect {
        Effect::Case {
            scrutinee: Box::new(m),
            left: x.to_string(),
            on_left: Box::new(a),
            right: y.to_string(),
            on_right: Box::new(b),
        }
    }

    pub fn proj(m: Term, a: Angle) -> Effect {
        Effect::Proj(Box::new(m), a)
    }

    pub fn constant(n: i64, d: i64) -> Effect {
        Effect::Const(Rational64::new(n, d))
    }

    /// Left-associated sum of a non-empty list of effects.
    pub fn big_ovee(items: &[Effect]) -> Effect {
        let mut it = items.iter();
        let mut acc = it.next().expect("big_ovee of empty list").clone();
        for e in it {
            acc = Effect::ovee(acc, e.clone());
        }
        acc
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub(crate) fn collect_free(&self, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
        match self {
            Effect::Zero | Effect::Const(_) => {}
            Effect::Orth(a) => a.collect_free(bound, out),
            Effect::Ovee(a, b) | Effect::Scale(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Effect::Case {
                scrutinee,
                left,
                on_left,
                right,
                on_right,
            } => {
                scrutinee.collect_free(bound, out);
                bound.push(left.clone());
                on_left.collect_free(bound, out);
                bound.pop();
                bound.push(right.clone());
                on_right.collect_free(bound, out);
                bound.pop();
            }
            Effect::Proj(m, _) => m.collect_free(bound, out),
        }
    }

    pub fn all_names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    pub(crate) fn collect_names(&self, out: &mut BTreeSet<Name>) {
        match self {
            Effect::Zero | Effect::Const(_) => {}
            Effect::Orth(a) => a.collect_names(out),
            Effect::Ovee(a, b) | Effect::Scale(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            Effect::Case {
                scrutinee,
                left,
                on_left,
                right,
                on_right,
            } => {
                out.insert(left.clone());
                out.insert(right.clone());
                scrutinee.collect_names(out);
                on_left.collect_names(out);
                on_right.collect_names(out);
            }
            Effect::Proj(m, _) => m.collect_names(out),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Effect::Zero | Effect::Const(_) => 1,
            Effect::Orth(a) => 1 + a.size(),
            Effect::Ovee(a, b) | Effect::Scale(a, b) => 1 + a.size() + b.size(),
            Effect::Case {
                scrutinee,
                on_left,
                on_right,
                ..
            } => 1 + scrutinee.size() + on_left.size() + on_right.size(),
            Effect::Proj(m, _) => 1 + m.size(),
        }
    }

    pub fn uses_qubits(&self) -> bool {
        match self {
            Effect::Zero | Effect::Const(_) => false,
            Effect::Proj(_, _) => true,
            Effect::Orth(a) => a.uses_qubits(),
            Effect::Ovee(a, b) | Effect::Scale(a, b) => a.uses_qubits() || b.uses_qubits(),
            Effect::Case {
                scrutinee,
                on_left,
                on_right,
                ..
            } => scrutinee.uses_qubits() || on_left.uses_qubits() || on_right.uses_qubits(),
        }
    }

    pub fn uses_constants(&self) -> bool {
        match self {
            Effect::Zero => false,
            Effect::Const(_) => true,
            Effect::Proj(m, _) => m.uses_constants(),
            Effect::Orth(a) => a.uses_constants(),
            Effect::Ovee(a, b) | Effect::Scale(a, b) => a.uses_constants() || b.uses_constants(),
            Effect::Case {
                scrutinee,
                on_left,
                on_right,
                ..
            } => {
                scrutinee.uses_constants() || on_left.uses_constants() || on_right.uses_constants()
            }
        }
    }

    /// Immediate and nested sub-effects, the effect itself included.
    pub fn subeffects(&self, out: &mut Vec<Effect>) {
        out.push(self.clone());
        match self {
            Effect::Zero | Effect::Const(_) | Effect::Proj(_, _) => {}
            Effect::Orth(a) => a.subeffects(out),
            Effect::Ovee(a, b) | Effect::Scale(a, b) => {
                a.subeffects(out);
                b.subeffects(out);
            }
            Effect::Case {
                on_left, on_right, ..
            } => {
                on_left.subeffects(out);
                on_right.subeffects(out);
            }
        }
    }
}

/// Ordered typing context. Later entries shadow earlier ones with the same name.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Context(pub Vec<(Name, Type)>);

impl Context {
    pub fn new() -> Context {
        Context(Vec::new())
    }

    pub fn from_pairs(items: &[(&str, Type)]) -> Context {
        Context(items.iter().map(|(n, t)| (n.to_string(), t.clone())).collect())
    }

    pub fn lookup(&self, x: &str) -> Option<&Type> {
        self.0.iter().rev().find(|(n, _)| n == x).map(|(_, t)| t)
    }

    pub fn names(&self) -> BTreeSet<Name> {
        self.0.iter().map(|(n, _)| n.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Drops shadowed entries, keeping the last binding of every name.
    pub fn normalized(&self) -> Context {
        let mut out: Vec<(Name, Type)> = Vec::new();
        for (n, t) in &self.0 {
            out.retain(|(m, _)| m != n);
            out.push((n.clone(), t.clone()));
        }
        Context(out)
    }

    pub fn extend(&self, x: &str, t: Type) -> Context {
        let mut out = self.clone();
        out.0.retain(|(n, _)| n != x);
        out.0.push((x.to_string(), t));
        out
    }

    /// Entries whose names are in `keep`, in context order.
    pub fn restrict(&self, keep: &BTreeSet<Name>) -> Context {
        Context(
            self.normalized()
                .0
                .into_iter()
                .filter(|(n, _)| keep.contains(n))
                .collect(),
        )
    }

    pub fn without(&self, drop: &BTreeSet<Name>) -> Context {
        Context(
            self.normalized()
                .0
                .into_iter()
                .filter(|(n, _)| !drop.contains(n))
                .collect(),
        )
    }

    /// Same entries, possibly in another order.
    pub fn same_entries(&self, other: &Context) -> bool {
        let mut a = self.normalized().0;
        let mut b = other.normalized().0;
        a.sort();
        b.sort();
        a == b
    }
}

/// The four primitive judgement forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Judgement {
    Typing {
        ctx: Context,
        term: Term,
        ty: Type,
    },
    TermEq {
        ctx: Context,
        lhs: Term,
        rhs: Term,
        ty: Type,
    },
    EffForm {
        ctx: Context,
        eff: Effect,
    },
    EffLeq {
        ctx: Context,
        lhs: Effect,
        rhs: Effect,
    },
}

impl Judgement {
    pub fn ctx(&self) -> &Context {
        match self {
            Judgement::Typing { ctx, .. }
            | Judgement::TermEq { ctx, .. }
            | Judgement::EffForm { ctx, .. }
            | Judgement::EffLeq { ctx, .. } => ctx,
        }
    }

    pub fn with_ctx(&self, ctx: Context) -> Judgement {
        let mut j = self.clone();
        match &mut j {
            Judgement::Typing { ctx: c, .. }
            | Judgement::TermEq { ctx: c, .. }
            | Judgement::EffForm { ctx: c, .. }
            | Judgement::EffLeq { ctx: c, .. } => *c = ctx,
        }
        j
    }

    pub fn is_formation(&self) -> bool {
        matches!(self, Judgement::Typing { .. } | Judgement::EffForm { .. })
    }

    pub fn leq(ctx: &Context, lhs: Effect, rhs: Effect) -> Judgement {
        Judgement::EffLeq {
            ctx: ctx.clone(),
            lhs,
            rhs,
        }
    }

    pub fn form(ctx: &Context, eff: Effect) -> Judgement {
        Judgement::EffForm {
            ctx: ctx.clone(),
            eff,
        }
    }

    pub fn typing(ctx: &Context, term: Term, ty: Type) -> Judgement {
        Judgement::Typing {
            ctx: ctx.clone(),
            term,
            ty,
        }
    }

    pub fn term_eq(ctx: &Context, lhs: Term, rhs: Term, ty: Type) -> Judgement {
        Judgement::TermEq {
            ctx: ctx.clone(),
            lhs,
            rhs,
            ty,
        }
    }

    /// `phi perp psi`, that is `phi <= bot(psi)`.
    pub fn perp(ctx: &Context, a: Effect, b: Effect) -> Judgement {
        Judgement::leq(ctx, a, Effect::orth(b))
    }

    pub fn uses_qubits(&self) -> bool {
        let ctx_q = self.ctx().0.iter().any(|(_, t)| t.mentions_qbit());
        ctx_q
            || match self {
                Judgement::Typing { term, ty, .. } => term.uses_qubits() || ty.mentions_qbit(),
                Judgement::TermEq { lhs, rhs, ty, .. } => {
                    lhs.uses_qubits() || rhs.uses_qubits() || ty.mentions_qbit()
                }
                Judgement::EffForm { eff, .. } => eff.uses_qubits(),
                Judgement::EffLeq { lhs, rhs, .. } => lhs.uses_qubits() || rhs.uses_qubits(),
            }
    }

    pub fn uses_constants(&self) -> bool {
        match self {
            Judgement::Typing { term, .. } => term.uses_constants(),
            Judgement::TermEq { lhs, rhs, .. } => lhs.uses_constants() || rhs.uses_constants(),
            Judgement::EffForm { eff, .. } => eff.uses_constants(),
            Judgement::EffLeq { lhs, rhs, .. } => lhs.uses_constants() || rhs.uses_constants(),
        }
    }
}

/// Judgement forms accepted in lemma statements, including the notations
/// `phi perp psi` and `phi == psi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Goal {
    Core(Judgement),
    Perp {
        ctx: Context,
        lhs: Effect,
        rhs: Effect,
    },
    Equiv {
        ctx: Context,
        lhs: Effect,
        rhs: Effect,
    },
}

impl Goal {
    /// Expands notations into primitive judgements.
    pub fn expand(&self) -> Vec<Judgement> {
        match self {
            Goal::Core(j) => vec![j.clone()],
            Goal::Perp { ctx, lhs, rhs } => vec![Judgement::perp(ctx, lhs.clone(), rhs.clone())],
            Goal::Equiv { ctx, lhs, rhs } => vec![
                Judgement::leq(ctx, lhs.clone(), rhs.clone()),
                Judgement::leq(ctx, rhs.clone(), lhs.clone()),
            ],
        }
    }

    pub fn ctx(&self) -> &Context {
        match self {
            Goal::Core(j) => j.ctx(),
            Goal::Perp { ctx, .. } | Goal::Equiv { ctx, .. } => ctx,
        }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::print::type_to_string(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::print::term_to_string(self))
    }
}

impl fmt::Display for Effect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::print::effect_to_string(self))
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::print::context_to_string(self))
    }
}

impl fmt::Display for Judgement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::print::judgement_to_string(self))
    }
}

impl fmt::Display for Goal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::print::goal_to_string(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angle_normalizes_into_range() {
        assert_eq!(Angle::new(Rational64::new(5, 2)).turns(), Rational64::new(1, 2));
        assert_eq!(Angle::new(Rational64::new(-1, 2)).turns(), Rational64::new(3, 2));
        assert_eq!(Angle::zero().minus_pi().turns(), Rational64::from_integer(1));
    }

    #[test]
    fn free_vars_respect_binders() {
        let t = Term::let_pair("x", "y", var("z"), Term::pair(var("x"), var("w")));
        let fv: Vec<_> = t.free_vars().into_iter().collect();
        assert_eq!(fv, vec!["w".to_string(), "z".to_string()]);
    }

    #[test]
    fn let_single_picks_fresh_name() {
        let t = Term::let_single("x", var("m"), Term::pair(var("x"), var("u")));
        match t {
            Term::LetPair { left, right, .. } => {
                assert_eq!(left, "x");
                assert!(right != "u" && right != "x");
            }
            _ => panic!("expected let"),
        }
    }

    #[test]
    fn equiv_expands_to_two_inequalities() {
        let g = Goal::Equiv {
            ctx: Context::new(),
            lhs: Effect::Zero,
            rhs: Effect::one(),
        };
        let js = g.expand();
        assert_eq!(js.len(), 2);
        let again: Vec<_> = js.iter().flat_map(|j| Goal::Core(j.clone()).expand()).collect();
        assert_eq!(again, js);
    }

    #[test]
    fn context_shadowing() {
        let c = Context::from_pairs(&[("x", Type::Unit), ("y", Type::Qbit), ("x", Type::bit())]);
        assert_eq!(c.lookup("x"), Some(&Type::bit()));
        assert_eq!(c.normalized().len(), 2);
    }
}
