//! Single-point mutations of judgements, for testing that proofs are specific.
//!
//! Equations and inequalities change at the first mutable node in pre-order,
//! left-hand side first. Formation judgements change at a position that
//! cannot stay well formed under the same rule.

use crate::syntax::{Angle, Context, Effect, Goal, Judgement, Term};
use num_rational::Rational64;

fn mutate_term(ctx: &Context, t: &Term) -> Term {
    match t {
        Term::Var(x) => {
            let same = ctx.lookup(x).and_then(|ty| {
                ctx.0
                    .iter()
                    .find(|(y, t2)| y != x && t2 == ty)
                    .map(|(y, _)| Term::Var(y.clone()))
            });
            same.unwrap_or_else(|| Term::inl(t.clone()))
        }
        Term::Unit => Term::inl(Term::Unit),
        Term::Plus => Term::x(Term::Plus),
        Term::Inl(m) => Term::Inr(m.clone()),
        Term::Inr(m) => Term::Inl(m.clone()),
        Term::PauliX(m) => Term::PauliZ(m.clone()),
        Term::PauliZ(m) => Term::PauliX(m.clone()),
        Term::Pair(m, n) => Term::Pair(Box::new(mutate_term(ctx, m)), n.clone()),
        Term::Cz(m, n) => Term::Cz(Box::new(mutate_term(ctx, m)), n.clone()),
        Term::LetPair { left, right, bound, body } => Term::LetPair {
            left: left.clone(),
            right: right.clone(),
            bound: Box::new(mutate_term(ctx, bound)),
            body: body.clone(),
        },
        Term::Case { scrutinee, left, on_left, right, on_right } => Term::Case {
            scrutinee: Box::new(mutate_term(ctx, scrutinee)),
            left: left.clone(),
            on_left: on_left.clone(),
            right: right.clone(),
            on_right: on_right.clone(),
        },
        Term::Measure(bs) => {
            let mut bs = bs.clone();
            bs[0].guard = mutate_effect(ctx, &bs[0].guard);
            Term::Measure(bs)
        }
    }
}

/// A mutation that changes the type of the term, following positions
/// whose type is fixed by the enclosing term.
fn retype_term(t: &Term) -> Term {
    match t {
        Term::Var(_) | Term::Unit => Term::inl(t.clone()),
        Term::Plus => Term::Unit,
        Term::Inl(m) => Term::inl(retype_term(m)),
        Term::Inr(m) => Term::inr(retype_term(m)),
        Term::PauliX(m) => Term::x(retype_term(m)),
        Term::PauliZ(m) => Term::z(retype_term(m)),
        Term::Pair(m, n) => Term::Pair(Box::new(retype_term(m)), n.clone()),
        Term::Cz(m, n) => Term::Cz(Box::new(retype_term(m)), n.clone()),
        Term::LetPair { left, right, bound, body } => Term::LetPair {
            left: left.clone(),
            right: right.clone(),
            bound: bound.clone(),
            body: Box::new(retype_term(body)),
        },
        Term::Case { scrutinee, left, on_left, right, on_right } => Term::Case {
            scrutinee: scrutinee.clone(),
            left: left.clone(),
            on_left: Box::new(retype_term(on_left)),
            right: right.clone(),
            on_right: on_right.clone(),
        },
        Term::Measure(bs) => {
            let mut bs = bs.clone();
            bs[0].body = retype_term(&bs[0].body);
            Term::Measure(bs)
        }
    }
}

fn mutate_effect(ctx: &Context, e: &Effect) -> Effect {
    match e {
        Effect::Zero => Effect::one(),
        Effect::Orth(inner) if **inner == Effect::Zero => Effect::Zero,
        Effect::Orth(inner) => (**inner).clone(),
        Effect::Const(r) => {
            let half = Rational64::new(1, 2);
            if *r == half {
                Effect::Const(Rational64::new(1, 3))
            } else {
                Effect::Const(Rational64::from_integer(1) - r)
            }
        }
        Effect::Proj(m, a) => Effect::Proj(m.clone(), Angle::new(a.turns() + Rational64::new(1, 2))),
        Effect::Ovee(a, b) => Effect::Ovee(Box::new(mutate_effect(ctx, a)), b.clone()),
        Effect::Scale(a, b) => Effect::Scale(Box::new(mutate_effect(ctx, a)), b.clone()),
        Effect::Case { left, on_left, right, on_right, .. } => Effect::Case {
            scrutinee: Box::new(Term::Unit),
            left: left.clone(),
            on_left: on_left.clone(),
            right: right.clone(),
            on_right: on_right.clone(),
        },
    }
}

/// A mutation of a formation judgement that changes the rule introducing
/// the outermost constructor, or the type of an embedded term.
fn reform_effect(e: &Effect) -> Effect {
    match e {
        Effect::Zero => Effect::one(),
        Effect::Orth(inner) => (**inner).clone(),
        Effect::Const(_) => Effect::Zero,
        Effect::Ovee(a, b) => Effect::Ovee(Box::new(reform_effect(a)), b.clone()),
        Effect::Scale(a, b) => Effect::Ovee(a.clone(), b.clone()),
        Effect::Proj(m, a) => Effect::Proj(Box::new(retype_term(m)), *a),
        Effect::Case { .. } => mutate_effect(&Context::new(), e),
    }
}

/// The judgement with its first mutable subterm changed.
pub fn mutate_judgement(j: &Judgement) -> Judgement {
    let ctx = j.ctx();
    match j {
        Judgement::Typing { term, ty, .. } => Judgement::typing(ctx, retype_term(term), ty.clone()),
        Judgement::TermEq { lhs, rhs, ty, .. } => {
            Judgement::term_eq(ctx, mutate_term(ctx, lhs), rhs.clone(), ty.clone())
        }
        Judgement::EffForm { eff, .. } => Judgement::form(ctx, reform_effect(eff)),
        Judgement::EffLeq { lhs, rhs, .. } => Judgement::leq(ctx, mutate_effect(ctx, lhs), rhs.clone()),
    }
}

pub fn mutate_goal(g: &Goal) -> Goal {
    match g {
        Goal::Core(j) => Goal::Core(mutate_judgement(j)),
        Goal::Perp { ctx, lhs, rhs } => Goal::Perp {
            ctx: ctx.clone(),
            lhs: mutate_effect(ctx, lhs),
            rhs: rhs.clone(),
        },
        Goal::Equiv { ctx, lhs, rhs } => Goal::Equiv {
            ctx: ctx.clone(),
            lhs: mutate_effect(ctx, lhs),
            rhs: rhs.clone(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_goal, print::goal_to_string};

    #[test]
    fn mutates_first_position() {
        let g = parse_goal("(c : I + I, d : I + I) : c * d = c * d : (I + I) * (I + I)").unwrap();
        assert_eq!(goal_to_string(&mutate_goal(&g)), "(c : I + I, d : I + I) : d * d = c * d : (I + I) * (I + I)");
        let g = parse_goal("() : 0 <= 1").unwrap();
        assert_eq!(goal_to_string(&mutate_goal(&g)), "() : 1 <= 1");
    }
}
