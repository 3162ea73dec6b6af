//! Capture-avoiding substitution, alpha-equivalence and binder renaming.

use crate::syntax::{Branch, Effect, Name, Term};
use std::collections::{BTreeSet, HashMap};

/// First of `base'`, `base''`, ... that is not in `avoid` (or `base` itself if free).
pub fn fresh_name(base: &str, avoid: &BTreeSet<Name>) -> Name {
    if !avoid.contains(base) {
        return base.to_string();
    }
    let mut candidate = base.to_string();
    loop {
        candidate.push('\'');
        if !avoid.contains(&candidate) {
            return candidate;
        }
    }
}

type Sub<'a> = Vec<(Name, &'a Term)>;

fn sub_fv(sub: &Sub<'_>) -> BTreeSet<Name> {
    let mut out = BTreeSet::new();
    for (k, v) in sub {
        out.insert(k.clone());
        out.extend(v.free_vars());
    }
    out
}

fn without<'a>(sub: &Sub<'a>, names: &[&Name]) -> Sub<'a> {
    sub.iter()
        .filter(|(k, _)| !names.contains(&k))
        .cloned()
        .collect()
}

/// Picks a binder name for `x` under which `sub` can be pushed without capture.
fn rebind(x: &Name, sub: &Sub<'_>, bodies: &[BTreeSet<Name>], extra: &BTreeSet<Name>) -> Name {
    let captured = sub.iter().any(|(_, v)| v.free_vars().contains(x));
    if !captured {
        return x.clone();
    }
    let mut avoid = sub_fv(sub);
    for b in bodies {
        avoid.extend(b.iter().cloned());
    }
    avoid.extend(extra.iter().cloned());
    fresh_name(x, &avoid)
}

fn rename_in_term(t: &Term, from: &Name, to: &Name) -> Term {
    if from == to {
        return t.clone();
    }
    let v = Term::Var(to.clone());
    subst_term_many(t, &[(from.clone(), v)])
}

fn rename_in_effect(e: &Effect, from: &Name, to: &Name) -> Effect {
    if from == to {
        return e.clone();
    }
    let v = Term::Var(to.clone());
    subst_effect_many(e, &[(from.clone(), v)])
}

/// Simultaneous substitution `[M1/x1, ..., Mn/xn] t`.
pub fn subst_term_many(t: &Term, sub: &[(Name, Term)]) -> Term {
    let s: Sub<'_> = sub.iter().map(|(k, v)| (k.clone(), v)).collect();
    go_term(t, &s)
}

pub fn subst_term(t: &Term, x: &str, m: &Term) -> Term {
    go_term(t, &vec![(x.to_string(), m)])
}

pub fn subst_effect_many(e: &Effect, sub: &[(Name, Term)]) -> Effect {
    let s: Sub<'_> = sub.iter().map(|(k, v)| (k.clone(), v)).collect();
    go_effect(e, &s)
}

pub fn subst_effect(e: &Effect, x: &str, m: &Term) -> Effect {
    go_effect(e, &vec![(x.to_string(), m)])
}

fn go_term(t: &Term, sub: &Sub<'_>) -> Term {
    if sub.is_empty() {
        return t.clone();
    }
    match t {
        Term::Var(x) => match sub.iter().find(|(k, _)| k == x) {
            Some((_, v)) => (*v).clone(),
            None => t.clone(),
        },
        Term::Unit | Term::Plus => t.clone(),
        Term::Pair(a, b) => Term::pair(go_term(a, sub), go_term(b, sub)),
        Term::Cz(a, b) => Term::cz(go_term(a, sub), go_term(b, sub)),
        Term::Inl(a) => Term::inl(go_term(a, sub)),
        Term::Inr(a) => Term::inr(go_term(a, sub)),
        Term::PauliX(a) => Term::x(go_term(a, sub)),
        Term::PauliZ(a) => Term::z(go_term(a, sub)),
        Term::LetPair {
            left,
            right,
            bound,
            body,
        } => {
            let bound = go_term(bound, sub);
            let inner = without(sub, &[left, right]);
            let body_names = body.all_names();
            let mut extra = BTreeSet::new();
            extra.insert(right.clone());
            let l = rebind(left, &inner, &[body_names.clone()], &extra);
            let mut extra = BTreeSet::new();
            extra.insert(l.clone());
            let r = rebind(right, &inner, &[body_names], &extra);
            let body = if left == right {
                rename_in_term(body, right, &r)
            } else {
                rename_in_term(&rename_in_term(body, left, &l), right, &r)
            };
            Term::LetPair {
                left: l,
                right: r,
                bound: Box::new(bound),
                body: Box::new(go_term(&body, &inner)),
            }
        }
        Term::Case {
            scrutinee,
            left,
            on_left,
            right,
            on_right,
        } => {
            let scrutinee = go_term(scrutinee, sub);
            let (l, on_left) = under_term_binder(left, on_left, sub);
            let (r, on_right) = under_term_binder(right, on_right, sub);
            Term::Case {
                scrutinee: Box::new(scrutinee),
                left: l,
                on_left: Box::new(on_left),
                right: r,
                on_right: Box::new(on_right),
            }
        }
        Term::Measure(bs) => Term::Measure(
            bs.iter()
                .map(|b| Branch {
                    guard: go_effect(&b.guard, sub),
                    body: go_term(&b.body, sub),
                })
                .collect(),
        ),
    }
}

fn under_term_binder(x: &Name, body: &Term, sub: &Sub<'_>) -> (Name, Term) {
    let inner = without(sub, &[x]);
    let nx = rebind(x, &inner, &[body.all_names()], &BTreeSet::new());
    let body = rename_in_term(body, x, &nx);
    (nx, go_term(&body, &inner))
}

fn under_effect_binder(x: &Name, body: &Effect, sub: &Sub<'_>) -> (Name, Effect) {
    let inner = without(sub, &[x]);
    let nx = rebind(x, &inner, &[body.all_names()], &BTreeSet::new());
    let body = rename_in_effect(body, x, &nx);
    (nx, go_effect(&body, &inner))
}

fn go_effect(e: &Effect, sub: &Sub<'_>) -> Effect {
    if sub.is_empty() {
        return e.clone();
    }
    match e {
        Effect::Zero | Effect::Const(_) => e.clone(),
        Effect::Orth(a) => Effect::orth(go_effect(a, sub)),
        Effect::Ovee(a, b) => Effect::ovee(go_effect(a, sub), go_effect(b, sub)),
        Effect::Scale(a, b) => Effect::scale(go_effect(a, sub), go_effect(b, sub)),
        Effect::Proj(m, q) => Effect::Proj(Box::new(go_term(m, sub)), *q),
        Effect::Case {
            scrutinee,
            left,
            on_left,
            right,
            on_right,
        } => {
            let scrutinee = go_term(scrutinee, sub);
            let (l, on_left) = under_effect_binder(left, on_left, sub);
            let (r, on_right) = under_effect_binder(right, on_right, sub);
            Effect::Case {
                scrutinee: Box::new(scrutinee),
                left: l,
                on_left: Box::new(on_left),
                right: r,
                on_right: Box::new(on_right),
            }
        }
    }
}

fn var_match(env: &[(Name, Name)], a: &Name, b: &Name) -> bool {
    for (l, r) in env.iter().rev() {
        if l == a || r == b {
            return l == a && r == b;
        }
    }
    a == b
}

pub fn alpha_eq_term(a: &Term, b: &Term) -> bool {
    aeq_term(a, b, &mut Vec::new())
}

pub fn alpha_eq_effect(a: &Effect, b: &Effect) -> bool {
    aeq_effect(a, b, &mut Vec::new())
}

fn aeq_term(a: &Term, b: &Term, env: &mut Vec<(Name, Name)>) -> bool {
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => var_match(env, x, y),
        (Term::Unit, Term::Unit) | (Term::Plus, Term::Plus) => true,
        (Term::Pair(a1, a2), Term::Pair(b1, b2)) | (Term::Cz(a1, a2), Term::Cz(b1, b2)) => {
            aeq_term(a1, b1, env) && aeq_term(a2, b2, env)
        }
        (Term::Inl(x), Term::Inl(y))
        | (Term::Inr(x), Term::Inr(y))
        | (Term::PauliX(x), Term::PauliX(y))
        | (Term::PauliZ(x), Term::PauliZ(y)) => aeq_term(x, y, env),
        (
            Term::LetPair {
                left: l1,
                right: r1,
                bound: m1,
                body: n1,
            },
            Term::LetPair {
                left: l2,
                right: r2,
                bound: m2,
                body: n2,
            },
        ) => {
            if !aeq_term(m1, m2, env) {
                return false;
            }
            env.push((l1.clone(), l2.clone()));
            env.push((r1.clone(), r2.clone()));
            let ok = aeq_term(n1, n2, env);
            env.pop();
            env.pop();
            ok
        }
        (
            Term::Case {
                scrutinee: s1,
                left: l1,
                on_left: a1,
                right: r1,
                on_right: b1,
            },
            Term::Case {
                scrutinee: s2,
                left: l2,
                on_left: a2,
                right: r2,
                on_right: b2,
            },
        ) => {
            aeq_term(s1, s2, env)
                && under(env, l1, l2, |env| aeq_term(a1, a2, env))
                && under(env, r1, r2, |env| aeq_term(b1, b2, env))
        }
        (Term::Measure(x), Term::Measure(y)) => {
            x.len() == y.len()
                && x.iter().zip(y.iter()).all(|(p, q)| {
                    aeq_effect(&p.guard, &q.guard, env) && aeq_term(&p.body, &q.body, env)
                })
        }
        _ => false,
    }
}

fn under<F: FnOnce(&mut Vec<(Name, Name)>) -> bool>(
    env: &mut Vec<(Name, Name)>,
    x: &Name,
    y: &Name,
    f: F,
) -> bool {
    env.push((x.clone(), y.clone()));
    let ok = f(env);
    env.pop();
    ok
}

fn aeq_effect(a: &Effect, b: &Effect, env: &mut Vec<(Name, Name)>) -> bool {
    match (a, b) {
        (Effect::Zero, Effect::Zero) => true,
        (Effect::Const(p), Effect::Const(q)) => p == q,
        (Effect::Orth(x), Effect::Orth(y)) => aeq_effect(x, y, env),
        (Effect::Ovee(a1, a2), Effect::Ovee(b1, b2))
        | (Effect::Scale(a1, a2), Effect::Scale(b1, b2)) => {
            aeq_effect(a1, b1, env) && aeq_effect(a2, b2, env)
        }
        (Effect::Proj(m, p), Effect::Proj(n, q)) => p == q && aeq_term(m, n, env),
        (
            Effect::Case {
                scrutinee: s1,
                left: l1,
                on_left: a1,
                right: r1,
                on_right: b1,
            },
            Effect::Case {
                scrutinee: s2,
                left: l2,
                on_left: a2,
                right: r2,
                on_right: b2,
            },
        ) => {
            aeq_term(s1, s2, env)
                && under(env, l1, l2, |env| aeq_effect(a1, a2, env))
                && under(env, r1, r2, |env| aeq_effect(b1, b2, env))
        }
        _ => false,
    }
}

/// Renames every binder to `%0`, `%1`, ... in traversal order. Alpha-equivalent
/// inputs give identical outputs; free variables are untouched.
pub fn canonical_term(t: &Term) -> Term {
    let mut n = 0;
    canon_term(t, &mut HashMap::new(), &mut n)
}

pub fn canonical_effect(e: &Effect) -> Effect {
    let mut n = 0;
    canon_effect(e, &mut HashMap::new(), &mut n)
}

fn push_name(env: &mut HashMap<Name, Vec<Name>>, x: &Name, counter: &mut usize) -> Name {
    let fresh = format!("%{}", *counter);
    *counter += 1;
    env.entry(x.clone()).or_default().push(fresh.clone());
    fresh
}

fn pop_name(env: &mut HashMap<Name, Vec<Name>>, x: &Name) {
    if let Some(v) = env.get_mut(x) {
        v.pop();
    }
}

fn canon_term(t: &Term, env: &mut HashMap<Name, Vec<Name>>, c: &mut usize) -> Term {
    match t {
        Term::Var(x) => match env.get(x).and_then(|v| v.last()) {
            Some(y) => Term::Var(y.clone()),
            None => t.clone(),
        },
        Term::Unit | Term::Plus => t.clone(),
        Term::Pair(a, b) => Term::pair(canon_term(a, env, c), canon_term(b, env, c)),
        Term::Cz(a, b) => Term::cz(canon_term(a, env, c), canon_term(b, env, c)),
        Term::Inl(a) => Term::inl(canon_term(a, env, c)),
        Term::Inr(a) => Term::inr(canon_term(a, env, c)),
        Term::PauliX(a) => Term::x(canon_term(a, env, c)),
        Term::PauliZ(a) => Term::z(canon_term(a, env, c)),
        Term::LetPair {
            left,
            right,
            bound,
            body,
        } => {
            let bound = canon_term(bound, env, c);
            let l = push_name(env, left, c);
            let r = push_name(env, right, c);
            let body = canon_term(body, env, c);
            pop_name(env, right);
            pop_name(env, left);
            Term::LetPair {
                left: l,
                right: r,
                bound: Box::new(bound),
                body: Box::new(body),
            }
        }
        Term::Case {
            scrutinee,
            left,
            on_left,
            right,
            on_right,
        } => {
            let s = canon_term(scrutinee, env, c);
            let l = push_name(env, left, c);
            let a = canon_term(on_left, env, c);
            pop_name(env, left);
            let r = push_name(env, right, c);
            let b = canon_term(on_right, env, c);
            pop_name(env, right);
            Term::Case {
                scrutinee: Box::new(s),
                left: l,
                on_left: Box::new(a),
                right: r,
                on_right: Box::new(b),
            }
        }
        Term::Measure(bs) => Term::Measure(
            bs.iter()
                .map(|b| Branch {
                    guard: canon_effect(&b.guard, env, c),
                    body: canon_term(&b.body, env, c),
                })
                .collect(),
        ),
    }
}

fn canon_effect(e: &Effect, env: &mut HashMap<Name, Vec<Name>>, c: &mut usize) -> Effect {
    match e {
        Effect::Zero | Effect::Const(_) => e.clone(),
        Effect::Orth(a) => Effect::orth(canon_effect(a, env, c)),
        Effect::Ovee(a, b) => Effect::ovee(canon_effect(a, env, c), canon_effect(b, env, c)),
        Effect::Scale(a, b) => Effect::scale(canon_effect(a, env, c), canon_effect(b, env, c)),
        Effect::Proj(m, q) => Effect::Proj(Box::new(canon_term(m, env, c)), *q),
        Effect::Case {
            scrutinee,
            left,
            on_left,
            right,
            on_right,
        } => {
            let s = canon_term(scrutinee, env, c);
            let l = push_name(env, left, c);
            let a = canon_effect(on_left, env, c);
            pop_name(env, left);
            let r = push_name(env, right, c);
            let b = canon_effect(on_right, env, c);
            pop_name(env, right);
            Effect::Case {
                scrutinee: Box::new(s),
                left: l,
                on_left: Box::new(a),
                right: r,
                on_right: Box::new(b),
            }
        }
    }
}

/// Renames binders so that each is distinct from every name in `taken`
/// and from every other binder. Newly used names are added to `taken`.
pub fn uniquify_term(t: &Term, taken: &mut BTreeSet<Name>) -> Term {
    uniq_term(t, &mut HashMap::new(), taken)
}

pub fn uniquify_effect(e: &Effect, taken: &mut BTreeSet<Name>) -> Effect {
    uniq_effect(e, &mut HashMap::new(), taken)
}

fn take(x: &Name, env: &mut HashMap<Name, Vec<Name>>, taken: &mut BTreeSet<Name>) -> Name {
    let y = fresh_name(x, taken);
    taken.insert(y.clone());
    env.entry(x.clone()).or_default().push(y.clone());
    y
}

fn uniq_term(t: &Term, env: &mut HashMap<Name, Vec<Name>>, taken: &mut BTreeSet<Name>) -> Term {
    match t {
        Term::Var(x) => match env.get(x).and_then(|v| v.last()) {
            Some(y) => Term::Var(y.clone()),
            None => t.clone(),
        },
        Term::Unit | Term::Plus => t.clone(),
        Term::Pair(a, b) => Term::pair(uniq_term(a, env, taken), uniq_term(b, env, taken)),
        Term::Cz(a, b) => Term::cz(uniq_term(a, env, taken), uniq_term(b, env, taken)),
        Term::Inl(a) => Term::inl(uniq_term(a, env, taken)),
        Term::Inr(a) => Term::inr(uniq_term(a, env, taken)),
        Term::PauliX(a) => Term::x(uniq_term(a, env, taken)),
        Term::PauliZ(a) => Term::z(uniq_term(a, env, taken)),
        Term::LetPair {
            left,
            right,
            bound,
            body,
        } => {
            let bound = uniq_term(bound, env, taken);
            let l = take(left, env, taken);
            let r = take(right, env, taken);
            let body = uniq_term(body, env, taken);
            pop_name(env, right);
            pop_name(env, left);
            Term::LetPair {
                left: l,
                right: r,
                bound: Box::new(bound),
                body: Box::new(body),
            }
        }
        Term::Case {
            scrutinee,
            left,
            on_left,
            right,
            on_right,
        } => {
            let s = uniq_term(scrutinee, env, taken);
            let l = take(left, env, taken);
            let a = uniq_term(on_left, env, taken);
            pop_name(env, left);
            let r = take(right, env, taken);
            let b = uniq_term(on_right, env, taken);
            pop_name(env, right);
            Term::Case {
                scrutinee: Box::new(s),
                left: l,
                on_left: Box::new(a),
                right: r,
                on_right: Box::new(b),
            }
        }
        Term::Measure(bs) => Term::Measure(
            bs.iter()
                .map(|b| Branch {
                    guard: uniq_effect(&b.guard, env, taken),
                    body: uniq_term(&b.body, env, taken),
                })
                .collect(),
        ),
    }
}

fn uniq_effect(
    e: &Effect,
    env: &mut HashMap<Name, Vec<Name>>,
    taken: &mut BTreeSet<Name>,
) -> Effect {
    match e {
        Effect::Zero | Effect::Const(_) => e.clone(),
        Effect::Orth(a) => Effect::orth(uniq_effect(a, env, taken)),
        Effect::Ovee(a, b) => Effect::ovee(uniq_effect(a, env, taken), uniq_effect(b, env, taken)),
        Effect::Scale(a, b) => {
            Effect::scale(uniq_effect(a, env, taken), uniq_effect(b, env, taken))
        }
        Effect::Proj(m, q) => Effect::Proj(Box::new(uniq_term(m, env, taken)), *q),
        Effect::Case {
            scrutinee,
            left,
            on_left,
            right,
            on_right,
        } => {
            let s = uniq_term(scrutinee, env, taken);
            let l = take(left, env, taken);
            let a = uniq_effect(on_left, env, taken);
            pop_name(env, left);
            let r = take(right, env, taken);
            let b = uniq_effect(on_right, env, taken);
            pop_name(env, right);
            Effect::Case {
                scrutinee: Box::new(s),
                left: l,
                on_left: Box::new(a),
                right: r,
                on_right: Box::new(b),
            }
        }
    }
}

/// Syntax with variable binders, for renaming bound variables generically.
pub trait Binding: Clone {
    fn fv(&self) -> BTreeSet<Name>;
    fn names(&self) -> BTreeSet<Name>;
    fn substitute(&self, sub: &[(Name, Term)]) -> Self;
    fn aeq(&self, other: &Self) -> bool;

    fn rename(&self, from: &str, to: &str) -> Self {
        if from == to {
            return self.clone();
        }
        self.substitute(&[(from.to_string(), Term::Var(to.to_string()))])
    }
}

impl Binding for Term {
    fn fv(&self) -> BTreeSet<Name> {
        self.free_vars()
    }
    fn names(&self) -> BTreeSet<Name> {
        self.all_names()
    }
    fn substitute(&self, sub: &[(Name, Term)]) -> Self {
        subst_term_many(self, sub)
    }
    fn aeq(&self, other: &Self) -> bool {
        alpha_eq_term(self, other)
    }
}

impl Binding for Effect {
    fn fv(&self) -> BTreeSet<Name> {
        self.free_vars()
    }
    fn names(&self) -> BTreeSet<Name> {
        self.all_names()
    }
    fn substitute(&self, sub: &[(Name, Term)]) -> Self {
        subst_effect_many(self, sub)
    }
    fn aeq(&self, other: &Self) -> bool {
        alpha_eq_effect(self, other)
    }
}

fn minus(mut s: BTreeSet<Name>, x: &str) -> BTreeSet<Name> {
    s.remove(x);
    s
}

/// Opens the abstractions `x.a` and `y.b` with one common variable that
/// captures nothing free in either body and avoids `avoid`.
pub fn align<A: Binding, B: Binding>(
    x: &Name,
    a: &A,
    y: &Name,
    b: &B,
    avoid: &BTreeSet<Name>,
) -> (Name, A, B) {
    let mut bad = avoid.clone();
    bad.extend(minus(a.fv(), x));
    bad.extend(minus(b.fv(), y));
    let z = if !bad.contains(x) {
        x.clone()
    } else if !bad.contains(y) {
        y.clone()
    } else {
        let mut all = bad.clone();
        all.extend(a.names());
        all.extend(b.names());
        fresh_name(x, &all)
    };
    (z.clone(), a.rename(x, &z), b.rename(y, &z))
}

/// Opens a single abstraction `x.a` with a variable avoiding `avoid`.
pub fn open<A: Binding>(x: &Name, a: &A, avoid: &BTreeSet<Name>) -> (Name, A) {
    let (z, a1, _) = align(x, a, x, a, avoid);
    (z, a1)
}

/// Opens `x,y.a` and `x2,y2.b` with two common distinct variables.
pub fn align2<A: Binding, B: Binding>(
    (x, y, a): (&Name, &Name, &A),
    (x2, y2, b): (&Name, &Name, &B),
    avoid: &BTreeSet<Name>,
) -> (Name, Name, A, B) {
    let mut bad = avoid.clone();
    let mut fa = a.fv();
    fa.remove(x);
    fa.remove(y);
    let mut fb = b.fv();
    fb.remove(x2);
    fb.remove(y2);
    bad.extend(fa);
    bad.extend(fb);
    let mut all = bad.clone();
    all.extend(a.names());
    all.extend(b.names());
    let p = if bad.contains(x) { fresh_name(x, &all) } else { x.clone() };
    all.insert(p.clone());
    bad.insert(p.clone());
    let q = if bad.contains(y) { fresh_name(y, &all) } else { y.clone() };
    let pair = |x: &Name, y: &Name| {
        let mut sub = vec![(y.clone(), Term::Var(q.clone()))];
        if x != y {
            sub.push((x.clone(), Term::Var(p.clone())));
        }
        sub
    };
    let a1 = a.substitute(&pair(x, y));
    let b1 = b.substitute(&pair(x2, y2));
    (p, q, a1, b1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::var;

    #[test]
    fn substitution_avoids_capture() {
        // [y/x](let y * z = w in x * y)
        let t = Term::let_pair("y", "z", var("w"), Term::pair(var("x"), var("y")));
        let r = subst_term(&t, "x", &var("y"));
        match &r {
            Term::LetPair { left, body, .. } => {
                assert_ne!(left, "y");
                assert_eq!(**body, Term::pair(var("y"), var(left)));
            }
            _ => panic!(),
        }
        assert!(r.free_vars().contains("y"));
    }

    #[test]
    fn substitution_stops_at_shadowing_binder() {
        let t = Term::case(var("c"), "x", var("x"), "y", var("x"));
        let r = subst_term(&t, "x", &Term::Unit);
        assert_eq!(r, Term::case(var("c"), "x", var("x"), "y", Term::Unit));
    }

    #[test]
    fn simultaneous_substitution_does_not_chain() {
        let t = Term::pair(var("x"), var("y"));
        let r = subst_term_many(&t, &[("x".into(), var("y")), ("y".into(), var("x"))]);
        assert_eq!(r, Term::pair(var("y"), var("x")));
    }

    #[test]
    fn alpha_equivalence() {
        let a = Term::let_pair("x", "y", var("m"), Term::pair(var("y"), var("x")));
        let b = Term::let_pair("p", "q", var("m"), Term::pair(var("q"), var("p")));
        let c = Term::let_pair("p", "q", var("m"), Term::pair(var("p"), var("q")));
        assert!(alpha_eq_term(&a, &b));
        assert!(!alpha_eq_term(&a, &c));
        assert_eq!(canonical_term(&a), canonical_term(&b));
        // a free variable must not match a bound one
        let d = Term::case(var("c"), "x", var("z"), "y", var("y"));
        let e = Term::case(var("c"), "z", var("z"), "y", var("y"));
        assert!(!alpha_eq_term(&d, &e));
    }

    #[test]
    fn effect_substitution_reaches_terms() {
        let e = Effect::case(var("c"), "a", Effect::Zero, "b", Effect::one());
        let r = subst_effect(&e, "c", &Term::inl(Term::Unit));
        assert_eq!(
            r,
            Effect::case(Term::inl(Term::Unit), "a", Effect::Zero, "b", Effect::one())
        );
    }

    #[test]
    fn align_chooses_capture_free_names() {
        let a = Effect::proj(var("x"), crate::syntax::Angle::zero());
        let b = Effect::proj(var("y"), crate::syntax::Angle::zero());
        let (z, a1, b1) = align(&"x".to_string(), &a, &"y".to_string(), &b, &BTreeSet::new());
        assert_eq!(z, "x");
        assert_eq!(a1, b1);
        let avoid: BTreeSet<Name> = ["x".to_string(), "y".to_string()].into_iter().collect();
        let (z, a1, b1) = align(&"x".to_string(), &a, &"y".to_string(), &b, &avoid);
        assert!(!avoid.contains(&z));
        assert_eq!(a1, b1);
    }

    #[test]
    fn uniquify_renames_clashing_binders() {
        let t = Term::let_pair("x", "y", var("x"), Term::pair(var("x"), var("y")));
        let mut taken: BTreeSet<Name> = ["x".to_string()].into_iter().collect();
        let u = uniquify_term(&t, &mut taken);
        assert!(alpha_eq_term(&t, &u));
        match u {
            Term::LetPair { left, bound, .. } => {
                assert_ne!(left, "x");
                assert_eq!(*bound, var("x"));
            }
            _ => panic!(),
        }
    }
}
