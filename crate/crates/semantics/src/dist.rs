//! The distribution monad over an effect monoid: finitely supported maps
//! into the scalars whose values sum to one.

use crate::effect::{EffectMonoid, LawKind, LawReport, LawResult};
use std::collections::BTreeMap;
use std::fmt::Debug;

/// A finitely supported scalar-valued map with no zero entries.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Dist<X: Ord, S>(BTreeMap<X, S>);

impl<X: Ord + Clone, S: Clone> Dist<X, S> {
    pub fn support(&self) -> impl Iterator<Item = (&X, &S)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub struct Monad<'m, M: EffectMonoid> {
    pub scalars: &'m M,
}

impl<'m, M: EffectMonoid> Monad<'m, M>
where
    M::Elem: Ord,
{
    pub fn new(scalars: &'m M) -> Self {
        Monad { scalars }
    }

    /// The value at `x`, zero off the support.
    pub fn at<X: Ord>(&self, d: &Dist<X, M::Elem>, x: &X) -> M::Elem {
        d.0.get(x).cloned().unwrap_or_else(|| self.scalars.zero())
    }

    /// Sums the weights of equal points; `None` if a sum is undefined.
    fn collect<X: Ord>(&self, items: impl IntoIterator<Item = (X, M::Elem)>) -> Option<BTreeMap<X, M::Elem>> {
        let zero = self.scalars.zero();
        let mut out: BTreeMap<X, M::Elem> = BTreeMap::new();
        for (x, w) in items {
            let next = match out.get(&x) {
                Some(v) => self.scalars.ovee(v, &w)?,
                None => w,
            };
            out.insert(x, next);
        }
        out.retain(|_, w| *w != zero);
        Some(out)
    }

    pub fn mass<X: Ord>(&self, d: &Dist<X, M::Elem>) -> Option<M::Elem> {
        d.0.values().try_fold(self.scalars.zero(), |acc, w| self.scalars.ovee(&acc, w))
    }

    /// A distribution from weighted points, if the weights sum to one.
    pub fn from_weights<X: Ord>(&self, items: impl IntoIterator<Item = (X, M::Elem)>) -> Option<Dist<X, M::Elem>> {
        let d = Dist(self.collect(items)?);
        (self.mass(&d)? == self.scalars.one()).then_some(d)
    }

    pub fn unit<X: Ord>(&self, x: X) -> Dist<X, M::Elem> {
        let mut m = BTreeMap::new();
        m.insert(x, self.scalars.one());
        Dist(m)
    }

    pub fn map<X: Ord, Y: Ord>(&self, d: &Dist<X, M::Elem>, f: impl Fn(&X) -> Y) -> Option<Dist<Y, M::Elem>> {
        Some(Dist(self.collect(d.0.iter().map(|(x, w)| (f(x), w.clone())))?))
    }

    /// `mult(P)(a)` is the sum over `p` of `P(p) . p(a)`.
    pub fn mult<X: Ord + Clone>(&self, dd: &Dist<Dist<X, M::Elem>, M::Elem>) -> Option<Dist<X, M::Elem>> {
        let items = dd
            .0
            .iter()
            .flat_map(|(inner, w)| inner.0.iter().map(move |(x, v)| (x.clone(), self.scalars.mul(w, v))));
        Some(Dist(self.collect(items)?))
    }

    pub fn bind<X: Ord + Clone, Y: Ord + Clone>(
        &self,
        d: &Dist<X, M::Elem>,
        f: impl Fn(&X) -> Dist<Y, M::Elem>,
    ) -> Option<Dist<Y, M::Elem>> {
        self.mult(&self.map(d, f)?)
    }

    /// `strength(a, d)(a2, b)` is `d(b)` when `a2 = a` and zero otherwise.
    pub fn strength<A: Ord + Clone, B: Ord + Clone>(&self, a: &A, d: &Dist<B, M::Elem>) -> Dist<(A, B), M::Elem> {
        Dist(d.0.iter().map(|(b, w)| ((a.clone(), b.clone()), w.clone())).collect())
    }

    /// The mirror image of [`Monad::strength`].
    pub fn costrength<A: Ord + Clone, B: Ord + Clone>(
        &self,
        d: &Dist<A, M::Elem>,
        b: &B,
    ) -> Option<Dist<(A, B), M::Elem>> {
        self.map(&self.strength(b, d), |(b, a)| (a.clone(), b.clone()))
    }

    /// Every distribution on `carrier` whose weights come from `weights`.
    pub fn all<X: Ord + Clone>(&self, carrier: &[X], weights: &[M::Elem]) -> Vec<Dist<X, M::Elem>> {
        let zero = self.scalars.zero();
        let nonzero: Vec<M::Elem> = weights.iter().filter(|w| **w != zero).cloned().collect();
        let mut out = Vec::new();
        let mut chosen: Vec<(X, M::Elem)> = Vec::new();
        self.extend_all(carrier, 0, &nonzero, &mut chosen, &mut out);
        out
    }

    fn extend_all<X: Ord + Clone>(
        &self,
        carrier: &[X],
        from: usize,
        weights: &[M::Elem],
        chosen: &mut Vec<(X, M::Elem)>,
        out: &mut Vec<Dist<X, M::Elem>>,
    ) {
        let partial = chosen
            .iter()
            .try_fold(self.scalars.zero(), |acc, (_, w)| self.scalars.ovee(&acc, w));
        let Some(total) = partial else { return };
        if total == self.scalars.one() {
            out.push(Dist(chosen.iter().cloned().collect()));
            return;
        }
        for i in from..carrier.len() {
            for w in weights {
                if self.scalars.ovee(&total, w).is_some() {
                    chosen.push((carrier[i].clone(), w.clone()));
                    self.extend_all(carrier, i + 1, weights, chosen, out);
                    chosen.pop();
                }
            }
        }
    }
}

struct Tally {
    result: LawResult,
}

impl Tally {
    fn new(law: &'static str, kind: LawKind) -> Tally {
        Tally {
            result: LawResult {
                law,
                kind,
                checked: 0,
                counterexample: None,
            },
        }
    }

    fn case<T: PartialEq + Debug>(&mut self, l: Option<T>, r: Option<T>, at: impl FnOnce() -> String) {
        self.result.checked += 1;
        if (l.is_none() || l != r) && self.result.counterexample.is_none() {
            self.result.counterexample = Some(format!("{}: {l:?} vs {r:?}", at()));
        }
    }
}

/// Unit, multiplication and strength laws, exhaustively over the
/// distributions on `carrier` with weights drawn from `weights`.
pub fn check_monad_laws<M, X>(scalars: &M, carrier: &[X], weights: &[M::Elem]) -> LawReport
where
    M: EffectMonoid,
    M::Elem: Ord,
    X: Ord + Clone + Debug,
{
    let m = Monad::new(scalars);
    let d1 = m.all(carrier, weights);
    let d2 = m.all(&d1, weights);
    let d3 = m.all(&d2, weights);

    let mut unit_l = Tally::new("mult-after-unit", LawKind::Equation);
    let mut unit_r = Tally::new("mult-after-map-unit", LawKind::Equation);
    let mut mass = Tally::new("unit-has-mass-one", LawKind::Equation);
    for d in &d1 {
        unit_l.case(m.mult(&m.unit(d.clone())), Some(d.clone()), || format!("{d:?}"));
        unit_r.case(m.map(d, |x| m.unit(x.clone())).and_then(|dd| m.mult(&dd)), Some(d.clone()), || {
            format!("{d:?}")
        });
    }
    for x in carrier {
        mass.case(m.mass(&m.unit(x.clone())), Some(scalars.one()), || format!("{x:?}"));
    }

    let mut assoc = Tally::new("mult-associative", LawKind::Equation);
    for ddd in &d3 {
        let l = m.mult(ddd).and_then(|dd| m.mult(&dd));
        let r = m.map(ddd, |dd| m.mult(dd).unwrap()).and_then(|dd| m.mult(&dd));
        assoc.case(l, r, || format!("{ddd:?}"));
    }

    let mut mult_mass = Tally::new("mult-has-mass-one", LawKind::Equation);
    for dd in &d2 {
        mult_mass.case(m.mult(dd).and_then(|d| m.mass(&d)), Some(scalars.one()), || format!("{dd:?}"));
    }

    let functions = all_functions(carrier);
    let mut nat_unit = Tally::new("unit-natural", LawKind::Equation);
    let mut nat_mult = Tally::new("mult-natural", LawKind::Equation);
    for f in &functions {
        let apply = |x: &X| f[carrier.iter().position(|c| c == x).unwrap()].clone();
        for x in carrier {
            nat_unit.case(m.map(&m.unit(x.clone()), apply), Some(m.unit(apply(x))), || {
                format!("f = {f:?}, x = {x:?}")
            });
        }
        for dd in d2.iter().step_by(3) {
            let l = m.mult(dd).and_then(|d| m.map(&d, apply));
            let r = m.map(dd, |d| m.map(d, apply).unwrap()).and_then(|dd| m.mult(&dd));
            nat_mult.case(l, r, || format!("f = {f:?}, {dd:?}"));
        }
    }

    let mut formula = Tally::new("strength-formula", LawKind::Equation);
    let mut st_unit = Tally::new("strength-of-unit", LawKind::Equation);
    let mut marginal = Tally::new("strength-marginal", LawKind::Equation);
    let mut st_mult = Tally::new("strength-mult", LawKind::Equation);
    for a in carrier {
        for b in carrier {
            st_unit.case(Some(m.strength(a, &m.unit(b.clone()))), Some(m.unit((a.clone(), b.clone()))), || {
                format!("a = {a:?}, b = {b:?}")
            });
        }
        for d in &d1 {
            let t = m.strength(a, d);
            for a2 in carrier {
                for b in carrier {
                    let expect = if a2 == a { m.at(d, b) } else { scalars.zero() };
                    formula.case(Some(m.at(&t, &(a2.clone(), b.clone()))), Some(expect), || {
                        format!("a = {a:?}, a' = {a2:?}, b = {b:?}, {d:?}")
                    });
                }
            }
            marginal.case(m.map(&t, |(_, b)| b.clone()), Some(d.clone()), || format!("a = {a:?}, {d:?}"));
        }
        for dd in &d2 {
            let l = m.mult(dd).map(|d| m.strength(a, &d));
            let r = m.map(&m.strength(a, dd), |(a, d)| m.strength(a, d)).and_then(|x| m.mult(&x));
            st_mult.case(l, r, || format!("a = {a:?}, {dd:?}"));
        }
    }

    let mut comm = Tally::new("strengths-commute", LawKind::Equation);
    if scalars.commutative() {
        for p in &d1 {
            for q in &d1 {
                let l = m
                    .map(&m.strength(p, q), |(p, b)| m.costrength(p, b).unwrap())
                    .and_then(|x| m.mult(&x));
                let r = m
                    .costrength(p, q)
                    .and_then(|x| m.map(&x, |(a, q)| m.strength(a, q)))
                    .and_then(|x| m.mult(&x));
                comm.case(l, r, || format!("{p:?}, {q:?}"));
            }
        }
    }

    let mut laws = vec![unit_l, unit_r, mass, assoc, mult_mass, nat_unit, nat_mult, formula, st_unit, marginal, st_mult];
    if scalars.commutative() {
        laws.push(comm);
    }
    LawReport {
        instance: format!("distribution monad over {} on {} points", scalars.name(), carrier.len()),
        laws: laws.into_iter().map(|t| t.result).collect(),
    }
}

fn all_functions<X: Clone>(carrier: &[X]) -> Vec<Vec<X>> {
    let n = carrier.len();
    let mut out = Vec::new();
    for code in 0..n.pow(n as u32) {
        let mut c = code;
        out.push(
            (0..n)
                .map(|_| {
                    let x = carrier[c % n].clone();
                    c /= n;
                    x
                })
                .collect(),
        );
    }
    out
}
