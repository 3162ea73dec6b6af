//! Partial commutative monoids, effect algebras, effect monoids and effect
//! modules, with law harnesses that report every law separately.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde_json::{json, Value};
use std::fmt::{self, Debug};

pub trait EffectAlgebra {
    type Elem: Clone + PartialEq + Debug;

    fn name(&self) -> String;
    fn zero(&self) -> Self::Elem;
    /// The partial sum; `None` when the arguments are not orthogonal.
    fn ovee(&self, x: &Self::Elem, y: &Self::Elem) -> Option<Self::Elem>;
    fn orth(&self, x: &Self::Elem) -> Self::Elem;

    fn one(&self) -> Self::Elem {
        self.orth(&self.zero())
    }

    fn perp(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        self.ovee(x, y).is_some()
    }

    /// The whole carrier, when it is finite.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }
}

pub trait EffectMonoid: EffectAlgebra {
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;

    fn commutative(&self) -> bool {
        true
    }
}

pub trait EffectModule {
    type Scalars: EffectMonoid;
    type Carrier: EffectAlgebra;

    fn scalars(&self) -> &Self::Scalars;
    fn carrier(&self) -> &Self::Carrier;
    fn smul(
        &self,
        r: &<Self::Scalars as EffectAlgebra>::Elem,
        x: &<Self::Carrier as EffectAlgebra>::Elem,
    ) -> <Self::Carrier as EffectAlgebra>::Elem;
}

/// The two-element Boolean algebra; multiplication is conjunction.
#[derive(Clone, Copy, Debug, Default)]
pub struct Boolean;

impl EffectAlgebra for Boolean {
    type Elem = bool;

    fn name(&self) -> String {
        "boolean".into()
    }

    fn zero(&self) -> bool {
        false
    }

    fn ovee(&self, x: &bool, y: &bool) -> Option<bool> {
        if *x && *y {
            None
        } else {
            Some(*x || *y)
        }
    }

    fn orth(&self, x: &bool) -> bool {
        !x
    }

    fn elements(&self) -> Option<Vec<bool>> {
        Some(vec![false, true])
    }
}

impl EffectMonoid for Boolean {
    fn mul(&self, x: &bool, y: &bool) -> bool {
        *x && *y
    }
}

/// The chain {0, 1/2, 1}, stored as halves.
#[derive(Clone, Copy, Debug, Default)]
pub struct Chain3;

impl EffectAlgebra for Chain3 {
    type Elem = u8;

    fn name(&self) -> String {
        "3-chain".into()
    }

    fn zero(&self) -> u8 {
        0
    }

    fn ovee(&self, x: &u8, y: &u8) -> Option<u8> {
        (x + y <= 2).then_some(x + y)
    }

    fn orth(&self, x: &u8) -> u8 {
        2 - x
    }

    fn elements(&self) -> Option<Vec<u8>> {
        Some(vec![0, 1, 2])
    }
}

/// The 3-chain as an effect module over the Boolean scalars.
#[derive(Clone, Copy, Debug, Default)]
pub struct Chain3OverBoolean {
    chain: Chain3,
    bools: Boolean,
}

impl EffectModule for Chain3OverBoolean {
    type Scalars = Boolean;
    type Carrier = Chain3;

    fn scalars(&self) -> &Boolean {
        &self.bools
    }

    fn carrier(&self) -> &Chain3 {
        &self.chain
    }

    fn smul(&self, r: &bool, x: &u8) -> u8 {
        if *r {
            *x
        } else {
            0
        }
    }
}

/// An effect monoid as an effect module over itself.
#[derive(Clone, Copy, Debug, Default)]
pub struct SelfModule<M>(pub M);

impl<M: EffectMonoid> EffectModule for SelfModule<M> {
    type Scalars = M;
    type Carrier = M;

    fn scalars(&self) -> &M {
        &self.0
    }

    fn carrier(&self) -> &M {
        &self.0
    }

    fn smul(&self, r: &M::Elem, x: &M::Elem) -> M::Elem {
        self.0.mul(r, x)
    }
}

/// The rational unit interval with exact arithmetic.
#[derive(Clone, Copy, Debug, Default)]
pub struct UnitInterval;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl EffectAlgebra for UnitInterval {
    type Elem = BigRational;

    fn name(&self) -> String {
        "[0,1]".into()
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn ovee(&self, x: &BigRational, y: &BigRational) -> Option<BigRational> {
        let s = x + y;
        (s <= BigRational::one()).then_some(s)
    }

    fn orth(&self, x: &BigRational) -> BigRational {
        BigRational::one() - x
    }
}

impl EffectMonoid for UnitInterval {
    fn mul(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x * y
    }
}

/// Mutant: the orthosupplement is the identity.
#[derive(Clone, Copy, Debug, Default)]
pub struct OrthIdentity;

impl EffectAlgebra for OrthIdentity {
    type Elem = BigRational;

    fn name(&self) -> String {
        "mutant orth(x) = x".into()
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn ovee(&self, x: &BigRational, y: &BigRational) -> Option<BigRational> {
        UnitInterval.ovee(x, y)
    }

    fn orth(&self, x: &BigRational) -> BigRational {
        x.clone()
    }
}

/// Mutant: `x o+ y` with `x > y > 0` is undefined unless it sums to 1.
#[derive(Clone, Copy, Debug, Default)]
pub struct LopsidedSum;

impl EffectAlgebra for LopsidedSum {
    type Elem = BigRational;

    fn name(&self) -> String {
        "mutant lopsided sum".into()
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn ovee(&self, x: &BigRational, y: &BigRational) -> Option<BigRational> {
        let s = UnitInterval.ovee(x, y)?;
        if x > y && !y.is_zero() && !s.is_one() {
            None
        } else {
            Some(s)
        }
    }

    fn orth(&self, x: &BigRational) -> BigRational {
        UnitInterval.orth(x)
    }
}

/// Mutant: multiplication is the minimum.
#[derive(Clone, Copy, Debug, Default)]
pub struct MinProduct;

impl EffectAlgebra for MinProduct {
    type Elem = BigRational;

    fn name(&self) -> String {
        "mutant min product".into()
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn ovee(&self, x: &BigRational, y: &BigRational) -> Option<BigRational> {
        UnitInterval.ovee(x, y)
    }

    fn orth(&self, x: &BigRational) -> BigRational {
        UnitInterval.orth(x)
    }
}

impl EffectMonoid for MinProduct {
    fn mul(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x.min(y).clone()
    }
}

/// A multiplication table on the 3-chain, indexed by halves.
#[derive(Clone, Copy, Debug)]
pub struct ChainTable(pub [[u8; 3]; 3]);

impl EffectAlgebra for ChainTable {
    type Elem = u8;

    fn name(&self) -> String {
        format!("3-chain with product {:?}", self.0)
    }

    fn zero(&self) -> u8 {
        0
    }

    fn ovee(&self, x: &u8, y: &u8) -> Option<u8> {
        Chain3.ovee(x, y)
    }

    fn orth(&self, x: &u8) -> u8 {
        Chain3.orth(x)
    }

    fn elements(&self) -> Option<Vec<u8>> {
        Chain3.elements()
    }
}

impl EffectMonoid for ChainTable {
    fn mul(&self, x: &u8, y: &u8) -> u8 {
        self.0[*x as usize][*y as usize]
    }

    fn commutative(&self) -> bool {
        false
    }
}

/// Every multiplication on the 3-chain that passes the effect monoid laws.
/// There are 3^9 candidate tables.
pub fn chain3_monoid_structures() -> Vec<ChainTable> {
    let elems = Chain3.elements().unwrap();
    let triples = exhaustive_triples(&elems);
    let mut out = Vec::new();
    for code in 0..3usize.pow(9) {
        let mut t = [[0u8; 3]; 3];
        let mut c = code;
        for row in t.iter_mut() {
            for cell in row.iter_mut() {
                *cell = (c % 3) as u8;
                c /= 3;
            }
        }
        let table = ChainTable(t);
        if check_monoid_laws(&table, &triples).passed() {
            out.push(table);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LawKind {
    /// Both sides defined together, with equal values.
    Kleene,
    /// If the left side is defined, so is the right, with equal values.
    Directed,
    /// Both sides defined and equal.
    Equation,
    Implication,
    Derived,
}

impl LawKind {
    fn label(self) -> &'static str {
        match self {
            LawKind::Kleene => "kleene",
            LawKind::Directed => "directed",
            LawKind::Equation => "equation",
            LawKind::Implication => "implication",
            LawKind::Derived => "derived",
        }
    }
}

#[derive(Clone, Debug)]
pub struct LawResult {
    pub law: &'static str,
    pub kind: LawKind,
    pub checked: usize,
    pub counterexample: Option<String>,
}

impl LawResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct LawReport {
    pub instance: String,
    pub laws: Vec<LawResult>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(LawResult::passed)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.laws.iter().filter(|l| !l.passed()).map(|l| l.law).collect()
    }

    pub fn get(&self, law: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.law == law)
    }

    pub fn merge(mut self, other: LawReport) -> LawReport {
        self.laws.extend(other.laws);
        self
    }

    pub fn to_json(&self) -> Value {
        let laws: serde_json::Map<String, Value> = self
            .laws
            .iter()
            .map(|l| {
                (
                    l.law.to_string(),
                    json!({
                        "kind": l.kind.label(),
                        "status": if l.passed() { "pass" } else { "fail" },
                        "checked": l.checked,
                        "counterexample": l.counterexample,
                    }),
                )
            })
            .collect();
        json!({ "instance": self.instance, "laws": laws })
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "laws of {}", self.instance)?;
        for l in &self.laws {
            write!(f, "  {:<28} {:<11} ", l.law, l.kind.label())?;
            match &l.counterexample {
                None => writeln!(f, "pass ({} cases)", l.checked)?,
                Some(c) => writeln!(f, "FAIL at {c}")?,
            }
        }
        Ok(())
    }
}

/// Accumulates one law over many cases, keeping the first counterexample.
struct Law {
    result: LawResult,
}

impl Law {
    fn new(law: &'static str, kind: LawKind) -> Law {
        Law {
            result: LawResult {
                law,
                kind,
                checked: 0,
                counterexample: None,
            },
        }
    }

    fn case(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.result.checked += 1;
        if !ok && self.result.counterexample.is_none() {
            self.result.counterexample = Some(witness());
        }
    }
}

fn kleene<T: PartialEq>(a: &Option<T>, b: &Option<T>) -> bool {
    a == b
}

fn directed<T: PartialEq>(a: &Option<T>, b: &Option<T>) -> bool {
    match a {
        None => true,
        Some(_) => a == b,
    }
}

fn show<T: Debug>(o: &Option<T>) -> String {
    match o {
        Some(v) => format!("{v:?}"),
        None => "undefined".into(),
    }
}

pub type Triple<E> = (E, E, E);

/// All triples over a finite carrier.
pub fn exhaustive_triples<E: Clone>(elems: &[E]) -> Vec<Triple<E>> {
    let mut out = Vec::new();
    for x in elems {
        for y in elems {
            for z in elems {
                out.push((x.clone(), y.clone(), z.clone()));
            }
        }
    }
    out
}

/// A random rational in [0,1] with a small denominator, so that sums hit 1
/// and definedness boundaries often.
pub fn random_unit<R: Rng>(rng: &mut R) -> BigRational {
    let d = rng.gen_range(1..=12i64);
    let n = rng.gen_range(0..=d);
    rat(n, d)
}

/// Random triples in [0,1]; one in four has `y` set to the complement of `x`.
pub fn random_unit_triples<R: Rng>(rng: &mut R, n: usize) -> Vec<Triple<BigRational>> {
    (0..n)
        .map(|_| {
            let x = random_unit(rng);
            let y = if rng.gen_ratio(1, 4) {
                BigRational::one() - &x
            } else {
                random_unit(rng)
            };
            (x, y, random_unit(rng))
        })
        .collect()
}

pub fn check_algebra_laws<A: EffectAlgebra>(a: &A, samples: &[Triple<A::Elem>]) -> LawReport {
    let mut comm = Law::new("ovee-commutative", LawKind::Kleene);
    let mut assoc = Law::new("ovee-associative", LawKind::Kleene);
    let mut zero = Law::new("ovee-zero", LawKind::Equation);
    let mut unique = Law::new("orth-unique", LawKind::Implication);
    let mut one = Law::new("perp-one-is-zero", LawKind::Implication);
    let mut cancel = Law::new("cancellation", LawKind::Derived);
    let o = a.one();
    let z = a.zero();
    for (x, y, w) in samples {
        let xy = a.ovee(x, y);
        let yx = a.ovee(y, x);
        comm.case(kleene(&xy, &yx), || format!("x = {x:?}, y = {y:?}: {} vs {}", show(&xy), show(&yx)));
        let l = a.ovee(y, w).and_then(|s| a.ovee(x, &s));
        let r = xy.as_ref().and_then(|s| a.ovee(s, w));
        assoc.case(kleene(&l, &r), || {
            format!("x = {x:?}, y = {y:?}, z = {w:?}: {} vs {}", show(&l), show(&r))
        });
        let x0 = a.ovee(x, &z);
        zero.case(x0.as_ref() == Some(x), || format!("x = {x:?}: x o+ 0 = {}", show(&x0)));
        let sums_to_one = xy.as_ref() == Some(&o);
        let is_orth = *y == a.orth(x);
        unique.case(sums_to_one == is_orth, || {
            format!("x = {x:?}, y = {y:?}: x o+ y = {}, orth(x) = {:?}", show(&xy), a.orth(x))
        });
        one.case(!a.perp(x, &o) || *x == z, || format!("x = {x:?} is orthogonal to 1"));
        let xw = a.ovee(x, w);
        let holds = match (&xy, &xw) {
            (Some(p), Some(q)) if p == q => y == w,
            _ => true,
        };
        cancel.case(holds, || format!("x = {x:?}, y = {y:?}, z = {w:?}"));
    }
    LawReport {
        instance: a.name(),
        laws: vec![comm, assoc, zero, unique, one, cancel].into_iter().map(|l| l.result).collect(),
    }
}

pub fn check_monoid_laws<M: EffectMonoid>(m: &M, samples: &[Triple<M::Elem>]) -> LawReport {
    let mut dist_r = Law::new("mul-distributes-right", LawKind::Directed);
    let mut dist_l = Law::new("mul-distributes-left", LawKind::Directed);
    let mut unit = Law::new("mul-unit", LawKind::Equation);
    let mut assoc = Law::new("mul-associative", LawKind::Equation);
    let mut absorb = Law::new("mul-zero", LawKind::Derived);
    let mut comm = Law::new("mul-commutative", LawKind::Equation);
    let o = m.one();
    let z = m.zero();
    for (x, y, w) in samples {
        let l = m.ovee(x, y).map(|s| m.mul(&s, w));
        let r = m.ovee(&m.mul(x, w), &m.mul(y, w));
        dist_r.case(directed(&l, &r), || {
            format!("x = {x:?}, y = {y:?}, z = {w:?}: {} vs {}", show(&l), show(&r))
        });
        let l = m.ovee(y, w).map(|s| m.mul(x, &s));
        let r = m.ovee(&m.mul(x, y), &m.mul(x, w));
        dist_l.case(directed(&l, &r), || {
            format!("x = {x:?}, y = {y:?}, z = {w:?}: {} vs {}", show(&l), show(&r))
        });
        unit.case(m.mul(&o, x) == *x && m.mul(x, &o) == *x, || format!("x = {x:?}"));
        let l = m.mul(x, &m.mul(y, w));
        let r = m.mul(&m.mul(x, y), w);
        assoc.case(l == r, || format!("x = {x:?}, y = {y:?}, z = {w:?}: {l:?} vs {r:?}"));
        absorb.case(m.mul(x, &z) == z && m.mul(&z, x) == z, || format!("x = {x:?}"));
        if m.commutative() {
            comm.case(m.mul(x, y) == m.mul(y, x), || format!("x = {x:?}, y = {y:?}"));
        }
    }
    let mut laws = vec![dist_r, dist_l, unit, assoc, absorb];
    if m.commutative() {
        laws.push(comm);
    }
    LawReport {
        instance: m.name(),
        laws: laws.into_iter().map(|l| l.result).collect(),
    }
}

type ScalarOf<Md> = <<Md as EffectModule>::Scalars as EffectAlgebra>::Elem;
type VectorOf<Md> = <<Md as EffectModule>::Carrier as EffectAlgebra>::Elem;

/// Module laws over cases `(r, s, x, y)` of two scalars and two vectors.
pub fn check_module_laws<Md: EffectModule>(
    md: &Md,
    cases: &[(ScalarOf<Md>, ScalarOf<Md>, VectorOf<Md>, VectorOf<Md>)],
) -> LawReport {
    let s = md.scalars();
    let c = md.carrier();
    let mut dist_v = Law::new("smul-distributes-vector", LawKind::Directed);
    let mut dist_s = Law::new("smul-distributes-scalar", LawKind::Directed);
    let mut assoc = Law::new("smul-associative", LawKind::Equation);
    let mut unit = Law::new("smul-unit", LawKind::Equation);
    for (r, q, x, y) in cases {
        let l = c.ovee(x, y).map(|v| md.smul(r, &v));
        let rr = c.ovee(&md.smul(r, x), &md.smul(r, y));
        dist_v.case(directed(&l, &rr), || {
            format!("r = {r:?}, x = {x:?}, y = {y:?}: {} vs {}", show(&l), show(&rr))
        });
        let l = s.ovee(r, q).map(|p| md.smul(&p, x));
        let rr = c.ovee(&md.smul(r, x), &md.smul(q, x));
        dist_s.case(directed(&l, &rr), || {
            format!("r = {r:?}, s = {q:?}, x = {x:?}: {} vs {}", show(&l), show(&rr))
        });
        let l = md.smul(&s.mul(r, q), x);
        let rr = md.smul(r, &md.smul(q, x));
        assoc.case(l == rr, || format!("r = {r:?}, s = {q:?}, x = {x:?}: {l:?} vs {rr:?}"));
        unit.case(md.smul(&s.one(), x) == *x, || format!("x = {x:?}"));
    }
    LawReport {
        instance: format!("{} over {}", c.name(), s.name()),
        laws: vec![dist_v, dist_s, assoc, unit].into_iter().map(|l| l.result).collect(),
    }
}

/// Checks that `f` is an effect algebra homomorphism on the sample pairs,
/// then checks zero preservation as a consequence.
pub fn check_homomorphism<A, B, F>(a: &A, b: &B, f: F, samples: &[(A::Elem, A::Elem)]) -> LawReport
where
    A: EffectAlgebra,
    B: EffectAlgebra,
    F: Fn(&A::Elem) -> B::Elem,
{
    let mut sum = Law::new("hom-preserves-sum", LawKind::Directed);
    let mut orth = Law::new("hom-preserves-orth", LawKind::Equation);
    let mut zero = Law::new("hom-preserves-zero", LawKind::Derived);
    for (x, y) in samples {
        let l = a.ovee(x, y).map(|s| f(&s));
        let r = b.ovee(&f(x), &f(y));
        sum.case(directed(&l, &r), || format!("x = {x:?}, y = {y:?}: {} vs {}", show(&l), show(&r)));
        orth.case(f(&a.orth(x)) == b.orth(&f(x)), || format!("x = {x:?}"));
    }
    zero.case(f(&a.zero()) == b.zero(), || format!("f(0) = {:?}", f(&a.zero())));
    LawReport {
        instance: format!("homomorphism {} -> {}", a.name(), b.name()),
        laws: vec![sum, orth, zero].into_iter().map(|l| l.result).collect(),
    }
}
