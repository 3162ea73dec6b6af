//! The state-and-effect triangle interface shared by all backends.
//!
//! Objects are strictly associative and unital for both the tensor and the
//! coproduct, so associators and unitors are identities. Symmetry and
//! distributivity are explicit morphisms. States of `A` are morphisms
//! `I -> A`.

use num_rational::Rational64;
use qpel_core::syntax::Angle;
use std::fmt::Debug;
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum SemError {
    #[error("the {backend} backend does not support {what}")]
    Unsupported { backend: &'static str, what: String },
    #[error("undefined: {0}")]
    Undefined(String),
    #[error("ill typed: {0}")]
    Type(String),
}

pub trait Triangle {
    type Ob: Clone + PartialEq + Debug;
    type Mor: Clone + Debug;
    type Pred: Clone + Debug;
    type Scalar: Clone + Debug + PartialEq;

    fn name(&self) -> &'static str;

    fn unit(&self) -> Self::Ob;
    fn tensor(&self, a: &Self::Ob, b: &Self::Ob) -> Self::Ob;
    fn sum(&self, a: &Self::Ob, b: &Self::Ob) -> Self::Ob;
    fn dom(&self, f: &Self::Mor) -> Self::Ob;
    fn cod(&self, f: &Self::Mor) -> Self::Ob;

    fn id(&self, a: &Self::Ob) -> Self::Mor;
    /// `g` after `f`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor;
    fn tensor_mor(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor;
    fn swap(&self, a: &Self::Ob, b: &Self::Ob) -> Self::Mor;
    /// The map `A -> I`.
    fn bang(&self, a: &Self::Ob) -> Self::Mor;
    fn inl(&self, a: &Self::Ob, b: &Self::Ob) -> Self::Mor;
    fn inr(&self, a: &Self::Ob, b: &Self::Ob) -> Self::Mor;
    fn cotuple(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor;
    /// `A * (B + C) -> A * B + A * C`.
    fn dist_l(&self, a: &Self::Ob, b: &Self::Ob, c: &Self::Ob) -> Self::Mor;
    /// `(A + B) * C -> A * C + B * C`.
    fn dist_r(&self, a: &Self::Ob, b: &Self::Ob, c: &Self::Ob) -> Self::Mor;
    fn mor_eq(&self, f: &Self::Mor, g: &Self::Mor) -> bool;
    /// Zero when equal; the Frobenius distance for numeric backends.
    fn mor_distance(&self, f: &Self::Mor, g: &Self::Mor) -> f64;

    fn pred_zero(&self, a: &Self::Ob) -> Self::Pred;
    fn pred_orth(&self, p: &Self::Pred) -> Self::Pred;
    fn pred_ovee(&self, p: &Self::Pred, q: &Self::Pred) -> Option<Self::Pred>;
    fn pred_scale(&self, r: &Self::Scalar, p: &Self::Pred) -> Self::Pred;
    fn pred_leq(&self, p: &Self::Pred, q: &Self::Pred) -> bool;
    fn pred_eq(&self, p: &Self::Pred, q: &Self::Pred) -> bool;
    fn pred_distance(&self, p: &Self::Pred, q: &Self::Pred) -> f64;
    /// `P(A) x P(B) -> P(A + B)`.
    fn pred_cotuple(&self, p: &Self::Pred, q: &Self::Pred) -> Self::Pred;
    /// `P(I) -> E`.
    fn pred_scalar(&self, p: &Self::Pred) -> Self::Scalar;
    /// The predicate transformer `P(f) : P(B) -> P(A)` for `f : A -> B`.
    fn apply_p(&self, f: &Self::Mor, q: &Self::Pred) -> Self::Pred;

    fn scalar_const(&self, r: &Rational64) -> Result<Self::Scalar, SemError>;
    fn scalar_ovee(&self, r: &Self::Scalar, s: &Self::Scalar) -> Option<Self::Scalar>;
    fn scalar_eq(&self, r: &Self::Scalar, s: &Self::Scalar) -> bool;

    /// `validity(p, s)` for `s : I -> A`.
    fn validity(&self, p: &Self::Pred, s: &Self::Mor) -> Self::Scalar;

    /// `meas_A(p1, ..., pn) : A -> n . I`; the predicates must sum to one.
    fn meas(&self, a: &Self::Ob, ps: &[Self::Pred]) -> Result<Self::Mor, SemError>;

    fn qbit(&self) -> Result<Self::Ob, SemError> {
        Err(self.no_qubits())
    }
    fn plus(&self) -> Result<Self::Mor, SemError> {
        Err(self.no_qubits())
    }
    fn pauli_x(&self) -> Result<Self::Mor, SemError> {
        Err(self.no_qubits())
    }
    fn pauli_z(&self) -> Result<Self::Mor, SemError> {
        Err(self.no_qubits())
    }
    fn cz(&self) -> Result<Self::Mor, SemError> {
        Err(self.no_qubits())
    }
    /// The projector onto `|+_a>` on `qbit`.
    fn proj(&self, _angle: &Angle) -> Result<Self::Pred, SemError> {
        Err(self.no_qubits())
    }

    fn no_qubits(&self) -> SemError {
        SemError::Unsupported {
            backend: self.name(),
            what: "qubits".into(),
        }
    }

    fn pred_one(&self, a: &Self::Ob) -> Self::Pred {
        self.pred_orth(&self.pred_zero(a))
    }

    fn apply_s(&self, f: &Self::Mor, s: &Self::Mor) -> Self::Mor {
        self.compose(f, s)
    }

    /// `f + g : A + B -> C + D`.
    fn sum_mor(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor {
        let (c, d) = (self.cod(f), self.cod(g));
        self.cotuple(&self.compose(&self.inl(&c, &d), f), &self.compose(&self.inr(&c, &d), g))
    }

    /// The convex combination `r s + r' t` of two states, built from `meas`.
    fn mix(&self, r: &Self::Scalar, s: &Self::Mor, t: &Self::Mor) -> Result<Self::Mor, SemError> {
        let i = self.unit();
        let p = self.pred_scale(r, &self.pred_one(&i));
        let m = self.meas(&i, &[p.clone(), self.pred_orth(&p)])?;
        Ok(self.compose(&self.cotuple(s, t), &m))
    }
}

pub fn tensor_all<T: Triangle>(t: &T, obs: &[T::Ob]) -> T::Ob {
    obs.iter().fold(t.unit(), |acc, o| t.tensor(&acc, o))
}

pub fn sum_all<T: Triangle>(t: &T, obs: &[T::Ob]) -> T::Ob {
    let mut it = obs.iter();
    let first = it.next().expect("empty coproduct").clone();
    it.fold(first, |acc, o| t.sum(&acc, o))
}

pub fn tensor_mors<T: Triangle>(t: &T, fs: &[T::Mor]) -> T::Mor {
    fs.iter().fold(t.id(&t.unit()), |acc, f| t.tensor_mor(&acc, f))
}

pub fn cotuple_all<T: Triangle>(t: &T, fs: &[T::Mor]) -> T::Mor {
    let mut it = fs.iter();
    let first = it.next().expect("empty cotuple").clone();
    it.fold(first, |acc, f| t.cotuple(&acc, f))
}

/// `(A1 + ... + An) * C -> A1 * C + ... + An * C`.
pub fn dist_r_all<T: Triangle>(t: &T, obs: &[T::Ob], c: &T::Ob) -> T::Mor {
    match obs {
        [] => panic!("empty coproduct"),
        [a] => t.id(&t.tensor(a, c)),
        _ => {
            let (last, init) = obs.split_last().unwrap();
            let head = t.dist_r(&sum_all(t, init), last, c);
            let rest = t.sum_mor(&dist_r_all(t, init, c), &t.id(&t.tensor(last, c)));
            t.compose(&rest, &head)
        }
    }
}

/// The symmetry `A1 * ... * An -> A_{p(1)} * ... * A_{p(n)}`, built from
/// adjacent swaps.
pub fn permute<T: Triangle>(t: &T, obs: &[T::Ob], order: &[usize]) -> T::Mor {
    assert_eq!(obs.len(), order.len());
    let mut current: Vec<usize> = (0..obs.len()).collect();
    let mut mor = t.id(&tensor_all(t, obs));
    for target in 0..order.len() {
        let mut k = current.iter().position(|&i| i == order[target]).unwrap();
        while k > target {
            let at: Vec<T::Ob> = current.iter().map(|&i| obs[i].clone()).collect();
            let step = t.tensor_mor(
                &t.tensor_mor(&t.id(&tensor_all(t, &at[..k - 1])), &t.swap(&at[k - 1], &at[k])),
                &t.id(&tensor_all(t, &at[k + 1..])),
            );
            mor = t.compose(&step, &mor);
            current.swap(k - 1, k);
            k -= 1;
        }
    }
    mor
}
