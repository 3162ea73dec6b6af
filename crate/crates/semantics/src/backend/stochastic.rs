//! The Kleisli category of the distribution monad over exact rationals:
//! row-stochastic matrices. Predicates are maps into [0,1].
//!
//! Indexing of tensors and coproducts follows the set backend.

use super::set::{dist_l_index, swap_index};
use crate::effect::rat;
use crate::triangle::{SemError, Triangle};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};

/// A `rows x cols` matrix; entry `(x, y)` is the probability of `y` from `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stoch {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigRational>,
}

impl Stoch {
    pub fn zeros(rows: usize, cols: usize) -> Stoch {
        Stoch {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn get(&self, x: usize, y: usize) -> &BigRational {
        &self.data[x * self.cols + y]
    }

    pub fn set(&mut self, x: usize, y: usize, v: BigRational) {
        self.data[x * self.cols + y] = v;
    }

    /// The matrix of a function given by its table.
    pub fn from_function(cols: usize, map: &[usize]) -> Stoch {
        let mut m = Stoch::zeros(map.len(), cols);
        for (x, &y) in map.iter().enumerate() {
            m.set(x, y, BigRational::one());
        }
        m
    }

    pub fn row(&self, x: usize) -> &[BigRational] {
        &self.data[x * self.cols..(x + 1) * self.cols]
    }

    pub fn is_stochastic(&self) -> bool {
        (0..self.rows).all(|x| {
            let r = self.row(x);
            r.iter().all(|v| !v.is_negative()) && r.iter().sum::<BigRational>().is_one()
        })
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct StochasticBackend;

pub fn from_r64(r: &Rational64) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

impl Triangle for StochasticBackend {
    type Ob = usize;
    type Mor = Stoch;
    type Pred = Vec<BigRational>;
    type Scalar = BigRational;

    fn name(&self) -> &'static str {
        "stochastic"
    }

    fn unit(&self) -> usize {
        1
    }

    fn tensor(&self, a: &usize, b: &usize) -> usize {
        a * b
    }

    fn sum(&self, a: &usize, b: &usize) -> usize {
        a + b
    }

    fn dom(&self, f: &Stoch) -> usize {
        f.rows
    }

    fn cod(&self, f: &Stoch) -> usize {
        f.cols
    }

    fn id(&self, a: &usize) -> Stoch {
        Stoch::from_function(*a, &(0..*a).collect::<Vec<_>>())
    }

    fn compose(&self, g: &Stoch, f: &Stoch) -> Stoch {
        assert_eq!(f.cols, g.rows, "composing incompatible matrices");
        let mut out = Stoch::zeros(f.rows, g.cols);
        for x in 0..f.rows {
            for y in 0..f.cols {
                let p = f.get(x, y);
                if p.is_zero() {
                    continue;
                }
                for z in 0..g.cols {
                    let q = g.get(y, z);
                    if !q.is_zero() {
                        let v = out.get(x, z) + p * q;
                        out.set(x, z, v);
                    }
                }
            }
        }
        out
    }

    fn tensor_mor(&self, f: &Stoch, g: &Stoch) -> Stoch {
        let mut out = Stoch::zeros(f.rows * g.rows, f.cols * g.cols);
        for x1 in 0..f.rows {
            for y1 in 0..f.cols {
                let p = f.get(x1, y1);
                if p.is_zero() {
                    continue;
                }
                for x2 in 0..g.rows {
                    for y2 in 0..g.cols {
                        let q = g.get(x2, y2);
                        if !q.is_zero() {
                            out.set(x1 * g.rows + x2, y1 * g.cols + y2, p * q);
                        }
                    }
                }
            }
        }
        out
    }

    fn swap(&self, a: &usize, b: &usize) -> Stoch {
        let map: Vec<usize> = (0..a * b).map(|x| swap_index(*a, *b, x)).collect();
        Stoch::from_function(a * b, &map)
    }

    fn bang(&self, a: &usize) -> Stoch {
        Stoch::from_function(1, &vec![0; *a])
    }

    fn inl(&self, a: &usize, b: &usize) -> Stoch {
        Stoch::from_function(a + b, &(0..*a).collect::<Vec<_>>())
    }

    fn inr(&self, a: &usize, b: &usize) -> Stoch {
        Stoch::from_function(a + b, &(*a..a + b).collect::<Vec<_>>())
    }

    fn cotuple(&self, f: &Stoch, g: &Stoch) -> Stoch {
        assert_eq!(f.cols, g.cols, "cotuple of matrices with different codomains");
        Stoch {
            rows: f.rows + g.rows,
            cols: f.cols,
            data: f.data.iter().chain(&g.data).cloned().collect(),
        }
    }

    fn dist_l(&self, a: &usize, b: &usize, c: &usize) -> Stoch {
        let n = a * (b + c);
        let map: Vec<usize> = (0..n).map(|x| dist_l_index(*a, *b, *c, x)).collect();
        Stoch::from_function(n, &map)
    }

    fn dist_r(&self, a: &usize, b: &usize, c: &usize) -> Stoch {
        self.id(&((a + b) * c))
    }

    fn mor_eq(&self, f: &Stoch, g: &Stoch) -> bool {
        f == g
    }

    fn mor_distance(&self, f: &Stoch, g: &Stoch) -> f64 {
        if f == g {
            0.0
        } else {
            1.0
        }
    }

    fn pred_zero(&self, a: &usize) -> Vec<BigRational> {
        vec![BigRational::zero(); *a]
    }

    fn pred_orth(&self, p: &Vec<BigRational>) -> Vec<BigRational> {
        p.iter().map(|v| BigRational::one() - v).collect()
    }

    fn pred_ovee(&self, p: &Vec<BigRational>, q: &Vec<BigRational>) -> Option<Vec<BigRational>> {
        let s: Vec<BigRational> = p.iter().zip(q).map(|(a, b)| a + b).collect();
        s.iter().all(|v| *v <= BigRational::one()).then_some(s)
    }

    fn pred_scale(&self, r: &BigRational, p: &Vec<BigRational>) -> Vec<BigRational> {
        p.iter().map(|v| r * v).collect()
    }

    fn pred_leq(&self, p: &Vec<BigRational>, q: &Vec<BigRational>) -> bool {
        p.iter().zip(q).all(|(a, b)| a <= b)
    }

    fn pred_eq(&self, p: &Vec<BigRational>, q: &Vec<BigRational>) -> bool {
        p == q
    }

    fn pred_distance(&self, p: &Vec<BigRational>, q: &Vec<BigRational>) -> f64 {
        if p == q {
            0.0
        } else {
            1.0
        }
    }

    fn pred_cotuple(&self, p: &Vec<BigRational>, q: &Vec<BigRational>) -> Vec<BigRational> {
        p.iter().chain(q).cloned().collect()
    }

    fn pred_scalar(&self, p: &Vec<BigRational>) -> BigRational {
        p[0].clone()
    }

    fn apply_p(&self, f: &Stoch, q: &Vec<BigRational>) -> Vec<BigRational> {
        (0..f.rows)
            .map(|x| f.row(x).iter().zip(q).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn scalar_const(&self, r: &Rational64) -> Result<BigRational, SemError> {
        Ok(from_r64(r))
    }

    fn scalar_ovee(&self, r: &BigRational, s: &BigRational) -> Option<BigRational> {
        let t = r + s;
        (t <= BigRational::one()).then_some(t)
    }

    fn scalar_eq(&self, r: &BigRational, s: &BigRational) -> bool {
        r == s
    }

    fn validity(&self, p: &Vec<BigRational>, s: &Stoch) -> BigRational {
        s.row(0).iter().zip(p).map(|(a, b)| a * b).sum()
    }

    fn meas(&self, a: &usize, ps: &[Vec<BigRational>]) -> Result<Stoch, SemError> {
        let mut out = Stoch::zeros(*a, ps.len());
        for x in 0..*a {
            let mut total = BigRational::zero();
            for (k, p) in ps.iter().enumerate() {
                total += &p[x];
                out.set(x, k, p[x].clone());
            }
            if !total.is_one() {
                return Err(SemError::Undefined(format!(
                    "measurement predicates sum to {total} at point {x}"
                )));
            }
        }
        Ok(out)
    }
}

/// The uniform distribution on `n` points as a state.
pub fn uniform(n: usize) -> Stoch {
    let mut s = Stoch::zeros(1, n);
    for y in 0..n {
        s.set(0, y, rat(1, n as i64));
    }
    s
}
