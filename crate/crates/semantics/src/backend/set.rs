//! Finite sets and functions. Predicates are subsets, scalars are Booleans.
//!
//! An object is a cardinality. The pair `(i, j)` of `A * B` has index
//! `i * |B| + j`; `inr j` in `A + B` has index `|A| + j`.

use crate::triangle::{SemError, Triangle};
use num_rational::Rational64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Func {
    pub dom: usize,
    pub cod: usize,
    pub map: Vec<usize>,
}

impl Func {
    pub fn new(cod: usize, map: Vec<usize>) -> Func {
        debug_assert!(map.iter().all(|&y| y < cod));
        Func { dom: map.len(), cod, map }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SetBackend;

pub fn swap_index(a: usize, b: usize, x: usize) -> usize {
    let (i, j) = (x / b, x % b);
    j * a + i
}

pub fn dist_l_index(a: usize, b: usize, c: usize, x: usize) -> usize {
    let (i, m) = (x / (b + c), x % (b + c));
    if m < b {
        i * b + m
    } else {
        a * b + i * c + (m - b)
    }
}

impl Triangle for SetBackend {
    type Ob = usize;
    type Mor = Func;
    type Pred = Vec<bool>;
    type Scalar = bool;

    fn name(&self) -> &'static str {
        "set"
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

    fn dom(&self, f: &Func) -> usize {
        f.dom
    }

    fn cod(&self, f: &Func) -> usize {
        f.cod
    }

    fn id(&self, a: &usize) -> Func {
        Func::new(*a, (0..*a).collect())
    }

    fn compose(&self, g: &Func, f: &Func) -> Func {
        assert_eq!(f.cod, g.dom, "composing incompatible functions");
        Func::new(g.cod, f.map.iter().map(|&y| g.map[y]).collect())
    }

    fn tensor_mor(&self, f: &Func, g: &Func) -> Func {
        let mut map = Vec::with_capacity(f.dom * g.dom);
        for &y in &f.map {
            for &z in &g.map {
                map.push(y * g.cod + z);
            }
        }
        Func::new(f.cod * g.cod, map)
    }

    fn swap(&self, a: &usize, b: &usize) -> Func {
        Func::new(a * b, (0..a * b).map(|x| swap_index(*a, *b, x)).collect())
    }

    fn bang(&self, a: &usize) -> Func {
        Func::new(1, vec![0; *a])
    }

    fn inl(&self, a: &usize, b: &usize) -> Func {
        Func::new(a + b, (0..*a).collect())
    }

    fn inr(&self, a: &usize, b: &usize) -> Func {
        Func::new(a + b, (*a..a + b).collect())
    }

    fn cotuple(&self, f: &Func, g: &Func) -> Func {
        assert_eq!(f.cod, g.cod, "cotuple of functions with different codomains");
        Func::new(f.cod, f.map.iter().chain(&g.map).copied().collect())
    }

    fn dist_l(&self, a: &usize, b: &usize, c: &usize) -> Func {
        let n = a * (b + c);
        Func::new(n, (0..n).map(|x| dist_l_index(*a, *b, *c, x)).collect())
    }

    fn dist_r(&self, a: &usize, b: &usize, c: &usize) -> Func {
        self.id(&((a + b) * c))
    }

    fn mor_eq(&self, f: &Func, g: &Func) -> bool {
        f == g
    }

    fn mor_distance(&self, f: &Func, g: &Func) -> f64 {
        if f == g {
            0.0
        } else {
            1.0
        }
    }

    fn pred_zero(&self, a: &usize) -> Vec<bool> {
        vec![false; *a]
    }

    fn pred_orth(&self, p: &Vec<bool>) -> Vec<bool> {
        p.iter().map(|b| !b).collect()
    }

    fn pred_ovee(&self, p: &Vec<bool>, q: &Vec<bool>) -> Option<Vec<bool>> {
        if p.iter().zip(q).any(|(a, b)| *a && *b) {
            None
        } else {
            Some(p.iter().zip(q).map(|(a, b)| *a || *b).collect())
        }
    }

    fn pred_scale(&self, r: &bool, p: &Vec<bool>) -> Vec<bool> {
        p.iter().map(|b| *r && *b).collect()
    }

    fn pred_leq(&self, p: &Vec<bool>, q: &Vec<bool>) -> bool {
        p.iter().zip(q).all(|(a, b)| !a || *b)
    }

    fn pred_eq(&self, p: &Vec<bool>, q: &Vec<bool>) -> bool {
        p == q
    }

    fn pred_distance(&self, p: &Vec<bool>, q: &Vec<bool>) -> f64 {
        p.iter().zip(q).filter(|(a, b)| a != b).count() as f64
    }

    fn pred_cotuple(&self, p: &Vec<bool>, q: &Vec<bool>) -> Vec<bool> {
        p.iter().chain(q).copied().collect()
    }

    fn pred_scalar(&self, p: &Vec<bool>) -> bool {
        p[0]
    }

    fn apply_p(&self, f: &Func, q: &Vec<bool>) -> Vec<bool> {
        f.map.iter().map(|&y| q[y]).collect()
    }

    fn scalar_const(&self, r: &Rational64) -> Result<bool, SemError> {
        if *r == Rational64::from_integer(0) {
            Ok(false)
        } else if *r == Rational64::from_integer(1) {
            Ok(true)
        } else {
            Err(SemError::Unsupported {
                backend: "set",
                what: format!("the scalar {r}"),
            })
        }
    }

    fn scalar_ovee(&self, r: &bool, s: &bool) -> Option<bool> {
        if *r && *s {
            None
        } else {
            Some(*r || *s)
        }
    }

    fn scalar_eq(&self, r: &bool, s: &bool) -> bool {
        r == s
    }

    fn validity(&self, p: &Vec<bool>, s: &Func) -> bool {
        p[s.map[0]]
    }

    fn meas(&self, a: &usize, ps: &[Vec<bool>]) -> Result<Func, SemError> {
        let mut map = Vec::with_capacity(*a);
        for x in 0..*a {
            let hits: Vec<usize> = (0..ps.len()).filter(|&k| ps[k][x]).collect();
            match hits.as_slice() {
                [k] => map.push(*k),
                _ => {
                    return Err(SemError::Undefined(format!(
                        "measurement predicates at point {x} hold {} times, not once",
                        hits.len()
                    )))
                }
            }
        }
        Ok(Func::new(ps.len(), map))
    }
}
