//! Seeded random syntax: raw trees for printer tests and well-typed terms
//! and well-formed effects for metatheory and semantics tests.

use crate::syntax::{Angle, Effect, Name, Term, Type};
use num_rational::Rational64;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

/// Which parts of the language generated syntax may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flavor {
    pub constants: bool,
    pub qubits: bool,
}

impl Flavor {
    pub const SHARP: Flavor = Flavor { constants: false, qubits: false };
    pub const PROBABILISTIC: Flavor = Flavor { constants: true, qubits: false };
    pub const QUANTUM: Flavor = Flavor { constants: true, qubits: true };
}

pub type Vars = Vec<(Name, Type)>;

pub struct Gen {
    rng: StdRng,
    fresh: usize,
    pub flavor: Flavor,
}

const CONSTANTS: &[(i64, i64)] = &[(1, 2), (1, 3), (2, 3), (1, 4), (3, 4), (1, 5)];
const NAMES: &[&str] = &["a", "b", "x", "y", "z"];

impl Gen {
    pub fn new(seed: u64, flavor: Flavor) -> Gen {
        Gen {
            rng: StdRng::seed_from_u64(seed),
            fresh: 0,
            flavor,
        }
    }

    pub fn rng(&mut self) -> &mut StdRng {
        &mut self.rng
    }

    fn fresh(&mut self, base: &str) -> Name {
        self.fresh += 1;
        format!("{base}{}", self.fresh)
    }

    fn constant(&mut self) -> Effect {
        let (n, d) = *CONSTANTS.choose(&mut self.rng).unwrap();
        Effect::constant(n, d)
    }

    fn angle(&mut self) -> Angle {
        Angle::new(Rational64::new(self.rng.gen_range(0..8), 4))
    }

    pub fn ty(&mut self, depth: u32) -> Type {
        let leaves = if self.flavor.qubits { 2 } else { 1 };
        let pick = if depth == 0 { self.rng.gen_range(0..leaves) } else { self.rng.gen_range(0..leaves + 2) };
        match pick {
            0 => Type::Unit,
            p if p == leaves => Type::tensor(self.ty(depth - 1), self.ty(depth - 1)),
            p if p == leaves + 1 => Type::sum(self.ty(depth - 1), self.ty(depth - 1)),
            _ => Type::Qbit,
        }
    }

    /// Context entries named `prefix0`, `prefix1`, ...
    pub fn vars(&mut self, prefix: &str, n: usize, depth: u32) -> Vars {
        (0..n).map(|i| (format!("{prefix}{i}"), self.ty(depth))).collect()
    }

    fn split(&mut self, vars: &[(Name, Type)]) -> (Vars, Vars) {
        let mut l = Vec::new();
        let mut r = Vec::new();
        for v in vars {
            if self.rng.gen_bool(0.5) {
                l.push(v.clone());
            } else {
                r.push(v.clone());
            }
        }
        (l, r)
    }

    /// A term of type `ty` using each of `vars` at most once.
    pub fn term(&mut self, vars: &[(Name, Type)], ty: &Type, depth: u32) -> Term {
        let matching: Vec<usize> = (0..vars.len()).filter(|&i| vars[i].1 == *ty).collect();
        if !matching.is_empty() && (depth == 0 || self.rng.gen_bool(0.4)) {
            let i = *matching.choose(&mut self.rng).unwrap();
            return Term::Var(vars[i].0.clone());
        }
        if depth > 0 {
            let pairs: Vec<usize> = (0..vars.len()).filter(|&i| matches!(vars[i].1, Type::Tensor(..))).collect();
            let sums: Vec<usize> = (0..vars.len()).filter(|&i| matches!(vars[i].1, Type::Sum(..))).collect();
            match self.rng.gen_range(0..6) {
                0 if !pairs.is_empty() => {
                    let i = *pairs.choose(&mut self.rng).unwrap();
                    let (p, pt) = vars[i].clone();
                    let Type::Tensor(a, b) = pt else { unreachable!() };
                    let (l, r) = (self.fresh("l"), self.fresh("r"));
                    let mut rest: Vars = vars.iter().filter(|(n, _)| *n != p).cloned().collect();
                    rest.push((l.clone(), *a));
                    rest.push((r.clone(), *b));
                    let body = self.term(&rest, ty, depth - 1);
                    return Term::let_pair(&l, &r, Term::Var(p), body);
                }
                1 if !sums.is_empty() => {
                    let i = *sums.choose(&mut self.rng).unwrap();
                    let (s, st) = vars[i].clone();
                    let Type::Sum(a, b) = st else { unreachable!() };
                    let (l, r) = (self.fresh("l"), self.fresh("r"));
                    let rest: Vars = vars.iter().filter(|(n, _)| *n != s).cloned().collect();
                    let mut left = rest.clone();
                    left.push((l.clone(), *a));
                    let mut right = rest;
                    right.push((r.clone(), *b));
                    let on_left = self.term(&left, ty, depth - 1);
                    let on_right = self.term(&right, ty, depth - 1);
                    return Term::case(Term::Var(s), &l, on_left, &r, on_right);
                }
                2 => {
                    let (g, d) = self.split(vars);
                    let guard = self.effect(&g, depth - 1);
                    let first = self.term(&d, ty, depth - 1);
                    let second = self.term(&d, ty, depth - 1);
                    return Term::measure(vec![(guard.clone(), first), (Effect::orth(guard), second)]);
                }
                _ => {}
            }
        }
        self.intro(vars, ty, depth)
    }

    fn intro(&mut self, vars: &[(Name, Type)], ty: &Type, depth: u32) -> Term {
        let d = depth.saturating_sub(1);
        match ty {
            Type::Unit => Term::Unit,
            Type::Tensor(a, b) => {
                let (l, r) = self.split(vars);
                Term::pair(self.term(&l, a, d), self.term(&r, b, d))
            }
            Type::Sum(a, b) => {
                if self.rng.gen_bool(0.5) {
                    Term::inl(self.term(vars, a, d))
                } else {
                    Term::inr(self.term(vars, b, d))
                }
            }
            Type::Qbit => {
                if depth == 0 {
                    return Term::Plus;
                }
                match self.rng.gen_range(0..4) {
                    0 => Term::x(self.term(vars, ty, d)),
                    1 => Term::z(self.term(vars, ty, d)),
                    2 => {
                        let (l, r) = self.split(vars);
                        let m = self.term(&l, ty, d);
                        let n = self.term(&r, ty, d);
                        let (u, v) = (self.fresh("u"), self.fresh("v"));
                        let keep = if self.rng.gen_bool(0.5) { u.clone() } else { v.clone() };
                        Term::let_pair(&u, &v, Term::cz(m, n), Term::Var(keep))
                    }
                    _ => Term::Plus,
                }
            }
        }
    }

    /// An effect well formed over `vars`; every sum it contains is of the
    /// form `phi o+ 0` or `phi o+ bot(phi)`.
    pub fn effect(&mut self, vars: &[(Name, Type)], depth: u32) -> Effect {
        let sums: Vec<usize> = (0..vars.len()).filter(|&i| matches!(vars[i].1, Type::Sum(..))).collect();
        let qbits = self.flavor.qubits && vars.iter().any(|(_, t)| *t == Type::Qbit);
        let pick = if depth == 0 { self.rng.gen_range(0..4) } else { self.rng.gen_range(0..10) };
        match pick {
            0 => Effect::Zero,
            1 => Effect::one(),
            2 if self.flavor.constants => self.constant(),
            3 if qbits => {
                let m = self.term(vars, &Type::Qbit, depth.min(1));
                Effect::proj(m, self.angle())
            }
            2 | 3 => Effect::Zero,
            4 => Effect::orth(self.effect(vars, depth - 1)),
            5 => Effect::ovee(self.effect(vars, depth - 1), Effect::Zero),
            6 => {
                let e = self.effect(vars, depth - 1);
                Effect::ovee(e.clone(), Effect::orth(e))
            }
            7 => {
                let s = self.effect(&[], depth - 1);
                Effect::scale(s, self.effect(vars, depth - 1))
            }
            _ if !sums.is_empty() => {
                let i = *sums.choose(&mut self.rng).unwrap();
                let (s, st) = vars[i].clone();
                let Type::Sum(a, b) = st else { unreachable!() };
                let (l, r) = (self.fresh("l"), self.fresh("r"));
                let rest: Vars = vars.iter().filter(|(n, _)| *n != s).cloned().collect();
                let mut left = rest.clone();
                left.push((l.clone(), *a));
                let mut right = rest;
                right.push((r.clone(), *b));
                let on_left = self.effect(&left, depth - 1);
                let on_right = self.effect(&right, depth - 1);
                Effect::case(Term::Var(s), &l, on_left, &r, on_right)
            }
            _ => {
                if self.flavor.qubits && self.rng.gen_bool(0.5) {
                    let m = self.term(vars, &Type::Qbit, 1);
                    Effect::proj(m, self.angle())
                } else {
                    Effect::orth(self.effect(vars, depth - 1))
                }
            }
        }
    }

    fn name(&mut self) -> Name {
        NAMES.choose(&mut self.rng).unwrap().to_string()
    }

    /// An arbitrary term tree, not necessarily well typed.
    pub fn raw_term(&mut self, depth: u32) -> Term {
        let pick = if depth == 0 { self.rng.gen_range(0..3) } else { self.rng.gen_range(0..13) };
        let d = depth.saturating_sub(1);
        match pick {
            0 => Term::Var(self.name()),
            1 => Term::Unit,
            2 => Term::Plus,
            3 => Term::pair(self.raw_term(d), self.raw_term(d)),
            4 => {
                let (x, y) = (self.name(), self.name());
                Term::let_pair(&x, &y, self.raw_term(d), self.raw_term(d))
            }
            5 => Term::inl(self.raw_term(d)),
            6 => Term::inr(self.raw_term(d)),
            7 => {
                let (x, y) = (self.name(), self.name());
                Term::case(self.raw_term(d), &x, self.raw_term(d), &y, self.raw_term(d))
            }
            8 => {
                let n = self.rng.gen_range(1..4);
                Term::measure((0..n).map(|_| (self.raw_effect(d), self.raw_term(d))).collect())
            }
            9 => Term::x(self.raw_term(d)),
            10 => Term::z(self.raw_term(d)),
            11 => Term::cz(self.raw_term(d), self.raw_term(d)),
            _ => Term::Var(self.name()),
        }
    }

    /// An arbitrary effect tree, not necessarily well formed.
    pub fn raw_effect(&mut self, depth: u32) -> Effect {
        let pick = if depth == 0 { self.rng.gen_range(0..3) } else { self.rng.gen_range(0..9) };
        let d = depth.saturating_sub(1);
        match pick {
            0 => Effect::Zero,
            1 => Effect::one(),
            2 => self.constant(),
            3 => Effect::orth(self.raw_effect(d)),
            4 => Effect::ovee(self.raw_effect(d), self.raw_effect(d)),
            5 => Effect::scale(self.raw_effect(d), self.raw_effect(d)),
            6 => {
                let (x, y) = (self.name(), self.name());
                Effect::case(self.raw_term(d), &x, self.raw_effect(d), &y, self.raw_effect(d))
            }
            _ => Effect::proj(self.raw_term(d), self.angle()),
        }
    }
}
