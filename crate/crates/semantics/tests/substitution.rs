use qpel_core::gen::{Flavor, Gen};
use qpel_core::subst::subst_effect;
use qpel_core::syntax::Context;
use qpel_semantics::{Interp, QuantumBackend, SetBackend, StochasticBackend, Triangle};

struct Sizes {
    vars: usize,
    ty: u32,
    term: u32,
    effect: u32,
}

/// Checks `[[D, G |- [M/x]phi]] = P(id (x) [[G |- M]])([[D, x |- phi]])` on
/// generated pairs and returns how many had `x` free in `phi`.
fn check<T: Triangle>(t: &T, flavor: Flavor, seed: u64, pairs: usize, s: Sizes) -> usize {
    let interp = Interp::new(t);
    let mut g = Gen::new(seed, flavor);
    let mut genuine = 0;
    let mut worst: f64 = 0.0;
    while genuine < pairs {
        let delta = g.vars("d", s.vars, s.ty);
        let gamma = g.vars("g", s.vars, s.ty);
        let a = g.ty(s.ty);
        let m = g.term(&gamma, &a, s.term);
        let mut inner = delta.clone();
        inner.push(("x".to_string(), a.clone()));
        let phi = g.effect(&inner, s.effect);
        if !phi.free_vars().contains("x") {
            continue;
        }
        genuine += 1;
        let mut outer = delta.clone();
        outer.extend(gamma.clone());
        let direct = interp.effect(&Context(outer), &subst_effect(&phi, "x", &m)).unwrap();
        let post = interp.effect(&Context(inner), &phi).unwrap();
        let fm = interp.term(&Context(gamma), &m, &a).unwrap();
        let f = t.tensor_mor(&t.id(&interp.context(&delta).unwrap()), &fm);
        let pre = t.apply_p(&f, &post);
        worst = worst.max(t.pred_distance(&pre, &direct));
        assert!(t.pred_eq(&pre, &direct), "[{m} / x] {phi}");
    }
    eprintln!("{}: {genuine} pairs, max deviation {worst:e}", t.name());
    genuine
}

#[test]
fn substitution_lemma_in_the_set_backend() {
    let sizes = Sizes { vars: 2, ty: 2, term: 3, effect: 3 };
    assert!(check(&SetBackend, Flavor::SHARP, 61, 150, sizes) >= 100);
}

#[test]
fn substitution_lemma_in_the_stochastic_backend() {
    let sizes = Sizes { vars: 2, ty: 2, term: 3, effect: 3 };
    assert!(check(&StochasticBackend, Flavor::PROBABILISTIC, 62, 150, sizes) >= 100);
}

#[test]
fn substitution_lemma_in_the_quantum_backend() {
    let sizes = Sizes { vars: 1, ty: 1, term: 3, effect: 3 };
    assert!(check(&QuantumBackend, Flavor::QUANTUM, 63, 120, sizes) >= 100);
}
