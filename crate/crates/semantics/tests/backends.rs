use num_rational::Rational64;
use qpel_core::gen::{Flavor, Gen};
use qpel_core::syntax::{Context, Type};
use qpel_semantics::backend::quantum::{is_channel, Channel};
use qpel_semantics::triangle::{cotuple_all, sum_all};
use qpel_semantics::{Interp, QuantumBackend, SetBackend, StochasticBackend, Triangle};

struct Sizes {
    ty: u32,
    term: u32,
    effect: u32,
}

fn x(ty: &Type) -> Context {
    Context::from_pairs(&[("x", ty.clone())])
}

/// The coproduct injection `I -> n . I` of summand `k`, for the
/// left-nested sum built by `sum_all`.
fn kappa<T: Triangle>(t: &T, n: usize, k: usize) -> T::Mor {
    let one = t.unit();
    if n == 1 {
        return t.id(&one);
    }
    let init = sum_all(t, &vec![one.clone(); n - 1]);
    if k == n - 1 {
        t.inr(&init, &one)
    } else {
        t.compose(&t.inl(&init, &one), &kappa(t, n - 1, k))
    }
}

/// `n . I -> n . I` sending summand `i` to summand `p[i]`.
fn injection_perm<T: Triangle>(t: &T, p: &[usize]) -> T::Mor {
    cotuple_all(t, &p.iter().map(|&k| kappa(t, p.len(), k)).collect::<Vec<_>>())
}

/// Runs the triangle axioms on morphisms `f : A -> B` and predicates on
/// `B` denoted by generated terms and effects.
fn axioms<T: Triangle>(t: &T, flavor: Flavor, seed: u64, rounds: usize, s: Sizes) {
    let interp = Interp::new(t);
    let mut g = Gen::new(seed, flavor);
    let half = t.scalar_const(&Rational64::new(1, 2)).unwrap_or_else(|_| t.scalar_const(&Rational64::new(1, 1)).unwrap());
    let rest = t.pred_scalar(&t.pred_orth(&t.pred_scale(&half, &t.pred_one(&t.unit()))));
    for round in 0..rounds {
        let a = g.ty(s.ty);
        let b = g.ty(s.ty);
        let c = g.ty(s.ty);
        let xa = vec![("x".to_string(), a.clone())];
        let xb = vec![("x".to_string(), b.clone())];
        let m = g.term(&xa, &b, s.term);
        let n = g.term(&xb, &c, s.term);
        let st = g.term(&[], &a, s.term);
        let phi = g.effect(&xb, s.effect);
        let chi = g.effect(&[("x".to_string(), c.clone())], s.effect);
        let oa = interp.object(&a).unwrap();
        let ob = interp.object(&b).unwrap();
        let f = interp.term(&x(&a), &m, &b).unwrap();
        let h = interp.term(&x(&b), &n, &c).unwrap();
        let state = interp.term(&Context::new(), &st, &a).unwrap();
        let q = interp.effect(&x(&b), &phi).unwrap();
        let k = interp.effect(&x(&c), &chi).unwrap();
        let at = format!("round {round}: {m} ; {n} ; {phi}");

        assert!(t.mor_eq(&t.compose(&f, &t.id(&oa)), &f), "{at}");
        assert!(t.mor_eq(&t.compose(&t.id(&ob), &f), &f), "{at}");
        assert!(t.mor_eq(&t.compose(&t.bang(&ob), &f), &t.bang(&oa)), "{at}");

        assert!(t.pred_eq(&t.apply_p(&t.compose(&h, &f), &k), &t.apply_p(&f, &t.apply_p(&h, &k))), "{at}");
        assert!(t.pred_eq(&t.apply_p(&t.id(&ob), &q), &q), "{at}");
        assert!(t.pred_eq(&t.apply_p(&f, &t.pred_orth(&q)), &t.pred_orth(&t.apply_p(&f, &q))), "{at}");
        assert!(t.pred_eq(&t.apply_p(&f, &t.pred_zero(&ob)), &t.pred_zero(&oa)), "{at}");
        assert!(t.pred_eq(&t.apply_p(&f, &t.pred_one(&ob)), &t.pred_one(&oa)), "{at}");
        assert!(
            t.pred_eq(&t.apply_p(&f, &t.pred_scale(&half, &q)), &t.pred_scale(&half, &t.apply_p(&f, &q))),
            "{at}"
        );

        let lhs = t.validity(&t.apply_p(&f, &q), &state);
        let rhs = t.validity(&q, &t.compose(&f, &state));
        assert!(t.scalar_eq(&lhs, &rhs), "{at}: validity {lhs:?} vs {rhs:?}");

        let qo = t.pred_orth(&q);
        let r = [q.clone(), t.pred_scale(&half, &qo), t.pred_scale(&rest, &qo)];
        let total = t.pred_ovee(&r[0], &t.pred_ovee(&r[1], &r[2]).unwrap()).unwrap();
        assert!(t.pred_eq(&total, &t.pred_one(&ob)), "{at}");
        let mb = t.meas(&ob, &r).unwrap();

        for p in [[1usize, 2, 0], [2, 0, 1], [1, 0, 2]] {
            let permuted: Vec<_> = p.iter().map(|&i| r[i].clone()).collect();
            let mut inverse = [0usize; 3];
            for (i, &pi) in p.iter().enumerate() {
                inverse[pi] = i;
            }
            let lhs = t.meas(&ob, &permuted).unwrap();
            assert!(t.mor_eq(&lhs, &t.compose(&injection_perm(t, &inverse), &mb)), "{at}: perm {p:?}");
        }

        let with_zero = [r[0].clone(), r[1].clone(), r[2].clone(), t.pred_zero(&ob)];
        let three = sum_all(t, &vec![t.unit(); 3]);
        let kappa1 = t.inl(&three, &t.unit());
        assert!(t.mor_eq(&t.meas(&ob, &with_zero).unwrap(), &t.compose(&kappa1, &mb)), "{at}");

        let merged = [t.pred_ovee(&r[0], &r[1]).unwrap(), r[2].clone()];
        let fold = cotuple_all(t, &[kappa(t, 2, 0), kappa(t, 2, 0), kappa(t, 2, 1)]);
        assert!(t.mor_eq(&t.meas(&ob, &merged).unwrap(), &t.compose(&fold, &mb)), "{at}");

        let pulled: Vec<_> = r.iter().map(|p| t.apply_p(&f, p)).collect();
        assert!(t.mor_eq(&t.compose(&mb, &f), &t.meas(&oa, &pulled).unwrap()), "{at}");

        let oc = interp.object(&c).unwrap();
        let ss = t.compose(&t.swap(&oa, &ob), &t.swap(&ob, &oa));
        assert!(t.mor_eq(&ss, &t.id(&t.tensor(&ob, &oa))), "{at}");
        let bc = t.sum(&ob, &oc);
        let back = t.cotuple(&t.tensor_mor(&t.id(&oa), &t.inl(&ob, &oc)), &t.tensor_mor(&t.id(&oa), &t.inr(&ob, &oc)));
        let ab_ac = t.sum(&t.tensor(&oa, &ob), &t.tensor(&oa, &oc));
        assert!(t.mor_eq(&t.compose(&t.dist_l(&oa, &ob, &oc), &back), &t.id(&ab_ac)), "{at}");
        assert!(t.mor_eq(&t.compose(&back, &t.dist_l(&oa, &ob, &oc)), &t.id(&t.tensor(&oa, &bc))), "{at}");
        let back_r = t.cotuple(&t.tensor_mor(&t.inl(&ob, &oc), &t.id(&oa)), &t.tensor_mor(&t.inr(&ob, &oc), &t.id(&oa)));
        assert!(t.mor_eq(&t.compose(&back_r, &t.dist_r(&ob, &oc, &oa)), &t.id(&t.tensor(&bc, &oa))), "{at}");

        let pl = t.apply_p(&t.inl(&ob, &oc), &t.pred_cotuple(&q, &k));
        let pr = t.apply_p(&t.inr(&ob, &oc), &t.pred_cotuple(&q, &k));
        assert!(t.pred_eq(&pl, &q) && t.pred_eq(&pr, &k), "{at}");
        let cot = t.cotuple(&t.compose(&h, &f), &t.id(&oc));
        assert!(t.mor_eq(&t.compose(&cot, &t.inl(&oa, &oc)), &t.compose(&h, &f)), "{at}");
    }
}

#[test]
fn set_backend_satisfies_the_triangle_axioms() {
    axioms(&SetBackend, Flavor::SHARP, 71, 200, Sizes { ty: 2, term: 3, effect: 3 });
}

#[test]
fn stochastic_backend_satisfies_the_triangle_axioms() {
    axioms(&StochasticBackend, Flavor::PROBABILISTIC, 72, 200, Sizes { ty: 2, term: 3, effect: 3 });
}

#[test]
fn quantum_backend_satisfies_the_triangle_axioms() {
    axioms(&QuantumBackend, Flavor::QUANTUM, 73, 120, Sizes { ty: 1, term: 3, effect: 3 });
}

#[test]
fn the_uninverted_permutation_fails_for_a_three_cycle() {
    let t = StochasticBackend;
    let third = t.scalar_const(&Rational64::new(1, 3)).unwrap();
    let sixth = t.scalar_const(&Rational64::new(1, 6)).unwrap();
    let half = t.scalar_const(&Rational64::new(1, 2)).unwrap();
    let one = t.pred_one(&t.unit());
    let r = [t.pred_scale(&third, &one), t.pred_scale(&sixth, &one), t.pred_scale(&half, &one)];
    let m = t.meas(&t.unit(), &r).unwrap();
    let p = [1usize, 2, 0];
    let permuted: Vec<_> = p.iter().map(|&i| r[i].clone()).collect();
    assert!(!t.mor_eq(&t.meas(&t.unit(), &permuted).unwrap(), &t.compose(&injection_perm(&t, &p), &m)));
}

#[test]
fn quantum_primitives_are_channels() {
    let q = QuantumBackend;
    let interp = Interp::new(&q);
    for (ctx, m, ty) in [
        ("(x : qbit)", "X x", "qbit"),
        ("(x : qbit)", "Z x", "qbit"),
        ("(x : qbit, y : qbit)", "E x y", "qbit * qbit"),
        ("()", "plus", "qbit"),
        ("(x : qbit)", "measure { proj(x, 1/3) -> inl unit | bot(proj(x, 1/3)) -> inr unit }", "I + I"),
        ("(x : qbit + qbit)", "case x of inl a -> X a | inr b -> b", "qbit"),
    ] {
        let ctx = qpel_core::parse::parse_context(ctx).unwrap();
        let m = qpel_core::parse::parse_term(m).unwrap();
        let ty = qpel_core::parse::parse_type(ty).unwrap();
        let f: Channel = interp.term(&ctx, &m, &ty).unwrap();
        assert!(is_channel(&f), "{m}");
    }
}

#[test]
fn generated_quantum_terms_are_channels() {
    let q = QuantumBackend;
    let interp = Interp::new(&q);
    let mut g = Gen::new(74, Flavor::QUANTUM);
    for _ in 0..100 {
        let vars = g.vars("v", 2, 1);
        let ty = g.ty(1);
        let m = g.term(&vars, &ty, 3);
        let f = interp.term(&Context(vars), &m, &ty).unwrap();
        assert!(is_channel(&f), "{m}");
    }
}

#[test]
fn set_embeds_into_stochastic() {
    let interp_s = Interp::new(&SetBackend);
    let interp_d = Interp::new(&StochasticBackend);
    let mut g = Gen::new(75, Flavor::SHARP);
    for _ in 0..200 {
        let vars = g.vars("v", 2, 2);
        let ty = g.ty(2);
        let m = g.term(&vars, &ty, 3);
        let ctx = Context(vars.clone());
        let f = interp_s.term(&ctx, &m, &ty).unwrap();
        let d = interp_d.term(&ctx, &m, &ty).unwrap();
        let embedded = qpel_semantics::backend::stochastic::Stoch::from_function(f.cod, &f.map);
        assert_eq!(embedded, d, "{m}");
        let phi = g.effect(&vars, 3);
        let p = interp_s.effect(&ctx, &phi).unwrap();
        let r = interp_d.effect(&ctx, &phi).unwrap();
        let lifted: Vec<_> = p.iter().map(|&b| qpel_semantics::effect::rat(b as i64, 1)).collect();
        assert_eq!(lifted, r, "{phi}");
    }
}
