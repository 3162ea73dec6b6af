use nalgebra::DMatrix;
use num_complex::Complex64;
use qpel_core::parse::{parse_context, parse_effect, parse_term, parse_type};
use qpel_core::syntax::{Angle, Context, Effect, Term, Type};
use qpel_semantics::backend::quantum::{proj_matrix, Blocks};
use qpel_semantics::effect::rat;
use qpel_semantics::interp::labels;
use qpel_semantics::{Interp, QuantumBackend, SetBackend, StochasticBackend, Triangle};

fn term(ctx: &str, m: &str, ty: &str) -> (Context, Term, Type) {
    (parse_context(ctx).unwrap(), parse_term(m).unwrap(), parse_type(ty).unwrap())
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn fair_coin_in_the_stochastic_backend() {
    let (ctx, m, ty) = term("()", "measure { 1/2 -> inl unit | 1/2 -> inr unit }", "I + I");
    let f = Interp::new(&StochasticBackend).term(&ctx, &m, &ty).unwrap();
    assert_eq!(f.rows, 1);
    assert_eq!(f.row(0), &[rat(1, 2), rat(1, 2)]);
    assert_eq!(labels(&ty).unwrap(), vec!["inl<>", "inr<>"]);
}

#[test]
fn variable_denotes_the_identity() {
    let (ctx, m, ty) = term("(x : (I + I) * (I + I))", "x", "(I + I) * (I + I)");
    let f = Interp::new(&StochasticBackend).term(&ctx, &m, &ty).unwrap();
    assert_eq!(f, StochasticBackend.id(&4));
    let g = Interp::new(&SetBackend).term(&ctx, &m, &ty).unwrap();
    assert_eq!(g, SetBackend.id(&4));
}

#[test]
fn pauli_x_denotes_the_bit_flip_channel() {
    let (ctx, m, ty) = term("(x : qbit)", "X x", "qbit");
    let q = QuantumBackend;
    let f = Interp::new(&q).term(&ctx, &m, &ty).unwrap();
    let rho: Blocks = vec![DMatrix::from_row_slice(2, 2, &[c(0.7, 0.0), c(0.1, 0.2), c(0.1, -0.2), c(0.3, 0.0)])];
    let out = f.apply(&rho);
    let want = DMatrix::from_row_slice(2, 2, &[c(0.3, 0.0), c(0.1, -0.2), c(0.1, 0.2), c(0.7, 0.0)]);
    assert!((&out[0] - want).norm() < 1e-12);
}

#[test]
fn case_effect_is_the_left_indicator() {
    let ctx = parse_context("(x : I + I)").unwrap();
    let e = parse_effect("caseE x of inl a -> 1 | inr b -> 0").unwrap();
    let p = Interp::new(&StochasticBackend).effect(&ctx, &e).unwrap();
    assert_eq!(p, vec![rat(1, 1), rat(0, 1)]);
}

#[test]
fn orthosupplement_of_plus_projection_is_minus_projection() {
    let ctx = parse_context("(x : qbit)").unwrap();
    let e = parse_effect("bot(proj(x, 0))").unwrap();
    let p = Interp::new(&QuantumBackend).effect(&ctx, &e).unwrap();
    let minus = DMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(-0.5, 0.0), c(-0.5, 0.0), c(0.5, 0.0)]);
    assert!((&p[0] - minus).norm() < 1e-12);
}

#[test]
fn plus_has_full_validity_for_its_projection() {
    let q = QuantumBackend;
    let (ctx, m, ty) = term("()", "plus", "qbit");
    let s = Interp::new(&q).term(&ctx, &m, &ty).unwrap();
    assert!((q.validity(&vec![proj_matrix(&Angle::zero())], &s) - 1.0).abs() < 1e-12);
    let rho = s.apply(&[DMatrix::from_element(1, 1, c(1.0, 0.0))]);
    assert!((rho[0].trace() - c(1.0, 0.0)).norm() < 1e-12);
    assert_eq!(rho[0].rank(1e-9), 1);
}

#[test]
fn unit_in_the_set_backend() {
    let (ctx, m, ty) = term("()", "unit", "I");
    let f = Interp::new(&SetBackend).term(&ctx, &m, &ty).unwrap();
    assert_eq!(f.map, vec![0]);
}

#[test]
fn false_inequality_is_false() {
    let ctx = parse_context("(x : I)").unwrap();
    let j = qpel_core::Judgement::leq(&ctx, Effect::one(), Effect::Zero);
    assert!(!Interp::new(&StochasticBackend).truth(&j).unwrap().holds);
}

#[test]
fn two_thirds_is_not_below_its_orthosupplement() {
    let ctx = Context::new();
    let j = qpel_core::Judgement::leq(&ctx, Effect::constant(2, 3), Effect::orth(Effect::constant(2, 3)));
    assert!(!Interp::new(&StochasticBackend).truth(&j).unwrap().holds);
}

#[test]
fn let_and_case_bookkeeping() {
    let s = StochasticBackend;
    let i = Interp::new(&s);
    let (ctx, m, ty) = term("(p : (I + I) * (I + I))", "let x * y = p in y * x", "(I + I) * (I + I)");
    assert_eq!(i.term(&ctx, &m, &ty).unwrap(), s.swap(&2, &2));
    let (ctx, m, ty) = term(
        "(u : I + I, c : I + I)",
        "case c of inl a -> u | inr b -> measure { 1/2 -> inl unit | 1/2 -> inr unit }",
        "I + I",
    );
    let f = i.term(&ctx, &m, &ty).unwrap();
    assert_eq!(f.row(0), &[rat(1, 1), rat(0, 1)]);
    assert_eq!(f.row(1), &[rat(1, 2), rat(1, 2)]);
    assert_eq!(f.row(2), &[rat(0, 1), rat(1, 1)]);
    assert_eq!(f.row(3), &[rat(1, 2), rat(1, 2)]);
}
