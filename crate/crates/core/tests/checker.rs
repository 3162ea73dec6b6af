use qpel_core::parse::{parse_goal, parse_script};
use qpel_core::{Checker, Packs, ProofError, Rule};

fn run(packs: Packs, goal: &str, script: &str) -> Result<Vec<qpel_core::Derivation>, ProofError> {
    run_using(packs, goal, script, &[])
}

fn run_using(packs: Packs, goal: &str, script: &str, hints: &[&str]) -> Result<Vec<qpel_core::Derivation>, ProofError> {
    let g = parse_goal(goal).unwrap();
    let s = parse_script(script).unwrap();
    let mut c = Checker::new(packs);
    c.set_hints(hints.iter().map(|h| parse_script(h).unwrap()).collect());
    c.check_goal(&g, &[s])
}

fn ok(goal: &str, script: &str) {
    let ds = run(Packs::all(), goal, script).unwrap_or_else(|e| panic!("{goal}: {e}"));
    let checker = Checker::new(Packs::all());
    for d in ds {
        checker
            .check(&d.to_script(), &d.conclusion)
            .unwrap_or_else(|e| panic!("re-check of {goal}: {e}"));
    }
}

fn bad(goal: &str, script: &str) -> ProofError {
    match run(Packs::all(), goal, script) {
        Ok(_) => panic!("accepted {goal} by {script}"),
        Err(e) => e,
    }
}

#[test]
fn measure_one() {
    ok("() : measure { 1 -> unit } = unit : I", "measure-1");
}

#[test]
fn beta_tensor_and_sym() {
    ok("(m : I, n : I) : let x * y = m * n in x * y = m * n : I * I", "beta-tensor");
    ok("(m : I, n : I) : m * n = let x * y = m * n in x * y : I * I", "sym { beta-tensor }");
    let e = bad("(m : I, n : I) : m * n = let x * y = m * n in x * y : I * I", "sym { sym { beta-tensor } }");
    assert!(matches!(e.root(), ProofError::NoMatch { rule: Rule::BetaTensor, .. }), "{e}");
}

#[test]
fn search_finds_ortho() {
    ok("() : 1 <= 1/3 o+ bot(1/3)", "auto");
    ok("(x : I + I) : 0 <= caseE x of inl a -> 1 | inr b -> 0", "auto(1)");
    ok("(q : qbit) : proj(q, 1/2) o+ bot(proj(q, 1/2)) == 1", "auto");
}

#[test]
fn search_rejects_false_inequality() {
    let e = bad(
        "(x : I + I) : caseE x of inl a -> 1 | inr b -> 0 <= bot(caseE x of inl a -> 1 | inr b -> 0)",
        "auto",
    );
    assert!(matches!(e, ProofError::SearchFailed { .. }), "{e}");
}

#[test]
fn measure_typing_discharges_obligation() {
    ok("() : measure { 1/2 -> inl unit | bot(1/2) -> inr unit } : I + I", "auto");
    ok("(q : qbit) : measure { proj(q, 0) -> inl unit | bot(proj(q, 0)) -> inr unit } : I + I", "auto");
}

#[test]
fn qubit_pack_can_be_disabled() {
    let e = run(Packs::new(&[]), "(q : qbit) : X (X q) = q : qbit", "qbit-xx").unwrap_err();
    assert!(e.to_string().contains("qubit"), "{e}");
    ok("(q : qbit) : X (X q) = q : qbit", "qbit-xx");
}

#[test]
fn beta_iso_needs_its_pack() {
    let goal = "(q : qbit) : caseE measure { 1/2 -> inl unit | bot(1/2) -> inr unit } of inl a -> 1 | inr b -> 0 \
                == (1/2 . (caseE inl unit of inl a -> 1 | inr b -> 0)) o+ (bot(1/2) . (caseE inr unit of inl a -> 1 | inr b -> 0))";
    let script = "beta-iso [var = z, body = caseE z of inl a -> 1 | inr b -> 0, scalar = 1/2, left = inl unit, right = inr unit]";
    let ds = run_using(Packs::all(), goal, script, &[script]).unwrap();
    assert_eq!(ds.len(), 2);
    let packs = Packs::parse("qubit,scalars").unwrap();
    let e = run_using(packs, goal, script, &[script]).unwrap_err();
    assert!(e.to_string().contains("`beta-iso` pack"), "{e}");
}

#[test]
fn exchange_is_explicit_in_emitted_derivations() {
    ok("(a : I, q : qbit, b : I) : let x * y = a * b in q : qbit", "auto");
}
