use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> String {
    format!("{}/../../corpus/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(name: &str, src: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, src).unwrap();
    path
}

fn qpel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpel")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn rule_corpus_verifies_in_the_stochastic_backend() {
    let o = qpel(&["check", "--verify", "stochastic", "--no-timing", &corpus("rules.qpel"), &corpus("classical.qpel")]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("stochastic: true"));
}

#[test]
fn cloning_is_a_type_error() {
    let f = scratch("clone.qpel", "term twice (x : qbit) : qbit * qbit = x * x\n");
    let o = qpel(&["check", f.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("linear variables cannot be copied"), "{}", stdout(&o));
}

#[test]
fn unknown_rule_is_a_proof_error() {
    let f = scratch("rule.qpel", "lemma l (x : I) : x : I by { variable }\n");
    let o = qpel(&["check", f.to_str().unwrap()]);
    assert_eq!(code(&o), 4);
    assert!(stdout(&o).contains("unknown rule `variable`"), "{}", stdout(&o));
}

#[test]
fn misapplied_rule_is_a_proof_error() {
    let f = scratch("misapplied.qpel", "lemma l (x : I) : x : I by { unit }\n");
    assert_eq!(code(&qpel(&["check", f.to_str().unwrap()])), 4);
}

#[test]
fn syntax_error_is_a_parse_error() {
    let f = scratch("syntax.qpel", "term t (x : I) = x\n");
    let o = qpel(&["check", f.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("parse error at 1:16"), "{}", stdout(&o));
}

#[test]
fn the_earliest_stage_decides_the_exit_code() {
    let bad_proof = scratch("stage_proof.qpel", "lemma l (x : I) : x : I by { unit }\n");
    let bad_type = scratch("stage_type.qpel", "term t (x : qbit) : qbit * qbit = x * x\n");
    let o = qpel(&["check", bad_proof.to_str().unwrap(), bad_type.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
}

#[test]
fn verify_all_marks_qubit_lemmas_skipped_in_classical_backends() {
    let f = scratch("qubits.qpel", "lemma xx (q : qbit) : X (X q) = q : qbit by { qbit-xx }\n");
    let o = qpel(&["check", "--verify", "all", "--no-timing", f.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("    set: skipped (qubits)"), "{out}");
    assert!(out.contains("    stochastic: skipped (qubits)"), "{out}");
    assert!(out.contains("    quantum: true"), "{out}");
}

#[test]
fn packs_are_selected_by_flag() {
    let f = corpus("beta_iso.qpel");
    let o = qpel(&["check", "--rules", "core,qubit,scalars", &f]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("rule `beta-iso` belongs to the `beta-iso` pack, which is not enabled"));
    assert_eq!(code(&qpel(&["check", "--rules", "core,qubit,beta-iso,scalars", &f])), 0);
    assert_eq!(code(&qpel(&["check", "--rules", "core,nonsense", &f])), 1);
}

#[test]
fn json_reports_follow_input_order() {
    let files = [corpus("programs.qpel"), corpus("rules.qpel"), corpus("classical.qpel")];
    let mut args = vec!["check", "--format", "json", "--verify", "quantum"];
    args.extend(files.iter().map(String::as_str));
    let o = qpel(&args);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let paths: Vec<&str> = v["files"].as_array().unwrap().iter().map(|f| f["path"].as_str().unwrap()).collect();
    assert_eq!(paths, files.iter().map(String::as_str).collect::<Vec<_>>());
    assert!(v["files"][0]["time_ms"].is_u64());
    let lemma = v["files"][0]["declarations"]
        .as_array()
        .unwrap()
        .iter()
        .find(|d| d["name"] == "coin_fair" && d["kind"] == "lemma")
        .unwrap();
    assert_eq!(lemma["status"], "backend-verified");
    assert_eq!(lemma["backends"]["quantum"]["status"], "true");
}

#[test]
fn reports_are_deterministic_without_timing() {
    for format in ["text", "json"] {
        let args = ["check", "--format", format, "--verify", "all", "--no-timing", &corpus("rules.qpel"), &corpus("programs.qpel")];
        let a = qpel(&args);
        let b = qpel(&args);
        assert_eq!(a.stdout, b.stdout);
        assert!(!stdout(&a).contains("time_ms") && !stdout(&a).contains(" ms)"));
    }
}

#[test]
fn check_directives_evaluate_in_the_named_backends() {
    let o = qpel(&["check", "--no-timing", &corpus("programs.qpel")]);
    let out = stdout(&o);
    assert!(out.contains("check coin (line 18): backend-verified\n    set: skipped (the scalar 1/2)\n    stochastic: true\n    quantum: true\n"), "{out}");
    assert!(out.contains("check flip (line 19): backend-verified\n    set: true\n"), "{out}");
    let f = scratch("directive.qpel", "check nothing on set\n");
    assert_eq!(code(&qpel(&["check", f.to_str().unwrap()])), 3);
}

#[test]
fn eval_prints_denotations() {
    let f = corpus("programs.qpel");
    let cases = [
        ("set", "skip", "<>\n"),
        ("set", "flip", "inr<>\n"),
        ("stochastic", "coin", "inl<> : 1/2, inr<> : 1/2\n"),
        ("stochastic", "biased", "inl<> : 1/3, inr<> : 2/3\n"),
        ("quantum", "plus_state", "[[0.5,0.5],[0.5,0.5]]\n"),
        ("quantum", "minus_state", "[[0.5,-0.5],[-0.5,0.5]]\n"),
        ("quantum", "coin", "inl<> : [[0.5]]\ninr<> : [[0.5]]\n"),
    ];
    for (backend, decl, expected) in cases {
        let o = qpel(&["eval", "--backend", backend, &f, decl]);
        assert_eq!(code(&o), 0, "{decl}: {}", stderr(&o));
        assert_eq!(stdout(&o), expected, "{backend} {decl}");
    }
}

#[test]
fn eval_rejects_open_terms_and_missing_primitives() {
    let f = scratch("open.qpel", "term id (x : I) : I = x\n");
    let o = qpel(&["eval", "--backend", "set", f.to_str().unwrap(), "id"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("not closed"));
    let o = qpel(&["eval", "--backend", "stochastic", &corpus("programs.qpel"), "plus_state"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("does not support qubits"));
    let o = qpel(&["eval", "--backend", "set", &corpus("programs.qpel"), "coin"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("does not support the scalar 1/2"), "{}", stderr(&o));
}

#[test]
fn wp_reflects_projections() {
    let f = scratch(
        "wp.qpel",
        "term xq (q : qbit) : qbit = X q\n\
         term zq (q : qbit) : qbit = Z q\n\
         effect at0 (x : qbit) = proj(x, 0)\n\
         effect at_half (x : qbit) = proj(x, 1/2)\n\
         effect at_three_halves (q : qbit) = proj(q, 3/2)\n\
         term reflected (q : qbit) : qbit = q\n",
    );
    let f = f.to_str().unwrap();
    let o = qpel(&["wp", f, "xq", "at0"]);
    assert_eq!(stdout(&o), "[[0.5,0.5],[0.5,0.5]]\n");
    let o = qpel(&["wp", "--cross-check", f, "zq", "at_half"]);
    assert_eq!(code(&o), 0);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    let reference = qpel(&["wp", f, "reflected", "at_three_halves"]);
    assert_eq!(format!("{}\n", lines[0]), stdout(&reference));
    assert_eq!(lines[1], format!("direct: {}", lines[0]));
    assert!(lines[2].starts_with("max abs deviation: "));
}

#[test]
fn wp_rejects_shape_mismatches() {
    let o = qpel(&["wp", &corpus("wp.qpel"), "wp12", "wp1_post"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("shape mismatch"));
}
