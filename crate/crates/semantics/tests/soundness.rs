use qpel_core::parse::{parse_module, Module};
use qpel_core::rules::Pack;
use qpel_core::session::check_module;
use qpel_core::{Packs, Rule};
use qpel_semantics::{Interp, QuantumBackend, SetBackend, StochasticBackend, Triangle, Verdict};
use std::collections::BTreeMap;

fn load(name: &str) -> Module {
    let path = format!("{}/../../corpus/{name}", env!("CARGO_MANIFEST_DIR"));
    parse_module(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[derive(Default)]
struct Tally {
    held: BTreeMap<Rule, usize>,
    skipped: usize,
    worst: f64,
    failures: Vec<String>,
}

impl Tally {
    fn total(&self) -> usize {
        self.held.values().sum()
    }
}

fn run<T: Triangle>(t: &T, files: &[&str], packs: Packs) -> Tally {
    let interp = Interp::new(t);
    let mut tally = Tally::default();
    for file in files {
        for r in check_module(&load(file), &packs, 6) {
            let ds = r.outcome.unwrap_or_else(|e| panic!("{}: {e}", r.name));
            let Some(root) = ds.first().map(|d| d.rule) else { continue };
            match interp.verify(&ds, true) {
                Verdict::Holds { deviation, .. } => {
                    *tally.held.entry(root).or_default() += 1;
                    tally.worst = tally.worst.max(deviation);
                }
                Verdict::Skipped(_) => tally.skipped += 1,
                Verdict::Fails { judgement, deviation, reason } => {
                    tally.failures.push(format!("{}: {judgement} ({deviation}) {reason:?}", r.name))
                }
            }
        }
    }
    tally
}

const CORPUS: &[&str] = &["rules.qpel", "classical.qpel"];

fn thin_core_rules(t: &Tally, at_least: usize) -> Vec<&'static str> {
    Rule::ALL
        .iter()
        .filter(|r| r.pack() == Pack::Core && t.held.get(r).copied().unwrap_or(0) < at_least)
        .map(|r| r.name())
        .collect()
}

#[test]
fn rule_corpus_is_true_in_the_set_backend() {
    let t = run(&SetBackend, CORPUS, Packs::default());
    assert!(t.failures.is_empty(), "{}", t.failures.join("\n"));
    assert_eq!(t.worst, 0.0);
    assert!(t.total() > 150, "held {} skipped {}", t.total(), t.skipped);
    assert_eq!(thin_core_rules(&t, 1), Vec::<&str>::new());
}

#[test]
fn rule_corpus_is_true_in_the_stochastic_backend() {
    let t = run(&StochasticBackend, CORPUS, Packs::default());
    assert!(t.failures.is_empty(), "{}", t.failures.join("\n"));
    assert_eq!(t.worst, 0.0);
    assert_eq!(thin_core_rules(&t, 3), Vec::<&str>::new());
}

#[test]
fn rule_corpus_is_true_in_the_quantum_backend() {
    let t = run(&QuantumBackend, CORPUS, Packs::default());
    assert!(t.failures.is_empty(), "{}", t.failures.join("\n"));
    assert_eq!(t.skipped, 0);
    assert!(t.worst <= 1e-9);
    assert_eq!(thin_core_rules(&t, 3), Vec::<&str>::new());
}

#[test]
fn beta_iso_corpus_is_true_in_the_quantum_backend() {
    let t = run(&QuantumBackend, &["beta_iso.qpel"], Packs::all());
    assert!(t.failures.is_empty(), "{}", t.failures.join("\n"));
    assert_eq!(t.total(), 3);
}

#[test]
fn mutated_conclusions_are_refuted_or_ill_formed() {
    use qpel_core::mutate::mutate_goal;
    use qpel_core::parse::Decl;
    let interp = Interp::new(&StochasticBackend);
    let (mut refuted, mut ill_formed, mut held, mut skipped) = (0, 0, 0, 0);
    for file in CORPUS {
        for decl in load(file).decls {
            let Decl::Lemma { goal, .. } = decl else { continue };
            let mutant = mutate_goal(&goal);
            let mut verdict = Ok(true);
            for j in mutant.expand() {
                match interp.truth(&j) {
                    Ok(t) if t.holds => {}
                    Ok(_) => verdict = Ok(false),
                    Err(e) => verdict = Err(e),
                }
            }
            match verdict {
                Ok(true) => held += 1,
                Ok(false) => refuted += 1,
                Err(qpel_semantics::SemError::Unsupported { .. }) => skipped += 1,
                Err(_) => ill_formed += 1,
            }
        }
    }
    eprintln!("refuted {refuted} ill-formed {ill_formed} held {held} skipped {skipped}");
    assert!(refuted >= 20, "refuted {refuted} ill-formed {ill_formed} held {held}");
    assert!(ill_formed > held);
}
