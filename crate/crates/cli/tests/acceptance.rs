use num_rational::Rational64;
use qpel_core::derivation::Derivation;
use qpel_core::gen::{Flavor, Gen};
use qpel_core::mutate::mutate_goal;
use qpel_core::parse::print::{effect_to_string, module_to_string, term_to_string, type_to_string};
use qpel_core::parse::{parse_effect, parse_goal, parse_module, parse_term, parse_type, Decl, Module};
use qpel_core::session::{check_decl, check_module, Failure};
use qpel_core::subst::{alpha_eq_effect, alpha_eq_term, subst_effect, subst_term};
use qpel_core::syntax::{var, Angle, Context, Effect, Judgement, Term, Type};
use qpel_core::{Checker, Pack, Packs, ProofScript, Rule};
use qpel_semantics::dist::check_monad_laws;
use qpel_semantics::effect::*;
use qpel_semantics::{Interp, QuantumBackend, SetBackend, StochasticBackend, Triangle, Verdict};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;

const TOL: f64 = 1e-9;

enum Outcome {
    Pass(String),
    Fail(String),
    Unattainable(String),
}

use Outcome::*;

fn corpus_path(name: &str) -> String {
    format!("{}/../../corpus/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn load(name: &str) -> Module {
    parse_module(&std::fs::read_to_string(corpus_path(name)).unwrap()).unwrap()
}

/// The proof corpus with the packs each file is checked under.
fn proof_corpus() -> Vec<(&'static str, Packs)> {
    vec![("rules.qpel", Packs::default()), ("classical.qpel", Packs::default()), ("beta_iso.qpel", Packs::all())]
}

fn root_rule(s: &ProofScript) -> Option<Rule> {
    match s {
        ProofScript::Rule { rule, .. } => Some(*rule),
        _ => None,
    }
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn law_failures(r: &LawReport) -> Result<(), String> {
    ensure(r.passed(), format!("{}: {:?}", r.instance, r.failures()))
}

fn algebra_laws() -> Result<String, String> {
    let t = exhaustive_triples(&Boolean.elements().unwrap());
    law_failures(&check_algebra_laws(&Boolean, &t))?;
    law_failures(&check_monoid_laws(&Boolean, &t))?;
    let cases: Vec<_> = t.iter().flat_map(|(r, s, x)| [false, true].map(|y| (*r, *s, *x, y))).collect();
    law_failures(&check_module_laws(&SelfModule(Boolean), &cases))?;

    let chain = exhaustive_triples(&Chain3.elements().unwrap());
    law_failures(&check_algebra_laws(&Chain3, &chain))?;
    let mut cases = Vec::new();
    for r in [false, true] {
        for s in [false, true] {
            for x in 0..3u8 {
                for y in 0..3u8 {
                    cases.push((r, s, x, y));
                }
            }
        }
    }
    law_failures(&check_module_laws(&Chain3OverBoolean::default(), &cases))?;
    ensure(chain3_monoid_structures().is_empty(), "found a multiplication on the 3-chain")?;

    let samples = random_unit_triples(&mut ChaCha8Rng::seed_from_u64(1), 10_000);
    let unit = check_algebra_laws(&UnitInterval, &samples).merge(check_monoid_laws(&UnitInterval, &samples));
    law_failures(&unit)?;
    ensure(unit.laws.iter().all(|l| l.checked >= 10_000), "fewer than 10^4 samples per law")?;
    let cases: Vec<_> = samples.iter().map(|(x, y, z)| (z.clone(), x.clone(), x.clone(), y.clone())).collect();
    law_failures(&check_module_laws(&SelfModule(UnitInterval), &cases))?;

    let orth = check_algebra_laws(&OrthIdentity, &samples).failures();
    ensure(orth.contains(&"orth-unique"), format!("orth mutant: {orth:?}"))?;
    let lopsided = check_algebra_laws(&LopsidedSum, &samples).failures();
    ensure(lopsided.contains(&"ovee-commutative"), format!("sum mutant: {lopsided:?}"))?;
    law_failures(&check_algebra_laws(&MinProduct, &samples))?;
    let min = check_monoid_laws(&MinProduct, &samples).failures();
    ensure(min.iter().any(|l| l.starts_with("mul-distributes")), format!("product mutant: {min:?}"))?;
    Ok(format!(
        "Boolean and 3-chain exhaustive, [0,1] on 10^4 samples; mutants rejected by {} / {} / {}; \
         the 3-chain has no effect-monoid multiplication, so only its algebra and module suites apply",
        "orth-unique", "ovee-commutative", "mul-distributes"
    ))
}

fn monad_laws() -> Outcome {
    let r = (|| -> Result<String, String> {
        let halves = [rat(0, 1), rat(1, 2), rat(1, 1)];
        for n in 1..=4u8 {
            let carrier: Vec<u8> = (0..n).collect();
            let unit = check_monad_laws(&UnitInterval, &carrier, &halves);
            law_failures(&unit)?;
            ensure(unit.get("strengths-commute").is_some_and(|l| l.checked > 0), "strength commutativity unchecked")?;
            law_failures(&check_monad_laws(&Boolean, &carrier, &[false, true]))?;
        }
        Ok("substitute scalars [0,1] with weights {0,1/2,1} and Boolean pass on carriers 1..4, strengths commute".into())
    })();
    match r {
        Err(e) => Fail(e),
        Ok(_) if !chain3_monoid_structures().is_empty() => Fail("the 3-chain has a monoid structure but was not tested".into()),
        Ok(sub) => Unattainable(format!(
            "no effect-monoid multiplication exists on the 3-chain (exhaustive search over all tables), so D over it is undefined; {sub}"
        )),
    }
}

fn rule_coverage() -> Result<String, String> {
    let names: std::collections::BTreeSet<&str> = Rule::ALL.iter().map(|r| r.name()).collect();
    ensure(names.len() == Rule::ALL.len(), "duplicate rule names")?;
    let mut per_pack: BTreeMap<&str, usize> = BTreeMap::new();
    for r in Rule::ALL {
        *per_pack.entry(r.pack().name()).or_default() += 1;
    }
    ensure(
        per_pack.get("core") == Some(&67)
            && per_pack.get("qubit") == Some(&12)
            && per_pack.get("beta-iso") == Some(&1)
            && per_pack.get("scalars") == Some(&1),
        format!("inventory {per_pack:?}"),
    )?;
    let mut per_rule: BTreeMap<Rule, usize> = BTreeMap::new();
    let (mut mutants, mut survivors) = (0, Vec::new());
    for (file, packs) in proof_corpus() {
        let module = load(file);
        for r in check_module(&module, &packs, 6) {
            ensure(r.is_ok(), format!("{file}: {} rejected: {:?}", r.name, r.outcome.as_ref().err()))?;
        }
        for decl in &module.decls {
            let Decl::Lemma { name, goal, proofs, using, line } = decl else { continue };
            let rule = root_rule(&proofs[0]).ok_or(format!("{name} is not rooted at a rule"))?;
            *per_rule.entry(rule).or_default() += 1;
            let mutant = Decl::Lemma {
                name: name.clone(),
                goal: mutate_goal(goal),
                proofs: proofs.clone(),
                using: using.clone(),
                line: *line,
            };
            mutants += 1;
            if let Some(Ok(_)) = check_decl(&mut Checker::new(packs.clone()), &mutant) {
                survivors.push(name.clone());
            }
        }
    }
    let thin: Vec<_> = Rule::ALL.iter().filter(|r| per_rule.get(r).copied().unwrap_or(0) < 3).map(|r| r.name()).collect();
    ensure(thin.is_empty(), format!("fewer than 3 instances: {thin:?}"))?;
    ensure(survivors.is_empty(), format!("mutants accepted: {survivors:?}"))?;
    Ok(format!(
        "{} rules ({per_pack:?}), every rule has >= 3 accepted instances, {mutants} mutated conclusions all rejected",
        Rule::ALL.len()
    ))
}

fn lemma_derivations(file: &str, packs: &Packs) -> Vec<(String, Vec<Derivation>)> {
    check_module(&load(file), packs, 6)
        .into_iter()
        .filter(|r| r.kind == "lemma")
        .map(|r| (r.name, r.outcome.unwrap()))
        .collect()
}

fn sound_in<T: Triangle>(t: &T, exact: bool, allow_skips: bool) -> Result<(usize, usize, f64), String> {
    let interp = Interp::new(t);
    let (mut held, mut skipped, mut worst) = (0, 0, 0.0f64);
    for (file, packs) in proof_corpus() {
        for (name, ds) in lemma_derivations(file, &packs) {
            match interp.verify(&ds, true) {
                Verdict::Holds { deviation, .. } => {
                    held += 1;
                    worst = worst.max(deviation);
                }
                Verdict::Skipped(what) if allow_skips => {
                    let _ = what;
                    skipped += 1;
                }
                Verdict::Skipped(what) => return Err(format!("{}: {name} skipped ({what})", t.name())),
                Verdict::Fails { judgement, deviation, reason } => {
                    return Err(format!("{}: {name} fails at {judgement} ({deviation:e}, {reason:?})", t.name()))
                }
            }
        }
    }
    ensure(if exact { worst == 0.0 } else { worst <= TOL }, format!("{}: deviation {worst:e}", t.name()))?;
    Ok((held, skipped, worst))
}

fn soundness() -> Result<String, String> {
    let (set, set_skip, _) = sound_in(&SetBackend, true, true)?;
    let (st, st_skip, _) = sound_in(&StochasticBackend, true, true)?;
    let (q, _, worst) = sound_in(&QuantumBackend, false, false)?;
    ensure(set >= 100 && st >= 150, "too few classical lemmas evaluated")?;
    Ok(format!(
        "every judgement of every corpus derivation holds: set {set} exact ({set_skip} need qubits or fractions), \
         stochastic {st} exact ({st_skip} need qubits), quantum {q} with max deviation {worst:.1e}"
    ))
}

const CLONING: &[&str] = &[
    "(x : I) : x * x : I * I",
    "(q : qbit) : q * q : qbit * qbit",
    "(q : qbit) : E q q : qbit * qbit",
    "(q : qbit) : E (X q) (Z q) : qbit * qbit",
    "(p : qbit * qbit) : let x * y = p in p : qbit * qbit",
    "(p : I * I) : let x * y = p in x * x : I * I",
    "(c : I + I) : case c of inl a -> c | inr b -> c : I + I",
    "(c : qbit + qbit, q : qbit) : case c of inl a -> q * q | inr b -> b * q : qbit * qbit",
    "(q : qbit) : measure { proj(q, 0) -> q | bot(proj(q, 0)) -> q } : qbit",
    "(q : qbit) : inl (q * X q) : qbit * qbit + I",
    "(q : qbit, r : qbit) : let u * v = E q r in u * (v * q) : qbit * (qbit * qbit)",
    "(q : qbit) : X q * Z (X q) : qbit * qbit",
];

fn linearity() -> Result<String, String> {
    let checker = Checker::new(Packs::default());
    let tc = checker.type_checker();
    for src in CLONING {
        let j = parse_goal(src).map_err(|e| e.to_string())?.expand()[0].clone();
        match tc.check_judgement(&j) {
            Ok(_) => return Err(format!("accepted {src}")),
            Err(e) => ensure(e.to_string().contains("no-cloning"), format!("{src}: {e}"))?,
        }
    }
    let mut g = Gen::new(31, Flavor::QUANTUM);
    let (mut accepted, mut rejected) = (0, 0);
    for i in 0..300 {
        let vars = g.vars("c", 3, 1);
        let ty = g.ty(2);
        let t = if i % 2 == 0 {
            g.term(&vars, &ty, 3)
        } else {
            let mut t = g.raw_term(3);
            for (k, (n, _)) in vars.iter().enumerate() {
                t = subst_term(&t, ["a", "b", "x"][k], &Term::Var(n.clone()));
            }
            t
        };
        let before = tc.check_term(&Context(vars.clone()), &t, &ty).is_ok();
        for pos in 0..=vars.len() {
            let mut wider = vars.clone();
            wider.insert(pos, ("w".to_string(), g.ty(2)));
            let after = tc.check_term(&Context(wider), &t, &ty).is_ok();
            ensure(before == after, format!("weakening changed the verdict on {}", term_to_string(&t)))?;
        }
        if before {
            accepted += 1;
        } else {
            rejected += 1;
        }
    }
    ensure(accepted > 50 && rejected > 50, format!("unbalanced weakening suite: {accepted}/{rejected}"))?;
    Ok(format!(
        "{} cloning programs rejected as no-cloning; weakening at every position kept the verdict on {accepted} typed and {rejected} untyped terms",
        CLONING.len()
    ))
}

struct Sizes {
    vars: usize,
    ty: u32,
    term: u32,
    effect: u32,
}

fn substitution_in<T: Triangle>(t: &T, flavor: Flavor, seed: u64, pairs: usize, s: Sizes) -> Result<f64, String> {
    let interp = Interp::new(t);
    let mut g = Gen::new(seed, flavor);
    let (mut done, mut worst) = (0, 0.0f64);
    while done < pairs {
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
        done += 1;
        let mut outer = delta.clone();
        outer.extend(gamma.clone());
        let err = |e: qpel_semantics::SemError| e.to_string();
        let direct = interp.effect(&Context(outer), &subst_effect(&phi, "x", &m)).map_err(err)?;
        let post = interp.effect(&Context(inner), &phi).map_err(err)?;
        let fm = interp.term(&Context(gamma), &m, &a).map_err(err)?;
        let f = t.tensor_mor(&t.id(&interp.context(&delta).map_err(err)?), &fm);
        let pre = t.apply_p(&f, &post);
        worst = worst.max(t.pred_distance(&pre, &direct));
        ensure(t.pred_eq(&pre, &direct), format!("{}: [{} / x] {}", t.name(), term_to_string(&m), effect_to_string(&phi)))?;
    }
    Ok(worst)
}

fn substitution() -> Result<String, String> {
    let set = substitution_in(&SetBackend, Flavor::SHARP, 161, 100, Sizes { vars: 2, ty: 2, term: 3, effect: 3 })?;
    let st = substitution_in(&StochasticBackend, Flavor::PROBABILISTIC, 162, 100, Sizes { vars: 2, ty: 2, term: 3, effect: 3 })?;
    let q = substitution_in(&QuantumBackend, Flavor::QUANTUM, 163, 100, Sizes { vars: 1, ty: 1, term: 3, effect: 3 })?;
    ensure(set == 0.0 && st == 0.0 && q <= TOL, "deviation")?;
    Ok(format!("100 pairs with x free per backend; set and stochastic exact, quantum max deviation {q:.1e}"))
}

const EQUATIONAL: [Rule; 7] = [
    Rule::QbitCzX,
    Rule::QbitCzZ,
    Rule::QbitXProj,
    Rule::QbitZProj,
    Rule::QbitXX,
    Rule::QbitZZ,
    Rule::QbitXzZx,
];

fn qubit_gap_terms(ctx: &Context, l: &Term, r: &Term, ty: &Type) -> f64 {
    let q = QuantumBackend;
    let i = Interp::new(&q);
    q.mor_distance(&i.term(ctx, l, ty).unwrap(), &i.term(ctx, r, ty).unwrap())
}

fn qubit_gap_effects(ctx: &Context, l: &Effect, r: &Effect) -> f64 {
    let q = QuantumBackend;
    let i = Interp::new(&q);
    q.pred_distance(&i.effect(ctx, l).unwrap(), &i.effect(ctx, r).unwrap())
}

/// A subtree made only of typing judgements.
fn typing_only(d: &Derivation) -> bool {
    matches!(d.conclusion, Judgement::Typing { .. }) && d.premises.iter().all(typing_only)
}

fn qubit_rules() -> Result<String, String> {
    let mut seen: BTreeMap<Rule, usize> = BTreeMap::new();
    let interp_q = QuantumBackend;
    let interp = Interp::new(&interp_q);
    for (name, ds) in lemma_derivations("rules.qpel", &Packs::default()) {
        let rule = ds[0].rule;
        if !EQUATIONAL.contains(&rule) {
            continue;
        }
        for d in &ds {
            let side_conditions = d.premises.iter().all(|p| typing_only(p));
            ensure(d.rule == rule && side_conditions, format!("{name}: not a single rule application"))?;
        }
        match interp.verify(&ds, true) {
            Verdict::Holds { deviation, .. } if deviation <= TOL => {}
            _ => return Err(format!("{name} is not true in the quantum backend")),
        }
        *seen.entry(rule).or_default() += 1;
    }
    let missing: Vec<_> = EQUATIONAL.iter().filter(|r| !seen.contains_key(r)).map(|r| r.name()).collect();
    ensure(missing.is_empty(), format!("no depth-1 instance of {missing:?}"))?;

    let mut g = Gen::new(81, Flavor::QUANTUM);
    let angles: Vec<Angle> = [(0, 1), (1, 4), (1, 2), (2, 3), (1, 1), (7, 4)]
        .iter()
        .map(|&(n, d)| Angle::new(Rational64::new(n, d)))
        .collect();
    let qq = Type::tensor(Type::Qbit, Type::Qbit);
    let mut checks = 0;
    for _ in 0..20 {
        let left = vec![("p".to_string(), Type::Qbit)];
        let right = vec![("r".to_string(), Type::Qbit)];
        let m = g.term(&left, &Type::Qbit, 3);
        let n = g.term(&right, &Type::Qbit, 3);
        let ctx = Context(left.iter().chain(&right).cloned().collect());
        let mut terms = vec![
            (
                Term::cz(Term::x(m.clone()), n.clone()),
                Term::let_pair("s", "t", Term::cz(m.clone(), n.clone()), Term::pair(Term::x(var("s")), Term::z(var("t")))),
                qq.clone(),
            ),
            (
                Term::cz(Term::z(m.clone()), n.clone()),
                Term::let_pair("s", "t", Term::cz(m.clone(), n.clone()), Term::pair(Term::z(var("s")), var("t"))),
                qq.clone(),
            ),
            (Term::x(Term::x(m.clone())), m.clone(), Type::Qbit),
            (Term::z(Term::z(m.clone())), m.clone(), Type::Qbit),
        ];
        for (l, r, ty) in terms.drain(..) {
            let c = if ty == Type::Qbit { Context(left.clone()) } else { ctx.clone() };
            ensure(qubit_gap_terms(&c, &l, &r, &ty) <= TOL, format!("{} = {}", term_to_string(&l), term_to_string(&r)))?;
            checks += 1;
        }
        let c = Context(left.clone());
        for a in &angles {
            let pairs = [
                (Effect::proj(Term::x(m.clone()), a.clone()), Effect::proj(m.clone(), a.neg())),
                (Effect::proj(Term::z(m.clone()), a.clone()), Effect::proj(m.clone(), a.minus_pi())),
                (Effect::proj(Term::x(Term::z(m.clone())), a.clone()), Effect::proj(Term::z(Term::x(m.clone())), a.clone())),
            ];
            for (l, r) in pairs {
                ensure(qubit_gap_effects(&c, &l, &r) <= TOL, format!("{} == {}", effect_to_string(&l), effect_to_string(&r)))?;
                checks += 1;
            }
        }
    }
    Ok(format!(
        "{} depth-1 corpus derivations cover all 7 rules and are true in quantum; {checks} generated instances agree within 1e-9",
        seen.values().sum::<usize>()
    ))
}

fn wp_lemma() -> Result<String, String> {
    let path = corpus_path("wp.qpel");
    let module = load("wp.qpel");
    let (mut pairs, mut measures, mut worst) = (0, 0, 0.0f64);
    for decl in &module.decls {
        let Decl::Term { name, body, .. } = decl else { continue };
        let post = format!("{name}_post");
        if module.find(&post).is_none() {
            continue;
        }
        let out = Command::new(env!("CARGO_BIN_EXE_qpel")).args(["wp", "--cross-check", &path, name, &post]).output().unwrap();
        let text = String::from_utf8(out.stdout).unwrap();
        ensure(out.status.code() == Some(0), format!("{name}: exit {:?} {text}", out.status.code()))?;
        let dev: f64 = text
            .lines()
            .find_map(|l| l.strip_prefix("max abs deviation: "))
            .ok_or(format!("{name}: no deviation reported"))?
            .parse()
            .map_err(|e| format!("{name}: {e}"))?;
        ensure(dev <= TOL, format!("{name}: deviation {dev:e}"))?;
        worst = worst.max(dev);
        pairs += 1;
        if term_to_string(body).contains("measure") {
            measures += 1;
        }
    }
    ensure(pairs >= 20 && measures >= 5, format!("{pairs} pairs, {measures} with measure"))?;

    let q = QuantumBackend;
    let interp = Interp::new(&q);
    let mut identities = 0;
    for decl in &module.decls {
        let Decl::Effect { ctx, body, .. } = decl else { continue };
        let [(x, a)] = ctx.0.as_slice() else { continue };
        let e = interp.effect(ctx, body).map_err(|e| e.to_string())?;
        let pre = interp.wp(ctx, &var(x), a, &e).map_err(|e| e.to_string())?;
        ensure(q.pred_distance(&pre, &e) <= TOL, format!("wp(id) differs on {}", effect_to_string(body)))?;
        identities += 1;
    }
    Ok(format!(
        "{pairs} pairs ({measures} with measure) cross-checked by `qpel wp`, max deviation {worst:.1e}; wp(id) = id on {identities} effects"
    ))
}

fn beta_iso() -> Result<String, String> {
    let module = load("beta_iso.qpel");
    let without = check_module(&module, &Packs::default(), 6);
    ensure(!Packs::default().contains(Pack::BetaIso), "beta-iso enabled by default")?;
    for r in &without {
        match &r.outcome {
            Err(Failure::Type(m)) | Err(Failure::Proof(m)) if m.contains("not enabled") => {}
            other => return Err(format!("{} without the pack: {other:?}", r.name)),
        }
    }
    let q = QuantumBackend;
    let interp = Interp::new(&q);
    let with = lemma_derivations("beta_iso.qpel", &Packs::all());
    for (name, ds) in &with {
        match interp.verify(ds, true) {
            Verdict::Holds { deviation, .. } if deviation <= TOL => {}
            v => return Err(format!("{name}: {v:?}")),
        }
    }
    ensure(with.len() >= 3, "too few instances")?;
    Ok(format!(
        "{} instances rejected without the pack, accepted with it, and true in quantum",
        with.len()
    ))
}

fn round_trip() -> Result<String, String> {
    let dir = format!("{}/../../corpus", env!("CARGO_MANIFEST_DIR"));
    let mut files = 0;
    let strip = |m: &Module| -> Vec<String> { m.decls.iter().map(|d| format!("{:?}", without_line(d))).collect() };
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("qpel") {
            continue;
        }
        let m = parse_module(&std::fs::read_to_string(&path).unwrap()).map_err(|e| e.to_string())?;
        let again = parse_module(&module_to_string(&m)).map_err(|e| format!("{}: {e}", path.display()))?;
        ensure(strip(&m) == strip(&again), format!("{} does not round trip", path.display()))?;
        files += 1;
    }
    let mut g = Gen::new(1007, Flavor::QUANTUM);
    for _ in 0..1000 {
        let t = g.raw_term(4);
        let back = parse_term(&term_to_string(&t)).map_err(|e| e.to_string())?;
        ensure(alpha_eq_term(&t, &back), term_to_string(&t))?;
        let e = g.raw_effect(4);
        let back = parse_effect(&effect_to_string(&e)).map_err(|e| e.to_string())?;
        ensure(alpha_eq_effect(&e, &back), effect_to_string(&e))?;
        let ty = g.ty(3);
        ensure(parse_type(&type_to_string(&ty)).ok() == Some(ty.clone()), type_to_string(&ty))?;
    }
    Ok(format!("{files} corpus files and 1000 random terms, effects and types print and parse back"))
}

fn without_line(d: &Decl) -> Decl {
    let mut d = d.clone();
    match &mut d {
        Decl::Term { line, .. } | Decl::Effect { line, .. } | Decl::Lemma { line, .. } | Decl::Check { line, .. } => *line = 0,
    }
    d
}

fn outcome(r: Result<String, String>) -> Outcome {
    match r {
        Ok(s) => Pass(s),
        Err(e) => Fail(e),
    }
}

fn guarded(f: impl FnOnce() -> Outcome) -> Outcome {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Fail(format!("panicked: {msg}"))
    })
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, Box<dyn FnOnce() -> Outcome>)> = vec![
        ("algebra laws", Box::new(|| outcome(algebra_laws()))),
        ("monad laws", Box::new(monad_laws)),
        ("rule coverage", Box::new(|| outcome(rule_coverage()))),
        ("soundness", Box::new(|| outcome(soundness()))),
        ("linearity", Box::new(|| outcome(linearity()))),
        ("semantic substitution", Box::new(|| outcome(substitution()))),
        ("equational qubit rules", Box::new(|| outcome(qubit_rules()))),
        ("wp cross-check", Box::new(|| outcome(wp_lemma()))),
        ("beta-iso pack", Box::new(|| outcome(beta_iso()))),
        ("round trip", Box::new(|| outcome(round_trip()))),
    ];
    let mut failed = Vec::new();
    for (i, (title, run)) in criteria.into_iter().enumerate() {
        let (status, detail) = match guarded(run) {
            Pass(d) => ("PASS", d),
            Unattainable(d) => ("UNATTAINABLE", d),
            Fail(d) => {
                failed.push(i + 1);
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {title}: {status}: {detail}", i + 1);
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
