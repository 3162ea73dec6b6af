use num_rational::BigRational;
use qpel_semantics::dist::{check_monad_laws, Monad};
use qpel_semantics::effect::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn unit_samples(seed: u64, n: usize) -> Vec<Triple<BigRational>> {
    random_unit_triples(&mut ChaCha8Rng::seed_from_u64(seed), n)
}

fn assert_passes(r: &LawReport) {
    assert!(r.passed(), "{r}");
}

#[test]
fn boolean_laws_hold_exhaustively() {
    let t = exhaustive_triples(&Boolean.elements().unwrap());
    assert_passes(&check_algebra_laws(&Boolean, &t));
    assert_passes(&check_monoid_laws(&Boolean, &t));
    let cases: Vec<_> = t.iter().flat_map(|(r, s, x)| [false, true].map(|y| (*r, *s, *x, y))).collect();
    assert_passes(&check_module_laws(&SelfModule(Boolean), &cases));
}

#[test]
fn chain_laws_hold_exhaustively() {
    let t = exhaustive_triples(&Chain3.elements().unwrap());
    let r = check_algebra_laws(&Chain3, &t);
    assert_passes(&r);
    assert_eq!(r.get("ovee-associative").unwrap().checked, 27);
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
    assert_passes(&check_module_laws(&Chain3OverBoolean::default(), &cases));
}

#[test]
fn unit_interval_laws_hold_on_random_samples() {
    let t = unit_samples(1, 10_000);
    let r = check_algebra_laws(&UnitInterval, &t).merge(check_monoid_laws(&UnitInterval, &t));
    assert_passes(&r);
    assert!(r.laws.iter().all(|l| l.checked >= 10_000));
    let cases: Vec<_> = t.iter().map(|(x, y, z)| (z.clone(), x.clone(), x.clone(), y.clone())).collect();
    assert_passes(&check_module_laws(&SelfModule(UnitInterval), &cases));
}

#[test]
fn orth_identity_mutant_is_rejected_by_orth_uniqueness() {
    let r = check_algebra_laws(&OrthIdentity, &unit_samples(2, 10_000));
    assert_eq!(r.failures(), vec!["orth-unique", "perp-one-is-zero"], "{r}");
}

#[test]
fn lopsided_sum_mutant_is_rejected_by_commutativity() {
    let r = check_algebra_laws(&LopsidedSum, &unit_samples(3, 10_000));
    assert_eq!(r.failures(), vec!["ovee-commutative", "ovee-associative"], "{r}");
}

#[test]
fn min_product_mutant_is_rejected_by_distributivity() {
    let t = unit_samples(4, 10_000);
    assert_passes(&check_algebra_laws(&MinProduct, &t));
    let r = check_monoid_laws(&MinProduct, &t);
    assert_eq!(r.failures(), vec!["mul-distributes-right", "mul-distributes-left"], "{r}");
}

#[test]
fn the_chain_carries_no_effect_monoid_structure() {
    assert!(chain3_monoid_structures().is_empty());
}

#[test]
fn meet_on_the_chain_is_not_distributive() {
    let meet = ChainTable([[0, 0, 0], [0, 1, 2], [0, 2, 2]]);
    let r = check_monoid_laws(&meet, &exhaustive_triples(&[0u8, 1, 2]));
    assert!(r.failures().contains(&"mul-distributes-right"), "{r}");
}

#[test]
fn homomorphisms_into_the_unit_interval() {
    let pairs: Vec<_> = [false, true].iter().flat_map(|&x| [(x, false), (x, true)]).collect();
    let embed = |b: &bool| if *b { rat(1, 1) } else { rat(0, 1) };
    assert_passes(&check_homomorphism(&Boolean, &UnitInterval, embed, &pairs));
    let halve = |c: &u8| rat(*c as i64, 2);
    let chain_pairs: Vec<_> = (0..3u8).flat_map(|x| (0..3u8).map(move |y| (x, y))).collect();
    assert_passes(&check_homomorphism(&Chain3, &UnitInterval, halve, &chain_pairs));
    let bad = |c: &u8| rat(*c as i64, 3);
    let r = check_homomorphism(&Chain3, &UnitInterval, bad, &chain_pairs);
    assert_eq!(r.failures(), vec!["hom-preserves-orth"]);
}

#[test]
fn monad_laws_over_the_unit_interval_on_small_carriers() {
    let weights = [rat(0, 1), rat(1, 2), rat(1, 1)];
    for n in 1..=4u8 {
        let carrier: Vec<u8> = (0..n).collect();
        assert_passes(&check_monad_laws(&UnitInterval, &carrier, &weights));
    }
}

#[test]
fn monad_laws_over_the_booleans() {
    for n in 1..=4u8 {
        let carrier: Vec<u8> = (0..n).collect();
        assert_passes(&check_monad_laws(&Boolean, &carrier, &[false, true]));
    }
}

#[test]
fn monad_laws_with_thirds_on_two_points() {
    let weights = [rat(0, 1), rat(1, 3), rat(2, 3), rat(1, 1)];
    assert_passes(&check_monad_laws(&UnitInterval, &[0u8, 1], &weights));
}

#[test]
fn strength_pairs_with_a_point() {
    let m = Monad::new(&UnitInterval);
    let d = m.from_weights([(0u8, rat(1, 3)), (1, rat(2, 3))]).unwrap();
    let s = m.strength(&'a', &d);
    assert_eq!(m.at(&s, &('a', 1)), rat(2, 3));
    assert_eq!(m.at(&s, &('b', 1)), rat(0, 1));
    assert_eq!(m.mass(&s), Some(rat(1, 1)));
}

#[test]
fn reports_render_as_json_and_text() {
    let r = check_algebra_laws(&OrthIdentity, &unit_samples(5, 200));
    let j = r.to_json();
    assert_eq!(j["instance"], "mutant orth(x) = x");
    assert_eq!(j["laws"]["orth-unique"]["status"], "fail");
    assert_eq!(j["laws"]["ovee-zero"]["status"], "pass");
    assert_eq!(j["laws"]["ovee-zero"]["checked"], 200);
    let text = r.to_string();
    assert!(text.lines().any(|l| l.contains("orth-unique") && l.contains("FAIL at")));
}
