use super::*;
use crate::fields::{Field, FunctionField, Kappa, MonomialField, PAdicRationals, Pvd, SubfieldSpec, ValueIdeal, ValuedField};
use crate::ordgroup::{q2, GroupElement};
use crate::ratfun::RationalFunction;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn padic(p: u64) -> PAdicRationals {
    PAdicRationals::new(p).unwrap()
}

fn rat<V: ValuedField>(k: &V, s: &str) -> RationalFunction<V::Elem> {
    FunctionField::new(k.clone(), "x").parse(s).unwrap()
}

const THETA: &str = "6(1 + x^4)/((1 + 6x^2)(6 + x^2))";

#[test]
fn reciprocal_fails_at_five() {
    let k = padic(5);
    let v = intr_member(&rat(&k, "1/x"), &Domain::ValuationRing(k.clone()), &EvalSet::WholeRing, 3).unwrap();
    assert_eq!(v.witness(), Some(&k.from_i64(5)));
}

#[test]
fn fermat_quotient_needs_one_refinement() {
    let k = padic(5);
    let phi = rat(&k, "(x^5 - x)/5");
    let d = Domain::ValuationRing(k.clone());
    let v = intr_member(&phi, &d, &EvalSet::WholeRing, 3).unwrap();
    assert!(v.is_in(), "{v:?}");
    assert_eq!(v.depth(), Some(2));
    let shallow = intr_member(&phi, &d, &EvalSet::WholeRing, 1).unwrap();
    assert!(shallow.is_unknown());
    // over the whole field it fails at 1/5
    let whole = intr_member(&phi, &d, &EvalSet::WholeField, 3).unwrap();
    assert!(whole.is_out());
}

#[test]
fn theta_is_integral_on_both_primes() {
    let d = Domain::intersection(vec![padic(2), padic(3)]).unwrap();
    let theta = rat(&padic(2), THETA);
    let v = intr_member(&theta, &d, &EvalSet::WholeField, 3).unwrap();
    assert!(v.is_in(), "{v:?}");
}

#[test]
fn binomial_over_semilocal_ring() {
    let d = Domain::intersection(vec![padic(2), padic(3)]).unwrap();
    let k = padic(2);
    assert!(intr_member(&rat(&k, "(x^2 - x)/2"), &d, &EvalSet::WholeRing, 3).unwrap().is_in());
    let v = intr_member(&rat(&k, "x/3"), &d, &EvalSet::WholeRing, 3).unwrap();
    let a = v.witness().unwrap();
    assert!(d.contains(a));
    assert!(!d.contains(&k.div(a, &k.from_i64(3)).unwrap()));
}

#[test]
fn poles_in_the_ring_are_detected() {
    let k = padic(3);
    let d = Domain::ValuationRing(k.clone());
    let phi = rat(&k, "1/(x^2 - 4)");
    let v = intr_member(&phi, &d, &EvalSet::WholeRing, 2).unwrap();
    // a point near the pole at 2 is found before the pole itself
    let a = v.witness().unwrap();
    assert!(!k.in_valuation_ring(&phi.evaluate(&k, a).value().unwrap()));
}

fn hahn_pvd() -> (MonomialField, Domain<MonomialField>) {
    let k = MonomialField::hahn(Kappa::rational(2, 1).unwrap());
    let f = SubfieldSpec::parse(k.residue_field(), "GF(2)").unwrap();
    (k.clone(), Domain::Pvd(Pvd::new(k, f)))
}

#[test]
fn hahn_pvd_membership() {
    let (k, d) = hahn_pvd();
    let phi = rat(&k, "1 + t/(x^2 + x + u)");
    let v = intr_member(&phi, &d, &EvalSet::WholeField, 3).unwrap();
    assert!(v.is_in(), "{v:?}");
    assert_eq!(dichotomy_check(&phi, &k).unwrap(), Dichotomy::Zero);

    let psi = rat(&k, "x^2/(x^2 + t)");
    let v = intr_member(&psi, &d, &EvalSet::WholeField, 3).unwrap();
    assert!(v.is_out(), "{v:?}");
    assert!(!d.contains(&psi.evaluate(&k, v.witness().unwrap()).value().unwrap()));
    assert!(matches!(dichotomy_check(&psi, &k).unwrap(), Dichotomy::Violation { .. }));

    assert_eq!(dichotomy_check(&rat(&k, "t"), &k).unwrap(), Dichotomy::StrictlyPositive);
}

#[test]
fn pvd_ring_constrains_unit_residues() {
    let k = MonomialField::t_adic(Kappa::finite(2, 2).unwrap());
    let f = SubfieldSpec::parse(k.residue_field(), "GF(2)").unwrap();
    let d = Domain::Pvd(Pvd::new(k.clone(), f));
    let sq = rat(&k, "x^2 + t x");
    assert!(intr_member(&sq, &d, &EvalSet::WholeRing, 3).unwrap().is_in());
    assert!(intr_member(&sq, &d, &EvalSet::WholeField, 3).unwrap().is_out());
    // u maps D onto a residue outside GF(2)
    assert!(intr_member(&rat(&k, "u x"), &d, &EvalSet::WholeRing, 3).unwrap().is_out());
}

#[test]
fn finite_list_evaluation() {
    let k = padic(5);
    let d = Domain::ValuationRing(k.clone());
    let list = EvalSet::FiniteList(vec![k.from_i64(1), k.from_i64(2)]);
    assert!(intr_member(&rat(&k, "1/x"), &d, &list, 1).unwrap().is_in());
    let list = EvalSet::FiniteList(vec![k.from_i64(1), k.from_i64(10)]);
    assert_eq!(intr_member(&rat(&k, "1/x"), &d, &list, 1).unwrap().witness(), Some(&k.from_i64(10)));
}

#[test]
fn value_ideals() {
    let k = padic(5);
    let d = Domain::ValuationRing(k.clone());
    let m = ValueIdeal::maximal(1);
    assert!(intr_ideal_member(&rat(&k, "5x"), &m, &d, &EvalSet::WholeRing, 3).unwrap().is_in());
    let v = intr_ideal_member(&rat(&k, "x"), &m, &d, &EvalSet::WholeRing, 3).unwrap();
    assert!(v.is_out());
    assert!(intr_ideal_member(&rat(&k, "x^5 - x"), &m, &d, &EvalSet::WholeRing, 3).unwrap().is_in());
    let m2 = ValueIdeal::power(2);
    assert!(intr_ideal_member(&rat(&k, "x^5 - x"), &m2, &d, &EvalSet::WholeRing, 3).unwrap().is_out());
}

#[test]
fn pointed_and_mstar() {
    let k = padic(5);
    let d = Domain::ValuationRing(k.clone());
    let e = EvalSet::WholeRing;
    let x = rat(&k, "x");
    assert_eq!(ideal_member(&x, &IdealSpec::pointed(k.from_i64(5)), &d, &e, 1).unwrap(), Some(true));
    assert_eq!(ideal_member(&x, &IdealSpec::pointed(k.from_i64(1)), &d, &e, 1).unwrap(), Some(false));
    assert!(ideal_member(&rat(&k, "1/x"), &IdealSpec::pointed(k.zero()), &d, &e, 1).is_err());
    assert_eq!(ideal_member(&x, &IdealSpec::MStar, &d, &e, 1).unwrap(), Some(false));

    let k2 = padic(2);
    let d2 = Domain::ValuationRing(k2.clone());
    assert_eq!(ideal_member(&rat(&k2, THETA), &IdealSpec::MStar, &d2, &e, 1).unwrap(), Some(true));
}

#[test]
fn characteristic_sets() {
    let k = padic(5);
    let d = Domain::ValuationRing(k.clone());
    let fam: Vec<_> = [5, 1, 10].iter().map(|&a| IdealSpec::pointed(k.from_i64(a))).collect();
    let e = EvalSet::WholeRing;
    assert_eq!(characteristic_set(&rat(&k, "x"), &fam, &d, &e, 1).unwrap().members, vec![0, 2]);
    assert_eq!(characteristic_set(&rat(&k, "0"), &fam, &d, &e, 1).unwrap().members, vec![0, 1, 2]);
}

#[test]
fn rank_two_reciprocal() {
    let k = crate::fields::Lex2Field::new(Kappa::finite(3, 1).unwrap());
    let d = Domain::ValuationRing(k.clone());
    let v = intr_member(&rat(&k, "t1/x"), &d, &EvalSet::WholeRing, 2).unwrap();
    // t1/t2^n is integral for every n, t1/t1^2 is not
    let a = v.witness().expect("out");
    assert!(!k.in_valuation_ring(&k.div(&k.parse("t1").unwrap(), a).unwrap()));
    assert!(intr_member(&rat(&k, "t1 x"), &d, &EvalSet::WholeRing, 2).unwrap().is_in());
}

#[test]
fn dichotomy_requires_divisible_group() {
    let k = padic(3);
    assert!(dichotomy_check(&rat(&k, "x"), &k).is_err());
}

#[test]
fn dichotomy_violation_points() {
    let k = MonomialField::hahn(Kappa::finite(2, 1).unwrap());
    let g = |n, d| GroupElement::scalar(q2(n, d));
    match dichotomy_check(&rat(&k, "x"), &k).unwrap() {
        Dichotomy::Violation { at, value } => assert!(value.is_negative() && at < g(0, 1)),
        other => panic!("{other:?}"),
    }
    match dichotomy_check(&rat(&k, "x^2/(x^2 + t)"), &k).unwrap() {
        Dichotomy::Violation { at, value } => assert_eq!((at, value), (g(1, 2), g(0, 1))),
        other => panic!("{other:?}"),
    }
}

fn random_phi(rng: &mut ChaCha8Rng, k: &PAdicRationals) -> RationalFunction<BigRational> {
    let (dn, dd) = (rng.gen_range(0..4), rng.gen_range(0..3));
    let mut poly = |deg: usize| {
        let c: Vec<_> = (0..=deg).map(|_| k.random_element(rng, 2)).collect();
        crate::ratfun::Polynomial::new(k, c)
    };
    let (n, d) = (poly(dn), poly(dd));
    let d = if d.is_zero() { crate::ratfun::Polynomial::one(k) } else { d };
    RationalFunction::normalize(k, n, d).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn verdicts_are_sound(seed in any::<u64>()) {
        let k = padic(3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_phi(&mut rng, &k);
        let d = Domain::ValuationRing(k.clone());
        let v = intr_member(&phi, &d, &EvalSet::WholeRing, 3).unwrap();
        match &v {
            Verdict::CertifiedIn { .. } => {
                for _ in 0..50 {
                    let a = k.random_element(&mut rng, 4);
                    if k.in_valuation_ring(&a) {
                        let b = phi.evaluate(&k, &a).value();
                        prop_assert!(b.map_or(false, |b| k.in_valuation_ring(&b)), "{}", k.format(&a));
                    }
                }
            }
            Verdict::CertifiedOut { witness, .. } => {
                prop_assert!(k.in_valuation_ring(witness));
                let b = phi.evaluate(&k, witness).value();
                prop_assert!(b.map_or(true, |b| !k.in_valuation_ring(&b)));
            }
            Verdict::Unknown { .. } => {}
        }
    }
}
