use super::*;
use crate::fields::{Field, FunctionField, Kappa, MonomialField, PAdicRationals, Pvd, SubfieldSpec, ValuedField};
use crate::par::Mode;
use crate::ratfun::RationalFunction;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Q = BigRational;

fn qq(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn rat(k: &PAdicRationals, s: &str) -> RationalFunction<Q> {
    FunctionField::new(k.clone(), "x").parse(s).unwrap()
}

fn s23() -> SingularData<PAdicRationals> {
    SingularData::preset("2-3").unwrap()
}

// oracle: θ(a) = t(1 + a^{2n}) / ((1 + t a^n)(t + a^n)) in plain rationals
fn theta_direct(t: i64, n: i32, a: &Q) -> Q {
    let t = Q::from_integer(t.into());
    let an = a.pow(n);
    &t * (Q::one() + &an * &an) / ((Q::one() + &t * &an) * (&t + &an))
}

// oracle: p-adic valuation by repeated division
fn ord(p: i64, a: &Q) -> Option<i64> {
    if a.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let count = |mut n: BigInt| {
        let mut k = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            k += 1;
        }
        k
    };
    Some(count(a.numer().clone()) - count(a.denom().clone()))
}

#[test]
fn presets_satisfy_the_invariant() {
    for (name, ..) in PRESETS {
        assert!(SingularData::preset(name).is_ok(), "{name}");
    }
    // v_2(8) = 3 is not below 2·1
    assert!(SingularData::rational(&[2, 3], 24, 2).is_err());
    // t must be a non-unit everywhere
    assert!(SingularData::rational(&[2, 3], 2, 2).is_err());
    assert!(SingularData::preset("nope").is_err());
}

#[test]
fn theta_formula_and_values() {
    let s = s23();
    let k = s.field();
    let theta = build_theta(&s);
    assert_eq!(theta, rat(k, "6(1 + x^4)/((1 + 6x^2)(6 + x^2))"));
    for (a, want) in [(qq(1, 1), qq(12, 49)), (qq(2, 1), qq(51, 125)), (qq(1, 2), qq(51, 125)), (qq(2, 3), qq(97, 319))] {
        assert_eq!(theta.evaluate(k, &a).value().unwrap(), want);
        assert_eq!(theta_direct(6, 2, &a), want);
    }
    assert!(theta_is_symmetric(&s).unwrap());
    let c = theta.compose(k, &RationalFunction::constant(k, qq(2, 3))).unwrap();
    assert_eq!(c.constant_value(k), Some(qq(97, 319)));
}

#[test]
fn theta_case_table_on_small_grid() {
    let s = s23();
    let samples: Vec<Q> = (-30..=30).flat_map(|r| (1..=30).map(move |d| qq(r, d))).collect();
    let rep = verify_theta(&s, &samples, Mode::Parallel);
    assert!(rep.passed(), "{rep:?}");
    assert_eq!(rep.checked, samples.len() * 2);
    // the same table from plain rational arithmetic
    for a in &samples {
        let b = theta_direct(6, 2, a);
        for p in [2i64, 3] {
            let vb = ord(p, &b).unwrap();
            assert!(vb >= 0);
            if ord(p, a) == Some(0) {
                assert!(vb > 0);
            } else {
                let pb = BigInt::from(p);
                assert!(((b.numer() - b.denom()) % &pb).is_zero());
            }
        }
    }
}

#[test]
fn theta_over_three_primes() {
    let s = SingularData::preset("2-3-5").unwrap();
    let samples: Vec<Q> = (-20..=20).flat_map(|r| (1..=20).map(move |d| qq(r, d))).collect();
    assert!(verify_theta(&s, &samples, Mode::Sequential).passed());
}

#[test]
fn psi_examples() {
    let s = s23();
    let k = s.field();
    let x = rat(k, "x");
    let psi = build_psi(&x, &s).unwrap();
    assert_eq!(psi, rat(k, "x^2/(x^4 + 6)"));
    assert!(psi_identity(&x, &psi, &s));
    // both sides are 6x²/(x⁴+6)
    assert_eq!(psi.scale(k, &qq(6, 1)), rat(k, "6x^2/(x^4 + 6)"));
    assert_eq!(psi.evaluate(k, &qq(2, 1)).value().unwrap(), qq(2, 11));
    assert_eq!(psi.evaluate(k, &qq(1, 1)).value().unwrap(), qq(1, 7));
    let samples: Vec<Q> = (-10..=10).map(|i| qq(i, 1)).chain([qq(1, 4), qq(9, 2)]).collect();
    let rep = verify_psi(&x, &s, &samples, Mode::Sequential).unwrap();
    assert!(rep.passed(), "{rep:?}");
    // a wrong identity is caught
    assert!(!psi_identity(&x, &x, &s));
}

#[test]
fn rho_examples() {
    let s = s23();
    let k = s.field();
    let rho = build_rho(&rat(k, "2"), &rat(k, "3"), &s).unwrap();
    assert_eq!(rho.constant_value(k), Some(qq(929, 319)));
    assert_eq!((ord(2, &qq(929, 319)), ord(3, &qq(929, 319))), (Some(0), Some(0)));
    let rho = build_rho(&rat(k, "4"), &rat(k, "9"), &s).unwrap();
    let c = rho.constant_value(k).unwrap();
    assert_eq!((ord(2, &c), ord(3, &c)), (Some(0), Some(0)));

    let samples: Vec<Q> = (-12..=12).map(|i| qq(i, 1)).chain([qq(1, 6), qq(4, 9)]).collect();
    let phi = rat(k, "x^2 - 2");
    assert!(verify_rho(&phi, &phi, &s, &samples, Mode::Sequential).unwrap().passed());
    let rep = verify_rho(&rat(k, "2x"), &rat(k, "x + 3"), &s, &samples, Mode::Parallel).unwrap();
    assert!(rep.passed(), "{rep:?}");
    // θ∘(φ/φ) is a constant and never a pole
    assert!(build_rho(&rat(k, "x"), &rat(k, "0"), &s).is_err());
}

#[test]
fn rho_characteristic_sets() {
    let s = s23();
    let k = s.field();
    let points: Vec<Q> = [0, 1, 2, 3, 6, 9, 12].iter().map(|&i| qq(i, 1)).collect();
    let rep = verify_rho_characteristic(&rat(k, "x"), &rat(k, "x - 3"), &s, &points).unwrap();
    assert!(rep.passed(), "{rep:?}");
}

#[test]
fn separator_examples() {
    let s = s23();
    let k = s.field();
    let x = rat(k, "x");
    let sep = build_separator(&x, &s).unwrap();
    let at = |a: i64| sep.evaluate(k, &qq(a, 1)).value().unwrap();
    assert_eq!(ord(2, &at(2)), Some(1));
    assert_eq!(ord(2, &at(1)), Some(0));
    let samples: Vec<Q> = (-15..=15).flat_map(|r| [qq(r, 1), qq(r, 7), qq(7, r.max(1))]).collect();
    assert!(verify_separator(&x, &s, &samples, Mode::Parallel).unwrap().passed());
    let unit = build_separator(&rat(k, "5"), &s).unwrap().constant_value(k).unwrap();
    assert_eq!((ord(2, &unit), ord(3, &unit)), (Some(0), Some(0)));
}

fn gf4_pvd() -> Pvd<MonomialField> {
    let k = MonomialField::t_adic(Kappa::finite(2, 2).unwrap());
    let f = SubfieldSpec::parse(k.residue_field(), "GF(2)").unwrap();
    Pvd::new(k, f)
}

fn inseparable_pvd() -> Pvd<MonomialField> {
    let k = MonomialField::hahn(Kappa::rational(2, 1).unwrap());
    let f = SubfieldSpec::parse(k.residue_field(), "GF(2)(u^2)").unwrap();
    Pvd::new(k, f)
}

fn samples(k: &MonomialField, n: usize) -> Vec<<MonomialField as Field>::Elem> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    (0..n).map(|_| k.random_element(&mut rng, 3)).collect()
}

#[test]
fn finite_residue_witness() {
    let d = gf4_pvd();
    let k = &d.field;
    let w = notlocal_witness(&d).unwrap();
    assert_eq!(w.case, NotLocalCase::FiniteResidueField { q: 4 });
    assert_eq!(w.witness, FunctionField::new(k.clone(), "x").parse("1/(x^4 + x + 1)").unwrap());
    let a = k.parse("1/t").unwrap();
    let wa = w.witness.evaluate(k, &a).value().unwrap();
    assert_eq!(k.valuation_finite(&wa).unwrap(), crate::ordgroup::GroupElement::int(4));
    let rep = verify_notlocal(&d, &w, &samples(k, 200), 3, Mode::Parallel).unwrap();
    assert!(rep.passed(), "{rep:?}");
    assert!(rep.membership.depth().unwrap() <= 3);
    assert_eq!(rep.residue.checked, 4);
}

#[test]
fn inseparable_witness() {
    let d = inseparable_pvd();
    let k = &d.field;
    let w = notlocal_witness(&d).unwrap();
    assert_eq!(w.case, NotLocalCase::PurelyInseparable { p: 2, e: 1, c: "u".into() });
    assert_eq!(w.witness, FunctionField::new(k.clone(), "x").parse("1/(x^4 - u^2)").unwrap());
    let rep = verify_notlocal(&d, &w, &samples(k, 200), 3, Mode::Sequential).unwrap();
    assert!(rep.passed(), "{rep:?}");
}

#[test]
fn local_cases_are_rejected() {
    let k = MonomialField::hahn(Kappa::rational(2, 1).unwrap());
    let kappa = k.residue_field().clone();
    let sep = Pvd::new(k.clone(), SubfieldSpec::parse(&kappa, "GF(2)").unwrap());
    assert!(matches!(notlocal_witness(&sep), Err(crate::Error::Unsupported(_))));
    let whole = Pvd::valuation_ring(k);
    assert!(matches!(notlocal_witness(&whole), Err(crate::Error::Unsupported(_))));
}

#[test]
fn scan_finds_trace_and_norm() {
    let l = Kappa::finite(2, 2).unwrap();
    let m = SubfieldSpec::parse(&l, "GF(2)").unwrap();
    let b2 = field_map_scan(&l, &m, 2, 0, Mode::Parallel).unwrap();
    assert!(b2.contains("x^2 + x"), "{:?}", b2.found.iter().map(|f| &f.function).collect::<Vec<_>>());
    assert!(!b2.contains("x^3"));
    let b3 = field_map_scan(&l, &m, 3, 0, Mode::Parallel).unwrap();
    assert!(b3.contains("x^3"));
    let norm = b3.found.iter().find(|f| f.function == "x^3").unwrap();
    assert_eq!(norm.values, vec!["0", "1", "1", "1"]);
    assert_eq!(b3, field_map_scan(&l, &m, 3, 0, Mode::Sequential).unwrap());
}

#[test]
fn scan_with_full_target_accepts_everything() {
    let l = Kappa::finite(2, 1).unwrap();
    let m = SubfieldSpec::whole(&l);
    let r = field_map_scan(&l, &m, 2, 0, Mode::Sequential).unwrap();
    // with k = 0 only pole-free functions qualify; allow poles everywhere instead
    let all = field_map_scan(&l, &m, 2, 2, Mode::Sequential).unwrap();
    assert_eq!(all.found.len(), all.scanned);
    assert!(r.found.len() < r.scanned);
    assert!(r.constant_only_outside_trace_family());
    assert_eq!(r.constant_induced.constants, 2);
    // x² + x and x² + x + 1 vanish on GF(2) up to a constant
    assert!(r.constant_induced.trace_family >= 2);
}

#[test]
fn scan_bounds_are_enforced() {
    let l = Kappa::finite(2, 2).unwrap();
    let m = SubfieldSpec::parse(&l, "GF(2)").unwrap();
    assert!(matches!(field_map_scan(&l, &m, 5, 0, Mode::Sequential), Err(crate::Error::Resource(_))));
    let big = Kappa::finite(2, 7).unwrap();
    let m = SubfieldSpec::parse(&big, "GF(2)").unwrap();
    assert!(matches!(field_map_scan(&big, &m, 1, 0, Mode::Sequential), Err(crate::Error::Resource(_))));
    let inf = Kappa::rational(2, 1).unwrap();
    assert!(field_map_scan(&inf, &SubfieldSpec::whole(&inf), 1, 0, Mode::Sequential).is_err());
}

fn random_phi(rng: &mut ChaCha8Rng, k: &PAdicRationals) -> RationalFunction<Q> {
    use rand::Rng;
    let (dn, dd) = (rng.gen_range(0..=4usize), rng.gen_range(0..=2usize));
    let mut poly = |deg: usize| {
        let c: Vec<_> = (0..=deg).map(|_| k.random_element(rng, 3)).collect();
        crate::ratfun::Polynomial::new(k, c)
    };
    let (n, d) = (poly(dn), poly(dd));
    let n = if n.is_zero() { crate::ratfun::Polynomial::x(k) } else { n };
    let d = if d.is_zero() { crate::ratfun::Polynomial::one(k) } else { d };
    RationalFunction::normalize(k, n, d).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn psi_identity_for_random_phi(seed in any::<u64>()) {
        let s = s23();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_phi(&mut rng, s.field());
        let psi = build_psi(&phi, &s).unwrap();
        prop_assert!(psi_identity(&phi, &psi, &s));
    }

    #[test]
    fn rho_takes_the_minimum(seed in any::<u64>()) {
        let s = s23();
        let k = s.field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f1, f2) = (random_phi(&mut rng, k), random_phi(&mut rng, k));
        prop_assume!(f1.div(k, &f2).map(|r| !r.is_constant()).unwrap_or(false));
        let rho = build_rho(&f1, &f2, &s).unwrap();
        for _ in 0..10 {
            let a = k.random_element(&mut rng, 5);
            let (Some(e1), Some(e2), Some(r)) = (
                f1.evaluate(k, &a).value(), f2.evaluate(k, &a).value(), rho.evaluate(k, &a).value()
            ) else { continue };
            for p in [2, 3] {
                let m = match (ord(p, &e1), ord(p, &e2)) {
                    (None, x) | (x, None) => x,
                    (Some(x), Some(y)) => Some(x.min(y)),
                };
                prop_assert_eq!(ord(p, &r), m);
            }
        }
    }

    #[test]
    fn theta_is_one_mod_p_off_units(r in -500i64..500, d in 1i64..500) {
        let a = qq(r, d);
        let b = theta_direct(6, 2, &a);
        prop_assert!(!b.is_negative());
        let rep = verify_theta(&s23(), &[a], Mode::Sequential);
        prop_assert!(rep.passed());
    }
}
