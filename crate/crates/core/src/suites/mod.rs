//! Seeded verification suites. Sample `i` draws from its own ChaCha stream
//! of the run seed, so reports do not depend on scheduling or thread count.

mod gen;

use std::fmt;
use std::str::FromStr;

use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::constructions::{
    build_psi, notlocal_witness, psi_identity, verify_notlocal, verify_psi_table, verify_rho, verify_rho_characteristic, verify_theta,
    SingularData,
};
use crate::error::{Error, Result};
use crate::fields::{Field, FunctionField, Kappa, MonomialField, PAdicRationals, Pvd, SubfieldSpec, ValuedField};
use crate::intr::{dichotomy_check, ideal_member, intr_member, Dichotomy, Domain, EvalSet, IdealSpec};
use crate::newton::{minval_poly, minval_rat, predict, slopes_check};
use crate::ordgroup::{q2, GroupElement, Val};
use crate::par::{self, Mode};
use crate::ratfun::RationalFunction;
use crate::report::CheckReport;

pub use gen::{grid, integral, random_poly, random_rat, sample_rng};

pub const SCHEMA: &str = "ivrf/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Envelope,
    Gauss,
    Predict,
    Slopes,
    PsiIdentity,
    Theta,
    Rho,
    MStar,
    Witnesses,
    Dichotomy,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Envelope,
        Suite::Gauss,
        Suite::Predict,
        Suite::Slopes,
        Suite::PsiIdentity,
        Suite::Theta,
        Suite::Rho,
        Suite::MStar,
        Suite::Witnesses,
        Suite::Dichotomy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Envelope => "envelope",
            Suite::Gauss => "gauss",
            Suite::Predict => "predict",
            Suite::Slopes => "slopes",
            Suite::PsiIdentity => "psi-identity",
            Suite::Theta => "theta",
            Suite::Rho => "rho",
            Suite::MStar => "mstar",
            Suite::Witnesses => "witnesses",
            Suite::Dichotomy => "dichotomy",
        }
    }

    /// Sample count when none is configured. For `theta` this is the grid
    /// bound on numerators and denominators.
    pub fn default_samples(self) -> usize {
        match self {
            Suite::Envelope | Suite::Gauss | Suite::MStar => 500,
            Suite::Predict => 10_000,
            Suite::Slopes | Suite::Theta | Suite::Dichotomy => 200,
            Suite::PsiIdentity => 100,
            Suite::Rho | Suite::Witnesses => 1000,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
            Error::Config(format!("unknown suite {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub samples: Option<usize>,
    pub depth: u32,
    pub mode: Mode,
    /// Singular data preset for the `θ`, `ψ`, `ρ` suites.
    pub preset: String,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, samples: None, depth: 3, mode: Mode::Parallel, preset: "2-3".into() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema: &'static str,
    pub suite: String,
    pub seed: u64,
    pub samples: usize,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

pub fn run(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let n = cfg.samples.unwrap_or_else(|| suite.default_samples());
    let checks = match suite {
        Suite::Envelope => envelope(n, cfg),
        Suite::Gauss => gauss(n, cfg),
        Suite::Predict => predictions(n, cfg),
        Suite::Slopes => slopes(n, cfg),
        Suite::PsiIdentity => psi_suite(n, cfg)?,
        Suite::Theta => theta_suite(n, cfg)?,
        Suite::Rho => rho_suite(n, cfg)?,
        Suite::MStar => mstar(n, cfg)?,
        Suite::Witnesses => witnesses(n, cfg)?,
        Suite::Dichotomy => dichotomy(n, cfg)?,
    };
    Ok(SuiteReport {
        schema: SCHEMA,
        suite: suite.name().into(),
        seed: cfg.seed,
        samples: n,
        passed: checks.iter().all(|c| c.passed()),
        checks,
    })
}

fn padic(p: u64) -> PAdicRationals {
    PAdicRationals::new(p).expect("prime")
}

fn gf4_t_adic() -> MonomialField {
    MonomialField::t_adic(Kappa::finite(2, 2).expect("GF(4)"))
}

fn random_gamma(rng: &mut ChaCha8Rng) -> GroupElement {
    use rand::Rng;
    GroupElement::scalar(q2(rng.gen_range(-20..=20), rng.gen_range(1..=6)))
}

// the minimum over the lines v(a_i) + iγ, straight from the coefficients
fn direct_minimum<V: ValuedField>(k: &V, f: &crate::ratfun::Polynomial<V::Elem>, g: &GroupElement) -> GroupElement {
    f.coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, a)| k.valuation(a).finite().map(|v| v.clone() + g.scale_int(i as i64)))
        .min()
        .expect("nonzero polynomial")
}

fn envelope_case<V: ValuedField>(k: &V, rng: &mut ChaCha8Rng) -> CheckReport {
    let mut r = CheckReport::new("envelope");
    let f = random_poly(rng, k, 8, 3);
    let pl = minval_poly(&f, k).expect("nonzero");
    for _ in 0..100 {
        let g = random_gamma(rng);
        let (got, want) = (pl.eval(&g), direct_minimum(k, &f, &g));
        r.check(
            got == want,
            "minval_f(γ) = min_i v(a_i) + iγ",
            || format!("f = {}, γ = {g}", f.format(k, "x")),
            || format!("{got} vs {want}"),
        );
    }
    r
}

fn envelope(n: usize, cfg: &SuiteConfig) -> Vec<CheckReport> {
    let (k1, k2) = (padic(5), gf4_t_adic());
    let a = par::map_range(cfg.mode, n, |i| envelope_case(&k1, &mut sample_rng(cfg.seed, i)));
    let b = par::map_range(cfg.mode, n, |i| envelope_case(&k2, &mut sample_rng(cfg.seed, n + i)));
    vec![CheckReport::collect("envelope PAdicQ(5)", a), CheckReport::collect("envelope TAdic(GF(4))", b)]
}

fn gauss_case<V: ValuedField>(k: &V, rng: &mut ChaCha8Rng) -> CheckReport {
    let mut r = CheckReport::new("gauss");
    let (f, g) = (random_poly(rng, k, 6, 3), random_poly(rng, k, 6, 3));
    let lhs = minval_poly(&f.mul(k, &g), k).expect("nonzero");
    let rhs = minval_poly(&f, k).and_then(|a| a.add(&minval_poly(&g, k)?));
    r.check(
        rhs.as_ref() == Ok(&lhs),
        "minval_fg = minval_f + minval_g",
        || format!("f = {}, g = {}", f.format(k, "x"), g.format(k, "x")),
        || format!("{lhs} vs {rhs:?}"),
    );
    r
}

fn gauss(n: usize, cfg: &SuiteConfig) -> Vec<CheckReport> {
    let (k1, k2) = (padic(5), gf4_t_adic());
    let parts = par::map_range(cfg.mode, n, |i| {
        let mut rng = sample_rng(cfg.seed, i);
        if i % 2 == 0 {
            gauss_case(&k1, &mut rng)
        } else {
            gauss_case(&k2, &mut rng)
        }
    });
    vec![CheckReport::collect("gauss", parts)]
}

fn nonzero<V: ValuedField>(rng: &mut ChaCha8Rng, k: &V, height: u32) -> V::Elem {
    loop {
        let a = k.random_element(rng, height);
        if !k.is_zero(&a) {
            return a;
        }
    }
}

fn predict_case<V: ValuedField>(k: &V, rng: &mut ChaCha8Rng) -> CheckReport {
    let mut r = CheckReport::new("predict");
    let f = RationalFunction::from_poly(k, random_poly(rng, k, 6, 3));
    let a = nonzero(rng, k, 3);
    let sample = |f: &RationalFunction<V::Elem>| format!("f = {}, a = {}", f.format(k, "x"), k.format(&a));
    let p = predict(&f, &a, k).expect("nonzero f and a");
    let observed = k.valuation(&f.evaluate(k, &a).value().expect("polynomial"));
    let bound = observed >= Val::Finite(p.predicted.clone());
    r.check(bound, "v(f(a)) ≥ minval_f(v(a))", || sample(&f), || format!("{observed} < {}", p.predicted));
    let equal = observed == Val::Finite(p.predicted.clone());
    r.check(equal == p.exact, "equality iff the local polynomial does not vanish at the residue", || sample(&f), || {
        format!("observed {observed}, predicted {}, exact {}", p.predicted, p.exact)
    });
    // quotients: a nonvanishing pair of local polynomials pins the value
    let phi = random_rat(rng, k, 4, 3, 3);
    let p = predict(&phi, &a, k).expect("nonzero φ and a");
    if p.exact {
        r.check(p.is_consistent(), "v(φ(a)) = minval_φ(v(a)) when both local polynomials are nonzero", || sample(&phi), || {
            format!("{p:?}")
        });
    } else {
        r.skip();
    }
    r
}

fn predictions(n: usize, cfg: &SuiteConfig) -> Vec<CheckReport> {
    let (k1, k2) = (padic(3), gf4_t_adic());
    let parts = par::map_range(cfg.mode, n, |i| {
        let mut rng = sample_rng(cfg.seed, i);
        if i % 2 == 0 {
            predict_case(&k1, &mut rng)
        } else {
            predict_case(&k2, &mut rng)
        }
    });
    vec![CheckReport::collect("predict", parts)]
}

fn slopes(n: usize, cfg: &SuiteConfig) -> Vec<CheckReport> {
    let k = padic(2);
    let parts = par::map_range(cfg.mode, n, |i| {
        let mut rng = sample_rng(cfg.seed, i);
        let mut r = CheckReport::new("slopes");
        let phi = random_rat(&mut rng, &k, 5, 3, 3);
        let t = nonzero(&mut rng, &k, 4);
        let pl = minval_rat(&phi, &k).expect("nonzero");
        let g = k.valuation_finite(&t).expect("nonzero");
        let want = (pl.slope_left(&g), pl.slope_right(&g));
        let got = slopes_check(&phi, &t, &k);
        r.check(
            got.as_ref() == Ok(&want),
            "local-polynomial degree differences equal the envelope slopes",
            || format!("φ = {}, t = {}", phi.format(&k, "x"), k.format(&t)),
            || format!("{got:?} vs {want:?}"),
        );
        r
    });
    vec![CheckReport::collect("slopes", parts)]
}

fn psi_suite(n: usize, cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let s = SingularData::preset(&cfg.preset)?;
    let k = s.field();
    let parts = par::map_range(cfg.mode, n, |i| -> Result<(CheckReport, CheckReport)> {
        let mut rng = sample_rng(cfg.seed, i);
        let phi = random_rat(&mut rng, k, 4, 2, 3);
        let points: Vec<_> = (0..10).map(|_| k.random_element(&mut rng, 6)).collect();
        let psi = build_psi(&phi, &s)?;
        let mut id = CheckReport::new("psi identity");
        id.check(psi_identity(&phi, &psi, &s), "φⁿ(1 − φⁿψ) = tψ", || phi.format(k, "x"), || psi.format(k, "x"));
        Ok((id, verify_psi_table(&phi, &s, &points, Mode::Sequential)?))
    });
    let (ids, tables): (Vec<_>, Vec<_>) = parts.into_iter().collect::<Result<Vec<_>>>()?.into_iter().unzip();
    Ok(vec![CheckReport::collect("psi identity", ids), CheckReport::collect("psi valuation table", tables)])
}

fn theta_suite(bound: usize, cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let s = SingularData::preset(&cfg.preset)?;
    let points = grid(bound as i64);
    let mut r = verify_theta(&s, &points, cfg.mode);
    r.name = format!("theta grid |r|, |s| ≤ {bound}");
    let mut sym = CheckReport::new("theta symmetry");
    sym.check(crate::constructions::theta_is_symmetric(&s)?, "θ(x) = θ(1/x)", || s.describe(), String::new);
    Ok(vec![sym, r])
}

fn rho_suite(n: usize, cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let s = SingularData::preset(&cfg.preset)?;
    let k = s.field();
    let triples = par::map_range(cfg.mode, n, |i| {
        let mut rng = sample_rng(cfg.seed, i);
        let (f1, f2) = (random_rat(&mut rng, k, 3, 2, 3), random_rat(&mut rng, k, 3, 2, 3));
        let a = k.random_element(&mut rng, 6);
        if f1.div(k, &f2).map(|q| q.is_constant()).unwrap_or(true) {
            let mut r = CheckReport::new("rho");
            r.skip();
            return Ok(r);
        }
        verify_rho(&f1, &f2, &s, &[a], Mode::Sequential)
    });
    let families = (n / 50).max(1);
    let points: Vec<_> = (-6..=12).map(|i| k.from_i64(i)).chain([q2(1, 2), q2(3, 4), q2(5, 9)]).collect();
    let chars = par::map_range(cfg.mode, families, |i| {
        let mut rng = sample_rng(cfg.seed, n + i);
        let (f1, f2) = (random_rat(&mut rng, k, 3, 2, 3), random_rat(&mut rng, k, 3, 2, 3));
        if f1.div(k, &f2).map(|q| q.is_constant()).unwrap_or(true) {
            let mut r = CheckReport::new("rho characteristic sets");
            r.skip();
            return Ok(r);
        }
        verify_rho_characteristic(&f1, &f2, &s, &points)
    });
    Ok(vec![
        CheckReport::collect("rho minimum", triples.into_iter().collect::<Result<Vec<_>>>()?),
        CheckReport::collect("rho characteristic sets", chars.into_iter().collect::<Result<Vec<_>>>()?),
    ])
}

fn integral_poly<V: ValuedField>(rng: &mut ChaCha8Rng, k: &V, max_deg: usize) -> crate::ratfun::Polynomial<V::Elem> {
    let p = random_poly(rng, k, max_deg, 2);
    let c = p.coeffs().iter().map(|a| if k.is_zero(a) { k.zero() } else { integral(k, a.clone()) }).collect();
    crate::ratfun::Polynomial::new(k, c)
}

/// A monic denominator without roots in `V`: its residue has no roots in
/// `GF(2)(u)` and it is a unit on the maximal ideal.
fn unit_denominator(rng: &mut ChaCha8Rng, k: &MonomialField) -> Result<crate::ratfun::Polynomial<<MonomialField as Field>::Elem>> {
    use rand::Rng;
    let kx = FunctionField::new(k.clone(), "x");
    let d = ["1", "x^2 + x + u", "x^2 + u", "x^2 + t x + u"][rng.gen_range(0..4)];
    Ok(kx.parse(d)?.num().clone())
}

/// `t`-adic valuation on `GF(2)(u)((t))`: infinite residue field, so every
/// member of `IntR(D)` has `minval(0) ≥ 0`.
fn mstar(n: usize, cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let k = MonomialField::t_adic(Kappa::rational(2, 1)?);
    let d = Domain::ValuationRing(k.clone());
    let zero = k.value_group().zero();
    let at0 = |f: &RationalFunction<_>| minval_rat(f, &k).map(|p| p.eval(&zero));
    let depth = cfg.depth;
    let parts = par::map_range(cfg.mode, n, |i| -> Result<CheckReport> {
        let mut rng = sample_rng(cfg.seed, i);
        let mut r = CheckReport::new("mstar");
        let t = k.parse("t")?;
        // members of M*: t times a polynomial over V
        let member = |rng: &mut ChaCha8Rng| integral_poly(rng, &k, 3);
        let (f, g) = (member(&mut rng), member(&mut rng));
        let phi = RationalFunction::from_poly(&k, f).scale(&k, &t);
        let psi = RationalFunction::from_poly(&k, g).scale(&k, &t);
        let rho = RationalFunction::normalize(&k, integral_poly(&mut rng, &k, 3), unit_denominator(&mut rng, &k)?)?;
        let sample = || format!("φ = {}, ψ = {}, ρ = {}", phi.format(&k, "x"), psi.format(&k, "x"), rho.format(&k, "x"));
        let in_m = |f: &RationalFunction<_>| -> Result<bool> { Ok(f.is_zero() || at0(f)?.is_positive()) };
        if !(in_m(&phi)? && in_m(&psi)?) {
            r.skip();
            return Ok(r);
        }
        let sum = phi.add(&k, &psi);
        r.check(in_m(&sum)?, "M* is closed under addition", sample, String::new);
        let rho_in = intr_member(&rho, &d, &EvalSet::WholeRing, depth)?;
        if rho_in.is_in() {
            let v = at0(&rho)?;
            r.check(!v.is_negative(), "members of IntR(D) have minval(0) ≥ 0", sample, || v.to_string());
            let prod = rho.mul(&k, &phi);
            let want = v + at0(&phi)?;
            let got = at0(&prod)?;
            r.check(got == want && got.is_positive(), "minval_ρφ(0) = minval_ρ(0) + minval_φ(0) > 0", sample, || {
                format!("{got} vs {want}")
            });
        } else {
            r.skip();
        }
        // primality on a product of two IntR(D) members
        let (a, b) = (RationalFunction::from_poly(&k, member(&mut rng)), RationalFunction::normalize(&k, integral_poly(&mut rng, &k, 2), unit_denominator(&mut rng, &k)?)?);
        let (va, vb) = (at0(&a)?, at0(&b)?);
        if !va.is_negative() && !vb.is_negative() {
            let vp = at0(&a.mul(&k, &b))?;
            r.check(
                !vp.is_positive() || va.is_positive() || vb.is_positive(),
                "minval_ab(0) > 0 forces a factor into M*",
                || format!("a = {}, b = {}", a.format(&k, "x"), b.format(&k, "x")),
                || format!("{va} + {vb} = {vp}"),
            );
        } else {
            r.skip();
        }
        Ok(r)
    });
    let report = CheckReport::collect("mstar axioms", parts.into_iter().collect::<Result<Vec<_>>>()?);

    // x lies in every M_{m,a} with a ∈ m but not in M*
    let x = RationalFunction::x(&k);
    let mut strict = CheckReport::new("x is a pointed limit outside M*");
    strict.check(at0(&x)?.is_zero(), "minval_x(0) = 0", || "x".into(), String::new);
    for i in 0..20 {
        let mut rng = sample_rng(cfg.seed, n + i);
        let a = k.mul(&k.parse("t")?, &integral(&k, k.random_element(&mut rng, 2)));
        let inside = ideal_member(&x, &IdealSpec::pointed(a.clone()), &d, &EvalSet::WholeRing, 1)?;
        strict.check(inside == Some(true), "x ∈ M_{m,a} for a ∈ m", || k.format(&a), || format!("{inside:?}"));
    }
    Ok(vec![report, strict])
}

fn witness_checks<V: ValuedField>(label: &str, d: &Pvd<V>, n: usize, cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let w = notlocal_witness(d)?;
    let k = &d.field;
    let samples: Vec<_> = (0..n).map(|i| k.random_element(&mut sample_rng(cfg.seed, i), 3)).collect();
    let rep = verify_notlocal(d, &w, &samples, cfg.depth, cfg.mode)?;
    let mut member = CheckReport::new(&format!("{label}: w ∈ IntR(K, D)"));
    member.check(
        rep.membership.is_in() && rep.membership.depth().is_some_and(|x| x <= cfg.depth),
        "w is certified in IntR(K, D)",
        || rep.witness.clone(),
        || rep.membership.label().into(),
    );
    let mut residue = rep.residue;
    residue.name = format!("{label}: residue");
    let mut split = rep.split;
    split.name = format!("{label}: split");
    Ok(vec![member, residue, split])
}

fn witnesses(n: usize, cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let k = gf4_t_adic();
    let f = SubfieldSpec::parse(k.residue_field(), "GF(2)")?;
    let mut out = witness_checks("GF(4)/GF(2)", &Pvd::new(k, f), n, cfg)?;
    let k = MonomialField::hahn(Kappa::rational(2, 1)?);
    let f = SubfieldSpec::parse(k.residue_field(), "GF(2)(u^2)")?;
    out.extend(witness_checks("GF(2)(u)/GF(2)(u^2)", &Pvd::new(k, f), n, cfg)?);
    Ok(out)
}

/// Members of `IntR(K, D)` for the Hahn PVD over `GF(2)(u)` with `F = GF(2)`.
fn dichotomy_corpus(k: &MonomialField, rng: &mut ChaCha8Rng) -> Result<RationalFunction<<MonomialField as Field>::Elem>> {
    use rand::Rng;
    let kx = FunctionField::new(k.clone(), "x");
    // members of IntR(K, V): no residue roots, numerator degree at most the denominator's
    const BASE: [&str; 7] = [
        "1/(x^2 + x + u)",
        "x/(x^2 + x + u)",
        "x^2/(x^2 + x + u)",
        "1/(x^2 + u)",
        "u x/(x^2 + u)",
        "x^2/(x^2 + u)",
        "(x + 1)/(x^2 + x + u)",
    ];
    let psi = |rng: &mut ChaCha8Rng| kx.parse(BASE[rng.gen_range(0..BASE.len())]);
    let small = |rng: &mut ChaCha8Rng| -> Result<_> {
        let e = q2(rng.gen_range(1..=6), rng.gen_range(1..=3));
        Ok(kx.constant(k.t_pow(&e).expect("rational exponents")))
    };
    let f = match rng.gen_range(0..5) {
        // constants in D
        0 => {
            let c = if rng.gen_bool(0.5) { kx.constant(k.one()) } else { small(rng)? };
            c.add(k, &small(rng)?.scale(k, &k.lift(&k.residue_field().random(rng, 1))))
        }
        1 => small(rng)?.mul(k, &psi(rng)?),
        2 => kx.constant(k.one()).add(k, &small(rng)?.mul(k, &psi(rng)?)),
        3 => small(rng)?.mul(k, &psi(rng)?).mul(k, &kx.constant(k.one()).add(k, &small(rng)?.mul(k, &psi(rng)?))),
        _ => small(rng)?.mul(k, &psi(rng)?).add(k, &small(rng)?.mul(k, &psi(rng)?)),
    };
    Ok(f)
}

fn dichotomy(n: usize, cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let k = MonomialField::hahn(Kappa::rational(2, 1)?);
    let f = SubfieldSpec::parse(k.residue_field(), "GF(2)")?;
    let d = Domain::Pvd(Pvd::new(k.clone(), f));
    let parts = par::map_range(cfg.mode, n, |i| -> Result<CheckReport> {
        let mut rng = sample_rng(cfg.seed, i);
        let mut r = CheckReport::new("dichotomy");
        let mut phi = dichotomy_corpus(&k, &mut rng)?;
        while phi.is_zero() {
            phi = dichotomy_corpus(&k, &mut rng)?;
        }
        let verdict = intr_member(&phi, &d, &EvalSet::WholeField, cfg.depth)?;
        if !verdict.is_in() {
            r.fail("corpus functions are certified members", phi.format(&k, "x"), verdict.label());
            return Ok(r);
        }
        let class = dichotomy_check(&phi, &k)?;
        r.check(
            !matches!(class, Dichotomy::Violation { .. }),
            "members have minval ≡ 0 or minval > 0",
            || phi.format(&k, "x"),
            || format!("{class:?}"),
        );
        Ok(r)
    });
    let corpus = CheckReport::collect("dichotomy on certified members", parts.into_iter().collect::<Result<Vec<_>>>()?);
    let mut known = CheckReport::new("dichotomy on a known non-member");
    let bad = FunctionField::new(k.clone(), "x").parse("x^2/(x^2 + t)")?;
    let class = dichotomy_check(&bad, &k)?;
    known.check(
        matches!(class, Dichotomy::Violation { .. }),
        "x²/(x² + t) violates the dichotomy",
        || "x^2/(x^2 + t)".into(),
        || format!("{class:?}"),
    );
    Ok(vec![corpus, known])
}
