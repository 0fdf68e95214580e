use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::{Field, PAdicRationals, ValuedField};
use crate::intr::{characteristic_set, Domain, EvalSet, IdealSpec};
use crate::ordgroup::Val;
use crate::par::{self, Mode};
use crate::ratfun::{identity_check, RationalFunction};
use crate::report::CheckReport;

/// Finitely many valuations `v_m` of one field with uniformizers `t_m`, and
/// `t`, `n` satisfying `0 < v_m(t) < n·v_m(t_m)` for every `m`.
#[derive(Clone, Debug)]
pub struct SingularData<V: ValuedField> {
    valuations: Vec<V>,
    uniformizers: Vec<V::Elem>,
    t: V::Elem,
    n: u32,
}

/// Shipped data over `Q`: name, primes, `t`, `n`.
pub const PRESETS: [(&str, &[u64], i64, u32); 2] = [("2-3", &[2, 3], 6, 2), ("2-3-5", &[2, 3, 5], 30, 2)];

impl<V: ValuedField> SingularData<V> {
    pub fn new(valuations: Vec<V>, uniformizers: Vec<V::Elem>, t: V::Elem, n: u32) -> Result<Self> {
        if valuations.is_empty() || valuations.len() != uniformizers.len() {
            return Err(Error::Config("one uniformizer per valuation is required".into()));
        }
        if n == 0 {
            return Err(Error::Config("n must be positive".into()));
        }
        for (v, tm) in valuations.iter().zip(&uniformizers) {
            let vt = v.valuation(&t);
            let vm = v.valuation(tm);
            if !vm.is_positive() {
                return Err(Error::Precondition(format!("{} is not a uniformizer for {}", v.format(tm), v.describe())));
            }
            let bound = vm.scale_int(n as i64);
            if !(vt.is_positive() && vt < bound) {
                return Err(Error::Precondition(format!(
                    "need 0 < v(t) < n·v(t_m) for {}: v(t) = {vt}, n·v(t_m) = {bound}",
                    v.describe()
                )));
            }
        }
        Ok(SingularData { valuations, uniformizers, t, n })
    }

    pub fn field(&self) -> &V {
        &self.valuations[0]
    }

    pub fn valuations(&self) -> &[V] {
        &self.valuations
    }

    pub fn uniformizers(&self) -> &[V::Elem] {
        &self.uniformizers
    }

    pub fn t(&self) -> &V::Elem {
        &self.t
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn domain(&self) -> Domain<V> {
        Domain::FiniteIntersection(self.valuations.clone())
    }

    pub fn describe(&self) -> String {
        let names: Vec<String> = self.valuations.iter().map(|v| v.describe()).collect();
        format!("[{}] t = {}, n = {}", names.join(", "), self.field().format(&self.t), self.n)
    }
}

impl SingularData<PAdicRationals> {
    /// `p`-adic valuations on `Q` with uniformizers `p`.
    pub fn rational(primes: &[u64], t: i64, n: u32) -> Result<Self> {
        let vals = primes.iter().map(|&p| PAdicRationals::new(p)).collect::<Result<Vec<_>>>()?;
        let unis = vals.iter().map(|v| v.from_i64(v.prime() as i64)).collect();
        let t = vals.first().map(|v| v.from_i64(t)).ok_or_else(|| Error::Config("no primes".into()))?;
        Self::new(vals, unis, t, n)
    }

    pub fn preset(name: &str) -> Result<Self> {
        let (_, primes, t, n) = PRESETS
            .iter()
            .find(|p| p.0 == name)
            .ok_or_else(|| Error::Config(format!("unknown preset {name:?}; known: 2-3, 2-3-5")))?;
        Self::rational(primes, *t, *n)
    }
}

/// `θ(x) = t(1 + x^{2n}) / ((1 + t x^n)(t + x^n))`.
pub fn build_theta<V: ValuedField>(s: &SingularData<V>) -> RationalFunction<V::Elem> {
    let k = s.field();
    let one = RationalFunction::one(k);
    let t = RationalFunction::constant(k, s.t.clone());
    let xn = RationalFunction::x(k).pow(k, s.n);
    let num = t.mul(k, &one.add(k, &xn.pow(k, 2)));
    let den = one.add(k, &t.mul(k, &xn)).mul(k, &t.add(k, &xn));
    num.div(k, &den).expect("t is nonzero")
}

/// `θ(x) = θ(1/x)` in `K(x)`.
pub fn theta_is_symmetric<V: ValuedField>(s: &SingularData<V>) -> Result<bool> {
    let k = s.field();
    let theta = build_theta(s);
    let inv = RationalFunction::x(k).inv(k).unwrap();
    Ok(identity_check(&theta.compose(k, &inv)?, &theta))
}

fn val_text(v: &Val) -> String {
    v.to_string()
}

/// Per sample and valuation: `θ(a) ∈ V_m`; `v_m(θ(a)) > 0` when `a` is a
/// unit, otherwise `θ(a) ≡ 1` in the residue field.
pub fn verify_theta<V: ValuedField>(s: &SingularData<V>, samples: &[V::Elem], mode: Mode) -> CheckReport {
    let theta = build_theta(s);
    let k = s.field();
    let parts = par::map(mode, samples, |a| {
        let mut r = CheckReport::new("theta");
        let Some(b) = theta.evaluate(k, a).value() else {
            r.fail("θ has no pole on K", k.format(a), "pole");
            return r;
        };
        for v in &s.valuations {
            let sample = || format!("a = {} at {}", k.format(a), v.describe());
            if !v.in_valuation_ring(&b) {
                r.fail("θ(a) ∈ V_m", sample(), format!("θ(a) = {}", k.format(&b)));
                continue;
            }
            match v.valuation(a) {
                Val::Finite(g) if g.is_zero() => {
                    let vb = v.valuation(&b);
                    r.check(vb.is_positive(), "unit a: v_m(θ(a)) > 0", sample, || format!("v_m(θ(a)) = {vb}"));
                }
                _ => {
                    let ok = v.residue(&b).map(|c| v.residue_field().is_one(&c)).unwrap_or(false);
                    r.check(ok, "non-unit a: θ(a) ≡ 1 mod m", sample, || format!("θ(a) = {}", k.format(&b)));
                }
            }
        }
        r
    });
    CheckReport::collect("theta", parts)
}

/// `ψ = φⁿ / (t + φ^{2n})`.
pub fn build_psi<V: ValuedField>(phi: &RationalFunction<V::Elem>, s: &SingularData<V>) -> Result<RationalFunction<V::Elem>> {
    let k = s.field();
    let phin = phi.pow(k, s.n);
    let den = RationalFunction::constant(k, s.t.clone()).add(k, &phin.pow(k, 2));
    if den.is_zero() {
        return Err(Error::ConstantPole("t + φ^{2n} vanishes identically".into()));
    }
    phin.div(k, &den)
}

/// `φⁿ(1 − φⁿψ) = tψ` in `K(x)`.
pub fn psi_identity<V: ValuedField>(
    phi: &RationalFunction<V::Elem>,
    psi: &RationalFunction<V::Elem>,
    s: &SingularData<V>,
) -> bool {
    let k = s.field();
    let phin = phi.pow(k, s.n);
    let lhs = phin.mul(k, &RationalFunction::one(k).sub(k, &phin.mul(k, psi)));
    let rhs = psi.scale(k, &s.t);
    identity_check(&lhs, &rhs)
}

/// The identity and the valuation table of `ψ`.
pub fn verify_psi<V: ValuedField>(
    phi: &RationalFunction<V::Elem>,
    s: &SingularData<V>,
    samples: &[V::Elem],
    mode: Mode,
) -> Result<CheckReport> {
    let k = s.field();
    let psi = build_psi(phi, s)?;
    let mut report = CheckReport::new("psi");
    report.check(psi_identity(phi, &psi, s), "φⁿ(1 − φⁿψ) = tψ", || phi.format(k, "x"), || psi.format(k, "x"));
    report.merge(verify_psi_table(phi, s, samples, mode)?);
    Ok(report)
}

/// At each sample: value 0 stays 0, positive `γ` becomes `nγ − v_m(t)`,
/// negative `γ` becomes `−nγ`.
pub fn verify_psi_table<V: ValuedField>(
    phi: &RationalFunction<V::Elem>,
    s: &SingularData<V>,
    samples: &[V::Elem],
    mode: Mode,
) -> Result<CheckReport> {
    let k = s.field();
    let psi = build_psi(phi, s)?;
    let n = s.n as i64;
    let parts = par::map(mode, samples, |a| {
        let mut r = CheckReport::new("psi");
        let Some(fa) = phi.evaluate(k, a).value() else {
            r.skip();
            return r;
        };
        let Some(pa) = psi.evaluate(k, a).value() else {
            r.fail("ψ is defined where φ is", k.format(a), "pole");
            return r;
        };
        for v in &s.valuations {
            let vf = v.valuation(&fa);
            let got = v.valuation(&pa);
            let want = match &vf {
                Val::Infinity => Val::Infinity,
                Val::Finite(g) if g.is_zero() => vf.clone(),
                Val::Finite(g) if g.is_positive() => Val::Finite(g.scale_int(n)).sub(v.valuation_finite(&s.t).as_ref().unwrap()),
                Val::Finite(g) => Val::Finite(g.scale_int(-n)),
            };
            r.check(
                got == want,
                "v_m(ψ(a)) follows the case table",
                || format!("a = {} at {}", k.format(a), v.describe()),
                || format!("v_m(φ(a)) = {}, v_m(ψ(a)) = {}, expected {}", val_text(&vf), val_text(&got), val_text(&want)),
            );
        }
        r
    });
    Ok(CheckReport::collect("psi valuation table", parts))
}

/// `ρ = φ₁ + θ(φ₁/φ₂)·φ₂`.
pub fn build_rho<V: ValuedField>(
    phi1: &RationalFunction<V::Elem>,
    phi2: &RationalFunction<V::Elem>,
    s: &SingularData<V>,
) -> Result<RationalFunction<V::Elem>> {
    let k = s.field();
    let ratio = phi1.div(k, phi2)?;
    let glued = build_theta(s).compose(k, &ratio)?;
    Ok(phi1.add(k, &glued.mul(k, phi2)))
}

/// `v_m(ρ(a)) = min(v_m(φ₁(a)), v_m(φ₂(a)))` at each pole-free sample.
pub fn verify_rho<V: ValuedField>(
    phi1: &RationalFunction<V::Elem>,
    phi2: &RationalFunction<V::Elem>,
    s: &SingularData<V>,
    samples: &[V::Elem],
    mode: Mode,
) -> Result<CheckReport> {
    let k = s.field();
    let rho = build_rho(phi1, phi2, s)?;
    let parts = par::map(mode, samples, |a| {
        let mut r = CheckReport::new("rho");
        let (Some(e1), Some(e2)) = (phi1.evaluate(k, a).value(), phi2.evaluate(k, a).value()) else {
            r.skip();
            return r;
        };
        let Some(ra) = rho.evaluate(k, a).value() else {
            r.fail("ρ is defined where φ₁, φ₂ are", k.format(a), "pole");
            return r;
        };
        for v in &s.valuations {
            let (v1, v2, got) = (v.valuation(&e1), v.valuation(&e2), v.valuation(&ra));
            let want = v1.clone().min(v2.clone());
            r.check(
                got == want,
                "v_m(ρ(a)) = min(v_m(φ₁(a)), v_m(φ₂(a)))",
                || format!("a = {} at {}", k.format(a), v.describe()),
                || format!("{} vs min({}, {})", val_text(&got), val_text(&v1), val_text(&v2)),
            );
        }
        r
    });
    Ok(CheckReport::collect("rho", parts))
}

/// `χ_{φ₁} ∩ χ_{φ₂} = χ_ρ` over the pointed ideals `M_{m,a}` for every
/// valuation and every listed point where all three are defined.
pub fn verify_rho_characteristic<V: ValuedField>(
    phi1: &RationalFunction<V::Elem>,
    phi2: &RationalFunction<V::Elem>,
    s: &SingularData<V>,
    points: &[V::Elem],
) -> Result<CheckReport> {
    let k = s.field();
    let rho = build_rho(phi1, phi2, s)?;
    let mut report = CheckReport::new("rho characteristic sets");
    let defined = |a: &V::Elem| [phi1, phi2, &rho].iter().all(|f| !f.evaluate(k, a).is_pole());
    let mut family = Vec::new();
    for a in points {
        if !defined(a) {
            report.skip();
            continue;
        }
        for component in 0..s.valuations.len() {
            family.push(IdealSpec::Pointed { component, a: a.clone() });
        }
    }
    let domain = s.domain();
    let eval = EvalSet::WholeField;
    let c1 = characteristic_set(phi1, &family, &domain, &eval, 1)?.members;
    let c2 = characteristic_set(phi2, &family, &domain, &eval, 1)?.members;
    let cr = characteristic_set(&rho, &family, &domain, &eval, 1)?.members;
    let both: Vec<usize> = c1.iter().copied().filter(|i| c2.contains(i)).collect();
    report.check(
        both == cr,
        "χ_φ₁ ∩ χ_φ₂ = χ_ρ",
        || format!("φ₁ = {}, φ₂ = {}", phi1.format(k, "x"), phi2.format(k, "x")),
        || format!("intersection {both:?}, χ_ρ {cr:?}"),
    );
    Ok(report)
}

/// `φ / (φ + θ(φ))`.
pub fn build_separator<V: ValuedField>(phi: &RationalFunction<V::Elem>, s: &SingularData<V>) -> Result<RationalFunction<V::Elem>> {
    let k = s.field();
    let den = phi.add(k, &build_theta(s).compose(k, phi)?);
    phi.div(k, &den)
}

/// `ψ(a) ∈ V_m`, and `v_m(ψ(a)) > 0` exactly when `v_m(φ(a)) > 0`.
pub fn verify_separator<V: ValuedField>(
    phi: &RationalFunction<V::Elem>,
    s: &SingularData<V>,
    samples: &[V::Elem],
    mode: Mode,
) -> Result<CheckReport> {
    let k = s.field();
    let sep = build_separator(phi, s)?;
    let parts = par::map(mode, samples, |a| {
        let mut r = CheckReport::new("separator");
        let Some(fa) = phi.evaluate(k, a).value() else {
            r.skip();
            return r;
        };
        let Some(sa) = sep.evaluate(k, a).value() else {
            r.fail("the separator is defined where φ is", k.format(a), "pole");
            return r;
        };
        for v in &s.valuations {
            let sample = || format!("a = {} at {}", k.format(a), v.describe());
            let (vf, vs) = (v.valuation(&fa), v.valuation(&sa));
            r.check(vs.is_nonnegative(), "ψ(a) ∈ V_m", sample, || format!("v_m(ψ(a)) = {vs}"));
            r.check(vs.is_positive() == vf.is_positive(), "v_m(ψ(a)) > 0 iff v_m(φ(a)) > 0", sample, || {
                format!("v_m(φ(a)) = {vf}, v_m(ψ(a)) = {vs}")
            });
        }
        r
    });
    Ok(CheckReport::collect("separator", parts))
}

/// JSON view of a built function.
#[derive(Clone, Debug, Serialize)]
pub struct Construction {
    pub kind: String,
    pub data: String,
    pub function: String,
}
