//! Residue subfields and the pullback `D = π⁻¹(F)` of a valuation ring.

use std::fmt;

use serde::Serialize;

use super::{Kappa, KappaElem, ValuedField};
use crate::error::{Error, Result};
use crate::ordgroup::{GroupElement, Val};

/// A subfield `F` of a residue field: `GF(p^d)`, or inside `GF(q)(u)` also
/// `GF(p^d)(u^{p^e})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubfieldSpec {
    const_degree: u32,
    /// `Some(e)`: the subfield contains `u^{p^e}`; `None`: constants only.
    frobenius: Option<u32>,
}

impl SubfieldSpec {
    /// Validates `GF(p^d)` (and `u^{p^e}`) against the residue field.
    pub fn new(kappa: &Kappa, const_degree: u32, frobenius: Option<u32>) -> Result<Self> {
        let k = kappa.base().degree();
        if const_degree == 0 || k % const_degree != 0 {
            return Err(Error::Config(format!(
                "GF({}^{const_degree}) is not a subfield of {}",
                kappa.base().p(),
                kappa.describe()
            )));
        }
        if frobenius.is_some() && kappa.is_finite() {
            return Err(Error::Config(format!("{} has no variable u", kappa.describe())));
        }
        Ok(SubfieldSpec { const_degree, frobenius })
    }

    /// The whole residue field.
    pub fn whole(kappa: &Kappa) -> Self {
        let frobenius = (!kappa.is_finite()).then_some(0);
        SubfieldSpec { const_degree: kappa.base().degree(), frobenius }
    }

    /// Parses `GF(4)`, `GF(2)(u)`, `GF(2)(u^2)`.
    pub fn parse(kappa: &Kappa, s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("cannot parse subfield {s:?}; expected GF(q), GF(q)(u) or GF(q)(u^m)"));
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let rest = s.strip_prefix("GF(").ok_or_else(bad)?;
        let close = rest.find(')').ok_or_else(bad)?;
        let q: u64 = rest[..close].parse().map_err(|_| bad())?;
        let p = kappa.base().p();
        let mut d = 0;
        let mut acc = 1u64;
        while acc < q {
            acc *= p;
            d += 1;
        }
        if acc != q || d == 0 {
            return Err(Error::Config(format!("{q} is not a power of the characteristic {p}")));
        }
        let tail = &rest[close + 1..];
        let frobenius = if tail.is_empty() {
            None
        } else {
            let inner = tail.strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
            let m: u64 = match inner {
                "u" => 1,
                _ => inner.strip_prefix("u^").ok_or_else(bad)?.parse().map_err(|_| bad())?,
            };
            let mut e = 0;
            let mut pe = 1u64;
            while pe < m {
                pe *= p;
                e += 1;
            }
            if pe != m {
                return Err(Error::Config(format!("exponent {m} is not a power of {p}")));
            }
            Some(e)
        };
        Self::new(kappa, d, frobenius)
    }

    pub fn const_degree(&self) -> u32 {
        self.const_degree
    }

    pub fn frobenius(&self) -> Option<u32> {
        self.frobenius
    }

    pub fn is_whole(&self, kappa: &Kappa) -> bool {
        self.const_degree == kappa.base().degree() && (kappa.is_finite() || self.frobenius == Some(0))
    }

    /// Whether `F` contains every constant of the residue field.
    pub fn has_all_constants(&self, kappa: &Kappa) -> bool {
        self.const_degree == kappa.base().degree()
    }

    pub fn contains(&self, kappa: &Kappa, a: &KappaElem) -> bool {
        let b = kappa.base();
        match a {
            KappaElem::Fin(c) => b.in_subfield(*c, self.const_degree),
            KappaElem::Rat(r) => {
                let coeffs_ok = r
                    .num()
                    .coeffs()
                    .iter()
                    .chain(r.den().coeffs())
                    .all(|c| b.in_subfield(*c, self.const_degree));
                if !coeffs_ok {
                    return false;
                }
                match self.frobenius {
                    None => r.is_constant(),
                    Some(e) => {
                        let pe = (b.p() as usize).pow(e);
                        r.exponent_gcd(b) % pe == 0
                    }
                }
            }
        }
    }

    /// The elements of `F` when the residue field is finite.
    pub fn elements(&self, kappa: &Kappa) -> Option<Vec<KappaElem>> {
        let all = kappa.elements()?;
        Some(all.into_iter().filter(|c| self.contains(kappa, c)).collect())
    }

    /// A fixed element of `L ∖ F`, if `F` is proper: `u` when `F` misses it,
    /// otherwise the generator of the constant field.
    pub fn generator_outside(&self, kappa: &Kappa) -> Option<KappaElem> {
        if self.is_whole(kappa) {
            return None;
        }
        match kappa {
            Kappa::Rational(_) if self.frobenius != Some(0) => kappa.variable(),
            _ => Some(kappa.constant(kappa.base().generator())),
        }
    }

    /// `Some(e)` when `L/F` is purely inseparable of exponent `e`, i.e.
    /// `a^{p^e} ∈ F` for every `a ∈ L` and `e` is least.
    pub fn inseparable_exponent(&self, kappa: &Kappa) -> Option<u32> {
        if !self.has_all_constants(kappa) {
            return None;
        }
        match kappa {
            Kappa::Finite(_) => Some(0),
            Kappa::Rational(_) => self.frobenius,
        }
    }

    pub fn describe(&self, kappa: &Kappa) -> String {
        let q = kappa.base().p().pow(self.const_degree);
        match self.frobenius {
            None => format!("GF({q})"),
            Some(0) => format!("GF({q})(u)"),
            Some(e) => format!("GF({q})(u^{})", kappa.base().p().pow(e)),
        }
    }
}

/// `D = π⁻¹(F)` for the valuation ring of `field`.
#[derive(Clone, Debug)]
pub struct Pvd<V> {
    pub field: V,
    pub subfield: SubfieldSpec,
}

impl<V: ValuedField> Pvd<V> {
    pub fn new(field: V, subfield: SubfieldSpec) -> Self {
        Pvd { field, subfield }
    }

    /// The valuation ring itself (`F` = whole residue field).
    pub fn valuation_ring(field: V) -> Self {
        let subfield = SubfieldSpec::whole(field.residue_field());
        Pvd { field, subfield }
    }

    pub fn is_valuation_ring(&self) -> bool {
        self.subfield.is_whole(self.field.residue_field())
    }

    pub fn member(&self, x: &V::Elem) -> bool {
        pvd_member(&self.field, &self.subfield, x)
    }

    pub fn residue_in_subfield(&self, c: &KappaElem) -> bool {
        self.subfield.contains(self.field.residue_field(), c)
    }

    pub fn describe(&self) -> String {
        if self.is_valuation_ring() {
            return format!("V({})", self.field.describe());
        }
        format!(
            "PVD({}, F = {})",
            self.field.describe(),
            self.subfield.describe(self.field.residue_field())
        )
    }
}

/// `v(x) > 0`, or `v(x) = 0` and the residue of `x` lies in `F`.
pub fn pvd_member<V: ValuedField>(field: &V, subfield: &SubfieldSpec, x: &V::Elem) -> bool {
    match field.valuation(x) {
        Val::Infinity => true,
        Val::Finite(g) if g.is_positive() => true,
        Val::Finite(g) if g.is_negative() => false,
        Val::Finite(_) => {
            let r = field.residue(x).expect("unit residue");
            subfield.contains(field.residue_field(), &r)
        }
    }
}

/// An ideal of the valuation ring cut out by a value threshold. The maximal
/// ideal `m` is shared by `V` and `D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ValueIdeal {
    /// `{x : v(x) > γ}`
    Above { value: GroupElement },
    /// `{x : v(x) ≥ γ}`
    AtLeast { value: GroupElement },
}

impl ValueIdeal {
    pub fn maximal(rank: usize) -> Self {
        ValueIdeal::Above { value: GroupElement::zero(rank) }
    }

    /// `m^k` of a discrete rank-one valuation ring.
    pub fn power(k: i64) -> Self {
        ValueIdeal::AtLeast { value: GroupElement::int(k) }
    }

    pub fn threshold(&self) -> (&GroupElement, bool) {
        match self {
            ValueIdeal::Above { value } => (value, true),
            ValueIdeal::AtLeast { value } => (value, false),
        }
    }

    pub fn contains_value(&self, v: &Val) -> bool {
        match (self, v) {
            (_, Val::Infinity) => true,
            (ValueIdeal::Above { value }, Val::Finite(g)) => g > value,
            (ValueIdeal::AtLeast { value }, Val::Finite(g)) => g >= value,
        }
    }

    /// Parses `m`, `m^k`, `v>g` or `v>=g`.
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "m" || s == "m_D" {
            return Ok(Self::maximal(rank));
        }
        if let Some(k) = s.strip_prefix("m^") {
            if rank != 1 {
                return Err(Error::Config("powers of m need a rank-one value group".into()));
            }
            let k: i64 = k.parse().map_err(|_| Error::Config(format!("bad ideal {s:?}")))?;
            return Ok(Self::power(k));
        }
        if let Some(g) = s.strip_prefix("v>=") {
            return Ok(ValueIdeal::AtLeast { value: g.parse()? });
        }
        if let Some(g) = s.strip_prefix("v>") {
            return Ok(ValueIdeal::Above { value: g.parse()? });
        }
        Err(Error::Config(format!("cannot parse ideal {s:?}; expected m, m^k, v>g or v>=g")))
    }
}

impl fmt::Display for ValueIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueIdeal::Above { value } => write!(f, "v > {value}"),
            ValueIdeal::AtLeast { value } => write!(f, "v >= {value}"),
        }
    }
}

pub fn ideal_member<V: ValuedField>(field: &V, ideal: &ValueIdeal, x: &V::Elem) -> bool {
    ideal.contains_value(&field.valuation(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{Field, MonomialField, PAdicRationals};
    use crate::ordgroup::q2;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf4_over_gf2() -> Pvd<MonomialField> {
        let k = MonomialField::t_adic(Kappa::finite(2, 2).unwrap());
        let f = SubfieldSpec::parse(k.residue_field(), "GF(2)").unwrap();
        Pvd::new(k, f)
    }

    #[test]
    fn membership_examples() {
        let d = gf4_over_gf2();
        let p = |s: &str| d.field.parse(s).unwrap();
        assert!(!d.member(&p("u")));
        assert!(d.member(&p("u*t")));
        assert!(d.member(&p("1 + u*t")));
        // neither u nor 1/u lies in D
        assert!(!d.member(&p("1/u")));
    }

    #[test]
    fn ideal_examples() {
        let k = PAdicRationals::new(5).unwrap();
        let m = ValueIdeal::maximal(1);
        assert!(ideal_member(&k, &m, &q2(10, 3)));
        assert!(!ideal_member(&k, &m, &q2(1, 1)));
        let t = MonomialField::t_adic(Kappa::finite(2, 1).unwrap());
        assert!(ideal_member(&t, &m, &t.parse("t").unwrap()));
        assert!(ideal_member(&k, &ValueIdeal::power(2), &q2(25, 2)));
        assert!(!ideal_member(&k, &ValueIdeal::power(2), &q2(5, 1)));
    }

    #[test]
    fn frobenius_subfield() {
        let kappa = Kappa::rational(2, 1).unwrap();
        let f = SubfieldSpec::parse(&kappa, "GF(2)(u^2)").unwrap();
        let p = |s: &str| kappa.parse(s).unwrap();
        assert!(f.contains(&kappa, &p("u^2 + 1")));
        assert!(f.contains(&kappa, &p("1/(u^4 + u^2)")));
        assert!(!f.contains(&kappa, &p("u")));
        assert!(!f.contains(&kappa, &p("u^3/(u+1)")));
        assert_eq!(f.inseparable_exponent(&kappa), Some(1));
        let c = SubfieldSpec::parse(&kappa, "GF(2)").unwrap();
        assert_eq!(c.inseparable_exponent(&kappa), None);
        assert!(!c.contains(&kappa, &p("u^2")));
        assert!(c.contains(&kappa, &p("1")));
    }

    #[test]
    fn finite_subfield_is_closed() {
        let kappa = Kappa::finite(2, 4).unwrap();
        let f = SubfieldSpec::parse(&kappa, "GF(4)").unwrap();
        let els = f.elements(&kappa).unwrap();
        assert_eq!(els.len(), 4);
        for a in &els {
            for b in &els {
                assert!(f.contains(&kappa, &kappa.add(a, b)));
                assert!(f.contains(&kappa, &kappa.mul(a, b)));
            }
        }
        assert!(SubfieldSpec::parse(&kappa, "GF(8)").is_err());
    }

    #[test]
    fn pvd_closed_under_ring_operations() {
        let d = gf4_over_gf2();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut members = Vec::new();
        while members.len() < 60 {
            let x = d.field.random_element(&mut rng, 2);
            if d.member(&x) {
                members.push(x);
            }
        }
        for a in &members {
            for b in members.iter().take(20) {
                assert!(d.member(&d.field.sub(a, b)));
                assert!(d.member(&d.field.mul(a, b)));
            }
        }
    }
}
