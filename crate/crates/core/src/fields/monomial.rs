//! `κ(t)` with the `t`-adic valuation, and its Hahn-type extension
//! `⋃_N κ(t^{1/N})` whose value group is `ℚ`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::{Rng, RngCore};

use super::kappa::roots_over_gf_function_field;
use super::{Field, FunctionField, GfElem, Kappa, KappaElem, ValuedField};
use crate::error::{Error, Result};
use crate::ordgroup::{GroupElement, GroupSpec, Val, Q};
use crate::ratfun::{Polynomial, RationalFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exponents {
    /// `κ(t)`, value group `ℤ`.
    Integral,
    /// Fractions of finitely supported sums `Σ c_i t^{q_i}`, value group `ℚ`.
    Rational,
}

/// An element `R(t^{1/N})` with `R ∈ κ(s)` reduced and `N` minimal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PuiseuxElem {
    denom: u32,
    frac: RationalFunction<KappaElem>,
}

impl PuiseuxElem {
    pub fn denom(&self) -> u32 {
        self.denom
    }

    /// The reduced fraction in `s = t^{1/N}`.
    pub fn frac(&self) -> &RationalFunction<KappaElem> {
        &self.frac
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialField {
    exponents: Exponents,
    kappa: Kappa,
    group: GroupSpec,
}

impl MonomialField {
    pub fn t_adic(kappa: Kappa) -> Self {
        MonomialField { exponents: Exponents::Integral, kappa, group: GroupSpec::integers() }
    }

    pub fn hahn(kappa: Kappa) -> Self {
        MonomialField { exponents: Exponents::Rational, kappa, group: GroupSpec::rationals() }
    }

    pub fn exponents(&self) -> Exponents {
        self.exponents
    }

    pub fn kappa(&self) -> &Kappa {
        &self.kappa
    }

    /// `t^e`; fractional exponents need the Hahn-type field.
    pub fn t_pow(&self, e: &Q) -> Option<PuiseuxElem> {
        if self.exponents == Exponents::Integral && !e.is_integer() {
            return None;
        }
        let denom = e.denom().to_u32()?;
        let num = e.numer().to_i64()?;
        let frac = RationalFunction::x(&self.kappa).powi(&self.kappa, num)?;
        Some(PuiseuxElem { denom, frac })
    }

    pub fn constant(&self, c: KappaElem) -> PuiseuxElem {
        PuiseuxElem { denom: 1, frac: RationalFunction::constant(&self.kappa, c) }
    }

    fn canon(&self, l: u32, frac: RationalFunction<KappaElem>) -> PuiseuxElem {
        if frac.is_zero() {
            return PuiseuxElem { denom: 1, frac };
        }
        let g = (l as usize).gcd(&frac.exponent_gcd(&self.kappa));
        PuiseuxElem { denom: l / g as u32, frac: frac.deflate(g) }
    }

    fn align<'a>(&self, a: &'a PuiseuxElem, b: &'a PuiseuxElem) -> (u32, RationalFunction<KappaElem>, RationalFunction<KappaElem>) {
        if a.denom == b.denom {
            return (a.denom, a.frac.clone(), b.frac.clone());
        }
        let l = a.denom.lcm(&b.denom);
        let fa = a.frac.inflate(&self.kappa, (l / a.denom) as usize);
        let fb = b.frac.inflate(&self.kappa, (l / b.denom) as usize);
        (l, fa, fb)
    }

    fn ord(&self, a: &PuiseuxElem) -> Option<Q> {
        let o = a.frac.order_at_zero(&self.kappa)?;
        Some(Q::new(BigInt::from(o), BigInt::from(a.denom)))
    }
}

impl Field for MonomialField {
    type Elem = PuiseuxElem;

    fn zero(&self) -> PuiseuxElem {
        self.constant(self.kappa.zero())
    }

    fn one(&self) -> PuiseuxElem {
        self.constant(self.kappa.one())
    }

    fn is_zero(&self, a: &PuiseuxElem) -> bool {
        a.frac.is_zero()
    }

    fn add(&self, a: &PuiseuxElem, b: &PuiseuxElem) -> PuiseuxElem {
        let (l, fa, fb) = self.align(a, b);
        self.canon(l, fa.add(&self.kappa, &fb))
    }

    fn neg(&self, a: &PuiseuxElem) -> PuiseuxElem {
        PuiseuxElem { denom: a.denom, frac: a.frac.neg(&self.kappa) }
    }

    fn mul(&self, a: &PuiseuxElem, b: &PuiseuxElem) -> PuiseuxElem {
        let (l, fa, fb) = self.align(a, b);
        self.canon(l, fa.mul(&self.kappa, &fb))
    }

    fn inv(&self, a: &PuiseuxElem) -> Option<PuiseuxElem> {
        Some(PuiseuxElem { denom: a.denom, frac: a.frac.inv(&self.kappa)? })
    }

    fn characteristic(&self) -> u64 {
        self.kappa.characteristic()
    }

    fn from_int(&self, n: &BigInt) -> PuiseuxElem {
        self.constant(self.kappa.from_int(n))
    }

    fn format(&self, a: &PuiseuxElem) -> String {
        let n = a.denom as i64;
        a.frac.format_with(&self.kappa, |i| {
            let e = Q::new(BigInt::from(i as i64), BigInt::from(n));
            if e.is_one() {
                "t".to_string()
            } else if e.is_integer() {
                format!("t^{e}")
            } else {
                format!("t^{{{e}}}")
            }
        })
    }

    fn symbol(&self, name: &str) -> Option<PuiseuxElem> {
        self.symbol_pow(name, &Q::one())
    }

    fn symbol_pow(&self, name: &str, exp: &Q) -> Option<PuiseuxElem> {
        if name == "t" {
            return self.t_pow(exp);
        }
        self.kappa.symbol_pow(name, exp).map(|c| self.constant(c))
    }
}

impl ValuedField for MonomialField {
    fn value_group(&self) -> &GroupSpec {
        &self.group
    }

    fn valuation(&self, a: &PuiseuxElem) -> Val {
        match self.ord(a) {
            None => Val::Infinity,
            Some(q) => Val::Finite(GroupElement::scalar(q)),
        }
    }

    fn residue_field(&self) -> &Kappa {
        &self.kappa
    }

    fn residue(&self, a: &PuiseuxElem) -> Result<KappaElem> {
        let k = &self.kappa;
        let Some(o) = a.frac.order_at_zero(k) else {
            return Ok(k.zero());
        };
        if o < 0 {
            return Err(Error::NegativeValuation(self.format(a)));
        }
        if o > 0 {
            return Ok(k.zero());
        }
        let num = a.frac.num();
        let den = a.frac.den();
        let n0 = &num.coeffs()[num.order(k).unwrap()];
        let d0 = &den.coeffs()[den.order(k).unwrap()];
        Ok(k.div(n0, d0).unwrap())
    }

    fn lift(&self, c: &KappaElem) -> PuiseuxElem {
        self.constant(c.clone())
    }

    fn element_of_value(&self, g: &GroupElement) -> Option<PuiseuxElem> {
        if g.rank() != 1 {
            return None;
        }
        self.t_pow(&g.coords()[0])
    }

    fn random_element(&self, rng: &mut dyn RngCore, height: u32) -> PuiseuxElem {
        let k = &self.kappa;
        let h = height.clamp(1, 3);
        let coeff_height = if k.is_finite() { 0 } else { 1 };
        let poly = |deg: u32, monic: bool, rng: &mut dyn RngCore| {
            let mut c: Vec<KappaElem> = (0..=deg).map(|_| k.random(rng, coeff_height)).collect();
            if monic {
                c[deg as usize] = k.one();
            }
            Polynomial::new(k, c)
        };
        let mut num = poly(rng.gen_range(0..=h), false, rng);
        while num.is_zero() {
            num = poly(rng.gen_range(0..=h), false, rng);
        }
        let den = poly(rng.gen_range(0..=h.min(2)), true, rng);
        let denom = match self.exponents {
            Exponents::Integral => 1,
            Exponents::Rational => rng.gen_range(1..=3),
        };
        let shift = rng.gen_range(-2i64..=2);
        let frac = RationalFunction::normalize(k, num, den)
            .unwrap()
            .mul(k, &RationalFunction::x(k).powi(k, shift).unwrap());
        self.canon(denom, frac)
    }

    fn describe(&self) -> String {
        match self.exponents {
            Exponents::Integral => format!("TAdicRat({})", self.kappa.describe()),
            Exponents::Rational => format!("HahnFinite({}, Q)", self.kappa.describe()),
        }
    }

    fn roots_in_field(&self, p: &Polynomial<PuiseuxElem>) -> Option<Vec<PuiseuxElem>> {
        if self.exponents != Exponents::Integral || !self.kappa.is_finite() {
            return None;
        }
        let base = self.kappa.base().clone();
        let to_gf = |c: &KappaElem| self.kappa.as_constant(c).unwrap();
        let field = FunctionField::new(base.clone(), "t");
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| {
                let n = c.frac.num().map(&base, to_gf);
                let d = c.frac.den().map(&base, to_gf);
                RationalFunction::normalize(&base, n, d).unwrap()
            })
            .collect();
        let roots = roots_over_gf_function_field(&field, &Polynomial::new(&field, coeffs))?;
        let k = &self.kappa;
        let back = |r: &Polynomial<GfElem>| r.map(k, |c| KappaElem::Fin(*c));
        Some(
            roots
                .iter()
                .map(|r| {
                    let frac = RationalFunction::normalize(k, back(r.num()), back(r.den())).unwrap();
                    PuiseuxElem { denom: 1, frac }
                })
                .collect(),
        )
    }
}

impl MonomialField {
    /// Reinterprets `R(s)` over this field's coefficients as an element with
    /// `s = t^{1/denom}`.
    pub fn from_series(&self, denom: u32, frac: RationalFunction<KappaElem>) -> PuiseuxElem {
        self.canon(denom, frac)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordgroup::{q, q2};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn hahn2() -> MonomialField {
        MonomialField::hahn(Kappa::rational(2, 1).unwrap())
    }

    #[test]
    fn valuations_from_examples() {
        let k = MonomialField::t_adic(Kappa::finite(2, 1).unwrap());
        let a = k.parse("t^2/(1+t)").unwrap();
        assert_eq!(k.valuation(&a), Val::Finite(GroupElement::int(2)));
        let h = hahn2();
        let b = h.parse("t^{1/2} + t").unwrap();
        assert_eq!(h.valuation(&b), Val::Finite(GroupElement::scalar(q2(1, 2))));
    }

    #[test]
    fn residue_drops_higher_terms() {
        let k = MonomialField::t_adic(Kappa::finite(2, 2).unwrap());
        let a = k.parse("u + t").unwrap();
        assert_eq!(k.residue(&a).unwrap(), k.kappa().parse("u").unwrap());
        let c = k.parse("u*t").unwrap();
        assert_eq!(k.residue(&c).unwrap(), k.kappa().zero());
        assert!(k.residue(&k.parse("1/t").unwrap()).is_err());
    }

    #[test]
    fn canonical_denominator_is_minimal() {
        let h = hahn2();
        let a = h.parse("t^{1/2} * t^{1/2}").unwrap();
        assert_eq!(a, h.parse("t").unwrap());
        assert_eq!(a.denom(), 1);
        let b = h.parse("t^{1/3} + t^{1/2}").unwrap();
        assert_eq!(b.denom(), 6);
        let c = h.sub(&b, &h.parse("t^{1/3}").unwrap());
        assert_eq!(c.denom(), 2);
        assert_eq!(h.format(&c), "t^{1/2}");
    }

    #[test]
    fn formatting_round_trips() {
        let h = hahn2();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let a = h.random_element(&mut rng, 3);
            let s = h.format(&a);
            assert_eq!(h.parse(&s).unwrap(), a, "{s}");
        }
    }

    #[test]
    fn field_axioms_on_samples() {
        let h = hahn2();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let a = h.random_element(&mut rng, 2);
            let b = h.random_element(&mut rng, 2);
            let c = h.random_element(&mut rng, 2);
            assert_eq!(h.mul(&a, &h.add(&b, &c)), h.add(&h.mul(&a, &b), &h.mul(&a, &c)));
            let va = h.valuation(&a);
            let vb = h.valuation(&b);
            assert_eq!(h.valuation(&h.mul(&a, &b)), va.add(&vb));
            if va != vb {
                assert_eq!(h.valuation(&h.add(&a, &b)), va.min(vb));
            }
        }
    }

    #[test]
    fn element_of_value_hits_target() {
        let h = hahn2();
        for g in [q2(1, 2), q2(-7, 3), q(4)] {
            let t = h.element_of_value(&GroupElement::scalar(g.clone())).unwrap();
            assert_eq!(h.valuation(&t), Val::Finite(GroupElement::scalar(g)));
        }
    }

    #[test]
    fn t_adic_roots_over_finite_residue() {
        let k = MonomialField::t_adic(Kappa::finite(2, 1).unwrap());
        // (x - t)(x - 1/(1+t))
        let a = k.parse("t").unwrap();
        let b = k.parse("1/(1+t)").unwrap();
        let lin = |c: &PuiseuxElem| Polynomial::new(&k, vec![k.neg(c), k.one()]);
        let f = lin(&a).mul(&k, &lin(&b));
        let r = k.roots_in_field(&f).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.contains(&a) && r.contains(&b));
    }
}
