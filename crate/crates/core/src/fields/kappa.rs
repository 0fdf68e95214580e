//! Residue fields: `GF(q)` and the rational function field `GF(q)(u)`.

use num_bigint::BigInt;
use rand::{Rng, RngCore};

use super::{FiniteField, FunctionField, GfElem, Field};
use crate::error::Result;
use crate::ratfun::{Polynomial, RationalFunction};

/// Upper bound on candidate roots tried by the rational root search.
const ROOT_CANDIDATE_BUDGET: usize = 200_000;
/// Upper bound on trial divisors per degree when factoring over `GF(q)`.
const TRIAL_DIVISOR_BUDGET: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Kappa {
    Finite(FiniteField),
    /// `GF(q)(u)`; the generator of `GF(q)` itself is printed as `w`.
    Rational(FunctionField<FiniteField>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum KappaElem {
    Fin(GfElem),
    Rat(RationalFunction<GfElem>),
}

impl Kappa {
    pub fn finite(p: u64, k: u32) -> Result<Self> {
        Ok(Kappa::Finite(FiniteField::new(p, k)?))
    }

    pub fn rational(p: u64, k: u32) -> Result<Self> {
        let base = FiniteField::with_generator(p, k, "w")?;
        Ok(Kappa::Rational(FunctionField::new(base, "u")))
    }

    /// The constant field `GF(q)`.
    pub fn base(&self) -> &FiniteField {
        match self {
            Kappa::Finite(f) => f,
            Kappa::Rational(r) => r.base(),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Kappa::Finite(_))
    }

    pub fn order(&self) -> Option<u64> {
        match self {
            Kappa::Finite(f) => Some(f.order()),
            Kappa::Rational(_) => None,
        }
    }

    pub fn describe(&self) -> String {
        let b = self.base();
        match self {
            Kappa::Finite(_) => format!("GF({})", b.order()),
            Kappa::Rational(_) => format!("GF({})(u)", b.order()),
        }
    }

    /// Every element, for finite fields.
    pub fn elements(&self) -> Option<Vec<KappaElem>> {
        match self {
            Kappa::Finite(f) => Some(f.elements().map(KappaElem::Fin).collect()),
            Kappa::Rational(_) => None,
        }
    }

    /// The transcendental `u` of `GF(q)(u)`.
    pub fn variable(&self) -> Option<KappaElem> {
        match self {
            Kappa::Finite(_) => None,
            Kappa::Rational(r) => Some(KappaElem::Rat(r.generator())),
        }
    }

    pub fn constant(&self, c: GfElem) -> KappaElem {
        match self {
            Kappa::Finite(_) => KappaElem::Fin(c),
            Kappa::Rational(r) => KappaElem::Rat(r.constant(c)),
        }
    }

    /// View of an element of `GF(q)(u)` as a reduced fraction (constants embed).
    pub fn as_rat(&self, a: &KappaElem) -> RationalFunction<GfElem> {
        match a {
            KappaElem::Rat(r) => r.clone(),
            KappaElem::Fin(c) => RationalFunction::constant(self.base(), *c),
        }
    }

    /// The element as a constant of `GF(q)`, if it is one.
    pub fn as_constant(&self, a: &KappaElem) -> Option<GfElem> {
        match a {
            KappaElem::Fin(c) => Some(*c),
            KappaElem::Rat(r) => r.constant_value(self.base()),
        }
    }

    /// `a^(p^e)`.
    pub fn frobenius(&self, a: &KappaElem, e: u32) -> KappaElem {
        let mut out = a.clone();
        for _ in 0..e {
            out = self.pow(&out, self.characteristic());
        }
        out
    }

    /// Elements of small height: all of `GF(q)`, or the reduced fractions of
    /// `GF(q)(u)` with numerator and denominator degree at most `max_deg`.
    pub fn small_elements(&self, max_deg: usize) -> Vec<KappaElem> {
        match self {
            Kappa::Finite(f) => f.elements().map(KappaElem::Fin).collect(),
            Kappa::Rational(r) => {
                let b = r.base();
                let nums = all_polys(b, max_deg);
                let dens: Vec<_> = all_polys(b, max_deg).into_iter().filter(|d| d.is_monic(b)).collect();
                let mut out = Vec::new();
                for d in &dens {
                    for n in &nums {
                        if n.is_zero() && !d.is_constant() {
                            continue;
                        }
                        if !n.gcd(b, d).is_constant() {
                            continue;
                        }
                        let f = RationalFunction::normalize(b, n.clone(), d.clone()).unwrap();
                        out.push(KappaElem::Rat(f));
                    }
                }
                out
            }
        }
    }

    pub fn random(&self, rng: &mut dyn RngCore, height: u32) -> KappaElem {
        match self {
            Kappa::Finite(f) => KappaElem::Fin(GfElem(rng.gen_range(0..f.order() as u32))),
            Kappa::Rational(r) => {
                let b = r.base();
                let q = b.order() as u32;
                let dn = rng.gen_range(0..=height);
                let dd = rng.gen_range(0..=height);
                let mut poly = |deg: u32, monic: bool| {
                    let mut c: Vec<GfElem> = (0..=deg).map(|_| GfElem(rng.gen_range(0..q))).collect();
                    if monic {
                        c[deg as usize] = b.one();
                    }
                    Polynomial::new(b, c)
                };
                let num = poly(dn, false);
                let den = poly(dd, true);
                KappaElem::Rat(RationalFunction::normalize(b, num, den).unwrap())
            }
        }
    }

    /// The distinct roots of a nonzero polynomial, or `None` when the search
    /// would exceed its budget.
    pub fn roots(&self, f: &Polynomial<KappaElem>) -> Option<Vec<KappaElem>> {
        if f.is_zero() {
            return None;
        }
        match self {
            Kappa::Finite(_) => {
                let all = self.elements().unwrap();
                Some(all.into_iter().filter(|c| self.is_zero(&f.eval(self, c))).collect())
            }
            Kappa::Rational(_) => rational_roots(self, f),
        }
    }
}

fn all_polys(b: &FiniteField, max_deg: usize) -> Vec<Polynomial<GfElem>> {
    let q = b.order();
    let count = q.pow(max_deg as u32 + 1);
    (0..count)
        .map(|mut code| {
            let coeffs = (0..=max_deg)
                .map(|_| {
                    let c = GfElem((code % q) as u32);
                    code /= q;
                    c
                })
                .collect();
            Polynomial::new(b, coeffs)
        })
        .collect()
}

/// Monic irreducible factors with multiplicity, by trial division in
/// increasing degree.
pub(crate) fn factor_over_gf(b: &FiniteField, f: &Polynomial<GfElem>) -> Option<Vec<(Polynomial<GfElem>, u32)>> {
    let mut rest = f.monic(b);
    let mut out = Vec::new();
    let q = b.order();
    let mut d = 1usize;
    while rest.degree().unwrap_or(0) >= 2 * d {
        let count = q.checked_pow(d as u32).filter(|&c| c <= TRIAL_DIVISOR_BUDGET)?;
        for code in 0..count {
            let mut c = code;
            let mut coeffs: Vec<GfElem> = (0..d)
                .map(|_| {
                    let x = GfElem((c % q) as u32);
                    c /= q;
                    x
                })
                .collect();
            coeffs.push(b.one());
            let g = Polynomial::new(b, coeffs);
            let mut mult = 0;
            loop {
                let (quo, rem) = rest.div_rem(b, &g).unwrap();
                if !rem.is_zero() {
                    break;
                }
                rest = quo;
                mult += 1;
            }
            if mult > 0 {
                out.push((g, mult));
            }
        }
        d += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        out.push((rest, 1));
    }
    Some(out)
}

fn monic_divisors(b: &FiniteField, f: &Polynomial<GfElem>) -> Option<Vec<Polynomial<GfElem>>> {
    let factors = factor_over_gf(b, f)?;
    let mut divs = vec![Polynomial::one(b)];
    for (g, m) in factors {
        let mut next = Vec::with_capacity(divs.len() * (m as usize + 1));
        for d in &divs {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..m {
                acc = acc.mul(b, &g);
                next.push(acc.clone());
            }
        }
        divs = next;
        if divs.len() > ROOT_CANDIDATE_BUDGET {
            return None;
        }
    }
    Some(divs)
}

// Rational root theorem over GF(q)[u].
fn rational_roots(k: &Kappa, f: &Polynomial<KappaElem>) -> Option<Vec<KappaElem>> {
    let field = match k {
        Kappa::Rational(r) => r,
        Kappa::Finite(_) => unreachable!(),
    };
    let poly = Polynomial::new(field, f.coeffs().iter().map(|c| k.as_rat(c)).collect());
    let roots = roots_over_gf_function_field(field, &poly)?;
    Some(roots.into_iter().map(KappaElem::Rat).collect())
}

/// Distinct roots in `GF(q)(s)` of a nonzero polynomial with coefficients in
/// `GF(q)(s)`, via the rational root theorem over `GF(q)[s]`; `None` when
/// factoring the extreme coefficients exceeds the search budget.
pub(crate) fn roots_over_gf_function_field(
    field: &FunctionField<FiniteField>,
    f: &Polynomial<RationalFunction<GfElem>>,
) -> Option<Vec<RationalFunction<GfElem>>> {
    let b = field.base();
    let coeffs = f.coeffs();
    if coeffs.is_empty() {
        return None;
    }
    let mut lcm = Polynomial::one(b);
    for c in coeffs {
        let g = lcm.gcd(b, c.den());
        lcm = lcm.mul(b, c.den()).div_rem(b, &g).unwrap().0;
    }
    let ints: Vec<Polynomial<GfElem>> = coeffs
        .iter()
        .map(|c| c.num().mul(b, &lcm.div_rem(b, c.den()).unwrap().0))
        .collect();
    let lo = ints.iter().position(|c| !c.is_zero()).unwrap();
    let mut roots = Vec::new();
    if lo > 0 {
        roots.push(field.zero());
    }
    let ints = &ints[lo..];
    if ints.len() == 1 {
        return Some(roots);
    }
    let nums = monic_divisors(b, &ints[0])?;
    let dens = monic_divisors(b, ints.last().unwrap())?;
    if nums.len() * dens.len() * (b.order() as usize - 1) > ROOT_CANDIDATE_BUDGET {
        return None;
    }
    let poly: Polynomial<RationalFunction<GfElem>> =
        Polynomial::new(field, ints.iter().map(|c| RationalFunction::from_poly(b, c.clone())).collect());
    for s in &dens {
        for r in &nums {
            if !r.gcd(b, s).is_constant() {
                continue;
            }
            for lam in b.nonzero_elements() {
                let cand = RationalFunction::normalize(b, r.scale(b, &lam), s.clone()).unwrap();
                if poly.eval(field, &cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    Some(roots)
}

impl Field for Kappa {
    type Elem = KappaElem;

    fn zero(&self) -> KappaElem {
        self.constant(GfElem(0))
    }

    fn one(&self) -> KappaElem {
        self.constant(GfElem(1))
    }

    fn is_zero(&self, a: &KappaElem) -> bool {
        match a {
            KappaElem::Fin(c) => c.0 == 0,
            KappaElem::Rat(r) => r.is_zero(),
        }
    }

    fn add(&self, a: &KappaElem, b: &KappaElem) -> KappaElem {
        match self {
            Kappa::Finite(f) => KappaElem::Fin(f.add(&fin(a), &fin(b))),
            Kappa::Rational(r) => KappaElem::Rat(r.add(&self.as_rat(a), &self.as_rat(b))),
        }
    }

    fn neg(&self, a: &KappaElem) -> KappaElem {
        match self {
            Kappa::Finite(f) => KappaElem::Fin(f.neg(&fin(a))),
            Kappa::Rational(r) => KappaElem::Rat(r.neg(&self.as_rat(a))),
        }
    }

    fn mul(&self, a: &KappaElem, b: &KappaElem) -> KappaElem {
        match self {
            Kappa::Finite(f) => KappaElem::Fin(f.mul(&fin(a), &fin(b))),
            Kappa::Rational(r) => KappaElem::Rat(r.mul(&self.as_rat(a), &self.as_rat(b))),
        }
    }

    fn inv(&self, a: &KappaElem) -> Option<KappaElem> {
        match self {
            Kappa::Finite(f) => f.inv(&fin(a)).map(KappaElem::Fin),
            Kappa::Rational(r) => r.inv(&self.as_rat(a)).map(KappaElem::Rat),
        }
    }

    fn characteristic(&self) -> u64 {
        self.base().p()
    }

    fn from_int(&self, n: &BigInt) -> KappaElem {
        self.constant(self.base().from_int(n))
    }

    fn format(&self, a: &KappaElem) -> String {
        match self {
            Kappa::Finite(f) => f.format(&fin(a)),
            Kappa::Rational(r) => r.format(&self.as_rat(a)),
        }
    }

    fn symbol(&self, name: &str) -> Option<KappaElem> {
        match self {
            Kappa::Finite(f) => f.symbol(name).map(KappaElem::Fin),
            Kappa::Rational(r) => r.symbol(name).map(KappaElem::Rat),
        }
    }
}

fn fin(a: &KappaElem) -> GfElem {
    match a {
        KappaElem::Fin(c) => *c,
        KappaElem::Rat(_) => panic!("rational residue in a finite residue field"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_in_rational_function_field() {
        let k = Kappa::rational(2, 1).unwrap();
        // x^2 + x + u has no root: the degrees of the two sides cannot match
        let f = Polynomial::new(&k, vec![k.parse("u").unwrap(), k.one(), k.one()]);
        assert_eq!(k.roots(&f).unwrap(), vec![]);
        // (x - u)(x - 1/(u+1))
        let a = k.parse("u").unwrap();
        let b = k.parse("1/(u+1)").unwrap();
        let lin = |c: &KappaElem| Polynomial::new(&k, vec![k.neg(c), k.one()]);
        let g = lin(&a).mul(&k, &lin(&b));
        let mut r = k.roots(&g).unwrap();
        r.sort_by_key(|e| k.format(e));
        let mut expect = vec![a, b];
        expect.sort_by_key(|e| k.format(e));
        assert_eq!(r, expect);
        // x^4 - u^2 = (x^2 - u)^2 has no root in GF(2)(u)
        let h = Polynomial::new(&k, vec![k.parse("u^2").unwrap(), k.zero(), k.zero(), k.zero(), k.one()]);
        assert!(k.roots(&h).unwrap().is_empty());
    }

    #[test]
    fn roots_in_finite_field() {
        let k = Kappa::finite(5, 1).unwrap();
        let coeffs = [0i64, 4, 0, 0, 0, 1].iter().map(|&c| k.from_i64(c)).collect();
        let f = Polynomial::new(&k, coeffs);
        assert_eq!(k.roots(&f).unwrap().len(), 5);
    }

    #[test]
    fn factoring_recovers_product() {
        let b = FiniteField::new(3, 1).unwrap();
        let f = Polynomial::new(&b, vec![GfElem(1), GfElem(0), GfElem(1)]);
        let g = Polynomial::new(&b, vec![GfElem(2), GfElem(1)]);
        let h = f.mul(&b, &g).mul(&b, &g);
        let fac = factor_over_gf(&b, &h).unwrap();
        let back = fac.iter().fold(Polynomial::one(&b), |acc, (p, m)| acc.mul(&b, &p.pow(&b, *m)));
        assert_eq!(back, h);
        assert_eq!(fac.len(), 2);
    }

    #[test]
    fn small_elements_are_distinct() {
        let k = Kappa::rational(2, 1).unwrap();
        let els = k.small_elements(1);
        let set: std::collections::HashSet<_> = els.iter().collect();
        assert_eq!(set.len(), els.len());
        // 0, 1, u, u+1, 1/u, 1/(u+1), (u+1)/u, u/(u+1)
        assert_eq!(els.len(), 8);
    }

    #[test]
    fn frobenius_in_gf4() {
        let k = Kappa::finite(2, 2).unwrap();
        for a in k.elements().unwrap() {
            assert_eq!(k.frobenius(&a, 2), a);
        }
    }
}
