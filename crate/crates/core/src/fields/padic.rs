use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, RngCore};

use super::{Field, GfElem, Kappa, KappaElem, ValuedField};
use crate::error::{Error, Result};
use crate::ordgroup::{GroupElement, GroupSpec, Val, Q};
use crate::ratfun::Polynomial;

/// Integers above this bound are not factored by the rational root search.
const FACTOR_LIMIT: u64 = 1 << 40;
const ROOT_CANDIDATE_BUDGET: usize = 100_000;

/// `ℚ` with the `p`-adic valuation; residue field `GF(p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PAdicRationals {
    p: u64,
    group: GroupSpec,
    kappa: Kappa,
}

impl PAdicRationals {
    pub fn new(p: u64) -> Result<Self> {
        let kappa = Kappa::finite(p, 1)?;
        Ok(PAdicRationals { p, group: GroupSpec::integers(), kappa })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// `v_p(n)` for a nonzero integer.
    pub fn ord_int(&self, n: &BigInt) -> i64 {
        debug_assert!(!n.is_zero());
        let p = BigInt::from(self.p);
        let mut n = n.clone();
        let mut k = 0;
        loop {
            let (q, r) = n.div_rem(&p);
            if !r.is_zero() {
                return k;
            }
            n = q;
            k += 1;
        }
    }

    pub fn ord(&self, a: &Q) -> Option<i64> {
        if a.is_zero() {
            return None;
        }
        Some(self.ord_int(a.numer()) - self.ord_int(a.denom()))
    }
}

impl Field for PAdicRationals {
    type Elem = Q;

    fn zero(&self) -> Q {
        Q::zero()
    }

    fn one(&self) -> Q {
        Q::one()
    }

    fn is_zero(&self, a: &Q) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }

    fn neg(&self, a: &Q) -> Q {
        -a
    }

    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }

    fn inv(&self, a: &Q) -> Option<Q> {
        (!a.is_zero()).then(|| a.recip())
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn from_int(&self, n: &BigInt) -> Q {
        Q::from_integer(n.clone())
    }

    fn format(&self, a: &Q) -> String {
        a.to_string()
    }

    fn symbol(&self, _name: &str) -> Option<Q> {
        None
    }
}

impl ValuedField for PAdicRationals {
    fn value_group(&self) -> &GroupSpec {
        &self.group
    }

    fn valuation(&self, a: &Q) -> Val {
        match self.ord(a) {
            None => Val::Infinity,
            Some(k) => Val::Finite(GroupElement::int(k)),
        }
    }

    fn residue_field(&self) -> &Kappa {
        &self.kappa
    }

    fn residue(&self, a: &Q) -> Result<KappaElem> {
        if a.is_zero() {
            return Ok(KappaElem::Fin(GfElem(0)));
        }
        let v = self.ord(a).unwrap();
        if v < 0 {
            return Err(Error::NegativeValuation(a.to_string()));
        }
        if v > 0 {
            return Ok(KappaElem::Fin(GfElem(0)));
        }
        let f = self.kappa.base();
        let n = f.from_int(a.numer());
        let d = f.from_int(a.denom());
        Ok(KappaElem::Fin(f.div(&n, &d).unwrap()))
    }

    fn lift(&self, c: &KappaElem) -> Q {
        match c {
            KappaElem::Fin(g) => Q::from_integer(BigInt::from(g.0)),
            KappaElem::Rat(_) => panic!("p-adic residues are finite"),
        }
    }

    fn element_of_value(&self, g: &GroupElement) -> Option<Q> {
        let c = &g.coords()[0];
        if g.rank() != 1 || !c.is_integer() {
            return None;
        }
        let e = c.to_integer().to_i32()?;
        let pe = num_traits::pow(BigInt::from(self.p), e.unsigned_abs() as usize);
        Some(if e >= 0 { Q::from_integer(pe) } else { Q::new(BigInt::one(), pe) })
    }

    fn random_element(&self, rng: &mut dyn RngCore, height: u32) -> Q {
        let h = height.max(1) as i64;
        let mut r = 0;
        while r == 0 {
            r = rng.gen_range(-h..=h);
        }
        let s = rng.gen_range(1..=h);
        let e = rng.gen_range(-2i32..=2);
        let a = Q::new(BigInt::from(r), BigInt::from(s));
        let pe = Q::from_integer(BigInt::from(self.p)).pow(e);
        a * pe
    }

    fn describe(&self) -> String {
        format!("PAdicQ({})", self.p)
    }

    fn roots_in_field(&self, p: &Polynomial<Q>) -> Option<Vec<Q>> {
        rational_roots(self, p)
    }

    fn integral_approximation(&self, a: &Q, precision: u32) -> Option<Q> {
        if a.is_zero() {
            return Some(Q::zero());
        }
        if self.ord(a)? < 0 {
            return None;
        }
        let m = num_traits::pow(BigInt::from(self.p), precision as usize);
        let den_inv = a.denom().modpow(&(totient_prime_power(self.p, precision) - 1u32), &m);
        let n = (a.numer() * den_inv).mod_floor(&m);
        Some(Q::from_integer(n))
    }
}

fn totient_prime_power(p: u64, k: u32) -> BigInt {
    if k == 0 {
        return BigInt::one();
    }
    num_traits::pow(BigInt::from(p), k as usize - 1) * BigInt::from(p - 1)
}

fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64().filter(|&n| n <= FACTOR_LIMIT)?;
    let mut m = n;
    let mut primes: Vec<(u64, u32)> = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            let mut e = 0;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            primes.push((d, e));
        }
        d += 1;
    }
    if m > 1 {
        primes.push((m, 1));
    }
    let mut divs = vec![1u64];
    for (p, e) in primes {
        let mut next = Vec::new();
        for &x in &divs {
            let mut y = x;
            for _ in 0..=e {
                next.push(y);
                y *= p;
            }
        }
        divs = next;
    }
    divs.sort_unstable();
    Some(divs.into_iter().map(BigInt::from).collect())
}

// Rational root theorem on the primitive integer multiple.
fn rational_roots(k: &PAdicRationals, f: &Polynomial<Q>) -> Option<Vec<Q>> {
    let coeffs = f.coeffs();
    if coeffs.is_empty() {
        return None;
    }
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * Q::from_integer(lcm.clone())).to_integer()).collect();
    let lo = ints.iter().position(|c| !c.is_zero()).unwrap();
    let mut roots = Vec::new();
    if lo > 0 {
        roots.push(Q::zero());
    }
    let ints = &ints[lo..];
    if ints.len() == 1 {
        return Some(roots);
    }
    let nums = small_divisors(&ints[0])?;
    let dens = small_divisors(ints.last().unwrap())?;
    if nums.len() * dens.len() > ROOT_CANDIDATE_BUDGET {
        return None;
    }
    let poly = Polynomial::new(k, ints.iter().map(|c| Q::from_integer(c.clone())).collect());
    for s in &dens {
        for r in &nums {
            if !r.gcd(s).is_one() {
                continue;
            }
            for sign in [1, -1] {
                let cand = Q::new(r * sign, s.clone());
                if poly.eval(k, &cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    Some(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordgroup::q2;

    fn z5() -> PAdicRationals {
        PAdicRationals::new(5).unwrap()
    }

    #[test]
    fn valuation_examples() {
        let k = z5();
        assert_eq!(k.valuation(&q2(50, 1)), Val::Finite(GroupElement::int(2)));
        assert_eq!(k.valuation(&q2(10, 3)), Val::Finite(GroupElement::int(1)));
        assert_eq!(k.valuation(&q2(1, 25)), Val::Finite(GroupElement::int(-2)));
        assert_eq!(k.valuation(&Q::zero()), Val::Infinity);
    }

    #[test]
    fn residue_of_seven_halves() {
        // 7 * 2^-1 = 7 * 3 = 21 = 1 mod 5
        let k = z5();
        assert_eq!(k.residue(&q2(7, 2)).unwrap(), KappaElem::Fin(GfElem(1)));
        assert_eq!(k.residue(&q2(10, 3)).unwrap(), KappaElem::Fin(GfElem(0)));
        assert!(matches!(k.residue(&q2(1, 5)), Err(Error::NegativeValuation(_))));
    }

    #[test]
    fn rational_roots_found() {
        let k = z5();
        // (2x - 3)(x + 5) x
        let f = Polynomial::new(&k, vec![q2(0, 1), q2(-15, 1), q2(7, 1), q2(2, 1)]);
        let mut r = k.roots_in_field(&f).unwrap();
        r.sort();
        assert_eq!(r, vec![q2(-5, 1), q2(0, 1), q2(3, 2)]);
        let g = Polynomial::new(&k, vec![q2(-2, 1), q2(0, 1), q2(1, 1)]);
        assert!(k.roots_in_field(&g).unwrap().is_empty());
    }

    #[test]
    fn integral_approximation_is_close() {
        let k = z5();
        let a = q2(7, 3);
        let n = k.integral_approximation(&a, 4).unwrap();
        assert!(n.is_integer());
        assert!(k.ord(&(&n - &a)).unwrap() >= 4);
        assert!(k.integral_approximation(&q2(1, 5), 3).is_none());
    }

    #[test]
    fn element_of_value_round_trips() {
        let k = z5();
        for e in -3..=3 {
            let t = k.element_of_value(&GroupElement::int(e)).unwrap();
            assert_eq!(k.valuation(&t), Val::Finite(GroupElement::int(e)));
        }
        assert!(k.element_of_value(&GroupElement::scalar(q2(1, 2))).is_none());
    }
}
