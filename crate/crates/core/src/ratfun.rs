//! Univariate polynomials and reduced rational functions over any [`Field`].
//!
//! A [`RationalFunction`] is always held in canonical form: numerator and
//! denominator coprime, denominator monic. Equality of canonical forms is
//! equality in `K(x)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::Field;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<E> {
    coeffs: Vec<E>,
}

impl<E: Clone + PartialEq> Polynomial<E> {
    /// Builds `coeffs[0] + coeffs[1] x + ...`, trimming trailing zeros.
    pub fn new<F: Field<Elem = E>>(k: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| k.is_zero(c)) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant<F: Field<Elem = E>>(k: &F, c: E) -> Self {
        Polynomial::new(k, vec![c])
    }

    pub fn one<F: Field<Elem = E>>(k: &F) -> Self {
        Polynomial { coeffs: vec![k.one()] }
    }

    pub fn monomial<F: Field<Elem = E>>(k: &F, c: E, degree: usize) -> Self {
        if k.is_zero(&c) {
            return Self::zero();
        }
        let mut coeffs = vec![k.zero(); degree];
        coeffs.push(c);
        Polynomial { coeffs }
    }

    pub fn x<F: Field<Elem = E>>(k: &F) -> Self {
        Polynomial::monomial(k, k.one(), 1)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Indices of nonzero coefficients, ascending.
    pub fn support<F: Field<Elem = E>>(&self, k: &F) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| !k.is_zero(&self.coeffs[i])).collect()
    }

    /// Lowest index with a nonzero coefficient.
    pub fn order<F: Field<Elem = E>>(&self, k: &F) -> Option<usize> {
        self.coeffs.iter().position(|c| !k.is_zero(c))
    }

    pub fn is_monic<F: Field<Elem = E>>(&self, k: &F) -> bool {
        self.leading().is_some_and(|c| k.is_one(c))
    }

    pub fn add<F: Field<Elem = E>>(&self, k: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = k.zero();
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                k.add(a, b)
            })
            .collect();
        Polynomial::new(k, coeffs)
    }

    pub fn neg<F: Field<Elem = E>>(&self, k: &F) -> Self {
        Polynomial { coeffs: self.coeffs.iter().map(|c| k.neg(c)).collect() }
    }

    pub fn sub<F: Field<Elem = E>>(&self, k: &F, other: &Self) -> Self {
        self.add(k, &other.neg(k))
    }

    pub fn mul<F: Field<Elem = E>>(&self, k: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![k.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if k.is_zero(b) {
                    continue;
                }
                out[i + j] = k.add(&out[i + j], &k.mul(a, b));
            }
        }
        Polynomial::new(k, out)
    }

    pub fn scale<F: Field<Elem = E>>(&self, k: &F, c: &E) -> Self {
        Polynomial::new(k, self.coeffs.iter().map(|a| k.mul(a, c)).collect())
    }

    pub fn pow<F: Field<Elem = E>>(&self, k: &F, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Polynomial::one(k);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(k, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(k, &base);
            }
        }
        acc
    }

    /// Euclidean division; `None` when dividing by zero.
    pub fn div_rem<F: Field<Elem = E>>(&self, k: &F, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lead_inv = k.inv(divisor.leading()?)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![k.zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = k.mul(&rem[i + dd], &lead_inv);
            if k.is_zero(&c) {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = k.sub(&rem[i + j], &k.mul(&c, b));
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Some((Polynomial::new(k, quot), Polynomial::new(k, rem)))
    }

    pub fn monic<F: Field<Elem = E>>(&self, k: &F) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let inv = k.inv(l).expect("nonzero leading coefficient");
                self.scale(k, &inv)
            }
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd<F: Field<Elem = E>>(&self, k: &F, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(k, &b).expect("nonzero divisor");
            a = b;
            b = r.monic(k);
        }
        a.monic(k)
    }

    pub fn eval<F: Field<Elem = E>>(&self, k: &F, a: &E) -> E {
        let mut acc = k.zero();
        for c in self.coeffs.iter().rev() {
            acc = k.add(&k.mul(&acc, a), c);
        }
        acc
    }

    /// `self(inner(x))`.
    pub fn compose<F: Field<Elem = E>>(&self, k: &F, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(k, inner).add(k, &Polynomial::constant(k, c.clone()));
        }
        acc
    }

    /// `self(x^m)`.
    pub fn inflate<F: Field<Elem = E>>(&self, k: &F, m: usize) -> Self {
        if m == 1 || self.is_constant() {
            return self.clone();
        }
        let mut coeffs = vec![k.zero(); (self.coeffs.len() - 1) * m + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * m] = c.clone();
        }
        Polynomial { coeffs }
    }

    /// `self(x^{1/m})`; caller guarantees every exponent is divisible by `m`.
    pub fn deflate(&self, m: usize) -> Self {
        if m == 1 {
            return self.clone();
        }
        Polynomial { coeffs: self.coeffs.iter().step_by(m).cloned().collect() }
    }

    /// gcd of the exponents carrying nonzero coefficients (0 for constants).
    pub fn exponent_gcd<F: Field<Elem = E>>(&self, k: &F) -> usize {
        self.support(k).into_iter().fold(0, num_integer::gcd)
    }

    /// Divides out `x^j` for the largest possible `j`; returns `(j, quotient)`.
    pub fn split_x_power<F: Field<Elem = E>>(&self, k: &F) -> (usize, Self) {
        match self.order(k) {
            None => (0, Self::zero()),
            Some(j) => (j, Polynomial { coeffs: self.coeffs[j..].to_vec() }),
        }
    }

    pub fn map<F2: Field>(&self, k2: &F2, f: impl Fn(&E) -> F2::Elem) -> Polynomial<F2::Elem> {
        Polynomial::new(k2, self.coeffs.iter().map(f).collect())
    }

    pub fn format<F: Field<Elem = E>>(&self, k: &F, var: &str) -> String {
        self.format_with(k, |i| if i == 1 { var.to_string() } else { format!("{var}^{i}") })
    }

    /// Prints with `mono(i)` standing for the `i`-th power of the variable.
    pub fn format_with<F: Field<Elem = E>>(&self, k: &F, mono: impl Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            if k.is_zero(c) {
                continue;
            }
            let mut s = k.format(c);
            let negative = s.starts_with('-') && !crate::fields::parse::is_compound(&s[1..]);
            if negative {
                s = s[1..].to_string();
            }
            let term = match i {
                0 => s,
                _ => {
                    let mono = mono(i);
                    if s == "1" {
                        mono
                    } else if crate::fields::parse::is_compound(&s) {
                        format!("({s})*{mono}")
                    } else {
                        format!("{s}*{mono}")
                    }
                }
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        out
    }
}

/// Value of a rational function at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evaluation<E> {
    Value(E),
    Pole,
}

impl<E> Evaluation<E> {
    pub fn value(self) -> Option<E> {
        match self {
            Evaluation::Value(v) => Some(v),
            Evaluation::Pole => None,
        }
    }

    pub fn is_pole(&self) -> bool {
        matches!(self, Evaluation::Pole)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction<E> {
    num: Polynomial<E>,
    den: Polynomial<E>,
}

impl<E: Clone + PartialEq> RationalFunction<E> {
    /// Reduces `num/den` to canonical form.
    pub fn normalize<F: Field<Elem = E>>(k: &F, num: Polynomial<E>, den: Polynomial<E>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero(k));
        }
        if den.is_constant() {
            let inv = k.inv(&den.coeffs[0]).expect("nonzero constant");
            return Ok(RationalFunction { num: num.scale(k, &inv), den: Polynomial::one(k) });
        }
        let g = num.gcd(k, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_rem(k, &g).unwrap().0, den.div_rem(k, &g).unwrap().0)
        };
        let inv = k.inv(den.leading().unwrap()).unwrap();
        Ok(RationalFunction { num: num.scale(k, &inv), den: den.scale(k, &inv) })
    }

    /// Wraps an already coprime pair, only making the denominator monic.
    fn from_coprime<F: Field<Elem = E>>(k: &F, num: Polynomial<E>, den: Polynomial<E>) -> Self {
        let inv = k.inv(den.leading().expect("nonzero denominator")).unwrap();
        if k.is_one(&inv) {
            return RationalFunction { num, den };
        }
        RationalFunction { num: num.scale(k, &inv), den: den.scale(k, &inv) }
    }

    pub fn zero<F: Field<Elem = E>>(k: &F) -> Self {
        RationalFunction { num: Polynomial::zero(), den: Polynomial::one(k) }
    }

    pub fn one<F: Field<Elem = E>>(k: &F) -> Self {
        Self::constant(k, k.one())
    }

    pub fn constant<F: Field<Elem = E>>(k: &F, c: E) -> Self {
        RationalFunction { num: Polynomial::constant(k, c), den: Polynomial::one(k) }
    }

    pub fn x<F: Field<Elem = E>>(k: &F) -> Self {
        Self::from_poly(k, Polynomial::x(k))
    }

    pub fn from_poly<F: Field<Elem = E>>(k: &F, p: Polynomial<E>) -> Self {
        RationalFunction { num: p, den: Polynomial::one(k) }
    }

    pub fn num(&self) -> &Polynomial<E> {
        &self.num
    }

    pub fn den(&self) -> &Polynomial<E> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn constant_value<F: Field<Elem = E>>(&self, k: &F) -> Option<E> {
        if !self.is_constant() {
            return None;
        }
        Some(self.num.coeffs.first().cloned().unwrap_or_else(|| k.zero()))
    }

    pub fn add<F: Field<Elem = E>>(&self, k: &F, other: &Self) -> Self {
        if self.den == other.den && self.den.is_constant() {
            return RationalFunction { num: self.num.add(k, &other.num), den: self.den.clone() };
        }
        let num = self.num.mul(k, &other.den).add(k, &other.num.mul(k, &self.den));
        let den = self.den.mul(k, &other.den);
        Self::normalize(k, num, den).expect("nonzero denominators")
    }

    pub fn neg<F: Field<Elem = E>>(&self, k: &F) -> Self {
        RationalFunction { num: self.num.neg(k), den: self.den.clone() }
    }

    pub fn sub<F: Field<Elem = E>>(&self, k: &F, other: &Self) -> Self {
        self.add(k, &other.neg(k))
    }

    pub fn mul<F: Field<Elem = E>>(&self, k: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(k);
        }
        if self.is_polynomial() && other.is_polynomial() {
            return Self::from_poly(k, self.num.mul(k, &other.num));
        }
        // cross-cancel: gcd(a, d) and gcd(c, b) for (a/b)(c/d)
        let g1 = self.num.gcd(k, &other.den);
        let g2 = other.num.gcd(k, &self.den);
        let cut = |p: &Polynomial<E>, g: &Polynomial<E>| {
            if g.is_constant() {
                p.clone()
            } else {
                p.div_rem(k, g).unwrap().0
            }
        };
        let num = cut(&self.num, &g1).mul(k, &cut(&other.num, &g2));
        let den = cut(&self.den, &g2).mul(k, &cut(&other.den, &g1));
        Self::from_coprime(k, num, den)
    }

    pub fn inv<F: Field<Elem = E>>(&self, k: &F) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::from_coprime(k, self.den.clone(), self.num.clone()))
    }

    pub fn div<F: Field<Elem = E>>(&self, k: &F, other: &Self) -> Result<Self> {
        Ok(self.mul(k, &other.inv(k).ok_or(Error::ZeroDenominator)?))
    }

    pub fn scale<F: Field<Elem = E>>(&self, k: &F, c: &E) -> Self {
        if k.is_zero(c) {
            return Self::zero(k);
        }
        RationalFunction { num: self.num.scale(k, c), den: self.den.clone() }
    }

    pub fn pow<F: Field<Elem = E>>(&self, k: &F, e: u32) -> Self {
        RationalFunction { num: self.num.pow(k, e), den: self.den.pow(k, e) }
    }

    pub fn powi<F: Field<Elem = E>>(&self, k: &F, e: i64) -> Option<Self> {
        let p = self.pow(k, e.unsigned_abs() as u32);
        if e >= 0 {
            Some(p)
        } else {
            p.inv(k)
        }
    }

    pub fn evaluate<F: Field<Elem = E>>(&self, k: &F, a: &E) -> Evaluation<E> {
        let d = self.den.eval(k, a);
        match k.inv(&d) {
            None => Evaluation::Pole,
            Some(inv) => Evaluation::Value(k.mul(&self.num.eval(k, a), &inv)),
        }
    }

    /// `self(inner)`; errors when the composite is an identically infinite
    /// constant (a constant `inner` sitting on a pole of `self`).
    pub fn compose<F: Field<Elem = E>>(&self, k: &F, inner: &Self) -> Result<Self> {
        if inner.is_constant() {
            let c = inner.constant_value(k).unwrap();
            return match self.evaluate(k, &c) {
                Evaluation::Value(v) => Ok(Self::constant(k, v)),
                Evaluation::Pole => Err(Error::ConstantPole(k.format(&c))),
            };
        }
        if inner.is_polynomial() {
            let scale = k.inv(&inner.den.coeffs[0]).unwrap();
            let p = inner.num.scale(k, &scale);
            return Self::normalize(k, self.num.compose(k, &p), self.den.compose(k, &p));
        }
        // homogenize: f(P/Q) = F(P, Q) / Q^deg f
        let (p, q) = (&inner.num, &inner.den);
        let homog = |f: &Polynomial<E>, deg: usize| {
            let mut acc = Polynomial::zero();
            let mut qpow = Polynomial::one(k);
            let mut terms = Vec::with_capacity(deg + 1);
            for _ in 0..=deg {
                terms.push(qpow.clone());
                qpow = qpow.mul(k, q);
            }
            let mut ppow = Polynomial::one(k);
            for i in 0..=deg {
                if let Some(c) = f.coeff(i) {
                    if !k.is_zero(c) {
                        acc = acc.add(k, &ppow.mul(k, &terms[deg - i]).scale(k, c));
                    }
                }
                ppow = ppow.mul(k, p);
            }
            acc
        };
        let df = self.num.degree().unwrap_or(0);
        let dg = self.den.degree().unwrap_or(0);
        let mut num = homog(&self.num, df);
        let mut den = homog(&self.den, dg);
        if df > dg {
            den = den.mul(k, &q.pow(k, (df - dg) as u32));
        } else if dg > df {
            num = num.mul(k, &q.pow(k, (dg - df) as u32));
        }
        Self::normalize(k, num, den)
    }

    /// `self(alpha + beta*y)`, the substitution used when zooming into a disc.
    pub fn compose_affine<F: Field<Elem = E>>(&self, k: &F, alpha: &E, beta: &E) -> Self {
        let lin = Polynomial::new(k, vec![alpha.clone(), beta.clone()]);
        let num = self.num.compose(k, &lin);
        let den = self.den.compose(k, &lin);
        // an invertible affine substitution keeps numerator and denominator coprime
        Self::from_coprime(k, num, den)
    }

    /// `self(x^m)`; substitution keeps numerator and denominator coprime.
    pub fn inflate<F: Field<Elem = E>>(&self, k: &F, m: usize) -> Self {
        RationalFunction { num: self.num.inflate(k, m), den: self.den.inflate(k, m) }
    }

    /// `self(x^{1/m})`; caller guarantees `m` divides [`Self::exponent_gcd`].
    pub fn deflate(&self, m: usize) -> Self {
        RationalFunction { num: self.num.deflate(m), den: self.den.deflate(m) }
    }

    /// gcd of all exponents in numerator and denominator (0 for constants).
    pub fn exponent_gcd<F: Field<Elem = E>>(&self, k: &F) -> usize {
        num_integer::gcd(self.num.exponent_gcd(k), self.den.exponent_gcd(k))
    }

    /// `ord_x(num) - ord_x(den)`; `None` for zero.
    pub fn order_at_zero<F: Field<Elem = E>>(&self, k: &F) -> Option<i64> {
        Some(self.num.order(k)? as i64 - self.den.order(k).unwrap() as i64)
    }

    pub fn format<F: Field<Elem = E>>(&self, k: &F, var: &str) -> String {
        self.format_with(k, |i| if i == 1 { var.to_string() } else { format!("{var}^{i}") })
    }

    pub fn format_with<F: Field<Elem = E>>(&self, k: &F, mono: impl Fn(usize) -> String) -> String {
        let n = self.num.format_with(k, &mono);
        if self.den.is_constant() {
            return n;
        }
        let d = self.den.format_with(k, &mono);
        let wrap = |s: String, poly: &Polynomial<E>| {
            let single_term = poly.support(k).len() == 1 && !crate::fields::parse::is_compound(&s);
            if single_term {
                s
            } else {
                format!("({s})")
            }
        };
        format!("{}/{}", wrap(n, &self.num), wrap(d, &self.den))
    }
}

/// Canonical-form equality in `K(x)`.
pub fn identity_check<E: Clone + PartialEq>(lhs: &RationalFunction<E>, rhs: &RationalFunction<E>) -> bool {
    lhs == rhs
}

/// Serializable view of a rational function.
#[derive(Clone, Debug, Serialize)]
pub struct RationalFunctionReport {
    pub num: String,
    pub den: String,
    pub text: String,
}

impl RationalFunctionReport {
    pub fn new<F: Field>(k: &F, r: &RationalFunction<F::Elem>, var: &str) -> Self {
        RationalFunctionReport {
            num: r.num().format(k, var),
            den: r.den().format(k, var),
            text: r.format(k, var),
        }
    }
}
