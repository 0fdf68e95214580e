use num_bigint::BigInt;

use super::Field;
use crate::ratfun::{Polynomial, RationalFunction};

/// The rational function field `F(var)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FunctionField<F> {
    base: F,
    var: String,
}

impl<F: Field> FunctionField<F> {
    pub fn new(base: F, var: &str) -> Self {
        FunctionField { base, var: var.to_string() }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn constant(&self, c: F::Elem) -> RationalFunction<F::Elem> {
        RationalFunction::constant(&self.base, c)
    }

    pub fn generator(&self) -> RationalFunction<F::Elem> {
        RationalFunction::x(&self.base)
    }

    pub fn monomial(&self, e: i64) -> RationalFunction<F::Elem> {
        let m = Polynomial::monomial(&self.base, self.base.one(), e.unsigned_abs() as usize);
        let r = RationalFunction::from_poly(&self.base, m);
        if e >= 0 {
            r
        } else {
            r.inv(&self.base).unwrap()
        }
    }
}

impl<F: Field> Field for FunctionField<F> {
    type Elem = RationalFunction<F::Elem>;

    fn zero(&self) -> Self::Elem {
        RationalFunction::zero(&self.base)
    }

    fn one(&self) -> Self::Elem {
        RationalFunction::one(&self.base)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(&self.base, b)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg(&self.base)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.mul(&self.base, b)
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        a.inv(&self.base)
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.constant(self.base.from_int(n))
    }

    fn format(&self, a: &Self::Elem) -> String {
        a.format(&self.base, &self.var)
    }

    fn symbol(&self, name: &str) -> Option<Self::Elem> {
        if name == self.var {
            Some(self.generator())
        } else {
            self.base.symbol(name).map(|c| self.constant(c))
        }
    }

    fn symbol_pow(&self, name: &str, exp: &crate::ordgroup::Q) -> Option<Self::Elem> {
        if name == self.var {
            let e: i64 = exp.is_integer().then(|| exp.to_integer().try_into().ok())??;
            return self.generator().powi(&self.base, e);
        }
        self.base.symbol_pow(name, exp).map(|c| self.constant(c))
    }

    fn pow(&self, a: &Self::Elem, e: u64) -> Self::Elem {
        a.pow(&self.base, e as u32)
    }
}
