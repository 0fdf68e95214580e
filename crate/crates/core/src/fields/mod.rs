//! Exact fields and valued fields.
//!
//! Field contexts carry the structure (modulus tables, variable names, the
//! valuation) and element types are plain values; all arithmetic goes through
//! the context, in the style of ring-context libraries.

mod finite;
mod function;
mod kappa;
mod lex;
mod monomial;
mod padic;
pub mod parse;
mod pvd;

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::RngCore;

use crate::error::{Error, Result};
use crate::ordgroup::{GroupElement, GroupSpec, Val, Q};
use crate::ratfun::Polynomial;

pub use finite::{FiniteField, GfElem};
pub use function::FunctionField;
pub use kappa::{Kappa, KappaElem};
pub use lex::Lex2Field;
pub use monomial::{MonomialField, PuiseuxElem};
pub use padic::PAdicRationals;
pub use pvd::{ideal_member, pvd_member, Pvd, SubfieldSpec, ValueIdeal};

pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    fn format(&self, a: &Self::Elem) -> String;
    /// The value of a named generator, used by the element grammar.
    fn symbol(&self, name: &str) -> Option<Self::Elem>;

    /// `name^exp`; fields with fractional exponents override this.
    fn symbol_pow(&self, name: &str, exp: &Q) -> Option<Self::Elem> {
        if !exp.is_integer() {
            return None;
        }
        let base = self.symbol(name)?;
        let e: i64 = exp.to_integer().try_into().ok()?;
        self.powi(&base, e)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        Some(self.mul(a, &self.inv(b)?))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn powi(&self, a: &Self::Elem, e: i64) -> Option<Self::Elem> {
        if e >= 0 {
            Some(self.pow(a, e as u64))
        } else {
            self.inv(&self.pow(a, e.unsigned_abs()))
        }
    }

    fn parse(&self, s: &str) -> Result<Self::Elem> {
        parse::parse_element(self, s)
    }

    /// `format` wrapped in parentheses when it is a sum or quotient.
    fn format_factor(&self, a: &Self::Elem) -> String {
        let s = self.format(a);
        if parse::is_compound(&s) {
            format!("({s})")
        } else {
            s
        }
    }
}

/// A field with a (Krull) valuation whose residue field is one of the
/// supported [`Kappa`] fields.
pub trait ValuedField: Field {
    fn value_group(&self) -> &GroupSpec;
    fn valuation(&self, a: &Self::Elem) -> Val;
    fn residue_field(&self) -> &Kappa;
    /// Image in the residue field; errors on negative valuation.
    fn residue(&self, a: &Self::Elem) -> Result<KappaElem>;
    /// A fixed section of the residue map (constants embed).
    fn lift(&self, c: &KappaElem) -> Self::Elem;
    /// Some `t` with `v(t) = g`, or `None` when `g` is outside the value group.
    fn element_of_value(&self, g: &GroupElement) -> Option<Self::Elem>;
    /// A random element; `height` bounds the size of numerators, denominators
    /// and exponents.
    fn random_element(&self, rng: &mut dyn RngCore, height: u32) -> Self::Elem;
    /// Human-readable name, e.g. `PAdicQ(5)`.
    fn describe(&self) -> String;

    /// All roots of `p` in the field, when they can be enumerated exactly.
    fn roots_in_field(&self, _p: &Polynomial<Self::Elem>) -> Option<Vec<Self::Elem>> {
        None
    }

    /// An element integral for every valuation of the ambient family and close
    /// to `a` for this one (`v(result - a) >= precision`).
    fn integral_approximation(&self, _a: &Self::Elem, _precision: u32) -> Option<Self::Elem> {
        None
    }

    fn valuation_finite(&self, a: &Self::Elem) -> Result<GroupElement> {
        match self.valuation(a) {
            Val::Finite(g) => Ok(g),
            Val::Infinity => Err(Error::Precondition("valuation of zero is infinite".into())),
        }
    }

    fn in_valuation_ring(&self, a: &Self::Elem) -> bool {
        self.valuation(a).is_nonnegative()
    }

    fn in_maximal_ideal(&self, a: &Self::Elem) -> bool {
        self.valuation(a).is_positive()
    }
}

pub(crate) fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    let r = n % BigInt::from(p);
    let r = if r < BigInt::zero() { r + BigInt::from(p) } else { r };
    r.try_into().expect("residue below modulus")
}
