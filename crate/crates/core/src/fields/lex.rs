//! `κ(t1, t2)` with the rank-2 valuation `v(t1) = (1, 0)`, `v(t2) = (0, 1)`,
//! ordered lexicographically.

use num_bigint::BigInt;
use rand::{Rng, RngCore};

use super::{Field, FunctionField, Kappa, KappaElem, ValuedField};
use crate::error::{Error, Result};
use crate::ordgroup::{q, GroupElement, GroupSpec, Val, Q};
use crate::ratfun::{Polynomial, RationalFunction};

type Inner = FunctionField<Kappa>;
pub type Lex2Elem = RationalFunction<RationalFunction<KappaElem>>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lex2Field {
    field: FunctionField<Inner>,
    group: GroupSpec,
}

impl Lex2Field {
    pub fn new(kappa: Kappa) -> Self {
        let inner = FunctionField::new(kappa, "t2");
        Lex2Field { field: FunctionField::new(inner, "t1"), group: GroupSpec::lex_integers(2) }
    }

    fn inner(&self) -> &Inner {
        self.field.base()
    }

    fn kappa(&self) -> &Kappa {
        self.inner().base()
    }

    // (ord_t1, lowest t1-coefficient ratio in κ(t2))
    fn leading(&self, a: &Lex2Elem) -> Option<(i64, RationalFunction<KappaElem>)> {
        let inner = self.inner();
        let o1 = a.order_at_zero(inner)?;
        let n = a.num();
        let d = a.den();
        let n0 = &n.coeffs()[n.order(inner).unwrap()];
        let d0 = &d.coeffs()[d.order(inner).unwrap()];
        Some((o1, inner.div(n0, d0).unwrap()))
    }
}

impl Field for Lex2Field {
    type Elem = Lex2Elem;

    fn zero(&self) -> Lex2Elem {
        self.field.zero()
    }

    fn one(&self) -> Lex2Elem {
        self.field.one()
    }

    fn is_zero(&self, a: &Lex2Elem) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &Lex2Elem, b: &Lex2Elem) -> Lex2Elem {
        self.field.add(a, b)
    }

    fn neg(&self, a: &Lex2Elem) -> Lex2Elem {
        self.field.neg(a)
    }

    fn mul(&self, a: &Lex2Elem, b: &Lex2Elem) -> Lex2Elem {
        self.field.mul(a, b)
    }

    fn inv(&self, a: &Lex2Elem) -> Option<Lex2Elem> {
        self.field.inv(a)
    }

    fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    fn from_int(&self, n: &BigInt) -> Lex2Elem {
        self.field.from_int(n)
    }

    fn format(&self, a: &Lex2Elem) -> String {
        self.field.format(a)
    }

    fn symbol(&self, name: &str) -> Option<Lex2Elem> {
        self.field.symbol(name)
    }

    fn symbol_pow(&self, name: &str, exp: &Q) -> Option<Lex2Elem> {
        self.field.symbol_pow(name, exp)
    }
}

impl ValuedField for Lex2Field {
    fn value_group(&self) -> &GroupSpec {
        &self.group
    }

    fn valuation(&self, a: &Lex2Elem) -> Val {
        match self.leading(a) {
            None => Val::Infinity,
            Some((o1, c)) => {
                let o2 = c.order_at_zero(self.kappa()).unwrap();
                Val::Finite(GroupElement::new(vec![q(o1), q(o2)]))
            }
        }
    }

    fn residue_field(&self) -> &Kappa {
        self.kappa()
    }

    fn residue(&self, a: &Lex2Elem) -> Result<KappaElem> {
        let k = self.kappa();
        match self.valuation(a) {
            Val::Infinity => Ok(k.zero()),
            Val::Finite(g) if g.is_negative() => Err(Error::NegativeValuation(self.format(a))),
            Val::Finite(g) if g.is_positive() => Ok(k.zero()),
            Val::Finite(_) => {
                let (_, c) = self.leading(a).unwrap();
                let n0 = &c.num().coeffs()[c.num().order(k).unwrap()];
                let d0 = &c.den().coeffs()[c.den().order(k).unwrap()];
                Ok(k.div(n0, d0).unwrap())
            }
        }
    }

    fn lift(&self, c: &KappaElem) -> Lex2Elem {
        self.field.constant(self.inner().constant(c.clone()))
    }

    fn element_of_value(&self, g: &GroupElement) -> Option<Lex2Elem> {
        if g.rank() != 2 || !self.group.in_lattice(g) {
            return None;
        }
        let e1: i64 = g.coords()[0].to_integer().try_into().ok()?;
        let e2: i64 = g.coords()[1].to_integer().try_into().ok()?;
        let t1 = self.field.monomial(e1);
        let t2 = self.field.constant(self.inner().monomial(e2));
        Some(self.mul(&t1, &t2))
    }

    fn random_element(&self, rng: &mut dyn RngCore, height: u32) -> Lex2Elem {
        let inner = self.inner();
        let k = self.kappa();
        let h = height.clamp(1, 2);
        let coeff_height = if k.is_finite() { 0 } else { 1 };
        let inner_random = |rng: &mut dyn RngCore| {
            let mut c: Vec<KappaElem> = (0..=h).map(|_| k.random(rng, coeff_height)).collect();
            if c.iter().all(|x| k.is_zero(x)) {
                c[0] = k.one();
            }
            let shift = rng.gen_range(-1i64..=1);
            let p = RationalFunction::from_poly(k, Polynomial::new(k, c));
            p.mul(k, &inner.monomial(shift))
        };
        let deg_n = rng.gen_range(0..=h);
        let deg_d = rng.gen_range(0..=1);
        let num: Vec<_> = (0..=deg_n).map(|_| inner_random(rng)).collect();
        let mut den: Vec<_> = (0..=deg_d).map(|_| inner_random(rng)).collect();
        den[deg_d as usize] = inner.one();
        let shift = rng.gen_range(-1i64..=1);
        RationalFunction::normalize(inner, Polynomial::new(inner, num), Polynomial::new(inner, den))
            .unwrap()
            .mul(inner, &self.field.monomial(shift))
    }

    fn describe(&self) -> String {
        format!("LexRank2({})", self.kappa().describe())
    }
}
