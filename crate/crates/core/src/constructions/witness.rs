use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::{Field, Kappa, Pvd, ValuedField};
use crate::intr::{intr_member, Domain, EvalSet, Verdict};
use crate::par::{self, Mode};
use crate::ratfun::{Polynomial, RationalFunction};
use crate::report::CheckReport;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum NotLocalCase {
    /// `w = 1/(x^q − x + 1)`.
    FiniteResidueField { q: u64 },
    /// `w = 1/(x^{p^{2e}} − c^{p^e})` with `c ∈ L ∖ F`.
    PurelyInseparable { p: u64, e: u32, c: String },
}

#[derive(Clone, Debug)]
pub struct NotLocalWitness<E> {
    pub witness: RationalFunction<E>,
    pub case: NotLocalCase,
    /// The residue polynomial `w̄⁻¹` that has no root in `L`.
    pub residue_den: Polynomial<crate::fields::KappaElem>,
}

/// An element of `IntR(K, D)` lying in `M_{m,a}` exactly for `v(a) < 0`,
/// which shows `IntR(K, D)` is not local.
pub fn notlocal_witness<V: ValuedField>(d: &Pvd<V>) -> Result<NotLocalWitness<V::Elem>> {
    let k = &d.field;
    let kappa = k.residue_field();
    if d.is_valuation_ring() {
        return Err(Error::Unsupported(
            "D is a valuation ring: IntR(K, D) is local with maximal ideal IntR(K, m)".into(),
        ));
    }
    let x = Polynomial::x(k);
    let one = Polynomial::one(k);
    let (den, residue_den, case) = match kappa {
        Kappa::Finite(f) => {
            let q = f.order();
            let xq = Polynomial::monomial(k, k.one(), q as usize);
            let den = xq.sub(k, &x).add(k, &one);
            let xq = Polynomial::monomial(kappa, kappa.one(), q as usize);
            let res = xq.sub(kappa, &Polynomial::x(kappa)).add(kappa, &Polynomial::one(kappa));
            (den, res, NotLocalCase::FiniteResidueField { q })
        }
        Kappa::Rational(_) => {
            let e = match d.subfield.inseparable_exponent(kappa) {
                Some(e) if e > 0 => e,
                _ => {
                    return Err(Error::Unsupported(format!(
                        "{} over {} is neither finite nor purely inseparable of finite exponent: \
                         IntR(K, D) is local with maximal ideal IntR(K, m)",
                        kappa.describe(),
                        d.subfield.describe(kappa)
                    )))
                }
            };
            let c = d.subfield.generator_outside(kappa).expect("F is proper");
            let p = kappa.characteristic();
            let pe = p.pow(e);
            let deg = (pe * pe) as usize;
            let cp = kappa.pow(&c, pe);
            let den = Polynomial::monomial(k, k.one(), deg).sub(k, &Polynomial::constant(k, k.lift(&cp)));
            let res = Polynomial::monomial(kappa, kappa.one(), deg).sub(kappa, &Polynomial::constant(kappa, cp));
            (den, res, NotLocalCase::PurelyInseparable { p, e, c: kappa.format(&c) })
        }
    };
    let witness = RationalFunction::normalize(k, one, den)?;
    Ok(NotLocalWitness { witness, case, residue_den })
}

#[derive(Clone, Debug, Serialize)]
#[serde(bound = "")]
pub struct NotLocalReport<E> {
    pub witness: String,
    #[serde(flatten)]
    pub case: NotLocalCase,
    pub membership: Verdict<E>,
    /// The residue denominator has no root in `L`; for finite `L` it is `1`
    /// on every element.
    pub residue: CheckReport,
    /// `w ∈ M_{m,a}` iff `v(a) < 0`.
    pub split: CheckReport,
}

impl<E> NotLocalReport<E> {
    pub fn passed(&self) -> bool {
        self.membership.is_in() && self.residue.passed() && self.split.passed()
    }
}

pub fn verify_notlocal<V: ValuedField>(
    d: &Pvd<V>,
    w: &NotLocalWitness<V::Elem>,
    samples: &[V::Elem],
    depth: u32,
    mode: Mode,
) -> Result<NotLocalReport<V::Elem>> {
    let k = &d.field;
    let kappa = k.residue_field();
    let membership = intr_member(&w.witness, &Domain::Pvd(d.clone()), &EvalSet::WholeField, depth)?;

    let mut residue = CheckReport::new("residue denominator");
    match kappa.elements() {
        Some(all) => {
            for c in all {
                let val = w.residue_den.eval(kappa, &c);
                residue.check(kappa.is_one(&val), "x^q − x + 1 maps L to {1}", || kappa.format(&c), || kappa.format(&val));
            }
        }
        None => match kappa.roots(&w.residue_den) {
            Some(roots) => residue.check(
                roots.is_empty(),
                "the residue denominator has no root in L",
                || w.residue_den.format(kappa, "x"),
                || format!("roots {:?}", roots.iter().map(|r| kappa.format(r)).collect::<Vec<_>>()),
            ),
            None => residue.fail("the residue denominator has no root in L", w.residue_den.format(kappa, "x"), "root search over budget"),
        },
    }

    let parts = par::map(mode, samples, |a| {
        let mut r = CheckReport::new("split");
        let Some(b) = w.witness.evaluate(k, a).value() else {
            r.fail("w has no pole on K", k.format(a), "pole");
            return r;
        };
        let negative = k.valuation(a).finite().is_some_and(|g| g.is_negative());
        let inside = k.in_maximal_ideal(&b);
        r.check(inside == negative, "w ∈ M_{m,a} iff v(a) < 0", || k.format(a), || format!("w(a) = {}", k.format(&b)));
        r
    });
    Ok(NotLocalReport {
        witness: w.witness.format(k, "x"),
        case: w.case.clone(),
        membership,
        residue,
        split: CheckReport::collect("split", parts),
    })
}
