use serde::Serialize;

use super::pl::PiecewiseLinear;
use crate::error::{Error, Result};
use crate::fields::{Field, Kappa, KappaElem, ValuedField};
use crate::ordgroup::{GroupElement, Val};
use crate::ratfun::{Polynomial, RationalFunction};

fn nonzero_lines<V: ValuedField>(f: &Polynomial<V::Elem>, field: &V) -> Vec<(i64, GroupElement)> {
    f.coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, a)| field.valuation(a).finite().map(|g| (i as i64, g.clone())))
        .collect()
}

/// `γ ↦ min_i v(a_i) + iγ`.
pub fn minval_poly<V: ValuedField>(f: &Polynomial<V::Elem>, field: &V) -> Result<PiecewiseLinear> {
    PiecewiseLinear::lower_envelope(&nonzero_lines(f, field))
}

/// `minval_f − minval_g` for `φ = f/g`.
pub fn minval_rat<V: ValuedField>(phi: &RationalFunction<V::Elem>, field: &V) -> Result<PiecewiseLinear> {
    if phi.is_zero() {
        return Err(Error::ZeroFunction);
    }
    minval_poly(phi.num(), field)?.sub(&minval_poly(phi.den(), field)?)
}

/// `f(tx) / (a_d t^d)` reduced into the residue field, where `d` is the
/// largest index attaining `minval_f(v(t))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalPoly {
    #[serde(skip)]
    pub poly: Polynomial<KappaElem>,
    pub text: String,
    pub degree: usize,
    /// Smallest index attaining the minimum.
    pub low: usize,
    pub minval: GroupElement,
}

impl LocalPoly {
    pub fn eval(&self, kappa: &Kappa, c: &KappaElem) -> KappaElem {
        self.poly.eval(kappa, c)
    }

    pub fn vanishes_at(&self, kappa: &Kappa, c: &KappaElem) -> bool {
        kappa.is_zero(&self.eval(kappa, c))
    }

    /// Whether the polynomial is a single monomial, so that its only possible
    /// root is `0`.
    pub fn is_monomial(&self) -> bool {
        self.low == self.degree
    }
}

pub fn local_poly<V: ValuedField>(f: &Polynomial<V::Elem>, t: &V::Elem, field: &V) -> Result<LocalPoly> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let gamma = match field.valuation(t) {
        Val::Finite(g) => g,
        Val::Infinity => return Err(Error::Precondition("local polynomial at t = 0".into())),
    };
    let terms: Vec<(usize, GroupElement)> = nonzero_lines(f, field)
        .into_iter()
        .map(|(i, v)| (i as usize, gamma.scale_int(i) + v))
        .collect();
    let m = terms.iter().map(|(_, w)| w).min().unwrap().clone();
    let attaining: Vec<usize> = terms.iter().filter(|(_, w)| *w == m).map(|(i, _)| *i).collect();
    let d = *attaining.last().unwrap();
    let kappa = field.residue_field();
    let ad = &f.coeffs()[d];
    let mut coeffs = vec![kappa.zero(); d + 1];
    for &i in &attaining {
        let shift = field.powi(t, i as i64 - d as i64).expect("t is nonzero");
        let c = field.div(&field.mul(&f.coeffs()[i], &shift), ad).expect("a_d is nonzero");
        coeffs[i] = field.residue(&c)?;
    }
    let poly = Polynomial::new(kappa, coeffs);
    if !kappa.is_one(poly.leading().unwrap()) {
        return Err(Error::Invariant("local polynomial is not monic".into()));
    }
    Ok(LocalPoly { text: poly.format(kappa, "x"), poly, degree: d, low: attaining[0], minval: m })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub predicted: GroupElement,
    pub exact: bool,
    /// `v(φ(a))`, or `None` when `a` is a pole.
    pub observed: Option<Val>,
}

impl Prediction {
    /// An exact prediction must be attained.
    pub fn is_consistent(&self) -> bool {
        match (&self.observed, self.exact) {
            (Some(Val::Finite(v)), true) => *v == self.predicted,
            (_, true) => false,
            _ => true,
        }
    }
}

/// Predicts `v(φ(a))` from the envelope, using `t = a` for the local
/// polynomials so that the residue to test is `1`.
pub fn predict<V: ValuedField>(phi: &RationalFunction<V::Elem>, a: &V::Elem, field: &V) -> Result<Prediction> {
    if field.is_zero(a) {
        return Err(Error::Precondition("prediction at a = 0".into()));
    }
    let gamma = field.valuation_finite(a)?;
    let predicted = minval_rat(phi, field)?.eval(&gamma);
    let kappa = field.residue_field();
    let one = kappa.one();
    let lf = local_poly(phi.num(), a, field)?;
    let lg = local_poly(phi.den(), a, field)?;
    let exact = !lf.vanishes_at(kappa, &one) && !lg.vanishes_at(kappa, &one);
    let observed = phi.evaluate(field, a).value().map(|b| field.valuation(&b));
    Ok(Prediction { predicted, exact, observed })
}

/// `v(f(a)) ≥ minval_f(v(a))`, with equality exactly when the local
/// polynomial at `t = a` does not vanish at `1`.
pub fn check_polynomial_bound<V: ValuedField>(f: &Polynomial<V::Elem>, a: &V::Elem, field: &V) -> Result<bool> {
    let gamma = field.valuation_finite(a)?;
    let bound = minval_poly(f, field)?.eval(&gamma);
    let lf = local_poly(f, a, field)?;
    let kappa = field.residue_field();
    let attained = !lf.vanishes_at(kappa, &kappa.one());
    Ok(match field.valuation(&f.eval(field, a)) {
        Val::Infinity => !attained,
        Val::Finite(v) => v >= bound && ((v == bound) == attained),
    })
}

/// Slopes of `minval_φ` just left and right of `v(t)`, read off the supports
/// of the local polynomials of numerator and denominator.
pub fn slopes_check<V: ValuedField>(phi: &RationalFunction<V::Elem>, t: &V::Elem, field: &V) -> Result<(i64, i64)> {
    if phi.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let lf = local_poly(phi.num(), t, field)?;
    let lg = local_poly(phi.den(), t, field)?;
    let left = lf.degree as i64 - lg.degree as i64;
    let right = lf.low as i64 - lg.low as i64;
    Ok((left, right))
}

/// One row of a valuation sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub gamma: GroupElement,
    pub minval: GroupElement,
    pub observed: Option<Val>,
    pub exact: bool,
}

impl SweepRow {
    pub fn csv_header() -> &'static str {
        "gamma,minval,observed,exact"
    }

    pub fn csv(&self) -> String {
        let obs = match &self.observed {
            None => "pole".to_string(),
            Some(v) => v.to_string(),
        };
        format!("\"{}\",\"{}\",\"{}\",{}", self.gamma, self.minval, obs, self.exact)
    }
}

/// Evaluates `φ` at the section element of each value in `gammas` and
/// compares with the envelope. Values outside the value group are skipped.
pub fn sweep<V: ValuedField>(
    phi: &RationalFunction<V::Elem>,
    gammas: &[GroupElement],
    field: &V,
) -> Result<Vec<SweepRow>> {
    let pl = minval_rat(phi, field)?;
    let mut rows = Vec::new();
    for g in gammas {
        let Some(a) = field.element_of_value(g) else { continue };
        let p = predict(phi, &a, field)?;
        rows.push(SweepRow { gamma: g.clone(), minval: pl.eval(g), observed: p.observed, exact: p.exact });
    }
    Ok(rows)
}

/// Looks for one `a` with `v(a) = γ` at which every prediction is exact, by
/// scaling the section element by lifts of residue elements. Gives up after
/// `budget` candidates.
pub fn simultaneous_attainment<V: ValuedField>(
    phis: &[RationalFunction<V::Elem>],
    gamma: &GroupElement,
    field: &V,
    budget: usize,
) -> Result<Option<V::Elem>> {
    let t = field
        .element_of_value(gamma)
        .ok_or_else(|| Error::Precondition(format!("{gamma} is not a value")))?;
    let kappa = field.residue_field();
    let mut locs = Vec::new();
    for phi in phis {
        locs.push(local_poly(phi.num(), &t, field)?);
        locs.push(local_poly(phi.den(), &t, field)?);
    }
    let candidates = if let Some(all) = kappa.elements() {
        all
    } else {
        let mut deg = 0;
        loop {
            let e = kappa.small_elements(deg);
            if e.len() >= budget || deg > 8 {
                break e;
            }
            deg += 1;
        }
    };
    for c in candidates.into_iter().filter(|c| !kappa.is_zero(c)).take(budget) {
        if locs.iter().all(|l| !l.vanishes_at(kappa, &c)) {
            return Ok(Some(field.mul(&t, &field.lift(&c))));
        }
    }
    Ok(None)
}
