use serde::Serialize;

use super::domain::{intr_ideal_member, Domain, EvalSet};
use crate::error::{Error, Result};
use crate::fields::{ValueIdeal, ValuedField};
use crate::newton::minval_rat;
use crate::ordgroup::{q2, GroupElement};
use crate::ratfun::RationalFunction;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealSpec<E> {
    /// `M_{m,a} = {φ : φ(a) ∈ m}` for the maximal ideal of one valuation.
    Pointed { component: usize, a: E },
    /// `{φ : minval_φ(0) > 0}`.
    MStar,
    /// `IntR(E, I)` for a value ideal `I`.
    Value(ValueIdeal),
}

impl<E> IdealSpec<E> {
    pub fn pointed(a: E) -> Self {
        IdealSpec::Pointed { component: 0, a }
    }
}

/// `Some(answer)`, or `None` when certification ran out of depth.
pub fn ideal_member<V: ValuedField>(
    phi: &RationalFunction<V::Elem>,
    ideal: &IdealSpec<V::Elem>,
    domain: &Domain<V>,
    eval: &EvalSet<V::Elem>,
    max_depth: u32,
) -> Result<Option<bool>> {
    let field = domain.field();
    match ideal {
        IdealSpec::Pointed { component, a } => {
            let comps = domain.components();
            let (v, _) = comps
                .get(*component)
                .ok_or_else(|| Error::Precondition(format!("no valuation number {component}")))?;
            let in_e = match eval {
                EvalSet::WholeField => true,
                EvalSet::WholeRing => domain.contains(a),
                EvalSet::FiniteList(l) => l.contains(a),
            };
            if !in_e {
                return Err(Error::Precondition(format!("{} is not in E", field.format(a))));
            }
            match phi.evaluate(field, a).value() {
                None => Err(Error::Precondition(format!("pole at {}", field.format(a)))),
                Some(b) => Ok(Some(v.in_maximal_ideal(&b))),
            }
        }
        IdealSpec::MStar => {
            if matches!(domain, Domain::FiniteIntersection(vs) if vs.len() > 1) {
                return Err(Error::Precondition("M* needs a single valuation".into()));
            }
            if phi.is_zero() {
                return Ok(Some(true));
            }
            let zero = field.value_group().zero();
            Ok(Some(minval_rat(phi, field)?.eval(&zero).is_positive()))
        }
        IdealSpec::Value(i) => {
            let verdict = intr_ideal_member(phi, i, domain, eval, max_depth)?;
            Ok(if verdict.is_unknown() { None } else { Some(verdict.is_in()) })
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CharacteristicSet {
    /// Indices of the ideals containing `r`.
    pub members: Vec<usize>,
    /// Indices where membership could not be decided.
    pub undecided: Vec<usize>,
}

/// Which ideals of `family` contain `r`.
pub fn characteristic_set<V: ValuedField>(
    r: &RationalFunction<V::Elem>,
    family: &[IdealSpec<V::Elem>],
    domain: &Domain<V>,
    eval: &EvalSet<V::Elem>,
    max_depth: u32,
) -> Result<CharacteristicSet> {
    let mut out = CharacteristicSet::default();
    for (i, ideal) in family.iter().enumerate() {
        if r.is_zero() {
            out.members.push(i);
            continue;
        }
        match ideal_member(r, ideal, domain, eval, max_depth)? {
            Some(true) => out.members.push(i),
            Some(false) => {}
            None => out.undecided.push(i),
        }
    }
    Ok(out)
}

/// Sign pattern of `minval_φ` over a divisible value group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum Dichotomy {
    Zero,
    StrictlyPositive,
    /// `at` is a value where `minval_φ` is negative, or zero while positive
    /// elsewhere.
    Violation { at: GroupElement, value: GroupElement },
}

pub fn dichotomy_check<V: ValuedField>(phi: &RationalFunction<V::Elem>, field: &V) -> Result<Dichotomy> {
    if !field.value_group().is_divisible() {
        return Err(Error::Precondition("the dichotomy needs a divisible value group".into()));
    }
    let p = minval_rat(phi, field)?;
    let segs = p.segments();
    let violation = |at: GroupElement| Dichotomy::Violation { value: p.eval(&at), at };
    if segs.len() == 1 && segs[0].slope == 0 {
        let c = &segs[0].intercept;
        return Ok(if c.is_zero() {
            Dichotomy::Zero
        } else if c.is_positive() {
            Dichotomy::StrictlyPositive
        } else {
            violation(GroupElement::zero(c.rank()))
        });
    }
    let unit = pad(GroupElement::int(1), p.rank());
    let first = &segs[0];
    if first.slope > 0 {
        // the left end tends to -∞: one unit left of its zero
        let x = (-&first.intercept).scale(&q2(1, first.slope)) - unit;
        return Ok(violation(x));
    }
    let last = segs.last().unwrap();
    if last.slope < 0 {
        let x = (-&last.intercept).scale(&q2(1, last.slope)) + unit;
        return Ok(violation(x));
    }
    let bps = p.breakpoints();
    if let Some(b) = bps.iter().find(|b| p.eval(b).is_negative()) {
        return Ok(violation(b.clone()));
    }
    // nonnegative and not constant: a zero anywhere shows up at a breakpoint
    if let Some(b) = bps.iter().find(|b| p.eval(b).is_zero()) {
        return Ok(violation(b.clone()));
    }
    Ok(Dichotomy::StrictlyPositive)
}

fn pad(x: GroupElement, rank: usize) -> GroupElement {
    if x.rank() == rank {
        return x;
    }
    let mut c = x.coords().to_vec();
    c.resize(rank, num_traits::Zero::zero());
    GroupElement::new(c)
}
