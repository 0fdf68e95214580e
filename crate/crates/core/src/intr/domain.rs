use serde::Serialize;

use super::engine::{field_poles, Engine, Outcome, RegionRecord};
use crate::error::{Error, Result};
use crate::fields::{pvd_member, Pvd, SubfieldSpec, ValueIdeal, ValuedField};
use crate::ordgroup::{GroupElement, Val};
use crate::ratfun::RationalFunction;

/// What values of `φ` must satisfy: `v ≥ g` (or `v > g`), and at `v = 0`
/// optionally a residue in a subfield.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Target {
    pub threshold: GroupElement,
    pub strict: bool,
    pub subfield: Option<SubfieldSpec>,
}

impl Target {
    pub fn ring(rank: usize) -> Self {
        Target { threshold: GroupElement::zero(rank), strict: false, subfield: None }
    }

    pub fn pvd<V: ValuedField>(d: &Pvd<V>) -> Self {
        let rank = d.field.value_group().rank();
        if d.is_valuation_ring() {
            return Self::ring(rank);
        }
        Target { threshold: GroupElement::zero(rank), strict: false, subfield: Some(d.subfield.clone()) }
    }

    pub fn ideal(ideal: &ValueIdeal) -> Self {
        let (g, strict) = ideal.threshold();
        Target { threshold: g.clone(), strict, subfield: None }
    }

    pub fn threshold(&self) -> (GroupElement, bool) {
        (self.threshold.clone(), self.strict)
    }

    pub fn value_ok(&self, v: &GroupElement) -> bool {
        if self.strict {
            *v > self.threshold
        } else {
            *v >= self.threshold
        }
    }

    pub fn contains<V: ValuedField>(&self, field: &V, x: &V::Elem) -> bool {
        match field.valuation(x) {
            Val::Infinity => true,
            Val::Finite(v) => {
                if !self.value_ok(&v) {
                    return false;
                }
                match &self.subfield {
                    Some(s) if v.is_zero() => pvd_member(field, s, x),
                    _ => true,
                }
            }
        }
    }
}

/// The coefficient domain `D`.
#[derive(Clone, Debug)]
pub enum Domain<V: ValuedField> {
    ValuationRing(V),
    Pvd(Pvd<V>),
    /// `⋂ V_i` over valuations of one field.
    FiniteIntersection(Vec<V>),
}

impl<V: ValuedField> Domain<V> {
    pub fn intersection(components: Vec<V>) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::Config("an intersection needs at least one valuation".into()));
        };
        let (ch, rank) = (first.characteristic(), first.value_group().rank());
        if components.iter().any(|c| c.characteristic() != ch || c.value_group().rank() != rank) {
            return Err(Error::Config("intersected valuations must live on one field".into()));
        }
        Ok(Domain::FiniteIntersection(components))
    }

    /// Each valuation with its residue subfield (`None` for the whole
    /// residue field).
    pub fn components(&self) -> Vec<(&V, Option<&SubfieldSpec>)> {
        match self {
            Domain::ValuationRing(v) => vec![(v, None)],
            Domain::Pvd(d) if d.is_valuation_ring() => vec![(&d.field, None)],
            Domain::Pvd(d) => vec![(&d.field, Some(&d.subfield))],
            Domain::FiniteIntersection(vs) => vs.iter().map(|v| (v, None)).collect(),
        }
    }

    pub fn field(&self) -> &V {
        self.components()[0].0
    }

    pub fn contains(&self, x: &V::Elem) -> bool {
        self.components().iter().all(|(v, s)| match s {
            None => v.in_valuation_ring(x),
            Some(s) => pvd_member(*v, s, x),
        })
    }

    pub fn describe(&self) -> String {
        match self {
            Domain::ValuationRing(v) => format!("V({})", v.describe()),
            Domain::Pvd(d) => d.describe(),
            Domain::FiniteIntersection(vs) => {
                let parts: Vec<String> = vs.iter().map(|v| format!("V({})", v.describe())).collect();
                parts.join(" ∩ ")
            }
        }
    }
}

/// The set `E` that `φ` is evaluated on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalSet<E> {
    /// `E = D`.
    WholeRing,
    /// `E = K`.
    WholeField,
    FiniteList(Vec<E>),
}

impl<E> EvalSet<E> {
    pub fn describe(&self) -> &'static str {
        match self {
            EvalSet::WholeRing => "D",
            EvalSet::WholeField => "K",
            EvalSet::FiniteList(_) => "finite list",
        }
    }
}

/// Analysis record for one valuation of the domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentCertificate {
    pub component: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub region: Option<RegionRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub evaluations: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict<E> {
    CertifiedIn { depth: u32, certificate: Vec<ComponentCertificate> },
    CertifiedOut {
        #[serde(skip)]
        witness: E,
        #[serde(rename = "witness")]
        witness_text: String,
        /// `φ(witness)`, or `pole`.
        image: String,
    },
    Unknown { reason: String },
}

impl<E> Verdict<E> {
    pub fn is_in(&self) -> bool {
        matches!(self, Verdict::CertifiedIn { .. })
    }

    pub fn is_out(&self) -> bool {
        matches!(self, Verdict::CertifiedOut { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown { .. })
    }

    pub fn witness(&self) -> Option<&E> {
        match self {
            Verdict::CertifiedOut { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn depth(&self) -> Option<u32> {
        match self {
            Verdict::CertifiedIn { depth, .. } => Some(*depth),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::CertifiedIn { .. } => "in",
            Verdict::CertifiedOut { .. } => "out",
            Verdict::Unknown { .. } => "unknown",
        }
    }
}

/// Working precisions for moving a local witness into every valuation ring.
const APPROXIMATION_PRECISIONS: [u32; 4] = [4, 8, 16, 32];

struct Certifier<'a, V: ValuedField> {
    phi: &'a RationalFunction<V::Elem>,
    domain: &'a Domain<V>,
    eval: &'a EvalSet<V::Elem>,
    targets: Vec<Target>,
    max_depth: u32,
}

impl<V: ValuedField> Certifier<'_, V> {
    fn field(&self) -> &V {
        self.domain.field()
    }

    fn in_eval_set(&self, a: &V::Elem) -> bool {
        match self.eval {
            EvalSet::WholeField => true,
            EvalSet::WholeRing => self.domain.contains(a),
            EvalSet::FiniteList(list) => list.contains(a),
        }
    }

    fn lands(&self, a: &V::Elem) -> bool {
        match self.phi.evaluate(self.field(), a).value() {
            None => false,
            Some(b) => self.domain.components().iter().zip(&self.targets).all(|((v, _), t)| t.contains(*v, &b)),
        }
    }

    fn out(&self, a: V::Elem) -> Verdict<V::Elem> {
        let f = self.field();
        let image = match self.phi.evaluate(f, &a).value() {
            None => "pole".to_string(),
            Some(b) => f.format(&b),
        };
        Verdict::CertifiedOut { witness_text: f.format(&a), witness: a, image }
    }

    /// A witness found for one valuation, moved into `E` if necessary.
    fn globalize(&self, a: V::Elem, component: &V) -> Option<V::Elem> {
        if self.in_eval_set(&a) && !self.lands(&a) {
            return Some(a);
        }
        APPROXIMATION_PRECISIONS.iter().find_map(|&prec| {
            let b = component.integral_approximation(&a, prec)?;
            (self.in_eval_set(&b) && !self.lands(&b)).then_some(b)
        })
    }

    fn run(&self) -> Result<Verdict<V::Elem>> {
        let f = self.field();
        if self.phi.is_zero() {
            return Ok(Verdict::CertifiedIn { depth: 0, certificate: Vec::new() });
        }
        if let EvalSet::FiniteList(list) = self.eval {
            let mut evaluations = Vec::new();
            for a in list {
                if !self.lands(a) {
                    return Ok(self.out(a.clone()));
                }
                let b = self.phi.evaluate(f, a).value().unwrap();
                evaluations.push(format!("{} ↦ {}", f.format(a), f.format(&b)));
            }
            let cert = ComponentCertificate { component: self.domain.describe(), region: None, evaluations };
            return Ok(Verdict::CertifiedIn { depth: 0, certificate: vec![cert] });
        }
        let mut certificate = Vec::new();
        let mut unknown = None;
        for ((v, sub), target) in self.domain.components().into_iter().zip(&self.targets) {
            let engine = Engine {
                field: v,
                phi: self.phi,
                target,
                unit_residues: match self.eval {
                    EvalSet::WholeRing => sub,
                    _ => None,
                },
                max_depth: self.max_depth,
            };
            let outcome = match self.eval {
                EvalSet::WholeRing => engine.run_whole_ring()?,
                _ => engine.run_whole_field()?,
            };
            match outcome {
                Outcome::In(region) => certificate.push(ComponentCertificate {
                    component: v.describe(),
                    region: Some(region),
                    evaluations: Vec::new(),
                }),
                Outcome::Out(a) => match self.globalize(a, v) {
                    Some(b) => return Ok(self.out(b)),
                    None => {
                        unknown.get_or_insert_with(|| format!("{}: local witness lies outside E", v.describe()));
                    }
                },
                Outcome::Unknown(r) => {
                    unknown.get_or_insert_with(|| format!("{}: {r}", v.describe()));
                }
            }
        }
        if let Some(reason) = unknown {
            // a pole inside E is a witness the refinement can only approach
            if let Some(poles) = field_poles(f, self.phi.den()) {
                if let Some(a) = poles.into_iter().find(|a| self.in_eval_set(a)) {
                    return Ok(self.out(a));
                }
            }
            return Ok(Verdict::Unknown { reason });
        }
        let depth = certificate.iter().filter_map(|c| c.region.as_ref()).map(|r| r.max_depth()).max().unwrap_or(0);
        Ok(Verdict::CertifiedIn { depth, certificate })
    }
}

/// Decides `φ ∈ IntR(E, D)` up to the given recursion depth.
pub fn intr_member<V: ValuedField>(
    phi: &RationalFunction<V::Elem>,
    domain: &Domain<V>,
    eval: &EvalSet<V::Elem>,
    max_depth: u32,
) -> Result<Verdict<V::Elem>> {
    let targets = domain
        .components()
        .into_iter()
        .map(|(v, sub)| match sub {
            None => Target::ring(v.value_group().rank()),
            Some(s) => Target { subfield: Some(s.clone()), ..Target::ring(v.value_group().rank()) },
        })
        .collect();
    Certifier { phi, domain, eval, targets, max_depth }.run()
}

/// Decides `φ ∈ IntR(E, I)` for an ideal cut out by a value threshold in
/// every valuation of `D`.
pub fn intr_ideal_member<V: ValuedField>(
    phi: &RationalFunction<V::Elem>,
    ideal: &ValueIdeal,
    domain: &Domain<V>,
    eval: &EvalSet<V::Elem>,
    max_depth: u32,
) -> Result<Verdict<V::Elem>> {
    let rank = domain.field().value_group().rank();
    if ideal.threshold().0.rank() != rank {
        return Err(Error::GroupMismatch(rank, ideal.threshold().0.rank()));
    }
    let targets = domain.components().iter().map(|_| Target::ideal(ideal)).collect();
    Certifier { phi, domain, eval, targets, max_depth }.run()
}
