//! Subcommands that work over any configured valued field.

use ivrf_core::fields::{Field, FunctionField, PAdicRationals, Pvd, SubfieldSpec, ValueIdeal, ValuedField};
use ivrf_core::intr::{
    dichotomy_check, ideal_member, intr_ideal_member, intr_member, Domain, EvalSet, IdealSpec,
};
use ivrf_core::newton::{local_poly, minval_rat, predict, slopes_check, sweep, SweepRow};
use ivrf_core::ordgroup::GroupElement;
use ivrf_core::ratfun::{RationalFunction, RationalFunctionReport};
use ivrf_core::{Error, Result};
use serde_json::{json, Value};

use crate::config::DomainSpec;

/// The result of one command: a JSON body, optional CSV, and whether a
/// checked invariant failed.
pub struct Output {
    pub body: Value,
    pub csv: Option<String>,
    pub violation: bool,
}

impl Output {
    pub fn json(body: Value) -> Self {
        Output { body, csv: None, violation: false }
    }
}

/// Builds `D` over `K`; intersections need `Q`.
pub trait DomainField: ValuedField {
    fn domain(&self, spec: &DomainSpec) -> Result<Domain<Self>> {
        match spec {
            DomainSpec::Ring => Ok(Domain::ValuationRing(self.clone())),
            DomainSpec::Pvd(s) => {
                let f = SubfieldSpec::parse(self.residue_field(), s)?;
                Ok(Domain::Pvd(Pvd::new(self.clone(), f)))
            }
            DomainSpec::Intersection(_) => Err(Error::Config("intersections are available over padic fields only".into())),
        }
    }
}

impl DomainField for PAdicRationals {
    fn domain(&self, spec: &DomainSpec) -> Result<Domain<Self>> {
        match spec {
            DomainSpec::Intersection(ps) => {
                Domain::intersection(ps.iter().map(|&p| PAdicRationals::new(p)).collect::<Result<Vec<_>>>()?)
            }
            DomainSpec::Pvd(_) => Err(Error::Config("GF(p) has no proper subfield; use ring".into())),
            DomainSpec::Ring => Ok(Domain::ValuationRing(self.clone())),
        }
    }
}

impl DomainField for ivrf_core::fields::MonomialField {}
impl DomainField for ivrf_core::fields::Lex2Field {}

pub fn function<V: ValuedField>(k: &V, s: &str) -> Result<RationalFunction<V::Elem>> {
    FunctionField::new(k.clone(), "x").parse(s)
}

fn report<V: ValuedField>(k: &V, f: &RationalFunction<V::Elem>) -> RationalFunctionReport {
    RationalFunctionReport::new(k, f, "x")
}

fn header<V: ValuedField>(k: &V, f: &RationalFunction<V::Elem>) -> Value {
    json!({ "field": k.describe(), "function": report(k, f) })
}

fn merge(mut a: Value, b: Value) -> Value {
    if let (Some(a), Value::Object(b)) = (a.as_object_mut(), b) {
        a.extend(b);
    }
    a
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

pub fn minval<V: ValuedField>(k: &V, f: &str, gammas: &[String]) -> Result<Output> {
    let phi = function(k, f)?;
    let pl = minval_rat(&phi, k)?;
    let rank = k.value_group().rank();
    let gammas = if gammas.is_empty() {
        (-3..=3).map(|i| pad(GroupElement::int(i), rank)).collect()
    } else {
        gammas.iter().map(|g| g.parse::<GroupElement>()).collect::<Result<Vec<_>>>()?
    };
    let rows = sweep(&phi, &gammas, k)?;
    let mut csv = String::from(SweepRow::csv_header());
    csv.push('\n');
    for r in &rows {
        csv.push_str(&r.csv());
        csv.push('\n');
    }
    let body = merge(header(k, &phi), json!({ "minval": to_json(&pl), "sweep": to_json(&rows) }));
    Ok(Output { body, csv: Some(csv), violation: false })
}

fn pad(g: GroupElement, rank: usize) -> GroupElement {
    let mut c = g.coords().to_vec();
    c.resize(rank, num_traits::Zero::zero());
    GroupElement::new(c)
}

pub fn locpoly<V: ValuedField>(k: &V, f: &str, at: &str) -> Result<Output> {
    let phi = function(k, f)?;
    let t = k.parse(at)?;
    let num = local_poly(phi.num(), &t, k)?;
    let den = local_poly(phi.den(), &t, k)?;
    let (left, right) = slopes_check(&phi, &t, k)?;
    let body = merge(
        header(k, &phi),
        json!({
            "t": k.format(&t),
            "numerator": to_json(&num),
            "denominator": to_json(&den),
            "slopes": { "left": left, "right": right },
            "prediction": to_json(&predict(&phi, &t, k)?),
        }),
    );
    Ok(Output::json(body))
}

fn eval_set<V: ValuedField>(k: &V, s: &str) -> Result<EvalSet<V::Elem>> {
    match s {
        "ring" | "D" => Ok(EvalSet::WholeRing),
        "field" | "K" => Ok(EvalSet::WholeField),
        _ => {
            let list = s
                .strip_prefix("list:")
                .ok_or_else(|| Error::Config(format!("bad evaluation set {s:?}; expected ring, field or list:a;b;…")))?;
            Ok(EvalSet::FiniteList(list.split(';').map(|a| k.parse(a)).collect::<Result<Vec<_>>>()?))
        }
    }
}

pub fn member<V: DomainField>(k: &V, d: &DomainSpec, f: &str, eval: &str, depth: u32) -> Result<Output> {
    let phi = function(k, f)?;
    let domain = k.domain(d)?;
    let e = eval_set(k, eval)?;
    let verdict = intr_member(&phi, &domain, &e, depth)?;
    let body = merge(
        header(k, &phi),
        json!({ "domain": domain.describe(), "eval": e.describe(), "depth": depth, "result": to_json(&verdict) }),
    );
    Ok(Output::json(body))
}

pub fn ideal<V: DomainField>(k: &V, d: &DomainSpec, f: &str, ideal: &str, eval: &str, depth: u32) -> Result<Output> {
    let phi = function(k, f)?;
    let domain = k.domain(d)?;
    let e = eval_set(k, eval)?;
    let base = merge(header(k, &phi), json!({ "domain": domain.describe(), "eval": e.describe(), "ideal": ideal }));
    let spec = if ideal == "mstar" {
        IdealSpec::MStar
    } else if let Some(rest) = ideal.strip_prefix("point:") {
        let (component, a) = match rest.split_once('@') {
            Some((a, i)) => (i.parse().map_err(|_| Error::Config(format!("bad component {i:?}")))?, a),
            None => (0, rest),
        };
        IdealSpec::Pointed { component, a: k.parse(a)? }
    } else {
        let vi = ValueIdeal::parse(ideal, k.value_group().rank())?;
        let verdict = intr_ideal_member(&phi, &vi, &domain, &e, depth)?;
        return Ok(Output::json(merge(base, json!({ "result": to_json(&verdict) }))));
    };
    let answer = ideal_member(&phi, &spec, &domain, &e, depth)?;
    let label = match answer {
        Some(true) => "in",
        Some(false) => "out",
        None => "unknown",
    };
    Ok(Output::json(merge(base, json!({ "result": { "verdict": label } }))))
}

pub fn dichotomy<V: ValuedField>(k: &V, f: &str) -> Result<Output> {
    let phi = function(k, f)?;
    let d = dichotomy_check(&phi, k)?;
    Ok(Output::json(merge(header(k, &phi), json!({ "result": to_json(&d) }))))
}
