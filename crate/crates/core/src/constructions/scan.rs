use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::{Field, Kappa, KappaElem, SubfieldSpec};
use crate::par::{self, Mode};
use crate::ratfun::Polynomial;

pub const MAX_SOURCE_ORDER: u64 = 64;
pub const MAX_DEGREE: usize = 4;
/// Numerator/denominator pairs a single scan may visit.
pub const PAIR_BUDGET: u64 = 4_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoundMap {
    pub function: String,
    /// Poles and points sent outside `M`.
    pub exceptions: Vec<String>,
    /// Values on `L` in element order, `pole` at poles.
    pub values: Vec<String>,
    pub is_constant: bool,
}

/// Functions without exceptions whose induced map `L → M` is constant,
/// split by shape. A nonconstant `f = P/Q` induces the constant `c` iff
/// `x^q − x` divides `P − cQ`; those form the trace family.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConstantInduced {
    pub constants: usize,
    pub trace_family: usize,
    /// Nonconstant, constant on `L`, and outside the trace family.
    pub other: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldMapReport {
    pub source: String,
    pub target: String,
    pub degree_bound: usize,
    pub exception_bound: usize,
    pub scanned: usize,
    pub found: Vec<FoundMap>,
    pub nonconstant_found: usize,
    pub constant_induced: ConstantInduced,
}

impl FieldMapReport {
    pub fn contains(&self, function: &str) -> bool {
        self.found.iter().any(|m| m.function == function)
    }

    /// After removing the trace family, only constants induce constant maps.
    pub fn constant_only_outside_trace_family(&self) -> bool {
        self.constant_induced.other == 0
    }
}

/// Monic polynomials of degree exactly `deg`, or all polynomials of degree
/// at most `deg`.
fn polys(l: &Kappa, elems: &[KappaElem], deg: usize, monic: bool) -> Vec<Polynomial<KappaElem>> {
    let free = if monic { deg } else { deg + 1 };
    let mut out = vec![];
    let mut idx = vec![0usize; free];
    loop {
        let mut c: Vec<KappaElem> = idx.iter().map(|&i| elems[i].clone()).collect();
        if monic {
            c.push(l.one());
        }
        out.push(Polynomial::new(l, c));
        let mut j = 0;
        while j < free {
            idx[j] += 1;
            if idx[j] < elems.len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
        if j == free {
            return out;
        }
    }
}

fn monic_denominators(l: &Kappa, elems: &[KappaElem], bound: usize) -> Vec<Polynomial<KappaElem>> {
    (0..=bound).flat_map(|d| polys(l, elems, d, true)).collect()
}

/// Every reduced `P/Q` over `L` with `deg P, deg Q ≤ B` and `Q` monic that
/// maps all but at most `k` elements of `L` into `M`.
pub fn field_map_scan(l: &Kappa, m: &SubfieldSpec, bound: usize, k: usize, mode: Mode) -> Result<FieldMapReport> {
    let elems = l
        .elements()
        .ok_or_else(|| Error::Precondition(format!("{} is not finite", l.describe())))?;
    let q = elems.len() as u64;
    if q > MAX_SOURCE_ORDER || bound > MAX_DEGREE {
        return Err(Error::Resource(format!(
            "field map scans need |L| ≤ {MAX_SOURCE_ORDER} and B ≤ {MAX_DEGREE}, got |L| = {q}, B = {bound}"
        )));
    }
    let nums = polys(l, &elems, bound, false);
    let dens = monic_denominators(l, &elems, bound);
    let pairs = nums.len() as u64 * dens.len() as u64;
    if pairs > PAIR_BUDGET {
        return Err(Error::Resource(format!("{pairs} candidate functions exceed the budget {PAIR_BUDGET}")));
    }
    let vanishing = Polynomial::monomial(l, l.one(), q as usize).sub(l, &Polynomial::x(l));

    struct Hit {
        map: FoundMap,
        constant_on_l: Option<KappaElem>,
        in_trace_family: bool,
    }

    let per_num = par::map(mode, &nums, |num| {
        let mut scanned = 0usize;
        let mut hits = Vec::new();
        let candidates: &[Polynomial<KappaElem>] = if num.is_zero() { &dens[..1] } else { &dens };
        for den in candidates {
            if !num.is_zero() && num.gcd(l, den).degree() != Some(0) {
                continue;
            }
            scanned += 1;
            let mut exceptions = Vec::new();
            let mut values = Vec::with_capacity(elems.len());
            let mut image = Vec::with_capacity(elems.len());
            for c in &elems {
                match l.inv(&den.eval(l, c)) {
                    None => {
                        exceptions.push(l.format(c));
                        values.push("pole".to_string());
                        image.push(None);
                    }
                    Some(inv) => {
                        let y = l.mul(&num.eval(l, c), &inv);
                        if !m.contains(l, &y) {
                            exceptions.push(l.format(c));
                        }
                        values.push(l.format(&y));
                        image.push(Some(y));
                    }
                }
                if exceptions.len() > k {
                    break;
                }
            }
            if exceptions.len() > k {
                continue;
            }
            let is_constant = num.degree().unwrap_or(0) == 0 && den.degree() == Some(0);
            let constant_on_l = match image.first() {
                Some(Some(c0)) if exceptions.is_empty() && image.iter().all(|y| y.as_ref() == Some(c0)) => Some(c0.clone()),
                _ => None,
            };
            let in_trace_family = match &constant_on_l {
                Some(c) if !is_constant => {
                    let diff = num.sub(l, &den.scale(l, c));
                    diff.div_rem(l, &vanishing).is_some_and(|(_, r)| r.is_zero())
                }
                _ => false,
            };
            let function = if den.degree() == Some(0) {
                num.format(l, "x")
            } else {
                format!("({})/({})", num.format(l, "x"), den.format(l, "x"))
            };
            hits.push(Hit { map: FoundMap { function, exceptions, values, is_constant }, constant_on_l, in_trace_family });
        }
        (scanned, hits)
    });

    let mut report = FieldMapReport {
        source: l.describe(),
        target: m.describe(l),
        degree_bound: bound,
        exception_bound: k,
        scanned: 0,
        found: Vec::new(),
        nonconstant_found: 0,
        constant_induced: ConstantInduced::default(),
    };
    for (scanned, hits) in per_num {
        report.scanned += scanned;
        for h in hits {
            if !h.map.is_constant {
                report.nonconstant_found += 1;
            }
            if h.constant_on_l.is_some() {
                let ci = &mut report.constant_induced;
                match (h.map.is_constant, h.in_trace_family) {
                    (true, _) => ci.constants += 1,
                    (false, true) => ci.trace_family += 1,
                    (false, false) => ci.other += 1,
                }
            }
            report.found.push(h.map);
        }
    }
    Ok(report)
}
