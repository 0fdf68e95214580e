use serde::Serialize;

use super::domain::Target;
use crate::error::{Error, Result};
use crate::fields::{Field, Kappa, KappaElem, SubfieldSpec, ValuedField};
use crate::newton::{local_poly, minval_poly, LocalPoly, PiecewiseLinear, Segment};
use crate::ordgroup::{q2, Bound, GroupElement};
use crate::ratfun::{Polynomial, RationalFunction};

/// How many residue classes are tried when looking for an explicit class
/// in an infinite residue field.
const CANDIDATE_BUDGET: usize = 256;

/// One open piece of the value range between critical points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PieceRecord {
    pub from: Option<GroupElement>,
    pub to: Option<GroupElement>,
    pub slope: i64,
    /// `positive`, `zero` or `nonnegative` relative to the threshold.
    pub sign: &'static str,
}

/// A lattice value where the local polynomials were inspected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointRecord {
    pub gamma: GroupElement,
    pub minval: GroupElement,
    pub numerator_local: String,
    pub denominator_local: String,
    /// How the residue condition was settled, when one applied.
    pub residue: Option<String>,
    /// Residue classes that were refined.
    pub refined: Vec<String>,
}

/// Analysis of `φ(offset + scale·y)` for `v(y)` in a range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionRecord {
    pub substitution: String,
    pub function: String,
    pub from: Option<GroupElement>,
    pub to: Option<GroupElement>,
    pub depth: u32,
    pub pieces: Vec<PieceRecord>,
    pub points: Vec<PointRecord>,
    pub at_zero: String,
    pub children: Vec<RegionRecord>,
}

impl RegionRecord {
    pub fn max_depth(&self) -> u32 {
        self.children.iter().map(|c| c.max_depth()).max().unwrap_or(self.depth).max(self.depth)
    }
}

pub(crate) enum Outcome<E> {
    In(RegionRecord),
    Out(E),
    Unknown(String),
}

enum Step<E> {
    Done,
    Out(E),
    Unknown(String),
}

struct Region<E> {
    psi: RationalFunction<E>,
    offset: E,
    scale: E,
    lo: Bound,
    hi: Bound,
    depth: u32,
}

/// Residue classes a unit of a given value may take.
#[derive(Clone, Copy)]
enum Classes<'a> {
    All,
    In(&'a SubfieldSpec),
}

pub(crate) struct Engine<'a, V: ValuedField> {
    pub field: &'a V,
    pub phi: &'a RationalFunction<V::Elem>,
    pub target: &'a Target,
    /// For `E = D` with `D` a proper pseudo-valuation domain: units of `E`
    /// have residues in this subfield.
    pub unit_residues: Option<&'a SubfieldSpec>,
    pub max_depth: u32,
}

fn bound_value(b: &Bound) -> Option<GroupElement> {
    b.value().cloned()
}

impl<'a, V: ValuedField> Engine<'a, V> {
    fn kappa(&self) -> &Kappa {
        self.field.residue_field()
    }

    /// Whether `φ(a)` lands in the target; a pole never does.
    pub fn lands(&self, a: &V::Elem) -> bool {
        match self.phi.evaluate(self.field, a).value() {
            None => false,
            Some(b) => self.target.contains(self.field, &b),
        }
    }

    pub fn run_whole_field(&self) -> Result<Outcome<V::Elem>> {
        let f = self.field;
        self.analyze(Region {
            psi: self.phi.clone(),
            offset: f.zero(),
            scale: f.one(),
            lo: Bound::Unbounded,
            hi: Bound::Unbounded,
            depth: 1,
        })
    }

    pub fn run_whole_ring(&self) -> Result<Outcome<V::Elem>> {
        let f = self.field;
        let zero = f.value_group().zero();
        self.analyze(Region {
            psi: self.phi.clone(),
            offset: f.zero(),
            scale: f.one(),
            lo: Bound::Closed(zero),
            hi: Bound::Unbounded,
            depth: 1,
        })
    }

    fn classes_at(&self, gamma: &GroupElement) -> Classes<'a> {
        match self.unit_residues {
            Some(s) if gamma.is_zero() => Classes::In(s),
            _ => Classes::All,
        }
    }

    fn witness(&self, region: &Region<V::Elem>, y: &V::Elem) -> V::Elem {
        let f = self.field;
        f.add(&region.offset, &f.mul(&region.scale, y))
    }

    /// Confirms a witness before it is reported.
    fn out(&self, a: V::Elem) -> Outcome<V::Elem> {
        if self.lands(&a) {
            Outcome::Unknown(format!("candidate witness {} did not verify", self.field.format(&a)))
        } else {
            Outcome::Out(a)
        }
    }

    fn step_out(&self, a: V::Elem) -> Step<V::Elem> {
        match self.out(a) {
            Outcome::Out(a) => Step::Out(a),
            Outcome::Unknown(r) => Step::Unknown(r),
            Outcome::In(_) => unreachable!(),
        }
    }

    fn analyze(&self, region: Region<V::Elem>) -> Result<Outcome<V::Elem>> {
        if region.depth > self.max_depth {
            return Ok(Outcome::Unknown(format!("depth {} exhausted", self.max_depth)));
        }
        let f = self.field;
        let group = f.value_group();
        let pf = minval_poly(region.psi.num(), f)?;
        let pg = minval_poly(region.psi.den(), f)?;
        let p = pf.sub(&pg)?;

        let mut crit: Vec<GroupElement> = pf
            .breakpoints()
            .iter()
            .chain(pg.breakpoints())
            .filter(|x| region.lo.contains_as_lower(x) && region.hi.contains_as_upper(x))
            .cloned()
            .collect();
        if let Bound::Closed(x) = &region.lo {
            crit.push(x.clone());
        }
        crit.sort();
        crit.dedup();

        let mut record = RegionRecord {
            substitution: format!("a = {} + ({})·y", f.format(&region.offset), f.format(&region.scale)),
            function: region.psi.format(f, "y"),
            from: bound_value(&region.lo),
            to: bound_value(&region.hi),
            depth: region.depth,
            pieces: Vec::new(),
            points: Vec::new(),
            at_zero: String::new(),
            children: Vec::new(),
        };
        let mut unknown: Option<String> = None;
        let mut extra_points: Vec<GroupElement> = Vec::new();

        // open pieces between critical points
        let mut ends: Vec<Bound> = vec![region.lo.clone()];
        ends.extend(crit.iter().map(|c| Bound::Open(c.clone())));
        ends.push(region.hi.clone());
        for w in ends.windows(2) {
            let (lo, hi) = (&w[0], &w[1]);
            if let (Some(a), Some(b)) = (lo.value(), hi.value()) {
                if a >= b {
                    continue;
                }
            }
            let seg = active_segment(&p, lo.value());
            if let Some(gamma) = self.violation_in(seg.slope, &seg.intercept, lo, hi) {
                let t = f
                    .element_of_value(&gamma)
                    .ok_or_else(|| Error::Invariant(format!("no element of value {gamma}")))?;
                return Ok(self.out(self.witness(&region, &t)));
            }
            let sign = self.piece_sign(seg.slope, &seg.intercept, lo, hi);
            record.pieces.push(PieceRecord { from: bound_value(lo), to: bound_value(hi), slope: seg.slope, sign });
            if self.target.subfield.is_some() {
                // units of value where the envelope vanishes need a residue check
                if seg.slope == 0 && seg.intercept.is_zero() {
                    if let Some(g) = group.point_between(lo, hi) {
                        extra_points.push(g);
                    }
                } else if seg.slope != 0 {
                    let x0 = (-&seg.intercept).scale(&q2(1, seg.slope));
                    if lo.contains_as_lower(&x0) && hi.contains_as_upper(&x0) && !crit.contains(&x0) {
                        extra_points.push(x0);
                    }
                }
            }
        }

        for gamma in crit.iter().chain(&extra_points) {
            if !group.in_lattice(gamma) {
                continue;
            }
            match self.point(&region, gamma, &mut record)? {
                Step::Out(a) => return Ok(Outcome::Out(a)),
                Step::Unknown(r) => {
                    unknown.get_or_insert(r);
                }
                Step::Done => {}
            }
        }

        match region.psi.evaluate(f, &f.zero()).value() {
            None => return Ok(self.out(region.offset.clone())),
            Some(b) => {
                if !self.target.contains(f, &b) {
                    return Ok(self.out(region.offset.clone()));
                }
                record.at_zero = f.format(&b);
            }
        }

        Ok(match unknown {
            Some(r) => Outcome::Unknown(r),
            None => Outcome::In(record),
        })
    }

    /// A lattice value in `(lo, hi)` where the affine piece breaks the
    /// threshold.
    fn violation_in(&self, slope: i64, intercept: &GroupElement, lo: &Bound, hi: &Bound) -> Option<GroupElement> {
        let (g, strict) = self.target.threshold();
        let group = self.field.value_group();
        let bad_const = if strict { intercept <= &g } else { intercept < &g };
        if slope == 0 {
            return if bad_const { group.point_between(lo, hi) } else { None };
        }
        let x0 = (&g - intercept).scale(&q2(1, slope));
        let edge = |v: GroupElement| if strict { Bound::Closed(v) } else { Bound::Open(v) };
        let (vlo, vhi) = if slope > 0 { (Bound::Unbounded, edge(x0)) } else { (edge(x0), Bound::Unbounded) };
        let lo = Bound::max_lower(lo.clone(), vlo);
        let hi = Bound::min_upper(hi.clone(), vhi);
        group.point_between(&lo, &hi)
    }

    fn piece_sign(&self, slope: i64, intercept: &GroupElement, lo: &Bound, hi: &Bound) -> &'static str {
        let (g, _) = self.target.threshold();
        if slope == 0 && *intercept == g {
            return "zero";
        }
        let group = self.field.value_group();
        let touches = if slope == 0 {
            false
        } else {
            let x0 = (&g - intercept).scale(&q2(1, slope));
            lo.contains_as_lower(&x0) && hi.contains_as_upper(&x0) && group.in_lattice(&x0)
        };
        if touches {
            "nonnegative"
        } else {
            "positive"
        }
    }

    fn point(
        &self,
        region: &Region<V::Elem>,
        gamma: &GroupElement,
        record: &mut RegionRecord,
    ) -> Result<Step<V::Elem>> {
        let f = self.field;
        let kappa = self.kappa();
        let t = f
            .element_of_value(gamma)
            .ok_or_else(|| Error::Invariant(format!("no element of value {gamma}")))?;
        let lf = local_poly(region.psi.num(), &t, f)?;
        let lg = local_poly(region.psi.den(), &t, f)?;
        let m0 = &lf.minval - &lg.minval;
        let classes = self.classes_at(gamma);
        let violates = !self.target.value_ok(&m0);
        let generic = |c: &KappaElem| !lf.vanishes_at(kappa, c) && !lg.vanishes_at(kappa, c);
        let mut point = PointRecord {
            gamma: gamma.clone(),
            minval: m0.clone(),
            numerator_local: lf.text.clone(),
            denominator_local: lg.text.clone(),
            residue: None,
            refined: Vec::new(),
        };

        if violates {
            let (cands, _) = self.candidates(classes);
            if let Some(c) = cands.iter().find(|c| generic(c)) {
                let y = f.mul(&t, &f.lift(c));
                return Ok(self.step_out(self.witness(region, &y)));
            }
        }

        if let (Some(sub), true) = (&self.target.subfield, m0.is_zero()) {
            match self.residue_check(region, &t, &lf, &lg, sub, classes)? {
                ResidueCheck::Holds(how) => point.residue = Some(how),
                ResidueCheck::Fails(c) => {
                    let y = f.mul(&t, &f.lift(&c));
                    return Ok(self.step_out(self.witness(region, &y)));
                }
                ResidueCheck::Undecided => {
                    point.residue = Some("undecided".into());
                    record.points.push(point);
                    return Ok(Step::Unknown(format!("residue condition at value {gamma} undecided")));
                }
            }
        }

        // residue classes where the envelope may be beaten
        let mut roots: Vec<KappaElem> = Vec::new();
        let mut polys: Vec<&LocalPoly> = vec![&lg];
        if violates {
            polys.push(&lf);
        }
        for l in polys {
            if l.is_monomial() {
                continue;
            }
            let Some(rs) = kappa.roots(&l.poly) else {
                record.points.push(point);
                return Ok(Step::Unknown(format!("cannot enumerate residue roots of {}", l.text)));
            };
            for r in rs {
                let allowed = match classes {
                    Classes::All => true,
                    Classes::In(s) => s.contains(kappa, &r),
                };
                if !kappa.is_zero(&r) && allowed && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }

        let mut unknown = None;
        for c in &roots {
            point.refined.push(kappa.format(c));
            let shift = f.mul(&t, &f.lift(c));
            let child = Region {
                psi: region.psi.compose_affine(f, &shift, &t),
                offset: self.witness(region, &shift),
                scale: f.mul(&region.scale, &t),
                lo: Bound::Open(f.value_group().zero()),
                hi: Bound::Unbounded,
                depth: region.depth + 1,
            };
            match self.analyze(child)? {
                Outcome::Out(a) => return Ok(Step::Out(a)),
                Outcome::Unknown(r) => {
                    unknown.get_or_insert(r);
                }
                Outcome::In(rec) => record.children.push(rec),
            }
        }
        record.points.push(point);
        Ok(match unknown {
            Some(r) => Step::Unknown(r),
            None => Step::Done,
        })
    }

    /// Nonzero residue classes to try, and whether the list is exhaustive.
    fn candidates(&self, classes: Classes) -> (Vec<KappaElem>, bool) {
        let kappa = self.kappa();
        let exact = match classes {
            Classes::All => kappa.elements(),
            Classes::In(s) => s.elements(kappa),
        };
        let keep = |c: &KappaElem| {
            !kappa.is_zero(c)
                && match classes {
                    Classes::All => true,
                    Classes::In(s) => s.contains(kappa, c),
                }
        };
        match exact {
            Some(all) => (all.into_iter().filter(|c| keep(c)).collect(), true),
            None => {
                let mut out = Vec::new();
                for deg in 0..=3 {
                    out = kappa.small_elements(deg).into_iter().filter(|c| keep(c)).collect();
                    if out.len() >= CANDIDATE_BUDGET {
                        break;
                    }
                }
                out.truncate(CANDIDATE_BUDGET);
                (out, false)
            }
        }
    }

    /// At a value where the envelope is zero, the residue of `ψ(tc)` for a
    /// class `c` off the roots is `u0·loc_f(c)/loc_g(c)`; it has to lie in `F`.
    fn residue_check(
        &self,
        region: &Region<V::Elem>,
        t: &V::Elem,
        lf: &LocalPoly,
        lg: &LocalPoly,
        sub: &SubfieldSpec,
        classes: Classes,
    ) -> Result<ResidueCheck> {
        let f = self.field;
        let kappa = self.kappa();
        if sub.is_whole(kappa) {
            return Ok(ResidueCheck::Holds("residue field is all of F".into()));
        }
        let ad = &region.psi.num().coeffs()[lf.degree];
        let be = &region.psi.den().coeffs()[lg.degree];
        let shift = f.powi(t, lf.degree as i64 - lg.degree as i64).expect("t is nonzero");
        let u0 = f.residue(&f.div(&f.mul(ad, &shift), be).expect("nonzero leading term"))?;
        let r = RationalFunction::normalize(kappa, lf.poly.scale(kappa, &u0), lg.poly.clone())?;
        let generic = |c: &KappaElem| !lf.vanishes_at(kappa, c) && !lg.vanishes_at(kappa, c);
        let value_at = |c: &KappaElem| r.evaluate(kappa, c).value();

        let (cands, exhaustive) = self.candidates(classes);
        for c in cands.iter().filter(|c| generic(c)) {
            if let Some(v) = value_at(c) {
                if !sub.contains(kappa, &v) {
                    return Ok(ResidueCheck::Fails(c.clone()));
                }
            }
        }
        if exhaustive {
            return Ok(ResidueCheck::Holds("all residue classes checked".into()));
        }
        let coeffs_in_f = r.num().coeffs().iter().chain(r.den().coeffs()).all(|c| sub.contains(kappa, c));
        if coeffs_in_f {
            if let Classes::In(_) = classes {
                return Ok(ResidueCheck::Holds("coefficients in F, classes in F".into()));
            }
            if r.is_constant() {
                return Ok(ResidueCheck::Holds("constant residue in F".into()));
            }
            if let Some(e) = sub.inseparable_exponent(kappa) {
                let pe = (kappa.characteristic() as usize).pow(e);
                let g = num_integer::gcd(r.num().exponent_gcd(kappa), r.den().exponent_gcd(kappa));
                if g % pe == 0 {
                    return Ok(ResidueCheck::Holds(format!("coefficients in F, exponents divisible by {pe}")));
                }
            }
        }
        Ok(ResidueCheck::Undecided)
    }
}

enum ResidueCheck {
    Holds(String),
    Fails(KappaElem),
    Undecided,
}

/// The segment of `p` active just right of `lo` (the leftmost if unbounded).
fn active_segment<'p>(p: &'p PiecewiseLinear, lo: Option<&GroupElement>) -> &'p Segment {
    let idx = match lo {
        None => 0,
        Some(x) => p.breakpoints().partition_point(|d| d <= x),
    };
    &p.segments()[idx]
}

/// Roots of `den` in the field that the field can list, as pole candidates.
pub(crate) fn field_poles<V: ValuedField>(field: &V, den: &Polynomial<V::Elem>) -> Option<Vec<V::Elem>> {
    match den.degree()? {
        0 => Some(Vec::new()),
        1 => {
            let c = den.coeffs();
            Some(vec![field.neg(&field.div(&c[0], &c[1])?)])
        }
        _ => field.roots_in_field(den),
    }
}
