//! Lexicographically ordered value groups `Z^k` / `Q^k` and their divisible
//! closures.
//!
//! An element of the value group and an element of its divisible closure share
//! one representation: a vector of exact rationals. Whether an element lies in
//! the group itself is a predicate on [`GroupSpec`], not a property of the value.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q2(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let err = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| err())?)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Lattice {
    Integral,
    Divisible,
}

/// A value group: `rank` coordinates ordered lexicographically, each either
/// integral (`Z`) or divisible (`Q`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroupSpec {
    lattice: Vec<Lattice>,
}

impl GroupSpec {
    pub fn new(lattice: Vec<Lattice>) -> Result<Self> {
        if lattice.is_empty() {
            return Err(Error::Precondition("value group rank must be at least 1".into()));
        }
        Ok(GroupSpec { lattice })
    }

    pub fn integers() -> Self {
        GroupSpec { lattice: vec![Lattice::Integral] }
    }

    pub fn rationals() -> Self {
        GroupSpec { lattice: vec![Lattice::Divisible] }
    }

    pub fn lex_integers(rank: usize) -> Self {
        assert!(rank >= 1);
        GroupSpec { lattice: vec![Lattice::Integral; rank] }
    }

    pub fn rank(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_divisible(&self) -> bool {
        self.lattice.iter().all(|l| *l == Lattice::Divisible)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement::zero(self.rank())
    }

    pub fn in_lattice(&self, e: &GroupElement) -> bool {
        e.rank() == self.rank()
            && self
                .lattice
                .iter()
                .zip(&e.coords)
                .all(|(l, c)| *l == Lattice::Divisible || c.is_integer())
    }

    /// Some element of the group lying between `lo` and `hi`, if one exists.
    pub fn point_between(&self, lo: &Bound, hi: &Bound) -> Option<GroupElement> {
        if let Bound::Closed(a) = lo {
            if self.in_lattice(a) && hi.admits_from_above(a) {
                return Some(a.clone());
            }
        }
        if let Bound::Closed(b) = hi {
            if self.in_lattice(b) && lo.admits_from_below(b) {
                return Some(b.clone());
            }
        }
        let lo = lo.value().map(|e| e.coords.as_slice());
        let hi = hi.value().map(|e| e.coords.as_slice());
        self.open_search(0, lo, hi)
            .map(|coords| GroupElement { coords })
    }

    // strictly between lo and hi over coordinates dim.., lex order; None bound = unbounded
    fn open_search(&self, dim: usize, lo: Option<&[Q]>, hi: Option<&[Q]>) -> Option<Vec<Q>> {
        let rank = self.rank();
        if dim == rank {
            return None;
        }
        let tail_zero = |first: Q| {
            let mut v = vec![first];
            v.extend((dim + 1..rank).map(|_| Q::zero()));
            v
        };
        let prepend = |first: &Q, rest: Vec<Q>| {
            let mut v = vec![first.clone()];
            v.extend(rest);
            v
        };
        let l = lo.map(|c| &c[0]);
        let h = hi.map(|c| &c[0]);
        let lo_rest = lo.map(|c| &c[1..]);
        let hi_rest = hi.map(|c| &c[1..]);
        match self.lattice[dim] {
            Lattice::Divisible => match (l, h) {
                (None, None) => Some(tail_zero(Q::zero())),
                (Some(l), None) => Some(tail_zero(l + Q::one())),
                (None, Some(h)) => Some(tail_zero(h - Q::one())),
                (Some(l), Some(h)) => match l.cmp(h) {
                    Ordering::Less => Some(tail_zero((l + h) / q(2))),
                    Ordering::Equal => self
                        .open_search(dim + 1, lo_rest, hi_rest)
                        .map(|r| prepend(l, r)),
                    Ordering::Greater => None,
                },
            },
            Lattice::Integral => {
                let candidate = match (l, h) {
                    (None, None) => Some(Q::zero()),
                    (Some(l), _) => Some(Q::from_integer(l.floor().to_integer() + 1)),
                    (None, Some(h)) => Some(Q::from_integer(h.ceil().to_integer() - 1)),
                };
                if let Some(m) = candidate {
                    let above = l.map_or(true, |l| &m > l);
                    let below = h.map_or(true, |h| &m < h);
                    if above && below {
                        return Some(tail_zero(m));
                    }
                }
                if let (Some(l), Some(h)) = (l, h) {
                    if l == h {
                        if !l.is_integer() {
                            return None;
                        }
                        return self
                            .open_search(dim + 1, lo_rest, hi_rest)
                            .map(|r| prepend(l, r));
                    }
                    if l > h {
                        return None;
                    }
                }
                if let Some(l) = l.filter(|l| l.is_integer()) {
                    if let Some(r) = self.open_search(dim + 1, lo_rest, None) {
                        return Some(prepend(l, r));
                    }
                }
                if let Some(h) = h.filter(|h| h.is_integer()) {
                    if let Some(r) = self.open_search(dim + 1, None, hi_rest) {
                        return Some(prepend(h, r));
                    }
                }
                None
            }
        }
    }
}

/// An element of `Q^k` with the lexicographic order. The derived `Ord` is
/// lexicographic for equal ranks; use [`GroupElement::try_cmp`] when ranks may
/// differ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<Q>,
}

impl GroupElement {
    pub fn new(coords: Vec<Q>) -> Self {
        assert!(!coords.is_empty(), "group elements have rank >= 1");
        GroupElement { coords }
    }

    pub fn zero(rank: usize) -> Self {
        GroupElement::new(vec![Q::zero(); rank])
    }

    pub fn scalar(v: Q) -> Self {
        GroupElement { coords: vec![v] }
    }

    pub fn int(v: i64) -> Self {
        GroupElement::scalar(q(v))
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn signum(&self) -> Ordering {
        for c in &self.coords {
            if c.is_positive() {
                return Ordering::Greater;
            }
            if c.is_negative() {
                return Ordering::Less;
            }
        }
        Ordering::Equal
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_rank(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_rank(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        self.same_rank(other)?;
        Ok(self.coords.cmp(&other.coords))
    }

    pub fn scale(&self, factor: &Q) -> Self {
        GroupElement {
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn scale_int(&self, factor: i64) -> Self {
        self.scale(&q(factor))
    }

    /// The common denominator of all coordinates.
    pub fn denominator(&self) -> BigInt {
        self.coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    fn same_rank(&self, other: &Self) -> Result<()> {
        if self.rank() == other.rank() {
            Ok(())
        } else {
            Err(Error::GroupMismatch(self.rank(), other.rank()))
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Q, &Q) -> Q) -> Self {
        GroupElement {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

impl Add for &GroupElement {
    type Output = GroupElement;
    fn add(self, rhs: &GroupElement) -> GroupElement {
        self.checked_add(rhs).expect("group elements of equal rank")
    }
}

impl Sub for &GroupElement {
    type Output = GroupElement;
    fn sub(self, rhs: &GroupElement) -> GroupElement {
        self.checked_sub(rhs).expect("group elements of equal rank")
    }
}

impl Add for GroupElement {
    type Output = GroupElement;
    fn add(self, rhs: GroupElement) -> GroupElement {
        &self + &rhs
    }
}

impl Sub for GroupElement {
    type Output = GroupElement;
    fn sub(self, rhs: GroupElement) -> GroupElement {
        &self - &rhs
    }
}

impl Neg for &GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        GroupElement {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.len() == 1 {
            return write!(f, "{}", self.coords[0]);
        }
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coords.iter().map(|c| c.to_string()))
    }
}

impl std::str::FromStr for GroupElement {
    type Err = Error;

    /// Accepts `"3/2"` or `"(1, -2/3)"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(s);
        let coords = inner.split(',').map(parse_q).collect::<Result<Vec<_>>>()?;
        Ok(GroupElement::new(coords))
    }
}

/// A valuation value: a group element or the valuation of zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Val {
    Finite(GroupElement),
    Infinity,
}

impl Val {
    pub fn finite(&self) -> Option<&GroupElement> {
        match self {
            Val::Finite(g) => Some(g),
            Val::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Val::Infinity)
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Val::Finite(g) => g.is_positive(),
            Val::Infinity => true,
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        match self {
            Val::Finite(g) => !g.is_negative(),
            Val::Infinity => true,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Val::Finite(g) if g.is_zero())
    }

    pub fn add(&self, other: &Val) -> Val {
        match (self, other) {
            (Val::Finite(a), Val::Finite(b)) => Val::Finite(a + b),
            _ => Val::Infinity,
        }
    }

    /// `self - other`; `other` must be finite.
    pub fn sub(&self, other: &GroupElement) -> Val {
        match self {
            Val::Finite(a) => Val::Finite(a - other),
            Val::Infinity => Val::Infinity,
        }
    }

    pub fn scale_int(&self, k: i64) -> Val {
        match self {
            Val::Finite(a) => Val::Finite(a.scale_int(k)),
            Val::Infinity => Val::Infinity,
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Finite(g) => write!(f, "{g}"),
            Val::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for Val {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Val::Finite(g) => g.serialize(s),
            Val::Infinity => s.serialize_str("inf"),
        }
    }
}

/// One end of an interval of `QΓ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    Unbounded,
    Open(GroupElement),
    Closed(GroupElement),
}

impl Bound {
    pub fn value(&self) -> Option<&GroupElement> {
        match self {
            Bound::Unbounded => None,
            Bound::Open(g) | Bound::Closed(g) => Some(g),
        }
    }

    // as an upper bound, does it admit `g`?
    fn admits_from_above(&self, g: &GroupElement) -> bool {
        match self {
            Bound::Unbounded => true,
            Bound::Open(b) => g < b,
            Bound::Closed(b) => g <= b,
        }
    }

    // as a lower bound, does it admit `g`?
    fn admits_from_below(&self, g: &GroupElement) -> bool {
        match self {
            Bound::Unbounded => true,
            Bound::Open(b) => g > b,
            Bound::Closed(b) => g >= b,
        }
    }

    pub fn contains_as_lower(&self, g: &GroupElement) -> bool {
        self.admits_from_below(g)
    }

    pub fn contains_as_upper(&self, g: &GroupElement) -> bool {
        self.admits_from_above(g)
    }

    /// The tighter of two upper bounds.
    pub fn min_upper(a: Bound, b: Bound) -> Bound {
        match (&a, &b) {
            (Bound::Unbounded, _) => b,
            (_, Bound::Unbounded) => a,
            _ => {
                let (x, y) = (a.value().unwrap(), b.value().unwrap());
                match x.cmp(y) {
                    Ordering::Less => a,
                    Ordering::Greater => b,
                    Ordering::Equal => {
                        if matches!(a, Bound::Open(_)) {
                            a
                        } else {
                            b
                        }
                    }
                }
            }
        }
    }

    /// The tighter of two lower bounds.
    pub fn max_lower(a: Bound, b: Bound) -> Bound {
        match (&a, &b) {
            (Bound::Unbounded, _) => b,
            (_, Bound::Unbounded) => a,
            _ => {
                let (x, y) = (a.value().unwrap(), b.value().unwrap());
                match x.cmp(y) {
                    Ordering::Greater => a,
                    Ordering::Less => b,
                    Ordering::Equal => {
                        if matches!(a, Bound::Open(_)) {
                            a
                        } else {
                            b
                        }
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ge(c: &[(i64, i64)]) -> GroupElement {
        GroupElement::new(c.iter().map(|&(n, d)| q2(n, d)).collect())
    }

    #[test]
    fn add_examples() {
        assert_eq!(GroupElement::int(1) + GroupElement::int(2), GroupElement::int(3));
        let g = ge(&[(7, 1), (-3, 2)]);
        assert_eq!(&GroupElement::zero(2) + &g, g);
        assert_eq!(ge(&[(1, 1), (-3, 1)]) + ge(&[(0, 1), (5, 1)]), ge(&[(1, 1), (2, 1)]));
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let a = GroupElement::int(1);
        let b = GroupElement::zero(2);
        assert_eq!(a.checked_add(&b), Err(Error::GroupMismatch(1, 2)));
        assert_eq!(a.try_cmp(&b), Err(Error::GroupMismatch(1, 2)));
    }

    #[test]
    fn scale_examples() {
        let z = GroupSpec::integers();
        let h = GroupElement::int(2).scale(&q2(1, 2));
        assert_eq!(h, GroupElement::int(1));
        assert!(z.in_lattice(&h));
        let h = GroupElement::int(1).scale(&q2(1, 2));
        assert_eq!(h, ge(&[(1, 2)]));
        assert!(!z.in_lattice(&h));
        assert!(GroupSpec::rationals().in_lattice(&h));
        assert_eq!(ge(&[(3, 1), (-2, 1)]).scale(&q2(1, 3)), ge(&[(1, 1), (-2, 3)]));
    }

    #[test]
    fn cmp_examples() {
        assert_eq!(ge(&[(1, 1), (0, 1)]).try_cmp(&ge(&[(0, 1), (100, 1)])), Ok(Ordering::Greater));
        assert_eq!(ge(&[(1, 2)]).try_cmp(&GroupElement::int(1)), Ok(Ordering::Less));
        let g = ge(&[(4, 3), (-1, 1)]);
        assert_eq!(g.try_cmp(&g), Ok(Ordering::Equal));
    }

    #[test]
    fn parse_and_display() {
        let g: GroupElement = "(1, -2/3)".parse().unwrap();
        assert_eq!(g, ge(&[(1, 1), (-2, 3)]));
        assert_eq!(g.to_string(), "(1, -2/3)");
        assert_eq!("1/2".parse::<GroupElement>().unwrap().to_string(), "1/2");
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"["1","-2/3"]"#);
    }

    #[test]
    fn infinity_above_everything() {
        assert!(Val::Infinity > Val::Finite(GroupElement::int(1_000_000)));
        assert!(Val::Finite(GroupElement::int(-3)) < Val::Finite(GroupElement::int(2)));
    }

    #[test]
    fn lattice_points_in_intervals() {
        let z = GroupSpec::integers();
        let open = |n, d| Bound::Open(ge(&[(n, d)]));
        assert_eq!(z.point_between(&open(1, 3), &open(2, 3)), None);
        assert_eq!(z.point_between(&open(1, 3), &open(4, 3)), Some(GroupElement::int(1)));
        assert_eq!(z.point_between(&open(0, 1), &open(1, 1)), None);
        assert_eq!(z.point_between(&Bound::Closed(GroupElement::int(1)), &open(1, 1)), None);
        assert_eq!(
            z.point_between(&Bound::Closed(GroupElement::int(1)), &Bound::Closed(GroupElement::int(1))),
            Some(GroupElement::int(1))
        );
        assert_eq!(z.point_between(&Bound::Unbounded, &open(-5, 2)), Some(GroupElement::int(-3)));
        let qg = GroupSpec::rationals();
        assert_eq!(qg.point_between(&open(0, 1), &open(1, 1)), Some(ge(&[(1, 2)])));

        // Z^2 lex: above (1/2, 0) the group has no least element but is nonempty
        let z2 = GroupSpec::lex_integers(2);
        let p = z2.point_between(&Bound::Open(ge(&[(1, 2), (0, 1)])), &Bound::Open(ge(&[(1, 1), (0, 1)])));
        let p = p.unwrap();
        assert_eq!(p.coords()[0], q(1));
        assert!(p.coords()[1] < q(0));
        // between (1, 5) and (1, 6) there is nothing
        assert_eq!(
            z2.point_between(&Bound::Open(ge(&[(1, 1), (5, 1)])), &Bound::Open(ge(&[(1, 1), (6, 1)]))),
            None
        );
        // between (1, 5) and (2, -100) there is plenty
        assert!(z2
            .point_between(&Bound::Open(ge(&[(1, 1), (5, 1)])), &Bound::Open(ge(&[(2, 1), (-100, 1)])))
            .is_some());
    }

    fn arb_elem(rank: usize) -> impl Strategy<Value = GroupElement> {
        prop::collection::vec((-50i64..50, 1i64..8), rank).prop_map(|v| {
            GroupElement::new(v.into_iter().map(|(n, d)| q2(n, d)).collect())
        })
    }

    proptest! {
        #[test]
        fn order_is_translation_invariant((a, b, c) in (arb_elem(2), arb_elem(2), arb_elem(2))) {
            prop_assert_eq!(a.try_cmp(&b).unwrap(), (&a + &c).try_cmp(&(&b + &c)).unwrap());
        }

        #[test]
        fn scaling_composes(a in arb_elem(3), p in (-9i64..9, 1i64..9), r in (-9i64..9, 1i64..9)) {
            let (p, r) = (q2(p.0, p.1), q2(r.0, r.1));
            prop_assert_eq!(a.scale(&p).scale(&r), a.scale(&(p * r)));
        }

        #[test]
        fn order_is_total((a, b, c) in (arb_elem(2), arb_elem(2), arb_elem(2))) {
            let ab = a.try_cmp(&b).unwrap();
            prop_assert_eq!(ab.reverse(), b.try_cmp(&a).unwrap());
            if ab != Ordering::Greater && b.try_cmp(&c).unwrap() != Ordering::Greater {
                prop_assert!(a.try_cmp(&c).unwrap() != Ordering::Greater);
            }
        }

        #[test]
        fn found_lattice_points_lie_inside(a in arb_elem(2), b in arb_elem(2)) {
            let z2 = GroupSpec::lex_integers(2);
            let (lo, hi) = (Bound::Open(a.clone()), Bound::Open(b.clone()));
            if let Some(p) = z2.point_between(&lo, &hi) {
                prop_assert!(z2.in_lattice(&p));
                prop_assert!(p > a && p < b);
            }
        }
    }
}
