use std::cmp::Ordering;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ordgroup::{GroupElement, Q};

/// One affine piece `γ ↦ slope·γ + intercept`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub slope: i64,
    pub intercept: GroupElement,
}

impl Segment {
    pub fn eval(&self, g: &GroupElement) -> GroupElement {
        g.scale_int(self.slope) + self.intercept.clone()
    }
}

/// A continuous piecewise-linear function on `ℚΓ` with integer slopes.
///
/// `segments[i]` is active on `[breakpoints[i-1], breakpoints[i]]`; the first
/// and last segments are unbounded. Adjacent segments always differ, so the
/// representation is canonical and `==` is equality of functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiecewiseLinear {
    segments: Vec<Segment>,
    breakpoints: Vec<GroupElement>,
}

impl PiecewiseLinear {
    pub fn constant(c: GroupElement) -> Self {
        PiecewiseLinear { segments: vec![Segment { slope: 0, intercept: c }], breakpoints: Vec::new() }
    }

    /// Builds from raw pieces, checking order and continuity and dropping
    /// redundant breakpoints.
    pub fn from_parts(segments: Vec<Segment>, breakpoints: Vec<GroupElement>) -> Result<Self> {
        if segments.len() != breakpoints.len() + 1 {
            return Err(Error::Invariant("need one more segment than breakpoints".into()));
        }
        let rank = segments[0].intercept.rank();
        for s in &segments {
            if s.intercept.rank() != rank {
                return Err(Error::GroupMismatch(rank, s.intercept.rank()));
            }
        }
        for w in breakpoints.windows(2) {
            if w[0].try_cmp(&w[1])? != Ordering::Less {
                return Err(Error::Invariant("breakpoints must increase strictly".into()));
            }
        }
        for (i, d) in breakpoints.iter().enumerate() {
            if d.rank() != rank {
                return Err(Error::GroupMismatch(rank, d.rank()));
            }
            if segments[i].eval(d) != segments[i + 1].eval(d) {
                return Err(Error::Invariant(format!("discontinuity at {d}")));
            }
        }
        Ok(Self::simplified(segments, breakpoints))
    }

    fn simplified(segments: Vec<Segment>, breakpoints: Vec<GroupElement>) -> Self {
        let mut segs = vec![segments[0].clone()];
        let mut bps = Vec::new();
        for (seg, bp) in segments.into_iter().skip(1).zip(breakpoints) {
            if *segs.last().unwrap() != seg {
                segs.push(seg);
                bps.push(bp);
            }
        }
        PiecewiseLinear { segments: segs, breakpoints: bps }
    }

    /// Pointwise minimum of the lines `slope·γ + intercept`.
    pub fn lower_envelope(lines: &[(i64, GroupElement)]) -> Result<Self> {
        if lines.is_empty() {
            return Err(Error::ZeroFunction);
        }
        let rank = lines[0].1.rank();
        if let Some((_, g)) = lines.iter().find(|(_, g)| g.rank() != rank) {
            return Err(Error::GroupMismatch(rank, g.rank()));
        }
        // left to right the active slope decreases; among parallel lines keep the lowest
        let mut sorted: Vec<&(i64, GroupElement)> = lines.iter().collect();
        sorted.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
        sorted.dedup_by(|later, earlier| later.0 == earlier.0);

        let cross = |a: &(i64, GroupElement), b: &(i64, GroupElement)| -> GroupElement {
            // a.0 > b.0; a is below b exactly to the left of the crossing
            (b.1.clone() - a.1.clone()).scale(&Q::new(1.into(), (a.0 - b.0).into()))
        };
        let mut hull: Vec<&(i64, GroupElement)> = Vec::new();
        let mut starts: Vec<GroupElement> = Vec::new();
        for line in sorted {
            loop {
                let Some(top) = hull.last() else { break };
                let x = cross(top, line);
                match starts.last() {
                    Some(s) if x <= *s => {
                        hull.pop();
                        starts.pop();
                    }
                    _ => {
                        if !hull.is_empty() {
                            starts.push(x);
                        }
                        break;
                    }
                }
            }
            hull.push(line);
        }
        let segments = hull.iter().map(|(s, b)| Segment { slope: *s, intercept: b.clone() }).collect();
        Ok(PiecewiseLinear { segments, breakpoints: starts })
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn breakpoints(&self) -> &[GroupElement] {
        &self.breakpoints
    }

    pub fn rank(&self) -> usize {
        self.segments[0].intercept.rank()
    }

    /// Index of the segment active at `g` (the left one at a breakpoint).
    fn index_at(&self, g: &GroupElement) -> usize {
        self.breakpoints.partition_point(|d| d < g)
    }

    pub fn eval(&self, g: &GroupElement) -> GroupElement {
        self.segments[self.index_at(g)].eval(g)
    }

    pub fn try_eval(&self, g: &GroupElement) -> Result<GroupElement> {
        if g.rank() != self.rank() {
            return Err(Error::GroupMismatch(self.rank(), g.rank()));
        }
        Ok(self.eval(g))
    }

    /// Slope immediately to the left of `g`.
    pub fn slope_left(&self, g: &GroupElement) -> i64 {
        self.segments[self.breakpoints.partition_point(|d| d < g)].slope
    }

    /// Slope immediately to the right of `g`.
    pub fn slope_right(&self, g: &GroupElement) -> i64 {
        self.segments[self.breakpoints.partition_point(|d| d <= g)].slope
    }

    fn combine(&self, other: &Self, sign: i64) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::GroupMismatch(self.rank(), other.rank()));
        }
        let mut merged: Vec<GroupElement> = self.breakpoints.iter().chain(&other.breakpoints).cloned().collect();
        merged.sort();
        merged.dedup();
        let pick = |f: &Self, j: usize| -> usize {
            match merged.get(j) {
                Some(m) => f.breakpoints.partition_point(|d| d < m),
                None => f.breakpoints.len(),
            }
        };
        let segments = (0..=merged.len())
            .map(|j| {
                let a = &self.segments[pick(self, j)];
                let b = &other.segments[pick(other, j)];
                Segment {
                    slope: a.slope + sign * b.slope,
                    intercept: a.intercept.clone() + b.intercept.scale_int(sign),
                }
            })
            .collect();
        Ok(Self::simplified(segments, merged))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, -1)
    }

    pub fn neg(&self) -> Self {
        PiecewiseLinear {
            segments: self
                .segments
                .iter()
                .map(|s| Segment { slope: -s.slope, intercept: -&s.intercept })
                .collect(),
            breakpoints: self.breakpoints.clone(),
        }
    }

    /// Whether the slopes decrease strictly from left to right.
    pub fn is_concave(&self) -> bool {
        self.segments.windows(2).all(|w| w[0].slope > w[1].slope)
    }

    /// Values at the breakpoints, in order.
    pub fn breakpoint_values(&self) -> Vec<GroupElement> {
        self.breakpoints.iter().map(|d| self.eval(d)).collect()
    }
}

impl fmt::Display for PiecewiseLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.segments.iter().enumerate() {
            if i > 0 {
                write!(f, " | {} | ", self.breakpoints[i - 1])?;
            }
            write!(f, "{}g + {}", s.slope, s.intercept)?;
        }
        Ok(())
    }
}

struct SegmentView<'a> {
    seg: &'a Segment,
    from: Option<&'a GroupElement>,
    to: Option<&'a GroupElement>,
}

impl Serialize for SegmentView<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Segment", 4)?;
        st.serialize_field("slope", &self.seg.slope)?;
        st.serialize_field("intercept", &self.seg.intercept)?;
        st.serialize_field("from", &self.from)?;
        st.serialize_field("to", &self.to)?;
        st.end()
    }
}

impl Serialize for PiecewiseLinear {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let views: Vec<SegmentView> = self
            .segments
            .iter()
            .enumerate()
            .map(|(i, seg)| SegmentView {
                seg,
                from: i.checked_sub(1).map(|j| &self.breakpoints[j]),
                to: self.breakpoints.get(i),
            })
            .collect();
        let mut st = s.serialize_struct("PiecewiseLinear", 2)?;
        st.serialize_field("segments", &views)?;
        st.serialize_field("breakpoints", &self.breakpoints)?;
        st.end()
    }
}
