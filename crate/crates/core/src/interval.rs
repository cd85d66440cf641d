//! Closed intervals and finite unions of them.
//!
//! `IntervalSet` is the workhorse representation for every finite-level
//! approximation in the crate: a sorted list of pairwise disjoint closed
//! intervals. Adjacent intervals that touch are merged during
//! normalization, so the invariant between consecutive parts is strict:
//! `parts[i].hi < parts[i+1].lo`. Degenerate (single point) intervals are
//! allowed; they show up as isolated members of centers of distances.

use std::fmt;

use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

/// An open interval `(lo, hi)` with `lo < hi`; the complement components
/// of an `IntervalSet` within its hull.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Gap {
    pub lo: Rational,
    pub hi: Rational,
}

/// Where a point sits relative to a closed set of intervals.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Membership {
    Interior,
    Boundary,
    Outside,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(Interval { lo, hi })
    }

    /// Internal constructor for endpoints that are ordered by construction.
    pub(crate) fn span(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi, "span endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        *x >= self.lo && *x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        other.lo >= self.lo && other.hi <= self.hi
    }

    pub fn membership(&self, x: &Rational) -> Membership {
        if *x < self.lo || *x > self.hi {
            Membership::Outside
        } else if *x == self.lo || *x == self.hi {
            Membership::Boundary
        } else {
            Membership::Interior
        }
    }

    pub fn translate(&self, by: &Rational) -> Interval {
        Interval::span(&self.lo + by, &self.hi + by)
    }

    /// Reflect through the point `c`: `[lo, hi] -> [c - hi, c - lo]`.
    pub fn reflect(&self, c: &Rational) -> Interval {
        Interval::span(c - &self.hi, c - &self.lo)
    }

    pub fn scale(&self, by: &Rational) -> Result<Interval> {
        if !by.is_positive() {
            return Err(Error::NonpositiveScale(by.to_string()));
        }
        Ok(Interval::span(&self.lo * by, &self.hi * by))
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        (lo <= hi).then(|| Interval::span(lo, hi))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Gap {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo >= hi {
            return Err(Error::InvalidInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(Gap { lo, hi })
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Open-interval membership.
    pub fn contains(&self, x: &Rational) -> bool {
        *x > self.lo && *x < self.hi
    }
}

impl fmt::Display for Gap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

impl fmt::Debug for Gap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// A finite union of closed intervals in normal form.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct IntervalSet {
    parts: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { parts: Vec::new() }
    }

    pub fn singleton(iv: Interval) -> Self {
        IntervalSet { parts: vec![iv] }
    }

    /// Normalize an arbitrary collection: sort by left endpoint and merge
    /// everything that overlaps or touches.
    pub fn from_parts(mut parts: Vec<Interval>) -> Self {
        parts.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
        let mut merged: Vec<Interval> = Vec::with_capacity(parts.len());
        for iv in parts {
            match merged.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => merged.push(iv),
            }
        }
        IntervalSet { parts: merged }
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn hull(&self) -> Option<Interval> {
        match (self.parts.first(), self.parts.last()) {
            (Some(a), Some(b)) => Some(Interval::span(a.lo.clone(), b.hi.clone())),
            _ => None,
        }
    }

    pub fn measure(&self) -> Rational {
        self.parts.iter().map(|iv| iv.length()).sum()
    }

    /// Index of the part containing `x`, if any.
    fn locate(&self, x: &Rational) -> std::result::Result<usize, usize> {
        self.parts.binary_search_by(|iv| {
            if iv.hi < *x {
                std::cmp::Ordering::Less
            } else if iv.lo > *x {
                std::cmp::Ordering::Greater
            } else {
                std::cmp::Ordering::Equal
            }
        })
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.locate(x).is_ok()
    }

    pub fn membership(&self, x: &Rational) -> Membership {
        match self.locate(x) {
            Ok(i) => self.parts[i].membership(x),
            Err(_) => Membership::Outside,
        }
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        IntervalSet::from_parts(parts)
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() && j < other.parts.len() {
            let a = &self.parts[i];
            let b = &other.parts[j];
            if let Some(iv) = a.intersect(b) {
                out.push(iv);
            }
            if a.hi <= b.hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        // Intersections of normalized sets stay sorted and disjoint, but a
        // shared endpoint can leave touching points; re-normalize to be safe.
        IntervalSet::from_parts(out)
    }

    pub fn restrict(&self, window: &Interval) -> IntervalSet {
        self.intersect(&IntervalSet::singleton(window.clone()))
    }

    /// Is every point of `self` a point of `other`?
    pub fn is_subset_of(&self, other: &IntervalSet) -> bool {
        self.parts
            .iter()
            .all(|iv| match other.locate(&iv.lo) {
                Ok(i) => other.parts[i].contains_interval(iv),
                Err(_) => false,
            })
    }

    pub fn translate(&self, by: &Rational) -> IntervalSet {
        IntervalSet {
            parts: self.parts.iter().map(|iv| iv.translate(by)).collect(),
        }
    }

    pub fn scale(&self, by: &Rational) -> Result<IntervalSet> {
        let parts = self
            .parts
            .iter()
            .map(|iv| iv.scale(by))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntervalSet { parts })
    }

    /// Reflect every part through `c`; the result is renormalized because
    /// reflection reverses the order of parts.
    pub fn reflect(&self, c: &Rational) -> IntervalSet {
        let mut parts: Vec<Interval> = self.parts.iter().map(|iv| iv.reflect(c)).collect();
        parts.reverse();
        IntervalSet { parts }
    }

    /// Does the set intersect the *open* interval `(gap.lo, gap.hi)`?
    pub fn meets_open(&self, gap: &Gap) -> bool {
        // First part whose closed right end reaches past gap.lo.
        let idx = self
            .parts
            .partition_point(|iv| iv.hi <= gap.lo);
        match self.parts.get(idx) {
            Some(iv) => iv.lo < gap.hi,
            None => false,
        }
    }

    /// Maximal open intervals of `window \ self`.
    pub fn gaps_within(&self, window: &Interval) -> Vec<Gap> {
        let inside = self.restrict(window);
        let mut gaps = Vec::new();
        let mut cursor = window.lo.clone();
        for iv in &inside.parts {
            if iv.lo > cursor {
                gaps.push(Gap {
                    lo: cursor,
                    hi: iv.lo.clone(),
                });
            }
            cursor = iv.hi.clone();
        }
        if cursor < window.hi {
            gaps.push(Gap {
                lo: cursor,
                hi: window.hi.clone(),
            });
        }
        gaps
    }

    /// Closure of `window` minus the interiors of `self`'s parts. Boundary
    /// points of `self` survive, so the result can contain degenerate
    /// intervals. Parts straddling the window edge remove their whole
    /// interior, not just the clipped portion.
    pub fn closed_complement_within(&self, window: &Interval) -> IntervalSet {
        let mut parts = Vec::new();
        let mut cursor = window.lo.clone();
        for iv in &self.parts {
            if iv.lo > *window.hi() {
                break;
            }
            if iv.lo >= cursor {
                parts.push(Interval::span(cursor.clone(), iv.lo.clone()));
            }
            if iv.hi > cursor {
                cursor = iv.hi.clone();
            }
        }
        if cursor <= window.hi {
            parts.push(Interval::span(cursor, window.hi.clone()));
        }
        IntervalSet::from_parts(parts)
    }
}

impl fmt::Debug for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, iv) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{iv}")?;
        }
        write!(f, "}}")
    }
}

// IntervalSet serializes as an array of [lo, hi] string pairs:
// [["0","5/12"],["1/2","7/6"]]. Deserialization re-normalizes.
impl Serialize for IntervalSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.parts.len()))?;
        for iv in &self.parts {
            seq.serialize_element(&[iv.lo.to_string(), iv.hi.to_string()])?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntervalSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct SetVisitor;

        impl<'de> Visitor<'de> for SetVisitor {
            type Value = IntervalSet;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an array of [lo, hi] rational string pairs")
            }

            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<IntervalSet, A::Error> {
                let mut parts = Vec::new();
                while let Some([lo, hi]) = seq.next_element::<[String; 2]>()? {
                    let lo: Rational = lo.parse().map_err(de::Error::custom)?;
                    let hi: Rational = hi.parse().map_err(de::Error::custom)?;
                    parts.push(Interval::new(lo, hi).map_err(de::Error::custom)?);
                }
                Ok(IntervalSet::from_parts(parts))
            }
        }

        deserializer.deserialize_seq(SetVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn iv(lo: (i64, i64), hi: (i64, i64)) -> Interval {
        Interval::new(rat(lo.0, lo.1), rat(hi.0, hi.1)).unwrap()
    }

    #[test]
    fn normalize_merges_touching() {
        let s = IntervalSet::from_parts(vec![
            iv((1, 1), (2, 1)),
            iv((0, 1), (1, 1)),
            iv((5, 2), (3, 1)),
        ]);
        assert_eq!(s.parts().len(), 2);
        assert_eq!(s.parts()[0], iv((0, 1), (2, 1)));
        assert_eq!(s.measure(), rat(5, 2));
    }

    #[test]
    fn normalize_keeps_points() {
        let s = IntervalSet::from_parts(vec![iv((0, 1), (0, 1)), iv((1, 1), (2, 1))]);
        assert_eq!(s.parts().len(), 2);
        assert!(s.parts()[0].is_point());
        // ... unless a point touches a neighbor.
        let t = IntervalSet::from_parts(vec![iv((1, 1), (1, 1)), iv((1, 1), (2, 1))]);
        assert_eq!(t.parts().len(), 1);
    }

    #[test]
    fn membership_classification() {
        let s = IntervalSet::from_parts(vec![iv((0, 1), (1, 1)), iv((2, 1), (3, 1))]);
        assert_eq!(s.membership(&rat(1, 2)), Membership::Interior);
        assert_eq!(s.membership(&rat(1, 1)), Membership::Boundary);
        assert_eq!(s.membership(&rat(3, 2)), Membership::Outside);
        assert_eq!(s.membership(&rat(-1, 1)), Membership::Outside);
        assert!(s.contains(&rat(2, 1)));
    }

    #[test]
    fn intersect_and_subset() {
        let a = IntervalSet::from_parts(vec![iv((0, 1), (2, 1)), iv((3, 1), (5, 1))]);
        let b = IntervalSet::from_parts(vec![iv((1, 1), (4, 1))]);
        let c = a.intersect(&b);
        assert_eq!(
            c,
            IntervalSet::from_parts(vec![iv((1, 1), (2, 1)), iv((3, 1), (4, 1))])
        );
        assert!(c.is_subset_of(&a));
        assert!(c.is_subset_of(&b));
        assert!(!a.is_subset_of(&b));
    }

    #[test]
    fn gaps_and_closed_complement() {
        let s = IntervalSet::from_parts(vec![iv((0, 1), (1, 1)), iv((2, 1), (3, 1))]);
        let window = iv((0, 1), (4, 1));
        let gaps = s.gaps_within(&window);
        assert_eq!(gaps.len(), 2);
        assert_eq!(gaps[0], Gap::new(rat(1, 1), rat(2, 1)).unwrap());
        assert_eq!(gaps[1], Gap::new(rat(3, 1), rat(4, 1)).unwrap());

        // Boundary points survive: 0 is an endpoint of [0,1], so the
        // closed complement keeps it as a degenerate part.
        let comp = s.closed_complement_within(&window);
        assert_eq!(
            comp,
            IntervalSet::from_parts(vec![
                iv((0, 1), (0, 1)),
                iv((1, 1), (2, 1)),
                iv((3, 1), (4, 1))
            ])
        );

        // Interiors removed, boundaries kept: complement against a window
        // that starts exactly at a part keeps the touching endpoint.
        let comp2 = s.closed_complement_within(&iv((0, 1), (1, 1)));
        assert_eq!(comp2.parts().len(), 2);
        assert!(comp2.parts().iter().all(Interval::is_point));
    }

    #[test]
    fn reflect_involution() {
        let s = IntervalSet::from_parts(vec![iv((0, 1), (5, 12)), iv((1, 2), (7, 6))]);
        let c = rat(5, 3);
        assert_eq!(s.reflect(&c).reflect(&c), s);
    }

    #[test]
    fn serde_pairs() {
        let s = IntervalSet::from_parts(vec![iv((0, 1), (5, 12)), iv((1, 2), (7, 6))]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"[["0","5/12"],["1/2","7/6"]]"#);
        let back: IntervalSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
