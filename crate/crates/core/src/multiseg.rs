//! Segments, multisegments and the posets `S(a) = {b : b ≤ a}`.
//!
//! Two segments are linked when their union is a segment and neither
//! contains the other; juxtaposed segments such as `[1,2]` and `[3,4]` are
//! linked. An elementary operation replaces a linked pair by its union and
//! intersection (dropped when empty) and moves strictly down in the order.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

pub const DEFAULT_ENUM_CAP: usize = 1_000_000;

/// The integer interval `[b, e]`, `b ≤ e`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Segment {
    b: i64,
    e: i64,
}

impl Segment {
    pub fn new(b: i64, e: i64) -> Result<Self> {
        if b > e {
            return Err(Error::InvalidSegment { b, e });
        }
        Ok(Segment { b, e })
    }

    pub fn begin(&self) -> i64 {
        self.b
    }

    pub fn end(&self) -> i64 {
        self.e
    }

    /// Number of integer points.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> i64 {
        self.e - self.b + 1
    }

    pub fn contains(&self, other: &Segment) -> bool {
        self.b <= other.b && other.e <= self.e
    }

    pub fn linked(&self, other: &Segment) -> bool {
        let union_is_segment = self.b.max(other.b) <= self.e.min(other.e) + 1;
        union_is_segment && !self.contains(other) && !other.contains(self)
    }

    /// Smallest segment containing both; meaningful for linked pairs.
    pub fn union(&self, other: &Segment) -> Segment {
        Segment {
            b: self.b.min(other.b),
            e: self.e.max(other.e),
        }
    }

    pub fn intersection(&self, other: &Segment) -> Option<Segment> {
        let (b, e) = (self.b.max(other.b), self.e.min(other.e));
        (b <= e).then_some(Segment { b, e })
    }

    /// `[b, e+1]`
    pub fn end_plus(&self) -> Segment {
        Segment { b: self.b, e: self.e + 1 }
    }

    /// `[b-1, e]`
    pub fn begin_plus(&self) -> Segment {
        Segment { b: self.b - 1, e: self.e }
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.b, self.e)
    }
}

impl FromStr for Segment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad segment {s:?}"));
        let inner = s.trim().strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
        let (b, e) = inner.split_once(',').ok_or_else(bad)?;
        let b = b.trim().parse().map_err(|_| bad())?;
        let e = e.trim().parse().map_err(|_| bad())?;
        Segment::new(b, e)
    }
}

/// A finite multiset of segments, kept sorted by `(b, e)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Multisegment {
    segments: Vec<Segment>,
}

impl Multisegment {
    pub fn new(segments: impl IntoIterator<Item = Segment>) -> Self {
        let mut segments: Vec<Segment> = segments.into_iter().collect();
        segments.sort();
        Multisegment { segments }
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> Result<Self> {
        let segs = pairs.iter().map(|&(b, e)| Segment::new(b, e)).collect::<Result<Vec<_>>>()?;
        Ok(Multisegment::new(segs))
    }

    pub fn empty() -> Self {
        Multisegment::default()
    }

    /// Segment count, with multiplicity.
    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Sorted beginnings, with multiplicity.
    pub fn begins(&self) -> Vec<i64> {
        // Already sorted by the (b, e) order.
        self.segments.iter().map(|s| s.b).collect()
    }

    /// Sorted ends, with multiplicity.
    pub fn ends(&self) -> Vec<i64> {
        let mut ends: Vec<i64> = self.segments.iter().map(|s| s.e).collect();
        ends.sort_unstable();
        ends
    }

    /// `φ_a(i)`: the number of segments containing `i`.
    pub fn weight(&self) -> BTreeMap<i64, u64> {
        let mut w = BTreeMap::new();
        for s in &self.segments {
            for i in s.b..=s.e {
                *w.entry(i).or_insert(0) += 1;
            }
        }
        w
    }

    /// Total number of points `Σ (e − b + 1)`.
    pub fn point_count(&self) -> i64 {
        self.segments.iter().map(Segment::len).sum()
    }

    /// `Σ len²`; strictly increases along elementary operations.
    fn rank_key(&self) -> i64 {
        self.segments.iter().map(|s| s.len() * s.len()).sum()
    }

    /// Every multisegment one elementary operation below `self`.
    pub fn elementary_ops(&self) -> Vec<Multisegment> {
        let mut out = BTreeSet::new();
        let segs = &self.segments;
        for i in 0..segs.len() {
            for j in i + 1..segs.len() {
                if segs[i] == segs[j] || !segs[i].linked(&segs[j]) {
                    continue;
                }
                let mut next: Vec<Segment> = segs
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != i && k != j)
                    .map(|(_, s)| *s)
                    .collect();
                next.push(segs[i].union(&segs[j]));
                next.extend(segs[i].intersection(&segs[j]));
                out.insert(Multisegment::new(next));
            }
        }
        out.into_iter().collect()
    }

    pub fn translate(&self, by: i64) -> Multisegment {
        Multisegment {
            segments: self.segments.iter().map(|s| Segment { b: s.b + by, e: s.e + by }).collect(),
        }
    }
}

/// `2*[0,1]+[1,2]`; the empty multisegment prints as `0`.
impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for group in self.segments.chunk_by(|a, b| a == b) {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if group.len() > 1 {
                write!(f, "{}*", group.len())?;
            }
            write!(f, "{}", group[0])?;
        }
        Ok(())
    }
}

impl FromStr for Multisegment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" {
            return Ok(Multisegment::empty());
        }
        if compact.is_empty() {
            return Err(Error::Parse("empty multisegment text".into()));
        }
        let mut segs = Vec::new();
        for term in compact.split('+') {
            let (mult, seg) = match term.split_once('*') {
                Some((m, seg)) => (
                    m.parse::<usize>().map_err(|_| Error::Parse(format!("bad multiplicity in {term:?}")))?,
                    seg,
                ),
                None => (1, term),
            };
            if mult == 0 {
                return Err(Error::Parse(format!("zero multiplicity in {term:?}")));
            }
            let seg: Segment = seg.parse()?;
            segs.extend(core::iter::repeat_n(seg, mult));
        }
        Ok(Multisegment::new(segs))
    }
}

/// The poset `S(a)` with its order relation and Hasse diagram. Elements are
/// listed in ascending `Multisegment` order.
#[derive(Debug, Clone)]
pub struct MsPoset {
    elements: Vec<Multisegment>,
    index: BTreeMap<Multisegment, usize>,
    root: usize,
    below: Vec<BitSet>,
    covers: Vec<(usize, usize)>,
}

impl MsPoset {
    pub fn enumerate(a: &Multisegment) -> Result<MsPoset> {
        MsPoset::enumerate_with_cap(a, DEFAULT_ENUM_CAP)
    }

    /// Closure of `a` under elementary operations, failing once more than
    /// `cap` elements have been found.
    pub fn enumerate_with_cap(a: &Multisegment, cap: usize) -> Result<MsPoset> {
        let mut found: BTreeMap<Multisegment, usize> = BTreeMap::new();
        let mut order: Vec<Multisegment> = Vec::new();
        let mut succ: Vec<Vec<usize>> = Vec::new();
        found.insert(a.clone(), 0);
        order.push(a.clone());
        let mut head = 0;
        while head < order.len() {
            let mut next_ids = Vec::new();
            for m in order[head].elementary_ops() {
                let id = match found.get(&m) {
                    Some(&id) => id,
                    None => {
                        if order.len() >= cap {
                            return Err(Error::EnumerationCap { cap });
                        }
                        let id = order.len();
                        found.insert(m.clone(), id);
                        order.push(m);
                        id
                    }
                };
                next_ids.push(id);
            }
            succ.push(next_ids);
            head += 1;
        }

        // Canonical numbering.
        let elements: Vec<Multisegment> = found.keys().cloned().collect();
        let index: BTreeMap<Multisegment, usize> =
            elements.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let remap: Vec<usize> = order.iter().map(|m| index[m]).collect();
        let n = elements.len();
        let mut down: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
        for (old, targets) in succ.iter().enumerate() {
            down[remap[old]] = targets.iter().map(|&t| remap[t]).collect();
        }

        // Lower elements have larger rank keys; close downward sets in that order.
        let mut by_key: Vec<usize> = (0..n).collect();
        by_key.sort_by_key(|&i| core::cmp::Reverse(elements[i].rank_key()));
        let mut below: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
        for &i in &by_key {
            let mut set = BitSet::new(n);
            set.insert(i);
            for &j in &down[i] {
                set.union_with(&below[j]);
            }
            below[i] = set;
        }

        let mut covers = Vec::new();
        for (i, targets) in down.iter().enumerate() {
            for &j in targets {
                let shortcut = targets.iter().any(|&k| k != j && below[k].contains(j));
                if !shortcut {
                    covers.push((i, j));
                }
            }
        }
        covers.sort_unstable();

        Ok(MsPoset {
            root: index[a],
            elements,
            index,
            below,
            covers,
        })
    }

    pub fn root(&self) -> &Multisegment {
        &self.elements[self.root]
    }

    pub fn root_index(&self) -> usize {
        self.root
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Multisegment] {
        &self.elements
    }

    pub fn index_of(&self, m: &Multisegment) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn contains(&self, m: &Multisegment) -> bool {
        self.index.contains_key(m)
    }

    /// `elements[i] ≤ elements[j]`.
    pub fn leq_idx(&self, i: usize, j: usize) -> bool {
        self.below[j].contains(i)
    }

    /// `b ≤ a` for two members; `None` if either is not in the poset.
    pub fn leq(&self, b: &Multisegment, a: &Multisegment) -> Option<bool> {
        Some(self.leq_idx(self.index_of(b)?, self.index_of(a)?))
    }

    /// Hasse diagram edges `(upper, lower)`.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Indices of the elements below `elements[i]`, itself included.
    pub fn down_set(&self, i: usize) -> Vec<usize> {
        self.below[i].iter().collect()
    }

    pub fn up_set(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.leq_idx(i, j)).collect()
    }

    /// Number of pairs `(i, j)` with `elements[i] ≤ elements[j]`.
    pub fn relation_size(&self) -> usize {
        self.below.iter().map(BitSet::count).sum()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.below[i].count() == 1).collect()
    }

    /// The unique minimal element.
    pub fn minimum(&self) -> Result<&Multisegment> {
        match self.minimal_elements().as_slice() {
            [i] => Ok(&self.elements[*i]),
            other => Err(Error::NonUniqueMinimum { count: other.len() }),
        }
    }

    pub fn is_chain(&self) -> bool {
        (0..self.len()).all(|i| (0..self.len()).all(|j| self.leq_idx(i, j) || self.leq_idx(j, i)))
    }
}

pub fn enumerate_poset(a: &Multisegment) -> Result<MsPoset> {
    MsPoset::enumerate(a)
}

pub fn minimum(p: &MsPoset) -> Result<Multisegment> {
    p.minimum().cloned()
}

/// `b ≤ a`: a depth-first search down from `a`, pruned by weight and by the
/// strictly increasing `Σ len²`.
pub fn ms_leq(b: &Multisegment, a: &Multisegment) -> Result<bool> {
    ms_leq_with_cap(b, a, DEFAULT_ENUM_CAP)
}

pub fn ms_leq_with_cap(b: &Multisegment, a: &Multisegment, cap: usize) -> Result<bool> {
    if b == a {
        return Ok(true);
    }
    if b.weight() != a.weight() || b.len() > a.len() {
        return Ok(false);
    }
    let target_key = b.rank_key();
    let mut seen = BTreeSet::new();
    let mut stack = alloc::vec![a.clone()];
    seen.insert(a.clone());
    while let Some(m) = stack.pop() {
        for next in m.elementary_ops() {
            if next == *b {
                return Ok(true);
            }
            if next.rank_key() >= target_key || next.len() < b.len() || seen.contains(&next) {
                continue;
            }
            if seen.len() >= cap {
                return Err(Error::EnumerationCap { cap });
            }
            seen.insert(next.clone());
            stack.push(next);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn seg(b: i64, e: i64) -> Segment {
        Segment::new(b, e).unwrap()
    }

    fn ms(s: &str) -> Multisegment {
        s.parse().unwrap()
    }

    #[test]
    fn linked_examples() {
        assert!(seg(1, 2).linked(&seg(3, 4)));
        assert!(seg(3, 4).linked(&seg(1, 2)));
        assert!(!seg(1, 4).linked(&seg(2, 3)));
        assert!(!seg(1, 2).linked(&seg(4, 5)));
        assert!(seg(1, 2).linked(&seg(2, 3)));
        assert!(!seg(1, 2).linked(&seg(1, 2)));
        assert!(Segment::new(3, 2).is_err());
    }

    #[test]
    fn elementary_op_examples() {
        assert_eq!(ms("[1,2]+[2,3]").elementary_ops(), vec![ms("[1,3]+[2,2]")]);
        assert!(ms("[1,2]+[4,5]").elementary_ops().is_empty());
        assert_eq!(ms("[0,1]+[1,2]").elementary_ops(), vec![ms("[0,2]+[1,1]")]);
        assert_eq!(ms("[1,2]+[3,4]").elementary_ops(), vec![ms("[1,4]")]);
    }

    #[test]
    fn poset_examples() {
        assert_eq!(enumerate_poset(&ms("[2,5]")).unwrap().len(), 1);
        let p = enumerate_poset(&ms("[0,1]+[1,2]")).unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.is_chain());
        let p = enumerate_poset(&ms("2*[0,1]+2*[1,2]")).unwrap();
        assert_eq!(p.len(), 3);
        assert!(p.is_chain());
        assert_eq!(p.covers().len(), 2);
        assert_eq!(minimum(&p).unwrap(), ms("2*[0,2]+2*[1,1]"));
    }

    #[test]
    fn juxtaposed_posets() {
        assert_eq!(enumerate_poset(&ms("[1,2]+[3,4]")).unwrap().len(), 2);
        let p = enumerate_poset(&ms("[1,2]+[2,3]+[4,5]")).unwrap();
        let expected: Vec<Multisegment> =
            ["[1,2]+[2,3]+[4,5]", "[1,3]+[2,2]+[4,5]", "[1,2]+[2,5]", "[1,5]+[2,2]"]
                .iter()
                .map(|s| ms(s))
                .collect();
        assert_eq!(p.len(), 4);
        assert!(expected.iter().all(|m| p.contains(m)));
        assert_eq!(minimum(&p).unwrap(), ms("[1,5]+[2,2]"));
    }

    #[test]
    fn leq_examples() {
        let a = ms("[1,2]+[2,3]");
        let b = ms("[1,3]+[2,2]");
        assert!(ms_leq(&a, &a).unwrap());
        assert!(ms_leq(&b, &a).unwrap());
        assert!(!ms_leq(&a, &b).unwrap());
        assert!(!ms_leq(&ms("[1,3]"), &a).unwrap());
    }

    #[test]
    fn weight_examples() {
        let w: Vec<_> = ms("[1,2]").weight().into_iter().collect();
        assert_eq!(w, vec![(1, 1), (2, 1)]);
        let w: Vec<_> = ms("[1,2]+[2,3]").weight().into_iter().collect();
        assert_eq!(w, vec![(1, 1), (2, 2), (3, 1)]);
    }

    #[test]
    fn begins_and_ends() {
        let a = ms("[1,3]+[1,4]+[2,5]+[2,6]");
        assert_eq!(a.begins(), vec![1, 1, 2, 2]);
        assert_eq!(a.ends(), vec![3, 4, 5, 6]);
        assert_eq!(ms("[2,5]").begins(), vec![2]);
        assert_eq!(ms("[2,5]").ends(), vec![5]);
        let g = ms("3*[0,1]+2*[1,2]");
        assert_eq!(g.begins(), vec![0, 0, 0, 1, 1]);
    }

    #[test]
    fn text_round_trip() {
        let a = ms("2 * [0,1] + [1,2]");
        assert_eq!(a.to_string(), "2*[0,1]+[1,2]");
        assert_eq!(Multisegment::empty().to_string(), "0");
        assert_eq!(ms("0"), Multisegment::empty());
        assert!("[1,2]+".parse::<Multisegment>().is_err());
        assert!("[2,1]".parse::<Multisegment>().is_err());
        assert!("0*[1,2]".parse::<Multisegment>().is_err());
        assert!("".parse::<Multisegment>().is_err());
    }

    #[test]
    fn enumeration_cap() {
        let a = ms("[1,2]+[2,3]+[3,4]+[4,5]");
        assert_eq!(
            MsPoset::enumerate_with_cap(&a, 2).unwrap_err(),
            Error::EnumerationCap { cap: 2 }
        );
    }

    #[test]
    fn non_unique_minimum_is_reported() {
        // A hand-built antichain is not an S(a), but minimum() must still
        // refuse to pick one of several minimal elements.
        let p = enumerate_poset(&ms("[1,2]+[2,3]")).unwrap();
        let mut broken = p.clone();
        broken.below = (0..2).map(|i| {
            let mut b = BitSet::new(2);
            b.insert(i);
            b
        }).collect();
        assert_eq!(broken.minimum().unwrap_err(), Error::NonUniqueMinimum { count: 2 });
        assert_eq!(p.minimum().unwrap().to_string(), "[1,3]+[2,2]");
    }
}
