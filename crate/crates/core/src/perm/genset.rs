use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use super::MAX_RANK;
use crate::error::{Error, Result};

/// A subset `J` of the simple generators `{σ_1, ..., σ_{n-1}}` of `S_n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GenSet {
    rank: usize,
    bits: u64,
}

impl GenSet {
    pub fn new(rank: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::InvalidGenSet(format!("rank {rank} out of range 1..={MAX_RANK}")));
        }
        let mut bits = 0u64;
        for i in members {
            if i == 0 || i >= rank {
                return Err(Error::InvalidGenSet(format!("σ_{i} is not a generator of S_{rank}")));
            }
            bits |= 1 << (i - 1);
        }
        Ok(GenSet { rank, bits })
    }

    pub fn empty(rank: usize) -> Self {
        GenSet { rank, bits: 0 }
    }

    pub fn full(rank: usize) -> Self {
        GenSet::from_predicate(rank, |_| true)
    }

    pub(crate) fn from_predicate(rank: usize, mut pred: impl FnMut(usize) -> bool) -> Self {
        let mut bits = 0u64;
        for i in 1..rank {
            if pred(i) {
                bits |= 1 << (i - 1);
            }
        }
        GenSet { rank, bits }
    }

    /// Parses `"1,3"`; the empty string (or `"-"`) is the empty set.
    pub fn parse(rank: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "-" {
            return Ok(GenSet::empty(rank));
        }
        let members = s
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<core::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse(format!("bad generator set {s:?}")))?;
        GenSet::new(rank, members)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i < self.rank && self.bits & (1 << (i - 1)) != 0
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (1..self.rank).filter(|&i| self.contains(i))
    }

    pub fn without(&self, i: usize) -> GenSet {
        let mut out = *self;
        if i >= 1 && i < self.rank {
            out.bits &= !(1 << (i - 1));
        }
        out
    }

    pub fn is_subset(&self, other: &GenSet) -> bool {
        self.bits & !other.bits == 0
    }

    /// Every subset of the generators of `S_rank`.
    pub fn all_subsets(rank: usize) -> impl Iterator<Item = GenSet> {
        let count = if rank <= 1 { 1u64 } else { 1u64 << (rank - 1) };
        (0..count).map(move |bits| GenSet { rank, bits })
    }

    /// Position blocks of `S_J`: maximal runs `σ_a..σ_b` in `J` give the
    /// block `a..=b+1`; positions outside every run are singleton blocks.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut start = 1;
        for i in 1..=self.rank {
            if i == self.rank || !self.contains(i) {
                out.push((start, i));
                start = i + 1;
            }
        }
        out
    }
}

impl fmt::Display for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}
