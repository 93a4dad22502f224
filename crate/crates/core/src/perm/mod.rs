//! The symmetric group `S_n` in one-line notation.
//!
//! Composition convention: `(u * v)(i) = u(v(i))`. Under it `σ_1σ_2` in
//! `S_3` is `231`, i.e. `1 ↦ 2, 2 ↦ 3, 3 ↦ 1`. Left multiplication by `σ_i`
//! swaps the *values* `i, i+1`; right multiplication swaps the *positions*.

mod genset;
pub mod parabolic;

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

pub use genset::GenSet;

use crate::error::{Error, Result};

/// Largest supported rank. Generator sets are stored as 64-bit masks.
pub const MAX_RANK: usize = 64;

/// A permutation of `{1..n}`; `images[i-1] = w(i)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

pub(crate) fn check_rank(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::RankMismatch { left, right })
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_RANK, "rank {n} exceeds {MAX_RANK}");
        Permutation {
            images: (1..=n as u8).collect(),
        }
    }

    /// Validates that `images` is a bijection of `{1..n}`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > MAX_RANK {
            return Err(Error::InvalidPermutation(format!("rank {n} out of range 1..={MAX_RANK}")));
        }
        let mut seen = vec![false; n + 1];
        for &v in images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection of 1..{n}")));
            }
            seen[v] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|&v| v as u8).collect(),
        })
    }

    /// The simple transposition `σ_i = (i, i+1)`.
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::InvalidGenSet(format!("σ_{i} is not a generator of S_{n}")));
        }
        Ok(Permutation::identity(n).right_mul_simple(i))
    }

    /// The product `σ_{i_1} σ_{i_2} ⋯ σ_{i_k}`.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut w = Permutation::identity(n);
        for &i in word {
            if i == 0 || i >= n {
                return Err(Error::InvalidGenSet(format!("σ_{i} is not a generator of S_{n}")));
            }
            w = w.right_mul_simple(i);
        }
        Ok(w)
    }

    /// The longest element `w_0 = n ⋯ 2 1`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            images: (1..=n as u8).rev().collect(),
        }
    }

    /// Parses one-line notation for a known rank.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let w: Permutation = s.parse()?;
        if w.rank() != n {
            return Err(Error::Parse(format!("{s:?} has rank {}, expected {n}", w.rank())));
        }
        Ok(w)
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    /// `w(i)` for `1 ≤ i ≤ n`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] as usize
    }

    /// `w(1), ..., w(n)`.
    pub fn images(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.images.iter().map(|&v| v as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        check_rank(self.rank(), other.rank())?;
        Ok(self.mul(other))
    }

    pub(crate) fn mul(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&j| self.images[j as usize - 1]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.rank()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize - 1] = i as u8 + 1;
        }
        Permutation { images }
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.images;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Bruhat order by the prefix-sorting criterion: for every `k` the sorted
    /// prefix `{x(1..k)}` is componentwise at most the sorted `{y(1..k)}`.
    /// Checked in the equivalent counting form
    /// `#{i ≤ k : x(i) ≥ v} ≤ #{i ≤ k : y(i) ≥ v}` for all `k, v`.
    pub fn bruhat_leq(&self, other: &Permutation) -> Result<bool> {
        check_rank(self.rank(), other.rank())?;
        Ok(self.leq(other))
    }

    pub(crate) fn leq(&self, other: &Permutation) -> bool {
        let n = self.rank();
        let mut ax = vec![0i32; n + 2];
        let mut ay = vec![0i32; n + 2];
        for k in 0..n.saturating_sub(1) {
            let (xv, yv) = (self.images[k] as usize, other.images[k] as usize);
            ax[1..=xv].iter_mut().for_each(|c| *c += 1);
            ay[1..=yv].iter_mut().for_each(|c| *c += 1);
            if (1..=n).any(|v| ax[v] > ay[v]) {
                return false;
            }
        }
        true
    }

    pub(crate) fn lt(&self, other: &Permutation) -> bool {
        self != other && self.leq(other)
    }

    /// `σ_i w < w`, i.e. `i+1` appears to the left of `i` in one-line notation.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let inv = self.inverse();
        inv.images[i - 1] > inv.images[i]
    }

    /// `w σ_i < w`, i.e. `w(i) > w(i+1)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.images[i - 1] > self.images[i]
    }

    pub fn left_descents(&self) -> GenSet {
        let inv = self.inverse();
        GenSet::from_predicate(self.rank(), |i| inv.has_right_descent(i))
    }

    pub fn right_descents(&self) -> GenSet {
        GenSet::from_predicate(self.rank(), |i| self.has_right_descent(i))
    }

    /// `σ_i w`: swaps the values `i` and `i+1`.
    pub fn left_mul_simple(&self, i: usize) -> Permutation {
        let (a, b) = (i as u8, i as u8 + 1);
        Permutation {
            images: self
                .images
                .iter()
                .map(|&v| if v == a { b } else if v == b { a } else { v })
                .collect(),
        }
    }

    /// `w σ_i`: swaps the entries at positions `i` and `i+1`.
    pub fn right_mul_simple(&self, i: usize) -> Permutation {
        let mut images = self.images.clone();
        images.swap(i - 1, i);
        Permutation { images }
    }

    /// Elements covered by `self` in Bruhat order: `w·(i j)` with `w(i) > w(j)`
    /// and no intermediate value between them at positions strictly inside.
    pub fn lower_covers(&self) -> Vec<Permutation> {
        let w = &self.images;
        let n = w.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if w[i] > w[j] && !(i + 1..j).any(|k| w[j] < w[k] && w[k] < w[i]) {
                    let mut images = w.clone();
                    images.swap(i, j);
                    out.push(Permutation { images });
                }
            }
        }
        out
    }

    /// All of `S_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<u8> = (1..=n as u8).collect();
        loop {
            out.push(Permutation {
                images: current.clone(),
            });
            if !next_permutation(&mut current) {
                break;
            }
        }
        out
    }
}

fn next_permutation(v: &mut [u8]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// One-line notation: `2314` for `n ≤ 9`, `1,2,...,10` beyond.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank() <= 9 {
            for v in &self.images {
                write!(f, "{v}")?;
            }
        } else {
            for (i, v) in self.images.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let images: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<core::result::Result<_, _>>()
                .map_err(|_| Error::Parse(format!("bad permutation {s:?}")))?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Parse(format!("bad permutation {s:?}")))?
        };
        Permutation::from_images(&images).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn compose_convention() {
        let s1 = Permutation::simple(3, 1).unwrap();
        let s2 = Permutation::simple(3, 2).unwrap();
        assert!(s1.compose(&s1).unwrap().is_identity());
        assert_eq!(s1.compose(&s2).unwrap(), p("231"));
        let w = p("3142");
        assert_eq!(Permutation::identity(4).compose(&w).unwrap(), w);
        assert_eq!(Permutation::from_word(4, &[1, 2]).unwrap(), p("2314"));
        assert!(s1.compose(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn simple_multiplication_matches_compose() {
        for w in Permutation::all(4) {
            for i in 1..4 {
                let s = Permutation::simple(4, i).unwrap();
                assert_eq!(w.left_mul_simple(i), s.compose(&w).unwrap());
                assert_eq!(w.right_mul_simple(i), w.compose(&s).unwrap());
            }
        }
    }

    #[test]
    fn length_examples() {
        assert_eq!(Permutation::identity(4).length(), 0);
        assert_eq!(p("321").length(), 3);
        assert_eq!(p("231").length(), 2);
        assert_eq!(Permutation::longest(5).length(), 10);
    }

    #[test]
    fn bruhat_examples() {
        let e = Permutation::identity(4);
        for w in Permutation::all(4) {
            assert!(e.bruhat_leq(&w).unwrap());
        }
        assert!(p("213").bruhat_leq(&p("312")).unwrap());
        assert!(!p("231").bruhat_leq(&p("312")).unwrap());
        assert!(!p("312").bruhat_leq(&p("231")).unwrap());
        assert!(p("12").bruhat_leq(&p("123")).is_err());
    }

    #[test]
    fn descent_examples() {
        let e = Permutation::identity(3);
        assert!(e.left_descents().is_empty() && e.right_descents().is_empty());
        let w0 = Permutation::longest(3);
        assert_eq!(w0.left_descents(), GenSet::full(3));
        assert_eq!(w0.right_descents(), GenSet::full(3));
        assert_eq!(p("231").right_descents(), GenSet::new(3, [2]).unwrap());
        assert_eq!(p("231").left_descents(), GenSet::new(3, [1]).unwrap());
    }

    #[test]
    fn exchange_parity() {
        for w in Permutation::all(4) {
            for i in 1..4 {
                let l = w.length() as i64;
                assert_eq!((w.left_mul_simple(i).length() as i64 - l).abs(), 1);
                assert_eq!(w.has_left_descent(i), w.left_mul_simple(i).length() < w.length());
                assert_eq!(w.has_right_descent(i), w.right_mul_simple(i).length() < w.length());
            }
        }
    }

    #[test]
    fn lower_covers_drop_length_by_one() {
        for w in Permutation::all(4) {
            for c in w.lower_covers() {
                assert_eq!(c.length() + 1, w.length());
                assert!(c.leq(&w));
            }
        }
        assert_eq!(Permutation::longest(3).lower_covers().len(), 2);
    }

    #[test]
    fn text_forms() {
        assert_eq!(p("2314").to_string(), "2314");
        let big = Permutation::from_images(&[2, 1, 3, 4, 5, 6, 7, 8, 9, 10]).unwrap();
        assert_eq!(big.to_string(), "2,1,3,4,5,6,7,8,9,10");
        assert_eq!(big.to_string().parse::<Permutation>().unwrap(), big);
        assert!("1224".parse::<Permutation>().is_err());
        assert!("12a".parse::<Permutation>().is_err());
        assert!(Permutation::parse(3, "2314").is_err());
    }

    #[test]
    fn all_has_factorial_size() {
        assert_eq!(Permutation::all(1).len(), 1);
        assert_eq!(Permutation::all(4).len(), 24);
        assert_eq!(Permutation::all(5).len(), 120);
    }
}
