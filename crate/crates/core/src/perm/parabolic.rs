//! Parabolic subgroups `S_J`, one-sided and double coset representatives.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use super::{check_rank, GenSet, Permutation};
use crate::error::{Error, Result};

/// All elements of `S_J`, i.e. permutations preserving every block of `J`.
pub fn parabolic_subgroup(j: &GenSet) -> Vec<Permutation> {
    let n = j.rank();
    let mut out = alloc::vec![Permutation::identity(n)];
    for (lo, hi) in j.blocks() {
        if lo == hi {
            continue;
        }
        let local = Permutation::all(hi - lo + 1);
        let mut next = Vec::with_capacity(out.len() * local.len());
        for base in &out {
            for l in &local {
                let mut images: Vec<usize> = base.images().collect();
                for (k, v) in l.images().enumerate() {
                    images[lo - 1 + k] = lo - 1 + v;
                }
                next.push(Permutation::from_images(&images).expect("block permutation"));
            }
        }
        out = next;
    }
    out
}

/// `w_J`, the longest element of `S_J`: reverses each block.
pub fn longest_element(j: &GenSet) -> Permutation {
    let mut images: Vec<usize> = (1..=j.rank()).collect();
    for (lo, hi) in j.blocks() {
        images[lo - 1..hi].reverse();
    }
    Permutation::from_images(&images).expect("block reversal")
}

/// `w ∈ S_n^J`: no right descent in `J`.
pub fn is_min_coset_rep(w: &Permutation, j: &GenSet) -> bool {
    w.rank() == j.rank() && j.iter().all(|i| !w.has_right_descent(i))
}

/// `S_n^J = {w : ws > w for all s ∈ J}`.
pub fn min_coset_reps(j: &GenSet) -> Vec<Permutation> {
    Permutation::all(j.rank())
        .into_iter()
        .filter(|w| is_min_coset_rep(w, j))
        .collect()
}

/// `w ∈ S_n^{J1,J2}`: no left descent in `J1` and no right descent in `J2`,
/// which characterizes the minimal-length element of `S_{J1} w S_{J2}`.
pub fn is_min_double_coset_rep(w: &Permutation, j1: &GenSet, j2: &GenSet) -> bool {
    w.rank() == j1.rank()
        && w.rank() == j2.rank()
        && j1.iter().all(|i| !w.has_left_descent(i))
        && j2.iter().all(|i| !w.has_right_descent(i))
}

pub fn min_double_coset_reps(j1: &GenSet, j2: &GenSet) -> Vec<Permutation> {
    Permutation::all(j1.rank())
        .into_iter()
        .filter(|w| is_min_double_coset_rep(w, j1, j2))
        .collect()
}

/// The double coset `S_{J1} v S_{J2}`, sorted.
pub fn double_coset(v: &Permutation, j1: &GenSet, j2: &GenSet) -> Vec<Permutation> {
    let left = parabolic_subgroup(j1);
    let right = parabolic_subgroup(j2);
    let mut set = BTreeSet::new();
    for x in &left {
        let xv = x.mul(v);
        for y in &right {
            set.insert(xv.mul(y));
        }
    }
    set.into_iter().collect()
}

/// Projects `w` onto the minimal element of its double coset by stripping
/// left descents in `J1` and right descents in `J2` until none remain.
pub fn min_double_coset_rep_of(w: &Permutation, j1: &GenSet, j2: &GenSet) -> Result<Permutation> {
    check_rank(w.rank(), j1.rank())?;
    check_rank(w.rank(), j2.rank())?;
    let mut w = w.clone();
    loop {
        if let Some(i) = j1.iter().find(|&i| w.has_left_descent(i)) {
            w = w.left_mul_simple(i);
        } else if let Some(i) = j2.iter().find(|&i| w.has_right_descent(i)) {
            w = w.right_mul_simple(i);
        } else {
            return Ok(w);
        }
    }
}

fn require_min_rep(v: &Permutation, j1: &GenSet, j2: &GenSet) -> Result<()> {
    check_rank(v.rank(), j1.rank())?;
    check_rank(v.rank(), j2.rank())?;
    if !is_min_double_coset_rep(v, j1, j2) {
        return Err(Error::Precondition(format!(
            "{v} is not a minimal (J1={{{j1}}}, J2={{{j2}}}) double coset representative"
        )));
    }
    Ok(())
}

/// The unique maximal-length element of `S_{J1} v S_{J2}`, by enumeration.
pub fn max_double_coset_element(v: &Permutation, j1: &GenSet, j2: &GenSet) -> Result<Permutation> {
    require_min_rep(v, j1, j2)?;
    let coset = double_coset(v, j1, j2);
    let top = coset.iter().map(Permutation::length).max().expect("coset is nonempty");
    let mut maxima = coset.into_iter().filter(|w| w.length() == top);
    let w = maxima.next().expect("a maximum exists");
    assert!(maxima.next().is_none(), "double coset of {v} has several maxima");
    Ok(w)
}

/// `K = J1 ∩ v J2 v^{-1}` as simple generators: `σ_i ∈ J1` whose conjugate
/// `v^{-1} σ_i v` is a simple generator lying in `J2`.
pub fn conjugate_intersection(v: &Permutation, j1: &GenSet, j2: &GenSet) -> GenSet {
    let inv = v.inverse();
    GenSet::from_predicate(v.rank(), |i| {
        if !j1.contains(i) {
            return false;
        }
        let (a, b) = (inv.image(i), inv.image(i + 1));
        a.abs_diff(b) == 1 && j2.contains(a.min(b))
    })
}

/// `S_{J1}^{J2,v}`: elements `x ∈ S_{J1}` with `xs > x` for every generator
/// `s` of `S_{J1} ∩ v S_{J2} v^{-1}`. Every element of the double coset is
/// uniquely `x v y` with `y ∈ S_{J2}`, with additive length.
pub fn relative_reps(v: &Permutation, j1: &GenSet, j2: &GenSet) -> Result<Vec<Permutation>> {
    require_min_rep(v, j1, j2)?;
    let k = conjugate_intersection(v, j1, j2);
    Ok(parabolic_subgroup(j1)
        .into_iter()
        .filter(|x| is_min_coset_rep(x, &k))
        .collect())
}

/// The cycle `(a_1, a_2, ..., a_m)`: `a_1 ↦ a_2 ↦ ⋯ ↦ a_m ↦ a_1`.
pub fn cycle(n: usize, elems: &[usize]) -> Result<Permutation> {
    let mut images: Vec<usize> = (1..=n).collect();
    for (k, &a) in elems.iter().enumerate() {
        if a == 0 || a > n {
            return Err(Error::InvalidPermutation(format!("cycle entry {a} outside 1..{n}")));
        }
        images[a - 1] = elems[(k + 1) % elems.len()];
    }
    Permutation::from_images(&images)
}

/// Splitting of `S_J` along its first generator: `J = {σ_{i0}} ∪ J1` and
/// `S_J = ∐ w_i S_{J1}` with `w_i = (i1-i+1, ..., i0+1, i0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetLadder {
    pub j: GenSet,
    pub j1: GenSet,
    pub i0: usize,
    pub i1: usize,
    pub reps: Vec<Permutation>,
}

pub fn coset_ladder(j: &GenSet) -> Result<CosetLadder> {
    let i0 = j
        .iter()
        .next()
        .ok_or_else(|| Error::Precondition("coset ladder needs a nonempty J".into()))?;
    let mut i1 = i0;
    while j.contains(i1) {
        i1 += 1;
    }
    let n = j.rank();
    let reps = (1..=i1 - i0 + 1)
        .map(|i| {
            let top = i1 + 1 - i;
            let elems: Vec<usize> = (i0..=top).rev().collect();
            cycle(n, &elems)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CosetLadder {
        j: *j,
        j1: j.without(i0),
        i0,
        i1,
        reps,
    })
}

impl CosetLadder {
    /// Checks `S_n^{J1} = ∐_i S_n^J w_i` by enumeration.
    pub fn verify_partition(&self) -> bool {
        let mut seen = BTreeSet::new();
        for u in min_coset_reps(&self.j) {
            for w in &self.reps {
                if !seen.insert(u.mul(w)) {
                    return false;
                }
            }
        }
        let target: BTreeSet<_> = min_coset_reps(&self.j1).into_iter().collect();
        seen == target
    }
}
