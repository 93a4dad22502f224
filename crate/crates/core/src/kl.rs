//! Kazhdan–Lusztig polynomials of `S_n` computed from the defining
//! recursion, with memoization.
//!
//! For `x < y` and a left descent `s` of `y`:
//!
//! * `sx > x`: `P_{x,y} = P_{sx,y}`;
//! * `sx < x`, `x ≰ sy`: `P_{x,y} = P_{sx,sy}`;
//! * `sx < x ≤ sy`:
//!   `P_{x,y} = P_{sx,sy} + q P_{x,sy} − Σ q^{(ℓ(y)−ℓ(z))/2} μ(z,sy) P_{x,z}`
//!   over `x ≤ z < sy` with `sz < z`.
//!
//! The right-descent mirror of the same relations is available through
//! [`DescentRule::SmallestRight`]; all rules produce the same polynomials.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::perm::parabolic::{
    is_min_coset_rep, is_min_double_coset_rep, longest_element, max_double_coset_element,
};
use crate::perm::{check_rank, GenSet, Permutation};
use crate::poly::HalfExpPoly;

/// Which descent of `y` drives the recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DescentRule {
    #[default]
    SmallestLeft,
    LargestLeft,
    SmallestRight,
}

/// Memoizing KL polynomial calculator for a fixed rank.
#[derive(Debug, Clone)]
pub struct KLEngine {
    n: usize,
    rule: DescentRule,
    memo: BTreeMap<(Permutation, Permutation), HalfExpPoly>,
}

/// One summand `(z, μ(z, sv), ℓ(v) − ℓ(z))` of the decomposition attached to
/// the third relation case.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SummandTriple {
    pub z: Permutation,
    pub multiplicity: BigInt,
    pub shift: usize,
}

/// All `z` with `x ≤ z < top`, found by walking Bruhat covers down from `top`.
pub(crate) fn interval_below(x: &Permutation, top: &Permutation) -> Vec<Permutation> {
    let mut seen = BTreeSet::new();
    let mut stack = alloc::vec![top.clone()];
    while let Some(w) = stack.pop() {
        for c in w.lower_covers() {
            if x.leq(&c) && seen.insert(c.clone()) {
                stack.push(c);
            }
        }
    }
    seen.into_iter().collect()
}

impl KLEngine {
    pub fn new(n: usize) -> Self {
        KLEngine::with_rule(n, DescentRule::default())
    }

    pub fn with_rule(n: usize, rule: DescentRule) -> Self {
        KLEngine {
            n,
            rule,
            memo: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn rule(&self) -> DescentRule {
        self.rule
    }

    /// Number of memoized `(x, y)` pairs.
    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    fn check(&self, x: &Permutation, y: &Permutation) -> Result<()> {
        check_rank(x.rank(), self.n)?;
        check_rank(y.rank(), self.n)
    }

    /// `P_{x,y}(q)`; zero when `x ≰ y`.
    pub fn kl_poly(&mut self, x: &Permutation, y: &Permutation) -> Result<HalfExpPoly> {
        self.check(x, y)?;
        Ok(self.p(x, y))
    }

    /// `μ(x, y)`: the coefficient of `q^{(ℓ(y)−ℓ(x)−1)/2}` in `P_{x,y}`, zero
    /// unless `x < y` with `ℓ(y) − ℓ(x)` odd.
    pub fn mu(&mut self, x: &Permutation, y: &Permutation) -> Result<BigInt> {
        self.check(x, y)?;
        Ok(self.mu_unchecked(x, y))
    }

    pub(crate) fn mu_unchecked(&mut self, x: &Permutation, y: &Permutation) -> BigInt {
        let (lx, ly) = (x.length(), y.length());
        if ly <= lx || (ly - lx) % 2 == 0 || !x.leq(y) {
            return BigInt::zero();
        }
        self.p(x, y).coeff((ly - lx - 1) as i64)
    }

    pub(crate) fn p(&mut self, x: &Permutation, y: &Permutation) -> HalfExpPoly {
        if x == y {
            return HalfExpPoly::one();
        }
        if !x.leq(y) {
            return HalfExpPoly::zero();
        }
        if let Some(v) = self.memo.get(&(x.clone(), y.clone())) {
            return v.clone();
        }
        let value = match self.rule {
            DescentRule::SmallestLeft | DescentRule::LargestLeft => self.step_left(x, y),
            DescentRule::SmallestRight => self.step_right(x, y),
        };
        self.memo.insert((x.clone(), y.clone()), value.clone());
        value
    }

    fn step_left(&mut self, x: &Permutation, y: &Permutation) -> HalfExpPoly {
        let mut descents = (1..self.n).filter(|&i| y.has_left_descent(i));
        let s = match self.rule {
            DescentRule::LargestLeft => descents.next_back(),
            _ => descents.next(),
        }
        .expect("y > x has a left descent");
        let sx = x.left_mul_simple(s);
        if !x.has_left_descent(s) {
            return self.p(&sx, y);
        }
        let sy = y.left_mul_simple(s);
        if !x.leq(&sy) {
            return self.p(&sx, &sy);
        }
        let mut value = &self.p(&sx, &sy) + &self.p(x, &sy).shift(2);
        let ly = y.length();
        let lsy = sy.length();
        for z in interval_below(x, &sy) {
            let lz = z.length();
            if (lsy - lz).is_multiple_of(2) || !z.has_left_descent(s) {
                continue;
            }
            let m = self.mu_unchecked(&z, &sy);
            if m.is_zero() {
                continue;
            }
            let term = self.p(x, &z).scale(&m).shift((ly - lz) as i64);
            value = &value - &term;
        }
        value
    }

    fn step_right(&mut self, x: &Permutation, y: &Permutation) -> HalfExpPoly {
        let s = (1..self.n)
            .find(|&i| y.has_right_descent(i))
            .expect("y > x has a right descent");
        let xs = x.right_mul_simple(s);
        if !x.has_right_descent(s) {
            return self.p(&xs, y);
        }
        let ys = y.right_mul_simple(s);
        if !x.leq(&ys) {
            return self.p(&xs, &ys);
        }
        let mut value = &self.p(&xs, &ys) + &self.p(x, &ys).shift(2);
        let ly = y.length();
        let lys = ys.length();
        for z in interval_below(x, &ys) {
            let lz = z.length();
            if (lys - lz).is_multiple_of(2) || !z.has_right_descent(s) {
                continue;
            }
            let m = self.mu_unchecked(&z, &ys);
            if m.is_zero() {
                continue;
            }
            let term = self.p(x, &z).scale(&m).shift((ly - lz) as i64);
            value = &value - &term;
        }
        value
    }

    /// `P^J_{v1,v2} = P_{v1 w_J, v2 w_J}` for minimal right coset representatives.
    pub fn parabolic_kl(&mut self, v1: &Permutation, v2: &Permutation, j: &GenSet) -> Result<HalfExpPoly> {
        self.check(v1, v2)?;
        check_rank(j.rank(), self.n)?;
        for v in [v1, v2] {
            if !is_min_coset_rep(v, j) {
                return Err(Error::Precondition(format!("{v} is not in S_n^J for J={{{j}}}")));
            }
        }
        let wj = longest_element(j);
        Ok(self.p(&v1.mul(&wj), &v2.mul(&wj)))
    }

    /// Left-sided analogue: `P_{w_J v1, w_J v2}` for `v_i` without left
    /// descents in `J`.
    pub fn left_parabolic_kl(&mut self, v1: &Permutation, v2: &Permutation, j: &GenSet) -> Result<HalfExpPoly> {
        self.check(v1, v2)?;
        check_rank(j.rank(), self.n)?;
        for v in [v1, v2] {
            if j.iter().any(|i| v.has_left_descent(i)) {
                return Err(Error::Precondition(format!("{v} has a left descent in J={{{j}}}")));
            }
        }
        let wj = longest_element(j);
        Ok(self.p(&wj.mul(v1), &wj.mul(v2)))
    }

    /// `P^{J1,J2}_{v1,v2} = P_{w1,w2}` with `w_i` the longest element of
    /// `S_{J1} v_i S_{J2}`.
    pub fn double_parabolic_kl(
        &mut self,
        v1: &Permutation,
        v2: &Permutation,
        j1: &GenSet,
        j2: &GenSet,
    ) -> Result<HalfExpPoly> {
        self.check(v1, v2)?;
        check_rank(j1.rank(), self.n)?;
        check_rank(j2.rank(), self.n)?;
        for v in [v1, v2] {
            if !is_min_double_coset_rep(v, j1, j2) {
                return Err(Error::Precondition(format!(
                    "{v} is not in S_n^{{J1,J2}} for J1={{{j1}}}, J2={{{j2}}}"
                )));
            }
        }
        if !v1.leq(v2) {
            return Err(Error::Precondition(format!("{v1} ≰ {v2} in Bruhat order")));
        }
        let w1 = max_double_coset_element(v1, j1, j2)?;
        let w2 = max_double_coset_element(v2, j1, j2)?;
        Ok(self.p(&w1, &w2))
    }

    fn summand_setup(&self, w: &Permutation, v: &Permutation, k1: usize) -> Result<(usize, Permutation)> {
        self.check(w, v)?;
        if k1 < 2 || k1 > self.n {
            return Err(Error::Precondition(format!("k1={k1} outside 2..={}", self.n)));
        }
        let s = k1 - 1;
        let sv = v.left_mul_simple(s);
        let clauses = [
            (v.has_left_descent(s), "σ_{k1-1} v < v"),
            (w.has_left_descent(s), "σ_{k1-1} w < w"),
            (w.lt(v), "w < v"),
            (w.lt(&sv), "w < σ_{k1-1} v"),
        ];
        if let Some((_, clause)) = clauses.iter().find(|(ok, _)| !ok) {
            return Err(Error::Precondition(format!("{clause} fails for w={w}, v={v}, k1={k1}")));
        }
        Ok((s, sv))
    }

    /// The triples `(z, μ(z, sv), ℓ(v) − ℓ(z))` for `z` in
    /// `R(w,v)_{k1} = {z : w ≤ z < sv, sz < z}` with `μ(z, sv) ≠ 0`, where
    /// `s = σ_{k1−1}`.
    pub fn decomposition_summands(&mut self, w: &Permutation, v: &Permutation, k1: usize) -> Result<Vec<SummandTriple>> {
        let (s, sv) = self.summand_setup(w, v, k1)?;
        let lv = v.length();
        let mut out = Vec::new();
        for z in interval_below(w, &sv) {
            if !z.has_left_descent(s) {
                continue;
            }
            let m = self.mu_unchecked(&z, &sv);
            if !m.is_zero() {
                let shift = lv - z.length();
                out.push(SummandTriple { z, multiplicity: m, shift });
            }
        }
        Ok(out)
    }

    /// `P_{w,v} − P_{sw,sv} − q P_{w,sv} + Σ q^{h/2} m P_{w,z}` over the
    /// summand triples; zero whenever the recursion is consistent.
    pub fn summand_residual(&mut self, w: &Permutation, v: &Permutation, k1: usize) -> Result<HalfExpPoly> {
        let triples = self.decomposition_summands(w, v, k1)?;
        let s = k1 - 1;
        let sv = v.left_mul_simple(s);
        let sw = w.left_mul_simple(s);
        let mut r = &(&self.p(w, v) - &self.p(&sw, &sv)) - &self.p(w, &sv).shift(2);
        for t in &triples {
            r = &r + &self.p(w, &t.z).scale(&t.multiplicity).shift(t.shift as i64);
        }
        Ok(r)
    }
}

/// One engine per rank, created on demand.
#[derive(Debug, Default)]
pub struct KlPool {
    engines: BTreeMap<usize, KLEngine>,
}

impl KlPool {
    pub fn new() -> Self {
        KlPool::default()
    }

    pub fn engine(&mut self, n: usize) -> &mut KLEngine {
        self.engines.entry(n).or_insert_with(|| KLEngine::new(n))
    }
}
