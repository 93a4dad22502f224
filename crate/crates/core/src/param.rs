//! Parametrization of double cosets by multisegments of parabolic type.
//!
//! A baseline `Δ_1, ..., Δ_n` has nondecreasing beginnings and ends, equal
//! consecutive beginnings exactly at `J2`, equal consecutive ends exactly at
//! `J1`, and `b(Δ_n) ≤ e(Δ_1)`. For `w ∈ S_n^{J1,J2}` the map is
//!
//! ```text
//! Φ(w) = Σ_i [b(Δ_i), e(Δ_{w(i)})]
//! ```
//!
//! which is a bijection onto `S(baseline)` reversing the Bruhat order.

use alloc::format;
use alloc::vec::Vec;
use core::cell::OnceCell;

use crate::error::{Error, Result};
use crate::kl::KLEngine;
use crate::multiseg::{MsPoset, Multisegment, Segment};
use crate::perm::parabolic::{is_min_double_coset_rep, min_double_coset_rep_of, min_double_coset_reps};
use crate::perm::{check_rank, GenSet, Permutation};
use crate::poly::HalfExpPoly;

/// `J` with `σ_i ∈ J` iff `values[i-1] == values[i]`.
pub(crate) fn equality_mask(values: &[i64]) -> GenSet {
    GenSet::from_predicate(values.len(), |i| values[i - 1] == values[i])
}

/// Recovers the minimal `w ∈ S_r^{J1,J2}` with `a = Σ_j [k_j, ℓ_{w(j)}]`,
/// where `k` and `ℓ` are sorted beginnings and ends. Any matching is built
/// first and then projected onto its double coset minimum.
pub(crate) fn match_rep(k: &[i64], l: &[i64], a: &Multisegment) -> Result<Permutation> {
    let r = k.len();
    if a.len() != r || a.begins() != k || a.ends() != l {
        return Err(Error::Precondition(format!(
            "{a} does not have beginnings {k:?} and ends {l:?}"
        )));
    }
    let mut used = alloc::vec![false; r];
    let mut images = Vec::with_capacity(r);
    for seg in a.segments() {
        let m = (0..r)
            .find(|&m| !used[m] && l[m] == seg.end())
            .ok_or_else(|| Error::Precondition(format!("no end slot for {seg} in {a}")))?;
        used[m] = true;
        images.push(m + 1);
    }
    let w_prime = Permutation::from_images(&images)?;
    let w = min_double_coset_rep_of(&w_prime, &equality_mask(l), &equality_mask(k))?;
    if assemble(k, l, &w)? != *a {
        return Err(Error::Precondition(format!("projection of the matching for {a} changed it")));
    }
    Ok(w)
}

/// `Σ_j [k_j, ℓ_{w(j)}]`.
fn assemble(k: &[i64], l: &[i64], w: &Permutation) -> Result<Multisegment> {
    let segs = (1..=k.len())
        .map(|j| Segment::new(k[j - 1], l[w.image(j) - 1]))
        .collect::<Result<Vec<_>>>()?;
    Ok(Multisegment::new(segs))
}

/// A validated baseline together with its generator sets.
#[derive(Debug, Clone)]
pub struct ParamContext {
    n: usize,
    j1: GenSet,
    j2: GenSet,
    begins: Vec<i64>,
    ends: Vec<i64>,
    baseline: Multisegment,
    poset: OnceCell<MsPoset>,
}

/// The canonical baseline: `b(Δ_1) = 1`, `e(Δ_1) = n`, beginnings step by
/// one except across `J2`, ends step by one except across `J1`.
pub fn canonical_baseline(n: usize, j1: &GenSet, j2: &GenSet) -> Result<ParamContext> {
    check_rank(j1.rank(), n)?;
    check_rank(j2.rank(), n)?;
    let mut begins = alloc::vec![1i64];
    let mut ends = alloc::vec![n as i64];
    for i in 1..n {
        begins.push(begins[i - 1] + i64::from(!j2.contains(i)));
        ends.push(ends[i - 1] + i64::from(!j1.contains(i)));
    }
    let segs = begins
        .iter()
        .zip(&ends)
        .map(|(&b, &e)| Segment::new(b, e))
        .collect::<Result<Vec<_>>>()?;
    ParamContext::from_baseline(&Multisegment::new(segs))
}

impl ParamContext {
    pub fn canonical(n: usize, j1: &GenSet, j2: &GenSet) -> Result<Self> {
        canonical_baseline(n, j1, j2)
    }

    /// Accepts any baseline meeting the constraints; `J1` and `J2` are read
    /// off its repeated ends and beginnings.
    pub fn from_baseline(baseline: &Multisegment) -> Result<Self> {
        let n = baseline.len();
        if n == 0 {
            return Err(Error::Precondition("empty baseline".into()));
        }
        let begins = baseline.begins();
        let ends: Vec<i64> = baseline.segments().iter().map(Segment::end).collect();
        if ends.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Precondition(format!(
                "{baseline} cannot be ordered with nondecreasing beginnings and ends"
            )));
        }
        if begins[n - 1] > ends[0] {
            return Err(Error::Precondition(format!(
                "{baseline} violates b(Δ_n) ≤ e(Δ_1)"
            )));
        }
        Ok(ParamContext {
            n,
            j1: equality_mask(&ends),
            j2: equality_mask(&begins),
            begins,
            ends,
            baseline: baseline.clone(),
            poset: OnceCell::new(),
        })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn j1(&self) -> &GenSet {
        &self.j1
    }

    pub fn j2(&self) -> &GenSet {
        &self.j2
    }

    pub fn baseline(&self) -> &Multisegment {
        &self.baseline
    }

    /// `Δ_1, ..., Δ_n` in order.
    pub fn deltas(&self) -> Vec<Segment> {
        self.begins
            .iter()
            .zip(&self.ends)
            .map(|(&b, &e)| Segment::new(b, e).expect("validated baseline"))
            .collect()
    }

    /// `S(baseline)`, enumerated once.
    pub fn poset(&self) -> Result<&MsPoset> {
        if let Some(p) = self.poset.get() {
            return Ok(p);
        }
        let p = MsPoset::enumerate(&self.baseline)?;
        Ok(self.poset.get_or_init(|| p))
    }

    /// `S_n^{J1,J2}`.
    pub fn representatives(&self) -> Vec<Permutation> {
        min_double_coset_reps(&self.j1, &self.j2)
    }

    pub fn phi(&self, w: &Permutation) -> Result<Multisegment> {
        check_rank(w.rank(), self.n)?;
        if !is_min_double_coset_rep(w, &self.j1, &self.j2) {
            return Err(Error::Precondition(format!(
                "{w} is not in S_n^{{J1,J2}} for J1={{{}}}, J2={{{}}}",
                self.j1, self.j2
            )));
        }
        let a = assemble(&self.begins, &self.ends, w)?;
        if !self.poset()?.contains(&a) {
            return Err(Error::Precondition(format!(
                "Φ({w}) = {a} is not below the baseline {}",
                self.baseline
            )));
        }
        Ok(a)
    }

    pub fn phi_inverse(&self, b: &Multisegment) -> Result<Permutation> {
        if !self.poset()?.contains(b) {
            return Err(Error::Precondition(format!("{b} is not in S({})", self.baseline)));
        }
        match_rep(&self.begins, &self.ends, b)
    }

    /// Exhaustive check that `Φ` is a bijection onto `S(baseline)` with
    /// `w ≤ w'` iff `Φ(w') ≤ Φ(w)`.
    pub fn verify_order_translation(&self) -> Result<ParamReport> {
        let reps = self.representatives();
        let poset = self.poset()?;
        let mut report = ParamReport {
            representatives: reps.len(),
            poset_size: poset.len(),
            ..ParamReport::default()
        };
        let mut images = Vec::with_capacity(reps.len());
        for w in &reps {
            let a = match self.phi(w) {
                Ok(a) => a,
                Err(_) => {
                    report.phi_failures.push(w.clone());
                    continue;
                }
            };
            if self.phi_inverse(&a).ok().as_ref() != Some(w) {
                report.roundtrip_failures.push(w.clone());
            }
            images.push((w, poset.index_of(&a).expect("phi checked membership")));
        }
        let mut distinct: Vec<usize> = images.iter().map(|&(_, i)| i).collect();
        distinct.sort_unstable();
        distinct.dedup();
        report.injective = distinct.len() == images.len();
        for (w, iw) in &images {
            for (v, iv) in &images {
                report.pairs_checked += 1;
                let bruhat = w.leq(v);
                if bruhat {
                    report.comparable_pairs += 1;
                }
                if bruhat != poset.leq_idx(*iv, *iw) {
                    report.order_failures.push(((*w).clone(), (*v).clone()));
                }
            }
        }
        Ok(report)
    }

    /// `P_{b,c}` for `b ≤ c` in `S(baseline)`, as the double parabolic KL
    /// polynomial of `(Φ^{-1}(c), Φ^{-1}(b))`.
    pub fn kl_via_param(&self, engine: &mut KLEngine, b: &Multisegment, c: &Multisegment) -> Result<HalfExpPoly> {
        check_rank(engine.rank(), self.n)?;
        let poset = self.poset()?;
        match poset.leq(b, c) {
            None => return Err(Error::Precondition(format!("{b} or {c} is not in S({})", self.baseline))),
            Some(false) => return Err(Error::Precondition(format!("{b} ≰ {c}"))),
            Some(true) => {}
        }
        let wb = self.phi_inverse(b)?;
        let wc = self.phi_inverse(c)?;
        engine.double_parabolic_kl(&wc, &wb, &self.j1, &self.j2)
    }
}

/// Outcome of [`ParamContext::verify_order_translation`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParamReport {
    pub representatives: usize,
    pub poset_size: usize,
    pub injective: bool,
    pub pairs_checked: usize,
    pub comparable_pairs: usize,
    pub phi_failures: Vec<Permutation>,
    pub roundtrip_failures: Vec<Permutation>,
    pub order_failures: Vec<(Permutation, Permutation)>,
}

impl ParamReport {
    pub fn failures(&self) -> usize {
        usize::from(self.representatives != self.poset_size)
            + usize::from(!self.injective)
            + self.phi_failures.len()
            + self.roundtrip_failures.len()
            + self.order_failures.len()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn ms(s: &str) -> Multisegment {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_baselines() {
        let e2 = GenSet::empty(2);
        assert_eq!(canonical_baseline(2, &e2, &e2).unwrap().baseline(), &ms("[1,2]+[2,3]"));
        let e4 = GenSet::empty(4);
        let ctx = canonical_baseline(4, &e4, &e4).unwrap();
        assert_eq!(ctx.baseline(), &ms("[1,4]+[2,5]+[3,6]+[4,7]"));
        let j2 = GenSet::new(4, [1, 3]).unwrap();
        let ctx = canonical_baseline(4, &e4, &j2).unwrap();
        assert_eq!(ctx.baseline().begins(), alloc::vec![1, 1, 2, 2]);
        assert_eq!(ctx.baseline().to_string(), "[1,4]+[1,5]+[2,6]+[2,7]");
        assert_eq!(ctx.j2(), &j2);
        assert!(ctx.j1().is_empty());
    }

    #[test]
    fn user_baseline_example() {
        let ctx = ParamContext::from_baseline(&ms("[1,3]+[1,4]+[2,5]+[2,6]")).unwrap();
        assert_eq!(ctx.j2(), &GenSet::new(4, [1, 3]).unwrap());
        let w = Permutation::from_word(4, &[1, 2]).unwrap();
        let a = ctx.phi(&w).unwrap();
        assert_eq!(a, ms("[1,4]+[1,5]+[2,3]+[2,6]"));
        assert_eq!(ctx.phi_inverse(&a).unwrap(), w);
        assert_eq!(ctx.phi(&Permutation::identity(4)).unwrap(), *ctx.baseline());
        assert_eq!(ctx.phi_inverse(ctx.baseline()).unwrap(), Permutation::identity(4));
    }

    #[test]
    fn rejects_bad_baselines() {
        assert!(ParamContext::from_baseline(&ms("[1,2]+[3,4]")).is_err());
        assert!(ParamContext::from_baseline(&ms("[1,5]+[2,3]")).is_err());
        assert!(ParamContext::from_baseline(&Multisegment::empty()).is_err());
    }

    #[test]
    fn symmetric_n2() {
        let e = GenSet::empty(2);
        let ctx = canonical_baseline(2, &e, &e).unwrap();
        assert_eq!(ctx.phi(&p("21")).unwrap(), ms("[1,3]+[2,2]"));
        let r = ctx.verify_order_translation().unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.comparable_pairs, 3);
    }

    #[test]
    fn phi_rejects_non_representatives() {
        let ctx = ParamContext::from_baseline(&ms("[1,3]+[1,4]+[2,5]+[2,6]")).unwrap();
        assert!(ctx.phi(&p("2134")).is_err());
        assert!(ctx.phi(&p("213")).is_err());
        assert!(ctx.phi_inverse(&ms("[1,2]")).is_err());
    }

    #[test]
    fn kl_via_param_trivial_cases() {
        let e = GenSet::empty(3);
        let ctx = canonical_baseline(3, &e, &e).unwrap();
        let mut engine = KLEngine::new(3);
        let poset = ctx.poset().unwrap();
        for i in 0..poset.len() {
            for j in 0..poset.len() {
                let (b, c) = (&poset.elements()[i], &poset.elements()[j]);
                let r = ctx.kl_via_param(&mut engine, b, c);
                if poset.leq_idx(i, j) {
                    assert!(r.unwrap().is_one());
                } else {
                    assert!(r.is_err());
                }
            }
        }
    }
}
