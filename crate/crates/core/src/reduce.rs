//! Reduction of an arbitrary multisegment to parabolic type, and the
//! realization of `S(a)` as an upper interval of `S(a^s)`.
//!
//! While `a` is not of parabolic type (`min end ≥ max begin`), take the
//! minimal end `m0`, the longest run `m0, m0+1, ..., ℓ-1` of values that are
//! all ends, and raise every end in that run by one. The run gives the chain
//! segment `[m0+1, ℓ]`. Truncating the ends back, in the reverse order,
//! recovers `a`.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::kl::KlPool;
use crate::multiseg::{ms_leq, MsPoset, Multisegment, Segment};
use crate::param::{equality_mask, match_rep, ParamContext};
use crate::perm::{GenSet, Permutation};
use crate::poly::HalfExpPoly;

/// `(J1(a), J2(a))`: repeated sorted ends and repeated sorted beginnings.
pub fn masks(a: &Multisegment) -> Result<(GenSet, GenSet)> {
    if a.is_empty() {
        return Err(Error::Precondition("masks of the empty multisegment".into()));
    }
    Ok((equality_mask(&a.ends()), equality_mask(&a.begins())))
}

/// The unique `w ∈ S_r^{J1(a),J2(a)}` with `a = Σ_j [k_j, ℓ_{w(j)}]`.
pub fn recover_rep(a: &Multisegment) -> Result<Permutation> {
    if a.is_empty() {
        return Err(Error::Precondition("recover_rep of the empty multisegment".into()));
    }
    match_rep(&a.begins(), &a.ends(), a)
}

pub fn is_parabolic_type(a: &Multisegment) -> bool {
    let max_begin = a.segments().iter().map(Segment::begin).max();
    let min_end = a.segments().iter().map(Segment::end).min();
    match (max_begin, min_end) {
        (Some(b), Some(e)) => e >= b,
        _ => true,
    }
}

/// `a^{(k)}`: every segment ending at `k` loses its last point; segments
/// equal to `[k,k]` disappear.
pub fn truncate_end(a: &Multisegment, k: i64) -> Multisegment {
    Multisegment::new(a.segments().iter().filter_map(|s| {
        if s.end() != k {
            Some(*s)
        } else if s.begin() == k {
            None
        } else {
            Some(Segment::new(s.begin(), k - 1).expect("b < k"))
        }
    }))
}

/// One reduction step: returns the chain segment `[m0+1, ℓ]` and the
/// multisegment with every end in `[m0, ℓ-1]` raised by one.
pub fn end_increment_step(a: &Multisegment) -> Option<(Segment, Multisegment)> {
    let ends = a.ends();
    let m0 = *ends.first()?;
    let mut l = m0;
    while ends.binary_search(&l).is_ok() {
        l += 1;
    }
    let chain = Segment::new(m0 + 1, l).expect("l > m0");
    let next = Multisegment::new(a.segments().iter().map(|s| {
        if (m0..l).contains(&s.end()) {
            s.end_plus()
        } else {
            *s
        }
    }));
    Some((chain, next))
}

/// Data produced by [`reduce_to_parabolic`]; `anchor` is filled in by
/// [`interval_realization`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionWitness {
    pub original: Multisegment,
    pub parabolic: Multisegment,
    /// `a^1, ..., a^s`.
    pub steps: Vec<Multisegment>,
    /// `Δ^1, ..., Δ^s`.
    pub chain: Vec<Segment>,
    /// `k_1, ..., k_r`: points of `Δ^1` descending, then `Δ^2`, and so on.
    pub ksequence: Vec<i64>,
    pub anchor: Option<Multisegment>,
    pub rep: Permutation,
    pub masks: (GenSet, GenSet),
}

impl ReductionWitness {
    /// The composite truncation `t`, applying `k_r` first and `k_1` last.
    pub fn truncate(&self, c: &Multisegment) -> Multisegment {
        self.ksequence.iter().rev().fold(c.clone(), |acc, &k| truncate_end(&acc, k))
    }

    /// Membership in the composite `S(a^s)_{k_r,...,k_1}`: at every
    /// truncation `c` must have as many segments ending at `k` as the
    /// reduction chain itself.
    pub fn satisfies_end_hypothesis(&self, c: &Multisegment) -> bool {
        let count = |m: &Multisegment, k: i64| m.segments().iter().filter(|s| s.end() == k).count();
        let mut reference = self.parabolic.clone();
        let mut current = c.clone();
        for &k in self.ksequence.iter().rev() {
            if count(&current, k) != count(&reference, k) {
                return false;
            }
            current = truncate_end(&current, k);
            reference = truncate_end(&reference, k);
        }
        true
    }
}

pub fn reduce_to_parabolic(a: &Multisegment) -> Result<ReductionWitness> {
    let original_masks = masks(a)?;
    let ends = a.ends();
    let bound = (ends[ends.len() - 1] - ends[0] + 1) as usize;
    let mut current = a.clone();
    let mut steps = Vec::new();
    let mut chain = Vec::new();
    while !is_parabolic_type(&current) {
        if chain.len() > bound {
            return Err(Error::IterationCap { input: a.to_string() });
        }
        let (delta, next) = end_increment_step(&current).expect("nonempty");
        if masks(&next)? != original_masks {
            return Err(Error::Realization {
                input: a.to_string(),
                reason: format!("masks changed at step {} ({next})", chain.len() + 1),
            });
        }
        chain.push(delta);
        steps.push(next.clone());
        current = next;
    }
    let ksequence = chain
        .iter()
        .flat_map(|d| (d.begin()..=d.end()).rev())
        .collect();
    let rep = recover_rep(&current)?;
    Ok(ReductionWitness {
        original: a.clone(),
        parabolic: current,
        steps,
        chain,
        ksequence,
        anchor: None,
        rep,
        masks: original_masks,
    })
}

/// `S(a)` realized inside `S(a^s)`: the domain `D = {c : t(c) ∈ S(a)}` is
/// the upper set of `anchor` and `t: D → S(a)` is an order isomorphism.
#[derive(Debug, Clone)]
pub struct Realization {
    pub witness: ReductionWitness,
    /// `S(a^s)`.
    pub ambient: MsPoset,
    /// `S(a)`.
    pub target: MsPoset,
    /// `(index in ambient, index in target)` for every element of `D`,
    /// sorted by ambient index.
    pub embedding: Vec<(usize, usize)>,
    /// `t(anchor)` is the minimum of `S(a)`.
    pub anchor_maps_to_minimum: bool,
    /// `D` equals the set cut out by the end-count hypothesis.
    pub hypothesis_agrees: bool,
}

impl Realization {
    /// The element of `D` over `m ∈ S(a)`.
    pub fn lift(&self, m: &Multisegment) -> Option<&Multisegment> {
        let t = self.target.index_of(m)?;
        let (amb, _) = self.embedding.iter().find(|&&(_, ti)| ti == t)?;
        Some(&self.ambient.elements()[*amb])
    }
}

pub fn interval_realization(a: &Multisegment) -> Result<Realization> {
    let mut witness = reduce_to_parabolic(a)?;
    let ambient = MsPoset::enumerate(&witness.parabolic)?;
    let target = MsPoset::enumerate(a)?;
    let fail = |reason: alloc::string::String| Error::Realization {
        input: a.to_string(),
        reason,
    };

    let mut embedding = Vec::new();
    for (i, c) in ambient.elements().iter().enumerate() {
        if let Some(ti) = target.index_of(&witness.truncate(c)) {
            embedding.push((i, ti));
        }
    }
    let domain: Vec<usize> = embedding.iter().map(|&(i, _)| i).collect();
    let minimal: Vec<usize> = domain
        .iter()
        .copied()
        .filter(|&i| !domain.iter().any(|&j| j != i && ambient.leq_idx(j, i)))
        .collect();
    let anchor = match minimal.as_slice() {
        [i] => *i,
        other => {
            return Err(fail(format!("D has {} minimal elements", other.len())));
        }
    };
    let up = ambient.up_set(anchor);
    if up != domain {
        let stray = up
            .iter()
            .chain(&domain)
            .find(|i| up.contains(i) != domain.contains(i))
            .copied()
            .expect("sets differ");
        return Err(fail(format!(
            "D is not the upper set of {}: {} is in exactly one of them",
            ambient.elements()[anchor],
            ambient.elements()[stray]
        )));
    }
    let mut images: Vec<usize> = embedding.iter().map(|&(_, t)| t).collect();
    images.sort_unstable();
    images.dedup();
    if images.len() != embedding.len() || images.len() != target.len() {
        return Err(fail(format!(
            "t maps {} elements of D onto {} of the {} elements of S(a)",
            embedding.len(),
            images.len(),
            target.len()
        )));
    }
    for &(i, ti) in &embedding {
        for &(j, tj) in &embedding {
            if ambient.leq_idx(i, j) != target.leq_idx(ti, tj) {
                return Err(fail(format!(
                    "order not preserved between {} and {}",
                    ambient.elements()[i],
                    ambient.elements()[j]
                )));
            }
        }
    }

    let anchor_ms = ambient.elements()[anchor].clone();
    let anchor_maps_to_minimum = target.minimum().ok() == Some(&witness.truncate(&anchor_ms));
    let hypothesis_agrees = ambient
        .elements()
        .iter()
        .enumerate()
        .all(|(i, c)| witness.satisfies_end_hypothesis(c) == domain.contains(&i));
    witness.anchor = Some(anchor_ms);
    Ok(Realization {
        witness,
        ambient,
        target,
        embedding,
        anchor_maps_to_minimum,
        hypothesis_agrees,
    })
}

/// `P_{b,c}` for `b ≤ c`, computed through the realization of `S(c)`.
pub fn kl_multisegment(pool: &mut KlPool, b: &Multisegment, c: &Multisegment) -> Result<HalfExpPoly> {
    if !ms_leq(b, c)? {
        return Err(Error::Precondition(format!("{b} ≰ {c}")));
    }
    kl_multisegment_in(pool, c, b, c)
}

/// `P_{b,c}` computed through the realization of `S(ambient)`, for
/// `b ≤ c ≤ ambient`.
pub fn kl_multisegment_in(
    pool: &mut KlPool,
    ambient: &Multisegment,
    b: &Multisegment,
    c: &Multisegment,
) -> Result<HalfExpPoly> {
    let real = interval_realization(ambient)?;
    match real.target.leq(b, c) {
        None => return Err(Error::Precondition(format!("{b} or {c} is not in S({ambient})"))),
        Some(false) => return Err(Error::Precondition(format!("{b} ≰ {c}"))),
        Some(true) => {}
    }
    let lb = real.lift(b).expect("D covers S(a)").clone();
    let lc = real.lift(c).expect("D covers S(a)").clone();
    let parabolic = &real.witness.parabolic;
    let begins = parabolic.begins();
    let ends = parabolic.ends();
    let baseline = Multisegment::new(
        begins
            .iter()
            .zip(&ends)
            .map(|(&b, &e)| Segment::new(b, e))
            .collect::<Result<Vec<_>>>()?,
    );
    let ctx = ParamContext::from_baseline(&baseline)?;
    ctx.kl_via_param(pool.engine(ctx.rank()), &lb, &lc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn ms(s: &str) -> Multisegment {
        s.parse().unwrap()
    }

    fn g(n: usize, m: &[usize]) -> GenSet {
        GenSet::new(n, m.iter().copied()).unwrap()
    }

    #[test]
    fn mask_examples() {
        let (j1, j2) = masks(&ms("[1,3]+[1,4]+[2,5]+[2,6]")).unwrap();
        assert!(j1.is_empty());
        assert_eq!(j2, g(4, &[1, 3]));
        for n in 2..6 {
            for k in 1..n {
                let a = ms(&format!("{k}*[0,1]+{}*[1,2]", n - k));
                let expected = GenSet::from_predicate(n, |i| i != k);
                assert_eq!(masks(&a).unwrap(), (expected, expected));
            }
        }
        let (j1, j2) = masks(&ms("[1,3]+[2,5]+[4,6]")).unwrap();
        assert!(j1.is_empty() && j2.is_empty());
        assert!(masks(&Multisegment::empty()).is_err());
    }

    #[test]
    fn recover_rep_examples() {
        assert_eq!(recover_rep(&ms("[1,2]+[2,3]")).unwrap(), Permutation::identity(2));
        assert_eq!(recover_rep(&ms("[1,3]+[2,2]")).unwrap(), "21".parse().unwrap());
        assert_eq!(recover_rep(&ms("[1,4]+[1,5]+[2,3]+[2,6]")).unwrap(), "2314".parse().unwrap());
    }

    #[test]
    fn parabolic_type_examples() {
        assert!(is_parabolic_type(&ms("[1,2]+[2,3]")));
        assert!(!is_parabolic_type(&ms("[1,2]+[3,4]")));
        assert!(is_parabolic_type(&ms("[1,4]+[2,5]+[3,6]")));
    }

    #[test]
    fn truncate_examples() {
        assert_eq!(truncate_end(&ms("[1,3]+[2,2]"), 3), ms("[1,2]+[2,2]"));
        assert_eq!(truncate_end(&ms("[1,3]+[2,2]"), 5), ms("[1,3]+[2,2]"));
        assert_eq!(truncate_end(&ms("[3,3]"), 3), Multisegment::empty());
    }

    #[test]
    fn reduction_examples() {
        let w = reduce_to_parabolic(&ms("[1,2]+[2,3]")).unwrap();
        assert!(w.chain.is_empty());
        assert_eq!(w.parabolic, ms("[1,2]+[2,3]"));

        let w = reduce_to_parabolic(&ms("[1,2]+[3,4]")).unwrap();
        assert_eq!(w.chain, vec![Segment::new(3, 3).unwrap()]);
        assert_eq!(w.parabolic, ms("[1,3]+[3,4]"));
        assert_eq!(w.ksequence, vec![3]);
        assert_eq!(w.truncate(&w.parabolic), w.original);

        let w = reduce_to_parabolic(&ms("[1,2]+[2,3]+[4,5]")).unwrap();
        assert_eq!(w.chain, vec![Segment::new(3, 4).unwrap(), Segment::new(4, 6).unwrap()]);
        assert_eq!(w.steps, vec![ms("[1,3]+[2,4]+[4,5]"), ms("[1,4]+[2,5]+[4,6]")]);
        assert_eq!(w.ksequence, vec![4, 3, 6, 5, 4]);
        assert_eq!(w.truncate(&w.parabolic), w.original);
    }

    #[test]
    fn realization_examples() {
        let r = interval_realization(&ms("[1,2]+[2,3]")).unwrap();
        assert_eq!(r.embedding.len(), r.ambient.len());

        let r = interval_realization(&ms("[1,2]+[3,4]")).unwrap();
        assert_eq!(r.target.len(), 2);
        assert_eq!(r.embedding.len(), 2);
        assert!(r.anchor_maps_to_minimum && r.hypothesis_agrees);

        let r = interval_realization(&ms("[1,2]+[2,3]+[4,5]")).unwrap();
        assert_eq!(r.target.len(), 4);
        assert_eq!(r.embedding.len(), 4);
        let anchor = r.witness.anchor.as_ref().unwrap();
        assert_eq!(r.witness.truncate(anchor), ms("[1,5]+[2,2]"));
    }

    #[test]
    fn kl_multisegment_basics() {
        let mut pool = KlPool::new();
        let a = ms("[1,2]+[2,3]+[4,5]");
        assert!(kl_multisegment(&mut pool, &a, &a).unwrap().is_one());
        let p = MsPoset::enumerate(&a).unwrap();
        for &(hi, lo) in p.covers() {
            let v = kl_multisegment(&mut pool, &p.elements()[lo], &p.elements()[hi]).unwrap();
            assert!(v.is_one());
        }
        assert!(kl_multisegment(&mut pool, &a, &ms("[1,5]+[2,2]")).is_err());
    }
}
