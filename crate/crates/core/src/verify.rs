//! Exhaustive property suites over small ranks and multisegment corpora.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Result;
use crate::kl::{KLEngine, KlPool};
use crate::multiseg::{MsPoset, Multisegment, Segment};
use crate::param::{canonical_baseline, ParamContext, ParamReport};
use crate::perm::parabolic::{is_min_coset_rep, longest_element, parabolic_subgroup};
use crate::perm::{GenSet, Permutation};
use crate::poly::HalfExpPoly;
use crate::reduce::{interval_realization, kl_multisegment};

/// A relation that failed for `(x, y, s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationFailure {
    pub relation: u8,
    pub x: Permutation,
    pub y: Permutation,
    pub s: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RelationsReport {
    pub n: usize,
    /// Checks performed for relations (1) through (5).
    pub checks: [usize; 5],
    pub failures: Vec<RelationFailure>,
}

impl RelationsReport {
    pub fn total_checks(&self) -> usize {
        self.checks.iter().sum()
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// All of `S_n` with lengths, Bruhat matrix and every `P_{x,y}` precomputed.
pub struct KlTable {
    pub perms: Vec<Permutation>,
    pub index: BTreeMap<Permutation, usize>,
    pub lengths: Vec<usize>,
    leq: Vec<bool>,
    polys: Vec<HalfExpPoly>,
}

impl KlTable {
    pub fn build(engine: &mut KLEngine) -> Self {
        let n = engine.rank();
        let perms = Permutation::all(n);
        let m = perms.len();
        let index = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let lengths = perms.iter().map(Permutation::length).collect();
        let mut leq = alloc::vec![false; m * m];
        let mut polys = alloc::vec![HalfExpPoly::zero(); m * m];
        for (i, x) in perms.iter().enumerate() {
            for (j, y) in perms.iter().enumerate() {
                leq[i * m + j] = x.leq(y);
                if leq[i * m + j] {
                    polys[i * m + j] = engine.p(x, y);
                }
            }
        }
        KlTable {
            perms,
            index,
            lengths,
            leq,
            polys,
        }
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.len() + j]
    }

    pub fn poly(&self, i: usize, j: usize) -> &HalfExpPoly {
        &self.polys[i * self.len() + j]
    }

    fn idx(&self, p: &Permutation) -> usize {
        self.index[p]
    }

    pub fn mu(&self, i: usize, j: usize) -> BigInt {
        let (li, lj) = (self.lengths[i], self.lengths[j]);
        if i == j || !self.leq(i, j) || (lj - li) % 2 == 0 {
            return BigInt::zero();
        }
        self.poly(i, j).coeff((lj - li - 1) as i64)
    }
}

/// Checks relations (1)–(5) for every applicable `(x, y, s)` in `S_n`. The
/// sum in (5) is taken over a filter of all of `S_n`, independently of the
/// interval walk the engine uses.
pub fn verify_relations(n: usize) -> RelationsReport {
    let mut engine = KLEngine::new(n);
    let table = KlTable::build(&mut engine);
    let m = table.len();
    let mut report = RelationsReport {
        n,
        ..RelationsReport::default()
    };
    let fail = |relation: u8, x: &Permutation, y: &Permutation, s: Option<usize>| {
        report_push(relation, x, y, s)
    };
    let mut failures = Vec::new();
    for i in 0..m {
        report.checks[0] += 1;
        if !table.poly(i, i).is_one() {
            failures.push(fail(1, &table.perms[i], &table.perms[i], None));
        }
    }
    for (xi, x) in table.perms.iter().enumerate() {
        for (yi, y) in table.perms.iter().enumerate() {
            if xi == yi || !table.leq(xi, yi) {
                continue;
            }
            let pxy = table.poly(xi, yi);
            for s in 1..n {
                let sx = table.idx(&x.left_mul_simple(s));
                let xs = table.idx(&x.right_mul_simple(s));
                let sy = table.idx(&y.left_mul_simple(s));
                let ys = table.idx(&y.right_mul_simple(s));
                let y_left = table.lengths[sy] < table.lengths[yi];
                let x_left = table.lengths[sx] < table.lengths[xi];
                if y_left && !x_left {
                    report.checks[1] += 1;
                    if table.poly(sx, yi) != pxy {
                        failures.push(fail(2, x, y, Some(s)));
                    }
                }
                if table.lengths[ys] < table.lengths[yi] && table.lengths[xs] > table.lengths[xi] {
                    report.checks[2] += 1;
                    if table.poly(xs, yi) != pxy {
                        failures.push(fail(3, x, y, Some(s)));
                    }
                }
                if y_left && x_left && !table.leq(xi, sy) {
                    report.checks[3] += 1;
                    if table.poly(sx, sy) != pxy {
                        failures.push(fail(4, x, y, Some(s)));
                    }
                }
                if y_left && x_left && table.leq(xi, sy) && xi != sy {
                    report.checks[4] += 1;
                    let mut rhs = table.poly(sx, sy) + &table.poly(xi, sy).shift(2);
                    for zi in 0..m {
                        if zi == sy || !table.leq(xi, zi) || !table.leq(zi, sy) {
                            continue;
                        }
                        let z = &table.perms[zi];
                        if table.lengths[table.idx(&z.left_mul_simple(s))] > table.lengths[zi] {
                            continue;
                        }
                        let mu = table.mu(zi, sy);
                        if mu.is_zero() {
                            continue;
                        }
                        let h = (table.lengths[yi] - table.lengths[zi]) as i64;
                        rhs = &rhs - &table.poly(xi, zi).scale(&mu).shift(h);
                    }
                    if rhs != *pxy {
                        failures.push(fail(5, x, y, Some(s)));
                    }
                }
            }
        }
    }
    report.failures = failures;
    report
}

fn report_push(relation: u8, x: &Permutation, y: &Permutation, s: Option<usize>) -> RelationFailure {
    RelationFailure {
        relation,
        x: x.clone(),
        y: y.clone(),
        s,
    }
}

/// Why `P_{x,y}` breaks the standard KL shape, if it does: integral
/// exponents, nonnegative coefficients, constant term 1 and degree at most
/// `(ℓ(y) − ℓ(x) − 1)/2` for `x < y`; zero iff `x ≰ y`.
pub fn kl_shape_violation(x: &Permutation, y: &Permutation, p: &HalfExpPoly) -> Option<&'static str> {
    if !x.leq(y) {
        return (!p.is_zero()).then_some("nonzero for x ≰ y");
    }
    if !p.is_integral() {
        return Some("half-integer or negative exponent");
    }
    if !p.has_nonnegative_coeffs() {
        return Some("negative coefficient");
    }
    if p.coeff(0) != BigInt::from(1) {
        return Some("constant term is not 1");
    }
    if x != y {
        let gap = (y.length() - x.length()) as i64;
        // degree d ≤ (gap − 1)/2  ⟺  2d ≤ gap − 1
        if p.max_half_exp().unwrap_or(0) > gap - 1 {
            return Some("degree bound exceeded");
        }
    }
    None
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub checks: usize,
    pub mismatches: Vec<String>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// For every `J` and valid pair: `parabolic_kl(v1, v2, J)` against
/// `P_{v1 w_J, v2 w_J}`, and `double_parabolic_kl(v1, v2, J, ∅)` against the
/// left-sided `P_{w_J v1, w_J v2}`.
pub fn verify_parabolic_consistency(n: usize) -> Result<ConsistencyReport> {
    let mut engine = KLEngine::new(n);
    let mut report = ConsistencyReport::default();
    let all = Permutation::all(n);
    let empty = GenSet::empty(n);
    for j in GenSet::all_subsets(n) {
        let wj = longest_element(&j);
        let right: Vec<&Permutation> = all.iter().filter(|w| is_min_coset_rep(w, &j)).collect();
        for v1 in &right {
            for v2 in &right {
                report.checks += 1;
                let via = engine.parabolic_kl(v1, v2, &j)?;
                let direct = engine.kl_poly(&v1.compose(&wj)?, &v2.compose(&wj)?)?;
                if via != direct {
                    report.mismatches.push(format!("parabolic J={{{j}}} v1={v1} v2={v2}"));
                }
            }
        }
        let left: Vec<&Permutation> = all
            .iter()
            .filter(|w| j.iter().all(|i| !w.has_left_descent(i)))
            .collect();
        for v1 in &left {
            for v2 in &left {
                if !v1.leq(v2) {
                    continue;
                }
                report.checks += 1;
                let double = engine.double_parabolic_kl(v1, v2, &j, &empty)?;
                let one_sided = engine.left_parabolic_kl(v1, v2, &j)?;
                if double != one_sided {
                    report.mismatches.push(format!("double J1={{{j}}} v1={v1} v2={v2}"));
                }
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamSuiteEntry {
    pub j1: GenSet,
    pub j2: GenSet,
    pub baseline: Multisegment,
    pub report: ParamReport,
    /// For one-sided contexts: `|S(baseline)| = n! / |S_J|`.
    pub one_sided_count_ok: bool,
}

/// Runs the order-translation check for every `(J1, J2)` at rank `n`.
pub fn verify_param(n: usize) -> Result<Vec<ParamSuiteEntry>> {
    let factorial: usize = (1..=n).product();
    let mut out = Vec::new();
    for j1 in GenSet::all_subsets(n) {
        for j2 in GenSet::all_subsets(n) {
            let ctx = canonical_baseline(n, &j1, &j2)?;
            let report = ctx.verify_order_translation()?;
            let one_sided_count_ok = if j1.is_empty() || j2.is_empty() {
                let j = if j1.is_empty() { j2 } else { j1 };
                report.poset_size * parabolic_subgroup(&j).len() == factorial
            } else {
                true
            };
            out.push(ParamSuiteEntry {
                j1,
                j2,
                baseline: ctx.baseline().clone(),
                report,
                one_sided_count_ok,
            });
        }
    }
    Ok(out)
}

/// `kl_via_param` on the symmetric baseline against `kl_poly` through `Φ`.
pub fn verify_symmetric_param_kl(n: usize) -> Result<ConsistencyReport> {
    let empty = GenSet::empty(n);
    let ctx = ParamContext::canonical(n, &empty, &empty)?;
    let mut engine = KLEngine::new(n);
    let mut report = ConsistencyReport::default();
    let all = Permutation::all(n);
    let images = all.iter().map(|w| ctx.phi(w)).collect::<Result<Vec<_>>>()?;
    for (x, ax) in all.iter().zip(&images) {
        for (y, ay) in all.iter().zip(&images) {
            if !x.leq(y) {
                continue;
            }
            report.checks += 1;
            // x ≤ y in Bruhat order means Φ(y) ≤ Φ(x).
            let via = ctx.kl_via_param(&mut engine, ay, ax)?;
            if via != engine.kl_poly(x, y)? {
                report.mismatches.push(format!("x={x} y={y}"));
            }
        }
    }
    Ok(report)
}

/// All multisegments with at most `max_segments` segments inside
/// `[lo, hi]`, one per translation class (the one starting at `lo`).
pub fn multisegment_corpus(max_segments: usize, lo: i64, hi: i64) -> Vec<Multisegment> {
    let segs: Vec<Segment> = (lo..=hi)
        .flat_map(|b| (b..=hi).map(move |e| Segment::new(b, e).expect("b ≤ e")))
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(segs: &[Segment], start: usize, left: usize, lo: i64, current: &mut Vec<Segment>, out: &mut Vec<Multisegment>) {
        if !current.is_empty() && current[0].begin() == lo {
            out.push(Multisegment::new(current.iter().copied()));
        }
        if left == 0 {
            return;
        }
        for k in start..segs.len() {
            current.push(segs[k]);
            rec(segs, k, left - 1, lo, current, out);
            current.pop();
        }
    }
    rec(&segs, 0, max_segments, lo, &mut current, &mut out);
    out.sort();
    out
}

/// Per-multisegment outcome of the realization suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationOutcome {
    pub input: Multisegment,
    pub chain_len: usize,
    pub size: usize,
    pub error: Option<String>,
    pub anchor_maps_to_minimum: bool,
    pub hypothesis_agrees: bool,
}

impl RealizationOutcome {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.anchor_maps_to_minimum && self.hypothesis_agrees
    }
}

pub fn check_realization(a: &Multisegment) -> RealizationOutcome {
    match interval_realization(a) {
        Ok(r) => RealizationOutcome {
            input: a.clone(),
            chain_len: r.witness.chain.len(),
            size: r.target.len(),
            error: None,
            anchor_maps_to_minimum: r.anchor_maps_to_minimum,
            hypothesis_agrees: r.hypothesis_agrees,
        },
        Err(e) => RealizationOutcome {
            input: a.clone(),
            chain_len: 0,
            size: 0,
            error: Some(e.to_string()),
            anchor_maps_to_minimum: false,
            hypothesis_agrees: false,
        },
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SummandReport {
    pub instances: usize,
    pub triples: usize,
    pub failures: Vec<String>,
}

impl SummandReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every valid `(w, v, k1)` in `S_n`: the triples carry `μ(z, sv)` and
/// `ℓ(v) − ℓ(z)` and close the rearranged relation with zero residual.
pub fn verify_summands(n: usize) -> Result<SummandReport> {
    let mut engine = KLEngine::new(n);
    let mut report = SummandReport::default();
    let all = Permutation::all(n);
    for v in &all {
        for k1 in 2..=n {
            let s = k1 - 1;
            if !v.has_left_descent(s) {
                continue;
            }
            let sv = v.left_mul_simple(s);
            for w in &all {
                if !w.has_left_descent(s) || !w.lt(v) || !w.lt(&sv) {
                    continue;
                }
                report.instances += 1;
                let triples = engine.decomposition_summands(w, v, k1)?;
                report.triples += triples.len();
                for t in &triples {
                    let ok = t.shift == v.length() - t.z.length()
                        && t.multiplicity == engine.mu(&t.z, &sv)?
                        && t.multiplicity > BigInt::zero()
                        && t.shift > 0
                        && w.leq(&t.z)
                        && t.z.lt(&sv)
                        && t.z.has_left_descent(s);
                    if !ok {
                        report.failures.push(format!("bad triple {t:?} for w={w} v={v} k1={k1}"));
                    }
                }
                if !engine.summand_residual(w, v, k1)?.is_zero() {
                    report.failures.push(format!("nonzero residual for w={w} v={v} k1={k1}"));
                }
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrassmannianEntry {
    pub n: usize,
    pub k: usize,
    pub size: usize,
    pub is_chain: bool,
    pub kl_pairs: usize,
    /// Pairs whose value is exactly 1.
    pub kl_ones: usize,
    /// Every value is a valid KL polynomial and equals the Gaussian binomial
    /// `[m − r_c, r_b − r_c]_q` with `m = min(k, n − k)`, where `r_x` counts
    /// the steps from `x` up to the top of the chain.
    pub kl_closed_form: bool,
}

impl GrassmannianEntry {
    pub fn passed(&self) -> bool {
        self.size == self.k.min(self.n - self.k) + 1 && self.is_chain && self.kl_closed_form
    }
}

/// The Gaussian binomial coefficient `[m, j]_q`.
pub fn gaussian_binomial(m: usize, j: usize) -> HalfExpPoly {
    if j > m {
        return HalfExpPoly::zero();
    }
    // Row-by-row Pascal rule: [m, j] = [m-1, j-1] + q^j [m-1, j].
    let mut row = alloc::vec![HalfExpPoly::one()];
    for i in 1..=m {
        let mut next = alloc::vec![HalfExpPoly::one(); i + 1];
        for t in 1..i {
            next[t] = &row[t - 1] + &row[t].shift(2 * t as i64);
        }
        row = next;
    }
    row[j].clone()
}

/// `S(k[0,1] + (n−k)[1,2])` for `1 ≤ k < n ≤ max_n`.
pub fn verify_grassmannian(max_n: usize) -> Result<Vec<GrassmannianEntry>> {
    let mut pool = KlPool::new();
    let mut out = Vec::new();
    for n in 2..=max_n {
        for k in 1..n {
            let a = Multisegment::new(
                core::iter::repeat_n(Segment::new(0, 1)?, k).chain(core::iter::repeat_n(Segment::new(1, 2)?, n - k)),
            );
            let poset = MsPoset::enumerate(&a)?;
            let m = k.min(n - k);
            let rank = |x: usize| poset.up_set(x).len() - 1;
            let mut entry = GrassmannianEntry {
                n,
                k,
                size: poset.len(),
                is_chain: poset.is_chain(),
                kl_pairs: 0,
                kl_ones: 0,
                kl_closed_form: true,
            };
            for i in 0..poset.len() {
                for j in 0..poset.len() {
                    if !poset.leq_idx(i, j) {
                        continue;
                    }
                    entry.kl_pairs += 1;
                    let v = kl_multisegment(&mut pool, &poset.elements()[i], &poset.elements()[j])?;
                    entry.kl_ones += usize::from(v.is_one());
                    let (rb, rc) = (rank(i), rank(j));
                    let shape_ok = v.is_integral()
                        && v.has_nonnegative_coeffs()
                        && v.coeff(0) == BigInt::from(1);
                    entry.kl_closed_form &= shape_ok && m >= rc && v == gaussian_binomial(m - rc, rb - rc);
                }
            }
            out.push(entry);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_hold_small() {
        for n in 1..=4 {
            let r = verify_relations(n);
            assert!(r.passed(), "{:?}", r.failures);
        }
    }

    #[test]
    fn corpus_has_one_rep_per_class() {
        let c = multisegment_corpus(2, 0, 2);
        assert!(c.iter().all(|m| m.segments()[0].begin() == 0));
        assert!(c.contains(&"[0,0]+[2,2]".parse().unwrap()));
        assert!(!c.contains(&"[1,1]".parse().unwrap()));
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(2, 1).to_string(), "1 + q");
        assert_eq!(gaussian_binomial(4, 2).to_string(), "1 + q + 2*q^2 + q^3 + q^4");
        assert!(gaussian_binomial(3, 0).is_one());
        assert!(gaussian_binomial(1, 2).is_zero());
    }

    #[test]
    fn grassmannian_small() {
        for e in verify_grassmannian(4).unwrap() {
            assert!(e.passed(), "{e:?}");
        }
    }
}
