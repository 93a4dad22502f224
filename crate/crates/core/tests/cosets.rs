use std::collections::BTreeSet;

use klms_core::perm::parabolic::*;
use klms_core::{GenSet, Permutation};

fn mul(a: &Permutation, b: &Permutation) -> Permutation {
    a.compose(b).unwrap()
}

#[test]
fn right_cosets_factor_uniquely_with_additive_length() {
    for n in 1..=5 {
        let total = Permutation::all(n).len();
        for j in GenSet::all_subsets(n) {
            let wj = parabolic_subgroup(&j);
            let reps = min_coset_reps(&j);
            assert_eq!(reps.len() * wj.len(), total);
            let mut seen = BTreeSet::new();
            for u in &reps {
                for x in &wj {
                    let w = mul(u, x);
                    assert_eq!(w.length(), u.length() + x.length());
                    assert!(seen.insert(w));
                }
            }
            assert_eq!(seen.len(), total);
            let w0 = longest_element(&j);
            assert!(wj.iter().all(|x| x.length() <= w0.length()));
            assert_eq!(w0.length(), wj.iter().map(Permutation::length).max().unwrap());
        }
    }
}

#[test]
fn double_coset_reps_are_the_shortest_elements() {
    let n = 4;
    for j1 in GenSet::all_subsets(n) {
        for j2 in GenSet::all_subsets(n) {
            let reps = min_double_coset_reps(&j1, &j2);
            let mut covered = BTreeSet::new();
            for v in &reps {
                let coset = double_coset(v, &j1, &j2);
                let shortest: Vec<_> =
                    coset.iter().filter(|w| w.length() == v.length()).collect();
                assert_eq!(shortest, vec![v]);
                assert!(coset.iter().all(|w| w.length() >= v.length()));
                for s1 in j1.iter() {
                    assert!(v.left_mul_simple(s1).length() > v.length());
                    for s2 in j2.iter() {
                        let t = v.left_mul_simple(s1).right_mul_simple(s2);
                        assert!(v.bruhat_leq(&t).unwrap());
                    }
                }
                for s2 in j2.iter() {
                    assert!(v.right_mul_simple(s2).length() > v.length());
                }
                for w in &coset {
                    assert_eq!(&min_double_coset_rep_of(w, &j1, &j2).unwrap(), v);
                }
                let top = max_double_coset_element(v, &j1, &j2).unwrap();
                assert_eq!(top.length(), coset.iter().map(Permutation::length).max().unwrap());
                assert!(covered.insert(v.clone()));
                covered.extend(coset);
            }
            assert_eq!(covered.len(), Permutation::all(n).len());
        }
    }
}

#[test]
fn relative_reps_give_length_additive_bijection() {
    let n = 4;
    for j1 in GenSet::all_subsets(n) {
        for j2 in GenSet::all_subsets(n) {
            let w1: BTreeSet<_> = parabolic_subgroup(&j1).into_iter().collect();
            for v in min_double_coset_reps(&j1, &j2) {
                let vinv = v.inverse();
                let conj: BTreeSet<_> = parabolic_subgroup(&j2)
                    .iter()
                    .map(|y| mul(&mul(&v, y), &vinv))
                    .collect();
                let k = conjugate_intersection(&v, &j1, &j2);
                let sk: BTreeSet<_> = parabolic_subgroup(&k).into_iter().collect();
                assert_eq!(sk, &w1 & &conj, "K for v={v}");

                let xs = relative_reps(&v, &j1, &j2).unwrap();
                let mut seen = BTreeSet::new();
                for x in &xs {
                    for y in parabolic_subgroup(&j2) {
                        let w = mul(&mul(x, &v), &y);
                        assert_eq!(w.length(), x.length() + v.length() + y.length());
                        assert!(seen.insert(w));
                    }
                }
                let coset: BTreeSet<_> = double_coset(&v, &j1, &j2).into_iter().collect();
                assert_eq!(seen, coset);
            }
        }
    }
}

#[test]
fn ladder_partitions_for_every_nonempty_j() {
    for n in 2..=5 {
        for j in GenSet::all_subsets(n).filter(|j| !j.is_empty()) {
            let ladder = coset_ladder(&j).unwrap();
            assert!(ladder.verify_partition(), "J={j}");
            assert_eq!(ladder.reps.len(), ladder.i1 - ladder.i0 + 1);
        }
    }
    assert!(coset_ladder(&GenSet::empty(3)).is_err());
}

#[test]
fn non_rep_inputs_are_rejected() {
    let j = GenSet::parse(3, "1").unwrap();
    let v = Permutation::parse(3, "213").unwrap();
    assert!(relative_reps(&v, &j, &GenSet::empty(3)).is_err());
    assert!(max_double_coset_element(&v, &j, &GenSet::empty(3)).is_err());
}
