//! Brute-force oracles. Nothing here calls the stabilizer-chain,
//! block-closure or verbal-subgroup code it is used to check.

use std::collections::{HashSet, VecDeque};

use crate::groupmodel::{normal_subgroups, CayleyGroup};
use crate::permgrp::Perm;

/// All elements of `<gens>` by breadth-first closure under right
/// multiplication, sorted.
pub fn closure(degree: usize, gens: &[Perm]) -> Vec<Perm> {
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<Perm> = seen.into_iter().collect();
    out.sort();
    out
}

pub fn closure_size(degree: usize, gens: &[Perm]) -> usize {
    closure(degree, gens).len()
}

/// Every element of `S_n` in lexicographic image order.
pub fn all_permutations(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = (0..n as u32).collect();
    loop {
        out.push(Perm::from_images(cur.clone()).unwrap());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Set partitions of `0..n` as block labels (restricted growth strings).
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            cur.push(b);
            rec(i + 1, n, max.max(b), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return vec![vec![]];
    }
    let mut cur = vec![0];
    rec(1, n, 0, &mut cur, &mut out);
    out
}

/// Nontrivial block systems of `<gens>` by testing every set partition.
pub fn block_systems(degree: usize, gens: &[Perm]) -> Vec<Vec<usize>> {
    set_partitions(degree)
        .into_iter()
        .filter(|labels| {
            let blocks = labels.iter().max().map_or(0, |m| m + 1);
            if blocks <= 1 || blocks == degree {
                return false;
            }
            gens.iter().all(|g| {
                // images of same-block points must share a block
                let mut image_label = vec![usize::MAX; blocks];
                (0..degree).all(|p| {
                    let b = labels[p];
                    let ib = labels[g.image(p)];
                    if image_label[b] == usize::MAX {
                        image_label[b] = ib;
                        true
                    } else {
                        image_label[b] == ib
                    }
                })
            })
        })
        .collect()
}

/// Transitive and without nontrivial block systems, by partition scan.
pub fn is_primitive_bruteforce(degree: usize, gens: &[Perm]) -> bool {
    let elems = closure(degree, gens);
    let orbit: HashSet<usize> = elems.iter().map(|g| g.image(0)).collect();
    orbit.len() == degree && block_systems(degree, gens).is_empty()
}

/// A conjugator found by scanning all of `S_n`.
pub fn conjugate_bruteforce(degree: usize, a_gens: &[Perm], b_elems: &HashSet<Perm>, a_order: usize) -> Option<Perm> {
    if a_order != b_elems.len() {
        return None;
    }
    all_permutations(degree).into_iter().find(|x| a_gens.iter().all(|g| b_elems.contains(&g.conj(x))))
}

/// Variety membership straight from the definition: some normal subgroup
/// `N` is abelian of exponent dividing `chain[0]` and `G/N` lies in the
/// variety of the remaining chain.
pub fn in_variety_bruteforce(g: &CayleyGroup, chain: &[u64]) -> bool {
    let Some((&u, rest)) = chain.split_first() else {
        return g.order() == 1;
    };
    let abelian_of_exp = |h: &CayleyGroup| {
        let n = h.order() as u32;
        (0..n).all(|a| (0..n).all(|b| h.mul(a, b) == h.mul(b, a))) && (0..n).all(|a| h.pow(a, u) == h.identity())
    };
    if rest.is_empty() {
        return abelian_of_exp(g);
    }
    normal_subgroups(g, u64::MAX)
        .unwrap()
        .iter()
        .any(|n| abelian_of_exp(&g.subgroup_table(n)) && in_variety_bruteforce(&g.quotient(n).unwrap(), rest))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn definitional_variety_test() {
        let c6 = CayleyGroup::cyclic(6);
        assert!(in_variety_bruteforce(&c6, &[2, 3]));
        assert!(in_variety_bruteforce(&c6, &[3, 2]));
        assert!(!in_variety_bruteforce(&CayleyGroup::cyclic(4), &[2]));
        assert!(in_variety_bruteforce(&CayleyGroup::cyclic(4), &[2, 2]));
        let s3 = CayleyGroup::from_perm_group(&crate::permgrp::PermGroup::symmetric(3), 400).unwrap();
        assert!(in_variety_bruteforce(&s3, &[3, 2]));
        assert!(!in_variety_bruteforce(&s3, &[2, 3]));
    }

    #[test]
    fn counts() {
        assert_eq!(all_permutations(5).len(), 120);
        let bell: Vec<usize> = (0..8).map(|n| set_partitions(n).len()).collect();
        assert_eq!(bell, vec![1, 1, 2, 5, 15, 52, 203, 877]);
        let c4 = Perm::parse_cycles(4, "(1 2 3 4)").unwrap();
        assert_eq!(block_systems(4, &[c4]), vec![vec![0, 1, 0, 1]]);
    }
}
