//! Conjugacy of subgroups inside the full symmetric group.
//!
//! After cheap invariants agree, a generator `a` of `A` with the smallest
//! centralizer in `S_n` is fixed. Any conjugator `x` sends `a` to some
//! element `b` of `B` with the same cycle type, and the conjugators taking
//! `a` to `b` are exactly the cycle-matchings between them. Those are
//! enumerated by backtracking and the remaining generators are tested for
//! membership in `B`, which settles `A^x = B` because the orders agree.

use std::collections::BTreeMap;

use super::{Perm, PermGroup};
use crate::config::Config;
use crate::error::{check_limit, Error, Result};
use crate::par;

/// Multiset of cycle types over all elements.
pub fn cycle_type_histogram(elements: &[Perm]) -> BTreeMap<Vec<usize>, usize> {
    let mut h = BTreeMap::new();
    for g in elements {
        *h.entry(g.cycle_type()).or_insert(0) += 1;
    }
    h
}

fn centralizer_size(cycle_type: &[usize]) -> u128 {
    let mut counts = BTreeMap::new();
    for &l in cycle_type {
        *counts.entry(l).or_insert(0u32) += 1;
    }
    counts.iter().fold(1u128, |acc, (&l, &m)| {
        let fact: u128 = (1..=m as u128).product();
        acc * fact * (l as u128).pow(m)
    })
}

/// Calls `visit` on every `x` with `a^x = b` until it returns `Some`.
pub fn conjugators_between<R>(a: &Perm, b: &Perm, mut visit: impl FnMut(&Perm) -> Option<R>) -> Option<R> {
    let n = a.degree();
    let mut a_cycles = a.cycles();
    a_cycles.sort_by(|x, y| y.len().cmp(&x.len()).then(x.cmp(y)));
    let b_cycles = b.cycles();
    let mut used = vec![false; b_cycles.len()];
    let mut x = vec![u32::MAX; n];

    #[allow(clippy::too_many_arguments)]
    fn rec<R>(
        idx: usize,
        a_cycles: &[Vec<usize>],
        b_cycles: &[Vec<usize>],
        used: &mut [bool],
        x: &mut Vec<u32>,
        visit: &mut dyn FnMut(&Perm) -> Option<R>,
    ) -> Option<R> {
        if idx == a_cycles.len() {
            let p = Perm::from_images(x.clone()).expect("cycle matching is a bijection");
            return visit(&p);
        }
        let ac = &a_cycles[idx];
        for (bi, bc) in b_cycles.iter().enumerate() {
            if used[bi] || bc.len() != ac.len() {
                continue;
            }
            used[bi] = true;
            for rot in 0..bc.len() {
                for (k, &p) in ac.iter().enumerate() {
                    x[p] = bc[(k + rot) % bc.len()] as u32;
                }
                if let Some(r) = rec(idx + 1, a_cycles, b_cycles, used, x, visit) {
                    return Some(r);
                }
            }
            used[bi] = false;
        }
        None
    }

    if a.cycle_type() != b.cycle_type() {
        return None;
    }
    rec(0, &a_cycles, &b_cycles, &mut used, &mut x, &mut visit)
}

/// Some `x` in `S_n` with `A^x = B`, or `None`.
pub fn subgroup_conjugate(a: &PermGroup, b: &PermGroup, cfg: &Config) -> Result<Option<Perm>> {
    let n = a.degree();
    if b.degree() != n {
        return Err(Error::DegreeMismatch { expected: n, found: b.degree() });
    }
    check_limit("conjugacy degree", n as u64, cfg.limits.max_degree as u64)?;
    if a.order() != b.order() {
        return Ok(None);
    }
    if a.is_trivial() {
        return Ok(Some(Perm::identity(n)));
    }
    let limit = cfg.limits.exhaustive_order;
    let a_elems = a.elements_limited(limit)?;
    let b_elems = b.elements_limited(limit)?;
    if cycle_type_histogram(&a_elems) != cycle_type_histogram(&b_elems) {
        return Ok(None);
    }
    let mut a_orbits: Vec<usize> = a.orbits().iter().map(|o| o.len()).collect();
    let mut b_orbits: Vec<usize> = b.orbits().iter().map(|o| o.len()).collect();
    a_orbits.sort_unstable();
    b_orbits.sort_unstable();
    if a_orbits != b_orbits {
        return Ok(None);
    }

    let pivot =
        a.generators().iter().min_by_key(|g| (centralizer_size(&g.cycle_type()), (*g).clone())).unwrap().clone();
    let others: Vec<&Perm> = a.generators().iter().filter(|g| **g != pivot).collect();
    let pivot_type = pivot.cycle_type();
    let candidates: Vec<&Perm> = b_elems.iter().filter(|g| g.cycle_type() == pivot_type).collect();

    let found = par::find_map_first(cfg.mode, &candidates, |target| {
        conjugators_between(&pivot, target, |x| others.iter().all(|g| b.contains(&g.conj(x))).then(|| x.clone()))
    });
    Ok(found)
}

pub fn are_conjugate(a: &PermGroup, b: &PermGroup, cfg: &Config) -> Result<bool> {
    Ok(subgroup_conjugate(a, b, cfg)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(n: usize, cycles: &[&str]) -> PermGroup {
        PermGroup::new(n, cycles.iter().map(|c| Perm::parse_cycles(n, c).unwrap()).collect()).unwrap()
    }

    #[test]
    fn examples() {
        let cfg = Config::default();
        let a = group(4, &["(1 2 3)"]);
        let b = group(4, &["(2 3 4)"]);
        let x = subgroup_conjugate(&a, &b, &cfg).unwrap().unwrap();
        assert!(a.conjugate(&x).same_group(&b));
        assert_eq!(subgroup_conjugate(&group(4, &["(1 2)"]), &group(4, &["(1 2)(3 4)"]), &cfg).unwrap(), None);
        let v4 = group(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        assert_eq!(subgroup_conjugate(&v4, &group(4, &["(1 2)", "(3 4)"]), &cfg).unwrap(), None);
        assert!(subgroup_conjugate(&v4, &v4, &cfg).unwrap().is_some());
    }

    #[test]
    fn conjugator_count_is_centralizer_order() {
        let a = Perm::parse_cycles(6, "(1 2 3)(4 5)").unwrap();
        let b = Perm::parse_cycles(6, "(2 4 6)(1 3)").unwrap();
        let mut count = 0;
        conjugators_between(&a, &b, |x| {
            assert_eq!(a.conj(x), b);
            count += 1;
            None::<()>
        });
        assert_eq!(count as u128, centralizer_size(&a.cycle_type()));
        assert_eq!(count, 6);
    }

    #[test]
    fn limit() {
        let cfg = Config::default();
        let g = PermGroup::trivial(11);
        assert!(matches!(subgroup_conjugate(&g, &g, &cfg), Err(Error::LimitExceeded { .. })));
    }
}
