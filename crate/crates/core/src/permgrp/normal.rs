//! Normal structure from explicit element lists.

use std::collections::HashSet;

use super::{Perm, PermGroup};
use crate::config::Config;
use crate::error::Result;
use crate::gf::{is_prime, prime_divisors, valuation};

/// Smallest normal subgroup of `g` containing `gens`.
pub fn normal_closure(g: &PermGroup, gens: &[Perm]) -> PermGroup {
    let mut n = PermGroup::new(g.degree(), gens.to_vec()).unwrap();
    loop {
        let extra: Vec<Perm> = n
            .generators()
            .iter()
            .flat_map(|h| g.generators().iter().map(move |x| h.conj(x)))
            .filter(|c| !n.contains(c))
            .collect();
        if extra.is_empty() {
            return n;
        }
        n = n.join(&extra).unwrap();
    }
}

/// Conjugacy class representatives (least element of each class), in
/// increasing order, restricted to elements satisfying `keep`.
pub fn class_representatives(g: &PermGroup, elements: &[Perm], keep: impl Fn(&Perm) -> bool) -> Vec<Perm> {
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut reps = Vec::new();
    for x in elements {
        if seen.contains(x) || !keep(x) {
            continue;
        }
        reps.push(x.clone());
        let mut stack = vec![x.clone()];
        seen.insert(x.clone());
        while let Some(y) = stack.pop() {
            for s in g.generators() {
                let z = y.conj(s);
                if seen.insert(z.clone()) {
                    stack.push(z);
                }
            }
        }
    }
    reps
}

fn canonical_sort(groups: &mut [PermGroup]) {
    groups.sort_by(|a, b| a.order().cmp(b.order()).then_with(|| a.generators().cmp(b.generators())));
}

/// Normal closures of single elements selected by `keep`, deduplicated.
fn element_closures(g: &PermGroup, cfg: &Config, keep: impl Fn(&Perm) -> bool) -> Result<Vec<PermGroup>> {
    let elements = g.elements_limited(cfg.limits.exhaustive_order)?;
    let mut out: Vec<PermGroup> = Vec::new();
    for x in class_representatives(g, &elements, keep) {
        let n = normal_closure(g, &[x]);
        if !out.iter().any(|m| m.same_group(&n)) {
            out.push(n);
        }
    }
    Ok(out)
}

/// All minimal normal subgroups. Each one is the normal closure of any of
/// its prime-order elements, so the minimal members among such closures
/// are exactly the answer.
pub fn minimal_normal_subgroups(g: &PermGroup, cfg: &Config) -> Result<Vec<PermGroup>> {
    let closures = element_closures(g, cfg, |x| is_prime(x.order()))?;
    let mut minimal: Vec<PermGroup> = closures
        .iter()
        .filter(|n| !closures.iter().any(|m| m.order() < n.order() && m.is_subgroup_of(n)))
        .cloned()
        .collect();
    canonical_sort(&mut minimal);
    Ok(minimal)
}

fn is_power_of(n: u64, p: u64) -> bool {
    n == p.pow(valuation(n, p))
}

/// Largest normal `u`-subgroup.
pub fn o_prime(g: &PermGroup, u: u64, cfg: &Config) -> Result<PermGroup> {
    let closures = element_closures(g, cfg, |x| x.order() > 1 && is_power_of(x.order(), u))?;
    let gens: Vec<Perm> = closures
        .iter()
        .filter(|n| is_power_of(n.order_u64(), u))
        .flat_map(|n| n.generators().iter().cloned())
        .collect();
    PermGroup::new(g.degree(), gens)
}

/// Largest nilpotent normal subgroup: the product of the `O_u` over the
/// primes dividing the order.
pub fn fitting_subgroup(g: &PermGroup, cfg: &Config) -> Result<PermGroup> {
    let mut gens = Vec::new();
    for u in prime_divisors(g.order_u64()) {
        gens.extend(o_prime(g, u, cfg)?.generators().iter().cloned());
    }
    PermGroup::new(g.degree(), gens)
}

/// Largest normal subgroup of order coprime to `u`.
pub fn o_coprime(g: &PermGroup, u: u64, cfg: &Config) -> Result<PermGroup> {
    let elements = g.elements_limited(cfg.limits.exhaustive_order)?;
    let mut acc = PermGroup::trivial(g.degree());
    for x in &elements {
        if x.order() % u == 0 || acc.contains(x) {
            continue;
        }
        let mut gens = acc.generators().to_vec();
        gens.push(x.clone());
        let candidate = normal_closure(g, &gens);
        if !candidate.order_u64().is_multiple_of(u) {
            acc = candidate;
        }
    }
    Ok(acc)
}

/// A Sylow `u`-subgroup, grown one factor of `u` at a time inside
/// normalizers, scanning elements in sorted order.
pub fn sylow_subgroup(g: &PermGroup, u: u64, cfg: &Config) -> Result<PermGroup> {
    let elements = g.elements_limited(cfg.limits.exhaustive_order)?;
    let target = u.pow(valuation(g.order_u64(), u));
    let mut p = PermGroup::trivial(g.degree());
    while p.order_u64() < target {
        let x = elements
            .iter()
            .find(|x| !p.contains(x) && p.contains(&x.pow(u as i64)) && p.is_normalized_by(x))
            .expect("a p-subgroup below Sylow order has a normalizing p-element outside it")
            .clone();
        p = p.join(&[x])?;
    }
    Ok(p)
}

/// Normalizer of `h` in `g` by element scan.
pub fn normalizer(g: &PermGroup, h: &PermGroup, cfg: &Config) -> Result<PermGroup> {
    let elements = g.elements_limited(cfg.limits.exhaustive_order)?;
    let mut n = h.clone();
    for x in &elements {
        if !n.contains(x) && h.is_normalized_by(x) {
            n = n.join(std::slice::from_ref(x))?;
        }
    }
    Ok(n)
}

/// Smallest normal subgroup of `h` whose quotient is abelian of exponent
/// dividing `u`: the normal closure of generator commutators and `u`-th powers.
pub fn verbal_subgroup(h: &PermGroup, u: u64) -> PermGroup {
    let gens = h.generators();
    let mut words: Vec<Perm> = gens.iter().map(|a| a.pow(u as i64)).collect();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            words.push(a.inv().mul(&b.inv()).mul(a).mul(b));
        }
    }
    normal_closure(h, &words)
}

/// Membership in `A_{chain[0]} ... A_{chain[k-1]}` by peeling verbal
/// subgroups, outermost prime last.
pub fn in_variety(g: &PermGroup, chain: &[u64]) -> Result<bool> {
    let (&bottom, upper) =
        chain.split_first().ok_or_else(|| crate::Error::InvalidParams("empty variety chain".into()))?;
    let mut current = g.clone();
    for &u in upper.iter().rev() {
        current = verbal_subgroup(&current, u);
    }
    Ok(current.is_abelian() && current.generators().iter().all(|x| x.pow(bottom as i64).is_identity()))
}

/// Nilpotent iff every Sylow subgroup is normal.
pub fn is_nilpotent(g: &PermGroup, cfg: &Config) -> Result<bool> {
    for u in prime_divisors(g.order_u64()) {
        if !sylow_subgroup(g, u, cfg)?.is_normal_in(g) {
            return Ok(false);
        }
    }
    Ok(true)
}
