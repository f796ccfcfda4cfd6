use std::collections::BTreeMap;

use serde::Serialize;

use super::CayleyGroup;

/// Isomorphism invariants. Unequal fingerprints rule out isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    pub order_histogram: BTreeMap<u64, usize>,
    pub center: usize,
    pub derived: usize,
    pub exponent: u64,
    /// Element-order histogram of `G/G'`, which pins down the abelianization.
    pub abelianization: BTreeMap<u64, usize>,
}

impl Fingerprint {
    pub fn of(g: &CayleyGroup) -> Self {
        let derived = g.derived_subgroup();
        let ab = g.quotient(&derived).expect("derived subgroup is normal");
        Fingerprint {
            order: g.order(),
            order_histogram: g.order_histogram(),
            center: g.center().order(),
            derived: derived.order(),
            exponent: g.exponent(),
            abelianization: ab.order_histogram(),
        }
    }
}

/// Greedy generating set: repeatedly add the element that enlarges the
/// generated subgroup the most.
pub(crate) fn generating_set(g: &CayleyGroup) -> Vec<u32> {
    let mut gens = Vec::new();
    let mut current = g.trivial_subgroup();
    while current.order() < g.order() {
        let best = (0..g.order() as u32)
            .filter(|&x| !current.contains(x))
            .max_by_key(|&x| {
                let mut trial = gens.clone();
                trial.push(x);
                (g.generate(&trial).order(), std::cmp::Reverse(x))
            })
            .unwrap();
        gens.push(best);
        current = g.generate(&gens);
    }
    gens
}

/// Extends `phi` from `<gens[..k]>` to `<gens[..=k]>` given the image of
/// `gens[k]`; fails on any inconsistency or collision.
fn extend(g: &CayleyGroup, h: &CayleyGroup, gens: &[u32], images: &[u32], phi: &mut [u32], used: &mut [bool]) -> bool {
    let mut queue: Vec<u32> = (0..g.order() as u32).filter(|&x| phi[x as usize] != u32::MAX).collect();
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        let fx = phi[x as usize];
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let fy = h.mul(fx, t);
            let cur = phi[y as usize];
            if cur == u32::MAX {
                if used[fy as usize] {
                    return false;
                }
                phi[y as usize] = fy;
                used[fy as usize] = true;
                queue.push(y);
            } else if cur != fy {
                return false;
            }
        }
        i += 1;
    }
    true
}

/// An isomorphism `G -> H` as an image table, if one exists.
pub fn find_isomorphism(g: &CayleyGroup, h: &CayleyGroup) -> Option<Vec<u32>> {
    if g.order() != h.order() || Fingerprint::of(g) != Fingerprint::of(h) {
        return None;
    }
    let gens = generating_set(g);
    let h_orders = h.element_orders();
    let candidates: Vec<Vec<u32>> = gens
        .iter()
        .map(|&s| {
            let o = g.element_order(s);
            (0..h.order() as u32).filter(|&y| h_orders[y as usize] == o).collect()
        })
        .collect();

    let mut phi = vec![u32::MAX; g.order()];
    let mut used = vec![false; h.order()];
    phi[g.identity() as usize] = h.identity();
    used[h.identity() as usize] = true;
    let mut images = Vec::with_capacity(gens.len());

    fn search(
        g: &CayleyGroup,
        h: &CayleyGroup,
        gens: &[u32],
        candidates: &[Vec<u32>],
        images: &mut Vec<u32>,
        phi: &[u32],
        used: &[bool],
    ) -> Option<Vec<u32>> {
        let k = images.len();
        if k == gens.len() {
            return phi.iter().all(|&x| x != u32::MAX).then(|| phi.to_vec());
        }
        for &y in &candidates[k] {
            images.push(y);
            let mut phi2 = phi.to_vec();
            let mut used2 = used.to_vec();
            if extend(g, h, &gens[..=k], images, &mut phi2, &mut used2) {
                if let Some(found) = search(g, h, gens, candidates, images, &phi2, &used2) {
                    return Some(found);
                }
            }
            images.pop();
        }
        None
    }

    search(g, h, &gens, &candidates, &mut images, &phi, &used)
}

pub fn are_isomorphic(g: &CayleyGroup, h: &CayleyGroup) -> bool {
    find_isomorphism(g, h).is_some()
}
