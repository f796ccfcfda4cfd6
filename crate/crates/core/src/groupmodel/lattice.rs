//! Subgroup lattices of small tables, for the oracles.

use std::collections::HashSet;

use super::{CayleyGroup, Subgroup};
use crate::error::{check_limit, Result};

/// Every subgroup, sorted by order then elements. Each subgroup is a join
/// of cyclic subgroups, so closing the trivial group under "join with one
/// more element" reaches all of them.
pub fn all_subgroups(g: &CayleyGroup, limit: u64) -> Result<Vec<Subgroup>> {
    check_limit("table order", g.order() as u64, limit)?;
    let mut seen: HashSet<Subgroup> = HashSet::new();
    let trivial = g.trivial_subgroup();
    seen.insert(trivial.clone());
    let mut frontier = vec![(trivial, Vec::<u32>::new())];
    while let Some((h, gens)) = frontier.pop() {
        for x in 0..g.order() as u32 {
            if h.contains(x) {
                continue;
            }
            let mut gens2 = gens.clone();
            gens2.push(x);
            let j = g.generate(&gens2);
            if seen.insert(j.clone()) {
                frontier.push((j, gens2));
            }
        }
    }
    let mut out: Vec<Subgroup> = seen.into_iter().collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Every normal subgroup: joins of normal closures of single elements.
pub fn normal_subgroups(g: &CayleyGroup, limit: u64) -> Result<Vec<Subgroup>> {
    check_limit("table order", g.order() as u64, limit)?;
    let mut atoms: Vec<Subgroup> = Vec::new();
    for x in 0..g.order() as u32 {
        let n = g.normal_closure(&[x]);
        if !atoms.contains(&n) {
            atoms.push(n);
        }
    }
    let mut seen: HashSet<Subgroup> = atoms.iter().cloned().collect();
    let mut frontier: Vec<Subgroup> = atoms.clone();
    while let Some(n) = frontier.pop() {
        for a in &atoms {
            if a.is_subgroup_of(&n) {
                continue;
            }
            let mut gens = n.elements().to_vec();
            gens.extend_from_slice(a.elements());
            let j = g.generate(&gens);
            if seen.insert(j.clone()) {
                frontier.push(j);
            }
        }
    }
    let mut out: Vec<Subgroup> = seen.into_iter().collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupmodel::tests::{a4, s3};

    #[test]
    fn counts() {
        assert_eq!(all_subgroups(&s3(), 400).unwrap().len(), 6);
        assert_eq!(all_subgroups(&a4(), 400).unwrap().len(), 10);
        assert_eq!(all_subgroups(&CayleyGroup::cyclic(12), 400).unwrap().len(), 6);
        assert_eq!(normal_subgroups(&a4(), 400).unwrap().len(), 3);
        assert_eq!(normal_subgroups(&s3(), 400).unwrap().len(), 3);
        let c2 = CayleyGroup::cyclic(2);
        assert_eq!(normal_subgroups(&c2.direct_product(&c2), 400).unwrap().len(), 5);
    }
}
