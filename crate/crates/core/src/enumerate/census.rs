//! Exact count of the groups of order `p^alpha q^beta r^gamma` in
//! `A_p A_q A_r`.
//!
//! Each such group is `P ⋊ H` with `P` the normal elementary abelian Sylow
//! `p`-subgroup, and likewise `H = Q ⋊ R`. So the groups arise as
//! semidirect products over every homomorphism `R -> GL(beta, q)` and then
//! every homomorphism `H -> GL(alpha, p)`. Homomorphisms conjugate in GL
//! give isomorphic products, so one per conjugacy orbit is built.

use std::collections::HashSet;

use serde::{Serialize, Serializer};

use crate::config::Config;
use crate::construct::semidirect_product;
use crate::error::{check_limit, Result};
use crate::groupmodel::{are_isomorphic, generating_set, CayleyGroup, Fingerprint, VarietyParams};
use crate::matgrp::{gl_elements, GlSpace, Mat};
use crate::par;

/// Order in which candidate images are tried.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Traversal {
    #[default]
    Forward,
    Reverse,
}

#[derive(Debug, Clone)]
pub struct VarietyCensus {
    pub params: VarietyParams,
    /// Pairwise non-isomorphic, sorted by fingerprint.
    pub groups: Vec<CayleyGroup>,
    /// Semidirect products built before deduplication.
    pub candidates: usize,
}

impl VarietyCensus {
    pub fn count(&self) -> usize {
        self.groups.len()
    }
}

/// Label of the `i`-th representative, used to name exported tables.
pub fn representative_id(i: usize) -> String {
    format!("G{}", i + 1)
}

#[derive(Serialize)]
struct RepresentativeRef {
    id: String,
    order: usize,
}

#[derive(Serialize)]
struct CensusFile<'a> {
    params: &'a VarietyParams,
    count: usize,
    candidates: usize,
    representatives: Vec<RepresentativeRef>,
    signatures: Vec<Fingerprint>,
}

impl Serialize for VarietyCensus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CensusFile {
            params: &self.params,
            count: self.count(),
            candidates: self.candidates,
            representatives: self
                .groups
                .iter()
                .enumerate()
                .map(|(i, g)| RepresentativeRef { id: representative_id(i), order: g.order() })
                .collect(),
            signatures: self.groups.iter().map(Fingerprint::of).collect(),
        }
        .serialize(s)
    }
}

/// Extends the partial map `phi` along right multiplication by the
/// assigned generators; fails on the first inconsistency.
fn extend(sp: &GlSpace, h: &CayleyGroup, gens: &[u32], images: &[Mat], phi: &mut [Option<Mat>]) -> bool {
    let mut queue: Vec<u32> = (0..h.order() as u32).filter(|&x| phi[x as usize].is_some()).collect();
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        let fx = phi[x as usize].clone().unwrap();
        for (&s, t) in gens.iter().zip(images) {
            let y = h.mul(x, s) as usize;
            let fy = sp.mul(&fx, t);
            match &phi[y] {
                None => {
                    phi[y] = Some(fy);
                    queue.push(y as u32);
                }
                Some(cur) if *cur != fy => return false,
                Some(_) => {}
            }
        }
        i += 1;
    }
    true
}

/// One homomorphism `H -> GL(dim, u)` per GL-conjugacy orbit, each given
/// as the image of every element of `H`.
pub fn homomorphism_orbits(h: &CayleyGroup, sp: &GlSpace, cfg: &Config, traversal: Traversal) -> Result<Vec<Vec<Mat>>> {
    let gl = gl_elements(sp, cfg)?;
    let gens = generating_set(h);
    let id = sp.identity();
    let candidates: Vec<Vec<Mat>> = gens
        .iter()
        .map(|&s| {
            let o = h.element_order(s);
            let mut c: Vec<Mat> = gl.iter().filter(|m| sp.pow_u64(m, o) == id).cloned().collect();
            if traversal == Traversal::Reverse {
                c.reverse();
            }
            c
        })
        .collect();
    let inverses: Vec<Mat> = gl.iter().map(|x| sp.inv(x).unwrap()).collect();

    let mut found: Vec<Vec<Mat>> = Vec::new();
    let mut seen: HashSet<Vec<Mat>> = HashSet::new();
    let mut phi = vec![None; h.order()];
    phi[h.identity() as usize] = Some(id);
    let mut images = Vec::with_capacity(gens.len());

    #[allow(clippy::too_many_arguments, clippy::type_complexity)]
    fn search(
        sp: &GlSpace,
        h: &CayleyGroup,
        gens: &[u32],
        candidates: &[Vec<Mat>],
        images: &mut Vec<Mat>,
        phi: &[Option<Mat>],
        out: &mut dyn FnMut(&[Mat], &[Option<Mat>]),
    ) {
        let k = images.len();
        if k == gens.len() {
            out(images, phi);
            return;
        }
        for t in &candidates[k] {
            images.push(t.clone());
            let mut next = phi.to_vec();
            if extend(sp, h, &gens[..=k], images, &mut next) {
                search(sp, h, gens, candidates, images, &next, out);
            }
            images.pop();
        }
    }

    let mut record = |imgs: &[Mat], phi: &[Option<Mat>]| {
        if seen.contains(imgs) {
            return;
        }
        for (x, xi) in gl.iter().zip(&inverses) {
            seen.insert(imgs.iter().map(|m| sp.conj(m, x, xi)).collect());
        }
        found.push(phi.iter().map(|m| m.clone().unwrap()).collect());
    };
    search(sp, h, &gens, &candidates, &mut images, &phi, &mut record);
    Ok(found)
}

/// All `F_u^dim ⋊ H`, one per GL-orbit of actions; `H` itself when `dim = 0`.
fn extensions(u: u64, dim: u32, h: &CayleyGroup, cfg: &Config, traversal: Traversal) -> Result<Vec<CayleyGroup>> {
    if dim == 0 {
        return Ok(vec![h.clone()]);
    }
    let sp = GlSpace::make(u as u32, 1, dim as usize)?;
    let actions = homomorphism_orbits(h, &sp, cfg, traversal)?;
    par::map(cfg.mode, &actions, |a| semidirect_product(u as u32, dim as usize, a, h, &cfg.limits))
        .into_iter()
        .collect()
}

/// Isomorphism classes among `groups`, first occurrence kept.
fn dedup(groups: Vec<CayleyGroup>, cfg: &Config) -> Vec<CayleyGroup> {
    let prints = par::map(cfg.mode, &groups, Fingerprint::of);
    let mut reps: Vec<(Fingerprint, CayleyGroup)> = Vec::new();
    for (g, f) in groups.into_iter().zip(prints) {
        if !reps.iter().any(|(rf, rg)| *rf == f && are_isomorphic(rg, &g)) {
            reps.push((f, g));
        }
    }
    reps.sort_by(|a, b| a.0.cmp(&b.0));
    reps.into_iter().map(|(_, g)| g).collect()
}

pub fn enumerate_variety_groups(params: &VarietyParams, cfg: &Config) -> Result<VarietyCensus> {
    enumerate_variety_groups_with(params, cfg, Traversal::Forward)
}

pub fn enumerate_variety_groups_with(
    params: &VarietyParams,
    cfg: &Config,
    traversal: Traversal,
) -> Result<VarietyCensus> {
    let n = params.n()?;
    check_limit("census order", n, cfg.limits.census_order)?;
    let VarietyParams { p, q, r, alpha, beta, gamma } = *params;
    let r_group = CayleyGroup::elementary_abelian(r as u32, gamma);
    let hs = dedup(extensions(q, beta, &r_group, cfg, traversal)?, cfg);
    let mut all = Vec::new();
    for h in &hs {
        all.extend(extensions(p, alpha, h, cfg, traversal)?);
    }
    let candidates = all.len();
    Ok(VarietyCensus { params: *params, groups: dedup(all, cfg), candidates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupmodel::in_variety;
    use crate::oracle::in_variety_bruteforce;

    fn count(p: [u64; 3], e: [u32; 3]) -> usize {
        let params = VarietyParams::new(p, e).unwrap();
        enumerate_variety_groups(&params, &Config::default()).unwrap().count()
    }

    #[test]
    fn census_examples() {
        assert_eq!(count([3, 2, 5], [1, 1, 0]), 2);
        assert_eq!(count([5, 2, 3], [0, 1, 1]), 1);
        assert_eq!(count([2, 3, 5], [2, 1, 0]), 2);
        assert_eq!(count([3, 2, 5], [1, 1, 1]), 2);
        assert_eq!(count([2, 3, 5], [2, 1, 1]), 2);
        assert_eq!(count([2, 3, 5], [0, 0, 0]), 1);
    }

    #[test]
    fn members_are_in_the_variety() {
        let cfg = Config::default();
        for (p, e) in [([2, 3, 5], [2, 1, 0]), ([3, 2, 5], [1, 2, 0]), ([2, 3, 7], [1, 1, 1])] {
            let params = VarietyParams::new(p, e).unwrap();
            let census = enumerate_variety_groups(&params, &cfg).unwrap();
            for g in &census.groups {
                assert_eq!(g.order() as u64, params.n().unwrap());
                assert!(in_variety(g, &params.chain(), 400).unwrap());
                if g.order() <= 24 {
                    assert!(in_variety_bruteforce(g, &params.chain()));
                }
            }
            for (i, a) in census.groups.iter().enumerate() {
                for b in &census.groups[i + 1..] {
                    assert!(!are_isomorphic(a, b));
                }
            }
            let rev = enumerate_variety_groups_with(&params, &cfg, Traversal::Reverse).unwrap();
            assert_eq!(rev.count(), census.count());
        }
    }

    #[test]
    fn hom_orbits() {
        let cfg = Config::default();
        let sp = GlSpace::make(2, 1, 2).unwrap();
        // C3 -> GL(2,2): trivial, or onto one of the conjugate order-3 subgroups
        // with two choices of generator image, which are GL-conjugate
        let homs = homomorphism_orbits(&CayleyGroup::cyclic(3), &sp, &cfg, Traversal::Forward).unwrap();
        assert_eq!(homs.len(), 2);
        let homs = homomorphism_orbits(&CayleyGroup::cyclic(2), &sp, &cfg, Traversal::Forward).unwrap();
        assert_eq!(homs.len(), 2);
    }
}
