use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Perm;
use crate::error::{check_limit, Error, Result};

/// One level of the stabilizer chain.
#[derive(Debug, Clone)]
struct Level {
    base: usize,
    /// Strong generators fixing every earlier base point.
    gens: Vec<Perm>,
    orbit: Vec<usize>,
    /// `transversal[u]` maps the base point to `u`.
    transversal: Vec<Option<Perm>>,
}

impl Level {
    fn new(degree: usize, base: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Perm::identity(degree));
        Level { base, gens: Vec::new(), orbit: vec![base], transversal }
    }

    fn rebuild_orbit(&mut self) {
        let degree = self.transversal.len();
        self.transversal = vec![None; degree];
        self.transversal[self.base] = Some(Perm::identity(degree));
        self.orbit = vec![self.base];
        let mut i = 0;
        while i < self.orbit.len() {
            let u = self.orbit[i];
            for s in &self.gens {
                let v = s.image(u);
                if self.transversal[v].is_none() {
                    let t = self.transversal[u].as_ref().unwrap().mul(s);
                    self.transversal[v] = Some(t);
                    self.orbit.push(v);
                }
            }
            i += 1;
        }
    }
}

/// A permutation group with a base and strong generating set.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    chain: Vec<Level>,
    order: BigUint,
}

/// Sift `g` through `chain[from..]`; returns the residue and the index of
/// the level where sifting stopped (`chain.len()` when it went through).
fn strip(chain: &[Level], from: usize, mut g: Perm) -> (Perm, usize) {
    for (j, level) in chain.iter().enumerate().skip(from) {
        let u = g.image(level.base);
        match &level.transversal[u] {
            Some(t) => g = g.mul(&t.inv()),
            None => return (g, j),
        }
    }
    (g, chain.len())
}

fn schreier_sims(degree: usize, gens: &[Perm], base_prefix: &[usize]) -> Vec<Level> {
    let mut chain: Vec<Level> = base_prefix.iter().map(|&b| Level::new(degree, b)).collect();
    for g in gens {
        if chain.iter().all(|l| g.image(l.base) == l.base) {
            chain.push(Level::new(degree, g.first_moved().unwrap()));
        }
    }
    for g in gens {
        for level in chain.iter_mut() {
            level.gens.push(g.clone());
            if g.image(level.base) != level.base {
                break;
            }
        }
    }
    for level in chain.iter_mut() {
        level.rebuild_orbit();
    }

    let mut i = chain.len() as isize - 1;
    'outer: while i >= 0 {
        let iu = i as usize;
        let orbit = chain[iu].orbit.clone();
        let level_gens = chain[iu].gens.clone();
        for &u in &orbit {
            let tu = chain[iu].transversal[u].clone().unwrap();
            for s in &level_gens {
                let v = s.image(u);
                let tv_inv = chain[iu].transversal[v].as_ref().unwrap().inv();
                let schreier = tu.mul(s).mul(&tv_inv);
                let (h, j) = strip(&chain, iu + 1, schreier);
                if j < chain.len() || !h.is_identity() {
                    if j == chain.len() {
                        chain.push(Level::new(degree, h.first_moved().unwrap()));
                    }
                    for level in chain.iter_mut().take(j + 1).skip(iu + 1) {
                        level.gens.push(h.clone());
                        level.rebuild_orbit();
                    }
                    i = j as isize;
                    continue 'outer;
                }
            }
        }
        i -= 1;
    }
    chain
}

impl PermGroup {
    /// Stabilizer chain for `<generators>` on `degree` points.
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        Self::with_base(degree, generators, &[])
    }

    /// As [`PermGroup::new`], with the chain starting at the given points.
    pub fn with_base(degree: usize, generators: Vec<Perm>, base_prefix: &[usize]) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
            }
        }
        if let Some(&b) = base_prefix.iter().find(|&&b| b >= degree) {
            return Err(Error::DegreeMismatch { expected: degree, found: b + 1 });
        }
        let mut gens: Vec<Perm> = generators.into_iter().filter(|g| !g.is_identity()).collect();
        gens.sort();
        gens.dedup();
        let chain = schreier_sims(degree, &gens, base_prefix);
        let order = chain.iter().fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()));
        Ok(PermGroup { degree, generators: gens, chain, order })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).unwrap()
    }

    /// The full symmetric group, from a transposition and an n-cycle.
    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Perm::from_cycles(degree, &[vec![1, 2]]).unwrap());
            gens.push(Perm::from_cycles(degree, &[(1..=degree as u32).collect()]).unwrap());
        }
        PermGroup::new(degree, gens).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Canonically sorted, identity-free generators.
    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Order as `u64`; every group this crate builds fits.
    pub fn order_u64(&self) -> u64 {
        self.order.to_u64().expect("group order fits u64")
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.iter().map(|l| l.base).collect()
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.chain.iter().map(|l| l.orbit.len()).collect()
    }

    /// Strong generators at the given level: all of them fix the earlier
    /// base points.
    pub fn strong_generators(&self, level: usize) -> &[Perm] {
        &self.chain[level].gens
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, j) = strip(&self.chain, 0, g.clone());
        j == self.chain.len() && h.is_identity()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    /// `self <= other`.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order == other.order && self.is_subgroup_of(other)
    }

    /// All elements, sorted, when the order is within `limit`.
    pub fn elements_limited(&self, limit: u64) -> Result<Vec<Perm>> {
        let order = self.order.to_u64().unwrap_or(u64::MAX);
        check_limit("group order", order, limit)?;
        let mut out = Vec::with_capacity(order as usize);
        let mut stack = vec![(0usize, Perm::identity(self.degree))];
        // g = u_{d-1} ... u_1 u_0 with u_i from level i.
        while let Some((lvl, prefix)) = stack.pop() {
            if lvl == self.chain.len() {
                out.push(prefix);
                continue;
            }
            let level = &self.chain[self.chain.len() - 1 - lvl];
            for &u in &level.orbit {
                stack.push((lvl + 1, prefix.mul(level.transversal[u].as_ref().unwrap())));
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn elements(&self) -> Result<Vec<Perm>> {
        self.elements_limited(crate::config::Limits::default().exhaustive_order)
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut queue = VecDeque::from([point]);
        while let Some(u) = queue.pop_front() {
            for g in &self.generators {
                let v = g.image(u);
                if !seen[v] {
                    seen[v] = true;
                    orbit.push(v);
                    queue.push_back(v);
                }
            }
        }
        orbit.sort_unstable();
        orbit
    }

    /// Orbits as sorted point lists, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if !seen[p] {
                let o = self.orbit(p);
                for &q in &o {
                    seen[q] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    pub fn point_stabilizer(&self, point: usize) -> Result<PermGroup> {
        if point >= self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: point + 1 });
        }
        let rebased = PermGroup::with_base(self.degree, self.generators.clone(), &[point])?;
        let gens = if rebased.chain.len() > 1 { rebased.chain[1].gens.clone() } else { Vec::new() };
        PermGroup::new(self.degree, gens)
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter().enumerate().all(|(i, a)| g[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }

    /// `<self, extra>`.
    pub fn join(&self, extra: &[Perm]) -> Result<PermGroup> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        PermGroup::new(self.degree, gens)
    }

    /// `x^-1 G x`.
    pub fn conjugate(&self, x: &Perm) -> PermGroup {
        PermGroup::new(self.degree, self.generators.iter().map(|g| g.conj(x)).collect()).unwrap()
    }

    /// `G` normalizes `self`: every conjugate of a generator stays inside.
    pub fn is_normalized_by(&self, g: &Perm) -> bool {
        self.generators.iter().all(|h| self.contains(&h.conj(g)))
    }

    pub fn is_normal_in(&self, g: &PermGroup) -> bool {
        self.is_subgroup_of(g) && g.generators.iter().all(|x| self.is_normalized_by(x))
    }
}

/// JSON shape: `{degree, generators: [[1-based images], ...]}`.
#[derive(Serialize, Deserialize)]
pub struct PermGroupFile {
    pub degree: usize,
    pub generators: Vec<Perm>,
}

impl Serialize for PermGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PermGroupFile { degree: self.degree, generators: self.generators.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PermGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = PermGroupFile::deserialize(d)?;
        PermGroup::new(f.degree, f.generators).map_err(serde::de::Error::custom)
    }
}
