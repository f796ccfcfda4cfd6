//! Abstract finite groups as multiplication tables.

mod iso;
mod lattice;
mod sylow;
mod variety;

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_limit, Error, Result};
use crate::permgrp::PermGroup;

pub(crate) use iso::generating_set;
pub use iso::{are_isomorphic, find_isomorphism, Fingerprint};
pub use lattice::{all_subgroups, normal_subgroups};
pub use sylow::{fitting_subgroup, is_permutable, o_prime, sylow_subgroup, sylow_system};
pub use variety::{in_variety, verbal_ar_subgroup, verbal_subgroup, VarietyParams};

/// Tables up to this order get a full associativity check.
const FULL_ASSOC_CHECK: usize = 200;

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CayleyFile", into = "CayleyFile")]
pub struct CayleyGroup {
    n: usize,
    table: Vec<u32>,
    identity: u32,
    inverse: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct CayleyFile {
    order: usize,
    identity: u32,
    table: Vec<Vec<u32>>,
}

impl TryFrom<CayleyFile> for CayleyGroup {
    type Error = Error;

    fn try_from(f: CayleyFile) -> Result<Self> {
        if f.table.len() != f.order || f.table.iter().any(|r| r.len() != f.order) {
            return Err(Error::Parse("table shape does not match order".into()));
        }
        CayleyGroup::from_table(f.order, f.table.concat(), f.identity)
    }
}

impl From<CayleyGroup> for CayleyFile {
    fn from(g: CayleyGroup) -> Self {
        CayleyFile { order: g.n, identity: g.identity, table: g.table.chunks(g.n).map(|r| r.to_vec()).collect() }
    }
}

/// A subgroup as a sorted list of element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subgroup(Vec<u32>);

impl Subgroup {
    pub fn elements(&self) -> &[u32] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }

    fn from_marks(marks: &[bool]) -> Self {
        Subgroup(marks.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i as u32).collect())
    }

    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &x in &self.0 {
            m[x as usize] = true;
        }
        m
    }
}

impl CayleyGroup {
    /// Validates a row-major table: Latin square, two-sided identity,
    /// associativity (exhaustive up to order 200, a fixed-seed sample above).
    pub fn from_table(n: usize, table: Vec<u32>, identity: u32) -> Result<Self> {
        if n == 0 || table.len() != n * n || identity as usize >= n {
            return Err(Error::Parse("table must be n x n with identity in range".into()));
        }
        for i in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for j in 0..n {
                let r = table[i * n + j] as usize;
                let c = table[j * n + i] as usize;
                if r >= n || c >= n || row[r] || col[c] {
                    return Err(Error::Parse("table is not a Latin square".into()));
                }
                row[r] = true;
                col[c] = true;
            }
            if table[identity as usize * n + i] != i as u32 || table[i * n + identity as usize] != i as u32 {
                return Err(Error::Parse("identity is not two-sided".into()));
            }
        }
        let m = |a: usize, b: usize| table[a * n + b] as usize;
        let assoc = |a: usize, b: usize, c: usize| m(m(a, b), c) == m(a, m(b, c));
        let ok = if n <= FULL_ASSOC_CHECK {
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| assoc(a, b, c))))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            (0..100_000).all(|_| assoc(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)))
        };
        if !ok {
            return Err(Error::Parse("table is not associative".into()));
        }
        let inverse: Vec<u32> =
            (0..n).map(|a| (0..n as u32).find(|&b| m(a, b as usize) == identity as usize).unwrap()).collect();
        Ok(CayleyGroup { n, table, identity, inverse })
    }

    /// Table over `elements` in the given order, closed under `mul`.
    pub fn from_elements<T, F>(elements: &[T], mul: F) -> Result<Self>
    where
        T: Hash + Eq + Clone,
        F: Fn(&T, &T) -> T,
    {
        let index: HashMap<&T, u32> = elements.iter().enumerate().map(|(i, e)| (e, i as u32)).collect();
        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        for a in elements {
            for b in elements {
                let c = mul(a, b);
                let idx = *index.get(&c).ok_or_else(|| Error::Parse("element list is not closed".into()))?;
                table.push(idx);
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] == x as u32))
            .ok_or_else(|| Error::Parse("no identity".into()))? as u32;
        Self::from_table(n, table, identity)
    }

    /// Table of a permutation group over its sorted element list.
    pub fn from_perm_group(g: &PermGroup, limit: u64) -> Result<Self> {
        check_limit("table order", g.order_u64(), limit)?;
        let elems = g.elements_limited(limit)?;
        Self::from_elements(&elems, |a, b| a.mul(b))
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32)).collect();
        Self::from_table(n, table, 0).unwrap()
    }

    /// Elementary abelian group of order `u^dim`, elements as base-u digit vectors.
    pub fn elementary_abelian(u: u32, dim: u32) -> Self {
        let n = (u as usize).pow(dim);
        let add = |mut a: usize, mut b: usize| {
            let (mut out, mut place) = (0, 1);
            for _ in 0..dim {
                out += ((a % u as usize + b % u as usize) % u as usize) * place;
                place *= u as usize;
                a /= u as usize;
                b /= u as usize;
            }
            out as u32
        };
        let table = (0..n).flat_map(|a| (0..n).map(move |b| add(a, b))).collect();
        Self::from_table(n, table, 0).unwrap()
    }

    pub fn direct_product(&self, other: &CayleyGroup) -> CayleyGroup {
        let (n, m) = (self.n, other.n);
        let mut table = Vec::with_capacity(n * m * n * m);
        for a in 0..n * m {
            for b in 0..n * m {
                let x = self.mul((a / m) as u32, (b / m) as u32);
                let y = other.mul((a % m) as u32, (b % m) as u32);
                table.push(x * m as u32 + y);
            }
        }
        let identity = self.identity * m as u32 + other.identity;
        Self::from_table(n * m, table, identity).unwrap()
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        let mut acc = self.identity;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    /// `g^-1 a g`.
    pub fn conj(&self, a: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), a), g)
    }

    pub fn element_order(&self, a: u32) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<u64> {
        (0..self.n as u32).map(|a| self.element_order(a)).collect()
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup((0..self.n as u32).collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup(vec![self.identity])
    }

    /// `<gens>`.
    pub fn generate(&self, gens: &[u32]) -> Subgroup {
        let mut marks = vec![false; self.n];
        marks[self.identity as usize] = true;
        let mut members = vec![self.identity];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !marks[y as usize] {
                    marks[y as usize] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        Subgroup::from_marks(&marks)
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        let mask = s.mask(self.n);
        s.0.iter().all(|&x| (0..self.n as u32).all(|g| mask[self.conj(x, g) as usize]))
    }

    pub fn normal_closure(&self, gens: &[u32]) -> Subgroup {
        let mut all: Vec<u32> =
            gens.iter().flat_map(|&x| (0..self.n as u32).map(move |g| (x, g))).map(|(x, g)| self.conj(x, g)).collect();
        all.sort_unstable();
        all.dedup();
        self.generate(&all)
    }

    pub fn is_abelian_subgroup(&self, s: &Subgroup) -> bool {
        s.0.iter().all(|&a| s.0.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_abelian(&self) -> bool {
        self.is_abelian_subgroup(&self.whole())
    }

    pub fn exponent_of(&self, s: &Subgroup) -> u64 {
        s.0.iter().fold(1, |acc, &x| num_integer::lcm(acc, self.element_order(x)))
    }

    pub fn exponent(&self) -> u64 {
        self.exponent_of(&self.whole())
    }

    pub fn center(&self) -> Subgroup {
        let marks: Vec<bool> =
            (0..self.n as u32).map(|a| (0..self.n as u32).all(|b| self.mul(a, b) == self.mul(b, a))).collect();
        Subgroup::from_marks(&marks)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        self.derived_of(&self.whole())
    }

    /// `[S, S]`.
    pub fn derived_of(&self, s: &Subgroup) -> Subgroup {
        let mut comms: Vec<u32> =
            s.0.iter().flat_map(|&a| s.0.iter().map(move |&b| (a, b))).map(|(a, b)| self.commutator(a, b)).collect();
        comms.sort_unstable();
        comms.dedup();
        self.generate(&comms)
    }

    /// Table of `s` with its elements renumbered in increasing order.
    pub fn subgroup_table(&self, s: &Subgroup) -> CayleyGroup {
        let pos: HashMap<u32, u32> = s.0.iter().enumerate().map(|(i, &x)| (x, i as u32)).collect();
        let m = s.order();
        let mut table = Vec::with_capacity(m * m);
        for &a in &s.0 {
            for &b in &s.0 {
                table.push(pos[&self.mul(a, b)]);
            }
        }
        Self::from_table(m, table, pos[&self.identity]).unwrap()
    }

    /// Left cosets `gN` numbered by least element; returns the coset index
    /// of every element.
    pub fn coset_labels(&self, normal: &Subgroup) -> Vec<u32> {
        let mut label = vec![u32::MAX; self.n];
        let mut next = 0;
        for g in 0..self.n as u32 {
            if label[g as usize] == u32::MAX {
                for &x in &normal.0 {
                    label[self.mul(g, x) as usize] = next;
                }
                next += 1;
            }
        }
        label
    }

    /// `G / N`.
    pub fn quotient(&self, normal: &Subgroup) -> Result<CayleyGroup> {
        if !self.is_normal(normal) {
            return Err(Error::NotNormal);
        }
        let label = self.coset_labels(normal);
        let m = self.n / normal.order();
        let mut reps = vec![u32::MAX; m];
        for g in 0..self.n as u32 {
            let l = label[g as usize] as usize;
            if reps[l] == u32::MAX {
                reps[l] = g;
            }
        }
        let mut table = Vec::with_capacity(m * m);
        for &a in &reps {
            for &b in &reps {
                table.push(label[self.mul(a, b) as usize]);
            }
        }
        Self::from_table(m, table, label[self.identity as usize])
    }

    /// Histogram of element orders.
    pub fn order_histogram(&self) -> BTreeMap<u64, usize> {
        let mut h = BTreeMap::new();
        for o in self.element_orders() {
            *h.entry(o).or_insert(0) += 1;
        }
        h
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgrp;

    pub(crate) fn s3() -> CayleyGroup {
        CayleyGroup::from_perm_group(&PermGroup::symmetric(3), 400).unwrap()
    }

    pub(crate) fn a4() -> CayleyGroup {
        let g = permgrp::from_cycles(4, &["(1 2)(3 4)", "(1 3)(2 4)", "(2 3 4)"]).unwrap();
        CayleyGroup::from_perm_group(&g, 400).unwrap()
    }

    #[test]
    fn tables_from_sources() {
        let s3 = s3();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.identity(), 0);
        assert!(!s3.is_abelian());
        let triv = CayleyGroup::from_perm_group(&PermGroup::trivial(4), 400).unwrap();
        assert_eq!(triv.order(), 1);
        assert!(matches!(
            CayleyGroup::from_perm_group(&PermGroup::symmetric(6), 400),
            Err(Error::LimitExceeded { .. })
        ));
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(CayleyGroup::from_table(2, vec![0, 1, 1, 1], 0).is_err());
        assert!(CayleyGroup::from_table(2, vec![0, 1, 1, 0], 1).is_err());
        // Latin square with identity 0 that is not associative
        let t = vec![0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0];
        assert!(CayleyGroup::from_table(5, t, 0).is_err());
        let json = serde_json::to_string(&CayleyGroup::cyclic(2)).unwrap();
        assert_eq!(json, r#"{"order":2,"identity":0,"table":[[0,1],[1,0]]}"#);
        let back: CayleyGroup = serde_json::from_str(&json).unwrap();
        assert_eq!(back, CayleyGroup::cyclic(2));
    }

    #[test]
    fn quotient_examples() {
        let a4 = a4();
        let v4 = a4.derived_subgroup();
        assert_eq!(v4.order(), 4);
        let q = a4.quotient(&v4).unwrap();
        assert!(are_isomorphic(&q, &CayleyGroup::cyclic(3)));
        let id = a4.quotient(&a4.trivial_subgroup()).unwrap();
        assert!(are_isomorphic(&id, &a4));
        let c6 = CayleyGroup::cyclic(6);
        let c2 = c6.generate(&[3]);
        assert!(are_isomorphic(&c6.quotient(&c2).unwrap(), &CayleyGroup::cyclic(3)));
        let s3 = s3();
        let not_normal = s3.generate(&[1]);
        assert_eq!(not_normal.order(), 2);
        assert_eq!(s3.quotient(&not_normal), Err(Error::NotNormal));
    }

    #[test]
    fn structure_helpers() {
        let d = CayleyGroup::cyclic(2).direct_product(&CayleyGroup::cyclic(3));
        assert!(are_isomorphic(&d, &CayleyGroup::cyclic(6)));
        assert_eq!(CayleyGroup::elementary_abelian(2, 3).exponent(), 2);
        assert_eq!(a4().center().order(), 1);
        assert_eq!(a4().exponent(), 6);
    }
}
