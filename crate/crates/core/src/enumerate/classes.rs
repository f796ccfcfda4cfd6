//! Conjugacy classes of `A_q A_r` subgroups of `S_n` by exhaustive search.

use std::collections::{HashSet, VecDeque};

use serde::{Serialize, Serializer};

use crate::config::Config;
use crate::error::{check_limit, Error, Result};
use crate::gf::{prime_divisors, valuation};
use crate::oracle::all_permutations;
use crate::par;
use crate::permgrp::{self, Perm, PermGroup};

#[derive(Debug, Clone)]
pub struct InventoryClass {
    pub representative: PermGroup,
    pub order: u64,
    /// `(a, b)` with order `q^a r^b`.
    pub signature: (u32, u32),
    pub class_size: u64,
}

/// One representative per conjugacy class, with the filter that produced it.
#[derive(Debug, Clone)]
pub struct ClassInventory {
    pub degree: usize,
    pub chain: [u64; 2],
    pub transitive: bool,
    pub primitive: bool,
    pub classes: Vec<InventoryClass>,
    /// Facts established along the way that the result depends on.
    pub notes: Vec<String>,
}

impl ClassInventory {
    pub fn context(&self) -> String {
        format!("S_{}", self.degree)
    }

    /// Number of classes per order signature.
    pub fn per_signature(&self) -> Vec<((u32, u32), usize)> {
        let mut out: Vec<((u32, u32), usize)> = Vec::new();
        for c in &self.classes {
            match out.iter_mut().find(|(s, _)| *s == c.signature) {
                Some(slot) => slot.1 += 1,
                None => out.push((c.signature, 1)),
            }
        }
        out.sort();
        out
    }
}

#[derive(Serialize)]
struct FilterFile {
    chain: [u64; 2],
    transitive: bool,
    primitive: bool,
}

#[derive(Serialize)]
struct ClassFile {
    order: u64,
    signature: (u32, u32),
    class_size: u64,
    generators: Vec<Vec<u32>>,
}

#[derive(Serialize)]
struct InventoryFile {
    context: String,
    filter: FilterFile,
    count: usize,
    classes: Vec<ClassFile>,
    notes: Vec<String>,
}

impl Serialize for ClassInventory {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        InventoryFile {
            context: self.context(),
            filter: FilterFile { chain: self.chain, transitive: self.transitive, primitive: self.primitive },
            count: self.classes.len(),
            classes: self
                .classes
                .iter()
                .map(|c| ClassFile {
                    order: c.order,
                    signature: c.signature,
                    class_size: c.class_size,
                    generators: c.representative.generators().iter().map(|g| g.images1()).collect(),
                })
                .collect(),
            notes: self.notes.clone(),
        }
        .serialize(s)
    }
}

type Key = Vec<Perm>;

fn key_of(g: &PermGroup, cfg: &Config) -> Result<Key> {
    g.elements_limited(cfg.limits.exhaustive_order)
}

fn conjugate_key(key: &Key, x: &Perm) -> Key {
    let mut out: Key = key.iter().map(|p| p.conj(x)).collect();
    out.sort();
    out
}

/// `(1 2)` and `(1 2 ... n)`.
fn symmetric_generators(n: usize) -> Vec<Perm> {
    if n < 2 {
        return Vec::new();
    }
    let mut t: Vec<u32> = (0..n as u32).collect();
    t.swap(0, 1);
    vec![Perm::from_images(t).unwrap(), Perm::from_images((0..n as u32).map(|i| (i + 1) % n as u32).collect()).unwrap()]
}

/// Every conjugate of `key` under `S_n`, by breadth-first search.
fn conjugacy_orbit(key: &Key, n: usize) -> Vec<Key> {
    let gens = symmetric_generators(n);
    let mut seen: HashSet<Key> = HashSet::from([key.clone()]);
    let mut orbit = vec![key.clone()];
    let mut queue = VecDeque::from([key.clone()]);
    while let Some(k) = queue.pop_front() {
        for x in &gens {
            let c = conjugate_key(&k, x);
            if seen.insert(c.clone()) {
                orbit.push(c.clone());
                queue.push_back(c);
            }
        }
    }
    orbit
}

fn signature(order: u64, q: u64, r: u64) -> Option<(u32, u32)> {
    let (a, b) = (valuation(order, q), valuation(order, r));
    (q.pow(a) * r.pow(b) == order).then_some((a, b))
}

fn orders_only(order: u64, q: u64, r: u64) -> bool {
    signature(order, q, r).is_some()
}

/// Classes of all subgroups of `S_n` in `A_q A_r`, with class sizes. Every
/// such group is generated by elements of order `q` or `r`, and the variety
/// is closed under subgroups, so joining one element at a time from the
/// trivial group and discarding joins outside the variety is exhaustive.
/// All conjugates of each new representative are marked as seen, so a
/// join not yet seen is a new class.
fn variety_subgroup_classes(n: usize, q: u64, r: u64, cfg: &Config) -> Result<Vec<(PermGroup, u64)>> {
    let elements: Vec<Perm> = all_permutations(n).into_iter().filter(|p| p.order() == q || p.order() == r).collect();
    let trivial = PermGroup::trivial(n);
    let trivial_key = key_of(&trivial, cfg)?;
    let mut seen: HashSet<Key> = HashSet::from([trivial_key]);
    let mut classes = vec![(trivial.clone(), 1u64)];
    let mut frontier = vec![trivial];
    while !frontier.is_empty() {
        let joins = par::map(cfg.mode, &frontier, |h| -> Result<Vec<(PermGroup, Key)>> {
            let mut local: HashSet<Key> = HashSet::new();
            let mut out = Vec::new();
            for x in &elements {
                if h.contains(x) {
                    continue;
                }
                let j = h.join(std::slice::from_ref(x))?;
                if !orders_only(j.order_u64(), q, r) {
                    continue;
                }
                let k = key_of(&j, cfg)?;
                if local.insert(k.clone()) {
                    out.push((j, k));
                }
            }
            Ok(out)
        });
        let mut fresh: Vec<(PermGroup, Key)> = Vec::new();
        let mut fresh_keys: HashSet<Key> = HashSet::new();
        for batch in joins {
            for (j, k) in batch? {
                if !seen.contains(&k) && fresh_keys.insert(k.clone()) {
                    fresh.push((j, k));
                }
            }
        }
        let member = par::map(cfg.mode, &fresh, |(j, _)| permgrp::in_variety(j, &[q, r]));
        frontier = Vec::new();
        for ((j, k), m) in fresh.into_iter().zip(member) {
            if !m? || seen.contains(&k) {
                continue;
            }
            let orbit = conjugacy_orbit(&k, n);
            let size = orbit.len() as u64;
            seen.extend(orbit);
            classes.push((j.clone(), size));
            frontier.push(j);
        }
    }
    Ok(classes)
}

fn finish(
    n: usize,
    q: u64,
    r: u64,
    primitive: bool,
    found: Vec<(PermGroup, u64)>,
    notes: Vec<String>,
) -> ClassInventory {
    let mut classes: Vec<InventoryClass> = found
        .into_iter()
        .map(|(g, class_size)| {
            let order = g.order_u64();
            InventoryClass { signature: signature(order, q, r).unwrap(), order, representative: g, class_size }
        })
        .collect();
    classes.sort_by(|a, b| {
        (a.order, a.signature)
            .cmp(&(b.order, b.signature))
            .then_with(|| a.representative.generators().cmp(b.representative.generators()))
    });
    ClassInventory { degree: n, chain: [q, r], transitive: true, primitive, classes, notes }
}

fn check_args(n: usize, q: u64, r: u64, max: usize, cfg: &Config) -> Result<()> {
    check_limit("degree", n as u64, max.min(cfg.limits.max_degree) as u64)?;
    if n < 2 {
        return Err(Error::InvalidParams("degree must be at least 2".into()));
    }
    for u in [q, r] {
        if !crate::gf::is_prime(u) {
            return Err(Error::NotPrime(u));
        }
    }
    if q == r {
        return Err(Error::SamePrime(q));
    }
    Ok(())
}

/// A transitive group has order divisible by `n`, so `n` must be a
/// `{q, r}`-number.
fn degree_admissible(n: usize, q: u64, r: u64) -> bool {
    prime_divisors(n as u64).iter().all(|&u| u == q || u == r)
}

/// Classes of transitive `A_q A_r` subgroups of `S_n`, `n <= 6`.
pub fn enumerate_transitive_classes(n: usize, q: u64, r: u64, cfg: &Config) -> Result<ClassInventory> {
    check_args(n, q, r, 6, cfg)?;
    let found = if degree_admissible(n, q, r) {
        variety_subgroup_classes(n, q, r, cfg)?.into_iter().filter(|(g, _)| g.is_transitive()).collect()
    } else {
        Vec::new()
    };
    Ok(finish(n, q, r, false, found, Vec::new()))
}

/// Classes of primitive `A_q A_r` subgroups of `S_n`, `n <= 8`.
pub fn enumerate_primitive_classes(n: usize, q: u64, r: u64, cfg: &Config) -> Result<ClassInventory> {
    check_args(n, q, r, 8, cfg)?;
    if !degree_admissible(n, q, r) {
        return Ok(finish(n, q, r, true, Vec::new(), Vec::new()));
    }
    if n == 8 {
        let (found, notes) = primitive_degree_eight(q, r, cfg)?;
        return Ok(finish(n, q, r, true, found, notes));
    }
    let found = variety_subgroup_classes(n, q, r, cfg)?
        .into_iter()
        .filter(|(g, _)| g.is_transitive() && permgrp::is_primitive(g).unwrap())
        .collect();
    Ok(finish(n, q, r, true, found, Vec::new()))
}

/// Translations of `F_2^3` on the points `0..8` read as bit vectors.
pub fn regular_translations() -> PermGroup {
    let gens = [4u32, 2, 1].iter().map(|&b| Perm::from_images((0..8).map(|i| i ^ b).collect()).unwrap()).collect();
    PermGroup::new(8, gens).unwrap()
}

/// Every regular elementary abelian subgroup of order 8 in `S_8`: all
/// seven nonidentity elements are fixed-point-free involutions.
pub fn regular_elementary_abelian_8() -> Vec<PermGroup> {
    let fpf: Vec<Perm> = all_permutations(8).into_iter().filter(|p| p.order() == 2 && p.moved_points() == 8).collect();
    let set: HashSet<&Perm> = fpf.iter().collect();
    let mut seen: HashSet<Key> = HashSet::new();
    let mut out = Vec::new();
    for (i, a) in fpf.iter().enumerate() {
        for (j, b) in fpf.iter().enumerate().skip(i + 1) {
            let ab = a.mul(b);
            if ab != b.mul(a) || !set.contains(&ab) {
                continue;
            }
            for c in &fpf[j + 1..] {
                let products = [a.mul(c), b.mul(c), ab.mul(c)];
                if c.mul(a) != products[0] || c.mul(b) != b.mul(c) || !products.iter().all(|p| set.contains(p)) {
                    continue;
                }
                let g = PermGroup::new(8, vec![a.clone(), b.clone(), c.clone()]).unwrap();
                let k = g.elements().unwrap();
                if g.order_u64() == 8 && seen.insert(k) {
                    out.push(g);
                }
            }
        }
    }
    out
}

/// A soluble primitive group of degree 8 has a regular normal `(C_2)^3`.
/// All such subgroups are conjugate (checked here), so up to conjugacy the
/// group lies between a fixed `M` and its normalizer.
/// Representatives with class sizes, plus notes.
type Found = (Vec<(PermGroup, u64)>, Vec<String>);

fn primitive_degree_eight(q: u64, r: u64, cfg: &Config) -> Result<Found> {
    let m = regular_translations();
    let regular = regular_elementary_abelian_8();
    let conjugate = par::map(cfg.mode, &regular, |h| permgrp::are_conjugate(h, &m, cfg));
    let all_conjugate = conjugate.into_iter().collect::<Result<Vec<bool>>>()?.into_iter().all(|c| c);
    if !all_conjugate {
        return Err(Error::InvalidParams("regular (C_2)^3 subgroups of S_8 are not all conjugate".into()));
    }
    let m_key: HashSet<Perm> = m.elements()?.into_iter().collect();
    let everything = all_permutations(8);
    let normalizing: Vec<Perm> = par::filter_map(cfg.mode, &everything, |x| {
        m.generators().iter().all(|g| m_key.contains(&g.conj(x))).then(|| x.clone())
    });
    let mut notes = vec![
        format!("{} regular (C_2)^3 subgroups of S_8, all conjugate", regular.len()),
        format!("normalizer of the translation group has order {}", normalizing.len()),
    ];

    // subgroups between M and its normalizer that lie in the variety
    let candidates: Vec<&Perm> =
        normalizing.iter().filter(|x| !m_key.contains(*x) && (q * r).is_multiple_of(x.order())).collect();
    let mut seen: HashSet<Key> = HashSet::new();
    let mut members: Vec<PermGroup> = Vec::new();
    let mut frontier = Vec::new();
    if permgrp::in_variety(&m, &[q, r])? {
        seen.insert(key_of(&m, cfg)?);
        frontier.push(m.clone());
    }
    while let Some(h) = frontier.pop() {
        for x in &candidates {
            if h.contains(x) {
                continue;
            }
            let j = h.join(&[(*x).clone()])?;
            let k = key_of(&j, cfg)?;
            if seen.insert(k) && permgrp::in_variety(&j, &[q, r])? {
                frontier.push(j);
            }
        }
        members.push(h);
    }
    members.sort_by(|a, b| a.order().cmp(b.order()).then_with(|| a.generators().cmp(b.generators())));

    let mut reps: Vec<(PermGroup, u64)> = Vec::new();
    for g in members.into_iter().filter(|g| permgrp::is_primitive(g).unwrap()) {
        let mut known = false;
        for (rep, _) in &reps {
            if permgrp::are_conjugate(rep, &g, cfg)? {
                known = true;
                break;
            }
        }
        if !known {
            let size = conjugacy_orbit(&key_of(&g, cfg)?, 8).len() as u64;
            reps.push((g, size));
        }
    }
    notes.push(format!("{} primitive classes between the translation group and its normalizer", reps.len()));
    Ok((reps, notes))
}
