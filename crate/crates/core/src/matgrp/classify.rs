//! Brute-force oracles over all of `GL(alpha, s)`.

use std::collections::{HashMap, HashSet, VecDeque};

use num_traits::ToPrimitive;

use super::{is_irreducible, is_linearly_primitive, GlSpace, Mat, MatGroup};
use crate::config::{Config, Limits};
use crate::error::{check_limit, Error, Result};
use crate::groupmodel::{fitting_subgroup, in_variety, CayleyGroup, Subgroup};
use crate::par;

fn check_gl(sp: &GlSpace, limits: &Limits) -> Result<u64> {
    let order = sp.gl_order().to_u64().unwrap_or(u64::MAX);
    check_limit("|GL(alpha, s)|", order, limits.gl_bruteforce)?;
    Ok(order)
}

/// Every invertible matrix, in row-major lexicographic order.
pub fn gl_elements(sp: &GlSpace, cfg: &Config) -> Result<Vec<Mat>> {
    check_gl(sp, &cfg.limits)?;
    let keys = sp.key_space().expect("key space of a brute-force GL fits u64");
    Ok(par::range_filter_map(cfg.mode, 0..keys, |k| {
        let m = sp.from_key(k);
        sp.is_invertible(&m).then_some(m)
    }))
}

/// Transvections `I + E_ij` and `diag(w, 1, ..., 1)` for a primitive `w`.
pub fn gl_generators(sp: &GlSpace) -> Vec<Mat> {
    let gf = sp.field();
    let s = sp.s();
    let w = (1..s).find(|&x| (1..s - 1).all(|e| gf.pow(x, e as u64) != 1)).unwrap_or(1);
    let a = sp.alpha();
    let mut d = vec![1u32; a];
    d[0] = w;
    let mut gens = vec![sp.diag(&d)];
    for i in 0..a {
        for j in 0..a {
            if i != j {
                let mut m = sp.identity();
                m.entries[i * a + j] = 1;
                gens.push(m);
            }
        }
    }
    let id = sp.identity();
    gens.retain(|m| *m != id);
    gens
}

/// Some `x` with `A^x = B`, scanning `GL` in key order after trying the
/// identity. Requires `|A| = |B|`, so `A^x <= B` suffices.
pub fn conjugate_in_gl(a: &MatGroup, b: &MatGroup, cfg: &Config) -> Result<Option<Mat>> {
    let sp = a.space();
    if sp != b.space() {
        return Err(Error::FieldMismatch);
    }
    check_gl(sp, &cfg.limits)?;
    if a.order() != b.order() {
        return Ok(None);
    }
    let b = b.materialize(&cfg.limits)?;
    let id = sp.identity();
    if a.generators().iter().all(|g| b.contains(g)) {
        return Ok(Some(id));
    }
    let keys = sp.key_space().expect("key space fits u64");
    Ok(par::range_find_map_first(cfg.mode, 0..keys, |k| {
        let x = sp.from_key(k);
        let xi = sp.inv(&x)?;
        a.generators().iter().all(|g| b.contains(&sp.conj(g, &x, &xi))).then_some(x)
    }))
}

/// One conjugacy class of maximal elementary abelian `r`-subgroups.
#[derive(Debug, Clone)]
pub struct AbelianClass {
    /// Canonical representative, generated by its canonical generator sequence.
    pub group: MatGroup,
    pub class_size: u64,
}

/// `E <x>` for `x` of order `r` commuting with `E`.
fn extend_by(sp: &GlSpace, elems: &[Mat], x: &Mat, r: u64) -> Vec<Mat> {
    let mut powers = vec![sp.identity()];
    for i in 1..r as usize {
        powers.push(sp.mul(&powers[i - 1], x));
    }
    let mut out: Vec<Mat> = elems.iter().flat_map(|e| powers.iter().map(move |p| sp.mul(e, p))).collect();
    out.sort();
    out.dedup();
    out
}

/// Greedy generators over the sorted element list: each is the least
/// element outside the span of the earlier ones. For an elementary
/// abelian group this is the lexicographically least generating sequence.
fn canonical_generators(sp: &GlSpace, elems: &[Mat], r: u64) -> Vec<Mat> {
    let id = sp.identity();
    let mut span = vec![id.clone()];
    let mut gens = Vec::new();
    for m in elems {
        if *m != id && span.binary_search(m).is_err() {
            gens.push(m.clone());
            span = extend_by(sp, &span, m, r);
        }
    }
    gens
}

fn conjugate_set(sp: &GlSpace, elems: &[Mat], x: &Mat, xi: &Mat) -> Vec<Mat> {
    let mut out: Vec<Mat> = elems.iter().map(|m| sp.conj(m, x, xi)).collect();
    out.sort();
    out
}

/// Maximal elementary abelian `r`-subgroups of `GL(alpha, s)`, one
/// canonical representative per conjugacy class, ordered by order and
/// then by generator sequence.
pub fn classify_elem_abelian_r(sp: &GlSpace, r: u64, cfg: &Config) -> Result<Vec<AbelianClass>> {
    if !crate::gf::is_prime(r) {
        return Err(Error::NotPrime(r));
    }
    let elements = gl_elements(sp, cfg)?;
    let id = sp.identity();
    let order_r: Vec<Mat> =
        par::filter_map(cfg.mode, &elements, |m| (*m != id && sp.pow_u64(m, r) == id).then(|| m.clone()));

    // level j holds the elementary abelian subgroups of order r^j
    let mut level: Vec<Vec<Mat>> = order_r.iter().map(|x| extend_by(sp, std::slice::from_ref(&id), x, r)).collect();
    level.sort();
    level.dedup();
    let mut maximal: Vec<Vec<Mat>> = Vec::new();
    while !level.is_empty() {
        let extensions = par::map(cfg.mode, &level, |e| {
            let gens = canonical_generators(sp, e, r);
            order_r
                .iter()
                .filter(|x| e.binary_search(x).is_err())
                .filter(|x| gens.iter().all(|g| sp.mul(g, x) == sp.mul(x, g)))
                .map(|x| extend_by(sp, e, x, r))
                .collect::<Vec<_>>()
        });
        let mut next: HashSet<Vec<Mat>> = HashSet::new();
        for (e, ext) in level.into_iter().zip(extensions) {
            if ext.is_empty() {
                maximal.push(e);
            } else {
                next.extend(ext);
            }
        }
        level = next.into_iter().collect();
        level.sort();
    }
    maximal.sort();

    let conjugators: Vec<(Mat, Mat)> = gl_generators(sp)
        .into_iter()
        .map(|x| {
            let xi = sp.inv(&x).unwrap();
            (x, xi)
        })
        .collect();
    let mut seen: HashSet<Vec<Mat>> = HashSet::new();
    let mut classes: Vec<(Vec<Mat>, u64)> = Vec::new();
    for e in maximal {
        if seen.contains(&e) {
            continue;
        }
        let mut orbit = vec![e.clone()];
        seen.insert(e.clone());
        let mut queue = VecDeque::from([e]);
        while let Some(f) = queue.pop_front() {
            for (x, xi) in &conjugators {
                let c = conjugate_set(sp, &f, x, xi);
                if seen.insert(c.clone()) {
                    orbit.push(c.clone());
                    queue.push_back(c);
                }
            }
        }
        let best = orbit.iter().map(|f| canonical_generators(sp, f, r)).min().unwrap();
        classes.push((best, orbit.len() as u64));
    }
    classes.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    classes
        .into_iter()
        .map(|(gens, class_size)| Ok(AbelianClass { group: MatGroup::closure(sp, gens, &cfg.limits)?, class_size }))
        .collect()
}

/// The multiplication table of `GL(alpha, s)` over its sorted elements.
pub fn gl_cayley(sp: &GlSpace, cfg: &Config, table_limit: u64) -> Result<(Vec<Mat>, CayleyGroup)> {
    let order = check_gl(sp, &cfg.limits)?;
    check_limit("table order", order, table_limit)?;
    let elements = gl_elements(sp, cfg)?;
    let table = CayleyGroup::from_elements(&elements, |a, b| sp.mul(a, b))?;
    Ok((elements, table))
}

/// Data for one subgroup of `GL(alpha, s)` lying in `A_q A_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietySubgroup {
    pub order: u64,
    pub fitting_order: u64,
    pub irreducible: bool,
    pub primitive: bool,
}

/// Every subgroup of `GL(alpha, s)` in `A_q A_r`. The variety is closed
/// under subgroups, so joining one cyclic subgroup at a time and discarding
/// joins outside the variety still reaches every member.
pub fn subgroups_in_variety(
    sp: &GlSpace,
    q: u64,
    r: u64,
    cfg: &Config,
    table_limit: u64,
) -> Result<Vec<VarietySubgroup>> {
    let (elements, g) = gl_cayley(sp, cfg, table_limit)?;
    let chain = [q, r];
    let candidates: Vec<u32> =
        (0..g.order() as u32).filter(|&x| (q * r).is_multiple_of(g.element_order(x)) && x != g.identity()).collect();
    let in_v = |h: &Subgroup| in_variety(&g.subgroup_table(h), &chain, u64::MAX).unwrap();

    let trivial = g.trivial_subgroup();
    let mut seen: HashSet<Subgroup> = HashSet::from([trivial.clone()]);
    let mut level = vec![trivial];
    let mut members: Vec<Subgroup> = Vec::new();
    while !level.is_empty() {
        let found = par::map(cfg.mode, &level, |h| {
            let mut joins: HashMap<Subgroup, ()> = HashMap::new();
            for &x in &candidates {
                if !h.contains(x) {
                    let mut gens = h.elements().to_vec();
                    gens.push(x);
                    joins.insert(g.generate(&gens), ());
                }
            }
            joins.into_keys().collect::<Vec<_>>()
        });
        members.append(&mut level);
        let mut fresh: Vec<Subgroup> = found.into_iter().flatten().filter(|j| !seen.contains(j)).collect();
        fresh.sort();
        fresh.dedup();
        let keep: Vec<bool> = par::map(cfg.mode, &fresh, in_v);
        for (j, k) in fresh.into_iter().zip(keep) {
            seen.insert(j.clone());
            if k {
                level.push(j);
            }
        }
    }
    members.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));

    members
        .iter()
        .map(|h| {
            let table = g.subgroup_table(h);
            let mats: Vec<Mat> = h.elements().iter().map(|&i| elements[i as usize].clone()).collect();
            let mg = MatGroup::with_order(sp, mats, h.order().into());
            let irreducible = is_irreducible(&mg, &cfg.limits)?;
            let primitive = irreducible && is_linearly_primitive(&mg, &cfg.limits)?;
            Ok(VarietySubgroup {
                order: h.order() as u64,
                fitting_order: fitting_subgroup(&table).order() as u64,
                irreducible,
                primitive,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupmodel::all_subgroups;
    use crate::matgrp::{maximal_ar_subgroup, singer_subgroup};

    #[test]
    fn gl_scan_sizes() {
        let cfg = Config::default();
        for (t, a, n) in [(2, 2, 6usize), (3, 2, 48), (2, 3, 168), (5, 1, 4)] {
            let sp = GlSpace::make(t, 1, a).unwrap();
            let e = gl_elements(&sp, &cfg).unwrap();
            assert_eq!(e.len(), n);
            assert!(e.windows(2).all(|w| w[0] < w[1]));
            let g = MatGroup::closure(&sp, gl_generators(&sp), &cfg.limits).unwrap();
            assert_eq!(g.order_u64(), n as u64);
        }
        let sp = GlSpace::make(2, 1, 5).unwrap();
        assert!(matches!(gl_elements(&sp, &cfg), Err(Error::LimitExceeded { .. })));
    }

    #[test]
    fn conjugacy_examples() {
        let cfg = Config::default();
        let limits = &cfg.limits;
        let sp = GlSpace::make(2, 1, 2).unwrap();
        let s1 = singer_subgroup(&sp, limits).unwrap();
        // the other order-3 subgroup is generated by the inverse generator
        // conjugated by a transvection
        let x = sp.mat(vec![1, 1, 0, 1]).unwrap();
        let g = &s1.generators()[0];
        let s2 = MatGroup::closure(&sp, vec![sp.conj(g, &x, &sp.inv(&x).unwrap())], limits).unwrap();
        let c = conjugate_in_gl(&s1, &s2, &cfg).unwrap().unwrap();
        let ci = sp.inv(&c).unwrap();
        assert!(s2.contains(&sp.conj(g, &c, &ci)));
        assert_eq!(conjugate_in_gl(&s1, &s1, &cfg).unwrap(), Some(sp.identity()));

        let sp = GlSpace::make(3, 1, 2).unwrap();
        let minus = MatGroup::closure(&sp, vec![sp.diag(&[2, 2])], limits).unwrap();
        let refl = MatGroup::closure(&sp, vec![sp.diag(&[1, 2])], limits).unwrap();
        assert_eq!(conjugate_in_gl(&minus, &refl, &cfg).unwrap(), None);
        let seq = Config::sequential();
        let other = MatGroup::closure(&sp, vec![sp.diag(&[2, 1])], limits).unwrap();
        assert_eq!(conjugate_in_gl(&refl, &other, &cfg).unwrap(), conjugate_in_gl(&refl, &other, &seq).unwrap());
    }

    /// Independent count: scan every subgroup of the GL table.
    fn lattice_count(sp: &GlSpace, r: u64) -> (usize, usize) {
        let cfg = Config::default();
        let (_, g) = gl_cayley(sp, &cfg, 400).unwrap();
        let subs = all_subgroups(&g, 400).unwrap();
        let ea: Vec<&Subgroup> =
            subs.iter().filter(|h| h.order() > 1 && g.is_abelian_subgroup(h) && g.exponent_of(h) == r).collect();
        let maximal: Vec<&Subgroup> =
            ea.iter().copied().filter(|h| !ea.iter().any(|k| k.order() > h.order() && h.is_subgroup_of(k))).collect();
        (maximal.len(), maximal[0].order())
    }

    #[test]
    fn classification_examples() {
        let cfg = Config::default();
        for (t, a, r, order) in [(2, 2, 3, 3u64), (3, 2, 2, 4), (2, 3, 3, 3), (2, 3, 7, 7)] {
            let sp = GlSpace::make(t, 1, a).unwrap();
            let classes = classify_elem_abelian_r(&sp, r, &cfg).unwrap();
            assert_eq!(classes.len(), 1, "GL({a},{t}) r={r}");
            assert_eq!(classes[0].group.order_u64(), order);
            let (count, ord) = lattice_count(&sp, r);
            assert_eq!(classes[0].class_size as usize, count);
            assert_eq!(ord as u64, order);
            let m = maximal_ar_subgroup(&sp, r, &cfg.limits).unwrap().unwrap();
            assert!(conjugate_in_gl(&m, &classes[0].group, &cfg).unwrap().is_some());
        }
    }

    #[test]
    fn several_classes_are_pairwise_non_conjugate() {
        let cfg = Config::default();
        let sp = GlSpace::make(5, 1, 1).unwrap();
        assert_eq!(classify_elem_abelian_r(&sp, 2, &cfg).unwrap().len(), 1);
        // in GL(3,2) the maximal Klein subgroups either fix a line pointwise
        // or act trivially on a hyperplane: two classes of 7
        let sp = GlSpace::make(2, 1, 3).unwrap();
        let classes = classify_elem_abelian_r(&sp, 2, &cfg).unwrap();
        assert_eq!(
            classes.iter().map(|c| (c.group.order_u64(), c.class_size)).collect::<Vec<_>>(),
            vec![(4, 7), (4, 7)]
        );
        for (i, a) in classes.iter().enumerate() {
            for b in &classes[i + 1..] {
                assert_eq!(conjugate_in_gl(&a.group, &b.group, &cfg).unwrap(), None);
            }
        }
        let seq = classify_elem_abelian_r(&sp, 2, &Config::sequential()).unwrap();
        assert_eq!(
            seq.iter().map(|c| c.group.generators().to_vec()).collect::<Vec<_>>(),
            classes.iter().map(|c| c.group.generators().to_vec()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn variety_subgroups_of_small_gl() {
        let cfg = Config::default();
        let sp = GlSpace::make(7, 1, 1).unwrap();
        let subs = subgroups_in_variety(&sp, 2, 3, &cfg, 400).unwrap();
        assert_eq!(subs.iter().map(|s| s.order).collect::<Vec<_>>(), vec![1, 2, 3, 6]);
        // S3 = GL(2,2) is in A_3 A_2 but not in A_2 A_3
        let sp = GlSpace::make(2, 1, 2).unwrap();
        let a = subgroups_in_variety(&sp, 3, 2, &cfg, 400).unwrap();
        let b = subgroups_in_variety(&sp, 2, 3, &cfg, 400).unwrap();
        assert_eq!(a.iter().map(|s| s.order).max(), Some(6));
        assert_eq!(b.iter().map(|s| s.order).max(), Some(3));
    }
}
