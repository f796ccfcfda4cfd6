use super::{GlSpace, MatGroup};
use crate::config::Limits;
use crate::error::{check_limit, Result};
use crate::gf::checked_pow;

/// Row-echelon basis with pivot bookkeeping, over the group's field.
struct Echelon<'a> {
    sp: &'a GlSpace,
    /// `(pivot column, normalized row)`
    rows: Vec<(usize, Vec<u32>)>,
}

impl<'a> Echelon<'a> {
    fn new(sp: &'a GlSpace) -> Self {
        Echelon { sp, rows: Vec::new() }
    }

    /// Reduces `v` against the basis; returns the residue if nonzero.
    fn reduce(&self, mut v: Vec<u32>) -> Option<Vec<u32>> {
        let gf = self.sp.field();
        for (p, row) in &self.rows {
            let f = v[*p];
            if f != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = gf.sub(*x, gf.mul(f, y));
                }
            }
        }
        v.iter().any(|&x| x != 0).then_some(v)
    }

    /// Adds `v` if it is outside the span.
    fn insert(&mut self, v: Vec<u32>) -> Option<Vec<u32>> {
        let gf = self.sp.field();
        let mut v = self.reduce(v)?;
        let p = v.iter().position(|&x| x != 0).unwrap();
        let inv = gf.inv(v[p]).unwrap();
        for x in v.iter_mut() {
            *x = gf.mul(*x, inv);
        }
        // keep earlier rows reduced in the new pivot column
        for (_, row) in self.rows.iter_mut() {
            let f = row[p];
            if f != 0 {
                for (x, &y) in row.iter_mut().zip(&v) {
                    *x = gf.sub(*x, gf.mul(f, y));
                }
            }
        }
        self.rows.push((p, v.clone()));
        Some(v)
    }
}

/// Smallest subspace containing `v` and invariant under the generators,
/// returned as a basis.
fn spin(g: &MatGroup, v: Vec<u32>) -> Vec<Vec<u32>> {
    let sp = g.space();
    let mut basis = Echelon::new(sp);
    let mut queue: Vec<Vec<u32>> = basis.insert(v).into_iter().collect();
    while let Some(w) = queue.pop() {
        for m in g.generators() {
            if let Some(n) = basis.insert(sp.apply(&w, m)) {
                queue.push(n);
            }
        }
    }
    basis.rows.into_iter().map(|(_, r)| r).collect()
}

/// A proper nonzero invariant subspace, if any. Every such subspace
/// contains the spin of one of its lines, so scanning one representative
/// per line (first nonzero coordinate 1) is complete.
pub fn invariant_subspace(g: &MatGroup, limits: &Limits) -> Result<Option<Vec<Vec<u32>>>> {
    let sp = g.space();
    let a = sp.alpha();
    let s = sp.s() as u64;
    let size = checked_pow(s, a as u32).unwrap_or(u64::MAX);
    check_limit("s^alpha for spinning", size, limits.spin)?;
    for code in 1..size {
        let mut v = vec![0u32; a];
        let mut rest = code;
        for slot in v.iter_mut().rev() {
            *slot = (rest % s) as u32;
            rest /= s;
        }
        if v.iter().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        let w = spin(g, v);
        if w.len() < a {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Every `e`-dimensional subspace as its reduced row-echelon basis.
fn subspaces(sp: &GlSpace, e: usize) -> Vec<Vec<Vec<u32>>> {
    let a = sp.alpha();
    let s = sp.s() as u64;
    let mut out = Vec::new();
    let mut pivots: Vec<usize> = (0..e).collect();
    loop {
        // free slots: right of the row's pivot, outside every pivot column
        let free: Vec<(usize, usize)> =
            (0..e).flat_map(|i| (pivots[i] + 1..a).filter(|c| !pivots.contains(c)).map(move |c| (i, c))).collect();
        for code in 0..s.pow(free.len() as u32) {
            let mut rows = vec![vec![0u32; a]; e];
            for (i, &p) in pivots.iter().enumerate() {
                rows[i][p] = 1;
            }
            let mut rest = code;
            for &(i, c) in &free {
                rows[i][c] = (rest % s) as u32;
                rest /= s;
            }
            out.push(rows);
        }
        // next pivot combination
        let Some(i) = (0..e).rev().find(|&i| pivots[i] < a - e + i) else { break };
        pivots[i] += 1;
        for j in i + 1..e {
            pivots[j] = pivots[j - 1] + 1;
        }
    }
    out
}

fn canonical(sp: &GlSpace, rows: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let mut e = Echelon::new(sp);
    for r in rows {
        e.insert(r);
    }
    e.rows.sort();
    e.rows.into_iter().map(|(_, r)| r).collect()
}

/// An irreducible group is imprimitive when some subspace `W` has an orbit
/// of exactly `alpha / dim W` images whose sum is direct and fills the space.
/// Reducible groups count as not primitive.
pub fn is_linearly_primitive(g: &MatGroup, limits: &Limits) -> Result<bool> {
    if !is_irreducible(g, limits)? {
        return Ok(false);
    }
    let sp = g.space();
    let a = sp.alpha();
    for e in (1..a).filter(|e| a.is_multiple_of(*e)) {
        for w in subspaces(sp, e) {
            let mut orbit = vec![w.clone()];
            let mut i = 0;
            while i < orbit.len() && orbit.len() <= a / e {
                for m in g.generators() {
                    let image = canonical(sp, orbit[i].iter().map(|v| sp.apply(v, m)).collect());
                    if !orbit.contains(&image) {
                        orbit.push(image);
                    }
                }
                i += 1;
            }
            if orbit.len() == a / e {
                let all: Vec<u32> = orbit.iter().flatten().flatten().copied().collect();
                if sp.rank(all, a) == a {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

pub fn is_irreducible(g: &MatGroup, limits: &Limits) -> Result<bool> {
    Ok(invariant_subspace(g, limits)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgrp::GlSpace;

    #[test]
    fn irreducibility_examples() {
        let limits = Limits::default();
        let sp = GlSpace::make(2, 1, 2).unwrap();
        let c = MatGroup::closure(&sp, vec![sp.mat(vec![0, 1, 1, 1]).unwrap()], &limits).unwrap();
        assert!(is_irreducible(&c, &limits).unwrap());
        let triv = MatGroup::closure(&sp, vec![], &limits).unwrap();
        assert!(!is_irreducible(&triv, &limits).unwrap());
        let sp3 = GlSpace::make(3, 1, 2).unwrap();
        let d = MatGroup::closure(&sp3, vec![sp3.diag(&[2, 1])], &limits).unwrap();
        let w = invariant_subspace(&d, &limits).unwrap().unwrap();
        assert_eq!(w.len(), 1);
        // GL(1, s) has no proper nonzero subspaces at all
        let sp1 = GlSpace::make(5, 1, 1).unwrap();
        assert!(is_irreducible(&MatGroup::closure(&sp1, vec![], &limits).unwrap(), &limits).unwrap());
        let big = GlSpace::make(101, 1, 2).unwrap();
        let g = MatGroup::closure(&big, vec![], &limits).unwrap();
        assert!(is_irreducible(&g, &limits).is_err());
    }

    #[test]
    fn subspace_counts() {
        // Gaussian binomials: [4 choose 2]_2 = 35, [3 choose 1]_3 = 13
        let sp = GlSpace::make(2, 1, 4).unwrap();
        assert_eq!(subspaces(&sp, 2).len(), 35);
        let sp = GlSpace::make(3, 1, 3).unwrap();
        assert_eq!(subspaces(&sp, 1).len(), 13);
        assert_eq!(subspaces(&sp, 2).len(), 13);
    }

    #[test]
    fn primitivity_examples() {
        let limits = Limits::default();
        let sp = GlSpace::make(3, 1, 2).unwrap();
        // monomial group <diag(-1,1), swap> permutes the two axes
        let swap = sp.mat(vec![0, 1, 1, 0]).unwrap();
        let mono = MatGroup::closure(&sp, vec![sp.diag(&[2, 1]), swap], &limits).unwrap();
        assert!(is_irreducible(&mono, &limits).unwrap());
        assert!(!is_linearly_primitive(&mono, &limits).unwrap());
        let singer = crate::matgrp::singer_subgroup(&sp, &limits).unwrap();
        assert!(is_linearly_primitive(&singer, &limits).unwrap());
        let full = MatGroup::closure(&sp, crate::matgrp::gl_generators(&sp), &limits).unwrap();
        assert!(is_linearly_primitive(&full, &limits).unwrap());
    }

    /// Upper unitriangular matrices fix the last basis line, so with the
    /// row-vector action `e_{a-1} M = e_{a-1}`.
    #[test]
    fn unitriangular_is_reducible() {
        let limits = Limits::default();
        let sp = GlSpace::make(3, 1, 3).unwrap();
        let u = sp.mat(vec![1, 1, 2, 0, 1, 1, 0, 0, 1]).unwrap();
        let g = MatGroup::closure(&sp, vec![u], &limits).unwrap();
        let w = invariant_subspace(&g, &limits).unwrap().unwrap();
        assert!(w.len() < 3);
        for row in &w {
            let image = sp.apply(row, &g.generators()[0]);
            let mut e = Echelon::new(&sp);
            for r in &w {
                e.insert(r.clone());
            }
            assert!(e.reduce(image).is_none());
        }
    }
}
