use super::PermGroup;
use crate::error::{Error, Result};

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // smaller root wins so class representatives are least points
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.0[hi] = lo;
        true
    }
}

/// Finest block system in which `a` and `b` share a block; returns the
/// block containing `a`, sorted.
pub fn minimal_block(g: &PermGroup, a: usize, b: usize) -> Vec<usize> {
    let n = g.degree();
    let mut uf = UnionFind::new(n);
    uf.union(a, b);
    let mut queue = vec![(a, b)];
    while let Some((x, y)) = queue.pop() {
        for s in g.generators() {
            let (sx, sy) = (s.image(x), s.image(y));
            if uf.union(sx, sy) {
                queue.push((sx, sy));
            }
        }
    }
    let root = uf.find(a);
    (0..n).filter(|&p| uf.find(p) == root).collect()
}

/// Outcome of a primitivity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Primitivity {
    Primitive,
    /// A minimal nontrivial block containing point 0 (0-based, sorted).
    Imprimitive {
        block: Vec<usize>,
    },
}

impl Primitivity {
    pub fn is_primitive(&self) -> bool {
        matches!(self, Primitivity::Primitive)
    }
}

/// Primitivity of a transitive group. The witness is the smallest of the
/// blocks generated by `{0, x}`, ties going to the least `x`.
pub fn primitivity(g: &PermGroup) -> Result<Primitivity> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let n = g.degree();
    let mut best: Option<Vec<usize>> = None;
    for x in 1..n {
        let block = minimal_block(g, 0, x);
        if block.len() < n && best.as_ref().is_none_or(|b| block.len() < b.len()) {
            best = Some(block);
        }
    }
    Ok(match best {
        None => Primitivity::Primitive,
        Some(block) => Primitivity::Imprimitive { block },
    })
}

pub fn is_primitive(g: &PermGroup) -> Result<bool> {
    primitivity(g).map(|p| p.is_primitive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgrp::Perm;

    fn group(n: usize, cycles: &[&str]) -> PermGroup {
        PermGroup::new(n, cycles.iter().map(|c| Perm::parse_cycles(n, c).unwrap()).collect()).unwrap()
    }

    #[test]
    fn examples() {
        assert!(is_primitive(&group(3, &["(1 2 3)"])).unwrap());
        assert_eq!(primitivity(&group(4, &["(1 2 3 4)"])).unwrap(), Primitivity::Imprimitive { block: vec![0, 2] });
        assert!(is_primitive(&group(4, &["(1 2)(3 4)", "(1 3)(2 4)", "(2 3 4)"])).unwrap());
        assert_eq!(is_primitive(&group(4, &["(1 2 3)"])), Err(Error::NotTransitive));
        assert!(is_primitive(&PermGroup::symmetric(1)).unwrap());
    }
}
