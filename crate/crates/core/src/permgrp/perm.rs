use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A permutation of `0..n`, stored as its image list.
///
/// Products act on the right: `a * b` applies `a` first, so
/// `i^(ab) = (i^a)^b`. Externally points are labelled `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::Parse(format!("not a permutation: {:?}", images)));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    /// From 1-based images, the external convention.
    pub fn from_images1(images: &[u32]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::Parse("points are numbered from 1".into()));
        }
        Self::from_images(images.iter().map(|&i| i - 1).collect())
    }

    /// From 1-based cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut used = vec![false; n];
        for cyc in cycles {
            for (idx, &p) in cyc.iter().enumerate() {
                if p == 0 || p as usize > n || used[p as usize - 1] {
                    return Err(Error::Parse(format!("bad cycle {:?} on {} points", cyc, n)));
                }
                used[p as usize - 1] = true;
                images[p as usize - 1] = cyc[(idx + 1) % cyc.len()] - 1;
            }
        }
        Ok(Perm(images))
    }

    /// Parses cycle notation such as `(1 2 3)(4,5)`; `()` is the identity.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| Error::Parse(format!("expected '(' in {:?}", text)))?;
            let close = open.find(')').ok_or_else(|| Error::Parse(format!("unclosed cycle in {:?}", text)))?;
            let body = &open[..close];
            let cyc = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<u32>().map_err(|e| Error::Parse(e.to_string())))
                .collect::<Result<Vec<_>>>()?;
            if !cyc.is_empty() {
                cycles.push(cyc);
            }
            rest = open[close + 1..].trim_start();
        }
        Self::from_cycles(n, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn images1(&self) -> Vec<u32> {
        self.0.iter().map(|&i| i + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `self` then `other`.
    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inv(&self) -> Perm {
        let mut r = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            r[j as usize] = i as u32;
        }
        Perm(r)
    }

    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            e >>= 1;
        }
        acc
    }

    /// `x^-1 self x`.
    pub fn conj(&self, x: &Perm) -> Perm {
        let mut r = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            r[x.0[i] as usize] = x.0[j as usize];
        }
        Perm(r)
    }

    /// Cycles including fixed points, each starting at its least point,
    /// ordered by that point. 0-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut j = self.image(start);
            while j != start {
                seen[j] = true;
                cyc.push(j);
                j = self.image(j);
            }
            out.push(cyc);
        }
        out
    }

    /// Cycle lengths in decreasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.0.iter().enumerate().position(|(i, &j)| i as u32 != j)
    }

    pub fn moved_points(&self) -> usize {
        self.0.iter().enumerate().filter(|&(i, &j)| i as u32 != j).count()
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images1().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        Perm::from_images1(&v).map_err(serde::de::Error::custom)
    }
}
