//! Matrix groups over GF(s).
//!
//! Matrices act on row vectors from the right, `v -> vM`, so products read
//! left to right like permutations.

mod classify;
mod singer;
mod spin;

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::config::Limits;
use crate::error::{check_limit, Error, Result};
use crate::gf::{checked_pow, FieldElem, FieldSpec, Gf};
use crate::groupmodel::CayleyGroup;

pub use classify::{
    classify_elem_abelian_r, conjugate_in_gl, gl_cayley, gl_elements, gl_generators, subgroups_in_variety,
    AbelianClass, VarietySubgroup,
};
pub use singer::{maximal_ar_subgroup, primitive_polynomial, singer_generator, singer_subgroup};
pub use spin::{invariant_subspace, is_irreducible, is_linearly_primitive};

/// An `alpha x alpha` matrix of field codes, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    alpha: usize,
    entries: Vec<u32>,
}

impl Mat {
    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.alpha + j]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.alpha).map(|r| r.to_vec()).collect()
    }
}

/// `GL(alpha, s)` as an arithmetic context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlSpace {
    gf: Arc<Gf>,
    alpha: usize,
}

impl GlSpace {
    pub fn new(gf: Arc<Gf>, alpha: usize) -> Self {
        assert!(alpha >= 1, "dimension must be positive");
        GlSpace { gf, alpha }
    }

    pub fn make(t: u32, k: u32, alpha: usize) -> Result<Self> {
        Ok(GlSpace::new(Arc::new(Gf::make(t, k)?), alpha))
    }

    pub fn field(&self) -> &Gf {
        &self.gf
    }

    pub fn field_arc(&self) -> Arc<Gf> {
        self.gf.clone()
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn s(&self) -> u32 {
        self.gf.size()
    }

    pub fn mat(&self, entries: Vec<u32>) -> Result<Mat> {
        if entries.len() != self.alpha * self.alpha || entries.iter().any(|&e| e >= self.s()) {
            return Err(Error::Parse(format!("expected {}x{} matrix over GF({})", self.alpha, self.alpha, self.s())));
        }
        Ok(Mat { alpha: self.alpha, entries })
    }

    pub fn identity(&self) -> Mat {
        let a = self.alpha;
        Mat { alpha: a, entries: (0..a * a).map(|i| u32::from(i / a == i % a)).collect() }
    }

    pub fn diag(&self, d: &[u32]) -> Mat {
        let a = self.alpha;
        let mut m = vec![0; a * a];
        for (i, &x) in d.iter().enumerate() {
            m[i * a + i] = x;
        }
        Mat { alpha: a, entries: m }
    }

    pub fn mul(&self, x: &Mat, y: &Mat) -> Mat {
        let a = self.alpha;
        let gf = &*self.gf;
        let mut out = vec![0u32; a * a];
        for i in 0..a {
            for k in 0..a {
                let xik = x.entries[i * a + k];
                if xik == 0 {
                    continue;
                }
                for j in 0..a {
                    let idx = i * a + j;
                    out[idx] = gf.add(out[idx], gf.mul(xik, y.entries[k * a + j]));
                }
            }
        }
        Mat { alpha: a, entries: out }
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[u32], m: &Mat) -> Vec<u32> {
        let a = self.alpha;
        let gf = &*self.gf;
        let mut out = vec![0u32; a];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = gf.add(*o, gf.mul(vi, m.entries[i * a + j]));
            }
        }
        out
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inv(&self, m: &Mat) -> Option<Mat> {
        let a = self.alpha;
        let gf = &*self.gf;
        let mut left = m.entries.clone();
        let mut right = self.identity().entries;
        for col in 0..a {
            let pivot = (col..a).find(|&r| left[r * a + col] != 0)?;
            for j in 0..a {
                left.swap(col * a + j, pivot * a + j);
                right.swap(col * a + j, pivot * a + j);
            }
            let piv_inv = gf.inv(left[col * a + col]).unwrap();
            for j in 0..a {
                left[col * a + j] = gf.mul(left[col * a + j], piv_inv);
                right[col * a + j] = gf.mul(right[col * a + j], piv_inv);
            }
            for r in 0..a {
                let f = left[r * a + col];
                if r == col || f == 0 {
                    continue;
                }
                for j in 0..a {
                    left[r * a + j] = gf.sub(left[r * a + j], gf.mul(f, left[col * a + j]));
                    right[r * a + j] = gf.sub(right[r * a + j], gf.mul(f, right[col * a + j]));
                }
            }
        }
        Some(Mat { alpha: a, entries: right })
    }

    pub fn is_invertible(&self, m: &Mat) -> bool {
        self.rank(m.entries.clone(), self.alpha) == self.alpha
    }

    /// Rank of a `rows x alpha` matrix given row-major.
    pub fn rank(&self, mut rows: Vec<u32>, nrows: usize) -> usize {
        let a = self.alpha;
        let gf = &*self.gf;
        let mut rank = 0;
        for col in 0..a {
            let Some(pivot) = (rank..nrows).find(|&r| rows[r * a + col] != 0) else { continue };
            for j in 0..a {
                rows.swap(rank * a + j, pivot * a + j);
            }
            let piv_inv = gf.inv(rows[rank * a + col]).unwrap();
            for r in rank + 1..nrows {
                let f = gf.mul(rows[r * a + col], piv_inv);
                if f == 0 {
                    continue;
                }
                for j in 0..a {
                    rows[r * a + j] = gf.sub(rows[r * a + j], gf.mul(f, rows[rank * a + j]));
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn pow(&self, m: &Mat, e: &BigUint) -> Mat {
        let mut acc = self.identity();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, m);
            }
        }
        acc
    }

    pub fn pow_u64(&self, m: &Mat, e: u64) -> Mat {
        self.pow(m, &BigUint::from(e))
    }

    /// `x^-1 m x`.
    pub fn conj(&self, m: &Mat, x: &Mat, x_inv: &Mat) -> Mat {
        self.mul(&self.mul(x_inv, m), x)
    }

    /// Element order, reducing `|GL(alpha, s)|` one prime at a time.
    pub fn element_order(&self, m: &Mat) -> BigUint {
        let id = self.identity();
        let mut order = self.gl_order();
        for (p, _) in self.gl_order_factors() {
            let p = BigUint::from(p);
            while (&order % &p).to_u32() == Some(0) && self.pow(m, &(&order / &p)) == id {
                order /= &p;
            }
        }
        order
    }

    pub fn gl_order(&self) -> BigUint {
        gl_order(self.alpha, self.s() as u64)
    }

    /// Primes dividing `|GL(alpha, s)|`.
    fn gl_order_factors(&self) -> Vec<(u64, u32)> {
        let s = self.s() as u64;
        let mut primes: Vec<(u64, u32)> = vec![(self.gf.characteristic() as u64, 1)];
        for j in 1..=self.alpha as u32 {
            let v = checked_pow(s, j).expect("s^alpha fits u64") - 1;
            for (p, e) in crate::gf::factorize(v) {
                if let Some(slot) = primes.iter_mut().find(|(q, _)| *q == p) {
                    slot.1 += e;
                } else {
                    primes.push((p, e));
                }
            }
        }
        primes.sort_unstable();
        primes
    }

    /// Number of `alpha x alpha` matrices, all of which have a key below it.
    pub fn key_space(&self) -> Option<u64> {
        checked_pow(self.s() as u64, (self.alpha * self.alpha) as u32)
    }

    /// Base-s integer with the first entry most significant, so key order
    /// is row-major lexicographic entry order.
    pub fn key(&self, m: &Mat) -> u64 {
        m.entries.iter().fold(0u64, |acc, &e| acc * self.s() as u64 + e as u64)
    }

    pub fn from_key(&self, mut key: u64) -> Mat {
        let n = self.alpha * self.alpha;
        let s = self.s() as u64;
        let mut entries = vec![0u32; n];
        for slot in entries.iter_mut().rev() {
            *slot = (key % s) as u32;
            key /= s;
        }
        Mat { alpha: self.alpha, entries }
    }

    /// Block-diagonal embedding of a smaller matrix at `offset`, identity elsewhere.
    pub fn embed(&self, block: &Mat, offset: usize) -> Mat {
        let mut m = self.identity();
        let b = block.alpha;
        for i in 0..b {
            for j in 0..b {
                m.entries[(offset + i) * self.alpha + offset + j] = block.entries[i * b + j];
            }
        }
        m
    }
}

/// `|GL(alpha, s)| = prod_{i < alpha} (s^alpha - s^i)`.
pub fn gl_order(alpha: usize, s: u64) -> BigUint {
    let s = BigUint::from(s);
    let sa = s.pow(alpha as u32);
    (0..alpha as u32).fold(BigUint::from(1u32), |acc, i| acc * (&sa - s.pow(i)))
}

/// A matrix group, optionally with its full element list.
#[derive(Debug, Clone)]
pub struct MatGroup {
    space: GlSpace,
    generators: Vec<Mat>,
    /// Sorted, when known.
    elements: Option<Vec<Mat>>,
    order: BigUint,
}

impl MatGroup {
    /// Full closure of `<gens>`.
    pub fn closure(space: &GlSpace, gens: Vec<Mat>, limits: &Limits) -> Result<Self> {
        for g in &gens {
            if g.alpha != space.alpha || g.entries.iter().any(|&e| e >= space.s()) {
                return Err(Error::DegreeMismatch { expected: space.alpha, found: g.alpha });
            }
            if !space.is_invertible(g) {
                return Err(Error::SingularGenerator);
            }
        }
        let id = space.identity();
        let mut gens: Vec<Mat> = gens.into_iter().filter(|g| *g != id).collect();
        gens.sort();
        gens.dedup();
        let mut seen: HashSet<Mat> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = space.mul(&x, g);
                if !seen.contains(&y) {
                    check_limit("matrix group order", seen.len() as u64 + 1, limits.mat_elements)?;
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Mat> = seen.into_iter().collect();
        elements.sort();
        let order = BigUint::from(elements.len());
        Ok(MatGroup { space: space.clone(), generators: gens, elements: Some(elements), order })
    }

    /// A group whose order is known without closing it.
    pub(crate) fn with_order(space: &GlSpace, generators: Vec<Mat>, order: BigUint) -> Self {
        MatGroup { space: space.clone(), generators, elements: None, order }
    }

    pub fn space(&self) -> &GlSpace {
        &self.space
    }

    pub fn alpha(&self) -> usize {
        self.space.alpha
    }

    pub fn generators(&self) -> &[Mat] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_u64(&self) -> u64 {
        self.order.to_u64().expect("order fits u64")
    }

    pub fn elements(&self) -> Option<&[Mat]> {
        self.elements.as_deref()
    }

    /// Closes the group if its elements are not cached yet.
    pub fn materialize(&self, limits: &Limits) -> Result<MatGroup> {
        if self.elements.is_some() {
            return Ok(self.clone());
        }
        check_limit("matrix group order", self.order.to_u64().unwrap_or(u64::MAX), limits.mat_elements)?;
        MatGroup::closure(&self.space, self.generators.clone(), limits)
    }

    pub fn contains(&self, m: &Mat) -> bool {
        match &self.elements {
            Some(e) => e.binary_search(m).is_ok(),
            None => panic!("membership needs a materialized group"),
        }
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        let sp = &self.space;
        g.iter().all(|a| g.iter().all(|b| sp.mul(a, b) == sp.mul(b, a)))
    }

    /// Element keys, sorted.
    pub fn keys(&self) -> Option<Vec<u64>> {
        self.elements.as_ref().map(|e| {
            let mut k: Vec<u64> = e.iter().map(|m| self.space.key(m)).collect();
            k.sort_unstable();
            k
        })
    }

    pub fn to_cayley(&self, limits: &Limits) -> Result<CayleyGroup> {
        let g = self.materialize(limits)?;
        check_limit("table order", g.order_u64(), limits.table_order)?;
        let sp = &self.space;
        CayleyGroup::from_elements(g.elements.as_ref().unwrap(), |a, b| sp.mul(a, b))
    }

    pub fn to_file(&self) -> MatGroupFile {
        let spec = self.space.gf.spec();
        MatGroupFile {
            field: spec.clone(),
            alpha: self.alpha(),
            generators: self
                .generators
                .iter()
                .map(|m| {
                    m.rows()
                        .into_iter()
                        .map(|r| r.into_iter().map(|c| Entry::Coeffs(spec.decode(c))).collect())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_file(file: &MatGroupFile, limits: &Limits) -> Result<MatGroup> {
        let spec = &file.field;
        let space = GlSpace::new(Arc::new(Gf::new(spec.clone())), file.alpha);
        let gens = file
            .generators
            .iter()
            .map(|rows| {
                if rows.len() != file.alpha || rows.iter().any(|r| r.len() != file.alpha) {
                    return Err(Error::Parse("generator has wrong shape".into()));
                }
                let entries = rows.iter().flatten().map(|e| e.code(spec)).collect::<Result<Vec<_>>>()?;
                space.mat(entries)
            })
            .collect::<Result<Vec<_>>>()?;
        MatGroup::closure(&space, gens, limits)
    }
}

/// A matrix entry on disk: coefficient array, or a plain integer over a prime field.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(u32),
    Coeffs(FieldElem),
}

impl Entry {
    fn code(&self, spec: &FieldSpec) -> Result<u32> {
        match self {
            Entry::Int(v) if spec.k == 1 && *v < spec.t => Ok(*v),
            Entry::Int(_) => Err(Error::Parse("integer entries need a prime field and a reduced value".into())),
            Entry::Coeffs(c) => Ok(spec.code(&spec.elem(c.0.clone())?)),
        }
    }
}

/// JSON shape: `{field: {t, k, modulus}, alpha, generators}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatGroupFile {
    pub field: FieldSpec,
    pub alpha: usize,
    pub generators: Vec<Vec<Vec<Entry>>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(2, 2), BigUint::from(6u32));
        assert_eq!(gl_order(2, 3), BigUint::from(48u32));
        assert_eq!(gl_order(3, 2), BigUint::from(168u32));
        assert_eq!(GlSpace::make(2, 1, 3).unwrap().gl_order(), BigUint::from(168u32));
    }

    #[test]
    fn closure_examples() {
        let limits = Limits::default();
        let sp = GlSpace::make(2, 1, 2).unwrap();
        // companion matrix of x^2 + x + 1
        let c = sp.mat(vec![0, 1, 1, 1]).unwrap();
        assert_eq!(MatGroup::closure(&sp, vec![c], &limits).unwrap().order_u64(), 3);
        assert_eq!(MatGroup::closure(&sp, vec![sp.identity()], &limits).unwrap().order_u64(), 1);
        let sp3 = GlSpace::make(3, 1, 2).unwrap();
        let diags: Vec<Mat> = [[1, 1], [1, 2], [2, 1], [2, 2]].iter().map(|d| sp3.diag(d)).collect();
        let g = MatGroup::closure(&sp3, diags, &limits).unwrap();
        assert_eq!(g.order_u64(), 4);
        assert!(g.is_abelian());
        assert_eq!(
            MatGroup::closure(&sp, vec![sp.mat(vec![1, 1, 1, 1]).unwrap()], &limits).unwrap_err(),
            Error::SingularGenerator
        );
        let small = Limits { mat_elements: 2, ..Limits::default() };
        assert!(matches!(MatGroup::closure(&sp, vec![c_of(&sp)], &small), Err(Error::LimitExceeded { .. })));
    }

    fn c_of(sp: &GlSpace) -> Mat {
        sp.mat(vec![0, 1, 1, 1]).unwrap()
    }

    #[test]
    fn inverse_and_orders() {
        let sp = GlSpace::make(3, 2, 2).unwrap();
        for key in (0..sp.key_space().unwrap()).step_by(97) {
            let m = sp.from_key(key);
            assert_eq!(sp.key(&m), key);
            match sp.inv(&m) {
                Some(mi) => {
                    assert_eq!(sp.mul(&m, &mi), sp.identity());
                    let o = sp.element_order(&m);
                    assert_eq!(sp.pow(&m, &o), sp.identity());
                }
                None => assert!(!sp.is_invertible(&m)),
            }
        }
    }

    #[test]
    fn file_roundtrip_and_integer_entries() {
        let limits = Limits::default();
        let json = r#"{"field":{"t":3,"k":1,"modulus":[0,1]},"alpha":2,"generators":[[[2,0],[0,1]]]}"#;
        let file: MatGroupFile = serde_json::from_str(json).unwrap();
        let g = MatGroup::from_file(&file, &limits).unwrap();
        assert_eq!(g.order_u64(), 2);
        let out = serde_json::to_string(&g.to_file()).unwrap();
        assert_eq!(out, r#"{"field":{"t":3,"k":1,"modulus":[0,1]},"alpha":2,"generators":[[[[2],[0]],[[0],[1]]]]}"#);
        let back = MatGroup::from_file(&serde_json::from_str(&out).unwrap(), &limits).unwrap();
        assert_eq!(back.keys(), g.keys());
    }
}
