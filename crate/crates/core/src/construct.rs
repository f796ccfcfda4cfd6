//! Primitive groups in `A_q A_r` and semidirect products `V ⋊ H`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::config::{Config, Limits};
use crate::error::{check_limit, Error, Result};
use crate::gf::{checked_pow, is_prime, multiplicative_order, valuation, Gf};
use crate::groupmodel::CayleyGroup;
use crate::matgrp::{singer_generator, GlSpace, Mat};
use crate::permgrp::{self, primitivity, Perm, PermGroup, Primitivity};
use crate::report::Check;

/// The three shapes a primitive group in `A_q A_r` can take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrimitiveCase {
    /// Cyclic of prime order `r` on `r` points.
    CyclicR,
    /// Cyclic of prime order `q` on `q` points.
    CyclicQ,
    /// `(C_q)^beta ⋊ C_r` on `q^beta` points, `beta = ord_r(q)`.
    AffineQR,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitiveSpec {
    pub case: PrimitiveCase,
    pub q: u64,
    pub r: u64,
    /// Zero outside the affine case.
    pub beta: u32,
    pub n: u64,
}

impl PrimitiveSpec {
    pub fn new(q: u64, r: u64, case: PrimitiveCase, limits: &Limits) -> Result<Self> {
        for u in [q, r] {
            if !is_prime(u) {
                return Err(Error::NotPrime(u));
            }
        }
        if q == r {
            return Err(Error::SamePrime(q));
        }
        let (beta, n) = match case {
            PrimitiveCase::CyclicR => (0, r),
            PrimitiveCase::CyclicQ => (0, q),
            PrimitiveCase::AffineQR => {
                let beta = multiplicative_order(q % r, r)? as u32;
                (beta, checked_pow(q, beta).unwrap_or(u64::MAX))
            }
        };
        check_limit("degree", n, limits.construct_degree as u64)?;
        Ok(PrimitiveSpec { case, q, r, beta, n })
    }

    pub fn order(&self) -> u64 {
        match self.case {
            PrimitiveCase::AffineQR => self.n * self.r,
            _ => self.n,
        }
    }
}

/// Vector of `F_u^dim` with the first coordinate most significant.
pub fn vector_of(code: u64, u: u64, dim: usize) -> Vec<u32> {
    let mut v = vec![0u32; dim];
    let mut rest = code;
    for slot in v.iter_mut().rev() {
        *slot = (rest % u) as u32;
        rest /= u;
    }
    v
}

pub fn code_of(v: &[u32], u: u64) -> u64 {
    v.iter().fold(0, |acc, &c| acc * u + c as u64)
}

fn cycle_on(n: usize) -> Perm {
    Perm::from_images((0..n as u32).map(|i| (i + 1) % n as u32).collect()).unwrap()
}

/// Builds the canonical copy inside `S_n`. Affine points are the vectors
/// of `F_q^beta` in lexicographic order; generators are the coordinate
/// translations and the order-`r` power of a Singer cycle.
pub fn primitive_aqar_group(
    q: u64,
    r: u64,
    case: PrimitiveCase,
    limits: &Limits,
) -> Result<(PrimitiveSpec, PermGroup)> {
    let spec = PrimitiveSpec::new(q, r, case, limits)?;
    let n = spec.n as usize;
    let group = match case {
        PrimitiveCase::CyclicR | PrimitiveCase::CyclicQ => PermGroup::new(n, vec![cycle_on(n)])?,
        PrimitiveCase::AffineQR => {
            let beta = spec.beta as usize;
            let sp = GlSpace::new(Arc::new(Gf::make(q as u32, 1)?), beta);
            let singer = singer_generator(&sp, limits)?;
            let linear = sp.pow_u64(&singer, (spec.n - 1) / r);
            let points: Vec<Vec<u32>> = (0..spec.n).map(|c| vector_of(c, q, beta)).collect();
            let mut gens = Vec::with_capacity(beta + 1);
            for j in 0..beta {
                let images = points
                    .iter()
                    .map(|v| {
                        let mut w = v.clone();
                        w[j] = ((w[j] as u64 + 1) % q) as u32;
                        code_of(&w, q) as u32
                    })
                    .collect();
                gens.push(Perm::from_images(images)?);
            }
            let images = points.iter().map(|v| code_of(&sp.apply(v, &linear), q) as u32).collect();
            gens.push(Perm::from_images(images)?);
            PermGroup::new(n, gens)?
        }
    };
    Ok((spec, group))
}

/// Structural checks for a primitive group in `A_q A_r`.
#[derive(Debug, Clone, Serialize)]
pub struct StructureReport {
    pub case: PrimitiveCase,
    pub n: u64,
    pub order: u64,
    pub beta: u32,
    pub checks: Vec<Check>,
    /// Observations that contradict a stronger printed statement without
    /// failing any check.
    pub flags: Vec<String>,
}

impl StructureReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn prime_power_exponent(n: u64) -> Option<(u64, u32)> {
    let p = crate::gf::prime_divisors(n);
    (p.len() == 1).then(|| (p[0], valuation(n, p[0])))
}

/// Verifies the structure forced on a primitive group in `A_q A_r`: a
/// unique minimal normal subgroup `M = F(G)` of order `n`, and in the
/// affine case a stabilizer of order `r`, `n = q^beta` with
/// `beta = ord_r(q)`, and `|G| = nr`.
pub fn verify_primitive_structure(g: &PermGroup, q: u64, r: u64, cfg: &Config) -> Result<StructureReport> {
    match primitivity(g) {
        Ok(Primitivity::Primitive) => {}
        _ => return Err(Error::NotPrimitive),
    }
    if !permgrp::in_variety(g, &[q, r])? {
        return Err(Error::NotInVariety(format!("A_{q} A_{r}")));
    }
    let n = g.degree() as u64;
    let order = g.order_u64();
    let mut checks = Vec::new();
    let mut flags = Vec::new();

    let minimal = permgrp::minimal_normal_subgroups(g, cfg)?;
    checks.push(Check::new(
        "unique-minimal-normal",
        minimal.len() == 1,
        format!("{} minimal normal subgroups", minimal.len()),
    ));
    let fitting = permgrp::fitting_subgroup(g, cfg)?;
    if let Some(m) = minimal.first() {
        checks.push(Check::new(
            "minimal-normal-is-fitting",
            m.same_group(&fitting),
            format!("|M| = {}, |F(G)| = {}", m.order(), fitting.order()),
        ));
        let mo = m.order_u64();
        checks.push(Check::new("minimal-normal-order", mo == n, format!("|M| = {mo}, n = {n}")));
        match prime_power_exponent(mo) {
            Some((u, k)) => {
                checks.push(Check::new("minimal-normal-prime-power", k >= 1, format!("|M| = {u}^{k}")));
                if k == 1 {
                    flags.push(format!("|M| = {u}^1: the exponent of |M| is 1, not strictly greater"));
                }
            }
            None => checks.push(Check::new("minimal-normal-prime-power", false, format!("|M| = {mo}"))),
        }
    }

    let case = if order == n {
        if n == r {
            PrimitiveCase::CyclicR
        } else {
            PrimitiveCase::CyclicQ
        }
    } else {
        PrimitiveCase::AffineQR
    };
    let mut beta = 0;
    match case {
        PrimitiveCase::CyclicR | PrimitiveCase::CyclicQ => {
            checks.push(Check::new("cyclic-prime-degree", n == q || n == r, format!("|G| = n = {n}")));
        }
        PrimitiveCase::AffineQR => {
            let stab = g.point_stabilizer(0)?;
            checks.push(Check::new("stabilizer-cyclic-r", stab.order_u64() == r, format!("|G_1| = {}", stab.order())));
            beta = multiplicative_order(q % r, r)? as u32;
            checks.push(Check::new(
                "degree-is-q-to-beta",
                checked_pow(q, beta) == Some(n),
                format!("beta = ord_{r}({q}) = {beta}, n = {n}"),
            ));
            checks.push(Check::new("order-is-nr", order == n * r, format!("|G| = {order}, nr = {}", n * r)));
            checks.push(Check::new("nr-below-n-squared", n * r < n * n, format!("nr = {}, n^2 = {}", n * r, n * n)));
        }
    }
    Ok(StructureReport { case, n, order, beta, checks, flags })
}

/// `F_u^dim ⋊ H` with `h` acting on row vectors by `action[h]`; elements
/// are `(h, v)` at index `h * u^dim + code(v)` and multiply as
/// `(h1, v1)(h2, v2) = (h1 h2, v1 M(h2) + v2)`.
pub fn semidirect_product(
    u: u32,
    dim: usize,
    action: &[Mat],
    acting: &CayleyGroup,
    limits: &Limits,
) -> Result<CayleyGroup> {
    let h_order = acting.order();
    if action.len() != h_order {
        return Err(Error::NotHomomorphism(format!("{} matrices for {h_order} elements", action.len())));
    }
    if dim == 0 {
        return Ok(acting.clone());
    }
    let vsize = checked_pow(u as u64, dim as u32).unwrap_or(u64::MAX);
    check_limit("table order", vsize.saturating_mul(h_order as u64), limits.table_order)?;
    let vsize = vsize as usize;
    let sp = GlSpace::new(Arc::new(Gf::make(u, 1)?), dim);
    for (h, m) in action.iter().enumerate() {
        if m.alpha() != dim || !sp.is_invertible(m) {
            return Err(Error::NotHomomorphism(format!("image of element {h} is not in GL({dim}, {u})")));
        }
    }
    for a in 0..h_order as u32 {
        for b in 0..h_order as u32 {
            let ab = acting.mul(a, b) as usize;
            if action[ab] != sp.mul(&action[a as usize], &action[b as usize]) {
                return Err(Error::NotHomomorphism(format!("M({a}*{b}) != M({a}) M({b})")));
            }
        }
    }

    let vectors: Vec<Vec<u32>> = (0..vsize as u64).map(|c| vector_of(c, u as u64, dim)).collect();
    let act: Vec<Vec<u32>> =
        action.iter().map(|m| vectors.iter().map(|v| code_of(&sp.apply(v, m), u as u64) as u32).collect()).collect();
    let add: Vec<u32> = vectors
        .iter()
        .flat_map(|a| {
            vectors.iter().map(move |b| {
                let s: Vec<u32> = a.iter().zip(b).map(|(x, y)| (x + y) % u).collect();
                code_of(&s, u as u64) as u32
            })
        })
        .collect();

    let n = h_order * vsize;
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        let (h1, v1) = (x / vsize, x % vsize);
        for y in 0..n {
            let (h2, v2) = (y / vsize, y % vsize);
            let h = acting.mul(h1 as u32, h2 as u32) as usize;
            let v = add[act[h2][v1] as usize * vsize + v2] as usize;
            table.push((h * vsize + v) as u32);
        }
    }
    CayleyGroup::from_table(n, table, acting.identity() * vsize as u32)
}
