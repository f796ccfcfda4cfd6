use num_bigint::BigUint;

use super::{GlSpace, Mat, MatGroup};
use crate::config::Limits;
use crate::error::{check_limit, Error, Result};
use crate::gf::{checked_pow, is_prime, multiplicative_order, prime_divisors};

/// Companion matrix of the monic polynomial with low coefficients `c`
/// (`x^a + c[a-1] x^(a-1) + ... + c[0]`): the matrix of `v -> x v` on
/// `GF(s)[x]/(f)` in the basis `1, x, ..., x^(a-1)`, acting on row vectors.
fn companion(sp: &GlSpace, c: &[u32]) -> Mat {
    let a = sp.alpha();
    let gf = sp.field();
    let mut entries = vec![0u32; a * a];
    for i in 0..a - 1 {
        entries[i * a + i + 1] = 1;
    }
    for (j, &cj) in c.iter().enumerate() {
        entries[(a - 1) * a + j] = gf.neg(cj);
    }
    Mat { alpha: a, entries }
}

/// The least primitive polynomial of degree `alpha` over `GF(s)`, as low
/// coefficients, with its companion matrix. Candidates run in the same order
/// as field moduli: highest non-leading coefficient first.
///
/// A companion matrix of order `s^alpha - 1` forces the polynomial to be
/// irreducible, since a reducible quotient ring has fewer units.
pub fn primitive_polynomial(sp: &GlSpace, limits: &Limits) -> Result<(Vec<u32>, Mat)> {
    let s = sp.s() as u64;
    let a = sp.alpha();
    let size = checked_pow(s, a as u32).unwrap_or(u64::MAX);
    check_limit("s^alpha", size, limits.field_size)?;
    let n = size - 1;
    let maximal_divisors: Vec<u64> = prime_divisors(n).into_iter().map(|p| n / p).collect();
    let id = sp.identity();
    for idx in 0..size {
        // digits of idx, most significant is c[a-1]
        let mut c = vec![0u32; a];
        let mut rest = idx;
        for slot in c.iter_mut() {
            *slot = (rest % s) as u32;
            rest /= s;
        }
        if c[0] == 0 {
            continue;
        }
        let m = companion(sp, &c);
        if sp.pow_u64(&m, n) == id && maximal_divisors.iter().all(|&e| sp.pow_u64(&m, e) != id) {
            return Ok((c, m));
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

/// Generator of the Singer cycle of `GL(alpha, s)`.
pub fn singer_generator(sp: &GlSpace, limits: &Limits) -> Result<Mat> {
    Ok(primitive_polynomial(sp, limits)?.1)
}

/// Cyclic subgroup of order `s^alpha - 1` acting regularly on nonzero vectors.
pub fn singer_subgroup(sp: &GlSpace, limits: &Limits) -> Result<MatGroup> {
    let s = sp.s() as u64;
    let size = checked_pow(s, sp.alpha() as u32).unwrap_or(u64::MAX);
    check_limit("singer order", size - 1, limits.mat_elements)?;
    let g = singer_generator(sp, limits)?;
    MatGroup::closure(sp, vec![g], limits)
}

/// Block-diagonal `(C_r)^k` from copies of the order-`r` subgroup of the
/// Singer cycle of `GL(d, s)`, `d = ord_r(s)`, `k = floor(alpha / d)`, padded
/// with an identity block. `None` when `d > alpha`.
pub fn maximal_ar_subgroup(sp: &GlSpace, r: u64, limits: &Limits) -> Result<Option<MatGroup>> {
    if !is_prime(r) {
        return Err(Error::NotPrime(r));
    }
    if r == sp.field().characteristic() as u64 {
        return Err(Error::CharacteristicConflict(r));
    }
    let s = sp.s() as u64;
    let d = multiplicative_order(s % r, r)? as usize;
    let k = sp.alpha() / d;
    if k == 0 {
        return Ok(None);
    }
    let small = GlSpace::new(sp.field_arc(), d);
    let sd = checked_pow(s, d as u32).expect("s^d fits");
    let block = small.pow_u64(&singer_generator(&small, limits)?, (sd - 1) / r);
    let gens: Vec<Mat> = (0..k).map(|j| sp.embed(&block, j * d)).collect();
    let order = BigUint::from(r).pow(k as u32);
    let group = match u64::try_from(&order) {
        Ok(o) if o <= limits.mat_elements => MatGroup::closure(sp, gens, limits)?,
        _ => MatGroup::with_order(sp, gens, order),
    };
    Ok(Some(group))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgrp::is_irreducible;

    #[test]
    fn singer_orders() {
        let limits = Limits::default();
        for (t, k, a, order) in
            [(2, 1, 2, 3u64), (3, 1, 2, 8), (2, 1, 3, 7), (2, 2, 2, 15), (5, 1, 1, 4), (2, 1, 4, 15)]
        {
            let sp = GlSpace::make(t, k, a).unwrap();
            let s = singer_subgroup(&sp, &limits).unwrap();
            assert_eq!(s.order_u64(), order, "GL({a}, {t}^{k})");
            assert_eq!(s.generators().len(), 1);
            assert!(is_irreducible(&s, &limits).unwrap());
        }
    }

    #[test]
    fn ar_examples() {
        let limits = Limits::default();
        let sp = GlSpace::make(2, 1, 2).unwrap();
        let g = maximal_ar_subgroup(&sp, 3, &limits).unwrap().unwrap();
        assert_eq!(g.order_u64(), 3);
        assert!(is_irreducible(&g, &limits).unwrap());

        let sp = GlSpace::make(3, 1, 2).unwrap();
        let g = maximal_ar_subgroup(&sp, 2, &limits).unwrap().unwrap();
        assert_eq!(g.order_u64(), 4);
        assert!(g.is_abelian());
        assert!(g.elements().unwrap().iter().all(|m| m.get(0, 1) == 0 && m.get(1, 0) == 0));

        let sp = GlSpace::make(2, 1, 3).unwrap();
        let g = maximal_ar_subgroup(&sp, 3, &limits).unwrap().unwrap();
        assert_eq!(g.order_u64(), 3);
        assert!(!is_irreducible(&g, &limits).unwrap());
        let m = &g.generators()[0];
        assert_eq!((m.get(2, 2), m.get(0, 2), m.get(2, 0)), (1, 0, 0));

        assert_eq!(maximal_ar_subgroup(&sp, 2, &limits).unwrap_err(), Error::CharacteristicConflict(2));
        // 7 | 2^3 - 1 so d = 3 > 2
        let sp = GlSpace::make(2, 1, 2).unwrap();
        assert!(maximal_ar_subgroup(&sp, 7, &limits).unwrap().is_none());
    }
}
