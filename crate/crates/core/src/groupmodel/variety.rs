//! Membership in product varieties via verbal subgroups.
//!
//! For a prime `u`, the `A_u`-verbal subgroup of `S` is generated by all
//! commutators and `u`-th powers of elements of `S`; it is the smallest
//! normal subgroup of `S` with abelian quotient of exponent dividing `u`.
//! A group lies in `A_{u1} A_{u2} ... A_{uk}` iff peeling the verbal
//! subgroups for `uk`, then `u(k-1)`, ..., then `u2` leaves a subgroup that
//! is abelian of exponent dividing `u1`.

use serde::{Deserialize, Serialize};

use super::{CayleyGroup, Subgroup};
use crate::error::{check_limit, Error, Result};
use crate::gf::{checked_pow, is_prime};

/// Distinct primes `p, q, r` with exponents; the order is `p^alpha q^beta r^gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct VarietyParams {
    pub p: u64,
    pub q: u64,
    pub r: u64,
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    p: u64,
    q: u64,
    r: u64,
    alpha: u32,
    beta: u32,
    gamma: u32,
    #[serde(default, skip_deserializing)]
    n: Option<u64>,
}

impl TryFrom<RawParams> for VarietyParams {
    type Error = Error;
    fn try_from(raw: RawParams) -> Result<Self> {
        VarietyParams::new([raw.p, raw.q, raw.r], [raw.alpha, raw.beta, raw.gamma])
    }
}

impl From<VarietyParams> for RawParams {
    fn from(v: VarietyParams) -> Self {
        RawParams { p: v.p, q: v.q, r: v.r, alpha: v.alpha, beta: v.beta, gamma: v.gamma, n: v.n().ok() }
    }
}

impl VarietyParams {
    pub fn new([p, q, r]: [u64; 3], [alpha, beta, gamma]: [u32; 3]) -> Result<Self> {
        for u in [p, q, r] {
            if !is_prime(u) {
                return Err(Error::NotPrime(u));
            }
        }
        if p == q || p == r {
            return Err(Error::SamePrime(p));
        }
        if q == r {
            return Err(Error::SamePrime(q));
        }
        let v = VarietyParams { p, q, r, alpha, beta, gamma };
        v.n()?;
        Ok(v)
    }

    /// `p^alpha q^beta r^gamma`.
    pub fn n(&self) -> Result<u64> {
        let overflow = || Error::InvalidParams("order overflows u64".into());
        let parts = [(self.p, self.alpha), (self.q, self.beta), (self.r, self.gamma)];
        parts
            .iter()
            .try_fold(1u64, |acc, &(u, e)| checked_pow(u, e).and_then(|x| acc.checked_mul(x)).ok_or_else(overflow))
    }

    pub fn chain(&self) -> [u64; 3] {
        [self.p, self.q, self.r]
    }
}

/// `<[x, y], z^u : x, y, z in S>` for a subgroup `S`.
pub fn verbal_subgroup(g: &CayleyGroup, s: &Subgroup, u: u64) -> Subgroup {
    let mut words: Vec<u32> = Vec::with_capacity(s.order() * (s.order() + 1));
    for &x in s.elements() {
        words.push(g.pow(x, u));
        for &y in s.elements() {
            words.push(g.commutator(x, y));
        }
    }
    words.sort_unstable();
    words.dedup();
    g.generate(&words)
}

/// Smallest normal subgroup with quotient in `A_r`.
pub fn verbal_ar_subgroup(g: &CayleyGroup, r: u64, limit: u64) -> Result<Subgroup> {
    check_limit("table order", g.order() as u64, limit)?;
    Ok(verbal_subgroup(g, &g.whole(), r))
}

fn in_au(g: &CayleyGroup, s: &Subgroup, u: u64) -> bool {
    g.is_abelian_subgroup(s) && u.is_multiple_of(g.exponent_of(s))
}

/// Membership in `A_{chain[0]} A_{chain[1]} ...`, outermost prime last.
pub fn in_variety(g: &CayleyGroup, chain: &[u64], limit: u64) -> Result<bool> {
    check_limit("table order", g.order() as u64, limit)?;
    let (&bottom, upper) = chain.split_first().ok_or_else(|| Error::InvalidParams("empty variety chain".into()))?;
    let mut current = g.whole();
    for &u in upper.iter().rev() {
        current = verbal_subgroup(g, &current, u);
    }
    Ok(in_au(g, &current, bottom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupmodel::tests::{a4, s3};

    #[test]
    fn verbal_examples() {
        let s3 = s3();
        let k = verbal_ar_subgroup(&s3, 2, 400).unwrap();
        assert_eq!(k.order(), 3);
        let a4 = a4();
        let k = verbal_ar_subgroup(&a4, 3, 400).unwrap();
        assert_eq!(k.order(), 4);
        let c6 = CayleyGroup::cyclic(6);
        assert_eq!(verbal_ar_subgroup(&c6, 2, 400).unwrap(), c6.generate(&[2]));
        for (g, r) in [(&s3, 2), (&a4, 3), (&a4, 2), (&c6, 3)] {
            let k = verbal_ar_subgroup(g, r, 400).unwrap();
            assert!(g.is_normal(&k));
            let q = g.quotient(&k).unwrap();
            assert!(q.is_abelian() && r % q.exponent() == 0);
        }
    }

    #[test]
    fn params() {
        let v = VarietyParams::new([3, 2, 5], [1, 1, 0]).unwrap();
        assert_eq!(v.n().unwrap(), 6);
        assert_eq!(VarietyParams::new([3, 3, 5], [1, 1, 1]).unwrap_err(), Error::SamePrime(3));
        assert_eq!(VarietyParams::new([4, 3, 5], [1, 1, 1]).unwrap_err(), Error::NotPrime(4));
        assert!(VarietyParams::new([2, 3, 5], [70, 0, 0]).is_err());
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, r#"{"p":3,"q":2,"r":5,"alpha":1,"beta":1,"gamma":0,"n":6}"#);
        assert_eq!(serde_json::from_str::<VarietyParams>(&json).unwrap(), v);
        assert!(serde_json::from_str::<VarietyParams>(r#"{"p":2,"q":2,"r":5,"alpha":1,"beta":1,"gamma":0}"#).is_err());
    }

    #[test]
    fn membership_examples() {
        assert!(in_variety(&a4(), &[2, 3], 400).unwrap());
        assert!(!in_variety(&s3(), &[2, 3], 400).unwrap());
        assert!(in_variety(&s3(), &[3, 2], 400).unwrap());
        assert!(in_variety(&CayleyGroup::cyclic(30), &[3, 2, 5], 400).unwrap());
        assert!(!in_variety(&CayleyGroup::cyclic(4), &[2], 400).unwrap());
        assert!(in_variety(&CayleyGroup::cyclic(1), &[7], 400).unwrap());
        assert!(in_variety(&CayleyGroup::cyclic(1), &[], 400).is_err());
    }
}
