//! Exact arithmetic in GF(t^k) and the elementary number theory around it.
//!
//! Two representations live here. [`FieldSpec`] / [`FieldElem`] do
//! polynomial arithmetic modulo the defining polynomial and are the
//! reference. [`Gf`] packs elements into integer codes and answers
//! multiplication from log/antilog tables; the matrix code runs on it.

use num_bigint::BigUint;

use serde::{Deserialize, Serialize};

use crate::config::Limits;
use crate::error::{check_limit, Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division, ascending, with multiplicities.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Exponent of the prime `p` in `n`.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut e = 0;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

/// Least `e >= 1` with `a^e = 1 (mod m)`, by direct iteration.
pub fn multiplicative_order(a: u64, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::BadModulus(m));
    }
    let a = a % m;
    if gcd(a, m) != 1 {
        return Err(Error::NotCoprime { a, m });
    }
    let mut x = a;
    let mut e = 1;
    while x != 1 % m {
        x = ((x as u128 * a as u128) % m as u128) as u64;
        e += 1;
    }
    Ok(e)
}

/// Exact `b^e` as a `u64`, or `None` on overflow.
pub fn checked_pow(b: u64, e: u32) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..e {
        acc = acc.checked_mul(b)?;
    }
    Some(acc)
}

/// The field GF(t^k) = GF(t)[x] / (modulus).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFieldSpec")]
pub struct FieldSpec {
    pub t: u32,
    pub k: u32,
    /// Ascending coefficients `c0..=ck`, monic.
    pub modulus: Vec<u32>,
}

#[derive(Deserialize)]
struct RawFieldSpec {
    t: u32,
    k: u32,
    modulus: Vec<u32>,
}

impl TryFrom<RawFieldSpec> for FieldSpec {
    type Error = Error;

    fn try_from(raw: RawFieldSpec) -> Result<Self> {
        let spec = FieldSpec::from_modulus(raw.t, raw.modulus)?;
        if spec.k != raw.k {
            return Err(Error::Parse(format!("k = {} but modulus has degree {}", raw.k, spec.k)));
        }
        Ok(spec)
    }
}

/// Coefficients `c0..c_{k-1}` in the polynomial basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElem(pub Vec<u32>);

impl FieldSpec {
    /// Canonical GF(t^k) under the default size limit.
    pub fn make(t: u32, k: u32) -> Result<Self> {
        Self::make_with_limits(t, k, &Limits::default())
    }

    /// Canonical GF(t^k): the defining polynomial is the least monic
    /// irreducible of degree k when coefficient tuples are read from the
    /// highest degree down. Degree one gives modulus `x`.
    pub fn make_with_limits(t: u32, k: u32, limits: &Limits) -> Result<Self> {
        if !is_prime(t as u64) {
            return Err(Error::NotPrime(t as u64));
        }
        if k == 0 {
            return Err(Error::InvalidParams("field degree must be positive".into()));
        }
        let size = checked_pow(t as u64, k).unwrap_or(u64::MAX);
        check_limit("field size", size, limits.field_size)?;
        // Lower coefficients c_{k-1}..c_0 as a base-t counter with c_{k-1}
        // most significant; the counter value orders the candidates.
        for code in 0..size {
            let mut modulus = vec![0u32; k as usize + 1];
            modulus[k as usize] = 1;
            let mut rest = code;
            for c in &mut modulus[..k as usize] {
                *c = (rest % t as u64) as u32;
                rest /= t as u64;
            }
            if is_irreducible_poly(t, &modulus) {
                return Ok(FieldSpec { t, k, modulus });
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn from_modulus(t: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(t as u64) {
            return Err(Error::NotPrime(t as u64));
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::Parse("modulus must be monic of positive degree".into()));
        }
        if modulus.iter().any(|&c| c >= t) {
            return Err(Error::Parse("modulus coefficient out of range".into()));
        }
        if !is_irreducible_poly(t, &modulus) {
            return Err(Error::Parse("modulus is reducible".into()));
        }
        let k = (modulus.len() - 1) as u32;
        Ok(FieldSpec { t, k, modulus })
    }

    pub fn size(&self) -> u64 {
        checked_pow(self.t as u64, self.k).expect("field size fits u64")
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(vec![0; self.k as usize])
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(1)
    }

    /// The class of `x`; equals the residue 0 for prime fields.
    pub fn x(&self) -> FieldElem {
        self.reduce(vec![0, 1])
    }

    pub fn from_int(&self, v: u32) -> FieldElem {
        let mut c = vec![0; self.k as usize];
        c[0] = v % self.t;
        FieldElem(c)
    }

    pub fn elem(&self, coeffs: Vec<u32>) -> Result<FieldElem> {
        if coeffs.len() != self.k as usize || coeffs.iter().any(|&c| c >= self.t) {
            return Err(Error::FieldMismatch);
        }
        Ok(FieldElem(coeffs))
    }

    /// Integer code `sum c_i t^i`.
    pub fn code(&self, x: &FieldElem) -> u32 {
        x.0.iter().rev().fold(0u32, |acc, &c| acc * self.t + c)
    }

    pub fn decode(&self, mut code: u32) -> FieldElem {
        let mut c = vec![0; self.k as usize];
        for slot in c.iter_mut() {
            *slot = code % self.t;
            code /= self.t;
        }
        FieldElem(c)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.size() as u32).map(move |c| self.decode(c))
    }

    fn check(&self, x: &FieldElem) -> Result<()> {
        if x.0.len() != self.k as usize || x.0.iter().any(|&c| c >= self.t) {
            Err(Error::FieldMismatch)
        } else {
            Ok(())
        }
    }

    pub fn is_zero(&self, x: &FieldElem) -> bool {
        x.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(FieldElem(a.0.iter().zip(&b.0).map(|(x, y)| (x + y) % self.t).collect()))
    }

    pub fn neg(&self, a: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        Ok(FieldElem(a.0.iter().map(|&x| (self.t - x) % self.t).collect()))
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        self.check(b)?;
        let t = self.t as u64;
        let mut prod = vec![0u64; 2 * self.k as usize];
        for (i, &x) in a.0.iter().enumerate() {
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % t;
            }
        }
        Ok(self.reduce(prod.into_iter().map(|c| c as u32).collect()))
    }

    /// Reduce an arbitrary coefficient vector modulo the defining polynomial.
    fn reduce(&self, mut p: Vec<u32>) -> FieldElem {
        let k = self.k as usize;
        let t = self.t;
        for c in p.iter_mut() {
            *c %= t;
        }
        while p.len() > k {
            let top = p.pop().unwrap();
            if top != 0 {
                let shift = p.len() - k;
                for (i, &m) in self.modulus[..k].iter().enumerate() {
                    let sub = (top as u64 * m as u64 % t as u64) as u32;
                    p[shift + i] = (p[shift + i] + t - sub) % t;
                }
            }
        }
        p.resize(k, 0);
        FieldElem(p)
    }

    pub fn pow(&self, a: &FieldElem, e: &BigUint) -> Result<FieldElem> {
        self.check(a)?;
        let mut acc = self.one();
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = self.mul(&acc, &acc)?;
            if e.bit(i) {
                acc = self.mul(&acc, a)?;
            }
        }
        Ok(acc)
    }

    pub fn pow_u64(&self, a: &FieldElem, e: u64) -> Result<FieldElem> {
        self.pow(a, &BigUint::from(e))
    }

    /// Inverse as `a^(s-2)`.
    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        self.pow_u64(a, self.size() - 2)
    }

    pub fn element_order(&self, a: &FieldElem) -> Result<u64> {
        self.check(a)?;
        if self.is_zero(a) {
            return Err(Error::ZeroElement);
        }
        let one = self.one();
        let mut order = self.size() - 1;
        for (p, _) in factorize(order) {
            while order.is_multiple_of(p) && self.pow_u64(a, order / p)? == one {
                order /= p;
            }
        }
        Ok(order)
    }
}

/// Polynomial remainder over GF(t); both inputs ascending, `divisor` monic.
fn poly_rem(t: u32, dividend: &[u32], divisor: &[u32]) -> Vec<u32> {
    let mut r: Vec<u32> = dividend.to_vec();
    let dd = divisor.len() - 1;
    while r.len() > dd {
        let top = r.pop().unwrap();
        if top != 0 {
            let shift = r.len() - dd;
            for i in 0..dd {
                let sub = (top as u64 * divisor[i] as u64 % t as u64) as u32;
                r[shift + i] = (r[shift + i] + t - sub) % t;
            }
        }
    }
    r
}

/// Irreducibility of a monic polynomial over GF(t) by trial division with
/// every monic polynomial of degree at most half its degree.
pub fn is_irreducible_poly(t: u32, modulus: &[u32]) -> bool {
    let k = modulus.len() - 1;
    if k == 1 {
        return true;
    }
    for d in 1..=k / 2 {
        let count = checked_pow(t as u64, d as u32).expect("desk-scale degree");
        for code in 0..count {
            let mut f = vec![0u32; d + 1];
            f[d] = 1;
            let mut rest = code;
            for c in f.iter_mut().take(d) {
                *c = (rest % t as u64) as u32;
                rest /= t as u64;
            }
            if poly_rem(t, modulus, &f).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// GF(t^k) with elements as integer codes (see [`FieldSpec::code`]) and
/// table-driven arithmetic.
#[derive(Debug, Clone)]
pub struct Gf {
    spec: FieldSpec,
    size: u32,
    /// `exp[i] = g^i` for a fixed primitive element g, `i < size - 1`.
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Vec<u32>,
    neg: Vec<u32>,
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}
impl Eq for Gf {}

/// Addition tables are kept only below this size; larger fields add digitwise.
const ADD_TABLE_MAX: u32 = 256;

impl Gf {
    pub fn new(spec: FieldSpec) -> Self {
        let size = spec.size() as u32;
        let t = spec.t;
        let primitive = (1..size)
            .map(|c| spec.decode(c))
            .find(|x| spec.element_order(x).unwrap() == (size - 1) as u64)
            .expect("multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(size as usize - 1);
        let mut log = vec![u32::MAX; size as usize];
        let mut cur = spec.one();
        for i in 0..size - 1 {
            let c = spec.code(&cur);
            exp.push(c);
            log[c as usize] = i;
            cur = spec.mul(&cur, &primitive).unwrap();
        }
        let neg: Vec<u32> = (0..size).map(|c| spec.code(&spec.neg(&spec.decode(c)).unwrap())).collect();
        let mut gf = Gf { spec, size, exp, log, add: Vec::new(), neg };
        if size <= ADD_TABLE_MAX {
            let mut add = vec![0; (size * size) as usize];
            for a in 0..size {
                for b in 0..size {
                    add[(a * size + b) as usize] = gf.add_digits(a, b);
                }
            }
            gf.add = add;
        }
        let _ = t;
        gf
    }

    pub fn make(t: u32, k: u32) -> Result<Self> {
        Ok(Gf::new(FieldSpec::make(t, k)?))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.t
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let t = self.spec.t;
        let (mut out, mut place) = (0, 1);
        while a > 0 || b > 0 {
            out += ((a % t + b % t) % t) * place;
            place *= t;
            a /= t;
            b /= t;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.add.is_empty() {
            self.add_digits(a, b)
        } else {
            self.add[(a * self.size + b) as usize]
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.size - 1;
        let l = (self.log[a as usize] + self.log[b as usize]) % n;
        self.exp[l as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.size - 1;
        Ok(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.size - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn multiplicative_order_examples() {
        assert_eq!(multiplicative_order(2, 3).unwrap(), 2);
        assert_eq!(multiplicative_order(3, 2).unwrap(), 1);
        assert_eq!(multiplicative_order(2, 7).unwrap(), 3);
        assert_eq!(multiplicative_order(2, 5).unwrap(), 4);
        assert_eq!(multiplicative_order(4, 6), Err(Error::NotCoprime { a: 4, m: 6 }));
        assert_eq!(multiplicative_order(3, 1), Err(Error::BadModulus(1)));
    }

    #[test]
    fn canonical_moduli() {
        assert_eq!(FieldSpec::make(2, 1).unwrap().modulus, vec![0, 1]);
        assert_eq!(FieldSpec::make(2, 2).unwrap().modulus, vec![1, 1, 1]);
        assert_eq!(FieldSpec::make(3, 2).unwrap().modulus, vec![1, 0, 1]);
        // x^3 + x + 1 precedes x^3 + x^2 + 1 in high-to-low order.
        assert_eq!(FieldSpec::make(2, 3).unwrap().modulus, vec![1, 1, 0, 1]);
        assert_eq!(FieldSpec::make(4, 1), Err(Error::NotPrime(4)));
        assert!(matches!(FieldSpec::make(2, 20), Err(Error::LimitExceeded { .. })));
    }

    /// Independent scan: the first monic quadratic over GF(3) without a root.
    #[test]
    fn gf9_modulus_matches_root_scan() {
        let mut found = None;
        'outer: for c1 in 0..3u32 {
            for c0 in 0..3u32 {
                if (0..3u32).all(|x| (x * x + c1 * x + c0) % 3 != 0) {
                    found = Some(vec![c0, c1, 1]);
                    break 'outer;
                }
            }
        }
        assert_eq!(FieldSpec::make(3, 2).unwrap().modulus, found.unwrap());
    }

    #[test]
    fn arithmetic_examples() {
        let f4 = FieldSpec::make(2, 2).unwrap();
        let x = f4.x();
        assert_eq!(f4.mul(&x, &x).unwrap(), FieldElem(vec![1, 1]));
        assert_eq!(f4.pow_u64(&x, 3).unwrap(), f4.one());
        let f3 = FieldSpec::make(3, 1).unwrap();
        assert_eq!(f3.inv(&f3.from_int(2)).unwrap(), f3.from_int(2));
        assert_eq!(f3.inv(&f3.zero()), Err(Error::DivisionByZero));
        assert_eq!(f3.add(&f3.one(), &x), Err(Error::FieldMismatch));
    }

    #[test]
    fn element_order_examples() {
        let f4 = FieldSpec::make(2, 2).unwrap();
        assert_eq!(f4.element_order(&f4.x()).unwrap(), 3);
        assert_eq!(f4.element_order(&f4.one()).unwrap(), 1);
        let f5 = FieldSpec::make(5, 1).unwrap();
        assert_eq!(f5.element_order(&f5.from_int(2)).unwrap(), 4);
        assert_eq!(f5.element_order(&f5.zero()), Err(Error::ZeroElement));
    }

    #[test]
    fn big_exponent_pow() {
        let f9 = FieldSpec::make(3, 2).unwrap();
        let e = BigUint::from(8u32).pow(40) + BigUint::from(3u32);
        let x = f9.decode(5);
        assert_eq!(f9.pow(&x, &e).unwrap(), f9.pow_u64(&x, 3).unwrap());
    }

    #[test]
    fn tables_agree_with_polynomial_arithmetic() {
        for (t, k) in [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2), (5, 2), (7, 1)] {
            let gf = Gf::make(t, k).unwrap();
            let spec = gf.spec().clone();
            for a in 0..gf.size() {
                let ea = spec.decode(a);
                assert_eq!(spec.decode(gf.neg(a)), spec.neg(&ea).unwrap());
                if a != 0 {
                    assert_eq!(spec.decode(gf.inv(a).unwrap()), spec.inv(&ea).unwrap());
                    assert_eq!(spec.decode(gf.pow(a, 7)), spec.pow_u64(&ea, 7).unwrap());
                }
                for b in 0..gf.size() {
                    let eb = spec.decode(b);
                    assert_eq!(spec.decode(gf.add(a, b)), spec.add(&ea, &eb).unwrap());
                    assert_eq!(spec.decode(gf.mul(a, b)), spec.mul(&ea, &eb).unwrap());
                }
            }
        }
    }

    #[test]
    fn serde_shape() {
        let spec = FieldSpec::make(2, 2).unwrap();
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(json, r#"{"t":2,"k":2,"modulus":[1,1,1]}"#);
        let back: FieldSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
        assert!(serde_json::from_str::<FieldSpec>(r#"{"t":2,"k":2,"modulus":[1,0,1]}"#).is_err());
        assert_eq!(serde_json::to_string(&spec.x()).unwrap(), "[0,1]");
    }

    proptest! {
        #[test]
        fn order_is_minimal(a in 1u64..200, m in 2u64..200) {
            prop_assume!(gcd(a, m) == 1);
            let e = multiplicative_order(a, m).unwrap();
            let mut x = 1u64;
            for i in 1..=e {
                x = x * a % m;
                prop_assert_eq!(x == 1 % m, i == e);
            }
        }

        #[test]
        fn inverse_and_lagrange(idx in 0usize..6, code in 1u32..125) {
            let (t, k) = [(2, 3), (3, 2), (5, 3), (7, 2), (2, 4), (11, 1)][idx];
            let spec = FieldSpec::make(t, k).unwrap();
            let x = spec.decode(code % (spec.size() as u32 - 1) + 1);
            prop_assert_eq!(spec.mul(&x, &spec.inv(&x).unwrap()).unwrap(), spec.one());
            prop_assert_eq!((spec.size() - 1) % spec.element_order(&x).unwrap(), 0);
            prop_assert_eq!(FieldSpec::make(t, k).unwrap(), spec);
        }
    }
}
