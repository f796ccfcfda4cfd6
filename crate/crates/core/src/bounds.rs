//! Exact evaluation of the explicit counting and order bounds.
//!
//! A bound is kept symbolically as `2^(c + Σ e_p log2 p)` with rational
//! `c` and `e_p`, bases factored into primes. Comparison against an integer
//! first tries outward-rounded intervals on `log2`, doubling the precision,
//! and settles ties by raising both sides to a common integer power.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{factorize, is_prime};
use crate::groupmodel::VarietyParams;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `constant + Σ coeff · log2(base)`, in canonical form: every base is an
/// odd prime with a nonzero coefficient, powers of two live in `constant`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LogBound {
    constant: BigRational,
    terms: BTreeMap<u64, BigRational>,
}

impl LogBound {
    pub fn constant(c: BigRational) -> Self {
        LogBound { constant: c, terms: BTreeMap::new() }
    }

    /// `coeff · log2(base)`.
    pub fn log(base: u64, coeff: BigRational) -> Result<Self> {
        if base == 0 {
            return Err(Error::InvalidParams("log of zero".into()));
        }
        let mut b = LogBound::default();
        for (p, e) in factorize(base) {
            let c = &coeff * BigRational::from_integer(e.into());
            if p == 2 {
                b.constant += c;
            } else {
                b.add_term(p, c);
            }
        }
        Ok(b)
    }

    fn add_term(&mut self, p: u64, c: BigRational) {
        let e = self.terms.entry(p).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn plus(mut self, other: LogBound) -> Self {
        self.constant += other.constant;
        for (p, c) in other.terms {
            self.add_term(p, c);
        }
        self
    }

    pub fn constant_part(&self) -> &BigRational {
        &self.constant
    }

    pub fn terms(&self) -> &BTreeMap<u64, BigRational> {
        &self.terms
    }

    /// True when the value is a power of two with rational exponent, so
    /// `log2` is known exactly.
    pub fn is_rational_log(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value itself when it is a nonnegative-integer-exponent product.
    pub fn exact_value(&self) -> Option<BigUint> {
        let int_nonneg = |c: &BigRational| c.is_integer() && !c.is_negative();
        if !int_nonneg(&self.constant) || !self.terms.values().all(int_nonneg) {
            return None;
        }
        let mut v = BigUint::one() << self.constant.to_integer().to_usize()?;
        for (p, c) in &self.terms {
            v *= BigUint::from(*p).pow(c.to_integer().to_u32()?);
        }
        Some(v)
    }

    /// Outward-rounded enclosure of the value's `log2`, with each base's
    /// logarithm known to `bits` fractional bits.
    pub fn log2_interval(&self, bits: u32) -> (BigRational, BigRational) {
        let mut lo = self.constant.clone();
        let mut hi = self.constant.clone();
        for (p, c) in &self.terms {
            let (a, b) = log2_enclosure(*p, bits);
            if c.is_positive() {
                lo += c * &a;
                hi += c * &b;
            } else {
                lo += c * &b;
                hi += c * &a;
            }
        }
        (lo, hi)
    }

    /// Common denominator of every exponent.
    fn denominator(&self) -> BigInt {
        self.terms.values().fold(self.constant.denom().clone(), |d, c| d.lcm(c.denom()))
    }
}

impl fmt::Display for LogBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.constant)?;
        for (p, c) in &self.terms {
            write!(f, " + {c}*log2({p})")?;
        }
        Ok(())
    }
}

/// `[j, j+1] / 2^bits` containing `log2(n)`, `n >= 1`.
///
/// Binary digits of the mantissa `n / 2^e` come from repeated squaring; the
/// lower sequence rounds down and the upper sequence rounds up, so each
/// yields a one-sided bound.
pub fn log2_enclosure(n: u64, bits: u32) -> (BigRational, BigRational) {
    assert!(n >= 1);
    let e = 63 - n.leading_zeros() as u64;
    let guard = bits as usize + 64;
    let one = BigUint::one() << guard;
    let two = &one << 1;
    let start = (BigUint::from(n) << guard) >> e;
    let digits = |round_up: bool| -> BigUint {
        let mut x = start.clone();
        let mut acc = BigUint::zero();
        for _ in 0..bits {
            let sq = &x * &x;
            x = &sq >> guard;
            if round_up && (&x << guard) != sq {
                x += 1u32;
            }
            acc <<= 1;
            if x >= two {
                acc += 1u32;
                x = if round_up && x.bit(0) { (x >> 1) + 1u32 } else { x >> 1 };
            }
        }
        acc
    };
    let scale = BigInt::one() << bits as usize;
    let int = BigInt::from(e) * &scale;
    let lo = BigInt::from(digits(false)) + &int;
    let hi = BigInt::from(digits(true)) + &int + 1;
    (BigRational::new(lo, scale.clone()), BigRational::new(hi, scale))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "LE")]
    Le,
    #[serde(rename = "GT")]
    Gt,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Le => "LE",
            Verdict::Gt => "GT",
        })
    }
}

/// Precision ladder for the interval phase; past the top rung the exact
/// comparison takes over.
const PRECISIONS: [u32; 6] = [32, 64, 128, 256, 512, 1024];

/// Whether `count <= 2^bound`.
pub fn compare_count(count: &BigUint, bound: &LogBound) -> Verdict {
    if count.is_zero() {
        return Verdict::Le;
    }
    match compare_by_intervals(count, bound) {
        Some(v) => v,
        None => compare_exact(count, bound),
    }
}

/// Interval phase only; `None` when the enclosures never separate.
pub fn compare_by_intervals(count: &BigUint, bound: &LogBound) -> Option<Verdict> {
    for &bits in &PRECISIONS {
        let (c_lo, c_hi) = log2_big(count, bits);
        let (b_lo, b_hi) = bound.log2_interval(bits);
        if c_hi < b_lo {
            return Some(Verdict::Le);
        }
        if c_lo > b_hi {
            return Some(Verdict::Gt);
        }
    }
    None
}

/// Raises both sides to the common denominator of the exponents and moves
/// negative powers across, leaving a comparison of two integers.
pub fn compare_exact(count: &BigUint, bound: &LogBound) -> Verdict {
    let d = bound.denominator();
    let dz = d.to_u32().expect("exponent denominator fits in u32");
    let mut left = count.pow(dz);
    let mut right = BigUint::one();
    let mut put = |base: u64, c: &BigRational| {
        let e = (c * BigRational::from_integer(d.clone())).to_integer();
        let k = e.abs().to_u32().expect("exponent fits in u32");
        let f = BigUint::from(base).pow(k);
        if e.is_negative() {
            left *= f;
        } else {
            right *= f;
        }
    };
    put(2, &bound.constant);
    for (p, c) in &bound.terms {
        put(*p, c);
    }
    match left.cmp(&right) {
        Ordering::Greater => Verdict::Gt,
        _ => Verdict::Le,
    }
}

fn log2_big(n: &BigUint, bits: u32) -> (BigRational, BigRational) {
    match n.to_u64() {
        Some(x) => log2_enclosure(x, bits),
        None => {
            // split off a power of two so the rest fits in a u64
            let shift = n.bits() - 63;
            let top = (n >> shift).to_u64().unwrap();
            let (lo, _) = log2_enclosure(top, bits);
            let (_, hi) = log2_enclosure(top + 1, bits);
            let s = BigRational::from_integer(shift.into());
            (lo + &s, hi + s)
        }
    }
}

/// `α log2 α`, zero at `α = 0`.
fn a_log_a(alpha: u32) -> Result<LogBound> {
    if alpha == 0 {
        return Ok(LogBound::default());
    }
    LogBound::log(alpha as u64, rat(alpha as i64, 1))
}

/// Upper bound on the number of groups of order `n = p^α q^β r^γ` in
/// `A_p A_q A_r`:
/// `p^{6α²} 2^{α−1+(23/6)α log α+α log 6} (√6)^{(α+γ)β+(α+β)γ+α(α−1)/2} n^{β+γ}`.
pub fn variety_count_bound(params: &VarietyParams) -> Result<LogBound> {
    let VarietyParams { p, alpha, beta, gamma, .. } = *params;
    let (a, b, g) = (alpha as i64, beta as i64, gamma as i64);
    let n = params.n()?;
    let half6 = (a + g) * b + (a + b) * g + a * (a - 1) / 2;
    let a_log_a = a_log_a(alpha)?;
    Ok(LogBound::log(p, rat(6 * a * a, 1))?
        .plus(LogBound::constant(rat(a - 1, 1)))
        .plus(LogBound {
            constant: a_log_a.constant * rat(23, 6),
            terms: a_log_a.terms.into_iter().map(|(p, c)| (p, c * rat(23, 6))).collect(),
        })
        .plus(LogBound::log(6, rat(a, 1))?)
        .plus(LogBound::log(6, rat(half6, 2))?)
        .plus(LogBound::log(n, rat(b + g, 1))?))
}

/// Upper bound on the number of conjugacy classes of soluble A-subgroups
/// of `GL(α, s)`: `s^{5α²} 6^{α(α−1)/4} 2^{α−1+(23/6)α log α+α log 6}`.
pub fn gl_subgroup_count_bound(s: u64, alpha: u32) -> Result<LogBound> {
    if alpha == 0 || s < 2 {
        return Err(Error::InvalidParams(format!("need alpha >= 1 and s >= 2, got alpha={alpha}, s={s}")));
    }
    let a = alpha as i64;
    let al = a_log_a(alpha)?;
    Ok(LogBound::log(s, rat(5 * a * a, 1))?
        .plus(LogBound::log(6, rat(a * (a - 1), 4))?)
        .plus(LogBound::constant(rat(a - 1, 1)))
        .plus(LogBound {
            constant: al.constant * rat(23, 6),
            terms: al.terms.into_iter().map(|(p, c)| (p, c * rat(23, 6))).collect(),
        })
        .plus(LogBound::log(6, rat(a, 1))?))
}

/// Upper bound on the number of transitive soluble A-subgroups of `S_n`:
/// `6^{n(n−1)/4} 2^{(n+2) log n}`.
pub fn transitive_count_bound(n: u64) -> Result<LogBound> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("need n >= 2, got {n}")));
    }
    let n_i = n as i64;
    Ok(LogBound::log(6, rat(n_i * (n_i - 1), 4))?.plus(LogBound::log(n, rat(n_i + 2, 1))?))
}

/// Order bound for an `A_q A_r` subgroup of `GL(α, s)`, `s` a power of a
/// prime other than `q` and `r`: `(√6)^{α−1} d^α` with `d = min(qr, s)`.
pub fn linear_order_bound(alpha: u32, q: u64, r: u64, s: u64) -> Result<LogBound> {
    let t = factorize(s);
    if alpha == 0 || !is_prime(q) || !is_prime(r) || t.len() != 1 {
        return Err(Error::InvalidParams(format!("alpha={alpha}, q={q}, r={r}, s={s}")));
    }
    let t = t[0].0;
    if q == r || q == t || r == t {
        return Err(Error::InvalidParams(format!("q={q}, r={r} and char {t} must be distinct")));
    }
    let a = alpha as i64;
    Ok(LogBound::log(6, rat(a - 1, 2))?.plus(LogBound::log((q * r).min(s), rat(a, 1))?))
}

/// Order bound for a soluble A-subgroup of `S_n`: `(√6)^{n−1}`.
pub fn permutation_order_bound(n: u64) -> Result<LogBound> {
    if n == 0 {
        return Err(Error::InvalidParams("degree 0".into()));
    }
    LogBound::log(6, rat(n as i64 - 1, 2))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Log2Range {
    pub lower: f64,
    pub upper: f64,
}

/// A bound as it appears in reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub formula_id: String,
    pub log2: Log2Range,
    /// Decimal value when the bound is an integer.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub flags: Vec<String>,
}

impl BoundReport {
    pub fn new(formula_id: &str, b: &LogBound) -> Self {
        let (lo, hi) = b.log2_interval(64);
        // nudge outward so f64 rounding cannot pull the endpoints inward
        let lower = lo.to_f64().unwrap_or(f64::NEG_INFINITY);
        let upper = hi.to_f64().unwrap_or(f64::INFINITY);
        BoundReport {
            formula_id: formula_id.to_string(),
            log2: Log2Range { lower: lower.next_down(), upper: upper.next_up() },
            exact: b.exact_value().map(|v| v.to_string()),
            flags: Vec::new(),
        }
    }
}

/// A count checked against a bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub count: String,
    pub bound: BoundReport,
    pub verdict: Verdict,
}

impl BoundCheck {
    pub fn new(formula_id: &str, count: u64, bound: &LogBound) -> Self {
        BoundCheck {
            count: count.to_string(),
            bound: BoundReport::new(formula_id, bound),
            verdict: compare_count(&BigUint::from(count), bound),
        }
    }
}

/// The variety count bound as a report, flagging `α = 0` where the
/// `α log α` term is taken as zero.
pub fn variety_count_report(params: &VarietyParams) -> Result<BoundReport> {
    let mut r = BoundReport::new("variety-count", &variety_count_bound(params)?);
    if params.alpha == 0 {
        r.flags.push("alpha = 0: alpha*log(alpha) taken as 0".into());
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: [u64; 3], e: [u32; 3]) -> VarietyParams {
        VarietyParams::new(p, e).unwrap()
    }

    fn mid(b: &LogBound) -> f64 {
        let (lo, hi) = b.log2_interval(64);
        (lo.to_f64().unwrap() + hi.to_f64().unwrap()) / 2.0
    }

    #[test]
    fn enclosures_contain_log2() {
        for n in [1u64, 2, 3, 5, 6, 7, 10, 1000, 65537, u64::MAX] {
            for bits in [8, 32, 100] {
                let (lo, hi) = log2_enclosure(n, bits);
                assert!(lo < hi);
                assert_eq!(&hi - &lo, BigRational::new(1.into(), BigInt::one() << bits as usize));
                let x = (n as f64).log2();
                assert!(lo.to_f64().unwrap() <= x + 1e-12 && x - 1e-12 <= hi.to_f64().unwrap(), "{n} {bits}");
            }
        }
        // exact powers of two: the lower end is the true value
        let (lo, _) = log2_enclosure(1024, 40);
        assert_eq!(lo, rat(10, 1));
    }

    #[test]
    fn canonical_form_merges_bases() {
        let a = LogBound::log(6, rat(1, 2)).unwrap().plus(LogBound::log(6, rat(1, 2)).unwrap());
        assert_eq!(a.exact_value(), Some(BigUint::from(6u32)));
        let b = LogBound::log(12, rat(1, 1)).unwrap();
        assert_eq!(b.constant_part(), &rat(2, 1));
        assert_eq!(b.terms().keys().copied().collect::<Vec<_>>(), vec![3]);
        let c = LogBound::log(3, rat(1, 1)).unwrap().plus(LogBound::log(3, rat(-1, 1)).unwrap());
        assert!(c.terms().is_empty());
    }

    #[test]
    fn variety_count_examples() {
        let b = variety_count_bound(&params([3, 2, 5], [1, 1, 0])).unwrap();
        assert!((mid(&b) - 15.9722).abs() < 1e-3);
        let b = variety_count_bound(&params([2, 3, 5], [1, 0, 0])).unwrap();
        assert_eq!(b.exact_value(), Some(BigUint::from(384u32)));
        let b = variety_count_bound(&params([2, 3, 5], [0, 0, 0])).unwrap();
        assert_eq!(b.constant_part(), &rat(-1, 1));
        assert!(b.exact_value().is_none());
        let r = variety_count_report(&params([2, 3, 5], [0, 0, 0])).unwrap();
        assert_eq!(r.flags.len(), 1);
    }

    #[test]
    fn gl_and_transitive_examples() {
        let b = transitive_count_bound(4).unwrap();
        assert_eq!(b.exact_value(), Some(BigUint::from(884736u32)));
        let b = gl_subgroup_count_bound(2, 1).unwrap();
        assert_eq!(b.exact_value(), Some(BigUint::from(192u32)));
        let b = transitive_count_bound(2).unwrap();
        assert!((2f64.powf(mid(&b)) - 6f64.sqrt() * 16.0).abs() < 1e-6);
        assert!(transitive_count_bound(1).is_err());
        assert!(gl_subgroup_count_bound(2, 0).is_err());
    }

    #[test]
    fn linear_order_examples() {
        let b = linear_order_bound(1, 2, 3, 7).unwrap();
        assert_eq!(b.exact_value(), Some(BigUint::from(6u32)));
        let b = linear_order_bound(2, 2, 3, 7).unwrap();
        assert!((2f64.powf(mid(&b)) - 6f64.sqrt() * 36.0).abs() < 1e-6);
        let b = linear_order_bound(2, 2, 3, 5).unwrap();
        assert!((2f64.powf(mid(&b)) - 6f64.sqrt() * 25.0).abs() < 1e-6);
        assert!(linear_order_bound(2, 2, 3, 4).is_err());
        assert!(linear_order_bound(2, 2, 3, 6).is_err());
        assert!(linear_order_bound(0, 2, 3, 5).is_err());
    }

    #[test]
    fn compare_examples() {
        let t4 = transitive_count_bound(4).unwrap();
        assert_eq!(compare_count(&BigUint::from(884736u32), &t4), Verdict::Le);
        assert_eq!(compare_count(&BigUint::from(884737u32), &t4), Verdict::Gt);
        // exact powers tie at every precision, so only the exact route decides
        assert_eq!(compare_by_intervals(&BigUint::from(884736u32), &t4), None);
        let a = variety_count_bound(&params([3, 2, 5], [1, 1, 0])).unwrap();
        assert_eq!(compare_count(&BigUint::from(2u32), &a), Verdict::Le);
        assert_eq!(compare_count(&BigUint::zero(), &LogBound::constant(rat(-5, 1))), Verdict::Le);
        // sqrt(6)*16 = 39.19...
        let t2 = transitive_count_bound(2).unwrap();
        assert_eq!(compare_count(&BigUint::from(39u32), &t2), Verdict::Le);
        assert_eq!(compare_count(&BigUint::from(40u32), &t2), Verdict::Gt);
        let half = LogBound::constant(rat(-1, 1));
        assert_eq!(compare_count(&BigUint::one(), &half), Verdict::Gt);
    }

    #[test]
    fn interval_agrees_with_exact() {
        for n in 2..9 {
            let b = transitive_count_bound(n).unwrap();
            for c in [1u64, 7, 100, 5000, 884736, 10_000_000] {
                let c = BigUint::from(c);
                if let Some(v) = compare_by_intervals(&c, &b) {
                    assert_eq!(v, compare_exact(&c, &b));
                }
            }
        }
        for (s, a) in [(2, 1), (2, 2), (3, 2), (7, 3)] {
            let b = gl_subgroup_count_bound(s, a).unwrap();
            for c in [1u64, 3, 192, 193, 1 << 40] {
                let c = BigUint::from(c);
                assert_eq!(compare_count(&c, &b), compare_exact(&c, &b));
            }
        }
    }

    #[test]
    fn monotone_in_beta_and_gamma() {
        for (p, q, r) in [(2, 3, 5), (3, 2, 5), (5, 2, 3), (2, 3, 7)] {
            for a in 0..3 {
                for b in 0..3 {
                    for g in 0..3 {
                        let x = variety_count_bound(&params([p, q, r], [a, b, g])).unwrap();
                        let y = variety_count_bound(&params([p, q, r], [a, b + 1, g])).unwrap();
                        let z = variety_count_bound(&params([p, q, r], [a, b, g + 1])).unwrap();
                        let diff = |u: &LogBound, v: &LogBound| {
                            let (lo, _) = v.clone().plus(negate(u)).log2_interval(64);
                            lo
                        };
                        assert!(diff(&x, &y) >= rat(0, 1), "{p} {q} {r} {a} {b} {g}");
                        assert!(diff(&x, &z) >= rat(0, 1), "{p} {q} {r} {a} {b} {g}");
                    }
                }
            }
        }
    }

    fn negate(b: &LogBound) -> LogBound {
        LogBound { constant: -b.constant.clone(), terms: b.terms.iter().map(|(p, c)| (*p, -c.clone())).collect() }
    }
}
