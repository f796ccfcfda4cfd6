use aqar_core::bounds::{compare_by_intervals, compare_count, compare_exact, LogBound, Verdict};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Pow};
use proptest::prelude::*;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `n <= b1^(a1/d) * b2^(a2/d)` decided by raising both sides to the `d`th power.
fn oracle(n: u64, b1: u64, a1: u32, b2: u64, a2: u32, d: u32) -> Verdict {
    let lhs = BigUint::from(n).pow(d);
    let rhs = BigUint::from(b1).pow(a1) * BigUint::from(b2).pow(a2);
    if lhs <= rhs {
        Verdict::Le
    } else {
        Verdict::Gt
    }
}

proptest! {
    #[test]
    fn products_of_roots(
        n in 0u64..5000,
        b1 in prop::sample::select(vec![2u64, 3, 5, 6, 7, 10, 12]),
        b2 in prop::sample::select(vec![3u64, 4, 5, 11, 13]),
        a1 in 0u32..14,
        a2 in 0u32..6,
        d in 1u32..5,
    ) {
        let bound = LogBound::log(b1, rat(a1.into(), d.into())).unwrap()
            .plus(LogBound::log(b2, rat(a2.into(), d.into())).unwrap());
        let want = oracle(n, b1, a1, b2, a2, d);
        let n = BigUint::from(n);
        prop_assert_eq!(compare_count(&n, &bound), want);
        prop_assert_eq!(compare_exact(&n, &bound), want);
        if let Some(v) = compare_by_intervals(&n, &bound) {
            prop_assert_eq!(v, want);
        }
    }

    #[test]
    fn negative_exponents(n in 0u64..50, b in 2u64..20, a in 1u32..6, c in 0u32..24) {
        // n <= 2^c / b^a  iff  n * b^a <= 2^c
        let bound = LogBound::constant(rat(c.into(), 1)).plus(LogBound::log(b, rat(-i64::from(a), 1)).unwrap());
        let want = if BigUint::from(n) * BigUint::from(b).pow(a) <= BigUint::one() << c {
            Verdict::Le
        } else {
            Verdict::Gt
        };
        prop_assert_eq!(compare_count(&BigUint::from(n), &bound), want);
    }

    #[test]
    fn enclosure_contains_value(m in 1u64..100_000, b in 2u64..50, k in 1u32..4) {
        // log2(b^k) = k log2 b, so the enclosure of b^k must straddle k times that of b.
        let bound = LogBound::log(b, rat(k.into(), 1)).unwrap();
        let (lo, hi) = bound.log2_interval(64);
        prop_assert!(lo <= hi);
        let exact = BigUint::from(b).pow(k);
        prop_assert_eq!(bound.exact_value(), Some(exact.clone()));
        let below = compare_count(&exact, &bound);
        let above = compare_count(&(exact + BigUint::from(m)), &bound);
        prop_assert_eq!(below, Verdict::Le);
        prop_assert_eq!(above, Verdict::Gt);
    }
}
