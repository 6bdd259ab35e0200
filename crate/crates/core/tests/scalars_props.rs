mod common;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use sl2jsr::scalars::{chebyshev, chebyshev_fast, Poly, QuadExt, Rational, RootIsolation};

/// `floor(x * 10^100)` up to one unit, from integer square roots.
fn decimal(p: i64, q: i64, r: i64, d: i64) -> BigInt {
    let scale = BigInt::from(10).pow(100);
    let surd = (BigInt::from(q) * BigInt::from(q) * BigInt::from(d) * &scale * &scale).sqrt();
    let surd = if q < 0 { -surd } else { surd };
    (BigInt::from(p) * &scale + surd).div_floor(&BigInt::from(r))
}

fn quad_parts() -> impl Strategy<Value = (i64, i64, i64, i64)> {
    (-50i64..50, -50i64..50, 1i64..20, prop::sample::select(vec![1i64, 2, 3, 5, 6, 7]))
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn quad_order_matches_decimals(x in quad_parts(), y in quad_parts()) {
        let qx = QuadExt::new(x.0.into(), x.1.into(), x.2.into(), x.3.into()).unwrap();
        let qy = QuadExt::new(y.0.into(), y.1.into(), y.2.into(), y.3.into()).unwrap();
        let (dx, dy) = (decimal(x.0, x.1, x.2, x.3), decimal(y.0, y.1, y.2, y.3));
        let gap = &dx - &dy;
        if gap.abs() <= BigInt::from(1) {
            prop_assert_eq!(qx.cmp(&qy), Ordering::Equal);
        } else {
            prop_assert_eq!(qx.cmp(&qy), gap.sign().into_ordering());
        }
    }
}

trait IntoOrdering {
    fn into_ordering(self) -> Ordering;
}

impl IntoOrdering for num_bigint::Sign {
    fn into_ordering(self) -> Ordering {
        match self {
            num_bigint::Sign::Minus => Ordering::Less,
            num_bigint::Sign::NoSign => Ordering::Equal,
            num_bigint::Sign::Plus => Ordering::Greater,
        }
    }
}

proptest! {
    #[test]
    fn chebyshev_is_trace_of_power(m in common::sl2z(8), k in 0u64..=30) {
        let mut power = sl2jsr::matrix::Mat2::identity();
        for _ in 0..k {
            power = power.mul(&m);
        }
        prop_assert_eq!(chebyshev(k, &m.tr()), power.tr());
        prop_assert_eq!(chebyshev_fast(k, &m.tr()), power.tr());
    }

    #[test]
    fn chebyshev_doubling(n in -100i64..100, d in 1i64..30, k in 0u64..20) {
        let t = q(n, d);
        let tk = chebyshev(k, &t);
        prop_assert_eq!(chebyshev(2 * k, &t), &tk * &tk - q(2, 1));
        let s = QuadExt::new(n.into(), 1.into(), d.into(), 6.into()).unwrap();
        let sk = chebyshev(k, &s);
        prop_assert_eq!(chebyshev(2 * k, &s), sk.clone() * sk.clone() - QuadExt::from(2));
    }

    #[test]
    fn root_isolation_brackets_a_sign_change(
        coeffs in prop::collection::vec(-9i64..=9, 2..=6),
        a in -40i64..40,
        b in -40i64..40,
        bits in 1u32..48,
    ) {
        let p = Poly::from_i64_coeffs(&coeffs);
        let (lo, hi) = (q(a.min(b), 8), q(a.max(b), 8));
        prop_assume!(lo < hi);
        prop_assume!(p.sign_at(&lo) != Ordering::Equal && p.sign_at(&hi) != Ordering::Equal);
        prop_assume!(p.sign_at(&lo) != p.sign_at(&hi));
        let width = Rational::new(1.into(), BigInt::from(2).pow(bits));
        match p.isolate_root(&lo, &hi, &width).unwrap() {
            RootIsolation::Exact(x) => prop_assert!(p.eval(&x).is_zero()),
            RootIsolation::Bracket { lo: l, hi: h } => {
                prop_assert!(lo <= l && h <= hi);
                prop_assert!(&h - &l <= width);
                prop_assert_ne!(p.sign_at(&l), p.sign_at(&h));
                prop_assert!(p.sign_at(&l) != Ordering::Equal && p.sign_at(&h) != Ordering::Equal);
            }
        }
    }
}
