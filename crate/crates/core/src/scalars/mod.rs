//! Exact arithmetic kernel.
//!
//! Every scalar kind used by the crate implements [`Ring`]; the ordered ones
//! ([`BigInt`], [`Rational`], [`QuadExt`]) additionally implement
//! [`RealScalar`], which provides an exact total order and an embedding into
//! [`QuadExt`] so values coming from different kinds can be compared.

mod interval;
mod parse;
mod poly;
mod quad;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use interval::RatInterval;
pub use parse::{parse_quad, parse_rational};
pub use poly::{Poly, RootIsolation};
pub use quad::QuadExt;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("quadratic fields differ: sqrt({0}) vs sqrt({1})")]
    FieldMismatch(BigInt, BigInt),
    #[error("no square root in the quadratic field of {0}")]
    NoSquareRoot(String),
    #[error("polynomial has the same sign at {lo} and {hi}")]
    NoSignChange { lo: String, hi: String },
    #[error("requested width must be positive")]
    NonPositiveWidth,
    #[error("cannot parse scalar {0:?}: {1}")]
    Parse(String, String),
}

/// Commutative ring with unit, exact arithmetic.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_int(n: BigInt) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_int(BigInt::from(n))
    }
}

/// An exactly ordered subring of the reals.
pub trait RealScalar: Ring + Ord {
    fn to_quad(&self) -> QuadExt;

    fn as_integer(&self) -> Option<BigInt> {
        self.to_quad().as_integer()
    }
}

impl Ring for BigInt {
    fn from_int(n: BigInt) -> Self {
        n
    }
}

impl RealScalar for BigInt {
    fn to_quad(&self) -> QuadExt {
        QuadExt::from_int(self.clone())
    }

    fn as_integer(&self) -> Option<BigInt> {
        Some(self.clone())
    }
}

impl Ring for Rational {
    fn from_int(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl RealScalar for Rational {
    fn to_quad(&self) -> QuadExt {
        QuadExt::from_rational(self)
    }

    fn as_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.to_integer())
    }
}

/// `T_k(t)` via the linear recursion `T_0 = 2`, `T_1 = t`,
/// `T_k = t T_{k-1} - T_{k-2}`, so that `T_k(tr M) = tr(M^k)` for `det M = 1`.
pub fn chebyshev<R: Ring>(k: u64, t: &R) -> R {
    let two = R::from_i64(2);
    if k == 0 {
        return two;
    }
    let (mut prev, mut cur) = (two, t.clone());
    for _ in 1..k {
        let next = t.clone() * cur.clone() - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Same values as [`chebyshev`], by doubling: `T_{2k} = T_k^2 - 2` and
/// `T_{2k+1} = T_k T_{k+1} - t`.
pub fn chebyshev_fast<R: Ring>(k: u64, t: &R) -> R {
    let two = R::from_i64(2);
    if k == 0 {
        return two;
    }
    // invariant: (lo, hi) = (T_j, T_{j+1}) for j = the bits of k read so far
    let mut lo = two.clone();
    let mut hi = t.clone();
    for bit in (0..64 - k.leading_zeros()).rev() {
        let cross = lo.clone() * hi.clone() - t.clone();
        if (k >> bit) & 1 == 1 {
            let sq = hi.clone() * hi - two.clone();
            lo = cross;
            hi = sq;
        } else {
            let sq = lo.clone() * lo - two.clone();
            lo = sq;
            hi = cross;
        }
    }
    lo
}

pub(crate) fn sign(n: &BigInt) -> std::cmp::Ordering {
    n.cmp(&BigInt::zero())
}

/// Writes `n = s^2 k` with `k` square-free; `n > 0`.
pub(crate) fn square_free_split(n: &BigInt) -> (BigInt, BigInt) {
    debug_assert!(n.is_positive());
    let mut rest = n.clone();
    let mut root = BigInt::one();
    let mut kernel = BigInt::one();
    let mut p = BigInt::from(2u32);
    // after this loop every prime factor of `rest` exceeds its cube root
    while &p * &p * &p <= rest {
        let mut count = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            count += 1;
        }
        root *= p.pow(count / 2);
        if count % 2 == 1 {
            kernel *= &p;
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    match is_perfect_square(&rest) {
        Some(s) => root *= s,
        None => kernel *= rest,
    }
    (root, kernel)
}

pub(crate) fn is_perfect_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

pub(crate) fn rational_sqrt(x: &Rational) -> Option<Rational> {
    let n = is_perfect_square(x.numer())?;
    let d = is_perfect_square(x.denom())?;
    Some(Rational::new(n, d))
}

pub(crate) fn gcd3(a: &BigInt, b: &BigInt, c: &BigInt) -> BigInt {
    a.gcd(b).gcd(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn chebyshev_base_and_small_values() {
        assert_eq!(chebyshev(0, &BigInt::from(17)), BigInt::from(2));
        assert_eq!(chebyshev(2, &BigInt::from(3)), BigInt::from(7));
        assert_eq!(chebyshev(1, &q(101, 50)), q(101, 50));
    }

    #[test]
    fn chebyshev_cubic_as_polynomial() {
        let x = Poly::x();
        let t3 = chebyshev(3, &x);
        assert_eq!(t3, Poly::from_i64_coeffs(&[0, -3, 0, 1]));
    }

    #[test]
    fn doubling_agrees_with_recursion() {
        for k in 0..60 {
            for t in [-3i64, 0, 2, 3, 7, 1001] {
                let t = BigInt::from(t);
                assert_eq!(chebyshev(k, &t), chebyshev_fast(k, &t), "k={k} t={t}");
            }
        }
    }

    #[test]
    fn square_free_parts() {
        let cases = [(1, 1, 1), (12, 2, 3), (96, 4, 6), (21, 1, 21), (49, 7, 1), (2 * 9 * 25, 15, 2)];
        for (n, s, k) in cases {
            assert_eq!(square_free_split(&BigInt::from(n)), (BigInt::from(s), BigInt::from(k)), "{n}");
        }
        // two large primes, one squared
        let big = BigInt::from(1_000_003u64) * BigInt::from(1_000_003u64) * BigInt::from(6);
        assert_eq!(square_free_split(&big), (BigInt::from(1_000_003u64), BigInt::from(6)));
    }

    #[test]
    fn rational_sqrt_detects_squares() {
        assert_eq!(rational_sqrt(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(rational_sqrt(&q(2, 1)), None);
    }
}
