use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Closed interval with exact rational endpoints, `lo <= hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    lo: Rational,
    hi: Rational,
}

impl RatInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "empty interval");
        RatInterval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn add(&self, other: &Self) -> Self {
        RatInterval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn sub(&self, other: &Self) -> Self {
        RatInterval { lo: &self.lo - &other.hi, hi: &self.hi - &other.lo }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().cloned().unwrap();
        let hi = products.iter().max().cloned().unwrap();
        RatInterval { lo, hi }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if a <= b {
            RatInterval { lo: a, hi: b }
        } else {
            RatInterval { lo: b, hi: a }
        }
    }

    /// Enclosure of `sqrt(x)` of width at most `2^-bits`, for `x >= 0`.
    pub fn sqrt_of(x: &Rational, bits: u32) -> Self {
        assert!(!x.is_negative(), "square root of a negative rational");
        let scaled = x * Rational::from_integer(BigInt::one() << (2 * bits as usize));
        let floor = scaled.floor().to_integer();
        let s = floor.sqrt();
        let den = BigInt::one() << bits as usize;
        let exact = scaled.is_integer() && &s * &s == floor;
        let lo = Rational::new(s.clone(), den.clone());
        let hi = if exact { lo.clone() } else { Rational::new(s + 1, den) };
        RatInterval { lo, hi }
    }

    /// Enclosure of the square root of every point of a nonnegative interval.
    pub fn sqrt(&self, bits: u32) -> Self {
        let lo = if self.lo.is_positive() {
            RatInterval::sqrt_of(&self.lo, bits).lo
        } else {
            Rational::zero()
        };
        let hi = RatInterval::sqrt_of(&self.hi, bits).hi;
        RatInterval { lo, hi }
    }
}
