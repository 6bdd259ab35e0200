use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{gcd3, rational_sqrt, sign, square_free_split};
use super::{RatInterval, Rational, RealScalar, Ring, ScalarError};

/// A real quadratic number `(p + q*sqrt(d)) / r`.
///
/// Canonical form: `r > 0`, `gcd(p, q, r) = 1`, `d` square-free, and `d = 1`
/// exactly when `q = 0`. Rationals are the values with `d = 1` and combine
/// with any field; two irrational values from different fields can be
/// compared but not added or multiplied.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    p: BigInt,
    q: BigInt,
    r: BigInt,
    d: BigInt,
}

impl QuadExt {
    pub fn new(p: BigInt, q: BigInt, r: BigInt, d: BigInt) -> Result<Self, ScalarError> {
        if r.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if !d.is_positive() {
            return Err(ScalarError::Parse(
                format!("sqrt({d})"),
                "radicand must be positive".into(),
            ));
        }
        let (s, k) = square_free_split(&d);
        Ok(Self::reduced(p, q * s, r, k))
    }

    /// `d` must already be square-free.
    fn reduced(mut p: BigInt, mut q: BigInt, mut r: BigInt, mut d: BigInt) -> Self {
        if d.is_one() {
            p += &q;
            q = BigInt::zero();
        }
        if q.is_zero() {
            d = BigInt::one();
        }
        if r.is_negative() {
            p = -p;
            q = -q;
            r = -r;
        }
        let g = gcd3(&p, &q, &r);
        if !g.is_one() {
            p /= &g;
            q /= &g;
            r /= &g;
        }
        QuadExt { p, q, r, d }
    }

    pub fn from_int(n: BigInt) -> Self {
        QuadExt { p: n, q: BigInt::zero(), r: BigInt::one(), d: BigInt::one() }
    }

    pub fn from_rational(x: &Rational) -> Self {
        QuadExt {
            p: x.numer().clone(),
            q: BigInt::zero(),
            r: x.denom().clone(),
            d: BigInt::one(),
        }
    }

    /// `sqrt(n)` for a nonnegative integer `n`.
    pub fn sqrt_int(n: i64) -> Self {
        assert!(n >= 0, "sqrt of a negative integer");
        if n == 0 {
            return Self::zero();
        }
        QuadExt::new(BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::from(n))
            .expect("positive radicand")
    }

    pub fn numerator_rational(&self) -> &BigInt {
        &self.p
    }

    pub fn numerator_surd(&self) -> &BigInt {
        &self.q
    }

    pub fn denominator(&self) -> &BigInt {
        &self.r
    }

    /// The square-free radicand; `1` for rationals.
    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| Rational::new(self.p.clone(), self.r.clone()))
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        (self.is_rational() && self.r.is_one()).then(|| self.p.clone())
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.r.is_one()
    }

    /// Galois conjugate `(p - q sqrt d)/r`.
    pub fn conj(&self) -> Self {
        QuadExt { p: self.p.clone(), q: -self.q.clone(), r: self.r.clone(), d: self.d.clone() }
    }

    fn common_field(&self, other: &Self) -> Result<BigInt, ScalarError> {
        match (self.d.is_one(), other.d.is_one()) {
            (true, _) => Ok(other.d.clone()),
            (_, true) => Ok(self.d.clone()),
            _ if self.d == other.d => Ok(self.d.clone()),
            _ => Err(ScalarError::FieldMismatch(self.d.clone(), other.d.clone())),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        let d = self.common_field(other)?;
        Ok(Self::reduced(
            &self.p * &other.r + &other.p * &self.r,
            &self.q * &other.r + &other.q * &self.r,
            &self.r * &other.r,
            d,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.checked_add(&-other.clone())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        let d = self.common_field(other)?;
        Ok(Self::reduced(
            &self.p * &other.p + &self.q * &other.q * &d,
            &self.p * &other.q + &self.q * &other.p,
            &self.r * &other.r,
            d,
        ))
    }

    /// Exact multiplicative inverse.
    pub fn recip(&self) -> Result<Self, ScalarError> {
        // 1/((p+q√d)/r) = r (p - q√d) / (p² - q² d)
        let norm = &self.p * &self.p - &self.q * &self.q * &self.d;
        if norm.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduced(&self.r * &self.p, -(&self.r * &self.q), norm, self.d.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        self.checked_mul(&other.recip()?)
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn signum(&self) -> Ordering {
        sign_of_surd(&self.p, &self.q, &self.d)
    }

    /// A square root inside the same quadratic field, or in `Q(sqrt k)` for a
    /// nonnegative rational. `None` when no such root exists.
    pub fn sqrt(&self) -> Option<Self> {
        match self.signum() {
            Ordering::Less => return None,
            Ordering::Equal => return Some(Self::zero()),
            Ordering::Greater => {}
        }
        if let Some(x) = self.as_rational() {
            // sqrt(n/m) = sqrt(n m) / m
            let nm = x.numer() * x.denom();
            return QuadExt::new(BigInt::zero(), BigInt::one(), x.denom().clone(), nm).ok();
        }
        // x = P + Q sqrt(d); look for (u + v sqrt d)^2 = x with u, v rational:
        // v^2 = (P ± sqrt(P^2 - d Q^2)) / (2d), u = Q / (2v)
        let big_p = Rational::new(self.p.clone(), self.r.clone());
        let big_q = Rational::new(self.q.clone(), self.r.clone());
        let d = Rational::from_integer(self.d.clone());
        let disc = &big_p * &big_p - &d * &big_q * &big_q;
        let root = rational_sqrt(&disc)?;
        for cand in [&big_p + &root, &big_p - &root] {
            let v2 = cand / (Rational::from_integer(BigInt::from(2)) * &d);
            if let Some(v) = rational_sqrt(&v2) {
                if v.is_zero() {
                    continue;
                }
                let u = &big_q / (Rational::from_integer(BigInt::from(2)) * &v);
                let val = QuadExt::from_rational(&u)
                    .checked_add(&(QuadExt::from_rational(&v) * self.field_unit()))
                    .ok()?;
                let val = if val.signum() == Ordering::Less { -val } else { val };
                if val.clone() * val.clone() == *self {
                    return Some(val);
                }
            }
        }
        None
    }

    /// `sqrt(d)` for this value's field.
    fn field_unit(&self) -> Self {
        QuadExt::reduced(BigInt::zero(), BigInt::one(), BigInt::one(), self.d.clone())
    }

    /// A rational interval of width at most `2^-bits` containing the value.
    pub fn enclose(&self, bits: u32) -> RatInterval {
        let base = Rational::new(self.p.clone(), self.r.clone());
        if self.is_rational() {
            return RatInterval::point(base);
        }
        // |q/r| * width(sqrt d) <= 2^-bits
        let scale = Rational::new(self.q.abs(), self.r.clone());
        let extra = scale.to_integer().bits() as u32 + 1;
        let root = RatInterval::sqrt_of(&Rational::from_integer(self.d.clone()), bits + extra);
        let coeff = Rational::new(self.q.clone(), self.r.clone());
        RatInterval::point(base).add(&root.scale(&coeff))
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        let r = self.r.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        (p + q * d.sqrt()) / r
    }
}

/// Sign of `u + v sqrt(d)` for integers `u, v` and `d > 0`.
pub(crate) fn sign_of_surd(u: &BigInt, v: &BigInt, d: &BigInt) -> Ordering {
    let (su, sv) = (sign(u), sign(v));
    if sv == Ordering::Equal || su == sv {
        return if su == Ordering::Equal { sv } else { su };
    }
    if su == Ordering::Equal {
        return sv;
    }
    // opposite signs: the larger magnitude wins
    match (u * u).cmp(&(v * v * d)) {
        Ordering::Greater => su,
        Ordering::Less => sv,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Sign of `a + b sqrt(m) + c sqrt(n)` for integers `a, b, c` and `m, n > 0`.
pub(crate) fn sign_of_two_surds(
    a: &BigInt,
    b: &BigInt,
    m: &BigInt,
    c: &BigInt,
    n: &BigInt,
) -> Ordering {
    if m == n {
        return sign_of_surd(a, &(b + c), m);
    }
    // sign of X = b sqrt m + c sqrt n
    let sx = {
        let (sb, sc) = (sign(b), sign(c));
        if sb == sc || sc == Ordering::Equal {
            sb
        } else if sb == Ordering::Equal {
            sc
        } else {
            match (b * b * m).cmp(&(c * c * n)) {
                Ordering::Greater => sb,
                Ordering::Less => sc,
                Ordering::Equal => Ordering::Equal,
            }
        }
    };
    let sa = sign(a);
    if sx == Ordering::Equal {
        return sa;
    }
    if sa == Ordering::Equal || sa == sx {
        return sx;
    }
    // a and X have opposite signs; compare a^2 with X^2 = b^2 m + c^2 n + 2bc sqrt(mn)
    let rest = a * a - b * b * m - c * c * n;
    let cross = -(BigInt::from(2) * b * c);
    match sign_of_surd(&rest, &cross, &(m * n)) {
        Ordering::Greater => sa,
        Ordering::Less => sx,
        Ordering::Equal => Ordering::Equal,
    }
}

impl Ord for QuadExt {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        // sign of (p1 r2 - p2 r1) + q1 r2 sqrt d1 - q2 r1 sqrt d2
        let a = &self.p * &other.r - &other.p * &self.r;
        let b = &self.q * &other.r;
        let c = -(&other.q * &self.r);
        sign_of_two_surds(&a, &b, &self.d, &c, &other.d)
    }
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: QuadExt) -> QuadExt {
        self.checked_add(&rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: QuadExt) -> QuadExt {
        self.checked_sub(&rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: QuadExt) -> QuadExt {
        self.checked_mul(&rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Div for QuadExt {
    type Output = QuadExt;
    fn div(self, rhs: QuadExt) -> QuadExt {
        self.checked_div(&rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { p: -self.p, q: -self.q, r: self.r, d: self.d }
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        QuadExt::from_int(BigInt::zero())
    }
    fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }
}

impl One for QuadExt {
    fn one() -> Self {
        QuadExt::from_int(BigInt::one())
    }
}

impl Ring for QuadExt {
    fn from_int(n: BigInt) -> Self {
        QuadExt::from_int(n)
    }
}

impl RealScalar for QuadExt {
    fn to_quad(&self) -> QuadExt {
        self.clone()
    }

    fn as_integer(&self) -> Option<BigInt> {
        QuadExt::as_integer(self)
    }
}

impl From<Rational> for QuadExt {
    fn from(x: Rational) -> Self {
        QuadExt::from_rational(&x)
    }
}

impl From<BigInt> for QuadExt {
    fn from(n: BigInt) -> Self {
        QuadExt::from_int(n)
    }
}

impl From<i64> for QuadExt {
    fn from(n: i64) -> Self {
        QuadExt::from_int(BigInt::from(n))
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return if self.r.is_one() {
                write!(f, "{}", self.p)
            } else {
                write!(f, "{}/{}", self.p, self.r)
            };
        }
        let op = if self.q.is_negative() { '-' } else { '+' };
        write!(f, "({}{}{}*sqrt({}))/{}", self.p, op, self.q.abs(), self.d, self.r)
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qx(p: i64, q: i64, r: i64, d: i64) -> QuadExt {
        QuadExt::new(p.into(), q.into(), r.into(), d.into()).unwrap()
    }

    fn rat(n: i64, d: i64) -> QuadExt {
        QuadExt::from_rational(&Rational::new(n.into(), d.into()))
    }

    #[test]
    fn norm_of_one_plus_sqrt6() {
        assert_eq!(qx(1, 1, 1, 6) * qx(1, -1, 1, 6), QuadExt::from(-5));
    }

    #[test]
    fn sqrt6_is_less_than_five_halves() {
        assert_eq!(qx(0, 1, 1, 6).cmp(&rat(5, 2)), Ordering::Less);
        assert_eq!(qx(0, 1, 1, 6).cmp(&rat(12, 5)), Ordering::Greater);
    }

    #[test]
    fn canonical_form() {
        // (2 + 2 sqrt 24) / 4 = (1 + 2 sqrt 6) / 2
        assert_eq!(qx(2, 2, 4, 24), qx(1, 2, 2, 6));
        // sqrt 49 folds into the rational part
        assert!(qx(1, 1, 1, 49).is_rational());
        assert_eq!(qx(1, 1, 1, 49), QuadExt::from(8));
        assert_eq!(qx(1, 1, -2, 5), qx(-1, -1, 2, 5));
    }

    #[test]
    fn mixing_fields_is_an_error_but_rationals_mix_freely() {
        let a = qx(0, 1, 1, 2);
        let b = qx(0, 1, 1, 3);
        assert!(matches!(a.checked_add(&b), Err(ScalarError::FieldMismatch(..))));
        assert_eq!(a.checked_add(&rat(1, 2)).unwrap(), qx(1, 2, 2, 2));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(QuadExt::zero().recip(), Err(ScalarError::DivisionByZero));
        assert!(QuadExt::new(1.into(), 1.into(), 0.into(), 2.into()).is_err());
    }

    #[test]
    fn reciprocal_round_trips() {
        let x = qx(3, -7, 5, 6);
        assert_eq!(x.clone() * x.recip().unwrap(), QuadExt::one());
    }

    #[test]
    fn cross_field_comparisons() {
        // sqrt 2 + sqrt 3 ≈ 3.146 > pi-ish rational 22/7 ≈ 3.1428
        let s2 = qx(0, 1, 1, 2);
        let s3 = qx(0, 1, 1, 3);
        assert!(s2 < s3);
        assert!(qx(0, 1, 1, 5) > qx(0, 1, 1, 3));
        assert!(qx(1, 1, 2, 5) > qx(4, 1, 1, 6) - QuadExt::from(5)); // 1.618 > 1.449
        assert!(qx(-1, 1, 2, 5) < qx(-4, 2, 1, 6)); // 0.618 < 0.899
    }

    #[test]
    fn square_roots() {
        assert_eq!(rat(9, 4).sqrt(), Some(rat(3, 2)));
        assert_eq!(rat(21, 1).sqrt(), Some(qx(0, 1, 1, 21)));
        assert_eq!(rat(1, 2).sqrt(), Some(qx(0, 1, 2, 2)));
        // (1 + sqrt 6)^2 = 7 + 2 sqrt 6
        assert_eq!(qx(7, 2, 1, 6).sqrt(), Some(qx(1, 1, 1, 6)));
        assert_eq!(qx(1, 1, 1, 6).sqrt(), None);
        assert_eq!(rat(-1, 1).sqrt(), None);
    }

    #[test]
    fn display_format() {
        assert_eq!(qx(1, -2, 10, 6).to_string(), "(1-2*sqrt(6))/10");
        assert_eq!(qx(0, 1, 2, 6).to_string(), "(0+1*sqrt(6))/2");
        assert_eq!(rat(-101, 50).to_string(), "-101/50");
    }

    #[test]
    fn enclosure_contains_value() {
        let x = qx(-1, 1, 2, 5);
        let iv = x.enclose(60);
        let lo = QuadExt::from_rational(iv.lo());
        let hi = QuadExt::from_rational(iv.hi());
        assert!(lo <= x && x <= hi);
        assert!(iv.width() <= Rational::new(1.into(), BigInt::from(2).pow(60)));
    }
}
