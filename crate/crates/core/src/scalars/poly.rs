use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{RatInterval, Rational, Ring, ScalarError};

/// Dense univariate polynomial over the rationals, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

/// Outcome of sign-bisection root isolation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootIsolation {
    /// A rational point where the polynomial vanishes exactly.
    Exact(Rational),
    /// `lo < hi`, opposite signs at the endpoints.
    Bracket { lo: Rational, hi: Rational },
}

impl RootIsolation {
    pub fn contains(&self, x: &Rational) -> bool {
        match self {
            RootIsolation::Exact(r) => r == x,
            RootIsolation::Bracket { lo, hi } => lo <= x && x <= hi,
        }
    }

    pub fn width(&self) -> Rational {
        match self {
            RootIsolation::Exact(_) => Rational::zero(),
            RootIsolation::Bracket { lo, hi } => hi - lo,
        }
    }

    pub fn bounds(&self) -> (Rational, Rational) {
        match self {
            RootIsolation::Exact(r) => (r.clone(), r.clone()),
            RootIsolation::Bracket { lo, hi } => (lo.clone(), hi.clone()),
        }
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Poly::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation in interval arithmetic; encloses the range on `iv`.
    pub fn eval_interval(&self, iv: &RatInterval) -> RatInterval {
        self.coeffs.iter().rev().fold(RatInterval::point(Rational::zero()), |acc, c| {
            acc.mul(iv).add(&RatInterval::point(c.clone()))
        })
    }

    pub fn sign_at(&self, x: &Rational) -> Ordering {
        self.eval(x).cmp(&Rational::zero())
    }

    /// Certifies that the polynomial has constant nonzero sign on `[lo, hi]`
    /// by splitting until every piece has an interval enclosure that avoids
    /// zero. `None` if that fails within `max_depth` halvings.
    pub fn certify_sign(&self, lo: &Rational, hi: &Rational, max_depth: u32) -> Option<Ordering> {
        let mut pending = vec![(lo.clone(), hi.clone(), 0u32)];
        let mut verdict = None;
        while let Some((a, b, depth)) = pending.pop() {
            let range = self.eval_interval(&RatInterval::new(a.clone(), b.clone()));
            let piece = if range.is_positive() {
                Some(Ordering::Greater)
            } else if range.is_negative() {
                Some(Ordering::Less)
            } else {
                None
            };
            match (piece, verdict) {
                (Some(s), None) => verdict = Some(s),
                (Some(s), Some(v)) if s == v => {}
                (Some(_), Some(_)) => return None,
                (None, _) => {
                    if depth >= max_depth {
                        return None;
                    }
                    let mid = (&a + &b) / Rational::from_integer(BigInt::from(2));
                    pending.push((mid.clone(), b, depth + 1));
                    pending.push((a, mid, depth + 1));
                }
            }
        }
        verdict
    }

    /// Sign-bisection with exact rational evaluation.
    pub fn isolate_root(
        &self,
        lo: &Rational,
        hi: &Rational,
        width: &Rational,
    ) -> Result<RootIsolation, ScalarError> {
        if !width.is_positive() {
            return Err(ScalarError::NonPositiveWidth);
        }
        let (mut lo, mut hi) = if lo <= hi { (lo.clone(), hi.clone()) } else { (hi.clone(), lo.clone()) };
        let s_lo = self.sign_at(&lo);
        let s_hi = self.sign_at(&hi);
        if s_lo == Ordering::Equal {
            return Ok(RootIsolation::Exact(lo));
        }
        if s_hi == Ordering::Equal {
            return Ok(RootIsolation::Exact(hi));
        }
        if s_lo == s_hi {
            return Err(ScalarError::NoSignChange { lo: lo.to_string(), hi: hi.to_string() });
        }
        let two = Rational::from_integer(BigInt::from(2));
        while &(&hi - &lo) > width {
            let mid = (&lo + &hi) / &two;
            match self.sign_at(&mid) {
                Ordering::Equal => return Ok(RootIsolation::Exact(mid)),
                s if s == s_lo => lo = mid,
                _ => hi = mid,
            }
        }
        Ok(RootIsolation::Bracket { lo, hi })
    }

    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(Rational::one())
    }
}

impl Ring for Poly {
    fn from_int(n: BigInt) -> Self {
        Poly::constant(Rational::from_integer(n))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { " " } else { "" })?,
                _ => write!(f, "{}x^{i}", if show_coeff { " " } else { "" })?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn shifted_cubic() {
        // (x^2 - 2) x - 101/50
        let x = Poly::x();
        let p = (x.clone() * x.clone() - Poly::from_int(2.into())) * x - Poly::constant(q(101, 50));
        assert_eq!(p.coeffs(), &[q(-101, 50), q(-2, 1), q(0, 1), q(1, 1)]);
        assert_eq!(p.to_string(), "x^3 - 2 x - 101/50");
    }

    #[test]
    fn isolates_sqrt2() {
        let p = Poly::from_i64_coeffs(&[-2, 0, 1]);
        let iso = p.isolate_root(&q(1, 1), &q(2, 1), &q(1, 1000)).unwrap();
        let RootIsolation::Bracket { lo, hi } = iso else { panic!("sqrt 2 is irrational") };
        assert!(&hi - &lo <= q(1, 1000));
        assert_eq!(p.sign_at(&lo), Ordering::Less);
        assert_eq!(p.sign_at(&hi), Ordering::Greater);
    }

    #[test]
    fn exact_root_at_midpoint() {
        let p = Poly::from_i64_coeffs(&[-1, 1]);
        assert_eq!(p.isolate_root(&q(0, 1), &q(2, 1), &q(1, 2)).unwrap(), RootIsolation::Exact(q(1, 1)));
        assert_eq!(p.isolate_root(&q(1, 1), &q(2, 1), &q(1, 2)).unwrap(), RootIsolation::Exact(q(1, 1)));
    }

    #[test]
    fn root_isolation_errors() {
        let p = Poly::from_i64_coeffs(&[-2, 0, 1]);
        assert!(matches!(p.isolate_root(&q(2, 1), &q(3, 1), &q(1, 10)), Err(ScalarError::NoSignChange { .. })));
        assert_eq!(p.isolate_root(&q(1, 1), &q(2, 1), &q(0, 1)), Err(ScalarError::NonPositiveWidth));
    }

    #[test]
    fn certified_signs() {
        let p = Poly::from_i64_coeffs(&[-2, 0, 1]);
        assert_eq!(p.certify_sign(&q(3, 2), &q(2, 1), 20), Some(Ordering::Greater));
        assert_eq!(p.certify_sign(&q(-1, 1), &q(1, 1), 20), Some(Ordering::Less));
        assert_eq!(p.certify_sign(&q(1, 1), &q(2, 1), 20), None);
    }

    #[test]
    fn degree_of_zero() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!((Poly::x() - Poly::x()).degree(), None);
        assert_eq!(Poly::x().degree(), Some(1));
    }
}
