//! 2x2 matrices over an exact ring and the evaluation map from words.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::scalars::{QuadExt, RealScalar, Ring, ScalarError};
use crate::words::{Gen, GroupWord, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("determinant is {0}, expected +1 or -1")]
    NotUnimodular(String),
    #[error("cannot parse matrix {0:?}: {1}")]
    Parse(String, String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// `[[a11, a12], [a21, a22]]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2<S> {
    pub a11: S,
    pub a12: S,
    pub a21: S,
    pub a22: S,
}

impl<S: Ring> Mat2<S> {
    pub fn new(a11: S, a12: S, a21: S, a22: S) -> Self {
        Mat2 { a11, a12, a21, a22 }
    }

    pub fn from_i64(e: [[i64; 2]; 2]) -> Self {
        Mat2::new(S::from_i64(e[0][0]), S::from_i64(e[0][1]), S::from_i64(e[1][0]), S::from_i64(e[1][1]))
    }

    pub fn identity() -> Self {
        Mat2::new(S::one(), S::zero(), S::zero(), S::one())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Mat2 {
            a11: self.a11.clone() * o.a11.clone() + self.a12.clone() * o.a21.clone(),
            a12: self.a11.clone() * o.a12.clone() + self.a12.clone() * o.a22.clone(),
            a21: self.a21.clone() * o.a11.clone() + self.a22.clone() * o.a21.clone(),
            a22: self.a21.clone() * o.a12.clone() + self.a22.clone() * o.a22.clone(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Mat2::identity();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    pub fn det(&self) -> S {
        self.a11.clone() * self.a22.clone() - self.a12.clone() * self.a21.clone()
    }

    pub fn tr(&self) -> S {
        self.a11.clone() + self.a22.clone()
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    /// Inverse by the adjugate, for determinant `+1` or `-1`.
    pub fn inv(&self) -> Result<Self, MatrixError> {
        let det = self.det();
        let adj = Mat2::new(self.a22.clone(), -self.a12.clone(), -self.a21.clone(), self.a11.clone());
        if det.is_one() {
            Ok(adj)
        } else if (-det.clone()).is_one() {
            Ok(adj.neg())
        } else {
            Err(MatrixError::NotUnimodular(format!("{det:?}")))
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().is_one()
    }

    pub fn commutes_with(&self, o: &Self) -> bool {
        self.mul(o) == o.mul(self)
    }

    pub fn is_scalar_identity(&self) -> bool {
        let id = Mat2::identity();
        *self == id || *self == id.neg()
    }

    pub fn map<T, F: Fn(&S) -> T>(&self, f: F) -> Mat2<T> {
        Mat2 { a11: f(&self.a11), a12: f(&self.a12), a21: f(&self.a21), a22: f(&self.a22) }
    }

    pub fn entries(&self) -> [&S; 4] {
        [&self.a11, &self.a12, &self.a21, &self.a22]
    }
}

impl<S: RealScalar> Mat2<S> {
    /// `M` or `-M`, whichever has nonnegative trace.
    pub fn normalize_sign(&self) -> Self {
        if self.tr() < S::zero() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn to_quad(&self) -> Mat2<QuadExt> {
        self.map(|x| x.to_quad())
    }

    pub fn to_integer(&self) -> Option<Mat2<BigInt>> {
        Some(Mat2::new(
            self.a11.as_integer()?,
            self.a12.as_integer()?,
            self.a21.as_integer()?,
            self.a22.as_integer()?,
        ))
    }
}

impl<S: fmt::Display> fmt::Display for Mat2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a11, self.a12, self.a21, self.a22)
    }
}

impl<S: fmt::Debug> fmt::Debug for Mat2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{:?},{:?}],[{:?},{:?}]]", self.a11, self.a12, self.a21, self.a22)
    }
}

/// Splits on commas that are not nested inside parentheses or brackets.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn strip_brackets(s: &str) -> Option<&str> {
    s.trim().strip_prefix('[')?.strip_suffix(']')
}

impl FromStr for Mat2<QuadExt> {
    type Err = MatrixError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |why: &str| MatrixError::Parse(s.to_string(), why.to_string());
        let inner = strip_brackets(s).ok_or_else(|| err("expected [[a11,a12],[a21,a22]]"))?;
        let rows = split_top_level(inner);
        if rows.len() != 2 {
            return Err(err("expected two rows"));
        }
        let mut entries = Vec::with_capacity(4);
        for row in rows {
            let row = strip_brackets(row).ok_or_else(|| err("row must be bracketed"))?;
            let cells = split_top_level(row);
            if cells.len() != 2 {
                return Err(err("expected two entries per row"));
            }
            for cell in cells {
                entries.push(cell.parse::<QuadExt>()?);
            }
        }
        let mut it = entries.into_iter();
        let mut next = || it.next().expect("four entries");
        Ok(Mat2::new(next(), next(), next(), next()))
    }
}

/// The generators `A = Φ(a)` and `B = Φ(b)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixPair<S> {
    pub a: Mat2<S>,
    pub b: Mat2<S>,
}

impl<S: Ring> MatrixPair<S> {
    pub fn new(a: Mat2<S>, b: Mat2<S>) -> Result<Self, MatrixError> {
        for m in [&a, &b] {
            let det = m.det();
            if !det.is_one() {
                return Err(MatrixError::NotUnimodular(format!("{det:?}")));
            }
        }
        Ok(MatrixPair { a, b })
    }

    pub fn swapped(&self) -> Self {
        MatrixPair { a: self.b.clone(), b: self.a.clone() }
    }

    pub fn generator(&self, g: Gen) -> &Mat2<S> {
        match g {
            Gen::A => &self.a,
            Gen::B => &self.b,
        }
    }

    /// `Φ(w)`, multiplying left to right.
    pub fn eval_group(&self, w: &GroupWord) -> Mat2<S> {
        let inv_a = self.a.inv().expect("unimodular");
        let inv_b = self.b.inv().expect("unimodular");
        w.letters().iter().fold(Mat2::identity(), |acc, l| {
            let m = match (l.gen, l.inverse) {
                (Gen::A, false) => &self.a,
                (Gen::B, false) => &self.b,
                (Gen::A, true) => &inv_a,
                (Gen::B, true) => &inv_b,
            };
            acc.mul(m)
        })
    }

    pub fn eval(&self, w: &Word) -> Mat2<S> {
        let mut letters = w.letters().iter();
        let first = self.generator(*letters.next().expect("nonempty")).clone();
        letters.fold(first, |acc, &g| acc.mul(self.generator(g)))
    }

    pub fn trace(&self, w: &Word) -> S {
        self.eval(w).tr()
    }
}

impl<S: RealScalar> MatrixPair<S> {
    pub fn to_quad(&self) -> MatrixPair<QuadExt> {
        MatrixPair { a: self.a.to_quad(), b: self.b.to_quad() }
    }

    pub fn to_integer(&self) -> Option<MatrixPair<BigInt>> {
        Some(MatrixPair { a: self.a.to_integer()?, b: self.b.to_integer()? })
    }
}

/// Evaluates `w` with `A`, `B` given directly.
pub fn word_eval<S: Ring>(w: &GroupWord, pair: &MatrixPair<S>) -> Mat2<S> {
    pair.eval_group(w)
}

pub fn is_nonnegative<S: RealScalar>(m: &Mat2<S>) -> bool {
    m.entries().iter().all(|x| **x >= S::zero())
}
