//! Exact reproductions of the real-entry counterexamples: traces as
//! polynomials in `x = tr B` with `tr A` fixed and `tr AB - tr B^2` held
//! constant, plus a relation in a semigroup over `Q(sqrt 6)`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::characters::{trace_radius_cmp, TripleEvaluator};
use crate::matrix::{Mat2, MatrixPair};
use crate::scalars::{Poly, QuadExt, Rational, RootIsolation, ScalarError};
use crate::words::{GroupWord, Word};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `tr A = x_a`, `tr B = x` symbolic, `tr AB = x^2 - 2 + delta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleContext {
    pub x_a: Rational,
    pub delta: Rational,
}

impl TripleContext {
    pub fn new(x_a: Rational, delta: Rational) -> Self {
        TripleContext { x_a, delta }
    }

    /// `tr A = 101/50` with the given offset.
    pub fn standard(delta: Rational) -> Self {
        TripleContext::new(q(101, 50), delta)
    }

    pub fn evaluator(&self) -> TripleEvaluator<Poly> {
        let x = Poly::x();
        let z = x.clone() * x.clone() + Poly::constant(self.delta.clone() - Rational::from_integer(2.into()));
        TripleEvaluator::new(Poly::constant(self.x_a.clone()), x, z)
    }

    pub fn trace_poly(&self, w: &GroupWord) -> Poly {
        self.evaluator().eval(w)
    }

    pub fn trace_poly_str(&self, w: &str) -> Poly {
        let w: Word = w.parse().expect("literal word");
        self.evaluator().eval_word(&w)
    }
}

/// Coefficients of `[(ab^2)^4] - [(ab^3)^3]` at `delta = 0`, lowest degree first.
const IV2_CLOSED_FORM: [(i64, i64); 11] = [
    (2050401, 6250000),
    (1618727, 31250),
    (105559, 1250),
    (-2080903, 125000),
    (-46103, 500),
    (-909, 50),
    (98103, 2500),
    (303, 25),
    (-9, 1),
    (-101, 50),
    (1, 1),
];

pub fn iv2_closed_form() -> Poly {
    Poly::new(IV2_CLOSED_FORM.iter().map(|&(n, d)| q(n, d)).collect())
}

#[derive(Clone, Debug)]
pub struct Iv2Result {
    pub poly: Poly,
    pub matches_closed_form: bool,
    /// A point of `[101/50, 113/50]` where `abb` loses to `abbb`.
    pub witness: Rational,
    pub value: Rational,
}

/// With `tr AB = tr B^2`, the word `abb` is beaten by `abbb` for some `tr B`.
pub fn iv2_counterexample() -> Iv2Result {
    let ctx = TripleContext::standard(Rational::zero());
    let poly = ctx.trace_poly_str("abbabbabbabb") - ctx.trace_poly_str("abbbabbbabbb");
    let matches_closed_form = poly == iv2_closed_form();
    let witness = (0..=12)
        .map(|k| q(101 + k, 50))
        .find(|x| poly.eval(x) < Rational::zero())
        .expect("a negative sample in the window");
    let value = poly.eval(&witness);
    Iv2Result { poly, matches_closed_form, witness, value }
}

#[derive(Clone, Debug)]
pub struct Iv1Result {
    pub poly: Poly,
    pub witness: Rational,
    pub value: Rational,
    /// `abb` against `b` at the witness.
    pub verdict: Ordering,
}

/// With `tr AB` slightly below `tr B^2`, `abb` still beats `b` for large `tr B`.
pub fn iv1_counterexample() -> Iv1Result {
    let ctx = TripleContext::standard(q(-1, 50));
    let abb = ctx.trace_poly_str("abb");
    let poly = abb.clone() - ctx.trace_poly_str("bbb");
    let witness = q(11, 5);
    let value = poly.eval(&witness);
    let t = QuadExt::from_rational(&abb.eval(&witness));
    let verdict = trace_radius_cmp(&t, 3, &QuadExt::from_rational(&witness), 1);
    Iv1Result { poly, witness, value, verdict }
}

#[derive(Clone, Debug)]
pub struct Iv3Result {
    pub ab_cubed: Poly,
    pub abb_squared: Poly,
    /// Where `[(ab)^3] = [(abb)^2]`.
    pub root: RootIsolation,
    /// `[(ab)^5] - [(ababb)^2]`
    pub ab_gap: Poly,
    /// `[(abb)^5] - [(ababb)^3]`
    pub abb_gap: Poly,
    /// Certified signs of the gaps on the whole isolating interval.
    pub ab_sign: Option<Ordering>,
    pub abb_sign: Option<Ordering>,
}

/// With `tr AB` slightly above `tr B^2`, at the `tr B` where `ab` and `abb`
/// tie, both lose to `ababb`.
pub fn iv3_counterexample(width: &Rational) -> Result<Iv3Result, ScalarError> {
    let ctx = TripleContext::standard(q(1, 50));
    let ab_cubed = ctx.trace_poly_str("ababab");
    let abb_squared = ctx.trace_poly_str("abbabb");
    let root = (ab_cubed.clone() - abb_squared.clone()).isolate_root(&q(2, 1), &q(21, 10), width)?;
    let ab_gap = ctx.trace_poly_str(&"ab".repeat(5)) - ctx.trace_poly_str(&"ababb".repeat(2));
    let abb_gap = ctx.trace_poly_str(&"abb".repeat(5)) - ctx.trace_poly_str(&"ababb".repeat(3));
    let (lo, hi) = root.bounds();
    let sign = |p: &Poly| {
        let s = p.certify_sign(&lo, &hi, 64)?;
        (p.sign_at(&lo) == s && p.sign_at(&hi) == s).then_some(s)
    };
    let (ab_sign, abb_sign) = (sign(&ab_gap), sign(&abb_gap));
    Ok(Iv3Result { ab_cubed, abb_squared, root, ab_gap, abb_gap, ab_sign, abb_sign })
}

/// `1e-14`
pub fn default_width() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(10u64.pow(14)))
}

#[derive(Clone, Debug)]
pub struct NonfreeDemo {
    pub pair: MatrixPair<QuadExt>,
    pub left: Mat2<QuadExt>,
    pub right: Mat2<QuadExt>,
    pub expected: Mat2<QuadExt>,
    /// `AB != BA`
    pub noncommutative: bool,
    /// Whether the relation also holds with off-diagonal entry `sqrt 6`
    /// instead of `1/sqrt 6`. It does not.
    pub holds_with_sqrt6: bool,
}

impl NonfreeDemo {
    pub fn holds(&self) -> bool {
        self.left == self.expected && self.right == self.expected && self.noncommutative
    }
}

fn unipotents(m: &QuadExt) -> MatrixPair<QuadExt> {
    let (zero, one) = (QuadExt::from(0), QuadExt::from(1));
    let a = Mat2::new(one.clone(), m.clone(), zero.clone(), one.clone());
    let b = Mat2::new(one.clone(), zero, m.clone(), one);
    MatrixPair::new(a, b).expect("unipotent")
}

fn relation(pair: &MatrixPair<QuadExt>) -> (Mat2<QuadExt>, Mat2<QuadExt>) {
    let left = pair.eval(&"aabbbaa".parse().expect("literal word"));
    let right = pair.eval(&"baaaaaab".parse().expect("literal word"));
    (left, right)
}

/// `a^2 b^3 a^2 = b a^6 b` for the unipotents with off-diagonal `1/sqrt 6`.
/// With entry `m` the lower-left entries are `3m` and `6m^3 + 2m`, so
/// `m = 1/sqrt 6` is the only positive choice.
pub fn nonfree_demo() -> NonfreeDemo {
    let s6 = QuadExt::sqrt_int(6);
    let two = QuadExt::from(2);
    let m = s6.checked_div(&QuadExt::from(6)).expect("nonzero");
    let pair = unipotents(&m);
    let (left, right) = relation(&pair);
    let half_s6 = s6.checked_div(&two).expect("nonzero");
    let expected = Mat2::new(two.clone(), s6.clone(), half_s6, two);
    let noncommutative = pair.a.mul(&pair.b) != pair.b.mul(&pair.a);
    let (l6, r6) = relation(&unipotents(&s6));
    NonfreeDemo { pair, left, right, expected, noncommutative, holds_with_sqrt6: l6 == r6 }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_trace_polys() {
        let ctx = TripleContext::standard(Rational::zero());
        // (x^2 - 2) x - 101/50
        let expect = Poly::new(vec![q(-101, 50), q(-2, 1), q(0, 1), q(1, 1)]);
        assert_eq!(ctx.trace_poly_str("abb"), expect);
        assert_eq!(ctx.trace_poly_str("bbb"), Poly::from_i64_coeffs(&[0, -3, 0, 1]));
        assert_eq!(ctx.trace_poly_str("a"), Poly::constant(q(101, 50)));
    }

    #[test]
    fn iv2_matches_closed_form() {
        let r = iv2_counterexample();
        assert!(r.matches_closed_form, "{}", r.poly);
        assert_eq!(r.poly.degree(), Some(10));
        assert!(r.value < Rational::zero());
        assert!(iv2_closed_form().eval(&q(21, 10)) < Rational::zero());
    }

    #[test]
    fn iv1_witness() {
        let r = iv1_counterexample();
        assert_eq!(r.poly, Poly::new(vec![q(-101, 50), q(49, 50)]));
        assert_eq!(r.value, q(17, 125));
        assert_eq!(r.verdict, Ordering::Greater);
        assert!(r.poly.eval(&q(2, 1)) < Rational::zero());
    }

    #[test]
    fn iv3_root_and_signs() {
        let r = iv3_counterexample(&default_width()).unwrap();
        // high-precision root of the difference of the two sextics below
        let x0: Rational = "202553647398997611554/100000000000000000000".parse().unwrap();
        assert!(r.root.contains(&x0), "{:?}", r.root);
        assert!(r.root.width() <= default_width());
        assert_eq!(r.ab_gap.degree(), Some(8));
        assert_eq!(r.abb_gap.degree(), Some(13));
        assert_eq!((r.ab_sign, r.abb_sign), (Some(Ordering::Less), Some(Ordering::Less)));
        let cubed = Poly::new(vec![q(-227799, 125000), q(0, 1), q(21903, 2500), q(0, 1), q(-297, 50), q(0, 1), q(1, 1)]);
        let squared = Poly::new(vec![q(5201, 2500), q(9999, 1250), q(9801, 2500), q(-101, 25), q(-99, 25), q(0, 1), q(1, 1)]);
        assert_eq!(r.ab_cubed, cubed);
        assert_eq!(r.abb_squared, squared);
    }

    #[test]
    fn nonfree_relation() {
        let d = nonfree_demo();
        assert!(d.holds());
        assert!(!d.holds_with_sqrt6);
        assert_eq!(d.left.tr(), QuadExt::from(4));
        assert_eq!(d.left.a21.to_string(), "(0+1*sqrt(6))/2");
    }
}
