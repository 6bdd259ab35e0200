//! Trace characters `[w] = tr Φ(w)`, evaluated either from explicit matrices
//! or symbolically from the triple `([a], [b], [ab])`, plus exact radii.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::matrix::MatrixPair;
use crate::scalars::{chebyshev_fast, QuadExt, RealScalar, Ring, Rational};
use crate::words::{Gen, GroupWord, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CharError {
    #[error("trace {trace} of {word} is below 2 (elliptic product)")]
    Elliptic { word: String, trace: String },
}

/// Where trace values come from.
#[derive(Clone, Debug)]
pub enum CharacterContext<S> {
    Matrices(MatrixPair<S>),
    /// `x = [a]`, `y = [b]`, `z = [ab]`.
    Triple { x: S, y: S, z: S },
}

impl<S: Ring> CharacterContext<S> {
    pub fn triple(x: S, y: S, z: S) -> Self {
        CharacterContext::Triple { x, y, z }
    }

    /// The triple `([a], [b], [ab])` of this context.
    pub fn traces(&self) -> (S, S, S) {
        match self {
            CharacterContext::Matrices(p) => (p.a.tr(), p.b.tr(), p.a.mul(&p.b).tr()),
            CharacterContext::Triple { x, y, z } => (x.clone(), y.clone(), z.clone()),
        }
    }

    /// `[w]` for a word given as text.
    pub fn char_str(&self, w: &str) -> Result<S, crate::words::WordError> {
        Ok(char_of(&w.parse()?, self))
    }
}

/// One-shot evaluation of `[w]`.
pub fn char_of<S: Ring>(w: &GroupWord, ctx: &CharacterContext<S>) -> S {
    match ctx {
        CharacterContext::Matrices(pair) => pair.eval_group(w).tr(),
        CharacterContext::Triple { x, y, z } => {
            TripleEvaluator::new(x.clone(), y.clone(), z.clone()).eval(w)
        }
    }
}

/// Evaluates characters from `([a], [b], [ab])` with a memo table keyed by
/// canonical cyclic words. One evaluator per worker.
pub struct TripleEvaluator<S> {
    x: S,
    y: S,
    z: S,
    memo: HashMap<GroupWord, S>,
}

impl<S: Ring> TripleEvaluator<S> {
    pub fn new(x: S, y: S, z: S) -> Self {
        TripleEvaluator { x, y, z, memo: HashMap::new() }
    }

    pub fn eval(&mut self, w: &GroupWord) -> S {
        let key = canonical(w);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let v = self.reduce(&key);
        self.memo.insert(key, v.clone());
        v
    }

    pub fn eval_word(&mut self, w: &Word) -> S {
        self.eval(&w.to_group())
    }

    fn gen_trace(&self, g: Gen) -> S {
        match g {
            Gen::A => self.x.clone(),
            Gen::B => self.y.clone(),
        }
    }

    /// `w` is canonical, hence cyclically reduced.
    fn reduce(&mut self, w: &GroupWord) -> S {
        let letters = w.letters();
        if letters.is_empty() {
            return S::from_i64(2);
        }
        let blocks = blocks(letters);
        if blocks.len() == 1 {
            let (g, e) = blocks[0];
            return chebyshev_fast(e.unsigned_abs(), &self.gen_trace(g));
        }
        // a block with |exponent| >= 2: rotate it to the end and peel one letter
        if let Some(i) = blocks.iter().position(|&(_, e)| e.abs() >= 2) {
            let (g, e) = blocks[i];
            let u = Letter { gen: g, inverse: e < 0 };
            let mut rest: Vec<Letter> = Vec::with_capacity(letters.len());
            for &(h, f) in blocks[i + 1..].iter().chain(&blocks[..i]) {
                push_block(&mut rest, h, f);
            }
            let k = e.unsigned_abs() as usize;
            let once = GroupWord::from_letters(rest.iter().copied().chain(std::iter::repeat_n(u, k - 1)));
            let twice = GroupWord::from_letters(rest.iter().copied().chain(std::iter::repeat_n(u, k - 2)));
            let t = self.gen_trace(g);
            return self.eval(&once) * t - self.eval(&twice);
        }
        // alternating letters with exponents +-1
        if letters.iter().all(|l| !l.inverse) || letters.iter().all(|l| l.inverse) {
            return chebyshev_fast(letters.len() as u64 / 2, &self.z);
        }
        let i = letters.iter().position(|l| l.inverse).expect("mixed signs");
        let mut rotated = letters.to_vec();
        rotated.rotate_left(i + 1);
        let u = rotated.pop().expect("nonempty").inv();
        // [X u^-1] = [X][u] - [X u]
        let x_part = GroupWord::from_letters(rotated.iter().copied());
        let flipped = GroupWord::from_letters(rotated.iter().copied().chain([u]));
        let t = self.gen_trace(u.gen);
        self.eval(&x_part) * t - self.eval(&flipped)
    }
}

/// Maximal runs `g^e` in a cyclically reduced word, merged across the seam.
fn blocks(letters: &[Letter]) -> Vec<(Gen, i64)> {
    let mut out: Vec<(Gen, i64)> = Vec::new();
    for l in letters {
        let s = if l.inverse { -1 } else { 1 };
        match out.last_mut() {
            Some((g, e)) if *g == l.gen => *e += s,
            _ => out.push((l.gen, s)),
        }
    }
    if out.len() > 1 && out[0].0 == out[out.len() - 1].0 {
        let (_, e) = out.pop().expect("len > 1");
        out[0].1 += e;
    }
    out
}

fn push_block(v: &mut Vec<Letter>, g: Gen, e: i64) {
    let l = Letter { gen: g, inverse: e < 0 };
    v.extend(std::iter::repeat_n(l, e.unsigned_abs() as usize));
}

/// Least rotation among `w`, its reversal, its inverse and the letterwise
/// inverse, after cyclic reduction. All of these have the same trace.
pub fn canonical(w: &GroupWord) -> GroupWord {
    let base = w.cyclically_reduced();
    if base.len() <= 1 {
        return base;
    }
    let inv = base.inverse();
    let candidates = [base.reverse(), inv.reverse(), inv, base];
    let n = candidates[0].len();
    let mut best: Option<Vec<Letter>> = None;
    for c in &candidates {
        let mut v = c.letters().to_vec();
        for _ in 0..n {
            if best.as_ref().is_none_or(|b| v < *b) {
                best = Some(v.clone());
            }
            v.rotate_left(1);
        }
    }
    GroupWord::from_letters(best.expect("nonempty"))
}

/// `ρ^(1/n)` where `ρ + 1/ρ = t`, `t >= 2`: the growth rate of a word of
/// length `n` whose trace is `t`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraicRadius {
    pub trace: QuadExt,
    pub root: u32,
}

impl AlgebraicRadius {
    pub fn new(trace: QuadExt, root: u32) -> Self {
        assert!(root >= 1, "root must be positive");
        AlgebraicRadius { trace, root }
    }

    /// Decimal expansion truncated (not rounded) to `digits` places.
    pub fn approx(&self, digits: u32) -> String {
        let scale = BigInt::from(10u32).pow(digits);
        let t = &self.trace;
        let at_least = |n: &BigInt| -> bool {
            let x = Rational::new(n.clone(), scale.clone());
            let y = num_traits::pow(x, self.root as usize);
            QuadExt::from(&y + y.recip()) <= *t
        };
        // ρ^(1/n) lies in [1, max(t, 1)]
        let mut lo = scale.clone();
        let top = t.enclose(4).hi().ceil().to_integer().max(BigInt::one());
        let mut hi = &top * &scale + 1;
        while &hi - &lo > BigInt::one() {
            let mid: BigInt = (&lo + &hi) >> 1;
            if at_least(&mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let (int, frac) = lo.div_rem(&scale);
        if digits == 0 {
            int.to_string()
        } else {
            format!("{int}.{:0>width$}", frac.to_string(), width = digits as usize)
        }
    }

    pub fn to_f64(&self) -> f64 {
        let t = self.trace.to_f64();
        let rho = (t + (t * t - 4.0).max(0.0).sqrt()) / 2.0;
        rho.powf(1.0 / self.root as f64)
    }
}

impl fmt::Display for AlgebraicRadius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rho(t={})^(1/{})", self.trace, self.root)
    }
}

/// Compares `ρ(t1)^(1/n1)` with `ρ(t2)^(1/n2)` for traces `>= 2`.
pub fn trace_radius_cmp<S: RealScalar>(t1: &S, n1: u32, t2: &S, n2: u32) -> Ordering {
    let m = n1.lcm(&n2);
    chebyshev_fast((m / n1) as u64, t1).cmp(&chebyshev_fast((m / n2) as u64, t2))
}

pub fn radius_cmp(r1: &AlgebraicRadius, r2: &AlgebraicRadius) -> Ordering {
    trace_radius_cmp(&r1.trace, r1.root, &r2.trace, r2.root)
}

/// Radius of a positive word, or an error if its trace is below 2.
pub fn radius<S: RealScalar>(w: &Word, ctx: &CharacterContext<S>) -> Result<AlgebraicRadius, CharError> {
    let t = char_of(&w.to_group(), ctx);
    if t < S::from_i64(2) {
        return Err(CharError::Elliptic { word: w.to_string(), trace: format!("{t:?}") });
    }
    Ok(AlgebraicRadius::new(t.to_quad(), w.len() as u32))
}

/// The word preorder: `w ⪯ u` iff `[w^|u|] <= [u^|w|]`.
pub fn word_cmp<S: RealScalar>(w: &Word, u: &Word, ctx: &CharacterContext<S>) -> Ordering {
    let tw = char_of(&w.to_group(), ctx);
    let tu = char_of(&u.to_group(), ctx);
    trace_radius_cmp(&tw, w.len() as u32, &tu, u.len() as u32)
}
