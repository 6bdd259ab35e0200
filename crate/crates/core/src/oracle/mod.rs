//! Brute-force verification: exhaustive search over Lyndon words, checks of
//! classifier output against it, and random pair generation.

pub mod lemmas;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::characters::{radius_cmp, trace_radius_cmp, AlgebraicRadius};
use crate::classifier::{classify_pair, Case, ClassifyError, OptimalitySet};
use crate::matrix::{Mat2, MatrixPair};
use crate::scalars::{chebyshev_fast, QuadExt, RealScalar};
use crate::words::{lyndon_words, Word};

pub use lemmas::{lemma_suite, LemmaReport, LemmaStats};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("[{word}] = {trace} < 2: the pair is not coherently oriented")]
    TraceBelowTwo { word: String, trace: String },
    #[error("max_len must be at least 1")]
    EmptySearch,
    #[error("classification is out of scope: {0}")]
    OutOfScope(String),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error("could not build a thread pool: {0}")]
    Pool(String),
}

/// Why a Lyndon word is not maximal: `T_{m/|w|}([w]) < T_{m/|u|}([u])`
/// for a maximal `u` and `m = lcm(|w|, |u|)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub word: Word,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    /// All maximal Lyndon words, lexicographically sorted.
    pub max_words: Vec<Word>,
    pub radius: AlgebraicRadius,
    pub max_len: usize,
    pub certificates: Option<Vec<Certificate>>,
}

fn traces<S: RealScalar>(pair: &MatrixPair<S>, words: &[Word], workers: usize) -> Result<Vec<S>, OracleError> {
    let eval = |w: &Word| pair.trace(w);
    if workers <= 1 {
        return Ok(words.iter().map(eval).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| OracleError::Pool(e.to_string()))?;
    Ok(pool.install(|| words.par_iter().map(eval).collect()))
}

/// Every maximal Lyndon word of length at most `max_len`, ties kept exactly.
pub fn brute_force_max<S: RealScalar>(
    pair: &MatrixPair<S>,
    max_len: usize,
    workers: usize,
    with_certificates: bool,
) -> Result<OracleReport, OracleError> {
    if max_len == 0 {
        return Err(OracleError::EmptySearch);
    }
    let words = lyndon_words(max_len);
    let values = traces(pair, &words, workers)?;
    let two = S::from_i64(2);
    let mut best: Option<usize> = None;
    let mut ties: Vec<usize> = Vec::new();
    for (i, t) in values.iter().enumerate() {
        if *t < two {
            return Err(OracleError::TraceBelowTwo { word: words[i].to_string(), trace: format!("{t:?}") });
        }
        let n = words[i].len() as u32;
        match best {
            None => {
                best = Some(i);
                ties = vec![i];
            }
            Some(b) => match trace_radius_cmp(t, n, &values[b], words[b].len() as u32) {
                Ordering::Greater => {
                    best = Some(i);
                    ties = vec![i];
                }
                Ordering::Equal => ties.push(i),
                Ordering::Less => {}
            },
        }
    }
    let b = best.expect("at least one word");
    let certificates = with_certificates.then(|| {
        let (tb, nb) = (&values[b], words[b].len() as u64);
        (0..words.len())
            .filter(|i| !ties.contains(i))
            .map(|i| {
                let n = words[i].len() as u64;
                let m = num_integer::lcm(n, nb);
                Certificate {
                    word: words[i].clone(),
                    lhs: format!("{:?}", chebyshev_fast(m / n, &values[i])),
                    rhs: format!("{:?}", chebyshev_fast(m / nb, tb)),
                }
            })
            .collect()
    });
    let max_words: Vec<Word> = ties.iter().map(|&i| words[i].clone()).collect();
    Ok(OracleReport {
        max_words,
        radius: AlgebraicRadius::new(values[b].to_quad(), words[b].len() as u32),
        max_len,
        certificates,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub agree: bool,
    pub detail: String,
    pub report: OracleReport,
}

impl fmt::Display for Verification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", if self.agree { "agree" } else { "DISCREPANCY" }, self.detail)
    }
}

fn names(ws: &[Word]) -> String {
    ws.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(",")
}

/// Compares a claimed optimal set and radius with exhaustive search.
pub fn verify_against<S: RealScalar>(
    pair: &MatrixPair<S>,
    claimed: &OptimalitySet,
    claimed_radius: &AlgebraicRadius,
    max_len: usize,
    workers: usize,
) -> Result<Verification, OracleError> {
    let report = brute_force_max(pair, max_len, workers, false)?;
    let found = names(&report.max_words);
    let (agree, detail) = match claimed {
        OptimalitySet::Finite(ws) => {
            let short: Vec<Word> = ws.iter().filter(|w| w.len() <= max_len).cloned().collect();
            if short.is_empty() {
                let ord = radius_cmp(&report.radius, claimed_radius);
                (ord == Ordering::Less, format!("no claimed word fits in length {max_len}; search maximum {found} is {ord:?} than the claimed radius"))
            } else {
                let same_radius = radius_cmp(&report.radius, claimed_radius) == Ordering::Equal;
                (report.max_words == short && same_radius, format!("claimed {{{}}}, search found {{{found}}}", names(&short)))
            }
        }
        OptimalitySet::AllNonPowers => {
            let all = lyndon_words(max_len);
            let same_radius = radius_cmp(&report.radius, claimed_radius) == Ordering::Equal;
            (
                report.max_words == all && same_radius,
                format!("claimed every Lyndon word ties; {} of {} tie", report.max_words.len(), all.len()),
            )
        }
    };
    Ok(Verification { agree, detail, report })
}

/// Classifies the pair and checks the result by exhaustive search.
pub fn verify_classification(
    a: &Mat2<QuadExt>,
    b: &Mat2<QuadExt>,
    max_len: usize,
    workers: usize,
) -> Result<Verification, OracleError> {
    let c = classify_pair(a, b)?;
    let (Some(report), true) = (c.report.as_ref(), c.case().is_in_scope()) else {
        return Err(OracleError::OutOfScope(c.case().to_string()));
    };
    match c.pair.to_integer() {
        Some(int_pair) => verify_against(&int_pair, &report.optimal, &report.radius, max_len, workers),
        None => verify_against(&c.pair, &report.optimal, &report.radius, max_len, workers),
    }
}

/// Case label alongside the verification, for reporting.
pub fn classify_and_verify(
    a: &Mat2<QuadExt>,
    b: &Mat2<QuadExt>,
    max_len: usize,
    workers: usize,
) -> Result<(Case, Verification), OracleError> {
    let case = classify_pair(a, b)?.classification.case;
    Ok((case, verify_classification(a, b, max_len, workers)?))
}

fn ln_matrix(spec: &str) -> Mat2<BigInt> {
    let l = Mat2::from_i64([[1, 0], [1, 1]]);
    let n = Mat2::from_i64([[1, 1], [0, 1]]);
    spec.chars().fold(Mat2::identity(), |acc, c| acc.mul(if c == 'L' { &l } else { &n }))
}

/// Two random nonempty words over `{L, N}` of length at most `max_factors`
/// whose products do not commute. Deterministic in `seed`.
pub fn random_factors(seed: u64, max_factors: usize) -> (String, String) {
    assert!(max_factors >= 2, "max_factors must be at least 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let word = |rng: &mut ChaCha8Rng| -> String {
        let len = rng.gen_range(1..=max_factors);
        (0..len).map(|_| if rng.gen_bool(0.5) { 'L' } else { 'N' }).collect()
    };
    loop {
        let u = word(&mut rng);
        let v = word(&mut rng);
        let (a, b) = (ln_matrix(&u), ln_matrix(&v));
        if a != b && !a.commutes_with(&b) {
            return (u, v);
        }
    }
}

pub fn random_pair(seed: u64, max_factors: usize) -> MatrixPair<BigInt> {
    let (u, v) = random_factors(seed, max_factors);
    MatrixPair::new(ln_matrix(&u), ln_matrix(&v)).expect("products of L and N are unimodular")
}

pub(crate) fn ln_pair(u: &str, v: &str) -> MatrixPair<BigInt> {
    MatrixPair::new(ln_matrix(u), ln_matrix(v)).expect("products of L and N are unimodular")
}
