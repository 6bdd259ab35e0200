//! Randomized exact checks of the trace inequalities behind the classifier.
//!
//! Pairs come from pools of small `L`/`N` products bucketed by case, so that
//! the rarer cases get as many instances as the common ones.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ln_pair;
use crate::classifier::classify_pair;
use crate::matrix::{Mat2, MatrixPair};
use crate::scalars::QuadExt;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LemmaStats {
    pub checked: u64,
    pub failed: u64,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub seed: u64,
    pub trials: usize,
    /// Keyed by the inequality being checked.
    pub lemmas: BTreeMap<String, LemmaStats>,
}

impl LemmaReport {
    pub fn violations(&self) -> u64 {
        self.lemmas.values().map(|s| s.failed).sum()
    }

    pub fn all_passed(&self) -> bool {
        self.violations() == 0
    }

    fn record(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        let s = self.lemmas.entry(name.to_string()).or_default();
        s.checked += 1;
        if !ok {
            s.failed += 1;
            if s.counterexample.is_none() {
                s.counterexample = Some(detail());
            }
        }
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {} trials {}", self.seed, self.trials)?;
        for (name, s) in &self.lemmas {
            write!(f, "{:>6} checked {:>4} failed  {name}", s.checked, s.failed)?;
            if let Some(c) = &s.counterexample {
                write!(f, "  first counterexample: {c}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A pair in the classifier's alphabet, with the `L`/`N` words it came from.
#[derive(Clone, Debug)]
struct Specimen {
    origin: String,
    pair: MatrixPair<BigInt>,
}

impl Specimen {
    fn tr(&self, w: &str) -> BigInt {
        let m = w.chars().fold(Mat2::identity(), |acc: Mat2<BigInt>, c| {
            acc.mul(if c == 'a' { &self.pair.a } else { &self.pair.b })
        });
        m.tr()
    }

    fn describe(&self, detail: &str) -> String {
        format!("{} (A={}, B={}): {detail}", self.origin, self.pair.a, self.pair.b)
    }
}

const BUCKETS: [&str; 5] = ["IV_1", "IV_2", "IV_3a", "IV_3b", "III_EqualTraceWellOriented"];

fn ln_words(max_len: usize) -> Vec<String> {
    let mut out = Vec::new();
    for n in 1..=max_len {
        for mask in 0..(1u32 << n) {
            out.push((0..n).map(|i| if mask >> i & 1 == 1 { 'N' } else { 'L' }).collect());
        }
    }
    out
}

fn candidates() -> Vec<(String, String)> {
    let small = ln_words(5);
    let mut out = Vec::new();
    for (i, u) in small.iter().enumerate() {
        for v in &small[i + 1..] {
            out.push((u.clone(), v.clone()));
        }
    }
    // A = X^k with tr(X^k B) = tr B + k * (off-diagonal entry of B), solved
    // for the boundary values tr(B^2) and tr(B^2) + 1.
    for v in ln_words(7) {
        let b = ln_pair(&v, "L").a;
        let beta = b.tr();
        for (x, step) in [('L', &b.a12), ('N', &b.a21)] {
            if step.is_zero() {
                continue;
            }
            for t in [&beta * &beta - 2, &beta * &beta - 1] {
                let num = &t - &beta;
                let rem: BigInt = &num % step;
                if rem.is_zero() {
                    let q: BigInt = &num / step;
                    if let Some(k) = q.to_usize().filter(|k| (1..=400).contains(k)) {
                        out.push((x.to_string().repeat(k), v.clone()));
                    }
                }
            }
        }
    }
    // equal traces: swapping L and N conjugates, reversal transposes
    for u in ln_words(6) {
        let sigma: String = u.chars().map(|c| if c == 'L' { 'N' } else { 'L' }).collect();
        let rev: String = u.chars().rev().collect();
        let sigma_rev: String = sigma.chars().rev().collect();
        for v in [sigma, rev, sigma_rev] {
            if v != u {
                out.push((u.clone(), v));
            }
        }
    }
    out
}

fn pools() -> &'static BTreeMap<&'static str, Vec<Specimen>> {
    static POOLS: OnceLock<BTreeMap<&'static str, Vec<Specimen>>> = OnceLock::new();
    POOLS.get_or_init(|| {
        let mut pools: BTreeMap<&'static str, Vec<Specimen>> = BUCKETS.iter().map(|b| (*b, Vec::new())).collect();
        let mut seen = HashSet::new();
        for (u, v) in candidates() {
            let raw = ln_pair(&u, &v);
            let key = (raw.a.clone(), raw.b.clone());
            if !seen.insert(key) || raw.a.commutes_with(&raw.b) {
                continue;
            }
            let Ok(c) = classify_pair(&raw.a.map(|x| QuadExt::from(x.clone())), &raw.b.map(|x| QuadExt::from(x.clone()))) else {
                continue;
            };
            let label = c.case().label();
            let (Some(pool), Some(pair)) = (pools.get_mut(label), c.pair.to_integer()) else {
                continue;
            };
            let origin = if c.classification.swapped { format!("A={v}, B={u}") } else { format!("A={u}, B={v}") };
            pool.push(Specimen { origin, pair });
        }
        pools
    })
}

/// Number of pool pairs per case label.
pub fn pool_sizes() -> BTreeMap<&'static str, usize> {
    pools().iter().map(|(k, v)| (*k, v.len())).collect()
}

fn ab(k: usize) -> String {
    format!("a{}", "b".repeat(k))
}

fn rep(s: &str, k: usize) -> String {
    s.repeat(k)
}

fn random_word(rng: &mut ChaCha8Rng, len: usize) -> String {
    (0..len).map(|_| if rng.gen_bool(0.5) { 'a' } else { 'b' }).collect()
}

/// A random word of length at most 6 forced into the given shape.
fn shaped_word(rng: &mut ChaCha8Rng, shape: Shape) -> String {
    let len = rng.gen_range(0..=6);
    let mut w: Vec<char> = random_word(rng, len).chars().collect();
    if !w.is_empty() {
        match shape {
            Shape::Any => {}
            Shape::StartsA => w[0] = 'a',
            Shape::EndsB => *w.last_mut().unwrap() = 'b',
            Shape::StartsAb => {
                if w.len() < 2 {
                    w = vec!['a', 'b'];
                } else {
                    w[0] = 'a';
                    w[1] = 'b';
                }
            }
        }
    }
    w.into_iter().collect()
}

#[derive(Clone, Copy)]
enum Shape {
    Any,
    StartsA,
    EndsB,
    StartsAb,
}

/// A product of up to three blocks `ab` and `abb`.
fn block_word(rng: &mut ChaCha8Rng) -> String {
    (0..rng.gen_range(0..=3)).map(|_| ab(rng.gen_range(1..=2))).collect()
}

fn cyclic_factor(w: &str, f: &str) -> bool {
    w.len() >= f.len() && format!("{w}{w}").contains(f) && (w.len() > 1 || f.len() == 1)
}

fn less(report: &mut LemmaReport, sp: &Specimen, name: &str, lhs: &str, rhs: &str) {
    let (l, r) = (sp.tr(lhs), sp.tr(rhs));
    report.record(name, l < r, || sp.describe(&format!("[{lhs}] = {l}, [{rhs}] = {r}")));
}

fn check_subword(report: &mut LemmaReport, sp: &Specimen, rng: &mut ChaCha8Rng) {
    let len = rng.gen_range(1..=8);
    let w = random_word(rng, len);
    let keep: Vec<bool> = loop {
        let k: Vec<bool> = (0..w.len()).map(|_| rng.gen_bool(0.6)).collect();
        if k.iter().any(|x| !x) {
            break k;
        }
    };
    let u: String = w.chars().zip(&keep).filter(|(_, k)| **k).map(|(c, _)| c).collect();
    let exceptional = sp.pair.a.tr() == BigInt::from(2) && !w.contains('b');
    if !exceptional {
        less(report, sp, "[u] < [w] for a proper subword u of w", &u, &w);
    }
}

fn maximizers(sp: &Specimen, words: &[String]) -> Vec<String> {
    let traces: Vec<BigInt> = words.iter().map(|w| sp.tr(w)).collect();
    let best = traces.iter().max().expect("nonempty").clone();
    words.iter().zip(&traces).filter(|(_, t)| **t == best).map(|(w, _)| w.clone()).collect()
}

fn check_no_aa(report: &mut LemmaReport, sp: &Specimen, rng: &mut ChaCha8Rng) {
    let n = rng.gen_range(2..=8);
    let words: Vec<String> = (0..1u32 << n)
        .map(|m| (0..n).map(|i| if m >> i & 1 == 1 { 'b' } else { 'a' }).collect())
        .collect();
    for w in maximizers(sp, &words) {
        report.record("maximizers of fixed length avoid the cyclic factor aa", !cyclic_factor(&w, "aa"), || {
            sp.describe(&format!("length {n} maximizer {w}"))
        });
    }
}

fn check_iv1(report: &mut LemmaReport, sp: &Specimen, rng: &mut ChaCha8Rng) {
    let k = rng.gen_range(1..=4);
    less(report, sp, "[ab^k] < [b^(k+1)]", &ab(k), &"b".repeat(k + 1));
    let ks: Vec<usize> = (0..rng.gen_range(1..=4)).map(|_| rng.gen_range(1..=4)).collect();
    let lhs: String = ks.iter().map(|&k| ab(k)).collect();
    let total = ks.iter().sum::<usize>() + ks.len();
    less(report, sp, "[ab^k1 ... ab^ks] < [b^(k1+...+ks+s)]", &lhs, &"b".repeat(total));
}

fn check_iv2(report: &mut LemmaReport, sp: &Specimen, rng: &mut ChaCha8Rng) {
    let p = ab(2);
    let s = rng.gen_range(0..=4);
    let (k, h) = (rng.gen_range(0..=4), rng.gen_range(0..=4));
    let mid = rep(&p, s);

    let w = shaped_word(rng, Shape::Any);
    less(report, sp, "[w ab (ab2)^s ab3] < [w ab2 (ab2)^s ab2]", &format!("{w}ab{mid}{}", ab(3)), &format!("{w}{p}{mid}{p}"));
    less(report, sp, "[w ab (ab2)^s ab4] < [w ab2 (ab2)^s ab3]", &format!("{w}ab{mid}{}", ab(4)), &format!("{w}{p}{mid}{}", ab(3)));

    let w = shaped_word(rng, Shape::StartsA);
    less(report, sp, "[w ab3 (ab2)^s ab] < [w ab2 (ab2)^s ab2], w empty or starting with a", &format!("{w}{}{mid}ab", ab(3)), &format!("{w}{p}{mid}{p}"));
    less(report, sp, "[w ab4 (ab2)^s ab] < [w ab3 (ab2)^s ab2], w empty or starting with a", &format!("{w}{}{mid}ab", ab(4)), &format!("{w}{}{mid}{p}", ab(3)));
    less(report, sp, "[w ab4 (ab2)^s ab3] < [w (ab2)^(s+3)], w empty or starting with a", &format!("{w}{}{mid}{}", ab(4), ab(3)), &format!("{w}{}", rep(&p, s + 3)));
    less(report, sp, "[w ab3 (ab2)^s ab4] < [w (ab2)^(s+3)], w empty or starting with a", &format!("{w}{}{mid}{}", ab(3), ab(4)), &format!("{w}{}", rep(&p, s + 3)));

    let w = shaped_word(rng, Shape::EndsB);
    less(
        report,
        sp,
        "[ab2 w ab (ab2)^k ab (ab2)^h ab] < [ab2 w (ab2)^(k+h+2)], w empty or ending with b",
        &format!("{p}{w}ab{}ab{}ab", rep(&p, k), rep(&p, h)),
        &format!("{p}{w}{}", rep(&p, k + h + 2)),
    );
    less(
        report,
        sp,
        "[w ab4 (ab2)^k ab4 (ab2)^h ab4] < [w (ab2)^(k+h+5)], w empty or ending with b",
        &format!("{w}{}{}{}{}{}", ab(4), rep(&p, k), ab(4), rep(&p, h), ab(4)),
        &format!("{w}{}", rep(&p, k + h + 5)),
    );

    let w = shaped_word(rng, Shape::StartsAb);
    less(
        report,
        sp,
        "[w ab3 (ab2)^k ab3 (ab2)^h ab3] < [w (ab2)^(k+h+4)], w empty or starting with ab",
        &format!("{w}{}{}{}{}{}", ab(3), rep(&p, k), ab(3), rep(&p, h), ab(3)),
        &format!("{w}{}", rep(&p, k + h + 4)),
    );
}

fn check_iv3(report: &mut LemmaReport, sp: &Specimen, rng: &mut ChaCha8Rng, lower: bool) {
    let p = ab(2);
    let (t3, t2) = (sp.tr("ababab"), sp.tr(&rep(&p, 2)));
    report.record("|[(ab)^3] - [(ab2)^2]| >= 2 when [ab] > [b^2]", (&t3 - &t2).abs() >= BigInt::from(2), || {
        sp.describe(&format!("[(ab)^3] = {t3}, [(ab2)^2] = {t2}"))
    });
    if !lower {
        let mut w = block_word(rng);
        if w.len() % 2 == 1 {
            w.push_str(&p);
        }
        // |w| + 2k must be a multiple of 6
        let k = (3 - (w.len() / 2) % 3) % 3;
        let k = if k == 0 { 3 } else { k } + 3 * rng.gen_range(0..=1);
        less(
            report,
            sp,
            "[w ab2 (ab)^k ab2] < [w (ab)^(k+3)], w a product of ab and ab2, length a multiple of 6",
            &format!("{w}{p}{}{p}", rep("ab", k)),
            &format!("{w}{}", rep("ab", k + 3)),
        );
    } else {
        let mut w = block_word(rng);
        while !w.len().is_multiple_of(3) {
            w.push_str("ab");
        }
        let (mut k, h) = (rng.gen_range(0..=3), rng.gen_range(0..=4));
        if (w.len() / 3 + k + h).is_multiple_of(2) {
            k += 1;
        }
        less(
            report,
            sp,
            "[ab2 w ab (ab2)^k ab (ab2)^h ab] < [ab2 w (ab2)^(k+h+2)], w a product of ab and ab2, length a multiple of 6",
            &format!("{p}{w}ab{}ab{}ab", rep(&p, k), rep(&p, h)),
            &format!("{p}{w}{}", rep(&p, k + h + 2)),
        );
        let (ta, tb, tab) = (sp.tr("a"), sp.tr("b"), sp.tr("ab"));
        let tbb = sp.tr("bb");
        report.record("[ab] = [b^2] + 1 when [(ab2)^2] >= [(ab)^3] + 2", tab == &tbb + 1, || {
            sp.describe(&format!("[ab] = {tab}, [b^2] = {tbb}"))
        });
        report.record("2[a] <= [b] when [(ab2)^2] >= [(ab)^3] + 2", BigInt::from(2) * &ta <= tb, || {
            sp.describe(&format!("[a] = {ta}, [b] = {tb}"))
        });
        let cube = &tab * &tab * &tab;
        report.record("[ab]^3 <= [(ab2)^2] + [ab] when [(ab2)^2] >= [(ab)^3] + 2", cube <= &t2 + &tab, || {
            sp.describe(&format!("[ab]^3 = {cube}, [(ab2)^2] + [ab] = {}", &t2 + &tab))
        });
    }
}

/// Words with `na` letters `a` and `nb` letters `b`.
fn words_of_type(na: usize, nb: usize) -> Vec<String> {
    let n = na + nb;
    (0..1u32 << n)
        .filter(|m| m.count_ones() as usize == nb)
        .map(|m| (0..n).map(|i| if m >> i & 1 == 1 { 'b' } else { 'a' }).collect())
        .collect()
}

fn check_isolated(report: &mut LemmaReport, sp: &Specimen) {
    for n in 2..=8 {
        for nb in 1..=n / 2 {
            let na = n - nb;
            for (minority, words) in [('b', words_of_type(na, nb)), ('a', words_of_type(nb, na))] {
                let square = format!("{minority}{minority}");
                for w in maximizers(sp, &words) {
                    report.record("maximizers with the rarer letter in the minority keep it isolated", !cyclic_factor(&w, &square), || {
                        sp.describe(&format!("maximizer {w} among {na}+{nb} letters"))
                    });
                }
            }
        }
    }
}

fn check_circle(report: &mut LemmaReport, rng: &mut ChaCha8Rng) {
    let s = rng.gen_range(2..=6);
    let m = 2 * s;
    let f: Vec<i32> = (0..m).map(|_| rng.gen_range(-10..=10)).collect();
    let found = (0..m).any(|x| f[x] >= f[(x + 2) % m] && f[(x + 1) % m] <= f[(x + 3) % m]);
    report.record("f on Z/2s has x with f(x) >= f(x+2) and f(x+1) <= f(x+3)", found, || format!("f = {f:?}"));
}

/// Runs `trials` rounds. Each round draws one pair from the pool of one case
/// (cycling through the cases), checks every inequality whose hypotheses that
/// case satisfies, and checks the circle lemma on one random function.
pub fn lemma_suite(seed: u64, trials: usize) -> LemmaReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = LemmaReport { seed, trials, lemmas: BTreeMap::new() };
    let pools = pools();
    for t in 0..trials {
        check_circle(&mut report, &mut rng);
        let bucket = BUCKETS[t % BUCKETS.len()];
        let Some(sp) = pools[bucket].choose(&mut rng) else {
            continue;
        };
        match bucket {
            "III_EqualTraceWellOriented" => check_isolated(&mut report, sp),
            _ => {
                check_subword(&mut report, sp, &mut rng);
                check_no_aa(&mut report, sp, &mut rng);
                match bucket {
                    "IV_1" => check_iv1(&mut report, sp, &mut rng),
                    "IV_2" => check_iv2(&mut report, sp, &mut rng),
                    "IV_3a" => check_iv3(&mut report, sp, &mut rng, false),
                    _ => check_iv3(&mut report, sp, &mut rng, true),
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn specimen(u: &str, v: &str) -> Specimen {
        Specimen { origin: format!("{u},{v}"), pair: ln_pair(u, v) }
    }

    #[test]
    fn every_case_has_a_pool() {
        for (case, n) in pool_sizes() {
            assert!(n >= 5, "{case} has only {n} pairs");
        }
    }

    #[test]
    fn specimen_with_abb_optimal() {
        let sp = specimen(&"L".repeat(11), "LNL");
        assert_eq!((sp.tr("ab"), sp.tr("bb")), (BigInt::from(15), BigInt::from(14)));
        assert_eq!((sp.tr("ababab"), sp.tr("abbabb")), (BigInt::from(3330), BigInt::from(3362)));
        let mut r = LemmaReport { seed: 0, trials: 1, lemmas: BTreeMap::new() };
        check_iv3(&mut r, &sp, &mut ChaCha8Rng::seed_from_u64(0), true);
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn circle_small_case() {
        let f = [0, 1, 0, 1];
        assert!((0..4).any(|x| f[x] >= f[(x + 2) % 4] && f[(x + 1) % 4] <= f[(x + 3) % 4]));
    }

    #[test]
    fn cyclic_factors() {
        assert!(cyclic_factor("abba", "aa"));
        assert!(!cyclic_factor("abab", "aa"));
        assert!(!cyclic_factor("ab", "bb"));
        assert!(cyclic_factor("b", "b"));
    }

    #[test]
    fn short_suite_passes() {
        let r = lemma_suite(7, 100);
        assert!(r.all_passed(), "{r}");
        assert!(r.lemmas.len() >= 20, "{r}");
    }
}
