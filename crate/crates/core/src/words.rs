//! Words over `{a, b}` (the free semigroup) and over `{a, b, A, B}` with
//! `A = a^-1`, `B = b^-1` (the free group).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("empty word")]
    Empty,
    #[error("invalid letter {0:?} in {1:?}")]
    InvalidLetter(char, String),
}

/// Generator of the free monoid, ordered `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Gen {
    A,
    B,
}

impl Gen {
    pub fn other(self) -> Gen {
        match self {
            Gen::A => Gen::B,
            Gen::B => Gen::A,
        }
    }

    fn as_char(self) -> char {
        match self {
            Gen::A => 'a',
            Gen::B => 'b',
        }
    }
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: Gen,
    pub inverse: bool,
}

impl Letter {
    pub const A: Letter = Letter { gen: Gen::A, inverse: false };
    pub const B: Letter = Letter { gen: Gen::B, inverse: false };
    pub const A_INV: Letter = Letter { gen: Gen::A, inverse: true };
    pub const B_INV: Letter = Letter { gen: Gen::B, inverse: true };

    pub fn inv(self) -> Letter {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    fn as_char(self) -> char {
        match (self.gen, self.inverse) {
            (Gen::A, false) => 'a',
            (Gen::B, false) => 'b',
            (Gen::A, true) => 'A',
            (Gen::B, true) => 'B',
        }
    }
}

impl From<Gen> for Letter {
    fn from(gen: Gen) -> Letter {
        Letter { gen, inverse: false }
    }
}

/// Nonempty positive word.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Gen>);

impl Word {
    pub fn new(letters: Vec<Gen>) -> Result<Word, WordError> {
        if letters.is_empty() {
            Err(WordError::Empty)
        } else {
            Ok(Word(letters))
        }
    }

    pub fn letter(g: Gen) -> Word {
        Word(vec![g])
    }

    pub fn a() -> Word {
        Word(vec![Gen::A])
    }

    pub fn b() -> Word {
        Word(vec![Gen::B])
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn count(&self, g: Gen) -> usize {
        self.0.iter().filter(|&&x| x == g).count()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, k: usize) -> Word {
        assert!(k >= 1, "positive words have no zeroth power");
        Word(self.0.repeat(k))
    }

    /// Cyclic shift moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> Word {
        let mut v = self.0.clone();
        v.rotate_left(k % self.len());
        Word(v)
    }

    pub fn rotations(&self) -> Vec<Word> {
        (0..self.len()).map(|k| self.rotate(k)).collect()
    }

    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Shortest `u` and largest `k` with `self = u^k`.
    pub fn primitive_root(&self) -> (Word, usize) {
        let n = self.len();
        for d in 1..=n {
            if n.is_multiple_of(d) && (d..n).all(|i| self.0[i] == self.0[i - d]) {
                return (Word(self.0[..d].to_vec()), n / d);
            }
        }
        unreachable!("the word is its own root")
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive_root().1 == 1
    }

    /// Strictly smaller than each of its proper rotations.
    pub fn is_lyndon(&self) -> bool {
        (1..self.len()).all(|k| *self < self.rotate(k))
    }

    pub fn least_rotation(&self) -> Word {
        self.rotations().into_iter().min().expect("nonempty")
    }

    /// Lyndon representative of the conjugacy class of the primitive root.
    pub fn lyndon_root(&self) -> Word {
        self.primitive_root().0.least_rotation()
    }

    /// Whether `g g` occurs when the word is read cyclically.
    pub fn has_cyclic_square(&self, g: Gen) -> bool {
        let n = self.len();
        if n == 1 {
            return false;
        }
        (0..n).any(|i| self.0[i] == g && self.0[(i + 1) % n] == g)
    }

    /// Exponents `k_i` of a cyclic factorization into blocks `a b^{k_i}`,
    /// read from the lexicographically least rotation that starts a block.
    pub fn syllabic_decomposition(&self) -> Option<Vec<usize>> {
        if self.count(Gen::A) == 0 || self.count(Gen::B) == 0 || self.has_cyclic_square(Gen::A) {
            return None;
        }
        let start = (0..self.len())
            .filter(|&k| self.0[k] == Gen::A)
            .map(|k| self.rotate(k))
            .min()
            .expect("contains a");
        let mut exps = Vec::new();
        for &g in start.letters() {
            match g {
                Gen::A => exps.push(0),
                Gen::B => *exps.last_mut().expect("starts with a") += 1,
            }
        }
        Some(exps)
    }

    /// Word `a b^{k_1} a b^{k_2} ...`.
    pub fn from_syllables(exps: &[usize]) -> Word {
        let mut v = Vec::new();
        for &k in exps {
            v.push(Gen::A);
            v.extend(std::iter::repeat_n(Gen::B, k));
        }
        Word::new(v).expect("at least one syllable")
    }

    pub fn to_group(&self) -> GroupWord {
        GroupWord(self.0.iter().map(|&g| Letter::from(g)).collect())
    }
}

/// Whether `u` embeds in `w` as a scattered subsequence.
pub fn is_subword(u: &[Gen], w: &[Gen]) -> bool {
    let mut it = w.iter();
    u.iter().all(|x| it.any(|y| y == x))
}

/// All Lyndon words over `a < b` of length at most `max_len`, in
/// lexicographic order (Duval's successor iteration).
pub fn lyndon_words(max_len: usize) -> Vec<Word> {
    LyndonIter::new(max_len).collect()
}

/// Streaming form of [`lyndon_words`].
pub struct LyndonIter {
    max_len: usize,
    cur: Vec<Gen>,
}

impl LyndonIter {
    pub fn new(max_len: usize) -> Self {
        let cur = if max_len == 0 { Vec::new() } else { vec![Gen::A] };
        LyndonIter { max_len, cur }
    }
}

impl Iterator for LyndonIter {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.cur.is_empty() {
            return None;
        }
        let out = Word(self.cur.clone());
        // successor: extend periodically, drop trailing b's, bump the last letter
        let m = self.cur.len();
        for i in m..self.max_len {
            let g = self.cur[i - m];
            self.cur.push(g);
        }
        while self.cur.last() == Some(&Gen::B) {
            self.cur.pop();
        }
        if let Some(last) = self.cur.last_mut() {
            *last = Gen::B;
        }
        Some(out)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|g| write!(f, "{}", g.as_char()))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters = s
            .trim()
            .chars()
            .map(|c| match c {
                'a' => Ok(Gen::A),
                'b' => Ok(Gen::B),
                _ => Err(WordError::InvalidLetter(c, s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Word::new(letters)
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Freely reduced element of the free group on `a, b`; may be empty.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GroupWord(Vec<Letter>);

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord(Vec::new())
    }

    /// Reduces the given letters.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        GroupWord(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn reverse(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().copied().collect())
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        GroupWord::from_letters(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn pow(&self, k: usize) -> GroupWord {
        GroupWord::from_letters(self.0.repeat(k))
    }

    /// Conjugate with no cancellation between last and first letter.
    pub fn cyclically_reduced(&self) -> GroupWord {
        let mut lo = 0;
        let mut hi = self.0.len();
        while hi - lo >= 2 && self.0[lo] == self.0[hi - 1].inv() {
            lo += 1;
            hi -= 1;
        }
        GroupWord(self.0[lo..hi].to_vec())
    }

    /// `Some` when no inverse letters occur and the word is nonempty.
    pub fn to_positive(&self) -> Option<Word> {
        if self.0.iter().any(|l| l.inverse) {
            return None;
        }
        Word::new(self.0.iter().map(|l| l.gen).collect()).ok()
    }
}

impl From<&Word> for GroupWord {
    fn from(w: &Word) -> Self {
        w.to_group()
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        self.0.iter().try_for_each(|l| write!(f, "{}", l.as_char()))
    }
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupWord({self})")
    }
}

impl FromStr for GroupWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "1" {
            return Ok(GroupWord::identity());
        }
        let letters = t
            .chars()
            .map(|c| match c {
                'a' => Ok(Letter::A),
                'b' => Ok(Letter::B),
                'A' => Ok(Letter::A_INV),
                'B' => Ok(Letter::B_INV),
                _ => Err(WordError::InvalidLetter(c, s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GroupWord::from_letters(letters))
    }
}
