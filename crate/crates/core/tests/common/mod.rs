#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::prelude::*;
use sl2jsr::matrix::{Mat2, MatrixPair};
use sl2jsr::scalars::QuadExt;
use sl2jsr::words::{GroupWord, Letter, Word};

pub fn l() -> Mat2<BigInt> {
    Mat2::from_i64([[1, 0], [1, 1]])
}

pub fn n() -> Mat2<BigInt> {
    Mat2::from_i64([[1, 1], [0, 1]])
}

/// Product of `L` (true) and `N` (false) factors.
pub fn ln(bits: &[bool]) -> Mat2<BigInt> {
    bits.iter().fold(Mat2::identity(), |acc, &b| acc.mul(&if b { l() } else { n() }))
}

pub fn quad(m: &Mat2<BigInt>) -> Mat2<QuadExt> {
    m.map(|x| QuadExt::from(x.clone()))
}

/// Noncommuting pairs of products of `L` and `N`.
pub fn ln_pair(max_factors: usize) -> impl Strategy<Value = MatrixPair<BigInt>> {
    let side = prop::collection::vec(any::<bool>(), 1..=max_factors);
    (side.clone(), side)
        .prop_map(|(u, v)| MatrixPair::new(ln(&u), ln(&v)).unwrap())
        .prop_filter("commuting", |p| !p.a.commutes_with(&p.b))
}

/// Random element of SL(2, Z) as a word in `L`, `N` and their inverses.
pub fn sl2z(max_factors: usize) -> impl Strategy<Value = Mat2<BigInt>> {
    prop::collection::vec(0u8..4, 0..=max_factors).prop_map(|fs| {
        fs.iter().fold(Mat2::identity(), |acc, f| {
            let m = match f {
                0 => l(),
                1 => n(),
                2 => l().inv().unwrap(),
                _ => n().inv().unwrap(),
            };
            acc.mul(&m)
        })
    })
}

pub fn group_word(max_len: usize) -> impl Strategy<Value = GroupWord> {
    prop::collection::vec(0u8..4, 0..=max_len).prop_map(|ls| {
        GroupWord::from_letters(ls.into_iter().map(|l| match l {
            0 => Letter::A,
            1 => Letter::B,
            2 => Letter::A_INV,
            _ => Letter::B_INV,
        }))
    })
}

pub fn word(min_len: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(any::<bool>(), min_len..=max_len)
        .prop_map(|bs| bs.iter().map(|&b| if b { 'b' } else { 'a' }).collect::<String>().parse().unwrap())
}
