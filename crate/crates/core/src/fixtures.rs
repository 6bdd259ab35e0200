//! Named matrices used throughout the examples and tests.

use crate::matrix::Mat2;
use crate::scalars::QuadExt;

fn m(e: [[i64; 2]; 2]) -> Mat2<QuadExt> {
    Mat2::from_i64(e)
}

pub fn c() -> Mat2<QuadExt> {
    m([[9, 8], [1, 1]])
}

pub fn d() -> Mat2<QuadExt> {
    m([[5, -1], [1, 0]])
}

/// Entries in `Q(sqrt 6)`.
pub fn e() -> Mat2<QuadExt> {
    "[[(17-2*sqrt(6))/10,(-12+2*sqrt(6))/10],[(-3-2*sqrt(6))/10,(8+2*sqrt(6))/10]]"
        .parse()
        .expect("well-formed fixture")
}

pub fn g() -> Mat2<QuadExt> {
    m([[5, -4], [4, -3]])
}

pub fn l() -> Mat2<QuadExt> {
    m([[1, 0], [1, 1]])
}

pub fn n() -> Mat2<QuadExt> {
    m([[1, 1], [0, 1]])
}

pub const NAMES: [&str; 6] = ["C", "D", "E", "G", "L", "N"];

pub fn by_name(name: &str) -> Option<Mat2<QuadExt>> {
    Some(match name {
        "C" => c(),
        "D" => d(),
        "E" => e(),
        "G" => g(),
        "L" => l(),
        "N" => n(),
        _ => return None,
    })
}

/// Product of `L` and `N` factors spelled as a string such as `"LNL"`.
pub fn ln_word(spec: &str) -> Option<Mat2<QuadExt>> {
    let mut acc = Mat2::identity();
    for ch in spec.chars() {
        let f = match ch {
            'L' => l(),
            'N' => n(),
            _ => return None,
        };
        acc = acc.mul(&f);
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_unimodular() {
        for name in NAMES {
            assert!(by_name(name).unwrap().is_unimodular(), "{name}");
        }
        assert_eq!(e().tr(), "5/2".parse().unwrap());
        assert!(by_name("X").is_none());
        assert_eq!(ln_word("LN").unwrap(), m([[1, 1], [1, 2]]));
    }
}
