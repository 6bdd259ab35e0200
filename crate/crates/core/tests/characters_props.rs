mod common;

use std::cmp::Ordering;

use num_bigint::BigInt;
use proptest::prelude::*;
use sl2jsr::characters::{char_of, word_cmp, CharacterContext};
use sl2jsr::matrix::{word_eval, MatrixPair};
use sl2jsr::scalars::chebyshev;
use sl2jsr::words::GroupWord;

fn pair() -> impl Strategy<Value = MatrixPair<BigInt>> {
    (common::sl2z(6), common::sl2z(6)).prop_map(|(a, b)| MatrixPair::new(a, b).unwrap())
}

fn triple(p: &MatrixPair<BigInt>) -> CharacterContext<BigInt> {
    CharacterContext::triple(p.a.tr(), p.b.tr(), p.a.mul(&p.b).tr())
}

fn rotate(w: &GroupWord, k: usize) -> GroupWord {
    let ls = w.letters();
    if ls.is_empty() {
        return w.clone();
    }
    let k = k % ls.len();
    GroupWord::from_letters(ls[k..].iter().chain(&ls[..k]).copied())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn product_formula(p in pair(), w in common::group_word(6), u in common::group_word(6)) {
        for ctx in [CharacterContext::Matrices(p.clone()), triple(&p)] {
            let lhs = char_of(&w, &ctx) * char_of(&u, &ctx);
            let rhs = char_of(&w.mul(&u), &ctx) + char_of(&w.mul(&u.inverse()), &ctx);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn invariance(p in pair(), w in common::group_word(8), k in 0usize..8) {
        for ctx in [CharacterContext::Matrices(p.clone()), triple(&p)] {
            let t = char_of(&w, &ctx);
            prop_assert_eq!(&char_of(&rotate(&w, k), &ctx), &t);
            prop_assert_eq!(&char_of(&w.reverse(), &ctx), &t);
            prop_assert_eq!(&char_of(&w.inverse(), &ctx), &t);
        }
    }

    #[test]
    fn triple_matches_matrices(p in pair(), w in common::group_word(8)) {
        prop_assert_eq!(char_of(&w, &triple(&p)), word_eval(&w, &p).tr());
    }

    #[test]
    fn powers_follow_chebyshev(p in pair(), w in common::group_word(5), k in 0usize..6) {
        for ctx in [CharacterContext::Matrices(p.clone()), triple(&p)] {
            prop_assert_eq!(char_of(&w.pow(k), &ctx), chebyshev(k as u64, &char_of(&w, &ctx)));
        }
    }

    #[test]
    fn word_order_is_a_total_preorder(
        p in common::ln_pair(4),
        x in common::word(1, 6),
        y in common::word(1, 6),
        z in common::word(1, 6),
    ) {
        let ctx = CharacterContext::Matrices(p);
        let (xy, yz, xz) = (word_cmp(&x, &y, &ctx), word_cmp(&y, &z, &ctx), word_cmp(&x, &z, &ctx));
        prop_assert_eq!(word_cmp(&y, &x, &ctx), xy.reverse());
        if xy != Ordering::Greater && yz != Ordering::Greater {
            prop_assert_ne!(xz, Ordering::Greater);
        }
        if xy == Ordering::Equal && yz == Ordering::Equal {
            prop_assert_eq!(xz, Ordering::Equal);
        }
    }
}
