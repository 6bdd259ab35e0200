mod common;

use std::cmp::Ordering;

use proptest::prelude::*;
use sl2jsr::geometry::{
    axes_relation, betweenness, classify_element, coherent_orientation, fixed_points, trichotomy_check, ArcMeet,
    AxesRelation, BoundaryPoint, ElementClass,
};
use sl2jsr::matrix::Mat2;
use sl2jsr::scalars::{QuadExt, Rational};

fn point() -> impl Strategy<Value = BoundaryPoint> {
    prop_oneof![
        1 => Just(BoundaryPoint::Infinity),
        9 => (-30i64..30, 1i64..7).prop_map(|(n, d)| BoundaryPoint::finite(QuadExt::from_rational(&Rational::new(n.into(), d.into())))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn fixed_points_of_words_lie_in_the_arcs(p in common::ln_pair(4), w in common::word(1, 6)) {
        let (a, b) = (common::quad(&p.a), common::quad(&p.b));
        let (plus, minus) = coherent_orientation(&a, &b).unwrap().expect("nonnegative pairs are coherent");
        let m = common::quad(&p.eval(&w));
        prop_assert!(m.tr() >= QuadExt::from(2));
        if classify_element(&m) == ElementClass::Hyperbolic {
            let (attracting, repelling) = fixed_points(&m).unwrap();
            prop_assert!(plus.contains(&attracting), "{} not in {:?}", attracting, plus);
            prop_assert!(minus.contains(&repelling), "{} not in {:?}", repelling, minus);
        }
    }

    #[test]
    fn attracting_point_differs_from_that_of_b(p in common::ln_pair(4), w in common::word(1, 6)) {
        let (a, b) = (common::quad(&p.a), common::quad(&p.b));
        let (alpha, _) = fixed_points(&a).unwrap();
        let (beta, _) = fixed_points(&b).unwrap();
        prop_assume!(alpha != beta && w.count(sl2jsr::words::Gen::A) > 0);
        let (gamma, _) = fixed_points(&common::quad(&p.eval(&w))).unwrap();
        prop_assert_ne!(gamma, beta);
    }

    #[test]
    fn axes_relation_predicts_trichotomy(p in common::ln_pair(5)) {
        let (a, b) = (common::quad(&p.a), common::quad(&p.b));
        prop_assume!(classify_element(&a) == ElementClass::Hyperbolic && classify_element(&b) == ElementClass::Hyperbolic);
        let (plus, minus) = coherent_orientation(&a, &b).unwrap().unwrap();
        prop_assume!(plus.meet(&minus) == ArcMeet::Disjoint);
        let expected = match axes_relation(&a, &b).unwrap() {
            AxesRelation::Intersecting => Ordering::Less,
            AxesRelation::AsymptoticallyParallel => Ordering::Equal,
            AxesRelation::Ultraparallel => Ordering::Greater,
        };
        prop_assert_eq!(trichotomy_check(&a, &b).unwrap(), expected);
    }

    #[test]
    fn betweenness_is_mobius_invariant(
        x in point(),
        y in point(),
        z in point(),
        e in prop::array::uniform4(-5i64..=5),
    ) {
        prop_assume!(x != y && y != z && x != z);
        prop_assume!(e[0] * e[3] - e[1] * e[2] > 0);
        let m: Mat2<QuadExt> = Mat2::from_i64([[e[0], e[1]], [e[2], e[3]]]);
        let before = betweenness(&x, &y, &z).unwrap();
        let img = |p: &BoundaryPoint| p.apply(&m).unwrap();
        prop_assert_eq!(betweenness(&img(&x), &img(&y), &img(&z)).unwrap(), before);
    }
}
