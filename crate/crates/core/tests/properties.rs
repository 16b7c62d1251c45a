use geomcut::dual::add_apexes;
use geomcut::generators::{gen_random, GeneratorParams};
use geomcut::geom::{orientation, segment_intersection, euclid_length, Point, Rational, Segment};
use geomcut::solver::{compact_colors, prepare, solve, Method};
use geomcut::steiner::{brute_force_duplication, min_duplication, WeightedTree};
use proptest::prelude::*;

fn point() -> impl Strategy<Value = Point> {
    (-50i64..50, -50i64..50).prop_map(|(x, y)| Point::from_ints(x, y))
}

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..7).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn flipped(i: &geomcut::geom::Intersection) -> geomcut::geom::Intersection {
    use geomcut::geom::Intersection::*;
    match i {
        Overlap(s) => Overlap(s.canonical()),
        other => other.clone(),
    }
}

proptest! {
    #[test]
    fn orientation_antisymmetric_and_translation_invariant(
        p in point(), q in point(), r in point(), dx in rational(), dy in rational()
    ) {
        let o = orientation(&p, &q, &r);
        prop_assert_eq!(o, -orientation(&p, &r, &q));
        let t = |a: &Point| a.translate(&dx, &dy);
        prop_assert_eq!(o, orientation(&t(&p), &t(&q), &t(&r)));
    }

    #[test]
    fn intersection_is_symmetric(a in point(), b in point(), c in point(), d in point()) {
        prop_assume!(a != b && c != d);
        let s = Segment::new(a, b);
        let t = Segment::new(c, d);
        prop_assert_eq!(
            flipped(&segment_intersection(&s, &t)),
            flipped(&segment_intersection(&t, &s))
        );
    }

    #[test]
    fn length_translates_and_scales(a in point(), b in point(), dx in rational(), s in 1i64..9) {
        prop_assume!(a != b);
        let seg = Segment::new(a.clone(), b.clone());
        let len = euclid_length(&seg);
        let moved = Segment::new(a.translate(&dx, &dx), b.translate(&dx, &dx));
        prop_assert!((euclid_length(&moved) - len).abs() <= 1e-12 * len);
        let k = Rational::from_integer(s.into());
        let grown = Segment::new(a.scale(&k), b.scale(&k));
        prop_assert!((euclid_length(&grown) - s as f64 * len).abs() <= 1e-12 * s as f64 * len);
    }

    #[test]
    fn duplication_matches_exhaustive(seed in any::<u64>(), leaves in 2usize..8) {
        let t = WeightedTree::random(seed, leaves, 10.0).unwrap();
        let dp = min_duplication(&t);
        let bf = brute_force_duplication(&t).unwrap();
        prop_assert!((dp.cost - bf.cost).abs() <= 1e-9 * bf.cost.max(1.0));
        prop_assert!(dp.cost <= t.total_length() / 3.0 + 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn cut_value_scales_with_instance(seed in 0u64..1000, s in 2i64..5) {
        let params = GeneratorParams { seed, num_objects: 3, num_colors: 2, coordinate_range: 8, ..Default::default() };
        let inst = gen_random(&params).unwrap();
        let base = solve(&inst, Method::Exact2, 0).unwrap().cut.value;
        let k = Rational::from_integer(s.into());
        let scaled = solve(&inst.scale(&k), Method::Exact2, 0).unwrap().cut.value;
        prop_assert!((scaled - s as f64 * base).abs() <= 1e-9 * (s as f64 * base).max(1.0));
    }

    #[test]
    fn isolation_never_uses_apex_edges(seed in 0u64..1000) {
        let params = GeneratorParams { seed, num_objects: 4, num_colors: 3, coordinate_range: 10, ..Default::default() };
        let inst = gen_random(&params).unwrap();
        let g = compact_colors(&prepare(&inst).unwrap().dual);
        let ag = add_apexes(&g, g.num_colors());
        let cut = geomcut::cut::isolation_heuristic(&ag).unwrap();
        prop_assert!(cut.edges.iter().all(|&e| e < g.edges.len()));
        prop_assert!(cut.is_separating(&g));
    }
}
