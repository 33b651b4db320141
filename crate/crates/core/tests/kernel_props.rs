use insideout_core::dissect2d::dissect_generic;
use insideout_core::kernel::polygon::{orient, polygons_overlap, signed_area};
use insideout_core::kernel::{rotation_between, Mat2, Motion2, NumericMode, Scalar, SimplePolygon, Vec2};
use insideout_core::verify::verify;
use proptest::prelude::*;

const EXACT: NumericMode = NumericMode::Exact;

/// Rational point on the unit circle from slope `m = p/q`.
fn pythagorean(p: i64, q: i64) -> (Scalar, Scalar) {
    let (p2, q2) = (p * p, q * q);
    (Scalar::ratio(q2 - p2, q2 + p2), Scalar::ratio(2 * p * q, q2 + p2))
}

fn rational() -> impl Strategy<Value = Scalar> {
    (-40i64..=40, 1i64..=7).prop_map(|(p, q)| Scalar::ratio(p, q))
}

fn point() -> impl Strategy<Value = Vec2> {
    (rational(), rational()).prop_map(|(x, y)| Vec2::new(x, y))
}

fn motion() -> impl Strategy<Value = Motion2> {
    (-9i64..=9, 1i64..=9, point()).prop_map(|(p, q, t)| {
        let (c, s) = pythagorean(p, q);
        Motion2::new(Mat2::rotation(c, s), t)
    })
}

/// Non-degenerate triangle, counter-clockwise.
fn triangle() -> impl Strategy<Value = SimplePolygon> {
    (point(), point(), point())
        .prop_filter("degenerate", |(a, b, c)| orient(a, b, c, &EXACT).is_ne())
        .prop_map(|(a, b, c)| {
            let mut v = vec![a, b, c];
            if EXACT.sign(&signed_area(&v)).is_lt() {
                v.reverse();
            }
            SimplePolygon::new(v, &EXACT).expect("triangle")
        })
}

proptest! {
    #[test]
    fn area_is_invariant_under_motion(t in triangle(), m in motion()) {
        let moved: Vec<Vec2> = t.vertices().iter().map(|v| m.apply(v)).collect();
        prop_assert_eq!(signed_area(&moved), t.area());
    }

    #[test]
    fn motions_compose_and_invert(m in motion(), n in motion(), p in point()) {
        prop_assert_eq!(m.compose(&n).apply(&p), m.apply(&n.apply(&p)));
        prop_assert_eq!(m.inverse().apply(&m.apply(&p)), p);
        prop_assert!(m.is_proper(&EXACT));
    }

    #[test]
    fn rotation_between_recovers_the_rotation(u in point(), p in -9i64..=9, q in 1i64..=9) {
        prop_assume!(!EXACT.is_zero(&u.norm2()));
        let (c, s) = pythagorean(p, q);
        let r = Mat2::rotation(c, s);
        let found = rotation_between(&u, &r.apply(&u), &EXACT).unwrap();
        prop_assert!(found.approx_eq(&r, &EXACT));
    }

    #[test]
    fn overlap_is_symmetric(a in triangle(), b in triangle()) {
        prop_assert_eq!(polygons_overlap(&a, &b, &EXACT), polygons_overlap(&b, &a, &EXACT));
    }

    #[test]
    fn polygon_overlaps_itself_and_keeps_area_when_moved(t in triangle(), m in motion()) {
        prop_assert_eq!(polygons_overlap(&t, &t, &EXACT), Some(true));
        let moved = t.transformed(|v| m.apply(v));
        prop_assert_eq!(moved.area(), t.area());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn random_triangles_dissect_and_verify(t in triangle()) {
        let d = dissect_generic(&t, &EXACT).unwrap();
        prop_assert_eq!(d.piece_count(), 7);
        let report = verify(&d);
        prop_assert!(report.pass(), "{:?}", report);
    }
}
