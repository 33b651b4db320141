use insideout::json::{parse_dissection, serialize_dissection};
use insideout::IoError;
use insideout_core::dissect2d::{dissect_generic, dissect_regular};
use insideout_core::dissect3d::{dissect_regular_octahedron, dissect_regular_tetrahedron};
use insideout_core::kernel::{NumericMode, Scalar, SimplePolygon, Vec2};
use proptest::prelude::*;

const EXACT: NumericMode = NumericMode::Exact;

fn assert_fixed_point(text: &str) {
    let d = parse_dissection(text).unwrap();
    assert_eq!(serialize_dissection(&d), text);
}

#[test]
fn constructed_records_are_fixed_points() {
    let square = SimplePolygon::new(vec![Vec2::ints(0, 0), Vec2::ints(2, 0), Vec2::ints(2, 2), Vec2::ints(0, 2)], &EXACT).unwrap();
    for d in [
        dissect_generic(&square, &EXACT).unwrap(),
        dissect_regular(7, 1.5, 1e-9).unwrap(),
        dissect_regular(3, 1.0, 1e-9).unwrap(),
        dissect_regular_tetrahedron(None, &EXACT).unwrap(),
        dissect_regular_octahedron(None, &NumericMode::approx()).unwrap(),
    ] {
        assert_fixed_point(&serialize_dissection(&d));
    }
}

#[test]
fn zero_denominator_is_a_number_format_error() {
    let square = SimplePolygon::new(vec![Vec2::ints(0, 0), Vec2::ints(1, 0), Vec2::ints(0, 1)], &EXACT).unwrap();
    let text = serialize_dissection(&dissect_generic(&square, &EXACT).unwrap());
    let broken = text.replacen("\"1\"", "\"2/0\"", 1);
    assert_ne!(broken, text);
    assert!(matches!(parse_dissection(&broken), Err(IoError::NumberFormat { .. })));
}

#[test]
fn floats_in_exact_records_are_rejected() {
    let tri = SimplePolygon::new(vec![Vec2::ints(0, 0), Vec2::ints(4, 0), Vec2::ints(0, 4)], &EXACT).unwrap();
    let text = serialize_dissection(&dissect_generic(&tri, &EXACT).unwrap());
    let broken = text.replacen("\"4\"", "4.0", 1);
    assert!(parse_dissection(&broken).is_err());
}

#[test]
fn wrong_version_and_empty_pieces_are_schema_errors() {
    let tri = SimplePolygon::new(vec![Vec2::ints(0, 0), Vec2::ints(1, 0), Vec2::ints(0, 1)], &EXACT).unwrap();
    let text = serialize_dissection(&dissect_generic(&tri, &EXACT).unwrap());
    let v2 = text.replacen("\"version\": 1", "\"version\": 2", 1);
    assert!(matches!(parse_dissection(&v2), Err(IoError::Schema { .. })));

    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["pieces"] = serde_json::json!([]);
    assert!(parse_dissection(&v.to_string()).is_err());
}

fn rational() -> impl Strategy<Value = Scalar> {
    (-1000i64..=1000, 1i64..=97).prop_map(|(p, q)| Scalar::ratio(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_exact_records_round_trip(xs in proptest::collection::vec(rational(), 6)) {
        let mut v: Vec<Vec2> = xs.chunks(2).map(|c| Vec2::new(c[0].clone(), c[1].clone())).collect();
        let Ok(tri) = SimplePolygon::new(v.clone(), &EXACT).or_else(|_| {
            v.reverse();
            SimplePolygon::new(v, &EXACT)
        }) else {
            return Err(TestCaseError::reject("degenerate"));
        };
        let d = dissect_generic(&tri, &EXACT).unwrap();
        let text = serialize_dissection(&d);
        let back = parse_dissection(&text).unwrap();
        prop_assert_eq!(&back, &d);
        prop_assert_eq!(serialize_dissection(&back), text);
    }

    #[test]
    fn approx_records_round_trip(n in 3usize..=12, r in 0.25f64..8.0) {
        let d = dissect_regular(n, r, 1e-9).unwrap();
        let text = serialize_dissection(&d);
        prop_assert_eq!(serialize_dissection(&parse_dissection(&text).unwrap()), text);
    }
}
