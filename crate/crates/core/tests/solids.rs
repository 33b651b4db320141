use std::collections::BTreeMap;

use insideout_core::dissect3d::{
    boundary_census, canonical_oct, canonical_tet, dissect_complex, dissect_regular_octahedron,
    dissect_regular_tetrahedron, subdivide, CellKind,
};
use insideout_core::kernel::{CellComplex, NumericMode, Scalar, Vec3};
use insideout_core::model::{Dissection, FacetOrigin};
use insideout_core::verify::verify;

const EXACT: NumericMode = NumericMode::Exact;

fn kinds(d: &Dissection) -> (usize, usize) {
    let Dissection::Solid(s) = d else { panic!("expected a solid record") };
    let tets = s.pieces.iter().filter(|p| p.shape.vertices.len() == 4).count();
    (tets, s.pieces.len() - tets)
}

#[test]
fn tetrahedron_census_matches_the_table() {
    let tet = canonical_tet();
    let container = CellComplex::single(tet.body.clone());
    let cells = subdivide(&[tet], 2, &EXACT).unwrap();
    let census = boundary_census(&cells, &container, &EXACT).unwrap();
    let expected: BTreeMap<(CellKind, usize), usize> = [
        ((CellKind::Tet, 0), 4),
        ((CellKind::Tet, 1), 4),
        ((CellKind::Tet, 2), 12),
        ((CellKind::Tet, 3), 4),
        ((CellKind::Oct, 2), 6),
        ((CellKind::Oct, 3), 4),
    ]
    .into_iter()
    .collect();
    assert_eq!(census, expected);
}

#[test]
fn record_flags_agree_with_census() {
    let d = dissect_regular_tetrahedron(None, &EXACT).unwrap();
    let Dissection::Solid(s) = &d else { unreachable!() };
    let mut hist: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for p in &s.pieces {
        let bf = p.facet_origin.iter().filter(|f| **f == FacetOrigin::Boundary).count();
        *hist.entry((p.shape.vertices.len(), bf)).or_default() += 1;
    }
    assert_eq!(hist.get(&(4, 3)), Some(&4));
    assert_eq!(hist.get(&(4, 2)), Some(&12));
    assert_eq!(hist.get(&(6, 3)), Some(&4));
    assert_eq!(hist.get(&(6, 2)), Some(&6));
}

#[test]
fn octahedron_in_124_pieces() {
    let d = dissect_regular_octahedron(None, &EXACT).unwrap();
    assert_eq!(d.piece_count(), 124);
    assert_eq!(kinds(&d), (80, 44));
    let Dissection::Solid(s) = &d else { unreachable!() };
    let total: Scalar = s.pieces.iter().map(|p| {
        insideout_core::kernel::ConvexPolyhedron::new(p.shape.clone(), &EXACT).unwrap().volume()
    }).sum();
    assert_eq!(total, Scalar::ratio(4, 3));
    let report = verify(&d);
    assert!(report.pass(), "{:?}", report.diagnostics);
}

#[test]
fn tetrahedron_and_octahedron_sharing_a_face() {
    let t = canonical_tet().body.vertices().to_vec();
    let o = canonical_oct().body.vertices().to_vec();
    let d = dissect_complex(&[t, o], &EXACT).unwrap();
    assert_eq!(d.piece_count(), 158);
    let report = verify(&d);
    assert!(report.pass(), "{:?}", report.diagnostics);
}

#[test]
fn approximate_tetrahedron_in_general_position() {
    // Canonical tetrahedron scaled to unit edges and turned about z by 30°.
    let (c, s) = (3f64.sqrt() / 2.0, 0.5);
    let k = 1.0 / 2f64.sqrt();
    let v: Vec<Vec3> = canonical_tet()
        .body
        .vertices()
        .iter()
        .map(|p| {
            let [x, y, z] = p.to_f64();
            Vec3::new(Scalar::float(k * (c * x - s * y)), Scalar::float(k * (s * x + c * y)), Scalar::float(k * z))
        })
        .collect();
    let mode = NumericMode::approx();
    let d = dissect_regular_tetrahedron(Some(v.try_into().unwrap()), &mode).unwrap();
    assert_eq!(d.piece_count(), 34);
    assert!(verify(&d).pass());
}
