//! Checks a dissection record against the definition of an inside-out
//! dissection.
//!
//! Four clauses are checked independently so a report names every failure:
//! proper motions, a partition of the original, a partition of the witness
//! copy after moving, and the inside-out condition (including that every
//! facet flag tells the truth about the original).
//!
//! Moved pieces are pulled back through the inverse witness motion and
//! compared against the original, which avoids rebuilding the target shape.

use alloc::format;
use alloc::vec::Vec;

use crate::kernel::polygon::{classify_segment, polygon_inside, polygons_overlap};
use crate::kernel::polyhedron::convex_polyhedra_overlap;
use crate::kernel::{BoundaryOverlap, ConvexPolyhedron, Motion2, Motion3, Scalar, SimplePolygon, Vec2, Vec3};
use crate::model::{
    location2, location3, Condition, Diagnostic, Dissection, FacetOrigin, PlanarDissection, SolidDissection,
    VerificationReport, Violation,
};

fn diag(condition: Condition, piece: Option<usize>, facet: Option<usize>, violation: Violation) -> Diagnostic {
    Diagnostic { condition, piece, facet, violation, location: None }
}

/// Every piece motion and the witness are orthogonal with determinant +1.
pub fn check_motions(d: &Dissection) -> Vec<Diagnostic> {
    let mode = d.mode();
    let mut out = Vec::new();
    let improper = |piece| diag(Condition::Motions, piece, None, Violation::ImproperMotion);
    match d {
        Dissection::Planar(p) => {
            if !p.witness_motion.is_proper(mode) {
                out.push(improper(None));
            }
            out.extend(p.pieces.iter().filter(|x| !x.motion.is_proper(mode)).map(|x| improper(Some(x.id))));
        }
        Dissection::Solid(s) => {
            if !s.witness_motion.is_proper(mode) {
                out.push(improper(None));
            }
            out.extend(s.pieces.iter().filter(|x| !x.motion.is_proper(mode)).map(|x| improper(Some(x.id))));
        }
    }
    out
}

fn structural(d: &Dissection) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    if d.piece_count() == 0 {
        out.push(diag(Condition::Partition, None, None, Violation::NoPieces));
    }
    let ids: Vec<usize> = match d {
        Dissection::Planar(p) => p.pieces.iter().map(|x| x.id).collect(),
        Dissection::Solid(s) => s.pieces.iter().map(|x| x.id).collect(),
    };
    for (i, id) in ids.into_iter().enumerate() {
        if i != id {
            out.push(diag(Condition::Partition, Some(id), None, Violation::BadId));
        }
    }
    out
}

/// Motion taking a piece to the original's frame: `W⁻¹ ∘ g`, or identity
/// for the unmoved check.
fn pullback2(p: &PlanarDissection, g: &Motion2, moved: bool) -> Motion2 {
    if moved {
        p.witness_motion.inverse().compose(g)
    } else {
        Motion2::identity()
    }
}

fn pullback3(s: &SolidDissection, g: &Motion3, moved: bool) -> Motion3 {
    if moved {
        s.witness_motion.inverse().compose(g)
    } else {
        Motion3::identity()
    }
}

fn planar_partition(p: &PlanarDissection, moved: bool, condition: Condition, stop: Stop) -> Vec<Diagnostic> {
    let mode = &p.mode;
    let mut out = Vec::new();
    let mut polys: Vec<(usize, SimplePolygon)> = Vec::new();
    for piece in &p.pieces {
        let h = pullback2(p, &piece.motion, moved);
        let ring: Vec<Vec2> = piece.vertices.iter().map(|v| h.apply(v)).collect();
        match SimplePolygon::new(ring, mode) {
            Ok(poly) => polys.push((piece.id, poly)),
            Err(e) => out.push(diag(condition, Some(piece.id), None, Violation::InvalidGeometry(format!("{e}")))),
        }
    }
    let total: Scalar = polys.iter().map(|(_, poly)| poly.area()).sum();
    if !out.is_empty() || !mode.eq(&total, &p.original.area()) {
        out.push(diag(condition, None, None, Violation::MeasureMismatch));
    }
    if stop == Stop::AfterMeasure {
        return out;
    }
    for (id, poly) in &polys {
        if stop != Stop::Never && !out.is_empty() {
            return out;
        }
        if !polygon_inside(poly, &p.original, mode) {
            let mut d = diag(condition, Some(*id), None, Violation::OutsideRegion);
            d.location = location2(&poly.vertices()[0]);
            out.push(d);
        }
    }
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            if stop != Stop::Never && !out.is_empty() {
                return out;
            }
            let ((a, pa), (b, pb)) = (&polys[i], &polys[j]);
            match polygons_overlap(pa, pb, mode) {
                Some(false) => {}
                Some(true) => out.push(diag(condition, Some(*a), None, Violation::Overlap { other: *b })),
                None => out.push(diag(condition, Some(*a), None, Violation::Undecidable { other: *b })),
            }
        }
    }
    out
}

fn solid_partition(s: &SolidDissection, moved: bool, condition: Condition, stop: Stop) -> Vec<Diagnostic> {
    let mode = &s.mode;
    let mut out = Vec::new();
    let mut bodies: Vec<(usize, ConvexPolyhedron)> = Vec::new();
    for piece in &s.pieces {
        let h = pullback3(s, &piece.motion, moved);
        match ConvexPolyhedron::new(piece.shape.transformed(|v| h.apply(v)), mode) {
            Ok(body) => bodies.push((piece.id, body)),
            Err(e) => out.push(diag(condition, Some(piece.id), None, Violation::InvalidGeometry(format!("{e}")))),
        }
    }
    let total: Scalar = bodies.iter().map(|(_, b)| b.volume()).sum();
    if !out.is_empty() || !mode.eq(&total, &s.original.volume()) {
        out.push(diag(condition, None, None, Violation::MeasureMismatch));
    }
    if stop == Stop::AfterMeasure {
        return out;
    }
    for (id, body) in &bodies {
        if stop != Stop::Never && !out.is_empty() {
            return out;
        }
        if !s.original.contains_solid(body, mode) {
            let mut d = diag(condition, Some(*id), None, Violation::OutsideRegion);
            d.location = location3(&body.centroid());
            out.push(d);
        }
    }
    let bounds: Vec<_> = bodies.iter().map(|(_, b)| b.bounds()).collect();
    for i in 0..bodies.len() {
        for j in i + 1..bodies.len() {
            if stop != Stop::Never && !out.is_empty() {
                return out;
            }
            if !bounds[i].may_overlap(&bounds[j]) {
                continue;
            }
            let ((a, ba), (b, bb)) = (&bodies[i], &bodies[j]);
            if convex_polyhedra_overlap(ba, bb, mode) {
                out.push(diag(condition, Some(*a), None, Violation::Overlap { other: *b }));
            }
        }
    }
    out
}

/// Pieces (moved through their motions and the inverse witness when
/// `moved`) tile the original: measures add up, interiors are pairwise
/// disjoint, and each piece lies in the closed region.
pub fn check_partition(d: &Dissection, moved: bool) -> Vec<Diagnostic> {
    partition(d, moved, Stop::Never)
}

/// How much of a check to run.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Stop {
    Never,
    FirstViolation,
    /// Only piece validity and the measure sum.
    AfterMeasure,
}

fn partition(d: &Dissection, moved: bool, stop: Stop) -> Vec<Diagnostic> {
    let condition = if moved { Condition::RearrangedPartition } else { Condition::Partition };
    match d {
        Dissection::Planar(p) => planar_partition(p, moved, condition, stop),
        Dissection::Solid(s) => solid_partition(s, moved, condition, stop),
    }
}

fn expect_flag(
    found: Result<BoundaryOverlap, crate::Error>,
    flag: FacetOrigin,
) -> Option<Violation> {
    match (found, flag) {
        (Err(_), _) => Some(Violation::OutsideRegion),
        (Ok(BoundaryOverlap::Mixed), _) => Some(Violation::MixedFacet),
        (Ok(BoundaryOverlap::OnBoundary), FacetOrigin::Boundary) | (Ok(BoundaryOverlap::Interior), FacetOrigin::Cut) => {
            None
        }
        _ => Some(Violation::FlagMismatch),
    }
}

fn planar_inside_out(p: &PlanarDissection, fail_fast: bool) -> Vec<Diagnostic> {
    let mode = &p.mode;
    let mut out = Vec::new();
    for piece in &p.pieces {
        if fail_fast && !out.is_empty() {
            return out;
        }
        let n = piece.vertices.len();
        if piece.facet_origin.len() != n {
            out.push(diag(Condition::InsideOut, Some(piece.id), None, Violation::FlagCount));
            continue;
        }
        let back = pullback2(p, &piece.motion, true);
        for (i, &flag) in piece.facet_origin.iter().enumerate() {
            let (a, b) = (&piece.vertices[i], &piece.vertices[(i + 1) % n]);
            if let Some(v) = expect_flag(classify_segment(a, b, &p.original, mode), flag) {
                let mut d = diag(Condition::InsideOut, Some(piece.id), Some(i), v);
                d.location = location2(&a.midpoint(b));
                out.push(d);
                continue;
            }
            if flag == FacetOrigin::Boundary {
                let (ia, ib) = (back.apply(a), back.apply(b));
                let found = classify_segment(&ia, &ib, &p.original, mode);
                if found != Ok(BoundaryOverlap::Interior) {
                    let v = if found.is_err() { Violation::OutsideRegion } else { Violation::BoundaryFacetExposed };
                    let mut d = diag(Condition::InsideOut, Some(piece.id), Some(i), v);
                    d.location = location2(&piece.motion.apply(&a.midpoint(b)));
                    out.push(d);
                }
            }
        }
    }
    out
}

fn solid_inside_out(s: &SolidDissection, fail_fast: bool) -> Vec<Diagnostic> {
    let mode = &s.mode;
    let mut out = Vec::new();
    for piece in &s.pieces {
        if fail_fast && !out.is_empty() {
            return out;
        }
        let faces = &piece.shape.faces;
        if piece.facet_origin.len() != faces.len()
            || faces.iter().flatten().any(|&i| i >= piece.shape.vertices.len())
        {
            out.push(diag(Condition::InsideOut, Some(piece.id), None, Violation::FlagCount));
            continue;
        }
        let back = pullback3(s, &piece.motion, true);
        for (f, &flag) in piece.facet_origin.iter().enumerate() {
            let ring = piece.shape.face_ring(f);
            if ring.len() < 3 {
                out.push(diag(Condition::InsideOut, Some(piece.id), Some(f), Violation::FlagCount));
                continue;
            }
            if let Some(v) = expect_flag(s.original.classify_ring(&ring, mode), flag) {
                out.push(diag(Condition::InsideOut, Some(piece.id), Some(f), v));
                continue;
            }
            if flag == FacetOrigin::Boundary {
                let image: Vec<_> = ring.iter().map(|v| back.apply(v)).collect();
                let found = s.original.classify_ring(&image, mode);
                if found != Ok(BoundaryOverlap::Interior) {
                    let v = if found.is_err() { Violation::OutsideRegion } else { Violation::BoundaryFacetExposed };
                    let mut d = diag(Condition::InsideOut, Some(piece.id), Some(f), v);
                    d.location = location3(&s.witness_motion.apply(&Vec3::centroid(image.iter())));
                    out.push(d);
                }
            }
        }
    }
    out
}

/// Every facet flag matches the facet's position in the original, and every
/// former boundary facet lands strictly inside the rearranged copy.
pub fn check_inside_out(d: &Dissection) -> Vec<Diagnostic> {
    match d {
        Dissection::Planar(p) => planar_inside_out(p, false),
        Dissection::Solid(s) => solid_inside_out(s, false),
    }
}

/// Runs all four checks. Diagnostics come out in a fixed order: structure,
/// motions, partition, rearranged partition, inside-out.
pub fn verify(d: &Dissection) -> VerificationReport {
    let mut diagnostics = structural(d);
    diagnostics.extend(check_motions(d));
    diagnostics.extend(check_partition(d, false));
    diagnostics.extend(check_partition(d, true));
    diagnostics.extend(check_inside_out(d));
    let ok = |c: Condition| !diagnostics.iter().any(|x| x.condition == c);
    VerificationReport {
        partition_ok: ok(Condition::Partition),
        rearranged_partition_ok: ok(Condition::RearrangedPartition),
        motions_ok: ok(Condition::Motions),
        inside_out_ok: ok(Condition::InsideOut),
        piece_count: d.piece_count(),
        diagnostics,
    }
}

/// The verdict of [`verify`] without the report: the same checks, cheapest
/// first, stopping at the first violation.
pub fn passes(d: &Dissection) -> bool {
    structural(d).is_empty()
        && check_motions(d).is_empty()
        && partition(d, false, Stop::AfterMeasure).is_empty()
        && partition(d, true, Stop::AfterMeasure).is_empty()
        && match d {
            Dissection::Planar(p) => planar_inside_out(p, true),
            Dissection::Solid(s) => solid_inside_out(s, true),
        }
        .is_empty()
        && partition(d, false, Stop::FirstViolation).is_empty()
        && partition(d, true, Stop::FirstViolation).is_empty()
}

/// Exact-mode records must not contain floats.
pub fn mode_consistent(d: &Dissection) -> bool {
    if !d.mode().is_exact() {
        return true;
    }
    match d {
        Dissection::Planar(p) => {
            p.original.vertices().iter().all(Vec2::is_exact)
                && p.witness_motion.is_exact()
                && p.pieces.iter().all(|x| x.vertices.iter().all(Vec2::is_exact) && x.motion.is_exact())
        }
        Dissection::Solid(s) => {
            s.original.cells().iter().all(|c| c.vertices().iter().all(|v| v.is_exact()))
                && s.witness_motion.is_exact()
                && s.pieces.iter().all(|x| x.shape.vertices.iter().all(|v| v.is_exact()) && x.motion.is_exact())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{Mat2, NumericMode};
    use crate::model::{Metadata, PlanarPiece};
    use alloc::vec;

    const EXACT: NumericMode = NumericMode::Exact;

    fn square_record(pieces: Vec<PlanarPiece>) -> Dissection {
        let original =
            SimplePolygon::new(vec![Vec2::ints(0, 0), Vec2::ints(1, 0), Vec2::ints(1, 1), Vec2::ints(0, 1)], &EXACT)
                .unwrap();
        Dissection::Planar(PlanarDissection {
            mode: EXACT,
            original,
            witness_motion: Motion2::identity(),
            pieces,
            metadata: Metadata::default(),
        })
    }

    fn whole_square(motion: Motion2) -> PlanarPiece {
        PlanarPiece {
            id: 0,
            vertices: vec![Vec2::ints(0, 0), Vec2::ints(1, 0), Vec2::ints(1, 1), Vec2::ints(0, 1)],
            facet_origin: vec![FacetOrigin::Boundary; 4],
            motion,
        }
    }

    #[test]
    fn identity_dissection_is_not_inside_out() {
        let r = verify(&square_record(vec![whole_square(Motion2::identity())]));
        assert!(r.partition_ok && r.rearranged_partition_ok && r.motions_ok);
        assert!(!r.inside_out_ok);
        assert_eq!(r.diagnostics.len(), 4);
        assert!(r.diagnostics.iter().all(|d| d.violation == Violation::BoundaryFacetExposed));
    }

    #[test]
    fn reflection_is_rejected() {
        let flip = Motion2::new(Mat2([[Scalar::one(), Scalar::zero()], [Scalar::zero(), Scalar::int(-1)]]), Vec2::ints(0, 1));
        let r = verify(&square_record(vec![whole_square(flip)]));
        assert!(!r.motions_ok);
        assert_eq!(r.diagnostics[0].piece, Some(0));
    }

    #[test]
    fn duplicated_piece_breaks_measure() {
        let mut second = whole_square(Motion2::identity());
        second.id = 1;
        let r = verify(&square_record(vec![whole_square(Motion2::identity()), second]));
        assert!(!r.partition_ok);
        assert!(r.diagnostics.iter().any(|d| d.violation == Violation::MeasureMismatch));
        assert!(r.diagnostics.iter().any(|d| d.violation == Violation::Overlap { other: 1 }));
    }

    #[test]
    fn translated_piece_fails_rearrangement() {
        let r = verify(&square_record(vec![whole_square(Motion2::new(Mat2::identity(), Vec2::ints(1, 0)))]));
        assert!(r.partition_ok);
        assert!(!r.rearranged_partition_ok);
    }

    #[test]
    fn fast_verdict_matches_report() {
        let mut second = whole_square(Motion2::identity());
        second.id = 1;
        let records = [
            square_record(vec![whole_square(Motion2::identity())]),
            square_record(vec![whole_square(Motion2::identity()), second]),
            square_record(vec![whole_square(Motion2::new(Mat2::identity(), Vec2::ints(1, 0)))]),
            crate::dissect2d::dissect_regular(6, 1.0, 1e-9).unwrap(),
        ];
        for d in &records {
            assert_eq!(passes(d), verify(d).pass());
        }
        assert!(passes(&records[3]));
    }
}
