//! The dissection record shared by constructors, the verifier and renderers.
//!
//! Piece geometry is stored raw: a record read from disk may be wrong in any
//! way, and it is the verifier's job to say how. The original shape is
//! validated when the record is built.

use alloc::string::String;
use alloc::vec::Vec;

use crate::kernel::polygon::{boundary_intervals, classify_segment};
use crate::kernel::{
    BoundaryOverlap, CellComplex, Motion2, Motion3, NumericMode, Polyhedron, Scalar, SimplePolygon, Vec2, Vec3,
};
use crate::Error;

/// Where a facet of a piece came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FacetOrigin {
    /// Part of the original shape's boundary.
    Boundary,
    /// A cut through the interior.
    Cut,
}

impl FacetOrigin {
    pub fn as_str(self) -> &'static str {
        match self {
            FacetOrigin::Boundary => "boundary",
            FacetOrigin::Cut => "cut",
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            FacetOrigin::Boundary => FacetOrigin::Cut,
            FacetOrigin::Cut => FacetOrigin::Boundary,
        }
    }
}

/// A polygonal piece; facet `i` is the edge from vertex `i` to `i + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanarPiece {
    pub id: usize,
    pub vertices: Vec<Vec2>,
    pub facet_origin: Vec<FacetOrigin>,
    pub motion: Motion2,
}

/// A polyhedral piece; facet `i` is face `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct SolidPiece {
    pub id: usize,
    pub shape: Polyhedron,
    pub facet_origin: Vec<FacetOrigin>,
    pub motion: Motion3,
}

/// How the chains of a regular-polygon dissection are anchored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Anchor {
    /// Chains start and end at polygon vertices.
    Vertex,
    /// Chains start and end at edge midpoints.
    Midpoint,
}

impl Anchor {
    pub fn as_str(self) -> &'static str {
        match self {
            Anchor::Vertex => "vertex",
            Anchor::Midpoint => "midpoint",
        }
    }
}

/// Chain lengths (in edges) around a regular polygon, first chain starting
/// at vertex 0 or at the midpoint of edge 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainPlan {
    pub anchor: Anchor,
    pub lengths: Vec<usize>,
}

/// Provenance embedded in records produced by the constructors.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Metadata {
    pub construction: Option<String>,
    /// Collar stiffness `t` chosen by the feasibility search.
    pub stiffness: Option<u128>,
    pub chains: Option<ChainPlan>,
    /// Subdivision depth of the honeycomb constructions.
    pub depth: Option<u32>,
    /// Set when a dedicated construction fell back to the generic one.
    pub fallback: bool,
}

impl Metadata {
    pub fn is_empty(&self) -> bool {
        *self == Metadata::default()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlanarDissection {
    pub mode: NumericMode,
    pub original: SimplePolygon,
    pub witness_motion: Motion2,
    pub pieces: Vec<PlanarPiece>,
    pub metadata: Metadata,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolidDissection {
    pub mode: NumericMode,
    pub original: CellComplex,
    pub witness_motion: Motion3,
    pub pieces: Vec<SolidPiece>,
    pub metadata: Metadata,
}

#[derive(Clone, Debug, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum Dissection {
    Planar(PlanarDissection),
    Solid(SolidDissection),
}

impl Dissection {
    pub fn space(&self) -> u8 {
        match self {
            Dissection::Planar(_) => 2,
            Dissection::Solid(_) => 3,
        }
    }

    pub fn mode(&self) -> &NumericMode {
        match self {
            Dissection::Planar(d) => &d.mode,
            Dissection::Solid(d) => &d.mode,
        }
    }

    pub fn piece_count(&self) -> usize {
        match self {
            Dissection::Planar(d) => d.pieces.len(),
            Dissection::Solid(d) => d.pieces.len(),
        }
    }

    pub fn metadata(&self) -> &Metadata {
        match self {
            Dissection::Planar(d) => &d.metadata,
            Dissection::Solid(d) => &d.metadata,
        }
    }

    pub fn metadata_mut(&mut self) -> &mut Metadata {
        match self {
            Dissection::Planar(d) => &mut d.metadata,
            Dissection::Solid(d) => &mut d.metadata,
        }
    }

    /// Facet flags of every piece, in piece order.
    pub fn facet_flags(&self) -> Vec<&[FacetOrigin]> {
        match self {
            Dissection::Planar(d) => d.pieces.iter().map(|p| p.facet_origin.as_slice()).collect(),
            Dissection::Solid(d) => d.pieces.iter().map(|p| p.facet_origin.as_slice()).collect(),
        }
    }

    pub fn facet_flags_mut(&mut self) -> Vec<&mut Vec<FacetOrigin>> {
        match self {
            Dissection::Planar(d) => d.pieces.iter_mut().map(|p| &mut p.facet_origin).collect(),
            Dissection::Solid(d) => d.pieces.iter_mut().map(|p| &mut p.facet_origin).collect(),
        }
    }
}

/// Flags the edges of a polygon lying in `original`, splitting any edge that
/// runs partly along the boundary so each stored edge is purely one kind.
/// Returns the (possibly refined) vertex ring and its flags.
pub fn planar_facet_flags(
    vertices: &[Vec2],
    original: &SimplePolygon,
    mode: &NumericMode,
) -> Result<(Vec<Vec2>, Vec<FacetOrigin>), Error> {
    let n = vertices.len();
    let mut ring = Vec::with_capacity(n);
    let mut flags = Vec::with_capacity(n);
    for i in 0..n {
        let (a, b) = (&vertices[i], &vertices[(i + 1) % n]);
        ring.push(a.clone());
        match classify_segment(a, b, original, mode)? {
            BoundaryOverlap::OnBoundary => flags.push(FacetOrigin::Boundary),
            BoundaryOverlap::Interior => flags.push(FacetOrigin::Cut),
            BoundaryOverlap::Mixed => {
                let d = b - a;
                let mut cursor = Scalar::zero();
                for (lo, hi) in boundary_intervals(a, b, original, mode) {
                    if mode.lt(&cursor, &lo) {
                        if !mode.is_zero(&cursor) {
                            ring.push(a + &d.scale(&cursor));
                        }
                        flags.push(FacetOrigin::Cut);
                        cursor = lo;
                    }
                    if !mode.is_zero(&cursor) {
                        ring.push(a + &d.scale(&cursor));
                    }
                    flags.push(FacetOrigin::Boundary);
                    cursor = hi;
                }
                if mode.lt(&cursor, &Scalar::one()) {
                    ring.push(a + &d.scale(&cursor));
                    flags.push(FacetOrigin::Cut);
                }
            }
        }
    }
    Ok((ring, flags))
}

/// Flags the faces of a convex solid lying in `original`. Faces that are
/// partly on the boundary are rejected rather than split.
pub fn solid_facet_flags(shape: &Polyhedron, original: &CellComplex, mode: &NumericMode) -> Result<Vec<FacetOrigin>, Error> {
    (0..shape.faces.len())
        .map(|f| match original.classify_ring(&shape.face_ring(f), mode)? {
            BoundaryOverlap::OnBoundary => Ok(FacetOrigin::Boundary),
            BoundaryOverlap::Interior => Ok(FacetOrigin::Cut),
            BoundaryOverlap::Mixed => Err(Error::MixedFacet { face: f }),
        })
        .collect()
}

/// What a diagnostic complains about.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Rotation is not orthogonal with determinant +1.
    ImproperMotion,
    /// Piece geometry is not a valid simple polygon or convex polyhedron.
    InvalidGeometry(String),
    /// Facet flag list does not match the facet count.
    FlagCount,
    /// Piece measures do not add up to the target's.
    MeasureMismatch,
    /// Interiors of this piece and `other` intersect.
    Overlap { other: usize },
    /// The overlap of two non-convex pieces cannot be decided.
    Undecidable { other: usize },
    OutsideRegion,
    /// Facet flag disagrees with the facet's position in the original.
    FlagMismatch,
    /// Facet is partly on the boundary, partly inside.
    MixedFacet,
    /// A former boundary facet is still on the boundary after moving.
    BoundaryFacetExposed,
    /// Piece ids are not `0..k` in order.
    BadId,
    /// The record has no pieces.
    NoPieces,
}

impl Violation {
    pub fn name(&self) -> &'static str {
        match self {
            Violation::ImproperMotion => "improper_motion",
            Violation::InvalidGeometry(_) => "invalid_geometry",
            Violation::FlagCount => "flag_count",
            Violation::MeasureMismatch => "measure_mismatch",
            Violation::Overlap { .. } => "overlap",
            Violation::Undecidable { .. } => "undecidable",
            Violation::OutsideRegion => "outside_region",
            Violation::FlagMismatch => "flag_mismatch",
            Violation::MixedFacet => "mixed_facet",
            Violation::BoundaryFacetExposed => "boundary_facet_exposed",
            Violation::BadId => "bad_id",
            Violation::NoPieces => "no_pieces",
        }
    }
}

/// Which clause of the definition a diagnostic belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    Motions,
    Partition,
    RearrangedPartition,
    InsideOut,
}

impl Condition {
    pub fn as_str(self) -> &'static str {
        match self {
            Condition::Motions => "motions",
            Condition::Partition => "partition",
            Condition::RearrangedPartition => "rearranged_partition",
            Condition::InsideOut => "inside_out",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Diagnostic {
    pub condition: Condition,
    /// `None` for the witness motion or whole-record problems.
    pub piece: Option<usize>,
    pub facet: Option<usize>,
    pub violation: Violation,
    /// A witness point (facet midpoint, piece centroid), when one helps.
    pub location: Option<Vec<Scalar>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub partition_ok: bool,
    pub rearranged_partition_ok: bool,
    pub motions_ok: bool,
    pub inside_out_ok: bool,
    pub piece_count: usize,
    pub diagnostics: Vec<Diagnostic>,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.partition_ok && self.rearranged_partition_ok && self.motions_ok && self.inside_out_ok
    }

    pub fn condition(&self, c: Condition) -> bool {
        match c {
            Condition::Motions => self.motions_ok,
            Condition::Partition => self.partition_ok,
            Condition::RearrangedPartition => self.rearranged_partition_ok,
            Condition::InsideOut => self.inside_out_ok,
        }
    }
}

/// Point coordinates as a location vector.
pub fn location2(p: &Vec2) -> Option<Vec<Scalar>> {
    Some(alloc::vec![p.x.clone(), p.y.clone()])
}

pub fn location3(p: &Vec3) -> Option<Vec<Scalar>> {
    Some(alloc::vec![p.x.clone(), p.y.clone(), p.z.clone()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::ConvexPolyhedron;
    use alloc::vec;

    const EXACT: NumericMode = NumericMode::Exact;

    fn unit_square() -> SimplePolygon {
        SimplePolygon::new(vec![Vec2::ints(0, 0), Vec2::ints(1, 0), Vec2::ints(1, 1), Vec2::ints(0, 1)], &EXACT).unwrap()
    }

    #[test]
    fn triangle_in_square() {
        let tri = [Vec2::ints(0, 0), Vec2::ints(1, 0), Vec2::new(Scalar::ratio(1, 2), Scalar::ratio(1, 2))];
        let (ring, flags) = planar_facet_flags(&tri, &unit_square(), &EXACT).unwrap();
        assert_eq!(ring.len(), 3);
        assert_eq!(flags, vec![FacetOrigin::Boundary, FacetOrigin::Cut, FacetOrigin::Cut]);
    }

    #[test]
    fn mixed_edge_is_split() {
        // L-shape: the bottom edge of the square (0,0)-(2,0)-(2,2)... piece
        // edge (0,1)-(2,1) runs along the notch for its second half.
        let l = SimplePolygon::new(
            vec![Vec2::ints(0, 0), Vec2::ints(2, 0), Vec2::ints(2, 1), Vec2::ints(1, 1), Vec2::ints(1, 2), Vec2::ints(0, 2)],
            &EXACT,
        )
        .unwrap();
        let piece = [Vec2::ints(0, 0), Vec2::ints(2, 0), Vec2::ints(2, 1), Vec2::ints(0, 1)];
        let (ring, flags) = planar_facet_flags(&piece, &l, &EXACT).unwrap();
        assert_eq!(ring.len(), 5);
        assert_eq!(ring[3], Vec2::ints(1, 1));
        use FacetOrigin::*;
        assert_eq!(flags, vec![Boundary, Boundary, Boundary, Cut, Boundary]);
    }

    #[test]
    fn outside_piece_is_an_error() {
        let tri = [Vec2::ints(0, 0), Vec2::ints(2, 0), Vec2::ints(0, 1)];
        assert_eq!(planar_facet_flags(&tri, &unit_square(), &EXACT), Err(Error::FacetOutsideShape));
    }

    #[test]
    fn corner_tet_and_central_oct_flags() {
        let v = [Vec3::ints(1, 1, 0), Vec3::ints(1, 0, 1), Vec3::ints(0, 1, 1)];
        let w: Vec<Vec3> = v.iter().map(|x| x.scale(&Scalar::ratio(1, 2))).collect();
        let tet = ConvexPolyhedron::tetrahedron([Vec3::zero(), v[0].clone(), v[1].clone(), v[2].clone()], &EXACT).unwrap();
        let container = CellComplex::single(tet);
        let t1 = ConvexPolyhedron::tetrahedron([Vec3::zero(), w[0].clone(), w[1].clone(), w[2].clone()], &EXACT).unwrap();
        let flags = solid_facet_flags(t1.raw(), &container, &EXACT).unwrap();
        assert_eq!(flags.iter().filter(|f| **f == FacetOrigin::Boundary).count(), 3);
        let oct = ConvexPolyhedron::octahedron(
            [w[0].clone(), w[1].clone(), w[2].clone(), &w[0] + &w[1], &w[0] + &w[2], &w[1] + &w[2]],
            &EXACT,
        )
        .unwrap();
        let flags = solid_facet_flags(oct.raw(), &container, &EXACT).unwrap();
        assert_eq!(flags.iter().filter(|f| **f == FacetOrigin::Boundary).count(), 4);
        assert_eq!(flags.iter().filter(|f| **f == FacetOrigin::Cut).count(), 4);
    }
}
