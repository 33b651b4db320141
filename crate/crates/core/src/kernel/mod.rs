//! Exact/approximate arithmetic, rigid motions and the geometric predicates
//! the constructors and verifier share.

pub mod motion;
pub mod polygon;
pub mod polyhedron;
pub mod scalar;
pub mod vector;

pub use motion::{rotation_between, Motion2, Motion3};
pub use polygon::{Bounds2, Location, SimplePolygon};
pub use polyhedron::{Bounds3, BoundaryPatch, CellComplex, ConvexPolyhedron, Polyhedron};
pub use scalar::{NumericMode, Scalar};
pub use vector::{Mat2, Mat3, Vec2, Vec3};

/// Where a facet sits relative to a closed region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundaryOverlap {
    /// Relative interior lies in the region's boundary.
    OnBoundary,
    /// Relative interior lies in the open interior.
    Interior,
    /// Positive-measure parts of both.
    Mixed,
}
