use alloc::string::String;
use core::fmt;

/// Everything that can go wrong in the core crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    NormMismatch,
    ZeroVector,
    InvalidPolygon(String),
    InvalidPolyhedron(String),
    NonPlanarFace { face: usize },
    BadOrientation { face: usize },
    FacetOutsideShape,
    /// A 3D facet lies partly on the boundary and partly inside.
    MixedFacet { face: usize },
    DegeneratePiece,
    UnsupportedN(usize),
    FeasibilitySearchExhausted,
    /// A construction produced a record its own verifier rejects.
    ConstructionRejected(String),
    WrongKind,
    NotRegular,
    CellsDoNotTile(String),
    NoPlacementFound,
    NotExactMode,
    CellNotRegular(usize),
    CellsOverlap(usize, usize),
    NotFaceToFace(usize, usize),
    NumberFormat(String),
    ModeMismatch(String),
    MalformedRecord(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NormMismatch => write!(f, "vectors have different lengths"),
            Error::ZeroVector => write!(f, "zero vector"),
            Error::InvalidPolygon(why) => write!(f, "invalid polygon: {why}"),
            Error::InvalidPolyhedron(why) => write!(f, "invalid polyhedron: {why}"),
            Error::NonPlanarFace { face } => write!(f, "face {face} is not planar"),
            Error::BadOrientation { face } => write!(f, "face {face} is not outward oriented"),
            Error::FacetOutsideShape => write!(f, "facet leaves the shape"),
            Error::MixedFacet { face } => {
                write!(f, "face {face} is partly on the boundary and partly interior")
            }
            Error::DegeneratePiece => write!(f, "piece degenerates to fewer than 3 vertices"),
            Error::UnsupportedN(n) => write!(f, "unsupported polygon size n = {n}"),
            Error::FeasibilitySearchExhausted => write!(f, "feasibility search exhausted"),
            Error::ConstructionRejected(why) => write!(f, "construction rejected by verifier: {why}"),
            Error::WrongKind => write!(f, "cell has the wrong kind for this operation"),
            Error::NotRegular => write!(f, "shape is not regular"),
            Error::CellsDoNotTile(why) => write!(f, "cells do not tile the container: {why}"),
            Error::NoPlacementFound => write!(f, "no inside-out placement exists for these cells"),
            Error::NotExactMode => write!(f, "operation requires exact mode"),
            Error::CellNotRegular(i) => write!(f, "cell {i} is not a regular tetrahedron or octahedron"),
            Error::CellsOverlap(i, j) => write!(f, "cells {i} and {j} overlap"),
            Error::NotFaceToFace(i, j) => write!(f, "cells {i} and {j} do not meet face to face"),
            Error::NumberFormat(s) => write!(f, "bad number {s:?}"),
            Error::ModeMismatch(why) => write!(f, "numeric mode mismatch: {why}"),
            Error::MalformedRecord(why) => write!(f, "malformed record: {why}"),
        }
    }
}

impl core::error::Error for Error {}
