//! Solids built from regular tetrahedra and octahedra.
//!
//! Each cell is subdivided twice in the honeycomb, the pieces are assigned
//! new footprints among themselves so every former boundary face ends up
//! inside, and the result is carried to user coordinates by the similarity
//! that takes the canonical cell to the given one. Motions are conjugated by
//! that similarity, which keeps them rigid.

pub mod honeycomb;
pub mod solver;

use alloc::string::ToString;
use alloc::vec::Vec;

pub use honeycomb::{
    boundary_census, canonical_oct, canonical_tet, octahedron_frame, subdivide, subdivide_oct, subdivide_tet,
    tetrahedron_frame, Cell, CellKind, Similarity,
};
pub use solver::{cube_rotations, solve_rearrangement, Placement};

use crate::kernel::{CellComplex, ConvexPolyhedron, Motion3, NumericMode, Vec3};
use crate::model::{solid_facet_flags, Dissection, Metadata, SolidDissection, SolidPiece};
use crate::Error;

pub const DEFAULT_DEPTH: u32 = 2;

/// Canonical pieces of one cell: subdivided, flagged and placed.
pub fn canonical_pieces(kind: CellKind, depth: u32) -> Result<Vec<SolidPiece>, Error> {
    let exact = NumericMode::Exact;
    let root = match kind {
        CellKind::Tet => canonical_tet(),
        CellKind::Oct => canonical_oct(),
    };
    let container = CellComplex::single(root.body.clone());
    let cells = subdivide(&[root], depth, &exact)?;
    let (flags, placement) = solver::place_cells(&cells, &container, &exact)?;
    Ok(cells
        .into_iter()
        .zip(flags)
        .zip(placement)
        .enumerate()
        .map(|(id, ((cell, facet_origin), p))| SolidPiece {
            id,
            shape: cell.body.raw().clone(),
            facet_origin,
            motion: p.motion,
        })
        .collect())
}

/// Carries canonical pieces through `frame`.
fn transport(pieces: &[SolidPiece], frame: &Similarity, mode: &NumericMode) -> Result<Vec<SolidPiece>, Error> {
    let inverse = frame.linear.inverse(mode).ok_or(Error::NotRegular)?;
    Ok(pieces
        .iter()
        .map(|p| SolidPiece {
            id: p.id,
            shape: p.shape.transformed(|v| frame.apply(v)),
            facet_origin: p.facet_origin.clone(),
            motion: frame.conjugate(&p.motion, &inverse),
        })
        .collect())
}

fn frame_for(cell: &ConvexPolyhedron, mode: &NumericMode) -> Result<(CellKind, Similarity), Error> {
    let v = cell.vertices();
    match v.len() {
        4 => Ok((CellKind::Tet, tetrahedron_frame(&v.to_vec().try_into().expect("length checked"), mode)?)),
        6 => Ok((CellKind::Oct, octahedron_frame(&v.to_vec().try_into().expect("length checked"), mode)?)),
        _ => Err(Error::NotRegular),
    }
}

fn record(original: CellComplex, pieces: Vec<SolidPiece>, construction: &str, mode: &NumericMode) -> Dissection {
    Dissection::Solid(SolidDissection {
        mode: *mode,
        original,
        witness_motion: Motion3::identity(),
        pieces,
        metadata: Metadata {
            construction: Some(construction.to_string()),
            depth: Some(DEFAULT_DEPTH),
            ..Metadata::default()
        },
    })
}

fn dissect_single(vertices: Vec<Vec3>, kind: CellKind, name: &str, mode: &NumericMode) -> Result<Dissection, Error> {
    let body = match kind {
        CellKind::Tet => ConvexPolyhedron::tetrahedron(vertices.try_into().map_err(|_| Error::NotRegular)?, mode),
        CellKind::Oct => ConvexPolyhedron::octahedron(vertices.try_into().map_err(|_| Error::NotRegular)?, mode),
    }
    .map_err(|_| Error::NotRegular)?;
    let (_, frame) = frame_for(&body, mode)?;
    let pieces = transport(&canonical_pieces(kind, DEFAULT_DEPTH)?, &frame, mode)?;
    Ok(record(CellComplex::single(body), pieces, name, mode))
}

/// The 34-piece dissection of a regular tetrahedron (canonical when `None`).
pub fn dissect_regular_tetrahedron(vertices: Option<[Vec3; 4]>, mode: &NumericMode) -> Result<Dissection, Error> {
    let v = vertices.unwrap_or_else(|| canonical_tet().body.vertices().to_vec().try_into().expect("four vertices"));
    dissect_single(v.to_vec(), CellKind::Tet, "tetrahedron", mode)
}

/// The 124-piece dissection of a regular octahedron (canonical when `None`).
pub fn dissect_regular_octahedron(vertices: Option<[Vec3; 6]>, mode: &NumericMode) -> Result<Dissection, Error> {
    let v = vertices.unwrap_or_else(|| canonical_oct().body.vertices().to_vec().try_into().expect("six vertices"));
    dissect_single(v.to_vec(), CellKind::Oct, "octahedron", mode)
}

/// Checks that touching cells share whole faces.
fn check_face_to_face(cells: &[ConvexPolyhedron], mode: &NumericMode) -> Result<(), Error> {
    use crate::kernel::polyhedron::{area_vector2, clip_ring};
    for i in 0..cells.len() {
        for j in i + 1..cells.len() {
            for f in 0..cells[i].faces().len() {
                let (n, o) = cells[i].plane(f);
                for g in 0..cells[j].faces().len() {
                    let (m, p) = cells[j].plane(g);
                    let coplanar = n.cross(m).is_zero(mode) && mode.is_zero(&n.dot(&(p - o)));
                    if !coplanar || mode.is_positive(&n.dot(m)) {
                        continue;
                    }
                    let ours = cells[i].face_ring(f);
                    let theirs = cells[j].face_ring(g);
                    let mut clipped = ours.clone();
                    let k = theirs.len();
                    for e in 0..k {
                        let edge = &theirs[(e + 1) % k] - &theirs[e];
                        clipped = clip_ring(&clipped, &edge.cross(m), &theirs[e], mode);
                        if clipped.len() < 3 {
                            break;
                        }
                    }
                    if clipped.len() < 3 || mode.is_zero(&area_vector2(&clipped).dot(n)) {
                        continue;
                    }
                    let same = ours.len() == theirs.len() && ours.iter().all(|v| theirs.iter().any(|w| v.approx_eq(w, mode)));
                    if !same {
                        return Err(Error::NotFaceToFace(i, j));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Dissects a solid given as regular tetrahedra and octahedra meeting face to
/// face, one cell at a time. Pieces are numbered cell by cell.
pub fn dissect_complex(cells: &[Vec<Vec3>], mode: &NumericMode) -> Result<Dissection, Error> {
    let mut bodies = Vec::with_capacity(cells.len());
    let mut frames = Vec::with_capacity(cells.len());
    for (i, v) in cells.iter().enumerate() {
        let body = match v.len() {
            4 => ConvexPolyhedron::tetrahedron(v.clone().try_into().expect("length checked"), mode),
            6 => ConvexPolyhedron::octahedron(v.clone().try_into().expect("length checked"), mode),
            _ => return Err(Error::CellNotRegular(i)),
        }
        .map_err(|_| Error::CellNotRegular(i))?;
        frames.push(frame_for(&body, mode).map_err(|_| Error::CellNotRegular(i))?);
        bodies.push(body);
    }
    let original = CellComplex::new(bodies.clone(), mode)?;
    check_face_to_face(&bodies, mode)?;
    let mut canonical: [Option<Vec<SolidPiece>>; 2] = [None, None];
    let mut pieces = Vec::new();
    for (kind, frame) in &frames {
        let slot = &mut canonical[*kind as usize];
        if slot.is_none() {
            *slot = Some(canonical_pieces(*kind, DEFAULT_DEPTH)?);
        }
        for mut p in transport(slot.as_ref().expect("filled above"), frame, mode)? {
            p.id = pieces.len();
            p.facet_origin = solid_facet_flags(&p.shape, &original, mode)?;
            pieces.push(p);
        }
    }
    Ok(record(original, pieces, "complex", mode))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Scalar;
    use crate::verify::verify;

    #[test]
    fn canonical_tetrahedron_passes() {
        let d = dissect_regular_tetrahedron(None, &NumericMode::Exact).unwrap();
        assert_eq!(d.piece_count(), 34);
        let r = verify(&d);
        assert!(r.pass(), "{:?}", r.diagnostics);
    }

    #[test]
    fn scaled_and_shifted_tetrahedron_stays_exact() {
        let shift = Vec3::ints(1, 2, 3);
        let v: [Vec3; 4] = canonical_tet()
            .body
            .vertices()
            .iter()
            .map(|p| &p.scale(&Scalar::int(3)) + &shift)
            .collect::<Vec<_>>()
            .try_into()
            .unwrap();
        let d = dissect_regular_tetrahedron(Some(v), &NumericMode::Exact).unwrap();
        assert!(crate::verify::mode_consistent(&d));
        assert!(verify(&d).pass());
    }

    #[test]
    fn overlapping_cells_are_rejected() {
        let t: Vec<Vec3> = canonical_tet().body.vertices().to_vec();
        assert_eq!(dissect_complex(&[t.clone(), t], &NumericMode::Exact).err(), Some(Error::CellsOverlap(0, 1)));
    }
}
