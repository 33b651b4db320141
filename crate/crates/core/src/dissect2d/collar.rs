//! The generic construction: a pair of thin isosceles triangles on every
//! edge, swapped by a rotation, plus one scrap piece that stays put.
//!
//! On edge `a -> b` with midpoint `m`, the triangle `u = (a, m, p)` has legs
//! `|am| = |ap| = |e|/2`, and `v = (m, b, q)` is its mirror image across the
//! edge's perpendicular bisector. The proper motion sending `a, m, p` to
//! `b, q, m` carries `u` onto `v`; its inverse carries `v` onto `u`. Each
//! triangle's boundary edge thereby lands on the other's interior cut.
//!
//! The apex angle comes from the rational parametrisation
//! `cos = (t² - 1)/(t² + 1)`, `sin = 2t/(t² + 1)`, so everything stays
//! exact. Larger `t` gives flatter collars; the search doubles `t` until the
//! collars fit.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::kernel::polygon::{convex_polygons_overlap, polygon_inside};
use crate::kernel::{rotation_between, Mat2, Motion2, NumericMode, Scalar, SimplePolygon, Vec2};
use crate::model::{Dissection, FacetOrigin, Metadata, PlanarDissection, PlanarPiece};
use crate::verify::verify;
use crate::Error;

const MAX_DOUBLINGS: u32 = 64;

/// The two collar triangles on one edge and the motion swapping them.
#[derive(Clone, Debug, PartialEq)]
pub struct CollarPair {
    pub edge: usize,
    /// `(a, m, p)`.
    pub u: [Vec2; 3],
    /// `(m, b, q)`.
    pub v: [Vec2; 3],
    /// Applied to `u`; its inverse is applied to `v`.
    pub rho: Motion2,
    pub t: u128,
}

impl CollarPair {
    pub fn apex_in(&self) -> &Vec2 {
        &self.u[2]
    }

    pub fn apex_out(&self) -> &Vec2 {
        &self.v[2]
    }
}

/// Cosine and sine of the collar apex angle for stiffness `t`.
pub fn stiffness_rotation(t: u128) -> (Scalar, Scalar) {
    let t = Scalar::from_big(num_bigint::BigInt::from(t), num_bigint::BigInt::from(1)).expect("denominator is 1");
    let t2 = t.square();
    let den = &t2 + &Scalar::one();
    ((&t2 - &Scalar::one()) / &den, (t * Scalar::int(2)) / den)
}

/// Builds the collar pair on edge `i` of `poly`.
pub fn collar_pair(poly: &SimplePolygon, i: usize, t: u128, mode: &NumericMode) -> CollarPair {
    let (a, b) = poly.edge(i);
    let m = a.midpoint(b);
    let (c, s) = stiffness_rotation(t);
    let rot = Mat2::rotation(mode.lift(c), mode.lift(s));
    let p = a + &rot.apply(&(&m - a));
    let d = b - a;
    let k = (&p - &m).dot(&d) * Scalar::int(2) / d.norm2();
    let q = &p - &d.scale(&k);
    let r = rotation_between(&(&m - a), &(&q - b), mode).expect("collar legs have equal length by construction");
    let translation = b - &r.apply(a);
    CollarPair {
        edge: i,
        u: [a.clone(), m.clone(), p],
        v: [m, b.clone(), q],
        rho: Motion2::new(r, translation),
        t,
    }
}

/// Scrap ring: every polygon vertex followed by the collar points on the
/// next edge.
fn scrap_ring(poly: &SimplePolygon, pairs: &[CollarPair]) -> Vec<Vec2> {
    let mut ring = Vec::with_capacity(4 * pairs.len());
    for (v, pair) in poly.vertices().iter().zip(pairs) {
        ring.push(v.clone());
        ring.push(pair.u[2].clone());
        ring.push(pair.u[1].clone());
        ring.push(pair.v[2].clone());
    }
    ring
}

fn triangle(points: &[Vec2; 3], mode: &NumericMode) -> Option<SimplePolygon> {
    SimplePolygon::new(points.to_vec(), mode).ok()
}

/// Cheap geometric feasibility: collars inside `poly`, pairwise disjoint,
/// scrap simple. Returns the scrap polygon when feasible.
fn feasible(poly: &SimplePolygon, pairs: &[CollarPair], mode: &NumericMode) -> Option<SimplePolygon> {
    let mut tris = Vec::with_capacity(2 * pairs.len());
    for pair in pairs {
        tris.push(triangle(&pair.u, mode)?);
        tris.push(triangle(&pair.v, mode)?);
    }
    if !tris.iter().all(|t| polygon_inside(t, poly, mode)) {
        return None;
    }
    for i in 0..tris.len() {
        for j in i + 1..tris.len() {
            if convex_polygons_overlap(&tris[i], &tris[j], mode) {
                return None;
            }
        }
    }
    SimplePolygon::new(scrap_ring(poly, pairs), mode).ok()
}

fn assemble(poly: &SimplePolygon, pairs: &[CollarPair], scrap: SimplePolygon, mode: &NumericMode) -> Dissection {
    use FacetOrigin::{Boundary, Cut};
    let mut pieces = Vec::with_capacity(2 * pairs.len() + 1);
    for pair in pairs {
        pieces.push(PlanarPiece {
            id: pieces.len(),
            vertices: pair.u.to_vec(),
            facet_origin: alloc::vec![Boundary, Cut, Cut],
            motion: pair.rho.clone(),
        });
        pieces.push(PlanarPiece {
            id: pieces.len(),
            vertices: pair.v.to_vec(),
            facet_origin: alloc::vec![Boundary, Cut, Cut],
            motion: pair.rho.inverse(),
        });
    }
    let n = scrap.len();
    pieces.push(PlanarPiece {
        id: pieces.len(),
        vertices: scrap.into_vertices(),
        facet_origin: alloc::vec![Cut; n],
        motion: Motion2::identity(),
    });
    Dissection::Planar(PlanarDissection {
        mode: *mode,
        original: poly.clone(),
        witness_motion: Motion2::identity(),
        pieces,
        metadata: Metadata {
            construction: Some("generic".to_string()),
            stiffness: Some(pairs.first().map_or(0, |p| p.t)),
            ..Metadata::default()
        },
    })
}

/// Inside-out dissection of any simple polygon into `2n + 1` pieces,
/// starting the stiffness search at `t_start`.
pub fn dissect_generic_from(poly: &SimplePolygon, t_start: u128, mode: &NumericMode) -> Result<Dissection, Error> {
    let mut t = t_start.max(2);
    let mut last = None;
    for _ in 0..=MAX_DOUBLINGS {
        let pairs: Vec<CollarPair> = (0..poly.len()).map(|i| collar_pair(poly, i, t, mode)).collect();
        if let Some(scrap) = feasible(poly, &pairs, mode) {
            let d = assemble(poly, &pairs, scrap, mode);
            let report = verify(&d);
            if report.pass() {
                return Ok(d);
            }
            last = Some(format!("t = {t}: {:?}", report.diagnostics.first().map(|x| &x.violation)));
        }
        t = match t.checked_mul(2) {
            Some(next) => next,
            None => break,
        };
    }
    match last {
        Some(why) => Err(Error::ConstructionRejected(why)),
        None => Err(Error::FeasibilitySearchExhausted),
    }
}

pub fn dissect_generic(poly: &SimplePolygon, mode: &NumericMode) -> Result<Dissection, Error> {
    dissect_generic_from(poly, 2, mode)
}
