//! Regular polygons in at most six pieces.
//!
//! The perimeter is split into chains of consecutive edges. Each chain,
//! together with its point reflection through the midpoint of its chord,
//! bounds a centrally symmetric convex piece (a "lens"). A half turn about
//! that midpoint maps the lens onto itself and sends its perimeter chain to
//! the reflected chain, which lies inside the polygon. What the lenses leave
//! over is one scrap piece that stays in place.
//!
//! Chains either start at vertices (at least two edges each) or at edge
//! midpoints (at least one edge). Boundary positions are counted in half
//! edges: position `2j` is vertex `j`, position `2j + 1` the midpoint of
//! edge `j`.
//!
//! Two neighbouring lenses must not overlap near their shared endpoint. At a
//! shared vertex the angles the lenses claim add up to
//! `(c_A + c_B - 1) · 360/n`, which must stay below the interior angle
//! `180 - 360/n`; at a shared midpoint they must stay below 180. The only
//! plan where every junction is exactly tight is the hexagon's three
//! rhombi, which leave no scrap at all.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::collar::dissect_generic;
use crate::kernel::polygon::signed_area2;
use crate::kernel::{Motion2, NumericMode, Scalar, SimplePolygon, Vec2};
use crate::model::{Anchor, ChainPlan, Dissection, FacetOrigin, Metadata, PlanarDissection, PlanarPiece};
use crate::verify::verify;
use crate::Error;

/// Whether `lengths` (cyclic) is an admissible plan for an `n`-gon.
pub fn plan_admissible(n: usize, anchor: Anchor, lengths: &[usize]) -> bool {
    let min = match anchor {
        Anchor::Vertex => 2,
        Anchor::Midpoint => 1,
    };
    if lengths.len() < 2 || lengths.iter().sum::<usize>() != n {
        return false;
    }
    if lengths.iter().any(|&c| c < min || 2 * c > n - 1) {
        return false;
    }
    let k = lengths.len();
    let junctions = (0..k).map(|i| 2 * (lengths[i] + lengths[(i + 1) % k]));
    match anchor {
        Anchor::Midpoint => junctions.into_iter().all(|j| j < n),
        Anchor::Vertex => {
            let js: Vec<usize> = junctions.collect();
            js.iter().all(|&j| j < n + 2) || js.iter().all(|&j| j == n + 2)
        }
    }
}

fn compositions(n: usize, k: usize, lo: usize, hi: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if prefix.len() == k {
        if n == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    for c in lo..=hi.min(n) {
        prefix.push(c);
        compositions(n - c, k, lo, hi, prefix, out);
        prefix.pop();
    }
}

/// Chooses chain lengths for an `n`-gon: fewest chains first (3 to 5), then
/// vertex anchors over midpoint anchors, then the most balanced lengths,
/// ties broken towards the lexicographically largest sequence.
pub fn plan_chains(n: usize) -> Result<ChainPlan, Error> {
    if n < 5 {
        return Err(Error::UnsupportedN(n));
    }
    for k in 3..=5 {
        for anchor in [Anchor::Vertex, Anchor::Midpoint] {
            let min = if anchor == Anchor::Vertex { 2 } else { 1 };
            let lo = min.max((n / k).saturating_sub(1));
            let hi = n / k + 2;
            let mut found = Vec::new();
            compositions(n, k, lo, hi, &mut Vec::new(), &mut found);
            found.retain(|c| plan_admissible(n, anchor, c));
            let spread = |c: &Vec<usize>| c.iter().max().unwrap() - c.iter().min().unwrap();
            found.sort_by(|a, b| spread(a).cmp(&spread(b)).then_with(|| b.cmp(a)));
            if let Some(lengths) = found.into_iter().next() {
                return Ok(ChainPlan { anchor, lengths });
            }
        }
    }
    Err(Error::UnsupportedN(n))
}

/// Point at half-edge position `k` on the boundary of `poly`.
fn boundary_point(poly: &SimplePolygon, k: usize) -> Vec2 {
    let v = poly.vertices();
    let n = v.len();
    let k = k % (2 * n);
    if k.is_multiple_of(2) {
        v[k / 2].clone()
    } else {
        v[k / 2].midpoint(&v[(k / 2 + 1) % n])
    }
}

/// Boundary polyline of the chain starting at position `start` and spanning
/// `c` edges.
fn chain_polyline(poly: &SimplePolygon, start: usize, c: usize) -> Vec<Vec2> {
    let end = start + 2 * c;
    let mut pts = alloc::vec![boundary_point(poly, start)];
    let first_vertex = if start.is_multiple_of(2) { start + 2 } else { start + 1 };
    pts.extend((first_vertex..end).step_by(2).map(|k| boundary_point(poly, k)));
    pts.push(boundary_point(poly, end));
    pts
}

/// A chain and its point reflection through the chord midpoint.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainPiece {
    /// Boundary polyline `p_0 .. p_k`.
    pub chain: Vec<Vec2>,
    pub center: Vec2,
    /// `p_0 .. p_k` followed by `2z - p_1 .. 2z - p_{k-1}`.
    pub vertices: Vec<Vec2>,
    pub motion: Motion2,
}

impl ChainPiece {
    pub fn from_chain(chain: Vec<Vec2>) -> Result<Self, Error> {
        let k = chain.len() - 1;
        if k < 2 {
            return Err(Error::DegeneratePiece);
        }
        let s = &chain[0] + &chain[k];
        let center = s.scale(&Scalar::ratio(1, 2));
        let mut vertices = chain.clone();
        vertices.extend(chain[1..k].iter().map(|p| &s - p));
        Ok(ChainPiece { motion: Motion2::half_turn_about(&center), chain, center, vertices })
    }

    /// Outer chain edges are on the boundary, the reflected ones are cuts.
    pub fn facet_origin(&self) -> Vec<FacetOrigin> {
        let k = self.chain.len() - 1;
        let mut flags = alloc::vec![FacetOrigin::Boundary; k];
        flags.extend(core::iter::repeat_n(FacetOrigin::Cut, k));
        flags
    }

    /// Reflected chain from the chord's first endpoint to its last, as seen
    /// from outside the piece.
    fn inner_chain(&self) -> impl Iterator<Item = &Vec2> {
        let k = self.chain.len() - 1;
        core::iter::once(&self.chain[0]).chain(self.vertices[k + 1..].iter().rev())
    }
}

/// Dissects `poly` along `plan`. `poly` need not be regular: any polygon
/// whose lenses fit works, which lets the hexagon run in exact mode on an
/// affine image with rational coordinates.
pub fn dissect_chain_polygon(poly: &SimplePolygon, plan: &ChainPlan, mode: &NumericMode) -> Result<Dissection, Error> {
    if plan.lengths.iter().sum::<usize>() != poly.len() {
        return Err(Error::UnsupportedN(poly.len()));
    }
    let mut pos = match plan.anchor {
        Anchor::Vertex => 0,
        Anchor::Midpoint => 1,
    };
    let mut lenses = Vec::with_capacity(plan.lengths.len());
    for &c in &plan.lengths {
        lenses.push(ChainPiece::from_chain(chain_polyline(poly, pos, c))?);
        pos += 2 * c;
    }
    let mut pieces: Vec<PlanarPiece> = lenses
        .iter()
        .enumerate()
        .map(|(id, l)| PlanarPiece {
            id,
            vertices: l.vertices.clone(),
            facet_origin: l.facet_origin(),
            motion: l.motion.clone(),
        })
        .collect();
    let scrap: Vec<Vec2> = lenses.iter().flat_map(|l| l.inner_chain().cloned()).collect();
    if !mode.is_zero(&signed_area2(&scrap)) {
        let scrap = SimplePolygon::new(scrap, mode).map_err(|e| Error::ConstructionRejected(e.to_string()))?;
        let n = scrap.len();
        pieces.push(PlanarPiece {
            id: pieces.len(),
            vertices: scrap.into_vertices(),
            facet_origin: alloc::vec![FacetOrigin::Cut; n],
            motion: Motion2::identity(),
        });
    }
    let d = Dissection::Planar(PlanarDissection {
        mode: *mode,
        original: poly.clone(),
        witness_motion: Motion2::identity(),
        pieces,
        metadata: Metadata {
            construction: Some("regular".to_string()),
            chains: Some(plan.clone()),
            ..Metadata::default()
        },
    });
    let report = verify(&d);
    match report.diagnostics.first() {
        None => Ok(d),
        Some(x) => Err(Error::ConstructionRejected(alloc::format!("{:?} on piece {:?}", x.violation, x.piece))),
    }
}

/// Vertices of the regular `n`-gon with the given circumradius, vertex 0 on
/// the positive x-axis.
pub fn regular_vertices(n: usize, circumradius: f64) -> Vec<Vec2> {
    (0..n)
        .map(|j| {
            let a = 2.0 * PI * j as f64 / n as f64;
            Vec2::new(Scalar::float(circumradius * libm::cos(a)), Scalar::float(circumradius * libm::sin(a)))
        })
        .collect()
}

/// Regular polygon dissection in approximate mode. `n = 3, 4` fall back to
/// the generic construction.
pub fn dissect_regular(n: usize, circumradius: f64, epsilon: f64) -> Result<Dissection, Error> {
    if n < 3 {
        return Err(Error::UnsupportedN(n));
    }
    if !(circumradius > 0.0 && circumradius.is_finite()) {
        return Err(Error::InvalidPolygon("circumradius must be positive".to_string()));
    }
    let mode = NumericMode::Approx { epsilon };
    let poly = SimplePolygon::new(regular_vertices(n, circumradius), &mode)?;
    if n < 5 {
        let mut d = dissect_generic(&poly, &mode)?;
        let meta = d.metadata_mut();
        meta.fallback = true;
        return Ok(d);
    }
    dissect_chain_polygon(&poly, &plan_chains(n)?, &mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn plans_for_small_n() {
        let plan = |n| plan_chains(n).unwrap();
        assert_eq!(plan(6), ChainPlan { anchor: Anchor::Vertex, lengths: vec![2, 2, 2] });
        assert_eq!(plan(5), ChainPlan { anchor: Anchor::Midpoint, lengths: vec![1, 1, 1, 1, 1] });
        assert_eq!(plan(7), ChainPlan { anchor: Anchor::Midpoint, lengths: vec![2, 1, 2, 1, 1] });
        assert_eq!(plan(8).lengths, vec![2, 2, 2, 2]);
        assert_eq!(plan(12), ChainPlan { anchor: Anchor::Vertex, lengths: vec![3, 3, 3, 3] });
        assert_eq!(plan_chains(4), Err(Error::UnsupportedN(4)));
    }

    #[test]
    fn every_plan_is_admissible_and_short() {
        for n in 5..=60 {
            let p = plan_chains(n).unwrap();
            assert!(p.lengths.len() <= 5, "n = {n}");
            assert!(plan_admissible(n, p.anchor, &p.lengths));
        }
    }

    #[test]
    fn lens_is_centrally_symmetric() {
        let poly = SimplePolygon::new(regular_vertices(9, 1.0), &NumericMode::approx()).unwrap();
        let lens = ChainPiece::from_chain(chain_polyline(&poly, 0, 3)).unwrap();
        let mode = NumericMode::approx();
        for v in &lens.vertices {
            let image = lens.motion.apply(v);
            assert!(lens.vertices.iter().any(|w| w.approx_eq(&image, &mode)));
        }
    }

    #[test]
    fn hexagon_rhombi() {
        let d = dissect_regular(6, 1.0, 1e-9).unwrap();
        assert_eq!(d.piece_count(), 3);
        let Dissection::Planar(p) = &d else { panic!() };
        assert!(p.pieces.iter().all(|x| x.vertices.len() == 4));
    }

    #[test]
    fn heptagon_has_six_pieces() {
        let d = dissect_regular(7, 2.0, 1e-9).unwrap();
        assert_eq!(d.piece_count(), 6);
        assert!(verify(&d).pass());
    }
}
