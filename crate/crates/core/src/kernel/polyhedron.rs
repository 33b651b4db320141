//! Convex polyhedra, cell complexes and their boundary surfaces.
//!
//! Planar polygons in space are plain vertex rings (`Vec<Vec3>`); their
//! orientation is the right-hand normal of the ring.

use alloc::vec::Vec;
use core::cmp::Ordering;

use super::scalar::{NumericMode, Scalar};
use super::vector::Vec3;
use super::BoundaryOverlap;
use crate::Error;

/// Twice the vector area of a planar ring.
pub fn area_vector2(ring: &[Vec3]) -> Vec3 {
    let n = ring.len();
    let mut acc = Vec3::zero();
    for i in 0..n {
        acc = &acc + &ring[i].cross(&ring[(i + 1) % n]);
    }
    acc
}

/// Area of `ring` measured along `normal` (a positive multiple of the true
/// area when `normal` is the ring's own orientation).
fn area_along(ring: &[Vec3], normal: &Vec3) -> Scalar {
    if ring.len() < 3 {
        return Scalar::zero();
    }
    area_vector2(ring).dot(normal)
}

/// Sutherland–Hodgman clip of a convex planar ring, keeping `f(x) <= 0` for
/// `f(x) = normal · (x - origin)`.
pub fn clip_ring(ring: &[Vec3], normal: &Vec3, origin: &Vec3, mode: &NumericMode) -> Vec<Vec3> {
    let n = ring.len();
    let f: Vec<Scalar> = ring.iter().map(|p| normal.dot(&(p - origin))).collect();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let j = (i + 1) % n;
        let (si, sj) = (mode.sign(&f[i]), mode.sign(&f[j]));
        if si != Ordering::Greater {
            out.push(ring[i].clone());
        }
        let crossing = (si == Ordering::Less && sj == Ordering::Greater)
            || (si == Ordering::Greater && sj == Ordering::Less);
        if crossing {
            let t = &f[i] / &(&f[i] - &f[j]);
            out.push(&ring[i] + &(&ring[j] - &ring[i]).scale(&t));
        }
    }
    out
}

fn ring_has_area(ring: &[Vec3], reference: &Vec3, mode: &NumericMode) -> bool {
    ring.len() >= 3 && !mode.is_zero(&area_along(ring, reference))
}

/// Pieces of a convex ring lying outside a set of half-spaces
/// `normal · (x - origin) <= 0`, as convex rings with positive area.
fn ring_minus_halfspaces(ring: &[Vec3], halfspaces: &[(Vec3, Vec3)], mode: &NumericMode) -> Vec<Vec<Vec3>> {
    let reference = area_vector2(ring);
    let mut pieces = Vec::new();
    let mut rest = ring.to_vec();
    for (normal, origin) in halfspaces {
        if !ring_has_area(&rest, &reference, mode) {
            break;
        }
        let outside = clip_ring(&rest, &-normal, origin, mode);
        if ring_has_area(&outside, &reference, mode) {
            pieces.push(outside);
        }
        rest = clip_ring(&rest, normal, origin, mode);
    }
    pieces
}

/// In-plane half-spaces bounding a convex ring (outward normals).
fn ring_edge_halfspaces(ring: &[Vec3]) -> Vec<(Vec3, Vec3)> {
    let normal = area_vector2(ring);
    let n = ring.len();
    (0..n)
        .map(|i| {
            let e = &ring[(i + 1) % n] - &ring[i];
            (e.cross(&normal), ring[i].clone())
        })
        .collect()
}

/// Raw vertex/face data as found in records; not necessarily valid.
#[derive(Clone, Debug, PartialEq)]
pub struct Polyhedron {
    pub vertices: Vec<Vec3>,
    pub faces: Vec<Vec<usize>>,
}

impl Polyhedron {
    pub fn face_ring(&self, f: usize) -> Vec<Vec3> {
        self.faces[f].iter().map(|&i| self.vertices[i].clone()).collect()
    }

    pub fn transformed(&self, f: impl Fn(&Vec3) -> Vec3) -> Polyhedron {
        Polyhedron { vertices: self.vertices.iter().map(f).collect(), faces: self.faces.clone() }
    }
}

/// A convex polyhedron with planar, outward-oriented faces.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolyhedron {
    raw: Polyhedron,
    /// Per face: outward normal (unnormalised) and a point on the plane.
    planes: Vec<(Vec3, Vec3)>,
}

impl ConvexPolyhedron {
    pub fn new(raw: Polyhedron, mode: &NumericMode) -> Result<Self, Error> {
        let nv = raw.vertices.len();
        if nv < 4 || raw.faces.len() < 4 {
            return Err(Error::InvalidPolyhedron("fewer than 4 vertices or faces".into()));
        }
        let mut used = alloc::vec![false; nv];
        let mut directed: Vec<(usize, usize)> = Vec::new();
        let mut planes = Vec::with_capacity(raw.faces.len());
        for (fi, face) in raw.faces.iter().enumerate() {
            if face.len() < 3 || face.iter().any(|&i| i >= nv) {
                return Err(Error::InvalidPolyhedron(alloc::format!("face {fi} has bad indices")));
            }
            let ring = raw.face_ring(fi);
            let normal = area_vector2(&ring);
            if normal.is_zero(mode) {
                return Err(Error::NonPlanarFace { face: fi });
            }
            if ring.iter().any(|p| !mode.is_zero(&normal.dot(&(p - &ring[0])))) {
                return Err(Error::NonPlanarFace { face: fi });
            }
            let mut below = false;
            for p in &raw.vertices {
                match mode.sign(&normal.dot(&(p - &ring[0]))) {
                    Ordering::Greater => return Err(Error::BadOrientation { face: fi }),
                    Ordering::Less => below = true,
                    Ordering::Equal => {}
                }
            }
            if !below {
                return Err(Error::InvalidPolyhedron("flat solid".into()));
            }
            for k in 0..face.len() {
                used[face[k]] = true;
                directed.push((face[k], face[(k + 1) % face.len()]));
            }
            planes.push((normal, ring[0].clone()));
        }
        if used.iter().any(|u| !u) {
            return Err(Error::InvalidPolyhedron("vertex not on any face".into()));
        }
        directed.sort_unstable();
        if directed.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPolyhedron("repeated directed edge".into()));
        }
        if directed.iter().any(|&(a, b)| directed.binary_search(&(b, a)).is_err()) {
            return Err(Error::InvalidPolyhedron("surface is not closed".into()));
        }
        let edges = directed.len() / 2;
        if nv + raw.faces.len() != edges + 2 {
            return Err(Error::InvalidPolyhedron("Euler characteristic is not 2".into()));
        }
        Ok(ConvexPolyhedron { raw, planes })
    }

    /// Builds the outward faces of a tetrahedron.
    pub fn tetrahedron(v: [Vec3; 4], mode: &NumericMode) -> Result<Self, Error> {
        let mut faces = Vec::new();
        for skip in 0..4 {
            let mut f: Vec<usize> = (0..4).filter(|&i| i != skip).collect();
            let n = (&v[f[1]] - &v[f[0]]).cross(&(&v[f[2]] - &v[f[0]]));
            if mode.sign(&n.dot(&(&v[skip] - &v[f[0]]))) == Ordering::Greater {
                f.swap(1, 2);
            }
            faces.push(f);
        }
        ConvexPolyhedron::new(Polyhedron { vertices: v.to_vec(), faces }, mode)
    }

    /// Builds the eight outward faces of an octahedron given its six
    /// vertices in any order (antipodal pairs are detected by distance).
    pub fn octahedron(v: [Vec3; 6], mode: &NumericMode) -> Result<Self, Error> {
        let mut opposite = [usize::MAX; 6];
        for i in 0..6 {
            let mut best = (Scalar::int(-1), usize::MAX);
            for j in 0..6 {
                if i != j {
                    let d = (&v[i] - &v[j]).norm2();
                    if mode.lt(&best.0, &d) {
                        best = (d, j);
                    }
                }
            }
            opposite[i] = best.1;
        }
        let mut axes: Vec<[usize; 2]> = Vec::new();
        for i in 0..6 {
            let j = opposite[i];
            if opposite[j] != i {
                return Err(Error::InvalidPolyhedron("no antipodal pairing".into()));
            }
            if i < j {
                axes.push([i, j]);
            }
        }
        if axes.len() != 3 {
            return Err(Error::InvalidPolyhedron("no antipodal pairing".into()));
        }
        let center = Vec3::centroid(v.iter());
        let mut faces = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    let mut f = alloc::vec![axes[0][a], axes[1][b], axes[2][c]];
                    let n = (&v[f[1]] - &v[f[0]]).cross(&(&v[f[2]] - &v[f[0]]));
                    if mode.sign(&n.dot(&(&center - &v[f[0]]))) == Ordering::Greater {
                        f.swap(1, 2);
                    }
                    faces.push(f);
                }
            }
        }
        ConvexPolyhedron::new(Polyhedron { vertices: v.to_vec(), faces }, mode)
    }

    pub fn raw(&self) -> &Polyhedron {
        &self.raw
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.raw.vertices
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.raw.faces
    }

    pub fn face_ring(&self, f: usize) -> Vec<Vec3> {
        self.raw.face_ring(f)
    }

    /// Outward normal (unnormalised) and a point on face `f`'s plane.
    pub fn plane(&self, f: usize) -> &(Vec3, Vec3) {
        &self.planes[f]
    }

    pub fn planes(&self) -> &[(Vec3, Vec3)] {
        &self.planes
    }

    pub fn centroid(&self) -> Vec3 {
        Vec3::centroid(self.raw.vertices.iter())
    }

    pub fn volume(&self) -> Scalar {
        faces_volume(self.raw.faces.iter().enumerate().map(|(i, _)| self.face_ring(i)))
    }

    pub fn contains_point(&self, p: &Vec3, mode: &NumericMode) -> bool {
        self.planes.iter().all(|(n, o)| mode.sign(&n.dot(&(p - o))) != Ordering::Greater)
    }

    /// Unique undirected edges.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = Vec::new();
        for f in &self.raw.faces {
            for k in 0..f.len() {
                let (a, b) = (f[k], f[(k + 1) % f.len()]);
                if a < b {
                    e.push((a, b));
                }
            }
        }
        e.sort_unstable();
        e
    }

    pub fn transformed(&self, f: impl Fn(&Vec3) -> Vec3, mode: &NumericMode) -> Result<Self, Error> {
        ConvexPolyhedron::new(self.raw.transformed(f), mode)
    }

    pub fn bounds(&self) -> Bounds3 {
        Bounds3::of(&self.raw.vertices)
    }

    /// Volume of `self ∩ other`, by clipping with each of `other`'s planes.
    pub fn intersection_volume(&self, other: &ConvexPolyhedron, mode: &NumericMode) -> Scalar {
        let mut faces: Vec<Vec<Vec3>> = (0..self.raw.faces.len()).map(|i| self.face_ring(i)).collect();
        for (n, o) in &other.planes {
            faces = clip_solid(&faces, n, o, mode);
            if faces.is_empty() {
                return Scalar::zero();
            }
        }
        faces_volume(faces.into_iter())
    }
}

fn faces_volume(faces: impl Iterator<Item = Vec<Vec3>>) -> Scalar {
    let mut six = Scalar::zero();
    for ring in faces {
        for k in 1..ring.len().saturating_sub(1) {
            six = six + ring[0].dot(&ring[k].cross(&ring[k + 1]));
        }
    }
    six * Scalar::ratio(1, 6)
}

/// Clips a closed convex solid (given by face rings) to `n · (x - o) <= 0`
/// and caps the cut.
fn clip_solid(faces: &[Vec<Vec3>], n: &Vec3, o: &Vec3, mode: &NumericMode) -> Vec<Vec<Vec3>> {
    let cut = faces.iter().flatten().any(|p| mode.sign(&n.dot(&(p - o))) == Ordering::Greater);
    if !cut {
        return faces.to_vec();
    }
    let mut out = Vec::new();
    let mut cap: Vec<Vec3> = Vec::new();
    for ring in faces {
        let clipped = clip_ring(ring, n, o, mode);
        for p in &clipped {
            if mode.is_zero(&n.dot(&(p - o))) && !cap.iter().any(|c| c.approx_eq(p, mode)) {
                cap.push(p.clone());
            }
        }
        if ring_has_area(&clipped, &area_vector2(ring), mode) {
            out.push(clipped);
        }
    }
    if out.is_empty() {
        return out;
    }
    if cap.len() >= 3 {
        let ordered = order_around(cap, n, mode);
        if ring_has_area(&ordered, n, mode) {
            out.push(ordered);
        }
    }
    out
}

/// Orders coplanar convex-position points counter-clockwise about `normal`.
fn order_around(points: Vec<Vec3>, normal: &Vec3, mode: &NumericMode) -> Vec<Vec3> {
    let c = Vec3::centroid(points.iter());
    let r = &points[0] - &c;
    let upper = |a: &Vec3| {
        let s = mode.sign(&r.cross(a).dot(normal));
        s == Ordering::Greater || (s == Ordering::Equal && mode.is_positive(&r.dot(a)))
    };
    let mut rel: Vec<(Vec3, Vec3)> = points.into_iter().map(|p| (&p - &c, p)).collect();
    rel.sort_by(|(a, _), (b, _)| match (upper(a), upper(b)) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => mode.sign(&b.cross(a).dot(normal)),
    });
    rel.into_iter().map(|(_, p)| p).collect()
}

/// Float bounding box used as a conservative prefilter.
#[derive(Clone, Copy, Debug)]
pub struct Bounds3 {
    pub min: [f64; 3],
    pub max: [f64; 3],
}

impl Bounds3 {
    pub fn of(points: &[Vec3]) -> Self {
        let mut b = Bounds3 { min: [f64::INFINITY; 3], max: [f64::NEG_INFINITY; 3] };
        for p in points {
            let c = p.to_f64();
            for k in 0..3 {
                b.min[k] = b.min[k].min(c[k]);
                b.max[k] = b.max[k].max(c[k]);
            }
        }
        b
    }

    pub fn may_overlap(&self, o: &Bounds3) -> bool {
        (0..3).all(|k| {
            let slack = 1e-9 * (1f64.max(self.max[k].abs()).max(o.max[k].abs()));
            self.min[k] < o.max[k] + slack && o.min[k] < self.max[k] + slack
        })
    }

    pub fn union(&self, o: &Bounds3) -> Bounds3 {
        Bounds3 {
            min: core::array::from_fn(|k| self.min[k].min(o.min[k])),
            max: core::array::from_fn(|k| self.max[k].max(o.max[k])),
        }
    }
}

fn separated_along(a: &[Vec3], b: &[Vec3], axis: &Vec3, mode: &NumericMode) -> bool {
    let range = |pts: &[Vec3]| {
        let mut lo = pts[0].dot(axis);
        let mut hi = lo.clone();
        for p in &pts[1..] {
            let v = p.dot(axis);
            if mode.lt(&v, &lo) {
                lo = v;
            } else if mode.lt(&hi, &v) {
                hi = v;
            }
        }
        (lo, hi)
    };
    let (alo, ahi) = range(a);
    let (blo, bhi) = range(b);
    mode.le(&ahi, &blo) || mode.le(&bhi, &alo)
}

/// Separating-axis test; bodies touching along faces, edges or vertices do
/// not overlap.
pub fn convex_polyhedra_overlap(a: &ConvexPolyhedron, b: &ConvexPolyhedron, mode: &NumericMode) -> bool {
    if !a.bounds().may_overlap(&b.bounds()) {
        return false;
    }
    let (va, vb) = (a.vertices(), b.vertices());
    for (n, _) in a.planes.iter().chain(b.planes.iter()) {
        if separated_along(va, vb, n, mode) {
            return false;
        }
    }
    for (i, j) in a.edges() {
        let ea = &va[j] - &va[i];
        for (k, l) in b.edges() {
            let axis = ea.cross(&(&vb[l] - &vb[k]));
            if !axis.is_zero(mode) && separated_along(va, vb, &axis, mode) {
                return false;
            }
        }
    }
    true
}

/// One convex patch of a solid's boundary with its outward normal.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryPatch {
    pub ring: Vec<Vec3>,
    pub normal: Vec3,
}

fn coplanar(n1: &Vec3, p1: &Vec3, n2: &Vec3, p2: &Vec3, mode: &NumericMode) -> bool {
    n1.cross(n2).is_zero(mode) && mode.is_zero(&n1.dot(&(p2 - p1)))
}

/// Interior-disjoint convex cells whose union is a polyhedral solid.
#[derive(Clone, Debug, PartialEq)]
pub struct CellComplex {
    cells: Vec<ConvexPolyhedron>,
    boundary: Vec<BoundaryPatch>,
}

impl CellComplex {
    /// Checks pairwise interior disjointness and extracts the boundary:
    /// cell faces minus the parts glued to an opposite face of another cell.
    pub fn new(cells: Vec<ConvexPolyhedron>, mode: &NumericMode) -> Result<Self, Error> {
        if cells.is_empty() {
            return Err(Error::InvalidPolyhedron("empty cell complex".into()));
        }
        for i in 0..cells.len() {
            for j in i + 1..cells.len() {
                if convex_polyhedra_overlap(&cells[i], &cells[j], mode) {
                    return Err(Error::CellsOverlap(i, j));
                }
            }
        }
        let mut boundary = Vec::new();
        for (ci, cell) in cells.iter().enumerate() {
            for f in 0..cell.faces().len() {
                let (n, o) = cell.plane(f);
                let mut pieces = alloc::vec![cell.face_ring(f)];
                for (cj, other) in cells.iter().enumerate() {
                    if ci == cj {
                        continue;
                    }
                    for g in 0..other.faces().len() {
                        let (m, p) = other.plane(g);
                        if !coplanar(n, o, m, p, mode) || mode.sign(&n.dot(m)) != Ordering::Less {
                            continue;
                        }
                        let cut = ring_edge_halfspaces(&other.face_ring(g));
                        pieces = pieces.iter().flat_map(|r| ring_minus_halfspaces(r, &cut, mode)).collect();
                    }
                }
                boundary.extend(pieces.into_iter().map(|ring| BoundaryPatch { ring, normal: n.clone() }));
            }
        }
        Ok(CellComplex { cells, boundary })
    }

    pub fn single(cell: ConvexPolyhedron) -> Self {
        let boundary = (0..cell.faces().len())
            .map(|f| BoundaryPatch { ring: cell.face_ring(f), normal: cell.plane(f).0.clone() })
            .collect();
        CellComplex { cells: alloc::vec![cell], boundary }
    }

    pub fn cells(&self) -> &[ConvexPolyhedron] {
        &self.cells
    }

    pub fn boundary(&self) -> &[BoundaryPatch] {
        &self.boundary
    }

    pub fn volume(&self) -> Scalar {
        self.cells.iter().map(ConvexPolyhedron::volume).sum()
    }

    pub fn bounds(&self) -> Bounds3 {
        let mut b = self.cells[0].bounds();
        for c in &self.cells[1..] {
            b = b.union(&c.bounds());
        }
        b
    }

    pub fn contains_point(&self, p: &Vec3, mode: &NumericMode) -> bool {
        self.cells.iter().any(|c| c.contains_point(p, mode))
    }

    /// Closed containment of a convex planar ring.
    pub fn contains_ring(&self, ring: &[Vec3], mode: &NumericMode) -> bool {
        if self.cells.iter().any(|c| ring.iter().all(|p| c.contains_point(p, mode))) {
            return true;
        }
        let mut rest = alloc::vec![ring.to_vec()];
        for cell in &self.cells {
            rest = rest.iter().flat_map(|r| ring_minus_halfspaces(r, cell.planes(), mode)).collect();
            if rest.is_empty() {
                return true;
            }
        }
        false
    }

    /// Closed containment of a convex solid: inside one cell, or the clipped
    /// volumes over all cells add up to its volume.
    pub fn contains_solid(&self, body: &ConvexPolyhedron, mode: &NumericMode) -> bool {
        if self.cells.iter().any(|c| body.vertices().iter().all(|p| c.contains_point(p, mode))) {
            return true;
        }
        let inside: Scalar = self.cells.iter().map(|c| body.intersection_volume(c, mode)).sum();
        mode.eq(&inside, &body.volume())
    }

    /// How much of a face (convex ring) lies on the boundary of the solid.
    pub fn classify_ring(&self, ring: &[Vec3], mode: &NumericMode) -> Result<BoundaryOverlap, Error> {
        if !self.contains_ring(ring, mode) {
            return Err(Error::FacetOutsideShape);
        }
        let normal = area_vector2(ring);
        let total = area_along(ring, &normal);
        let mut covered = Scalar::zero();
        for patch in &self.boundary {
            if !coplanar(&normal, &ring[0], &patch.normal, &patch.ring[0], mode) {
                continue;
            }
            let mut clipped = ring.to_vec();
            for (m, o) in ring_edge_halfspaces(&patch.ring) {
                clipped = clip_ring(&clipped, &m, &o, mode);
                if clipped.len() < 3 {
                    break;
                }
            }
            covered = covered + area_along(&clipped, &normal);
        }
        Ok(if mode.is_zero(&covered) {
            BoundaryOverlap::Interior
        } else if mode.eq(&covered, &total) {
            BoundaryOverlap::OnBoundary
        } else {
            BoundaryOverlap::Mixed
        })
    }
}

/// `boundary_overlap` for a face against a single convex polyhedron.
pub fn classify_face(ring: &[Vec3], body: &ConvexPolyhedron, mode: &NumericMode) -> Result<BoundaryOverlap, Error> {
    CellComplex::single(body.clone()).classify_ring(ring, mode)
}
