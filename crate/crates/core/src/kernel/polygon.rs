//! Planar predicates: orientation, point location, segment/boundary overlap,
//! convex overlap tests and clipping.

use alloc::vec::Vec;
use core::cmp::Ordering;

use super::scalar::{NumericMode, Scalar};
use super::vector::Vec2;
use super::BoundaryOverlap;
use crate::Error;

/// Sign of the turn `a -> b -> c` (`Greater` = counter-clockwise).
///
/// Compares the two cross-product terms rather than their difference so the
/// approximate tolerance is relative to the coordinates involved.
pub fn orient(a: &Vec2, b: &Vec2, c: &Vec2, mode: &NumericMode) -> Ordering {
    let l = (&b.x - &a.x) * (&c.y - &a.y);
    let r = (&b.y - &a.y) * (&c.x - &a.x);
    mode.cmp(&l, &r)
}

/// Twice the signed area (positive for counter-clockwise rings).
pub fn signed_area2(vertices: &[Vec2]) -> Scalar {
    let n = vertices.len();
    (0..n).map(|i| vertices[i].cross(&vertices[(i + 1) % n])).sum()
}

pub fn signed_area(vertices: &[Vec2]) -> Scalar {
    signed_area2(vertices) * Scalar::ratio(1, 2)
}

/// Closed-segment membership.
pub fn on_segment(p: &Vec2, a: &Vec2, b: &Vec2, mode: &NumericMode) -> bool {
    orient(a, b, p, mode) == Ordering::Equal && mode.le(&(p - a).dot(&(p - b)), &Scalar::zero())
}

fn segments_intersect(p1: &Vec2, p2: &Vec2, q1: &Vec2, q2: &Vec2, mode: &NumericMode) -> bool {
    let d1 = orient(q1, q2, p1, mode);
    let d2 = orient(q1, q2, p2, mode);
    let d3 = orient(p1, p2, q1, mode);
    let d4 = orient(p1, p2, q2, mode);
    let opposite = |a: Ordering, b: Ordering| {
        (a == Ordering::Greater && b == Ordering::Less) || (a == Ordering::Less && b == Ordering::Greater)
    };
    if opposite(d1, d2) && opposite(d3, d4) {
        return true;
    }
    on_segment(p1, q1, q2, mode)
        || on_segment(p2, q1, q2, mode)
        || on_segment(q1, p1, p2, mode)
        || on_segment(q2, p1, p2, mode)
}

/// Where a point sits relative to a closed region.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Inside,
    OnBoundary,
    Outside,
}

/// A counter-clockwise simple polygon. Collinear vertices are allowed,
/// repeated consecutive vertices are not.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplePolygon {
    vertices: Vec<Vec2>,
}

impl SimplePolygon {
    pub fn new(vertices: Vec<Vec2>, mode: &NumericMode) -> Result<Self, Error> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidPolygon(alloc::format!("{n} vertices")));
        }
        for i in 0..n {
            if vertices[i].approx_eq(&vertices[(i + 1) % n], mode) {
                return Err(Error::InvalidPolygon(alloc::format!("vertex {i} repeated")));
            }
        }
        for i in 0..n {
            let (a, b) = (&vertices[i], &vertices[(i + 1) % n]);
            for j in i + 1..n {
                let (c, d) = (&vertices[j], &vertices[(j + 1) % n]);
                if j == i + 1 || (i == 0 && j == n - 1) {
                    // adjacent: reject only a fold-back along the shared vertex
                    let (shared, x, y) = if j == i + 1 { (b, a, d) } else { (a, b, c) };
                    if orient(x, shared, y, mode) == Ordering::Equal
                        && mode.is_positive(&(x - shared).dot(&(y - shared)))
                    {
                        return Err(Error::InvalidPolygon(alloc::format!("spike at edges {i}/{j}")));
                    }
                } else if segments_intersect(a, b, c, d, mode) {
                    return Err(Error::InvalidPolygon(alloc::format!("edges {i} and {j} cross")));
                }
            }
        }
        if !mode.is_positive(&signed_area2(&vertices)) {
            return Err(Error::InvalidPolygon("not counter-clockwise".into()));
        }
        Ok(SimplePolygon { vertices })
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Vec2> {
        self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1`.
    pub fn edge(&self, i: usize) -> (&Vec2, &Vec2) {
        (&self.vertices[i], &self.vertices[(i + 1) % self.vertices.len()])
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Vec2, &Vec2)> {
        (0..self.len()).map(move |i| self.edge(i))
    }

    pub fn area(&self) -> Scalar {
        signed_area(&self.vertices)
    }

    pub fn is_convex(&self, mode: &NumericMode) -> bool {
        let n = self.len();
        (0..n).all(|i| {
            orient(&self.vertices[(i + n - 1) % n], &self.vertices[i], &self.vertices[(i + 1) % n], mode)
                != Ordering::Less
        })
    }

    pub fn locate(&self, p: &Vec2, mode: &NumericMode) -> Location {
        if self.edges().any(|(a, b)| on_segment(p, a, b, mode)) {
            return Location::OnBoundary;
        }
        let mut inside = false;
        for (a, b) in self.edges() {
            let a_above = mode.lt(&p.y, &a.y);
            let b_above = mode.lt(&p.y, &b.y);
            if a_above != b_above {
                let o = orient(a, b, p, mode);
                let crosses = if b_above { o == Ordering::Greater } else { o == Ordering::Less };
                if crosses {
                    inside = !inside;
                }
            }
        }
        if inside { Location::Inside } else { Location::Outside }
    }

    pub fn transformed(&self, f: impl Fn(&Vec2) -> Vec2) -> SimplePolygon {
        SimplePolygon { vertices: self.vertices.iter().map(f).collect() }
    }

    pub fn bounds(&self) -> Bounds2 {
        Bounds2::of(&self.vertices)
    }
}

/// Axis-aligned box in floats, used only as a conservative prefilter.
#[derive(Clone, Copy, Debug)]
pub struct Bounds2 {
    pub min: [f64; 2],
    pub max: [f64; 2],
}

impl Bounds2 {
    pub fn of(points: &[Vec2]) -> Self {
        let mut b = Bounds2 { min: [f64::INFINITY; 2], max: [f64::NEG_INFINITY; 2] };
        for p in points {
            let c = p.to_f64();
            for k in 0..2 {
                b.min[k] = b.min[k].min(c[k]);
                b.max[k] = b.max[k].max(c[k]);
            }
        }
        b
    }

    /// False only when the boxes are disjoint by a clear float margin.
    pub fn may_overlap(&self, o: &Bounds2) -> bool {
        (0..2).all(|k| {
            let slack = 1e-9 * (1f64.max(self.max[k].abs()).max(o.max[k].abs()));
            self.min[k] < o.max[k] + slack && o.min[k] < self.max[k] + slack
        })
    }
}

/// Parameter of the projection of `p` onto the line `s0 + t (s1 - s0)`.
fn param_along(s0: &Vec2, d: &Vec2, dd: &Scalar, p: &Vec2) -> Scalar {
    (p - s0).dot(d) / dd
}

fn sort_unique(ts: &mut Vec<Scalar>, mode: &NumericMode) {
    ts.sort_by(|a, b| mode.cmp(a, b));
    ts.dedup_by(|a, b| mode.eq(a, b));
}

/// Parameters in (0, 1) where the segment meets the polygon boundary in a
/// way that may change its location (crossings, vertices, collinear ends).
fn boundary_events(s0: &Vec2, s1: &Vec2, poly: &SimplePolygon, mode: &NumericMode) -> Vec<Scalar> {
    let d = s1 - s0;
    let dd = d.norm2();
    let (zero, one) = (Scalar::zero(), Scalar::one());
    let mut ts = Vec::new();
    for (a, b) in poly.edges() {
        let oa = orient(s0, s1, a, mode);
        let ob = orient(s0, s1, b, mode);
        for (p, o) in [(a, oa), (b, ob)] {
            if o == Ordering::Equal {
                ts.push(param_along(s0, &d, &dd, p));
            }
        }
        if oa != Ordering::Equal && ob != Ordering::Equal && oa != ob {
            let e = b - a;
            let denom = d.cross(&e);
            if !mode.is_zero(&denom) {
                ts.push((a - s0).cross(&e) / denom);
            }
        }
    }
    ts.retain(|t| mode.lt(&zero, t) && mode.lt(t, &one));
    sort_unique(&mut ts, mode);
    ts
}

/// True when the closed segment lies in the closed polygon.
pub fn segment_inside(s0: &Vec2, s1: &Vec2, poly: &SimplePolygon, mode: &NumericMode) -> bool {
    if poly.locate(s0, mode) == Location::Outside || poly.locate(s1, mode) == Location::Outside {
        return false;
    }
    let d = s1 - s0;
    let mut ts = boundary_events(s0, s1, poly, mode);
    ts.insert(0, Scalar::zero());
    ts.push(Scalar::one());
    let half = Scalar::ratio(1, 2);
    ts.windows(2).all(|w| {
        let mid = (&w[0] + &w[1]) * &half;
        poly.locate(&(s0 + &d.scale(&mid)), mode) != Location::Outside
    })
}

/// Sorted, merged sub-intervals of `[0, 1]` along `s0 -> s1` that lie on the
/// polygon boundary with positive length.
pub fn boundary_intervals(s0: &Vec2, s1: &Vec2, poly: &SimplePolygon, mode: &NumericMode) -> Vec<(Scalar, Scalar)> {
    let d = s1 - s0;
    let dd = d.norm2();
    let (zero, one) = (Scalar::zero(), Scalar::one());
    let mut spans: Vec<(Scalar, Scalar)> = Vec::new();
    for (a, b) in poly.edges() {
        if orient(s0, s1, a, mode) != Ordering::Equal || orient(s0, s1, b, mode) != Ordering::Equal {
            continue;
        }
        let (ta, tb) = (param_along(s0, &d, &dd, a), param_along(s0, &d, &dd, b));
        let (lo, hi) = if mode.le(&ta, &tb) { (ta, tb) } else { (tb, ta) };
        let lo = Scalar::max_of(mode, &lo, &zero).clone();
        let hi = Scalar::min_of(mode, &hi, &one).clone();
        if mode.lt(&lo, &hi) {
            spans.push((lo, hi));
        }
    }
    spans.sort_by(|a, b| mode.cmp(&a.0, &b.0));
    let mut merged: Vec<(Scalar, Scalar)> = Vec::new();
    for (lo, hi) in spans {
        match merged.last_mut() {
            Some(last) if mode.le(&lo, &last.1) => {
                if mode.lt(&last.1, &hi) {
                    last.1 = hi;
                }
            }
            _ => merged.push((lo, hi)),
        }
    }
    merged
}

/// Classifies a segment lying in the closed polygon by how much of it runs
/// along the boundary. Touches of measure zero are ignored.
pub fn classify_segment(s0: &Vec2, s1: &Vec2, poly: &SimplePolygon, mode: &NumericMode) -> Result<BoundaryOverlap, Error> {
    if !segment_inside(s0, s1, poly, mode) {
        return Err(Error::FacetOutsideShape);
    }
    let covered: Scalar = boundary_intervals(s0, s1, poly, mode).into_iter().map(|(lo, hi)| hi - lo).sum();
    Ok(if mode.is_zero(&covered) {
        BoundaryOverlap::Interior
    } else if mode.eq(&covered, &Scalar::one()) {
        BoundaryOverlap::OnBoundary
    } else {
        BoundaryOverlap::Mixed
    })
}

/// Closed polygon containment of a simple polygon.
pub fn polygon_inside(inner: &SimplePolygon, outer: &SimplePolygon, mode: &NumericMode) -> bool {
    inner.edges().all(|(a, b)| segment_inside(a, b, outer, mode))
}

fn projection_range(points: &[Vec2], axis: &Vec2, mode: &NumericMode) -> (Scalar, Scalar) {
    let mut lo = points[0].dot(axis);
    let mut hi = lo.clone();
    for p in &points[1..] {
        let v = p.dot(axis);
        if mode.lt(&v, &lo) {
            lo = v;
        } else if mode.lt(&hi, &v) {
            hi = v;
        }
    }
    (lo, hi)
}

/// Separating-axis test for two convex polygons; touching returns false.
pub fn convex_polygons_overlap(a: &SimplePolygon, b: &SimplePolygon, mode: &NumericMode) -> bool {
    if !a.bounds().may_overlap(&b.bounds()) {
        return false;
    }
    for poly in [a, b] {
        for (p, q) in poly.edges() {
            let axis = (q - p).perp();
            let (alo, ahi) = projection_range(a.vertices(), &axis, mode);
            let (blo, bhi) = projection_range(b.vertices(), &axis, mode);
            if mode.le(&ahi, &blo) || mode.le(&bhi, &alo) {
                return false;
            }
        }
    }
    true
}

/// Sutherland–Hodgman clip of any simple ring by a convex counter-clockwise
/// clipper. The signed area of the result is the area of the intersection.
pub fn clip_to_convex(subject: &[Vec2], clipper: &SimplePolygon, mode: &NumericMode) -> Vec<Vec2> {
    let mut out: Vec<Vec2> = subject.to_vec();
    for (c0, c1) in clipper.edges() {
        if out.is_empty() {
            break;
        }
        let e = c1 - c0;
        let side = |p: &Vec2| e.cross(&(p - c0));
        let input = core::mem::take(&mut out);
        let n = input.len();
        for i in 0..n {
            let (p, q) = (&input[i], &input[(i + 1) % n]);
            let (dp, dq) = (side(p), side(q));
            let p_in = mode.sign(&dp) != Ordering::Less;
            let q_in = mode.sign(&dq) != Ordering::Less;
            if p_in {
                out.push(p.clone());
            }
            if p_in != q_in && !mode.is_zero(&dp) && !mode.is_zero(&dq) {
                let t = &dp / &(&dp - &dq);
                out.push(p + &(q - p).scale(&t));
            }
        }
    }
    out
}

/// Area of `subject ∩ clipper` for a simple subject and convex clipper.
pub fn intersection_area(subject: &SimplePolygon, clipper: &SimplePolygon, mode: &NumericMode) -> Scalar {
    let ring = clip_to_convex(subject.vertices(), clipper, mode);
    if ring.len() < 3 {
        return Scalar::zero();
    }
    signed_area(&ring)
}

/// Interior overlap for polygons where at least one is convex; `None` when
/// both are non-convex.
pub fn polygons_overlap(a: &SimplePolygon, b: &SimplePolygon, mode: &NumericMode) -> Option<bool> {
    if !a.bounds().may_overlap(&b.bounds()) {
        return Some(false);
    }
    match (a.is_convex(mode), b.is_convex(mode)) {
        (true, true) => Some(convex_polygons_overlap(a, b, mode)),
        (true, false) => Some(mode.is_positive(&intersection_area(b, a, mode))),
        (false, true) => Some(mode.is_positive(&intersection_area(a, b, mode))),
        (false, false) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    const EXACT: NumericMode = NumericMode::Exact;

    fn poly(pts: &[(i64, i64)]) -> SimplePolygon {
        SimplePolygon::new(pts.iter().map(|&(x, y)| Vec2::ints(x, y)).collect(), &EXACT).unwrap()
    }

    fn q(p: i64, d: i64) -> Scalar {
        Scalar::ratio(p, d)
    }

    fn unit_square() -> SimplePolygon {
        poly(&[(0, 0), (1, 0), (1, 1), (0, 1)])
    }

    #[test]
    fn areas() {
        assert_eq!(unit_square().area(), Scalar::one());
        assert_eq!(poly(&[(0, 0), (1, 0), (0, 1)]).area(), q(1, 2));
    }

    #[test]
    fn hexagon_area_matches_trig_oracle() {
        let mode = NumericMode::approx();
        let pts: Vec<Vec2> = (0..6)
            .map(|i| {
                let a = core::f64::consts::PI / 3.0 * i as f64;
                Vec2::new(Scalar::float(libm::cos(a)), Scalar::float(libm::sin(a)))
            })
            .collect();
        let hex = SimplePolygon::new(pts, &mode).unwrap();
        // six equilateral triangles of side 1
        let oracle = 6.0 * 0.5 * libm::sin(core::f64::consts::PI / 3.0);
        assert!((hex.area().to_f64() - oracle).abs() < 1e-12);
        assert!((oracle - 2.598076211353316).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_polygons() {
        let bowtie = vec![Vec2::ints(0, 0), Vec2::ints(1, 1), Vec2::ints(1, 0), Vec2::ints(0, 1)];
        assert!(SimplePolygon::new(bowtie, &EXACT).is_err());
        let cw = vec![Vec2::ints(0, 0), Vec2::ints(0, 1), Vec2::ints(1, 0)];
        assert!(SimplePolygon::new(cw, &EXACT).is_err());
        let dup = vec![Vec2::ints(0, 0), Vec2::ints(0, 0), Vec2::ints(1, 0), Vec2::ints(0, 1)];
        assert!(SimplePolygon::new(dup, &EXACT).is_err());
        let spike = vec![Vec2::ints(0, 0), Vec2::ints(2, 0), Vec2::ints(1, 0), Vec2::ints(0, 1)];
        assert!(SimplePolygon::new(spike, &EXACT).is_err());
    }

    #[test]
    fn collinear_vertices_are_kept() {
        let p = poly(&[(0, 0), (1, 0), (2, 0), (2, 2), (0, 2)]);
        assert_eq!(p.len(), 5);
        assert!(p.is_convex(&EXACT));
    }

    #[test]
    fn locate_points() {
        let sq = unit_square();
        assert_eq!(sq.locate(&Vec2::new(q(1, 2), q(1, 2)), &EXACT), Location::Inside);
        assert_eq!(sq.locate(&Vec2::new(q(1, 2), q(0, 1)), &EXACT), Location::OnBoundary);
        assert_eq!(sq.locate(&Vec2::ints(1, 1), &EXACT), Location::OnBoundary);
        assert_eq!(sq.locate(&Vec2::ints(2, 0), &EXACT), Location::Outside);
        let l = poly(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]);
        assert_eq!(l.locate(&Vec2::new(q(3, 2), q(3, 2)), &EXACT), Location::Outside);
        assert_eq!(l.locate(&Vec2::new(q(1, 2), q(3, 2)), &EXACT), Location::Inside);
    }

    #[test]
    fn classify_segments_against_square() {
        let sq = unit_square();
        assert_eq!(
            classify_segment(&Vec2::ints(0, 0), &Vec2::ints(1, 0), &sq, &EXACT),
            Ok(BoundaryOverlap::OnBoundary)
        );
        let (a, b) = (Vec2::new(q(1, 4), q(1, 2)), Vec2::new(q(3, 4), q(1, 2)));
        assert_eq!(classify_segment(&a, &b, &sq, &EXACT), Ok(BoundaryOverlap::Interior));
        // diagonal touches the boundary only at its ends
        assert_eq!(
            classify_segment(&Vec2::ints(0, 0), &Vec2::ints(1, 1), &sq, &EXACT),
            Ok(BoundaryOverlap::Interior)
        );
        assert_eq!(
            classify_segment(&Vec2::ints(0, 0), &Vec2::ints(2, 0), &sq, &EXACT),
            Err(Error::FacetOutsideShape)
        );
    }

    #[test]
    fn mixed_segment_on_l_shape() {
        // runs along the edge y = 1 from x = 1 to 2, then through the interior
        let l = poly(&[(0, 0), (3, 0), (3, 1), (1, 1), (1, 2), (0, 2)]);
        let r = classify_segment(&Vec2::new(q(1, 2), q(1, 1)), &Vec2::ints(2, 1), &l, &EXACT);
        assert_eq!(r, Ok(BoundaryOverlap::Mixed));
        let iv = boundary_intervals(&Vec2::new(q(1, 2), q(1, 1)), &Vec2::ints(2, 1), &l, &EXACT);
        assert_eq!(iv, vec![(q(1, 3), q(1, 1))]);
    }

    #[test]
    fn segment_leaving_through_reflex_notch() {
        let l = poly(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]);
        assert!(!segment_inside(&Vec2::new(q(3, 2), q(1, 2)), &Vec2::new(q(1, 2), q(5, 2)), &l, &EXACT));
        assert!(segment_inside(&Vec2::ints(2, 0), &Vec2::ints(0, 2), &l, &EXACT));
    }

    #[test]
    fn convex_overlap() {
        let sq = unit_square();
        assert!(convex_polygons_overlap(&sq, &sq, &EXACT));
        let shifted = sq.transformed(|p| p + &Vec2::ints(2, 0));
        assert!(!convex_polygons_overlap(&sq, &shifted, &EXACT));
        let touching = sq.transformed(|p| p + &Vec2::ints(1, 0));
        assert!(!convex_polygons_overlap(&sq, &touching, &EXACT));
    }

    #[test]
    fn clipping_area_with_nonconvex_subject() {
        let l = poly(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]);
        let window = poly(&[(1, 0), (3, 0), (3, 3), (1, 3)]);
        assert_eq!(intersection_area(&l, &window, &EXACT), Scalar::one());
        let far = poly(&[(1, 1), (3, 1), (3, 3), (1, 3)]);
        assert_eq!(intersection_area(&l, &far, &EXACT), Scalar::zero());
        assert_eq!(polygons_overlap(&l, &far, &EXACT), Some(false));
    }
}
