//! Cells of the tetrahedral-octahedral honeycomb and their subdivision.
//!
//! A regular tetrahedron splits into four corner tetrahedra and a central
//! octahedron on its edge midpoints. A regular octahedron splits into six
//! octahedra (one at each vertex, spanned by the vertex, its four edge
//! midpoints and the centre) and eight tetrahedra (one per face, spanned by
//! the face's edge midpoints and the centre). Both rules are affine, so they
//! work in any frame.
//!
//! The canonical cells live on the face-centred cubic lattice generated by
//! `(1,1,0)`, `(1,0,1)`, `(0,1,1)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::kernel::{CellComplex, ConvexPolyhedron, Mat3, Motion3, NumericMode, Scalar, Vec3};
use crate::model::{solid_facet_flags, FacetOrigin};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CellKind {
    Tet,
    Oct,
}

impl CellKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CellKind::Tet => "tet",
            CellKind::Oct => "oct",
        }
    }

    pub fn face_count(self) -> usize {
        match self {
            CellKind::Tet => 4,
            CellKind::Oct => 8,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    pub kind: CellKind,
    pub body: ConvexPolyhedron,
    pub depth: u32,
}

pub fn lattice_basis() -> [Vec3; 3] {
    [Vec3::ints(1, 1, 0), Vec3::ints(1, 0, 1), Vec3::ints(0, 1, 1)]
}

/// `conv{0, v1, v2, v3}`, volume 1/3.
pub fn canonical_tet() -> Cell {
    let [v1, v2, v3] = lattice_basis();
    let body = ConvexPolyhedron::tetrahedron([Vec3::zero(), v1, v2, v3], &NumericMode::Exact).expect("canonical tetrahedron");
    Cell { kind: CellKind::Tet, body, depth: 0 }
}

/// `conv{v1, v2, v3, v1+v2, v1+v3, v2+v3}`, volume 4/3, centre (1,1,1).
pub fn canonical_oct() -> Cell {
    let [v1, v2, v3] = lattice_basis();
    let body = ConvexPolyhedron::octahedron(
        [v1.clone(), v2.clone(), v3.clone(), &v1 + &v2, &v1 + &v3, &v2 + &v3],
        &NumericMode::Exact,
    )
    .expect("canonical octahedron");
    Cell { kind: CellKind::Oct, body, depth: 0 }
}

pub fn subdivide_tet(cell: &Cell, mode: &NumericMode) -> Result<Vec<Cell>, Error> {
    if cell.kind != CellKind::Tet {
        return Err(Error::WrongKind);
    }
    let v = cell.body.vertices();
    let mid = |i: usize, j: usize| v[i].midpoint(&v[j]);
    let depth = cell.depth + 1;
    let mut out = Vec::with_capacity(5);
    for i in 0..4 {
        let others: Vec<usize> = (0..4).filter(|&j| j != i).collect();
        let body = ConvexPolyhedron::tetrahedron(
            [v[i].clone(), mid(i, others[0]), mid(i, others[1]), mid(i, others[2])],
            mode,
        )?;
        out.push(Cell { kind: CellKind::Tet, body, depth });
    }
    let body = ConvexPolyhedron::octahedron([mid(0, 1), mid(0, 2), mid(0, 3), mid(1, 2), mid(1, 3), mid(2, 3)], mode)?;
    out.push(Cell { kind: CellKind::Oct, body, depth });
    Ok(out)
}

pub fn subdivide_oct(cell: &Cell, mode: &NumericMode) -> Result<Vec<Cell>, Error> {
    if cell.kind != CellKind::Oct {
        return Err(Error::WrongKind);
    }
    let v = cell.body.vertices();
    let centre = cell.body.centroid();
    let depth = cell.depth + 1;
    let edges = cell.body.edges();
    let mut out = Vec::with_capacity(14);
    for a in 0..v.len() {
        let mut corner = alloc::vec![v[a].clone()];
        corner.extend(
            edges
                .iter()
                .filter(|&&(i, j)| i == a || j == a)
                .map(|&(i, j)| v[i].midpoint(&v[j])),
        );
        corner.push(centre.clone());
        let pts: [Vec3; 6] = corner.try_into().map_err(|_| Error::CellNotRegular(a))?;
        out.push(Cell { kind: CellKind::Oct, body: ConvexPolyhedron::octahedron(pts, mode)?, depth });
    }
    for face in cell.body.faces() {
        let (a, b, c) = (&v[face[0]], &v[face[1]], &v[face[2]]);
        let body = ConvexPolyhedron::tetrahedron([a.midpoint(b), b.midpoint(c), c.midpoint(a), centre.clone()], mode)?;
        out.push(Cell { kind: CellKind::Tet, body, depth });
    }
    Ok(out)
}

/// Applies the kind-specific subdivision `depth` times.
pub fn subdivide(cells: &[Cell], depth: u32, mode: &NumericMode) -> Result<Vec<Cell>, Error> {
    let mut current = cells.to_vec();
    for _ in 0..depth {
        let mut next = Vec::with_capacity(current.len() * 14);
        for cell in &current {
            next.extend(match cell.kind {
                CellKind::Tet => subdivide_tet(cell, mode)?,
                CellKind::Oct => subdivide_oct(cell, mode)?,
            });
        }
        current = next;
    }
    Ok(current)
}

/// Number of faces of each cell lying on the container's boundary.
pub fn boundary_faces(cells: &[Cell], container: &CellComplex, mode: &NumericMode) -> Result<Vec<Vec<FacetOrigin>>, Error> {
    cells.iter().map(|c| solid_facet_flags(c.body.raw(), container, mode)).collect()
}

/// Histogram of `(kind, boundary face count)` over cells that tile the
/// container.
pub fn boundary_census(
    cells: &[Cell],
    container: &CellComplex,
    mode: &NumericMode,
) -> Result<BTreeMap<(CellKind, usize), usize>, Error> {
    let total: Scalar = cells.iter().map(|c| c.body.volume()).sum();
    if !mode.eq(&total, &container.volume()) {
        return Err(Error::CellsDoNotTile("volumes differ".into()));
    }
    for i in 0..cells.len() {
        for j in i + 1..cells.len() {
            if crate::kernel::polyhedron::convex_polyhedra_overlap(&cells[i].body, &cells[j].body, mode) {
                return Err(Error::CellsDoNotTile(alloc::format!("cells {i} and {j} overlap")));
            }
        }
    }
    let mut census = BTreeMap::new();
    for (cell, flags) in cells.iter().zip(boundary_faces(cells, container, mode)?) {
        let bf = flags.iter().filter(|f| **f == FacetOrigin::Boundary).count();
        *census.entry((cell.kind, bf)).or_insert(0) += 1;
    }
    Ok(census)
}

/// A map `x -> L x + offset` with `L` a positive multiple of a rotation,
/// taking a canonical cell onto a cell in user coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Similarity {
    pub linear: Mat3,
    pub offset: Vec3,
}

impl Similarity {
    pub fn identity() -> Self {
        Similarity { linear: Mat3::identity(), offset: Vec3::zero() }
    }

    pub fn apply(&self, x: &Vec3) -> Vec3 {
        &self.linear.apply(x) + &self.offset
    }

    /// `S ∘ g ∘ S⁻¹`, again a rotation plus translation.
    pub fn conjugate(&self, g: &Motion3, inverse: &Mat3) -> Motion3 {
        let rotation = self.linear.mul(&g.rotation).mul(inverse);
        let translation = &(&self.linear.apply(&g.translation) + &self.offset) - &rotation.apply(&self.offset);
        Motion3::new(rotation, translation)
    }

    fn is_conformal(&self, mode: &NumericMode) -> bool {
        let gram = self.linear.transpose().mul(&self.linear);
        let k = gram.0[0][0].clone();
        let scaled = Mat3(core::array::from_fn(|i| core::array::from_fn(|j| if i == j { k.clone() } else { Scalar::zero() })));
        mode.is_positive(&k) && gram.approx_eq(&scaled, mode) && mode.is_positive(&self.linear.det())
    }
}

fn all_equal(values: &[Scalar], mode: &NumericMode) -> bool {
    values.iter().all(|x| mode.eq(x, &values[0])) && mode.is_positive(&values[0])
}

/// Similarity taking the canonical tetrahedron onto `t`.
pub fn tetrahedron_frame(t: &[Vec3; 4], mode: &NumericMode) -> Result<Similarity, Error> {
    let mut edges = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            edges.push((&t[i] - &t[j]).norm2());
        }
    }
    if !all_equal(&edges, mode) {
        return Err(Error::NotRegular);
    }
    let [v1, v2, v3] = lattice_basis();
    let v_inv = Mat3::from_columns(&v1, &v2, &v3).inverse(&NumericMode::Exact).expect("lattice basis");
    let frame = |a: &Vec3, b: &Vec3, c: &Vec3| Similarity {
        linear: Mat3::from_columns(&(a - &t[0]), &(b - &t[0]), &(c - &t[0])).mul(&v_inv),
        offset: t[0].clone(),
    };
    let mut s = frame(&t[1], &t[2], &t[3]);
    if !mode.is_positive(&s.linear.det()) {
        s = frame(&t[2], &t[1], &t[3]);
    }
    if !s.is_conformal(mode) {
        return Err(Error::NotRegular);
    }
    Ok(s)
}

/// Similarity taking the canonical octahedron onto `o`.
pub fn octahedron_frame(o: &[Vec3; 6], mode: &NumericMode) -> Result<Similarity, Error> {
    let body = ConvexPolyhedron::octahedron(o.clone(), mode).map_err(|_| Error::NotRegular)?;
    let edges: Vec<Scalar> = body.edges().iter().map(|&(i, j)| (&o[i] - &o[j]).norm2()).collect();
    if edges.len() != 12 || !all_equal(&edges, mode) {
        return Err(Error::NotRegular);
    }
    let centre = body.centroid();
    // Vertex pairs not joined by an edge are the diagonals.
    let mut diagonals = Vec::new();
    for i in 0..6 {
        for j in i + 1..6 {
            if body.edges().binary_search(&(i, j)).is_err() {
                diagonals.push((&o[j] - &o[i]).scale(&Scalar::ratio(1, 2)));
            }
        }
    }
    if diagonals.len() != 3 {
        return Err(Error::NotRegular);
    }
    let mut linear = Mat3::from_columns(&diagonals[0], &diagonals[1], &diagonals[2]);
    if !mode.is_positive(&linear.det()) {
        linear = Mat3::from_columns(&diagonals[0], &diagonals[1], &-&diagonals[2]);
    }
    let offset = &centre - &linear.apply(&Vec3::ints(1, 1, 1));
    let s = Similarity { linear, offset };
    if !s.is_conformal(mode) {
        return Err(Error::NotRegular);
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXACT: NumericMode = NumericMode::Exact;

    #[test]
    fn first_corner_child() {
        let kids = subdivide_tet(&canonical_tet(), &EXACT).unwrap();
        let h = Scalar::ratio(1, 2);
        let z = Scalar::zero();
        let expected = [
            Vec3::zero(),
            Vec3::new(h.clone(), h.clone(), z.clone()),
            Vec3::new(h.clone(), z.clone(), h.clone()),
            Vec3::new(z, h.clone(), h),
        ];
        assert_eq!(kids[0].body.vertices(), &expected);
        for kid in &kids {
            for (i, j) in kid.body.edges() {
                assert_eq!((&kid.body.vertices()[i] - &kid.body.vertices()[j]).norm2(), Scalar::ratio(1, 2));
            }
        }
    }

    #[test]
    fn volumes_add_up() {
        let kids = subdivide_tet(&canonical_tet(), &EXACT).unwrap();
        assert_eq!(kids.iter().map(|c| c.body.volume()).sum::<Scalar>(), Scalar::ratio(1, 3));
        let kids = subdivide_oct(&canonical_oct(), &EXACT).unwrap();
        assert_eq!(kids.iter().filter(|c| c.kind == CellKind::Tet).count(), 8);
        assert_eq!(kids.iter().map(|c| c.body.volume()).sum::<Scalar>(), Scalar::ratio(4, 3));
    }

    #[test]
    fn child_octs_hold_one_parent_vertex_each() {
        let parent = canonical_oct();
        let kids = subdivide_oct(&parent, &EXACT).unwrap();
        for kid in kids.iter().filter(|c| c.kind == CellKind::Oct) {
            let held = parent.body.vertices().iter().filter(|p| kid.body.vertices().contains(p)).count();
            assert_eq!(held, 1);
        }
    }

    #[test]
    fn depth_two_counts() {
        let count = |cells: &[Cell], k| cells.iter().filter(|c| c.kind == k).count();
        let t = subdivide(&[canonical_tet()], 2, &EXACT).unwrap();
        assert_eq!((count(&t, CellKind::Tet), count(&t, CellKind::Oct)), (24, 10));
        let o = subdivide(&[canonical_oct()], 2, &EXACT).unwrap();
        assert_eq!((count(&o, CellKind::Tet), count(&o, CellKind::Oct)), (80, 44));
    }

    #[test]
    fn depth_one_census() {
        let container = CellComplex::single(canonical_tet().body);
        let kids = subdivide(&[canonical_tet()], 1, &EXACT).unwrap();
        let census = boundary_census(&kids, &container, &EXACT).unwrap();
        assert_eq!(census.get(&(CellKind::Tet, 3)), Some(&4));
        assert_eq!(census.get(&(CellKind::Oct, 4)), Some(&1));
    }

    #[test]
    fn frames_reproduce_cells() {
        let tet = canonical_tet();
        let s = tetrahedron_frame(&tet.body.vertices().to_vec().try_into().unwrap(), &EXACT).unwrap();
        assert_eq!(s, Similarity::identity());
        let oct = canonical_oct();
        let o: [Vec3; 6] = oct.body.vertices().to_vec().try_into().unwrap();
        let s = octahedron_frame(&o, &EXACT).unwrap();
        for v in oct.body.vertices() {
            assert!(o.contains(&s.apply(v)));
        }
        let skew = [Vec3::zero(), Vec3::ints(1, 0, 0), Vec3::ints(0, 1, 0), Vec3::ints(0, 0, 1)];
        assert_eq!(tetrahedron_frame(&skew, &EXACT), Err(Error::NotRegular));
    }
}
