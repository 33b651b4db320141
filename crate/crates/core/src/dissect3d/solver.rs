//! Finding where each honeycomb cell goes.
//!
//! Slots are the cells' own footprints. A cell may move to a slot of the
//! same shape by one of the 24 rotations of the cube followed by a
//! translation, and the move is allowed only if no boundary face of the cell
//! lands on a boundary face of the slot. Faces of honeycomb cells come in
//! eight directions, so "lands on" is a question about face normals: each
//! rotation permutes the directions, and each cell carries a bitmask of the
//! directions of its boundary faces.
//!
//! Choosing one move per cell so every slot is filled once is a bipartite
//! perfect matching, found with augmenting paths in a fixed order.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::Signed;

use super::honeycomb::Cell;
use crate::kernel::{CellComplex, Mat3, Motion3, NumericMode, Vec3};
use crate::model::FacetOrigin;
use crate::Error;

/// The 24 proper signed permutation matrices, identity first.
pub fn cube_rotations() -> Vec<Mat3> {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::with_capacity(24);
    for perm in PERMS {
        for signs in 0..8u8 {
            let mut m = [[0i64; 3]; 3];
            for (row, &col) in perm.iter().enumerate() {
                m[row][col] = if signs >> (2 - row) & 1 == 1 { -1 } else { 1 };
            }
            let r = Mat3::from_ints(m);
            if r.det().to_f64() > 0.0 {
                out.push(r);
            }
        }
    }
    out
}

type Key = [BigRational; 3];

fn key(v: &Vec3) -> Result<Key, Error> {
    let c = |s: &crate::kernel::Scalar| s.as_rational().cloned().ok_or(Error::NotExactMode);
    Ok([c(&v.x)?, c(&v.y)?, c(&v.z)?])
}

/// Direction of `n` scaled so its largest coordinate has absolute value 1.
fn direction_key(n: &Vec3) -> Result<Key, Error> {
    let k = key(n)?;
    let m = k.iter().map(|x| x.abs()).max().ok_or(Error::ZeroVector)?;
    if m == BigRational::from_integer(0.into()) {
        return Err(Error::ZeroVector);
    }
    Ok(k.map(|x| x / &m))
}

/// Ids for the face directions that occur.
#[derive(Default)]
struct DirectionTable {
    ids: BTreeMap<Key, usize>,
    keys: Vec<Key>,
}

impl DirectionTable {
    fn id(&mut self, k: Key) -> Result<usize, Error> {
        if let Some(&i) = self.ids.get(&k) {
            return Ok(i);
        }
        if self.keys.len() == 64 {
            return Err(Error::CellsDoNotTile("too many face directions".into()));
        }
        self.ids.insert(k.clone(), self.keys.len());
        self.keys.push(k);
        Ok(self.keys.len() - 1)
    }
}

fn apply_key(r: &Mat3, k: &Key) -> Result<Key, Error> {
    let v = Vec3::from_coords(k.clone().map(crate::kernel::Scalar::Exact));
    key(&r.apply(&v))
}

/// Cell vertices relative to the centroid, sorted.
fn shape_key(cell: &Cell) -> Result<Vec<Key>, Error> {
    let c = cell.body.centroid();
    let mut ks = cell.body.vertices().iter().map(|v| key(&(v - &c))).collect::<Result<Vec<_>, _>>()?;
    ks.sort();
    Ok(ks)
}

/// One cell's destination.
#[derive(Clone, Debug, PartialEq)]
pub struct Placement {
    pub slot: usize,
    /// Index into [`cube_rotations`].
    pub rotation: usize,
    pub motion: Motion3,
}

/// Assigns every cell a slot and a motion so that no boundary face (per
/// `flags`) stays on the boundary. Cells must be in the canonical lattice
/// frame with exact coordinates.
pub fn solve_rearrangement(
    cells: &[Cell],
    flags: &[Vec<FacetOrigin>],
    mode: &NumericMode,
) -> Result<Vec<Placement>, Error> {
    if !mode.is_exact() {
        return Err(Error::NotExactMode);
    }
    let group = cube_rotations();
    let mut table = DirectionTable::default();
    let mut masks = Vec::with_capacity(cells.len());
    for (cell, f) in cells.iter().zip(flags) {
        let mut mask = 0u64;
        for (i, origin) in f.iter().enumerate() {
            let id = table.id(direction_key(&cell.body.plane(i).0)?)?;
            if *origin == FacetOrigin::Boundary {
                mask |= 1 << id;
            }
        }
        masks.push(mask);
    }
    let perms: Vec<Vec<Option<usize>>> = group
        .iter()
        .map(|r| {
            table
                .keys
                .iter()
                .map(|k| apply_key(r, k).ok().and_then(|img| table.ids.get(&img).copied()))
                .collect()
        })
        .collect();
    let permuted = |r: usize, mask: u64| -> Option<u64> {
        let mut out = 0u64;
        for (d, img) in perms[r].iter().enumerate() {
            if mask >> d & 1 == 1 {
                out |= 1 << (*img)?;
            }
        }
        Some(out)
    };

    // Shape classes and the rotations between them.
    let shapes: Vec<Vec<Key>> = cells.iter().map(shape_key).collect::<Result<_, _>>()?;
    let mut classes: Vec<&Vec<Key>> = Vec::new();
    let class_of: Vec<usize> = shapes
        .iter()
        .map(|s| match classes.iter().position(|c| *c == s) {
            Some(i) => i,
            None => {
                classes.push(s);
                classes.len() - 1
            }
        })
        .collect();
    let mut between: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (a, sa) in classes.iter().enumerate() {
        for (b, sb) in classes.iter().enumerate() {
            let mut rs = Vec::new();
            for (ri, r) in group.iter().enumerate() {
                let mut img = sa.iter().map(|k| apply_key(r, k)).collect::<Result<Vec<_>, _>>()?;
                img.sort();
                if img == **sb {
                    rs.push(ri);
                }
            }
            between.insert((a, b), rs);
        }
    }

    // Options: for each cell, every slot with the first admissible rotation.
    let options: Vec<Vec<(usize, usize)>> = (0..cells.len())
        .map(|c| {
            (0..cells.len())
                .filter_map(|s| {
                    between[&(class_of[c], class_of[s])]
                        .iter()
                        .find(|&&r| permuted(r, masks[c]).is_some_and(|m| m & masks[s] == 0))
                        .map(|&r| (s, r))
                })
                .collect()
        })
        .collect();

    let mut slot_owner: Vec<Option<usize>> = alloc::vec![None; cells.len()];
    let mut choice: Vec<Option<(usize, usize)>> = alloc::vec![None; cells.len()];
    for c in 0..cells.len() {
        let mut seen = alloc::vec![false; cells.len()];
        if !augment(c, &options, &mut seen, &mut slot_owner, &mut choice) {
            return Err(Error::NoPlacementFound);
        }
    }

    choice
        .into_iter()
        .enumerate()
        .map(|(c, pick)| {
            let (slot, ri) = pick.ok_or(Error::NoPlacementFound)?;
            let r = group[ri].clone();
            let t = &cells[slot].body.centroid() - &r.apply(&cells[c].body.centroid());
            Ok(Placement { slot, rotation: ri, motion: Motion3::new(r, t) })
        })
        .collect()
}

fn augment(
    c: usize,
    options: &[Vec<(usize, usize)>],
    seen: &mut [bool],
    slot_owner: &mut [Option<usize>],
    choice: &mut [Option<(usize, usize)>],
) -> bool {
    for &(s, r) in &options[c] {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let free = match slot_owner[s] {
            None => true,
            Some(other) => augment(other, options, seen, slot_owner, choice),
        };
        if free {
            slot_owner[s] = Some(c);
            choice[c] = Some((s, r));
            return true;
        }
    }
    false
}

/// Census flags relative to `container` followed by the placement.
pub fn place_cells(cells: &[Cell], container: &CellComplex, mode: &NumericMode) -> Result<(Vec<Vec<FacetOrigin>>, Vec<Placement>), Error> {
    let flags = super::honeycomb::boundary_faces(cells, container, mode)?;
    let placement = solve_rearrangement(cells, &flags, mode)?;
    Ok((flags, placement))
}
