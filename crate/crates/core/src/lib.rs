//! Inside-out dissections: constructions for polygons and for solids built
//! from regular tetrahedra and octahedra, plus an exact verifier.
//!
//! A dissection is inside-out when its pieces, moved by rotations and
//! translations only, form a congruent copy whose boundary is made entirely
//! of former internal cuts.

#![no_std]

extern crate alloc;

pub mod dissect2d;
pub mod dissect3d;
pub mod kernel;
pub mod model;
pub mod verify;

mod error;

pub use error::Error;
