//! Planar constructions.

pub mod collar;
pub mod regular;

pub use collar::{collar_pair, dissect_generic, dissect_generic_from, CollarPair};
pub use regular::{dissect_chain_polygon, dissect_regular, plan_chains, regular_vertices, ChainPiece};
