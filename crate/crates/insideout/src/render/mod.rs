//! Pictures of dissections: SVG for polygons, OFF meshes for solids.

pub mod off;
pub mod svg;

pub use off::emit_off;
pub use svg::emit_svg;

use crate::IoError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Layout {
    /// Original footprints and moved pieces side by side.
    #[default]
    BeforeAfter,
    /// Both configurations drawn in one panel.
    Overlay,
}

/// Which configuration a single-mesh output shows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Stage {
    #[default]
    Before,
    After,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RenderOptions {
    pub layout: Layout,
    pub stage: Stage,
    /// Piece centroids are pushed away from the shape's centroid by this
    /// factor; 1 draws the pieces in place.
    pub explode: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { layout: Layout::default(), stage: Stage::default(), explode: 1.0 }
    }
}

impl RenderOptions {
    pub fn validate(&self) -> Result<(), IoError> {
        if self.explode.is_finite() && self.explode >= 1.0 {
            Ok(())
        } else {
            Err(IoError::Options(format!("explode factor must be at least 1, got {}", self.explode)))
        }
    }
}

/// Offset that moves a piece with centroid `c` radially away from `center`.
fn explode_offset<const N: usize>(c: [f64; N], center: [f64; N], f: f64) -> [f64; N] {
    std::array::from_fn(|i| (f - 1.0) * (c[i] - center[i]))
}

/// Deterministic fill colour for piece `id`: golden-angle hue steps.
fn piece_colour(id: usize) -> String {
    let hue = (id as f64 * 137.507_764_050_037_85) % 360.0;
    format!("hsl({hue:.1},65%,70%)")
}
