use std::fmt::Write;

use insideout_core::kernel::Vec2;
use insideout_core::model::{Dissection, FacetOrigin, PlanarDissection};

use super::{explode_offset, piece_colour, Layout, RenderOptions};
use crate::IoError;

const STYLE: &str = ".piece polygon{stroke:none;fill-opacity:0.85}\
.after polygon{fill-opacity:0.6}\
line.boundary{stroke:#c0392b;stroke-width:2.5}\
line.cut{stroke:#2c3e50;stroke-width:1;stroke-dasharray:4 2}\
.outline{fill:none;stroke:#7f8c8d;stroke-width:1}";

const CANVAS: f64 = 480.0;

/// A piece as plain floats, ready to draw.
struct Shape {
    id: usize,
    points: Vec<[f64; 2]>,
    flags: Vec<FacetOrigin>,
}

fn centroid(points: &[[f64; 2]]) -> [f64; 2] {
    let n = points.len().max(1) as f64;
    let s = points.iter().fold([0.0, 0.0], |a, p| [a[0] + p[0], a[1] + p[1]]);
    [s[0] / n, s[1] / n]
}

fn exploded(shapes: Vec<Shape>, center: [f64; 2], f: f64) -> Vec<Shape> {
    shapes
        .into_iter()
        .map(|mut s| {
            let d = explode_offset(centroid(&s.points), center, f);
            for p in &mut s.points {
                p[0] += d[0];
                p[1] += d[1];
            }
            s
        })
        .collect()
}

/// Outline and pieces, before then after.
type Panels = (Vec<[f64; 2]>, Vec<Shape>, Vec<[f64; 2]>, Vec<Shape>);

fn panels(d: &PlanarDissection, opts: &RenderOptions) -> Panels {
    let outline: Vec<[f64; 2]> = d.original.vertices().iter().map(Vec2::to_f64).collect();
    let moved_outline: Vec<[f64; 2]> =
        d.original.vertices().iter().map(|v| d.witness_motion.apply(v).to_f64()).collect();
    let before = d
        .pieces
        .iter()
        .map(|p| Shape { id: p.id, points: p.vertices.iter().map(Vec2::to_f64).collect(), flags: p.facet_origin.clone() })
        .collect();
    let after = d
        .pieces
        .iter()
        .map(|p| Shape {
            id: p.id,
            points: p.vertices.iter().map(|v| p.motion.apply(v).to_f64()).collect(),
            flags: p.facet_origin.clone(),
        })
        .collect();
    let before = exploded(before, centroid(&outline), opts.explode);
    let after = exploded(after, centroid(&moved_outline), opts.explode);
    (outline, before, moved_outline, after)
}

/// Bounding box `[min_x, min_y, max_x, max_y]`.
fn bounds<'a>(points: impl Iterator<Item = &'a [f64; 2]>) -> [f64; 4] {
    points.fold([f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY], |b, p| {
        [b[0].min(p[0]), b[1].min(p[1]), b[2].max(p[0]), b[3].max(p[1])]
    })
}

/// Maps world coordinates into one panel, flipping y.
struct Frame {
    scale: f64,
    min_x: f64,
    max_y: f64,
    left: f64,
    top: f64,
}

impl Frame {
    fn new(b: [f64; 4], left: f64) -> (Frame, f64, f64) {
        let w = (b[2] - b[0]).max(f64::MIN_POSITIVE);
        let h = (b[3] - b[1]).max(f64::MIN_POSITIVE);
        let scale = CANVAS / w.max(h);
        let margin = 0.05 * CANVAS;
        let frame = Frame { scale, min_x: b[0], max_y: b[3], left: left + margin, top: margin };
        (frame, w * scale + 2.0 * margin, h * scale + 2.0 * margin)
    }

    fn map(&self, p: [f64; 2]) -> (f64, f64) {
        (self.left + (p[0] - self.min_x) * self.scale, self.top + (self.max_y - p[1]) * self.scale)
    }
}

fn points_attr(frame: &Frame, points: &[[f64; 2]]) -> String {
    let mut s = String::new();
    for (i, p) in points.iter().enumerate() {
        let (x, y) = frame.map(*p);
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{x:.3},{y:.3}");
    }
    s
}

fn draw_panel(out: &mut String, class: &str, frame: &Frame, outline: &[[f64; 2]], shapes: &[Shape]) {
    let _ = writeln!(out, "<g class=\"{class}\">");
    let _ = writeln!(out, "<polyline class=\"outline\" points=\"{}\"/>", points_attr(frame, &[outline, &outline[..1]].concat()));
    for s in shapes {
        let _ = writeln!(out, "<g class=\"piece\" data-id=\"{}\">", s.id);
        let _ = writeln!(out, "<polygon fill=\"{}\" points=\"{}\"/>", piece_colour(s.id), points_attr(frame, &s.points));
        let n = s.points.len();
        for (i, flag) in s.flags.iter().enumerate().take(n) {
            let (x1, y1) = frame.map(s.points[i]);
            let (x2, y2) = frame.map(s.points[(i + 1) % n]);
            let kind = match flag {
                FacetOrigin::Boundary => "boundary",
                FacetOrigin::Cut => "cut",
            };
            let _ = writeln!(out, "<line class=\"{kind}\" x1=\"{x1:.3}\" y1=\"{y1:.3}\" x2=\"{x2:.3}\" y2=\"{y2:.3}\"/>");
        }
        out.push_str("</g>\n");
    }
    out.push_str("</g>\n");
}

/// Renders a planar record. With [`Layout::BeforeAfter`] the left panel
/// shows the pieces in place and the right panel the moved pieces; with
/// [`Layout::Overlay`] both are drawn in one panel.
pub fn emit_svg(d: &Dissection, opts: &RenderOptions) -> Result<Vec<u8>, IoError> {
    opts.validate()?;
    let Dissection::Planar(p) = d else {
        return Err(IoError::WrongSpace { expected: 2, found: d.space() });
    };
    let (outline, before, moved_outline, after) = panels(p, opts);
    let all = |o: &[[f64; 2]], s: &[Shape]| bounds(o.iter().chain(s.iter().flat_map(|s| s.points.iter()))).to_vec();

    let mut body = String::new();
    let (width, height) = match opts.layout {
        Layout::BeforeAfter => {
            let b1 = all(&outline, &before);
            let b2 = all(&moved_outline, &after);
            let (f1, w1, h1) = Frame::new(b1.try_into().expect("four bounds"), 0.0);
            let (f2, w2, h2) = Frame::new(b2.try_into().expect("four bounds"), w1);
            draw_panel(&mut body, "before", &f1, &outline, &before);
            draw_panel(&mut body, "after", &f2, &moved_outline, &after);
            (w1 + w2, h1.max(h2))
        }
        Layout::Overlay => {
            let mut pts: Vec<[f64; 2]> = outline.clone();
            pts.extend(moved_outline.iter().copied());
            pts.extend(before.iter().chain(&after).flat_map(|s| s.points.iter().copied()));
            let (f, w, h) = Frame::new(bounds(pts.iter()), 0.0);
            draw_panel(&mut body, "before", &f, &outline, &before);
            draw_panel(&mut body, "after", &f, &moved_outline, &after);
            (w, h)
        }
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width:.3}\" height=\"{height:.3}\" viewBox=\"0 0 {width:.3} {height:.3}\">"
    );
    let _ = writeln!(out, "<style>{STYLE}</style>");
    out.push_str(&body);
    out.push_str("</svg>\n");
    Ok(out.into_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use insideout_core::dissect2d::dissect_regular;

    #[test]
    fn hexagon_has_three_polygons_per_panel() {
        let d = dissect_regular(6, 1.0, 1e-9).unwrap();
        let svg = String::from_utf8(emit_svg(&d, &RenderOptions::default()).unwrap()).unwrap();
        assert_eq!(svg.matches("<polygon").count(), 6);
        let before = &svg[svg.find("class=\"before\"").unwrap()..svg.find("class=\"after\"").unwrap()];
        assert_eq!(before.matches("<polygon").count(), 3);
    }

    #[test]
    fn output_is_deterministic() {
        let d = dissect_regular(7, 2.0, 1e-9).unwrap();
        let opts = RenderOptions { explode: 1.3, ..RenderOptions::default() };
        assert_eq!(emit_svg(&d, &opts).unwrap(), emit_svg(&d, &opts).unwrap());
    }

    #[test]
    fn rejects_shrinking_explode() {
        let d = dissect_regular(6, 1.0, 1e-9).unwrap();
        let opts = RenderOptions { explode: 0.5, ..RenderOptions::default() };
        assert!(matches!(emit_svg(&d, &opts), Err(IoError::Options(_))));
    }
}
