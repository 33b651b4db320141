use std::fmt::Write;

use insideout_core::model::{Dissection, SolidDissection};

use super::{explode_offset, RenderOptions, Stage};
use crate::IoError;

/// Volume-weighted centre of the original solid, moved by the witness
/// motion for the after stage.
fn container_centre(d: &SolidDissection, stage: Stage) -> [f64; 3] {
    let mut sum = [0.0; 3];
    let mut total = 0.0;
    for cell in d.original.cells() {
        let v = cell.volume().to_f64();
        let c = match stage {
            Stage::Before => cell.centroid(),
            Stage::After => d.witness_motion.apply(&cell.centroid()),
        }
        .to_f64();
        for i in 0..3 {
            sum[i] += v * c[i];
        }
        total += v;
    }
    sum.map(|s| s / total)
}

/// One mesh holding every piece, in place or moved. Each piece keeps its own
/// vertices, so the face count is the sum of the pieces' face counts.
pub fn emit_off(d: &Dissection, opts: &RenderOptions) -> Result<Vec<u8>, IoError> {
    opts.validate()?;
    let Dissection::Solid(s) = d else {
        return Err(IoError::WrongSpace { expected: 3, found: d.space() });
    };
    let centre = container_centre(s, opts.stage);
    let mut vertices = String::new();
    let mut faces = String::new();
    let (mut nv, mut nf) = (0usize, 0usize);
    for piece in &s.pieces {
        let points: Vec<[f64; 3]> = piece
            .shape
            .vertices
            .iter()
            .map(|v| match opts.stage {
                Stage::Before => v.to_f64(),
                Stage::After => piece.motion.apply(v).to_f64(),
            })
            .collect();
        let n = points.len().max(1) as f64;
        let c = points.iter().fold([0.0; 3], |a, p| [a[0] + p[0] / n, a[1] + p[1] / n, a[2] + p[2] / n]);
        let off = explode_offset(c, centre, opts.explode);
        for p in &points {
            let _ = writeln!(vertices, "{:.9} {:.9} {:.9}", p[0] + off[0], p[1] + off[1], p[2] + off[2]);
        }
        for face in &piece.shape.faces {
            let _ = write!(faces, "{}", face.len());
            for i in face {
                let _ = write!(faces, " {}", nv + i);
            }
            faces.push('\n');
        }
        nv += points.len();
        nf += piece.shape.faces.len();
    }
    let mut out = format!("OFF\n{nv} {nf} 0\n");
    out.push_str(&vertices);
    out.push_str(&faces);
    Ok(out.into_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use insideout_core::dissect3d::dissect_regular_tetrahedron;
    use insideout_core::kernel::NumericMode;

    fn header(off: &[u8]) -> Vec<usize> {
        let text = std::str::from_utf8(off).unwrap();
        text.lines().nth(1).unwrap().split_whitespace().map(|x| x.parse().unwrap()).collect()
    }

    #[test]
    fn tetrahedron_mesh_has_176_faces() {
        let d = dissect_regular_tetrahedron(None, &NumericMode::Exact).unwrap();
        let off = emit_off(&d, &RenderOptions::default()).unwrap();
        assert!(off.starts_with(b"OFF\n"));
        // 24 tets with 4 faces and 10 octs with 8
        assert_eq!(header(&off), vec![24 * 4 + 10 * 6, 176, 0]);
    }

    #[test]
    fn exploding_keeps_counts_and_pushes_centroids_out() {
        let d = dissect_regular_tetrahedron(None, &NumericMode::Exact).unwrap();
        let flat = emit_off(&d, &RenderOptions::default()).unwrap();
        let opts = RenderOptions { explode: 1.5, ..RenderOptions::default() };
        let wide = emit_off(&d, &opts).unwrap();
        assert_eq!(header(&flat), header(&wide));

        let Dissection::Solid(s) = &d else { unreachable!() };
        let centre = container_centre(s, Stage::Before);
        let coords = |off: &[u8], piece: usize| -> [f64; 3] {
            let text = std::str::from_utf8(off).unwrap();
            let start: usize = s.pieces[..piece].iter().map(|p| p.shape.vertices.len()).sum();
            let k = s.pieces[piece].shape.vertices.len();
            let rows: Vec<[f64; 3]> = text
                .lines()
                .skip(2 + start)
                .take(k)
                .map(|l| {
                    let v: Vec<f64> = l.split_whitespace().map(|x| x.parse().unwrap()).collect();
                    [v[0], v[1], v[2]]
                })
                .collect();
            let n = k as f64;
            rows.iter().fold([0.0; 3], |a, p| [a[0] + p[0] / n, a[1] + p[1] / n, a[2] + p[2] / n])
        };
        for piece in [0, 17, 33] {
            let (a, b) = (coords(&flat, piece), coords(&wide, piece));
            for i in 0..3 {
                assert!((b[i] - centre[i] - 1.5 * (a[i] - centre[i])).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn planar_record_is_wrong_space() {
        let d = insideout_core::dissect2d::dissect_regular(6, 1.0, 1e-9).unwrap();
        assert!(matches!(emit_off(&d, &RenderOptions::default()), Err(IoError::WrongSpace { expected: 3, found: 2 })));
    }
}
