use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use insideout::json::{self, FloatPolicy};
use insideout::render::{self, Layout, RenderOptions, Stage};
use insideout_core::dissect2d::{dissect_generic_from, dissect_regular};
use insideout_core::dissect3d::{dissect_complex, dissect_regular_octahedron, dissect_regular_tetrahedron};
use insideout_core::kernel::{NumericMode, SimplePolygon, Vec3};
use insideout_core::model::Dissection;
use insideout_core::verify::verify;

#[derive(Parser)]
#[command(name = "insideout", version, about = "Build, check and draw inside-out dissections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a dissection record.
    Dissect {
        #[command(subcommand)]
        shape: Shape,
    },
    /// Check a record; exits 0 when it passes and 1 when it does not.
    Verify {
        record: PathBuf,
        /// Tolerance for approximate records.
        #[arg(long)]
        epsilon: Option<f64>,
        #[command(flatten)]
        out: Output,
    },
    /// Draw a record as SVG (planar) or OFF (solid).
    Render {
        record: PathBuf,
        #[arg(long, conflicts_with = "off", required_unless_present = "off")]
        svg: Option<PathBuf>,
        #[arg(long)]
        off: Option<PathBuf>,
        #[arg(long, default_value_t = 1.0)]
        explode: f64,
        #[arg(long, value_enum, default_value_t = LayoutArg::BeforeAfter)]
        layout: LayoutArg,
        /// Configuration shown in the OFF mesh.
        #[arg(long, value_enum, default_value_t = StageArg::Before)]
        stage: StageArg,
    },
    /// Count pieces by kind and number of boundary facets.
    Census {
        record: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
enum Shape {
    /// Any simple polygon, `2n + 1` pieces.
    Generic {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        t_start: u128,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        #[command(flatten)]
        out: Output,
    },
    /// A regular n-gon centred at the origin.
    Regular {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        circumradius: f64,
        #[arg(long, default_value_t = NumericMode::DEFAULT_EPSILON)]
        epsilon: f64,
        #[command(flatten)]
        out: Output,
    },
    /// A regular tetrahedron, canonical unless vertices are given.
    Tet(Solid),
    /// A regular octahedron, canonical unless vertices are given.
    Oct(Solid),
    /// Regular tetrahedra and octahedra glued face to face.
    Complex {
        #[arg(long)]
        cells: PathBuf,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct Solid {
    #[arg(long)]
    vertices: Option<PathBuf>,
    /// Defaults to exact when every input coordinate is exact.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct Output {
    /// Output file; standard output when absent.
    #[arg(short = 'o', long = "output")]
    path: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Approx,
}

#[derive(Clone, Copy, ValueEnum)]
enum LayoutArg {
    BeforeAfter,
    Overlay,
}

#[derive(Clone, Copy, ValueEnum)]
enum StageArg {
    Before,
    After,
}

impl ModeArg {
    fn mode(self) -> NumericMode {
        match self {
            ModeArg::Exact => NumericMode::Exact,
            ModeArg::Approx => NumericMode::approx(),
        }
    }

    fn policy(self) -> FloatPolicy {
        match self {
            ModeArg::Exact => FloatPolicy::Exact,
            ModeArg::Approx => FloatPolicy::Keep,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(out: &Output, bytes: &[u8]) -> Result<()> {
    match &out.path {
        Some(p) => fs::write(p, bytes).with_context(|| format!("cannot write {}", p.display())),
        None => std::io::stdout().lock().write_all(bytes).context("cannot write to standard output"),
    }
}

fn write_json(out: &Output, value: &serde_json::Value) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    write(out, s.as_bytes())
}

fn load(path: &Path) -> Result<Dissection> {
    json::parse_dissection(&read(path)?).with_context(|| format!("cannot load {}", path.display()))
}

/// Explicit mode, or exact exactly when all coordinates are.
fn solid_mode(requested: Option<ModeArg>, points: &[Vec3]) -> NumericMode {
    match requested {
        Some(m) => m.mode(),
        None if points.iter().all(Vec3::is_exact) => NumericMode::Exact,
        None => NumericMode::approx(),
    }
}

fn policy(requested: Option<ModeArg>) -> FloatPolicy {
    requested.map_or(FloatPolicy::Keep, ModeArg::policy)
}

fn dissect(shape: Shape) -> Result<()> {
    let (d, out) = match shape {
        Shape::Generic { input, t_start, mode, out } => {
            let ring = json::parse_polygon_file(&read(&input)?, mode.policy())?;
            let m = mode.mode();
            let poly = SimplePolygon::new(ring, &m).context("input is not a simple polygon")?;
            (dissect_generic_from(&poly, t_start, &m)?, out)
        }
        Shape::Regular { n, circumradius, epsilon, out } => (dissect_regular(n, circumradius, epsilon)?, out),
        Shape::Tet(s) => (solid(s.vertices.as_deref(), s.mode, true)?, s.out),
        Shape::Oct(s) => (solid(s.vertices.as_deref(), s.mode, false)?, s.out),
        Shape::Complex { cells, mode, out } => {
            let cells = json::parse_cells_file(&read(&cells)?, policy(mode))?;
            let all: Vec<Vec3> = cells.iter().flatten().cloned().collect();
            let m = solid_mode(mode, &all);
            (dissect_complex(&cells, &m)?, out)
        }
    };
    write(&out, json::serialize_dissection(&d).as_bytes())
}

fn solid(vertices: Option<&Path>, requested: Option<ModeArg>, tet: bool) -> Result<Dissection> {
    let Some(path) = vertices else {
        let mode = requested.unwrap_or(ModeArg::Exact).mode();
        return Ok(if tet { dissect_regular_tetrahedron(None, &mode)? } else { dissect_regular_octahedron(None, &mode)? });
    };
    let v = json::parse_vertices_file(&read(path)?, policy(requested))?;
    let mode = solid_mode(requested, &v);
    let count = v.len();
    Ok(if tet {
        let Ok(v) = v.try_into() else { bail!("a tetrahedron needs 4 vertices, got {count}") };
        dissect_regular_tetrahedron(Some(v), &mode)?
    } else {
        let Ok(v) = v.try_into() else { bail!("an octahedron needs 6 vertices, got {count}") };
        dissect_regular_octahedron(Some(v), &mode)?
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Dissect { shape } => dissect(shape)?,
        Command::Verify { record, epsilon, out } => {
            let mut d = load(&record)?;
            if let Some(e) = epsilon {
                if !(e > 0.0 && e.is_finite()) {
                    bail!("epsilon must be positive");
                }
                match &mut d {
                    Dissection::Planar(p) if !p.mode.is_exact() => p.mode = NumericMode::Approx { epsilon: e },
                    Dissection::Solid(s) if !s.mode.is_exact() => s.mode = NumericMode::Approx { epsilon: e },
                    _ => {}
                }
            }
            let report = verify(&d);
            write_json(&out, &json::report_value(&report))?;
            return Ok(if report.pass() { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Render { record, svg, off, explode, layout, stage } => {
            let d = load(&record)?;
            let opts = RenderOptions {
                layout: match layout {
                    LayoutArg::BeforeAfter => Layout::BeforeAfter,
                    LayoutArg::Overlay => Layout::Overlay,
                },
                stage: match stage {
                    StageArg::Before => Stage::Before,
                    StageArg::After => Stage::After,
                },
                explode,
            };
            let (path, bytes) = match (svg, off) {
                (Some(p), _) => (p, render::emit_svg(&d, &opts)?),
                (None, Some(p)) => (p, render::emit_off(&d, &opts)?),
                (None, None) => bail!("one of --svg or --off is required"),
            };
            write(&Output { path: Some(path) }, &bytes)?;
        }
        Command::Census { record, out } => write_json(&out, &insideout::census::census_value(&load(&record)?))?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
