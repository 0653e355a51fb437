//! The `polymoduli` command line.
//!
//! Exit status: 0 success or member, 1 checked and false, 2 usage or
//! unreadable input, 3 numerical or internal failure.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use polymoduli_core::build::{extract_angles, moduli_point, reconstruct_with_base, similarity_compare};
use polymoduli_core::coloring::find_epc_coloring;
use polymoduli_core::moduli::{check_membership, default_dropped_faces, verify_dimensions_with};
use polymoduli_core::{Combinatoric, DihedralAngles, Error, PolyhedronEmbedding, SurfaceAngles};

use crate::formats::{self, FormatError};

#[derive(Debug, Parser)]
#[command(name = "polymoduli", version, about = "Angle coordinates for triangulated polyhedra")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Face and dihedral angles of an OBJ mesh.
    Extract {
        mesh: PathBuf,
        /// Angle file to write; standard output if absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the combinatoric of the mesh here.
        #[arg(long)]
        complex: Option<PathBuf>,
    },
    /// Whether angle data belongs to a polyhedron on the complex.
    Check {
        complex: PathBuf,
        angles: PathBuf,
        #[command(flatten)]
        tol: Tolerance,
    },
    /// Rebuild an OBJ mesh from a sphere-like complex and its angles.
    Reconstruct {
        complex: PathBuf,
        angles: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        tol: Tolerance,
        #[command(flatten)]
        base: BaseEdge,
    },
    /// Numerical nullities against the dimension formulas.
    Dims {
        #[arg(long, conflicts_with_all = ["complex", "angles"], required_unless_present = "complex")]
        mesh: Option<PathBuf>,
        #[arg(long, requires = "angles")]
        complex: Option<PathBuf>,
        #[arg(long, requires = "complex")]
        angles: Option<PathBuf>,
        /// Adjacent faces whose intrinsic rows the reduced system drops.
        #[arg(long, num_args = 2, value_names = ["F", "G"])]
        drop: Option<Vec<usize>>,
        #[command(flatten)]
        tol: Tolerance,
    },
    /// Search the dual graph for an elimination-pattern coloring.
    Color {
        complex: PathBuf,
        /// Adjacent dual nodes (faces) carrying the six corners; genus 0 only.
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        pair: Option<Vec<usize>>,
    },
    /// Extract, reconstruct and compare a mesh with the result.
    Roundtrip {
        mesh: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        tol: Tolerance,
        #[command(flatten)]
        base: BaseEdge,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Tolerance {
    /// Max-norm residual tolerance.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct BaseEdge {
    /// Edge given length 1 in the output.
    #[arg(long, num_args = 2, value_names = ["I", "J"])]
    pub base_edge: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
}

impl Verdict {
    fn of(b: bool) -> Self {
        if b { Verdict::Yes } else { Verdict::No }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Verdict::Yes => 0,
            Verdict::No => 1,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Format { path: PathBuf, source: FormatError },
    #[error("{}: {source}", path.display())]
    Write { path: PathBuf, source: io::Error },
    #[error("{context}: {source}")]
    Library { context: &'static str, source: Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Read { .. } | CliError::Format { .. } => 2,
            CliError::Library { source: Error::NotAMember { .. }, .. } => 1,
            CliError::Write { .. } | CliError::Library { .. } => 3,
        }
    }
}

fn library(context: &'static str) -> impl FnOnce(Error) -> CliError {
    move |source| CliError::Library { context, source }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_owned(), source })
}

fn parsed<T>(path: &Path, r: Result<T, FormatError>) -> Result<T, CliError> {
    r.map_err(|source| CliError::Format { path: path.to_owned(), source })
}

fn read_complex(path: &Path) -> Result<Combinatoric, CliError> {
    parsed(path, formats::parse_complex(&read(path)?))
}

fn read_angles(path: &Path, k: &Combinatoric) -> Result<(SurfaceAngles, DihedralAngles), CliError> {
    parsed(path, formats::parse_angles(&read(path)?, k))
}

fn read_mesh(path: &Path) -> Result<PolyhedronEmbedding, CliError> {
    parsed(path, formats::parse_obj(&read(path)?))
}

/// Writes `text` to `path`, or to `out` without a path.
fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Write { path: p.to_owned(), source }),
        None => out.write_all(text.as_bytes()).map_err(|source| CliError::Write { path: "<stdout>".into(), source }),
    }
}

fn say(out: &mut dyn Write, line: std::fmt::Arguments<'_>) -> Result<(), CliError> {
    writeln!(out, "{line}").map_err(|source| CliError::Write { path: "<stdout>".into(), source })
}

fn check_tol(tol: Tolerance) -> Result<f64, CliError> {
    if tol.tol.is_finite() && tol.tol > 0.0 {
        Ok(tol.tol)
    } else {
        Err(CliError::Usage(format!("--tol must be positive, got {}", tol.tol)))
    }
}

fn base_edge(k: &Combinatoric, base: &BaseEdge) -> Result<usize, CliError> {
    match base.base_edge.as_deref() {
        None => Ok(0),
        Some(&[i, j]) => k.edge_id(i, j).ok_or_else(|| CliError::Usage(format!("{i} {j} is not an edge"))),
        Some(_) => unreachable!("clap takes exactly two values"),
    }
}

fn pair_of(values: Option<&[usize]>) -> Option<(usize, usize)> {
    values.map(|v| (v[0], v[1]))
}

/// Runs one command, writing reports (and outputs without `-o`) to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Verdict, CliError> {
    match &cli.command {
        Command::Extract { mesh, output, complex } => {
            let p = read_mesh(mesh)?;
            let (sigma, delta, _) = extract_angles(&p).map_err(library("extract"))?;
            if let Some(path) = complex {
                emit(Some(path), &formats::write_complex(p.complex()), out)?;
            }
            emit(output.as_deref(), &formats::write_angles(p.complex(), &sigma, &delta), out)?;
            Ok(Verdict::Yes)
        }
        Command::Check { complex, angles, tol } => {
            let tol = check_tol(*tol)?;
            let k = read_complex(complex)?;
            let (sigma, delta) = read_angles(angles, &k)?;
            let m = check_membership(&k, &sigma, &delta, tol);
            say(out, format_args!("member {}", m.member))?;
            say(out, format_args!("residual {:.3e}", m.residual))?;
            say(out, format_args!("worst {}", m.worst))?;
            Ok(Verdict::of(m.member))
        }
        Command::Reconstruct { complex, angles, output, tol, base } => {
            let tol = check_tol(*tol)?;
            let k = read_complex(complex)?;
            let (sigma, delta) = read_angles(angles, &k)?;
            let e = base_edge(&k, base)?;
            let p = reconstruct_with_base(&k, &sigma, &delta, tol, e).map_err(library("reconstruct"))?;
            emit(output.as_deref(), &formats::write_obj(&p), out)?;
            Ok(Verdict::Yes)
        }
        Command::Dims { mesh, complex, angles, drop, tol } => {
            let tol = check_tol(*tol)?;
            let (k, point) = match (mesh, complex, angles) {
                (Some(mesh), _, _) => {
                    let p = read_mesh(mesh)?;
                    let point = moduli_point(&p).map_err(library("charts from the mesh"))?;
                    (p.complex().clone(), point)
                }
                (None, Some(complex), Some(angles)) => {
                    let k = read_complex(complex)?;
                    let (sigma, delta) = read_angles(angles, &k)?;
                    let m = check_membership(&k, &sigma, &delta, tol);
                    let Some(point) = m.point else {
                        say(out, format_args!("not-a-solution residual={:.3e} worst={}", m.residual, m.worst))?;
                        return Ok(Verdict::No);
                    };
                    (k, point)
                }
                _ => return Err(CliError::Usage(String::from("give --mesh or both --complex and --angles"))),
            };
            let dropped = match drop.as_deref() {
                Some(&[f, g]) if f.max(g) < k.face_count() => [f, g],
                Some(_) => return Err(CliError::Usage(String::from("--drop takes two face indices"))),
                None => default_dropped_faces(&k),
            };
            let report = verify_dimensions_with(&k, &point, dropped).map_err(|source| match source {
                Error::FacesNotAdjacent { .. } => CliError::Usage(source.to_string()),
                _ => CliError::Library { context: "dimension check", source },
            })?;
            say(out, format_args!("{report}"))?;
            Ok(Verdict::of(report.all_hold()))
        }
        Command::Color { complex, pair } => {
            let k = read_complex(complex)?;
            let d = k.dual_graph();
            let found = find_epc_coloring(&d, k.genus(), pair_of(pair.as_deref())).map_err(|source| match source {
                Error::ArgumentMismatch(m) => CliError::Usage(m),
                _ => CliError::Library { context: "coloring search", source },
            })?;
            match found {
                Some(col) => {
                    say(out, format_args!("{}", col.report(&d)))?;
                    Ok(Verdict::Yes)
                }
                None => {
                    say(out, format_args!("not-found"))?;
                    Ok(Verdict::No)
                }
            }
        }
        Command::Roundtrip { mesh, output, tol, base } => {
            let tol = check_tol(*tol)?;
            let p = read_mesh(mesh)?;
            let k = p.complex();
            let e = base_edge(k, base)?;
            let (sigma, delta, _) = extract_angles(&p).map_err(library("extract"))?;
            let q = reconstruct_with_base(k, &sigma, &delta, tol, e).map_err(library("reconstruct"))?;
            let m = similarity_compare(&q, &p).map_err(library("compare"))?;
            if let Some(path) = output {
                emit(Some(path), &formats::write_obj(&q), out)?;
            }
            say(out, format_args!("similar {}", m.similar))?;
            say(out, format_args!("scale {:.16e}", m.scale))?;
            say(out, format_args!("residual {:.3e}", m.residual))?;
            Ok(Verdict::of(m.similar))
        }
    }
}
