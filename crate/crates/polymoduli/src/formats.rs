//! Text formats: combinatorics (`complex V F` + `f i j k`), angle data
//! (`angles V E F` + `s i j k value` + `d i j value`) and a triangle-only
//! OBJ subset. `#` starts a comment in all three.
//!
//! Writers are deterministic: floats carry 17 significant digits, corners
//! are listed by corner id and edges by edge id.

use std::fmt::Write as _;
use std::str::FromStr;

use polymoduli_core::build::Point;
use polymoduli_core::{build_complex, Combinatoric, DihedralAngles, PolyhedronEmbedding, SurfaceAngles};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Invalid(#[from] polymoduli_core::Error),
}

type Result<T> = std::result::Result<T, FormatError>;

fn parse_error(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse { line, message: message.into() }
}

/// Non-empty lines with comments stripped, as `(1-based number, tokens)`.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn field<T: FromStr>(line: usize, token: &str, what: &str) -> Result<T> {
    token.parse().map_err(|_| parse_error(line, format!("cannot read {what} from {token:?}")))
}

fn expect_arity(line: usize, tokens: &[&str], n: usize) -> Result<()> {
    if tokens.len() != n {
        return Err(parse_error(line, format!("`{}` takes {} fields, found {}", tokens[0], n - 1, tokens.len() - 1)));
    }
    Ok(())
}

fn float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn parse_complex(text: &str) -> Result<Combinatoric> {
    let mut lines = records(text);
    let Some((line, header)) = lines.next() else {
        return Err(parse_error(0, "empty input, expected `complex V F`"));
    };
    if header[0] != "complex" {
        return Err(parse_error(line, "expected header `complex V F`"));
    }
    expect_arity(line, &header, 3)?;
    let v: usize = field(line, header[1], "vertex count")?;
    let f: usize = field(line, header[2], "face count")?;
    let mut faces = Vec::with_capacity(f);
    let mut last = line;
    for (line, t) in lines {
        if t[0] != "f" {
            return Err(parse_error(line, format!("unknown record `{}`", t[0])));
        }
        expect_arity(line, &t, 4)?;
        let face = [field(line, t[1], "vertex")?, field(line, t[2], "vertex")?, field(line, t[3], "vertex")?];
        if let Some(&x) = face.iter().find(|&&x| x >= v) {
            return Err(parse_error(line, format!("vertex {x} out of range for {v} vertices")));
        }
        faces.push(face);
        last = line;
    }
    if faces.len() != f {
        return Err(parse_error(last, format!("header announces {f} faces, found {}", faces.len())));
    }
    Ok(build_complex(v, &faces)?)
}

pub fn write_complex(k: &Combinatoric) -> String {
    let mut s = format!("complex {} {}\n", k.vertex_count(), k.face_count());
    for [a, b, c] in k.faces() {
        writeln!(s, "f {a} {b} {c}").unwrap();
    }
    s
}

/// Angle data on `k`. Every corner and edge must appear exactly once.
pub fn parse_angles(text: &str, k: &Combinatoric) -> Result<(SurfaceAngles, DihedralAngles)> {
    let mut lines = records(text);
    let Some((line, header)) = lines.next() else {
        return Err(parse_error(0, "empty input, expected `angles V E F`"));
    };
    if header[0] != "angles" {
        return Err(parse_error(line, "expected header `angles V E F`"));
    }
    expect_arity(line, &header, 4)?;
    let counts: [usize; 3] =
        [field(line, header[1], "V")?, field(line, header[2], "E")?, field(line, header[3], "F")?];
    let expected = [k.vertex_count(), k.edge_count(), k.face_count()];
    if counts != expected {
        return Err(parse_error(line, format!("header {counts:?} does not match the complex {expected:?}")));
    }
    let mut sigma = vec![f64::NAN; k.corner_count()];
    let mut delta = vec![f64::NAN; k.edge_count()];
    for (line, t) in lines {
        let (slot, id) = match t[0] {
            "s" => {
                expect_arity(line, &t, 5)?;
                let [a, c, b] = [field(line, t[1], "vertex")?, field(line, t[2], "vertex")?, field(line, t[3], "vertex")?];
                let id = k.corner_id(a, c, b).ok_or_else(|| parse_error(line, format!("no corner {a} {c} {b}")))?;
                (&mut sigma, id)
            }
            "d" => {
                expect_arity(line, &t, 4)?;
                let [a, b] = [field(line, t[1], "vertex")?, field(line, t[2], "vertex")?];
                let id = k.edge_id(a, b).ok_or_else(|| parse_error(line, format!("no edge {a} {b}")))?;
                (&mut delta, id)
            }
            other => return Err(parse_error(line, format!("unknown record `{other}`"))),
        };
        let value: f64 = field(line, t[t.len() - 1], "angle")?;
        if !value.is_finite() {
            return Err(parse_error(line, "angle is not finite"));
        }
        if !slot[id].is_nan() {
            return Err(parse_error(line, "entry given twice"));
        }
        slot[id] = value;
    }
    if let Some(c) = sigma.iter().position(|x| x.is_nan()) {
        let corner = k.corner(c);
        return Err(parse_error(0, format!("missing corner {} {} {}", corner.wings.0, corner.center, corner.wings.1)));
    }
    if let Some(e) = delta.iter().position(|x| x.is_nan()) {
        let [a, b] = k.edges()[e];
        return Err(parse_error(0, format!("missing edge {a} {b}")));
    }
    Ok((SurfaceAngles(sigma), DihedralAngles(delta)))
}

pub fn write_angles(k: &Combinatoric, sigma: &SurfaceAngles, delta: &DihedralAngles) -> String {
    let mut s = format!("angles {} {} {}\n", k.vertex_count(), k.edge_count(), k.face_count());
    for (c, corner) in k.corners().enumerate() {
        writeln!(s, "s {} {} {} {}", corner.wings.0, corner.center, corner.wings.1, float(sigma[c])).unwrap();
    }
    for (e, [a, b]) in k.edges().iter().enumerate() {
        writeln!(s, "d {a} {b} {}", float(delta[e])).unwrap();
    }
    s
}

/// `v x y z` and `f i j k` records, 1-based; texture and normal indices
/// (`i/t/n`) are dropped and other record types ignored.
pub fn parse_obj(text: &str) -> Result<PolyhedronEmbedding> {
    let mut points = Vec::new();
    let mut faces = Vec::new();
    for (line, t) in records(text) {
        match t[0] {
            "v" => {
                if t.len() != 4 && t.len() != 5 {
                    return Err(parse_error(line, "vertex needs three coordinates"));
                }
                points.push(Point::new(field(line, t[1], "x")?, field(line, t[2], "y")?, field(line, t[3], "z")?));
            }
            "f" => {
                if t.len() != 4 {
                    return Err(parse_error(line, format!("only triangles are supported, found {} corners", t.len() - 1)));
                }
                let mut face = [0; 3];
                for (slot, token) in face.iter_mut().zip(&t[1..]) {
                    let index: usize = field(line, token.split('/').next().unwrap_or(""), "vertex index")?;
                    if index == 0 {
                        return Err(parse_error(line, "vertex indices are 1-based"));
                    }
                    *slot = index - 1;
                }
                faces.push((line, face));
            }
            _ => {}
        }
    }
    for &(line, face) in &faces {
        if let Some(&x) = face.iter().find(|&&x| x >= points.len()) {
            return Err(parse_error(line, format!("vertex {} not defined", x + 1)));
        }
    }
    let faces: Vec<[usize; 3]> = faces.into_iter().map(|(_, f)| f).collect();
    let k = build_complex(points.len(), &faces)?;
    Ok(PolyhedronEmbedding::new(k, points)?)
}

pub fn write_obj(p: &PolyhedronEmbedding) -> String {
    let mut s = String::new();
    for x in p.coords() {
        writeln!(s, "v {} {} {}", float(x.x), float(x.y), float(x.z)).unwrap();
    }
    for [a, b, c] in p.complex().faces() {
        writeln!(s, "f {} {} {}", a + 1, b + 1, c + 1).unwrap();
    }
    s
}
