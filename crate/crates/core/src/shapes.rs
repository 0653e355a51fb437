//! Standard test surfaces: regular solids with outward-oriented faces, a cube
//! with face diagonals, and the seven-vertex torus.

use alloc::vec::Vec;

use crate::build::{Point, PolyhedronEmbedding};
use crate::complex::build_complex;

const PHI: f64 = 1.618_033_988_749_895;

pub fn tetrahedron_faces() -> (usize, Vec<[usize; 3]>) {
    (4, alloc::vec![[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]])
}

fn tetrahedron_points() -> Vec<Point> {
    alloc::vec![
        Point::new(1.0, 1.0, 1.0),
        Point::new(1.0, -1.0, -1.0),
        Point::new(-1.0, 1.0, -1.0),
        Point::new(-1.0, -1.0, 1.0),
    ]
}

fn octahedron_points() -> Vec<Point> {
    alloc::vec![
        Point::new(1.0, 0.0, 0.0),
        Point::new(-1.0, 0.0, 0.0),
        Point::new(0.0, 1.0, 0.0),
        Point::new(0.0, -1.0, 0.0),
        Point::new(0.0, 0.0, 1.0),
        Point::new(0.0, 0.0, -1.0),
    ]
}

fn icosahedron_points() -> Vec<Point> {
    let mut p = Vec::with_capacity(12);
    for s in [1.0, -1.0] {
        for t in [1.0, -1.0] {
            p.push(Point::new(0.0, s, t * PHI));
        }
    }
    for s in [1.0, -1.0] {
        for t in [1.0, -1.0] {
            p.push(Point::new(s, t * PHI, 0.0));
        }
    }
    for s in [1.0, -1.0] {
        for t in [1.0, -1.0] {
            p.push(Point::new(s * PHI, 0.0, t));
        }
    }
    p
}

/// Triangles of a centrally placed convex solid whose edges all have length
/// `edge`, oriented so that normals point away from the origin.
fn equilateral_hull(points: &[Point], edge: f64) -> Vec<[usize; 3]> {
    let close = |a: usize, b: usize| libm::fabs((points[a] - points[b]).norm() - edge) < 1e-9;
    let n = points.len();
    let mut faces = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if close(a, b) && close(b, c) && close(a, c) {
                    let normal = (points[b] - points[a]).cross(&(points[c] - points[a]));
                    if normal.dot(&points[a]) > 0.0 {
                        faces.push([a, b, c]);
                    } else {
                        faces.push([a, c, b]);
                    }
                }
            }
        }
    }
    faces
}

pub fn octahedron_faces() -> (usize, Vec<[usize; 3]>) {
    (6, equilateral_hull(&octahedron_points(), libm::sqrt(2.0)))
}

pub fn icosahedron_faces() -> (usize, Vec<[usize; 3]>) {
    (12, equilateral_hull(&icosahedron_points(), 2.0))
}

/// The seven-vertex torus: triangles `(i, i+1, i+3)` and `(i, i+3, i+2)` mod 7.
pub fn seven_vertex_torus_faces() -> (usize, Vec<[usize; 3]>) {
    let mut faces = Vec::with_capacity(14);
    for i in 0..7 {
        faces.push([i, (i + 1) % 7, (i + 3) % 7]);
        faces.push([i, (i + 3) % 7, (i + 2) % 7]);
    }
    (7, faces)
}

fn embed(vertices: usize, faces: &[[usize; 3]], points: Vec<Point>) -> PolyhedronEmbedding {
    let k = build_complex(vertices, faces).expect("standard surface is a valid combinatoric");
    PolyhedronEmbedding::new(k, points).expect("standard surface has nondegenerate faces")
}

/// Regular tetrahedron with edge length `2√2`.
pub fn regular_tetrahedron() -> PolyhedronEmbedding {
    let (v, f) = tetrahedron_faces();
    embed(v, &f, tetrahedron_points())
}

/// Regular octahedron with vertices at `±e_i`.
pub fn regular_octahedron() -> PolyhedronEmbedding {
    let (v, f) = octahedron_faces();
    embed(v, &f, octahedron_points())
}

/// Regular icosahedron with edge length 2.
pub fn regular_icosahedron() -> PolyhedronEmbedding {
    let (v, f) = icosahedron_faces();
    embed(v, &f, icosahedron_points())
}

/// Unit cube, each square split along a diagonal. The diagonals are flat
/// edges, so the cones there are not in general position.
pub fn diagonal_cube() -> PolyhedronEmbedding {
    let points: Vec<Point> = (0..8)
        .map(|i| Point::new((i >> 2 & 1) as f64, (i >> 1 & 1) as f64, (i & 1) as f64))
        .collect();
    // squares as vertex cycles, split along their first diagonal
    let squares = [[0, 1, 3, 2], [4, 6, 7, 5], [0, 4, 5, 1], [2, 3, 7, 6], [0, 2, 6, 4], [1, 5, 7, 3]];
    let center = Point::new(0.5, 0.5, 0.5);
    let mut faces = Vec::with_capacity(12);
    for [a, b, c, d] in squares {
        for mut t in [[a, b, c], [a, c, d]] {
            let normal = (points[t[1]] - points[t[0]]).cross(&(points[t[2]] - points[t[0]]));
            if normal.dot(&(points[t[0]] - center)) < 0.0 {
                t.swap(1, 2);
            }
            faces.push(t);
        }
    }
    embed(8, &faces, points)
}

/// The seven-vertex torus on scattered points. Its faces cross each other;
/// every face is a proper triangle and no edge folds flat.
pub fn scattered_seven_vertex_torus() -> PolyhedronEmbedding {
    let (v, f) = seven_vertex_torus_faces();
    let points = alloc::vec![
        Point::new(0.42, -0.07, 0.4),
        Point::new(-0.88, 0.76, 0.1),
        Point::new(0.66, 0.87, 0.61),
        Point::new(-0.69, 0.76, 0.54),
        Point::new(0.05, -0.3, 0.53),
        Point::new(0.29, -0.62, -0.14),
        Point::new(0.2, 0.78, 0.67),
    ];
    embed(v, &f, points)
}
