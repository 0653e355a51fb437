//! Polyhedra as coordinates on a combinatoric: angle extraction, rigid
//! motions, comparison up to orientation-preserving similarity, and the
//! reconstruction of a sphere-like polyhedron from its angles.

mod reconstruct;

use alloc::vec::Vec;
use core::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};

use crate::angles::{wrap_two_pi, DihedralAngles, EdgeLengths, SurfaceAngles};
use crate::complex::Combinatoric;
use crate::cones::{cone_angles_at, geometric_chart};
use crate::error::{Error, Result};
use crate::euclid::solve_triangle_from_lengths;
use crate::moduli::ModuliPoint;

pub use reconstruct::{reconstruct, reconstruct_with_base};

pub type Point = Vector3<f64>;

/// Relative area below which a face counts as degenerate.
const FACE_AREA_RELATIVE: f64 = 1e-12;
/// Dihedral angles closer than this to `0` or `2π` are folded-flat edges.
const ZERO_DIHEDRAL: f64 = 1e-12;

/// A simplexwise linear map of a combinatoric into space. Faces may cross
/// each other; each face must span a proper triangle.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyhedronEmbedding {
    complex: Combinatoric,
    coords: Vec<Point>,
}

impl PolyhedronEmbedding {
    pub fn new(complex: Combinatoric, coords: Vec<Point>) -> Result<Self> {
        if coords.len() != complex.vertex_count() {
            return Err(Error::SizeMismatch { expected: complex.vertex_count(), found: coords.len() });
        }
        if coords.iter().any(|p| !p.iter().all(|x| x.is_finite())) {
            return Err(Error::NonFiniteMatrix);
        }
        let diameter = diameter(&coords);
        for (f, t) in complex.faces().iter().enumerate() {
            let [a, b, c] = t.map(|v| coords[v]);
            let area = 0.5 * (b - a).cross(&(c - a)).norm();
            if !(area > FACE_AREA_RELATIVE * diameter * diameter) {
                return Err(Error::DegenerateFace { face: f });
            }
        }
        Ok(PolyhedronEmbedding { complex, coords })
    }

    pub fn complex(&self) -> &Combinatoric {
        &self.complex
    }

    pub fn coords(&self) -> &[Point] {
        &self.coords
    }

    pub fn diameter(&self) -> f64 {
        diameter(&self.coords)
    }

    /// The same combinatoric with every point moved by `f`.
    pub fn map_points(&self, f: impl Fn(&Point) -> Point) -> Result<Self> {
        PolyhedronEmbedding::new(self.complex.clone(), self.coords.iter().map(f).collect())
    }
}

fn diameter(points: &[Point]) -> f64 {
    let mut d = 0.0f64;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            d = d.max((p - q).norm());
        }
    }
    d
}

/// Oriented angle in `[0, 2π)` between the half-planes bounded by the line
/// through `origin` with direction `axis` and containing `first`, `second`.
/// With `first` on the face traversing the edge along `axis` this is the
/// interior dihedral angle of an outward-oriented surface.
pub(crate) fn dihedral(origin: &Point, axis: &Point, first: &Point, second: &Point) -> f64 {
    let e = axis.normalize();
    let perp = |p: &Point| {
        let d = p - origin;
        d - e * e.dot(&d)
    };
    let (w1, w2) = (perp(first), perp(second));
    wrap_two_pi(libm::atan2(-e.dot(&w1.cross(&w2)), w1.dot(&w2)))
}

/// Face angles, dihedral angles and edge lengths of an embedding.
pub fn extract_angles(p: &PolyhedronEmbedding) -> Result<(SurfaceAngles, DihedralAngles, EdgeLengths)> {
    let k = p.complex();
    let x = p.coords();
    let ell: Vec<f64> = k.edges().iter().map(|[a, b]| (x[*a] - x[*b]).norm()).collect();
    let mut sigma = alloc::vec![0.0; k.corner_count()];
    for f in 0..k.face_count() {
        let [e0, e1, e2] = k.face_edges(f);
        let (a0, a1, a2) =
            solve_triangle_from_lengths(ell[e0], ell[e1], ell[e2]).map_err(|_| Error::DegenerateFace { face: f })?;
        sigma[3 * f] = a0;
        sigma[3 * f + 1] = a1;
        sigma[3 * f + 2] = a2;
    }
    let mut delta = Vec::with_capacity(k.edge_count());
    for (e, &[a, b]) in k.edges().iter().enumerate() {
        let [fwd, bwd] = k.edge_faces(e);
        let (third, fourth) = (k.opposite_vertex(fwd, e), k.opposite_vertex(bwd, e));
        let d = dihedral(&x[a], &(x[b] - x[a]), &x[third], &x[fourth]);
        if d < ZERO_DIHEDRAL || d > 2.0 * PI - ZERO_DIHEDRAL {
            return Err(Error::ZeroDihedral { a, b });
        }
        delta.push(d);
    }
    Ok((SurfaceAngles(sigma), DihedralAngles(delta), EdgeLengths(ell)))
}

/// Unit directions of the edges at `v`, in link order.
pub fn cone_directions(p: &PolyhedronEmbedding, v: usize) -> Vec<Point> {
    let x = p.coords();
    p.complex().link(v).iter().map(|s| (x[s.neighbor] - x[v]).normalize()).collect()
}

/// The full-system point of an embedding, with every chart read off the
/// geometry (see [`crate::cones::geometric_chart`]). Unlike a lift this
/// works for any cone, including saddles on surfaces of higher genus.
pub fn moduli_point(p: &PolyhedronEmbedding) -> Result<ModuliPoint> {
    let (sigma, delta, ell) = extract_angles(p)?;
    let k = p.complex();
    let charts = (0..k.vertex_count())
        .map(|v| geometric_chart(&cone_angles_at(k, &sigma, &delta, v), &cone_directions(p, v)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ModuliPoint { sigma, delta, charts, ell })
}

/// `x ↦ rotation · x + translation` with `det rotation = +1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidMotion {
    pub rotation: Matrix3<f64>,
    pub translation: Vector3<f64>,
}

impl RigidMotion {
    pub fn identity() -> Self {
        RigidMotion { rotation: Matrix3::identity(), translation: Vector3::zeros() }
    }

    pub fn apply(&self, p: &Point) -> Point {
        self.rotation * p + self.translation
    }
}

fn frame(a: &Point, b: &Point, c: &Point) -> Option<Matrix3<f64>> {
    let e1 = (b - a).try_normalize(0.0)?;
    let side = c - a;
    let e2 = (side - e1 * e1.dot(&side)).try_normalize(0.0)?;
    Some(Matrix3::from_columns(&[e1, e2, e1.cross(&e2)]))
}

/// The proper rigid motion taking `source[i]` to `target[i]`.
///
/// In space every congruence between two labelled triangles, mirror images
/// included, is realized by a rotation followed by a translation.
pub fn rigid_motion_from_point_triples(source: &[Point; 3], target: &[Point; 3]) -> Result<RigidMotion> {
    let scale = diameter(source).max(diameter(target)).max(1.0);
    let collinear = |t: &[Point; 3]| {
        let d = diameter(t);
        (t[1] - t[0]).cross(&(t[2] - t[0])).norm() <= 1e-12 * d * d
    };
    if collinear(source) || collinear(target) {
        return Err(Error::Collinear);
    }
    let mut mismatch = 0.0f64;
    for (i, j) in [(0, 1), (1, 2), (0, 2)] {
        mismatch = mismatch.max(libm::fabs((source[i] - source[j]).norm() - (target[i] - target[j]).norm()));
    }
    if mismatch > 1e-9 * scale {
        return Err(Error::NotCongruent { mismatch });
    }
    let (Some(fs), Some(ft)) = (frame(&source[0], &source[1], &source[2]), frame(&target[0], &target[1], &target[2]))
    else {
        return Err(Error::Collinear);
    };
    let rotation = ft * fs.transpose();
    Ok(RigidMotion { rotation, translation: target[0] - rotation * source[0] })
}

/// Least-squares orientation-preserving similarity `s R x + t` taking the
/// points `source` onto `target`; the scale is fixed to 1 when
/// `with_scale` is false.
pub(crate) fn fit_similarity(source: &[Point], target: &[Point], with_scale: bool) -> (f64, RigidMotion) {
    let n = source.len() as f64;
    let cs = source.iter().fold(Point::zeros(), |s, p| s + p) / n;
    let ct = target.iter().fold(Point::zeros(), |s, p| s + p) / n;
    let mut cov = Matrix3::zeros();
    let mut var = 0.0;
    for (x, y) in source.iter().zip(target) {
        let (x, y) = (x - cs, y - ct);
        cov += y * x.transpose();
        var += x.norm_squared();
    }
    let svd = cov.svd(true, true);
    let (Some(u), Some(v_t)) = (svd.u, svd.v_t) else {
        return (1.0, RigidMotion::identity());
    };
    let sign = if (u * v_t).determinant() < 0.0 { -1.0 } else { 1.0 };
    let s = Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, sign));
    let rotation = u * s * v_t;
    let scale = if with_scale && var > 0.0 {
        (svd.singular_values[0] + svd.singular_values[1] + sign * svd.singular_values[2]) / var
    } else {
        1.0
    };
    (scale, RigidMotion { rotation, translation: ct - scale * (rotation * cs) })
}

/// Result of [`similarity_compare`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityMatch {
    pub similar: bool,
    /// Factor taking the first polyhedron to the size of the second.
    pub scale: f64,
    /// Largest vertex deviation after the best alignment.
    pub residual: f64,
}

/// Best orientation-preserving similarity taking `p1` onto `p2` vertex by
/// vertex; similar iff the largest deviation is at most `1e-6` times the
/// diameter of `p2`.
pub fn similarity_compare(p1: &PolyhedronEmbedding, p2: &PolyhedronEmbedding) -> Result<SimilarityMatch> {
    if p1.complex() != p2.complex() {
        return Err(Error::CombinatoricMismatch);
    }
    let (scale, motion) = fit_similarity(p1.coords(), p2.coords(), true);
    let residual = p1
        .coords()
        .iter()
        .zip(p2.coords())
        .map(|(x, y)| (scale * (motion.rotation * x) + motion.translation - y).norm())
        .fold(0.0f64, f64::max);
    Ok(SimilarityMatch { similar: residual <= 1e-6 * p2.diameter(), scale, residual })
}

#[cfg(test)]
mod tests {
    use approx::assert_abs_diff_eq;
    use nalgebra::Rotation3;
    use proptest::prelude::*;

    use super::*;
    use crate::complex::build_complex;
    use crate::shapes;

    /// Interior dihedral angle through outward face normals: `π − ∠(n1, n2)`.
    fn normal_dihedral(p: &PolyhedronEmbedding, e: usize) -> f64 {
        let k = p.complex();
        let normal = |f: usize| {
            let [a, b, c] = k.faces()[f].map(|v| p.coords()[v]);
            (b - a).cross(&(c - a)).normalize()
        };
        let [f, g] = k.edge_faces(e);
        PI - normal(f).dot(&normal(g)).clamp(-1.0, 1.0).acos()
    }

    #[test]
    fn regular_solids() {
        let third = (1.0f64 / 3.0).acos();
        assert_abs_diff_eq!(third, 1.230_959_417_340_774_7, epsilon = 1e-15);
        for (p, d) in [(shapes::regular_tetrahedron(), third), (shapes::regular_octahedron(), (-1.0f64 / 3.0).acos())] {
            let (sigma, delta, ell) = extract_angles(&p).unwrap();
            for s in sigma.as_slice() {
                assert_abs_diff_eq!(*s, PI / 3.0, epsilon = 1e-14);
            }
            for (e, x) in delta.as_slice().iter().enumerate() {
                assert_abs_diff_eq!(*x, d, epsilon = 1e-14);
                assert_abs_diff_eq!(*x, normal_dihedral(&p, e), epsilon = 1e-12);
            }
            assert!(ell.as_slice().iter().all(|x| (x - ell[0]).abs() < 1e-14));
        }
    }

    #[test]
    fn cube_with_diagonals_has_flat_edges() {
        let p = shapes::diagonal_cube();
        let (_, delta, ell) = extract_angles(&p).unwrap();
        let mut flat = 0;
        for e in 0..p.complex().edge_count() {
            if (ell[e] - 2f64.sqrt()).abs() < 1e-12 {
                assert_abs_diff_eq!(delta[e], PI, epsilon = 1e-12);
                flat += 1;
            } else {
                assert_abs_diff_eq!(delta[e], PI / 2.0, epsilon = 1e-12);
            }
        }
        assert_eq!(flat, 6);
    }

    #[test]
    fn mirror_image_turns_dihedral_reflex() {
        let p = shapes::regular_tetrahedron();
        let m = p.map_points(|x| Point::new(-x.x, x.y, x.z)).unwrap();
        let (_, delta, _) = extract_angles(&m).unwrap();
        for d in delta.as_slice() {
            assert_abs_diff_eq!(*d, 2.0 * PI - (1.0f64 / 3.0).acos(), epsilon = 1e-13);
        }
    }

    #[test]
    fn invalid_embeddings() {
        let (v, f) = shapes::tetrahedron_faces();
        let k = build_complex(v, &f).unwrap();
        let flat = alloc::vec![Point::new(0.0, 0.0, 0.0), Point::new(1.0, 0.0, 0.0), Point::new(2.0, 0.0, 0.0), Point::new(0.0, 1.0, 1.0)];
        assert!(matches!(PolyhedronEmbedding::new(k.clone(), flat), Err(Error::DegenerateFace { .. })));
        assert!(matches!(
            PolyhedronEmbedding::new(k.clone(), alloc::vec![Point::zeros(); 3]),
            Err(Error::SizeMismatch { .. })
        ));
        // all four points in a plane: edges fold flat
        let planar = alloc::vec![Point::new(0.0, 0.0, 0.0), Point::new(1.0, 0.0, 0.0), Point::new(0.0, 1.0, 0.0), Point::new(1.0, 1.0, 0.0)];
        let p = PolyhedronEmbedding::new(k, planar).unwrap();
        assert!(matches!(extract_angles(&p), Err(Error::ZeroDihedral { .. })));
    }

    #[test]
    fn point_triples() {
        let t = [Point::new(0.0, 0.0, 0.0), Point::new(2.0, 0.0, 0.0), Point::new(0.3, 1.1, 0.0)];
        let m = rigid_motion_from_point_triples(&t, &t).unwrap();
        assert!((m.rotation - Matrix3::identity()).norm() < 1e-15);
        assert!(m.translation.norm() < 1e-15);

        let r = Rotation3::from_axis_angle(&Vector3::z_axis(), PI / 2.0);
        let rotated = t.map(|p| r * p);
        let m = rigid_motion_from_point_triples(&t, &rotated).unwrap();
        assert!((m.rotation - r.matrix()).norm() < 1e-12);

        // a mirrored scalene triple is reached by a proper rotation
        let mirrored = t.map(|p| Point::new(p.x, -p.y, p.z));
        let m = rigid_motion_from_point_triples(&t, &mirrored).unwrap();
        assert_abs_diff_eq!(m.rotation.determinant(), 1.0, epsilon = 1e-12);
        for i in 0..3 {
            assert!((m.apply(&t[i]) - mirrored[i]).norm() < 1e-12);
        }

        let stretched = [t[0], t[1] * 1.1, t[2]];
        assert!(matches!(rigid_motion_from_point_triples(&t, &stretched), Err(Error::NotCongruent { .. })));
        let line = [Point::zeros(), Point::x(), Point::x() * 2.0];
        assert!(matches!(rigid_motion_from_point_triples(&line, &line), Err(Error::Collinear)));
    }

    #[test]
    fn similarity_examples() {
        let p = shapes::regular_icosahedron();
        let r = Rotation3::from_euler_angles(0.3, -1.1, 2.0);
        let q = p.map_points(|x| 3.0 * (r * x) + Vector3::new(1.0, -2.0, 0.5)).unwrap();
        let m = similarity_compare(&p, &q).unwrap();
        assert!(m.similar);
        assert_abs_diff_eq!(m.scale, 3.0, epsilon = 1e-12);

        let t = shapes::regular_tetrahedron();
        // relabel-free mirror: same vertex correspondence, reflected points
        let mirror = t.map_points(|x| Point::new(x.x, x.y, -x.z)).unwrap();
        assert!(!similarity_compare(&t, &mirror).unwrap().similar);
        assert!(matches!(similarity_compare(&t, &p), Err(Error::CombinatoricMismatch)));
    }

    #[test]
    fn geometric_points_solve_the_full_system() {
        for p in [
            shapes::regular_tetrahedron(),
            shapes::regular_icosahedron(),
            shapes::scattered_seven_vertex_torus(),
        ] {
            let point = moduli_point(&p).unwrap();
            let r = crate::moduli::g_full(p.complex(), &point).unwrap();
            assert!(crate::intrinsic::max_norm(&r) < 1e-12);
        }
        // on convex solids the geometric charts are the lifted ones
        let p = shapes::regular_octahedron();
        let point = moduli_point(&p).unwrap();
        for v in 0..6 {
            let lifted = crate::cones::lift_cone(&cone_angles_at(p.complex(), &point.sigma, &point.delta, v)).unwrap();
            for (a, b) in lifted.alpha.iter().zip(&point.charts[v].alpha) {
                assert_abs_diff_eq!(a, b, epsilon = 1e-12);
            }
            assert_eq!(lifted.branches, point.charts[v].branches);
        }
    }

    proptest! {
        #[test]
        fn triples_map_exactly(
            pts in prop::array::uniform3(prop::array::uniform3(-2.0f64..2.0)),
            angles in prop::array::uniform3(-3.0f64..3.0),
            shift in prop::array::uniform3(-5.0f64..5.0),
        ) {
            let src = pts.map(|p| Point::new(p[0], p[1], p[2]));
            prop_assume!((src[1] - src[0]).cross(&(src[2] - src[0])).norm() > 1e-2);
            let r = Rotation3::from_euler_angles(angles[0], angles[1], angles[2]);
            let dst = src.map(|p| r * p + Vector3::new(shift[0], shift[1], shift[2]));
            let m = rigid_motion_from_point_triples(&src, &dst).unwrap();
            prop_assert!((m.rotation.determinant() - 1.0).abs() < 1e-12);
            for i in 0..3 {
                prop_assert!((m.apply(&src[i]) - dst[i]).norm() < 1e-10);
            }
        }
    }
}
