//! Polyhedral cones at a vertex. Intersecting the cone with the unit sphere
//! around its apex gives a spherical polygon `A_1 … A_n` whose sides are the
//! face angles `σ_i` (from `A_i` to `A_{i+1}`) and whose angles are the
//! dihedral angles `δ_i` (at `A_i`). The polygon is cut into the fan of
//! triangles `Δ_m = (A_1, A_{m+1}, A_{m+2})`, `m = 1 … n−2`, with diagonals
//! `c_m = |A_1 A_{m+2}|`; `α_m, β_m, γ_m` are the angles of `Δ_m` at `A_1`,
//! `A_{m+2}` and `A_{m+1}`.
//!
//! Indices in the code are 0-based: `sigma[i]` is `σ_{i+1}`, `alpha[m]` is
//! `α_{m+1}` and so on.

use alloc::vec::Vec;

use libm::{cos, sin};

use crate::angles::{DihedralAngles, SurfaceAngles};
use crate::build::{dihedral, Point};
use crate::complex::Combinatoric;
use crate::error::{Error, Result};
use crate::moduli::{numeric_jacobian, Matrix};
use crate::sphere::{angle_from_three_sides, g_three_raw, side_from_two_sides_and_angle, Branch};
use crate::tolerance::FD_STEP;

/// Below this `|det(u_{i−1}, u_i, u_{i+1})|` three consecutive cone edges
/// count as linearly dependent.
const GENERAL_POSITION: f64 = 1e-9;

/// Face angles and dihedral angles around one vertex, in link order.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeAngles {
    /// `sigma[i]`: the face between link neighbors `i` and `i+1`.
    pub sigma: Vec<f64>,
    /// `delta[i]`: the edge to link neighbor `i`.
    pub delta: Vec<f64>,
}

impl ConeAngles {
    pub fn new(sigma: Vec<f64>, delta: Vec<f64>) -> Result<Self> {
        if sigma.len() != delta.len() {
            return Err(Error::SizeMismatch { expected: sigma.len(), found: delta.len() });
        }
        if sigma.len() < 3 {
            return Err(Error::SizeMismatch { expected: 3, found: sigma.len() });
        }
        Ok(ConeAngles { sigma, delta })
    }

    pub fn valency(&self) -> usize {
        self.sigma.len()
    }
}

/// Auxiliary fan-triangulation variables of one cone.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeChart {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub gamma: Vec<f64>,
    /// The `n−3` interior diagonals.
    pub c: Vec<f64>,
    pub branches: Vec<Branch>,
}

impl ConeChart {
    /// Number of scalar variables, `4n − 9`.
    pub fn variable_count(&self) -> usize {
        self.alpha.len() + self.beta.len() + self.gamma.len() + self.c.len()
    }

    fn fits(&self, n: usize) -> bool {
        self.alpha.len() == n - 2 && self.beta.len() == n - 2 && self.gamma.len() == n - 2 && self.c.len() == n - 3
    }

    pub(crate) fn pack(&self, out: &mut Vec<f64>) {
        out.extend_from_slice(&self.alpha);
        out.extend_from_slice(&self.beta);
        out.extend_from_slice(&self.gamma);
        out.extend_from_slice(&self.c);
    }
}

/// Number of residual rows of a valency-`n` cone, `3(n−2) + n`.
pub fn cone_row_count(n: usize) -> usize {
    4 * n - 6
}

/// Number of chart variables of a valency-`n` cone, `4n − 9`.
pub fn chart_variable_count(n: usize) -> usize {
    4 * n - 9
}

/// Residual of a valency-`n` cone on raw slices; `chart` is `α, β, γ, c`
/// concatenated.
pub(crate) fn cone_residual(sigma: &[f64], delta: &[f64], chart: &[f64], out: &mut Vec<f64>) {
    let n = sigma.len();
    let t = n - 2;
    let (alpha, rest) = chart.split_at(t);
    let (beta, rest) = rest.split_at(t);
    let (gamma, c) = rest.split_at(t);
    // diagonal from A_1 to A_{m+1}: σ_1 for m = 1, σ_n past the last
    let diag = |m: usize| -> f64 {
        if m == 0 {
            sigma[0]
        } else if m == n - 2 {
            sigma[n - 1]
        } else {
            c[m - 1]
        }
    };
    for m in 0..t {
        out.extend_from_slice(&g_three_raw([sigma[m + 1], diag(m), diag(m + 1), alpha[m], beta[m], gamma[m]]));
    }
    out.push(delta[0] - alpha.iter().sum::<f64>());
    out.push(delta[1] - gamma[0]);
    for j in 2..n - 1 {
        out.push(delta[j] - beta[j - 2] - gamma[j - 1]);
    }
    out.push(delta[n - 1] - beta[t - 1]);
}

/// Cone residual: the `g_3` blocks of the fan triangles followed by the `n`
/// rows assembling the dihedral angles from the triangle angles.
pub fn g_n(angles: &ConeAngles, chart: &ConeChart) -> Result<Vec<f64>> {
    let n = angles.valency();
    if !chart.fits(n) {
        return Err(Error::SizeMismatch { expected: chart_variable_count(n), found: chart.variable_count() });
    }
    let mut packed = Vec::with_capacity(chart_variable_count(n));
    chart.pack(&mut packed);
    let mut out = Vec::with_capacity(cone_row_count(n));
    cone_residual(&angles.sigma, &angles.delta, &packed, &mut out);
    Ok(out)
}

/// Recovers the chart from the angles by walking the fan: each triangle's
/// angle at `A_{m+1}` is what remains of `δ_{m+1}` after the previous
/// triangle, which with two known sides fixes the next diagonal.
pub fn lift_cone(angles: &ConeAngles) -> Result<ConeChart> {
    let n = angles.valency();
    if n < 3 || angles.delta.len() != n {
        return Err(Error::SizeMismatch { expected: n.max(3), found: angles.delta.len() });
    }
    let (s, d) = (&angles.sigma, &angles.delta);
    let t = n - 2;
    let mut chart = ConeChart {
        alpha: Vec::with_capacity(t),
        beta: Vec::with_capacity(t),
        gamma: Vec::with_capacity(t),
        c: Vec::with_capacity(t.saturating_sub(1)),
        branches: Vec::with_capacity(t),
    };
    let mut previous_diagonal = s[0];
    for m in 0..t {
        let gamma = if m == 0 { d[1] } else { d[m + 1] - chart.beta[m - 1] };
        let branch = Branch::of(gamma).ok_or_else(|| {
            Error::DegenerateCone(alloc::format!("angle {gamma} of fan triangle {} is not on a branch", m + 1))
        })?;
        let diagonal = if m + 1 == t {
            s[n - 1]
        } else {
            side_from_two_sides_and_angle(s[m + 1], previous_diagonal, gamma)
                .map_err(|e| Error::DegenerateCone(alloc::format!("diagonal {}: {e}", m + 1)))?
        };
        let opposite = |x, y, z| {
            angle_from_three_sides(x, y, z, branch)
                .map_err(|e| Error::DegenerateCone(alloc::format!("fan triangle {}: {e}", m + 1)))
        };
        chart.alpha.push(opposite(s[m + 1], previous_diagonal, diagonal)?);
        chart.beta.push(opposite(previous_diagonal, diagonal, s[m + 1])?);
        chart.gamma.push(gamma);
        chart.branches.push(branch);
        if m + 1 < t {
            chart.c.push(diagonal);
        }
        previous_diagonal = diagonal;
    }
    Ok(chart)
}

/// Lift, then test the residual.
pub fn check_cone_membership(angles: &ConeAngles, tol: f64) -> bool {
    let in_range = angles.sigma.iter().all(|&x| x > 0.0 && x < core::f64::consts::PI)
        && angles.delta.iter().all(|&x| x > 0.0 && x < 2.0 * core::f64::consts::PI);
    if !in_range {
        return false;
    }
    match lift_cone(angles).and_then(|chart| g_n(angles, &chart)) {
        Ok(r) => crate::intrinsic::max_norm(&r) <= tol,
        Err(_) => false,
    }
}

fn on_sphere(colatitude: f64, longitude: f64) -> Point {
    Point::new(sin(colatitude) * cos(longitude), sin(colatitude) * sin(longitude), cos(colatitude))
}

/// Unit edge directions `u_1 … u_n` of the cone. `u_1` is the north pole,
/// `u_2` lies in the half-plane of longitude zero and each further `u_{i+1}`
/// sits at distance `c_{i−1}` from `u_1`, turned by `α_{i−1}` from `u_i`.
pub fn realize_cone(angles: &ConeAngles, chart: &ConeChart) -> Result<Vec<Point>> {
    let n = angles.valency();
    if !chart.fits(n) {
        return Err(Error::SizeMismatch { expected: chart_variable_count(n), found: chart.variable_count() });
    }
    let mut u = Vec::with_capacity(n);
    u.push(Point::z());
    u.push(on_sphere(angles.sigma[0], 0.0));
    let mut longitude = 0.0;
    for m in 0..n - 2 {
        longitude -= chart.alpha[m];
        let colatitude = if m + 1 == n - 2 { angles.sigma[n - 1] } else { chart.c[m] };
        u.push(on_sphere(colatitude, longitude));
    }
    for i in 0..n {
        let (a, b, c) = ((i + n - 1) % n, i, (i + 1) % n);
        let det = u[a].dot(&u[b].cross(&u[c]));
        if !(libm::fabs(det) >= GENERAL_POSITION) {
            return Err(Error::NotInGeneralPosition { first: a, second: b, third: c });
        }
    }
    Ok(u)
}

/// Face and dihedral angles of the cone spanned by unit vectors `u` in
/// cyclic order, with the orientation convention of the surface extraction.
pub fn cone_angles_from_vectors(u: &[Point]) -> Result<ConeAngles> {
    let n = u.len();
    let mut sigma = Vec::with_capacity(n);
    let mut delta = Vec::with_capacity(n);
    for i in 0..n {
        let (prev, next) = (&u[(i + n - 1) % n], &u[(i + 1) % n]);
        sigma.push(libm::atan2(u[i].cross(next).norm(), u[i].dot(next)));
        delta.push(dihedral(&Point::zeros(), &u[i], next, prev));
    }
    ConeAngles::new(sigma, delta)
}

/// Chart of the cone with unit edge directions `u`, read off the geometry.
///
/// Each fan triangle takes its interior angles when it has the orientation
/// of a convex cone and their complements in `2π` otherwise. Where the
/// assembly rows then hold only modulo `2π`, the angle they determine is
/// shifted by a multiple of `2π`, so the result may leave `(0, 2π)`. The
/// residual vanishes either way, as the triangle rows are `2π`-periodic.
pub fn geometric_chart(angles: &ConeAngles, u: &[Point]) -> Result<ConeChart> {
    let n = angles.valency();
    if u.len() != n {
        return Err(Error::SizeMismatch { expected: n, found: u.len() });
    }
    let t = n - 2;
    let side = |a: &Point, b: &Point| libm::atan2(a.cross(b).norm(), a.dot(b));
    let mut chart = ConeChart {
        alpha: Vec::with_capacity(t),
        beta: Vec::with_capacity(t),
        gamma: Vec::with_capacity(t),
        c: (1..t).map(|m| side(&u[0], &u[m + 1])).collect(),
        branches: Vec::with_capacity(t),
    };
    for m in 0..t {
        let (a, b, c) = (side(&u[m + 1], &u[m + 2]), side(&u[0], &u[m + 1]), side(&u[0], &u[m + 2]));
        // realized convex cones run clockwise seen from outside
        let branch = if u[0].dot(&u[m + 1].cross(&u[m + 2])) < 0.0 { Branch::Lower } else { Branch::Upper };
        let angle = |x, y, z| {
            angle_from_three_sides(x, y, z, branch)
                .map_err(|e| Error::DegenerateCone(alloc::format!("fan triangle {}: {e}", m + 1)))
        };
        chart.alpha.push(angle(a, b, c)?);
        chart.beta.push(angle(b, c, a)?);
        chart.gamma.push(angle(c, a, b)?);
        chart.branches.push(branch);
    }
    let d = &angles.delta;
    let shift = |value: &mut f64, target: f64| -> Result<()> {
        let turns = libm::round((target - *value) / (2.0 * core::f64::consts::PI));
        let adjusted = *value + turns * 2.0 * core::f64::consts::PI;
        if libm::fabs(adjusted - target) > 1e-7 {
            return Err(Error::DegenerateCone(alloc::format!("cone angles disagree with its edges by {}", adjusted - target)));
        }
        *value = target;
        Ok(())
    };
    shift(&mut chart.gamma[0], d[1])?;
    for j in 2..n - 1 {
        let target = d[j] - chart.beta[j - 2];
        shift(&mut chart.gamma[j - 1], target)?;
    }
    shift(&mut chart.beta[t - 1], d[n - 1])?;
    let rest: f64 = chart.alpha[1..].iter().sum();
    shift(&mut chart.alpha[0], d[0] - rest)?;
    Ok(chart)
}

/// Cone angles at vertex `v`, read off the global maps through its link.
pub fn cone_angles_at(k: &Combinatoric, sigma: &SurfaceAngles, delta: &DihedralAngles, v: usize) -> ConeAngles {
    let link = k.link(v);
    ConeAngles {
        sigma: link.iter().map(|s| sigma[s.corner]).collect(),
        delta: link.iter().map(|s| delta[s.edge]).collect(),
    }
}

/// Stacked cone residuals of all vertices in ascending order.
pub fn g_le(
    k: &Combinatoric,
    sigma: &SurfaceAngles,
    delta: &DihedralAngles,
    charts: &[ConeChart],
) -> Result<Vec<f64>> {
    sigma.check_len(k)?;
    delta.check_len(k)?;
    let mut out = Vec::new();
    for v in 0..k.vertex_count() {
        let chart = charts.get(v).ok_or(Error::MissingChart { vertex: v })?;
        out.extend(g_n(&cone_angles_at(k, sigma, delta, v), chart)?);
    }
    Ok(out)
}

/// Charts of every vertex by [`lift_cone`].
pub fn lift_all(k: &Combinatoric, sigma: &SurfaceAngles, delta: &DihedralAngles) -> Result<Vec<ConeChart>> {
    (0..k.vertex_count()).map(|v| lift_cone(&cone_angles_at(k, sigma, delta, v))).collect()
}

/// Central-difference Jacobian of [`g_n`] in the variables
/// `σ, δ, α, β, γ, c`; shape `(4n−6) × (6n−9)`.
pub fn jacobian_g_n(angles: &ConeAngles, chart: &ConeChart) -> Result<Matrix> {
    let n = angles.valency();
    if !chart.fits(n) {
        return Err(Error::SizeMismatch { expected: chart_variable_count(n), found: chart.variable_count() });
    }
    let mut x = Vec::with_capacity(6 * n - 9);
    x.extend_from_slice(&angles.sigma);
    x.extend_from_slice(&angles.delta);
    chart.pack(&mut x);
    Ok(numeric_jacobian(
        |y| {
            let mut out = Vec::with_capacity(cone_row_count(n));
            cone_residual(&y[..n], &y[n..2 * n], &y[2 * n..], &mut out);
            out
        },
        &x,
        FD_STEP,
    ))
}

#[cfg(test)]
mod tests {
    use core::f64::consts::PI;

    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    use super::*;
    use crate::build::extract_angles;
    use crate::intrinsic::max_norm;
    use crate::moduli::numeric_nullity;
    use crate::shapes;

    const H: f64 = PI / 2.0;

    fn cube_corner() -> ConeAngles {
        ConeAngles::new(vec![H; 3], vec![H; 3]).unwrap()
    }

    #[test]
    fn cube_corner_examples() {
        let chart = lift_cone(&cube_corner()).unwrap();
        for x in [&chart.alpha, &chart.beta, &chart.gamma] {
            assert_abs_diff_eq!(x[0], H, epsilon = 1e-15);
        }
        assert!(chart.c.is_empty());
        let r = g_n(&cube_corner(), &chart).unwrap();
        assert_eq!(r.len(), 6);
        assert!(max_norm(&r) < 1e-15);
        assert!(check_cone_membership(&cube_corner(), 1e-9));

        let bent = ConeAngles::new(vec![H; 3], vec![H, H, PI / 4.0]).unwrap();
        let r = g_n(&bent, &chart).unwrap();
        assert_abs_diff_eq!(r[5], -PI / 4.0, epsilon = 1e-15);
        assert!(!check_cone_membership(&bent, 1e-9));

        let u = realize_cone(&cube_corner(), &chart).unwrap();
        assert!((u[0] - Point::z()).norm() < 1e-15);
        assert!((u[1] - Point::x()).norm() < 1e-15);
        for i in 0..3 {
            assert_abs_diff_eq!(u[i].dot(&u[(i + 1) % 3]), 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn regular_tetrahedron_vertex() {
        // spherical law of cosines on the vertex figure: cos δ = 1/3
        let d = ((PI / 3.0).cos() - (PI / 3.0).cos().powi(2)) / (PI / 3.0).sin().powi(2);
        assert_abs_diff_eq!(d, 1.0 / 3.0, epsilon = 1e-15);
        let angles = ConeAngles::new(vec![PI / 3.0; 3], vec![d.acos(); 3]).unwrap();
        let chart = ConeChart {
            alpha: vec![d.acos()],
            beta: vec![d.acos()],
            gamma: vec![d.acos()],
            c: vec![],
            branches: vec![Branch::Lower],
        };
        assert!(max_norm(&g_n(&angles, &chart).unwrap()) < 1e-15);
        let u = realize_cone(&angles, &chart).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { 1.0 } else { 0.5 };
                assert_abs_diff_eq!(u[i].dot(&u[j]), expected, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn octahedron_vertex() {
        let angles = ConeAngles::new(vec![PI / 3.0; 4], vec![(-1.0f64 / 3.0).acos(); 4]).unwrap();
        let chart = lift_cone(&angles).unwrap();
        // cos c_1 = cos²(π/3) + sin²(π/3)·(−1/3) = 0
        assert_abs_diff_eq!(chart.c[0], H, epsilon = 1e-15);
        let r = g_n(&angles, &chart).unwrap();
        assert_eq!(r.len(), 10);
        assert!(max_norm(&r) < 1e-12);
        let (nullity, _) = numeric_nullity(&jacobian_g_n(&angles, &chart).unwrap(), 1e-7).unwrap();
        assert_eq!(nullity, 5);
    }

    #[test]
    fn icosahedron_vertices_from_coordinates() {
        let p = shapes::regular_icosahedron();
        let (sigma, delta, _) = extract_angles(&p).unwrap();
        let k = p.complex();
        for v in 0..k.vertex_count() {
            let angles = cone_angles_at(k, &sigma, &delta, v);
            assert_eq!(angles.valency(), 5);
            let chart = lift_cone(&angles).unwrap();
            assert!(max_norm(&g_n(&angles, &chart).unwrap()) < 1e-9);
        }
    }

    #[test]
    fn cones_of_solids_match_their_coordinates() {
        for p in [shapes::regular_tetrahedron(), shapes::regular_octahedron(), shapes::regular_icosahedron()] {
            let (sigma, delta, _) = extract_angles(&p).unwrap();
            let k = p.complex();
            for v in 0..k.vertex_count() {
                let link = k.link(v);
                let u: Vec<Point> =
                    link.iter().map(|s| (p.coords()[s.neighbor] - p.coords()[v]).normalize()).collect();
                let from_vectors = cone_angles_from_vectors(&u).unwrap();
                let from_surface = cone_angles_at(k, &sigma, &delta, v);
                for i in 0..link.len() {
                    assert_abs_diff_eq!(from_vectors.sigma[i], from_surface.sigma[i], epsilon = 1e-13);
                    assert_abs_diff_eq!(from_vectors.delta[i], from_surface.delta[i], epsilon = 1e-13);
                }
                // the realized cone is congruent to the actual one
                let chart = lift_cone(&from_surface).unwrap();
                let w = realize_cone(&from_surface, &chart).unwrap();
                for i in 0..w.len() {
                    for j in 0..w.len() {
                        assert_abs_diff_eq!(w[i].dot(&w[j]), u[i].dot(&u[j]), epsilon = 1e-12);
                    }
                    assert_abs_diff_eq!(w[i].dot(&w[(i + 1) % w.len()].cross(&w[(i + 2) % w.len()])).signum(),
                        u[i].dot(&u[(i + 1) % u.len()].cross(&u[(i + 2) % u.len()])).signum());
                }
            }
        }
    }

    #[test]
    fn assembled_systems_of_solids() {
        for (p, len) in [(shapes::regular_tetrahedron(), 24), (shapes::regular_octahedron(), 60)] {
            let (sigma, delta, _) = extract_angles(&p).unwrap();
            let k = p.complex();
            let charts = lift_all(k, &sigma, &delta).unwrap();
            let r = g_le(k, &sigma, &delta, &charts).unwrap();
            assert_eq!(r.len(), len);
            assert!(max_norm(&r) < 1e-12);
            assert!(matches!(g_le(k, &sigma, &delta, &charts[1..]), Err(Error::MissingChart { .. })));

            // one shared δ moves only the two cones on that edge
            let mut bent = delta.clone();
            bent.0[0] += 1e-3;
            let r = g_le(k, &sigma, &bent, &charts).unwrap();
            let [a, b] = k.edges()[0];
            let mut offset = 0;
            for v in 0..k.vertex_count() {
                let rows = cone_row_count(k.valency(v));
                let block = max_norm(&r[offset..offset + rows]);
                assert_eq!(block > 1e-4, v == a || v == b, "vertex {v}");
                offset += rows;
            }
        }
    }

    #[test]
    fn degenerate_lifts() {
        let flat = ConeAngles::new(vec![H; 3], vec![H, PI, H]).unwrap();
        assert!(matches!(lift_cone(&flat), Err(Error::DegenerateCone(_))));
        assert!(!check_cone_membership(&flat, 1e-9));
        assert!(ConeAngles::new(vec![H; 3], vec![H; 2]).is_err());
        let chart = lift_cone(&cube_corner()).unwrap();
        let four = ConeAngles::new(vec![H; 4], vec![H; 4]).unwrap();
        assert!(matches!(g_n(&four, &chart), Err(Error::SizeMismatch { .. })));
    }

    /// Unit vectors on one circle of colatitude below `π/2` at increasing
    /// longitude: a convex cone, or its reflex complement when reversed.
    fn convex_cone(n: usize) -> impl Strategy<Value = Vec<Point>> {
        (prop::collection::vec(0.2f64..1.0, n), 0.3f64..1.3, any::<bool>()).prop_map(
            move |(steps, colatitude, reverse)| {
                let total: f64 = steps.iter().sum();
                let mut longitude = 0.0;
                let mut u: Vec<Point> = steps
                    .iter()
                    .map(|step| {
                        longitude += 2.0 * PI * step / total;
                        on_sphere(colatitude, longitude)
                    })
                    .collect();
                if reverse {
                    u.reverse();
                }
                u
            },
        )
    }

    fn cones_up_to_six() -> impl Strategy<Value = Vec<Point>> {
        (3usize..=6).prop_flat_map(convex_cone)
    }

    proptest! {
        #[test]
        fn lift_and_realize_round_trip(u in cones_up_to_six()) {
            let angles = cone_angles_from_vectors(&u).unwrap();
            let chart = lift_cone(&angles);
            prop_assume!(chart.is_ok());
            let chart = chart.unwrap();
            let r = g_n(&angles, &chart).unwrap();
            prop_assert!(max_norm(&r) < 1e-9);
            let w = realize_cone(&angles, &chart).unwrap();
            let n = u.len();
            for i in 0..n {
                prop_assert!((w[i].dot(&w[(i + 1) % n]) - angles.sigma[i].cos()).abs() < 1e-9);
            }
            let back = cone_angles_from_vectors(&w).unwrap();
            for i in 0..n {
                prop_assert!((back.sigma[i] - angles.sigma[i]).abs() < 1e-9);
                prop_assert!(crate::angles::angle_distance(back.delta[i], angles.delta[i]) < 1e-9);
            }
        }

        #[test]
        fn cone_nullity_is_two_n_minus_three(u in cones_up_to_six()) {
            let angles = cone_angles_from_vectors(&u).unwrap();
            let chart = lift_cone(&angles);
            prop_assume!(chart.is_ok());
            let j = jacobian_g_n(&angles, &chart.unwrap()).unwrap();
            let (nullity, _) = numeric_nullity(&j, 1e-7).unwrap();
            prop_assert_eq!(nullity, 2 * u.len() - 3);
        }

        #[test]
        fn off_manifold_dihedral_is_rejected(u in cones_up_to_six(), slot in 0usize..6, bump in prop::sample::select(vec![-1e-3, 1e-3])) {
            let mut angles = cone_angles_from_vectors(&u).unwrap();
            prop_assume!(check_cone_membership(&angles, 1e-9));
            let i = slot % angles.valency();
            angles.delta[i] += bump;
            prop_assert!(!check_cone_membership(&angles, 1e-6));
        }
    }
}
