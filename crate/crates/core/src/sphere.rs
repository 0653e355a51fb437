//! Spherical triangles through the spherical law of cosines. Angles live on
//! one of two branches: all in `(0, π)` for the small region bounded by the
//! three arcs, all in `(π, 2π)` for its complement.

use core::f64::consts::PI;

use libm::{cos, sin};

use crate::error::{Error, Result};
use crate::tolerance::{clamped_acos, ACOS_CLAMP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// Angles in `(0, π)`.
    Lower,
    /// Angles in `(π, 2π)`.
    Upper,
}

impl Branch {
    /// Branch of a single angle; `None` on the boundary values `0, π, 2π` or
    /// outside `(0, 2π)`.
    pub fn of(angle: f64) -> Option<Branch> {
        if angle > 0.0 && angle < PI {
            Some(Branch::Lower)
        } else if angle > PI && angle < 2.0 * PI {
            Some(Branch::Upper)
        } else {
            None
        }
    }

    /// Maps a principal value in `[0, π]` onto this branch.
    pub fn lift(self, principal: f64) -> f64 {
        match self {
            Branch::Lower => principal,
            Branch::Upper => 2.0 * PI - principal,
        }
    }
}

/// Sides `a, b, c` (radians) with opposite angles `alpha, beta, gamma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalTriangle {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub branch: Branch,
}

impl SphericalTriangle {
    pub fn new(sides: [f64; 3], angles: [f64; 3], branch: Branch) -> Self {
        SphericalTriangle {
            a: sides[0],
            b: sides[1],
            c: sides[2],
            alpha: angles[0],
            beta: angles[1],
            gamma: angles[2],
            branch,
        }
    }

    pub fn as_array(&self) -> [f64; 6] {
        [self.a, self.b, self.c, self.alpha, self.beta, self.gamma]
    }

    /// Sides in `(0, π)` and all angles on the recorded branch.
    pub fn is_in_domain(&self) -> bool {
        [self.a, self.b, self.c].iter().all(|&s| s > 0.0 && s < PI)
            && [self.alpha, self.beta, self.gamma].iter().all(|&x| Branch::of(x) == Some(self.branch))
    }
}

/// The three cyclic spherical-cosine residuals.
pub fn g_three(t: &SphericalTriangle) -> [f64; 3] {
    g_three_raw(t.as_array())
}

pub(crate) fn g_three_raw([a, b, c, alpha, beta, gamma]: [f64; 6]) -> [f64; 3] {
    let (ca, cb, cc) = (cos(a), cos(b), cos(c));
    let (sa, sb, sc) = (sin(a), sin(b), sin(c));
    [
        cb * cc + sb * sc * cos(alpha) - ca,
        cc * ca + sc * sa * cos(beta) - cb,
        ca * cb + sa * sb * cos(gamma) - cc,
    ]
}

/// Analytic 3×6 Jacobian of [`g_three`], columns `a, b, c, α, β, γ`.
pub fn jac_g_three(t: &SphericalTriangle) -> [[f64; 6]; 3] {
    jac_g_three_raw(t.as_array())
}

pub(crate) fn jac_g_three_raw([a, b, c, alpha, beta, gamma]: [f64; 6]) -> [[f64; 6]; 3] {
    let (ca, cb, cc) = (cos(a), cos(b), cos(c));
    let (sa, sb, sc) = (sin(a), sin(b), sin(c));
    let (cal, cbe, cga) = (cos(alpha), cos(beta), cos(gamma));
    [
        [sa, -sb * cc + cb * sc * cal, -cb * sc + sb * cc * cal, -sb * sc * sin(alpha), 0.0, 0.0],
        [-cc * sa + sc * ca * cbe, sb, -sc * ca + cc * sa * cbe, 0.0, -sc * sa * sin(beta), 0.0],
        [-sa * cb + ca * sb * cga, -ca * sb + sa * cb * cga, sc, 0.0, 0.0, -sa * sb * sin(gamma)],
    ]
}

/// Side opposite to the angle `alpha` enclosed by sides `b` and `c`.
pub fn side_from_two_sides_and_angle(b: f64, c: f64, alpha: f64) -> Result<f64> {
    let argument = cos(b) * cos(c) + sin(b) * sin(c) * cos(alpha);
    let degenerate = Error::DegenerateSphericalTriangle { argument };
    if !(b > 0.0 && b < PI && c > 0.0 && c < PI) || !alpha.is_finite() {
        return Err(degenerate);
    }
    if libm::fabs(argument) >= 1.0 - ACOS_CLAMP {
        return Err(degenerate);
    }
    clamped_acos(argument).ok_or(degenerate)
}

/// Angle opposite to side `a`, on the requested branch.
pub fn angle_from_three_sides(a: f64, b: f64, c: f64, branch: Branch) -> Result<f64> {
    let argument = (cos(a) - cos(b) * cos(c)) / (sin(b) * sin(c));
    let degenerate = Error::DegenerateSphericalTriangle { argument };
    let sides_ok = [a, b, c].iter().all(|&s| s > 0.0 && s < PI);
    let inequalities = a < b + c && b < a + c && c < a + b && a + b + c < 2.0 * PI;
    if !sides_ok || !inequalities {
        return Err(degenerate);
    }
    let principal = clamped_acos(argument).ok_or(degenerate.clone())?;
    if principal <= 0.0 || principal >= PI {
        return Err(degenerate);
    }
    Ok(branch.lift(principal))
}

#[cfg(test)]
mod tests {
    use approx::assert_abs_diff_eq;
    use nalgebra::SMatrix;
    use proptest::prelude::*;

    use super::*;

    fn max_abs(r: [f64; 3]) -> f64 {
        r.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    const H: f64 = PI / 2.0;

    #[test]
    fn octant_triangle() {
        let t = SphericalTriangle::new([H; 3], [H; 3], Branch::Lower);
        assert!(max_abs(g_three(&t)) < 1e-15);
        let j = jac_g_three(&t);
        assert_abs_diff_eq!(j[0][3], -1.0, epsilon = 1e-15);
        assert_eq!(j[0][4], 0.0);
        let t = SphericalTriangle::new([H; 3], [H, H, PI / 3.0], Branch::Lower);
        assert_abs_diff_eq!(g_three(&t)[2], 0.5, epsilon = 1e-15);
    }

    #[test]
    fn equilateral_third_sides() {
        // cos α = (cos s − cos² s) / sin² s with s = π/3 gives 1/3
        let s = PI / 3.0;
        let alpha = ((s.cos() - s.cos() * s.cos()) / (s.sin() * s.sin())).acos();
        assert_abs_diff_eq!(alpha, (1.0f64 / 3.0).acos(), epsilon = 1e-15);
        let t = SphericalTriangle::new([s; 3], [alpha; 3], Branch::Lower);
        assert!(max_abs(g_three(&t)) < 1e-15);
        assert_abs_diff_eq!(side_from_two_sides_and_angle(s, s, alpha).unwrap(), s, epsilon = 1e-14);
        assert_abs_diff_eq!(angle_from_three_sides(s, s, s, Branch::Lower).unwrap(), alpha, epsilon = 1e-15);
        assert_abs_diff_eq!(
            angle_from_three_sides(s, s, s, Branch::Upper).unwrap(),
            2.0 * PI - alpha,
            epsilon = 1e-15
        );
        // the upper branch is also a zero of the residual
        let t = SphericalTriangle::new([s; 3], [2.0 * PI - alpha; 3], Branch::Upper);
        assert!(t.is_in_domain());
        assert!(max_abs(g_three(&t)) < 1e-15);
    }

    #[test]
    fn side_solver_edge_cases() {
        assert_abs_diff_eq!(side_from_two_sides_and_angle(H, H, H).unwrap(), H, epsilon = 1e-15);
        assert!(matches!(side_from_two_sides_and_angle(H, H, 0.0), Err(Error::DegenerateSphericalTriangle { .. })));
        assert!(side_from_two_sides_and_angle(H, H, 1e-9).is_err());
        assert!(side_from_two_sides_and_angle(H, H, PI).is_err());
        assert!(side_from_two_sides_and_angle(0.0, H, H).is_err());
        assert_abs_diff_eq!(angle_from_three_sides(H, H, H, Branch::Lower).unwrap(), H, epsilon = 1e-15);
        assert!(angle_from_three_sides(2.0, 0.5, 0.5, Branch::Lower).is_err());
        assert!(angle_from_three_sides(3.0, 3.0, 3.0, Branch::Lower).is_err());
    }

    fn valid_sides() -> impl Strategy<Value = [f64; 3]> {
        prop::array::uniform3(0.1f64..3.0).prop_filter("spherical triangle inequalities", |&[a, b, c]| {
            a < b + c - 0.05 && b < a + c - 0.05 && c < a + b - 0.05 && a + b + c < 2.0 * PI - 0.05
        })
    }

    proptest! {
        #[test]
        fn solved_triangles_are_on_the_zero_set(sides in valid_sides(), upper in any::<bool>()) {
            let branch = if upper { Branch::Upper } else { Branch::Lower };
            let [a, b, c] = sides;
            let angles = [
                angle_from_three_sides(a, b, c, branch).unwrap(),
                angle_from_three_sides(b, c, a, branch).unwrap(),
                angle_from_three_sides(c, a, b, branch).unwrap(),
            ];
            let t = SphericalTriangle::new(sides, angles, branch);
            prop_assert!(t.is_in_domain());
            prop_assert!(max_abs(g_three(&t)) < 1e-12);
            let rotated = SphericalTriangle::new([b, c, a], [angles[1], angles[2], angles[0]], branch);
            prop_assert!(max_abs(g_three(&rotated)) < 1e-12);
            let j = SMatrix::<f64, 3, 6>::from_fn(|r, col| jac_g_three(&t)[r][col]);
            prop_assert!(j.singular_values().min() > 1e-8);
            let sides_block = SMatrix::<f64, 3, 3>::from_fn(|r, col| jac_g_three(&t)[r][col]);
            prop_assert!(sides_block.singular_values().min() > 1e-8);
        }

        #[test]
        fn side_then_angle_round_trip(b in 0.2f64..2.9, c in 0.2f64..2.9, alpha in 0.1f64..3.0) {
            let a = side_from_two_sides_and_angle(b, c, alpha).unwrap();
            let back = angle_from_three_sides(a, b, c, Branch::Lower).unwrap();
            prop_assert!((back - alpha).abs() < 1e-10, "{back} vs {alpha}");
        }

        #[test]
        fn jacobian_matches_finite_differences(x in prop::array::uniform6(0.1f64..6.0)) {
            let h = 1e-6;
            let ja = jac_g_three_raw(x);
            for col in 0..6 {
                let (mut p, mut m) = (x, x);
                p[col] += h;
                m[col] -= h;
                let (gp, gm) = (g_three_raw(p), g_three_raw(m));
                for r in 0..3 {
                    let fd = (gp[r] - gm[r]) / (2.0 * h);
                    prop_assert!((fd - ja[r][col]).abs() <= 1e-6 * (1.0 + ja[r][col].abs()));
                }
            }
        }
    }
}
