//! Euclidean triangles as the zero set of three analytic equations in the
//! side lengths and their opposite angles.

use core::f64::consts::PI;

use libm::{cos, sin};

use crate::error::{Error, Result};
use crate::tolerance::{clamped_acos, ACOS_CLAMP};

/// Sides `a, b, c` with opposite angles `alpha, beta, gamma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EuclideanTriangle {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl EuclideanTriangle {
    pub fn new(a: f64, b: f64, c: f64, alpha: f64, beta: f64, gamma: f64) -> Self {
        EuclideanTriangle { a, b, c, alpha, beta, gamma }
    }

    pub fn as_array(&self) -> [f64; 6] {
        [self.a, self.b, self.c, self.alpha, self.beta, self.gamma]
    }

    pub fn from_array(x: [f64; 6]) -> Self {
        EuclideanTriangle::new(x[0], x[1], x[2], x[3], x[4], x[5])
    }
}

/// `(a cos β + b cos α − c, b sin α − a sin β, α + β + γ − π)`.
pub fn g_delta(t: &EuclideanTriangle) -> [f64; 3] {
    [
        t.a * cos(t.beta) + t.b * cos(t.alpha) - t.c,
        t.b * sin(t.alpha) - t.a * sin(t.beta),
        t.alpha + t.beta + t.gamma - PI,
    ]
}

/// Analytic 3×6 Jacobian of [`g_delta`], columns `a, b, c, α, β, γ`.
pub fn jac_g_delta(t: &EuclideanTriangle) -> [[f64; 6]; 3] {
    let (sa, ca) = (sin(t.alpha), cos(t.alpha));
    let (sb, cb) = (sin(t.beta), cos(t.beta));
    [
        [cb, ca, -1.0, -t.b * sa, -t.a * sb, 0.0],
        [-sb, sa, 0.0, t.b * ca, -t.a * cb, 0.0],
        [0.0, 0.0, 0.0, 1.0, 1.0, 1.0],
    ]
}

/// Angles opposite to `a`, `b`, `c` by the law of cosines.
pub fn solve_triangle_from_lengths(a: f64, b: f64, c: f64) -> Result<(f64, f64, f64)> {
    let degenerate = Error::DegenerateTriangle { a, b, c };
    let finite = a.is_finite() && b.is_finite() && c.is_finite();
    if !finite || a <= 0.0 || b <= 0.0 || c <= 0.0 || a >= b + c || b >= a + c || c >= a + b {
        return Err(degenerate);
    }
    let angle = |opp: f64, x: f64, y: f64| clamped_acos((x * x + y * y - opp * opp) / (2.0 * x * y));
    let alpha = angle(a, b, c).ok_or(degenerate.clone())?;
    let beta = angle(b, c, a).ok_or(degenerate.clone())?;
    let gamma = angle(c, a, b).ok_or(degenerate.clone())?;
    if alpha <= ACOS_CLAMP || beta <= ACOS_CLAMP || gamma <= ACOS_CLAMP {
        return Err(degenerate);
    }
    Ok((alpha, beta, gamma))
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

    /// Law of cosines written out independently of the implementation.
    fn law_of_cosines_angle(opp: f64, x: f64, y: f64) -> f64 {
        ((x * x + y * y - opp * opp) / (2.0 * x * y)).acos()
    }

    #[test]
    fn equilateral_residual_vanishes() {
        let t = EuclideanTriangle::new(1.0, 1.0, 1.0, PI / 3.0, PI / 3.0, PI / 3.0);
        assert!(max_abs(g_delta(&t)) < 1e-15);
    }

    #[test]
    fn three_four_five() {
        let (alpha, beta) = ((3.0f64 / 5.0).asin(), (4.0f64 / 5.0).asin());
        assert_abs_diff_eq!(alpha, law_of_cosines_angle(3.0, 4.0, 5.0), epsilon = 1e-15);
        assert_abs_diff_eq!(beta, law_of_cosines_angle(4.0, 5.0, 3.0), epsilon = 1e-15);
        let t = EuclideanTriangle::new(3.0, 4.0, 5.0, alpha, beta, PI / 2.0);
        assert!(max_abs(g_delta(&t)) < 1e-14);

        let (a, b, c) = solve_triangle_from_lengths(3.0, 4.0, 5.0).unwrap();
        assert_abs_diff_eq!(a, alpha, epsilon = 1e-15);
        assert_abs_diff_eq!(b, beta, epsilon = 1e-15);
        assert_abs_diff_eq!(c, PI / 2.0, epsilon = 1e-15);
    }

    #[test]
    fn angle_sum_violation_shows_in_third_row() {
        let t = EuclideanTriangle::new(1.0, 1.0, 1.0, PI / 2.0, PI / 3.0, PI / 3.0);
        let r = g_delta(&t);
        assert_abs_diff_eq!(r[2], PI / 6.0, epsilon = 1e-15);
        assert!(r[0].abs() > 0.1);
    }

    #[test]
    fn jacobian_entries() {
        let t = EuclideanTriangle::new(1.0, 1.0, 1.0, PI / 3.0, PI / 3.0, PI / 3.0);
        let j = jac_g_delta(&t);
        assert_eq!(j[0][2], -1.0);
        assert_eq!(j[2][0], 0.0);
        assert_eq!(j[2], [0.0, 0.0, 0.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn solve_equilateral_and_degenerate() {
        let (a, b, c) = solve_triangle_from_lengths(1.0, 1.0, 1.0).unwrap();
        for x in [a, b, c] {
            assert_abs_diff_eq!(x, PI / 3.0, epsilon = 1e-15);
        }
        assert!(matches!(solve_triangle_from_lengths(1.0, 1.0, 2.0), Err(Error::DegenerateTriangle { .. })));
        assert!(solve_triangle_from_lengths(1.0, 1.0, 3.0).is_err());
        assert!(solve_triangle_from_lengths(0.0, 1.0, 1.0).is_err());
        assert!(solve_triangle_from_lengths(f64::NAN, 1.0, 1.0).is_err());
    }

    fn lengths() -> impl Strategy<Value = (f64, f64, f64)> {
        (0.2f64..3.0, 0.2f64..3.0, 0.05f64..0.95).prop_map(|(a, b, t)| {
            // c strictly between |a-b| and a+b
            let (lo, hi) = ((a - b).abs(), a + b);
            (a, b, lo + (hi - lo) * t)
        })
    }

    fn finite_difference(t: &EuclideanTriangle) -> [[f64; 6]; 3] {
        let h = 1e-6;
        let mut j = [[0.0; 6]; 3];
        for col in 0..6 {
            let (mut p, mut m) = (t.as_array(), t.as_array());
            p[col] += h;
            m[col] -= h;
            let (gp, gm) = (g_delta(&EuclideanTriangle::from_array(p)), g_delta(&EuclideanTriangle::from_array(m)));
            for row in 0..3 {
                j[row][col] = (gp[row] - gm[row]) / (2.0 * h);
            }
        }
        j
    }

    proptest! {
        #[test]
        fn solved_angles_zero_the_residual((a, b, c) in lengths()) {
            let (alpha, beta, gamma) = solve_triangle_from_lengths(a, b, c).unwrap();
            let t = EuclideanTriangle::new(a, b, c, alpha, beta, gamma);
            prop_assert!(max_abs(g_delta(&t)) < 1e-12);
            for x in [alpha, beta, gamma] {
                prop_assert!(x > 0.0 && x < PI);
            }
            // cyclic relabeling is also a solution
            let rotated = EuclideanTriangle::new(b, c, a, beta, gamma, alpha);
            prop_assert!(max_abs(g_delta(&rotated)) < 1e-12);
            // scaling the sides keeps it a solution
            let scaled = EuclideanTriangle::new(2.5 * a, 2.5 * b, 2.5 * c, alpha, beta, gamma);
            prop_assert!(max_abs(g_delta(&scaled)) < 1e-11);
            // full rank on the solution set
            let j = SMatrix::<f64, 3, 6>::from_fn(|r, c| jac_g_delta(&t)[r][c]);
            let sv = j.singular_values();
            prop_assert!(sv.min() > 1e-8);
        }

        #[test]
        fn jacobian_matches_finite_differences(x in prop::array::uniform6(0.1f64..3.0)) {
            let t = EuclideanTriangle::from_array(x);
            let (ja, jf) = (jac_g_delta(&t), finite_difference(&t));
            for r in 0..3 {
                for c in 0..6 {
                    prop_assert!((ja[r][c] - jf[r][c]).abs() <= 1e-6 * (1.0 + ja[r][c].abs()));
                }
            }
        }
    }
}
