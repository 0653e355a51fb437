//! Per-simplex data on a combinatoric: face angles on corners, lengths and
//! dihedral angles on edges. Values are indexed by corner id and edge id of
//! the [`Combinatoric`].

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::complex::Combinatoric;
use crate::error::{Error, Result};

macro_rules! per_simplex {
    ($(#[$doc:meta])* $name:ident, $count:ident, $what:literal) => {
        $(#[$doc])*
        #[derive(Debug, Clone, PartialEq)]
        pub struct $name(pub Vec<f64>);

        impl $name {
            pub fn new(k: &Combinatoric, values: Vec<f64>) -> Result<Self> {
                if values.len() != k.$count() {
                    return Err(Error::MissingEntry(format!(
                        "{} has {} values, complex needs {}",
                        $what,
                        values.len(),
                        k.$count()
                    )));
                }
                Ok($name(values))
            }

            pub fn as_slice(&self) -> &[f64] {
                &self.0
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub(crate) fn check_len(&self, k: &Combinatoric) -> Result<()> {
                if self.0.len() == k.$count() {
                    Ok(())
                } else {
                    Err(Error::MissingEntry(format!(
                        "{} has {} values, complex needs {}",
                        $what,
                        self.0.len(),
                        k.$count()
                    )))
                }
            }
        }

        impl core::ops::Index<usize> for $name {
            type Output = f64;
            fn index(&self, i: usize) -> &f64 {
                &self.0[i]
            }
        }
    };
}

per_simplex!(
    /// Face angles `σ`, one per corner, in `(0, π)`.
    SurfaceAngles,
    corner_count,
    "surface angles"
);
per_simplex!(
    /// Edge lengths, one per edge, positive.
    EdgeLengths,
    edge_count,
    "edge lengths"
);
per_simplex!(
    /// Dihedral angles `δ`, one per edge, in `(0, 2π)`.
    DihedralAngles,
    edge_count,
    "dihedral angles"
);

impl SurfaceAngles {
    /// Angle of the corner centered at `center` in face `{a, center, b}`.
    pub fn at(&self, k: &Combinatoric, a: usize, center: usize, b: usize) -> Option<f64> {
        k.corner_id(a, center, b).map(|c| self.0[c])
    }

    pub fn in_range(&self) -> bool {
        self.0.iter().all(|&s| s > 0.0 && s < PI)
    }
}

impl EdgeLengths {
    pub fn scaled(&self, factor: f64) -> Self {
        EdgeLengths(self.0.iter().map(|x| x * factor).collect())
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&x| x > 0.0 && x.is_finite())
    }
}

impl DihedralAngles {
    pub fn in_range(&self) -> bool {
        self.0.iter().all(|&d| d > 0.0 && d < 2.0 * PI)
    }
}

/// Representative of `x` modulo `2π` in `[0, 2π)`.
pub fn wrap_two_pi(x: f64) -> f64 {
    let r = libm::fmod(x, 2.0 * PI);
    if r < 0.0 {
        r + 2.0 * PI
    } else {
        r
    }
}

/// Distance between two angles on the circle.
pub fn angle_distance(x: f64, y: f64) -> f64 {
    let d = wrap_two_pi(x - y);
    d.min(2.0 * PI - d)
}
