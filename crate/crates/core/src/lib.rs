//! Face-angle and dihedral-angle coordinates for triangulated polyhedra.
//!
//! A polyhedron on a closed oriented triangulated surface is described by
//! its face angles `σ` (one per corner) and dihedral angles `δ` (one per
//! edge). This crate evaluates the constraint systems those angles satisfy,
//! decides membership, rebuilds sphere-like polyhedra from their angles and
//! measures the dimension of the solution sets numerically.
#![cfg_attr(not(test), no_std)]
extern crate alloc;

pub mod angles;
pub mod build;
pub mod coloring;
pub mod complex;
pub mod cones;
pub mod error;
pub mod euclid;
pub mod intrinsic;
pub mod moduli;
pub mod shapes;
pub mod sphere;
pub mod tolerance;

pub use angles::{DihedralAngles, EdgeLengths, SurfaceAngles};
pub use build::{Point, PolyhedronEmbedding};
pub use complex::{build_complex, Combinatoric};
pub use error::{Error, Result};
