//! Flat-cone surfaces triangulated by a combinatoric: one euclidean triangle
//! system per face, and recovery of all edge lengths from the face angles
//! and a single length by chaining the law of sines across faces.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use libm::sin;

use crate::angles::{EdgeLengths, SurfaceAngles};
use crate::complex::Combinatoric;
use crate::error::{Error, Result};
use crate::euclid::{g_delta, EuclideanTriangle};

/// Triangle data of face `f` in the order used by the intrinsic residual:
/// for `f = (i, j, k)` the sides `ij, jk, ki` and the angles at `k, i, j`.
fn face_triangle(k: &Combinatoric, f: usize, ell: &[f64], sigma: &[f64]) -> EuclideanTriangle {
    let [opp_i, opp_j, opp_k] = k.face_edges(f);
    EuclideanTriangle::new(
        ell[opp_k],
        ell[opp_i],
        ell[opp_j],
        sigma[3 * f + 2],
        sigma[3 * f],
        sigma[3 * f + 1],
    )
}

/// Intrinsic residual: three rows per face, face-major.
pub fn g_in(k: &Combinatoric, ell: &EdgeLengths, sigma: &SurfaceAngles) -> Result<Vec<f64>> {
    ell.check_len(k)?;
    sigma.check_len(k)?;
    Ok(g_in_raw(k, ell.as_slice(), sigma.as_slice()))
}

pub(crate) fn g_in_raw(k: &Combinatoric, ell: &[f64], sigma: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(3 * k.face_count());
    for f in 0..k.face_count() {
        out.extend_from_slice(&g_delta(&face_triangle(k, f, ell, sigma)));
    }
    out
}

/// Lengths of all edges from the face angles and the length of `base_edge`,
/// visiting faces breadth-first from the base edge. In each newly reached
/// face the known side fixes the scale and the other two follow from the law
/// of sines.
pub fn propagate_lengths(
    k: &Combinatoric,
    sigma: &SurfaceAngles,
    base_edge: usize,
    base_length: f64,
) -> Result<EdgeLengths> {
    sigma.check_len(k)?;
    if base_edge >= k.edge_count() {
        return Err(Error::MissingEntry(alloc::format!("edge {base_edge} out of range")));
    }
    let s = sigma.as_slice();
    let mut ell = vec![f64::NAN; k.edge_count()];
    let mut face_done = vec![false; k.face_count()];
    ell[base_edge] = base_length;
    let mut queue = VecDeque::from([base_edge]);
    while let Some(e) = queue.pop_front() {
        for f in k.edge_faces(e) {
            if face_done[f] {
                continue;
            }
            face_done[f] = true;
            let edges = k.face_edges(f);
            let Some(p) = edges.iter().position(|&x| x == e) else { continue };
            let ratio = ell[e] / sin(s[3 * f + p]);
            for q in 0..3 {
                if ell[edges[q]].is_nan() {
                    ell[edges[q]] = ratio * sin(s[3 * f + q]);
                    queue.push_back(edges[q]);
                }
            }
        }
    }
    Ok(EdgeLengths(ell))
}

/// Result of [`check_in_membership`].
#[derive(Debug, Clone, PartialEq)]
pub struct IntrinsicMembership {
    pub member: bool,
    pub residual: f64,
    pub lengths: Option<EdgeLengths>,
}

/// Whether `sigma` are the angles of a flat-cone surface triangulated by `k`.
///
/// Lengths are propagated from edge 0 (the lexicographically smallest) with
/// length 1; the max-norm of the intrinsic residual must not exceed
/// `tol * (1 + 1)`.
pub fn check_in_membership(k: &Combinatoric, sigma: &SurfaceAngles, tol: f64) -> IntrinsicMembership {
    const BASE_LENGTH: f64 = 1.0;
    if sigma.check_len(k).is_err() || !sigma.in_range() {
        return IntrinsicMembership { member: false, residual: f64::INFINITY, lengths: None };
    }
    let Ok(ell) = propagate_lengths(k, sigma, 0, BASE_LENGTH) else {
        return IntrinsicMembership { member: false, residual: f64::INFINITY, lengths: None };
    };
    let residual = max_norm(&g_in_raw(k, ell.as_slice(), sigma.as_slice()));
    let member = residual <= tol * (1.0 + BASE_LENGTH);
    IntrinsicMembership { member, residual, lengths: member.then_some(ell) }
}

/// Largest absolute entry; infinite if any entry is NaN.
pub fn max_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| if x.is_nan() { f64::INFINITY } else { m.max(libm::fabs(*x)) })
}
