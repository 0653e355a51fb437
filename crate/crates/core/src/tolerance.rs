//! Numerical thresholds shared across the crate.

/// Arguments to `acos` outside `[-1, 1]` by at most this much are clamped;
/// larger excursions are reported as degenerate geometry.
pub const ACOS_CLAMP: f64 = 1e-12;

/// Default max-norm residual tolerance for membership tests.
pub const RESIDUAL: f64 = 1e-9;

/// Singular values below this fraction of the largest count as zero.
pub const NULLITY_RELATIVE: f64 = 1e-7;

/// Central finite-difference step for numerical Jacobians.
pub const FD_STEP: f64 = 1e-6;

/// Reconstruction tolerates this multiple of the membership tolerance when
/// checking that already placed vertices agree with a newly attached cone.
pub const CLOSURE_FACTOR: f64 = 100.0;

/// `acos` with the clamping policy above; `None` for genuine excursions.
pub(crate) fn clamped_acos(x: f64) -> Option<f64> {
    if !x.is_finite() || libm::fabs(x) > 1.0 + ACOS_CLAMP {
        return None;
    }
    Some(libm::acos(x.clamp(-1.0, 1.0)))
}
