//! Default tolerances.
//!
//! Classification is discontinuous, so every branch decision goes through
//! one of these relative thresholds. A quantity of degree `d` in the
//! coefficients of a quadratic map counts as zero when
//! `|x| ≤ TAU_CLASS · scale^d`.

/// Relative threshold for causal characters of vectors.
pub const TAU_CAUSAL: f64 = 1e-9;

/// Relative threshold for branch decisions on invariants.
pub const TAU_CLASS: f64 = 1e-8;

/// Newton residual accepted for a refined umbilic.
pub const NEWTON_RESIDUAL: f64 = 1e-11;

/// Newton iteration cap.
pub const NEWTON_MAX_ITER: usize = 50;

/// Merge radius for umbilic candidates, relative to the domain diameter.
pub const R_MERGE_REL: f64 = 1e-6;

/// Default finite-difference step, relative to the domain diameter.
pub const FD_STEP_REL: f64 = 1e-5;

/// Fraction of grid samples with vanishing BDE coefficients above which a
/// configuration is reported as degenerate.
pub const DEGENERATE_FRACTION: f64 = 0.05;

/// Relative size under which all BDE coefficients count as vanishing.
pub const TAU_BDE_ZERO: f64 = 1e-8;

/// Default grid resolution per direction.
pub const GRID_DEFAULT: usize = 256;

/// Local error target per unit length for line tracing.
pub const TRACE_TOL: f64 = 1e-8;

/// `|a − b| ≤ tol · max(1, |a|, |b|)`.
#[inline]
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    let m = 1.0_f64.max(a.abs()).max(b.abs());
    (a - b).abs() <= tol * m
}
