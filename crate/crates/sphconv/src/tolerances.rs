//! Tolerances used by the verification checks, each with its origin.
//!
//! Two regimes: quantities computed pointwise from jets are limited only by
//! f64 rounding, while quantities passing through quadrature pick up the
//! (spectrally small, but nonzero) truncation of the trapezoidal and
//! Gauss-Legendre rules.

/// Identities between two quadrature paths (Gauss-Bonnet and friends).
/// The trapezoidal rule converges geometrically for the analytic integrands
/// here, so the observed residuals are far smaller; 1e-7 leaves room for
/// coarse node counts.
pub const QUADRATURE_IDENTITY: f64 = 1e-7;

/// Identities evaluated without quadrature (pure jet arithmetic).
pub const ALGEBRAIC_IDENTITY: f64 = 1e-10;

/// Strictness slack for monotonicity classification on sampled profiles:
/// a successive difference counts as a rise or a fall only beyond this.
pub const MONOTONICITY_SLACK: f64 = 1e-9;

/// Slack for pointwise lower bounds such as `h >= (1-|z|^2)/(1+|z|^2)`;
/// equality cases sit exactly on the bound, so only rounding must pass.
pub const POINTWISE_BOUND: f64 = 1e-9;

/// Slack for the integral-mean lower bound of the convexity function.
pub const INTEGRAL_MEAN_BOUND: f64 = 1e-9;

/// Slack for the spherical isoperimetric inequality `L^2 >= 4 pi A - 4 A^2`,
/// which mixes a squared length with two area quadratures.
pub const ISOPERIMETRIC_SLACK: f64 = 1e-8;

/// Residual bound for the boundary/interior connection identity relating
/// `mean((f#)^2)` on a circle to a weighted area integral of `h (f#)^2`.
pub const CONNECTION_IDENTITY: f64 = 1e-6;

/// Residual bound for the five-point finite-difference check of
/// `Lap h = -8 (f#)^2 h` at the default step.
pub const LAPLACE_RESIDUAL: f64 = 1e-5;

/// Default stencil step for the Laplacian check. Truncation O(step^2)
/// dominates rounding (~1e-16/step^2 = 1e-10) at this size.
pub const LAPLACE_STEP: f64 = 1e-3;

/// Convexity scans call the minimum of `h` nonnegative above `-SCAN_SLACK`.
pub const SCAN_SLACK: f64 = 1e-9;

/// Central-normalization check: `|f(0)|`, `|f''(0)|` and the excess of the
/// grid supremum of `(1-|z|^2) f#` over `f#(0)` must stay below this.
pub const NORMALIZATION: f64 = 1e-9;

/// Equality cases of the sharp bounds (maps of the form `T(eta z)`).
pub const EQUALITY_CASE: f64 = 1e-9;

/// Seed for the randomly placed interior points of the Laplacian check;
/// fixed so that reports are reproducible run to run.
pub const DEFAULT_SEED: u64 = 3_141_592_653;
