//! Spherical geometry of meromorphic maps of the unit disk.
//!
//! The Riemann sphere carries the conformal metric `|dw| / (1 + |w|^2)`
//! (constant Gaussian curvature +4). For a meromorphic map `f` of the unit
//! disk this crate computes, numerically but at close to machine precision:
//!
//! * the spherical derivative `f#(z) = |f'(z)| / (1 + |f(z)|^2)`,
//! * the convexity function
//!   `h(z) = Re{ 1 + z f''/f' - 2 z f' conj(f) / (1 + |f|^2) }`,
//!   whose nonnegativity on the disk characterises spherically convex maps,
//! * spherical length of image circles, spherical area of image disks and
//!   total spherical curvature of image circles, together with their ratios
//!   against the same quantities for the plain disk,
//! * geodesic curvature of circles and of image curves in the spherical
//!   metric,
//! * a battery of named checks (inequalities, identities, monotonicity
//!   classifications) with residuals and pass/fail verdicts.
//!
//! Maps are given as parsed expressions in `z` ([`expr`]), differentiated
//! exactly with second-order forward jets ([`jet`]), evaluated pointwise in
//! [`sphgeo`], integrated in [`quad`] and verified in [`verify`].

pub mod expr;
pub mod jet;
pub mod quad;
pub mod sphgeo;
pub mod tolerances;
pub mod verify;

pub use expr::{builtin, parse, parse_complex, ExprAst, MapDefinition};
pub use jet::{eval_jet, Jet2};
pub use quad::{radial_profile, QuadratureConfig, Quantity, RadialProfile};
pub use verify::{verify_all, CheckResult, CheckStatus};

/// Complex scalar used throughout the crate.
pub type Complex = num_complex::Complex64;
