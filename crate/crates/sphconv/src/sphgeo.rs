//! Pointwise spherical-geometry quantities: spherical derivative, the
//! convexity function `h`, curvature of circles and image curves, rotations
//! of the sphere and the central-normalization report.
//!
//! Every map is evaluated in one of two charts: the standard chart (values
//! of `f`) or the inverted chart (values of `1/f`, when the map carries an
//! inverse-chart expression). Both `f#` and `h` are invariant under
//! post-composition with rotations of the sphere, and `w -> 1/w` is such a
//! rotation, so either chart yields the same numbers; switching at the
//! equator `|f| = 1` keeps every chart value bounded by one in modulus and
//! avoids overflow near poles.

use crate::expr::{catalog_rotation, MapDefinition};
use crate::jet::{eval_jet, EvalError, Jet2};
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SphError {
    #[error("f'(z) = 0 at z = {z}: quantity undefined at critical points")]
    CriticalPoint { z: Complex64 },
    #[error("cannot evaluate map at z = {z}: {source}")]
    Evaluation {
        z: Complex64,
        #[source]
        source: EvalError,
    },
    #[error("degenerate tangent: z'(t) = 0")]
    DegenerateTangent,
    #[error("{0}")]
    Domain(String),
}

/// Which chart a jet was computed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Chart {
    Standard,
    Inverted,
}

/// Evaluate the map at `z` in whichever chart keeps `|value| <= 1`,
/// preferring the standard chart when both qualify.
pub fn chart_jet(map: &MapDefinition, z: Complex64) -> Result<(Jet2, Chart), SphError> {
    match eval_jet(&map.ast, z) {
        Ok(jet) if jet.v.norm_sqr() <= 1.0 => Ok((jet, Chart::Standard)),
        Ok(jet) => match &map.inverse_chart {
            Some(inv) => match eval_jet(inv, z) {
                Ok(g) => Ok((g, Chart::Inverted)),
                Err(_) => Ok((jet, Chart::Standard)),
            },
            None => Ok((jet, Chart::Standard)),
        },
        Err(err) => match &map.inverse_chart {
            Some(inv) => eval_jet(inv, z)
                .map(|g| (g, Chart::Inverted))
                .map_err(|source| SphError::Evaluation { z, source }),
            None => Err(SphError::Evaluation { z, source: err }),
        },
    }
}

fn spherical_derivative_of(jet: &Jet2) -> f64 {
    jet.d1.norm() / (1.0 + jet.v.norm_sqr())
}

fn h_of(jet: &Jet2, z: Complex64) -> Result<f64, SphError> {
    if jet.d1 == Complex64::new(0.0, 0.0) {
        return Err(SphError::CriticalPoint { z });
    }
    let log_deriv = z * jet.d2 / jet.d1;
    let metric_term = 2.0 * (z * jet.d1 * jet.v.conj()).re / (1.0 + jet.v.norm_sqr());
    Ok(1.0 + log_deriv.re - metric_term)
}

/// Spherical derivative `f#(z) = |f'(z)| / (1 + |f(z)|^2)`.
pub fn spherical_derivative(map: &MapDefinition, z: Complex64) -> Result<f64, SphError> {
    let (jet, _) = chart_jet(map, z)?;
    Ok(spherical_derivative_of(&jet))
}

/// The convexity function
/// `h(z) = Re{ 1 + z f''/f' - 2 z f' conj(f) / (1 + |f|^2) }`.
///
/// Nonnegative on the whole disk exactly for spherically convex maps, and
/// invariant under post-composition with sphere rotations, so it may be
/// computed in either chart. `h(0) = 1` for every evaluable map.
pub fn h(map: &MapDefinition, z: Complex64) -> Result<f64, SphError> {
    let (jet, chart) = chart_jet(map, z)?;
    match h_of(&jet, z) {
        Err(SphError::CriticalPoint { .. }) => {
            // try the other chart before giving up
            let other = match chart {
                Chart::Standard => map.inverse_chart.as_ref(),
                Chart::Inverted => Some(&map.ast),
            };
            match other.and_then(|ast| eval_jet(ast, z).ok()) {
                Some(jet) => h_of(&jet, z),
                None => Err(SphError::CriticalPoint { z }),
            }
        }
        res => res,
    }
}

/// Both `f#` and `h` from a single chart evaluation.
pub fn h_and_density(map: &MapDefinition, z: Complex64) -> Result<(f64, f64), SphError> {
    let (jet, _) = chart_jet(map, z)?;
    let fs = spherical_derivative_of(&jet);
    Ok((h_of(&jet, z)?, fs))
}

/// Spherical curvature of the circle `|z| = r`: `(1 - r^2)/r`.
pub fn curvature_circle(r: f64) -> Result<f64, SphError> {
    if !(0.0 < r && r < 1.0) {
        return Err(SphError::Domain(format!(
            "circle radius must lie in (0,1), got {r}"
        )));
    }
    Ok((1.0 - r * r) / r)
}

/// Spherical curvature of the image circle `f(r T)` at `f(z)`, `|z| = r`:
/// `h(z) / (|z| f#(z))`.
pub fn curvature_image_circle(map: &MapDefinition, z: Complex64) -> Result<f64, SphError> {
    let r = z.norm();
    if !(0.0 < r && r < 1.0) {
        return Err(SphError::Domain(format!(
            "point must satisfy 0 < |z| < 1, got |z| = {r}"
        )));
    }
    let (jet, _) = chart_jet(map, z)?;
    let fs = spherical_derivative_of(&jet);
    if fs == 0.0 {
        return Err(SphError::CriticalPoint { z });
    }
    Ok(h_of(&jet, z)? / (r * fs))
}

/// Spherical curvature of a parametrised curve from its value `zt`, tangent
/// `dz` and second derivative `ddz` at a point: the euclidean curvature
/// corrected by the metric term and rescaled by `1 + |z|^2`.
pub fn curve_curvature(zt: Complex64, dz: Complex64, ddz: Complex64) -> Result<f64, SphError> {
    if dz == Complex64::new(0.0, 0.0) {
        return Err(SphError::DegenerateTangent);
    }
    let speed = dz.norm();
    let euclid = (dz.conj() * ddz).im / (speed * speed * speed);
    let scale = 1.0 + zt.norm_sqr();
    let correction = (2.0 * zt.conj() * dz).im / (scale * speed);
    Ok((euclid - correction) * scale)
}

/// Post-compose with the sphere rotation
/// `T(w) = e^{i theta} (w - a) / (1 + w conj(a))`.
///
/// The returned map always carries an inverse chart (an expression for
/// `1/(T o f)`), since `T o f` may have poles inside the disk even when `f`
/// does not. Claimed properties are preserved: `f#` and `h` are invariant
/// under `T`.
pub fn post_compose_rotation(map: &MapDefinition, a: Complex64, theta: f64) -> MapDefinition {
    let (ast, inverse) = catalog_rotation(&map.ast, map.inverse_chart.as_ref(), a, theta);
    MapDefinition {
        name: format!("rot({a},{theta})_of_{}", map.name),
        ast,
        inverse_chart: Some(inverse),
        claimed: map.claimed,
    }
}

/// Result of [`check_central_normalization`].
///
/// A map is centrally normalized when `f(0) = 0`, `f''(0) = 0` and
/// `f#(0)` equals the supremum of the density `(1 - |z|^2) f#(z)` over the
/// disk; the supremum is estimated on a polar grid.
#[derive(Debug, Clone, Serialize)]
pub struct NormalizationReport {
    pub f0: Complex64,
    pub f2_0: Complex64,
    /// `f#(0)`.
    pub alpha: f64,
    /// Grid supremum of `(1 - |z|^2) f#(z)`.
    pub sup_density: f64,
    pub is_centrally_normalized: bool,
    pub tol: f64,
}

/// Evaluate `f(0)`, `f''(0)`, `alpha = f#(0)` and scan a
/// `grid_resolution x grid_resolution` polar grid (radii up to 0.995) for
/// the supremum of the density `(1 - |z|^2) f#(z)`.
pub fn check_central_normalization(
    map: &MapDefinition,
    grid_resolution: usize,
    tol: f64,
) -> Result<NormalizationReport, SphError> {
    let origin = Complex64::new(0.0, 0.0);
    let (jet, chart) = chart_jet(map, origin)?;
    let (f0, f2_0) = match chart {
        Chart::Standard => (jet.v, jet.d2),
        Chart::Inverted => {
            // f = 1/g: f'' = (2 g'^2 - g g'') / g^3; infinite at poles of f.
            let g = jet;
            if g.v == origin {
                let inf = Complex64::new(f64::INFINITY, 0.0);
                (inf, inf)
            } else {
                let g3 = g.v * g.v * g.v;
                (g.v.inv(), (2.0 * g.d1 * g.d1 - g.v * g.d2) / g3)
            }
        }
    };
    let alpha = spherical_derivative_of(&jet);

    let mut sup_density = alpha; // density at the origin
    let n = grid_resolution.max(1);
    for j in 1..=n {
        let r = 0.995 * j as f64 / n as f64;
        for k in 0..n {
            let t = std::f64::consts::TAU * k as f64 / n as f64;
            let z = Complex64::from_polar(r, t);
            let fs = spherical_derivative(map, z)?;
            sup_density = sup_density.max((1.0 - r * r) * fs);
        }
    }

    let is_centrally_normalized =
        f0.norm() <= tol && f2_0.norm() <= tol && sup_density <= alpha + tol;
    Ok(NormalizationReport {
        f0,
        f2_0,
        alpha,
        sup_density,
        is_centrally_normalized,
        tol,
    })
}
