//! Quadrature over circles and disks, global spherical quantities and
//! radial profiles.
//!
//! Circle integrals use the periodic trapezoidal rule: the integrands here
//! are real-analytic in the angle, so convergence is geometric and a few
//! hundred nodes reach machine precision. Disk integrals nest a
//! Gauss-Legendre rule in the radius around the angular rule; the radial
//! integrand is smooth down to the center, so no singularity handling is
//! needed. The area is deliberately computed by this nested quadrature and
//! not through a boundary reduction via `h`, which keeps the Gauss-Bonnet
//! check a genuine cross-validation of two independent paths.

mod gauss;

pub use gauss::gauss_legendre;

use crate::expr::MapDefinition;
use crate::sphgeo::{self, SphError};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::{PI, TAU};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum QuadError {
    #[error("integrand failed at node {index} (z = {z}): {source}")]
    Node {
        index: usize,
        z: Complex64,
        #[source]
        source: SphError,
    },
    #[error("spherical derivative vanishes at node {index}: log undefined")]
    LogOfZero { index: usize },
    #[error("{0}")]
    Domain(String),
    #[error("invalid quadrature configuration: {0}")]
    Config(String),
}

/// Node counts for the angular (trapezoidal) and radial (Gauss-Legendre)
/// rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuadratureConfig {
    angular_nodes: usize,
    radial_nodes: usize,
}

impl QuadratureConfig {
    pub const DEFAULT_ANGULAR: usize = 256;
    pub const DEFAULT_RADIAL: usize = 48;

    /// `angular_nodes` must be a power of two, at least 16; `radial_nodes`
    /// at least 8.
    pub fn new(angular_nodes: usize, radial_nodes: usize) -> Result<Self, QuadError> {
        if angular_nodes < 16 || !angular_nodes.is_power_of_two() {
            return Err(QuadError::Config(format!(
                "angular node count must be a power of two >= 16, got {angular_nodes}"
            )));
        }
        if radial_nodes < 8 {
            return Err(QuadError::Config(format!(
                "radial node count must be >= 8, got {radial_nodes}"
            )));
        }
        Ok(QuadratureConfig {
            angular_nodes,
            radial_nodes,
        })
    }

    pub fn angular_nodes(&self) -> usize {
        self.angular_nodes
    }

    pub fn radial_nodes(&self) -> usize {
        self.radial_nodes
    }
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            angular_nodes: Self::DEFAULT_ANGULAR,
            radial_nodes: Self::DEFAULT_RADIAL,
        }
    }
}

fn check_radius(r: f64) -> Result<(), QuadError> {
    if !(0.0 < r && r < 1.0) {
        return Err(QuadError::Domain(format!(
            "radius must lie in (0,1), got {r}"
        )));
    }
    Ok(())
}

/// Mean of a pointwise quantity over the circle `|z| = r` with the
/// `n`-node periodic trapezoidal rule:
/// `(1/n) sum_k g(r e^{2 pi i k/n})`.
pub fn circle_mean<F>(map: &MapDefinition, g: F, r: f64, n: usize) -> Result<f64, QuadError>
where
    F: Fn(&MapDefinition, Complex64) -> Result<f64, SphError>,
{
    check_radius(r)?;
    let mut sum = 0.0;
    for k in 0..n {
        let z = Complex64::from_polar(r, TAU * k as f64 / n as f64);
        let v = g(map, z).map_err(|source| QuadError::Node {
            index: k,
            z,
            source,
        })?;
        sum += v;
    }
    Ok(sum / n as f64)
}

/// `integral over the disk r D of g dA`, computed as
/// `int_0^r rho (2 pi mean(g, rho)) drho` with Gauss-Legendre in the
/// radius.
pub fn disk_integral<F>(
    map: &MapDefinition,
    g: F,
    r: f64,
    config: &QuadratureConfig,
) -> Result<f64, QuadError>
where
    F: Fn(&MapDefinition, Complex64) -> Result<f64, SphError>,
{
    check_radius(r)?;
    let rule = gauss_legendre(config.radial_nodes);
    let mut total = 0.0;
    for &(x, w) in &rule {
        let rho = 0.5 * r * (x + 1.0);
        let mean = circle_mean(map, &g, rho, config.angular_nodes)?;
        total += w * (0.5 * r) * rho * TAU * mean;
    }
    Ok(total)
}

// Pointwise selectors.

fn fsharp(map: &MapDefinition, z: Complex64) -> Result<f64, SphError> {
    sphgeo::spherical_derivative(map, z)
}

fn fsharp_sq(map: &MapDefinition, z: Complex64) -> Result<f64, SphError> {
    sphgeo::spherical_derivative(map, z).map(|v| v * v)
}

fn h_point(map: &MapDefinition, z: Complex64) -> Result<f64, SphError> {
    sphgeo::h(map, z)
}

fn h_times_fsharp_sq(map: &MapDefinition, z: Complex64) -> Result<f64, SphError> {
    let (h, fs) = sphgeo::h_and_density(map, z)?;
    Ok(h * fs * fs)
}

/// Spherical length of the image circle: `L_S f(r T) = 2 pi r mean(f#)`.
pub fn spherical_length_image(
    map: &MapDefinition,
    r: f64,
    config: &QuadratureConfig,
) -> Result<f64, QuadError> {
    Ok(TAU * r * circle_mean(map, fsharp, r, config.angular_nodes)?)
}

/// Spherical area of the image disk: the disk integral of `(f#)^2`.
pub fn spherical_area_image(
    map: &MapDefinition,
    r: f64,
    config: &QuadratureConfig,
) -> Result<f64, QuadError> {
    disk_integral(map, fsharp_sq, r, config)
}

/// Total spherical curvature of the image circle: `int_0^{2pi} h dt`.
pub fn total_curvature_image(
    map: &MapDefinition,
    r: f64,
    config: &QuadratureConfig,
) -> Result<f64, QuadError> {
    Ok(TAU * circle_mean(map, h_point, r, config.angular_nodes)?)
}

/// Mean of `h` over the circle: `(1/2pi) int h dt`.
pub fn integral_mean_h(
    map: &MapDefinition,
    r: f64,
    config: &QuadratureConfig,
) -> Result<f64, QuadError> {
    circle_mean(map, h_point, r, config.angular_nodes)
}

/// Spherical length of the plain circle `r T`: `2 pi r / (1 + r^2)`.
pub fn spherical_length_circle(r: f64) -> f64 {
    TAU * r / (1.0 + r * r)
}

/// Spherical area of the plain disk `r D`: `pi r^2 / (1 + r^2)`.
pub fn spherical_area_disk(r: f64) -> f64 {
    PI * r * r / (1.0 + r * r)
}

/// Total spherical curvature of the plain circle: `2 pi (1 - r^2)/(1 + r^2)`.
pub fn total_curvature_circle(r: f64) -> f64 {
    TAU * (1.0 - r * r) / (1.0 + r * r)
}

/// `Len(r) = L_S f(r T) / L_S(r T) = (1 + r^2) mean(f#)`.
pub fn len_ratio(map: &MapDefinition, r: f64, config: &QuadratureConfig) -> Result<f64, QuadError> {
    Ok((1.0 + r * r) * circle_mean(map, fsharp, r, config.angular_nodes)?)
}

/// `Are(r) = A_S f(r D) / A_S(r D)`.
pub fn area_ratio(
    map: &MapDefinition,
    r: f64,
    config: &QuadratureConfig,
) -> Result<f64, QuadError> {
    Ok(spherical_area_image(map, r, config)? / spherical_area_disk(r))
}

/// Total-curvature ratio `Phi(r) = (1 + r^2) / (2 pi (1 - r^2)) int h dt`.
pub fn curv_ratio(
    map: &MapDefinition,
    r: f64,
    config: &QuadratureConfig,
) -> Result<f64, QuadError> {
    let mean_h = circle_mean(map, h_point, r, config.angular_nodes)?;
    Ok((1.0 + r * r) / (1.0 - r * r) * mean_h)
}

/// Hyperbolic-length ratio `L(r) = (1 - r^2) mean(f#)`: the circle mean of
/// the density `(1 - |z|^2) f#`. Decreasing in `r` for spherically convex
/// maps, with limit `f#(0)` at the center.
pub fn hyp_len_ratio(
    map: &MapDefinition,
    r: f64,
    config: &QuadratureConfig,
) -> Result<f64, QuadError> {
    Ok((1.0 - r * r) * circle_mean(map, fsharp, r, config.angular_nodes)?)
}

/// `(1/2pi) int log[(1 + r^2) f#(r e^{it})] dt`.
pub fn log_mean(map: &MapDefinition, r: f64, config: &QuadratureConfig) -> Result<f64, QuadError> {
    let scale = 1.0 + r * r;
    let res = circle_mean(
        map,
        |m, z| {
            let fs = sphgeo::spherical_derivative(m, z)?;
            if fs <= 0.0 {
                // signal back through the critical-point variant; remapped below
                return Err(SphError::CriticalPoint { z });
            }
            Ok((scale * fs).ln())
        },
        r,
        config.angular_nodes,
    );
    res.map_err(|e| match e {
        QuadError::Node {
            index,
            source: SphError::CriticalPoint { .. },
            ..
        } => QuadError::LogOfZero { index },
        other => other,
    })
}

/// Circle mean of `h (f#)^2`; used by the connection-identity check.
pub fn disk_integral_h_fsharp_sq(
    map: &MapDefinition,
    r: f64,
    config: &QuadratureConfig,
) -> Result<f64, QuadError> {
    disk_integral(map, h_times_fsharp_sq, r, config)
}

/// Circle mean of `(f#)^2`; the angular factor of the area integrand.
pub fn mean_fsharp_sq(
    map: &MapDefinition,
    r: f64,
    config: &QuadratureConfig,
) -> Result<f64, QuadError> {
    circle_mean(map, fsharp_sq, r, config.angular_nodes)
}

/// The radial quantities a profile can sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    LenRatio,
    AreaRatio,
    CurvRatio,
    HypLenRatio,
    LogMean,
    IntegralMeanH,
    SphericalLength,
    SphericalArea,
    TotalCurvature,
}

impl Quantity {
    /// Column name used in CSV output and CLI flags.
    pub fn column_name(&self) -> &'static str {
        match self {
            Quantity::LenRatio => "lenratio",
            Quantity::AreaRatio => "arearatio",
            Quantity::CurvRatio => "curvratio",
            Quantity::HypLenRatio => "hyplenratio",
            Quantity::LogMean => "logmean",
            Quantity::IntegralMeanH => "integralmeanh",
            Quantity::SphericalLength => "length",
            Quantity::SphericalArea => "area",
            Quantity::TotalCurvature => "totalcurvature",
        }
    }

    pub fn evaluate(
        &self,
        map: &MapDefinition,
        r: f64,
        config: &QuadratureConfig,
    ) -> Result<f64, QuadError> {
        match self {
            Quantity::LenRatio => len_ratio(map, r, config),
            Quantity::AreaRatio => area_ratio(map, r, config),
            Quantity::CurvRatio => curv_ratio(map, r, config),
            Quantity::HypLenRatio => hyp_len_ratio(map, r, config),
            Quantity::LogMean => log_mean(map, r, config),
            Quantity::IntegralMeanH => integral_mean_h(map, r, config),
            Quantity::SphericalLength => spherical_length_image(map, r, config),
            Quantity::SphericalArea => spherical_area_image(map, r, config),
            Quantity::TotalCurvature => total_curvature_image(map, r, config),
        }
    }
}

impl std::str::FromStr for Quantity {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "lenratio" => Ok(Quantity::LenRatio),
            "arearatio" => Ok(Quantity::AreaRatio),
            "curvratio" => Ok(Quantity::CurvRatio),
            "hyplenratio" => Ok(Quantity::HypLenRatio),
            "logmean" => Ok(Quantity::LogMean),
            "integralmeanh" => Ok(Quantity::IntegralMeanH),
            "length" => Ok(Quantity::SphericalLength),
            "area" => Ok(Quantity::SphericalArea),
            "totalcurvature" => Ok(Quantity::TotalCurvature),
            other => Err(format!("unknown quantity `{other}`")),
        }
    }
}

/// One sampled point of a radial profile; failed samples are kept as gaps
/// with the failure reason.
#[derive(Debug, Clone, Serialize)]
pub struct ProfileSample {
    pub r: f64,
    pub value: Option<f64>,
    pub gap_reason: Option<String>,
}

/// A sampled `(r, value)` curve of one quantity for one map.
#[derive(Debug, Clone, Serialize)]
pub struct RadialProfile {
    pub quantity: Quantity,
    pub map_name: String,
    pub samples: Vec<ProfileSample>,
    pub config: QuadratureConfig,
}

impl RadialProfile {
    /// The gap-free `(r, value)` pairs in order.
    pub fn clean_samples(&self) -> Vec<(f64, f64)> {
        self.samples
            .iter()
            .filter_map(|s| s.value.map(|v| (s.r, v)))
            .collect()
    }
}

/// Sample `quantity` on a uniform grid of `steps` radii from `r_min` to
/// `r_max` inclusive. Individual sample failures become gaps, not errors.
pub fn radial_profile(
    map: &MapDefinition,
    quantity: Quantity,
    r_min: f64,
    r_max: f64,
    steps: usize,
    config: &QuadratureConfig,
) -> Result<RadialProfile, QuadError> {
    if !(0.0 < r_min && r_min < r_max && r_max < 1.0) {
        return Err(QuadError::Domain(format!(
            "need 0 < r_min < r_max < 1, got [{r_min}, {r_max}]"
        )));
    }
    if steps < 2 {
        return Err(QuadError::Domain(format!(
            "need at least 2 steps, got {steps}"
        )));
    }
    let mut samples = Vec::with_capacity(steps);
    for i in 0..steps {
        let r = r_min + (r_max - r_min) * i as f64 / (steps - 1) as f64;
        match quantity.evaluate(map, r, config) {
            Ok(v) => samples.push(ProfileSample {
                r,
                value: Some(v),
                gap_reason: None,
            }),
            Err(e) => samples.push(ProfileSample {
                r,
                value: None,
                gap_reason: Some(e.to_string()),
            }),
        }
    }
    Ok(RadialProfile {
        quantity,
        map_name: map.name.clone(),
        samples,
        config: *config,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::builtin;
    use approx::assert_abs_diff_eq;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn config_validation() {
        assert!(QuadratureConfig::new(256, 48).is_ok());
        assert!(QuadratureConfig::new(100, 48).is_err());
        assert!(QuadratureConfig::new(8, 48).is_err());
        assert!(QuadratureConfig::new(64, 4).is_err());
    }

    #[test]
    fn circle_mean_constant_integrand() {
        let id = builtin("identity").unwrap();
        let mean = circle_mean(&id, |m, z| crate::sphgeo::spherical_derivative(m, z), 0.5, 64)
            .unwrap();
        assert_abs_diff_eq!(mean, 0.8, epsilon = 1e-14);
    }

    #[test]
    fn circle_mean_h_exp_matches_high_resolution_closed_form() {
        // reference: the closed form h = 1 - r cos t tanh(r cos t) averaged
        // with 2^14 nodes
        let r: f64 = 0.5;
        let n_ref = 1 << 14;
        let mut reference = 0.0;
        for k in 0..n_ref {
            let t = TAU * k as f64 / n_ref as f64;
            let x = r * t.cos();
            reference += 1.0 - x * x.tanh();
        }
        reference /= n_ref as f64;

        let f2 = builtin("f2").unwrap();
        let got = integral_mean_h(&f2, r, &cfg()).unwrap();
        assert_abs_diff_eq!(got, reference, epsilon = 1e-12);
    }

    #[test]
    fn circle_mean_reports_failing_node() {
        // (z - 0.5)^2 has a critical point exactly at the k = 0 node of the
        // circle |z| = 0.5, so the mean of h fails there with its index
        let map = crate::expr::MapDefinition::from_expr(
            "shifted-square",
            crate::expr::parse("(z-0.5)^2").unwrap(),
        );
        let err = circle_mean(&map, |m, z| crate::sphgeo::h(m, z), 0.5, 16).unwrap_err();
        match err {
            QuadError::Node { index, source, .. } => {
                assert_eq!(index, 0);
                assert!(matches!(source, SphError::CriticalPoint { .. }));
            }
            other => panic!("expected node error, got {other:?}"),
        }
    }

    #[test]
    fn log_mean_flags_vanishing_density() {
        let map = crate::expr::MapDefinition::from_expr(
            "shifted-square",
            crate::expr::parse("(z-0.5)^2").unwrap(),
        );
        assert!(matches!(
            log_mean(&map, 0.5, &cfg()),
            Err(QuadError::LogOfZero { index: 0 })
        ));
    }

    #[test]
    fn length_closed_forms() {
        let id = builtin("identity").unwrap();
        assert_abs_diff_eq!(
            spherical_length_image(&id, 0.5, &cfg()).unwrap(),
            spherical_length_circle(0.5),
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(
            spherical_length_circle(0.5),
            2.5132741228718345,
            epsilon = 1e-12
        );

        // image of scale(0.5) at r = 0.8 is the circle of radius 0.4
        let sc = builtin("scale(0.5)").unwrap();
        assert_abs_diff_eq!(
            spherical_length_image(&sc, 0.8, &cfg()).unwrap(),
            spherical_length_circle(0.4),
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(
            spherical_length_circle(0.4),
            2.166615623165374,
            epsilon = 1e-12
        );

        // r -> 0 limit of the normalized length is f#(0)
        let f1 = builtin("f1").unwrap();
        let small = spherical_length_image(&f1, 1e-4, &cfg()).unwrap() / (TAU * 1e-4);
        assert_abs_diff_eq!(small, 0.5, epsilon = 1e-7);
    }

    #[test]
    fn area_closed_forms() {
        let id = builtin("identity").unwrap();
        assert_abs_diff_eq!(
            spherical_area_image(&id, 0.5, &cfg()).unwrap(),
            spherical_area_disk(0.5),
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(spherical_area_disk(0.5), PI / 5.0, epsilon = 1e-14);

        let sc = builtin("scale(0.5)").unwrap();
        assert_abs_diff_eq!(
            spherical_area_image(&sc, 0.8, &cfg()).unwrap(),
            spherical_area_disk(0.4),
            epsilon = 1e-13
        );

        // r -> 0 limit of area / (pi r^2) is f#(0)^2
        let f1 = builtin("f1").unwrap();
        let r = 1e-3;
        let limit = spherical_area_image(&f1, r, &cfg()).unwrap() / (PI * r * r);
        assert_abs_diff_eq!(limit, 0.25, epsilon = 1e-6);
    }

    #[test]
    fn total_curvature_closed_forms() {
        let id = builtin("identity").unwrap();
        assert_abs_diff_eq!(
            total_curvature_image(&id, 0.5, &cfg()).unwrap(),
            total_curvature_circle(0.5),
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(
            total_curvature_circle(0.5),
            1.2 * PI,
            epsilon = 1e-13
        );

        // r -> 0: h -> 1, total curvature -> 2 pi
        let f2 = builtin("f2").unwrap();
        assert_abs_diff_eq!(
            total_curvature_image(&f2, 1e-5, &cfg()).unwrap(),
            TAU,
            epsilon = 1e-8
        );
    }

    #[test]
    fn ratios_are_one_for_identity() {
        let id = builtin("identity").unwrap();
        for r in [0.2, 0.5, 0.8] {
            assert_abs_diff_eq!(len_ratio(&id, r, &cfg()).unwrap(), 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(area_ratio(&id, r, &cfg()).unwrap(), 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(curv_ratio(&id, r, &cfg()).unwrap(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn area_ratio_scale_closed_form() {
        // for eta z the ratio is (1+r^2) eta^2 / (1 + r^2 eta^2)
        let sc = builtin("scale(0.5)").unwrap();
        let r: f64 = 0.8;
        let expected = (1.0 + r * r) * 0.25 / (1.0 + r * r * 0.25);
        assert_abs_diff_eq!(
            area_ratio(&sc, r, &cfg()).unwrap(),
            expected,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(expected, 0.3534482758620690, epsilon = 1e-12);
    }

    #[test]
    fn hyp_len_ratio_behaviour() {
        let id = builtin("identity").unwrap();
        assert_abs_diff_eq!(
            hyp_len_ratio(&id, 0.5, &cfg()).unwrap(),
            0.6,
            epsilon = 1e-13
        );
        let f1 = builtin("f1").unwrap();
        assert_abs_diff_eq!(
            hyp_len_ratio(&f1, 1e-4, &cfg()).unwrap(),
            0.5,
            epsilon = 1e-6
        );
        // decreasing for spherically convex maps
        let a = hyp_len_ratio(&f1, 0.3, &cfg()).unwrap();
        let b = hyp_len_ratio(&f1, 0.6, &cfg()).unwrap();
        assert!(a >= b);
    }

    #[test]
    fn log_mean_behaviour() {
        let id = builtin("identity").unwrap();
        assert_abs_diff_eq!(log_mean(&id, 0.5, &cfg()).unwrap(), 0.0, epsilon = 1e-14);
        let f1 = builtin("f1").unwrap();
        let a = log_mean(&f1, 0.3, &cfg()).unwrap();
        let b = log_mean(&f1, 0.6, &cfg()).unwrap();
        assert!(b > a, "log mean must increase for non-rotations");
        assert_abs_diff_eq!(
            log_mean(&f1, 1e-4, &cfg()).unwrap(),
            0.5f64.ln(),
            epsilon = 1e-6
        );
    }

    #[test]
    fn profile_identity_area_ratio_constant() {
        let id = builtin("identity").unwrap();
        let p = radial_profile(&id, Quantity::AreaRatio, 0.1, 0.9, 9, &cfg()).unwrap();
        assert_eq!(p.samples.len(), 9);
        for s in &p.samples {
            assert!((s.value.unwrap() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn profile_f1_curv_ratio_increases() {
        let f1 = builtin("f1").unwrap();
        let p = radial_profile(&f1, Quantity::CurvRatio, 0.05, 0.95, 50, &cfg()).unwrap();
        let vals = p.clean_samples();
        assert_eq!(vals.len(), 50);
        assert!(vals.windows(2).all(|w| w[1].1 > w[0].1));
    }

    #[test]
    fn profile_domain_validation() {
        let id = builtin("identity").unwrap();
        assert!(radial_profile(&id, Quantity::LenRatio, 0.5, 0.4, 5, &cfg()).is_err());
        assert!(radial_profile(&id, Quantity::LenRatio, 0.0, 0.4, 5, &cfg()).is_err());
        assert!(radial_profile(&id, Quantity::LenRatio, 0.1, 0.4, 1, &cfg()).is_err());
    }

    #[test]
    fn doubling_nodes_converged_at_128() {
        let f1 = builtin("f1").unwrap();
        let c128 = QuadratureConfig::new(128, 48).unwrap();
        let c256 = QuadratureConfig::new(256, 48).unwrap();
        let r = 0.5;
        let a = integral_mean_h(&f1, r, &c128).unwrap();
        let b = integral_mean_h(&f1, r, &c256).unwrap();
        assert!((a - b).abs() < 1e-12);
    }
}
