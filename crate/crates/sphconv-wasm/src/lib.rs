//! Browser bindings for the interactive demo page: a heatmap of the
//! convexity function over the disk, radial ratio curves and a pointwise
//! readout. All functions take an expression in `z` (or a catalog name
//! like `f1` or `rot(0.3,1.0)`) and return JSON strings for the page to
//! render.

use sphconv::expr::{builtin, parse, MapDefinition};
use sphconv::quad::{self, QuadratureConfig, Quantity};
use sphconv::sphgeo;
use sphconv::tolerances;
use sphconv::verify;
use wasm_bindgen::prelude::*;

fn resolve(source: &str) -> Result<MapDefinition, String> {
    if let Ok(map) = builtin(source) {
        return Ok(map);
    }
    let ast = parse(source).map_err(|e| e.to_string())?;
    Ok(MapDefinition::from_expr(source, ast))
}

fn err(msg: String) -> JsValue {
    JsValue::from_str(&msg)
}

/// Values of `h` on a polar grid, row-major over radii then angles, with
/// `null` at points where `h` is undefined.
#[wasm_bindgen]
pub fn h_field(source: &str, rmax: f64, radii: u32, angles: u32) -> Result<String, JsValue> {
    let map = resolve(source).map_err(err)?;
    if !(0.0 < rmax && rmax < 1.0) || radii == 0 || angles == 0 {
        return Err(err("need 0 < rmax < 1 and a nonempty grid".to_string()));
    }
    let mut values = Vec::with_capacity((radii * angles) as usize);
    let mut min = f64::INFINITY;
    let mut argmin = (0.0, 0.0);
    for j in 1..=radii {
        let r = rmax * j as f64 / radii as f64;
        for k in 0..angles {
            let t = std::f64::consts::TAU * k as f64 / angles as f64;
            let z = num_complex::Complex64::from_polar(r, t);
            match sphgeo::h(&map, z) {
                Ok(v) => {
                    if v < min {
                        min = v;
                        argmin = (z.re, z.im);
                    }
                    values.push(Some(v));
                }
                Err(_) => values.push(None),
            }
        }
    }
    let body = serde_json::json!({
        "radii": radii,
        "angles": angles,
        "rmax": rmax,
        "values": values,
        "min": if min.is_finite() { Some(min) } else { None },
        "argmin": { "re": argmin.0, "im": argmin.1 },
    });
    Ok(body.to_string())
}

/// Length, area and total-curvature ratios on a uniform radial grid,
/// with a monotonicity classification for each.
#[wasm_bindgen]
pub fn ratio_curves(
    source: &str,
    rmin: f64,
    rmax: f64,
    steps: u32,
    nodes: u32,
) -> Result<String, JsValue> {
    let map = resolve(source).map_err(err)?;
    let config = QuadratureConfig::new(nodes as usize, QuadratureConfig::DEFAULT_RADIAL)
        .map_err(|e| err(e.to_string()))?;
    let mut curves = serde_json::Map::new();
    let mut rs: Vec<f64> = Vec::new();
    for (key, quantity) in [
        ("len", Quantity::LenRatio),
        ("area", Quantity::AreaRatio),
        ("curv", Quantity::CurvRatio),
    ] {
        let profile = quad::radial_profile(&map, quantity, rmin, rmax, steps as usize, &config)
            .map_err(|e| err(e.to_string()))?;
        if rs.is_empty() {
            rs = profile.samples.iter().map(|s| s.r).collect();
        }
        let values: Vec<Option<f64>> = profile.samples.iter().map(|s| s.value).collect();
        let classification =
            match verify::classify_monotone(&profile, tolerances::MONOTONICITY_SLACK) {
                Ok(v) => format!("{:?}", v.classification),
                Err(e) => e.to_string(),
            };
        curves.insert(
            key.to_string(),
            serde_json::json!({ "values": values, "classification": classification }),
        );
    }
    let body = serde_json::json!({ "r": rs, "curves": curves, "map": map.name });
    Ok(body.to_string())
}

/// Pointwise readout at `z`: value, spherical derivative, convexity
/// function and image-circle curvature.
#[wasm_bindgen]
pub fn point_report(source: &str, re: f64, im: f64) -> Result<String, JsValue> {
    let map = resolve(source).map_err(err)?;
    let z = num_complex::Complex64::new(re, im);
    if z.norm() >= 1.0 {
        return Err(err(format!("|z| = {} is outside the disk", z.norm())));
    }
    let value = sphconv::eval_jet(&map.ast, z).ok().map(|j| (j.v.re, j.v.im));
    let quantity = |r: Result<f64, sphgeo::SphError>| match r {
        Ok(v) => serde_json::json!(v),
        Err(e) => serde_json::json!({ "error": e.to_string() }),
    };
    let body = serde_json::json!({
        "z": { "re": re, "im": im },
        "f": value.map(|(a, b)| serde_json::json!({ "re": a, "im": b })),
        "fsharp": quantity(sphgeo::spherical_derivative(&map, z)),
        "h": quantity(sphgeo::h(&map, z)),
        "kappa": quantity(sphgeo::curvature_image_circle(&map, z)),
    });
    Ok(body.to_string())
}

/// Printable expression for a catalog map, for seeding the input box.
#[wasm_bindgen]
pub fn builtin_source(name: &str) -> Result<String, JsValue> {
    let map = builtin(name).map_err(|e| err(e.to_string()))?;
    Ok(map.ast.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_field_identity() {
        let json = h_field("identity", 0.9, 10, 16).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["radii"], 10);
        let min = v["min"].as_f64().unwrap();
        let expected = (1.0 - 0.81) / (1.0 + 0.81);
        assert!((min - expected).abs() < 1e-12);
    }

    #[test]
    fn ratio_curves_resolves_expressions_and_builtins() {
        for src in ["f2", "exp(z)"] {
            let json = ratio_curves(src, 0.1, 0.9, 9, 64).unwrap();
            let v: serde_json::Value = serde_json::from_str(&json).unwrap();
            assert_eq!(v["r"].as_array().unwrap().len(), 9);
            assert_eq!(
                v["curves"]["area"]["classification"],
                "StrictlyIncreasing"
            );
        }
    }

    #[test]
    fn point_report_fields() {
        let json = point_report("f1", 0.0, 0.0).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert!((v["fsharp"].as_f64().unwrap() - 0.5).abs() < 1e-12);
        assert!((v["h"].as_f64().unwrap() - 1.0).abs() < 1e-12);
        // kappa is undefined at the center
        assert!(v["kappa"]["error"].is_string());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(h_field("z+", 0.9, 10, 16).is_err());
        assert!(point_report("z", 2.0, 0.0).is_err());
        assert!(builtin_source("koebe").is_err());
    }

    #[test]
    fn builtin_source_prints() {
        assert_eq!(builtin_source("f2").unwrap(), "exp(z)");
        assert_eq!(builtin_source("identity").unwrap(), "z");
    }
}
