//! CSV data files behind the standard figure set: ratio curves for the
//! three example maps and surface grids of the convexity function.

use crate::format::sig15;
use sphconv::expr::builtin;
use sphconv::quad::{self, QuadratureConfig, Quantity};
use sphconv::sphgeo;
use std::f64::consts::TAU;
use std::io::Write;
use std::path::{Path, PathBuf};

const RATIO_STEPS: usize = 50;
const RATIO_R_MIN: f64 = 0.05;
const RATIO_R_MAX: f64 = 0.95;
const SURFACE_RADII: usize = 48;
const SURFACE_ANGLES: usize = 96;
const SURFACE_R_MIN: f64 = 0.02;
const SURFACE_R_MAX: f64 = 0.95;

/// Write the full figure set into `outdir`, returning the paths written.
pub fn write_all(outdir: &Path, config: &QuadratureConfig) -> std::io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(outdir)?;
    let f1 = builtin("f1").expect("catalog");
    let f2 = builtin("f2").expect("catalog");
    let f3 = builtin("f3").expect("catalog");

    let mut written = Vec::new();
    let mut emit = |name: &str, content: String| -> std::io::Result<()> {
        let path = outdir.join(name);
        let mut file = std::fs::File::create(&path)?;
        file.write_all(content.as_bytes())?;
        written.push(path);
        Ok(())
    };

    emit(
        "fig1_f1_len_area.csv",
        ratio_table(&f1, &[Quantity::LenRatio, Quantity::AreaRatio], config),
    )?;
    emit(
        "fig2_f1_curv.csv",
        ratio_table(&f1, &[Quantity::CurvRatio], config),
    )?;
    emit("fig3_f2_h_surface.csv", h_surface(&f2))?;
    emit(
        "fig4_f2_ratios.csv",
        ratio_table(
            &f2,
            &[Quantity::LenRatio, Quantity::AreaRatio, Quantity::CurvRatio],
            config,
        ),
    )?;
    emit("fig5_f3_h_surface.csv", h_surface(&f3))?;
    emit("fig6_f3_h_r08.csv", h_circle(&f3, 0.8, 256))?;
    emit(
        "fig7_f3_len_area.csv",
        ratio_table(&f3, &[Quantity::LenRatio, Quantity::AreaRatio], config),
    )?;
    emit(
        "fig8_f3_curv.csv",
        ratio_table(&f3, &[Quantity::CurvRatio], config),
    )?;
    Ok(written)
}

/// `r,<q1>,<q2>,...` over the standard radial grid; evaluation failures
/// appear as `NaN` cells with the reason appended as a trailing field.
fn ratio_table(
    map: &sphconv::MapDefinition,
    quantities: &[Quantity],
    config: &QuadratureConfig,
) -> String {
    let mut out = String::from("r");
    for q in quantities {
        out.push(',');
        out.push_str(q.column_name());
    }
    out.push('\n');
    for i in 0..RATIO_STEPS {
        let r = RATIO_R_MIN + (RATIO_R_MAX - RATIO_R_MIN) * i as f64 / (RATIO_STEPS - 1) as f64;
        out.push_str(&sig15(r));
        let mut gap: Option<String> = None;
        for q in quantities {
            out.push(',');
            match q.evaluate(map, r, config) {
                Ok(v) => out.push_str(&sig15(v)),
                Err(e) => {
                    out.push_str("NaN");
                    gap.get_or_insert_with(|| e.to_string());
                }
            }
        }
        if let Some(reason) = gap {
            out.push(',');
            out.push_str(&reason.replace(',', ";"));
        }
        out.push('\n');
    }
    out
}

/// `r,t,h` on a polar grid covering the disk up to the outer radius.
fn h_surface(map: &sphconv::MapDefinition) -> String {
    let mut out = String::from("r,t,h\n");
    for j in 0..SURFACE_RADII {
        let r = SURFACE_R_MIN
            + (SURFACE_R_MAX - SURFACE_R_MIN) * j as f64 / (SURFACE_RADII - 1) as f64;
        for k in 0..SURFACE_ANGLES {
            let t = TAU * k as f64 / SURFACE_ANGLES as f64;
            let z = num_complex::Complex64::from_polar(r, t);
            out.push_str(&sig15(r));
            out.push(',');
            out.push_str(&sig15(t));
            out.push(',');
            match sphgeo::h(map, z) {
                Ok(v) => out.push_str(&sig15(v)),
                Err(e) => {
                    out.push_str("NaN,");
                    out.push_str(&e.to_string().replace(',', ";"));
                }
            }
            out.push('\n');
        }
    }
    out
}

/// `t,h` along a single circle.
fn h_circle(map: &sphconv::MapDefinition, r: f64, angles: usize) -> String {
    let mut out = String::from("t,h\n");
    for k in 0..angles {
        let t = TAU * k as f64 / angles as f64;
        let z = num_complex::Complex64::from_polar(r, t);
        out.push_str(&sig15(t));
        out.push(',');
        match sphgeo::h(map, z) {
            Ok(v) => out.push_str(&sig15(v)),
            Err(e) => {
                out.push_str("NaN,");
                out.push_str(&e.to_string().replace(',', ";"));
            }
        }
        out.push('\n');
    }
    out
}

/// Shared by `curve`: single-quantity profile CSV with `r,NaN,<reason>`
/// gap rows.
pub fn profile_csv(profile: &quad::RadialProfile) -> String {
    let mut out = format!("r,{}\n", profile.quantity.column_name());
    for s in &profile.samples {
        out.push_str(&sig15(s.r));
        out.push(',');
        match s.value {
            Some(v) => out.push_str(&sig15(v)),
            None => {
                out.push_str("NaN,");
                out.push_str(
                    &s.gap_reason
                        .as_deref()
                        .unwrap_or("unknown")
                        .replace(',', ";"),
                );
            }
        }
        out.push('\n');
    }
    out
}
