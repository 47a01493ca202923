//! Built-in catalog of maps: rotations of the sphere and the three example
//! functions used throughout the test suite and figures.

use super::{parse, parse_complex, ClaimedProperties, ExprAst, MapDefinition};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum BuiltinError {
    #[error("unknown builtin `{0}`")]
    Unknown(String),
    #[error("invalid arguments for builtin `{name}`: {msg}")]
    InvalidArguments { name: String, msg: String },
}

const F1_SRC: &str = "(sqrt(1+z)-sqrt(1-z))/(sqrt(1+z)+sqrt(1-z))";

fn cst(c: Complex64) -> ExprAst {
    ExprAst::Const(c)
}

fn unit(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

/// `c * z`, collapsing the factor when it is exactly one.
fn scaled_var(c: Complex64) -> ExprAst {
    if c == Complex64::new(1.0, 0.0) {
        ExprAst::Var
    } else {
        ExprAst::Mul(Box::new(cst(c)), Box::new(ExprAst::Var))
    }
}

fn is_unit_modulus(c: Complex64) -> bool {
    (c.norm() - 1.0).abs() < 1e-12
}

/// Rotation of the sphere `w -> e^{i theta} (w - a) / (1 + w conj(a))`
/// applied after `inner`, together with the matching `1/T(inner)` chart.
pub(crate) fn rotation_of(
    inner: &ExprAst,
    inner_inverse: Option<&ExprAst>,
    a: Complex64,
    theta: f64,
) -> (ExprAst, ExprAst) {
    let phase = unit(theta);
    if a == Complex64::new(0.0, 0.0) {
        // T(w) = e^{i theta} w; 1/T = e^{-i theta} / w.
        let ast = if phase == Complex64::new(1.0, 0.0) {
            inner.clone()
        } else {
            ExprAst::Mul(Box::new(cst(phase)), Box::new(inner.clone()))
        };
        let inv = match inner_inverse {
            Some(g) if unit(-theta) == Complex64::new(1.0, 0.0) => g.clone(),
            Some(g) => ExprAst::Mul(Box::new(cst(unit(-theta))), Box::new(g.clone())),
            None => ExprAst::Div(Box::new(cst(unit(-theta))), Box::new(inner.clone())),
        };
        return (ast, inv);
    }
    let abar = a.conj();
    let ast = ExprAst::Mul(
        Box::new(cst(phase)),
        Box::new(ExprAst::Div(
            Box::new(ExprAst::Sub(Box::new(inner.clone()), Box::new(cst(a)))),
            Box::new(ExprAst::Add(
                Box::new(cst(Complex64::new(1.0, 0.0))),
                Box::new(ExprAst::Mul(Box::new(inner.clone()), Box::new(cst(abar)))),
            )),
        )),
    );
    // 1/(T o f) = e^{-i theta} (1 + f conj(a)) / (f - a); when f itself is
    // given through an inverse chart g = 1/f this becomes
    // e^{-i theta} (g + conj(a)) / (1 - a g), which stays evaluable at the
    // poles of f.
    let inv = match inner_inverse {
        Some(g) => ExprAst::Mul(
            Box::new(cst(unit(-theta))),
            Box::new(ExprAst::Div(
                Box::new(ExprAst::Add(Box::new(g.clone()), Box::new(cst(abar)))),
                Box::new(ExprAst::Sub(
                    Box::new(cst(Complex64::new(1.0, 0.0))),
                    Box::new(ExprAst::Mul(Box::new(cst(a)), Box::new(g.clone()))),
                )),
            )),
        ),
        None => ExprAst::Mul(
            Box::new(cst(unit(-theta))),
            Box::new(ExprAst::Div(
                Box::new(ExprAst::Add(
                    Box::new(cst(Complex64::new(1.0, 0.0))),
                    Box::new(ExprAst::Mul(Box::new(inner.clone()), Box::new(cst(abar)))),
                )),
                Box::new(ExprAst::Sub(Box::new(inner.clone()), Box::new(cst(a)))),
            )),
        ),
    };
    (ast, inv)
}

/// Look up a catalog entry.
///
/// Recognised names: `identity`, `scale(eta)`, `rot(a,theta)`,
/// `invrot(theta)`, `f1`, `f2`, `f3`. Arguments are complex literals like
/// `0.5` or `0.3+0.2i`; `theta` must be real.
pub fn builtin(name: &str) -> Result<MapDefinition, BuiltinError> {
    let name = name.trim();
    let (head, args) = split_args(name)?;
    let bad_args = |msg: &str| BuiltinError::InvalidArguments {
        name: name.to_string(),
        msg: msg.to_string(),
    };

    match (head, args.as_slice()) {
        ("identity", []) => Ok(MapDefinition {
            name: "identity".into(),
            ast: ExprAst::Var,
            inverse_chart: None,
            claimed: ClaimedProperties {
                spherically_convex: true,
                centrally_normalized: true,
                spherical_isometry: true,
            },
        }),
        ("f1", []) => Ok(MapDefinition {
            name: "f1".into(),
            ast: parse(F1_SRC).expect("catalog source parses"),
            inverse_chart: None,
            claimed: ClaimedProperties {
                spherically_convex: true,
                centrally_normalized: true,
                spherical_isometry: false,
            },
        }),
        ("f2", []) => Ok(MapDefinition {
            name: "f2".into(),
            ast: ExprAst::Exp(Box::new(ExprAst::Var)),
            inverse_chart: None,
            claimed: ClaimedProperties {
                spherically_convex: true,
                centrally_normalized: false,
                spherical_isometry: false,
            },
        }),
        ("f3", []) => Ok(MapDefinition {
            name: "f3".into(),
            ast: parse("z^2*exp(z)").expect("catalog source parses"),
            inverse_chart: None,
            claimed: ClaimedProperties::default(),
        }),
        ("scale", [eta]) => {
            let eta = *eta;
            if eta == Complex64::new(0.0, 0.0) {
                return Err(bad_args("scale factor must be nonzero"));
            }
            Ok(MapDefinition {
                name: name.to_string(),
                ast: scaled_var(eta),
                inverse_chart: None,
                claimed: ClaimedProperties {
                    spherically_convex: true,
                    centrally_normalized: true,
                    spherical_isometry: is_unit_modulus(eta),
                },
            })
        }
        ("rot", [a, theta]) => {
            if theta.im != 0.0 {
                return Err(bad_args("rotation angle must be real"));
            }
            let (ast, inv) = rotation_of(&ExprAst::Var, None, *a, theta.re);
            Ok(MapDefinition {
                name: name.to_string(),
                ast,
                inverse_chart: Some(inv),
                claimed: ClaimedProperties {
                    spherically_convex: true,
                    centrally_normalized: *a == Complex64::new(0.0, 0.0),
                    spherical_isometry: true,
                },
            })
        }
        ("invrot", [theta]) => {
            if theta.im != 0.0 {
                return Err(bad_args("rotation angle must be real"));
            }
            let phase = unit(theta.re);
            Ok(MapDefinition {
                name: name.to_string(),
                ast: ExprAst::Div(Box::new(cst(phase)), Box::new(ExprAst::Var)),
                inverse_chart: Some(scaled_var(unit(-theta.re))),
                claimed: ClaimedProperties {
                    spherically_convex: true,
                    centrally_normalized: false,
                    spherical_isometry: true,
                },
            })
        }
        _ => Err(BuiltinError::Unknown(name.to_string())),
    }
}

/// Split `head(arg,arg)` into the head and parsed complex arguments.
fn split_args(name: &str) -> Result<(&str, Vec<Complex64>), BuiltinError> {
    match name.find('(') {
        None => Ok((name, Vec::new())),
        Some(open) => {
            let head = &name[..open];
            let rest = &name[open + 1..];
            let close = rest
                .rfind(')')
                .ok_or_else(|| BuiltinError::InvalidArguments {
                    name: name.to_string(),
                    msg: "missing closing `)`".to_string(),
                })?;
            if !rest[close + 1..].trim().is_empty() {
                return Err(BuiltinError::InvalidArguments {
                    name: name.to_string(),
                    msg: "trailing input after `)`".to_string(),
                });
            }
            let mut args = Vec::new();
            for part in rest[..close].split(',') {
                let v = parse_complex(part).map_err(|e| BuiltinError::InvalidArguments {
                    name: name.to_string(),
                    msg: e.to_string(),
                })?;
                args.push(v);
            }
            Ok((head, args))
        }
    }
}
