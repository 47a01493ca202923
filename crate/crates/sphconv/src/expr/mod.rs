//! Expressions in one complex variable `z` and the built-in map catalog.
//!
//! The grammar understood by [`parse`] has the usual precedence
//! (`^` > unary `-` > `*` `/` > `+` `-`), `^` is right-associative and only
//! accepts constant integer exponents, and the functions `exp` and `sqrt`
//! (principal branch) are available. Complex literals are written like
//! `1.5`, `2i` or `1+2i`.

mod catalog;
mod parse;

pub use catalog::{builtin, BuiltinError};
pub(crate) use catalog::rotation_of as catalog_rotation;
pub use parse::{parse, parse_complex, ParseError};

use num_complex::Complex64;
use std::fmt;

/// Parsed expression tree over the variable `z`.
///
/// Trees are immutable after construction; all constants are finite.
#[derive(Debug, Clone, PartialEq)]
pub enum ExprAst {
    /// The variable `z`.
    Var,
    /// A finite complex constant.
    Const(Complex64),
    Neg(Box<ExprAst>),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Div(Box<ExprAst>, Box<ExprAst>),
    /// Integer power, possibly negative. `z^0.5` is rejected at parse time.
    PowInt(Box<ExprAst>, i32),
    Exp(Box<ExprAst>),
    /// Principal branch, cut along the negative reals.
    Sqrt(Box<ExprAst>),
}

/// Properties a catalog entry claims to have. Claims only select which
/// checks apply; they are re-verified numerically where possible.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct ClaimedProperties {
    pub spherically_convex: bool,
    pub centrally_normalized: bool,
    pub spherical_isometry: bool,
}

/// A named map of the unit disk into the Riemann sphere.
///
/// `inverse_chart`, when present, is an expression for `1/f`; it is used to
/// evaluate near poles of `f` and wherever `|f| > 1`, keeping all chart
/// values bounded by one in modulus.
#[derive(Debug, Clone)]
pub struct MapDefinition {
    pub name: String,
    pub ast: ExprAst,
    pub inverse_chart: Option<ExprAst>,
    pub claimed: ClaimedProperties,
}

impl MapDefinition {
    /// Wrap a parsed expression with no claimed properties.
    pub fn from_expr(name: impl Into<String>, ast: ExprAst) -> Self {
        MapDefinition {
            name: name.into(),
            ast,
            inverse_chart: None,
            claimed: ClaimedProperties::default(),
        }
    }
}

impl ExprAst {
    /// Precedence level used by the pretty-printer. Higher binds tighter.
    fn prec(&self) -> u8 {
        match self {
            ExprAst::Add(..) | ExprAst::Sub(..) => 1,
            ExprAst::Mul(..) | ExprAst::Div(..) => 2,
            ExprAst::Neg(..) => 3,
            ExprAst::PowInt(..) => 4,
            ExprAst::Var | ExprAst::Exp(..) | ExprAst::Sqrt(..) => 5,
            ExprAst::Const(c) => {
                if c.re != 0.0 && c.im != 0.0 {
                    1 // prints as `a+bi`
                } else if c.re < 0.0 || c.im < 0.0 {
                    3 // prints with a leading minus
                } else {
                    5
                }
            }
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        let prec = self.prec();
        if prec < min_prec {
            write!(f, "(")?;
        }
        match self {
            ExprAst::Var => write!(f, "z")?,
            ExprAst::Const(c) => fmt_complex(f, *c)?,
            ExprAst::Neg(a) => {
                write!(f, "-")?;
                a.fmt_prec(f, 4)?;
            }
            ExprAst::Add(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, "+")?;
                b.fmt_prec(f, 2)?;
            }
            ExprAst::Sub(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, "-")?;
                b.fmt_prec(f, 2)?;
            }
            ExprAst::Mul(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, "*")?;
                b.fmt_prec(f, 3)?;
            }
            ExprAst::Div(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, "/")?;
                b.fmt_prec(f, 3)?;
            }
            ExprAst::PowInt(a, n) => {
                a.fmt_prec(f, 5)?;
                write!(f, "^{}", n)?;
            }
            ExprAst::Exp(a) => write!(f, "exp({})", a)?,
            ExprAst::Sqrt(a) => write!(f, "sqrt({})", a)?,
        }
        if prec < min_prec {
            write!(f, ")")?;
        }
        Ok(())
    }
}

fn fmt_complex(f: &mut fmt::Formatter<'_>, c: Complex64) -> fmt::Result {
    if c.im == 0.0 {
        write!(f, "{}", c.re)
    } else if c.re == 0.0 {
        write!(f, "{}i", c.im)
    } else if c.im < 0.0 {
        write!(f, "{}-{}i", c.re, -c.im)
    } else {
        write!(f, "{}+{}i", c.re, c.im)
    }
}

/// Prints a form that re-parses to a structurally identical tree (after the
/// parser's own constant-sign folding).
impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}
