//! Exact first and second complex derivatives via second-order forward jets.
//!
//! A [`Jet2`] carries `(f, f', f'')` at a point; arithmetic propagates the
//! chain and product rules so that [`eval_jet`] returns derivatives exact up
//! to floating-point rounding. The convexity function mixes `f`, `f'` and
//! `f''` and is differenced again in the Laplacian checks, so derivative
//! noise has to stay at rounding level; numerical differentiation would not
//! be good enough here.

use crate::expr::ExprAst;
use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum EvalError {
    #[error("division by zero at z = {z}")]
    Pole { z: Complex64 },
    #[error("sqrt of zero at z = {z}: derivative is singular")]
    Branch { z: Complex64 },
    #[error("non-finite value produced at z = {z}")]
    NonFinite { z: Complex64 },
}

/// Value, first and second derivative of a function at a point.
///
/// `d2` is the raw second derivative `f''`, not the Taylor coefficient
/// `f''/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub v: Complex64,
    pub d1: Complex64,
    pub d2: Complex64,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

impl Jet2 {
    /// Seed for the variable: `(z, 1, 0)`.
    pub fn variable(z: Complex64) -> Self {
        Jet2 {
            v: z,
            d1: Complex64::new(1.0, 0.0),
            d2: ZERO,
        }
    }

    /// Seed for a constant: `(c, 0, 0)`.
    pub fn constant(c: Complex64) -> Self {
        Jet2 {
            v: c,
            d1: ZERO,
            d2: ZERO,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.v.is_finite() && self.d1.is_finite() && self.d2.is_finite()
    }

    /// `1/u`: `w' = -u'/u^2`, `w'' = 2 u'^2/u^3 - u''/u^2`.
    fn recip(self, at: Complex64) -> Result<Self, EvalError> {
        if self.v == ZERO {
            return Err(EvalError::Pole { z: at });
        }
        let w = self.v.inv();
        let w2 = w * w;
        Ok(Jet2 {
            v: w,
            d1: -self.d1 * w2,
            d2: 2.0 * self.d1 * self.d1 * w2 * w - self.d2 * w2,
        })
    }

    /// `e^u`: `w' = u' w`, `w'' = (u'' + u'^2) w`.
    fn exp(self) -> Self {
        let w = self.v.exp();
        Jet2 {
            v: w,
            d1: self.d1 * w,
            d2: (self.d2 + self.d1 * self.d1) * w,
        }
    }

    /// Principal `sqrt(u)`: `w' = u'/(2w)`, `w'' = (u'' - 2 w'^2)/(2w)`.
    fn sqrt(self, at: Complex64) -> Result<Self, EvalError> {
        if self.v == ZERO {
            return Err(EvalError::Branch { z: at });
        }
        let w = self.v.sqrt();
        let half_inv = (2.0 * w).inv();
        let d1 = self.d1 * half_inv;
        Ok(Jet2 {
            v: w,
            d1,
            d2: (self.d2 - 2.0 * d1 * d1) * half_inv,
        })
    }

    /// `u^n` for integer `n`, negative exponents via the reciprocal.
    fn powi(self, n: i32, at: Complex64) -> Result<Self, EvalError> {
        match n {
            0 => Ok(Jet2::constant(Complex64::new(1.0, 0.0))),
            1 => Ok(self),
            n if n < 0 => self.powi(-n, at)?.recip(at),
            n => {
                // n >= 2, so the v^(n-2) factor never has a negative exponent
                let nn = f64::from(n);
                let p2 = self.v.powi(n - 2);
                let p1 = p2 * self.v;
                Ok(Jet2 {
                    v: p1 * self.v,
                    d1: nn * p1 * self.d1,
                    d2: nn * (nn - 1.0) * p2 * self.d1 * self.d1 + nn * p1 * self.d2,
                })
            }
        }
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, rhs: Jet2) -> Jet2 {
        Jet2 {
            v: self.v + rhs.v,
            d1: self.d1 + rhs.d1,
            d2: self.d2 + rhs.d2,
        }
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: Jet2) -> Jet2 {
        Jet2 {
            v: self.v - rhs.v,
            d1: self.d1 - rhs.d1,
            d2: self.d2 - rhs.d2,
        }
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        Jet2 {
            v: -self.v,
            d1: -self.d1,
            d2: -self.d2,
        }
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    // (uv)'' = u''v + 2u'v' + uv''
    fn mul(self, rhs: Jet2) -> Jet2 {
        Jet2 {
            v: self.v * rhs.v,
            d1: self.d1 * rhs.v + self.v * rhs.d1,
            d2: self.d2 * rhs.v + 2.0 * self.d1 * rhs.d1 + self.v * rhs.d2,
        }
    }
}

/// Evaluate `(f(z), f'(z), f''(z))` for the expression `ast`.
pub fn eval_jet(ast: &ExprAst, z: Complex64) -> Result<Jet2, EvalError> {
    let jet = eval_node(ast, z)?;
    if jet.is_finite() {
        Ok(jet)
    } else {
        Err(EvalError::NonFinite { z })
    }
}

fn eval_node(ast: &ExprAst, z: Complex64) -> Result<Jet2, EvalError> {
    Ok(match ast {
        ExprAst::Var => Jet2::variable(z),
        ExprAst::Const(c) => Jet2::constant(*c),
        ExprAst::Neg(a) => -eval_node(a, z)?,
        ExprAst::Add(a, b) => eval_node(a, z)? + eval_node(b, z)?,
        ExprAst::Sub(a, b) => eval_node(a, z)? - eval_node(b, z)?,
        ExprAst::Mul(a, b) => eval_node(a, z)? * eval_node(b, z)?,
        // quotient as a product with the reciprocal
        ExprAst::Div(a, b) => eval_node(a, z)? * eval_node(b, z)?.recip(z)?,
        ExprAst::PowInt(a, n) => eval_node(a, z)?.powi(*n, z)?,
        ExprAst::Exp(a) => eval_node(a, z)?.exp(),
        ExprAst::Sqrt(a) => eval_node(a, z)?.sqrt(z)?,
    })
}
