//! Lexer and recursive-descent parser for [`ExprAst`].

use super::ExprAst;
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    /// `^` only accepts constant integer exponents; write `sqrt(...)` for
    /// half powers.
    #[error("exponent at offset {pos} is not a constant integer")]
    NonIntegerExponent { pos: usize },
}

fn syntax(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        pos,
        msg: msg.into(),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num { value: f64, imaginary: bool },
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            b'*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            b'/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            b'^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            b'(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            b'0'..=b'9' | b'.' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                // exponent part like 1.5e-3
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let text = &src[start..i];
                let value: f64 = text
                    .parse()
                    .map_err(|_| syntax(start, format!("invalid number literal `{text}`")))?;
                let imaginary = i < bytes.len() && bytes[i] == b'i';
                if imaginary {
                    i += 1;
                }
                toks.push((start, Tok::Num { value, imaginary }));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((start, Tok::Ident(src[start..i].to_string())));
            }
            _ => {
                let ch = src[i..].chars().next().unwrap();
                return Err(syntax(i, format!("unexpected character `{ch}`")));
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(o, _)| *o)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(syntax(self.offset(), format!("expected {what}")))
        }
    }

    // expr := term { (+|-) term }
    fn expr(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = ExprAst::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = ExprAst::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    // term := unary { (*|/) unary }
    fn term(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    lhs = ExprAst::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    lhs = ExprAst::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    // unary := '-' unary | power.  A minus applied directly to a literal is
    // folded into the constant so that printed constants re-parse to the
    // same tree.
    fn unary(&mut self) -> Result<ExprAst, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            let inner = self.unary()?;
            return Ok(match inner {
                ExprAst::Const(c) => ExprAst::Const(-c),
                other => ExprAst::Neg(Box::new(other)),
            });
        }
        self.power()
    }

    // power := atom [ '^' exponent ], right-associative via the exponent
    // itself being a unary expression that is folded to an integer.
    fn power(&mut self) -> Result<ExprAst, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let exp_offset = self.offset();
        let exp_ast = self.unary()?;
        let n = fold_integer(&exp_ast)
            .ok_or(ParseError::NonIntegerExponent { pos: exp_offset })?;
        Ok(ExprAst::PowInt(Box::new(base), n))
    }

    fn atom(&mut self) -> Result<ExprAst, ParseError> {
        let offset = self.offset();
        match self.bump() {
            Some(Tok::Num { value, imaginary }) => {
                let c = if imaginary {
                    Complex64::new(0.0, value)
                } else {
                    Complex64::new(value, 0.0)
                };
                Ok(ExprAst::Const(c))
            }
            Some(Tok::Ident(name)) => match name.as_str() {
                "z" => Ok(ExprAst::Var),
                "i" => Ok(ExprAst::Const(Complex64::new(0.0, 1.0))),
                "exp" | "sqrt" => {
                    self.expect(Tok::LParen, "`(` after function name")?;
                    let arg = self.expr()?;
                    self.expect(Tok::RParen, "closing `)`")?;
                    Ok(match name.as_str() {
                        "exp" => ExprAst::Exp(Box::new(arg)),
                        _ => ExprAst::Sqrt(Box::new(arg)),
                    })
                }
                other => Err(syntax(offset, format!("unknown identifier `{other}`"))),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "closing `)`")?;
                Ok(inner)
            }
            Some(_) => Err(syntax(offset, "expected a value")),
            None => Err(syntax(offset, "unexpected end of input")),
        }
    }
}

/// Evaluate a constant subtree; `None` if it contains `z` or is not finite.
fn fold_const(ast: &ExprAst) -> Option<Complex64> {
    let v = match ast {
        ExprAst::Var => return None,
        ExprAst::Const(c) => *c,
        ExprAst::Neg(a) => -fold_const(a)?,
        ExprAst::Add(a, b) => fold_const(a)? + fold_const(b)?,
        ExprAst::Sub(a, b) => fold_const(a)? - fold_const(b)?,
        ExprAst::Mul(a, b) => fold_const(a)? * fold_const(b)?,
        ExprAst::Div(a, b) => fold_const(a)? / fold_const(b)?,
        ExprAst::PowInt(a, n) => fold_const(a)?.powi(*n),
        ExprAst::Exp(a) => fold_const(a)?.exp(),
        ExprAst::Sqrt(a) => fold_const(a)?.sqrt(),
    };
    v.is_finite().then_some(v)
}

fn fold_integer(ast: &ExprAst) -> Option<i32> {
    let v = fold_const(ast)?;
    if v.im != 0.0 || v.re.fract() != 0.0 || v.re.abs() > i32::MAX as f64 {
        return None;
    }
    Some(v.re as i32)
}

/// Parse an expression in the variable `z`.
pub fn parse(src: &str) -> Result<ExprAst, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        end: src.len(),
    };
    let ast = p.expr()?;
    if p.pos != toks.len() {
        return Err(syntax(p.offset(), "trailing input after expression"));
    }
    Ok(ast)
}

/// Parse a complex literal of the form `a`, `bi`, `a+bi` or `a-bi`
/// (no spaces), as used for command-line arguments.
pub fn parse_complex(src: &str) -> Result<Complex64, ParseError> {
    let s = src.trim();
    if s.is_empty() {
        return Err(syntax(0, "empty complex literal"));
    }
    let ast = parse(s)?;
    fold_const(&ast).ok_or_else(|| syntax(0, format!("`{s}` is not a constant")))
}
