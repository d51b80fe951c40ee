//! Arithmetic expressions in `t` used as forcing terms.
//!
//! Grammar:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('-' | '+') unary | power
//! power   := primary ('^' unary)?
//! primary := number | 't' | 'pi' | 'e' | '(' expr ')' | '|' expr '|'
//!          | name '(' expr (',' expr)* ')'
//! ```
//!
//! Functions: `cos sin tan cosh sinh tanh exp ln sqrt abs arctan pow`,
//! plus the piecewise terms `bump(eps)` (`12t(eps-t)` on `[0,eps]`) and
//! `step(t1,t2)` (indicator of `[t1,t2]`). Their arguments must be constant.
//!
//! Parsing records breakpoints (edges of `bump`/`step`, kinks of `abs` of an
//! affine argument) and singular points (`|t-x|^p` with `p<0`, `ln|t-x|`,
//! division by such terms).

use std::fmt;

use crate::error::Error;
use crate::quadrature::{Features, Forcing};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::InvalidInput(format!("forcing expression {e}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Cos,
    Sin,
    Tan,
    Cosh,
    Sinh,
    Tanh,
    Exp,
    Ln,
    Sqrt,
    Abs,
    Arctan,
}

impl Func {
    fn lookup(name: &str) -> Option<Self> {
        Some(match name {
            "cos" => Func::Cos,
            "sin" => Func::Sin,
            "tan" => Func::Tan,
            "cosh" => Func::Cosh,
            "sinh" => Func::Sinh,
            "tanh" => Func::Tanh,
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "sqrt" => Func::Sqrt,
            "abs" => Func::Abs,
            "arctan" => Func::Arctan,
            _ => return None,
        })
    }

    fn apply(self, x: f64) -> f64 {
        match self {
            Func::Cos => x.cos(),
            Func::Sin => x.sin(),
            Func::Tan => x.tan(),
            Func::Cosh => x.cosh(),
            Func::Sinh => x.sinh(),
            Func::Tanh => x.tanh(),
            Func::Exp => x.exp(),
            Func::Ln => x.ln(),
            Func::Sqrt => x.sqrt(),
            Func::Abs => x.abs(),
            Func::Arctan => x.atan(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    T,
    Num(f64),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
    Bump(f64),
    Step(f64, f64),
}

impl Expr {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Expr::T => t,
            Expr::Num(x) => *x,
            Expr::Neg(e) => -e.eval(t),
            Expr::Bin(op, l, r) => {
                let (x, y) = (l.eval(t), r.eval(t));
                match op {
                    BinOp::Add => x + y,
                    BinOp::Sub => x - y,
                    BinOp::Mul => x * y,
                    BinOp::Div => x / y,
                    BinOp::Pow => x.powf(y),
                }
            }
            Expr::Call(f, e) => f.apply(e.eval(t)),
            Expr::Bump(eps) => {
                if 0.0 <= t && t <= *eps {
                    12.0 * t * (eps - t)
                } else {
                    0.0
                }
            }
            Expr::Step(t1, t2) => {
                if *t1 <= t && t <= *t2 {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// True when the value does not depend on `t`.
    pub fn is_constant(&self) -> bool {
        match self {
            Expr::T | Expr::Bump(_) | Expr::Step(..) => false,
            Expr::Num(_) => true,
            Expr::Neg(e) | Expr::Call(_, e) => e.is_constant(),
            Expr::Bin(_, l, r) => l.is_constant() && r.is_constant(),
        }
    }

    fn constant(&self) -> Option<f64> {
        self.is_constant().then(|| self.eval(0.0))
    }

    /// `(slope, intercept)` if the expression is affine in `t`.
    fn affine(&self) -> Option<(f64, f64)> {
        if let Some(c) = self.constant() {
            return Some((0.0, c));
        }
        match self {
            Expr::T => Some((1.0, 0.0)),
            Expr::Neg(e) => e.affine().map(|(m, q)| (-m, -q)),
            Expr::Bin(op, l, r) => {
                let (lm, lq) = l.affine()?;
                let (rm, rq) = r.affine()?;
                match op {
                    BinOp::Add => Some((lm + rm, lq + rq)),
                    BinOp::Sub => Some((lm - rm, lq - rq)),
                    BinOp::Mul if lm == 0.0 => Some((lq * rm, lq * rq)),
                    BinOp::Mul if rm == 0.0 => Some((rq * lm, rq * lq)),
                    BinOp::Div if rm == 0.0 => Some((lm / rq, lq / rq)),
                    _ => None,
                }
            }
            _ => None,
        }
    }

    /// Root of an affine, non-constant expression.
    fn affine_root(&self) -> Option<f64> {
        match self.affine()? {
            (m, q) if m != 0.0 => Some(-q / m),
            _ => None,
        }
    }

    /// Point where `|self|` vanishes, when `self` is `|affine|` or `affine`.
    fn vanishing_point(&self) -> Option<f64> {
        match self {
            Expr::Call(Func::Abs, e) => e.affine_root(),
            e => e.affine_root(),
        }
    }

    fn collect(&self, out: &mut Features) {
        match self {
            Expr::T | Expr::Num(_) => {}
            Expr::Bump(eps) => out.breakpoints.extend([0.0, *eps]),
            Expr::Step(t1, t2) => out.breakpoints.extend([*t1, *t2]),
            Expr::Neg(e) => e.collect(out),
            Expr::Call(f, e) => {
                e.collect(out);
                match f {
                    Func::Abs => out.breakpoints.extend(e.affine_root()),
                    Func::Ln => out.singular_points.extend(e.vanishing_point()),
                    _ => {}
                }
            }
            Expr::Bin(op, l, r) => {
                l.collect(out);
                r.collect(out);
                match op {
                    BinOp::Pow => {
                        if let Some(p) = r.constant() {
                            if p < 0.0 {
                                out.singular_points.extend(l.vanishing_point());
                            } else if p.fract() != 0.0 {
                                out.breakpoints.extend(l.vanishing_point());
                            }
                        }
                    }
                    BinOp::Div => {
                        let pole = match r.as_ref() {
                            Expr::Bin(BinOp::Pow, base, p)
                                if p.constant().is_some_and(|p| p > 0.0) =>
                            {
                                base.vanishing_point()
                            }
                            e => e.vanishing_point(),
                        };
                        out.singular_points.extend(pole);
                    }
                    _ => {}
                }
            }
        }
    }
}

/// A parsed forcing term with its breakpoint and singularity metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct ForcingExpr {
    source: String,
    expr: Expr,
    features: Features,
}

impl ForcingExpr {
    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn features(&self) -> &Features {
        &self.features
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.expr.eval(t)
    }

    pub fn to_forcing(&self) -> Forcing {
        let expr = self.expr.clone();
        Forcing::new(move |t| expr.eval(t)).with_features(self.features.clone())
    }
}

impl fmt::Display for ForcingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

impl std::str::FromStr for ForcingExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_forcing(s)
    }
}

pub fn parse_forcing(text: &str) -> Result<ForcingExpr, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error(format!("unexpected '{}'", p.rest_char())));
    }
    let mut raw = Features::none();
    expr.collect(&mut raw);
    let features = Features::new(raw.breakpoints, raw.singular_points);
    Ok(ForcingExpr {
        source: text.to_owned(),
        expr,
        features,
    })
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn rest_char(&self) -> char {
        self.src[self.pos..].chars().next().unwrap_or('\0')
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else if self.pos >= self.src.len() {
            Err(self.error(format!("expected '{c}', found end of input")))
        } else {
            Err(self.error(format!("expected '{c}', found '{}'", self.rest_char())))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat('+') {
                BinOp::Add
            } else if self.eat('-') {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat('*') {
                BinOp::Mul
            } else if self.eat('/') {
                BinOp::Div
            } else {
                return Ok(lhs);
            };
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if self.eat('^') {
            let exponent = self.unary()?;
            Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exponent)))
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some('|') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect('|')?;
                Ok(Expr::Call(Func::Abs, Box::new(e)))
            }
            Some(c) if c.is_ascii_digit() || c == '.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == '_' => self.identifier(),
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
        }
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut end = start;
        while end < bytes.len() && (bytes[end].is_ascii_digit() || bytes[end] == b'.') {
            end += 1;
        }
        if end < bytes.len() && (bytes[end] == b'e' || bytes[end] == b'E') {
            let mut k = end + 1;
            if k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
                k += 1;
            }
            if k < bytes.len() && bytes[k].is_ascii_digit() {
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                end = k;
            }
        }
        let text = &self.src[start..end];
        let value = text
            .parse::<f64>()
            .map_err(|_| self.error(format!("malformed number '{text}'")))?;
        self.pos = end;
        Ok(Expr::Num(value))
    }

    fn identifier(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        let len = self.src[start..]
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.src.len() - start);
        let name = &self.src[start..start + len];
        self.pos += len;
        match name {
            "t" => return Ok(Expr::T),
            "pi" => return Ok(Expr::Num(std::f64::consts::PI)),
            "e" => return Ok(Expr::Num(std::f64::consts::E)),
            _ => {}
        }
        let known = Func::lookup(name).is_some() || matches!(name, "pow" | "bump" | "step");
        if !known {
            self.pos = start;
            return Err(self.error(format!("unknown identifier '{name}'")));
        }
        let args_at = self.pos;
        let args = self.arguments()?;
        let argc = args.len();
        let arity = |n: usize| -> Result<(), ParseError> {
            if argc == n {
                Ok(())
            } else {
                Err(ParseError {
                    offset: args_at,
                    message: format!("{name} takes {n} argument(s), got {argc}"),
                })
            }
        };
        let constant = |e: &Expr| -> Result<f64, ParseError> {
            e.constant().ok_or_else(|| ParseError {
                offset: args_at,
                message: format!("arguments of {name} must not depend on t"),
            })
        };
        let mut args = args.into_iter();
        match name {
            "pow" => {
                arity(2)?;
                let (base, p) = (args.next().unwrap(), args.next().unwrap());
                Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(p)))
            }
            "bump" => {
                arity(1)?;
                let eps = constant(&args.next().unwrap())?;
                if !(eps.is_finite() && eps > 0.0) {
                    return Err(ParseError {
                        offset: args_at,
                        message: format!("bump width must be positive and finite, got {eps}"),
                    });
                }
                Ok(Expr::Bump(eps))
            }
            "step" => {
                arity(2)?;
                let t1 = constant(&args.next().unwrap())?;
                let t2 = constant(&args.next().unwrap())?;
                if !(t1.is_finite() && t2.is_finite() && t1 <= t2) {
                    return Err(ParseError {
                        offset: args_at,
                        message: format!("step needs finite t1 <= t2, got ({t1}, {t2})"),
                    });
                }
                Ok(Expr::Step(t1, t2))
            }
            _ => {
                arity(1)?;
                let f = Func::lookup(name).expect("checked above");
                Ok(Expr::Call(f, Box::new(args.next().unwrap())))
            }
        }
    }

    fn arguments(&mut self) -> Result<Vec<Expr>, ParseError> {
        self.expect('(')?;
        let mut args = vec![self.expr()?];
        while self.eat(',') {
            args.push(self.expr()?);
        }
        self.expect(')')?;
        Ok(args)
    }
}
