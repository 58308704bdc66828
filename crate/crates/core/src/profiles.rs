//! Radial profile expressions `F(r)`, `G(r)`.
//!
//! Grammar (highest precedence last):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' unary)?          right-associative
//! atom   := number | 'r' | func '(' expr ')' | '(' expr ')'
//! func   := exp | ln | sin | cos | sqrt
//! ```
//!
//! `-2^2` is `-(2^2)`, and `2^3^2` is `2^(3^2)`. The only free variable is
//! `r`; any other identifier (including `G`) is rejected.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::jets::{Jet2, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Ln,
    Sin,
    Cos,
    Sqrt,
}

impl Func {
    fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }

    fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sqrt => "sqrt",
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
    Num(f64),
    Var,
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn depends_on_r(&self) -> bool {
        match self {
            Expr::Num(_) => false,
            Expr::Var => true,
            Expr::Neg(e) | Expr::Call(_, e) => e.depends_on_r(),
            Expr::Bin(_, a, b) => a.depends_on_r() || b.depends_on_r(),
        }
    }

    pub fn eval<S: Scalar>(&self, r: S) -> Result<S> {
        Ok(match self {
            Expr::Num(c) => S::constant(*c),
            Expr::Var => r,
            Expr::Neg(e) => -e.eval(r)?,
            Expr::Bin(op, a, b) => {
                let x = a.eval(r)?;
                match op {
                    BinOp::Add => x + b.eval(r)?,
                    BinOp::Sub => x - b.eval(r)?,
                    BinOp::Mul => x * b.eval(r)?,
                    BinOp::Div => x.try_div(b.eval(r)?)?,
                    BinOp::Pow if !b.depends_on_r() => x.pow_const(b.eval(0.0)?)?,
                    BinOp::Pow => (b.eval(r)? * x.ln()?).exp(),
                }
            }
            Expr::Call(f, e) => {
                let x = e.eval(r)?;
                match f {
                    Func::Exp => x.exp(),
                    Func::Ln => x.ln()?,
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Sqrt => x.sqrt()?,
                }
            }
        })
    }

    /// Symbolic derivative with respect to `r`, lightly simplified.
    pub fn derivative(&self) -> Expr {
        use Expr::*;
        match self {
            Num(_) => Num(0.0),
            Var => Num(1.0),
            Neg(e) => neg(e.derivative()),
            Bin(BinOp::Add, a, b) => add(a.derivative(), b.derivative()),
            Bin(BinOp::Sub, a, b) => sub(a.derivative(), b.derivative()),
            Bin(BinOp::Mul, a, b) => add(
                mul(a.derivative(), (**b).clone()),
                mul((**a).clone(), b.derivative()),
            ),
            Bin(BinOp::Div, a, b) => div(
                sub(
                    mul(a.derivative(), (**b).clone()),
                    mul((**a).clone(), b.derivative()),
                ),
                pow((**b).clone(), Num(2.0)),
            ),
            Bin(BinOp::Pow, base, ex) if !ex.depends_on_r() => mul(
                mul(
                    (**ex).clone(),
                    pow((**base).clone(), sub((**ex).clone(), Num(1.0))),
                ),
                base.derivative(),
            ),
            Bin(BinOp::Pow, base, ex) => mul(
                self.clone(),
                add(
                    mul(ex.derivative(), call(Func::Ln, (**base).clone())),
                    div(mul((**ex).clone(), base.derivative()), (**base).clone()),
                ),
            ),
            Call(f, e) => {
                let inner = e.derivative();
                let outer = match f {
                    Func::Exp => self.clone(),
                    Func::Ln => return div(inner, (**e).clone()),
                    Func::Sin => call(Func::Cos, (**e).clone()),
                    Func::Cos => neg(call(Func::Sin, (**e).clone())),
                    Func::Sqrt => return div(inner, mul(Num(2.0), self.clone())),
                };
                mul(outer, inner)
            }
        }
    }
}

fn is_num(e: &Expr, c: f64) -> bool {
    matches!(e, Expr::Num(x) if *x == c)
}

fn neg(e: Expr) -> Expr {
    if is_num(&e, 0.0) {
        Expr::Num(0.0)
    } else {
        Expr::Neg(Box::new(e))
    }
}

fn add(a: Expr, b: Expr) -> Expr {
    if is_num(&a, 0.0) {
        b
    } else if is_num(&b, 0.0) {
        a
    } else {
        Expr::Bin(BinOp::Add, Box::new(a), Box::new(b))
    }
}

fn sub(a: Expr, b: Expr) -> Expr {
    if is_num(&b, 0.0) {
        a
    } else if is_num(&a, 0.0) {
        neg(b)
    } else {
        Expr::Bin(BinOp::Sub, Box::new(a), Box::new(b))
    }
}

fn mul(a: Expr, b: Expr) -> Expr {
    if is_num(&a, 0.0) || is_num(&b, 0.0) {
        Expr::Num(0.0)
    } else if is_num(&a, 1.0) {
        b
    } else if is_num(&b, 1.0) {
        a
    } else {
        Expr::Bin(BinOp::Mul, Box::new(a), Box::new(b))
    }
}

fn div(a: Expr, b: Expr) -> Expr {
    if is_num(&a, 0.0) {
        Expr::Num(0.0)
    } else if is_num(&b, 1.0) {
        a
    } else {
        Expr::Bin(BinOp::Div, Box::new(a), Box::new(b))
    }
}

fn pow(a: Expr, b: Expr) -> Expr {
    Expr::Bin(BinOp::Pow, Box::new(a), Box::new(b))
}

fn call(f: Func, e: Expr) -> Expr {
    Expr::Call(f, Box::new(e))
}

impl fmt::Display for Expr {
    /// Fully parenthesised binary operations; re-parsing the output gives
    /// back the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(x) => write!(f, "{x:?}"),
            Expr::Var => f.write_str("r"),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Bin(op, a, b) => {
                let sym = match op {
                    BinOp::Add => "+",
                    BinOp::Sub => "-",
                    BinOp::Mul => "*",
                    BinOp::Div => "/",
                    BinOp::Pow => "^",
                };
                write!(f, "({a} {sym} {b})")
            }
            Expr::Call(func, e) => write!(f, "{}({e})", func.name()),
        }
    }
}

/// A parsed radial profile.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    pub source: String,
    pub ast: Expr,
}

impl Profile {
    pub fn parse(source: &str) -> Result<Profile> {
        let ast = Parser::new(source).parse()?;
        Ok(Profile {
            source: source.to_owned(),
            ast,
        })
    }

    pub fn eval(&self, r: f64) -> Result<f64> {
        self.ast.eval(r)
    }

    /// Jet-valued evaluation. With the `r` coordinate jet as input every
    /// `tau` field of the result is zero.
    pub fn eval_jet(&self, r: Jet2) -> Result<Jet2> {
        self.ast.eval(r)
    }

    /// The profile `dF/dr`, as a new expression.
    pub fn derivative(&self) -> Profile {
        let ast = self.ast.derivative();
        Profile {
            source: ast.to_string(),
            ast,
        }
    }

    /// True when the expression is the literal constant zero.
    pub fn is_zero(&self) -> bool {
        matches!(self.ast, Expr::Num(x) if x == 0.0)
    }
}

impl FromStr for Profile {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Profile::parse(s)
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    End,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    tok: Tok,
    tok_start: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            pos: 0,
            tok: Tok::End,
            tok_start: 0,
        }
    }

    fn parse(mut self) -> Result<Expr> {
        self.advance()?;
        let e = self.expr()?;
        if self.tok != Tok::End {
            return Err(self.error("unexpected trailing input"));
        }
        Ok(e)
    }

    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            offset: self.tok_start,
            message: msg.to_owned(),
        }
    }

    fn advance(&mut self) -> Result<()> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.tok_start = self.pos;
        let Some(&b) = bytes.get(self.pos) else {
            self.tok = Tok::End;
            return Ok(());
        };
        if b.is_ascii_digit() || b == b'.' {
            let start = self.pos;
            while self.pos < bytes.len()
                && (bytes[self.pos].is_ascii_digit() || bytes[self.pos] == b'.')
            {
                self.pos += 1;
            }
            if self.pos < bytes.len() && matches!(bytes[self.pos], b'e' | b'E') {
                let mut p = self.pos + 1;
                if p < bytes.len() && matches!(bytes[p], b'+' | b'-') {
                    p += 1;
                }
                if p < bytes.len() && bytes[p].is_ascii_digit() {
                    while p < bytes.len() && bytes[p].is_ascii_digit() {
                        p += 1;
                    }
                    self.pos = p;
                }
            }
            let text = &self.src[start..self.pos];
            let value: f64 = text
                .parse()
                .map_err(|_| self.error(&format!("malformed number `{text}`")))?;
            self.tok = Tok::Num(value);
        } else if b.is_ascii_alphabetic() || b == b'_' {
            let start = self.pos;
            while self.pos < bytes.len()
                && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_')
            {
                self.pos += 1;
            }
            self.tok = Tok::Ident(self.src[start..self.pos].to_owned());
        } else if matches!(b, b'+' | b'-' | b'*' | b'/' | b'^' | b'(' | b')') {
            self.pos += 1;
            self.tok = Tok::Op(b as char);
        } else {
            let ch = self.src[self.pos..].chars().next().unwrap_or('?');
            return Err(self.error(&format!("unexpected character `{ch}`")));
        }
        Ok(())
    }

    fn eat(&mut self, op: char) -> Result<bool> {
        if self.tok == Tok::Op(op) {
            self.advance()?;
            Ok(true)
        } else {
            Ok(false)
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat('+')? {
                BinOp::Add
            } else if self.eat('-')? {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat('*')? {
                BinOp::Mul
            } else if self.eat('/')? {
                BinOp::Div
            } else {
                return Ok(lhs);
            };
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-')? {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^')? {
            let ex = self.unary()?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(ex)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.tok.clone() {
            Tok::Num(x) => {
                self.advance()?;
                Ok(Expr::Num(x))
            }
            Tok::Ident(name) => {
                let offset = self.tok_start;
                if name == "r" {
                    self.advance()?;
                    return Ok(Expr::Var);
                }
                let Some(func) = Func::from_name(&name) else {
                    return Err(Error::UnknownIdentifier { name, offset });
                };
                self.advance()?;
                if !self.eat('(')? {
                    return Err(self.error(&format!("expected `(` after `{name}`")));
                }
                let arg = self.expr()?;
                if !self.eat(')')? {
                    return Err(self.error("expected `)`"));
                }
                Ok(Expr::Call(func, Box::new(arg)))
            }
            Tok::Op('(') => {
                self.advance()?;
                let e = self.expr()?;
                if !self.eat(')')? {
                    return Err(self.error("expected `)`"));
                }
                Ok(e)
            }
            Tok::Op(c) => Err(self.error(&format!("unexpected `{c}`"))),
            Tok::End => Err(self.error("unexpected end of input")),
        }
    }
}
