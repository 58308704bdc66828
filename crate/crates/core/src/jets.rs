//! Second-order Taylor jets in the two chart variables `(r, tau)`.
//!
//! A [`Jet2`] carries a value together with its gradient and the three
//! independent second partials. Arithmetic applies the Leibniz and chain
//! rules exactly, truncated at second order, so a metric function written
//! once in terms of jets yields every `w'`, `w.`, `v''`, `v.'` ... needed by
//! the curvature pipeline without symbolic algebra or finite differences.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Value plus first and second partial derivatives in `(r, tau)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet2 {
    pub val: f64,
    pub d_r: f64,
    pub d_tau: f64,
    pub d_rr: f64,
    pub d_rtau: f64,
    pub d_tautau: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ElemKind {
    Exp,
    Ln,
    PowConst(f64),
    Sin,
    Cos,
    Sqrt,
}

impl Jet2 {
    pub const ZERO: Jet2 = Jet2 {
        val: 0.0,
        d_r: 0.0,
        d_tau: 0.0,
        d_rr: 0.0,
        d_rtau: 0.0,
        d_tautau: 0.0,
    };

    /// A constant: all derivative fields zero.
    pub fn lift_const(c: f64) -> Self {
        Jet2 {
            val: c,
            ..Jet2::ZERO
        }
    }

    /// The coordinate jet for `r` at `r0`.
    pub fn r_coord(r0: f64) -> Self {
        Jet2 {
            val: r0,
            d_r: 1.0,
            ..Jet2::ZERO
        }
    }

    /// The coordinate jet for `tau` at `tau0`.
    pub fn tau_coord(tau0: f64) -> Self {
        Jet2 {
            val: tau0,
            d_tau: 1.0,
            ..Jet2::ZERO
        }
    }

    /// Seeds both coordinates at a chart point.
    pub fn seed(r0: f64, tau0: f64) -> (Self, Self) {
        (Self::r_coord(r0), Self::tau_coord(tau0))
    }

    pub fn is_finite(&self) -> bool {
        self.fields().iter().all(|x| x.is_finite())
    }

    /// Fields in the order `val, d_r, d_tau, d_rr, d_rtau, d_tautau`.
    pub fn fields(&self) -> [f64; 6] {
        [
            self.val,
            self.d_r,
            self.d_tau,
            self.d_rr,
            self.d_rtau,
            self.d_tautau,
        ]
    }

    pub fn scale(self, k: f64) -> Self {
        Jet2 {
            val: k * self.val,
            d_r: k * self.d_r,
            d_tau: k * self.d_tau,
            d_rr: k * self.d_rr,
            d_rtau: k * self.d_rtau,
            d_tautau: k * self.d_tautau,
        }
    }

    pub fn arith(self, rhs: Jet2, kind: ArithKind) -> Result<Jet2> {
        match kind {
            ArithKind::Add => Ok(self + rhs),
            ArithKind::Sub => Ok(self - rhs),
            ArithKind::Mul => Ok(self * rhs),
            ArithKind::Div => self.try_div(rhs),
        }
    }

    /// Quotient rule, written so that `x / x` is exactly the constant 1.
    pub fn try_div(self, rhs: Jet2) -> Result<Jet2> {
        if rhs.val == 0.0 {
            return Err(Error::DivisionByZero);
        }
        let b = rhs.val;
        let q = self.val / b;
        let q_r = (self.d_r - q * rhs.d_r) / b;
        let q_t = (self.d_tau - q * rhs.d_tau) / b;
        Ok(Jet2 {
            val: q,
            d_r: q_r,
            d_tau: q_t,
            d_rr: (self.d_rr - 2.0 * q_r * rhs.d_r - q * rhs.d_rr) / b,
            d_rtau: (self.d_rtau - q_r * rhs.d_tau - q_t * rhs.d_r - q * rhs.d_rtau) / b,
            d_tautau: (self.d_tautau - 2.0 * q_t * rhs.d_tau - q * rhs.d_tautau) / b,
        })
    }

    pub fn elem(self, kind: ElemKind) -> Result<Jet2> {
        match kind {
            ElemKind::Exp => Ok(self.exp()),
            ElemKind::Ln => self.ln(),
            ElemKind::PowConst(p) => self.pow_const(p),
            ElemKind::Sin => Ok(self.sin()),
            ElemKind::Cos => Ok(self.cos()),
            ElemKind::Sqrt => self.sqrt(),
        }
    }

    /// Applies a scalar function given its value and first two derivatives
    /// at `self.val`.
    fn chain(self, f0: f64, f1: f64, f2: f64) -> Jet2 {
        Jet2 {
            val: f0,
            d_r: f1 * self.d_r,
            d_tau: f1 * self.d_tau,
            d_rr: f2 * self.d_r * self.d_r + f1 * self.d_rr,
            d_rtau: f2 * self.d_r * self.d_tau + f1 * self.d_rtau,
            d_tautau: f2 * self.d_tau * self.d_tau + f1 * self.d_tautau,
        }
    }

    pub fn exp(self) -> Jet2 {
        let e = self.val.exp();
        self.chain(e, e, e)
    }

    pub fn ln(self) -> Result<Jet2> {
        let x = self.val;
        if !(x > 0.0) {
            return Err(Error::domain(format!("ln of non-positive value {x}")));
        }
        Ok(self.chain(x.ln(), 1.0 / x, -1.0 / (x * x)))
    }

    pub fn sqrt(self) -> Result<Jet2> {
        let x = self.val;
        if !(x > 0.0) {
            return Err(Error::domain(format!("sqrt of non-positive value {x}")));
        }
        let s = x.sqrt();
        Ok(self.chain(s, 0.5 / s, -0.25 / (s * x)))
    }

    pub fn sin(self) -> Jet2 {
        let (s, c) = self.val.sin_cos();
        self.chain(s, c, -s)
    }

    pub fn cos(self) -> Jet2 {
        let (s, c) = self.val.sin_cos();
        self.chain(c, -s, -c)
    }

    /// `self^p` for a constant exponent. Non-integer exponents need a
    /// positive base; integer exponents accept any base except zero with a
    /// negative power.
    pub fn pow_const(self, p: f64) -> Result<Jet2> {
        let x = self.val;
        if !p.is_finite() {
            return Err(Error::domain(format!("non-finite exponent {p}")));
        }
        if p == 0.0 {
            return Ok(Jet2::lift_const(1.0));
        }
        let integer = p.fract() == 0.0 && p.abs() < i32::MAX as f64;
        if integer {
            if x == 0.0 && p < 0.0 {
                return Err(Error::DivisionByZero);
            }
            let n = p as i32;
            let pw = |k: i32| if k == 0 { 1.0 } else { x.powi(k) };
            let f1 = p * pw(n - 1);
            let f2 = if n == 1 {
                0.0
            } else {
                p * (p - 1.0) * pw(n - 2)
            };
            return Ok(self.chain(pw(n), f1, f2));
        }
        if !(x > 0.0) {
            return Err(Error::domain(format!(
                "non-integer power {p} of non-positive value {x}"
            )));
        }
        let f0 = x.powf(p);
        Ok(self.chain(f0, p * f0 / x, p * (p - 1.0) * f0 / (x * x)))
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, b: Jet2) -> Jet2 {
        Jet2 {
            val: self.val + b.val,
            d_r: self.d_r + b.d_r,
            d_tau: self.d_tau + b.d_tau,
            d_rr: self.d_rr + b.d_rr,
            d_rtau: self.d_rtau + b.d_rtau,
            d_tautau: self.d_tautau + b.d_tautau,
        }
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, b: Jet2) -> Jet2 {
        Jet2 {
            val: self.val - b.val,
            d_r: self.d_r - b.d_r,
            d_tau: self.d_tau - b.d_tau,
            d_rr: self.d_rr - b.d_rr,
            d_rtau: self.d_rtau - b.d_rtau,
            d_tautau: self.d_tautau - b.d_tautau,
        }
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        self.scale(-1.0)
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, b: Jet2) -> Jet2 {
        let a = self;
        Jet2 {
            val: a.val * b.val,
            d_r: a.d_r * b.val + a.val * b.d_r,
            d_tau: a.d_tau * b.val + a.val * b.d_tau,
            d_rr: a.d_rr * b.val + 2.0 * a.d_r * b.d_r + a.val * b.d_rr,
            d_rtau: a.d_rtau * b.val + a.d_r * b.d_tau + a.d_tau * b.d_r + a.val * b.d_rtau,
            d_tautau: a.d_tautau * b.val + 2.0 * a.d_tau * b.d_tau + a.val * b.d_tautau,
        }
    }
}

impl Add<f64> for Jet2 {
    type Output = Jet2;
    fn add(self, c: f64) -> Jet2 {
        Jet2 {
            val: self.val + c,
            ..self
        }
    }
}

impl Sub<f64> for Jet2 {
    type Output = Jet2;
    fn sub(self, c: f64) -> Jet2 {
        Jet2 {
            val: self.val - c,
            ..self
        }
    }
}

impl Mul<f64> for Jet2 {
    type Output = Jet2;
    fn mul(self, c: f64) -> Jet2 {
        self.scale(c)
    }
}

/// Scalar arithmetic shared by plain `f64` evaluation and jet evaluation, so
/// the profile interpreter runs one code path for both.
pub trait Scalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn constant(c: f64) -> Self;
    fn value(&self) -> f64;
    fn try_div(self, rhs: Self) -> Result<Self>;
    fn exp(self) -> Self;
    fn ln(self) -> Result<Self>;
    fn sqrt(self) -> Result<Self>;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn pow_const(self, p: f64) -> Result<Self>;
}

impl Scalar for Jet2 {
    fn constant(c: f64) -> Self {
        Jet2::lift_const(c)
    }
    fn value(&self) -> f64 {
        self.val
    }
    fn try_div(self, rhs: Self) -> Result<Self> {
        Jet2::try_div(self, rhs)
    }
    fn exp(self) -> Self {
        Jet2::exp(self)
    }
    fn ln(self) -> Result<Self> {
        Jet2::ln(self)
    }
    fn sqrt(self) -> Result<Self> {
        Jet2::sqrt(self)
    }
    fn sin(self) -> Self {
        Jet2::sin(self)
    }
    fn cos(self) -> Self {
        Jet2::cos(self)
    }
    fn pow_const(self, p: f64) -> Result<Self> {
        Jet2::pow_const(self, p)
    }
}

impl Scalar for f64 {
    fn constant(c: f64) -> Self {
        c
    }
    fn value(&self) -> f64 {
        *self
    }
    fn try_div(self, rhs: Self) -> Result<Self> {
        if rhs == 0.0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(self / rhs)
        }
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Result<Self> {
        Jet2::lift_const(self).ln().map(|j| j.val)
    }
    fn sqrt(self) -> Result<Self> {
        Jet2::lift_const(self).sqrt().map(|j| j.val)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn pow_const(self, p: f64) -> Result<Self> {
        Jet2::lift_const(self).pow_const(p).map(|j| j.val)
    }
}
