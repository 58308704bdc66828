//! Random smooth expressions in `(r, tau)` and a finite-difference oracle
//! for their jets.

use qsp_core::jets::Scalar;
use qsp_core::Result;
use rand::Rng;

/// Expressions in `(r, tau)` built so every node stays smooth and finite on
/// the sampled box.
#[derive(Debug, Clone)]
pub enum Node {
    R,
    Tau,
    Const(f64),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    /// `a / (2 + cos b)`
    Div(Box<Node>, Box<Node>),
    /// `exp(sin a)`
    Exp(Box<Node>),
    /// `ln(1 + a^2)`
    Ln(Box<Node>),
    /// `sqrt(1 + a^2)`
    Sqrt(Box<Node>),
    Sin(Box<Node>),
    Cos(Box<Node>),
    /// `(1 + sin^2 a)^p`
    Pow(Box<Node>, f64),
}

impl Node {
    pub fn random(rng: &mut impl Rng, depth: u32) -> Node {
        if depth == 0 || rng.gen_bool(0.2) {
            return match rng.gen_range(0..3) {
                0 => Node::R,
                1 => Node::Tau,
                _ => Node::Const(rng.gen_range(-1.5..1.5)),
            };
        }
        let kind = rng.gen_range(0..11);
        let a = Box::new(Node::random(rng, depth - 1));
        let mut sub = || Box::new(Node::random(rng, depth - 1));
        match kind {
            0 => Node::Add(a, sub()),
            1 => Node::Sub(a, sub()),
            2 => Node::Mul(a, sub()),
            3 => Node::Div(a, sub()),
            4 => Node::Exp(a),
            5 => Node::Ln(a),
            6 => Node::Sqrt(a),
            7 => Node::Sin(a),
            8 => Node::Cos(a),
            _ => Node::Pow(a, [-2.0, -0.5, 1.5, 0.7][kind % 4]),
        }
    }

    pub fn eval<S: Scalar>(&self, r: S, tau: S) -> Result<S> {
        let one = S::constant(1.0);
        Ok(match self {
            Node::R => r,
            Node::Tau => tau,
            Node::Const(c) => S::constant(*c),
            Node::Add(a, b) => a.eval(r, tau)? + b.eval(r, tau)?,
            Node::Sub(a, b) => a.eval(r, tau)? - b.eval(r, tau)?,
            Node::Mul(a, b) => a.eval(r, tau)? * b.eval(r, tau)?,
            Node::Div(a, b) => a
                .eval(r, tau)?
                .try_div(S::constant(2.0) + b.eval(r, tau)?.cos())?,
            Node::Exp(a) => a.eval(r, tau)?.sin().exp(),
            Node::Ln(a) => {
                let x = a.eval(r, tau)?;
                (one + x * x).ln()?
            }
            Node::Sqrt(a) => {
                let x = a.eval(r, tau)?;
                (one + x * x).sqrt()?
            }
            Node::Sin(a) => a.eval(r, tau)?.sin(),
            Node::Cos(a) => a.eval(r, tau)?.cos(),
            Node::Pow(a, p) => {
                let x = a.eval(r, tau)?.sin();
                (one + x * x).pow_const(*p)?
            }
        })
    }
}

/// Finite-difference estimates of the six jet fields from plain `f64`
/// evaluations only.
pub fn finite_differences(f: &dyn Fn(f64, f64) -> f64, r: f64, t: f64) -> [f64; 6] {
    // Central differences at h and h/2, combined by Richardson extrapolation.
    let diffs = |h: f64| {
        let f0 = f(r, t);
        let dr = (f(r + h, t) - f(r - h, t)) / (2.0 * h);
        let dt = (f(r, t + h) - f(r, t - h)) / (2.0 * h);
        let rr = (f(r + h, t) - 2.0 * f0 + f(r - h, t)) / (h * h);
        let tt = (f(r, t + h) - 2.0 * f0 + f(r, t - h)) / (h * h);
        let rt =
            (f(r + h, t + h) - f(r + h, t - h) - f(r - h, t + h) + f(r - h, t - h)) / (4.0 * h * h);
        [dr, dt, rr, rt, tt]
    };
    let coarse = diffs(1e-3);
    let fine = diffs(5e-4);
    let rich = |i: usize| (4.0 * fine[i] - coarse[i]) / 3.0;
    [f(r, t), rich(0), rich(1), rich(2), rich(3), rich(4)]
}

pub fn relative_error(jet: f64, fd: f64) -> f64 {
    (jet - fd).abs() / fd.abs().max(1.0)
}
