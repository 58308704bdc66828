//! The closed-form dust family
//!
//! ```text
//! e^v = [F(r) tau + G(r)]^p,   e^w = e^v v'^2 / 4,
//! rho = F F' / (6 pi G_N [F tau + G][F' tau + G'])
//! R   = N sqrt(1 / (6 pi m G_N)) / tau
//! ```
//!
//! with `p = 4/3` by default. `p = 1` is accepted so the inconsistency of
//! that choice with the assembled metric can be demonstrated.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{self, EinsteinComponents, ExplicitResiduals, MetricAnsatz};
use crate::jets::Jet2;
use crate::profiles::Profile;

pub const DEFAULT_EXPONENT: f64 = 4.0 / 3.0;

#[derive(Debug, Clone)]
pub struct DustSolution {
    pub f: Profile,
    pub g: Profile,
    pub exponent: f64,
    pub g_newton: f64,
    pub mass: f64,
    pub norm: f64,
    /// Speed of light used by [`verify_point`](Self::verify_point).
    pub c: f64,
    f_prime: Profile,
    g_prime: Profile,
}

impl DustSolution {
    /// Natural units (`G_N = m = N = 1`) and exponent 4/3.
    pub fn new(f: Profile, g: Profile) -> Self {
        let f_prime = f.derivative();
        let g_prime = g.derivative();
        DustSolution {
            f,
            g,
            exponent: DEFAULT_EXPONENT,
            g_newton: 1.0,
            mass: 1.0,
            norm: 1.0,
            c: 1.0,
            f_prime,
            g_prime,
        }
    }

    pub fn parse(f: &str, g: &str) -> Result<Self> {
        Ok(Self::new(Profile::parse(f)?, Profile::parse(g)?))
    }

    pub fn with_exponent(mut self, exponent: f64) -> Self {
        self.exponent = exponent;
        self
    }

    pub fn with_constants(mut self, g_newton: f64, mass: f64) -> Self {
        self.g_newton = g_newton;
        self.mass = mass;
        self
    }

    pub fn with_norm(mut self, norm: f64) -> Self {
        self.norm = norm;
        self
    }

    pub fn with_c(mut self, c: f64) -> Self {
        self.c = c;
        self
    }

    pub fn f_prime(&self) -> &Profile {
        &self.f_prime
    }

    pub fn g_prime(&self) -> &Profile {
        &self.g_prime
    }

    pub fn metric_of(&self, c: f64) -> DustMetric<'_> {
        DustMetric { sol: self, c }
    }

    /// `(F tau + G, F' tau + G')` as jets.
    fn brackets(&self, r: Jet2, tau: Jet2) -> Result<(Jet2, Jet2)> {
        let f = self.f.eval_jet(r)?;
        let g = self.g.eval_jet(r)?;
        let fp = self.f_prime.eval_jet(r)?;
        let gp = self.g_prime.eval_jet(r)?;
        Ok((f * tau + g, fp * tau + gp))
    }

    /// `e^w` and `e^v` at a point.
    pub fn metric_scales(&self, r: f64, tau: f64) -> Result<(f64, f64)> {
        let m = self.metric_of(1.0);
        let (rj, tj) = Jet2::seed(r, tau);
        Ok((m.w(rj, tj)?.val.exp(), m.v(rj, tj)?.val.exp()))
    }

    pub fn density(&self, r: f64, tau: f64) -> Result<f64> {
        let f = self.f.eval(r)?;
        let fp = self.f_prime.eval(r)?;
        let g = self.g.eval(r)?;
        let gp = self.g_prime.eval(r)?;
        let a = f * tau + g;
        let b = fp * tau + gp;
        if a == 0.0 || b == 0.0 {
            return Err(Error::SingularPoint(format!(
                "density denominator vanishes at r={r}, tau={tau} (F tau + G = {a}, F' tau + G' = {b})"
            )));
        }
        Ok(f * fp / (6.0 * PI * self.g_newton * a * b))
    }

    pub fn amplitude(&self, tau: f64) -> Result<f64> {
        if tau == 0.0 {
            return Err(Error::SingularPoint("amplitude diverges at tau=0".into()));
        }
        Ok(self.amplitude_prefactor() / tau)
    }

    /// `N / sqrt(6 pi m G_N)`, the constant `R(tau) * tau`.
    pub fn amplitude_prefactor(&self) -> f64 {
        self.norm * (1.0 / (6.0 * PI * self.mass * self.g_newton)).sqrt()
    }

    /// The amplitude as a jet in `(r, tau)`.
    pub fn amplitude_jet(&self, tau: Jet2) -> Result<Jet2> {
        if tau.val == 0.0 {
            return Err(Error::SingularPoint("amplitude diverges at tau=0".into()));
        }
        Jet2::lift_const(self.amplitude_prefactor()).try_div(tau)
    }

    /// Evaluates one grid point: density, printed residuals and the generic
    /// Einstein tensor at `theta = pi/2`. `G00` here is the `tau`-chart
    /// component, so the source equation is `G00 = 8 pi G_N rho` for any `c`.
    pub fn verify_point(&self, r: f64, tau: f64) -> Result<PointReport> {
        let metric = self.metric_of(self.c);
        let rho = self.density(r, tau)?;
        let explicit = geometry::explicit_residuals(&metric, rho, self.g_newton, r, tau)?;
        let einstein = geometry::einstein_tensor(&metric, r, tau, PI / 2.0)?;
        Ok(PointReport {
            rho,
            explicit,
            einstein,
            source_residual: einstein.g00 - 8.0 * PI * self.g_newton * rho,
        })
    }

    /// Runs [`verify_point`](Self::verify_point) over a grid. Rows come back
    /// in grid order whatever the evaluation order; singular points are
    /// recorded, not fatal.
    pub fn verify_family(&self, grid: &[(f64, f64)]) -> FamilyReport {
        let rows: Vec<CurvatureReport> = grid
            .par_iter()
            .map(|&(r, tau)| CurvatureReport {
                r,
                tau,
                outcome: self.verify_point(r, tau),
            })
            .collect();
        FamilyReport::from_rows(rows)
    }
}

/// The metric ansatz of a [`DustSolution`].
#[derive(Debug, Clone, Copy)]
pub struct DustMetric<'a> {
    sol: &'a DustSolution,
    c: f64,
}

impl MetricAnsatz for DustMetric<'_> {
    fn c(&self) -> f64 {
        self.c
    }

    fn v(&self, r: Jet2, tau: Jet2) -> Result<Jet2> {
        let (a, _) = self.sol.brackets(r, tau)?;
        Ok(a.ln()?.scale(self.sol.exponent))
    }

    // w = v + ln(v'^2 / 4), with v' = p (F' tau + G') / (F tau + G).
    fn w(&self, r: Jet2, tau: Jet2) -> Result<Jet2> {
        let (a, b) = self.sol.brackets(r, tau)?;
        let v = a.ln()?.scale(self.sol.exponent);
        let v_r = b.try_div(a)?.scale(self.sol.exponent);
        Ok(v + (v_r * v_r).scale(0.25).ln()?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointReport {
    pub rho: f64,
    pub explicit: ExplicitResiduals,
    pub einstein: EinsteinComponents,
    /// `G00 - 8 pi G_N rho` from the generic pipeline.
    pub source_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureReport {
    pub r: f64,
    pub tau: f64,
    pub outcome: Result<PointReport>,
}

/// Max-abs summary per equation over the non-singular points.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FamilySummary {
    pub eq11: f64,
    pub eq12_printed: f64,
    pub eq13: f64,
    pub eq14_printed: f64,
    pub g01: f64,
    pub g11: f64,
    pub g22: f64,
    pub g33: f64,
    pub source: f64,
    pub singular_points: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyReport {
    pub rows: Vec<CurvatureReport>,
    pub summary: FamilySummary,
}

impl FamilyReport {
    fn from_rows(rows: Vec<CurvatureReport>) -> Self {
        let mut s = FamilySummary::default();
        for row in &rows {
            match &row.outcome {
                Ok(p) => {
                    let upd = |m: &mut f64, x: f64| *m = m.max(x.abs());
                    upd(&mut s.eq11, p.explicit.eq11);
                    upd(&mut s.eq12_printed, p.explicit.eq12);
                    upd(&mut s.eq13, p.explicit.eq13);
                    upd(&mut s.eq14_printed, p.explicit.eq14);
                    upd(&mut s.g01, p.einstein.g01);
                    upd(&mut s.g11, p.einstein.g11);
                    upd(&mut s.g22, p.einstein.g22);
                    upd(&mut s.g33, p.einstein.g33);
                    upd(&mut s.source, p.source_residual);
                }
                Err(_) => s.singular_points += 1,
            }
        }
        FamilyReport { rows, summary: s }
    }
}

/// Cartesian product of two axes, `r` outer and `tau` inner.
pub fn grid(rs: &[f64], taus: &[f64]) -> Vec<(f64, f64)> {
    rs.iter()
        .flat_map(|&r| taus.iter().map(move |&t| (r, t)))
        .collect()
}

/// `n` evenly spaced points from `a` to `b` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![a],
        _ => (0..n)
            .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}
