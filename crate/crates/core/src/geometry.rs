//! Curvature of the synchronous, spherically symmetric diagonal metric
//!
//! ```text
//! ds^2 = c^2 dtau^2 - e^w dr^2 - e^v (dtheta^2 + sin^2(theta) dphi^2)
//! ```
//!
//! with coordinates ordered `(tau, r, theta, phi)` and signature `(+,-,-,-)`.
//! The pipeline knows nothing about any particular solution: it asks a
//! [`MetricAnsatz`] for jets of `w` and `v` and builds Christoffel symbols,
//! their derivatives, the Ricci tensor, the scalar curvature and the
//! Einstein tensor from them.

// Tensor code reads best with explicit index loops.
#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};
use crate::jets::Jet2;

/// Log-scale metric functions `w(r, tau)`, `v(r, tau)` plus the speed of
/// light used in `g_00 = c^2`.
pub trait MetricAnsatz: Sync {
    fn c(&self) -> f64;
    fn w(&self, r: Jet2, tau: Jet2) -> Result<Jet2>;
    fn v(&self, r: Jet2, tau: Jet2) -> Result<Jet2>;
}

/// An ansatz assembled from two closures.
pub struct FnMetric<W, V> {
    pub c: f64,
    pub w_of: W,
    pub v_of: V,
}

impl<W, V> MetricAnsatz for FnMetric<W, V>
where
    W: Fn(Jet2, Jet2) -> Result<Jet2> + Sync,
    V: Fn(Jet2, Jet2) -> Result<Jet2> + Sync,
{
    fn c(&self) -> f64 {
        self.c
    }
    fn w(&self, r: Jet2, tau: Jet2) -> Result<Jet2> {
        (self.w_of)(r, tau)
    }
    fn v(&self, r: Jet2, tau: Jet2) -> Result<Jet2> {
        (self.v_of)(r, tau)
    }
}

/// Minkowski space in spherical coordinates: `e^w = 1`, `e^v = r^2`.
pub fn minkowski(c: f64) -> impl MetricAnsatz {
    FnMetric {
        c,
        w_of: |_r: Jet2, _t: Jet2| Ok(Jet2::ZERO),
        v_of: |r: Jet2, _t: Jet2| Ok(r.ln()?.scale(2.0)),
    }
}

/// Jets of `w` and `v` at a chart point, with the positivity checks every
/// operation here needs.
#[derive(Debug, Clone, Copy)]
pub struct MetricJets {
    pub w: Jet2,
    pub v: Jet2,
    pub c: f64,
}

impl MetricJets {
    pub fn at(m: &dyn MetricAnsatz, r: f64, tau: f64) -> Result<Self> {
        let singular = |reason: String| Error::SingularMetric { r, tau, reason };
        let (rj, tj) = Jet2::seed(r, tau);
        let w = m.w(rj, tj).map_err(|e| singular(format!("w: {e}")))?;
        let v = m.v(rj, tj).map_err(|e| singular(format!("v: {e}")))?;
        for (name, j) in [("w", w), ("v", v)] {
            let scale = j.val.exp();
            if !j.is_finite() || !scale.is_finite() || scale <= 0.0 {
                return Err(singular(format!(
                    "e^{name} = {scale} is not a finite positive number"
                )));
            }
        }
        let c = m.c();
        if !(c > 0.0 && c.is_finite()) {
            return Err(singular(format!("speed of light {c} must be positive")));
        }
        Ok(MetricJets { w, v, c })
    }
}

/// Einstein tensor components in the `(tau, r, theta, phi)` chart.
///
/// `off_diag_max` is the largest absolute off-diagonal component other than
/// `G01`/`G10`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EinsteinComponents {
    pub g00: f64,
    pub g01: f64,
    pub g11: f64,
    pub g22: f64,
    pub g33: f64,
    pub off_diag_max: f64,
}

impl EinsteinComponents {
    pub fn max_abs(&self) -> f64 {
        [
            self.g00,
            self.g01,
            self.g11,
            self.g22,
            self.g33,
            self.off_diag_max,
        ]
        .iter()
        .fold(0.0f64, |m, x| m.max(x.abs()))
    }
}

/// Full curvature output at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Curvature {
    pub ricci: [[f64; 4]; 4],
    pub ricci_scalar: f64,
    pub einstein: [[f64; 4]; 4],
}

impl Curvature {
    pub fn components(&self) -> EinsteinComponents {
        let g = &self.einstein;
        let mut off = 0.0f64;
        for a in 0..4 {
            for b in 0..4 {
                if a != b && !matches!((a, b), (0, 1) | (1, 0)) {
                    off = off.max(g[a][b].abs());
                }
            }
        }
        EinsteinComponents {
            g00: g[0][0],
            g01: g[0][1],
            g11: g[1][1],
            g22: g[2][2],
            g33: g[3][3],
            off_diag_max: off,
        }
    }
}

/// Diagonal metric components with their first and second coordinate
/// derivatives: `dg[a][m] = d_m g_aa`, `ddg[a][m][n] = d_m d_n g_aa`.
struct DiagonalPoint {
    g: [f64; 4],
    dg: [[f64; 4]; 4],
    ddg: [[[f64; 4]; 4]; 4],
}

const TAU: usize = 0;
const R: usize = 1;
const THETA: usize = 2;

impl DiagonalPoint {
    fn new(jets: &MetricJets, theta: f64) -> Self {
        let mut p = DiagonalPoint {
            g: [0.0; 4],
            dg: [[0.0; 4]; 4],
            ddg: [[[0.0; 4]; 4]; 4],
        };
        p.g[0] = jets.c * jets.c;
        let ew = -jets.w.exp();
        let ev = -jets.v.exp();
        p.set_radial(1, ew);
        p.set_radial(2, ev);

        // g_33 = g_22 * sin^2(theta)
        let s = theta.sin().powi(2);
        let ds = (2.0 * theta).sin();
        let dds = 2.0 * (2.0 * theta).cos();
        p.set_radial(3, ev.scale(s));
        p.dg[3][THETA] = ev.val * ds;
        p.ddg[3][THETA][THETA] = ev.val * dds;
        for (m, d) in [(TAU, ev.d_tau), (R, ev.d_r)] {
            p.ddg[3][m][THETA] = d * ds;
            p.ddg[3][THETA][m] = d * ds;
        }
        p
    }

    fn set_radial(&mut self, a: usize, j: Jet2) {
        self.g[a] = j.val;
        self.dg[a][TAU] = j.d_tau;
        self.dg[a][R] = j.d_r;
        self.ddg[a][TAU][TAU] = j.d_tautau;
        self.ddg[a][R][R] = j.d_rr;
        self.ddg[a][TAU][R] = j.d_rtau;
        self.ddg[a][R][TAU] = j.d_rtau;
    }
}

fn delta(a: usize, b: usize) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

/// Curvature of a diagonal metric from its components and derivatives.
/// `gamma[a][b][c]` is `Γ^a_{bc}`, `dgamma[d][a][b][c]` is `∂_d Γ^a_{bc}`.
fn curvature_of(p: &DiagonalPoint) -> Curvature {
    let inv: [f64; 4] = std::array::from_fn(|a| 1.0 / p.g[a]);
    let mut gamma = [[[0.0; 4]; 4]; 4];
    let mut dgamma = [[[[0.0; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                let bracket =
                    delta(a, b) * p.dg[a][c] + delta(a, c) * p.dg[a][b] - delta(b, c) * p.dg[b][a];
                gamma[a][b][c] = 0.5 * inv[a] * bracket;
                for d in 0..4 {
                    let d_inv = -p.dg[a][d] * inv[a] * inv[a];
                    let d_bracket = delta(a, b) * p.ddg[a][c][d] + delta(a, c) * p.ddg[a][b][d]
                        - delta(b, c) * p.ddg[b][a][d];
                    dgamma[d][a][b][c] = 0.5 * (d_inv * bracket + inv[a] * d_bracket);
                }
            }
        }
    }

    let mut ricci = [[0.0; 4]; 4];
    for b in 0..4 {
        for c in 0..4 {
            let mut sum = 0.0;
            for a in 0..4 {
                sum += dgamma[a][a][b][c] - dgamma[c][a][b][a];
                for d in 0..4 {
                    sum += gamma[a][a][d] * gamma[d][b][c] - gamma[a][c][d] * gamma[d][b][a];
                }
            }
            ricci[b][c] = sum;
        }
    }
    let ricci_scalar: f64 = (0..4).map(|a| inv[a] * ricci[a][a]).sum();
    let einstein = std::array::from_fn(|b| {
        std::array::from_fn(|c| ricci[b][c] - 0.5 * delta(b, c) * p.g[b] * ricci_scalar)
    });
    Curvature {
        ricci,
        ricci_scalar,
        einstein,
    }
}

fn check_theta(r: f64, tau: f64, theta: f64) -> Result<()> {
    if theta.sin() == 0.0 || !theta.is_finite() {
        return Err(Error::SingularMetric {
            r,
            tau,
            reason: format!("sin(theta) vanishes at theta={theta}"),
        });
    }
    Ok(())
}

pub fn curvature(m: &dyn MetricAnsatz, r: f64, tau: f64, theta: f64) -> Result<Curvature> {
    check_theta(r, tau, theta)?;
    let jets = MetricJets::at(m, r, tau)?;
    Ok(curvature_of(&DiagonalPoint::new(&jets, theta)))
}

pub fn einstein_tensor(
    m: &dyn MetricAnsatz,
    r: f64,
    tau: f64,
    theta: f64,
) -> Result<EinsteinComponents> {
    Ok(curvature(m, r, tau, theta)?.components())
}

/// Scalar curvature of the spatial slice `e^w dr^2 + e^v dΩ^2` of a
/// `tau`-independent ansatz.
///
/// For the ultrastatic metric `c^2 dtau^2 - h` the four-dimensional scalar is
/// minus the scalar of `h`, so the 4D pipeline doubles as the 3D one.
pub fn spatial_ricci_scalar(m: &dyn MetricAnsatz, r: f64, theta: f64) -> Result<f64> {
    let c = curvature(m, r, 1.0, theta)?;
    Ok(-c.ricci_scalar)
}

/// `□f = (1/√-g) ∂_μ(√-g g^{μν} ∂_ν f)` for `f = f(r, tau)`.
///
/// With `√-g = c e^{w/2 + v} sinθ` the angular factor drops out and the
/// operator expands to
/// `c^-2 (f.. + (w./2 + v.) f.) - e^{-w} (f'' + (v' - w'/2) f')`.
pub fn dalembertian<F>(m: &dyn MetricAnsatz, f: F, r: f64, tau: f64) -> Result<f64>
where
    F: Fn(Jet2, Jet2) -> Result<Jet2>,
{
    let jets = MetricJets::at(m, r, tau)?;
    let (rj, tj) = Jet2::seed(r, tau);
    let fj = f(rj, tj).map_err(|e| Error::SingularMetric {
        r,
        tau,
        reason: format!("f: {e}"),
    })?;
    let (w, v, c) = (jets.w, jets.v, jets.c);
    let time = (fj.d_tautau + (0.5 * w.d_tau + v.d_tau) * fj.d_tau) / (c * c);
    let space = (-w.val).exp() * (fj.d_rr + (v.d_r - 0.5 * w.d_r) * fj.d_r);
    Ok(time - space)
}

/// The four explicit field equations, each as `LHS - RHS`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ExplicitResiduals {
    pub eq11: f64,
    pub eq12: f64,
    pub eq13: f64,
    pub eq14: f64,
}

/// Evaluates the printed component equations verbatim.
///
/// Overdots are derivatives with respect to `c*tau`, so `c = 1` reproduces
/// the printed form; the density equation's right side is `8πGρ/c^2`.
/// No typo in the printed equations is corrected here: the generic
/// [`einstein_tensor`] is the reference they are compared against.
pub fn explicit_residuals(
    m: &dyn MetricAnsatz,
    rho: f64,
    g_newton: f64,
    r: f64,
    tau: f64,
) -> Result<ExplicitResiduals> {
    let MetricJets { w, v, c } = MetricJets::at(m, r, tau)?;
    let (w1, v1, v11) = (w.d_r, v.d_r, v.d_rr);
    let wd = w.d_tau / c;
    let wdd = w.d_tautau / (c * c);
    let vd = v.d_tau / c;
    let vdd = v.d_tautau / (c * c);
    let ew = w.val.exp();
    let ev = v.val.exp();

    let eq11 = -(1.0 / ew) * (v11 + 0.75 * v1 * v1 - 0.5 * w1 * v1)
        + 1.0 / ev
        + 0.25 * vd * vd
        + 0.5 * vd * wd
        - 8.0 * std::f64::consts::PI * g_newton * rho / (c * c);
    let eq12 = v1 + 0.5 * w1 - 0.5 * wd * v1;
    let eq13 = ew * (vdd + 0.75 * vd * vd + 1.0 / ev) - 0.25 * v1 * v1;
    let eq14 = ev * (vdd + 0.25 * vd * vd + 0.25 * vd * wd + 0.5 * wdd + 0.25 * wd * wd)
        + (ev / ew) * (0.25 * w1 * v1 - 0.5 * v11 - 0.5 * v1 * v1);
    Ok(ExplicitResiduals {
        eq11,
        eq12,
        eq13,
        eq14,
    })
}
