//! Statistical-field quantities on the dust background.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::dust::DustSolution;
use crate::error::{Error, Result};
use crate::geometry;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// The comoving phase `S(tau) = ±m c^2 tau` and the constants of the
/// quantum equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseField {
    pub sign: Sign,
    pub m: f64,
    pub c: f64,
    pub hbar: f64,
}

impl PhaseField {
    pub fn natural(sign: Sign) -> Self {
        PhaseField {
            sign,
            m: 1.0,
            c: 1.0,
            hbar: 1.0,
        }
    }

    pub fn action(&self, tau: f64) -> f64 {
        self.sign.value() * self.m * self.c * self.c * tau
    }

    /// `∂_tau S`.
    pub fn action_rate(&self) -> f64 {
        self.sign.value() * self.m * self.c * self.c
    }

    /// `∇S·∇S = g^{00} (∂_tau S)^2` in the comoving gauge.
    pub fn gradient_square(&self) -> f64 {
        self.action_rate().powi(2) / (self.c * self.c)
    }

    /// `u_μ u^μ` with `u_μ = ∇_μ S / m`.
    pub fn four_velocity_norm(&self) -> f64 {
        self.gradient_square() / (self.m * self.m)
    }

    /// `T_(Q)μν = ρ u_μ u_ν` in the comoving gauge: only `T00 = ρ c^2`.
    pub fn stress_energy(&self, rho: f64) -> Result<StressEnergy> {
        if rho < 0.0 {
            return Err(Error::Domain(format!("negative density {rho}")));
        }
        // u_0 u_0 g^{00} = c^2 for either sign of S.
        let u0 = self.action_rate() / self.m;
        Ok(StressEnergy {
            t00: rho * u0 * u0 / (self.c * self.c),
            ..StressEnergy::default()
        })
    }

    /// Left side of the quantum Hamilton-Jacobi equation
    /// `-ħ²/(2mR) □R + V - mc²/2 + ∇S∇S/(2m)` at `(r, tau)`, with `R` from
    /// the dust amplitude and a constant potential `V`.
    pub fn hj_residual(&self, sol: &DustSolution, potential: f64, r: f64, tau: f64) -> Result<f64> {
        let terms = self.hj_terms(sol, potential, r, tau)?;
        Ok(terms.residual)
    }

    pub fn hj_terms(
        &self,
        sol: &DustSolution,
        potential: f64,
        r: f64,
        tau: f64,
    ) -> Result<HjTerms> {
        let amplitude = sol.amplitude(tau)?;
        let metric = sol.metric_of(self.c);
        let box_r = geometry::dalembertian(&metric, |_r, t| sol.amplitude_jet(t), r, tau)?;
        let quantum = -self.hbar * self.hbar / (2.0 * self.m * amplitude) * box_r;
        let residual = quantum + potential - 0.5 * self.m * self.c * self.c
            + self.gradient_square() / (2.0 * self.m);
        Ok(HjTerms {
            amplitude,
            box_r,
            residual,
        })
    }

    /// Particle and antiparticle amplitudes
    /// `ψ_P = R e^{-i m c² tau/ħ}`, `ψ_A = R e^{+i m c² tau/ħ}`.
    pub fn psi(&self, sol: &DustSolution, tau: f64) -> Result<(AmplitudeSample, AmplitudeSample)> {
        let amplitude = sol.amplitude(tau)?;
        let s = self.m * self.c * self.c * tau;
        let (sin, cos) = (s / self.hbar).sin_cos();
        let re = amplitude * cos;
        let im = amplitude * sin;
        Ok((
            AmplitudeSample {
                psi: Complex64::new(re, -im),
                modulus: amplitude,
                action: -s,
            },
            AmplitudeSample {
                psi: Complex64::new(re, im),
                modulus: amplitude,
                action: s,
            },
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StressEnergy {
    pub t00: f64,
    pub t01: f64,
    pub t11: f64,
    pub t22: f64,
    pub t33: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HjTerms {
    pub amplitude: f64,
    pub box_r: f64,
    pub residual: f64,
}

/// `ψ = R e^{iS/ħ}` sampled at one proper time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeSample {
    pub psi: Complex64,
    pub modulus: f64,
    pub action: f64,
}

/// Hydrogen-like levels of the flat-space Newtonian problem with
/// `V = -G M m / r`: `E_n = -G² M² m³ / (2 ħ² n²)`.
pub fn newtonian_levels(
    g_newton: f64,
    big_m: f64,
    m: f64,
    hbar: f64,
    n_max: usize,
) -> Result<Vec<f64>> {
    if n_max < 1 {
        return Err(Error::Domain("n_max must be at least 1".into()));
    }
    if [g_newton, big_m, m, hbar].iter().any(|&x| !(x > 0.0)) {
        return Err(Error::Domain("constants must be positive".into()));
    }
    let ground = -(g_newton * big_m).powi(2) * m.powi(3) / (2.0 * hbar * hbar);
    Ok((1..=n_max).map(|n| ground / (n * n) as f64).collect())
}

/// `1 / sqrt(6 pi)`, the natural-unit amplitude at `tau = 1`.
pub fn natural_amplitude_scale() -> f64 {
    (1.0 / (6.0 * PI)).sqrt()
}
