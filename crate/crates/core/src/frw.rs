//! Robertson-Walker form of the dust metric.
//!
//! With `G = 0` and `chi = F^{2/3}` the metric becomes
//! `c^2 dtau^2 - tau^{4/3} [dchi^2 + chi^2 dΩ^2]`, a spatially flat FRW
//! universe with scale factor `a = tau^{2/3}`.

use crate::dust::DustSolution;
use crate::error::{Error, Result};
use crate::geometry::{self, FnMetric};
use crate::jets::Jet2;
use crate::profiles::Profile;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HubbleConvention {
    /// `a./a` with `a = tau^{2/3}`.
    ScaleFactor,
    /// `R./R` with `R = tau^{4/3}`, the prefactor multiplying the spatial
    /// line element.
    PaperR,
}

/// The FRW reading of a dust solution: `a(tau) = tau^{2/3}`, `k = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrwView {
    pub scale_exponent: f64,
    pub k: f64,
}

impl FrwView {
    pub fn of(sol: &DustSolution) -> Self {
        FrwView {
            scale_exponent: sol.exponent / 2.0,
            k: 0.0,
        }
    }

    pub fn scale_factor(&self, tau: f64) -> Result<f64> {
        if !(tau > 0.0) {
            return Err(Error::Domain(format!(
                "scale factor needs tau > 0, got {tau}"
            )));
        }
        Ok(tau.powf(self.scale_exponent))
    }

    /// Ricci scalar of the comoving slice `dchi^2 + chi^2 dΩ^2` at `chi`.
    pub fn spatial_curvature(&self, chi: f64) -> Result<f64> {
        if !(chi > 0.0) {
            return Err(Error::Domain(format!("chi must be positive, got {chi}")));
        }
        let slice = FnMetric {
            c: 1.0,
            w_of: |_r: Jet2, _t: Jet2| Ok(Jet2::ZERO),
            v_of: |r: Jet2, _t: Jet2| Ok(r.ln()?.scale(2.0)),
        };
        geometry::spatial_ricci_scalar(&slice, chi, std::f64::consts::FRAC_PI_2)
    }
}

pub fn chi_of_r(f: &Profile, r: f64) -> Result<f64> {
    let fr = f.eval(r)?;
    if !(fr > 0.0) {
        return Err(Error::Domain(format!("F({r}) = {fr} is not positive")));
    }
    Ok(fr.powf(2.0 / 3.0))
}

/// `|e^w - tau^{4/3} (dchi/dr)^2|`: how far the radial metric coefficient
/// is from the FRW form at one point.
pub fn verify_transform(sol: &DustSolution, r: f64, tau: f64) -> Result<f64> {
    if tau == 0.0 {
        return Err(Error::SingularPoint("transform undefined at tau=0".into()));
    }
    if sol.g.eval(r)? != 0.0 || sol.g_prime().eval(r)? != 0.0 {
        return Err(Error::Domain("the FRW transform requires G(r) = 0".into()));
    }
    let (ew, _) = sol
        .metric_scales(r, tau)
        .map_err(|e| Error::SingularPoint(e.to_string()))?;
    let chi = sol.f.eval_jet(Jet2::r_coord(r))?.pow_const(2.0 / 3.0)?;
    let rhs = tau.powf(4.0 / 3.0) * chi.d_r * chi.d_r;
    Ok((ew - rhs).abs())
}

pub fn hubble(tau: f64, convention: HubbleConvention) -> Result<f64> {
    if !(tau > 0.0) {
        return Err(Error::Domain(format!(
            "Hubble rate needs tau > 0, got {tau}"
        )));
    }
    let p = match convention {
        HubbleConvention::ScaleFactor => 2.0 / 3.0,
        HubbleConvention::PaperR => 4.0 / 3.0,
    };
    let a = Jet2::tau_coord(tau).pow_const(p)?;
    Ok(a.d_tau / a.val)
}

/// The rate quoted with the solution, `H = 1/tau`. Neither computed
/// convention reproduces it; it is reported alongside them.
pub fn hubble_paper_claim(tau: f64) -> Result<f64> {
    if !(tau > 0.0) {
        return Err(Error::Domain(format!(
            "Hubble rate needs tau > 0, got {tau}"
        )));
    }
    Ok(1.0 / tau)
}
