//! Quasistatic surface response and the Onsager local-field factor.
//!
//! Note on naming: the letter `L` traditionally denotes both the local-field
//! factor `[3 eps / (2 eps + 1)]^2` and, in the force formulas, a Lorentzian
//! line profile. Here they are [`local_field_factor`] and
//! [`crate::forces::lorentzian_line`].

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::media::MediumModel;

/// Quasistatic reflection coefficient `(eps_m - eps) / (eps_m + eps)`.
pub fn fresnel_r(eps_host: Complex64, eps_medium: Complex64) -> Result<Complex64> {
    let denom = eps_medium + eps_host;
    if denom.norm() < 1e-300 {
        return Err(Error::DegenerateMedia(denom));
    }
    Ok((eps_medium - eps_host) / denom)
}

/// Real-valued reflection coefficient on the imaginary frequency axis.
pub fn fresnel_r_real(eps_host: f64, eps_medium: f64) -> Result<f64> {
    let denom = eps_medium + eps_host;
    if denom.abs() < 1e-300 {
        return Err(Error::DegenerateMedia(Complex64::new(denom, 0.0)));
    }
    Ok((eps_medium - eps_host) / denom)
}

/// Onsager local-field factor for an empty cavity in a host of permittivity `eps`.
pub fn local_field_factor(eps_host: Complex64) -> Result<Complex64> {
    let denom = 2.0 * eps_host + 1.0;
    if denom.norm() == 0.0 {
        return Err(Error::LocalFieldPole);
    }
    let f = 3.0 * eps_host / denom;
    Ok(f * f)
}

/// Exact partial-fraction form of the vacuum-host reflection coefficient
/// of a Lorentz medium:
/// `r(w) = background + sigma_sq * wS^2 / (wS^2 - w^2 - i w Gamma)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonantDecomposition {
    pub background: f64,
    pub sigma_sq: f64,
    pub omega_s: f64,
    pub gamma: f64,
}

impl ResonantDecomposition {
    /// Resonant (surface-mode) part of `r` alone.
    pub fn resonant_part(&self, omega: Complex64) -> Complex64 {
        let ws2 = self.omega_s * self.omega_s;
        let denom = ws2 - omega * omega - Complex64::i() * omega * self.gamma;
        self.sigma_sq * ws2 / denom
    }

    pub fn r_at(&self, omega: Complex64) -> Complex64 {
        self.background + self.resonant_part(omega)
    }

    /// `r(i xi)`, real on the imaginary axis.
    pub fn r_imag_axis(&self, xi: f64) -> f64 {
        let ws2 = self.omega_s * self.omega_s;
        self.background + self.sigma_sq * ws2 / (ws2 + xi * xi + xi * self.gamma)
    }

    /// `sigma_sq` through the static and background reflection limits.
    pub fn sigma_sq_from_limits(model: &MediumModel) -> f64 {
        let eta = model.eta();
        model.static_permittivity().reflection_limit() - (eta - 1.0) / (eta + 1.0)
    }
}

/// Resonant decomposition of `r` for a vacuum host.
pub fn resonant_decomposition(model: &MediumModel) -> ResonantDecomposition {
    let eta = model.eta();
    let omega_s = model.surface_mode_frequency();
    let wp = model.omega_p();
    let sigma_sq = if wp == 0.0 {
        0.0
    } else {
        2.0 * eta * wp * wp / ((eta + 1.0) * (eta + 1.0) * omega_s * omega_s)
    };
    ResonantDecomposition {
        background: (eta - 1.0) / (eta + 1.0),
        sigma_sq,
        omega_s,
        gamma: model.gamma(),
    }
}
