//! Dielectric response of the half space and of the host medium.
//!
//! The half space is a single Lorentz oscillator on top of a constant
//! background, `eps(w) = eta * (1 + wP^2 / (wT^2 - w^2 - i w Gamma))`.
//! The model does not tend to one at high frequency, so it is only
//! meaningful in a window around the surface-mode frequency.

use num_complex::Complex64;

use crate::error::{ensure, Error, Result};

/// Lorentz-oscillator permittivity parameters, frequencies in units of the
/// reference frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumModel {
    eta: f64,
    omega_p: f64,
    omega_t: f64,
    gamma: f64,
}

/// Static permittivity, which diverges for a metal (`omega_T = 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StaticPermittivity {
    Finite(f64),
    Infinite,
}

impl StaticPermittivity {
    /// `(eps(0) - 1) / (eps(0) + 1)`, which is exactly one for a metal.
    pub fn reflection_limit(self) -> f64 {
        match self {
            StaticPermittivity::Finite(eps) => (eps - 1.0) / (eps + 1.0),
            StaticPermittivity::Infinite => 1.0,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            StaticPermittivity::Finite(eps) => Some(eps),
            StaticPermittivity::Infinite => None,
        }
    }
}

impl MediumModel {
    /// Builds a medium from its microscopic oscillator parameters.
    pub fn from_microscopic(eta: f64, omega_p: f64, omega_t: f64, gamma: f64) -> Result<Self> {
        ensure(eta.is_finite() && eta >= 1.0, || {
            format!("background constant eta must be >= 1, got {eta}")
        })?;
        ensure(omega_p.is_finite() && omega_p >= 0.0, || {
            format!("coupling frequency must be >= 0, got {omega_p}")
        })?;
        ensure(omega_t.is_finite() && omega_t >= 0.0, || {
            format!("resonance frequency must be >= 0, got {omega_t}")
        })?;
        ensure(gamma.is_finite() && gamma > 0.0, || {
            format!("damping must be > 0, got {gamma}")
        })?;
        Ok(MediumModel {
            eta,
            omega_p,
            omega_t,
            gamma,
        })
    }

    /// Builds a medium from laboratory observables: background constant,
    /// static permittivity, surface-mode frequency and damping.
    pub fn from_observables(eta: f64, eps0: f64, omega_s: f64, gamma: f64) -> Result<Self> {
        ensure(eta.is_finite() && eta >= 1.0, || {
            format!("background constant eta must be >= 1, got {eta}")
        })?;
        ensure(eps0.is_finite() && eps0 > eta, || {
            format!("static permittivity {eps0} must exceed eta = {eta} (no oscillator strength)")
        })?;
        ensure(omega_s.is_finite() && omega_s > 0.0, || {
            format!("surface-mode frequency must be > 0, got {omega_s}")
        })?;
        ensure(gamma.is_finite() && gamma > 0.0, || {
            format!("damping must be > 0, got {gamma}")
        })?;
        let strength = eps0 / eta - 1.0;
        let omega_t_sq = omega_s * omega_s / (1.0 + eta * strength / (eta + 1.0));
        let omega_p_sq = strength * omega_t_sq;
        Self::from_microscopic(eta, omega_p_sq.sqrt(), omega_t_sq.sqrt(), gamma)
    }

    /// Free-electron metal: `eta = 1`, `omega_T = 0`, with the plasma
    /// frequency chosen so the surface plasmon sits at `omega_s`.
    pub fn drude_metal(omega_s: f64, gamma: f64) -> Result<Self> {
        Self::from_microscopic(1.0, omega_s * std::f64::consts::SQRT_2, 0.0, gamma)
    }

    /// A featureless medium identical to the vacuum host (`eps = 1`, so the
    /// reflection coefficient vanishes identically).
    pub fn vacuum() -> Self {
        MediumModel {
            eta: 1.0,
            omega_p: 0.0,
            omega_t: 0.0,
            gamma: 1.0,
        }
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn omega_p(&self) -> f64 {
        self.omega_p
    }

    pub fn omega_t(&self) -> f64 {
        self.omega_t
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn with_gamma(&self, gamma: f64) -> Result<Self> {
        Self::from_microscopic(self.eta, self.omega_p, self.omega_t, gamma)
    }

    /// Complex permittivity at a (possibly complex) frequency.
    pub fn permittivity_at(&self, omega: Complex64) -> Complex64 {
        let i = Complex64::i();
        let denom = self.omega_t * self.omega_t - omega * omega - i * omega * self.gamma;
        self.eta * (1.0 + self.omega_p * self.omega_p / denom)
    }

    /// Permittivity at `omega = i xi`, which is real.
    pub fn permittivity_imag_axis(&self, xi: f64) -> Result<f64> {
        if !(xi >= 0.0) {
            return Err(Error::NegativeFrequency(xi));
        }
        let denom = self.omega_t * self.omega_t + xi * xi + xi * self.gamma;
        Ok(self.eta * (1.0 + self.omega_p * self.omega_p / denom))
    }

    /// Surface-mode frequency against a vacuum host; independent of damping.
    pub fn surface_mode_frequency(&self) -> f64 {
        (self.eta * self.omega_p * self.omega_p / (self.eta + 1.0) + self.omega_t * self.omega_t).sqrt()
    }

    pub fn static_permittivity(&self) -> StaticPermittivity {
        if self.omega_p == 0.0 {
            StaticPermittivity::Finite(self.eta)
        } else if self.omega_t == 0.0 {
            StaticPermittivity::Infinite
        } else {
            let ratio = self.omega_p / self.omega_t;
            StaticPermittivity::Finite(self.eta * (1.0 + ratio * ratio))
        }
    }
}

/// Permittivity of the medium the atoms are embedded in.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum HostModel {
    #[default]
    Vacuum,
    Lorentz(MediumModel),
}

impl HostModel {
    pub fn permittivity_at(&self, omega: Complex64) -> Complex64 {
        match self {
            HostModel::Vacuum => Complex64::new(1.0, 0.0),
            HostModel::Lorentz(m) => m.permittivity_at(omega),
        }
    }

    pub fn permittivity_imag_axis(&self, xi: f64) -> Result<f64> {
        match self {
            HostModel::Vacuum if xi >= 0.0 => Ok(1.0),
            HostModel::Vacuum => Err(Error::NegativeFrequency(xi)),
            HostModel::Lorentz(m) => m.permittivity_imag_axis(xi),
        }
    }

    pub fn is_vacuum(&self) -> bool {
        matches!(self, HostModel::Vacuum)
    }
}
