//! Extended-precision (double-double) reference evaluations.
//!
//! These work from the laboratory observables through the partial-fraction
//! form of the reflection coefficient, a different route from the library,
//! which inverts the observables to oscillator parameters and evaluates the
//! Fresnel quotient directly.

#![allow(dead_code)]

use twofloat::TwoFloat;

pub type DD = TwoFloat;

pub fn dd(x: f64) -> DD {
    TwoFloat::from(x)
}

/// Medium observables with `omega_S = 1`.
#[derive(Clone, Copy)]
pub struct Observables {
    pub eta: f64,
    pub eps0: f64,
    pub gamma: f64,
}

pub const SAPPHIRE: Observables = Observables {
    eta: 2.71,
    eps0: 6.57,
    gamma: 0.015,
};

impl Observables {
    pub fn background(&self) -> DD {
        (dd(self.eta) - 1.0) / (dd(self.eta) + 1.0)
    }

    pub fn sigma_sq(&self) -> DD {
        (dd(self.eps0) - 1.0) / (dd(self.eps0) + 1.0) - self.background()
    }

    /// Real and imaginary parts of `r(omega)` for real `omega`.
    pub fn r(&self, omega: f64) -> (DD, DD) {
        let (re, im) = self.r_resonant(omega);
        (self.background() + re, im)
    }

    /// Surface-mode part of `r(omega)`.
    pub fn r_resonant(&self, omega: f64) -> (DD, DD) {
        let w = dd(omega);
        let c = dd(1.0) - w * w;
        let d = w * self.gamma;
        let norm = c * c + d * d;
        let s = self.sigma_sq();
        (s * c / norm, s * d / norm)
    }
}

/// `x^4 / ((x^2 - y^2)^2 + (y z)^2)`
pub fn line(x: f64, y: f64, z: f64) -> DD {
    let (x, y, z) = (dd(x), dd(y), dd(z));
    let det = x * x - y * y;
    let yz = y * z;
    x.powi(4) / (det * det + yz * yz)
}

/// Interface bracket of the resonant atom*-atom potential (`W R^6 / 3`).
pub fn bracket(obs: &Observables, omega_a: f64, r_par: f64, z_a: f64, z_b: f64) -> DD {
    let (re, im) = obs.r(omega_a);
    let (rp, z, zp) = (dd(r_par), dd(z_a) - z_b, dd(z_a) + z_b);
    let r2 = rp * rp + z * z;
    let rprime2 = rp * rp + zp * zp;
    let r = r2.sqrt();
    let rprime = rprime2.sqrt();
    let mod_sq = re * re + im * im;
    let interference = dd(3.0) * (rp.powi(4) - z * z * zp * zp) + r2 * rprime2;
    dd(1.0) + mod_sq * r2.powi(3) / rprime2.powi(3) - re / 3.0 * (r / rprime) * interference / rprime2.powi(2)
}

/// Resonant atom*-atom potential over `U0` (vacuum host).
pub fn ratio_resonant(
    obs: &Observables,
    omega_a: f64,
    omega_b: f64,
    gamma_b: f64,
    r_par: f64,
    z_a: f64,
    z_b: f64,
) -> DD {
    let (wa, wb) = (dd(omega_a), dd(omega_b));
    let det = wb * wb - wa * wa;
    let wag = wa * gamma_b;
    let lorentz = wb * wb * det / (det * det + wag * wag);
    -lorentz * bracket(obs, omega_a, r_par, z_a, z_b)
}

/// Perpendicular resonant force over `F0`, component form.
#[allow(clippy::too_many_arguments)]
pub fn force_z_ratio(
    obs: &Observables,
    omega_a: f64,
    omega_b: f64,
    gamma_b: f64,
    alpha_b0: f64,
    z_a: f64,
    z_b: f64,
    r: f64,
) -> DD {
    let s = obs.sigma_sq();
    let ls = line(1.0, omega_a, obs.gamma);
    let lb = line(omega_b, omega_a, gamma_b);
    let (za, zb, rr) = (dd(z_a), dd(z_b), dd(r));
    let wa2 = dd(omega_a) * omega_a;
    let d8 = (rr * rr + dd(4.0) * za * zb).powi(4);
    let pair = dd(24.0) * za.powi(4) * (za + zb) * alpha_b0 / d8 * (dd(1.0) - wa2 / (dd(omega_b) * omega_b)) * lb * s;
    -s * ls * ((dd(1.0) - wa2) + pair)
}

pub fn rel_err(got: f64, want: DD) -> f64 {
    ((dd(got) - want) / want).abs().hi()
}
