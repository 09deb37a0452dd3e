//! Isotropic two-level atoms.

use num_complex::Complex64;

use crate::error::{ensure, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtomState {
    Excited,
    Ground,
}

/// A two-level atom: transition frequency, excited-state width and reduced
/// dipole strength `d^2 / (hbar w_ref l_ref^3)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomSpec {
    omega_0: f64,
    gamma: f64,
    d_sq: f64,
    state: AtomState,
}

impl AtomSpec {
    /// Excited atom. Its width is zero in every potential formula.
    pub fn excited(omega_0: f64, d_sq: f64) -> Result<Self> {
        Self::new(omega_0, 0.0, d_sq, AtomState::Excited)
    }

    pub fn ground(omega_0: f64, gamma: f64, d_sq: f64) -> Result<Self> {
        Self::new(omega_0, gamma, d_sq, AtomState::Ground)
    }

    /// Ground-state atom specified by its static polarizability.
    pub fn ground_from_static(omega_0: f64, gamma: f64, alpha_0: f64) -> Result<Self> {
        ensure(alpha_0 > 0.0 && alpha_0.is_finite(), || {
            format!("static polarizability must be > 0, got {alpha_0}")
        })?;
        Self::ground(omega_0, gamma, 1.5 * alpha_0 * omega_0)
    }

    /// Excited atom specified by the magnitude of its static polarizability.
    pub fn excited_from_static(omega_0: f64, alpha_0: f64) -> Result<Self> {
        ensure(alpha_0 > 0.0 && alpha_0.is_finite(), || {
            format!("static polarizability must be > 0, got {alpha_0}")
        })?;
        Self::excited(omega_0, 1.5 * alpha_0 * omega_0)
    }

    fn new(omega_0: f64, gamma: f64, d_sq: f64, state: AtomState) -> Result<Self> {
        ensure(omega_0 > 0.0 && omega_0.is_finite(), || {
            format!("transition frequency must be > 0, got {omega_0}")
        })?;
        ensure(gamma >= 0.0 && gamma.is_finite(), || {
            format!("linewidth must be >= 0, got {gamma}")
        })?;
        ensure(d_sq > 0.0 && d_sq.is_finite(), || {
            format!("dipole strength must be > 0, got {d_sq}")
        })?;
        Ok(AtomSpec {
            omega_0,
            gamma,
            d_sq,
            state,
        })
    }

    pub fn omega_0(&self) -> f64 {
        self.omega_0
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn d_sq(&self) -> f64 {
        self.d_sq
    }

    pub fn state(&self) -> AtomState {
        self.state
    }

    /// Same atom with a different transition frequency (used by sweeps).
    pub fn with_omega_0(&self, omega_0: f64) -> Result<Self> {
        Self::new(omega_0, self.gamma, self.d_sq, self.state)
    }

    fn sign(&self) -> f64 {
        match self.state {
            AtomState::Excited => -1.0,
            AtomState::Ground => 1.0,
        }
    }

    /// Magnitude of the static polarizability, `2 d^2 / (3 w0)`.
    pub fn static_polarizability(&self) -> f64 {
        2.0 * self.d_sq / (3.0 * self.omega_0)
    }

    /// Polarizability at a complex frequency; negative static value for the
    /// excited state.
    pub fn polarizability(&self, omega: Complex64) -> Result<Complex64> {
        let w0 = self.omega_0;
        let denom = w0 * w0 - omega * omega - Complex64::i() * omega * self.gamma;
        if denom.norm() == 0.0 {
            return Err(Error::ResonanceSingularity { omega: omega.re });
        }
        Ok(self.sign() * self.static_polarizability() * w0 * w0 / denom)
    }

    /// Polarizability at `omega = i xi` (real).
    pub fn polarizability_imag_axis(&self, xi: f64) -> f64 {
        let w0 = self.omega_0;
        self.sign() * self.static_polarizability() * w0 * w0 / (w0 * w0 + xi * xi + xi * self.gamma)
    }

    /// `Re alpha(omega)` on the real axis.
    pub fn polarizability_re(&self, omega: f64) -> Result<f64> {
        self.polarizability(Complex64::new(omega, 0.0)).map(|a| a.re)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn static_values() {
        let b = AtomSpec::ground(1.0, 0.0, 1.5).unwrap();
        assert_eq!(b.static_polarizability(), 1.0);
        let b = AtomSpec::ground(0.9, 1e-3, 0.7).unwrap();
        let a0 = b.polarizability(Complex64::new(0.0, 0.0)).unwrap();
        assert_relative_eq!(a0.re, b.static_polarizability(), max_relative = 1e-15);
        assert_eq!(a0.im, 0.0);
        let b = AtomSpec::ground_from_static(0.9, 1e-3, 1.0).unwrap();
        assert_relative_eq!(b.static_polarizability(), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn on_resonance_ground_is_imaginary() {
        let b = AtomSpec::ground(0.9, 1e-3, 1.0).unwrap();
        let a = b.polarizability(Complex64::new(0.9, 0.0)).unwrap();
        assert!(a.re.abs() < 1e-12 * a.im.abs());
        assert_relative_eq!(a.im, b.static_polarizability() * 0.9 / 1e-3, max_relative = 1e-12);
    }

    #[test]
    fn excited_on_imaginary_axis() {
        let a = AtomSpec::excited(1.0, 0.8).unwrap();
        assert_eq!(a.gamma(), 0.0);
        let xi = 0.7;
        let got = a.polarizability_imag_axis(xi);
        let expected = -(2.0 * 0.8 / 3.0) / (1.0 + xi * xi);
        assert_relative_eq!(got, expected, max_relative = 1e-15);
        let via_complex = a.polarizability(Complex64::new(0.0, xi)).unwrap();
        assert_relative_eq!(via_complex.re, got, max_relative = 1e-14);
    }

    #[test]
    fn undamped_pole_rejected() {
        let a = AtomSpec::excited(1.0, 0.8).unwrap();
        assert_eq!(
            a.polarizability(Complex64::new(1.0, 0.0)),
            Err(Error::ResonanceSingularity { omega: 1.0 })
        );
        assert!(a.polarizability(Complex64::new(-1.0, 0.0)).is_err());
    }

    #[test]
    fn fixed_static_polarizability_for_force_scenario() {
        // z_A = 3 alpha_B(0)^(1/3)
        let z_a = 2.4;
        let b = AtomSpec::ground_from_static(0.9, 1e-3, (z_a / 3.0f64).powi(3)).unwrap();
        assert_relative_eq!(3.0 * b.static_polarizability().cbrt(), z_a, max_relative = 1e-14);
    }

    #[test]
    fn invalid_atoms_rejected() {
        assert!(AtomSpec::ground(0.0, 0.0, 1.0).is_err());
        assert!(AtomSpec::ground(1.0, -1.0, 1.0).is_err());
        assert!(AtomSpec::ground(1.0, 0.0, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn imaginary_axis_shape(w0 in 0.1f64..3.0, g in 0.0f64..0.1, d in 0.1f64..3.0,
                                xi in 0.0f64..10.0, dxi in 1e-3f64..5.0) {
            let b = AtomSpec::ground(w0, g, d).unwrap();
            let a = AtomSpec::excited(w0, d).unwrap();
            let v = b.polarizability_imag_axis(xi);
            prop_assert!(v > 0.0);
            prop_assert!(b.polarizability_imag_axis(xi + dxi) < v);
            let b0 = AtomSpec::ground(w0, 0.0, d).unwrap();
            prop_assert_eq!(a.polarizability_imag_axis(xi), -b0.polarizability_imag_axis(xi));
        }

        #[test]
        fn real_part_changes_sign_at_transition(w0 in 0.5f64..2.0, g in 1e-4f64..1e-2) {
            let b = AtomSpec::ground(w0, g, 1.0).unwrap();
            let delta = 1e-3 * w0;
            prop_assert!(b.polarizability_re(w0 - delta).unwrap() > 0.0);
            prop_assert!(b.polarizability_re(w0 + delta).unwrap() < 0.0);
        }
    }
}
