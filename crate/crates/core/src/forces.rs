//! Resonant force on the excited atom near the surface-mode resonance.
//!
//! Only the most resonant contributions are kept: the resonant
//! Casimir-Polder term and the image-image part of the resonant atom*-atom
//! term, both with the surface-mode part of `r` alone. The closed-form force
//! is the exact negative gradient of that kept potential, which
//! [`gradient_force_check`] verifies by central differences.
//!
//! The host is vacuum throughout this module.

use num_complex::Complex64;

use crate::atoms::AtomSpec;
use crate::error::{ensure, Error, Result};
use crate::geometry::{PairGeometry, Vec3};
use crate::media::{HostModel, MediumModel};
use crate::potentials::total_potential;
use crate::quadrature::QuadratureSpec;
use crate::response::resonant_decomposition;

/// Lorentzian line profile `x^4 / ((x^2 - y^2)^2 + (y z)^2)`.
pub fn lorentzian_line(x: f64, y: f64, z: f64) -> Result<f64> {
    let detuning = x * x - y * y;
    let denom = detuning * detuning + (y * z) * (y * z);
    if denom == 0.0 {
        return Err(Error::ResonanceSingularity { omega: y });
    }
    Ok(x.powi(4) / denom)
}

/// Everything the resonant force depends on. The transition frequency of
/// `atom_a` is the frequency at which the force is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceSetup {
    pub atom_a: AtomSpec,
    pub atom_b: AtomSpec,
    pub geometry: PairGeometry,
    pub medium: MediumModel,
}

impl ForceSetup {
    pub fn omega_a(&self) -> f64 {
        self.atom_a.omega_0()
    }

    pub fn with_omega_a(&self, omega_a: f64) -> Result<Self> {
        Ok(ForceSetup {
            atom_a: self.atom_a.with_omega_0(omega_a)?,
            ..*self
        })
    }

    /// `F0 = d_A^2 / (2 z_A^4)`
    pub fn normalization(&self) -> f64 {
        let z = self.geometry.z_a();
        self.atom_a.d_sq() / (2.0 * z.powi(4))
    }
}

/// Force on atom A in reduced units, with the `F0` normalization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceResult {
    /// In-plane components (x, y); the pair lies in the x-z plane.
    pub f_parallel: [f64; 2],
    pub f_z: f64,
    /// Atom-surface part of `f_z`.
    pub f_z_surface: f64,
    /// Part of `f_z` due to the image of atom B.
    pub f_z_pair: f64,
    pub normalization: f64,
}

impl ForceResult {
    pub fn f_z_ratio(&self) -> f64 {
        self.f_z / self.normalization
    }

    pub fn f_parallel_ratio(&self) -> [f64; 2] {
        [
            self.f_parallel[0] / self.normalization,
            self.f_parallel[1] / self.normalization,
        ]
    }

    pub fn vector(&self) -> Vec3 {
        [self.f_parallel[0], self.f_parallel[1], self.f_z]
    }
}

/// Resonant force on atom A in component form.
pub fn resonant_force(setup: &ForceSetup) -> Result<ForceResult> {
    let dec = resonant_decomposition(&setup.medium);
    let g = &setup.geometry;
    let (z_a, z_b) = (g.z_a(), g.z_b());
    let w_a = setup.omega_a();
    let w_b = setup.atom_b.omega_0();
    let w_s = dec.omega_s;
    let d_sq = setup.atom_a.d_sq();
    let alpha_b0 = setup.atom_b.static_polarizability();
    let sigma_sq = dec.sigma_sq;

    let surface_line = lorentzian_line(w_s, w_a, dec.gamma)?;
    let atom_line = lorentzian_line(w_b, w_a, setup.atom_b.gamma())?;
    // (R^2 + 4 z_A z_B)^4 = R'^8
    let image_dist8 = (g.r().powi(2) + 4.0 * z_a * z_b).powi(4);
    let atom_detuning = 1.0 - w_a * w_a / (w_b * w_b);
    let surface_detuning = 1.0 - w_a * w_a / (w_s * w_s);

    let par_coef =
        12.0 * d_sq * alpha_b0 / image_dist8 * atom_detuning * atom_line * sigma_sq * sigma_sq * surface_line;
    let f_parallel = [-g.r_par() * par_coef, 0.0];

    let prefactor = -d_sq / (2.0 * z_a.powi(4)) * sigma_sq * surface_line;
    let pair_bracket = 24.0 * z_a.powi(4) * (z_a + z_b) * alpha_b0 / image_dist8 * atom_detuning * atom_line * sigma_sq;
    let f_z_surface = prefactor * surface_detuning;
    let f_z_pair = prefactor * pair_bracket;

    Ok(ForceResult {
        f_parallel,
        f_z: f_z_surface + f_z_pair,
        f_z_surface,
        f_z_pair,
        normalization: setup.normalization(),
    })
}

/// Kept resonant potential of atom A at explicit positions:
/// `-(d^2 / 6 z_A^3) Re r_res - 2 d^2 Re alpha_B |r_res|^2 / R'^6`.
pub fn kept_potential(setup: &ForceSetup, pos_a: Vec3, pos_b: Vec3) -> Result<f64> {
    let g = PairGeometry::from_positions(pos_a, pos_b)?;
    let dec = resonant_decomposition(&setup.medium);
    let w_a = Complex64::new(setup.omega_a(), 0.0);
    let r_res = dec.resonant_part(w_a);
    let alpha_b = setup.atom_b.polarizability(w_a)?.re;
    let d_sq = setup.atom_a.d_sq();
    Ok(-d_sq / (6.0 * g.z_a().powi(3)) * r_res.re - 2.0 * d_sq * alpha_b * r_res.norm_sqr() / g.r_prime().powi(6))
}

/// Comparison of the closed-form force with central differences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradientReport {
    pub step: f64,
    pub analytic: Vec3,
    pub numeric: Vec3,
    /// `|numeric - analytic| / |analytic|` (Euclidean norms).
    pub rel_mismatch: f64,
}

fn norm(v: Vec3) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn central_difference<F: Fn(Vec3) -> Result<f64>>(u: F, at: Vec3, step: f64) -> Result<Vec3> {
    let mut grad = [0.0; 3];
    for (k, out) in grad.iter_mut().enumerate() {
        let mut plus = at;
        let mut minus = at;
        plus[k] += step;
        minus[k] -= step;
        *out = -(u(plus)? - u(minus)?) / (2.0 * step);
    }
    Ok(grad)
}

fn check_step(setup: &ForceSetup, step: f64) -> Result<()> {
    let g = &setup.geometry;
    ensure(step > 0.0 && step < 0.5 * g.z_a().min(g.r()), || {
        format!("finite-difference step {step} must be positive and small against z_A and R")
    })
}

/// Central-difference force from the kept potential against [`resonant_force`].
pub fn gradient_force_check(setup: &ForceSetup, step: f64) -> Result<GradientReport> {
    check_step(setup, step)?;
    let pos_a = setup.geometry.pos_a();
    let pos_b = setup.geometry.pos_b();
    let analytic = resonant_force(setup)?.vector();
    let scale = norm(analytic);
    let u0 = kept_potential(setup, pos_a, pos_b)?;
    let roundoff = f64::EPSILON * u0.abs() / step;
    if roundoff > 1e-4 * scale {
        return Err(Error::IllConditioned { step, roundoff, scale });
    }
    let numeric = central_difference(|p| kept_potential(setup, p, pos_b), pos_a, step)?;
    let diff = [
        numeric[0] - analytic[0],
        numeric[1] - analytic[1],
        numeric[2] - analytic[2],
    ];
    let rel_mismatch = if scale > 0.0 { norm(diff) / scale } else { norm(diff) };
    Ok(GradientReport {
        step,
        analytic,
        numeric,
        rel_mismatch,
    })
}

/// Central-difference force from the complete potential (Casimir-Polder plus
/// both atom*-atom terms), for judging the size of the dropped terms.
pub fn full_potential_force(setup: &ForceSetup, host: &HostModel, quad: &QuadratureSpec, step: f64) -> Result<Vec3> {
    check_step(setup, step)?;
    let pos_b = setup.geometry.pos_b();
    central_difference(
        |p| {
            let g = PairGeometry::from_positions(p, pos_b)?;
            total_potential(&setup.atom_a, &setup.atom_b, &g, &setup.medium, host, quad)
        },
        setup.geometry.pos_a(),
        step,
    )
}
