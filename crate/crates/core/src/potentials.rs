//! Casimir-Polder potential of the excited atom and the atom*-atom
//! van der Waals potential near the interface.
//!
//! All potentials are in reduced units (`hbar = 1`). The atom*-atom
//! potential has an off-resonant part, an integral along the imaginary
//! frequency axis, and a resonant part evaluated at the transition
//! frequency of the excited atom. Because `r(i xi)` is real, the
//! image-image weight `|r|^2` and `r^2` coincide on the imaginary axis.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::atoms::{AtomSpec, AtomState};
use crate::error::{Error, Result};
use crate::geometry::{reduced_greens, reduced_greens_reverse, scattered_trace_interface, PairGeometry};
use crate::media::{HostModel, MediumModel};
use crate::quadrature::{halfline_integral, QuadratureSpec};
use crate::response::{fresnel_r, fresnel_r_real, local_field_factor};

/// One evaluation of the atom*-atom potential with its attribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialBreakdown {
    pub off_resonant: f64,
    pub resonant: f64,
    pub total: f64,
    /// `U0 = 2 d_A^2 alpha_B(0) / R^6`
    pub u0_reference: f64,
    pub ratio_resonant: f64,
}

impl PotentialBreakdown {
    pub fn ratio_off_resonant(&self) -> f64 {
        self.off_resonant / self.u0_reference
    }

    pub fn ratio_total(&self) -> f64 {
        self.total / self.u0_reference
    }
}

/// Position-dependent Casimir-Polder potential of the excited atom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CasimirPolderBreakdown {
    pub off_resonant: f64,
    pub resonant: f64,
    pub total: f64,
}

/// How the squared-dyadic trace of the off-resonant integrand is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PairTracePath {
    /// Closed-form geometric factor `W`.
    #[default]
    WFactor,
    /// Half the trace of the product of the two reduced dyadics.
    Dyadic,
}

/// Geometric weight of the squared Green function:
/// `3/R^6 + 3|r|^2/R'^6 - Re(r) [3(R_par^4 - Z^2 Z_+^2) + R^2 R'^2] / (R^5 R'^5)`.
pub fn w_factor(geom: &PairGeometry, r_coeff: Complex64) -> f64 {
    let r = geom.r();
    let rp = geom.r_prime();
    let rpar = geom.r_par();
    let z = geom.z();
    let zp = geom.z_plus();
    let interference = 3.0 * (rpar.powi(4) - z * z * zp * zp) + r * r * rp * rp;
    3.0 / r.powi(6) + r_coeff.norm_sqr() * 3.0 / rp.powi(6) - r_coeff.re * interference / (r.powi(5) * rp.powi(5))
}

/// `W` from the dyadics: `Tr[G(A,B) . G*(B,A)] / 2`.
pub fn w_factor_from_dyadics(geom: &PairGeometry, r_coeff: Complex64) -> Result<f64> {
    let ab = reduced_greens(geom, r_coeff)?;
    let ba = reduced_greens_reverse(geom, r_coeff)?.conj();
    Ok(0.5 * (ab * ba).trace().re)
}

/// Reflection coefficient of the interface at a real or complex frequency.
pub fn interface_r(medium: &MediumModel, host: &HostModel, omega: Complex64) -> Result<Complex64> {
    fresnel_r(host.permittivity_at(omega), medium.permittivity_at(omega))
}

/// Reflection coefficient at `omega = i xi`.
pub fn interface_r_imag(medium: &MediumModel, host: &HostModel, xi: f64) -> Result<f64> {
    fresnel_r_real(host.permittivity_imag_axis(xi)?, medium.permittivity_imag_axis(xi)?)
}

fn check_pair(atom_a: &AtomSpec, atom_b: &AtomSpec) -> Result<()> {
    if atom_a.state() != AtomState::Excited || atom_b.state() != AtomState::Ground {
        return Err(Error::InvalidParameter(
            "atom A must be excited and atom B in its ground state".into(),
        ));
    }
    Ok(())
}

/// Local-field and host screening weight `L^2 / eps^2` on the imaginary axis.
fn screening_imag(host: &HostModel, xi: f64) -> Result<f64> {
    let eps = host.permittivity_imag_axis(xi)?;
    let l = local_field_factor(Complex64::new(eps, 0.0))?.re;
    Ok(l * l / (eps * eps))
}

/// `U0 = 2 d_A^2 alpha_B(0) / R^6`
pub fn u0_reference(atom_a: &AtomSpec, atom_b: &AtomSpec, geom: &PairGeometry) -> f64 {
    2.0 * atom_a.d_sq() * atom_b.static_polarizability() / geom.r().powi(6)
}

/// Off-resonant (imaginary-frequency) part of the atom*-atom potential.
pub fn off_resonant(
    atom_a: &AtomSpec,
    atom_b: &AtomSpec,
    geom: &PairGeometry,
    medium: &MediumModel,
    host: &HostModel,
    quad: &QuadratureSpec,
    path: PairTracePath,
) -> Result<f64> {
    check_pair(atom_a, atom_b)?;
    // Errors inside the integrand are latched and reported after the sweep.
    let failure = std::cell::Cell::new(None);
    let integrand = |xi: f64| -> f64 {
        let eval = || -> Result<f64> {
            let r = interface_r_imag(medium, host, xi)?;
            let trace = match path {
                PairTracePath::WFactor => w_factor(geom, Complex64::new(r, 0.0)),
                PairTracePath::Dyadic => w_factor_from_dyadics(geom, Complex64::new(r, 0.0))?,
            };
            Ok(atom_a.polarizability_imag_axis(xi)
                * atom_b.polarizability_imag_axis(xi)
                * screening_imag(host, xi)?
                * trace)
        };
        match eval() {
            Ok(v) => v,
            Err(e) => {
                failure.set(Some(e));
                0.0
            }
        }
    };
    let integral = halfline_integral(integrand, quad)?;
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(-integral / PI)
}

/// Resonant part of the atom*-atom potential for a given `r(omega_A)`.
fn resonant_with_r(
    atom_a: &AtomSpec,
    atom_b: &AtomSpec,
    geom: &PairGeometry,
    host: &HostModel,
    r: Complex64,
) -> Result<f64> {
    let omega_a = Complex64::new(atom_a.omega_0(), 0.0);
    let eps = host.permittivity_at(omega_a);
    let l = local_field_factor(eps)?;
    let alpha_b = atom_b.polarizability(omega_a)?.re;
    Ok(-(2.0 * atom_a.d_sq() / 3.0) * l.norm_sqr() / eps.norm_sqr() * alpha_b * w_factor(geom, r))
}

/// Resonant part of the atom*-atom potential.
pub fn resonant(
    atom_a: &AtomSpec,
    atom_b: &AtomSpec,
    geom: &PairGeometry,
    medium: &MediumModel,
    host: &HostModel,
) -> Result<f64> {
    check_pair(atom_a, atom_b)?;
    let r = interface_r(medium, host, Complex64::new(atom_a.omega_0(), 0.0))?;
    resonant_with_r(atom_a, atom_b, geom, host, r)
}

/// Resonant part relative to `U0`, the quantity shown in frequency sweeps.
pub fn ratio_resonant(
    atom_a: &AtomSpec,
    atom_b: &AtomSpec,
    geom: &PairGeometry,
    medium: &MediumModel,
    host: &HostModel,
) -> Result<f64> {
    Ok(resonant(atom_a, atom_b, geom, medium, host)? / u0_reference(atom_a, atom_b, geom))
}

/// Full atom*-atom potential. The transition frequency of `atom_a` is the
/// frequency at which the resonant part is evaluated.
pub fn u_ab_breakdown(
    atom_a: &AtomSpec,
    atom_b: &AtomSpec,
    geom: &PairGeometry,
    medium: &MediumModel,
    host: &HostModel,
    quad: &QuadratureSpec,
) -> Result<PotentialBreakdown> {
    let resonant = resonant(atom_a, atom_b, geom, medium, host)?;
    let off_resonant = off_resonant(atom_a, atom_b, geom, medium, host, quad, PairTracePath::WFactor)?;
    let u0_reference = u0_reference(atom_a, atom_b, geom);
    Ok(PotentialBreakdown {
        off_resonant,
        resonant,
        total: off_resonant + resonant,
        u0_reference,
        ratio_resonant: resonant / u0_reference,
    })
}

/// Position-dependent Casimir-Polder potential of the excited atom at
/// height `z_a`; the position-independent cavity term is excluded.
pub fn casimir_polder(
    atom_a: &AtomSpec,
    z_a: f64,
    medium: &MediumModel,
    host: &HostModel,
    quad: &QuadratureSpec,
) -> Result<CasimirPolderBreakdown> {
    if atom_a.state() != AtomState::Excited {
        return Err(Error::InvalidParameter("Casimir-Polder atom must be excited".into()));
    }
    let off_resonant = casimir_polder_off_resonant(atom_a, z_a, medium, host, quad)?;
    let resonant = casimir_polder_resonant(atom_a, z_a, medium, host)?;
    Ok(CasimirPolderBreakdown {
        off_resonant,
        resonant,
        total: off_resonant + resonant,
    })
}

/// Resonant term `-(d^2 / 6 z^3) Re[L r / eps](omega_A)`.
pub fn casimir_polder_resonant(atom_a: &AtomSpec, z_a: f64, medium: &MediumModel, host: &HostModel) -> Result<f64> {
    let omega = Complex64::new(atom_a.omega_0(), 0.0);
    let eps = host.permittivity_at(omega);
    let r = interface_r(medium, host, omega)?;
    let trace = scattered_trace_interface(z_a, r)?;
    Ok(-(atom_a.d_sq() / 3.0) * (local_field_factor(eps)? * trace / eps).re)
}

fn casimir_polder_off_resonant(
    atom_a: &AtomSpec,
    z_a: f64,
    medium: &MediumModel,
    host: &HostModel,
    quad: &QuadratureSpec,
) -> Result<f64> {
    scattered_trace_interface(z_a, Complex64::new(0.0, 0.0))?;
    let failure = std::cell::Cell::new(None);
    let integrand = |xi: f64| -> f64 {
        let eval = || -> Result<f64> {
            let eps = host.permittivity_imag_axis(xi)?;
            let l = local_field_factor(Complex64::new(eps, 0.0))?.re;
            let r = interface_r_imag(medium, host, xi)?;
            Ok(atom_a.polarizability_imag_axis(xi) * l * r / eps)
        };
        eval().unwrap_or_else(|e| {
            failure.set(Some(e));
            0.0
        })
    };
    let integral = halfline_integral(integrand, quad)?;
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(-integral / (4.0 * PI * z_a.powi(3)))
}

/// Exact enhancement of the resonant atom*-atom potential over its value
/// without the interface (`r` forced to zero, everything else unchanged).
pub fn enhancement_exact(
    atom_a: &AtomSpec,
    atom_b: &AtomSpec,
    geom: &PairGeometry,
    medium: &MediumModel,
    host: &HostModel,
) -> Result<f64> {
    check_pair(atom_a, atom_b)?;
    let free = resonant_with_r(atom_a, atom_b, geom, host, Complex64::new(0.0, 0.0))?;
    if free == 0.0 {
        return Err(Error::ZeroFreeSpaceReference);
    }
    let with_surface = resonant(atom_a, atom_b, geom, medium, host)?;
    Ok((with_surface / free).abs())
}

/// Closed-form estimate `sigma^4 (wS / Gamma)^2 (1 + 4 z_A z_B / R^2)^-3`
/// of the enhancement at `omega_A = omega_S`.
pub fn enhancement_estimate(sigma_sq: f64, omega_s: f64, gamma: f64, z_a: f64, z_b: f64, r: f64) -> f64 {
    let q = omega_s / gamma;
    sigma_sq * sigma_sq * q * q / (1.0 + 4.0 * z_a * z_b / (r * r)).powi(3)
}

/// Complete potential of the excited atom: Casimir-Polder plus atom*-atom.
pub fn total_potential(
    atom_a: &AtomSpec,
    atom_b: &AtomSpec,
    geom: &PairGeometry,
    medium: &MediumModel,
    host: &HostModel,
    quad: &QuadratureSpec,
) -> Result<f64> {
    let cp = casimir_polder(atom_a, geom.z_a(), medium, host, quad)?;
    let ab = u_ab_breakdown(atom_a, atom_b, geom, medium, host, quad)?;
    Ok(cp.total + ab.total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{NearerAtom, Orientation};
    use crate::response::resonant_decomposition;
    use approx::assert_relative_eq;

    fn sapphire() -> MediumModel {
        MediumModel::from_observables(2.71, 6.57, 1.0, 0.015).unwrap()
    }

    fn fig2(orientation: Orientation, omega_a: f64, omega_b: f64) -> (AtomSpec, AtomSpec, PairGeometry) {
        let a = AtomSpec::excited(omega_a, 1.5 * omega_a).unwrap();
        let b = AtomSpec::ground_from_static(omega_b, 1e-3, 1.0).unwrap();
        let g = PairGeometry::oriented(orientation, 0.1, 1.0, NearerAtom::A).unwrap();
        (a, b, g)
    }

    #[test]
    fn w_factor_free_space() {
        let g = PairGeometry::new(0.3, 0.7, 0.4).unwrap();
        assert_relative_eq!(
            w_factor(&g, Complex64::new(0.0, 0.0)),
            3.0 / g.r().powi(6),
            max_relative = 1e-15
        );
    }

    #[test]
    fn w_factor_sapphire_values() {
        let r = interface_r(&sapphire(), &HostModel::Vacuum, Complex64::new(1.0, 0.0)).unwrap();
        let g = PairGeometry::oriented(Orientation::Parallel, 0.1, 1.0, NearerAtom::A).unwrap();
        // 40-digit values of the same closed form
        assert_relative_eq!(w_factor(&g, r) / 3.0, 299.172_978_656_805_87, max_relative = 1e-11);
        let g = PairGeometry::oriented(Orientation::Perpendicular, 0.1, 1.0, NearerAtom::A).unwrap();
        assert_relative_eq!(w_factor(&g, r) / 3.0, 113.715_948_348_050_71, max_relative = 1e-11);
    }

    #[test]
    fn w_factor_even_in_height_difference() {
        let r = Complex64::new(0.4, 3.0);
        let g = PairGeometry::new(0.2, 0.5, 0.3).unwrap();
        assert_relative_eq!(w_factor(&g, r), w_factor(&g.swapped(), r), max_relative = 1e-15);
    }

    #[test]
    fn w_factor_matches_dyadic_trace() {
        for (za, zb, rp) in [(0.1, 0.1, 1.0), (0.1, 1.1, 0.0), (0.3, 0.7, 0.4), (2.0, 0.5, 3.0)] {
            let g = PairGeometry::new(za, zb, rp).unwrap();
            for r in [
                Complex64::new(0.3, 0.0),
                Complex64::new(0.46, 18.3),
                Complex64::new(-1.2, 0.7),
            ] {
                let a = w_factor(&g, r);
                let b = w_factor_from_dyadics(&g, r).unwrap();
                assert_relative_eq!(a, b, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn resonant_ratio_at_surface_mode() {
        let (a, b, g) = fig2(Orientation::Parallel, 1.0, 0.9);
        let ratio = ratio_resonant(&a, &b, &g, &sapphire(), &HostModel::Vacuum).unwrap();
        assert_relative_eq!(ratio, 1_275.386_316_591_851, max_relative = 1e-10);
        let free = ratio_resonant(&a, &b, &g, &MediumModel::vacuum(), &HostModel::Vacuum).unwrap();
        assert_relative_eq!(free, 4.263_039_804_991_551, max_relative = 1e-12);
    }

    #[test]
    fn resonant_vanishes_at_atom_b_transition() {
        let (a, b, g) = fig2(Orientation::Parallel, 0.9, 0.9);
        let v = resonant(&a, &b, &g, &sapphire(), &HostModel::Vacuum).unwrap();
        assert!(v.abs() < 1e-12);
        let b0 = AtomSpec::ground(0.9, 0.0, 1.0).unwrap();
        assert!(matches!(
            resonant(&a, &b0, &g, &sapphire(), &HostModel::Vacuum),
            Err(Error::ResonanceSingularity { .. })
        ));
    }

    #[test]
    fn casimir_polder_resonant_values() {
        let m = sapphire();
        for (w, expected) in [(0.9, -0.316_733_439_426_738_6), (1.0, -0.076_819_407_008_086_25)] {
            let a = AtomSpec::excited(w, 1.0).unwrap();
            let z = 0.37;
            let v = casimir_polder_resonant(&a, z, &m, &HostModel::Vacuum).unwrap();
            assert_relative_eq!(v * z.powi(3), expected, max_relative = 1e-10);
        }
    }

    #[test]
    fn casimir_polder_without_interface_is_zero() {
        let a = AtomSpec::excited(1.0, 1.0).unwrap();
        let cp = casimir_polder(
            &a,
            0.2,
            &MediumModel::vacuum(),
            &HostModel::Vacuum,
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert_eq!(cp.total, 0.0);
    }

    #[test]
    fn casimir_polder_off_resonant_sign() {
        // alpha_e(i xi) < 0 and r(i xi) > 0 make the integral negative.
        let a = AtomSpec::excited(0.8, 1.0).unwrap();
        let cp = casimir_polder(&a, 0.2, &sapphire(), &HostModel::Vacuum, &QuadratureSpec::default()).unwrap();
        assert!(cp.off_resonant > 0.0);
    }

    #[test]
    fn free_space_off_resonant_positive() {
        let (a, b, g) = fig2(Orientation::Parallel, 1.3, 0.7);
        let v = off_resonant(
            &a,
            &b,
            &g,
            &MediumModel::vacuum(),
            &HostModel::Vacuum,
            &QuadratureSpec::default(),
            PairTracePath::WFactor,
        )
        .unwrap();
        assert!(v > 0.0);
        // Free space, gamma_B = 0: -(1/pi) int alpha_e alpha_g 3/R^6 has the closed form
        // (2 dA^2 / 3 wA)(2 dB^2 / 3 wB) wA^2 wB^2 / (2 (wA + wB) wA wB) * 3 / R^6.
        let b0 = AtomSpec::ground_from_static(0.7, 0.0, 1.0).unwrap();
        let v = off_resonant(
            &a,
            &b0,
            &g,
            &MediumModel::vacuum(),
            &HostModel::Vacuum,
            &QuadratureSpec::default(),
            PairTracePath::WFactor,
        )
        .unwrap();
        let (wa, wb) = (1.3, 0.7);
        let expected = a.static_polarizability() * b0.static_polarizability() * wa * wb / (2.0 * (wa + wb)) * 3.0;
        assert_relative_eq!(v, expected, max_relative = 1e-9);
    }

    #[test]
    fn dual_trace_paths_agree() {
        let (a, b, g) = fig2(Orientation::Parallel, 1.0, 0.9);
        let q = QuadratureSpec::with_rel_tol(1e-12);
        let w = off_resonant(&a, &b, &g, &sapphire(), &HostModel::Vacuum, &q, PairTracePath::WFactor).unwrap();
        let d = off_resonant(&a, &b, &g, &sapphire(), &HostModel::Vacuum, &q, PairTracePath::Dyadic).unwrap();
        assert_relative_eq!(w, d, max_relative = 1e-10);
    }

    #[test]
    fn breakdown_is_consistent() {
        let (a, b, g) = fig2(Orientation::Perpendicular, 1.02, 0.9);
        let p = u_ab_breakdown(&a, &b, &g, &sapphire(), &HostModel::Vacuum, &QuadratureSpec::default()).unwrap();
        assert!((p.total - (p.off_resonant + p.resonant)).abs() <= 1e-14 * p.total.abs());
        assert!(p.u0_reference > 0.0);
        assert_relative_eq!(p.ratio_resonant, p.resonant / p.u0_reference);
    }

    #[test]
    fn enhancement_values() {
        let m = sapphire();
        let (a, b, g) = fig2(Orientation::Parallel, 1.0, 0.9);
        let e = enhancement_exact(&a, &b, &g, &m, &HostModel::Vacuum).unwrap();
        assert_relative_eq!(e, 299.172_978_656_805_87, max_relative = 1e-10);
        let e = enhancement_exact(&a, &b, &g, &MediumModel::vacuum(), &HostModel::Vacuum).unwrap();
        assert_relative_eq!(e, 1.0, max_relative = 1e-15);
        let (a, b, g) = fig2(Orientation::Parallel, 0.9, 0.9);
        assert_eq!(
            enhancement_exact(&a, &b, &g, &m, &HostModel::Vacuum),
            Err(Error::ZeroFreeSpaceReference)
        );
    }

    #[test]
    fn enhancement_estimate_values() {
        let d = resonant_decomposition(&sapphire());
        let g = enhancement_estimate(d.sigma_sq, 1.0, 0.015, 0.1, 0.1, 1.0);
        assert_relative_eq!(g, 298.546_845_311_357_9, max_relative = 1e-11);
        let contact = enhancement_estimate(d.sigma_sq, 1.0, 0.015, 0.0, 0.1, 1.0);
        assert_relative_eq!(contact, d.sigma_sq.powi(2) / 0.015f64.powi(2), max_relative = 1e-15);
        let metal = resonant_decomposition(&MediumModel::drude_metal(1.0, 1e-3).unwrap());
        assert_relative_eq!(
            enhancement_estimate(metal.sigma_sq, 1.0, 1e-3, 0.0, 0.0, 1.0),
            1e6,
            max_relative = 1e-12
        );
    }

    #[test]
    fn sign_follows_atom_b_position() {
        let m = sapphire();
        let (a, b, g) = fig2(Orientation::Parallel, 1.0, 0.9);
        assert!(ratio_resonant(&a, &b, &g, &m, &HostModel::Vacuum).unwrap() > 0.0);
        let (a, b, g) = fig2(Orientation::Parallel, 1.0, 1.1);
        assert!(ratio_resonant(&a, &b, &g, &m, &HostModel::Vacuum).unwrap() < 0.0);
    }

    #[test]
    fn dielectric_host_screening() {
        // A lossless dielectric host with eps = 2 and a featureless medium of eps = 2:
        // no interface, but the local-field/host weight L^2/eps^2 = 1.44^2/4 applies.
        let host_medium = MediumModel::from_microscopic(2.0, 0.0, 0.0, 1.0).unwrap();
        let host = HostModel::Lorentz(host_medium);
        let (a, b, g) = fig2(Orientation::Parallel, 1.0, 0.9);
        let screened = resonant(&a, &b, &g, &host_medium, &host).unwrap();
        let bare = resonant(&a, &b, &g, &MediumModel::vacuum(), &HostModel::Vacuum).unwrap();
        assert_relative_eq!(screened / bare, 1.44f64.powi(2) / 4.0, max_relative = 1e-14);
    }

    #[test]
    fn non_excited_atom_a_rejected() {
        let b = AtomSpec::ground(0.9, 1e-3, 1.0).unwrap();
        let g = PairGeometry::new(0.1, 0.1, 1.0).unwrap();
        assert!(resonant(&b, &b, &g, &sapphire(), &HostModel::Vacuum).is_err());
    }
}
