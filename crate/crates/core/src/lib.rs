//! Surface-enhanced dispersion interactions of an excited two-level atom.
//!
//! Everything is evaluated in the nonretarded (quasistatic) regime and in
//! reduced units: frequencies are multiples of a reference frequency (the
//! surface-mode frequency by default), lengths are multiples of a reference
//! length, and the reduced Planck constant is one. Potentials are usually
//! reported relative to the free-space scale `U0 = 2 d_A^2 alpha_B(0) / R^6`
//! and forces relative to `F0 = d_A^2 / (2 z_A^4)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`media`]: Lorentz-oscillator permittivity of the half space and the host.
//! * [`response`]: quasistatic reflection coefficient, its resonant
//!   decomposition and the Onsager local-field factor.
//! * [`geometry`]: pair geometry and the reduced image-dipole Green dyadics.
//! * [`atoms`]: two-level polarizabilities.
//! * [`quadrature`]: half-line Gauss-Legendre integration on the imaginary axis.
//! * [`potentials`]: Casimir-Polder and atom*-atom potentials, enhancement factors.
//! * [`forces`]: resonant force on the excited atom and its gradient check.
//! * [`scenario`], [`sweep`], [`figures`]: scenario files, frequency sweeps and CSV output.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod atoms;
pub mod error;
pub mod figures;
pub mod forces;
pub mod geometry;
pub mod media;
pub mod potentials;
pub mod quadrature;
pub mod response;
pub mod scenario;
pub mod sweep;

pub use num_complex::Complex64;

pub use atoms::{AtomSpec, AtomState};
pub use error::{Error, Result};
pub use forces::{ForceResult, ForceSetup, GradientReport};
pub use geometry::{NearerAtom, Orientation, PairGeometry, ReducedDyadic};
pub use media::{HostModel, MediumModel, StaticPermittivity};
pub use potentials::{CasimirPolderBreakdown, PotentialBreakdown};
pub use quadrature::QuadratureSpec;
pub use response::ResonantDecomposition;
pub use scenario::{parse_scenario, Lengths, Scenario, ScenarioError};
pub use sweep::{run_sweep, run_sweep_with, Quantity, SweepError, SweepRow, SweepTable};
