//! Atom-pair geometry and the reduced nonretarded Green dyadics.
//!
//! The interface is the plane `z = 0` and both atoms sit at `z > 0`. The
//! pair is embedded canonically in the x-z plane: atom B at `(0, 0, z_B)`
//! and atom A at `(R_par, 0, z_A)`.
//!
//! Dyadics are stored in reduced form: the physical quasistatic Green
//! function is `(c^2 / w^2) (L / eps)` times the [`ReducedDyadic`], so the
//! speed of light and the frequency never appear here.

use std::ops::{Add, Mul};

use num_complex::Complex64;

use crate::error::{ensure, Error, Result};

pub type Vec3 = [f64; 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// Both atoms at the same height, separated parallel to the surface.
    Parallel,
    /// Atoms stacked along the surface normal.
    Perpendicular,
}

/// Which atom is closer to the surface in a perpendicular stack.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NearerAtom {
    #[default]
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairGeometry {
    z_a: f64,
    z_b: f64,
    r_par: f64,
}

impl PairGeometry {
    pub fn new(z_a: f64, z_b: f64, r_par: f64) -> Result<Self> {
        for z in [z_a, z_b] {
            if !(z > 0.0) || !z.is_finite() {
                return Err(Error::BelowInterface(z));
            }
        }
        ensure(r_par.is_finite() && r_par >= 0.0, || {
            format!("in-plane separation must be >= 0, got {r_par}")
        })?;
        if r_par == 0.0 && z_a == z_b {
            return Err(Error::ZeroSeparation);
        }
        Ok(PairGeometry { z_a, z_b, r_par })
    }

    /// Builds the parallel or perpendicular configuration at atom distance `r`,
    /// with the nearer atom at height `z_near`.
    pub fn oriented(orientation: Orientation, z_near: f64, r: f64, nearer: NearerAtom) -> Result<Self> {
        ensure(r > 0.0 && r.is_finite(), || {
            format!("atom distance must be > 0, got {r}")
        })?;
        match (orientation, nearer) {
            (Orientation::Parallel, _) => Self::new(z_near, z_near, r),
            (Orientation::Perpendicular, NearerAtom::A) => Self::new(z_near, z_near + r, 0.0),
            (Orientation::Perpendicular, NearerAtom::B) => Self::new(z_near + r, z_near, 0.0),
        }
    }

    /// Geometry of two atoms at arbitrary positions (only the height and the
    /// in-plane distance matter).
    pub fn from_positions(pos_a: Vec3, pos_b: Vec3) -> Result<Self> {
        let dx = pos_a[0] - pos_b[0];
        let dy = pos_a[1] - pos_b[1];
        Self::new(pos_a[2], pos_b[2], dx.hypot(dy))
    }

    pub fn z_a(&self) -> f64 {
        self.z_a
    }

    pub fn z_b(&self) -> f64 {
        self.z_b
    }

    pub fn r_par(&self) -> f64 {
        self.r_par
    }

    /// `Z = z_A - z_B`
    pub fn z(&self) -> f64 {
        self.z_a - self.z_b
    }

    /// `Z_+ = z_A + z_B`
    pub fn z_plus(&self) -> f64 {
        self.z_a + self.z_b
    }

    pub fn r(&self) -> f64 {
        self.r_par.hypot(self.z())
    }

    /// Distance from atom A to the mirror image of atom B.
    pub fn r_prime(&self) -> f64 {
        self.r_par.hypot(self.z_plus())
    }

    pub fn pos_a(&self) -> Vec3 {
        [self.r_par, 0.0, self.z_a]
    }

    pub fn pos_b(&self) -> Vec3 {
        [0.0, 0.0, self.z_b]
    }

    pub fn separation(&self) -> Vec3 {
        [self.r_par, 0.0, self.z()]
    }

    pub fn image_separation(&self) -> Vec3 {
        [self.r_par, 0.0, self.z_plus()]
    }

    /// Exchanges the roles of the two atoms.
    pub fn swapped(&self) -> Self {
        PairGeometry {
            z_a: self.z_b,
            z_b: self.z_a,
            r_par: self.r_par,
        }
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.z_a * factor, self.z_b * factor, self.r_par * factor)
    }
}

/// A 3x3 complex dyadic with units of inverse length cubed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedDyadic(pub [[Complex64; 3]; 3]);

impl ReducedDyadic {
    pub fn zero() -> Self {
        ReducedDyadic([[Complex64::new(0.0, 0.0); 3]; 3])
    }

    pub fn from_real(m: [[f64; 3]; 3]) -> Self {
        let mut out = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] = Complex64::new(m[i][j], 0.0);
            }
        }
        out
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[i][j]
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn conj(&self) -> Self {
        let mut out = *self;
        out.0.iter_mut().flatten().for_each(|x| *x = x.conj());
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = *self;
        out.0.iter_mut().flatten().for_each(|x| *x *= s);
        out
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] = (0..3).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        out
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..i {
                worst = worst.max((self.0[i][j] - self.0[j][i]).norm());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max)
    }
}

impl Add for ReducedDyadic {
    type Output = ReducedDyadic;

    fn add(mut self, rhs: Self) -> Self {
        for i in 0..3 {
            for j in 0..3 {
                self.0[i][j] += rhs.0[i][j];
            }
        }
        self
    }
}

impl Mul for ReducedDyadic {
    type Output = ReducedDyadic;

    fn mul(self, rhs: Self) -> Self {
        self.matmul(&rhs)
    }
}

fn norm(v: Vec3) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn dipole_real(v: Vec3) -> Result<[[f64; 3]; 3]> {
    let len = norm(v);
    if !(len > 0.0) {
        return Err(Error::ZeroSeparation);
    }
    let unit = [v[0] / len, v[1] / len, v[2] / len];
    let inv3 = 1.0 / (len * len * len);
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let delta = if i == j { 1.0 } else { 0.0 };
            m[i][j] = (3.0 * unit[i] * unit[j] - delta) * inv3;
        }
    }
    Ok(m)
}

/// Near-field dipole dyadic `(3 R R - I R^2) / R^5`.
pub fn direct_dyadic(sep: Vec3) -> Result<ReducedDyadic> {
    dipole_real(sep).map(ReducedDyadic::from_real)
}

/// Image-dipole dyadic: the dipole dyadic at the image separation,
/// right-multiplied by the mirror operator `diag(-1, -1, 1)`.
pub fn image_dyadic(image_sep: Vec3) -> Result<ReducedDyadic> {
    if !(image_sep[2] > 0.0) {
        return Err(Error::BelowInterface(image_sep[2]));
    }
    let mut m = dipole_real(image_sep)?;
    for row in m.iter_mut() {
        row[0] = -row[0];
        row[1] = -row[1];
    }
    Ok(ReducedDyadic::from_real(m))
}

/// Reduced dyadic for the field at `field_pos` radiated by a dipole at
/// `source_pos`, with reflection coefficient `r_coeff` weighting the image.
pub fn greens_between(field_pos: Vec3, source_pos: Vec3, r_coeff: Complex64) -> Result<ReducedDyadic> {
    for z in [field_pos[2], source_pos[2]] {
        if !(z > 0.0) {
            return Err(Error::BelowInterface(z));
        }
    }
    let sep = [
        field_pos[0] - source_pos[0],
        field_pos[1] - source_pos[1],
        field_pos[2] - source_pos[2],
    ];
    let image_sep = [sep[0], sep[1], field_pos[2] + source_pos[2]];
    Ok(direct_dyadic(sep)? + image_dyadic(image_sep)?.scale(r_coeff))
}

/// `G(r_A, r_B)` in reduced form for the canonical embedding.
pub fn reduced_greens(geom: &PairGeometry, r_coeff: Complex64) -> Result<ReducedDyadic> {
    greens_between(geom.pos_a(), geom.pos_b(), r_coeff)
}

/// `G(r_B, r_A)` in reduced form.
pub fn reduced_greens_reverse(geom: &PairGeometry, r_coeff: Complex64) -> Result<ReducedDyadic> {
    greens_between(geom.pos_b(), geom.pos_a(), r_coeff)
}

/// Interface part of the scattered trace at the atom, `r / (2 z_A^3)`.
/// The local-field and host factors are applied by the caller, and the
/// position-independent cavity self-term is not included.
pub fn scattered_trace_interface(z_a: f64, r_coeff: Complex64) -> Result<Complex64> {
    if !(z_a > 0.0) {
        return Err(Error::BelowInterface(z_a));
    }
    Ok(r_coeff / (2.0 * z_a * z_a * z_a))
}
