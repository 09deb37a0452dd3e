//! Scenario files: a complete, reproducible problem statement.
//!
//! The format is line-oriented UTF-8 text with `key = value` pairs; `#`
//! starts a comment. Unknown keys are errors. Every key is optional and the
//! defaults reproduce the sapphire parameter set (`eta = 2.71`,
//! `eps(0) = 6.57`, `Gamma = 0.015 omega_S`, `omega_B = 0.9 omega_S`,
//! `gamma_B = 1e-3 omega_S`, parallel pair with `z_A = 0.1 R`).
//!
//! | key               | meaning                                              | default    |
//! |-------------------|------------------------------------------------------|------------|
//! | `eta`             | background dielectric constant                       | 2.71       |
//! | `eps0`            | static permittivity of the medium                    | 6.57       |
//! | `omega_s_hz`      | lab value of omega_S, annotation only                | unset      |
//! | `gamma_rel`       | medium damping / omega_S                             | 0.015      |
//! | `omega_b_rel`     | transition frequency of atom B / omega_S             | 0.9        |
//! | `gamma_b_rel`     | linewidth of atom B / omega_S (may be 0)             | 0.001      |
//! | `alpha_b0_rel`    | static polarizability of atom B, reduced units       | 1          |
//! | `orientation`     | `parallel` or `perpendicular`                        | parallel   |
//! | `nearer_atom`     | `a` or `b`, the atom nearer the surface when stacked | a          |
//! | `z_a_rel`         | height of the nearer atom / R                        | 0.1        |
//! | `z_a_alpha`       | height of atom A / alpha_B(0)^(1/3) (force layout)   | unset      |
//! | `r_rel`           | R / z_A, only together with `z_a_alpha`              | 1          |
//! | `omega_a_min_rel` | first sweep frequency / omega_S                      | 0.7        |
//! | `omega_a_max_rel` | last sweep frequency / omega_S                       | 1.3        |
//! | `points`          | number of sweep points (>= 2)                        | 600        |
//! | `rel_tol`         | relative tolerance of imaginary-axis integrals       | 1e-9       |
//!
//! Lengths are reduced by `R` unless `z_a_alpha` is given, in which case
//! `z_A = z_a_alpha * alpha_B(0)^(1/3)` and `R = r_rel * z_A`.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use thiserror::Error;

use crate::atoms::AtomSpec;
use crate::error::Result;
use crate::forces::ForceSetup;
use crate::geometry::{NearerAtom, Orientation, PairGeometry};
use crate::media::MediumModel;
use crate::quadrature::QuadratureSpec;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {message}")]
pub struct ScenarioError {
    /// 1-based line of the offending entry; 0 when no line is involved.
    pub line: usize,
    pub message: String,
}

/// How the pair geometry is laid out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Lengths {
    /// `R = 1`; the nearer atom sits at `z_a_rel`.
    RelativeToSeparation { z_a_rel: f64 },
    /// `z_A = z_a_alpha * alpha_B(0)^(1/3)`, `R = r_rel * z_A`.
    PolarizabilityUnits { z_a_alpha: f64, r_rel: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub eta: f64,
    pub eps0: f64,
    pub omega_s_hz: Option<f64>,
    pub gamma_rel: f64,
    pub omega_b_rel: f64,
    pub gamma_b_rel: f64,
    pub alpha_b0_rel: f64,
    pub orientation: Orientation,
    pub nearer_atom: NearerAtom,
    pub lengths: Lengths,
    pub omega_a_min_rel: f64,
    pub omega_a_max_rel: f64,
    pub points: usize,
    pub rel_tol: f64,
}

impl Default for Scenario {
    fn default() -> Self {
        Scenario {
            eta: 2.71,
            eps0: 6.57,
            omega_s_hz: None,
            gamma_rel: 0.015,
            omega_b_rel: 0.9,
            gamma_b_rel: 1e-3,
            alpha_b0_rel: 1.0,
            orientation: Orientation::Parallel,
            nearer_atom: NearerAtom::A,
            lengths: Lengths::RelativeToSeparation { z_a_rel: 0.1 },
            omega_a_min_rel: 0.7,
            omega_a_max_rel: 1.3,
            points: 600,
            rel_tol: 1e-9,
        }
    }
}

const KEYS: &[&str] = &[
    "eta",
    "eps0",
    "omega_s_hz",
    "gamma_rel",
    "omega_b_rel",
    "gamma_b_rel",
    "alpha_b0_rel",
    "orientation",
    "nearer_atom",
    "z_a_rel",
    "z_a_alpha",
    "r_rel",
    "omega_a_min_rel",
    "omega_a_max_rel",
    "points",
    "rel_tol",
];

fn err(line: usize, message: impl Into<String>) -> ScenarioError {
    ScenarioError {
        line,
        message: message.into(),
    }
}

fn parse_num(line: usize, key: &str, value: &str) -> std::result::Result<f64, ScenarioError> {
    value
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| err(line, format!("`{key}`: cannot parse `{value}` as a finite number")))
}

impl FromStr for Scenario {
    type Err = ScenarioError;

    fn from_str(text: &str) -> std::result::Result<Self, ScenarioError> {
        parse_scenario(text)
    }
}

/// Parses scenario text; see the module docs for the key set.
pub fn parse_scenario(text: &str) -> std::result::Result<Scenario, ScenarioError> {
    let mut seen: HashMap<&str, usize> = HashMap::new();
    let mut s = Scenario::default();
    let mut z_a_rel = None;
    let mut z_a_alpha = None;
    let mut r_rel = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| err(line, format!("expected `key = value`, got `{content}`")))?;
        let key = KEYS
            .iter()
            .copied()
            .find(|k| *k == key)
            .ok_or_else(|| err(line, format!("unknown key `{key}`")))?;
        if let Some(first) = seen.insert(key, line) {
            return Err(err(line, format!("duplicate key `{key}` (first set on line {first})")));
        }
        match key {
            "eta" => s.eta = parse_num(line, key, value)?,
            "eps0" => s.eps0 = parse_num(line, key, value)?,
            "omega_s_hz" => s.omega_s_hz = Some(parse_num(line, key, value)?),
            "gamma_rel" => s.gamma_rel = parse_num(line, key, value)?,
            "omega_b_rel" => s.omega_b_rel = parse_num(line, key, value)?,
            "gamma_b_rel" => s.gamma_b_rel = parse_num(line, key, value)?,
            "alpha_b0_rel" => s.alpha_b0_rel = parse_num(line, key, value)?,
            "orientation" => {
                s.orientation = match value {
                    "parallel" => Orientation::Parallel,
                    "perpendicular" => Orientation::Perpendicular,
                    _ => {
                        return Err(err(
                            line,
                            format!("`orientation` must be parallel or perpendicular, got `{value}`"),
                        ))
                    }
                }
            }
            "nearer_atom" => {
                s.nearer_atom = match value {
                    "a" | "A" => NearerAtom::A,
                    "b" | "B" => NearerAtom::B,
                    _ => return Err(err(line, format!("`nearer_atom` must be a or b, got `{value}`"))),
                }
            }
            "z_a_rel" => z_a_rel = Some(parse_num(line, key, value)?),
            "z_a_alpha" => z_a_alpha = Some(parse_num(line, key, value)?),
            "r_rel" => r_rel = Some(parse_num(line, key, value)?),
            "omega_a_min_rel" => s.omega_a_min_rel = parse_num(line, key, value)?,
            "omega_a_max_rel" => s.omega_a_max_rel = parse_num(line, key, value)?,
            "points" => {
                s.points = value
                    .parse()
                    .map_err(|_| err(line, format!("`points`: cannot parse `{value}` as a count")))?
            }
            "rel_tol" => s.rel_tol = parse_num(line, key, value)?,
            _ => unreachable!("key list and match arms out of sync"),
        }
    }

    s.lengths = match (z_a_rel, z_a_alpha, r_rel) {
        (Some(_), Some(_), _) => {
            return Err(err(
                seen["z_a_alpha"],
                "`z_a_rel` and `z_a_alpha` are mutually exclusive",
            ));
        }
        (_, None, Some(_)) => return Err(err(seen["r_rel"], "`r_rel` requires `z_a_alpha`")),
        (z, None, None) => Lengths::RelativeToSeparation {
            z_a_rel: z.unwrap_or(0.1),
        },
        (None, Some(z_a_alpha), r) => Lengths::PolarizabilityUnits {
            z_a_alpha,
            r_rel: r.unwrap_or(1.0),
        },
    };

    s.check()
        .map_err(|(key, message)| err(seen.get(key).copied().unwrap_or(0), message))?;
    Ok(s)
}

impl Scenario {
    /// Checks the invariants; on failure returns the key to blame.
    fn check(&self) -> std::result::Result<(), (&'static str, String)> {
        let positive = [
            ("eta", self.eta),
            ("eps0", self.eps0),
            ("gamma_rel", self.gamma_rel),
            ("omega_b_rel", self.omega_b_rel),
            ("alpha_b0_rel", self.alpha_b0_rel),
            ("omega_a_min_rel", self.omega_a_min_rel),
            ("omega_a_max_rel", self.omega_a_max_rel),
            ("rel_tol", self.rel_tol),
        ];
        for (key, v) in positive {
            if !(v > 0.0) {
                return Err((key, format!("`{key}` must be positive, got {v}")));
            }
        }
        if let Some(hz) = self.omega_s_hz {
            if !(hz > 0.0) {
                return Err(("omega_s_hz", format!("`omega_s_hz` must be positive, got {hz}")));
            }
        }
        if !(self.gamma_b_rel >= 0.0) {
            return Err((
                "gamma_b_rel",
                format!("`gamma_b_rel` must be >= 0, got {}", self.gamma_b_rel),
            ));
        }
        if self.eta < 1.0 {
            return Err(("eta", format!("`eta` must be >= 1, got {}", self.eta)));
        }
        if self.eps0 <= self.eta {
            return Err((
                "eps0",
                format!("`eps0` ({}) must exceed `eta` ({})", self.eps0, self.eta),
            ));
        }
        match self.lengths {
            Lengths::RelativeToSeparation { z_a_rel } if !(z_a_rel > 0.0) => {
                return Err(("z_a_rel", format!("`z_a_rel` must be positive, got {z_a_rel}")));
            }
            Lengths::PolarizabilityUnits { z_a_alpha, .. } if !(z_a_alpha > 0.0) => {
                return Err(("z_a_alpha", format!("`z_a_alpha` must be positive, got {z_a_alpha}")));
            }
            Lengths::PolarizabilityUnits { r_rel, .. } if !(r_rel > 0.0) => {
                return Err(("r_rel", format!("`r_rel` must be positive, got {r_rel}")));
            }
            _ => {}
        }
        if self.omega_a_max_rel <= self.omega_a_min_rel {
            return Err((
                "omega_a_max_rel",
                "`omega_a_max_rel` must exceed `omega_a_min_rel`".to_string(),
            ));
        }
        if self.points < 2 {
            return Err(("points", format!("`points` must be at least 2, got {}", self.points)));
        }
        Ok(())
    }

    pub fn validate(&self) -> std::result::Result<(), ScenarioError> {
        self.check().map_err(|(_, message)| err(0, message))
    }

    /// Canonical text form; parsing it yields an identical scenario.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: &dyn fmt::Display| {
            let _ = writeln!(out, "{k} = {v}");
        };
        kv("eta", &self.eta);
        kv("eps0", &self.eps0);
        if let Some(hz) = self.omega_s_hz {
            kv("omega_s_hz", &hz);
        }
        kv("gamma_rel", &self.gamma_rel);
        kv("omega_b_rel", &self.omega_b_rel);
        kv("gamma_b_rel", &self.gamma_b_rel);
        kv("alpha_b0_rel", &self.alpha_b0_rel);
        let orientation = match self.orientation {
            Orientation::Parallel => "parallel",
            Orientation::Perpendicular => "perpendicular",
        };
        kv("orientation", &orientation);
        let nearer = match self.nearer_atom {
            NearerAtom::A => "a",
            NearerAtom::B => "b",
        };
        kv("nearer_atom", &nearer);
        match self.lengths {
            Lengths::RelativeToSeparation { z_a_rel } => kv("z_a_rel", &z_a_rel),
            Lengths::PolarizabilityUnits { z_a_alpha, r_rel } => {
                kv("z_a_alpha", &z_a_alpha);
                kv("r_rel", &r_rel);
            }
        }
        kv("omega_a_min_rel", &self.omega_a_min_rel);
        kv("omega_a_max_rel", &self.omega_a_max_rel);
        kv("points", &self.points);
        kv("rel_tol", &self.rel_tol);
        out
    }

    pub fn medium(&self) -> Result<MediumModel> {
        MediumModel::from_observables(self.eta, self.eps0, 1.0, self.gamma_rel)
    }

    pub fn atom_b(&self) -> Result<AtomSpec> {
        AtomSpec::ground_from_static(self.omega_b_rel, self.gamma_b_rel, self.alpha_b0_rel)
    }

    /// Excited atom at `omega_a`, with unit static polarizability magnitude.
    pub fn atom_a(&self, omega_a: f64) -> Result<AtomSpec> {
        AtomSpec::excited_from_static(omega_a, 1.0)
    }

    pub fn geometry(&self) -> Result<PairGeometry> {
        match self.lengths {
            Lengths::RelativeToSeparation { z_a_rel } => {
                PairGeometry::oriented(self.orientation, z_a_rel, 1.0, self.nearer_atom)
            }
            Lengths::PolarizabilityUnits { z_a_alpha, r_rel } => {
                let z_a = z_a_alpha * self.alpha_b0_rel.cbrt();
                let r = r_rel * z_a;
                match (self.orientation, self.nearer_atom) {
                    (Orientation::Perpendicular, NearerAtom::B) => PairGeometry::new(z_a, z_a - r, 0.0),
                    _ => PairGeometry::oriented(self.orientation, z_a, r, NearerAtom::A),
                }
            }
        }
    }

    pub fn quadrature(&self) -> QuadratureSpec {
        QuadratureSpec::with_rel_tol(self.rel_tol)
    }

    /// Uniform grid of `points` frequencies from min to max inclusive.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.points;
        let (lo, hi) = (self.omega_a_min_rel, self.omega_a_max_rel);
        (0..n)
            .map(|i| {
                if i + 1 == n {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (n - 1) as f64
                }
            })
            .collect()
    }

    pub fn force_setup(&self, omega_a: f64) -> Result<ForceSetup> {
        Ok(ForceSetup {
            atom_a: self.atom_a(omega_a)?,
            atom_b: self.atom_b()?,
            geometry: self.geometry()?,
            medium: self.medium()?,
        })
    }
}
