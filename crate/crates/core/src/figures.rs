//! Preset sweeps reproducing the four frequency-dependence figures.
//!
//! | id | varied                          | quantity   | default range     | columns                                          |
//! |----|---------------------------------|------------|-------------------|--------------------------------------------------|
//! | 2  | orientation                     | `u_ratio`  | [0.7, 1.3] x 600  | `u_ratio_parallel`, `u_ratio_perpendicular`      |
//! | 3  | omega_B = 0.9 / 1.1 (parallel)  | `u_ratio`  | [0.7, 1.3] x 600  | `u_ratio_omega_b_0p9`, `u_ratio_omega_b_1p1`     |
//! | 4  | orientation, omega_B = omega_S  | `u_ratio`  | [0.97, 1.03] x 600| `u_ratio_parallel`, `u_ratio_perpendicular`      |
//! | 5  | R = z_A / 5 z_A, z_A = 3 alpha_B(0)^(1/3) | `force_z` | [0.9, 1.1] x 600 | `f_z_ratio_r_eq_za`, `f_z_ratio_r_eq_5za` |
//!
//! Only the resonant part of the potential is written. A base scenario,
//! when given, supplies the medium, atom B, tolerance and sweep range; the
//! preset then overrides the varied parameter.

use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::geometry::Orientation;
use crate::scenario::{Lengths, Scenario};
use crate::sweep::{run_sweep, Quantity, SweepError, SweepTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    Orientation,
    AtomDetuning,
    DoubleResonance,
    Force,
}

impl FigureId {
    pub fn from_number(n: u32) -> Option<Self> {
        match n {
            2 => Some(FigureId::Orientation),
            3 => Some(FigureId::AtomDetuning),
            4 => Some(FigureId::DoubleResonance),
            5 => Some(FigureId::Force),
            _ => None,
        }
    }

    pub fn number(&self) -> u32 {
        match self {
            FigureId::Orientation => 2,
            FigureId::AtomDetuning => 3,
            FigureId::DoubleResonance => 4,
            FigureId::Force => 5,
        }
    }

    /// Preset sweep range in units of omega_S.
    pub fn default_range(&self) -> (f64, f64) {
        match self {
            FigureId::Orientation | FigureId::AtomDetuning => (0.7, 1.3),
            FigureId::DoubleResonance => (0.97, 1.03),
            FigureId::Force => (0.9, 1.1),
        }
    }
}

#[derive(Debug, Error)]
pub enum FigureError {
    #[error(transparent)]
    Sweep(#[from] SweepError),
    #[error("cannot write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

fn preset_base(id: FigureId, base: Option<&Scenario>) -> Scenario {
    match base {
        Some(s) => s.clone(),
        None => {
            let (lo, hi) = id.default_range();
            Scenario {
                omega_a_min_rel: lo,
                omega_a_max_rel: hi,
                points: 600,
                ..Scenario::default()
            }
        }
    }
}

/// Scenarios swept for a figure, each with its output column name.
pub fn figure_scenarios(id: FigureId, base: Option<&Scenario>) -> Vec<(Scenario, String)> {
    let base = preset_base(id, base);
    let oriented = |s: &Scenario, o: Orientation| Scenario {
        orientation: o,
        ..s.clone()
    };
    match id {
        FigureId::Orientation => vec![
            (oriented(&base, Orientation::Parallel), "u_ratio_parallel".into()),
            (
                oriented(&base, Orientation::Perpendicular),
                "u_ratio_perpendicular".into(),
            ),
        ],
        FigureId::AtomDetuning => {
            let par = oriented(&base, Orientation::Parallel);
            vec![
                (
                    Scenario {
                        omega_b_rel: 0.9,
                        ..par.clone()
                    },
                    "u_ratio_omega_b_0p9".into(),
                ),
                (
                    Scenario {
                        omega_b_rel: 1.1,
                        ..par
                    },
                    "u_ratio_omega_b_1p1".into(),
                ),
            ]
        }
        FigureId::DoubleResonance => {
            let b = Scenario {
                omega_b_rel: 1.0,
                ..base
            };
            vec![
                (oriented(&b, Orientation::Parallel), "u_ratio_parallel".into()),
                (oriented(&b, Orientation::Perpendicular), "u_ratio_perpendicular".into()),
            ]
        }
        FigureId::Force => {
            let z_a_alpha = match base.lengths {
                Lengths::PolarizabilityUnits { z_a_alpha, .. } => z_a_alpha,
                Lengths::RelativeToSeparation { .. } => 3.0,
            };
            let par = oriented(&base, Orientation::Parallel);
            let at = |r_rel: f64| Scenario {
                lengths: Lengths::PolarizabilityUnits { z_a_alpha, r_rel },
                ..par.clone()
            };
            vec![
                (at(1.0), "f_z_ratio_r_eq_za".into()),
                (at(5.0), "f_z_ratio_r_eq_5za".into()),
            ]
        }
    }
}

pub fn figure_quantity(id: FigureId) -> Quantity {
    match id {
        FigureId::Force => Quantity::ForceZ,
        _ => Quantity::URatio,
    }
}

/// Runs the preset sweeps of a figure and joins them into one table.
pub fn figure_table(id: FigureId, base: Option<&Scenario>) -> Result<SweepTable, SweepError> {
    let quantity = figure_quantity(id);
    let parts = figure_scenarios(id, base)
        .into_iter()
        .map(|(s, name)| run_sweep(&s, quantity).map(|t| (t, vec![name])))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SweepTable::merge(parts))
}

/// Writes a figure's CSV to `out_path`.
pub fn emit_figure(id: FigureId, base: Option<&Scenario>, out_path: &Path) -> Result<SweepTable, FigureError> {
    let table = figure_table(id, base)?;
    let io_err = |source| FigureError::Io {
        path: out_path.to_path_buf(),
        source,
    };
    let file = File::create(out_path).map_err(io_err)?;
    table.write_csv(BufWriter::new(file)).map_err(io_err)?;
    Ok(table)
}
