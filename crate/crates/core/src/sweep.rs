//! Frequency sweeps over the transition frequency of the excited atom.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::error::Error;
use crate::forces::resonant_force;
use crate::media::HostModel;
use crate::potentials::{casimir_polder, ratio_resonant, u_ab_breakdown};
use crate::scenario::Scenario;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    /// Resonant atom*-atom potential over `U0`.
    URatio,
    /// Perpendicular resonant force over `F0`.
    ForceZ,
    /// In-plane resonant force (along the pair axis) over `F0`.
    ForcePar,
    /// Casimir-Polder potential in units of `d_A^2 / z_A^3`.
    CpPotential,
}

impl Quantity {
    pub fn name(&self) -> &'static str {
        match self {
            Quantity::URatio => "u_ratio",
            Quantity::ForceZ => "force_z",
            Quantity::ForcePar => "force_par",
            Quantity::CpPotential => "cp_potential",
        }
    }

    fn columns(&self, breakdown: bool) -> Vec<String> {
        let cols: &[&str] = match (self, breakdown) {
            (Quantity::URatio, false) => &["u_ratio"],
            (Quantity::URatio, true) => &["u_ratio", "u_ratio_off_resonant", "u_ratio_total"],
            (Quantity::ForceZ, false) => &["f_z_ratio"],
            (Quantity::ForceZ, true) => &["f_z_ratio", "f_z_surface_ratio", "f_z_pair_ratio"],
            (Quantity::ForcePar, _) => &["f_par_ratio"],
            (Quantity::CpPotential, false) => &["cp_ratio"],
            (Quantity::CpPotential, true) => &["cp_ratio", "cp_off_resonant_ratio", "cp_resonant_ratio"],
        };
        cols.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Quantity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "u_ratio" => Ok(Quantity::URatio),
            "force_z" => Ok(Quantity::ForceZ),
            "force_par" => Ok(Quantity::ForcePar),
            "cp_potential" => Ok(Quantity::CpPotential),
            _ => Err(format!(
                "unknown quantity `{s}` (expected u_ratio, force_z, force_par or cp_potential)"
            )),
        }
    }
}

/// One grid point; `None` marks a gap at an undamped pole.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub omega_a_rel: f64,
    pub values: Vec<Option<f64>>,
}

impl SweepRow {
    pub fn is_gap(&self) -> bool {
        self.values.iter().all(Option::is_none)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    /// Value column names; the frequency column `omega_a_rel` is implicit.
    pub columns: Vec<String>,
    pub rows: Vec<SweepRow>,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("at omega_A = {omega_a}: {source}")]
pub struct SweepError {
    pub omega_a: f64,
    pub source: Error,
}

impl SweepTable {
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r.values[idx]).collect())
    }

    /// Joins tables sampled on the same grid, renaming their columns.
    pub fn merge(parts: Vec<(SweepTable, Vec<String>)>) -> SweepTable {
        let mut columns = Vec::new();
        let mut rows: Vec<SweepRow> = Vec::new();
        for (table, names) in parts {
            assert_eq!(names.len(), table.columns.len(), "one new name per column");
            columns.extend(names);
            if rows.is_empty() {
                rows = table.rows;
            } else {
                assert_eq!(rows.len(), table.rows.len(), "tables must share a grid");
                for (row, other) in rows.iter_mut().zip(table.rows) {
                    assert_eq!(row.omega_a_rel, other.omega_a_rel, "tables must share a grid");
                    row.values.extend(other.values);
                }
            }
        }
        SweepTable { columns, rows }
    }

    /// CSV with a snake-case header, 17 significant digits in scientific
    /// notation, comma separators and `\n` line ends. Gaps are empty fields.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        let mut header = String::from("omega_a_rel");
        for c in &self.columns {
            header.push(',');
            header.push_str(c);
        }
        header.push('\n');
        out.write_all(header.as_bytes())?;
        for row in &self.rows {
            let mut line = format_number(row.omega_a_rel);
            for v in &row.values {
                line.push(',');
                if let Some(v) = v {
                    line.push_str(&format_number(*v));
                }
            }
            line.push('\n');
            out.write_all(line.as_bytes())?;
        }
        out.flush()
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory cannot fail");
        String::from_utf8(buf).expect("CSV output is ASCII")
    }
}

pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

fn evaluate(scenario: &Scenario, quantity: Quantity, breakdown: bool, omega_a: f64) -> Result<Vec<f64>, Error> {
    let medium = scenario.medium()?;
    let atom_a = scenario.atom_a(omega_a)?;
    let atom_b = scenario.atom_b()?;
    let geom = scenario.geometry()?;
    let host = HostModel::Vacuum;
    match (quantity, breakdown) {
        (Quantity::URatio, false) => Ok(vec![ratio_resonant(&atom_a, &atom_b, &geom, &medium, &host)?]),
        (Quantity::URatio, true) => {
            let p = u_ab_breakdown(&atom_a, &atom_b, &geom, &medium, &host, &scenario.quadrature())?;
            Ok(vec![p.ratio_resonant, p.ratio_off_resonant(), p.ratio_total()])
        }
        (Quantity::ForceZ, _) => {
            let f = resonant_force(&scenario.force_setup(omega_a)?)?;
            let mut v = vec![f.f_z_ratio()];
            if breakdown {
                v.push(f.f_z_surface / f.normalization);
                v.push(f.f_z_pair / f.normalization);
            }
            Ok(v)
        }
        (Quantity::ForcePar, _) => {
            let f = resonant_force(&scenario.force_setup(omega_a)?)?;
            Ok(vec![f.f_parallel_ratio()[0]])
        }
        (Quantity::CpPotential, _) => {
            let z = geom.z_a();
            let unit = atom_a.d_sq() / z.powi(3);
            let cp = casimir_polder(&atom_a, z, &medium, &host, &scenario.quadrature())?;
            let mut v = vec![cp.total / unit];
            if breakdown {
                v.push(cp.off_resonant / unit);
                v.push(cp.resonant / unit);
            }
            Ok(v)
        }
    }
}

/// Evaluates `quantity` on the scenario's frequency grid.
pub fn run_sweep(scenario: &Scenario, quantity: Quantity) -> Result<SweepTable, SweepError> {
    run_sweep_with(scenario, quantity, false)
}

/// Like [`run_sweep`]; with `breakdown` set, extra columns attribute the
/// value to its parts (off-resonant and total potential, or the surface and
/// pair parts of the force).
///
/// Points are evaluated in parallel; rows come back in grid order. A point
/// on an undamped atomic pole becomes a gap row.
pub fn run_sweep_with(scenario: &Scenario, quantity: Quantity, breakdown: bool) -> Result<SweepTable, SweepError> {
    scenario.validate().map_err(|e| SweepError {
        omega_a: f64::NAN,
        source: Error::InvalidParameter(e.message),
    })?;
    let columns = quantity.columns(breakdown);
    let width = columns.len();
    let rows = scenario
        .grid()
        .into_par_iter()
        .map(|omega_a| match evaluate(scenario, quantity, breakdown, omega_a) {
            Ok(values) => Ok(SweepRow {
                omega_a_rel: omega_a,
                values: values.into_iter().map(Some).collect(),
            }),
            Err(Error::ResonanceSingularity { .. })
                if scenario.gamma_b_rel == 0.0 && omega_a == scenario.omega_b_rel =>
            {
                Ok(SweepRow {
                    omega_a_rel: omega_a,
                    values: vec![None; width],
                })
            }
            Err(source) => Err(SweepError { omega_a, source }),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SweepTable { columns, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(points: usize) -> Scenario {
        Scenario {
            points,
            ..Scenario::default()
        }
    }

    #[test]
    fn quantity_names_round_trip() {
        for q in [
            Quantity::URatio,
            Quantity::ForceZ,
            Quantity::ForcePar,
            Quantity::CpPotential,
        ] {
            assert_eq!(q.name().parse::<Quantity>().unwrap(), q);
        }
        assert!("u".parse::<Quantity>().is_err());
    }

    #[test]
    fn rows_in_grid_order() {
        let t = run_sweep(&small(101), Quantity::URatio).unwrap();
        assert_eq!(t.rows.len(), 101);
        assert!(t.rows.windows(2).all(|w| w[0].omega_a_rel < w[1].omega_a_rel));
        assert_eq!(t.columns, vec!["u_ratio"]);
    }

    #[test]
    fn undamped_pole_becomes_gap() {
        let s = Scenario {
            gamma_b_rel: 0.0,
            omega_a_min_rel: 0.8,
            omega_a_max_rel: 1.0,
            points: 3,
            ..Scenario::default()
        };
        let t = run_sweep(&s, Quantity::ForceZ).unwrap();
        assert_eq!(t.rows[1].omega_a_rel, 0.9);
        assert!(t.rows[1].is_gap());
        assert!(!t.rows[0].is_gap() && !t.rows[2].is_gap());
        let csv = t.to_csv_string();
        assert_eq!(csv.lines().nth(2).unwrap(), "9.0000000000000002e-1,");
        let t = run_sweep(&s, Quantity::URatio).unwrap();
        assert!(t.rows[1].is_gap());
    }

    #[test]
    fn breakdown_columns() {
        let s = small(5);
        let t = run_sweep_with(&s, Quantity::URatio, true).unwrap();
        assert_eq!(t.columns.len(), 3);
        for row in &t.rows {
            let v: Vec<f64> = row.values.iter().map(|x| x.unwrap()).collect();
            assert!((v[0] + v[1] - v[2]).abs() <= 1e-12 * v[2].abs().max(1.0));
        }
        let plain = run_sweep(&s, Quantity::URatio).unwrap();
        assert_eq!(plain.column("u_ratio"), t.column("u_ratio"));
    }

    #[test]
    fn csv_format() {
        let t = SweepTable {
            columns: vec!["a".into(), "b".into()],
            rows: vec![SweepRow {
                omega_a_rel: 0.5,
                values: vec![Some(-1275.386316591851), None],
            }],
        };
        assert_eq!(
            t.to_csv_string(),
            "omega_a_rel,a,b\n5.0000000000000000e-1,-1.2753863165918510e3,\n"
        );
    }

    #[test]
    fn invalid_scenario_rejected() {
        let s = Scenario {
            points: 1,
            ..Scenario::default()
        };
        assert!(run_sweep(&s, Quantity::URatio).is_err());
    }
}
