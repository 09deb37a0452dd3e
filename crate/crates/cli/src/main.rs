//! `surfvdw`: frequency sweeps, figure presets and spot checks of the
//! surface-enhanced atom*-atom interaction.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use surfvdw::figures::{figure_table, FigureId};
use surfvdw::forces::{gradient_force_check, resonant_force};
use surfvdw::potentials::{enhancement_estimate, enhancement_exact};
use surfvdw::response::resonant_decomposition;
use surfvdw::{parse_scenario, run_sweep_with, HostModel, Quantity, Scenario, SweepTable};

#[derive(Parser)]
#[command(
    name = "surfvdw",
    version,
    about = "Surface-enhanced van der Waals interaction of an excited and a ground-state atom"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Scenario file (`key = value` lines); defaults to the Fig. 2 parameter set.
    #[arg(long)]
    scenario: Option<PathBuf>,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Number of grid points (overrides the scenario).
    #[arg(long)]
    points: Option<usize>,
    /// Relative quadrature tolerance (overrides the scenario).
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep one quantity over the scenario's omega_A grid and write CSV.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// u_ratio, force_z, force_par or cp_potential.
        #[arg(long, default_value = "u_ratio")]
        quantity: Quantity,
        /// Add the component columns of the quantity.
        #[arg(long)]
        breakdown: bool,
    },
    /// Write the preset sweep behind one of the figures as CSV.
    Figure {
        #[command(flatten)]
        common: Common,
        /// Figure number.
        #[arg(value_parser = clap::value_parser!(u32).range(2..=5))]
        id: u32,
    },
    /// Exact and closed-form enhancement at omega_A = omega_S.
    Enhancement {
        #[command(flatten)]
        common: Common,
    },
    /// Resonant force on atom A and its finite-difference check.
    Force {
        #[command(flatten)]
        common: Common,
        /// Transition frequency of atom A in units of omega_S.
        #[arg(long, default_value_t = 1.0)]
        omega_a: f64,
    },
}

fn load_scenario(common: &Common, fallback: Scenario) -> Result<Scenario> {
    let mut s = match &common.scenario {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
            parse_scenario(&text).with_context(|| format!("invalid scenario {}", path.display()))?
        }
        None => fallback,
    };
    if let Some(points) = common.points {
        s.points = points;
    }
    if let Some(tol) = common.tol {
        s.rel_tol = tol;
    }
    s.validate().context("invalid scenario after command-line overrides")?;
    Ok(s)
}

fn open_out(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot write {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_table(table: &SweepTable, path: Option<&Path>) -> Result<()> {
    let mut out = open_out(path)?;
    table.write_csv(&mut out)?;
    out.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Sweep {
            common,
            quantity,
            breakdown,
        } => {
            let s = load_scenario(&common, Scenario::default())?;
            let table = run_sweep_with(&s, quantity, breakdown)?;
            write_table(&table, common.out.as_deref())
        }
        Command::Figure { common, id } => {
            let id = FigureId::from_number(id).expect("range checked by clap");
            let (lo, hi) = id.default_range();
            let preset = Scenario {
                omega_a_min_rel: lo,
                omega_a_max_rel: hi,
                ..Scenario::default()
            };
            let s = load_scenario(&common, preset)?;
            let table = figure_table(id, Some(&s))?;
            write_table(&table, common.out.as_deref())
        }
        Command::Enhancement { common } => {
            let s = load_scenario(&common, Scenario::default())?;
            let medium = s.medium()?;
            let geom = s.geometry()?;
            let exact = enhancement_exact(&s.atom_a(1.0)?, &s.atom_b()?, &geom, &medium, &HostModel::Vacuum)?;
            let dec = resonant_decomposition(&medium);
            let estimate = enhancement_estimate(dec.sigma_sq, dec.omega_s, dec.gamma, geom.z_a(), geom.z_b(), geom.r());
            let mut out = open_out(common.out.as_deref())?;
            writeln!(out, "enhancement_exact = {exact:.6}")?;
            writeln!(out, "enhancement_estimate = {estimate:.6}")?;
            writeln!(out, "relative_difference = {:.3e}", (estimate - exact).abs() / exact)?;
            out.flush()?;
            Ok(())
        }
        Command::Force { common, omega_a } => {
            if omega_a.is_nan() || omega_a <= 0.0 {
                bail!("--omega-a must be positive, got {omega_a}");
            }
            let s = load_scenario(&common, Scenario::default())?;
            let setup = s.force_setup(omega_a)?;
            let f = resonant_force(&setup)?;
            let check = gradient_force_check(&setup, 1e-5 * setup.geometry.z_a().min(setup.geometry.r()))?;
            let [fx, fy] = f.f_parallel_ratio();
            let mut out = open_out(common.out.as_deref())?;
            writeln!(out, "omega_a_rel = {omega_a}")?;
            writeln!(out, "f0 = {:.16e}", f.normalization)?;
            writeln!(out, "f_x_ratio = {fx:.16e}")?;
            writeln!(out, "f_y_ratio = {fy:.16e}")?;
            writeln!(out, "f_z_ratio = {:.16e}", f.f_z_ratio())?;
            writeln!(out, "f_z_surface_ratio = {:.16e}", f.f_z_surface / f.normalization)?;
            writeln!(out, "f_z_pair_ratio = {:.16e}", f.f_z_pair / f.normalization)?;
            writeln!(out, "gradient_check_step = {:.3e}", check.step)?;
            writeln!(out, "gradient_check_rel_mismatch = {:.3e}", check.rel_mismatch)?;
            out.flush()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("surfvdw: error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
