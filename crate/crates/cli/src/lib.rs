//! Command-line front end: state-file I/O, validation, measure reports,
//! explicit minimization runs, and the squeezing-sweep CSV emitter.
//!
//! Exit codes: 0 on success, 1 on a domain failure (impure or unphysical
//! state, failed residual check), 2 on input or format failure.

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use cvgeom::{
    make_bisymmetric_three_mode, make_random_pure, make_schmidt_state, make_two_mode_squeezed,
    minimize_distance_with, parse_state, vacuum, von_neumann_entropy_with_base, write_state,
    CovarianceMatrix, MinimizeOptions,
};

/// Residual threshold for the minimize subcommand's success exit.
const RESIDUAL_LIMIT: f64 = cvgeom::tolerances::TOL_RESIDUAL_CLI;

#[derive(Parser)]
#[command(
    name = "cvgeom",
    version,
    about = "Phase-space toolkit for pure Gaussian states",
    long_about = "Validates covariance-matrix state files, reports entanglement measures \
                  across a mode | rest cut, minimizes the orbit distance numerically, and \
                  sweeps the measures over two-mode squeezing. States use xpxp ordering \
                  with the vacuum normalized to the identity."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Check a state file: symmetry, physicality, purity (exit 0 iff all hold)
    Validate {
        /// State file to check
        path: PathBuf,
    },
    /// Print all entanglement measures of a pure state for one mode
    Measures {
        /// State file holding a pure state
        path: PathBuf,
        /// 1-based mode defining the mode | rest cut
        #[arg(long, default_value_t = 1)]
        mode: usize,
        /// Logarithm base for the von Neumann entropy
        #[arg(long = "log-base", default_value_t = 2.0)]
        log_base: f64,
    },
    /// Minimize the orbit distance numerically (exit 0 iff residual <= 1e-5)
    Minimize {
        /// State file holding a pure state
        path: PathBuf,
        /// 1-based mode defining the mode | rest cut
        #[arg(long, default_value_t = 1)]
        mode: usize,
        /// Points per axis of the coarse search grid
        #[arg(long, default_value_t = 101)]
        grid: usize,
        /// Refinement stops when step sizes drop below this
        #[arg(long = "refine-tol", default_value_t = 1e-8)]
        refine_tol: f64,
    },
    /// Write a CSV of measures for two-mode squeezed states over r in [0, r-max]
    Sweep {
        /// Largest squeezing parameter
        #[arg(long = "r-max", default_value_t = 2.5)]
        r_max: f64,
        /// Number of rows, linearly spaced (at least 2)
        #[arg(long, default_value_t = 51)]
        steps: usize,
        /// Output CSV path
        #[arg(long, default_value = "sweep.csv")]
        out: PathBuf,
    },
    /// Write a factory state to a state file
    MakeState {
        /// State family to build
        #[arg(long, value_enum)]
        family: Family,
        /// Squeezing parameter (tms family)
        #[arg(long, required_if_eq("family", "tms"))]
        r: Option<f64>,
        /// Local parameter a >= 1 (schmidt family)
        #[arg(long, required_if_eq("family", "schmidt"))]
        a: Option<f64>,
        /// Mean photon number of mode 1 (bisymmetric family)
        #[arg(long = "n-bar", required_if_eq("family", "bisymmetric"))]
        n_bar: Option<f64>,
        /// Mode count (vacuum, schmidt, random families)
        #[arg(long, default_value_t = 2)]
        modes: usize,
        /// RNG seed (random family)
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output state-file path
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Family {
    /// N-mode vacuum (identity matrix)
    Vacuum,
    /// Two-mode squeezed state with parameter r
    Tms,
    /// N-mode two-mode squeezed pattern with parameter a
    Schmidt,
    /// Pure bisymmetric three-mode state with mean photon number n-bar
    Bisymmetric,
    /// Random pure state from a seeded random symplectic
    Random,
}

/// A failure with its exit code: library errors keep the domain/input split,
/// file-system problems are input failures.
enum Failure {
    Lib(cvgeom::Error),
    Io(PathBuf, std::io::Error),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::Io(path, e) => write!(f, "{}: {e}", path.display()),
        }
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Lib(e) => match e {
                cvgeom::Error::NotPure { .. }
                | cvgeom::Error::NotBonaFide { .. }
                | cvgeom::Error::Decomposition(_) => 1,
                _ => 2,
            },
            Failure::Io(..) => 2,
        }
    }
}

impl From<cvgeom::Error> for Failure {
    fn from(e: cvgeom::Error) -> Self {
        Failure::Lib(e)
    }
}

fn read_state(path: &Path) -> Result<CovarianceMatrix, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))?;
    Ok(parse_state(&text)?)
}

/// Full-precision scientific notation (16 significant digits).
fn num(x: f64) -> String {
    format!("{x:.15e}")
}

/// Parses the process arguments, runs the command, and returns the exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {failure}");
            failure.code()
        }
    }
}

fn dispatch(command: Command) -> Result<i32, Failure> {
    match command {
        Command::Validate { path } => {
            let cm = read_state(&path)?;
            let report = cm.validate();
            println!(
                "symmetric={} bona_fide={} pure={}",
                report.symmetric, report.bona_fide, report.pure
            );
            Ok(if report.all_ok() { 0 } else { 1 })
        }
        Command::Measures {
            path,
            mode,
            log_base,
        } => {
            let cm = read_state(&path)?;
            let report = cvgeom::measure_report(&cm, mode)?;
            let e_vn = von_neumann_entropy_with_base(report.a, log_base)?;
            println!(
                "a={} D={} E_L={} tau_G={} E_V={} argmin_alpha={} argmin_beta={} residual={}",
                num(report.a),
                num(report.d),
                num(report.e_linear),
                num(report.tau_gaussian),
                num(e_vn),
                num(report.argmin.0),
                num(report.argmin.1),
                num(report.residual),
            );
            Ok(0)
        }
        Command::Minimize {
            path,
            mode,
            grid,
            refine_tol,
        } => {
            let cm = read_state(&path)?;
            let options = MinimizeOptions {
                grid,
                refine_tol,
                ..MinimizeOptions::default()
            };
            let result = minimize_distance_with(&cm, mode, &options)?;
            println!(
                "d_min={} argmin_alpha={} argmin_beta={} argmin_gamma={} closed_form_d={} residual={}",
                num(result.d_min),
                num(result.argmin_alpha),
                num(result.argmin_beta),
                num(result.argmin_gamma),
                num(result.closed_form_d),
                num(result.residual),
            );
            Ok(if result.residual <= RESIDUAL_LIMIT {
                0
            } else {
                1
            })
        }
        Command::Sweep { r_max, steps, out } => {
            let csv = sweep_csv(r_max, steps)?;
            std::fs::write(&out, csv).map_err(|e| Failure::Io(out.clone(), e))?;
            Ok(0)
        }
        Command::MakeState {
            family,
            r,
            a,
            n_bar,
            modes,
            seed,
            out,
        } => {
            let cm = match family {
                Family::Vacuum => vacuum(modes)?,
                Family::Tms => make_two_mode_squeezed(r.expect("clap enforces --r"))?,
                Family::Schmidt => make_schmidt_state(a.expect("clap enforces --a"), modes)?,
                Family::Bisymmetric => {
                    make_bisymmetric_three_mode(n_bar.expect("clap enforces --n-bar"))?
                }
                Family::Random => make_random_pure(modes, seed)?,
            };
            std::fs::write(&out, write_state(&cm)).map_err(|e| Failure::Io(out.clone(), e))?;
            Ok(0)
        }
    }
}

/// One row of the squeezing sweep, all values at full precision.
#[derive(Clone, Copy, Debug)]
pub struct SweepRow {
    pub r: f64,
    pub a: f64,
    pub d: f64,
    pub e_linear: f64,
    pub tau_gaussian: f64,
    pub e_von_neumann: f64,
}

/// Measures of make_two_mode_squeezed(r) for `steps` values of r linearly
/// spaced over [0, r_max]; the distance column comes from full numerical
/// minimization, not the closed form.
pub fn sweep(r_max: f64, steps: usize) -> cvgeom::Result<Vec<SweepRow>> {
    if !(r_max.is_finite() && r_max > 0.0) {
        return Err(cvgeom::Error::InvalidParameter {
            name: "r_max",
            value: r_max,
            requirement: "must be finite and > 0",
        });
    }
    if steps < 2 {
        return Err(cvgeom::Error::InvalidParameter {
            name: "steps",
            value: steps as f64,
            requirement: "must be at least 2",
        });
    }
    let mut rows = Vec::with_capacity(steps);
    for i in 0..steps {
        let r = r_max * i as f64 / (steps - 1) as f64;
        let cm = make_two_mode_squeezed(r)?;
        // measure_report runs the full numerical minimization for d
        let report = cvgeom::measure_report(&cm, 1)?;
        rows.push(SweepRow {
            r,
            a: report.a,
            d: report.d,
            e_linear: report.e_linear,
            tau_gaussian: report.tau_gaussian,
            e_von_neumann: report.e_von_neumann,
        });
    }
    Ok(rows)
}

/// The sweep as CSV: fixed header, LF line endings, full-precision values.
pub fn sweep_csv(r_max: f64, steps: usize) -> cvgeom::Result<String> {
    let rows = sweep(r_max, steps)?;
    let mut out = String::from("r,a,D,E_L,tau_G,E_V\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            num(row.r),
            num(row.a),
            num(row.d),
            num(row.e_linear),
            num(row.tau_gaussian),
            num(row.e_von_neumann),
        ));
    }
    Ok(out)
}
