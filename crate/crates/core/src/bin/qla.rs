use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use qla_core::convergence::ConvergenceStudy;
use qla_core::plasma::{IonSpecies, PlasmaState};
use qla_core::runner::{self, InitialCondition, RunConfig};
use qla_core::waves::Polarization;
use qla_core::Scheme;

/// Quantum lattice algorithm for 2D electromagnetic waves.
#[derive(Parser, Debug)]
#[command(name = "qla", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Run the lattice algorithm, writing diagnostics.csv, config.txt and snapshots to --out.
    Simulate(SimArgs),
    /// Error-vs-ε study against the RK4 reference; exit 0 iff the fitted order is in [1.8, 2.2].
    Converge(ConvergeArgs),
    /// Run every identity suite (γ algebra, Lorentz, plasma tensor, gates).
    Checks,
    /// Print the CNOT, Hadamard and Bell-decode truth tables.
    Gates,
    /// Cold magnetized plasma permittivity tensor.
    Permittivity(PermArgs),
    /// Interparticle distance, de Broglie wavelength and Debye length.
    Scales(ScalesArgs),
    /// Lorentz boosts, interval invariance and covariant Maxwell residuals.
    CovariantCheck,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum InitKind {
    Planewave,
    Gaussian,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Pol {
    Ez,
    Bz,
}

impl From<Pol> for Polarization {
    fn from(p: Pol) -> Self {
        match p {
            Pol::Ez => Polarization::Ez,
            Pol::Bz => Polarization::Bz,
        }
    }
}

#[derive(Args, Debug)]
struct SimArgs {
    #[arg(long, default_value_t = 64)]
    nx: usize,
    #[arg(long, default_value_t = 64)]
    ny: usize,
    /// Collision angle.
    #[arg(long, default_value_t = 0.05)]
    theta: f64,
    /// Lattice spacing.
    #[arg(long, default_value_t = 1.0)]
    dx: f64,
    #[arg(long, default_value_t = 100)]
    steps: usize,
    /// Snapshot interval in steps (snapshots at 0, k, 2k, ...).
    #[arg(long, default_value_t = 100)]
    snap_every: usize,
    #[arg(long, value_enum, default_value_t = InitKind::Planewave)]
    init: InitKind,
    /// Wavelengths across the box along x.
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    kx: i64,
    /// Wavelengths across the box along y.
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    ky: i64,
    /// Plane-wave polarization.
    #[arg(long, value_enum, default_value_t = Pol::Ez)]
    pol: Pol,
    /// Gaussian envelope width; defaults to an eighth of the box along x.
    #[arg(long)]
    width: Option<f64>,
    /// Relative permittivity of a uniform dielectric.
    #[arg(long, default_value_t = 1.0)]
    eps_rel: f64,
    #[arg(long, default_value = "qla-out")]
    out: PathBuf,
    /// Record the max error against the analytic or RK4 reference each step.
    #[arg(long)]
    oracle: bool,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

impl SimArgs {
    fn to_config(&self) -> RunConfig {
        let init = match self.init {
            InitKind::Planewave => InitialCondition::PlaneWave {
                kx: self.kx,
                ky: self.ky,
                polarization: self.pol.into(),
            },
            InitKind::Gaussian => InitialCondition::Gaussian {
                kx: self.kx,
                ky: self.ky,
                width: self.width.unwrap_or(self.nx as f64 * self.dx / 8.0),
            },
        };
        RunConfig {
            nx: self.nx,
            ny: self.ny,
            theta: self.theta,
            dx: self.dx,
            steps: self.steps,
            snap_every: self.snap_every,
            init,
            eps_rel: self.eps_rel,
            out: self.out.clone(),
            oracle: self.oracle,
            threads: self.threads,
        }
    }
}

#[derive(Args, Debug)]
struct ConvergeArgs {
    /// Comma-separated ε values, each half the previous.
    #[arg(long, value_delimiter = ',', default_value = "0.2,0.1,0.05")]
    eps: Vec<f64>,
    /// Side of the square periodic box.
    #[arg(long, default_value_t = 6.4)]
    length: f64,
    #[arg(long, default_value_t = 1.0)]
    t_final: f64,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    kx: i64,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    ky: i64,
    #[arg(long, value_enum, default_value_t = Pol::Ez)]
    pol: Pol,
    /// Drop the Ũ sweeps.
    #[arg(long)]
    ablate: bool,
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Args, Debug)]
struct PermArgs {
    /// Wave angular frequency, rad/s.
    #[arg(long, default_value_t = 1e11)]
    omega: f64,
    /// Ambient field, tesla.
    #[arg(long, default_value_t = 1.0)]
    b0: f64,
    /// Electron density, m^-3.
    #[arg(long, default_value_t = 1e19)]
    ne: f64,
    /// Ion species as Z,mass_amu,density (repeatable).
    #[arg(long = "ion", value_parser = runner::parse_ion)]
    ions: Vec<IonSpecies>,
}

#[derive(Args, Debug)]
struct ScalesArgs {
    /// Densities, m^-3 (comma-separated).
    #[arg(long, value_delimiter = ',', default_value = "1e3,1e21")]
    density: Vec<f64>,
    /// Temperatures, K (comma-separated).
    #[arg(long, value_delimiter = ',', default_value = "1e4,2e8")]
    temperature: Vec<f64>,
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::FAILURE
}

fn print_checks(lines: &[runner::CheckLine]) -> ExitCode {
    for l in lines {
        println!("{l}");
    }
    let failed = lines.iter().filter(|l| !l.pass).count();
    println!("{} checks, {} failed", lines.len(), failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Simulate(a) => {
            let cfg = a.to_config();
            match runner::run_simulate(&cfg) {
                Ok(s) => {
                    let last = s.rows.last().expect("at least the initial row");
                    println!(
                        "{} steps, t = {:e}, norm² ratio = {:.16}, snapshots = {}",
                        last.step,
                        last.time,
                        s.norm_ratio(),
                        s.snapshots.len()
                    );
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
        Cmd::Converge(a) => {
            let scheme = if a.ablate {
                Scheme::Unsymmetrized
            } else {
                Scheme::Symmetrized
            };
            let study = ConvergenceStudy {
                length: a.length,
                t_final: a.t_final,
                modes: (a.kx, a.ky),
                amplitude: Complex64::new(1.0, 0.0),
                polarization: a.pol.into(),
                eps: a.eps,
                scheme,
            };
            match runner::run_convergence(&study, a.threads) {
                Ok((report, ok)) => {
                    print!("{}", runner::format_convergence(&report, scheme));
                    println!("order in [1.8, 2.2]: {}", if ok { "PASS" } else { "FAIL" });
                    if ok {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::FAILURE
                    }
                }
                Err(e) => fail(e),
            }
        }
        Cmd::Checks => print_checks(&runner::run_checks()),
        Cmd::CovariantCheck => print_checks(&runner::covariant_checks()),
        Cmd::Gates => {
            print!("{}", runner::gates_report());
            ExitCode::SUCCESS
        }
        Cmd::Permittivity(a) => {
            let st = PlasmaState {
                b0: a.b0,
                electron_density: a.ne,
                ions: a.ions,
            };
            match runner::permittivity_report(a.omega, &st) {
                Ok(s) => {
                    print!("{s}");
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
        Cmd::Scales(a) => match runner::scales_report(&a.density, &a.temperature) {
            Ok(s) => {
                print!("{s}");
                ExitCode::SUCCESS
            }
            Err(e) => fail(e),
        },
    }
}
