//! Batch driver behind the `qla` binary: simulation runs with diagnostics and
//! snapshots, convergence studies, and the identity check suites.

use std::fmt;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use thiserror::Error;

use crate::constants::ATOMIC_MASS_UNIT;
use crate::continuum::{reference_evolve, ContinuumError};
use crate::convergence::{
    fit_log_slope, measure_convergence, ConvergenceError, ConvergenceReport, ConvergenceStudy,
};
use crate::gamma::{build_gammas, gamma_algebra_table};
use crate::gates::{self, BellLabel};
use crate::grid::{energy_and_norm, gauss_residual, FieldGrid, Geometry, GridError};
use crate::plasma::{self, IonSpecies, PlasmaError, PlasmaFrequencies, PlasmaState};
use crate::qla::{LatticeError, Scheme, StepParams, Stepper};
use crate::relativity::{boost_x, interval, maxwell_residuals, FourVector};
use crate::snapshot::{write_snapshot, SnapshotError};
use crate::waves::{
    gaussian_pulse_state, plane_wave_state, GaussianPulse, PlaneWaveSpec, Polarization, WaveError,
};

pub const DIAGNOSTICS_FILE: &str = "diagnostics.csv";
pub const CONFIG_FILE: &str = "config.txt";
pub const DIAGNOSTICS_HEADER: &str =
    "step,time,norm_sq,energy,gauss_algebraic,gauss_differential,oracle_error";

/// Accepted window for the fitted convergence order.
pub const ORDER_WINDOW: (f64, f64) = (1.8, 2.2);

#[derive(Debug, Error)]
pub enum RunError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("I/O error on {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Wave(#[from] WaveError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Continuum(#[from] ContinuumError),
    #[error(transparent)]
    Snapshot(#[from] SnapshotError),
    #[error(transparent)]
    Convergence(#[from] ConvergenceError),
    #[error(transparent)]
    Plasma(#[from] PlasmaError),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> RunError + '_ {
    move |source| RunError::Io {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialCondition {
    /// Plane wave with `kx`, `ky` wavelengths across the box.
    PlaneWave {
        kx: i64,
        ky: i64,
        polarization: Polarization,
    },
    /// Gaussian Ez pulse centred in the box, carrier with `kx`, `ky` wavelengths across it.
    Gaussian { kx: i64, ky: i64, width: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub nx: usize,
    pub ny: usize,
    pub theta: f64,
    pub dx: f64,
    pub steps: usize,
    pub snap_every: usize,
    pub init: InitialCondition,
    /// Relative permittivity of a uniform dielectric filling the box (1 = vacuum).
    pub eps_rel: f64,
    pub out: PathBuf,
    pub oracle: bool,
    /// Worker threads; 0 uses the global pool.
    pub threads: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            nx: 64,
            ny: 64,
            theta: 0.05,
            dx: 1.0,
            steps: 100,
            snap_every: 100,
            init: InitialCondition::PlaneWave {
                kx: 1,
                ky: 1,
                polarization: Polarization::Ez,
            },
            eps_rel: 1.0,
            out: PathBuf::from("qla-out"),
            oracle: false,
            threads: 0,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), RunError> {
        let bad = |m: String| Err(RunError::Config(m));
        if self.nx == 0 || self.ny == 0 {
            return bad(format!("grid {}x{} must be positive", self.nx, self.ny));
        }
        if self.steps > 0 && (self.snap_every == 0 || self.snap_every > self.steps) {
            return bad(format!(
                "snap-every = {} must lie in 1..={}",
                self.snap_every, self.steps
            ));
        }
        if !(self.eps_rel > 0.0 && self.eps_rel.is_finite()) {
            return bad(format!("eps-rel = {} must be positive", self.eps_rel));
        }
        if let InitialCondition::Gaussian { width, .. } = self.init {
            if !(width > 0.0 && width.is_finite()) {
                return bad(format!("width = {width} must be positive"));
            }
        }
        Geometry::new(self.nx, self.ny, self.dx)?;
        StepParams::new(self.theta, self.dx)?;
        Ok(())
    }

    /// The `simulate` command line that reproduces this run's output files.
    pub fn command_line(&self) -> String {
        let mut s = format!(
            "qla simulate --nx={} --ny={} --theta={} --dx={} --steps={} --snap-every={}",
            self.nx, self.ny, self.theta, self.dx, self.steps, self.snap_every
        );
        match self.init {
            InitialCondition::PlaneWave {
                kx,
                ky,
                polarization,
            } => {
                let pol = match polarization {
                    Polarization::Ez => "ez",
                    Polarization::Bz => "bz",
                };
                s += &format!(" --init=planewave --kx={kx} --ky={ky} --pol={pol}");
            }
            InitialCondition::Gaussian { kx, ky, width } => {
                s += &format!(" --init=gaussian --kx={kx} --ky={ky} --width={width}");
            }
        }
        s += &format!(" --eps-rel={} --out={}", self.eps_rel, self.out.display());
        if self.oracle {
            s += " --oracle";
        }
        s
    }

    pub fn geometry(&self) -> Result<Geometry, RunError> {
        Ok(Geometry::new(self.nx, self.ny, self.dx)?)
    }

    pub fn step_params(&self) -> Result<StepParams, RunError> {
        Ok(StepParams::new(self.theta, self.dx)?)
    }

    /// Physical time after `step` steps. A uniform dielectric slows light by
    /// `√ε_r`, so each lattice step covers `√ε_r` times as much physical time.
    pub fn time_at(&self, step: usize) -> Result<f64, RunError> {
        Ok(step as f64 * self.step_params()?.dt_eff() * self.eps_rel.sqrt())
    }

    pub fn snapshot_path(&self, step: usize) -> PathBuf {
        self.out.join(format!("snap_{step:06}.bin"))
    }
}

pub fn initial_state(cfg: &RunConfig) -> Result<FieldGrid, RunError> {
    let geom = cfg.geometry()?;
    let g = match cfg.init {
        InitialCondition::PlaneWave {
            kx,
            ky,
            polarization,
        } => {
            let spec =
                PlaneWaveSpec::from_modes(kx, ky, &geom, Complex64::new(1.0, 0.0), polarization);
            plane_wave_state(&spec, 0.0, geom)?
        }
        InitialCondition::Gaussian { kx, ky, width } => {
            let [lx, ly] = geom.extent();
            let p = GaussianPulse {
                center: [lx / 2.0, ly / 2.0],
                width,
                k: [
                    2.0 * std::f64::consts::PI * kx as f64 / lx,
                    2.0 * std::f64::consts::PI * ky as f64 / ly,
                ],
                amplitude: 1.0,
            };
            gaussian_pulse_state(&p, geom)?
        }
    };
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagnosticsRow {
    pub step: usize,
    pub time: f64,
    pub norm_sq: f64,
    pub energy: f64,
    pub gauss_algebraic: f64,
    pub gauss_differential: f64,
    pub oracle_error: Option<f64>,
}

impl DiagnosticsRow {
    pub fn measure(step: usize, time: f64, g: &FieldGrid, oracle_error: Option<f64>) -> Self {
        let (norm_sq, energy) = energy_and_norm(g);
        let (gauss_algebraic, gauss_differential) = gauss_residual(g);
        DiagnosticsRow {
            step,
            time,
            norm_sq,
            energy,
            gauss_algebraic,
            gauss_differential,
            oracle_error,
        }
    }
}

impl fmt::Display for DiagnosticsRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{:e},{:e},{:e},{:e},{:e},",
            self.step,
            self.time,
            self.norm_sq,
            self.energy,
            self.gauss_algebraic,
            self.gauss_differential
        )?;
        if let Some(e) = self.oracle_error {
            write!(f, "{e:e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulateSummary {
    pub rows: Vec<DiagnosticsRow>,
    pub snapshots: Vec<PathBuf>,
}

impl SimulateSummary {
    /// `final norm² / initial norm²`.
    pub fn norm_ratio(&self) -> f64 {
        let first = self.rows.first().map_or(0.0, |r| r.norm_sq);
        let last = self.rows.last().map_or(0.0, |r| r.norm_sq);
        last / first
    }
}

enum Oracle {
    Analytic(PlaneWaveSpec),
    Reference(FieldGrid),
}

/// Runs `f` on a dedicated pool of `threads` workers, or the global pool for 0.
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T, RunError> {
    if threads == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| RunError::ThreadPool(e.to_string()))?;
    Ok(pool.install(f))
}

pub fn run_simulate(cfg: &RunConfig) -> Result<SimulateSummary, RunError> {
    cfg.validate()?;
    with_threads(cfg.threads, || simulate_inner(cfg))?
}

fn simulate_inner(cfg: &RunConfig) -> Result<SimulateSummary, RunError> {
    let geom = cfg.geometry()?;
    let params = cfg.step_params()?;
    let stepper = Stepper::new(params);
    let dt = params.dt_eff();

    fs::create_dir_all(&cfg.out).map_err(io_err(&cfg.out))?;
    let cfg_path = cfg.out.join(CONFIG_FILE);
    fs::write(&cfg_path, cfg.command_line() + "\n").map_err(io_err(&cfg_path))?;

    let diag_path = cfg.out.join(DIAGNOSTICS_FILE);
    let mut diag = BufWriter::new(fs::File::create(&diag_path).map_err(io_err(&diag_path))?);
    writeln!(diag, "{DIAGNOSTICS_HEADER}").map_err(io_err(&diag_path))?;

    let mut psi = initial_state(cfg)?;
    let mut oracle = match (cfg.oracle, cfg.init) {
        (false, _) => None,
        (
            true,
            InitialCondition::PlaneWave {
                kx,
                ky,
                polarization,
            },
        ) => Some(Oracle::Analytic(PlaneWaveSpec::from_modes(
            kx,
            ky,
            &geom,
            Complex64::new(1.0, 0.0),
            polarization,
        ))),
        (true, InitialCondition::Gaussian { .. }) => Some(Oracle::Reference(psi.clone())),
    };
    let ref_dt = dt.min(0.25 * cfg.dx);

    let mut rows = Vec::with_capacity(cfg.steps + 1);
    let mut snapshots = Vec::new();
    for n in 0..=cfg.steps {
        if n > 0 {
            stepper.step_in_place(&mut psi);
            if let Some(Oracle::Reference(r)) = &mut oracle {
                *r = reference_evolve(r, dt, ref_dt)?;
            }
        }
        let err = match &oracle {
            None => None,
            Some(Oracle::Analytic(spec)) => {
                Some(psi.max_abs_diff(&plane_wave_state(spec, n as f64 * dt, geom)?))
            }
            Some(Oracle::Reference(r)) => Some(psi.max_abs_diff(r)),
        };
        let row = DiagnosticsRow::measure(n, cfg.time_at(n)?, &psi, err);
        writeln!(diag, "{row}").map_err(io_err(&diag_path))?;
        rows.push(row);

        if n == 0 || n % cfg.snap_every.max(1) == 0 {
            let p = cfg.snapshot_path(n);
            write_snapshot(&p, &psi)?;
            snapshots.push(p);
        }
    }
    diag.flush().map_err(io_err(&diag_path))?;
    Ok(SimulateSummary { rows, snapshots })
}

/// Runs a study and reports whether the fitted order lies in [`ORDER_WINDOW`].
pub fn run_convergence(
    study: &ConvergenceStudy,
    threads: usize,
) -> Result<(ConvergenceReport, bool), RunError> {
    let report = with_threads(threads, || measure_convergence(study))??;
    let ok = report
        .order
        .is_some_and(|p| p >= ORDER_WINDOW.0 && p <= ORDER_WINDOW.1);
    Ok((report, ok))
}

pub fn format_convergence(report: &ConvergenceReport, scheme: Scheme) -> String {
    let mut s = format!(
        "scheme: {}\n{:>8} {:>6} {:>6} {:>10} {:>14}\n",
        match scheme {
            Scheme::Symmetrized => "symmetrized",
            Scheme::Unsymmetrized => "unsymmetrized (ablation)",
        },
        "eps",
        "n",
        "steps",
        "time",
        "max_error"
    );
    for r in &report.rows {
        s += &format!(
            "{:>8} {:>6} {:>6} {:>10.6} {:>14.6e}\n",
            r.eps, r.n, r.steps, r.time, r.max_error
        );
    }
    match report.order {
        Some(p) => s += &format!("fitted order: {p:.4}\n"),
        None => s += "fitted order: fit failed (errors not decreasing with eps)\n",
    }
    s
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckLine {
    pub suite: &'static str,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckLine {
    fn new(
        suite: &'static str,
        name: impl Into<String>,
        pass: bool,
        detail: impl Into<String>,
    ) -> Self {
        CheckLine {
            suite,
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {} : {}",
            self.suite,
            self.name,
            if self.pass { "PASS" } else { "FAIL" }
        )?;
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}

pub fn gamma_checks() -> Vec<CheckLine> {
    gamma_algebra_table(&build_gammas())
        .into_iter()
        .map(|c| {
            CheckLine::new(
                "gamma",
                c.name,
                c.residual == 0.0,
                format!("residual {:e}", c.residual),
            )
        })
        .collect()
}

pub const BOOST_BETAS: [f64; 3] = [0.1, 0.6, 0.99];
pub const LORENTZ_TOL: f64 = 1e-12;

/// Maxwell residuals of an oblique vacuum plane wave at step sizes `h`.
pub fn plane_wave_maxwell_residuals(hs: &[f64]) -> Vec<f64> {
    let spec = PlaneWaveSpec {
        k: [1.3, 0.7],
        amplitude: Complex64::new(1.0, 0.4),
        polarization: Polarization::Ez,
    };
    let point = FourVector([0.37, 0.21, -0.53, 0.0]);
    hs.iter()
        .map(|&h| maxwell_residuals(|t, r| spec.field(r[0], r[1], t), &point, h, 1.0).max_abs())
        .collect()
}

pub fn covariant_checks() -> Vec<CheckLine> {
    let mut out = Vec::new();
    let events = [
        (FourVector([0.0; 4]), FourVector([1.7, 0.4, -1.1, 0.9])),
        (
            FourVector([0.5, 1.0, 2.0, -1.0]),
            FourVector([-0.3, 2.5, 0.1, 0.7]),
        ),
        (FourVector([0.0; 4]), FourVector([1.0, 1.0, 0.0, 0.0])),
    ];
    for beta in BOOST_BETAS {
        let l = match boost_x(beta) {
            Ok(l) => l,
            Err(e) => {
                out.push(CheckLine::new(
                    "lorentz",
                    format!("boost β={beta}"),
                    false,
                    e.to_string(),
                ));
                continue;
            }
        };
        let m = l.metric_residual();
        out.push(CheckLine::new(
            "lorentz",
            format!("ΛᵀηΛ = η, β={beta}"),
            m <= LORENTZ_TOL,
            format!("residual {m:e}"),
        ));
        let d = (l.determinant() - 1.0).abs();
        out.push(CheckLine::new(
            "lorentz",
            format!("det Λ = 1, β={beta}"),
            d <= LORENTZ_TOL,
            format!("|det − 1| {d:e}"),
        ));
        let worst = events
            .iter()
            .map(|(a, b)| (interval(&l.apply(a), &l.apply(b)) - interval(a, b)).abs())
            .fold(0.0_f64, f64::max);
        out.push(CheckLine::new(
            "lorentz",
            format!("interval invariance, β={beta}"),
            worst <= LORENTZ_TOL,
            format!("max change {worst:e}"),
        ));
    }
    let hs = [0.1, 0.05, 0.025];
    let res = plane_wave_maxwell_residuals(&hs);
    let slope = fit_log_slope(&hs, &res);
    out.push(CheckLine::new(
        "maxwell",
        "plane-wave residual slope ≈ 2",
        (slope - 2.0).abs() <= 0.1,
        format!("slope {slope:.4}"),
    ));
    out
}

pub fn desk_case_frequencies() -> PlasmaFrequencies {
    let w = 1.0e11;
    PlasmaFrequencies {
        omega_pe: w,
        omega_ce: w,
        ions: vec![],
    }
}

pub fn plasma_checks() -> Vec<CheckLine> {
    let mut out = Vec::new();
    let f = desk_case_frequencies();
    match plasma::susceptibilities(2.0 * f.omega_ce, &f) {
        Ok(chi) => {
            for (name, got, want) in [
                ("χ11 = −1/3", chi.chi11, -1.0 / 3.0),
                ("χ12 = −1/6", chi.chi12, -1.0 / 6.0),
                ("χ33 = −1/4", chi.chi33, -0.25),
            ] {
                let d = (got - want).abs();
                out.push(CheckLine::new(
                    "plasma",
                    format!("desk case {name}"),
                    d <= 1e-12,
                    format!("got {got}"),
                ));
            }
        }
        Err(e) => out.push(CheckLine::new("plasma", "desk case", false, e.to_string())),
    }
    let st = PlasmaState {
        b0: 2.5,
        electron_density: 2e19,
        ions: vec![
            IonSpecies {
                charge_number: 1.0,
                mass: 2.014 * ATOMIC_MASS_UNIT,
                density: 1.8e19,
            },
            IonSpecies {
                charge_number: 2.0,
                mass: 4.0026 * ATOMIC_MASS_UNIT,
                density: 1e18,
            },
        ],
    };
    for omega in [1e8, 3e10, 1e12] {
        match plasma::permittivity_tensor(omega, &st) {
            Ok(eps) => {
                let h = eps.hermiticity_residual();
                out.push(CheckLine::new(
                    "plasma",
                    format!("ε Hermitian, ω={omega:e}"),
                    h <= 1e-14,
                    format!("residual {h:e}"),
                ));
            }
            Err(e) => out.push(CheckLine::new(
                "plasma",
                format!("ε Hermitian, ω={omega:e}"),
                false,
                e.to_string(),
            )),
        }
    }
    out
}

fn ket_label(k: &gates::Ket) -> String {
    let a = k.amplitudes();
    let nonzero: Vec<usize> = (0..a.len()).filter(|&i| a[i].norm() > 1e-12).collect();
    if nonzero.len() == 1 && (a[nonzero[0]] - 1.0).norm() <= 1e-15 {
        let bits = if a.len() == 4 { 2 } else { 1 };
        format!("|{:0width$b}⟩", nonzero[0], width = bits)
    } else {
        let parts: Vec<String> = a.iter().map(|v| format!("{:.6}", v.re)).collect();
        format!("({})", parts.join(", "))
    }
}

pub fn gate_checks() -> Vec<CheckLine> {
    let mut out = Vec::new();
    for (input, want) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
        let got = gates::apply_cnot(&gates::basis2(input).unwrap()).unwrap();
        let want_k = gates::basis2(want).unwrap();
        out.push(CheckLine::new(
            "gates",
            format!("CNOT |{input:02b}⟩ = |{want:02b}⟩"),
            got == want_k,
            "",
        ));
    }
    let r = std::f64::consts::FRAC_1_SQRT_2;
    for (name, input, want) in [
        ("H |0⟩ = (|0⟩+|1⟩)/√2", gates::ket0(), [r, r]),
        ("H |1⟩ = (|0⟩−|1⟩)/√2", gates::ket1(), [r, -r]),
    ] {
        let got = gates::apply_hadamard(&input).unwrap();
        out.push(CheckLine::new(
            "gates",
            name,
            got == gates::Ket::from_real(&want).unwrap(),
            "",
        ));
    }
    for label in BellLabel::ALL {
        let want = gates::basis2(label.decoded_index()).unwrap();
        let got = gates::bell_decode(&label.state()).unwrap();
        let d = got.distance(&want).unwrap();
        out.push(CheckLine::new(
            "gates",
            format!("decode {} → |{:02b}⟩", label.name(), label.decoded_index()),
            d <= 1e-15,
            format!("distance {d:e}"),
        ));
    }
    out
}

pub fn run_checks() -> Vec<CheckLine> {
    let mut all = gamma_checks();
    all.extend(covariant_checks());
    all.extend(plasma_checks());
    all.extend(gate_checks());
    all
}

/// Human-readable CNOT, Hadamard and Bell-decode tables.
pub fn gates_report() -> String {
    let mut s = String::from("CNOT\n");
    for i in 0..4 {
        let k = gates::basis2(i).unwrap();
        s += &format!(
            "  {} -> {}\n",
            ket_label(&k),
            ket_label(&gates::apply_cnot(&k).unwrap())
        );
    }
    s += "Hadamard\n";
    for k in [gates::ket0(), gates::ket1()] {
        s += &format!(
            "  {} -> {}\n",
            ket_label(&k),
            ket_label(&gates::apply_hadamard(&k).unwrap())
        );
    }
    s += "Bell decode (CNOT then H⊗I)\n";
    for label in BellLabel::ALL {
        let got = gates::bell_decode(&label.state()).unwrap();
        let idx = (0..4)
            .max_by(|&a, &b| {
                got.amplitudes()[a]
                    .norm()
                    .total_cmp(&got.amplitudes()[b].norm())
            })
            .unwrap();
        s += &format!(
            "  {} -> |{:02b}⟩  (P = {:.15})\n",
            label.name(),
            idx,
            gates::probability(&got, idx).unwrap()
        );
    }
    s
}

pub fn permittivity_report(omega: f64, st: &PlasmaState) -> Result<String, RunError> {
    let f = st.frequencies()?;
    let chi = plasma::susceptibilities(omega, &f)?;
    let eps = plasma::permittivity_from_chi(&chi);
    let mut s = format!(
        "omega_pe = {:e} rad/s\nomega_ce = {:e} rad/s\n",
        f.omega_pe, f.omega_ce
    );
    for (k, (wp, wc)) in f.ions.iter().enumerate() {
        s += &format!("ion {k}: omega_pi = {wp:e} rad/s, omega_ci = {wc:e} rad/s\n");
    }
    s += &format!(
        "chi11 = {:e}\nchi12 = {:e}\nchi33 = {:e}\n",
        chi.chi11, chi.chi12, chi.chi33
    );
    s += "eps / eps0 =\n";
    for row in eps.relative() {
        let cells: Vec<String> = row
            .iter()
            .map(|v| format!("{:+.6e}{:+.6e}i", v.re, v.im))
            .collect();
        s += &format!("  [{}]\n", cells.join(", "));
    }
    s += &format!("hermiticity residual = {:e}\n", eps.hermiticity_residual());
    Ok(s)
}

/// Parses `Z,mass_amu,density`.
pub fn parse_ion(spec: &str) -> Result<IonSpecies, String> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected Z,mass_amu,density, got '{spec}'"));
    }
    let num = |s: &str| s.parse::<f64>().map_err(|e| format!("'{s}': {e}"));
    Ok(IonSpecies {
        charge_number: num(parts[0])?,
        mass: num(parts[1])? * ATOMIC_MASS_UNIT,
        density: num(parts[2])?,
    })
}

pub fn scales_report(densities: &[f64], temperatures: &[f64]) -> Result<String, RunError> {
    let mut s = format!(
        "{:>12} {:>12} {:>16} {:>16} {:>16}\n",
        "n [m^-3]", "T [K]", "interparticle[m]", "de Broglie [m]", "Debye [m]"
    );
    for &n in densities {
        for &t in temperatures {
            let sc = plasma::plasma_scales(n, t)?;
            s += &format!(
                "{:>12e} {:>12e} {:>16.4e} {:>16.4e} {:>16.4e}\n",
                n, t, sc.interparticle, sc.de_broglie, sc.debye
            );
        }
    }
    Ok(s)
}
