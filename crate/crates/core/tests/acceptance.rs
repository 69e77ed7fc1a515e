//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fail.

use std::fs;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use qla_core::continuum::continuum_rhs;
use qla_core::convergence::{measure_convergence, ConvergenceStudy};
use qla_core::gamma::{build_gammas, gamma_algebra_table};
use qla_core::grid::{gauss_residual, FieldGrid, Geometry};
use qla_core::plasma::plasma_scales;
use qla_core::qla::{Scheme, StepParams, Stepper};
use qla_core::runner::{self, run_simulate, CheckLine, InitialCondition, RunConfig};
use qla_core::waves::{plane_wave_state, PlaneWaveSpec, Polarization};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn from_checks(lines: Vec<CheckLine>) -> Outcome {
    let failed: Vec<String> = lines
        .iter()
        .filter(|l| !l.pass)
        .map(|l| l.to_string())
        .collect();
    if failed.is_empty() {
        outcome(true, format!("{} identities", lines.len()))
    } else {
        outcome(false, failed.join("; "))
    }
}

fn single_threaded<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    runner::with_threads(1, f).expect("thread pool")
}

fn unitarity() -> Outcome {
    let geom = Geometry::new(64, 64, 1.0).unwrap();
    let spec = PlaneWaveSpec::from_modes(1, 1, &geom, Complex64::new(1.0, 0.0), Polarization::Ez);
    let psi = plane_wave_state(&spec, 0.0, geom).unwrap();
    let stepper = Stepper::new(StepParams::new(0.05, 1.0).unwrap());
    let start = Instant::now();
    let out = single_threaded(|| {
        let mut g = psi.clone();
        stepper.advance(&mut g, 1000);
        g
    });
    let elapsed = start.elapsed();
    let n0 = qla_core::grid::energy_and_norm(&psi).0;
    let n1 = qla_core::grid::energy_and_norm(&out).0;
    let drift = ((n1 - n0) / n0).abs();
    outcome(
        drift <= 1e-12 && elapsed <= Duration::from_secs(10),
        format!(
            "relative norm² drift {drift:.3e}, {:.2} s single-threaded",
            elapsed.as_secs_f64()
        ),
    )
}

fn convergence(scheme: Scheme) -> (Option<f64>, String, bool) {
    let study = ConvergenceStudy {
        scheme,
        ..Default::default()
    };
    let start = Instant::now();
    let report = measure_convergence(&study).expect("convergence study");
    let elapsed = start.elapsed();
    let errs: Vec<String> = report
        .rows
        .iter()
        .map(|r| format!("{:.3e}", r.max_error))
        .collect();
    let drift = report
        .rows
        .iter()
        .map(|r| r.reference_drift.abs())
        .fold(0.0_f64, f64::max);
    let order = report.order;
    let detail = format!(
        "errors [{}], order {}, reference drift {drift:.1e}, {:.1} s",
        errs.join(", "),
        order.map_or("n/a".to_string(), |p| format!("{p:.4}")),
        elapsed.as_secs_f64()
    );
    let ok = drift <= 1e-10 && elapsed <= Duration::from_secs(120);
    (order, detail, ok)
}

fn second_order() -> Outcome {
    let (order, detail, ok) = convergence(Scheme::Symmetrized);
    outcome(
        ok && order.is_some_and(|p| (1.8..=2.2).contains(&p)),
        detail,
    )
}

fn ablation() -> Outcome {
    let (order, detail, _) = convergence(Scheme::Unsymmetrized);
    outcome(order.is_none_or(|p| p < 1.8), detail)
}

fn gamma_algebra() -> Outcome {
    let table = gamma_algebra_table(&build_gammas());
    let worst = table.iter().map(|c| c.residual).fold(0.0_f64, f64::max);
    let failed: Vec<&str> = table
        .iter()
        .filter(|c| c.residual != 0.0)
        .map(|c| c.name.as_str())
        .collect();
    outcome(
        failed.is_empty(),
        if failed.is_empty() {
            format!("{} identities, max residual {worst:e}", table.len())
        } else {
            format!("max residual {worst:e}, failing: {}", failed.join(", "))
        },
    )
}

fn consistency() -> Outcome {
    let mut cs = Vec::new();
    for eps in [0.2, 0.1, 0.05] {
        let n = (6.4_f64 / eps).round() as usize;
        let geom = Geometry::new(n, n, eps).unwrap();
        let spec =
            PlaneWaveSpec::from_modes(1, 1, &geom, Complex64::new(1.0, 0.0), Polarization::Ez);
        let psi = plane_wave_state(&spec, 0.0, geom).unwrap();
        let p = StepParams::from_epsilon(eps, Scheme::Symmetrized).unwrap();
        let mut stepped = psi.clone();
        Stepper::new(p).step_in_place(&mut stepped);
        let diff = stepped.axpy(-1.0, &psi);
        let rate = FieldGrid::from_sites(
            geom,
            diff.sites()
                .iter()
                .map(|s| qla_core::QubitState4(s.0.map(|v| v / p.dt_eff())))
                .collect(),
        )
        .unwrap();
        let d = rate.max_abs_diff(&continuum_rhs(&psi).unwrap());
        cs.push(d / (eps * eps));
    }
    let lo = cs.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = cs.iter().cloned().fold(0.0_f64, f64::max);
    outcome(
        hi / lo <= 2.0,
        format!(
            "C = discrepancy/ε² = [{:.4}, {:.4}, {:.4}]",
            cs[0], cs[1], cs[2]
        ),
    )
}

/// `max|q1 − q2|/‖ψ‖∞` after each of `steps` steps.
fn gauss_history(modes: (i64, i64), steps: usize) -> (Vec<f64>, f64) {
    let geom = Geometry::new(128, 128, 1.0).unwrap();
    let spec = PlaneWaveSpec::from_modes(
        modes.0,
        modes.1,
        &geom,
        Complex64::new(1.0, 0.0),
        Polarization::Ez,
    );
    let p = StepParams::new(0.05, 1.0).unwrap();
    let stepper = Stepper::new(p);
    let mut g = plane_wave_state(&spec, 0.0, geom).unwrap();
    let mut hist = Vec::with_capacity(steps);
    for _ in 0..steps {
        stepper.step_in_place(&mut g);
        hist.push(g.max_constraint_mismatch() / g.max_site_norm());
    }
    (hist, spec.omega() * p.dt_eff())
}

fn gauss_law() -> Outcome {
    let (short, _) = gauss_history((8, 8), 500);
    let ratio = short.iter().cloned().fold(0.0_f64, f64::max) / short[0];
    let frozen = ratio <= 10.0;

    // long-wave companion: the residual oscillates with peak ≈ step-1 value / (ω dt_eff)
    let (long, w_dt) = gauss_history((1, 1), 1000);
    let first_half = long[..500].iter().cloned().fold(0.0_f64, f64::max);
    let second_half = long[500..].iter().cloned().fold(0.0_f64, f64::max);
    let peak_ratio = first_half / long[0];
    let bounded = peak_ratio <= 1.1 / w_dt && second_half <= first_half * 1.01;

    let (_, diff) = {
        let geom = Geometry::new(128, 128, 1.0).unwrap();
        let spec =
            PlaneWaveSpec::from_modes(8, 8, &geom, Complex64::new(1.0, 0.0), Polarization::Ez);
        gauss_residual(&plane_wave_state(&spec, 0.0, geom).unwrap())
    };
    outcome(
        frozen && bounded,
        format!(
            "mode (8,8): max/step-1 = {ratio:.3} (≤ 10); mode (1,1): max/step-1 = {peak_ratio:.2} vs 1/(ω dt_eff) = {:.2}, steps 500-1000 peak/steps 1-500 peak = {:.4}; initial differential residual {diff:.2e}",
            1.0 / w_dt,
            second_half / first_half
        ),
    )
}

fn within_factor(got: f64, want: f64, factor: f64) -> bool {
    let r = got / want;
    r <= factor && r >= 1.0 / factor
}

fn scale_ranges() -> Outcome {
    let ip_lo = plasma_scales(1e3, 1e4).unwrap().interparticle;
    let ip_hi = plasma_scales(1e21, 1e4).unwrap().interparticle;
    let db_lo = plasma_scales(1e21, 1e4).unwrap().de_broglie;
    let db_hi = plasma_scales(1e21, 2e8).unwrap().de_broglie;
    let checks = [
        ("λ_ip(1e3 m⁻³)", ip_lo, 0.1),
        ("λ_ip(1e21 m⁻³)", ip_hi, 1e-7),
        ("λ_dB(1e4 K)", db_lo, 1e-9),
        ("λ_dB(2e8 K)", db_hi, 1e-13),
    ];
    let parts: Vec<String> = checks
        .iter()
        .map(|(name, got, want)| {
            let ok = within_factor(*got, *want, 3.0);
            format!(
                "{name} = {got:.3e} m vs {want:e} {}",
                if ok { "ok" } else { "OUT OF RANGE" }
            )
        })
        .collect();
    outcome(
        checks
            .iter()
            .all(|(_, got, want)| within_factor(*got, *want, 3.0)),
        parts.join("; "),
    )
}

fn determinism() -> Outcome {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let base = RunConfig {
        nx: 64,
        ny: 48,
        steps: 40,
        snap_every: 10,
        init: InitialCondition::Gaussian {
            kx: 3,
            ky: 2,
            width: 6.0,
        },
        oracle: true,
        ..Default::default()
    };
    let ra = run_simulate(&RunConfig {
        out: a.path().to_path_buf(),
        threads: 1,
        ..base.clone()
    })
    .unwrap();
    let rb = run_simulate(&RunConfig {
        out: b.path().to_path_buf(),
        threads: 8,
        ..base
    })
    .unwrap();
    let mut files: Vec<_> = ra
        .snapshots
        .iter()
        .map(|p| p.file_name().unwrap().to_owned())
        .collect();
    files.push(runner::DIAGNOSTICS_FILE.into());
    let mismatched: Vec<String> = files
        .iter()
        .filter(|f| fs::read(a.path().join(f)).unwrap() != fs::read(b.path().join(f)).unwrap())
        .map(|f| f.to_string_lossy().into_owned())
        .collect();
    outcome(
        mismatched.is_empty() && rb.snapshots.len() == ra.snapshots.len(),
        format!(
            "{} files compared (1 vs 8 threads), mismatched: {:?}",
            files.len(),
            mismatched
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("unitarity", unitarity),
        ("second-order convergence", second_order),
        ("ablation sensitivity", ablation),
        ("gamma algebra", gamma_algebra),
        ("continuum consistency", consistency),
        ("Gauss-law diagnostic", gauss_law),
        (
            "covariant suite",
            || from_checks(runner::covariant_checks()),
        ),
        ("plasma tensor", || from_checks(runner::plasma_checks())),
        ("scale ranges", scale_ranges),
        ("gate truth tables", || from_checks(runner::gate_checks())),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {name}: {} ({})",
            k + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
