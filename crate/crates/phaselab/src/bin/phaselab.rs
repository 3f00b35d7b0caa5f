//! Command-line front end: coeffs / oscillator / kepler / scan / figure /
//! schemes, all emitting deterministic CSV (see `phaselab::csvout`).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use phaselab::bigfloat::Ctx;
use phaselab::coeffs::{
    self, correctable_alpha, correctable_alpha_denominator, fourth_family_coefficients,
    raw_error_coefficients, scheme_inputs,
};
use phaselab::csvout::{cell_f64, cell_opt_f64, Table};
use phaselab::error::{Error, Result};
use phaselab::kepler::{
    eccentricity_sweep, py_for_eccentricity, run_period, Precession, DEFAULT_PRECESSION_N,
};
use phaselab::oscillator::{
    approx_frequency, default_freq_eps0, energy_e4_closed, energy_e6_corrected_closed,
    energy_e8_fourth_order_closed, energy_error_series, frequency_series, DEFAULT_ENERGY_N0,
};
use phaselab::scan::{self, scan1d, Scan1D};
use phaselab::scheme::{algorithm_c, algorithm_opt_c, four_acb, SplittingScheme};
use phaselab::scheme_io::parse_scheme_selector;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "phaselab",
    version,
    about = "Forward symplectic integrator laboratory: error coefficients, \
             oscillator phase/energy series, Kepler precession, parameter scans"
)]
struct Cli {
    /// Output CSV path (default: stdout; figure N defaults to figureN.csv)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Extended-precision working digits
    #[arg(long, global = true, default_value_t = 60)]
    precision: usize,
    /// Worker threads for grid evaluations (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Read the whole run configuration from a TOML file instead of flags
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Option<Cmd>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the eight error coefficients and correctability data for a
    /// scheme or a (t0, alpha) family point
    Coeffs(CoeffsArgs),
    /// Fit frequency- and energy-error series on the harmonic oscillator
    Oscillator(OscArgs),
    /// Integrate Kepler orbits: h4/theta4 curves or a precession summary
    Kepler(KeplerArgs),
    /// Scan an objective over t0, refining minima, zeros and poles
    Scan(ScanArgs),
    /// Emit the dataset behind one of the standard figures (1-7)
    Figure(FigureArgs),
    /// List the built-in schemes
    Schemes,
}

#[derive(Args, Clone, Default)]
struct CoeffsArgs {
    /// Scheme selector: C | Opt-C | TI | leapfrog | 4acb(t0=..,alpha=..) |
    /// second-order(alpha=..) | file:PATH
    #[arg(long)]
    scheme: Option<String>,
    /// Family parameter t0 (alternative to --scheme)
    #[arg(long)]
    t0: Option<f64>,
    /// Gradient split alpha (with --t0; default 0)
    #[arg(long)]
    alpha: Option<f64>,
}

#[derive(Args, Clone)]
struct OscArgs {
    #[arg(long, default_value = "leapfrog")]
    scheme: String,
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    #[arg(long, default_value_t = 1.0)]
    q0: f64,
    #[arg(long, default_value_t = 1.0)]
    p0: f64,
    /// Ladder depth (number of rungs) for both series
    #[arg(long, default_value_t = 8)]
    depth: usize,
    /// Steps per period on the coarsest energy rung
    #[arg(long, default_value_t = DEFAULT_ENERGY_N0)]
    n0: usize,
    /// Also report omega_A and the per-period phase error at this step size
    #[arg(long)]
    eps: Option<f64>,
}

#[derive(Args, Clone)]
struct KeplerArgs {
    #[arg(long, default_value = "C")]
    scheme: String,
    /// Orbit eccentricity (aphelion start at r = 10)
    #[arg(long)]
    e: Option<f64>,
    /// Launch momentum p_y at aphelion (alternative to --e)
    #[arg(long)]
    py: Option<f64>,
    /// Steps per period
    #[arg(long, default_value_t = DEFAULT_PRECESSION_N)]
    n: usize,
    /// energy | angle | both | precession
    #[arg(long, default_value = "both")]
    kind: String,
    /// Number of sampled rows along the period
    #[arg(long, default_value_t = 200)]
    samples: usize,
}

#[derive(Args, Clone)]
struct ScanArgs {
    /// freq6 | energy10 | kepler-precession
    #[arg(long)]
    objective: String,
    #[arg(long, default_value_t = 0.0)]
    lo: f64,
    #[arg(long, default_value_t = 0.21)]
    hi: f64,
    #[arg(long)]
    points: usize,
    /// Eccentricity for kepler-precession
    #[arg(long, default_value_t = 0.936)]
    e: f64,
    /// Gradient split for kepler-precession
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    /// Steps per period for kepler-precession
    #[arg(long, default_value_t = 3000)]
    n: usize,
}

#[derive(Args, Clone)]
struct FigureArgs {
    /// Figure index, 1-7
    index: u8,
}

/// Whole-run configuration as a single TOML document (--config). Field
/// names match the corresponding command-line flags.
#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RunConfig {
    command: String,
    scheme: Option<String>,
    t0: Option<f64>,
    alpha: Option<f64>,
    omega: Option<f64>,
    q0: Option<f64>,
    p0: Option<f64>,
    depth: Option<usize>,
    n0: Option<usize>,
    eps: Option<f64>,
    e: Option<f64>,
    py: Option<f64>,
    n: Option<usize>,
    kind: Option<String>,
    samples: Option<usize>,
    objective: Option<String>,
    lo: Option<f64>,
    hi: Option<f64>,
    points: Option<usize>,
    figure: Option<u8>,
    out: Option<PathBuf>,
    precision: Option<usize>,
    threads: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("phaselab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let (cmd, out, precision, threads) = match (&cli.config, cli.cmd) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)?;
            let cfg: RunConfig =
                toml::from_str(&text).map_err(|e| Error::Usage(format!("bad config: {e}")))?;
            let out = cfg.out.clone().or(cli.out);
            let precision = cfg.precision.unwrap_or(cli.precision);
            let threads = cfg.threads.or(cli.threads);
            (config_to_cmd(cfg)?, out, precision, threads)
        }
        (Some(_), Some(_)) => {
            return Err(Error::Usage(
                "--config and a subcommand are mutually exclusive".into(),
            ))
        }
        (None, Some(cmd)) => (cmd, cli.out, cli.precision, cli.threads),
        (None, None) => {
            return Err(Error::Usage(
                "expected a subcommand or --config FILE (try --help)".into(),
            ))
        }
    };
    if precision < 20 || precision > 1000 {
        return Err(Error::Usage(format!(
            "--precision must be in [20, 1000], got {precision}"
        )));
    }
    if let Some(k) = threads {
        if k == 0 {
            return Err(Error::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| Error::Usage(format!("thread pool: {e}")))?;
    }

    match cmd {
        Cmd::Coeffs(a) => cmd_coeffs(a, out.as_deref()),
        Cmd::Oscillator(a) => cmd_oscillator(a, precision, out.as_deref()),
        Cmd::Kepler(a) => cmd_kepler(a, out.as_deref()),
        Cmd::Scan(a) => cmd_scan(a, precision, out.as_deref()),
        Cmd::Figure(a) => cmd_figure(a, precision, out),
        Cmd::Schemes => cmd_schemes(out.as_deref()),
    }
}

fn config_to_cmd(cfg: RunConfig) -> Result<Cmd> {
    let c = match cfg.command.as_str() {
        "coeffs" => Cmd::Coeffs(CoeffsArgs {
            scheme: cfg.scheme,
            t0: cfg.t0,
            alpha: cfg.alpha,
        }),
        "oscillator" => Cmd::Oscillator(OscArgs {
            scheme: cfg.scheme.unwrap_or_else(|| "leapfrog".into()),
            omega: cfg.omega.unwrap_or(1.0),
            q0: cfg.q0.unwrap_or(1.0),
            p0: cfg.p0.unwrap_or(1.0),
            depth: cfg.depth.unwrap_or(8),
            n0: cfg.n0.unwrap_or(DEFAULT_ENERGY_N0),
            eps: cfg.eps,
        }),
        "kepler" => Cmd::Kepler(KeplerArgs {
            scheme: cfg.scheme.unwrap_or_else(|| "C".into()),
            e: cfg.e,
            py: cfg.py,
            n: cfg.n.unwrap_or(DEFAULT_PRECESSION_N),
            kind: cfg.kind.unwrap_or_else(|| "both".into()),
            samples: cfg.samples.unwrap_or(200),
        }),
        "scan" => Cmd::Scan(ScanArgs {
            objective: cfg
                .objective
                .ok_or_else(|| Error::Usage("scan needs objective".into()))?,
            lo: cfg.lo.unwrap_or(0.0),
            hi: cfg.hi.unwrap_or(0.21),
            points: cfg
                .points
                .ok_or_else(|| Error::Usage("scan needs points".into()))?,
            e: cfg.e.unwrap_or(0.936),
            alpha: cfg.alpha.unwrap_or(0.0),
            n: cfg.n.unwrap_or(3000),
        }),
        "figure" => Cmd::Figure(FigureArgs {
            index: cfg
                .figure
                .ok_or_else(|| Error::Usage("figure needs figure = 1..7".into()))?,
        }),
        "schemes" => Cmd::Schemes,
        other => {
            return Err(Error::Usage(format!(
                "unknown command {other:?} in config (coeffs, oscillator, kepler, scan, figure, schemes)"
            )))
        }
    };
    Ok(c)
}

// ---------------------------------------------------------------- coeffs

fn cmd_coeffs(a: CoeffsArgs, out: Option<&Path>) -> Result<()> {
    let (inputs, label) = match (&a.scheme, a.t0) {
        (Some(sel), None) => {
            let scheme = parse_scheme_selector(sel)?;
            (scheme_inputs(&scheme)?, scheme.name.clone())
        }
        (None, Some(t0)) => {
            let alpha = a.alpha.unwrap_or(0.0);
            (
                coeffs::family_inputs(t0, alpha)?,
                format!("4acb(t0={t0},alpha={alpha})"),
            )
        }
        _ => {
            return Err(Error::Usage(
                "coeffs needs exactly one of --scheme or --t0 [--alpha]".into(),
            ))
        }
    };
    let r = raw_error_coefficients(inputs);
    let mut t = Table::new(
        format!("phaselab v{VERSION} coeffs scheme={label}"),
        &["name", "value"],
    );
    for (name, v) in [
        ("e_t", r.e_t),
        ("e_v", r.e_v),
        ("e_ttv", r.e_ttv),
        ("e_vtv", r.e_vtv),
        ("e_ttttv", r.e_ttttv),
        ("e_vtttv", r.e_vtttv),
        ("e_ttvtv", r.e_ttvtv),
        ("e_vtvtv", r.e_vtvtv),
    ] {
        t.push_row(vec![name.into(), cell_f64(v)])?;
    }
    // family diagnostics: the fifth-order pair and the alpha that
    // equalizes it, when t0 is away from the correction pole
    let t0 = inputs.t0;
    if let Ok((e4a, e4b)) = fourth_family_coefficients(t0, inputs.alpha) {
        t.push_row(vec!["family_e_ttvtv".into(), cell_f64(e4a)])?;
        t.push_row(vec!["family_e_vtvtv".into(), cell_f64(e4b)])?;
    }
    match correctable_alpha(t0) {
        Ok(al) => t.push_row(vec!["correctable_alpha".into(), cell_f64(al)])?,
        Err(Error::Pole(_)) => t.push_row(vec!["correctable_alpha".into(), "pole".into()])?,
        Err(e) => return Err(e),
    }
    t.push_row(vec![
        "correction_pole_denominator".into(),
        cell_f64(correctable_alpha_denominator(t0)),
    ])?;
    t.write(out)
}

// ------------------------------------------------------------ oscillator

fn cmd_oscillator(a: OscArgs, precision: usize, out: Option<&Path>) -> Result<()> {
    let scheme = parse_scheme_selector(&a.scheme)?;
    if a.omega <= 0.0 {
        return Err(Error::Usage("--omega must be positive".into()));
    }
    let mut ctx = Ctx::with_decimal_digits(precision);
    let fs = frequency_series(&scheme, a.omega, default_freq_eps0(a.omega), a.depth, &mut ctx)?;
    let es = energy_error_series(&scheme, a.omega, a.q0, a.p0, a.n0, a.depth, &mut ctx)?;
    let raw = scheme_inputs(&scheme).map(raw_error_coefficients).ok();

    let mut t = Table::new(
        format!(
            "phaselab v{VERSION} oscillator scheme={} omega={} q0={} p0={} depth={} n0={} precision={}",
            scheme.name, a.omega, a.q0, a.p0, a.depth, a.n0, precision
        ),
        &["quantity", "fitted", "closed_form", "residual"],
    );
    let push = |t: &mut Table, name: &str, fitted: Option<f64>, closed: Option<f64>| {
        let residual = match (fitted, closed) {
            (Some(f), Some(c)) => Some(f - c),
            _ => None,
        };
        t.push_row(vec![
            name.into(),
            cell_opt_f64(fitted),
            cell_opt_f64(closed),
            cell_opt_f64(residual),
        ])
    };

    // frequency coefficients: omega_A/omega - 1 = sum c_n (omega eps)^n
    let c2_closed = raw.as_ref().map(|r| r.e_ttv - r.e_vtv);
    push(&mut t, "c2", fs.coefficient_f64(2), c2_closed)?;
    push(&mut t, "c4", fs.coefficient_f64(4), None)?;
    push(&mut t, "c6", fs.coefficient_f64(6), None)?;

    // energy coefficients E_n of one-period Delta E = sum E_n eps^n
    let closed_e4 = raw
        .as_ref()
        .filter(|_| scheme.nominal_order < 4)
        .map(|r| energy_e4_closed(r, a.omega, a.q0, a.p0));
    let closed_e6 = raw
        .as_ref()
        .and_then(|r| energy_e6_corrected_closed(r, a.omega, a.q0, a.p0).ok());
    let closed_e8 = raw
        .as_ref()
        .and_then(|r| energy_e8_fourth_order_closed(r, a.omega, a.q0, a.p0).ok());
    for n in [2usize, 4, 6, 8, 10] {
        let fitted = es.e_coefficient_f64(n);
        if fitted.is_none() {
            continue;
        }
        let closed = match n {
            4 => closed_e4,
            6 => closed_e6,
            8 => closed_e8,
            _ => None,
        };
        push(&mut t, &format!("E{n}"), fitted, closed)?;
    }
    t.push_row(vec![
        "leading_energy_exponent".into(),
        format!("{}", es.leading_exponent()),
        String::new(),
        String::new(),
    ])?;

    if let Some(eps) = a.eps {
        let wa = approx_frequency(&scheme, a.omega, eps)?;
        push(&mut t, "omega_A(eps)", Some(wa), None)?;
        push(
            &mut t,
            "phase_error_per_period(eps)",
            Some(2.0 * std::f64::consts::PI * (wa / a.omega - 1.0)),
            None,
        )?;
    }
    t.write(out)
}

// ---------------------------------------------------------------- kepler

fn resolve_py(e: Option<f64>, py: Option<f64>) -> Result<(f64, String)> {
    match (e, py) {
        (Some(e), None) => Ok((py_for_eccentricity(e)?, format!("e={e}"))),
        (None, Some(py)) => Ok((py, format!("py={py}"))),
        (None, None) => Ok((py_for_eccentricity(0.9)?, "e=0.9".into())),
        (Some(_), Some(_)) => Err(Error::Usage("give --e or --py, not both".into())),
    }
}

fn cmd_kepler(a: KeplerArgs, out: Option<&Path>) -> Result<()> {
    let scheme = parse_scheme_selector(&a.scheme)?;
    let (py, orbit_label) = resolve_py(a.e, a.py)?;
    let comment = format!(
        "phaselab v{VERSION} kepler scheme={} {} n={} kind={} samples={}",
        scheme.name, orbit_label, a.n, a.kind, a.samples
    );

    if a.kind == "precession" {
        let p: Precession = phaselab::kepler::precession_after_period(&scheme, py, a.n)?;
        let mut t = Table::new(
            comment,
            &[
                "eccentricity",
                "period",
                "n",
                "theta4",
                "theta4_check",
                "check_n",
                "converged",
                "h4_final",
            ],
        );
        t.push_row(vec![
            cell_f64(p.orbit.eccentricity),
            cell_f64(p.orbit.period),
            format!("{}", p.n),
            cell_f64(p.theta4),
            cell_f64(p.theta4_check),
            format!("{}", p.check_n),
            format!("{}", p.converged),
            cell_f64(p.h4_final),
        ])?;
        return t.write(out);
    }

    let run = run_period(&scheme, py, a.n, a.samples)?;
    let eps4 = run.eps.powi(4);
    let (header, emit): (&[&str], fn(&phaselab::kepler::PeriodRun, usize, f64) -> Vec<String>) =
        match a.kind.as_str() {
            "energy" => (&["t_over_period", "h4"], |r, i, _| {
                vec![cell_f64(r.t_over_period[i]), cell_f64(r.h4[i])]
            }),
            "angle" => (&["t_over_period", "theta", "theta4"], |r, i, e4| {
                vec![
                    cell_f64(r.t_over_period[i]),
                    cell_f64(r.theta4[i] * e4),
                    cell_f64(r.theta4[i]),
                ]
            }),
            "both" => (
                &["t_over_period", "h4", "theta", "theta4"],
                |r, i, e4| {
                    vec![
                        cell_f64(r.t_over_period[i]),
                        cell_f64(r.h4[i]),
                        cell_f64(r.theta4[i] * e4),
                        cell_f64(r.theta4[i]),
                    ]
                },
            ),
            other => {
                return Err(Error::Usage(format!(
                    "unknown kind {other:?} (energy, angle, both, precession)"
                )))
            }
        };
    let mut t = Table::new(comment, header);
    for i in 0..run.t_over_period.len() {
        t.push_row(emit(&run, i, eps4))?;
    }
    t.write(out)
}

// ------------------------------------------------------------------ scan

fn scan_table(comment: String, scan: &Scan1D) -> Result<Table> {
    let mut t = Table::new(comment, &["x", "value", "status", "feature"]);
    for p in &scan.points {
        t.push_row(vec![
            cell_f64(p.x),
            cell_opt_f64(p.value),
            p.status.label().into(),
            String::new(),
        ])?;
    }
    for m in &scan.minima {
        t.push_row(vec![
            cell_f64(m.x),
            cell_f64(m.value),
            "ok".into(),
            "min".into(),
        ])?;
    }
    for &z in &scan.zeros {
        t.push_row(vec![cell_f64(z), String::new(), "ok".into(), "zero".into()])?;
    }
    for &p in &scan.poles {
        t.push_row(vec![cell_f64(p), String::new(), "pole".into(), "pole".into()])?;
    }
    Ok(t)
}

fn cmd_scan(a: ScanArgs, precision: usize, out: Option<&Path>) -> Result<()> {
    let comment = format!(
        "phaselab v{VERSION} scan objective={} lo={} hi={} points={} precision={}",
        a.objective, a.lo, a.hi, a.points, precision
    );
    let scan = match a.objective.as_str() {
        "freq6" => scan::scan_freq6(a.lo, a.hi, a.points, precision)?,
        "energy10" => scan::scan_energy10(a.lo, a.hi, a.points, DEFAULT_ENERGY_N0, 8, precision)?,
        "kepler-precession" => {
            let py = py_for_eccentricity(a.e)?;
            let alpha = a.alpha;
            let n = a.n;
            scan1d(
                |t0| {
                    let scheme = four_acb(t0, alpha)?;
                    Ok(run_period(&scheme, py, n, 1)?.theta4_final)
                },
                a.lo,
                a.hi,
                a.points,
                None,
            )?
        }
        other => {
            return Err(Error::Usage(format!(
                "unknown objective {other:?} (freq6, energy10, kepler-precession)"
            )))
        }
    };
    let comment = match a.objective.as_str() {
        "kepler-precession" => format!("{comment} e={} alpha={} n={}", a.e, a.alpha, a.n),
        _ => comment,
    };
    scan_table(comment, &scan)?.write(out)
}

// ---------------------------------------------------------------- figure

fn cmd_figure(a: FigureArgs, precision: usize, out: Option<PathBuf>) -> Result<()> {
    let idx = a.index;
    if !(1..=7).contains(&idx) {
        return Err(Error::Usage(format!("figure index must be 1-7, got {idx}")));
    }
    let path = out.unwrap_or_else(|| PathBuf::from(format!("figure{idx}.csv")));
    let out = Some(path.as_path());
    let comment = |detail: &str| format!("phaselab v{VERSION} figure {idx}: {detail}");

    match idx {
        // corrected-family sixth-order frequency coefficient over t0
        1 => {
            let scan = scan::scan_freq6(0.0, 0.21, 211, precision)?;
            scan_table(
                comment(&format!(
                    "freq6 of 4acb(t0, correctable_alpha(t0)) lo=0 hi=0.21 points=211 precision={precision}"
                )),
                &scan,
            )?
            .write(out)
        }
        // corrected-family tenth-order energy coefficient over t0
        2 => {
            let scan = scan::scan_energy10(0.0, 0.21, 106, DEFAULT_ENERGY_N0, 8, precision)?;
            scan_table(
                comment(&format!(
                    "energy10 of 4acb(t0, correctable_alpha(t0)) lo=0 hi=0.21 points=106 precision={precision}"
                )),
                &scan,
            )?
            .write(out)
        }
        // h4(t) and theta4(t) over one period, scheme C, e = 0.9
        3 | 4 => {
            let py = py_for_eccentricity(0.9)?;
            let run = run_period(&algorithm_c(), py, 5000, 500)?;
            let (label, col): (&str, fn(&phaselab::kepler::PeriodRun, usize) -> f64) = if idx == 3
            {
                ("h4", |r, i| r.h4[i])
            } else {
                ("theta4", |r, i| r.theta4[i])
            };
            let mut t = Table::new(
                comment(&format!("{label}(t) scheme=C e=0.9 n=5000 samples=500")),
                &["t_over_period", label],
            );
            for i in 0..run.t_over_period.len() {
                t.push_row(vec![cell_f64(run.t_over_period[i]), cell_f64(col(&run, i))])?;
            }
            t.write(out)
        }
        // theta4(t) for C and Opt-C at e = 0.936
        5 => {
            let py = py_for_eccentricity(0.936)?;
            let c = run_period(&algorithm_c(), py, 5000, 500)?;
            let oc = run_period(&algorithm_opt_c(), py, 5000, 500)?;
            let mut t = Table::new(
                comment("theta4(t) schemes=C,Opt-C e=0.936 n=5000 samples=500"),
                &["t_over_period", "theta4_c", "theta4_optc"],
            );
            for i in 0..c.t_over_period.len() {
                t.push_row(vec![
                    cell_f64(c.t_over_period[i]),
                    cell_f64(c.theta4[i]),
                    cell_f64(oc.theta4[i]),
                ])?;
            }
            t.write(out)
        }
        // one-period theta4 against eccentricity
        6 | 7 => {
            let es: Vec<f64> = (0..=25).map(|i| 0.90 + 0.002 * i as f64).collect();
            let c = eccentricity_sweep(&algorithm_c(), &es, 5000);
            if idx == 6 {
                let mut t = Table::new(
                    comment("theta4(T) vs e scheme=C e=0.90..0.95 n=5000"),
                    &["eccentricity", "theta4"],
                );
                for p in &c {
                    t.push_row(vec![cell_f64(p.eccentricity), cell_opt_f64(p.theta4)])?;
                }
                t.write(out)
            } else {
                let oc = eccentricity_sweep(&algorithm_opt_c(), &es, 5000);
                let mut t = Table::new(
                    comment("theta4(T) vs e schemes=C,Opt-C e=0.90..0.95 n=5000"),
                    &["eccentricity", "theta4_c", "theta4_optc"],
                );
                for (a, b) in c.iter().zip(&oc) {
                    t.push_row(vec![
                        cell_f64(a.eccentricity),
                        cell_opt_f64(a.theta4),
                        cell_opt_f64(b.theta4),
                    ])?;
                }
                t.write(out)
            }
        }
        _ => unreachable!(),
    }
}

// --------------------------------------------------------------- schemes

fn cmd_schemes(out: Option<&Path>) -> Result<()> {
    let mut t = Table::new(
        format!("phaselab v{VERSION} schemes"),
        &["name", "construction", "nominal_order", "stages", "forward", "t0", "alpha"],
    );
    let rows: Vec<(SplittingScheme, &str)> = vec![
        (phaselab::scheme::leapfrog(), "second-order(alpha=0)"),
        (phaselab::scheme::takahashi_imada(), "second-order(alpha=1/24)"),
        (algorithm_c(), "4acb(t0=1/6, alpha=0)"),
        (algorithm_opt_c(), "4acb(t0=0.166160, alpha=0)"),
    ];
    for (s, construction) in rows {
        t.push_row(vec![
            s.name.clone(),
            construction.into(),
            format!("{}", s.nominal_order),
            format!("{}", s.stages.len()),
            format!("{}", s.is_forward()),
            s.param("t0").map(cell_f64).unwrap_or_default(),
            s.param("alpha").map(cell_f64).unwrap_or_default(),
        ])?;
    }
    t.write(out)
}
