//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification run finds a violation
//! (or a sweep row breaks the expected ordering chain), 2 on invalid input.
//! All numeric output uses 17 significant digits; CSV uses LF line endings
//! and JSON carries a top-level `"schema": 1` marker. Output is
//! byte-identical across runs and worker counts for fixed arguments.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::exponent::{distortion_from_big_k, distortion_from_k, t1_of, DistortionParams};
use crate::fourier::{
    self, corpus, fourier_profile, generator_by_name, morrey_estimate, parseval_checks,
    sandwich_check, PolarGrid,
};
use crate::fourier::profile::{coefficient_relation_check, j_from_fourier, radial_derivs};
use crate::fourier::quadrature::j_direct;
use crate::mc;
use crate::methods::{self, ExponentReport};
use crate::optimize::{self, certify_concavity, maximize_alpha, phi_coefficients};
use crate::pointwise::discrete::{discrete_sweep, DiscreteReport, SweepConfig};
use crate::pointwise::{identity_sweep, margin_sweep_weights};

/// Fixed sweep schema; the first six columns follow the method registry.
pub const SWEEP_HEADER: &str = "k,alpha_classical,alpha1,alpha0,alpha2,alpha_star,t_star";

const K_LATTICE: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

#[derive(Parser)]
#[command(
    name = "hbound",
    version,
    about = "Holder exponent bounds for quasiregular gradient maps, with certification drivers"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// All named exponents at one distortion value.
    Exponent(ExponentArgs),
    /// Exponent table over the lattice k_i = i / (grid + 1).
    Sweep(SweepArgs),
    /// Quartic coefficients, interval roots, and the optimizer cross-check.
    Quartic(ExponentArgs),
    /// Grid check of the pointwise Jacobian identities and margin bound.
    VerifyPointwise(VerifyPointwiseArgs),
    /// Randomized check of the discrete coefficient inequality.
    VerifyDiscrete(VerifyDiscreteArgs),
    /// Field corpus: Fourier identities, energy decay, bound comparison.
    Morrey(MorreyArgs),
    /// Omnibus per-k report: exponents, critical point, concavity.
    Report(ReportArgs),
}

#[derive(Args)]
struct KSelect {
    /// Beltrami bound, 0 <= k < 1.
    #[arg(long)]
    k: Option<f64>,
    /// Distortion K >= 1, mutually exclusive with --k.
    #[arg(long = "K", conflicts_with = "k")]
    big_k: Option<f64>,
}

impl KSelect {
    fn resolve(&self) -> Result<DistortionParams> {
        match (self.k, self.big_k) {
            (Some(k), None) => distortion_from_k(k),
            (None, Some(big)) => distortion_from_big_k(big),
            _ => Err(Error::BadGrid("exactly one of --k or --K is required".into())),
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, PartialEq)]
enum Format {
    Csv,
    Json,
    Table,
}

#[derive(Args)]
struct ExponentArgs {
    #[command(flatten)]
    select: KSelect,
    /// Bracket tolerance for the optimizer.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// Number of lattice points; rows use k = i / (grid + 1).
    #[arg(long, default_value_t = 99)]
    grid: u32,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyPointwiseArgs {
    /// Random draws for the identity pass.
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = mc::DEFAULT_SEED)]
    seed: u64,
    /// Multiply the first weight by this factor before the margin sweep.
    #[arg(long, hide = true, default_value_t = 1.0)]
    fault_inflate_t1: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyDiscreteArgs {
    /// Random draws per lattice point.
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = mc::DEFAULT_SEED)]
    seed: u64,
    /// Smallest mode index included in the sweep.
    #[arg(long, default_value_t = 2)]
    min_n: u32,
    /// Multiply the sharp constant by this factor.
    #[arg(long, hide = true, default_value_t = 1.0)]
    fault_inflate_c: f64,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct MorreyArgs {
    /// Restrict the run to one corpus field.
    #[arg(long)]
    field: Option<String>,
    /// Angular nodes per circle (power of two, at least 64).
    #[arg(long, default_value_t = 256)]
    n_theta: usize,
    /// Ladder rungs.
    #[arg(long, default_value_t = 33)]
    rungs: usize,
    /// Fourier truncation order.
    #[arg(long, default_value_t = 32)]
    order: usize,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ReportArgs {
    #[command(flatten)]
    select: KSelect,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Grid size for the concavity certificate.
    #[arg(long, default_value_t = 256)]
    grid: usize,
    #[command(flatten)]
    output: OutputArgs,
}

enum Outcome {
    Pass,
    Violation,
}

/// Parse arguments, run, and map the result to an exit code.
pub fn main_entry() -> i32 {
    init_threads();
    let cli = Cli::parse();
    let result = match cli.cmd {
        Command::Exponent(args) => run_exponent(args),
        Command::Sweep(args) => run_sweep(args),
        Command::Quartic(args) => run_quartic(args),
        Command::VerifyPointwise(args) => run_verify_pointwise(args),
        Command::VerifyDiscrete(args) => run_verify_discrete(args),
        Command::Morrey(args) => run_morrey(args),
        Command::Report(args) => run_report(args),
    };
    match result {
        Ok(Outcome::Pass) => 0,
        Ok(Outcome::Violation) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn init_threads() {
    if let Ok(raw) = std::env::var("HB_THREADS") {
        if let Ok(n) = raw.trim().parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn check_tol(tol: f64) -> Result<f64> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::BadTol(tol));
    }
    Ok(tol)
}

fn check_factor(factor: f64) -> Result<f64> {
    if !factor.is_finite() || factor <= 0.0 {
        return Err(Error::NonFinite("fault factor"));
    }
    Ok(factor)
}

fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(content.as_bytes())?;
        }
    }
    Ok(())
}

fn sweep_row(r: &ExponentReport) -> String {
    [
        r.k,
        r.alpha_classical,
        r.alpha1,
        r.alpha0,
        r.alpha2,
        r.alpha_star,
        r.t_star,
    ]
    .map(fmt)
    .join(",")
}

fn report_json(r: &ExponentReport) -> serde_json::Value {
    json!({
        "k": r.k,
        "alpha_classical": r.alpha_classical,
        "alpha1": r.alpha1,
        "alpha0": r.alpha0,
        "alpha2": r.alpha2,
        "alpha_star": r.alpha_star,
        "t_star": r.t_star,
    })
}

fn run_exponent(args: ExponentArgs) -> Result<Outcome> {
    let params = args.select.resolve()?;
    let tol = check_tol(args.tol)?;
    let report = methods::exponent_report(&params, tol)?;
    let content = match args.output.format {
        Format::Csv => format!("{SWEEP_HEADER}\n{}\n", sweep_row(&report)),
        Format::Json => pretty(&json!({
            "schema": 1,
            "command": "exponent",
            "report": report_json(&report),
        })),
        Format::Table => {
            let mut s = format!("k = {}  (K = {})\n", fmt(params.k), fmt(params.big_k));
            for (name, v) in [
                ("alpha_classical", report.alpha_classical),
                ("alpha1", report.alpha1),
                ("alpha0", report.alpha0),
                ("alpha2", report.alpha2),
                ("alpha_star", report.alpha_star),
                ("t_star", report.t_star),
            ] {
                s.push_str(&format!("{name:<16} {}\n", fmt(v)));
            }
            s
        }
    };
    emit(&args.output.out, &content)?;
    Ok(Outcome::Pass)
}

fn run_sweep(args: SweepArgs) -> Result<Outcome> {
    if args.grid < 2 {
        return Err(Error::BadGrid(format!("--grid must be >= 2, got {}", args.grid)));
    }
    let tol = check_tol(args.tol)?;
    let rows = methods::sweep_reports(args.grid, tol)?;
    let content = match args.output.format {
        Format::Csv => {
            let mut s = String::from(SWEEP_HEADER);
            s.push('\n');
            for r in &rows {
                s.push_str(&sweep_row(r));
                s.push('\n');
            }
            s
        }
        Format::Json => pretty(&json!({
            "schema": 1,
            "command": "sweep",
            "grid": args.grid,
            "rows": rows.iter().map(report_json).collect::<Vec<_>>(),
        })),
        Format::Table => {
            let mut s = format!("{:>6} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12}\n",
                "k", "classical", "alpha1", "alpha0", "alpha2", "alpha_star", "t_star");
            for r in &rows {
                s.push_str(&format!(
                    "{:>6.4} {:>12.9} {:>12.9} {:>12.9} {:>12.9} {:>12.9} {:>12.9}\n",
                    r.k, r.alpha_classical, r.alpha1, r.alpha0, r.alpha2, r.alpha_star, r.t_star
                ));
            }
            s
        }
    };
    emit(&args.output.out, &content)?;
    let ordered = rows.iter().all(ExponentReport::ordering_holds);
    Ok(if ordered { Outcome::Pass } else { Outcome::Violation })
}

fn run_quartic(args: ExponentArgs) -> Result<Outcome> {
    let params = args.select.resolve()?;
    let tol = check_tol(args.tol)?;
    let q = optimize::quartic_coeffs(params.k);
    let roots = optimize::quartic_roots_in_interval(&q);
    let cp = if params.k > 0.0 {
        Some(maximize_alpha(params.k, tol)?)
    } else {
        None
    };
    let content = match args.output.format {
        Format::Csv => {
            let mut s = String::from(
                "k,c4,c3,c2,c1,c0,t_star,alpha_star,quartic_residual,derivative_residual,agreement,roots\n",
            );
            let (ts, als, qr, dr, ag) = cp
                .map(|c| (fmt(c.t_star), fmt(c.alpha_star), fmt(c.quartic_residual),
                          fmt(c.derivative_residual), fmt(c.agreement)))
                .unwrap_or_default();
            let roots_str = roots.iter().map(|r| fmt(*r)).collect::<Vec<_>>().join(";");
            s.push_str(&format!(
                "{},{},{},{},{},{},{ts},{als},{qr},{dr},{ag},{roots_str}\n",
                fmt(params.k), fmt(q.c4), fmt(q.c3), fmt(q.c2), fmt(q.c1), fmt(q.c0)
            ));
            s
        }
        Format::Json => pretty(&json!({
            "schema": 1,
            "command": "quartic",
            "k": params.k,
            "coefficients": {"c4": q.c4, "c3": q.c3, "c2": q.c2, "c1": q.c1, "c0": q.c0},
            "window": optimize::t_window(params.k),
            "roots": roots,
            "critical_point": cp,
        })),
        Format::Table => {
            let mut s = format!("quartic at k = {}\n", fmt(params.k));
            for (name, v) in [("c4", q.c4), ("c3", q.c3), ("c2", q.c2), ("c1", q.c1), ("c0", q.c0)] {
                s.push_str(&format!("{name:<4} {}\n", fmt(v)));
            }
            if roots.is_empty() {
                s.push_str("no roots inside the window\n");
            }
            for r in &roots {
                s.push_str(&format!("root {}\n", fmt(*r)));
            }
            if let Some(c) = cp {
                s.push_str(&format!("t_star              {}\n", fmt(c.t_star)));
                s.push_str(&format!("alpha_star          {}\n", fmt(c.alpha_star)));
                s.push_str(&format!("quartic_residual    {}\n", fmt(c.quartic_residual)));
                s.push_str(&format!("derivative_residual {}\n", fmt(c.derivative_residual)));
                s.push_str(&format!("agreement           {}\n", fmt(c.agreement)));
            }
            s
        }
    };
    emit(&args.output.out, &content)?;
    Ok(Outcome::Pass)
}

struct MarginRow {
    k: f64,
    t: f64,
    t1: f64,
    report: crate::pointwise::MarginReport,
}

fn run_verify_pointwise(args: VerifyPointwiseArgs) -> Result<Outcome> {
    let factor = check_factor(args.fault_inflate_t1)?;
    let mut rows = Vec::new();
    let mut margin_violations = 0u64;
    for &k in &K_LATTICE {
        let (lo, hi) = optimize::t_window(k);
        for j in 1..=8u32 {
            let t = lo + (hi - lo) * j as f64 / 9.0;
            let t1 = t1_of(k, t)? * factor;
            let report = margin_sweep_weights(k, t1, t, 128, 256)?;
            margin_violations += report.violations;
            rows.push(MarginRow { k, t, t1, report });
        }
    }
    let ident = identity_sweep(0.9, args.samples, args.seed)?;
    let residual_ok = ident.max_identity <= 1e-12
        && ident.max_beltrami <= 1e-12
        && ident.max_jacobian <= 1e-12;
    let pass = margin_violations == 0 && residual_ok;

    let content = match args.output.format {
        Format::Csv => {
            let mut s = String::from(
                "kind,k,t,t1,min_margin,argmin_mu,argmin_varsigma,violations,samples,max_identity,max_beltrami,max_jacobian\n",
            );
            for row in &rows {
                s.push_str(&format!(
                    "margin,{},{},{},{},{},{},{},{},,,\n",
                    fmt(row.k), fmt(row.t), fmt(row.t1), fmt(row.report.min_margin),
                    fmt(row.report.argmin.0), fmt(row.report.argmin.1),
                    row.report.violations, row.report.samples
                ));
            }
            s.push_str(&format!(
                "identity,,,,,,,,{},{},{},{}\n",
                ident.samples, fmt(ident.max_identity), fmt(ident.max_beltrami),
                fmt(ident.max_jacobian)
            ));
            s
        }
        Format::Json => pretty(&json!({
            "schema": 1,
            "command": "verify-pointwise",
            "margin": rows.iter().map(|r| json!({
                "k": r.k,
                "t": r.t,
                "t1": r.t1,
                "min_margin": r.report.min_margin,
                "argmin": [r.report.argmin.0, r.report.argmin.1],
                "violations": r.report.violations,
                "samples": r.report.samples,
            })).collect::<Vec<_>>(),
            "identity": ident,
            "pass": pass,
        })),
        Format::Table => {
            let mut s = format!(
                "{:>5} {:>10} {:>14} {:>6} {:>8}\n",
                "k", "t", "min_margin", "viol", "samples"
            );
            for r in &rows {
                s.push_str(&format!(
                    "{:>5.2} {:>10.6} {:>14.6e} {:>6} {:>8}\n",
                    r.k, r.t, r.report.min_margin, r.report.violations, r.report.samples
                ));
            }
            s.push_str(&format!(
                "identity pass: samples {}, residuals {:.3e} / {:.3e} / {:.3e}\n",
                ident.samples, ident.max_identity, ident.max_beltrami, ident.max_jacobian
            ));
            s.push_str(if pass { "PASS\n" } else { "FAIL\n" });
            s
        }
    };
    emit(&args.output.out, &content)?;
    Ok(if pass { Outcome::Pass } else { Outcome::Violation })
}

fn run_verify_discrete(args: VerifyDiscreteArgs) -> Result<Outcome> {
    let factor = check_factor(args.fault_inflate_c)?;
    let tol = check_tol(args.tol)?;
    let mut reports: Vec<DiscreteReport> = Vec::new();
    for (ki, &k) in K_LATTICE.iter().enumerate() {
        let cp = maximize_alpha(k, tol)?;
        let c = 2.0 * cp.alpha_star * factor;
        let cfg = SweepConfig {
            samples: args.samples,
            min_n: args.min_n,
            max_n: 64,
            seed: args.seed ^ ((ki as u64 + 1).wrapping_mul(0xA5A5_5A5A_1234_5678)),
        };
        reports.push(discrete_sweep(k, cp.t_star, c, &cfg)?);
    }
    let total_violations: u64 = reports.iter().map(|r| r.violations).sum();
    let pass = total_violations == 0;

    let content = match args.output.format {
        Format::Csv => {
            let mut s = String::from("k,c,samples,violations,min_value,witness_n,witness_value\n");
            for r in &reports {
                let (wn, wv) = r
                    .witness
                    .as_ref()
                    .map(|w| (w.n.to_string(), fmt(w.value)))
                    .unwrap_or_default();
                s.push_str(&format!(
                    "{},{},{},{},{},{wn},{wv}\n",
                    fmt(r.k), fmt(r.c), r.samples, r.violations, fmt(r.min_value)
                ));
            }
            s
        }
        Format::Json => pretty(&json!({
            "schema": 1,
            "command": "verify-discrete",
            "min_n": args.min_n,
            "per_k": reports,
            "pass": pass,
        })),
        Format::Table => {
            let mut s = format!(
                "{:>5} {:>12} {:>9} {:>6} {:>14} {:>10}\n",
                "k", "C", "samples", "viol", "min_value", "witness_n"
            );
            for r in &reports {
                let wn = r
                    .witness
                    .as_ref()
                    .map(|w| w.n.to_string())
                    .unwrap_or_else(|| "-".into());
                s.push_str(&format!(
                    "{:>5.2} {:>12.8} {:>9} {:>6} {:>14.6e} {:>10}\n",
                    r.k, r.c, r.samples, r.violations, r.min_value, wn
                ));
            }
            s.push_str(if pass { "PASS\n" } else { "FAIL\n" });
            s
        }
    };
    emit(&args.output.out, &content)?;
    Ok(if pass { Outcome::Pass } else { Outcome::Violation })
}

struct FieldRow {
    name: String,
    gradient: bool,
    k_emp: Option<f64>,
    alpha_bound: Option<f64>,
    alpha_ratio: f64,
    alpha_regression: f64,
    alpha_measured: f64,
    dual_path_max: f64,
    parseval_p: f64,
    parseval_q: f64,
    parseval_energy: f64,
    coeff_relation: f64,
    sandwich: Option<f64>,
    pass: bool,
}

fn run_morrey(args: MorreyArgs) -> Result<Outcome> {
    let tol = check_tol(args.tol)?;
    let grid = PolarGrid::geometric(1.0, 0.5f64.powf(0.125), args.rungs, args.n_theta)?;
    if args.rungs < 16 {
        return Err(Error::BadGrid(format!(
            "--rungs must be >= 16, got {}",
            args.rungs
        )));
    }
    let generators = match &args.field {
        Some(name) => {
            vec![generator_by_name(name).ok_or_else(|| Error::UnknownField(name.clone()))?]
        }
        None => corpus(),
    };
    let order = args.order.min(args.n_theta / 2 - 1);

    let mut rows = Vec::new();
    for g in &generators {
        let field = g.generate(&grid);
        let profile = fourier_profile(&field, order)?;
        let derivs = radial_derivs(&field, &profile);

        let mut dual = 0f64;
        let (mut pp, mut qq, mut ee) = (0f64, 0f64, 0f64);
        for (ri, &r) in grid.radii.iter().enumerate() {
            let j_f = j_from_fourier(&profile, r)?;
            let j_d = j_direct(&field, r)?;
            dual = dual.max((j_d - j_f).abs() / j_f.abs().max(1.0));
            let pr = parseval_checks(&field, &profile, &derivs, ri)?;
            pp = pp.max(pr.p_residual);
            qq = qq.max(pr.q_residual);
            ee = ee.max(pr.energy_residual);
        }
        let relation = coefficient_relation_check(&profile, &derivs);
        let estimate = morrey_estimate(&field)?;
        let sandwich = match field.meta.elliptic {
            Some((big_l, l)) => Some(sandwich_check(&field, big_l, l)?),
            None => None,
        };
        let (k_emp, alpha_bound, alpha_measured) = if field.meta.is_gradient {
            let b = fourier::bound_vs_measured(&field, tol)?;
            (Some(b.k_emp), Some(b.alpha_bound), b.alpha_measured)
        } else {
            (
                field.empirical_distortion().ok(),
                None,
                estimate.alpha_ratio.min(1.0),
            )
        };

        let mut pass = dual <= 1e-8 && pp <= 1e-8 && qq <= 1e-8 && ee <= 1e-8;
        if field.meta.is_gradient {
            pass = pass && relation <= 1e-8;
            if let Some(bound) = alpha_bound {
                pass = pass && bound <= alpha_measured + 1e-4;
            }
        }
        if let Some(sv) = sandwich {
            pass = pass && sv <= 1e-12;
        }
        rows.push(FieldRow {
            name: field.meta.name.clone(),
            gradient: field.meta.is_gradient,
            k_emp,
            alpha_bound,
            alpha_ratio: estimate.alpha_ratio,
            alpha_regression: estimate.alpha_regression,
            alpha_measured,
            dual_path_max: dual,
            parseval_p: pp,
            parseval_q: qq,
            parseval_energy: ee,
            coeff_relation: relation,
            sandwich,
            pass,
        });
    }
    let pass = rows.iter().all(|r| r.pass);

    let content = match args.output.format {
        Format::Csv => {
            let mut s = String::from(
                "field,gradient,k_emp,alpha_bound,alpha_ratio,alpha_regression,alpha_measured,dual_path_max,parseval_p,parseval_q,parseval_energy,coeff_relation,sandwich,pass\n",
            );
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                    r.name,
                    r.gradient,
                    r.k_emp.map(fmt).unwrap_or_default(),
                    r.alpha_bound.map(fmt).unwrap_or_default(),
                    fmt(r.alpha_ratio),
                    fmt(r.alpha_regression),
                    fmt(r.alpha_measured),
                    fmt(r.dual_path_max),
                    fmt(r.parseval_p),
                    fmt(r.parseval_q),
                    fmt(r.parseval_energy),
                    fmt(r.coeff_relation),
                    r.sandwich.map(fmt).unwrap_or_default(),
                    r.pass
                ));
            }
            s
        }
        Format::Json => pretty(&json!({
            "schema": 1,
            "command": "morrey",
            "rungs": args.rungs,
            "n_theta": args.n_theta,
            "order": order,
            "fields": rows.iter().map(|r| json!({
                "name": r.name,
                "gradient": r.gradient,
                "k_emp": r.k_emp,
                "alpha_bound": r.alpha_bound,
                "alpha_ratio": r.alpha_ratio,
                "alpha_regression": r.alpha_regression,
                "alpha_measured": r.alpha_measured,
                "dual_path_max": r.dual_path_max,
                "parseval": {
                    "p": r.parseval_p,
                    "q": r.parseval_q,
                    "energy": r.parseval_energy,
                },
                "coeff_relation": r.coeff_relation,
                "sandwich": r.sandwich,
                "pass": r.pass,
            })).collect::<Vec<_>>(),
            "pass": pass,
        })),
        Format::Table => {
            let mut s = format!(
                "{:<14} {:>4} {:>8} {:>8} {:>8} {:>9} {:>9} {:>9} {:>5}\n",
                "field", "grad", "k_emp", "bound", "measured", "dual", "parseval", "relation", "ok"
            );
            for r in &rows {
                s.push_str(&format!(
                    "{:<14} {:>4} {:>8} {:>8} {:>8.5} {:>9.2e} {:>9.2e} {:>9.2e} {:>5}\n",
                    r.name,
                    if r.gradient { "yes" } else { "no" },
                    r.k_emp.map(|v| format!("{v:.5}")).unwrap_or_else(|| "-".into()),
                    r.alpha_bound.map(|v| format!("{v:.5}")).unwrap_or_else(|| "-".into()),
                    r.alpha_measured,
                    r.dual_path_max,
                    r.parseval_p.max(r.parseval_q).max(r.parseval_energy),
                    r.coeff_relation,
                    if r.pass { "yes" } else { "NO" }
                ));
            }
            s.push_str(if pass { "PASS\n" } else { "FAIL\n" });
            s
        }
    };
    emit(&args.output.out, &content)?;
    Ok(if pass { Outcome::Pass } else { Outcome::Violation })
}

fn run_report(args: ReportArgs) -> Result<Outcome> {
    let params = args.select.resolve()?;
    let tol = check_tol(args.tol)?;
    let report = methods::exponent_report(&params, tol)?;
    let detail = if params.k > 0.0 {
        let cp = maximize_alpha(params.k, tol)?;
        let cert = certify_concavity(params.k, args.grid)?;
        let phi = phi_coefficients(params.k);
        Some((cp, cert, phi))
    } else {
        None
    };
    let content = match args.output.format {
        Format::Csv => {
            let mut s = String::from(
                "k,alpha_classical,alpha1,alpha0,alpha2,alpha_star,t_star,quartic_residual,derivative_residual,agreement,dalpha_left,dalpha_right,phi_min,second_deriv_max\n",
            );
            let tail = detail
                .as_ref()
                .map(|(cp, cert, _)| {
                    format!(
                        "{},{},{},{},{},{},{}",
                        fmt(cp.quartic_residual), fmt(cp.derivative_residual), fmt(cp.agreement),
                        fmt(cert.dalpha_left), fmt(cert.dalpha_right),
                        fmt(cert.phi_min_on_window), fmt(cert.grid_second_deriv_max)
                    )
                })
                .unwrap_or_else(|| ",,,,,,".into());
            s.push_str(&format!("{},{tail}\n", sweep_row(&report)));
            s
        }
        Format::Json => pretty(&json!({
            "schema": 1,
            "command": "report",
            "report": report_json(&report),
            "critical_point": detail.as_ref().map(|(cp, _, _)| cp),
            "concavity": detail.as_ref().map(|(_, cert, _)| cert),
            "phi": detail.as_ref().map(|(_, _, phi)| phi),
        })),
        Format::Table => {
            let mut s = format!("k = {}  (K = {})\n\n", fmt(params.k), fmt(params.big_k));
            for (name, v) in [
                ("alpha_classical", report.alpha_classical),
                ("alpha1", report.alpha1),
                ("alpha0", report.alpha0),
                ("alpha2", report.alpha2),
                ("alpha_star", report.alpha_star),
                ("t_star", report.t_star),
            ] {
                s.push_str(&format!("{name:<16} {}\n", fmt(v)));
            }
            if let Some((cp, cert, phi)) = &detail {
                s.push_str("\ncritical point\n");
                s.push_str(&format!("  quartic_residual    {}\n", fmt(cp.quartic_residual)));
                s.push_str(&format!("  derivative_residual {}\n", fmt(cp.derivative_residual)));
                s.push_str(&format!("  agreement           {}\n", fmt(cp.agreement)));
                s.push_str(&format!("  stationarity        {}\n", fmt(cp.stationarity)));
                s.push_str("\nconcavity\n");
                s.push_str(&format!("  dalpha_left         {}\n", fmt(cert.dalpha_left)));
                s.push_str(&format!("  dalpha_right        {}\n", fmt(cert.dalpha_right)));
                s.push_str(&format!("  phi_min             {}\n", fmt(cert.phi_min_on_window)));
                s.push_str(&format!("  second_deriv_max    {}\n", fmt(cert.grid_second_deriv_max)));
                s.push_str(&format!("  phi discriminant    {}\n", fmt(phi.delta)));
            }
            s
        }
    };
    emit(&args.output.out, &content)?;
    Ok(Outcome::Pass)
}

fn pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json trees serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_header_matches_registry() {
        let names: Vec<_> = methods::methods().iter().map(|m| m.name()).collect();
        let expected = format!("k,{},t_star", names.join(","));
        assert_eq!(SWEEP_HEADER, expected);
    }

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(fmt(0.5), "5.0000000000000000e-1");
        assert_eq!(fmt(1.0), "1.0000000000000000e0");
        assert_eq!(fmt(f64::NAN), "NaN");
    }

    #[test]
    fn k_selection_requires_exactly_one() {
        let none = KSelect { k: None, big_k: None };
        assert!(none.resolve().is_err());
        let k = KSelect { k: Some(0.5), big_k: None };
        assert_eq!(k.resolve().unwrap().big_k, 3.0);
        let big = KSelect { k: None, big_k: Some(3.0) };
        assert_eq!(big.resolve().unwrap().k, 0.5);
    }
}
