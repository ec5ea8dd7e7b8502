//! `charge2`: exact finite-n reports and limit-theory verification for the
//! two-charge ensembles on the line and the circle.
//!
//! Exit status: 0 = success (verify: all checks passed), 1 = at least one
//! verification check failed, 2 = configuration or runtime error.

// Input guards use `!(x > 0.0)` so NaN fails in one comparison.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use charge2::error::Error;
use charge2::exact::{exact_cumulants, exact_pmf, sample};
use charge2::limits::profile::ModelId;
use charge2::limits::rate::RateFunction;
use charge2::output::{fmt_g17, write_atomic, CsvTable, ExactInt, Num, SCHEMA_VERSION};
use charge2::verify::{run_verification, VerificationReport, VerifyConfig};

#[derive(Parser)]
#[command(
    name = "charge2",
    version,
    about = "Exact statistics and limit verification for two-charge ensembles"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact PMF table for one model size.
    Pmf(CommonArgs),
    /// Exact vs limiting cumulants across the n sweep.
    Cumulants(CommonArgs),
    /// Run the invariant suite; exit status encodes the verdict.
    Verify(CommonArgs),
    /// Seeded samples of the count.
    Sample(SampleArgs),
    /// Rate-function table on a grid, with minimizer, speed and boundary
    /// diagnostics.
    Rate(CommonArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    #[value(name = "line-scaled")]
    LineScaled,
    #[value(name = "line-unit")]
    LineUnit,
    #[value(name = "circle")]
    Circle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args)]
struct CommonArgs {
    /// Model family.
    #[arg(long, value_enum)]
    model: ModelArg,
    /// Fugacity rate γ (line-scaled only).
    #[arg(long)]
    gamma: Option<f64>,
    /// Fugacity rate ρ (circle only).
    #[arg(long)]
    rho: Option<f64>,
    /// Size n, or a comma-separated sweep for `cumulants`/`verify`.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<u32>,
    /// RNG seed for every stochastic step.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Output file (atomic write); stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Scales every verification tolerance (verify only).
    #[arg(long, default_value_t = 1.0)]
    tol_scale: f64,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Number of samples to draw.
    #[arg(long, default_value_t = 10)]
    count: u64,
}

fn main() -> ExitCode {
    init_threads();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help/version requests are not errors.
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(2);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("charge2: {e}");
            ExitCode::from(2)
        }
    }
}

fn init_threads() {
    if let Ok(v) = std::env::var("CHARGE2_THREADS") {
        if let Ok(k) = v.trim().parse::<usize>() {
            if k >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.cmd {
        Cmd::Pmf(args) => cmd_pmf(&args).map(|()| ExitCode::SUCCESS),
        Cmd::Cumulants(args) => cmd_cumulants(&args).map(|()| ExitCode::SUCCESS),
        Cmd::Verify(args) => cmd_verify(&args),
        Cmd::Sample(args) => cmd_sample(&args).map(|()| ExitCode::SUCCESS),
        Cmd::Rate(args) => cmd_rate(&args).map(|()| ExitCode::SUCCESS),
    }
}

fn model_id(args: &CommonArgs) -> Result<ModelId, Error> {
    match args.model {
        ModelArg::LineScaled => {
            if args.rho.is_some() {
                return Err(Error::InvalidInput(
                    "--rho does not apply to line-scaled".into(),
                ));
            }
            let gamma = args
                .gamma
                .ok_or_else(|| Error::InvalidInput("line-scaled requires --gamma".into()))?;
            if !(gamma > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "--gamma must be positive, got {gamma}"
                )));
            }
            Ok(ModelId::LineScaled { gamma })
        }
        ModelArg::LineUnit => {
            if args.gamma.is_some() || args.rho.is_some() {
                return Err(Error::InvalidInput(
                    "line-unit takes neither --gamma nor --rho".into(),
                ));
            }
            Ok(ModelId::LineUnit)
        }
        ModelArg::Circle => {
            if args.gamma.is_some() {
                return Err(Error::InvalidInput(
                    "--gamma does not apply to circle".into(),
                ));
            }
            let rho = args
                .rho
                .ok_or_else(|| Error::InvalidInput("circle requires --rho".into()))?;
            if !(rho > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "--rho must be positive, got {rho}"
                )));
            }
            Ok(ModelId::Circle { rho })
        }
    }
}

fn single_n(args: &CommonArgs) -> Result<u32, Error> {
    match args.n.as_slice() {
        [n] => Ok(*n),
        _ => Err(Error::InvalidInput(
            "this subcommand takes exactly one --n value".into(),
        )),
    }
}

fn environment(seed: u64) -> Value {
    let timestamp = time::OffsetDateTime::now_utc()
        .format(&time::format_description::well_known::Rfc3339)
        .unwrap_or_else(|_| "unknown".into());
    json!({
        "seed": serde_json::to_value(ExactInt(seed)).unwrap(),
        "version": env!("CARGO_PKG_VERSION"),
        "timestamp": timestamp,
    })
}

fn model_json(model: &ModelId) -> Value {
    match *model {
        ModelId::LineScaled { gamma } => json!({"family": "line-scaled", "gamma": jnum(gamma)}),
        ModelId::LineUnit => json!({"family": "line-unit"}),
        ModelId::Circle { rho } => json!({"family": "circle", "rho": jnum(rho)}),
    }
}

fn jnum(x: f64) -> Value {
    serde_json::to_value(Num(x)).unwrap()
}

fn emit(args: &CommonArgs, text: String) -> Result<(), Error> {
    match &args.out {
        Some(path) => write_atomic(path, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_pmf(args: &CommonArgs) -> Result<(), Error> {
    let model_id = model_id(args)?;
    let n = single_n(args)?;
    let pmf = exact_pmf(&model_id.build(n)?)?;
    let text = match args.format {
        FormatArg::Csv => {
            let mut t = CsvTable::new(&["value", "probability"]);
            for (j, &p) in pmf.mass().iter().enumerate() {
                t.row(&[(2 * j).to_string(), fmt_g17(p)]);
            }
            t.finish()
        }
        FormatArg::Json => {
            let rows: Vec<Value> = pmf
                .mass()
                .iter()
                .enumerate()
                .map(|(j, &p)| json!({"value": 2 * j, "probability": jnum(p)}))
                .collect();
            pretty(json!({
                "schema": SCHEMA_VERSION,
                "kind": "pmf",
                "environment": environment(args.seed),
                "model": model_json(&model_id),
                "n": n,
                "total": jnum(pmf.total()),
                "rows": rows,
            }))
        }
    };
    emit(args, text)
}

const CUMULANT_COLUMNS: [&str; 10] = [
    "n",
    "kappa1",
    "kappa2",
    "kappa3",
    "mean_rate",
    "var_rate",
    "kappa3_rate",
    "limit_mean_rate",
    "limit_var_rate",
    "limit_kappa3_rate",
];

fn cmd_cumulants(args: &CommonArgs) -> Result<(), Error> {
    let model_id = model_id(args)?;
    let profile = match model_id {
        ModelId::LineScaled { gamma } => charge2::limits::profile::line_limit_profile(gamma),
        ModelId::LineUnit => charge2::limits::profile::line_unit_profile(),
        ModelId::Circle { rho } => charge2::limits::profile::circle_limit_profile(rho),
    };
    let mut ns = args.n.clone();
    ns.sort_unstable();
    ns.dedup();

    let mut rows_json = Vec::new();
    let mut table = CsvTable::new(&CUMULANT_COLUMNS);
    for &n in &ns {
        let cum = exact_cumulants(&model_id.build(n)?);
        let norm = profile.normalizer(n);
        let rates = [cum.kappa1 / norm, cum.kappa2 / norm, cum.kappa3 / norm];
        match args.format {
            FormatArg::Csv => table.row(&[
                n.to_string(),
                fmt_g17(cum.kappa1),
                fmt_g17(cum.kappa2),
                fmt_g17(cum.kappa3),
                fmt_g17(rates[0]),
                fmt_g17(rates[1]),
                fmt_g17(rates[2]),
                fmt_g17(profile.mean_rate),
                fmt_g17(profile.var_rate),
                fmt_g17(profile.kappa_rate),
            ]),
            FormatArg::Json => rows_json.push(json!({
                "n": n,
                "kappa1": jnum(cum.kappa1),
                "kappa2": jnum(cum.kappa2),
                "kappa3": jnum(cum.kappa3),
                "mean_rate": jnum(rates[0]),
                "var_rate": jnum(rates[1]),
                "kappa3_rate": jnum(rates[2]),
                "limit_mean_rate": jnum(profile.mean_rate),
                "limit_var_rate": jnum(profile.var_rate),
                "limit_kappa3_rate": jnum(profile.kappa_rate),
            })),
        }
    }
    let text = match args.format {
        FormatArg::Csv => table.finish(),
        FormatArg::Json => pretty(json!({
            "schema": SCHEMA_VERSION,
            "kind": "cumulants",
            "environment": environment(args.seed),
            "model": model_json(&model_id),
            "normalizer": match model_id {
                ModelId::LineScaled { .. } => "2n",
                ModelId::LineUnit => "2sqrt(n)",
                ModelId::Circle { .. } => "n",
            },
            "rows": rows_json,
        })),
    };
    emit(args, text)
}

fn cmd_verify(args: &CommonArgs) -> Result<ExitCode, Error> {
    let model_id = model_id(args)?;
    if !(args.tol_scale >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "--tol-scale must be nonnegative, got {}",
            args.tol_scale
        )));
    }
    let report = run_verification(&VerifyConfig {
        model: model_id,
        ns: args.n.clone(),
        seed: args.seed,
        tol_scale: args.tol_scale,
    })?;
    let text = match args.format {
        FormatArg::Csv => verify_csv(&report),
        FormatArg::Json => pretty(verify_json(&report, args, &model_id)),
    };
    emit(args, text)?;
    Ok(if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn verify_json(report: &VerificationReport, args: &CommonArgs, model: &ModelId) -> Value {
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            json!({
                "id": c.id,
                "detail": c.detail,
                "observed": jnum(c.observed),
                "predicted": jnum(c.predicted),
                "abs_error": jnum(c.abs_error),
                "rel_error": jnum(c.rel_error),
                "tolerance": jnum(c.tolerance),
                "passed": c.passed,
            })
        })
        .collect();
    json!({
        "schema": SCHEMA_VERSION,
        "kind": "verify",
        "environment": environment(args.seed),
        "model": model_json(model),
        "ns": report.ns,
        "tol_scale": jnum(report.tol_scale),
        "summary": {
            "checks": report.checks.len(),
            "failed": report.checks.iter().filter(|c| !c.passed).count(),
            "passed": report.passed,
        },
        "checks": checks,
    })
}

fn verify_csv(report: &VerificationReport) -> String {
    let mut t = CsvTable::new(&[
        "id",
        "detail",
        "observed",
        "predicted",
        "abs_error",
        "rel_error",
        "tolerance",
        "passed",
    ]);
    for c in &report.checks {
        t.row(&[
            c.id.to_string(),
            c.detail.replace(',', ";"),
            fmt_g17(c.observed),
            fmt_g17(c.predicted),
            fmt_g17(c.abs_error),
            fmt_g17(c.rel_error),
            fmt_g17(c.tolerance),
            c.passed.to_string(),
        ]);
    }
    t.finish()
}

fn cmd_sample(args: &SampleArgs) -> Result<(), Error> {
    let model_id = model_id(&args.common)?;
    let n = single_n(&args.common)?;
    if args.count == 0 {
        return Err(Error::InvalidInput("--count must be at least 1".into()));
    }
    let draws = sample(&model_id.build(n)?, args.count as usize, args.common.seed)?;
    let text = match args.common.format {
        FormatArg::Csv => {
            let mut t = CsvTable::new(&["value"]);
            for v in &draws {
                t.row(&[v.to_string()]);
            }
            t.finish()
        }
        FormatArg::Json => pretty(json!({
            "schema": SCHEMA_VERSION,
            "kind": "sample",
            "environment": environment(args.common.seed),
            "model": model_json(&model_id),
            "n": n,
            "count": args.count,
            "values": draws,
        })),
    };
    emit(&args.common, text)
}

fn cmd_rate(args: &CommonArgs) -> Result<(), Error> {
    let model_id = model_id(args)?;
    let n = single_n(args)?;
    let rate_fn = match model_id {
        ModelId::LineScaled { gamma } => RateFunction::line_scaled(gamma)?,
        ModelId::LineUnit => RateFunction::line_unit(),
        ModelId::Circle { rho } => RateFunction::circle(rho)?,
    };
    let (lo, hi) = rate_fn.domain();
    let hi = if hi.is_finite() { hi } else { 4.0 };
    let xs: Vec<f64> = (1..100)
        .map(|i| lo + (hi - lo) * f64::from(i) / 100.0)
        .collect();
    let vals: Vec<f64> = xs
        .iter()
        .map(|&x| rate_fn.evaluate(x))
        .collect::<Result<_, _>>()?;
    let convex = vals.windows(3).all(|w| w[1] <= 0.5 * (w[0] + w[2]) + 1e-10);
    let minimizer = rate_fn.minimizer();
    let speed = rate_fn.speed();
    let boundary = match model_id {
        ModelId::Circle { rho } => Some(charge2::limits::rate::circle_rate_boundary(rho)),
        _ => None,
    };

    let text = match args.format {
        FormatArg::Csv => {
            let mut header = vec!["x", "rate", "minimizer", "speed", "speed_at_n", "grid_convex"];
            if boundary.is_some() {
                header.push("boundary_limit_at_zero");
                header.push("boundary_negated_variant");
            }
            let mut t = CsvTable::new(&header);
            for (&x, &v) in xs.iter().zip(&vals) {
                let mut row = vec![
                    fmt_g17(x),
                    fmt_g17(v),
                    fmt_g17(minimizer),
                    speed.label().to_string(),
                    fmt_g17(speed.value(n)),
                    convex.to_string(),
                ];
                if let Some(b) = boundary {
                    row.push(fmt_g17(b.limit_at_zero));
                    row.push(fmt_g17(b.negated_variant_at_zero));
                }
                t.row(&row);
            }
            t.finish()
        }
        FormatArg::Json => {
            let rows: Vec<Value> = xs
                .iter()
                .zip(&vals)
                .map(|(&x, &v)| json!({"x": jnum(x), "rate": jnum(v)}))
                .collect();
            let boundary_json = boundary.map(|b| {
                json!({
                    "limit_at_zero": jnum(b.limit_at_zero),
                    "negated_variant_at_zero": jnum(b.negated_variant_at_zero),
                    "diverges_at_two": b.diverges_at_two,
                    "note": "the negated variant cannot be a rate value (rate functions are nonnegative); reported for comparison only",
                })
            });
            pretty(json!({
                "schema": SCHEMA_VERSION,
                "kind": "rate",
                "environment": environment(args.seed),
                "model": model_json(&model_id),
                "n": n,
                "minimizer": jnum(minimizer),
                "speed": speed.label(),
                "speed_at_n": jnum(speed.value(n)),
                "grid_convex": convex,
                "boundary": boundary_json,
                "rows": rows,
            }))
        }
    };
    emit(args, text)
}

fn pretty(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json serialization");
    s.push('\n');
    s
}
