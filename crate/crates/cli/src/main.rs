//! Command-line front end: verification suites and tabulated computations
//! for the one-dimensional Dunkl operator toolkit.
//!
//! Exit codes: 0 when every requested check passes, 1 when any check
//! fails, 2 for usage or configuration errors.

mod checks;
mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use checks::{run_suites, SuiteParams};
use config::{parse_q, GlobalArgs, OutputFormat, RunConfig};
use output::{emit, json_document, num, CsvTable};

#[derive(Parser)]
#[command(
    name = "dunkl",
    version,
    about = "One-dimensional Dunkl harmonic analysis: verification suites, smoothness seminorms, and kernel/transform/translation tables"
)]
struct Cli {
    #[command(flatten)]
    globals: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct KernelArgs {
    /// First kernel argument (nonzero)
    #[arg(long, allow_negative_numbers = true)]
    x: f64,
    /// Second kernel argument (nonzero)
    #[arg(long, allow_negative_numbers = true)]
    y: f64,
    /// Half-width of the z grid (defaults to |x|+|y|+0.5)
    #[arg(long)]
    z_max: Option<f64>,
    /// Number of z samples
    #[arg(long, default_value_t = 201)]
    z_n: usize,
}

#[derive(Args)]
struct TransformArgs {
    /// Test function id: gauss, xgauss, x2gauss, hermite:N, zero
    #[arg(long, default_value = "gauss")]
    f: String,
    /// Explicit evaluation points (comma separated); overrides the grid
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    ys: Option<Vec<f64>>,
    /// Grid maximum when --ys is absent
    #[arg(long, default_value_t = 4.0)]
    y_max: f64,
    /// Grid size when --ys is absent
    #[arg(long, default_value_t = 81)]
    y_n: usize,
}

#[derive(Args)]
struct TranslateArgs {
    /// Test function id
    #[arg(long, default_value = "gauss")]
    f: String,
    /// Translation parameter
    #[arg(long, allow_negative_numbers = true)]
    x: f64,
    /// Half-width of the argument grid (defaults to |x| + radius)
    #[arg(long)]
    y_max: Option<f64>,
    /// Number of argument samples
    #[arg(long, default_value_t = 201)]
    y_n: usize,
}

#[derive(Args)]
struct ThetaArgs {
    /// Remainder order k (kernel order is k-1)
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// Base point (nonzero)
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    x: f64,
    /// Number of interior samples
    #[arg(long, default_value_t = 200)]
    y_n: usize,
}

#[derive(Args)]
struct TaylorArgs {
    /// Test function id
    #[arg(long, default_value = "gauss")]
    f: String,
    /// Expansion order
    #[arg(long, default_value_t = 3)]
    k: u32,
    /// Base points (comma separated)
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.3, 0.8], allow_negative_numbers = true)]
    xs: Vec<f64>,
    /// Evaluation points (comma separated)
    #[arg(long = "points", value_delimiter = ',', default_values_t = vec![0.0, 0.4, 1.1], allow_negative_numbers = true)]
    ats: Vec<f64>,
}

#[derive(Args)]
struct SeminormArgs {
    /// Smoothness order
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// Integrability index (1 <= p < inf)
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    /// Scale index: a number >= 1 or `inf`
    #[arg(long, default_value = "1")]
    q: String,
    /// Smoothness exponent in (0, 1)
    #[arg(long, default_value_t = 0.5)]
    beta: f64,
    /// Test function id
    #[arg(long, default_value = "gauss")]
    f: String,
    /// Window degree parameter (must exceed floor((k-1)/2))
    #[arg(long = "phi", default_value_t = 1)]
    phi_n0: u32,
    #[arg(long, default_value_t = 1e-2)]
    grid_lo: f64,
    #[arg(long, default_value_t = 1e2)]
    grid_hi: f64,
    #[arg(long, default_value_t = 33)]
    grid_n: usize,
    /// Optional CSV of per-grid-point contributions
    #[arg(long)]
    points_out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum TabulateWhat {
    /// Translation kernel over a z grid
    Kernel(KernelArgs),
    /// Transform values over a point grid
    Transform(TransformArgs),
    /// Translated function over an argument grid
    Translate(TranslateArgs),
    /// Remainder kernel over an interior grid
    Theta(ThetaArgs),
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and report pass/fail per check
    Verify {
        /// Which suite: core, translation, taylor, besov, or all
        #[arg(long, default_value = "all")]
        suite: String,
        /// Restrict order-dependent checks to one order
        #[arg(long)]
        k: Option<u32>,
        /// Integrability index for norm-based checks
        #[arg(long)]
        p: Option<f64>,
        /// Include the expensive regularized reverse bound
        #[arg(long)]
        lemma42: bool,
    },
    /// Compute both smoothness seminorms for one function
    Seminorm(SeminormArgs),
    /// Tabulate a kernel, transform, translation, or remainder kernel
    Tabulate {
        #[command(subcommand)]
        what: TabulateWhat,
    },
    /// Residual table for the generalized Taylor identity
    Taylor(TaylorArgs),
    /// Transform values at requested points
    Transform(TransformArgs),
    /// Translated function over an argument grid
    Translate(TranslateArgs),
    /// Translation kernel over a z grid
    Kernel(KernelArgs),
}

fn transform_points(args: &TransformArgs) -> Vec<f64> {
    match &args.ys {
        Some(ys) => ys.clone(),
        None => dunkl_core::quad::uniform_grid(0.0, args.y_max, args.y_n.max(2)),
    }
}

fn run() -> Result<bool, String> {
    let cli = Cli::parse();
    let mut cfg = RunConfig::resolve(&cli.globals)?;

    match cli.command {
        Command::Verify {
            suite,
            k,
            p,
            lemma42,
        } => {
            if !["core", "translation", "taylor", "besov", "all"].contains(&suite.as_str()) {
                return Err(format!(
                    "--suite: unknown suite {suite:?} (expected core, translation, taylor, besov, or all)"
                ));
            }
            let prm = SuiteParams {
                alpha: cfg.alpha,
                spec: cfg.spec.clone(),
                k,
                p,
                lemma42,
            };
            let results = run_suites(&suite, &prm)?;
            let mut all_pass = true;
            for r in &results {
                let status = if r.pass { "PASS" } else { "FAIL" };
                println!(
                    "{status} [{}] {} :: {} (tolerance {})",
                    r.suite,
                    r.id,
                    r.detail,
                    num(r.tolerance)
                );
                all_pass &= r.pass;
            }
            println!(
                "{} checks, {} failed",
                results.len(),
                results.iter().filter(|r| !r.pass).count()
            );
            if cfg.out.is_some() {
                cfg.echo_extend([("suite".to_string(), suite.clone())]);
                match cfg.format {
                    OutputFormat::Csv => {
                        let mut table =
                            CsvTable::new(&["suite", "check", "detail", "tolerance", "status"]);
                        for r in &results {
                            table.push(vec![
                                r.suite.to_string(),
                                r.id.to_string(),
                                r.detail.clone(),
                                num(r.tolerance),
                                if r.pass { "pass" } else { "fail" }.into(),
                            ]);
                        }
                        emit(cfg.out.as_deref(), &table.render(&cfg.echo))?;
                    }
                    OutputFormat::Json => {
                        let rows: Vec<serde_json::Value> = results
                            .iter()
                            .map(|r| {
                                serde_json::json!({
                                    "suite": r.suite,
                                    "check": r.id,
                                    "detail": r.detail,
                                    "tolerance": r.tolerance,
                                    "pass": r.pass,
                                })
                            })
                            .collect();
                        let doc = json_document(&cfg.echo, serde_json::Value::Array(rows));
                        emit(
                            cfg.out.as_deref(),
                            &format!(
                                "{}\n",
                                serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?
                            ),
                        )?;
                    }
                }
            }
            Ok(all_pass)
        }
        Command::Seminorm(args) => {
            let q = parse_q(&args.q)?;
            commands::cmd_seminorm(
                &mut cfg,
                args.k,
                args.p,
                q,
                args.beta,
                &args.f,
                args.phi_n0,
                args.grid_lo,
                args.grid_hi,
                args.grid_n,
                args.points_out.as_deref(),
            )?;
            Ok(true)
        }
        Command::Kernel(args) | Command::Tabulate { what: TabulateWhat::Kernel(args) } => {
            commands::cmd_kernel(&mut cfg, args.x, args.y, args.z_max, args.z_n)?;
            Ok(true)
        }
        Command::Transform(args)
        | Command::Tabulate {
            what: TabulateWhat::Transform(args),
        } => {
            let ys = transform_points(&args);
            commands::cmd_transform(&mut cfg, &args.f, &ys)?;
            Ok(true)
        }
        Command::Translate(args)
        | Command::Tabulate {
            what: TabulateWhat::Translate(args),
        } => {
            commands::cmd_translate(&mut cfg, &args.f, args.x, args.y_max, args.y_n)?;
            Ok(true)
        }
        Command::Tabulate {
            what: TabulateWhat::Theta(args),
        } => {
            commands::cmd_theta(&mut cfg, args.k, args.x, args.y_n)?;
            Ok(true)
        }
        Command::Taylor(args) => {
            commands::cmd_taylor(&mut cfg, &args.f, args.k, &args.xs, &args.ats)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
