use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use cli_harness::{rows_to_csv, run_suite, scan, Axis, Format, HarnessError, RunConfig};

/// Runs a verification suite, or a parameter scan, and writes the report.
#[derive(Debug, Parser)]
#[command(name = "verify", version)]
struct Cli {
    /// cocycles, schatten, spectral-triple, wzw, dressed or all.
    #[arg(long)]
    suite: Option<String>,
    /// Flat `key = value` config file; command-line flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Base window radius K.
    #[arg(long, visible_alias = "window")]
    k: Option<usize>,
    /// Cocycle orders, comma separated.
    #[arg(long)]
    p: Option<String>,
    /// Fractional orders, comma separated.
    #[arg(long)]
    q: Option<String>,
    /// Loop bandwidth Lambda.
    #[arg(long)]
    bandwidth: Option<usize>,
    /// Fock mode cutoff.
    #[arg(long)]
    nf: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// json, csv or text.
    #[arg(long)]
    format: Option<String>,
    /// Any other config key, as `key=value`; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    sets: Vec<String>,
    /// Sweep one axis (K, q, p, Lambda or N) instead of running a suite; emits CSV.
    #[arg(long)]
    scan: Option<String>,
    /// Values of the swept axis, comma separated.
    #[arg(long, requires = "scan")]
    values: Option<String>,
}

fn build_config(cli: &Cli) -> Result<RunConfig, HarnessError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let mut overrides: Vec<(String, String)> = Vec::new();
    let mut add = |key: &str, value: Option<String>| {
        if let Some(v) = value {
            overrides.push((key.into(), v));
        }
    };
    add("suite", cli.suite.clone());
    add("window", cli.k.map(|v| v.to_string()));
    add("p", cli.p.clone());
    add("q", cli.q.clone());
    add("bandwidth", cli.bandwidth.map(|v| v.to_string()));
    add("nf", cli.nf.map(|v| v.to_string()));
    add("seed", cli.seed.map(|v| v.to_string()));
    add("out", cli.out.as_ref().map(|p| p.display().to_string()));
    add("format", cli.format.clone());
    for kv in &cli.sets {
        let (k, v) = kv.split_once('=').ok_or_else(|| HarnessError::Syntax {
            line: 0,
            message: format!("--set expects KEY=VALUE, got `{kv}`"),
        })?;
        overrides.push((k.trim().into(), v.trim().into()));
    }
    for (k, v) in overrides {
        cfg.set(&k, &v)?;
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<bool, HarnessError> {
    let cfg = build_config(cli)?;
    if let Some(axis) = &cli.scan {
        let axis: Axis = axis.parse()?;
        let values: Vec<f64> = cli
            .values
            .as_deref()
            .unwrap_or("")
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| {
                s.trim().parse().map_err(|_| HarnessError::BadValue {
                    key: "values".into(),
                    value: s.into(),
                    reason: "not a number".into(),
                })
            })
            .collect::<Result<_, _>>()?;
        let csv = rows_to_csv(&scan(&cfg, axis, &values)?);
        match &cfg.out {
            Some(p) => std::fs::write(p, csv)?,
            None => print!("{csv}"),
        }
        return Ok(true);
    }
    let report = run_suite(&cfg)?;
    report.emit(cfg.format, cfg.out.as_deref())?;
    if cfg.out.is_some() || cfg.format != Format::Text {
        let s = report.summary;
        eprintln!(
            "suite {}: {} checks, {} passed, {} failed",
            report.suite, s.total, s.passed, s.failed
        );
    }
    for c in report.failures() {
        eprintln!("FAIL {} (digest {})", c.id, c.inputs_digest);
    }
    Ok(report.all_passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("verify: {e}");
            ExitCode::from(2)
        }
    }
}
