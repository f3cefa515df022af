//! Command-line front end. [`run`] takes the argument vector and two output
//! streams and returns the process exit code, so it can be driven in-process.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::coefficients::build_table;
use crate::constants::{evaluate, ConstantName};
use crate::error::{Error, Result};
use crate::exact_arith::set_cache_dir;
use crate::highprec::ratio_diagnostics;
use crate::identity_check::{check_identity, Angle, Identity, IdentityResidual, SWEEP_CSV_HEADER};
use crate::limits::{check, check_digits};
use crate::oracle::{verify, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Version tag of every JSON document the CLI emits.
pub const JSON_SCHEMA: u32 = 1;

/// Ceiling on `identity --terms`.
pub const MAX_FOURIER_TERMS: usize = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "halfpi",
    version,
    about = "Odd zeta, Dirichlet beta and related constants from π/2-power series"
)]
pub struct CliConfig {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    pub format: Format,

    /// Decimal digits after the point.
    #[arg(long, default_value_t = 30, global = true)]
    pub digits: usize,

    /// Directory for the Bernoulli cache (defaults to $HALFPI_CACHE_DIR).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one named constant.
    Constant {
        /// catalan, apery, alt_harmonic, eta_odd(k), beta_even(k), zeta_odd(k), zeta_even(n)
        name: String,
    },
    /// Dump the exact coefficients E_n(k) for k <= K, n <= N.
    Coeffs(TableArgs),
    /// Compare series values against independent oracles.
    Verify {
        /// Constant to check; all defaults when omitted.
        #[arg(conflicts_with = "name_flag")]
        name: Option<String>,
        #[arg(long = "name", id = "name_flag")]
        name_flag: Option<String>,
    },
    /// Term-ratio diagnostic |E_{n+1}(K)/E_n(K)|·(π/2)².
    Ratio(TableArgs),
    /// Residual of one Fourier identity.
    Identity {
        #[arg(long)]
        id: String,
        #[arg(long)]
        k: usize,
        /// Angle in (0, π): a decimal or a form like pi/2, 3pi/4.
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        /// Fourier partial-sum length.
        #[arg(long, default_value_t = 10_000)]
        terms: usize,
        /// Terms of the D-series on the right-hand side.
        #[arg(long, default_value_t = 80)]
        series_terms: usize,
    },
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
}

/// Parse `argv` (including the program name), execute, and write to the
/// given streams.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    if let Some(dir) = &config.cache_dir {
        set_cache_dir(Some(dir.clone()));
    }
    match execute(&config, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Exit code for an error that escaped a command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit { .. } => EXIT_RESOURCE,
        Error::UnknownConstant { .. } | Error::InvalidArgument(_) => EXIT_USAGE,
        _ => EXIT_VERIFY_FAILED,
    }
}

fn execute(config: &CliConfig, out: &mut dyn Write) -> Result<i32> {
    check_digits(config.digits)?;
    match &config.command {
        Command::Constant { name } => cmd_constant(config, name, out),
        Command::Coeffs(t) => cmd_coeffs(config, t, out),
        Command::Verify { name, name_flag } => {
            cmd_verify(config, name.as_deref().or(name_flag.as_deref()), out)
        }
        Command::Ratio(t) => cmd_ratio(config, t, out),
        Command::Identity {
            id,
            k,
            theta,
            terms,
            series_terms,
        } => cmd_identity(config, id, *k, theta, *terms, *series_terms, out),
    }
}

fn write_json(out: &mut dyn Write, mut body: Value) -> Result<()> {
    if let Value::Object(map) = &mut body {
        map.insert("schema".into(), json!(JSON_SCHEMA));
    }
    let text = serde_json::to_string_pretty(&body).expect("json values serialize");
    writeln!(out, "{text}")?;
    Ok(())
}

fn cmd_constant(config: &CliConfig, name: &str, out: &mut dyn Write) -> Result<i32> {
    let name: ConstantName = name.parse()?;
    let v = evaluate(name, config.digits)?;
    let digits = v.value.to_digits(config.digits);
    match config.format {
        Format::Plain => writeln!(out, "{digits}")?,
        Format::Csv => writeln!(out, "name,digits,value,terms_used\n{name},{},{digits},{}", config.digits, v.provenance.terms_used())?,
        Format::Json => write_json(
            out,
            json!({
                "name": name.to_string(),
                "digits": config.digits,
                "value": digits,
                "provenance": v.provenance,
            }),
        )?,
    }
    Ok(EXIT_OK)
}

fn table_dims(t: &TableArgs) -> Result<()> {
    if t.k == 0 || t.n == 0 {
        return Err(Error::invalid("--k and --n must be >= 1"));
    }
    Ok(())
}

fn cmd_coeffs(config: &CliConfig, t: &TableArgs, out: &mut dyn Write) -> Result<i32> {
    table_dims(t)?;
    let table = build_table(t.k, t.n)?;
    match config.format {
        Format::Plain | Format::Csv => out.write_all(table.to_csv().as_bytes())?,
        Format::Json => write_json(
            out,
            json!({ "k_max": t.k, "n_max": t.n, "entries": table.to_json_value() }),
        )?,
    }
    Ok(EXIT_OK)
}

fn cmd_verify(config: &CliConfig, name: Option<&str>, out: &mut dyn Write) -> Result<i32> {
    let names = match name {
        Some(n) => vec![n.parse::<ConstantName>()?],
        None => ConstantName::default_set(),
    };
    let digits = config.digits;
    let mut reports: Vec<VerificationReport> = names
        .par_iter()
        .map(|&n| verify(n, digits))
        .collect::<Result<_>>()?;
    reports.sort_by(|a, b| a.name.cmp(&b.name));
    let passed = reports.iter().all(|r| r.matched_digits >= digits);

    match config.format {
        Format::Plain => {
            for r in &reports {
                writeln!(
                    out,
                    "{:<4} {:<14} matched={:<4} terms={:<4} computed={}",
                    if r.matched_digits >= digits { "ok" } else { "FAIL" },
                    r.name,
                    r.matched_digits,
                    r.terms_used,
                    r.computed
                )?;
            }
        }
        Format::Csv => {
            writeln!(out, "name,digits,matched_digits,terms_used,computed,reference")?;
            for r in &reports {
                writeln!(
                    out,
                    "{},{digits},{},{},{},{}",
                    r.name, r.matched_digits, r.terms_used, r.computed, r.reference
                )?;
            }
        }
        Format::Json => write_json(
            out,
            json!({ "digits": digits, "passed": passed, "reports": reports }),
        )?,
    }
    Ok(if passed { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn cmd_ratio(config: &CliConfig, t: &TableArgs, out: &mut dyn Write) -> Result<i32> {
    table_dims(t)?;
    if t.n < 2 {
        return Err(Error::invalid("--n must be >= 2 for a ratio"));
    }
    let table = build_table(t.k, t.n)?;
    let points = ratio_diagnostics(&table, t.k)?;
    match config.format {
        Format::Plain | Format::Csv => {
            if config.format == Format::Csv {
                writeln!(out, "n,ratio")?;
            }
            let sep = if config.format == Format::Csv { "," } else { " " };
            for p in &points {
                writeln!(out, "{}{sep}{:.12}", p.n, p.ratio)?;
            }
        }
        Format::Json => write_json(out, json!({ "k": t.k, "points": points }))?,
    }
    Ok(EXIT_OK)
}

fn cmd_identity(
    config: &CliConfig,
    id: &str,
    k: usize,
    theta: &str,
    terms: usize,
    series_terms: usize,
    out: &mut dyn Write,
) -> Result<i32> {
    let identity: Identity = id.parse()?;
    let theta = Angle::parse(theta)?;
    check("fourier terms", terms, MAX_FOURIER_TERMS)?;
    if series_terms == 0 {
        return Err(Error::invalid("--series-terms must be >= 1"));
    }
    let r = check_identity(identity, k, &theta, terms, series_terms)?;
    write_residual(config.format, &r, out)?;
    Ok(EXIT_OK)
}

fn write_residual(format: Format, r: &IdentityResidual, out: &mut dyn Write) -> Result<()> {
    let residual = r.residual.to_scientific(4);
    match format {
        Format::Plain => writeln!(
            out,
            "{} k={} theta={} fourier_terms={} series_terms={} residual={residual}",
            r.identity,
            r.k,
            r.theta.label(),
            r.fourier_terms,
            r.series_terms
        )?,
        Format::Csv => writeln!(out, "{SWEEP_CSV_HEADER}\n{}", r.csv_row())?,
        Format::Json => write_json(
            out,
            json!({
                "identity": r.identity,
                "k": r.k,
                "theta": r.theta.label(),
                "fourier_terms": r.fourier_terms,
                "series_terms": r.series_terms,
                "residual": residual,
            }),
        )?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("halfpi").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn coeffs_csv_example() {
        let (code, out, _) = run_str(&["coeffs", "--k", "1", "--n", "1", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out, "k,n,numerator,denominator\n1,1,1,4\n");
    }

    #[test]
    fn constant_plain() {
        let (code, out, _) = run_str(&["constant", "catalan", "--digits", "30"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "0.915965594177219015054603514932");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_str(&["constant", "nope"]).0, EXIT_USAGE);
        assert!(run_str(&["constant", "nope"]).2.contains("catalan, apery"));
        assert_eq!(run_str(&["bogus"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["constant", "apery", "--digits", "0"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["identity", "--id", "S3", "--k", "1", "--theta", "1.0"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn resource_limit() {
        assert_eq!(run_str(&["constant", "apery", "--digits", "5000"]).0, EXIT_RESOURCE);
    }

    #[test]
    fn json_has_schema() {
        let (code, out, _) = run_str(&["ratio", "--k", "2", "--n", "4", "--format", "json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["points"].as_array().unwrap().len(), 3);
    }
}
