//! The `qgen` command line: single queries, tables and verification suites.
//!
//! [`run`] does all the work and returns what a process would print, so the
//! binary is a thin wrapper and tests can drive the CLI in-process.

pub mod config;
pub mod query;
pub mod table;

use std::path::PathBuf;

use clap::{Args, Parser};
use qgen_core::verify::{run_suite, Suite, VerifyConfig};

use config::{Config, CONFIG_ENV};
use query::{CliError, Family, Params};
use table::{Format, Range, TableSpec};

/// What a run of the program produced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

const USAGE: &str = "\
usage:
  qgen <family> [--n --m --h --k --x --q --w --t] [--mode exact|symbolic|padic|series] [--symbolic] [--p --N --M]
  qgen table --family <family> --range n=0..8 [--range2 k=0..3] [--format json|csv] [--out PATH] [fixed flags]
  qgen verify <suite> [--padic-level N] [--json]

families: qnum qbinom euler genocchi bernoulli frobenius qeuler qgenocchi twisted-euler twisted-genocchi gf
suites:   qcore classical padic qeuler qgenocchi limits all
config:   JSON file named by QGEN_CONFIG with keys p, N, M, term_budget, cesaro_tolerance
";

#[derive(Parser)]
#[command(name = "qgen", no_binary_name = true, disable_version_flag = true)]
struct QueryCli {
    #[command(flatten)]
    params: Params,
}

#[derive(Parser)]
#[command(name = "qgen table", no_binary_name = true)]
struct TableCli {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    #[arg(long)]
    range: Range,
    #[arg(long)]
    range2: Option<Range>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    params: Params,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_parser = parse_suite)]
    suite: Suite,
    #[arg(long)]
    padic_level: Option<u32>,
    /// Print the JSON report instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Parser)]
#[command(name = "qgen verify", no_binary_name = true)]
struct VerifyCli {
    #[command(flatten)]
    args: VerifyArgs,
}

fn parse_family(s: &str) -> Result<Family, String> {
    Family::parse(s).ok_or_else(|| format!("unknown family {s:?}"))
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    Suite::parse(s).map_err(|e| e.to_string())
}

fn clap_outcome(e: clap::Error) -> Outcome {
    let text = e.render().to_string();
    if e.use_stderr() {
        Outcome::fail(2, text)
    } else {
        Outcome::ok(text)
    }
}

fn error_outcome(e: CliError) -> Outcome {
    Outcome::fail(e.exit_code(), format!("{e}\n"))
}

/// Runs the program on `argv` (without the program name), reading the config
/// file path from `config_path` rather than the environment.
pub fn run_with_config(argv: &[String], config_path: Option<&str>) -> Outcome {
    let Some(first) = argv.first() else {
        return Outcome::fail(2, USAGE.to_string());
    };
    if first == "--help" || first == "-h" || first == "help" {
        return Outcome::ok(USAGE.to_string());
    }
    let cfg = match Config::load(config_path) {
        Ok(cfg) => cfg,
        Err(e) => return Outcome::fail(2, format!("usage error: {e}\n")),
    };
    let rest = &argv[1..];
    match first.as_str() {
        "table" => run_table(rest, &cfg),
        "verify" => run_verify(rest, &cfg),
        name => match Family::parse(name) {
            Some(family) => run_query(family, rest, &cfg),
            None => Outcome::fail(
                2,
                format!("usage error: unknown family or command {name:?}\n\n{USAGE}"),
            ),
        },
    }
}

/// Runs the program on `argv` (without the program name).
pub fn run(argv: &[String]) -> Outcome {
    let path = std::env::var(CONFIG_ENV).ok();
    run_with_config(argv, path.as_deref())
}

fn run_query(family: Family, argv: &[String], cfg: &Config) -> Outcome {
    let cli = match QueryCli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => return clap_outcome(e),
    };
    match query::evaluate(family, &cli.params, cfg) {
        Ok(e) => {
            let doc = query::render(family, &cli.params, &e);
            Outcome::ok(format!("{doc}\n"))
        }
        Err(e) => error_outcome(e),
    }
}

fn run_table(argv: &[String], cfg: &Config) -> Outcome {
    let cli = match TableCli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => return clap_outcome(e),
    };
    let spec = TableSpec {
        family: cli.family,
        fixed: cli.params,
        ranges: std::iter::once(cli.range).chain(cli.range2).collect(),
        format: cli.format,
    };
    let bytes = match table::render(&spec, cfg) {
        Ok(b) => b,
        Err(e) => return error_outcome(e),
    };
    match cli.out {
        Some(path) => match std::fs::write(&path, &bytes) {
            Ok(()) => Outcome::ok(String::new()),
            Err(e) => Outcome::fail(1, format!("error: cannot write {}: {e}\n", path.display())),
        },
        None => Outcome::ok(String::from_utf8(bytes).expect("utf-8 output")),
    }
}

fn run_verify(argv: &[String], cfg: &Config) -> Outcome {
    let cli = match VerifyCli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => return clap_outcome(e),
    };
    let mut vcfg = VerifyConfig {
        p: cfg.p,
        series_truncation: cfg.truncation,
        cesaro_tolerance: cfg.cesaro_tolerance.clone(),
        term_budget: cfg.term_budget,
        ..VerifyConfig::default()
    }
    .with_padic_level(cfg.level);
    if let Some(level) = cli.args.padic_level {
        if level == 0 {
            return Outcome::fail(2, "usage error: --padic-level must be at least 1\n".into());
        }
        vcfg = vcfg.with_padic_level(level);
    }
    let report = run_suite(cli.args.suite, &vcfg);
    let text = if cli.args.json {
        format!(
            "{}\n",
            serde_json::to_string_pretty(&report.to_json()).expect("plain json")
        )
    } else {
        format!("{report}\n")
    };
    Outcome {
        code: if report.all_passed() { 0 } else { 1 },
        stdout: text,
        stderr: String::new(),
    }
}
