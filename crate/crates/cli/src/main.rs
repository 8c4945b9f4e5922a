use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use gsp4kit_cli::{dump, run_suite, ConfigError, Status, SuiteConfig};

#[derive(Parser)]
#[command(name = "gsp4kit", version, about = "Exact verification of the gsp4 kernel identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and write a JSON report.
    Verify {
        /// JSON or TOML suite configuration.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Run only these suites (repeatable); overrides the config list.
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// Report path; `-` or absent prints to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(short, long, action = clap::ArgAction::Count)]
        verbose: u8,
    },
    /// Write structure.json and uea.json into a directory.
    Dump {
        #[arg(long)]
        out: PathBuf,
    },
}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

fn config_exit(e: &ConfigError) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        ConfigError::Io { .. } => ExitCode::from(EXIT_IO),
        _ => ExitCode::from(EXIT_USAGE),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match cli.command {
        Command::Verify { config, suites, out, max_degree, verbose } => {
            let mut cfg = match &config {
                Some(p) => match SuiteConfig::load(p) {
                    Ok(c) => c,
                    Err(e) => return config_exit(&e),
                },
                None => SuiteConfig::full(),
            };
            if !suites.is_empty() {
                cfg.suites = suites;
            }
            if let Some(d) = max_degree {
                cfg.max_degree = d;
            }
            if let Some(o) = out {
                cfg.out = Some(o);
            }
            cfg.verbosity = cfg.verbosity.max(verbose);
            if let Err(e) = cfg.validate() {
                return config_exit(&e);
            }
            let t = Instant::now();
            let report = run_suite(&cfg);
            for c in &report.checks {
                if c.status == Status::Fail || cfg.verbosity > 0 {
                    eprintln!("{:<5} {}  [{}]", format!("{:?}", c.status).to_uppercase(), c.id, c.anchor);
                }
            }
            eprintln!(
                "{} checks: {} passed, {} failed, {} info ({:.1} s)",
                report.summary.checks,
                report.summary.passed,
                report.summary.failed,
                report.summary.info,
                t.elapsed().as_secs_f64()
            );
            let json = report.to_json();
            match cfg.out.as_deref() {
                Some(p) if p.as_os_str() != "-" => {
                    if let Err(e) = std::fs::write(p, json + "\n") {
                        eprintln!("error: cannot write {}: {e}", p.display());
                        return ExitCode::from(EXIT_IO);
                    }
                }
                _ => println!("{json}"),
            }
            if report.passed { ExitCode::SUCCESS } else { ExitCode::from(EXIT_FAIL) }
        }
        Command::Dump { out } => match dump::dump_structure(&out) {
            Ok(files) => {
                for f in files {
                    eprintln!("wrote {}", f.display());
                }
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_IO)
            }
        },
    }
}
