use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use amconst_cli::corpus::{builtin_corpus, load_corpus_file};
use amconst_cli::format::{scan_to_string, serialize, Format};
use amconst_cli::run::{
    run, run_scan, RunOptions, ScanError, DEFAULT_NORM_MAX_ORDER, DEFAULT_SCAN_ORDER, DEFAULT_SEED, EXIT_CAP,
    EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE,
};
use amconst_cli::spec::{parse_group_spec, GroupSpec};
use amconst_core::chardeg::DEFAULT_ORACLE_CAP;
use amconst_core::fourier::DEFAULT_NORM_TOLERANCE;
use amconst_core::perm::{DEFAULT_ELEMENT_CAP, DEFAULT_SUBGROUP_CAP};
use amconst_core::CheckStatus;
use clap::{Parser, Subcommand};

/// Amenability constants of Fourier algebras of finite groups, with theorem checks.
#[derive(Parser)]
#[command(name = "amconst", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Largest group order to enumerate (for scan-idempotents: largest order to scan, default 12).
    #[arg(long, global = true)]
    max_order: Option<u64>,
    /// Largest group order for subgroup enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_SUBGROUP_CAP)]
    subgroup_cap: u64,
    /// Report values only, without theorem checks.
    #[arg(long, global = true)]
    no_checks: bool,
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct OracleArgs {
    /// Tolerance for the trace-norm comparisons.
    #[arg(long = "tol", default_value_t = DEFAULT_NORM_TOLERANCE, allow_negative_numbers = true)]
    tol: f64,
    /// Seed for the randomized degree oracle.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Largest |G| for the anti-diagonal norm oracle.
    #[arg(long, default_value_t = DEFAULT_NORM_MAX_ORDER)]
    norm_max_order: u64,
    /// Largest |G| for the regular-representation degree oracle.
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
    degree_oracle_cap: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one or more group specifications.
    Analyze {
        #[arg(required = true)]
        specs: Vec<String>,
        /// Also run the numerical oracles.
        #[arg(long)]
        oracles: bool,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Analyze the builtin corpus, a corpus file, or a selection of either.
    Corpus {
        /// Every corpus group (the default).
        #[arg(long, conflicts_with = "groups")]
        all: bool,
        /// Comma-separated labels to select.
        #[arg(long, value_delimiter = ',')]
        groups: Vec<String>,
        /// JSON list of {label, degree, generators} records replacing the builtin corpus.
        #[arg(long)]
        corpus_file: Option<PathBuf>,
        /// Also run the numerical oracles; cap-skipped oracles are reported, not fatal.
        #[arg(long)]
        oracles: bool,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Run both numerical oracles on one group; a cap that blocks either exits with 3.
    Oracle {
        spec: String,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Norms of all inverse-closed subset indicators of a small group.
    ScanIdempotents {
        spec: String,
        /// Stop after this many subsets.
        #[arg(long, default_value_t = 1 << 20)]
        max_subsets: usize,
        #[arg(long = "tol", default_value_t = DEFAULT_NORM_TOLERANCE)]
        tol: f64,
    },
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE as u8)
}

fn parse_specs(texts: &[String]) -> Result<Vec<GroupSpec>, String> {
    texts
        .iter()
        .map(|t| parse_group_spec(t).map_err(|e| format!("{t:?}: {e}")))
        .collect()
}

fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    // A closed pipe is not an error worth reporting.
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn options(cli: &Cli, oracle: &OracleArgs, oracles: bool) -> RunOptions {
    RunOptions {
        element_cap: cli.max_order.unwrap_or(DEFAULT_ELEMENT_CAP),
        subgroup_cap: cli.subgroup_cap,
        checks: !cli.no_checks,
        degree_oracle: oracles,
        degree_oracle_cap: oracle.degree_oracle_cap,
        norm_oracle: oracles,
        norm_max_order: oracle.norm_max_order,
        tolerance: oracle.tol,
        seed: oracle.seed,
        oracle_caps_fatal: false,
    }
}

fn run_table(cli: &Cli, specs: &[GroupSpec], opts: &RunOptions) -> ExitCode {
    match run(specs, opts) {
        Ok(table) => {
            emit(&serialize(&table, cli.format));
            for row in &table.rows {
                if let Some(reason) = &row.blocked {
                    eprintln!("{}: {reason}", row.label);
                }
            }
            ExitCode::from(table.exit_code() as u8)
        }
        Err(e) => usage(e),
    }
}

fn select(corpus: Vec<GroupSpec>, groups: &[String]) -> Result<Vec<GroupSpec>, String> {
    if groups.is_empty() {
        return Ok(corpus);
    }
    groups
        .iter()
        .map(|label| {
            corpus
                .iter()
                .find(|s| s.label == label.trim())
                .cloned()
                .ok_or_else(|| format!("no corpus group labelled {label:?}"))
        })
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return usage("--jobs must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .expect("thread pool is configured once");
    }
    match &cli.command {
        Command::Analyze {
            specs,
            oracles,
            oracle,
        } => match parse_specs(specs) {
            Ok(specs) => run_table(&cli, &specs, &options(&cli, oracle, *oracles)),
            Err(e) => usage(e),
        },
        Command::Corpus {
            all: _,
            groups,
            corpus_file,
            oracles,
            oracle,
        } => {
            let corpus = match corpus_file {
                Some(path) => match load_corpus_file(path) {
                    Ok(c) => c,
                    Err(e) => return usage(e),
                },
                None => builtin_corpus(),
            };
            match select(corpus, groups) {
                Ok(specs) => run_table(&cli, &specs, &options(&cli, oracle, *oracles)),
                Err(e) => usage(e),
            }
        }
        Command::Oracle { spec, oracle } => match parse_specs(std::slice::from_ref(spec)) {
            Ok(specs) => {
                let opts = RunOptions {
                    oracle_caps_fatal: true,
                    ..options(&cli, oracle, true)
                };
                run_table(&cli, &specs, &opts)
            }
            Err(e) => usage(e),
        },
        Command::ScanIdempotents {
            spec,
            max_subsets,
            tol,
        } => {
            let spec = match parse_group_spec(spec) {
                Ok(s) => s,
                Err(e) => return usage(format!("{spec:?}: {e}")),
            };
            let max_order = cli.max_order.unwrap_or(DEFAULT_SCAN_ORDER);
            match run_scan(&spec, DEFAULT_ELEMENT_CAP, max_order, *max_subsets, *tol) {
                Ok(report) => {
                    emit(&scan_to_string(&report, cli.format));
                    let truncated = report.scan.total_subsets > report.scan.entries.len() as u128;
                    let code = if cli.no_checks {
                        if truncated {
                            EXIT_CAP
                        } else {
                            EXIT_OK
                        }
                    } else if report.check.status == CheckStatus::Fail {
                        EXIT_CHECK_FAILED
                    } else if truncated {
                        EXIT_CAP
                    } else {
                        EXIT_OK
                    };
                    if truncated {
                        eprintln!(
                            "{}: scanned {} of {} subsets",
                            report.label,
                            report.scan.entries.len(),
                            report.scan.total_subsets
                        );
                    }
                    ExitCode::from(code as u8)
                }
                Err(ScanError::Cap(msg)) => {
                    eprintln!("{msg}");
                    ExitCode::from(EXIT_CAP as u8)
                }
                Err(ScanError::Other(msg)) => {
                    eprintln!("error: {msg}");
                    ExitCode::from(EXIT_CHECK_FAILED as u8)
                }
            }
        }
    }
}
