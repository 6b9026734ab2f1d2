//! `axby` — enumerate, scan, bound, and verify the solutions of
//! (X + 1/x)(Y + 1/y) = n.
//!
//! Data goes to standard output, progress and aggregates to standard
//! error. Exit codes: 0 success, 1 a verification suite failed (or an
//! internal error), 2 usage error.

use anyhow::Context;
use axby_core::bounds::{bound_report, BoundParams};
use axby_core::families::{extremal_k_family, granville, skalba, witness_families};
use axby_core::scan::{
    run_suite, scan_range, sum_f_ratio, ScanMode, ScanOptions, ScanRecord, Suite,
};
use axby_core::solver::enumerate_solutions;
use clap::{Parser, Subcommand};
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "axby", version, about, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the solutions of one n
    Solve {
        n: u64,
        /// Print only f(n)
        #[arg(long, conflicts_with = "list")]
        count: bool,
        /// Print every solution as [X,x,Y,y] with its witnesses
        #[arg(long)]
        list: bool,
        /// Also print the multiplicity profile M(n,k)
        #[arg(long)]
        profile: bool,
    },
    /// Scan a range, printing one CSV record per value and a JSON
    /// aggregate to standard error
    Scan {
        lo: u64,
        hi: u64,
        /// full (all statistics), exceed (only bound-exceeding values),
        /// or figure (counts only)
        #[arg(long, default_value = "full", value_parser = parse_scan_mode)]
        mode: ScanMode,
        /// Worker threads; the output does not depend on this
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Persist completed chunks to this file as the scan progresses
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Skip the chunks already present in the checkpoint file
        #[arg(long, requires = "checkpoint")]
        resume: bool,
    },
    /// Evaluate every bound quantity at one (n, α) as JSON
    Bounds {
        n: u64,
        #[arg(long)]
        alpha: f64,
        /// Divisor-ratio constant for the h margin (defaults to the
        /// certified champion ceiling)
        #[arg(long)]
        c: Option<f64>,
    },
    /// The 501-row n,f table for n in [10000, 10500]
    Figure1 {
        /// Write the CSV here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Constructive solution families
    #[command(subcommand)]
    Families(FamiliesCommand),
    /// Aggregate statistics of the counting function
    #[command(subcommand)]
    Stats(StatsCommand),
    /// Run one named verification suite; exit 1 if it fails
    Verify { suite: String },
}

#[derive(Subcommand)]
enum FamiliesCommand {
    /// Certificate n = k + Π p with 2^{π−1} witnessed solutions
    Granville {
        #[arg(long)]
        k: u64,
        /// Upper bound on the primes ≡ −1 (mod k) entering the product
        #[arg(long)]
        max_prime: u64,
    },
    /// Two-squares family n = 2m² + 2m + 5 with M(n,4) = 0
    Skalba {
        #[arg(long)]
        m: u64,
    },
    /// Extremal family [1,2,2t−1,3] of n = 3t−1 with the largest
    /// possible level k = t
    ThreeT {
        #[arg(long)]
        t: u64,
    },
    /// Both divisor-condition witness families of level k for one n
    Remark1 {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
    },
}

#[derive(Subcommand)]
enum StatsCommand {
    /// Σ f(n) over [2, T] and its normalization by T(ln T)³
    Sumf {
        #[arg(long)]
        t: u64,
    },
}

fn parse_scan_mode(s: &str) -> Result<ScanMode, String> {
    s.parse().map_err(|e: axby_core::Error| e.to_string())
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        // A consumer that stops reading (scan ... | head) is not an
        // error; exit quietly like any well-behaved pipeline stage.
        Err(err) if is_broken_pipe(&err) => 0,
        Err(err) => {
            eprintln!("error: {err:#}");
            match err.downcast_ref::<axby_core::Error>() {
                Some(axby_core::Error::Domain(_)) => 2,
                _ => 1,
            }
        }
    };
    std::process::exit(code);
}

fn is_broken_pipe(err: &anyhow::Error) -> bool {
    err.chain().any(|cause| {
        // The library's Io variant is transparent, so the io::Error inside it
        // never shows up as its own element of the chain; match both shapes.
        let io = match cause.downcast_ref::<axby_core::Error>() {
            Some(axby_core::Error::Io(io)) => Some(io),
            _ => cause.downcast_ref::<std::io::Error>(),
        };
        io.is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
    })
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let code = dispatch(cli, &mut out)?;
    out.flush()?;
    Ok(code)
}

fn dispatch(cli: Cli, out: &mut impl Write) -> anyhow::Result<i32> {
    match cli.command {
        Command::Solve { n, count, list, profile } => {
            let set = enumerate_solutions(n)?;
            if count {
                writeln!(out, "{}", set.f())?;
            } else if list {
                for s in &set.solutions {
                    writeln!(out, "{s} a={} b={} k={}", s.a, s.b, s.k)?;
                }
            } else {
                writeln!(out, "f({n}) = {}", set.f())?;
            }
            if profile {
                for (k, m) in &set.k_profile().entries {
                    writeln!(out, "M({n},{k}) = {m}")?;
                }
            }
            Ok(0)
        }
        Command::Scan { lo, hi, mode, jobs, checkpoint, resume } => {
            let opts = ScanOptions { lo, hi, mode, jobs, checkpoint, resume };
            writeln!(out, "{}", ScanRecord::CSV_HEADER)?;
            let aggregate = scan_range(&opts, |record| {
                writeln!(out, "{}", record.csv_row()).map_err(axby_core::Error::from)
            })?;
            out.flush()?;
            eprintln!("{}", serde_json::to_string_pretty(&aggregate)?);
            Ok(0)
        }
        Command::Bounds { n, alpha, c } => {
            let params = match c {
                Some(c) => BoundParams::with_c(n, alpha, c),
                None => BoundParams::new(n, alpha),
            };
            let report = bound_report(&params)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
            Ok(0)
        }
        Command::Figure1 { out: path } => {
            let opts = ScanOptions {
                lo: 10_000,
                hi: 10_500,
                mode: ScanMode::Figure,
                jobs: 1,
                checkpoint: None,
                resume: false,
            };
            let mut csv = String::from("n,f\n");
            scan_range(&opts, |record| {
                csv.push_str(&format!("{},{}\n", record.n, record.f));
                Ok(())
            })?;
            match path {
                Some(path) => std::fs::write(&path, csv)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => write!(out, "{csv}")?,
            }
            Ok(0)
        }
        Command::Families(family) => {
            let json = match family {
                FamiliesCommand::Granville { k, max_prime } => {
                    serde_json::to_string_pretty(&granville(k, max_prime)?)?
                }
                FamiliesCommand::Skalba { m } => serde_json::to_string_pretty(&skalba(m)?)?,
                FamiliesCommand::ThreeT { t } => {
                    serde_json::to_string_pretty(&extremal_k_family(t)?)?
                }
                FamiliesCommand::Remark1 { n, k } => {
                    serde_json::to_string_pretty(&witness_families(n, k)?)?
                }
            };
            writeln!(out, "{json}")?;
            Ok(0)
        }
        Command::Stats(StatsCommand::Sumf { t }) => {
            let ratio = sum_f_ratio(t, 1)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&ratio)?)?;
            Ok(0)
        }
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            let report = run_suite(suite)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
            Ok(if report.passed { 0 } else { 1 })
        }
    }
}
