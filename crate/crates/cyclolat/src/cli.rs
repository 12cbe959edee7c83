//! Command-line front end. Exit codes: 0 success, 1 verification or
//! computation failure, 2 usage error.

use std::fs;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::analysis;
use crate::cyclo::{self, StatsOptions};
use crate::error::{Error, Result};
use crate::hiprec;
use crate::oracle;
use crate::rational::{rat_to_f64, render_fraction};
use crate::roots::{self, Family};

/// Environment variable holding the default mantissa precision in bits.
pub const PRECISION_ENV: &str = "CYCLOLAT_PRECISION_BITS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "cyclolat",
    about = "Coherence, orthogonality defect and packing statistics of cyclotomic and root lattices"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Config {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Mantissa bits for high-precision real arithmetic (env CYCLOLAT_PRECISION_BITS).
    #[arg(long, global = true)]
    pub precision_bits: Option<usize>,
    /// Tolerance for numeric comparisons.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tolerance: f64,
    /// Node budget for exact short-vector enumeration.
    #[arg(long, global = true, default_value_t = oracle::DEFAULT_NODE_BUDGET)]
    pub node_budget: u64,
    /// Worker threads for bulk scans.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,
    /// Write output to a file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full statistics of the n-th cyclotomic lattice.
    Analyze { n: u64 },
    /// All cyclotomic lattices of a given rank, with extremum markers.
    Table {
        #[arg(long)]
        dim: u64,
    },
    /// Root lattice statistics (defaults to the whole standard table).
    Roots {
        #[arg(long, value_parser = parse_family)]
        family: Option<Family>,
        #[arg(long)]
        rank: Option<u64>,
    },
    /// Cross-check closed forms against brute force and enumeration.
    Verify {
        #[arg(long, conflicts_with = "range")]
        n: Option<u64>,
        /// Inclusive range "a..b".
        #[arg(long, value_parser = parse_range)]
        range: Option<(u64, u64)>,
        /// Also run exact short-vector enumeration per n.
        #[arg(long)]
        enumerate: bool,
    },
    /// Empirical average-order sums of C_n and A_n up to N.
    Asymptotics {
        #[arg(long)]
        max: u64,
    },
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    match s {
        "A" | "a" => Ok(Family::A),
        "D" | "d" => Ok(Family::D),
        "E" | "e" => Ok(Family::E),
        other => Err(format!("unknown family {other}, expected A, D or E")),
    }
}

fn parse_range(s: &str) -> std::result::Result<(u64, u64), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("range must look like 3..200, got {s}"))?;
    let lo: u64 = a.trim().parse().map_err(|e| format!("bad range start: {e}"))?;
    let hi: u64 = b.trim().parse().map_err(|e| format!("bad range end: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

impl Config {
    fn precision_bits(&self) -> usize {
        self.precision_bits
            .or_else(|| std::env::var(PRECISION_ENV).ok()?.parse().ok())
            .unwrap_or(hiprec::DEFAULT_PRECISION_BITS)
    }

    fn stats_options(&self) -> StatsOptions {
        StatsOptions {
            precision_bits: self.precision_bits(),
            ..StatsOptions::default()
        }
    }
}

/// Runs the CLI against explicit arguments, writing to the given sink.
/// Returns the process exit code.
pub fn run_with_writer<I, S>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders --help/--version through the error path too
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            if code == 0 {
                let _ = write!(out, "{e}");
            } else {
                eprintln!("{e}");
            }
            return code;
        }
    };
    let mut buf = Vec::new();
    let code = match dispatch(&cli, &mut buf) {
        Ok(()) => 0,
        Err(Error::InvalidInput(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    };
    let sink_result = match &cli.config.out {
        Some(path) => fs::write(path, &buf).map_err(|e| e.to_string()),
        None => out.write_all(&buf).map_err(|e| e.to_string()),
    };
    if let Err(e) = sink_result {
        eprintln!("error: {e}");
        return 1;
    }
    code
}

/// Entry point for `main`.
pub fn run() -> i32 {
    let mut stdout = std::io::stdout();
    run_with_writer(std::env::args_os(), &mut stdout)
}

const SIG: usize = 12;

fn dispatch(cli: &Cli, out: &mut Vec<u8>) -> Result<()> {
    let cfg = &cli.config;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .map_err(|e| Error::InvalidInput(e.to_string()))?;
    pool.install(|| match &cli.command {
        Command::Analyze { n } => cmd_analyze(*n, cfg, out),
        Command::Table { dim } => cmd_table(*dim, cfg, out),
        Command::Roots { family, rank } => cmd_roots(*family, *rank, cfg, out),
        Command::Verify { n, range, enumerate } => cmd_verify(*n, *range, *enumerate, cfg, out),
        Command::Asymptotics { max } => cmd_asymptotics(*max, cfg, out),
    })
}

fn cmd_analyze(n: u64, cfg: &Config, out: &mut Vec<u8>) -> Result<()> {
    let stats = cyclo::stats(n, &cfg.stats_options())?;
    match cfg.format {
        Format::Text => {
            let l = &stats.lattice;
            writeln!(out, "n = {}", l.n)?;
            writeln!(out, "rank phi(n) = {}", l.d)?;
            writeln!(out, "minimal vector pairs sHalf = {}", l.s_half)?;
            writeln!(out, "C = {}", render_fraction(&stats.max_coherence))?;
            writeln!(out, "A = {}", render_fraction(&stats.avg_coherence))?;
            writeln!(out, "discriminant = {}", stats.discriminant)?;
            writeln!(out, "nu = {}", hiprec::format_sig(&stats.defect_float, SIG))?;
            writeln!(
                out,
                "packing density = {}",
                hiprec::format_sig(&stats.packing_density, SIG)
            )?;
            match &stats.pi_float {
                Some(pi) => writeln!(out, "Pi = {}", hiprec::format_sig(pi, SIG))?,
                None => writeln!(out, "Pi = undefined (A = 0)")?,
            }
        }
        Format::Csv => {
            write!(out, "{}", analysis::rows_to_csv(std::slice::from_ref(&stats)))?;
        }
        Format::Json => {
            let v = analysis::stats_json_value(&stats);
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
        }
    }
    Ok(())
}

fn cmd_table(dim: u64, cfg: &Config, out: &mut Vec<u8>) -> Result<()> {
    let table = analysis::table_for_dimension(dim, &cfg.stats_options())?;
    match cfg.format {
        Format::Text => {
            writeln!(out, "cyclotomic lattices of rank {dim}")?;
            writeln!(out, "{:>6} {:>6} {:>8} {:>8} {:>16} {:>16}", "n", "sHalf", "C", "A", "nu", "Pi")?;
            for r in &table.rows {
                let pi = match &r.pi_float {
                    Some(p) => hiprec::format_sig(p, 7),
                    None => "--".into(),
                };
                writeln!(
                    out,
                    "{:>6} {:>6} {:>8} {:>8} {:>16} {:>16}",
                    r.lattice.n,
                    r.lattice.s_half,
                    render_fraction(&r.max_coherence),
                    render_fraction(&r.avg_coherence),
                    hiprec::format_sig(&r.defect_float, 7),
                    pi,
                )?;
            }
            writeln!(
                out,
                "markers: minC {:?}  minA {:?}  maxNu {:?}  maxPi {:?}",
                table.markers.min_c, table.markers.min_a, table.markers.max_nu, table.markers.max_pi
            )?;
        }
        Format::Csv => write!(out, "{}", analysis::table_to_csv(&table))?,
        Format::Json => writeln!(out, "{}", analysis::table_to_json(&table))?,
    }
    Ok(())
}

fn standard_root_cases() -> Vec<(Family, u64)> {
    let mut cases: Vec<(Family, u64)> = (2..=9).map(|r| (Family::A, r)).collect();
    cases.extend((4..=9).map(|r| (Family::D, r)));
    cases.extend((6..=8).map(|r| (Family::E, r)));
    cases
}

fn cmd_roots(family: Option<Family>, rank: Option<u64>, cfg: &Config, out: &mut Vec<u8>) -> Result<()> {
    let cases = match (family, rank) {
        (Some(f), Some(r)) => vec![(f, r)],
        (None, None) => standard_root_cases(),
        _ => {
            return Err(Error::InvalidInput(
                "--family and --rank must be given together".into(),
            ))
        }
    };
    let stats: Vec<roots::RootStats> = cases
        .into_iter()
        .map(|(f, r)| roots::bruteforce_stats(f, r))
        .collect::<Result<_>>()?;
    match cfg.format {
        Format::Text => {
            writeln!(
                out,
                "{:>6} {:>6} {:>6} {:>8} {:>12} {:>12} {:>12}",
                "family", "sHalf", "C", "A", "nuDef", "nuTable", "PiTable"
            )?;
            for s in &stats {
                writeln!(
                    out,
                    "{:>6} {:>6} {:>6} {:>8} {:>12.6} {:>12.6} {:>12.4}",
                    s.family.label(s.rank),
                    s.s_half,
                    render_fraction(&s.max_coherence),
                    render_fraction(&s.avg_coherence),
                    s.nu_def,
                    s.nu_table,
                    s.pi_table,
                )?;
            }
        }
        Format::Csv => write!(out, "{}", analysis::roots_to_csv(&stats))?,
        Format::Json => {
            let rows: Vec<serde_json::Value> = stats
                .iter()
                .map(|s| {
                    json!({
                        "family": s.family.label(s.rank),
                        "rank": s.rank,
                        "sHalf": s.s_half,
                        "C": render_fraction(&s.max_coherence),
                        "A": render_fraction(&s.avg_coherence),
                        "detGram": s.det_gram.to_string(),
                        "nuDef": s.nu_def,
                        "nuTable": s.nu_table,
                        "PiDef": s.pi_def,
                        "PiTable": s.pi_table,
                    })
                })
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&json!({"rows": rows})).expect("json"))?;
        }
    }
    Ok(())
}

fn cmd_verify(
    n: Option<u64>,
    range: Option<(u64, u64)>,
    enumerate: bool,
    cfg: &Config,
    out: &mut Vec<u8>,
) -> Result<()> {
    let (lo, hi) = match (n, range) {
        (Some(n), None) => (n, n),
        (None, Some(r)) => r,
        (None, None) => (3, 100),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };
    if lo < 3 {
        return Err(Error::InvalidInput("verification starts at n = 3".into()));
    }
    use rayon::prelude::*;
    let ns: Vec<u64> = (lo..=hi).collect();
    let results: Vec<(u64, Result<Option<u64>>)> = ns
        .par_iter()
        .map(|&n| {
            let r = (|| {
                // stats() already cross-checks closed forms vs brute force
                cyclo::stats(n, &cfg.stats_options())?;
                if enumerate || (lo == hi && numtheory_rank_small(n)) {
                    let check = oracle::verify_minimal_vectors(n, cfg.node_budget)?;
                    if !check.ok {
                        return Err(Error::Inconsistent(format!(
                            "enumeration mismatch at n = {n}: {check:?}"
                        )));
                    }
                    return Ok(Some(check.count));
                }
                Ok(None)
            })();
            (n, r)
        })
        .collect();
    let mut failures = 0u64;
    for (n, r) in results {
        match r {
            Ok(Some(count)) => writeln!(out, "n = {n}: closed form = brute force, enumeration count {count}")?,
            Ok(None) => writeln!(out, "n = {n}: closed form = brute force")?,
            Err(e) => {
                failures += 1;
                writeln!(out, "n = {n}: FAIL {e}")?;
            }
        }
    }
    if failures > 0 {
        return Err(Error::Inconsistent(format!("{failures} verification failures")));
    }
    Ok(())
}

// Enumeration is feasible when the rank is small; used to auto-enable it
// for single-n verification.
fn numtheory_rank_small(n: u64) -> bool {
    crate::numtheory::euler_phi(n).map(|d| d <= 16).unwrap_or(false)
}

fn cmd_asymptotics(max: u64, cfg: &Config, out: &mut Vec<u8>) -> Result<()> {
    let r = analysis::average_order_report(max)?;
    let sum_c = rat_to_f64(&r.sum_c);
    let sum_a = rat_to_f64(&r.sum_a);
    match cfg.format {
        Format::Text => {
            writeln!(out, "N = {}", r.max_n)?;
            writeln!(out, "sum C_n (3..=N)    = {sum_c:.6}")?;
            writeln!(out, "predicted 2 ln n/n = {:.6}", r.predicted_c)?;
            writeln!(out, "ratio              = {:.6}", r.ratio_c)?;
            writeln!(out, "sum A_n (3..=N)    = {sum_a:.6}")?;
            writeln!(out, "predicted ln2 ln n/n = {:.6}", r.predicted_a)?;
            writeln!(out, "ratio              = {:.6}", r.ratio_a)?;
        }
        Format::Csv => {
            writeln!(out, "N,sumC,predictedC,ratioC,sumA,predictedA,ratioA")?;
            writeln!(
                out,
                "{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}",
                r.max_n, sum_c, r.predicted_c, r.ratio_c, sum_a, r.predicted_a, r.ratio_a
            )?;
        }
        Format::Json => {
            let v = json!({
                "maxN": r.max_n,
                "sumC": sum_c,
                "predictedC": r.predicted_c,
                "ratioC": r.ratio_c,
                "sumA": sum_a,
                "predictedA": r.predicted_a,
                "ratioA": r.ratio_a,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
        }
    }
    Ok(())
}
