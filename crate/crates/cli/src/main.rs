//! quadlog: finite arithmetic invariants of quadratic fields at an odd
//! prime, and triviality verdicts for the associated Iwasawa modules.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use quadlog_cli::report::{compute_pair, ResultRecord, CSV_HEADER};
use quadlog_cli::scan::{run_scan, OutputFormat, ScanConfig};
use quadlog_cli::{knot_input, stats, verify};
use quadlog_core::invariants::{chevalley_ambiguous, ChevalleyInput};

#[derive(Parser)]
#[command(
    name = "quadlog",
    version,
    about = "class groups, ray class groups, logarithmic class groups and \
             Iwasawa-module triviality verdicts for quadratic fields at an odd prime"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full invariant report and verdicts for one (Δ, ℓ) pair
    Field(FieldArgs),
    /// Sweep a discriminant range against a set of primes, with caching
    Scan(ScanArgs),
    /// Summarize a record file (per-ℓ and aggregate frequencies)
    Stats(StatsArgs),
    /// Knot group of an abelian extension from a plain-text description
    Knot(KnotArgs),
    /// Chevalley ambiguous class number
    Chevalley(ChevalleyArgs),
    /// Run the self-verification suite
    Verify(VerifyArgs),
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct FieldArgs {
    /// fundamental discriminant
    #[arg(short = 'd', long = "discriminant", allow_hyphen_values = true)]
    discriminant: i64,
    /// odd prime that must split in the field
    #[arg(short = 'l', long = "ell")]
    ell: u64,
    /// precision exponent for the logarithmic class group
    #[arg(short = 'm', long = "precision", default_value_t = 8)]
    precision: u32,
    /// highest modulus exponent for the rationality window
    #[arg(long = "m-max", default_value_t = 12)]
    m_max: u32,
    /// machine output instead of the human report
    #[arg(long = "format", value_parser = parse_format)]
    format: Option<OutputFormat>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct ScanArgs {
    #[arg(long = "d-min", allow_hyphen_values = true)]
    d_min: i64,
    #[arg(long = "d-max", allow_hyphen_values = true)]
    d_max: i64,
    /// comma-separated odd primes
    #[arg(long = "ell-set", value_delimiter = ',', required = true)]
    ell_set: Vec<u64>,
    #[arg(short = 'm', long = "precision", default_value_t = 8)]
    precision: u32,
    #[arg(long = "m-max", default_value_t = 12)]
    m_max: u32,
    /// csv | jsonl
    #[arg(long = "format", value_parser = parse_format, default_value = "jsonl")]
    format: OutputFormat,
    /// append-only result cache keyed by (Δ, ℓ, m)
    #[arg(long = "cache")]
    cache: Option<PathBuf>,
    /// worker threads
    #[arg(long = "jobs")]
    jobs: Option<usize>,
    /// sort output by (|Δ|, Δ, ℓ) instead of completion order
    #[arg(long = "sort", default_value_t = false)]
    sort: bool,
}

#[derive(Args)]
struct StatsArgs {
    /// record file (CSV with header, or JSONL)
    file: PathBuf,
}

#[derive(Args)]
struct KnotArgs {
    /// input file: `G: d1,d2,...` then one line per decomposition subgroup
    file: PathBuf,
}

#[derive(Args)]
#[command(disable_help_flag = true)]
struct ChevalleyArgs {
    /// class number of the base field
    #[arg(short = 'h', long = "class-number")]
    class_number: u64,
    /// degree of the cyclic extension
    #[arg(short = 'n', long = "degree")]
    degree: u64,
    /// comma-separated ramification indices
    #[arg(short = 'e', long = "ram-indices", value_delimiter = ',')]
    ram_indices: Vec<u64>,
    /// unit norm index (E : E ∩ N)
    #[arg(short = 'u', long = "unit-index", default_value_t = 1)]
    unit_index: u64,
    #[arg(long = "help", action = clap::ArgAction::Help, help = "Print help")]
    help: Option<bool>,
}

#[derive(Args)]
struct VerifyArgs {
    /// reduced ranges and sample counts
    #[arg(long = "quick", default_value_t = false)]
    quick: bool,
    /// default (criteria 1-6) or full (adds 7-8)
    #[arg(long = "level", default_value = "default")]
    level: String,
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    match s {
        "csv" => Ok(OutputFormat::Csv),
        "jsonl" => Ok(OutputFormat::Jsonl),
        other => Err(format!("unknown format '{other}' (use csv or jsonl)")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.cmd {
        Cmd::Field(a) => cmd_field(a),
        Cmd::Scan(a) => cmd_scan(a),
        Cmd::Stats(a) => cmd_stats(a),
        Cmd::Knot(a) => cmd_knot(a),
        Cmd::Chevalley(a) => cmd_chevalley(a),
        Cmd::Verify(a) => cmd_verify(a),
    }
}

fn cmd_field(a: FieldArgs) -> anyhow::Result<ExitCode> {
    let report = compute_pair(a.discriminant, a.ell, a.precision, a.m_max)?;
    match a.format {
        None => print!("{}", report.human()),
        Some(OutputFormat::Csv) => {
            println!("{CSV_HEADER}");
            println!("{}", report.to_record().to_csv());
        }
        Some(OutputFormat::Jsonl) => println!("{}", report.to_record().to_jsonl()),
    }
    Ok(if report.any_undetermined() {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_scan(a: ScanArgs) -> anyhow::Result<ExitCode> {
    let cfg = ScanConfig {
        d_min: a.d_min,
        d_max: a.d_max,
        ells: a.ell_set,
        m: a.precision,
        m_max: a.m_max,
        format: a.format,
        cache: a.cache,
        jobs: a.jobs,
        sort: a.sort,
    };
    let records = run_scan(&cfg)?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if cfg.format == OutputFormat::Csv {
        writeln!(out, "{CSV_HEADER}")?;
    }
    for r in &records {
        match cfg.format {
            OutputFormat::Csv => writeln!(out, "{}", r.to_csv())?,
            OutputFormat::Jsonl => writeln!(out, "{}", r.to_jsonl())?,
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn read_records(path: &PathBuf) -> anyhow::Result<Vec<ResultRecord>> {
    let text = fs::read_to_string(path).with_context(|| format!("read {}", path.display()))?;
    let mut records = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line == CSV_HEADER {
            continue;
        }
        let rec = if line.starts_with('{') {
            serde_json::from_str(line)
                .with_context(|| format!("line {}: bad JSONL record", idx + 1))?
        } else {
            ResultRecord::from_csv(line)
                .with_context(|| format!("line {}: bad CSV record", idx + 1))?
        };
        records.push(rec);
    }
    Ok(records)
}

fn cmd_stats(a: StatsArgs) -> anyhow::Result<ExitCode> {
    let records = read_records(&a.file)?;
    let summary = stats::summarize(&records)?;
    print!("{}", summary.table());
    Ok(ExitCode::SUCCESS)
}

fn cmd_knot(a: KnotArgs) -> anyhow::Result<ExitCode> {
    let text = fs::read_to_string(&a.file).with_context(|| format!("read {}", a.file.display()))?;
    let input = knot_input::parse(&text)?;
    let k = quadlog_core::abelian::knot_group(&input.group, &input.subgroups)?;
    println!("{k}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_chevalley(a: ChevalleyArgs) -> anyhow::Result<ExitCode> {
    let input = ChevalleyInput {
        class_number: a.class_number,
        degree: a.degree,
        ramification_indices: a.ram_indices.into_iter().filter(|&e| e != 0).collect(),
        unit_norm_index: a.unit_index,
    };
    let v = chevalley_ambiguous(&input)?;
    println!("{v}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(a: VerifyArgs) -> anyhow::Result<ExitCode> {
    let full = match a.level.as_str() {
        "default" => false,
        "full" => true,
        other => anyhow::bail!("unknown level '{other}' (use default or full)"),
    };
    let reports = verify::run(full, a.quick);
    let mut ok = true;
    for r in &reports {
        println!("{}", r.line());
        ok &= r.passed;
    }
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
