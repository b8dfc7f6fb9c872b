//! The `sumset` command line.
//!
//! Exit codes: 0 success, 2 theorem violation found by a scan, 3 conjecture
//! counterexample found by a scan, 64 usage error, 65 domain error, 74 i/o
//! failure writing a report.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::bounds::{audit, SetFamily};
use crate::error::Error;
use crate::explorer::{scan, ScanConfig, ScanMode};
use crate::inverse::{classify_extremal, Classification};
use crate::kernel::{sumset, Engine};
use crate::set::{parse_literal, FiniteIntSet, SumsetKind};
use crate::witness::{certified_count, s_family, t_family, u_family, TVariant, WitnessFamily, WitnessVerdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DOMAIN: i32 = 65;
pub const EXIT_IO: i32 = 74;

/// Environment variable holding the seed for randomized test tooling.
pub const SEED_ENV: &str = "SUMSET_SEED";

#[derive(Debug, Parser)]
#[command(name = "sumset", version, about = "Restricted signed sumsets of finite integer sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute an h-fold sumset.
    Compute(ComputeArgs),
    /// Audit |h^±A| against every applicable lower bound.
    Bound(SetArgs),
    /// Materialize and check the witness families.
    Witness(WitnessArgs),
    /// Classify a set against the inverse theorem covering (k, h).
    Classify(SetArgs),
    /// Exhaustively scan normalized sets.
    Scan(ScanArgs),
}

fn parse_set(s: &str) -> Result<FiniteIntSet, String> {
    parse_literal(s).map(|(set, _)| set).map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
struct SetArgs {
    /// Comma-separated integers, e.g. 1,3,5.
    #[arg(long, value_parser = parse_set, allow_hyphen_values = true)]
    set: FiniteIntSet,
    #[arg(long)]
    h: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct ComputeArgs {
    #[command(flatten)]
    common: SetArgs,
    #[arg(long, default_value = "restricted-signed", value_parser = |s: &str| s.parse::<SumsetKind>().map_err(|e| e.to_string()))]
    kind: SumsetKind,
    #[arg(long, default_value = "layered", value_parser = |s: &str| s.parse::<Engine>().map_err(|e| e.to_string()))]
    engine: Engine,
}

#[derive(Debug, Args)]
struct WitnessArgs {
    #[command(flatten)]
    common: SetArgs,
    /// Use the chain for sets with a_0 = 0.
    #[arg(long, conflicts_with = "superincreasing")]
    zero_in_a: bool,
    /// Also emit the extra elements of superincreasing sets.
    #[arg(long)]
    superincreasing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct FoldRange(usize, usize);

fn parse_fold_range(s: &str) -> Result<FoldRange, String> {
    let num = |t: &str| t.parse::<usize>().map_err(|_| format!("{t:?} is not a fold"));
    match s.split_once("..") {
        Some((a, b)) => Ok(FoldRange(num(a)?, num(b)?)),
        None => num(s).map(|h| FoldRange(h, h)),
    }
}

#[derive(Debug, Args)]
struct ScanArgs {
    /// verify:ID for theorems, conj:ID for conjectures.
    #[arg(long, value_parser = |s: &str| s.parse::<ScanMode>().map_err(|e| e.to_string()))]
    mode: ScanMode,
    #[arg(long)]
    k: usize,
    /// A fold N or an inclusive range A..B; defaults to every covered fold.
    #[arg(long, value_parser = parse_fold_range)]
    h: Option<FoldRange>,
    /// positive or zero.
    #[arg(long, value_parser = |s: &str| s.parse::<SetFamily>().map_err(|e| e.to_string()))]
    family: SetFamily,
    #[arg(long = "max")]
    max_element: i64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Report path; the extension selects JSON (.json) or CSV (.csv).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

enum Failure {
    Usage(String),
    Domain(Error),
    Io(String),
    /// The reader of stdout went away, as with `| head`.
    ClosedPipe,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Usage(e.to_string()),
            other => Failure::Domain(other),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure::ClosedPipe;
        }
        Failure::Io(e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Runs the CLI on `argv` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Compute(args) => compute(args, out),
        Command::Bound(args) => bound(args, out),
        Command::Witness(args) => witness(args, out),
        Command::Classify(args) => classify(args, out),
        Command::Scan(args) => run_scan(args, out, err),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_IO
        }
        Err(Failure::ClosedPipe) => EXIT_OK,
    }
}

fn print_json<T: Serialize>(out: &mut dyn Write, value: &T) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

#[derive(Serialize)]
struct ComputeOutput<'a> {
    set: &'a FiniteIntSet,
    h: usize,
    kind: SumsetKind,
    cardinality: usize,
    values: &'a [i64],
}

fn compute(args: ComputeArgs, out: &mut dyn Write) -> Outcome {
    let SetArgs { set, h, json } = args.common;
    let result = sumset(&set, h, args.kind, args.engine)?;
    if json {
        print_json(
            out,
            &ComputeOutput {
                set: &set,
                h,
                kind: args.kind,
                cardinality: result.cardinality(),
                values: &result.values,
            },
        )?;
    } else {
        writeln!(out, "{}", result.literal())?;
        writeln!(out, "cardinality {}", result.cardinality())?;
    }
    Ok(EXIT_OK)
}

fn bound(args: SetArgs, out: &mut dyn Write) -> Outcome {
    let report = audit(&args.set, args.h)?;
    if args.json {
        print_json(out, &report)?;
    } else {
        writeln!(out, "set {} h {} cardinality {}", report.set, report.h, report.cardinality)?;
        for b in &report.bounds {
            match b.cardinality {
                Some(c) => writeln!(out, "{}: {}, {} (|h^A| = {c})", b.id, b.value, b.status)?,
                None => writeln!(out, "{}: {}, {}", b.id, b.value, b.status)?,
            }
        }
        for note in &report.notes {
            writeln!(out, "note: {note}")?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct WitnessOutput {
    set: FiniteIntSet,
    h: usize,
    families: Vec<CheckedFamily>,
    /// Distinct values certified by the s-family, its negation and the
    /// t-family.
    certified: usize,
}

#[derive(Serialize)]
struct CheckedFamily {
    #[serde(flatten)]
    family: WitnessFamily,
    verdict: WitnessVerdict,
}

fn witness(args: WitnessArgs, out: &mut dyn Write) -> Outcome {
    let SetArgs { set, h, json } = args.common;
    let variant = if args.zero_in_a {
        TVariant::ZeroInA
    } else if args.superincreasing {
        TVariant::Superincreasing
    } else {
        TVariant::Positive
    };
    let mut families = vec![s_family(&set, h)?, t_family(&set, h, variant)?];
    if h == set.len() && set.is_positive() && set.len() >= 3 {
        families.push(u_family(&set)?);
    }
    let checked = families
        .into_iter()
        .map(|family| {
            let verdict = family.verify(&set)?;
            Ok(CheckedFamily { family, verdict })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let output = WitnessOutput {
        certified: certified_count(&set, h)?,
        set,
        h,
        families: checked,
    };
    if json {
        print_json(out, &output)?;
    } else {
        writeln!(out, "set {} h {} certified {}", output.set, output.h, output.certified)?;
        for c in &output.families {
            writeln!(out, "{:?}-family (fold {})", c.family.kind, c.family.fold)?;
            for r in &c.family.records {
                let rel = r.relation_to_next.map_or(String::new(), |r| format!(" {r}"));
                let anchor = if r.anchor { " (anchor)" } else { "" };
                writeln!(out, "  {} = {}{rel}{anchor}", r.label, r.value)?;
            }
            let v = &c.verdict;
            writeln!(
                out,
                "  chain {}, count {}/{} {}, membership {}",
                if v.chain_ok { "ok" } else { "BROKEN" },
                v.distinct_count,
                v.expected_count,
                if v.count_ok { "ok" } else { "MISMATCH" },
                if v.not_in_sumset.is_empty() { "ok" } else { "MISSING" },
            )?;
            for violation in &v.violations {
                writeln!(
                    out,
                    "  violated: {} = {} {} {} = {}",
                    violation.left, violation.left_value, violation.claimed, violation.right, violation.right_value
                )?;
            }
        }
    }
    let sound = output.families.iter().all(|c| c.verdict.is_sound());
    Ok(if sound { EXIT_OK } else { EXIT_DOMAIN })
}

fn classify(args: SetArgs, out: &mut dyn Write) -> Outcome {
    let classification = classify_extremal(&args.set, args.h)?;
    if args.json {
        print_json(out, &classification)?;
        return Ok(EXIT_OK);
    }
    match &classification {
        Classification::Covered(c) => {
            let family = c.matched_family.map_or("no family match".to_string(), |f| f.to_string());
            writeln!(
                out,
                "{}: {family}; cardinality {} {} bound {}; {}",
                c.theorem,
                c.cardinality,
                if c.equality { "=" } else { ">" },
                c.bound,
                if c.consistent { "consistent" } else { "INCONSISTENT" }
            )?;
        }
        Classification::NotCovered { k, h, .. } => {
            writeln!(out, "not covered by a proven inverse theorem (k = {k}, h = {h})")?;
        }
    }
    Ok(EXIT_OK)
}

fn run_scan(args: ScanArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    enum Format {
        Json,
        Csv,
    }
    let format = match &args.out {
        None => None,
        Some(path) => match path.extension().and_then(|e| e.to_str()) {
            Some("json") => Some(Format::Json),
            Some("csv") => Some(Format::Csv),
            _ => {
                return Err(Failure::Usage(format!(
                    "--out {} must end in .json or .csv",
                    path.display()
                )))
            }
        },
    };
    let mut config = ScanConfig::all_folds(args.k, args.family, args.max_element, args.mode)?;
    if let Some(FoldRange(lo, hi)) = args.h {
        config.h_min = lo;
        config.h_max = hi;
    }
    config.jobs = args.jobs;
    let report = scan(&config)?;

    if let (Some(path), Some(format)) = (&args.out, format) {
        let mut file = BufWriter::new(File::create(path)?);
        match format {
            Format::Json => writeln!(file, "{}", report.to_json())?,
            Format::Csv => report.write_csv(&mut file).map_err(|e| Failure::Io(e.to_string()))?,
        }
        file.flush()?;
    }
    if args.json {
        writeln!(out, "{}", report.to_json())?;
    } else {
        writeln!(
            out,
            "{}: scanned {} sets (closed form {}), {} equalities, {} failures, {} counterexamples, {} ms",
            report.config.mode,
            report.sets_scanned,
            report.expected_sets,
            report.equalities.len(),
            report.classification_failures.len(),
            report.conjecture_counterexamples.len(),
            report.wall_time_ms
        )?;
        for e in &report.equalities {
            let family = e.family.as_deref().unwrap_or("-");
            writeln!(out, "equality {} h={} |h^±A|={} {family}", e.set, e.h, e.cardinality)?;
        }
    }
    for f in &report.classification_failures {
        writeln!(
            err,
            "FAILURE {} {} h={} cardinality {} bound {} ({:?})",
            f.claim, f.set, f.h, f.cardinality, f.bound, f.reason
        )?;
    }
    for c in &report.conjecture_counterexamples {
        writeln!(
            err,
            "COUNTEREXAMPLE {} {} h={} cardinality {} bound {} ({:?}); naive and layered agree on {}; values {}",
            c.claim,
            c.set,
            c.h,
            c.cardinality,
            c.bound,
            c.kind,
            c.naive_cardinality,
            c.oracle_values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
        )?;
    }
    Ok(report.exit_code())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("sumset").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn fold_ranges() {
        assert_eq!(parse_fold_range("3"), Ok(FoldRange(3, 3)));
        assert_eq!(parse_fold_range("3..5"), Ok(FoldRange(3, 5)));
        assert!(parse_fold_range("3..").is_err());
        assert!(parse_fold_range("x").is_err());
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["compute", "--set", "1,,3", "--h", "2"]).0, EXIT_USAGE);
        assert_eq!(call(&["compute", "--set", "1,3", "--h", "2", "--frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["compute", "--set", "1,3", "--h", "2", "--kind", "weird"]).0, EXIT_USAGE);
        assert_eq!(call(&["nope"]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn domain_errors() {
        let (code, _, err) = call(&["bound", "--set", "-1,2", "--h", "1"]);
        assert_eq!(code, EXIT_DOMAIN);
        assert!(err.contains("domain violation"));
        assert_eq!(call(&["compute", "--set", "1,2", "--h", "3", "--kind", "restricted"]).0, EXIT_DOMAIN);
    }
}
