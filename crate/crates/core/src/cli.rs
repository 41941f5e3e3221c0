//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 a formula disagreed with its
//! cross-check, 3 the enumeration budget was exceeded.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::arith::Natural;
use crate::cyclecount::{CountTable, CycleCounter, TableCheckError};
use crate::enumerate::DEFAULT_BUDGET;
use crate::error::Error;
use crate::sumcount::{strings_with_sum, sum_distribution, SumCountQuery};
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "cyclic-orders", version, about = "Count strings by digit sum and by order under cyclic shifts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Number of strings with a given digit sum.
    CountSum(CountSumArgs),
    /// Cycles and strings per cycle order.
    Table(TableArgs),
    /// Compare the closed forms against exhaustive enumeration.
    Verify(VerifyArgs),
    /// Number of strings for every digit sum.
    SumDistribution(DistributionArgs),
}

#[derive(Debug, Args)]
struct Shape {
    /// Alphabet size A (symbols 0..A-1).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    alphabet: u64,
    /// String length N.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    length: u64,
}

#[derive(Debug, Args)]
struct CountSumArgs {
    #[command(flatten)]
    shape: Shape,
    /// Digit sum M.
    #[arg(long)]
    sum: u64,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[command(flatten)]
    shape: Shape,
    /// Restrict to strings with this digit sum.
    #[arg(long)]
    sum: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Recompute every row along the recursive route before printing.
    #[arg(long)]
    check: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    shape: Shape,
    /// Largest number of strings to enumerate.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Debug, Args)]
struct DistributionArgs {
    #[command(flatten)]
    shape: Shape,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// Serialized form of a [`CountTable`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OutputRecord {
    pub alphabet: u64,
    pub length: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sum: Option<u64>,
    pub rows: Vec<RowRecord>,
    pub total_strings: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowRecord {
    pub order: u64,
    pub cycles: String,
    pub strings: String,
}

impl From<&CountTable> for OutputRecord {
    fn from(table: &CountTable) -> Self {
        OutputRecord {
            alphabet: table.alphabet,
            length: table.length,
            sum: table.sum,
            rows: table
                .rows
                .iter()
                .map(|(&order, row)| RowRecord {
                    order,
                    cycles: row.cycles.to_string(),
                    strings: row.strings.to_string(),
                })
                .collect(),
            total_strings: table.total_strings().to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
struct DistributionRecord {
    alphabet: u64,
    length: u64,
    counts: Vec<SumRecord>,
    total_strings: String,
}

#[derive(Debug, Serialize)]
struct SumRecord {
    sum: u64,
    strings: String,
}

/// Right-aligned columns separated by two spaces.
fn aligned(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..columns)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(String::len).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, &w)| format!("{cell:>w$}"))
            .collect();
        out.push_str(&cells.join("  "));
        out.push('\n');
    }
    out
}

pub fn render_table(table: &CountTable, format: Format) -> String {
    match format {
        Format::Text => {
            let mut rows = vec![vec!["order".to_string(), "cycles".into(), "strings".into()]];
            for (n, row) in &table.rows {
                rows.push(vec![n.to_string(), row.cycles.to_string(), row.strings.to_string()]);
            }
            rows.push(vec![
                "total".into(),
                table.total_cycles().to_string(),
                table.total_strings().to_string(),
            ]);
            aligned(&rows)
        }
        Format::Csv => {
            let mut out = String::from("order,cycles,strings\n");
            for (n, row) in &table.rows {
                out.push_str(&format!("{},{},{}\n", n, row.cycles, row.strings));
            }
            out.push_str(&format!("total,{},{}\n", table.total_cycles(), table.total_strings()));
            out
        }
        Format::Json => {
            let mut out = serde_json::to_string(&OutputRecord::from(table)).expect("plain data serializes");
            out.push('\n');
            out
        }
    }
}

fn render_distribution(alphabet: u64, length: u64, counts: &[Natural], format: Format) -> String {
    let total: Natural = counts.iter().sum();
    match format {
        Format::Text => {
            let mut rows = vec![vec!["sum".to_string(), "strings".into()]];
            rows.extend(counts.iter().enumerate().map(|(m, c)| vec![m.to_string(), c.to_string()]));
            rows.push(vec!["total".into(), total.to_string()]);
            aligned(&rows)
        }
        Format::Csv => {
            let mut out = String::from("sum,strings\n");
            for (m, c) in counts.iter().enumerate() {
                out.push_str(&format!("{m},{c}\n"));
            }
            out.push_str(&format!("total,{total}\n"));
            out
        }
        Format::Json => {
            let record = DistributionRecord {
                alphabet,
                length,
                counts: counts
                    .iter()
                    .enumerate()
                    .map(|(m, c)| SumRecord { sum: m as u64, strings: c.to_string() })
                    .collect(),
                total_strings: total.to_string(),
            };
            let mut out = serde_json::to_string(&record).expect("plain data serializes");
            out.push('\n');
            out
        }
    }
}

fn exit_code(error: &Error) -> i32 {
    match error {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::NegativeCount { .. } => EXIT_MISMATCH,
        Error::ZeroArgument(_) | Error::SymbolOutOfRange { .. } | Error::EmptyWord => EXIT_USAGE,
    }
}

/// Parses `args` (program name first) and runs the command with the default
/// closed forms.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &CycleCounter::default(), out, err)
}

/// Like [`run`], evaluating every closed form through `counter`.
pub fn run_with<I, T>(args: I, counter: &CycleCounter, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };

    let result = match cli.command {
        Command::CountSum(a) => {
            strings_with_sum(SumCountQuery::new(a.shape.alphabet, a.shape.length, a.sum)).map(|c| {
                let _ = writeln!(out, "{c}");
                EXIT_OK
            })
        }
        Command::Table(a) => return table(a, counter, out, err),
        Command::Verify(a) => verify(a, counter, out),
        Command::SumDistribution(a) => sum_distribution(a.shape.alphabet, a.shape.length).map(|d| {
            let _ = write!(out, "{}", render_distribution(a.shape.alphabet, a.shape.length, &d.counts, a.format));
            EXIT_OK
        }),
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(err, "error: {e}");
        exit_code(&e)
    })
}

fn table(a: TableArgs, counter: &CycleCounter, out: &mut impl Write, err: &mut impl Write) -> i32 {
    let (alphabet, length) = (a.shape.alphabet, a.shape.length);
    let table = if a.check {
        counter.checked_cycle_table(alphabet, length, a.sum)
    } else {
        counter.cycle_table(alphabet, length, a.sum).map_err(TableCheckError::from)
    };
    match table {
        Ok(t) => {
            let _ = write!(out, "{}", render_table(&t, a.format));
            EXIT_OK
        }
        Err(TableCheckError::Count(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_MISMATCH
        }
    }
}

fn verify(a: VerifyArgs, counter: &CycleCounter, out: &mut impl Write) -> Result<i32, Error> {
    let report = verify::run(a.shape.alphabet, a.shape.length, a.budget, counter)?;
    for check in &report.checks {
        let _ = writeln!(out, "{check}");
    }
    let failed = report.checks.iter().filter(|c| !c.passed()).count();
    if failed == 0 {
        let _ = writeln!(out, "all {} checks passed (A={}, N={})", report.checks.len(), a.shape.alphabet, a.shape.length);
        Ok(EXIT_OK)
    } else {
        let _ = writeln!(out, "{} of {} checks failed (A={}, N={})", failed, report.checks.len(), a.shape.alphabet, a.shape.length);
        Ok(EXIT_MISMATCH)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("cyclic-orders").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn count_sum() {
        assert_eq!(call(&["count-sum", "--alphabet", "5", "--length", "12", "--sum", "0"]).1, "1\n");
        assert_eq!(call(&["count-sum", "--alphabet", "6", "--length", "2", "--sum", "7"]).1, "4\n");
        assert_eq!(call(&["count-sum", "--alphabet", "6", "--length", "2", "--sum", "5"]).1, "6\n");
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(call(&["count-sum", "--alphabet", "0", "--length", "3", "--sum", "1"]).0, EXIT_USAGE);
        assert_eq!(call(&["count-sum", "--alphabet", "3", "--length", "3"]).0, EXIT_USAGE);
        assert_eq!(call(&["table", "--alphabet", "x", "--length", "3"]).0, EXIT_USAGE);
        assert_eq!(call(&["table", "--alphabet", "2", "--length", "3", "--format", "xml"]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&[]).0, EXIT_USAGE);
        let (code, _, err) = call(&["verify", "--length", "3"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("--alphabet"));
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("sum-distribution"));
    }

    #[test]
    fn text_table_golden() {
        let (code, out, _) = call(&["table", "--alphabet", "2", "--length", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "order  cycles  strings\n    1       2        2\n    2       1        2\ntotal       3        4\n");
    }

    #[test]
    fn csv_and_json_tables() {
        let (_, csv, _) = call(&["table", "--alphabet", "2", "--length", "2", "--format", "csv"]);
        assert_eq!(csv, "order,cycles,strings\n1,2,2\n2,1,2\ntotal,3,4\n");
        let (_, json, _) = call(&["table", "--alphabet", "2", "--length", "2", "--format", "json"]);
        assert_eq!(
            json,
            r#"{"alphabet":2,"length":2,"rows":[{"order":1,"cycles":"2","strings":"2"},{"order":2,"cycles":"1","strings":"2"}],"total_strings":"4"}"#.to_owned() + "\n"
        );
        let (_, json, _) = call(&["table", "--alphabet", "2", "--length", "4", "--sum", "2", "--format", "json"]);
        assert!(json.starts_with(r#"{"alphabet":2,"length":4,"sum":2,"rows":"#));
    }

    #[test]
    fn distribution_golden() {
        let (code, out, _) = call(&["sum-distribution", "--alphabet", "2", "--length", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "  sum  strings\n    0        1\n    1        2\n    2        1\ntotal        4\n");
        let (_, csv, _) = call(&["sum-distribution", "--alphabet", "3", "--length", "1", "--format", "csv"]);
        assert_eq!(csv, "sum,strings\n0,1\n1,1\n2,1\ntotal,3\n");
        let (_, json, _) = call(&["sum-distribution", "--alphabet", "2", "--length", "2", "--format", "json"]);
        assert!(json.trim_end().ends_with(r#""total_strings":"4"}"#));
    }

    #[test]
    fn checked_table() {
        let (code, out, _) = call(&["table", "--alphabet", "3", "--length", "6", "--sum", "6", "--check"]);
        assert_eq!(code, 0);
        assert!(out.contains("total"));
    }

    #[test]
    fn verify_codes() {
        let (code, out, _) = call(&["verify", "--alphabet", "2", "--length", "1"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.lines().filter(|l| l.starts_with("PASS")).count() == 7);
        let (code, _, err) = call(&["verify", "--alphabet", "4", "--length", "20"]);
        assert_eq!(code, EXIT_BUDGET);
        assert!(err.contains("100000000"));
        assert_eq!(call(&["verify", "--alphabet", "2", "--length", "4", "--budget", "15"]).0, EXIT_BUDGET);
    }
}
