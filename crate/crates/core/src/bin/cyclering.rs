use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cyclering::dispatch::{dispatch, Command, Record};
use cyclering::grid::{bench, bench_instances, three_way_check};
use cyclering::{parse_equation, parse_expression, Error};

/// Decide, certify and enumerate solutions of cycle equations such as
/// `C(1,4)*X = C(12,12)`. `C(count,length)` is `count` disjoint cycles of
/// length `length`.
#[derive(Debug, Parser)]
#[command(name = "cyclering", version)]
struct Cli {
    /// Print one JSON record per line instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Decide solvability and print a witness or refutation.
    Decide {
        #[command(flatten)]
        input: EquationInput,
        /// Also evaluate the literal scaled-coefficient criterion and report it.
        #[arg(long)]
        paper_strict: bool,
    },
    /// List the solutions of a basic equation C(1,p)*X = C(n,q).
    Enumerate {
        #[command(flatten)]
        input: EquationInput,
        /// Stop after K solutions.
        #[arg(long, value_name = "K")]
        limit: Option<usize>,
    },
    /// Count the solutions of a basic equation.
    Count {
        #[command(flatten)]
        input: EquationInput,
    },
    /// Evaluate a ground expression to canonical form.
    Eval {
        /// Expression text; read from stdin when omitted.
        expression: Option<String>,
    },
    /// Cross-check the three deciders on the full (p, q, n) grid.
    OracleCheck {
        #[arg(long, value_name = "P")]
        p_max: u64,
        /// Defaults to --p-max.
        #[arg(long, value_name = "Q")]
        q_max: Option<u64>,
        #[arg(long, value_name = "N")]
        n_max: u64,
        #[arg(long, value_name = "W")]
        workers: Option<usize>,
    },
    /// Time the gcd decider against the divisor-based decider.
    Bench {
        #[arg(long, default_value_t = 1000)]
        repeats: u32,
    },
}

#[derive(Debug, Args)]
struct EquationInput {
    /// Equation text; read from stdin when omitted and no numeric flags are given.
    equation: Option<String>,
    #[arg(long, conflicts_with = "equation", requires_all = ["q", "n"])]
    p: Option<u64>,
    #[arg(long, conflicts_with = "equation", requires_all = ["p", "n"])]
    q: Option<u64>,
    #[arg(long, conflicts_with = "equation", requires_all = ["p", "q"])]
    n: Option<u64>,
    /// Coefficient multiplicity, for C(m,p)*X = C(n,q).
    #[arg(long, conflicts_with = "equation", requires_all = ["p", "q", "n"])]
    m: Option<u64>,
}

impl EquationInput {
    fn text(&self) -> Result<String, Error> {
        if let (Some(p), Some(q), Some(n)) = (self.p, self.q, self.n) {
            let m = self.m.unwrap_or(1);
            if [m, p, q, n].contains(&0) {
                return Err(Error::InvalidInput(
                    "--m, --p, --q and --n must be positive".into(),
                ));
            }
            return Ok(format!("C({m},{p})*X = C({n},{q})"));
        }
        match &self.equation {
            Some(text) => Ok(text.clone()),
            None => read_stdin(),
        }
    }
}

fn read_stdin() -> Result<String, Error> {
    let mut buf = String::new();
    io::stdin()
        .read_to_string(&mut buf)
        .map_err(|e| Error::InvalidInput(format!("cannot read stdin: {e}")))?;
    Ok(buf)
}

fn emit_json<T: serde::Serialize>(out: &mut impl Write, value: &T) -> io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)
}

fn print_record(out: &mut impl Write, record: &Record) -> io::Result<()> {
    if let Some(eq) = &record.equation {
        writeln!(
            out,
            "equation: {eq} [{}]",
            record.classification.unwrap_or("?")
        )?;
    }
    if let Some(v) = record.verdict {
        writeln!(
            out,
            "verdict: {}",
            if v { "solvable" } else { "unsolvable" }
        )?;
    }
    if let Some(w) = &record.witness {
        writeln!(out, "witness: {w}")?;
    }
    if let Some(r) = &record.refutation {
        writeln!(out, "refutation: {r}")?;
    }
    if let Some(pi_f) = record.pi_f {
        writeln!(out, "pi_f: {pi_f}")?;
    }
    if let Some(e) = record.e {
        writeln!(out, "e: {e}")?;
    }
    if let Some(strict) = record.paper_strict_verdict {
        let note = if Some(strict) == record.verdict {
            "agrees"
        } else {
            "DISAGREES"
        };
        writeln!(out, "paper-strict verdict: {strict} ({note})")?;
    }
    if let Some(c) = record.gcd_calls {
        writeln!(out, "gcd_calls: {c}")?;
    }
    writeln!(out, "elapsed_ns: {}", record.elapsed_ns)
}

fn run(cli: Cli, out: &mut impl Write) -> Result<ExitCode, Error> {
    let io_err = |e: io::Error| Error::InvalidInput(format!("cannot write output: {e}"));
    let verdict_code = |ok: bool| {
        if ok {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        }
    };
    match cli.command {
        Cmd::Decide {
            input,
            paper_strict,
        } => {
            let equation = parse_equation(input.text()?.trim())?;
            let record = dispatch(&equation, Command::Decide { paper_strict })?;
            if let Some(strict) = record.paper_strict_verdict {
                if Some(strict) != record.verdict {
                    eprintln!("note: the paper-strict criterion disagrees with the exact verdict");
                }
            }
            if cli.json {
                emit_json(out, &record).map_err(io_err)?;
            } else {
                print_record(out, &record).map_err(io_err)?;
            }
            Ok(verdict_code(record.verdict == Some(true)))
        }
        Cmd::Enumerate { input, limit } => {
            let equation = parse_equation(input.text()?.trim())?;
            let record = dispatch(&equation, Command::Enumerate { limit })?;
            if cli.json {
                emit_json(out, &record).map_err(io_err)?;
            } else {
                for x in record.solutions.iter().flatten() {
                    writeln!(out, "{x}").map_err(io_err)?;
                }
            }
            Ok(verdict_code(record.count.unwrap_or(0) > 0))
        }
        Cmd::Count { input } => {
            let equation = parse_equation(input.text()?.trim())?;
            let record = dispatch(&equation, Command::Count)?;
            if cli.json {
                emit_json(out, &record).map_err(io_err)?;
            } else {
                writeln!(out, "{}", record.count.unwrap_or(0)).map_err(io_err)?;
            }
            Ok(verdict_code(record.count.unwrap_or(0) > 0))
        }
        Cmd::Eval { expression } => {
            let text = match expression {
                Some(t) => t,
                None => read_stdin()?,
            };
            let start = std::time::Instant::now();
            let value = parse_expression(text.trim())?.evaluate()?;
            let mut record = Record::new("eval");
            record.value = Some(value.clone());
            record.elapsed_ns = start.elapsed().as_nanos() as u64;
            if cli.json {
                emit_json(out, &record).map_err(io_err)?;
            } else {
                writeln!(out, "{value}").map_err(io_err)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::OracleCheck {
            p_max,
            q_max,
            n_max,
            workers,
        } => {
            let report = three_way_check(p_max, q_max.unwrap_or(p_max), n_max, workers)?;
            if cli.json {
                emit_json(out, &report).map_err(io_err)?;
            } else {
                writeln!(
                    out,
                    "checked {} triples (p <= {}, q <= {}, n <= {}) in {:.2}s",
                    report.triples,
                    report.p_max,
                    report.q_max,
                    report.n_max,
                    report.elapsed_ns as f64 / 1e9
                )
                .map_err(io_err)?;
                writeln!(out, "solvable: {}", report.solvable).map_err(io_err)?;
                writeln!(out, "disagreements: {}", report.disagreement_count).map_err(io_err)?;
                for d in &report.disagreements {
                    writeln!(out, "  {d:?}").map_err(io_err)?;
                }
                writeln!(
                    out,
                    "max gcd calls: {} (max ratio to bound {:.3}, violations {})",
                    report.max_gcd_calls, report.max_gcd_ratio, report.gcd_bound_violations
                )
                .map_err(io_err)?;
            }
            Ok(verdict_code(
                report.disagreement_count == 0 && report.gcd_bound_violations == 0,
            ))
        }
        Cmd::Bench { repeats } => {
            let rows = bench(&bench_instances(), repeats)?;
            if cli.json {
                for row in &rows {
                    emit_json(out, row).map_err(io_err)?;
                }
            } else {
                writeln!(
                    out,
                    "{:>22} {:>22} {:>14} {:>8} {:>6} {:>8} {:>10} {:>14}",
                    "p", "q", "n", "verdict", "gcds", "bound", "deep ns", "divisor ns"
                )
                .map_err(io_err)?;
                for r in &rows {
                    let enumeration = r
                        .enumeration_ns
                        .map_or_else(|| "-".to_string(), |ns| ns.to_string());
                    writeln!(
                        out,
                        "{:>22} {:>22} {:>14} {:>8} {:>6} {:>8.1} {:>10} {:>14}",
                        r.p, r.q, r.n, r.verdict, r.gcd_calls, r.gcd_bound, r.deep_ns, enumeration
                    )
                    .map_err(io_err)?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
