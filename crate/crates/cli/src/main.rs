//! `finring`: reports, unit sums, GL orders, ring enumeration and theorem
//! verification from the command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse
//! error, 3 resource limit hit or incomplete result.

mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use finring::analysis::Budget;
use finring::enumeration::{self, EnumerateError, EnumerateOptions, ResumeToken};
use finring::expr::parse_ring_expr;
use finring::theorems::{self, CheckId, CheckParams};
use finring::{Ring, RingError};

#[derive(Parser, Debug)]
#[command(name = "finring", version, about = "Finite ring invariants, unit sums and enumeration")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structural report for one ring.
    Report {
        /// Ring expression, e.g. "M(2, GF(4))" or "Z(2) x Z(3)".
        #[arg(long)]
        ring: String,
        #[arg(long)]
        json: bool,
        /// Skip the Jacobson radical (cubic in the ring order).
        #[arg(long)]
        skip_radical: bool,
        /// Largest ring order walked element by element.
        #[arg(long, default_value_t = 1 << 20)]
        max_elements: usize,
    },
    /// Number of units and their sum.
    UnitSum {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 1 << 20)]
        max_elements: usize,
    },
    /// Order of GL_n(F_q).
    GlOrder {
        n: u32,
        q: u64,
        #[arg(long)]
        json: bool,
    },
    /// All unital rings of an order, in the table text format.
    Enumerate {
        order: usize,
        #[arg(long)]
        up_to_iso: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write rings here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Search-node budget; required above order 8.
        #[arg(long)]
        budget: Option<u64>,
        /// Continue from a token printed by an earlier run.
        #[arg(long)]
        resume: Option<ResumeToken>,
    },
    /// Run theorem checks.
    #[command(group(ArgGroup::new("which").required(true).args(["theorem", "all"])))]
    Verify {
        /// T1..T9, or `main` for T7.
        #[arg(long)]
        theorem: Option<CheckId>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 8)]
        max_order: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Resource(String),
}

impl From<RingError> for Failure {
    fn from(e: RingError) -> Self {
        match e {
            RingError::Budget(_) | RingError::OrderTooLarge { .. } => Failure::Resource(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn build_ring(text: &str) -> Result<Ring, Failure> {
    let expr = parse_ring_expr(text).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(expr.build()?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cmd: Command) -> Result<u8, Failure> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cmd {
        Command::Report { ring, json, skip_radical, max_elements } => {
            let r = build_ring(&ring)?;
            let budget = Budget { max_elements, ..Budget::default() };
            let doc = report::build(&ring, &r, &budget, !skip_radical)?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("report serializes"))?;
            } else {
                write!(out, "{}", doc.to_text())?;
            }
        }
        Command::UnitSum { ring, json, max_elements } => {
            let r = build_ring(&ring)?;
            let budget = Budget { max_elements, ..Budget::default() };
            let doc = report::unit_sum(&ring, &r, &budget)?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("report serializes"))?;
            } else {
                writeln!(out, "ring        {}", doc.ring)?;
                writeln!(out, "unit_count  {}", doc.unit_count)?;
                writeln!(out, "unit_sum    {} (index {})", doc.unit_sum, doc.unit_sum_index)?;
            }
        }
        Command::GlOrder { n, q, json } => {
            let order = finring::analysis::gl_order(n, q)?;
            if json {
                let v = serde_json::json!({ "n": n, "q": q, "order": order.to_string() });
                writeln!(out, "{v}")?;
            } else {
                writeln!(out, "{order}")?;
            }
        }
        Command::Enumerate { order, up_to_iso, jobs, out: path, budget, resume } => {
            let opts = EnumerateOptions { up_to_iso, jobs, node_budget: budget, resume, ..Default::default() };
            let (result, code) = match enumeration::enumerate_unital_rings(order, &opts) {
                Ok(e) => (e, 0),
                Err(EnumerateError::BudgetExceeded { partial, resume, nodes }) => {
                    eprintln!("budget exhausted after {nodes} nodes; resume token: {resume}");
                    (partial, 3)
                }
                Err(EnumerateError::Ring(e)) => return Err(e.into()),
                Err(e) => return Err(Failure::Usage(e.to_string())),
            };
            let mut sink: Box<dyn Write> = match &path {
                Some(p) => Box::new(BufWriter::new(File::create(p)?)),
                None => Box::new(out),
            };
            for t in &result.rings {
                sink.write_all(t.to_text().as_bytes())?;
            }
            sink.flush()?;
            eprintln!(
                "order {order}: {} rings ({} labeled, {} search nodes)",
                result.rings.len(),
                result.raw_count,
                result.nodes
            );
            return Ok(code);
        }
        Command::Verify { theorem, all, max_order, jobs, budget, json } => {
            let params = CheckParams { max_order, jobs, node_budget: budget, ..Default::default() };
            let reports = if all {
                theorems::run_all_with(&params)?
            } else {
                let id = theorem.expect("clap enforces one of --theorem/--all");
                vec![theorems::run_check(id, &params)?]
            };
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&reports).expect("reports serialize"))?;
            } else {
                for r in &reports {
                    let verdict = match (r.passed, r.complete) {
                        (false, _) => "FAIL",
                        (true, false) => "INCOMPLETE",
                        (true, true) => "PASS",
                    };
                    writeln!(
                        out,
                        "{} {:<10} {:>6} instances  {:>9.1} ms  {}",
                        r.check_id,
                        verdict,
                        r.population.count,
                        r.elapsed.as_secs_f64() * 1e3,
                        r.statement
                    )?;
                    for note in &r.notes {
                        writeln!(out, "    {note}")?;
                    }
                    if let Some(cx) = &r.counterexample {
                        writeln!(out, "    counterexample in {}: {} {:?}", cx.ring, cx.reason, cx.witness)?;
                    }
                }
            }
            if reports.iter().any(|r| !r.passed) {
                return Ok(1);
            }
            if reports.iter().any(|r| !r.complete) {
                return Ok(3);
            }
        }
    }
    Ok(0)
}
