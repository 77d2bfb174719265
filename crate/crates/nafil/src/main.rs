//! Command-line front end: each subcommand is a thin wrapper around one
//! library operation. Exit codes: 0 success, 1 validation or parse error,
//! 2 usage error, 3 refused long run.

use std::io::Read;
use std::sync::atomic::{AtomicU64, Ordering};

use clap::{Parser, Subcommand, ValueEnum};

use nafil::enumerate::{
    census_observed, check_budget, enumerate_loops, enumerate_loops_parallel, verify_existence,
    EnumerationSpec, Flow,
};
use nafil::format::{emit_report, read_tables, write_rows, write_table, ReportFormat};
use nafil::identity::{check_identity, lookup, property_report, CheckOutcome, Identity};
use nafil::iso::{canonical_form, classify};
use nafil::{catalog, Error};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Machine,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => ReportFormat::Text,
            FormatArg::Machine => ReportFormat::Machine,
        }
    }
}

#[derive(Parser)]
#[command(name = "nafil", version, about = "Analyze, enumerate, and classify finite invertible loops")]
struct Cli {
    /// Output format for reports and summaries.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,

    /// Worker threads for enumeration and census runs.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full property report for each table in a file (`-` for stdin).
    Analyze { file: String },
    /// Check one identity against each table in a file.
    Check {
        file: String,
        /// Identity text such as "x*(y*x) = (x*y)*x", or a catalog name.
        #[arg(long)]
        identity: String,
    },
    /// Enumerate reduced non-associative invertible loops of an order.
    Enumerate {
        #[arg(long)]
        order: usize,
        /// Print only the number of tables (default).
        #[arg(long, conflicts_with = "stream")]
        count: bool,
        /// Print every table, blank-line separated.
        #[arg(long)]
        stream: bool,
        /// Named catalog constraints to enforce during the search.
        #[arg(long)]
        constraint: Vec<String>,
        /// Ad-hoc identity constraints to enforce during the search.
        #[arg(long)]
        identity: Vec<String>,
        /// Sort streamed tables by canonical encoding.
        #[arg(long)]
        sorted: bool,
        /// Opt in to runs at order 7 and above.
        #[arg(long)]
        allow_long: bool,
    },
    /// Count isomorphism classes of non-associative invertible loops.
    Census {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        constraint: Vec<String>,
        #[arg(long)]
        identity: Vec<String>,
        #[arg(long)]
        allow_long: bool,
    },
    /// Partition the tables in a file into isomorphism classes.
    Classify { file: String },
    /// Print a built-in table (L5, L6, LSAIP9, RSAIP9, LSAIP9_raw, cayley<r>).
    Catalog { name: String },
    /// Canonical form of each table in a file.
    Canon { file: String },
    /// Transpose of each table in a file.
    Transpose { file: String },
    /// Subloop lattice of each table in a file.
    Subloops { file: String },
    /// Search for a non-associative invertible loop of an order.
    Existence {
        #[arg(long)]
        order: usize,
    },
}

fn read_input(path: &str) -> Result<String, Error> {
    let to_err = |e: std::io::Error| Error::Format {
        line: 0,
        msg: format!("{path}: {e}"),
    };
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(to_err)?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(to_err)
    }
}

fn load_tables(path: &str) -> Result<Vec<nafil::LoopTable>, Error> {
    let tables = read_tables(&read_input(path)?)?;
    if tables.is_empty() {
        return Err(Error::Format {
            line: 0,
            msg: format!("{path}: no table found"),
        });
    }
    Ok(tables)
}

/// Accepts either an identity expression or a catalog property name.
/// Conjunction entries (IP, AP, SAIP, CCP, TS) expand to their parts.
fn parse_constraints(names: &[String], exprs: &[String]) -> Result<Vec<Identity>, Error> {
    let mut out = Vec::new();
    for name in names {
        let entry = lookup(name).ok_or_else(|| Error::UnknownName(name.clone()))?;
        if entry.identities().is_empty() {
            return Err(Error::UnknownName(format!(
                "{name} is not defined by finite identities"
            )));
        }
        out.extend(entry.identities().iter().cloned());
    }
    for expr in exprs {
        out.push(Identity::parse(expr)?);
    }
    Ok(out)
}

fn progress_printer(label: &str) -> impl Fn(u64) + Sync + '_ {
    move |count| {
        if count % 100_000 == 0 {
            eprintln!("{label}: {count} tables visited");
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    let report_format: ReportFormat = cli.format.into();
    match cli.command {
        Command::Analyze { file } => {
            for t in load_tables(&file)? {
                let normal = t.normalize()?;
                let report = property_report(&normal)?;
                print!("{}", emit_report(&report, report_format));
            }
        }
        Command::Check { file, identity } => {
            let id = match lookup(&identity) {
                Some(entry) if !entry.identities().is_empty() => entry.identities().to_vec(),
                _ => vec![Identity::parse(&identity)?],
            };
            let mut results = Vec::new();
            for (i, t) in load_tables(&file)?.iter().enumerate() {
                let normal = t.normalize()?;
                let mut verdict = CheckOutcome::Holds;
                for part in &id {
                    match check_identity(&normal, part)? {
                        CheckOutcome::Holds => {}
                        cex => {
                            verdict = cex;
                            break;
                        }
                    }
                }
                results.push((i + 1, verdict));
            }
            match report_format {
                ReportFormat::Text => {
                    for (i, verdict) in &results {
                        match verdict {
                            CheckOutcome::Holds => println!("table {i}: holds"),
                            CheckOutcome::Counterexample(c) => {
                                println!("table {i}: fails (counterexample: {c})")
                            }
                        }
                    }
                }
                ReportFormat::Machine => {
                    let json: Vec<serde_json::Value> = results
                        .iter()
                        .map(|(i, verdict)| match verdict {
                            CheckOutcome::Holds => {
                                serde_json::json!({"table": i, "holds": true})
                            }
                            CheckOutcome::Counterexample(c) => serde_json::json!({
                                "table": i,
                                "holds": false,
                                "counterexample": {
                                    "assignment": c.assignment.iter()
                                        .map(|(v, x)| (v.to_string(), *x))
                                        .collect::<std::collections::BTreeMap<_, _>>(),
                                    "lhs": c.lhs,
                                    "rhs": c.rhs,
                                },
                            }),
                        })
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&json).unwrap());
                }
            }
        }
        Command::Enumerate {
            order,
            count: _,
            stream,
            constraint,
            identity,
            sorted,
            allow_long,
        } => {
            check_budget("enumeration", order, allow_long)?;
            let mut spec = EnumerationSpec::nafil(order);
            spec.constraints = parse_constraints(&constraint, &identity)?;
            let progress = progress_printer("enumerate");
            if stream {
                let total = if cli.threads <= 1 {
                    let mut emit = |t: &nafil::LoopTable| {
                        println!("{}", write_table(t));
                        Flow::Continue
                    };
                    enumerate_loops(&spec, &mut emit)?
                } else if sorted {
                    // Sorted output buffers everything anyway, so collect
                    // from the parallel run and order afterwards.
                    let tables = std::sync::Mutex::new(Vec::new());
                    let total = enumerate_loops_parallel(&spec, cli.threads, |t| {
                        tables.lock().unwrap().push(t.clone());
                        progress(1);
                    })?;
                    let mut tables = tables.into_inner().unwrap();
                    tables.sort_by(|a, b| a.cells().cmp(b.cells()));
                    for t in &tables {
                        println!("{}", write_table(t));
                    }
                    total
                } else {
                    let stdout = std::sync::Mutex::new(());
                    enumerate_loops_parallel(&spec, cli.threads, |t| {
                        let _guard = stdout.lock().unwrap();
                        println!("{}", write_table(t));
                    })?
                };
                eprintln!("{total} tables");
            } else {
                let visited = AtomicU64::new(0);
                let total = if cli.threads <= 1 {
                    enumerate_loops(&spec, |_| {
                        progress(visited.fetch_add(1, Ordering::Relaxed) + 1);
                        Flow::Continue
                    })?
                } else {
                    enumerate_loops_parallel(&spec, cli.threads, |_| {
                        progress(visited.fetch_add(1, Ordering::Relaxed) + 1);
                    })?
                };
                println!("{total}");
            }
        }
        Command::Census {
            order,
            constraint,
            identity,
            allow_long,
        } => {
            let mut spec = EnumerationSpec::nafil(order);
            spec.constraints = parse_constraints(&constraint, &identity)?;
            let progress = progress_printer("census");
            let census = census_observed(&spec, cli.threads, allow_long, &progress)?;
            match report_format {
                ReportFormat::Text => {
                    println!("order: {}", census.order);
                    println!("reduced tables: {}", census.reduced_count);
                    println!("classes: {}", census.classes.len());
                }
                ReportFormat::Machine => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&serde_json::json!({
                            "order": census.order,
                            "reduced_count": census.reduced_count,
                            "class_count": census.classes.len(),
                        }))
                        .unwrap()
                    );
                }
            }
        }
        Command::Classify { file } => {
            let tables = load_tables(&file)?;
            let normal: Result<Vec<_>, Error> = tables.iter().map(|t| t.normalize()).collect();
            let classes = classify(normal?)?;
            match report_format {
                ReportFormat::Text => {
                    println!("classes: {}", classes.len());
                    for class in &classes {
                        println!();
                        println!("# members: {}", class.members_seen);
                        print!("{}", write_table(&class.canonical));
                    }
                }
                ReportFormat::Machine => {
                    let json: Vec<serde_json::Value> = classes
                        .iter()
                        .map(|c| {
                            serde_json::json!({
                                "members": c.members_seen,
                                "canonical": write_table(&c.canonical),
                            })
                        })
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&json).unwrap());
                }
            }
        }
        Command::Catalog { name } => {
            if let Some(r) = name.strip_prefix("cayley") {
                let r: u32 = r.parse().map_err(|_| Error::UnknownName(name.clone()))?;
                print!("{}", write_table(&catalog::cayley_basis_loop(r)?));
            } else if name == "LSAIP9_raw" {
                // Documented as published; deliberately not a Latin square.
                let rows = catalog::builtin_rows(&name)?;
                print!("{}", write_rows(rows.len(), &rows));
            } else {
                print!("{}", write_table(&catalog::builtin(&name)?));
            }
        }
        Command::Canon { file } => {
            for (i, t) in load_tables(&file)?.iter().enumerate() {
                if i > 0 {
                    println!();
                }
                print!("{}", write_table(&canonical_form(&t.normalize()?)?));
            }
        }
        Command::Transpose { file } => {
            for (i, t) in load_tables(&file)?.iter().enumerate() {
                if i > 0 {
                    println!();
                }
                print!("{}", write_table(&t.transpose()));
            }
        }
        Command::Subloops { file } => {
            for (i, t) in load_tables(&file)?.iter().enumerate() {
                if i > 0 {
                    println!();
                }
                let normal = t.normalize()?;
                let subloops = normal.all_subloops()?;
                println!("table {} subloops: {}", i + 1, subloops.len());
                for s in subloops {
                    println!(
                        "{}",
                        s.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
                    );
                }
            }
        }
        Command::Existence { order } => {
            let witness = verify_existence(order)?;
            let profile = witness.axiom_profile();
            eprintln!(
                "order {order}: found a {} (invertible: {}, associative: {})",
                profile.classification, profile.invertible, profile.associative
            );
            print!("{}", write_table(&witness));
        }
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
