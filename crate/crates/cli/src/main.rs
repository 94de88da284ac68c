//! Command-line surface: period series, batch verification, polytope dumps,
//! fiber classification, and operator fitting. Exit codes: 0 all pass or
//! flagged, 1 any failure, 2 usage or input errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fanodegen::catalog::{self, FanoEntry};
use fanodegen::d3;
use fanodegen::elliptic::{classify_fibers, fibers_to_json, WeierstrassModel};
use fanodegen::report::VerificationReport;
use fanodegen::series::PowerSeriesPrefix;

#[derive(Parser)]
#[command(name = "fanodegen", version, about = "Exact checks for the Landau-Ginzburg candidates of rank-one Fano threefolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the constant-term period series of a catalog row.
    Periods {
        #[arg(long)]
        row: usize,
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Run per-row verification; nonzero exit on any failing check.
    Verify {
        #[arg(long, conflicts_with = "all")]
        row: Option<usize>,
        #[arg(long)]
        all: bool,
        /// Also verify the K3 fiber data.
        #[arg(long)]
        k3: bool,
        /// Series order for the D3 operator fit (< 25 skips the fit).
        #[arg(long, default_value_t = 40)]
        order: usize,
        /// Worker threads for batch runs.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Print the Newton polytope of a catalog row.
    Polytope {
        #[arg(long)]
        row: usize,
        /// Print the dual polytope instead.
        #[arg(long)]
        dual: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Classify the singular fibers of a Weierstrass model JSON file.
    Tate {
        file: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Fit a D3 operator to a period series JSON file.
    Fit {
        file: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Args)]
struct OutArg {
    /// Write the JSON artifact here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(out: &OutArg, value: &serde_json::Value) -> Result<(), String> {
    let text = format!("{}\n", serde_json::to_string_pretty(value).unwrap());
    match &out.out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
    }
}

fn get_row(n: usize) -> Result<FanoEntry, String> {
    catalog::row(n).map_err(|e| format!("row {n}: {e}"))
}

/// Resolve an input path, falling back to the fixture directory.
fn resolve_input(path: &PathBuf) -> PathBuf {
    if path.exists() {
        return path.clone();
    }
    let in_fixtures = catalog::fixtures_dir().join(path);
    if in_fixtures.exists() {
        in_fixtures
    } else {
        path.clone()
    }
}

fn read_json(path: &PathBuf) -> Result<serde_json::Value, String> {
    let resolved = resolve_input(path);
    let text = std::fs::read_to_string(&resolved)
        .map_err(|e| format!("{}: {e}", resolved.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", resolved.display()))
}

fn report_json(rep: &VerificationReport, millis: u128) -> serde_json::Value {
    serde_json::json!({
        "subject": rep.subject,
        "checks": rep.checks,
        "timing_ms": millis,
    })
}

fn run_verify(
    rows: Vec<usize>,
    k3: bool,
    order: usize,
    jobs: usize,
    out: &OutArg,
) -> Result<bool, String> {
    let jobs = jobs.max(1);
    let work = std::sync::Mutex::new(rows.into_iter());
    let results = std::sync::Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let n = match work.lock().unwrap().next() {
                    Some(n) => n,
                    None => break,
                };
                let started = std::time::Instant::now();
                let outcome = get_row(n).and_then(|entry| {
                    let mut reports = vec![catalog::verify_row(&entry, order)
                        .map_err(|e| format!("row {n}: {e}"))?];
                    if k3 {
                        reports.push(
                            catalog::verify_k3_row(&entry)
                                .map_err(|e| format!("row {n}: {e}"))?,
                        );
                    }
                    Ok(reports)
                });
                results
                    .lock()
                    .unwrap()
                    .push((n, outcome, started.elapsed().as_millis()));
            });
        }
    });
    let mut results = results.into_inner().unwrap();
    results.sort_by_key(|(n, _, _)| *n);
    let mut all_ok = true;
    let mut payload = Vec::new();
    for (n, outcome, millis) in results {
        match outcome {
            Err(e) => return Err(e),
            Ok(reports) => {
                for rep in reports {
                    if !rep.passed() {
                        all_ok = false;
                    }
                    payload.push(report_json(&rep, millis));
                }
                let _ = n;
            }
        }
    }
    emit(out, &serde_json::Value::Array(payload))?;
    Ok(all_ok)
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Periods { row, order, out } => {
            let entry = get_row(row)?;
            let f = entry.laurent().map_err(|e| e.to_string())?;
            let series = f.phi_series(order);
            emit(&out, &series.to_json())?;
            Ok(true)
        }
        Command::Verify {
            row,
            all,
            k3,
            order,
            jobs,
            out,
        } => {
            let rows: Vec<usize> = match (row, all) {
                (Some(n), _) => {
                    if !(1..=17).contains(&n) {
                        return Err(format!("row {n} not in 1..=17"));
                    }
                    vec![n]
                }
                (None, true) => (1..=17).collect(),
                (None, false) => return Err("pass --row N or --all".into()),
            };
            run_verify(rows, k3, order, jobs, &out)
        }
        Command::Polytope { row, dual, out } => {
            let entry = get_row(row)?;
            let p = entry.newton().map_err(|e| e.to_string())?;
            let p = if dual {
                p.dual_polytope().map_err(|e| e.to_string())?
            } else {
                p
            };
            emit(&out, &p.to_json())?;
            Ok(true)
        }
        Command::Tate { file, out } => {
            let v = read_json(&file)?;
            let model = WeierstrassModel::from_json(&v).map_err(|e| e.to_string())?;
            let fibers = classify_fibers(&model).map_err(|e| e.to_string())?;
            emit(&out, &fibers_to_json(&fibers))?;
            Ok(true)
        }
        Command::Fit { file, out } => {
            let v = read_json(&file)?;
            let series = PowerSeriesPrefix::from_json(&v).map_err(|e| e.to_string())?;
            match d3::fit_d3(&series).map_err(|e| e.to_string())? {
                None => Err("no D3 operator annihilates this series".into()),
                Some(op) => {
                    emit(&out, &op.to_json())?;
                    Ok(true)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
