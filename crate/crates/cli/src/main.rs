//! Batch front door for the verification engine: run built-in claims over
//! parameter ranges, check `.qcl` files, scan the Dwork-type conjecture,
//! run the classical p-adic checks, and emit machine-readable reports.

mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qcongr::claims::{self, Bounds, Params, VerificationResult};
use qcongr::dsl;
use qcongr::padic::ClassicalClaim;
use rayon::prelude::*;

use report::{Report, RunError};

#[derive(Parser)]
#[command(name = "qcongr", version, about = "Exact verification of q-supercongruences")]
struct Cli {
    /// Worker threads for independent (claim, params) tasks.
    #[arg(long, global = true, env = "QCONGR_JOBS")]
    jobs: Option<usize>,

    /// Print the report as JSON to stdout instead of a text summary.
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,

    /// Print a text summary (the default).
    #[arg(long, global = true)]
    text: bool,

    /// Also write the JSON report to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct BoundArgs {
    /// Largest n (and lemma modulus m) to enumerate.
    #[arg(long, default_value_t = 13)]
    n_max: i64,

    /// Largest step d (and lemma shift t) to enumerate.
    #[arg(long, default_value_t = 6)]
    d_max: i64,

    /// Largest Dwork-type level r.
    #[arg(long, default_value_t = 2)]
    r_max: u32,

    /// Primes for the classical checks (comma separated).
    #[arg(long, value_delimiter = ',', default_values_t = vec![5u64, 13, 17, 29])]
    p_list: Vec<u64>,
}

impl BoundArgs {
    fn to_bounds(&self, include_conjectures: bool) -> Bounds {
        Bounds {
            n_max: self.n_max,
            d_max: self.d_max,
            r_max: self.r_max,
            include_conjectures,
            p_list: self.p_list.clone(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Verify every registry claim over the enumerated parameter ranges.
    VerifyAll {
        #[command(flatten)]
        bounds: BoundArgs,

        /// Include the conjectural claims in the run.
        #[arg(long)]
        include_conjectures: bool,

        /// Verify a single claim id instead of the whole registry.
        #[arg(long)]
        claim: Option<String>,
    },
    /// Check the claims of a .qcl file over the bounds.
    Check {
        /// Path to a .qcl file.
        file: PathBuf,

        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Scan the Dwork-type conjecture over a list of n and levels r.
    ScanConjecture {
        /// Values of n (each must be 1 mod 4 and > 1).
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<i64>,

        /// Largest level r (>= 2).
        #[arg(long, default_value_t = 2)]
        r_max: u32,
    },
    /// Run a classical p-adic check over a list of primes.
    Padic {
        /// One of: g2, g2_full, g2_cubed, g2_cubed_full, eq15, swisher_g3.
        #[arg(long)]
        claim: String,

        /// Primes (each must be 1 mod 4).
        #[arg(long, value_delimiter = ',', required = true)]
        p_list: Vec<u64>,

        /// Level r for the Dwork-type claim.
        #[arg(long, default_value_t = 2)]
        r_max: u32,
    },
    /// List the built-in claims.
    ListClaims,
}

fn run_tasks(tasks: Vec<(String, Params)>) -> (Vec<VerificationResult>, Vec<RunError>) {
    let outcomes: Vec<Result<VerificationResult, RunError>> = tasks
        .par_iter()
        .map(|(id, params)| {
            claims::verify(id, params).map_err(|e| RunError {
                claim_id: id.clone(),
                params: params.clone(),
                message: e.to_string(),
            })
        })
        .collect();
    let mut results = Vec::new();
    let mut errors = Vec::new();
    for o in outcomes {
        match o {
            Ok(r) => results.push(r),
            Err(e) => errors.push(e),
        }
    }
    (results, errors)
}

fn emit(cli: &Cli, report: &Report) -> Result<(), String> {
    if let Some(path) = &cli.out {
        std::fs::write(path, report.to_json())
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    if cli.json {
        println!("{}", report.to_json());
    } else {
        report.print_text();
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: cannot configure {jobs} worker threads: {e}");
            return ExitCode::from(2);
        }
    }
    let started_at = chrono::Utc::now().to_rfc3339();
    let report = match &cli.command {
        Command::VerifyAll {
            bounds,
            include_conjectures,
            claim,
        } => {
            let bounds = bounds.to_bounds(*include_conjectures);
            let ids: Vec<&str> = match claim {
                Some(id) => match claims::claim(id) {
                    Some(c) => vec![c.id],
                    None => {
                        eprintln!("error: unknown claim id `{id}` (see list-claims)");
                        return ExitCode::from(2);
                    }
                },
                None => claims::registry().iter().map(|c| c.id).collect(),
            };
            let mut tasks = Vec::new();
            for id in ids {
                match claims::enumerate(id, &bounds) {
                    Ok(bindings) => {
                        tasks.extend(bindings.into_iter().map(|b| (id.to_string(), b)))
                    }
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                }
            }
            let (results, errors) = run_tasks(tasks);
            Report::assemble(started_at, results, errors)
        }
        Command::Check { file, bounds } => {
            let source = match std::fs::read_to_string(file) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", file.display());
                    return ExitCode::from(2);
                }
            };
            let bounds = bounds.to_bounds(true);
            let outcomes = match dsl::check_source(&source, &bounds) {
                Ok(o) => o,
                Err(e) => {
                    eprintln!("error in {}: {e}", file.display());
                    return ExitCode::from(2);
                }
            };
            let mut results = Vec::new();
            let mut errors = Vec::new();
            for o in outcomes {
                match o {
                    dsl::CheckOutcome::Verified(r) => results.push(r),
                    dsl::CheckOutcome::EvalError {
                        claim_id,
                        params,
                        message,
                    } => errors.push(RunError {
                        claim_id,
                        params,
                        message,
                    }),
                }
            }
            Report::assemble(started_at, results, errors)
        }
        Command::ScanConjecture { n_list, r_max } => {
            if *r_max < 2 {
                eprintln!("error: --r-max must be at least 2");
                return ExitCode::from(2);
            }
            for n in n_list {
                if *n < 5 || n.rem_euclid(4) != 1 {
                    eprintln!("error: n must be > 1 with n == 1 (mod 4), got {n}");
                    return ExitCode::from(2);
                }
            }
            let mut tasks = Vec::new();
            for &n in n_list {
                for r in 2..=*r_max {
                    for id in ["conj_trunc", "conj_full"] {
                        let mut p: Params = BTreeMap::new();
                        p.insert("n".into(), n);
                        p.insert("r".into(), r as i64);
                        tasks.push((id.to_string(), p));
                    }
                }
            }
            let (results, errors) = run_tasks(tasks);
            let report = Report::assemble(started_at, results, errors);
            if let Err(e) = emit(&cli, &report) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            // Conjecture scanning is exploratory: completing the scan is
            // success, whatever the outcomes; failures are highlighted in
            // the report as potential counterexamples.
            return ExitCode::SUCCESS;
        }
        Command::Padic {
            claim,
            p_list,
            r_max,
        } => {
            let Some(classical) = ClassicalClaim::from_id(claim) else {
                eprintln!(
                    "error: unknown classical claim `{claim}` \
                     (expected g2, g2_full, g2_cubed, g2_cubed_full, eq15, or swisher_g3)"
                );
                return ExitCode::from(2);
            };
            for &p in p_list {
                if !qcongr::modeval::is_prime_u64(p) || p % 4 != 1 {
                    eprintln!("error: p must be a prime with p == 1 (mod 4), got {p}");
                    return ExitCode::from(2);
                }
            }
            let mut tasks = Vec::new();
            for &p in p_list {
                if classical == ClassicalClaim::SwisherG3 {
                    for r in 2..=*r_max {
                        let mut b: Params = BTreeMap::new();
                        b.insert("p".into(), p as i64);
                        b.insert("r".into(), r as i64);
                        tasks.push((claim.clone(), b));
                    }
                } else {
                    let mut b: Params = BTreeMap::new();
                    b.insert("p".into(), p as i64);
                    tasks.push((claim.clone(), b));
                }
            }
            let (results, errors) = run_tasks(tasks);
            Report::assemble(started_at, results, errors)
        }
        Command::ListClaims => {
            println!("{:<16} {:<12} {:<12} {}", "id", "kind", "params", "summary");
            for c in claims::registry() {
                println!(
                    "{:<16} {:<12} {:<12} {}{}",
                    c.id,
                    format!("{:?}", c.kind).to_lowercase(),
                    c.params.join(","),
                    c.summary,
                    if c.conjectural { " [conjectural]" } else { "" }
                );
            }
            return ExitCode::SUCCESS;
        }
    };
    if let Err(e) = emit(&cli, &report) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(report.exit_code() as u8)
}
