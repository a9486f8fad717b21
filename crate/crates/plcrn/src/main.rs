//! Command-line front end. All analysis lives in the library; this binary
//! parses arguments, formats output, and maps failures to exit codes:
//! 1 for parse/spec errors, 2 for I/O errors, 3 when `check` finds the
//! independence conditions violated.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use plcrn::chain::{chain_parametrization, chain_t_hat_check, make_chain, ChainSpec};
use plcrn::decomp::{finest_independent_decomposition, verify_independence, verify_t_hat_independence};
use plcrn::parse::{parse_network, ParsedSystem};
use plcrn::report::Report;
use plcrn::steady::{existence_verdict, relative_residual, BlockSolve, Concentrations, SolverConfig, Verdict, WholeOutcome};

#[derive(Parser)]
#[command(
    name = "plcrn",
    about = "Decomposition and positive steady state analysis for power-law reaction networks",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SolverArgs {
    /// Relative residual below which a steady state search succeeds
    #[arg(long)]
    tol: Option<f64>,
    /// Number of multi-start attempts per solve
    #[arg(long)]
    starts: Option<usize>,
    /// Random seed for the multi-start solver
    #[arg(long)]
    seed: Option<u64>,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        let mut cfg = SolverConfig::default();
        if let Some(tol) = self.tol {
            cfg.tol = tol;
        }
        if let Some(starts) = self.starts {
            cfg.starts = starts;
        }
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        cfg
    }
}

#[derive(Subcommand)]
enum Command {
    /// Structural summary: species, complexes, linkage classes, rank,
    /// deficiency, and the reactant-determined flag
    Analyze {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Finest independent decomposition with both rank checks
    Decompose {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Full existence analysis; exits 3 when the independence conditions
    /// fail so pipelines can assert counterexamples
    Check {
        path: PathBuf,
        #[arg(long)]
        json: bool,
        /// Override the rate constants, comma-separated in file order
        #[arg(long, value_delimiter = ',')]
        rates: Option<Vec<f64>>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Per-block steady state search and the merged whole-network witness
    Solve {
        path: PathBuf,
        #[arg(long)]
        json: bool,
        /// Override the rate constants, comma-separated in file order
        #[arg(long, value_delimiter = ',')]
        rates: Option<Vec<f64>>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Closed-form steady state of a reversible chain X0 <=> ... <=> Xn
    Chain {
        /// Number of reversible pairs
        #[arg(long)]
        n: usize,
        /// Kinetic orders f_0..f_n, comma-separated rationals
        #[arg(long, value_delimiter = ',')]
        f: Vec<String>,
        /// Forward rate constants k_0..k_{n-1}
        #[arg(long, value_delimiter = ',')]
        k: Vec<f64>,
        /// Backward rate constants k_0'..k_{n-1}'
        #[arg(long, value_delimiter = ',')]
        kp: Vec<f64>,
        /// Free parameter: the steady state concentration of X_n
        #[arg(long, default_value_t = 1.0)]
        tau: f64,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    // Die quietly when a downstream pipe closes instead of panicking on
    // the next print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}

struct Failure {
    code: ExitCode,
    message: String,
}

fn spec_error(message: impl Into<String>) -> Failure {
    Failure {
        code: ExitCode::from(1),
        message: message.into(),
    }
}

fn load(path: &PathBuf, rates: Option<Vec<f64>>) -> Result<ParsedSystem, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        code: ExitCode::from(2),
        message: format!("{}: {e}", path.display()),
    })?;
    let mut parsed = parse_network(&text).map_err(|e| Failure {
        code: ExitCode::from(1),
        message: format!("{}: {e}", path.display()),
    })?;
    for warning in &parsed.warnings {
        eprintln!("warning: {warning}");
    }
    if let Some(rates) = rates {
        parsed.system = parsed
            .system
            .with_rates(rates)
            .map_err(|e| spec_error(format!("--rates: {e}")))?;
    }
    Ok(parsed)
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Analyze { path, json } => {
            let parsed = load(&path, None)?;
            let report = Report::analyze(&parsed);
            if json {
                println!("{}", report.to_json());
            } else {
                print_network_summary(&report);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose { path, json } => {
            let parsed = load(&path, None)?;
            let d = finest_independent_decomposition(parsed.system.network());
            let independence = if parsed.system.is_plrdk() {
                verify_t_hat_independence(&parsed.system, &d).expect("PL-RDK checked")
            } else {
                verify_independence(parsed.system.network(), &d)
            };
            let report = Report::decompose(&parsed, &independence);
            if json {
                println!("{}", report.to_json());
            } else {
                print_network_summary(&report);
                print_decomposition(&report);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { path, json, rates, solver } => {
            let parsed = load(&path, rates)?;
            let verdict = existence_verdict(&parsed.system, &solver.config());
            let conditions_hold = verdict.conditions_hold;
            let report = Report::full(&parsed, &verdict);
            if json {
                println!("{}", report.to_json());
            } else {
                print_network_summary(&report);
                print_decomposition(&report);
                print_verdict(&verdict);
            }
            if conditions_hold {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(3))
            }
        }
        Command::Solve { path, json, rates, solver } => {
            let parsed = load(&path, rates)?;
            let verdict = existence_verdict(&parsed.system, &solver.config());
            let report = Report::full(&parsed, &verdict);
            if json {
                println!("{}", report.to_json());
            } else {
                print_verdict(&verdict);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Chain { n, f, k, kp, tau, json } => {
            let orders: Vec<plcrn::rat::Rat> = f
                .iter()
                .map(|text| {
                    plcrn::rat::parse_rat(text)
                        .ok_or_else(|| spec_error(format!("--f: `{text}` is not a rational")))
                })
                .collect::<Result<_, _>>()?;
            if orders.len() != n + 1 {
                return Err(spec_error(format!(
                    "--f: expected {} kinetic orders for n = {n}, got {}",
                    n + 1,
                    orders.len()
                )));
            }
            if k.len() != n || kp.len() != n {
                return Err(spec_error(format!(
                    "--k and --kp each need {n} rate constants"
                )));
            }
            if !(tau > 0.0 && tau.is_finite()) {
                return Err(spec_error("--tau must be positive"));
            }
            let spec = ChainSpec::new(orders, k, kp).map_err(|e| spec_error(e.to_string()))?;
            let sys = make_chain(&spec);
            let x = chain_parametrization(&spec, tau);
            let all: Vec<usize> = (0..sys.network().num_reactions()).collect();
            let point = Concentrations::new(x.clone(), x.len())
                .map_err(|e| spec_error(e.to_string()))?;
            let residual = relative_residual(&sys, &all, &point);
            let t_hat = chain_t_hat_check(&spec).t_hat.expect("chains are PL-RDK");
            if json {
                let value = serde_json::json!({
                    "n": n,
                    "tau": tau,
                    "x": x,
                    "residual": residual,
                    "t_hat": {
                        "rank": t_hat.rank_whole,
                        "sub_ranks": t_hat.rank_blocks,
                        "independent": t_hat.independent,
                    },
                });
                println!("{}", serde_json::to_string_pretty(&value).unwrap());
            } else {
                println!("chain with {n} reversible pairs, tau = {tau}");
                for (i, xi) in x.iter().enumerate() {
                    println!("  x{i} = {xi:.12e}");
                }
                println!("steady state residual: {residual:.3e}");
                println!(
                    "augmented rank {} = sum of block ranks {:?}",
                    t_hat.rank_whole, t_hat.rank_blocks
                );
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn print_network_summary(report: &Report) {
    let n = &report.network;
    println!(
        "species m = {}, complexes n = {}, reactions r = {}, linkage classes ell = {}",
        n.m, n.n, n.r, n.ell
    );
    println!(
        "rank N = {}, deficiency = {}, reactant-determined: {}",
        n.rank_n, n.deficiency, report.plrdk
    );
}

fn print_decomposition(report: &Report) {
    let Some(d) = &report.decomposition else {
        return;
    };
    println!("finest independent decomposition: {} block(s)", d.num_blocks);
    for (i, block) in d.blocks.iter().enumerate() {
        println!("  block {i}: {}", block.join(", "));
    }
    println!("stoichiometrically independent: {}", d.independent);
    match &report.t_hat {
        Some(Some(t)) => {
            println!(
                "augmented rank {} vs block ranks {:?}: independent = {}",
                t.rank, t.sub_ranks, t.independent
            );
            if t.shared_reactants {
                println!(
                    "note: a reactant complex is shared across blocks; the whole-network \
                     rank uses the single-column convention"
                );
            }
        }
        Some(None) => {
            println!("augmented rank check skipped: kinetics are not reactant-determined");
        }
        None => {}
    }
}

fn print_verdict(verdict: &Verdict) {
    for (i, solve) in verdict.per_block.iter().enumerate() {
        match solve {
            BlockSolve::Found { x, residual } => {
                println!("block {i}: steady state found, residual {residual:.3e}");
                println!("  x = {x:?}");
            }
            BlockSolve::NotFound { best_residual } => {
                println!("block {i}: no steady state found (best residual {best_residual:.3e})");
            }
        }
    }
    match &verdict.whole {
        WholeOutcome::Nonempty { witness, residual } => {
            println!("whole network: steady state found, residual {residual:.3e}");
            println!("  x = {witness:?}");
        }
        WholeOutcome::NoWitnessFound => {
            println!("whole network: no witness found (not a proof of emptiness)");
        }
        WholeOutcome::ConditionsNotMet { direct } => {
            println!("independence conditions not met; merge unavailable");
            match direct {
                BlockSolve::Found { x, residual } => {
                    println!(
                        "  direct whole-network search (informational): found, residual {residual:.3e}"
                    );
                    println!("  x = {x:?}");
                }
                BlockSolve::NotFound { best_residual } => {
                    println!(
                        "  direct whole-network search (informational): none (best residual {best_residual:.3e})"
                    );
                }
            }
        }
    }
}
