//! Command-line front end: instance generation, solving, rounding, sweeps and
//! xi estimation.
//!
//! Exit codes: 0 on success, 2 for invalid input or configuration, 3 when the
//! solver does not converge, 1 for anything else.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use clique_sdp::harness::{run_sweep, ExperimentConfig};
use clique_sdp::model::{generate, ModelParams, PlantedInstance};
use clique_sdp::oracles::xi::{estimate_xi_with_kappa, DEFAULT_KAPPA};
use clique_sdp::recovery::{compute_params_with_kappa, recover};
use clique_sdp::sdp::{solve_sdp, SdpSolution, SolverConfig};
use clique_sdp::Error;

#[derive(Parser)]
#[command(name = "clique-sdp", version, about = "Planted clique recovery by SDP rounding")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance from a model-parameter JSON file.
    Gen {
        /// JSON object with n, k, p and optionally r, s, t, d, gamma, lambda, adversary.
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// Instance JSON path; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the graph as a weighted edge list.
        #[arg(long)]
        edge_list: Option<PathBuf>,
    },
    /// Solve the SDP relaxation for an instance.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        /// Solver config JSON {tol, tol_psd, max_iters, rank_cap, init_seed}.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        tol: Option<f64>,
        /// Overrides the solver's init_seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Round a solution and compare against the planted set.
    Recover {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        solution: PathBuf,
        /// Fixed xi. Without it xi is estimated with --xi-trials trials.
        #[arg(long)]
        xi: Option<f64>,
        #[arg(long, default_value_t = 100)]
        xi_trials: usize,
        #[arg(long, default_value_t = DEFAULT_KAPPA)]
        kappa: f64,
        /// Seed for xi estimation.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a parameter sweep from an experiment config.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Overrides seed_base.
        #[arg(long)]
        seed: Option<u64>,
        /// Overrides output_dir.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overrides the solver tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Estimate xi as the max of ||B|| / sqrt(np) over random centered matrices.
    EstimateXi {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_KAPPA)]
        kappa: f64,
    },
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Gen {
            config,
            seed,
            out,
            edge_list,
        } => {
            let mut params: ModelParams = serde_json::from_str(&read(&config)?).map_err(Error::from)?;
            if let Some(seed) = seed {
                params.seed = seed;
            }
            let instance = generate(&params)?;
            if let Some(path) = edge_list {
                fs::write(&path, instance.graph.to_edge_list())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            emit(out.as_deref(), &instance.to_json())
        }
        Command::Solve {
            instance,
            config,
            tol,
            seed,
            out,
        } => {
            let instance = PlantedInstance::from_json(&read(&instance)?)?;
            let mut solver = match config {
                Some(path) => serde_json::from_str::<SolverConfig>(&read(&path)?).map_err(Error::from)?,
                None => SolverConfig::default(),
            };
            if let Some(tol) = tol {
                solver.tol = tol;
            }
            if let Some(seed) = seed {
                solver.init_seed = seed;
            }
            match solve_sdp(&instance.graph, instance.params.k, &solver) {
                Ok(sol) => emit(out.as_deref(), &sol.to_json()),
                Err(Error::NotConverged {
                    residual,
                    iterations,
                    partial,
                }) => {
                    emit(out.as_deref(), &partial.to_json())?;
                    Err(Error::NotConverged {
                        residual,
                        iterations,
                        partial,
                    }
                    .into())
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Recover {
            instance,
            solution,
            xi,
            xi_trials,
            kappa,
            seed,
            out,
        } => {
            let instance = PlantedInstance::from_json(&read(&instance)?)?;
            let sol = SdpSolution::from_json(&read(&solution)?)?;
            if sol.n() != instance.n() {
                return Err(Error::DimensionMismatch {
                    expected: instance.n(),
                    found: sol.n(),
                }
                .into());
            }
            let xi = match xi {
                Some(xi) => xi,
                None => estimate_xi_with_kappa(instance.n(), instance.params.p, xi_trials, seed, kappa)?,
            };
            let rp = compute_params_with_kappa(&instance.params, xi, kappa)?;
            emit(out.as_deref(), &recover(&instance, &sol, &rp).to_json())
        }
        Command::Sweep { config, seed, out, tol } => {
            let mut config = ExperimentConfig::from_json(&read(&config)?)?;
            if let Some(seed) = seed {
                config.seed_base = seed;
            }
            if let Some(out) = out {
                config.output_dir = out;
            }
            if let Some(tol) = tol {
                config.solver.tol = tol;
            }
            let record = run_sweep(&config)?;
            for cell in &record.cells {
                println!(
                    "cell {}: k = {}, nu = {:.4}, success = {:.2}",
                    cell.cell, cell.params.k, cell.nu, cell.success_rate
                );
            }
            Ok(())
        }
        Command::EstimateXi {
            n,
            p,
            trials,
            seed,
            kappa,
        } => {
            println!("{}", estimate_xi_with_kappa(n, p, trials, seed, kappa)?);
            Ok(())
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::NotConverged { .. }) => 3,
        Some(
            Error::InvalidParams(_)
            | Error::InfeasibleParams(_)
            | Error::InvalidDenominator(_)
            | Error::RegimeViolation { .. }
            | Error::DimensionMismatch { .. }
            | Error::Parse(_)
            | Error::Json(_)
            | Error::NotSymmetric,
        ) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
