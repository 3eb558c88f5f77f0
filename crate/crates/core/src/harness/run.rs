use std::collections::BTreeMap;
use std::fs::{self, File};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::config::{ExperimentConfig, RecoveryConfig, XiSource};
use crate::error::{Error, Result};
use crate::model::{generate, ModelParams, PlantedInstance};
use crate::oracles::xi::estimate_xi_with_kappa;
use crate::recovery::{compute_params_with_kappa, recover, FailureReason};
use crate::rng::derive_seed;
use crate::sdp::{solve_sdp, SolverConfig};

/// Seed of trial `trial` in cell `cell`.
pub fn trial_seed(seed_base: u64, cell: usize, trial: usize) -> u64 {
    derive_seed(derive_seed(seed_base, cell as u64), trial as u64)
}

/// Hex SHA-256 of the instance's JSON serialisation.
pub fn instance_digest(instance: &PlantedInstance) -> String {
    Sha256::digest(instance.to_json().as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Timings {
    pub generate_ms: f64,
    pub solve_ms: f64,
    pub round_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub cell: usize,
    pub trial: usize,
    pub seed: u64,
    pub digest: String,
    pub xi: f64,
    pub psi: f64,
    pub nu: f64,
    pub valid: bool,
    pub solved: bool,
    pub objective: Option<f64>,
    pub max_residual: Option<f64>,
    pub t_size: usize,
    pub t_overlap: usize,
    pub q_size: Option<usize>,
    pub success: bool,
    pub overlap_bound_holds: Option<bool>,
    /// Recovery failure reason or `NotConverged` for a solver failure.
    pub failure: Option<String>,
    pub timings: Timings,
}

/// Generates, solves and rounds one instance of `model` with `seed`.
///
/// The adversary seed is mixed with the trial seed so different trials see
/// different deletions while the pre-adversary instance only depends on
/// `seed`.
pub fn run_trial(model: &ModelParams, solver: &SolverConfig, xi: f64, recovery: &RecoveryConfig, seed: u64) -> Result<TrialRecord> {
    let mut params = model.clone().with_seed(seed);
    params.adversary.seed = derive_seed(seed, params.adversary.seed ^ 0xad7e_25a7);
    let rp = compute_params_with_kappa(&params, xi, recovery.kappa)?;

    let clock = Instant::now();
    let instance = generate(&params)?;
    let mut timings = Timings {
        generate_ms: clock.elapsed().as_secs_f64() * 1e3,
        ..Default::default()
    };
    let mut record = TrialRecord {
        cell: 0,
        trial: 0,
        seed,
        digest: instance_digest(&instance),
        xi,
        psi: rp.psi,
        nu: rp.nu,
        valid: rp.valid,
        solved: false,
        objective: None,
        max_residual: None,
        t_size: 0,
        t_overlap: 0,
        q_size: None,
        success: false,
        overlap_bound_holds: None,
        failure: None,
        timings,
    };
    if !rp.valid && recovery.skip_invalid {
        record.failure = Some(format!("{:?}", FailureReason::InvalidNu));
        return Ok(record);
    }

    let clock = Instant::now();
    let solved = solve_sdp(&instance.graph, params.k, solver);
    timings.solve_ms = clock.elapsed().as_secs_f64() * 1e3;
    let sol = match solved {
        Ok(sol) => sol,
        Err(Error::NotConverged { partial, .. }) => {
            record.objective = Some(partial.objective);
            record.max_residual = Some(partial.residuals.max());
            record.failure = Some("NotConverged".into());
            record.timings = timings;
            return Ok(record);
        }
        Err(e) => return Err(e),
    };
    record.solved = true;
    record.objective = Some(sol.objective);
    record.max_residual = Some(sol.residuals.max());

    let clock = Instant::now();
    let result = recover(&instance, &sol, &rp);
    timings.round_ms = clock.elapsed().as_secs_f64() * 1e3;
    record.t_size = result.t.len();
    record.t_overlap = result.t_overlap.unwrap_or(0);
    record.q_size = result.q.as_ref().map(Vec::len);
    record.success = result.success == Some(true);
    record.overlap_bound_holds = result.overlap_bound_holds;
    record.failure = result.failure_reason.map(|r| format!("{r:?}"));
    record.timings = timings;
    Ok(record)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub cell: usize,
    pub params: ModelParams,
    pub xi: f64,
    pub nu: f64,
    pub success_rate: f64,
    /// Mean of `|T intersect S| / k`.
    pub mean_t_overlap: f64,
    /// Mean objective over trials that produced a solution; NaN if none did.
    pub mean_objective: f64,
}

/// Everything a sweep produced; also written as `manifest.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub config: ExperimentConfig,
    /// Resolved `xi` per `(n, p)` as `"n=<n>,p=<p>"`.
    pub xi: BTreeMap<String, f64>,
    pub cells: Vec<CellSummary>,
    pub trials: Vec<TrialRecord>,
}

pub const CELLS_FILE: &str = "cells.csv";
pub const TRIALS_FILE: &str = "trials.csv";
pub const MANIFEST_FILE: &str = "manifest.json";

pub const CELL_COLUMNS: [&str; 13] = [
    "n",
    "k",
    "p",
    "r",
    "s",
    "t",
    "d",
    "gamma",
    "lambda",
    "nu",
    "success_rate",
    "mean_T_overlap",
    "mean_objective",
];

const TRIAL_COLUMNS: [&str; 17] = [
    "cell",
    "trial",
    "seed",
    "digest",
    "nu",
    "solved",
    "objective",
    "max_residual",
    "t_size",
    "t_overlap",
    "q_size",
    "success",
    "overlap_bound_holds",
    "failure",
    "generate_ms",
    "solve_ms",
    "round_ms",
];

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn resolve_xi(recovery: &RecoveryConfig, n: usize, p: f64) -> Result<f64> {
    match recovery.xi {
        XiSource::Fixed(xi) => Ok(xi),
        XiSource::Estimated {
            trials,
            multiplier,
            seed,
        } => Ok(multiplier * estimate_xi_with_kappa(n, p, trials, seed, recovery.kappa)?),
    }
}

/// Runs every cell of `config` and writes `cells.csv` (deterministic),
/// `trials.csv` (with timings) and `manifest.json` to `config.output_dir`.
///
/// Rows are flushed as soon as they are complete, so an interrupted sweep
/// leaves a valid prefix of both CSV files.
pub fn run_sweep(config: &ExperimentConfig) -> Result<RunRecord> {
    config.validate()?;
    fs::create_dir_all(&config.output_dir)?;
    let csv_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
    let mut cells_csv = csv::Writer::from_writer(File::create(config.output_dir.join(CELLS_FILE))?);
    let mut trials_csv = csv::Writer::from_writer(File::create(config.output_dir.join(TRIALS_FILE))?);
    cells_csv.write_record(CELL_COLUMNS).map_err(csv_err)?;
    trials_csv.write_record(TRIAL_COLUMNS).map_err(csv_err)?;
    cells_csv.flush()?;
    trials_csv.flush()?;

    let mut record = RunRecord {
        config: config.clone(),
        xi: BTreeMap::new(),
        cells: Vec::new(),
        trials: Vec::new(),
    };
    for (cell, params) in config.cells()?.into_iter().enumerate() {
        let key = format!("n={},p={}", params.n, params.p);
        let xi = match record.xi.get(&key) {
            Some(&xi) => xi,
            None => {
                let xi = resolve_xi(&config.recovery, params.n, params.p)?;
                record.xi.insert(key, xi);
                xi
            }
        };
        let mut trials = Vec::with_capacity(config.trials_per_cell);
        for trial in 0..config.trials_per_cell {
            let seed = trial_seed(config.seed_base, cell, trial);
            let mut t = run_trial(&params, &config.solver, xi, &config.recovery, seed)?;
            t.cell = cell;
            t.trial = trial;
            trials_csv
                .write_record([
                    t.cell.to_string(),
                    t.trial.to_string(),
                    t.seed.to_string(),
                    t.digest.clone(),
                    t.nu.to_string(),
                    t.solved.to_string(),
                    opt(t.objective),
                    opt(t.max_residual),
                    t.t_size.to_string(),
                    t.t_overlap.to_string(),
                    opt(t.q_size),
                    t.success.to_string(),
                    opt(t.overlap_bound_holds),
                    t.failure.clone().unwrap_or_default(),
                    format!("{:.3}", t.timings.generate_ms),
                    format!("{:.3}", t.timings.solve_ms),
                    format!("{:.3}", t.timings.round_ms),
                ])
                .map_err(csv_err)?;
            trials_csv.flush()?;
            trials.push(t);
        }
        let count = trials.len() as f64;
        let objectives: Vec<f64> = trials.iter().filter_map(|t| t.objective.filter(|_| t.solved)).collect();
        let summary = CellSummary {
            cell,
            xi,
            nu: trials[0].nu,
            success_rate: trials.iter().filter(|t| t.success).count() as f64 / count,
            mean_t_overlap: trials.iter().map(|t| t.t_overlap as f64 / params.k as f64).sum::<f64>() / count,
            mean_objective: if objectives.is_empty() {
                f64::NAN
            } else {
                objectives.iter().sum::<f64>() / objectives.len() as f64
            },
            params: params.clone(),
        };
        cells_csv
            .write_record([
                params.n.to_string(),
                params.k.to_string(),
                params.p.to_string(),
                params.r.to_string(),
                params.s.to_string(),
                params.t.to_string(),
                params.d.to_string(),
                params.gamma.to_string(),
                params.lambda.to_string(),
                summary.nu.to_string(),
                summary.success_rate.to_string(),
                summary.mean_t_overlap.to_string(),
                summary.mean_objective.to_string(),
            ])
            .map_err(csv_err)?;
        cells_csv.flush()?;
        record.cells.push(summary);
        record.trials.extend(trials);
    }
    let manifest = serde_json::to_string_pretty(&record)?;
    fs::write(config.output_dir.join(MANIFEST_FILE), manifest)?;
    Ok(record)
}
