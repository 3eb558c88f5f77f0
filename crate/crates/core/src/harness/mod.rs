//! Seeded trials and parameter sweeps.
//!
//! A sweep is the Cartesian product of the configured parameter values. Each
//! cell runs `trials_per_cell` trials whose seeds derive from
//! `(seed_base, cell, trial)`, so every row can be replayed on its own.
//!
//! Outputs in `output_dir`:
//!
//! - `cells.csv`: one row per cell with columns
//!   `n,k,p,r,s,t,d,gamma,lambda,nu,success_rate,mean_T_overlap,mean_objective`.
//!   It contains no timings and is byte-identical across runs.
//! - `trials.csv`: one row per trial, including wall-clock phase timings.
//! - `manifest.json`: the configuration, resolved `xi` values and all records.

mod config;
mod run;

pub use config::{ExperimentConfig, ModelRanges, RecoveryConfig, Sweep, XiSource};
pub use run::{
    instance_digest, run_sweep, run_trial, trial_seed, CellSummary, RunRecord, Timings, TrialRecord, CELLS_FILE,
    CELL_COLUMNS, MANIFEST_FILE, TRIALS_FILE,
};
