//! Experiment plumbing: canonical scenarios, paired β-sweeps, switchover
//! verdicts, phase diagrams and the self-check suite.

pub mod phase;
pub mod scenarios;
pub mod sweep;
pub mod verdict;
pub mod verify;

pub use phase::{phase_diagram, write_phase_csv, PhaseConfig, PhaseRow};
pub use scenarios::{canonical_scenario, ScenarioParams, CANONICAL_IDS};
pub use sweep::{
    run_sweep, write_sweep_csv, ScenarioSource, SweepConfig, SweepRecord, CSV_HEADER, DEFAULT_BETA_GRID, DEFAULT_DELTA_MIN,
};
pub use verdict::{detect_switchover, SwitchoverStatus, SwitchoverVerdict};
pub use verify::{run_verify, CheckOutcome, Fault, VerifyOptions, VerifyReport, CHECK_NAMES};
