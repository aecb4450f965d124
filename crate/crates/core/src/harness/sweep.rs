use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chung_lu::{cl_scenario, sample_chung_lu, ChungLuParams};
use crate::error::{domain, io_error, Error, Result};
use crate::graph::Scenario;
use crate::percolation::{retention_threshold, EstimateWithCI, Percolator, Tally};
use crate::rng::RngStream;
use crate::seeds::SeedDistribution;

use super::scenarios::{canonical_scenario, ScenarioParams};

pub const DEFAULT_BETA_GRID: [f64; 15] = [
    0.0, 0.005, 0.01, 0.02, 0.05, 0.1, 0.2, 0.35, 0.5, 0.65, 0.8, 0.9, 0.95, 0.99, 1.0,
];
pub const MIN_TRIALS: u64 = 100;
pub const DEFAULT_DELTA_MIN: f64 = 0.01;
pub const CSV_HEADER: &str = "beta,mean_C,se_C,mean_V,se_V,diff_mean,diff_se,trials,k,n,seed";

/// Stream id reserved for sweep trials.
const SWEEP_STREAM: u64 = 0x0053_5745_4550;
/// Stream id for sampling a Chung-Lu scenario graph.
const CHUNG_LU_STREAM: u64 = 0x434c;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ScenarioSource {
    /// Scenario JSON (`graph_path`, `central`).
    File(PathBuf),
    Canonical {
        id: String,
        #[serde(default)]
        params: ScenarioParams,
    },
    ChungLu {
        n: usize,
        tau: f64,
        c: f64,
        seed: u64,
    },
}

impl ScenarioSource {
    pub fn build(&self) -> Result<Scenario> {
        match self {
            ScenarioSource::File(path) => Scenario::load(path),
            ScenarioSource::Canonical { id, params } => canonical_scenario(id, params),
            ScenarioSource::ChungLu { n, tau, c, seed } => {
                let params = ChungLuParams::new(*n, *tau)?;
                cl_scenario(sample_chung_lu(&params, RngStream::new(*seed, CHUNG_LU_STREAM)), *c)
            }
        }
    }
}

fn default_grid() -> Vec<f64> {
    DEFAULT_BETA_GRID.to_vec()
}

fn default_delta_min() -> f64 {
    DEFAULT_DELTA_MIN
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub scenario: ScenarioSource,
    /// Seed fraction; `k = ⌊s n⌋`.
    pub s: f64,
    #[serde(default = "default_grid")]
    pub beta_grid: Vec<f64>,
    pub trials: u64,
    pub master_seed: u64,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub threads: Option<usize>,
    #[serde(default = "default_delta_min")]
    pub delta_min: f64,
}

impl SweepConfig {
    /// Reads a config; relative `file` scenarios and `output` paths are
    /// resolved against the config's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(io_error(path))?;
        let mut config: SweepConfig = serde_json::from_str(&text)?;
        let dir = path.parent().unwrap_or_else(|| Path::new("."));
        if let ScenarioSource::File(p) = &mut config.scenario {
            *p = dir.join(&*p);
        }
        if let Some(out) = &mut config.output {
            *out = dir.join(&*out);
        }
        Ok(config)
    }

    /// Replaces the master seed with a decimal override (the CLI passes the
    /// `RNG_MASTER_SEED` environment variable).
    pub fn apply_seed_override(&mut self, value: Option<&str>) -> Result<()> {
        if let Some(v) = value {
            self.master_seed = v
                .trim()
                .parse()
                .map_err(|_| Error::Domain(format!("master seed override `{v}` is not a u64")))?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials < MIN_TRIALS {
            return domain(format!("trials must be at least {MIN_TRIALS}, got {}", self.trials));
        }
        if !(self.s > 0.0 && self.s <= 1.0) {
            return domain(format!("s must lie in (0, 1], got {}", self.s));
        }
        if self.beta_grid.is_empty() {
            return domain("beta grid is empty");
        }
        if self.beta_grid.iter().any(|b| !(0.0..=1.0).contains(b)) {
            return domain("beta values must lie in [0, 1]");
        }
        if self.beta_grid.windows(2).any(|w| w[0] >= w[1]) {
            return domain("beta grid must be strictly increasing");
        }
        if self.threads == Some(0) {
            return domain("threads must be positive");
        }
        if !(self.delta_min >= 0.0) {
            return domain("delta_min must be non-negative");
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SweepRecord {
    pub beta: f64,
    pub est_c: EstimateWithCI,
    pub est_v: EstimateWithCI,
    /// Paired `|G^β(𝐒_V)| - |G^β(𝐒_C)|` on the same percolation.
    pub diff: EstimateWithCI,
    pub k: usize,
    pub n: usize,
    pub seed: u64,
}

/// Paired sweep. Trial `t` at every β draws from the same derived stream:
/// first the percolation (so outcomes are coupled across β), then a central
/// seed set, then a uniform one, both evaluated on that outcome.
pub fn run_sweep(config: &SweepConfig, scenario: &Scenario) -> Result<Vec<SweepRecord>> {
    config.validate()?;
    let (n, r) = (scenario.n(), scenario.r());
    let k = (config.s * n as f64).floor() as usize;
    if k == 0 || k > r {
        return domain(format!("seed count k = ⌊s n⌋ = {k} must satisfy 1 <= k <= r = {r}"));
    }
    let central = SeedDistribution::new(scenario.central().clone(), k)?;
    let uniform = SeedDistribution::new(scenario.graph().vertices(), k)?;
    let base = RngStream::new(config.master_seed, SWEEP_STREAM);
    let g = scenario.graph();
    let work = || -> Vec<SweepRecord> {
        config
            .beta_grid
            .par_iter()
            .map(|&beta| {
                let threshold = retention_threshold(beta);
                let [c, v, d] = (0..config.trials)
                    .into_par_iter()
                    .map_init(
                        || (Percolator::new(g), Vec::with_capacity(n)),
                        |(perc, buf), t| {
                            let mut rng = base.derive(t).rng();
                            perc.resample(threshold, &mut rng);
                            central.sample_into(&mut rng, buf);
                            let size_c = perc.infected_size(buf) as i64;
                            uniform.sample_into(&mut rng, buf);
                            let size_v = perc.infected_size(buf) as i64;
                            let mut out = [Tally::default(); 3];
                            out[0].push(size_c);
                            out[1].push(size_v);
                            out[2].push(size_v - size_c);
                            out
                        },
                    )
                    .reduce(
                        || [Tally::default(); 3],
                        |a, b| [a[0].merge(b[0]), a[1].merge(b[1]), a[2].merge(b[2])],
                    );
                SweepRecord {
                    beta,
                    est_c: c.estimate(),
                    est_v: v.estimate(),
                    diff: d.estimate(),
                    k,
                    n,
                    seed: config.master_seed,
                }
            })
            .collect()
    };
    match config.threads {
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::Domain(format!("thread pool: {e}")))?;
            Ok(pool.install(work))
        }
        None => Ok(work()),
    }
}

/// Writes the sweep CSV. Floats use the shortest round-trip form, so
/// identical records give identical bytes.
pub fn write_sweep_csv<W: Write>(records: &[SweepRecord], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.beta,
            r.est_c.mean,
            r.est_c.std_error,
            r.est_v.mean,
            r.est_v.std_error,
            r.diff.mean,
            r.diff.std_error,
            r.diff.trials,
            r.k,
            r.n,
            r.seed
        )?;
    }
    Ok(())
}
