use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::chung_lu::{validate_corollary_params_with, ChungLuParams, CorollaryInputs};
use crate::error::{domain, Result};

pub const PHASE_CSV_HEADER: &str = "beta,s,c,n,tau,theta,epsilon,b,a,q,rho,r,k,\
range_lower_ok,range_upper_ok,range_ok,q_check_ok,condition_check_ok,\
ocklk_lower_ok,ocklk_upper_ok,ocklk_ok,region";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseConfig {
    pub n: usize,
    pub tau: f64,
    pub beta_grid: Vec<f64>,
    pub s_grid: Vec<f64>,
    pub epsilon: f64,
    pub theta: f64,
}

fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..points)
        .map(|i| (a + (b - a) * i as f64 / (points - 1).max(1) as f64).exp())
        .collect()
}

impl PhaseConfig {
    /// 25 log-spaced β in `[0.01, 0.95]` and 40 log-spaced `s` in
    /// `[1e-5, 0.45]`, with `ε = 0.1`.
    pub fn with_default_grids(n: usize, tau: f64, theta: f64) -> Self {
        Self {
            n,
            tau,
            beta_grid: log_grid(0.01, 0.95, 25),
            s_grid: log_grid(1e-5, 0.45, 40),
            epsilon: 0.1,
            theta,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhaseRow {
    pub beta: f64,
    pub s: f64,
    pub c: f64,
    pub b: f64,
    pub a: f64,
    pub q: f64,
    pub rho: f64,
    pub r: usize,
    pub k: usize,
    pub range_lower_ok: bool,
    pub range_upper_ok: bool,
    pub q_check_ok: bool,
    pub condition_check_ok: bool,
    /// `(1/n) β^{-1/|τ-3|} <= θ s`.
    pub ocklk_lower_ok: bool,
    /// `s <= θ β^{(τ-1)/(3-τ)}`.
    pub ocklk_upper_ok: bool,
}

impl PhaseRow {
    pub fn range_ok(&self) -> bool {
        self.range_lower_ok && self.range_upper_ok
    }

    pub fn ocklk_ok(&self) -> bool {
        self.ocklk_lower_ok && self.ocklk_upper_ok
    }

    /// `proven` inside the parameter window where uniform seeding provably
    /// wins, else `none`.
    pub fn region(&self) -> &'static str {
        if self.range_ok() {
            "proven"
        } else {
            "none"
        }
    }
}

/// One row per `(β, s)`, β-major. The central fraction is `c = 2s`, and
/// `b` is the exact expected mean degree outside the `⌊cn⌋` heaviest
/// vertices.
pub fn phase_diagram(config: &PhaseConfig) -> Result<Vec<PhaseRow>> {
    if config.beta_grid.is_empty() || config.s_grid.is_empty() {
        return domain("phase diagram grids must be non-empty");
    }
    if config.s_grid.iter().any(|&s| !(s > 0.0 && s < 0.5)) {
        return domain("s values must lie in (0, 1/2) so that c = 2s < 1");
    }
    let params = ChungLuParams::new(config.n, config.tau)?;
    let degrees = params.expected_degrees();
    let mut prefix = Vec::with_capacity(degrees.len() + 1);
    prefix.push(0.0);
    for d in &degrees {
        prefix.push(prefix.last().copied().unwrap_or(0.0) + d);
    }
    let n = config.n;
    let tau = config.tau;
    let mut rows = Vec::with_capacity(config.beta_grid.len() * config.s_grid.len());
    for &beta in &config.beta_grid {
        for &s in &config.s_grid {
            let c = 2.0 * s;
            let r = ((c * n as f64).floor() as usize).min(n - 1);
            let b = (prefix[n] - prefix[r]) / (n - r) as f64;
            let report = validate_corollary_params_with(
                &params,
                &CorollaryInputs { n, tau, beta, s, c, epsilon: config.epsilon, theta: config.theta, b: Some(b) },
            )?;
            let ocklk_lower_ok = beta.powf(-1.0 / (tau - 3.0).abs()) / n as f64 <= config.theta * s;
            let ocklk_upper_ok = s <= config.theta * beta.powf((tau - 1.0) / (3.0 - tau));
            rows.push(PhaseRow {
                beta,
                s,
                c,
                b,
                a: report.a,
                q: report.q,
                rho: report.rho,
                r: report.r,
                k: report.k,
                range_lower_ok: report.range_lower_ok,
                range_upper_ok: report.range_upper_ok,
                q_check_ok: report.q_check_ok,
                condition_check_ok: report.condition_check_ok,
                ocklk_lower_ok,
                ocklk_upper_ok,
            });
        }
    }
    Ok(rows)
}

pub fn write_phase_csv<W: Write>(config: &PhaseConfig, rows: &[PhaseRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{PHASE_CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.beta,
            r.s,
            r.c,
            config.n,
            config.tau,
            config.theta,
            config.epsilon,
            r.b,
            r.a,
            r.q,
            r.rho,
            r.r,
            r.k,
            r.range_lower_ok,
            r.range_upper_ok,
            r.range_ok(),
            r.q_check_ok,
            r.condition_check_ok,
            r.ocklk_lower_ok,
            r.ocklk_upper_ok,
            r.ocklk_ok(),
            r.region()
        )?;
    }
    Ok(())
}
