//! Exhaustive and statistical self-checks over the fixture corpus.

use std::str::FromStr;

use num_rational::Ratio;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{choose_small_beta, small_beta_expansion, SmallBetaExpansion};
use crate::error::{Error, Result};
use crate::expansion::{
    degree_floor_check, exact_edge_expansion, giant_component_tail_test, verify_large_component_claim_all, Verdict,
};
use crate::fixtures::{corpus, Fixture};
use crate::generators;
use crate::graph::{degree_stats, pair_count, Graph, VertexSet};
use crate::percolation::{exact_seed_law_expectation, exact_size_distribution};
use crate::rng::RngStream;
use crate::seeds::{expected_cut, small_beta_margin, SeedDistribution};
use crate::sir::sir_total;
use crate::Rational;

pub const CHECK_NAMES: [&str; 7] = [
    "percolation-sir-tv",
    "seed-cut-identity",
    "small-beta-envelope",
    "small-beta-gap",
    "large-component-claim",
    "degree-floor",
    "giant-tail",
];

const SIR_RUNS: usize = 100_000;
const TV_LIMIT: f64 = 0.01;
const TAIL_TRIALS: u64 = 100_000;
const ENVELOPE_BETAS: [f64; 4] = [0.01, 0.02, 0.05, 0.1];

/// Deliberate defects used to confirm that a check can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Flip the sign of the `β·E e(𝐒, V∖𝐒)` term of the first-order
    /// approximation.
    EnvelopeSign,
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "envelope-sign" => Ok(Fault::EnvelopeSign),
            other => Err(Error::Domain(format!("unknown fault `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    /// Substring matched against check names.
    pub filter: Option<String>,
    pub fault: Option<Fault>,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub status: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub details: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
}

fn outcome(name: &'static str, cases: usize, failures: Vec<Value>, extra: Value) -> CheckOutcome {
    CheckOutcome {
        name,
        status: if failures.is_empty() { "pass" } else { "fail" },
        cases,
        failures: failures.len(),
        details: json!({ "summary": extra, "failures": failures.into_iter().take(20).collect::<Vec<_>>() }),
    }
}

pub fn run_verify(opts: &VerifyOptions) -> Result<VerifyReport> {
    let selected: Vec<&'static str> = CHECK_NAMES
        .iter()
        .copied()
        .filter(|name| opts.filter.as_deref().is_none_or(|f| name.contains(f)))
        .collect();
    if selected.is_empty() {
        return Err(Error::Domain(format!(
            "filter `{}` matches no check; known: {}",
            opts.filter.as_deref().unwrap_or(""),
            CHECK_NAMES.join(", ")
        )));
    }
    let fixtures = corpus();
    let stream = RngStream::new(opts.seed, 0x7665);
    let checks: Result<Vec<_>> = selected
        .into_iter()
        .map(|name| match name {
            "percolation-sir-tv" => percolation_sir_tv(&fixtures, stream.derive(1)),
            "seed-cut-identity" => seed_cut_identity(&fixtures),
            "small-beta-envelope" => small_beta_envelope(&fixtures, opts.fault),
            "small-beta-gap" => small_beta_gap(&fixtures),
            "large-component-claim" => large_component_claim(&fixtures, stream.derive(2)),
            "degree-floor" => degree_floor(&fixtures),
            "giant-tail" => giant_tail(stream.derive(3)),
            _ => unreachable!("name drawn from CHECK_NAMES"),
        })
        .collect();
    let checks = checks?;
    Ok(VerifyReport { schema: 1, passed: checks.iter().all(|c| c.status == "pass"), checks })
}

fn small_fixtures(fixtures: &[Fixture], max_n: usize) -> impl Iterator<Item = &Fixture> {
    fixtures.iter().filter(move |f| f.graph().n() <= max_n)
}

/// Empirical law of the SIR(1) final size against the exact percolation law.
fn percolation_sir_tv(fixtures: &[Fixture], stream: RngStream) -> Result<CheckOutcome> {
    let names = ["P3", "P4", "C4", "triangle-pendant", "K4"];
    let mut cases = Vec::new();
    for f in fixtures.iter().filter(|f| names.contains(&f.name)) {
        for beta in [0.3, 0.5, 0.8] {
            for v in 0..f.graph().n() {
                cases.push((f, beta, v));
            }
        }
    }
    let results: Result<Vec<(f64, Value)>> = cases
        .par_iter()
        .enumerate()
        .map(|(i, &(f, beta, v))| {
            let g = f.graph();
            let seeds = VertexSet::from(vec![v]);
            let exact = exact_size_distribution::<f64>(g, beta, &seeds)?;
            let mut rng = stream.derive(i as u64).rng();
            let mut counts = vec![0usize; g.n() + 1];
            for _ in 0..SIR_RUNS {
                counts[sir_total(g, beta, &seeds, &mut rng)] += 1;
            }
            let tv = 0.5
                * exact
                    .iter()
                    .zip(&counts)
                    .map(|(p, &c)| (c as f64 / SIR_RUNS as f64 - p).abs())
                    .sum::<f64>();
            Ok((tv, json!({ "graph": f.name, "beta": beta, "seed": v, "tv": tv })))
        })
        .collect();
    let results = results?;
    let max_tv = results.iter().map(|r| r.0).fold(0.0, f64::max);
    let failures = results.iter().filter(|r| r.0 >= TV_LIMIT).map(|r| r.1.clone()).collect();
    Ok(outcome(
        "percolation-sir-tv",
        results.len(),
        failures,
        json!({ "runs": SIR_RUNS, "limit": TV_LIMIT, "max_tv": max_tv }),
    ))
}

fn subsets_of(pool: &[usize], k: usize, mut visit: impl FnMut(&[usize])) {
    fn rec(pool: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            visit(cur);
            return;
        }
        for i in start..pool.len() {
            if pool.len() - i < k - cur.len() {
                break;
            }
            cur.push(pool[i]);
            rec(pool, k, i + 1, cur, visit);
            cur.pop();
        }
    }
    rec(pool, k, 0, &mut Vec::with_capacity(k), &mut visit);
}

/// Closed-form expected seed cut against brute-force averaging, in exact
/// rationals.
fn seed_cut_identity(fixtures: &[Fixture]) -> Result<CheckOutcome> {
    let mut cases = 0;
    let mut failures = Vec::new();
    for f in small_fixtures(fixtures, 9) {
        let g = f.graph();
        for (label, support) in [("V", g.vertices()), ("C", f.scenario.central().clone())] {
            for k in 1..=support.len() {
                let closed = expected_cut::<Rational>(g, &support, k)?;
                let (mut total, mut count) = (0i128, 0i128);
                subsets_of(support.as_slice(), k, |s| {
                    let s = VertexSet::from(s.to_vec());
                    total += pair_count(g, &s, &s.complement(g.n())) as i128;
                    count += 1;
                });
                cases += 1;
                if closed != Ratio::new(total, count) {
                    failures.push(json!({ "graph": f.name, "support": label, "k": k }));
                }
            }
        }
    }
    Ok(outcome("seed-cut-identity", cases, failures, json!({})))
}

fn apply_fault(mut e: SmallBetaExpansion<f64>, k: usize, fault: Option<Fault>) -> SmallBetaExpansion<f64> {
    if fault == Some(Fault::EnvelopeSign) {
        e.first_order = 2.0 * k as f64 - e.first_order;
    }
    e
}

/// Exact `E|G^β(𝐒)|` lies inside the small-β envelope for every fixture,
/// support `V` or `C`, seed count and small β.
fn small_beta_envelope(fixtures: &[Fixture], fault: Option<Fault>) -> Result<CheckOutcome> {
    let mut jobs = Vec::new();
    for f in fixtures.iter().filter(|f| f.graph().m_edges() <= 21) {
        for (label, support) in [("V", f.graph().vertices()), ("C", f.scenario.central().clone())] {
            for k in 1..=support.len() {
                jobs.push((f, label, support.clone(), k));
            }
        }
    }
    let results: Result<Vec<Vec<Value>>> = jobs
        .par_iter()
        .map(|(f, label, support, k)| {
            let g = f.graph();
            let law = SeedDistribution::new(support.clone(), *k)?;
            let mut bad = Vec::new();
            for beta in ENVELOPE_BETAS {
                let exact = exact_seed_law_expectation::<f64>(g, beta, &law)?;
                let env = apply_fault(small_beta_expansion::<f64>(g, support, *k, beta)?, *k, fault);
                let tol = 1e-9 * exact.abs().max(1.0);
                let remainder = exact - env.first_order;
                if remainder < env.remainder_lo - tol || remainder > env.remainder_hi + tol {
                    bad.push(json!({
                        "graph": f.name, "support": label, "k": k, "beta": beta,
                        "exact": exact, "first_order": env.first_order,
                        "remainder_lo": env.remainder_lo, "remainder_hi": env.remainder_hi,
                    }));
                }
            }
            Ok(bad)
        })
        .collect();
    let failures: Vec<Value> = results?.into_iter().flatten().collect();
    Ok(outcome(
        "small-beta-envelope",
        jobs.len() * ENVELOPE_BETAS.len(),
        failures,
        json!({ "betas": ENVELOPE_BETAS }),
    ))
}

/// Wherever the degree margin is positive, the prescribed β achieves the
/// promised gap `E|G(𝐒_C)| - E|G(𝐒_V)| >= ½ c₁ β s n` exactly.
fn small_beta_gap(fixtures: &[Fixture]) -> Result<CheckOutcome> {
    let mut cases = 0;
    let mut failures = Vec::new();
    let mut details = Vec::new();
    for f in fixtures.iter().filter(|f| f.graph().m_edges() <= 21) {
        let g = f.graph();
        let (n, r) = (g.n(), f.scenario.r());
        let m2 = degree_stats::<f64>(g, &g.vertices())?.second_moment;
        for k in 1..r {
            let c1 = small_beta_margin::<f64>(&f.scenario, k)?;
            if c1 <= 0.0 {
                continue;
            }
            let s = k as f64 / n as f64;
            let choice = choose_small_beta(c1, m2, s)?;
            let ec = exact_seed_law_expectation::<f64>(g, choice.beta, &SeedDistribution::new(f.scenario.central().clone(), k)?)?;
            let ev = exact_seed_law_expectation::<f64>(g, choice.beta, &SeedDistribution::new(g.vertices(), k)?)?;
            let promised = choice.gap_per_n * n as f64;
            let row = json!({ "graph": f.name, "k": k, "c1": c1, "beta": choice.beta, "gap": ec - ev, "promised": promised });
            cases += 1;
            if ec - ev < promised * (1.0 - 1e-9) {
                failures.push(row);
            } else {
                details.push(row);
            }
        }
    }
    Ok(outcome("small-beta-gap", cases, failures, json!({ "cases": details })))
}

/// Exhaustive large-component claim on small fixtures and on random
/// connected 7-vertex graphs.
fn large_component_claim(fixtures: &[Fixture], stream: RngStream) -> Result<CheckOutcome> {
    let mut graphs: Vec<(String, Graph)> =
        small_fixtures(fixtures, 8).map(|f| (f.name.to_string(), f.graph().clone())).collect();
    let mut rng = stream.rng();
    for i in 0..50 {
        let p = rng.random_range(0.25..0.75);
        graphs.push((format!("random7-{i}"), generators::gnp_connected(7, p, &mut rng)));
    }
    let results: Result<Vec<Vec<Value>>> = graphs
        .par_iter()
        .map(|(name, g)| {
            Ok(verify_large_component_claim_all(g)?
                .into_iter()
                .filter(|o| !o.holds())
                .map(|o| json!({ "graph": name, "t": o.t, "counterexample_mask": o.counterexample }))
                .collect())
        })
        .collect();
    let failures = results?.into_iter().flatten().collect();
    Ok(outcome("large-component-claim", graphs.len(), failures, json!({})))
}

/// Minimum-cut floor on mean degree for odd-order fixtures.
fn degree_floor(fixtures: &[Fixture]) -> Result<CheckOutcome> {
    let mut cases = 0;
    let mut failures = Vec::new();
    for f in small_fixtures(fixtures, 13).filter(|f| f.graph().n() % 2 == 1 && f.graph().n() >= 3) {
        let check = degree_floor_check(f.graph())?;
        cases += 1;
        if !check.holds {
            failures.push(json!({ "graph": f.name, "check": check }));
        }
    }
    Ok(outcome("degree-floor", cases, failures, json!({})))
}

/// Frequency of "no giant component" in `K20` at β = 1/2 against `ρ^n`.
fn giant_tail(stream: RngStream) -> Result<CheckOutcome> {
    let g = generators::complete(20);
    let (beta, q) = (0.5, 0.2);
    let a = exact_edge_expansion(&g, q)?.a_star;
    let result = giant_component_tail_test(&g, beta, q, a, TAIL_TRIALS, stream)?;
    let failures = if result.verdict == Verdict::Fail { vec![json!(result)] } else { Vec::new() };
    Ok(outcome("giant-tail", 1, failures, json!({ "a": a, "result": result })))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(filter: &str, fault: Option<Fault>) -> VerifyOptions {
        VerifyOptions { filter: Some(filter.into()), fault, seed: 1 }
    }

    #[test]
    fn exact_checks_pass() {
        for name in ["seed-cut-identity", "small-beta-gap", "degree-floor", "large-component-claim"] {
            let report = run_verify(&opts(name, None)).unwrap();
            assert!(report.passed, "{}", serde_json::to_string_pretty(&report).unwrap());
        }
    }

    #[test]
    fn envelope_sign_fault_is_caught() {
        let report = run_verify(&opts("small-beta-envelope", Some(Fault::EnvelopeSign))).unwrap();
        assert!(!report.passed);
        assert!(report.checks[0].failures > 0);
    }

    #[test]
    fn unknown_filter_is_an_error() {
        assert!(run_verify(&opts("nope", None)).is_err());
        assert!("bogus".parse::<Fault>().is_err());
    }
}
