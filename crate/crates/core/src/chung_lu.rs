//! Chung-Lu power-law random graphs: vertex `i` (1-based) has weight
//! `d_i = (n/i)^{1/(τ-1)}` and `{i, j}` is an edge independently with
//! probability `min(d_i d_j / D, 1)`, `D = Σ d_k`. Vertex ids are 0-based,
//! so id `v` carries the weight of index `v + 1`.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::rho_unchecked;
use crate::error::{domain, Result};
use crate::expansion::{exact_edge_expansion, sampled_min_ratio};
use crate::graph::{Graph, Scenario, VertexSet};
use crate::rng::RngStream;
use crate::scalar::Real;

/// Above this many vertices [`sample_chung_lu`] switches from the
/// all-pairs sampler to the skipping sampler.
pub const DENSE_SAMPLER_LIMIT: usize = 20_000;
/// Central regions up to this size are probed exhaustively.
pub const XS_EXACT_LIMIT: usize = 20;

/// `d_i = (n/i)^{1/(τ-1)}` for `1 <= i <= n`.
pub fn expected_degree<T: Real>(i: usize, n: usize, tau: T) -> Result<T> {
    if i == 0 || i > n {
        return domain(format!("index {i} outside 1..={n}"));
    }
    check_tau(tau)?;
    let ratio = T::from_count(n) / T::from_count(i);
    Ok(ratio.powf(T::one() / (tau - T::one())))
}

fn check_tau<T: Real>(tau: T) -> Result<()> {
    let (two, three) = (T::from_count(2), T::from_count(3));
    if !(tau > two && tau < three) {
        return domain(format!("tau must lie in (2, 3), got {tau:?}"));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChungLuParams {
    n: usize,
    tau: f64,
    weights: Vec<f64>,
    total_weight: f64,
}

impl ChungLuParams {
    pub fn new(n: usize, tau: f64) -> Result<Self> {
        check_tau(tau)?;
        if n < 2 {
            return domain(format!("Chung-Lu graph needs n >= 2, got {n}"));
        }
        let exponent = 1.0 / (tau - 1.0);
        let weights: Vec<f64> = (1..=n).map(|i| (n as f64 / i as f64).powf(exponent)).collect();
        // Summed smallest first to limit rounding.
        let total_weight = weights.iter().rev().sum();
        Ok(Self { n, tau, weights, total_weight })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Weights by vertex id, non-increasing.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `D`.
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    /// `D/n` from the integral approximation `(τ-1)/(τ-2) (1 - n^{(2-τ)/(τ-1)})`.
    pub fn integral_weight_per_vertex(&self) -> f64 {
        let t = self.tau;
        (t - 1.0) / (t - 2.0) * (1.0 - (self.n as f64).powf((2.0 - t) / (t - 1.0)))
    }

    pub fn edge_probability(&self, u: usize, v: usize) -> f64 {
        if u == v {
            return 0.0;
        }
        (self.weights[u] * self.weights[v] / self.total_weight).min(1.0)
    }

    /// Exact `Σ_{u≠v} p_uv` for every `v`, in `O(n log n)`: since weights
    /// are sorted, the clamped probabilities form a prefix.
    pub fn expected_degrees(&self) -> Vec<f64> {
        let w = &self.weights;
        let d = self.total_weight;
        // suffix[t] = Σ_{u >= t} w_u
        let mut suffix = vec![0.0; self.n + 1];
        for u in (0..self.n).rev() {
            suffix[u] = suffix[u + 1] + w[u];
        }
        (0..self.n)
            .map(|v| {
                let t = w.partition_point(|&wu| wu * w[v] >= d);
                let (ones, rest) = if v < t {
                    (t - 1, suffix[t])
                } else {
                    (t, suffix[t] - w[v])
                };
                ones as f64 + w[v] / d * rest
            })
            .collect()
    }

    /// `Σ_{u<v} p_uv`.
    pub fn expected_edges(&self) -> f64 {
        self.expected_degrees().iter().sum::<f64>() / 2.0
    }
}

/// Samples with the all-pairs sampler up to [`DENSE_SAMPLER_LIMIT`]
/// vertices and the skipping sampler above. Row `i` draws from
/// `stream.derive(i)`, so output does not depend on the thread count.
pub fn sample_chung_lu(params: &ChungLuParams, stream: RngStream) -> Graph {
    if params.n <= DENSE_SAMPLER_LIMIT {
        sample_chung_lu_dense(params, stream)
    } else {
        sample_chung_lu_skipping(params, stream)
    }
}

fn collect_rows<F>(params: &ChungLuParams, row: F) -> Graph
where
    F: Fn(usize) -> Vec<(usize, usize)> + Sync + Send,
{
    let edges: Vec<Vec<(usize, usize)>> = (0..params.n).into_par_iter().map(row).collect();
    Graph::from_edges(params.n, edges.into_iter().flatten()).expect("sampled pairs are valid")
}

/// One Bernoulli draw per pair.
pub fn sample_chung_lu_dense(params: &ChungLuParams, stream: RngStream) -> Graph {
    collect_rows(params, |i| {
        let mut rng = stream.derive(i as u64).rng();
        (i + 1..params.n)
            .filter(|&j| rng.random::<f64>() < params.edge_probability(i, j))
            .map(|j| (i, j))
            .collect()
    })
}

/// Geometric skipping along each row: `p_ij` is non-increasing in `j`, so
/// jumps are drawn with the current probability as an upper bound and
/// accepted with ratio `p_ij / p`.
pub fn sample_chung_lu_skipping(params: &ChungLuParams, stream: RngStream) -> Graph {
    collect_rows(params, |i| {
        let mut rng = stream.derive(i as u64).rng();
        let mut row = Vec::new();
        let n = params.n;
        let mut j = i + 1;
        if j >= n {
            return row;
        }
        let mut p = params.edge_probability(i, j);
        while j < n && p > 0.0 {
            if p < 1.0 {
                let r: f64 = 1.0 - rng.random::<f64>();
                let skip = (r.ln() / (-p).ln_1p()).floor();
                if skip >= (n - j) as f64 {
                    break;
                }
                j += skip as usize;
            }
            let q = params.edge_probability(i, j);
            if rng.random::<f64>() < q / p {
                row.push((i, j));
            }
            p = q;
            j += 1;
        }
        row
    })
}

/// Scenario with central region `{0, …, ⌊cn⌋ - 1}`: the highest weights.
pub fn cl_scenario(graph: Graph, c: f64) -> Result<Scenario> {
    if !(c > 0.0 && c < 1.0) {
        return domain(format!("c must lie in (0, 1), got {c}"));
    }
    let r = (c * graph.n() as f64).floor() as usize;
    if r == 0 {
        return domain(format!("c = {c} gives an empty central region"));
    }
    Scenario::new(graph, VertexSet::range(0, r))
}

/// Expansion constant `(n/4D) c^{-(3-τ)/(τ-1)}` expected for the central
/// region.
pub fn central_expansion_target(params: &ChungLuParams, c: f64) -> f64 {
    let t = params.tau;
    params.n as f64 / (4.0 * params.total_weight) * c.powf(-(3.0 - t) / (t - 1.0))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct XsProbeReport {
    /// Smallest `X_S/|S|` found, `X_S` the edges between `S` and `C∖S`.
    pub min_ratio: f64,
    pub witness: VertexSet,
    pub exact: bool,
    pub samples: usize,
    pub a_target: f64,
}

impl XsProbeReport {
    pub fn meets_target(&self) -> bool {
        self.min_ratio >= self.a_target
    }
}

/// Minimum of `X_S/|S|` over `S ⊆ C`, `|S| <= |C|/2`: exhaustive for
/// `|C| <= 20`, otherwise over `samples` random sets with log-uniform sizes.
pub fn xs_probe(g: &Graph, central: &VertexSet, a_target: f64, samples: usize, stream: RngStream) -> Result<XsProbeReport> {
    if samples == 0 {
        return domain("xs_probe needs at least one sample");
    }
    if central.len() < 2 {
        return domain("xs_probe needs a central region with at least two vertices");
    }
    let inner = g.induced(central);
    let ids = central.as_slice();
    let (min_ratio, local, exact) = if central.len() <= XS_EXACT_LIMIT {
        let r = exact_edge_expansion(&inner, 0.0)?;
        (r.a_star, r.witness.expect("size 1 is always eligible"), true)
    } else {
        let mut rng = stream.rng();
        let (cut, set) = sampled_min_ratio(&inner, 1..=central.len() / 2, samples, &mut rng)
            .expect("non-empty size range");
        (cut as f64 / set.len() as f64, set, false)
    };
    Ok(XsProbeReport {
        min_ratio,
        witness: local.iter().map(|v| ids[v]).collect(),
        exact,
        samples,
        a_target,
    })
}

/// `c` window `n^{-1/2}/θ <= c <= θ (log n)^{-(τ-1)/(3-τ)}` under which the
/// central region's expansion is expected. May be empty at finite `n`.
pub fn central_fraction_window(n: usize, tau: f64, theta: f64) -> (f64, f64) {
    let nf = n as f64;
    let lo = nf.powf(-0.5) / theta;
    let hi = theta * nf.ln().powf(-(tau - 1.0) / (3.0 - tau));
    (lo, hi)
}

/// `s` window `√(log n / n)/θ <= s <= θ (β/log n)^{(τ-1)/(3-τ)}`.
pub fn seed_fraction_window(n: usize, tau: f64, beta: f64, theta: f64) -> (f64, f64) {
    let nf = n as f64;
    let lo = (nf.ln() / nf).sqrt() / theta;
    let hi = theta * (beta / nf.ln()).powf((tau - 1.0) / (3.0 - tau));
    (lo, hi)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorollaryInputs {
    pub n: usize,
    pub tau: f64,
    pub beta: f64,
    pub s: f64,
    pub c: f64,
    pub epsilon: f64,
    /// Strictness of `x ≪ y`, read as `x <= θ y`.
    pub theta: f64,
    /// Mean periphery degree; the exact expected value is used when absent.
    pub b: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CorollaryCLReport {
    pub inputs: CorollaryInputs,
    pub b: f64,
    pub a: f64,
    pub q: f64,
    pub rho: f64,
    pub r: usize,
    pub k: usize,
    pub range_lower_ok: bool,
    pub range_upper_ok: bool,
    pub range_ok: bool,
    pub q_check_ok: bool,
    pub condition_check_ok: bool,
}

impl CorollaryCLReport {
    pub fn all_ok(&self) -> bool {
        self.range_ok && self.q_check_ok && self.condition_check_ok
    }
}

/// Checks the parameter conditions under which uniform seeding of a
/// Chung-Lu graph beats seeding its `⌊cn⌋` heaviest vertices:
/// `q = s(c-s)(1-c)(1-β)^b/(2c)` must exceed `(1+ε) e (1-β)^a` and
/// `½ s(1-c)(1-β)^b > (1 + c/(c-s)) ρ^r + e^{-2ck/3}`.
pub fn validate_corollary_params(inputs: &CorollaryInputs) -> Result<CorollaryCLReport> {
    validate_corollary_params_with(&ChungLuParams::new(inputs.n, inputs.tau)?, inputs)
}

/// As [`validate_corollary_params`], reusing precomputed weights; `n` and
/// `tau` must match `params`.
pub fn validate_corollary_params_with(params: &ChungLuParams, inputs: &CorollaryInputs) -> Result<CorollaryCLReport> {
    let CorollaryInputs { n, tau, beta, s, c, epsilon, theta, .. } = *inputs;
    if params.n != n || params.tau != tau {
        return domain("corollary inputs do not match the Chung-Lu parameters");
    }
    if !(0.0 < s && s < c && c < 1.0) {
        return domain("corollary check needs 0 < s < c < 1");
    }
    if !(0.0..=1.0).contains(&beta) || !(epsilon > 0.0) || !(theta > 0.0 && theta <= 1.0) {
        return domain("corollary check needs beta in [0,1], epsilon > 0, theta in (0,1]");
    }
    let r = (c * n as f64).floor() as usize;
    let k = (s * n as f64).floor() as usize;
    let b = match inputs.b {
        Some(b) => b,
        None => {
            let degrees = params.expected_degrees();
            let periphery = &degrees[r.min(n)..];
            periphery.iter().sum::<f64>() / periphery.len().max(1) as f64
        }
    };
    let a = central_expansion_target(params, c);
    let survive = (1.0 - beta).powf(b);
    let q = s * (c - s) * (1.0 - c) * survive / (2.0 * c);
    let rho = if q > 0.0 { rho_unchecked(beta, a, q) } else { 0.0 };
    let (lo, hi) = seed_fraction_window(n, tau, beta, theta);
    let range_lower_ok = lo <= s;
    let range_upper_ok = s <= hi;
    let q_check_ok = q > (1.0 + epsilon) * std::f64::consts::E * (1.0 - beta).powf(a);
    let lhs = 0.5 * s * (1.0 - c) * survive;
    let rhs = (1.0 + c / (c - s)) * rho.powf(r as f64) + (-2.0 * c * k as f64 / 3.0).exp();
    Ok(CorollaryCLReport {
        inputs: *inputs,
        b,
        a,
        q,
        rho,
        r,
        k,
        range_lower_ok,
        range_upper_ok,
        range_ok: range_lower_ok && range_upper_ok,
        q_check_ok,
        condition_check_ok: lhs > rhs,
    })
}

/// Record written next to an exported Chung-Lu edge list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChungLuManifest {
    pub schema: u32,
    pub n: usize,
    pub tau: f64,
    pub seed: u64,
    #[serde(rename = "D")]
    pub total_weight: f64,
    pub mean_degree: f64,
    pub expected_mean_degree: f64,
    pub edges: usize,
    pub graph_file: String,
}

impl ChungLuManifest {
    pub fn new(params: &ChungLuParams, seed: u64, graph: &Graph, graph_file: &str) -> Self {
        Self {
            schema: 1,
            n: params.n,
            tau: params.tau,
            seed,
            total_weight: params.total_weight,
            mean_degree: 2.0 * graph.m_edges() as f64 / params.n as f64,
            expected_mean_degree: 2.0 * params.expected_edges() / params.n as f64,
            edges: graph.m_edges(),
            graph_file: graph_file.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_formula() {
        let d1: f64 = expected_degree(1, 1000, 2.5).unwrap();
        assert!((d1 - 100.0).abs() < 1e-9);
        assert_eq!(expected_degree(1000, 1000, 2.5f64).unwrap(), 1.0);
        assert!(expected_degree(0, 10, 2.5f64).is_err());
        assert!(expected_degree(1, 10, 3.0f64).is_err());
        let d32: f32 = expected_degree(8, 1000, 2.5).unwrap();
        assert!((d32 - 25.0).abs() < 1e-3);
        let p = ChungLuParams::new(500, 2.3).unwrap();
        assert!(p.weights().windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn log_slope_is_exact() {
        let p = ChungLuParams::new(5000, 2.7).unwrap();
        let w = p.weights();
        for (i, j) in [(1usize, 2usize), (3, 900), (10, 5000)] {
            let slope = (w[i - 1].ln() - w[j - 1].ln()) / ((5000.0 / i as f64).ln() - (5000.0 / j as f64).ln());
            assert!((slope - 1.0 / 1.7).abs() < 1e-12);
        }
    }

    #[test]
    fn expected_degrees_match_direct_sum() {
        let p = ChungLuParams::new(300, 2.2).unwrap();
        let fast = p.expected_degrees();
        for v in [0, 1, 2, 7, 150, 299] {
            let direct: f64 = (0..300).map(|u| p.edge_probability(u, v)).sum();
            assert!((fast[v] - direct).abs() < 1e-9, "{v}: {} vs {direct}", fast[v]);
        }
        assert_eq!(p.edge_probability(0, 1), 1.0);
    }

    #[test]
    fn clamped_pairs_always_present() {
        let p = ChungLuParams::new(100, 2.5).unwrap();
        assert!(p.weights()[0] * p.weights()[1] > p.total_weight());
        for s in 0..5 {
            assert!(sample_chung_lu(&p, RngStream::new(s, 0)).has_edge(0, 1));
            assert!(sample_chung_lu_skipping(&p, RngStream::new(s, 0)).has_edge(0, 1));
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let p = ChungLuParams::new(400, 2.5).unwrap();
        let a = sample_chung_lu(&p, RngStream::new(5, 2));
        let b = sample_chung_lu(&p, RngStream::new(5, 2));
        assert_eq!(a.edges(), b.edges());
        let c = sample_chung_lu(&p, RngStream::new(6, 2));
        assert_ne!(a.edges(), c.edges());
    }

    fn mean_and_var(xs: &[f64]) -> (f64, f64) {
        let m = xs.iter().sum::<f64>() / xs.len() as f64;
        let v = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() as f64 - 1.0);
        (m, v)
    }

    #[test]
    fn samplers_agree_in_distribution() {
        let p = ChungLuParams::new(2000, 2.5).unwrap();
        let runs = 40;
        let stats = |skip: bool| {
            let mut edges = Vec::new();
            let mut hub = Vec::new();
            for s in 0..runs {
                let stream = RngStream::new(100 + s + if skip { 1000 } else { 0 }, 0);
                let g = if skip { sample_chung_lu_skipping(&p, stream) } else { sample_chung_lu_dense(&p, stream) };
                edges.push(g.m_edges() as f64);
                hub.push(g.degree(0) as f64);
            }
            (mean_and_var(&edges), mean_and_var(&hub))
        };
        let ((de, dev), (dh, dhv)) = stats(false);
        let ((se, sev), (sh, shv)) = stats(true);
        let n = runs as f64;
        assert!((de - se).abs() < 4.0 * ((dev + sev) / n).sqrt(), "{de} vs {se}");
        assert!((dh - sh).abs() < 4.0 * ((dhv + shv) / n).sqrt(), "{dh} vs {sh}");
        let expected = p.expected_edges();
        assert!((se - expected).abs() < 4.0 * (sev / n).sqrt() + 1.0, "{se} vs {expected}");
    }

    #[test]
    fn scenario_and_target() {
        let p = ChungLuParams::new(1000, 2.5).unwrap();
        let g = sample_chung_lu(&p, RngStream::new(1, 1));
        let sc = cl_scenario(g.clone(), 0.1).unwrap();
        assert_eq!(sc.central(), &VertexSet::range(0, 100));
        assert!(cl_scenario(g, 0.0005).is_err());
        let a = central_expansion_target(&p, 0.1);
        let direct = 1000.0 / (4.0 * p.total_weight()) * 0.1f64.powf(-1.0 / 3.0);
        assert!((a - direct).abs() < 1e-12);
    }

    #[test]
    fn xs_probe_modes() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let r = xs_probe(&g, &VertexSet::from([0, 1]), 0.5, 1, RngStream::new(0, 0)).unwrap();
        assert!(r.exact && r.min_ratio == 1.0 && r.meets_target());
        let p = ChungLuParams::new(3000, 2.5).unwrap();
        let g = sample_chung_lu(&p, RngStream::new(2, 0));
        let c = VertexSet::range(0, 16);
        let exact = xs_probe(&g, &c, 0.0, 10, RngStream::new(0, 0)).unwrap();
        let oracle = crate::expansion::exact_edge_expansion(&g.induced(&c), 0.0).unwrap().a_star;
        assert_eq!(exact.min_ratio, oracle);
        assert!(exact.witness.is_subset_of(&c));
        let big = VertexSet::range(0, 60);
        let sampled = xs_probe(&g, &big, 0.0, 200, RngStream::new(0, 1)).unwrap();
        assert!(!sampled.exact && sampled.witness.is_subset_of(&big));
        assert!(sampled.witness.len() <= 30);
    }

    #[test]
    fn corollary_flags() {
        let base = CorollaryInputs {
            n: 100_000,
            tau: 2.5,
            beta: 0.5,
            s: 0.01,
            c: 0.02,
            epsilon: 0.1,
            theta: 1.0,
            b: Some(2.0),
        };
        let r = validate_corollary_params(&base).unwrap();
        let q = 0.01 * 0.01 * 0.98 * 0.25 / 0.04;
        assert!((r.q - q).abs() < 1e-15);
        assert_eq!((r.r, r.k), (2000, 1000));
        let low = validate_corollary_params(&CorollaryInputs { s: 1e-3, c: 2e-3, ..base }).unwrap();
        assert!(!low.range_lower_ok && !low.range_ok);
        let near_one = validate_corollary_params(&CorollaryInputs { beta: 1.0 - 1e-12, ..base }).unwrap();
        assert!(near_one.q < 1e-20 && !near_one.condition_check_ok);
        assert!(validate_corollary_params(&CorollaryInputs { s: 0.03, ..base }).is_err());
        let measured = validate_corollary_params(&CorollaryInputs { b: None, n: 2000, ..base }).unwrap();
        let params = ChungLuParams::new(2000, 2.5).unwrap();
        let deg = params.expected_degrees();
        let mean = deg[40..].iter().sum::<f64>() / 1960.0;
        assert!((measured.b - mean).abs() < 1e-12);
    }

    #[test]
    fn manifest_round_trip() {
        let p = ChungLuParams::new(200, 2.5).unwrap();
        let g = sample_chung_lu(&p, RngStream::new(3, 0));
        let m = ChungLuManifest::new(&p, 3, &g, "g.txt");
        let text = serde_json::to_string(&m).unwrap();
        assert!(text.contains("\"D\":") && text.contains("\"schema\":1"));
        let back: ChungLuManifest = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
    }
}
