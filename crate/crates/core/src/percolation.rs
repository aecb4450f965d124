//! Bond percolation: sampling `G^β`, infected-set sizes `|G^β(S)|`, exact
//! enumeration over all retained-edge subsets, Monte Carlo estimation and
//! the component classification used in the large-β comparison.
//!
//! Every sampled edge consumes exactly one `u32` from the generator, in edge
//! order, and is retained iff that draw is below `β · 2^32`. Two samples
//! taken from the same stream at different β are therefore coupled: the
//! retained set grows monotonically with β.

use rand::{Rng, RngCore};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dsu::DisjointSet;
use crate::error::{domain, Error, Result};
use crate::graph::{Graph, Scenario, VertexSet};
use crate::rng::RngStream;
use crate::scalar::Scalar;
use crate::seeds::SeedDistribution;

/// Largest edge count accepted by the `2^m` enumeration oracles.
pub const MAX_ENUMERATION_EDGES: usize = 24;

/// Integer threshold `t` with `P(u32 < t) = β` (up to `2^-32`).
pub fn retention_threshold(beta: f64) -> u64 {
    if beta.is_nan() || beta <= 0.0 {
        0
    } else if beta >= 1.0 {
        1 << 32
    } else {
        (beta * 4_294_967_296.0) as u64
    }
}

pub(crate) fn check_probability<T: Scalar>(beta: T) -> Result<()> {
    if beta < T::zero() || beta > T::one() {
        return domain(format!("probability {beta:?} outside [0, 1]"));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub size: usize,
    pub central_count: usize,
}

/// One sampled percolation `G^β`.
///
/// Component labels index into [`components`](Self::components), which is
/// ordered by decreasing central count, ties broken by smallest member.
/// Without a central region every count is zero and the order is by
/// smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PercolationOutcome {
    retained: Vec<bool>,
    component_id: Vec<usize>,
    components: Vec<Component>,
}

impl PercolationOutcome {
    pub fn from_retained(g: &Graph, retained: Vec<bool>, central: Option<&VertexSet>) -> Self {
        assert_eq!(retained.len(), g.m_edges(), "one flag per edge");
        let n = g.n();
        let mut dsu = DisjointSet::new(n);
        for (&(u, v), &keep) in g.edges().iter().zip(&retained) {
            if keep {
                dsu.union(u, v);
            }
        }
        let mut raw_of_root = vec![usize::MAX; n];
        let mut raw_label = vec![0; n];
        let mut raw = Vec::<Component>::new();
        for v in 0..n {
            let root = dsu.find(v);
            if raw_of_root[root] == usize::MAX {
                raw_of_root[root] = raw.len();
                raw.push(Component {
                    size: 0,
                    central_count: 0,
                });
            }
            raw_label[v] = raw_of_root[root];
            raw[raw_label[v]].size += 1;
        }
        if let Some(c) = central {
            for v in c.iter() {
                raw[raw_label[v]].central_count += 1;
            }
        }
        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by_key(|&j| (std::cmp::Reverse(raw[j].central_count), j));
        let mut relabel = vec![0; raw.len()];
        for (new, &old) in order.iter().enumerate() {
            relabel[old] = new;
        }
        Self {
            retained,
            component_id: raw_label.into_iter().map(|l| relabel[l]).collect(),
            components: order.into_iter().map(|j| raw[j]).collect(),
        }
    }

    pub fn retained(&self) -> &[bool] {
        &self.retained
    }

    pub fn component_id(&self) -> &[usize] {
        &self.component_id
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn n(&self) -> usize {
        self.component_id.len()
    }

    pub fn largest_component_size(&self) -> usize {
        self.components.iter().map(|c| c.size).max().unwrap_or(0)
    }

    /// `|G^β(S)|`: total size of the components meeting `seeds`.
    pub fn infected_size(&self, seeds: &VertexSet) -> usize {
        let mut hit = vec![false; self.components.len()];
        seeds
            .iter()
            .map(|v| {
                let j = self.component_id[v];
                if std::mem::replace(&mut hit[j], true) {
                    0
                } else {
                    self.components[j].size
                }
            })
            .sum()
    }
}

fn draw_retained<R: RngCore + ?Sized>(m: usize, beta: f64, rng: &mut R) -> Vec<bool> {
    let threshold = retention_threshold(beta);
    (0..m).map(|_| u64::from(rng.next_u32()) < threshold).collect()
}

/// Samples `G^β`; `β` outside `[0, 1]` is clamped.
pub fn sample_percolation<R: RngCore + ?Sized>(g: &Graph, beta: f64, rng: &mut R) -> PercolationOutcome {
    let retained = draw_retained(g.m_edges(), beta, rng);
    PercolationOutcome::from_retained(g, retained, None)
}

/// Samples `G^β` on the scenario graph, with central counts filled in.
pub fn sample_scenario_percolation<R: RngCore + ?Sized>(
    scenario: &Scenario,
    beta: f64,
    rng: &mut R,
) -> PercolationOutcome {
    let g = scenario.graph();
    let retained = draw_retained(g.m_edges(), beta, rng);
    PercolationOutcome::from_retained(g, retained, Some(scenario.central()))
}

/// Allocation-free resampling workspace for Monte Carlo loops. Consumes the
/// generator exactly like [`sample_percolation`].
pub struct Percolator<'g> {
    graph: &'g Graph,
    dsu: DisjointSet,
    mark: Vec<u32>,
    epoch: u32,
}

impl<'g> Percolator<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        Self {
            graph,
            dsu: DisjointSet::new(graph.n()),
            mark: vec![0; graph.n()],
            epoch: 0,
        }
    }

    pub fn resample<R: RngCore + ?Sized>(&mut self, threshold: u64, rng: &mut R) {
        self.dsu.reset();
        for &(u, v) in self.graph.edges() {
            if u64::from(rng.next_u32()) < threshold {
                self.dsu.union(u, v);
            }
        }
    }

    fn next_epoch(&mut self) -> u32 {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.mark.fill(0);
            self.epoch = 1;
        }
        self.epoch
    }

    pub fn infected_size(&mut self, seeds: &[usize]) -> usize {
        let epoch = self.next_epoch();
        let mut total = 0;
        for &s in seeds {
            let root = self.dsu.find(s);
            if self.mark[root] != epoch {
                self.mark[root] = epoch;
                total += self.dsu.root_size(root);
            }
        }
        total
    }

    pub fn largest_component(&mut self) -> usize {
        (0..self.graph.n())
            .map(|v| {
                let r = self.dsu.find(v);
                self.dsu.root_size(r)
            })
            .max()
            .unwrap_or(0)
    }
}

/// Exact `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Visits every retained-edge subset with its retained count and the
/// resulting union-find structure.
fn for_each_edge_subset(g: &Graph, mut visit: impl FnMut(usize, &mut DisjointSet)) -> Result<()> {
    let m = g.m_edges();
    if m > MAX_ENUMERATION_EDGES {
        return Err(Error::Capacity {
            what: "edge count for 2^m enumeration",
            limit: MAX_ENUMERATION_EDGES,
            got: m,
        });
    }
    let edges = g.edges();
    let mut dsu = DisjointSet::new(g.n());
    for mask in 0u32..(1u32 << m) {
        dsu.reset();
        let mut bits = mask;
        while bits != 0 {
            let e = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            dsu.union(edges[e].0, edges[e].1);
        }
        visit(mask.count_ones() as usize, &mut dsu);
    }
    Ok(())
}

/// `β^j (1-β)^(m-j)` for `j = 0..=m`.
fn subset_weights<T: Scalar>(beta: T, m: usize) -> Vec<T> {
    let keep = beta;
    let drop = T::one() - beta;
    (0..=m)
        .map(|j| num_traits::pow(keep, j) * num_traits::pow(drop, m - j))
        .collect()
}

/// Exact distribution of `|G^β(S)|`: entry `s` is `P(|G^β(S)| = s)`.
pub fn exact_size_distribution<T: Scalar>(g: &Graph, beta: T, seeds: &VertexSet) -> Result<Vec<T>> {
    check_probability(beta)?;
    let m = g.m_edges();
    let n = g.n();
    let mut counts = vec![vec![0u64; n + 1]; m + 1];
    let mut roots = Vec::new();
    for_each_edge_subset(g, |j, dsu| {
        roots.clear();
        let mut size = 0;
        for s in seeds.iter() {
            let r = dsu.find(s);
            if !roots.contains(&r) {
                roots.push(r);
                size += dsu.root_size(r);
            }
        }
        counts[j][size] += 1;
    })?;
    let w = subset_weights(beta, m);
    Ok((0..=n)
        .map(|s| {
            (0..=m).fold(T::zero(), |acc, j| {
                acc + w[j] * T::from_u64(counts[j][s]).expect("count fits scalar")
            })
        })
        .collect())
}

/// Exact `E|G^β(S)|` by enumerating all `2^m` retained-edge subsets.
pub fn exact_expectation<T: Scalar>(g: &Graph, beta: T, seeds: &VertexSet) -> Result<T> {
    let dist = exact_size_distribution(g, beta, seeds)?;
    Ok(dist
        .into_iter()
        .enumerate()
        .fold(T::zero(), |acc, (s, p)| acc + T::from_count(s) * p))
}

/// Exact `E|G^β(𝐒)|` for `𝐒 ~ Uni(L, k)`, averaging over seeds in closed
/// form per retained-edge subset: a component with `c` members of `L` is hit
/// by `C(|L|, k) - C(|L| - c, k)` of the `k`-subsets.
pub fn exact_seed_law_expectation<T: Scalar>(g: &Graph, beta: T, law: &SeedDistribution) -> Result<T> {
    check_probability(beta)?;
    let m = g.m_edges();
    let n = g.n();
    let pool = law.support().len();
    let k = law.k();
    let total = binomial(pool, k);
    let in_support = law.support().mask(n);
    let mut sums = vec![0u128; m + 1];
    let mut support_count = vec![0usize; n];
    for_each_edge_subset(g, |j, dsu| {
        support_count.fill(0);
        for v in 0..n {
            if in_support[v] {
                let r = dsu.find(v);
                support_count[r] += 1;
            }
        }
        let mut acc = 0u128;
        for v in 0..n {
            let c = support_count[v];
            if c > 0 {
                // v is a root here since only roots accumulate counts.
                acc += dsu.root_size(v) as u128 * (total - binomial(pool - c, k));
            }
        }
        sums[j] += acc;
    })?;
    let w = subset_weights(beta, m);
    let num = (0..=m).fold(T::zero(), |acc, j| {
        acc + w[j] * T::from_u128(sums[j]).expect("sum fits scalar")
    });
    Ok(num / T::from_u128(total).expect("binomial fits scalar"))
}

/// Running `(count, Σx, Σx²)` over integer observations. Merging is exact,
/// so aggregates do not depend on how trials were split across threads.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub count: u64,
    pub sum: i128,
    pub sum_sq: u128,
}

impl Tally {
    pub fn push(&mut self, x: i64) {
        self.count += 1;
        self.sum += i128::from(x);
        self.sum_sq += (i128::from(x) * i128::from(x)) as u128;
    }

    pub fn merge(self, other: Tally) -> Tally {
        Tally {
            count: self.count + other.count,
            sum: self.sum + other.sum,
            sum_sq: self.sum_sq + other.sum_sq,
        }
    }

    pub fn estimate(&self) -> EstimateWithCI {
        EstimateWithCI::from_tally(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimateWithCI {
    pub mean: f64,
    pub std_error: f64,
    pub trials: u64,
    pub ci95: (f64, f64),
}

impl EstimateWithCI {
    pub fn from_tally(t: &Tally) -> Self {
        let n = t.count.max(1) as f64;
        let mean = t.sum as f64 / n;
        let std_error = if t.count < 2 {
            0.0
        } else {
            // Σ(x - x̄)² = Σx² - (Σx)²/N, computed exactly in integers.
            let count = i128::from(t.count as i64);
            let centered = t.sum_sq as i128 * count - t.sum * t.sum;
            let var = centered.max(0) as f64 / (n * (n - 1.0));
            (var / n).sqrt()
        };
        Self {
            mean,
            std_error,
            trials: t.count,
            ci95: (mean - 1.96 * std_error, mean + 1.96 * std_error),
        }
    }

    pub fn below_zero(&self) -> bool {
        self.ci95.1 < 0.0
    }

    pub fn above_zero(&self) -> bool {
        self.ci95.0 > 0.0
    }
}

/// Seed law for Monte Carlo estimation.
#[derive(Clone, Debug)]
pub enum Seeding {
    Fixed(VertexSet),
    Uniform(SeedDistribution),
}

impl Seeding {
    fn draw<R: Rng + ?Sized>(&self, rng: &mut R, buf: &mut Vec<usize>) {
        match self {
            Seeding::Fixed(s) => {
                buf.clear();
                buf.extend(s.iter());
            }
            Seeding::Uniform(d) => d.sample_into(rng, buf),
        }
    }
}

/// Monte Carlo estimate of `E|G^β(𝐒)|`. Trial `t` draws its percolation
/// and then its seed set from `stream.derive(t)`, so the result is
/// bit-identical for any thread count.
pub fn estimate_expectation(
    g: &Graph,
    beta: f64,
    seeding: &Seeding,
    trials: u64,
    stream: RngStream,
) -> Result<EstimateWithCI> {
    check_probability(beta)?;
    if trials == 0 {
        return domain("at least one trial required");
    }
    let threshold = retention_threshold(beta);
    let tally = (0..trials)
        .into_par_iter()
        .map_init(
            || (Percolator::new(g), Vec::new()),
            |(perc, buf), t| {
                let mut rng = stream.derive(t).rng();
                perc.resample(threshold, &mut rng);
                seeding.draw(&mut rng, buf);
                let mut one = Tally::default();
                one.push(perc.infected_size(buf) as i64);
                one
            },
        )
        .reduce(Tally::default, Tally::merge);
    Ok(tally.estimate())
}

/// Probability that a uniform `k`-subset of a pool of `pool` elements misses
/// a fixed `h`-subset: `∏_{i<k} (1 - h/(pool - i))`, zero once `h + k > pool`.
pub fn seed_miss_probability<T: Scalar>(h: usize, pool: usize, k: usize) -> Result<T> {
    if h > pool || k == 0 || k > pool {
        return domain(format!("seed_miss_probability needs 0 <= h <= pool and 1 <= k <= pool (h={h}, pool={pool}, k={k})"));
    }
    if h + k > pool {
        return Ok(T::zero());
    }
    let h_t = T::from_count(h);
    Ok((0..k).fold(T::one(), |acc, i| acc * (T::one() - h_t / T::from_count(pool - i))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KClass {
    /// The component with the most central vertices.
    Giant,
    /// Isolated vertex outside the central region.
    IsolatedPeriphery,
    /// Component with `h_j <= c_j / (c - s)`.
    CenterHeavy,
    Remainder,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KPartition {
    /// Vertex counts `|V_1|, ..., |V_4|`.
    pub sizes: [usize; 4],
    /// `|C \ V_1|`.
    pub c_minus_v1: usize,
    /// Class of each component, indexed by the outcome's component label.
    pub classes: Vec<KClass>,
    pub giant_label: usize,
}

/// Central count per component label, recomputed from the scenario.
fn central_counts(outcome: &PercolationOutcome, scenario: &Scenario) -> Vec<usize> {
    let mut counts = vec![0; outcome.components().len()];
    for v in scenario.central().iter() {
        counts[outcome.component_id()[v]] += 1;
    }
    counts
}

/// Classifies the components of `outcome` for seed count `k`, using the
/// realized fraction `s = k / n`. The center-heavy test
/// `h_j <= c_j / (c - s)` is evaluated exactly as `h_j (r - k) <= c_j n`.
pub fn k_partition(outcome: &PercolationOutcome, scenario: &Scenario, k: usize) -> Result<KPartition> {
    let (n, r) = (scenario.n(), scenario.r());
    if outcome.n() != n {
        return domain("outcome and scenario disagree on n");
    }
    if k == 0 || k >= r {
        return domain(format!("k_partition needs 0 < k < r (k={k}, r={r})"));
    }
    let counts = central_counts(outcome, scenario);
    let giant = (0..counts.len())
        .max_by_key(|&j| (counts[j], std::cmp::Reverse(j)))
        .expect("at least one component");
    let mut sizes = [0usize; 4];
    let classes: Vec<KClass> = outcome
        .components()
        .iter()
        .enumerate()
        .map(|(j, comp)| {
            let (h, c) = (comp.size, counts[j]);
            let class = if j == giant {
                KClass::Giant
            } else if h == 1 && c == 0 {
                KClass::IsolatedPeriphery
            } else if h * (r - k) <= c * n {
                KClass::CenterHeavy
            } else {
                KClass::Remainder
            };
            let slot = match class {
                KClass::Giant => 0,
                KClass::IsolatedPeriphery => 1,
                KClass::CenterHeavy => 2,
                KClass::Remainder => 3,
            };
            sizes[slot] += h;
            class
        })
        .collect();
    Ok(KPartition {
        sizes,
        c_minus_v1: r - counts[giant],
        classes,
        giant_label: giant,
    })
}

impl KPartition {
    /// Per-outcome lower bound on the uniform-minus-central gain:
    /// `-n e^{-|V_1| k / n} + (k/n)|V_2| - |C \ V_1| / (c - s)`.
    pub fn gain_lower_bound(&self, n: usize, r: usize, k: usize) -> f64 {
        let (nf, kf) = (n as f64, k as f64);
        let c_minus_s = (r - k) as f64 / nf;
        -nf * (-(self.sizes[0] as f64) * kf / nf).exp() + kf / nf * self.sizes[1] as f64
            - self.c_minus_v1 as f64 / c_minus_s
    }
}

/// Exact `E_𝐒|G^β(𝐒_V)| - E_𝐒|G^β(𝐒_C)|` for a fixed outcome:
/// `Σ_j h_j (q_j - p_j)` with the miss probabilities of each component.
pub fn conditional_seed_gain(outcome: &PercolationOutcome, scenario: &Scenario, k: usize) -> Result<f64> {
    let (n, r) = (scenario.n(), scenario.r());
    let counts = central_counts(outcome, scenario);
    outcome
        .components()
        .iter()
        .zip(&counts)
        .try_fold(0.0, |acc, (comp, &c)| {
            let p: f64 = seed_miss_probability(comp.size, n, k)?;
            let q: f64 = seed_miss_probability(c, r, k)?;
            Ok(acc + comp.size as f64 * (q - p))
        })
}
