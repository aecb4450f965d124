//! Edge expansion: exact minimum cut ratios for small graphs, sampled upper
//! bounds for large ones, the large-component claim checked over every edge
//! subset, and a Monte Carlo test of the giant-component tail bound.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{Binomial, DiscreteCDF};

use crate::bounds::rho_unchecked;
use crate::dsu::DisjointSet;
use crate::error::{domain, Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::percolation::{check_probability, retention_threshold, Percolator};
use crate::rng::RngStream;

/// Largest vertex count for exhaustive bipartition enumeration.
pub const MAX_EXACT_VERTICES: usize = 24;
/// Limits for the large-component claim: every edge subset is visited.
pub const MAX_CLAIM_VERTICES: usize = 12;
pub const MAX_CLAIM_EDGES: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpansionMethod {
    /// Minimum over every eligible set: a certificate.
    Exact,
    /// Minimum over sampled candidates: only an upper bound on the true
    /// minimum.
    Probe,
}

/// Smallest `e(X, V∖X)/|X|` over `qn < |X| <= n/2`. `a_star` is infinite
/// and `witness` empty when no set size is eligible.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpansionReport {
    pub q: f64,
    pub n: usize,
    pub a_star: f64,
    pub cut: usize,
    pub witness: Option<VertexSet>,
    pub method: ExpansionMethod,
    pub graph_fingerprint: u64,
}

impl ExpansionReport {
    /// Whether `(a, q)` expansion is certified. Probe reports never certify.
    pub fn certifies(&self, a: f64) -> bool {
        self.method == ExpansionMethod::Exact && a <= self.a_star
    }
}

fn eligible_sizes(n: usize, q: f64) -> std::ops::RangeInclusive<usize> {
    let lo = (q * n as f64).floor() as usize + 1;
    lo.max(1)..=n / 2
}

fn check_q(q: f64) -> Result<()> {
    if !(0.0..0.5).contains(&q) {
        return domain(format!("expansion needs 0 <= q < 1/2, got {q}"));
    }
    Ok(())
}

fn adjacency_masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect()
}

fn mask_to_set(mask: u32) -> VertexSet {
    (0..32).filter(|&v| mask >> v & 1 == 1).collect()
}

/// `a < b` for ratios `cut_a/size_a` and `cut_b/size_b`.
fn ratio_less(cut_a: usize, size_a: usize, cut_b: usize, size_b: usize) -> bool {
    cut_a * size_b < cut_b * size_a
}

struct Best {
    cut: usize,
    size: usize,
    mask: u32,
}

impl Best {
    fn offer(slot: &mut Option<Best>, cut: usize, size: usize, mask: u32) {
        if slot.as_ref().is_none_or(|b| ratio_less(cut, size, b.cut, b.size)) {
            *slot = Some(Best { cut, size, mask });
        }
    }
}

/// Exact expansion by walking all `2^{n-1}` bipartitions in Gray-code order,
/// updating the cut one vertex at a time.
pub fn exact_edge_expansion(g: &Graph, q: f64) -> Result<ExpansionReport> {
    check_q(q)?;
    let n = g.n();
    if n > MAX_EXACT_VERTICES {
        return Err(Error::Capacity {
            what: "vertices for exact expansion (use probe mode)",
            limit: MAX_EXACT_VERTICES,
            got: n,
        });
    }
    let sizes = eligible_sizes(n, q);
    let adj = adjacency_masks(g);
    let full: u32 = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    let mut best: Option<Best> = None;
    let (mut x, mut cut, mut size) = (0u32, 0usize, 0usize);
    // Vertex n-1 stays outside X; both sides of each bipartition are tried.
    for i in 1u32..1u32 << n.saturating_sub(1) {
        let v = i.trailing_zeros() as usize;
        let inside = (adj[v] & x).count_ones() as usize;
        let deg = g.degree(v);
        if x >> v & 1 == 1 {
            x &= !(1 << v);
            cut = cut + 2 * inside - deg;
            size -= 1;
        } else {
            x |= 1 << v;
            cut = cut + deg - 2 * inside;
            size += 1;
        }
        if sizes.contains(&size) {
            Best::offer(&mut best, cut, size, x);
        }
        if sizes.contains(&(n - size)) {
            Best::offer(&mut best, cut, n - size, full & !x);
        }
    }
    Ok(report(g, q, best.map(|b| (b.cut, b.size, mask_to_set(b.mask))), ExpansionMethod::Exact))
}

fn report(g: &Graph, q: f64, best: Option<(usize, usize, VertexSet)>, method: ExpansionMethod) -> ExpansionReport {
    let (a_star, cut, witness) = match best {
        Some((cut, size, set)) => (cut as f64 / size as f64, cut, Some(set)),
        None => (f64::INFINITY, 0, None),
    };
    ExpansionReport {
        q,
        n: g.n(),
        a_star,
        cut,
        witness,
        method,
        graph_fingerprint: g.fingerprint(),
    }
}

/// Number of edges leaving `set` (given as a membership mask).
pub fn boundary_size(g: &Graph, set: &[usize], member: &[bool]) -> usize {
    set.iter()
        .map(|&v| g.neighbors(v).iter().filter(|&&u| !member[u]).count())
        .sum()
}

/// Smallest cut ratio among `samples` uniformly random sets whose sizes are
/// drawn log-uniformly from `sizes`. Returns `(cut, set)`.
pub fn sampled_min_ratio<R: Rng + ?Sized>(
    g: &Graph,
    sizes: std::ops::RangeInclusive<usize>,
    samples: usize,
    rng: &mut R,
) -> Option<(usize, VertexSet)> {
    let (lo, hi) = (*sizes.start(), *sizes.end());
    if lo > hi || hi > g.n() || lo == 0 {
        return None;
    }
    let mut pool: Vec<usize> = (0..g.n()).collect();
    let mut member = vec![false; g.n()];
    let mut best: Option<(usize, VertexSet)> = None;
    let (ln_lo, ln_hi) = ((lo as f64).ln(), (hi as f64 + 1.0).ln());
    for _ in 0..samples {
        let size = (rng.random_range(ln_lo..=ln_hi).exp().floor() as usize).clamp(lo, hi);
        for i in 0..size {
            let j = rng.random_range(i..pool.len());
            pool.swap(i, j);
        }
        let chosen = &pool[..size];
        for &v in chosen {
            member[v] = true;
        }
        let cut = boundary_size(g, chosen, &member);
        for &v in chosen {
            member[v] = false;
        }
        if best.as_ref().is_none_or(|(c, s)| ratio_less(cut, size, *c, s.len())) {
            best = Some((cut, chosen.iter().copied().collect()));
        }
    }
    best
}

/// Upper bound on the expansion from candidate sets: every singleton,
/// breadth-first balls grown from a few random roots (each prefix is a
/// candidate), and `samples` random sets with log-uniform sizes.
pub fn probe_edge_expansion(g: &Graph, q: f64, samples: usize, stream: RngStream) -> Result<ExpansionReport> {
    check_q(q)?;
    let n = g.n();
    let sizes = eligible_sizes(n, q);
    let mut rng = stream.rng();
    let mut best: Option<(usize, usize, VertexSet)> = None;
    let mut offer = |cut: usize, size: usize, set: &dyn Fn() -> VertexSet| {
        if best.as_ref().is_none_or(|(c, s, _)| ratio_less(cut, size, *c, *s)) {
            best = Some((cut, size, set()));
        }
    };
    if sizes.contains(&1) {
        for v in 0..n {
            offer(g.degree(v), 1, &|| VertexSet::from([v]));
        }
    }
    if n > 0 && !sizes.is_empty() {
        let mut member = vec![false; n];
        for _ in 0..n.min(16) {
            let root = rng.random_range(0..n);
            let order = bfs_order(g, root, *sizes.end());
            let mut cut = 0usize;
            for (i, &v) in order.iter().enumerate() {
                let inside = g.neighbors(v).iter().filter(|&&u| member[u]).count();
                cut = cut + g.degree(v) - 2 * inside;
                member[v] = true;
                if sizes.contains(&(i + 1)) {
                    offer(cut, i + 1, &|| order[..=i].iter().copied().collect());
                }
            }
            for &v in &order {
                member[v] = false;
            }
        }
    }
    if let Some((cut, set)) = sampled_min_ratio(g, sizes, samples, &mut rng) {
        let size = set.len();
        offer(cut, size, &|| set.clone());
    }
    Ok(report(g, q, best, ExpansionMethod::Probe))
}

/// Breadth-first order from `root`, continuing from the lowest unvisited
/// vertex when a component is exhausted, truncated to `limit` vertices.
fn bfs_order(g: &Graph, root: usize, limit: usize) -> Vec<usize> {
    let mut seen = vec![false; g.n()];
    let mut order = Vec::with_capacity(limit);
    let mut next_root = 0;
    let mut head = 0;
    seen[root] = true;
    order.push(root);
    while order.len() < limit {
        if head == order.len() {
            while seen[next_root] {
                next_root += 1;
            }
            seen[next_root] = true;
            order.push(next_root);
            continue;
        }
        let v = order[head];
        head += 1;
        for &u in g.neighbors(v) {
            if !seen[u] && order.len() < limit {
                seen[u] = true;
                order.push(u);
            }
        }
    }
    order
}

/// Minimum over more sets can only be smaller: for `q1 <= q2`,
/// `a_star(q1) <= a_star(q2)`. Reports are reordered by `q` first.
pub fn expansion_monotonicity_check(first: &ExpansionReport, second: &ExpansionReport) -> Result<bool> {
    if first.graph_fingerprint != second.graph_fingerprint || first.n != second.n {
        return domain("expansion reports describe different graphs");
    }
    let (lo, hi) = if first.q <= second.q { (first, second) } else { (second, first) };
    Ok(lo.a_star <= hi.a_star)
}

/// Smallest cut over all `size`-subsets, with a minimizing set.
pub fn fixed_size_min_cut(g: &Graph, size: usize) -> Result<(usize, VertexSet)> {
    let n = g.n();
    if n > MAX_EXACT_VERTICES {
        return Err(Error::Capacity {
            what: "vertices for fixed-size cut enumeration",
            limit: MAX_EXACT_VERTICES,
            got: n,
        });
    }
    if size == 0 || size > n {
        return domain(format!("subset size {size} outside 1..={n}"));
    }
    let adj = adjacency_masks(g);
    let mut best: Option<(usize, u32)> = None;
    let mut x: u32 = (1u32 << size) - 1;
    let limit = 1u64 << n;
    while u64::from(x) < limit {
        let cut: usize = (0..n)
            .filter(|&v| x >> v & 1 == 1)
            .map(|v| (adj[v] & !x).count_ones() as usize)
            .sum();
        if best.is_none_or(|(c, _)| cut < c) {
            best = Some((cut, x));
        }
        // Next mask with the same popcount.
        let c = x & x.wrapping_neg();
        let r = x.wrapping_add(c);
        if r == 0 {
            break;
        }
        x = (((r ^ x) >> 2) / c) | r;
    }
    let (cut, mask) = best.expect("at least one subset");
    Ok((cut, mask_to_set(mask)))
}

/// Average-degree floor implied by expansion, checked on an odd-order
/// graph `n = 2m+1` with `a` the minimum cut ratio over `m`-subsets.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeFloorCheck {
    pub m: usize,
    pub min_cut: usize,
    pub a: f64,
    pub mean_degree: f64,
    pub floor: f64,
    /// `mean_degree >= 2a·m/(m+1)`, decided in integers as
    /// `|E|(m+1) >= min_cut·n`.
    pub holds: bool,
}

pub fn degree_floor_check(g: &Graph) -> Result<DegreeFloorCheck> {
    let n = g.n();
    if n % 2 == 0 || n < 3 {
        return domain(format!("degree floor check needs odd n >= 3, got {n}"));
    }
    let m = n / 2;
    let (min_cut, _) = fixed_size_min_cut(g, m)?;
    let a = min_cut as f64 / m as f64;
    Ok(DegreeFloorCheck {
        m,
        min_cut,
        a,
        mean_degree: 2.0 * g.m_edges() as f64 / n as f64,
        floor: 2.0 * a * m as f64 / (m + 1) as f64,
        holds: g.m_edges() * (m + 1) >= min_cut * n,
    })
}

/// Outcome of the large-component claim for one `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimOutcome {
    pub t: usize,
    /// Edge subsets whose largest component has at most `n - t` vertices.
    pub qualifying_subsets: u64,
    /// Retained-edge mask of the first counterexample, if any.
    pub counterexample: Option<u64>,
}

impl ClaimOutcome {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// For every subset of retained edges whose largest component has at most
/// `n - t` vertices, looks for a union of components `X` with
/// `t <= |X| <= n/2` (no retained edge crosses such an `X`). Checked for
/// every `1 <= t <= n/3` in one pass over the `2^m` subsets.
pub fn verify_large_component_claim_all(g: &Graph) -> Result<Vec<ClaimOutcome>> {
    let (n, m) = (g.n(), g.m_edges());
    if n > MAX_CLAIM_VERTICES {
        return Err(Error::Capacity { what: "vertices for the large-component claim", limit: MAX_CLAIM_VERTICES, got: n });
    }
    if m > MAX_CLAIM_EDGES {
        return Err(Error::Capacity { what: "edges for the large-component claim", limit: MAX_CLAIM_EDGES, got: m });
    }
    let t_max = n / 3;
    let edges = g.edges().to_vec();
    let merged = (0u64..1 << m)
        .into_par_iter()
        .fold(
            || (DisjointSet::new(n), vec![(0u64, None::<u64>); t_max + 1]),
            |(mut dsu, mut acc), mask| {
                dsu.reset();
                for (i, &(u, v)) in edges.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        dsu.union(u, v);
                    }
                }
                let mut largest = 0;
                // Bit j set: some union of components has exactly j vertices.
                let mut reachable: u64 = 1;
                for v in 0..n {
                    if dsu.find(v) == v {
                        let size = dsu.root_size(v);
                        largest = largest.max(size);
                        reachable |= reachable << size;
                    }
                }
                for (t, slot) in acc.iter_mut().enumerate().skip(1) {
                    if largest <= n - t {
                        slot.0 += 1;
                        let window = (t..=n / 2).any(|j| reachable >> j & 1 == 1);
                        if !window && slot.1.is_none_or(|c| mask < c) {
                            slot.1 = Some(mask);
                        }
                    }
                }
                (dsu, acc)
            },
        )
        .map(|(_, acc)| acc)
        .reduce(
            || vec![(0u64, None); t_max + 1],
            |a, b| {
                a.into_iter()
                    .zip(b)
                    .map(|((ca, xa), (cb, xb))| (ca + cb, [xa, xb].into_iter().flatten().min()))
                    .collect()
            },
        );
    Ok(merged
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(t, (qualifying_subsets, counterexample))| ClaimOutcome { t, qualifying_subsets, counterexample })
        .collect())
}

pub fn verify_large_component_claim(g: &Graph, t: usize) -> Result<bool> {
    if t == 0 || 3 * t > g.n() {
        return domain(format!("claim needs 1 <= t <= n/3, got t={t}, n={}", g.n()));
    }
    Ok(verify_large_component_claim_all(g)?[t - 1].holds())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TailTestResult {
    /// Trials whose largest percolated component has at most `(1-q)n`
    /// vertices.
    pub count: u64,
    pub trials: u64,
    pub empirical_freq: f64,
    /// `ρ^n`.
    pub bound: f64,
    /// `P(Binom(trials, min(bound, 1)) >= count)`.
    pub p_value: f64,
    pub verdict: Verdict,
}

pub const TAIL_TEST_LEVEL: f64 = 1e-3;

/// Monte Carlo frequency of `|H| <= (1-q)n`, `H` a largest component of
/// `G^β`, tested one-sidedly against `P <= ρ^n`.
pub fn giant_component_tail_test(
    g: &Graph,
    beta: f64,
    q: f64,
    a: f64,
    trials: u64,
    stream: RngStream,
) -> Result<TailTestResult> {
    check_probability(beta)?;
    if !(q > 0.0 && q < 1.0 / 3.0) || !(a > 1.0) {
        return domain(format!("tail test needs a > 1 and 0 < q < 1/3, got a={a}, q={q}"));
    }
    if trials == 0 {
        return domain("at least one trial required");
    }
    let n = g.n();
    let cutoff = ((1.0 - q) * n as f64 + 1e-9).floor() as usize;
    let threshold = retention_threshold(beta);
    let count = (0..trials)
        .into_par_iter()
        .map_init(
            || Percolator::new(g),
            |perc, t| {
                perc.resample(threshold, &mut stream.derive(t).rng());
                u64::from(perc.largest_component() <= cutoff)
            },
        )
        .sum::<u64>();
    let bound = rho_unchecked(beta, a, q).powi(n as i32);
    let p_value = if count == 0 || bound >= 1.0 {
        1.0
    } else {
        let dist = Binomial::new(bound, trials).map_err(|e| Error::Domain(e.to_string()))?;
        dist.sf(count - 1)
    };
    Ok(TailTestResult {
        count,
        trials,
        empirical_freq: count as f64 / trials as f64,
        bound,
        p_value,
        verdict: if p_value < TAIL_TEST_LEVEL { Verdict::Fail } else { Verdict::Pass },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use proptest::prelude::*;

    /// Independent oracle: every subset via plain bitmask loop.
    fn brute_expansion(g: &Graph, q: f64) -> f64 {
        let n = g.n();
        let mut best = f64::INFINITY;
        for mask in 1u32..1 << n {
            let size = mask.count_ones() as usize;
            if (size as f64) <= q * n as f64 || 2 * size > n {
                continue;
            }
            let cut = g
                .edges()
                .iter()
                .filter(|&&(u, v)| (mask >> u & 1) != (mask >> v & 1))
                .count();
            best = best.min(cut as f64 / size as f64);
        }
        best
    }

    fn cut_of(g: &Graph, x: &VertexSet) -> usize {
        g.edges().iter().filter(|&&(u, v)| x.contains(u) != x.contains(v)).count()
    }

    #[test]
    fn small_examples() {
        let k4 = exact_edge_expansion(&generators::complete(4), 0.2).unwrap();
        assert_eq!(k4.a_star, 2.0);
        assert_eq!(k4.witness.as_ref().unwrap().len(), 2);
        assert_eq!(k4.cut, 4);
        let tri = exact_edge_expansion(&generators::complete(3), 0.2).unwrap();
        assert_eq!(tri.a_star, 2.0);
        assert_eq!(tri.witness.as_ref().unwrap().len(), 1);
        let split = Graph::from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        let r = exact_edge_expansion(&split, 0.1).unwrap();
        assert_eq!(r.a_star, 0.0);
        assert_eq!(cut_of(&split, r.witness.as_ref().unwrap()), 0);
        assert!(exact_edge_expansion(&generators::path(25), 0.1).is_err());
        assert!(exact_edge_expansion(&generators::path(4), 0.5).is_err());
        let none = exact_edge_expansion(&generators::path(3), 0.49).unwrap();
        assert!(none.a_star.is_infinite() && none.witness.is_none());
    }

    #[test]
    fn complete_graph_expansion() {
        for n in 2..=14 {
            let r = exact_edge_expansion(&generators::complete(n), 0.9 / n as f64).unwrap();
            assert_eq!(r.a_star, n.div_ceil(2) as f64, "K{n}");
        }
        let k20 = exact_edge_expansion(&generators::complete(20), 0.2).unwrap();
        assert_eq!(k20.a_star, 10.0);
        assert!(k20.certifies(10.0) && !k20.certifies(10.5));
    }

    #[test]
    fn monotonicity_examples() {
        let g = generators::complete(4);
        let a = exact_edge_expansion(&g, 0.1).unwrap();
        let b = exact_edge_expansion(&g, 0.26).unwrap();
        assert_eq!((a.a_star, b.a_star), (2.0, 2.0));
        assert!(expansion_monotonicity_check(&a, &b).unwrap());
        assert!(expansion_monotonicity_check(&b, &a).unwrap());
        let other = exact_edge_expansion(&generators::cycle(4), 0.1).unwrap();
        assert!(expansion_monotonicity_check(&a, &other).is_err());
    }

    #[test]
    fn probe_upper_bounds_exact() {
        let mut rng = RngStream::new(4, 0).rng();
        for i in 0..10 {
            let g = generators::gnp_connected(14, 0.35, &mut rng);
            let exact = exact_edge_expansion(&g, 0.1).unwrap();
            let probe = probe_edge_expansion(&g, 0.1, 300, RngStream::new(9, i)).unwrap();
            assert_eq!(probe.method, ExpansionMethod::Probe);
            assert!(probe.a_star >= exact.a_star);
            let w = probe.witness.clone().unwrap();
            assert_eq!(cut_of(&g, &w) as f64 / w.len() as f64, probe.a_star);
            assert!(!probe.certifies(0.0));
        }
        let big = generators::cycle(200);
        let p = probe_edge_expansion(&big, 0.0, 100, RngStream::new(1, 1)).unwrap();
        assert!(p.a_star <= 2.0 / 100.0 + 1e-12, "{}", p.a_star);
    }

    #[test]
    fn fixed_size_cuts() {
        let (cut, set) = fixed_size_min_cut(&generators::path(5), 2).unwrap();
        assert_eq!(cut, 1);
        assert_eq!(set.len(), 2);
        let (cut, _) = fixed_size_min_cut(&generators::complete(5), 2).unwrap();
        assert_eq!(cut, 6);
        let c = degree_floor_check(&generators::complete(5)).unwrap();
        assert_eq!((c.a, c.floor, c.mean_degree), (3.0, 4.0, 4.0));
        assert!(c.holds);
        assert!(degree_floor_check(&generators::cycle(6)).is_err());
    }

    #[test]
    fn large_component_examples() {
        assert!(verify_large_component_claim(&generators::path(4), 1).unwrap());
        let c5 = verify_large_component_claim_all(&generators::cycle(5)).unwrap();
        assert_eq!(c5.len(), 1);
        assert!(c5[0].holds());
        // Everything except the full cycle and the 5 single-edge deletions.
        assert_eq!(c5[0].qualifying_subsets, 32 - 6);
        assert!(verify_large_component_claim(&generators::path(4), 0).is_err());
        assert!(verify_large_component_claim_all(&generators::complete(8)).is_err());
    }

    #[test]
    fn tail_test_k20() {
        let g = generators::complete(20);
        let r = giant_component_tail_test(&g, 0.5, 0.2, 10.0, 20_000, RngStream::new(3, 0)).unwrap();
        assert!((r.bound - 0.42130140350603129426f64.powi(20)).abs() < 1e-18);
        assert_eq!(r.verdict, Verdict::Pass);
        let one = giant_component_tail_test(&g, 1.0, 0.2, 10.0, 100, RngStream::new(3, 1)).unwrap();
        assert_eq!((one.count, one.verdict), (0, Verdict::Pass));
        let vac = giant_component_tail_test(&generators::path(6), 0.1, 0.3, 1.5, 500, RngStream::new(3, 2)).unwrap();
        assert!(vac.bound >= 1.0 && vac.empirical_freq > 0.5);
        assert_eq!(vac.verdict, Verdict::Pass);
    }

    #[test]
    fn tail_test_flags_a_false_bound() {
        // P6 does not have expansion (10, 0.2); feeding that claim in must
        // be rejected by the data.
        let r = giant_component_tail_test(&generators::path(6), 0.5, 0.2, 10.0, 2000, RngStream::new(3, 3)).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn exact_matches_brute_force(n in 2usize..10, p in 0.1f64..0.9, seed in any::<u64>(), q in 0.0f64..0.49) {
            let g = generators::gnp(n, p, &mut RngStream::new(seed, 0).rng());
            let r = exact_edge_expansion(&g, q).unwrap();
            prop_assert_eq!(r.a_star, brute_expansion(&g, q));
            if let Some(w) = &r.witness {
                prop_assert_eq!(cut_of(&g, w) as f64 / w.len() as f64, r.a_star);
                prop_assert!(w.len() as f64 > q * n as f64 && 2 * w.len() <= n);
            }
        }

        #[test]
        fn monotone_in_q(n in 3usize..10, seed in any::<u64>(), q1 in 0.0f64..0.49, q2 in 0.0f64..0.49) {
            let g = generators::gnp(n, 0.5, &mut RngStream::new(seed, 1).rng());
            let a = exact_edge_expansion(&g, q1).unwrap();
            let b = exact_edge_expansion(&g, q2).unwrap();
            prop_assert!(expansion_monotonicity_check(&a, &b).unwrap());
        }
    }
}
