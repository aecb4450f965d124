//! Deterministic and random graph families used as fixtures and canonical
//! scenarios.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{domain, Result};
use crate::graph::Graph;

fn build(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
    Graph::from_edges(n, edges).expect("generator produced a valid edge list")
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Graph {
    build(n, (1..n).map(|i| (i - 1, i)))
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    build(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Graph {
    build(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// Star `K_{1,leaves}` with center 0.
pub fn star(leaves: usize) -> Graph {
    build(leaves + 1, (1..=leaves).map(|v| (0, v)))
}

/// Two adjacent hubs `0` and `1`, each with `leaves` private leaves.
pub fn double_star(leaves: usize) -> Graph {
    let n = 2 + 2 * leaves;
    let edges = std::iter::once((0, 1))
        .chain((0..leaves).map(|i| (0, 2 + i)))
        .chain((0..leaves).map(|i| (1, 2 + leaves + i)));
    build(n, edges)
}

/// Triangle on `0, 1, 2` with pendant `3` attached to `2`.
pub fn triangle_with_pendant() -> Graph {
    build(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
}

/// Hub `0` joined to a cycle on `1..=rim`.
pub fn wheel(rim: usize) -> Graph {
    let edges = (1..=rim)
        .map(|i| (0, i))
        .chain((1..=rim).map(|i| (i, i % rim + 1)));
    build(rim + 1, edges)
}

/// Three-dimensional hypercube.
pub fn cube() -> Graph {
    build(
        8,
        (0..8usize).flat_map(|u| (0..3).map(move |b| (u, u ^ (1 << b))).filter(|&(u, v)| u < v)),
    )
}

/// Complete bipartite graph with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    build(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
}

/// Clique on `0..core` with `pendants` leaves; leaf `core + i` hangs off
/// core vertex `i`.
pub fn clique_core_pendants(core: usize, pendants: usize) -> Result<Graph> {
    if core < 2 || pendants > core {
        return domain(format!(
            "clique-core-pendants needs core >= 2 and pendants <= core (got {core}, {pendants})"
        ));
    }
    let clique = (0..core).flat_map(|u| (u + 1..core).map(move |v| (u, v)));
    let leaves = (0..pendants).map(|i| (i, core + i));
    Ok(build(core + pendants, clique.chain(leaves)))
}

/// Uniform random `d`-regular graph on `n` vertices by the pairing model,
/// resampled until simple and connected.
pub fn random_regular<R: Rng>(n: usize, d: usize, rng: &mut R) -> Result<Graph> {
    if d == 0 || d >= n || (n * d) % 2 == 1 {
        return domain(format!("no connected {d}-regular graph on {n} vertices"));
    }
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    'attempt: for _ in 0..10_000 {
        points.shuffle(rng);
        let mut edges = Vec::with_capacity(points.len() / 2);
        for pair in points.chunks_exact(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v {
                continue 'attempt;
            }
            edges.push((u, v));
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let g = build(n, edges);
        if g.is_connected() {
            return Ok(g);
        }
    }
    domain(format!("failed to sample a simple connected {d}-regular graph on {n} vertices"))
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.random::<f64>() < p)
        .collect();
    build(n, edges)
}

/// `G(n, p)` conditioned on connectivity (rejection).
pub fn gnp_connected<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    loop {
        let g = gnp(n, p, rng);
        if g.is_connected() {
            return g;
        }
    }
}
