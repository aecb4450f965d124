//! Direct discrete-time SIR(1) simulation: infection lasts exactly one step
//! and every infected neighbor transmits independently with probability β.

use rand::Rng;
use serde::Serialize;

use crate::graph::{Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SirStatus {
    Susceptible,
    Infected,
    Resistant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SirState {
    pub status: Vec<SirStatus>,
    pub step: usize,
    pub cumulative_infected: usize,
}

impl SirState {
    /// Step-0 state with `seeds` infected.
    pub fn seeded(n: usize, seeds: &VertexSet) -> Self {
        let mut status = vec![SirStatus::Susceptible; n];
        for v in seeds.iter() {
            status[v] = SirStatus::Infected;
        }
        Self {
            status,
            step: 0,
            cumulative_infected: seeds.len(),
        }
    }

    pub fn infected(&self) -> impl Iterator<Item = usize> + '_ {
        self.status
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == SirStatus::Infected)
            .map(|(v, _)| v)
    }

    pub fn is_over(&self) -> bool {
        !self.status.contains(&SirStatus::Infected)
    }
}

/// One synchronous step. Every (infected, susceptible) adjacent pair gets
/// one Bernoulli(β) draw, in order of infected vertex then neighbor; all
/// new infections are applied after the draws, and every previously
/// infected vertex becomes resistant.
pub fn sir_step<R: Rng + ?Sized>(g: &Graph, state: &SirState, beta: f64, rng: &mut R) -> SirState {
    let mut next = state.status.clone();
    let mut newly = 0;
    for u in state.infected() {
        next[u] = SirStatus::Resistant;
        for &v in g.neighbors(u) {
            if state.status[v] == SirStatus::Susceptible && rng.random_bool(beta.clamp(0.0, 1.0)) && next[v] == SirStatus::Susceptible {
                next[v] = SirStatus::Infected;
                newly += 1;
            }
        }
    }
    SirState {
        status: next,
        step: state.step + 1,
        cumulative_infected: state.cumulative_infected + newly,
    }
}

/// Runs to extinction and returns the total number ever infected (seeds
/// included).
pub fn sir_total<R: Rng + ?Sized>(g: &Graph, beta: f64, seeds: &VertexSet, rng: &mut R) -> usize {
    let mut state = SirState::seeded(g.n(), seeds);
    while !state.is_over() {
        state = sir_step(g, &state, beta, rng);
    }
    state.cumulative_infected
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::rng::RngStream;

    fn set(v: &[usize]) -> VertexSet {
        VertexSet::from(v.to_vec())
    }

    #[test]
    fn no_infected_only_advances_step() {
        let g = generators::path(3);
        let s = SirState::seeded(3, &VertexSet::new());
        let next = sir_step(&g, &s, 0.7, &mut RngStream::new(0, 0).rng());
        assert_eq!(next.status, s.status);
        assert_eq!(next.step, 1);
    }

    #[test]
    fn beta_one_infects_whole_neighborhood() {
        let g = generators::star(4);
        let s = SirState::seeded(5, &set(&[0]));
        let next = sir_step(&g, &s, 1.0, &mut RngStream::new(0, 0).rng());
        assert_eq!(next.status[0], SirStatus::Resistant);
        assert!(next.status[1..].iter().all(|&x| x == SirStatus::Infected));
        assert_eq!(next.cumulative_infected, 5);
    }

    #[test]
    fn single_edge_bernoulli_rate() {
        let g = generators::path(2);
        let start = SirState::seeded(2, &set(&[0]));
        let mut rng = RngStream::new(21, 0).rng();
        let trials = 100_000;
        let hits = (0..trials)
            .filter(|_| sir_step(&g, &start, 0.3, &mut rng).status[1] == SirStatus::Infected)
            .count();
        let freq = hits as f64 / trials as f64;
        let sigma = (0.3f64 * 0.7 / trials as f64).sqrt();
        assert!((freq - 0.3).abs() < 3.0 * sigma, "{freq}");
    }

    #[test]
    fn totals_at_extremes() {
        let g = generators::cycle(7);
        let mut rng = RngStream::new(1, 0).rng();
        assert_eq!(sir_total(&g, 0.0, &set(&[0, 3]), &mut rng), 2);
        assert_eq!(sir_total(&g, 1.0, &set(&[5]), &mut rng), 7);
    }

    #[test]
    fn p3_mean_matches_percolation_value() {
        let g = generators::path(3);
        let mut rng = RngStream::new(2, 0).rng();
        let trials = 100_000;
        let xs: Vec<f64> = (0..trials).map(|_| sir_total(&g, 0.5, &set(&[0]), &mut rng) as f64).collect();
        let mean = xs.iter().sum::<f64>() / trials as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (trials as f64 - 1.0);
        let se = (var / trials as f64).sqrt();
        assert!((mean - 1.75).abs() < 3.0 * se, "{mean} ± {se}");
    }

    #[test]
    fn state_invariants_hold_along_run() {
        let g = generators::wheel(6);
        let mut rng = RngStream::new(8, 8).rng();
        for _ in 0..200 {
            let mut state = SirState::seeded(g.n(), &set(&[2]));
            let mut resistant_before: Vec<usize> = Vec::new();
            while !state.is_over() {
                let next = sir_step(&g, &state, 0.5, &mut rng);
                for &v in &resistant_before {
                    assert_eq!(next.status[v], SirStatus::Resistant);
                }
                for v in state.infected() {
                    assert_eq!(next.status[v], SirStatus::Resistant);
                }
                let active = next.status.iter().filter(|&&s| s != SirStatus::Susceptible).count();
                assert_eq!(active, next.cumulative_infected);
                resistant_before = (0..g.n()).filter(|&v| next.status[v] == SirStatus::Resistant).collect();
                state = next;
            }
            assert!(state.step <= g.n());
        }
    }

    #[test]
    fn never_exceeds_seed_components() {
        let g = crate::graph::Graph::from_edges(6, [(0, 1), (1, 2), (3, 4)]).unwrap();
        let mut rng = RngStream::new(5, 0).rng();
        for _ in 0..100 {
            assert!(sir_total(&g, 0.9, &set(&[0, 3]), &mut rng) <= 5);
        }
    }
}
