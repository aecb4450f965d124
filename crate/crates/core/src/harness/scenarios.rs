use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::generators;
use crate::graph::{Graph, Scenario, VertexSet};
use crate::rng::RngStream;

pub const CANONICAL_IDS: [&str; 5] = ["clique-core-pendants", "dregular-core-pendants", "double-star", "path", "cycle"];

/// Size parameters for [`canonical_scenario`]; unset fields take per-id
/// defaults.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioParams {
    pub n: Option<usize>,
    pub r: Option<usize>,
    pub d: Option<usize>,
    pub leaves: Option<usize>,
    pub seed: Option<u64>,
}

/// Builds one of the [`CANONICAL_IDS`]:
///
/// - `clique-core-pendants` (`r = 60`, `n = 100`): `C = K_r`, and each of the
///   `n - r <= r` periphery vertices hangs off its own core vertex.
/// - `dregular-core-pendants` (`r = 60`, `n = 100`, `d = 6`, `seed = 1`): as
///   above with a random connected `d`-regular core.
/// - `double-star` (`leaves = 5`): the two hubs are central.
/// - `path` (`n = 10`, `r = 2`): the middle `r` vertices are central.
/// - `cycle` (`n = 10`, `r = 2`): vertices `0..r` are central.
pub fn canonical_scenario(id: &str, p: &ScenarioParams) -> Result<Scenario> {
    match id {
        "clique-core-pendants" => {
            let (r, n) = core_sizes(p)?;
            let g = generators::clique_core_pendants(r, n - r)?;
            Scenario::new(g, VertexSet::range(0, r))
        }
        "dregular-core-pendants" => {
            let (r, n) = core_sizes(p)?;
            let d = p.d.unwrap_or(6);
            let mut rng = RngStream::new(p.seed.unwrap_or(1), 0).rng();
            let core = generators::random_regular(r, d, &mut rng)?;
            let edges = core.edges().iter().copied().chain((0..n - r).map(|i| (i, r + i)));
            Scenario::new(Graph::from_edges(n, edges)?, VertexSet::range(0, r))
        }
        "double-star" => {
            let leaves = p.leaves.unwrap_or(5);
            if leaves == 0 {
                return domain("double-star needs at least one leaf per hub");
            }
            Scenario::new(generators::double_star(leaves), VertexSet::from([0, 1]))
        }
        "path" => {
            let (n, r) = (p.n.unwrap_or(10), p.r.unwrap_or(2));
            check_line(n, r, 2)?;
            let start = (n - r) / 2;
            Scenario::new(generators::path(n), VertexSet::range(start, start + r))
        }
        "cycle" => {
            let (n, r) = (p.n.unwrap_or(10), p.r.unwrap_or(2));
            check_line(n, r, 3)?;
            Scenario::new(generators::cycle(n), VertexSet::range(0, r))
        }
        other => Err(Error::UnknownScenario(other.to_string())),
    }
}

fn core_sizes(p: &ScenarioParams) -> Result<(usize, usize)> {
    let (r, n) = (p.r.unwrap_or(60), p.n.unwrap_or(100));
    if r < 2 || n <= r || n - r > r {
        return domain(format!("core-periphery scenario needs 2 <= r < n and n - r <= r (r={r}, n={n})"));
    }
    Ok((r, n))
}

fn check_line(n: usize, r: usize, min_n: usize) -> Result<()> {
    if n < min_n || r == 0 || r >= n {
        return domain(format!("needs n >= {min_n} and 0 < r < n (n={n}, r={r})"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::degree_stats;

    #[test]
    fn clique_core_defaults() {
        let s = canonical_scenario("clique-core-pendants", &ScenarioParams::default()).unwrap();
        assert_eq!((s.n(), s.r()), (100, 60));
        assert_eq!(s.graph().m_edges(), 60 * 59 / 2 + 40);
        let b: f64 = s.periphery_mean_degree();
        assert_eq!(b, 1.0);
        let bad = ScenarioParams { r: Some(40), ..Default::default() };
        assert!(canonical_scenario("clique-core-pendants", &bad).is_err());
    }

    #[test]
    fn dregular_core() {
        let p = ScenarioParams { r: Some(20), n: Some(30), d: Some(4), seed: Some(3), ..Default::default() };
        let s = canonical_scenario("dregular-core-pendants", &p).unwrap();
        let core = s.graph().induced(s.central());
        assert!(core.is_connected());
        assert!((0..20).all(|v| core.degree(v) == 4));
        let again = canonical_scenario("dregular-core-pendants", &p).unwrap();
        assert_eq!(s.graph().edges(), again.graph().edges());
        let st: crate::DegreeStats<f64> = degree_stats(s.graph(), &s.periphery()).unwrap();
        assert_eq!(st.mean, 1.0);
    }

    #[test]
    fn small_ids() {
        let p4 = canonical_scenario("path", &ScenarioParams { n: Some(4), ..Default::default() }).unwrap();
        assert_eq!(p4.graph(), &generators::path(4));
        assert_eq!(p4.central(), &VertexSet::from([1, 2]));
        let ds = canonical_scenario("double-star", &ScenarioParams::default()).unwrap();
        assert_eq!(ds.graph().degree(0), ds.graph().degree(1));
        assert!(ds.graph().has_edge(0, 1));
        let c = canonical_scenario("cycle", &ScenarioParams { n: Some(5), r: Some(1), ..Default::default() }).unwrap();
        assert_eq!(c.central(), &VertexSet::from([0]));
        assert!(matches!(canonical_scenario("lattice", &ScenarioParams::default()), Err(Error::UnknownScenario(_))));
        assert!(serde_json::from_str::<ScenarioParams>(r#"{"size": 3}"#).is_err());
    }
}
