//! Named corpus of small scenarios used by the oracle checks: every graph
//! here is small enough for at least one exhaustive enumeration.

use crate::generators;
use crate::graph::{Graph, Scenario, VertexSet};
use crate::rng::RngStream;

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub scenario: Scenario,
}

impl Fixture {
    pub fn graph(&self) -> &Graph {
        self.scenario.graph()
    }
}

fn fixture(name: &'static str, graph: Graph, central: &[usize]) -> Fixture {
    let scenario = Scenario::new(graph, VertexSet::from(central.to_vec())).expect("fixture scenario is valid");
    Fixture { name, scenario }
}

fn bowtie() -> Graph {
    Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).expect("bowtie")
}

/// The full corpus, in a fixed order.
pub fn corpus() -> Vec<Fixture> {
    let mut rng = RngStream::new(0x5eed, 0).rng();
    let gnp9 = generators::gnp_connected(9, 0.4, &mut rng);
    let gnp11 = generators::gnp_connected(11, 0.3, &mut rng);
    let gnp7 = generators::gnp_connected(7, 0.5, &mut rng);
    vec![
        fixture("P3", generators::path(3), &[1]),
        fixture("P4", generators::path(4), &[1, 2]),
        fixture("P5", generators::path(5), &[1, 2, 3]),
        fixture("C4", generators::cycle(4), &[0, 1]),
        fixture("C5", generators::cycle(5), &[0, 1]),
        fixture("triangle", generators::complete(3), &[0]),
        fixture("triangle-pendant", generators::triangle_with_pendant(), &[0, 1, 2]),
        fixture("K4", generators::complete(4), &[0, 1]),
        fixture("K5", generators::complete(5), &[0, 1, 2]),
        fixture("star3", generators::star(3), &[0]),
        fixture("star5", generators::star(5), &[0]),
        fixture("double-star2", generators::double_star(2), &[0, 1]),
        fixture("wheel5", generators::wheel(5), &[0]),
        fixture("cube", generators::cube(), &[0, 1, 2, 3]),
        fixture("K2,3", generators::complete_bipartite(2, 3), &[0, 1]),
        fixture("bowtie", bowtie(), &[2]),
        fixture("K5+3", generators::clique_core_pendants(5, 3).expect("valid sizes"), &[0, 1, 2, 3, 4]),
        fixture("K7", generators::complete(7), &[0, 1, 2]),
        fixture("gnp7", gnp7, &[0, 1, 2]),
        fixture("wheel8", generators::wheel(8), &[0]),
        fixture("C9", generators::cycle(9), &[0, 1, 2]),
        fixture("gnp9", gnp9, &[0, 1, 2]),
        fixture("C11", generators::cycle(11), &[0, 1, 2]),
        fixture("gnp11", gnp11, &[0, 1, 2, 3]),
        fixture("C13", generators::cycle(13), &[0, 1, 2, 3]),
        fixture("K7+6", generators::clique_core_pendants(7, 6).expect("valid sizes"), &[0, 1, 2, 3, 4, 5, 6]),
    ]
}

pub fn by_name(name: &str) -> Option<Fixture> {
    corpus().into_iter().find(|f| f.name == name)
}
