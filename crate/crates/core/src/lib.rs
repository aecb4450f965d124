//! Simulation and analysis toolkit for the epidemic switchover phenomenon:
//! SIR(1) epidemics on graphs with a designated central region, simulated
//! through bond percolation and compared under central versus uniform
//! seeding.

mod dsu;
pub mod bounds;
pub mod chung_lu;
pub mod error;
pub mod fixtures;
pub mod generators;
pub mod expansion;
pub mod graph;
pub mod harness;
pub mod percolation;
pub mod rng;
pub mod scalar;
pub mod seeds;
pub mod sir;

pub use error::{Error, Result};
pub use graph::{
    degree_stats, load_graph, min_degree_profile, neighborhood, pair_count, DegreeStats, Graph,
    MinDegreeProfile, Scenario, StarProperty, VertexSet,
};
pub use rng::RngStream;
pub use scalar::{Real, Scalar};

/// Exact rational scalar for enumeration oracles and identities.
pub type Rational = num_rational::Ratio<i128>;

pub type DegreeStatsF64 = DegreeStats<f64>;
pub type ExactDegreeStats = DegreeStats<Rational>;
