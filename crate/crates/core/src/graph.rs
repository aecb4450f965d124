//! Immutable simple graphs, central-region scenarios and the combinatorial
//! quantities built on them: degree moments, ordered pair counts,
//! neighborhoods and the minimum-degree cut property.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{domain, io_error, Error, Result};
use crate::scalar::Scalar;

/// Bipartition enumeration limit used when the caller has no preference.
pub const DEFAULT_EXACT_LIMIT: usize = 20;

/// A set of vertex ids, stored sorted and deduplicated.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    /// Builds a set from an already strictly increasing vector.
    pub(crate) fn from_sorted_unchecked(v: Vec<usize>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Self(v)
    }

    pub fn range(lo: usize, hi: usize) -> Self {
        Self((lo..hi).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn max_vertex(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// Membership mask over `0..n`.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &v in &self.0 {
            m[v] = true;
        }
        m
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.iter().filter(|&v| other.contains(v)).count()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    /// `{0..n} \ self`.
    pub fn complement(&self, n: usize) -> VertexSet {
        let mask = self.mask(n);
        (0..n).filter(|&v| !mask[v]).collect()
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(mut v: Vec<usize>) -> Self {
        v.sort_unstable();
        v.dedup();
        Self(v)
    }
}

impl From<VertexSet> for Vec<usize> {
    fn from(s: VertexSet) -> Self {
        s.0
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(a: [usize; N]) -> Self {
        Self::from(a.to_vec())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::from(iter.into_iter().collect::<Vec<_>>())
    }
}

/// Undirected simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Each edge once as `(u, v)` with `u < v`, lexicographically sorted.
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("m", &self.edges.len())
            .finish()
    }
}

impl Graph {
    /// Builds a graph from an edge iterator. Duplicate edges (in either
    /// orientation) collapse; self-loops and out-of-range ids are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u == v {
                return domain(format!("self-loop at vertex {u}"));
            }
            if u >= n || v >= n {
                return domain(format!("edge ({u}, {v}) out of range for n={n}"));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        list.dedup();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &list {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Ok(Self {
            n,
            edges: list,
            adjacency,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::range(0, self.n)
    }

    /// Connected-component label per vertex, labels dense in order of
    /// smallest member.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in &self.adjacency[u] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.component_labels().1 == 1
    }

    /// Induced subgraph on `set`, relabelled to `0..set.len()` in increasing
    /// id order.
    pub fn induced(&self, set: &VertexSet) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, v) in set.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        Graph::from_edges(set.len(), edges).expect("induced subgraph of a simple graph")
    }

    /// Stable 64-bit fingerprint of `(n, edges)`.
    pub fn fingerprint(&self) -> u64 {
        let mut h = crate::rng::mix64(self.n as u64);
        for &(u, v) in &self.edges {
            h = crate::rng::mix64(h ^ ((u as u64) << 32 | v as u64));
        }
        h
    }

    /// Serializes in the edge-list text format with an `# n=` header.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("# n={}\n", self.n);
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn save_edge_list(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_edge_list()).map_err(io_error(path))
    }

    pub fn read_edge_list(path: &Path) -> Result<Graph> {
        let text = std::fs::read_to_string(path).map_err(io_error(path))?;
        load_graph(&text)
    }
}

/// Parses the edge-list format: an optional `# n=<int>` header, then one
/// whitespace-separated `u v` pair per line. Other `#` lines are comments.
/// Without a header, `n` is one more than the largest id seen.
pub fn load_graph(text: &str) -> Result<Graph> {
    let mut declared_n: Option<usize> = None;
    let mut pairs = Vec::new();
    let parse_err = |line: usize, message: String| Error::Parse { line, message };
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(value) = comment.trim().strip_prefix("n=") {
                if declared_n.is_some() || !pairs.is_empty() {
                    return Err(parse_err(line_no, "header must precede edges".into()));
                }
                let n = value
                    .trim()
                    .parse::<usize>()
                    .map_err(|e| parse_err(line_no, format!("bad vertex count: {e}")))?;
                declared_n = Some(n);
            }
            continue;
        }
        let mut fields = line.split_whitespace();
        let (Some(a), Some(b), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(parse_err(line_no, format!("expected two vertex ids, got `{line}`")));
        };
        let u = a
            .parse::<usize>()
            .map_err(|e| parse_err(line_no, format!("bad vertex id `{a}`: {e}")))?;
        let v = b
            .parse::<usize>()
            .map_err(|e| parse_err(line_no, format!("bad vertex id `{b}`: {e}")))?;
        if u == v {
            return Err(parse_err(line_no, format!("self-loop at vertex {u}")));
        }
        if let Some(n) = declared_n {
            if u >= n || v >= n {
                return Err(parse_err(
                    line_no,
                    format!("vertex id {} >= declared n={n}", u.max(v)),
                ));
            }
        }
        pairs.push((u, v));
    }
    let n = declared_n.unwrap_or_else(|| pairs.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    Graph::from_edges(n, pairs)
}

/// A graph with a designated central region `C`.
#[derive(Clone, Debug)]
pub struct Scenario {
    graph: Graph,
    central: VertexSet,
}

impl Scenario {
    pub fn new(graph: Graph, central: VertexSet) -> Result<Self> {
        let n = graph.n();
        if central.max_vertex().is_some_and(|v| v >= n) {
            return domain("central region contains an id outside the graph");
        }
        if central.is_empty() || central.len() >= n {
            return domain(format!(
                "central region size {} must satisfy 0 < r < n={n}",
                central.len()
            ));
        }
        Ok(Self { graph, central })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn central(&self) -> &VertexSet {
        &self.central
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn r(&self) -> usize {
        self.central.len()
    }

    /// `c = r / n`.
    pub fn c<T: Scalar>(&self) -> T {
        T::from_count(self.r()) / T::from_count(self.n())
    }

    pub fn periphery(&self) -> VertexSet {
        self.central.complement(self.n())
    }

    /// Mean degree in `G` of the vertices outside `C`.
    pub fn periphery_mean_degree<T: Scalar>(&self) -> T {
        degree_stats::<T>(&self.graph, &self.periphery())
            .expect("periphery nonempty since r < n")
            .mean
    }

    /// Loads a scenario JSON file; `graph_path` is resolved relative to the
    /// JSON file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(io_error(path))?;
        let file: ScenarioFile = serde_json::from_str(&text)?;
        let graph_path = path
            .parent()
            .unwrap_or_else(|| Path::new("."))
            .join(&file.graph_path);
        let graph = Graph::read_edge_list(&graph_path)?;
        Scenario::new(graph, VertexSet::from(file.central))
    }

    /// Writes `<json>` and the edge list next to it under `graph_file`.
    pub fn save(&self, json_path: &Path, graph_file: &str) -> Result<()> {
        let dir = json_path.parent().unwrap_or_else(|| Path::new("."));
        self.graph.save_edge_list(&dir.join(graph_file))?;
        let file = ScenarioFile {
            graph_path: graph_file.to_string(),
            central: self.central.as_slice().to_vec(),
        };
        let json = serde_json::to_string_pretty(&file)?;
        std::fs::write(json_path, json + "\n").map_err(io_error(json_path))
    }
}

/// On-disk scenario description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioFile {
    pub graph_path: String,
    pub central: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DegreeStats<T> {
    pub mean: T,
    pub second_moment: T,
    pub set_size: usize,
}

/// Mean degree and mean squared degree over `set`.
pub fn degree_stats<T: Scalar>(g: &Graph, set: &VertexSet) -> Result<DegreeStats<T>> {
    if set.is_empty() {
        return domain("degree statistics of an empty set");
    }
    if set.max_vertex().is_some_and(|v| v >= g.n()) {
        return domain("vertex set not contained in graph");
    }
    let (sum, sum_sq) = set.iter().fold((0usize, 0usize), |(s, q), v| {
        let d = g.degree(v);
        (s + d, q + d * d)
    });
    let size = T::from_count(set.len());
    Ok(DegreeStats {
        mean: T::from_count(sum) / size,
        second_moment: T::from_count(sum_sq) / size,
        set_size: set.len(),
    })
}

/// Number of ordered pairs `(u, v)` with `u ∈ K`, `v ∈ L`, `u ~ v`.
///
/// Edges inside `K ∩ L` are therefore counted twice, which makes
/// `e(K, V) = Σ_{v∈K} deg(v)` hold for every `K`.
pub fn pair_count(g: &Graph, k: &VertexSet, l: &VertexSet) -> usize {
    let in_l = l.mask(g.n());
    k.iter()
        .map(|u| g.neighbors(u).iter().filter(|&&w| in_l[w]).count())
        .sum()
}

/// Vertices outside `K` adjacent to some vertex of `K`.
pub fn neighborhood(g: &Graph, k: &VertexSet) -> VertexSet {
    let in_k = k.mask(g.n());
    let out: BTreeSet<usize> = k
        .iter()
        .flat_map(|u| g.neighbors(u).iter().copied())
        .filter(|&w| !in_k[w])
        .collect();
    VertexSet::from_sorted_unchecked(out.into_iter().collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StarProperty {
    Holds,
    Fails,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinDegreeProfile {
    pub d: usize,
    /// Vertices of minimum degree.
    pub y: VertexSet,
    pub star_property: StarProperty,
    /// Set when the input was disconnected; the property then fails.
    pub disconnected: bool,
}

/// Minimum degree, its vertex set `Y`, and whether every edge cut of size
/// at most `d` is the star of a degree-`d` vertex (with `G` connected and not
/// `d`-regular). The cut condition is decided by enumerating all
/// bipartitions when `n <= exact_limit`, otherwise it is reported unknown.
pub fn min_degree_profile(g: &Graph, exact_limit: usize) -> MinDegreeProfile {
    let n = g.n();
    let degrees = g.degrees();
    let d = degrees.iter().copied().min().unwrap_or(0);
    let y: VertexSet = (0..n).filter(|&v| degrees[v] == d).collect();
    let connected = g.is_connected();
    let regular = y.len() == n;

    let star_property = if n == 0 || !connected || regular {
        StarProperty::Fails
    } else if n > exact_limit || n > 63 {
        StarProperty::Unknown
    } else if only_min_degree_stars(g, d, &degrees) {
        StarProperty::Holds
    } else {
        StarProperty::Fails
    };
    MinDegreeProfile {
        d,
        y,
        star_property,
        disconnected: !connected,
    }
}

fn only_min_degree_stars(g: &Graph, d: usize, degrees: &[usize]) -> bool {
    let n = g.n();
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect();
    // X ranges over nonempty subsets avoiding the last vertex, which covers
    // every unordered bipartition once.
    let free = n - 1;
    let full = (1u64 << n) - 1;
    for x in 1u64..(1u64 << free) {
        let outside = full & !x;
        let mut cut = 0usize;
        let mut bits = x;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            cut += (adj[v] & outside).count_ones() as usize;
            if cut > d {
                break;
            }
        }
        if cut > d {
            continue;
        }
        let single = |set: u64| set.count_ones() == 1 && degrees[set.trailing_zeros() as usize] == d;
        if !(single(x) || single(outside)) {
            return false;
        }
    }
    true
}
