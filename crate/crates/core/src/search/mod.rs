//! Exact backtracking searches with wall-clock and node budgets.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

mod cactus;
mod forest;
mod hamilton;
mod tree;
mod walk;

pub use cactus::{
    cactus_constraints_hold, enumerate_spanning_even_cacti, spanning_even_cactus,
    CactusConstraints, EnumerationOutcome, Goodness, ENUMERATION_EDGE_GUARD,
};
pub use forest::linear_forest;
pub use hamilton::{hamilton_cycle, hamilton_path};
pub use tree::k_tree;
pub use walk::k_walk;

/// Wall-clock and node-count limits. `None` means unlimited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub wall: Option<Duration>,
    pub nodes: Option<u64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn wall(d: Duration) -> Self {
        Budget {
            wall: Some(d),
            nodes: None,
        }
    }

    pub fn nodes(n: u64) -> Self {
        Budget {
            wall: None,
            nodes: Some(n),
        }
    }
}

/// Shared node counter and clock for one search call.
pub(crate) struct Meter {
    start: Instant,
    budget: Budget,
    nodes: AtomicU64,
    out: AtomicBool,
}

impl Meter {
    pub(crate) fn new(budget: Budget) -> Self {
        Meter {
            start: Instant::now(),
            budget,
            nodes: AtomicU64::new(0),
            out: AtomicBool::new(false),
        }
    }

    /// Counts one node. Returns false once the budget is spent.
    pub(crate) fn tick(&self) -> bool {
        if self.out.load(Ordering::Relaxed) {
            return false;
        }
        let k = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let over_nodes = self.budget.nodes.is_some_and(|cap| k > cap);
        let over_wall = k.is_multiple_of(256)
            && self
                .budget
                .wall
                .is_some_and(|w| self.start.elapsed() >= w);
        if over_nodes || over_wall {
            self.out.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub(crate) fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }

    pub(crate) fn outcome(&self, result: Flow<Witness>) -> SearchOutcome {
        let (status, witness) = match result {
            Flow::Found(w) => (Status::Found, Some(w)),
            Flow::Exhausted => (Status::None, None),
            Flow::Timeout => (Status::Timeout, None),
        };
        SearchOutcome {
            status,
            witness,
            nodes_explored: self.nodes(),
            elapsed: self.elapsed(),
            exhaustive: status == Status::None,
        }
    }
}

pub(crate) enum Flow<T> {
    Found(T),
    Exhausted,
    Timeout,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Found,
    None,
    Timeout,
}

/// A witness subgraph. `sequence` carries the vertex order for cycles,
/// paths and closed walks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub edges: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequence: Option<Vec<String>>,
}

impl Witness {
    pub(crate) fn from_edge_indices(g: &Graph, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut out: Vec<[String; 2]> = edges
            .into_iter()
            .map(|(a, b)| {
                let (x, y) = (g.label(a).to_string(), g.label(b).to_string());
                if x <= y {
                    [x, y]
                } else {
                    [y, x]
                }
            })
            .collect();
        out.sort();
        out.dedup();
        Witness {
            edges: out,
            sequence: None,
        }
    }

    /// Witness for a vertex sequence; `closed` adds the wrap-around edge.
    pub(crate) fn from_sequence(g: &Graph, seq: &[usize], closed: bool) -> Self {
        let mut pairs: Vec<(usize, usize)> = seq.windows(2).map(|w| (w[0], w[1])).collect();
        if closed && seq.len() > 1 {
            pairs.push((seq[seq.len() - 1], seq[0]));
        }
        let mut w = Self::from_edge_indices(g, pairs);
        w.sequence = Some(seq.iter().map(|&v| g.label(v).to_string()).collect());
        w
    }

    /// The witness edges as a spanning subgraph of `host`.
    pub fn to_graph(&self, host: &Graph) -> crate::Result<Graph> {
        let edges: Vec<(&str, &str)> = self
            .edges
            .iter()
            .map(|[a, b]| (a.as_str(), b.as_str()))
            .collect();
        host.spanning_subgraph(&edges)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub status: Status,
    pub witness: Option<Witness>,
    pub nodes_explored: u64,
    #[serde(with = "secs")]
    pub elapsed: Duration,
    /// True iff a `NONE` status is a proof of nonexistence.
    pub exhaustive: bool,
}

impl SearchOutcome {
    pub fn found(&self) -> bool {
        self.status == Status::Found
    }
}

mod secs {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        let x = f64::deserialize(d)?;
        Duration::try_from_secs_f64(x).map_err(serde::de::Error::custom)
    }
}

/// Adjacency lists by index, each sorted by index.
pub(crate) fn adjacency(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.vertex_count()).map(|v| g.neighbors(v).collect()).collect()
}

/// Dense adjacency matrix.
pub(crate) struct Matrix {
    n: usize,
    bits: Vec<bool>,
}

impl Matrix {
    pub(crate) fn new(adj: &[Vec<usize>]) -> Self {
        let n = adj.len();
        let mut bits = vec![false; n * n];
        for (v, ns) in adj.iter().enumerate() {
            for &w in ns {
                bits[v * n + w] = true;
            }
        }
        Matrix { n, bits }
    }

    pub(crate) fn has(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.n + b]
    }
}
