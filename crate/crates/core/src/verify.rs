//! Independent witness checkers. Nothing here calls the search engine or the
//! block decomposition; every check is a direct count over the witness.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use indexmap::IndexMap;
use serde::Serialize;

use crate::graph::Graph;

type Adj<'a> = BTreeMap<&'a str, BTreeSet<&'a str>>;

/// Adjacency of an edge list, or `None` if an edge is missing from `host`,
/// is a loop, or is repeated.
fn edge_adjacency<'a>(host: &Graph, edges: &'a [[String; 2]]) -> Option<Adj<'a>> {
    let mut adj: Adj = BTreeMap::new();
    for [a, b] in edges {
        if a == b || !host.has_edge(a, b) {
            return None;
        }
        if !adj.entry(a.as_str()).or_default().insert(b.as_str()) {
            return None;
        }
        adj.entry(b.as_str()).or_default().insert(a.as_str());
    }
    Some(adj)
}

/// Vertices reachable from `root` avoiding `skip_v` and the edge `skip_e`.
fn reach<'a>(
    adj: &Adj<'a>,
    root: &'a str,
    skip_v: Option<&str>,
    skip_e: Option<(&str, &str)>,
) -> usize {
    let mut seen = BTreeSet::from([root]);
    let mut q = VecDeque::from([root]);
    while let Some(v) = q.pop_front() {
        for &w in adj.get(v).into_iter().flatten() {
            if Some(w) == skip_v {
                continue;
            }
            if let Some((x, y)) = skip_e {
                if (v == x && w == y) || (v == y && w == x) {
                    continue;
                }
            }
            if seen.insert(w) {
                q.push_back(w);
            }
        }
    }
    seen.len()
}

fn spans(host: &Graph, adj: &Adj) -> bool {
    host.vertex_count() == 1 && adj.is_empty()
        || adj.len() == host.vertex_count() && host.vertices().all(|v| adj.contains_key(v))
}

/// Checks that `seq` is a Hamilton cycle of `g`.
pub fn verify_hamilton_cycle(g: &Graph, seq: &[String]) -> bool {
    let n = g.vertex_count();
    if n < 3 || seq.len() != n {
        return false;
    }
    let distinct: BTreeSet<&String> = seq.iter().collect();
    distinct.len() == n
        && seq.iter().all(|v| g.contains(v))
        && (0..n).all(|i| g.has_edge(&seq[i], &seq[(i + 1) % n]))
}

/// Checks that `seq` is a Hamilton path of `g`, with the given ends if any.
pub fn verify_hamilton_path(g: &Graph, seq: &[String], ends: Option<(&str, &str)>) -> bool {
    let n = g.vertex_count();
    if n == 0 || seq.len() != n {
        return false;
    }
    let distinct: BTreeSet<&String> = seq.iter().collect();
    let ends_ok = match ends {
        None => true,
        Some((u, v)) => {
            let (f, l) = (seq[0].as_str(), seq[n - 1].as_str());
            (f, l) == (u, v) || (f, l) == (v, u)
        }
    };
    distinct.len() == n
        && ends_ok
        && seq.iter().all(|v| g.contains(v))
        && seq.windows(2).all(|w| g.has_edge(&w[0], &w[1]))
}

/// Checks of an edge set claimed to be a Hamilton cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleCheck {
    pub edges_in_host: bool,
    pub spanning: bool,
    pub two_regular: bool,
    pub connected: bool,
}

impl CycleCheck {
    pub fn holds(&self) -> bool {
        self.edges_in_host && self.spanning && self.two_regular && self.connected
    }
}

pub fn verify_cycle_edges(host: &Graph, edges: &[[String; 2]]) -> CycleCheck {
    let Some(adj) = edge_adjacency(host, edges) else {
        return CycleCheck {
            edges_in_host: false,
            spanning: false,
            two_regular: false,
            connected: false,
        };
    };
    let spanning = spans(host, &adj) && host.vertex_count() >= 3;
    let two_regular = adj.values().all(|ns| ns.len() == 2);
    let connected = adj
        .keys()
        .next()
        .is_some_and(|&r| reach(&adj, r, None, None) == adj.len());
    CycleCheck {
        edges_in_host: true,
        spanning,
        two_regular,
        connected,
    }
}

/// Spanning tree of `g` with maximum degree at most `k`.
pub fn verify_k_tree(g: &Graph, edges: &[[String; 2]], k: usize) -> bool {
    let n = g.vertex_count();
    let Some(adj) = edge_adjacency(g, edges) else {
        return false;
    };
    if n == 1 {
        return edges.is_empty();
    }
    edges.len() + 1 == n
        && spans(g, &adj)
        && adj.values().all(|ns| ns.len() <= k)
        && reach(&adj, g.label(0), None, None) == n
}

/// Closed walk through every vertex, each at most `k` times. The sequence
/// is cyclic: its last vertex is followed by its first.
pub fn verify_k_walk(g: &Graph, seq: &[String], k: usize) -> bool {
    let n = g.vertex_count();
    if seq.is_empty() || n == 0 {
        return false;
    }
    if seq.len() == 1 {
        return n == 1 && g.contains(&seq[0]) && k >= 1;
    }
    let mut count: HashMap<&str, usize> = HashMap::new();
    for v in seq {
        *count.entry(v.as_str()).or_default() += 1;
    }
    let steps_ok = (0..seq.len()).all(|i| g.has_edge(&seq[i], &seq[(i + 1) % seq.len()]));
    steps_ok
        && count.len() == n
        && g.vertices().all(|v| count.get(v).is_some_and(|&c| c <= k))
        && !(k == 1 && seq.len() < 3)
}

/// Spanning linear forest whose paths have exactly the given end pairs.
pub fn verify_linear_forest(g: &Graph, edges: &[[String; 2]], pairs: &[(String, String)]) -> bool {
    let Some(adj) = edge_adjacency(g, edges) else {
        return false;
    };
    let deg = |v: &str| adj.get(v).map_or(0, BTreeSet::len);
    if !g.vertices().all(|v| deg(v) <= 2) {
        return false;
    }
    let ends: BTreeSet<&str> = pairs
        .iter()
        .flat_map(|(a, b)| [a.as_str(), b.as_str()])
        .collect();
    if ends.len() != 2 * pairs.len() {
        return false;
    }
    // every end has degree 1, everything else degree 2
    if !g
        .vertices()
        .all(|v| deg(v) == if ends.contains(v) { 1 } else { 2 })
    {
        return false;
    }
    let mut covered = 0;
    for (a, b) in pairs {
        let mut prev: Option<&str> = None;
        let mut cur = a.as_str();
        let mut len = 1;
        while !(cur == b.as_str() && prev.is_some()) {
            let next = adj
                .get(cur)
                .into_iter()
                .flatten()
                .copied()
                .find(|&w| Some(w) != prev);
            match next {
                Some(w) => {
                    prev = Some(cur);
                    cur = w;
                    len += 1;
                }
                None => break,
            }
            if len > g.vertex_count() {
                return false;
            }
        }
        if cur != b.as_str() {
            return false;
        }
        covered += len;
    }
    covered == g.vertex_count()
}

/// Independent audit of a spanning cactus candidate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CactusAudit {
    pub edges_in_host: bool,
    pub spanning: bool,
    pub connected: bool,
    pub is_cactus: bool,
    pub is_even: bool,
    /// Number of components of `Q − v`, which equals the block degree.
    pub block_degrees: IndexMap<String, usize>,
    pub max_degree: usize,
}

impl CactusAudit {
    pub fn is_good_even(&self) -> bool {
        self.edges_in_host
            && self.spanning
            && self.connected
            && self.is_cactus
            && self.is_even
            && self.block_degrees.values().all(|&b| b <= 2)
    }
}

/// Uses `m = n − 1 + #cycle blocks`, where the number of blocks is
/// `1 + Σ (b(v) − 1)` and bridges are found by deleting each edge.
pub fn verify_spanning_cactus(host: &Graph, edges: &[[String; 2]]) -> CactusAudit {
    let n = host.vertex_count();
    let Some(adj) = edge_adjacency(host, edges) else {
        return CactusAudit {
            edges_in_host: false,
            spanning: false,
            connected: false,
            is_cactus: false,
            is_even: false,
            block_degrees: IndexMap::new(),
            max_degree: 0,
        };
    };
    let spanning = spans(host, &adj);
    let root = host.vertices().next().unwrap_or("");
    let connected = n == 1 || (spanning && reach(&adj, root, None, None) == n);
    let mut block_degrees = IndexMap::new();
    let mut is_cactus = false;
    let mut is_even = false;
    if connected && spanning {
        for v in host.vertices() {
            let b = if n == 1 {
                0
            } else {
                let mut left: BTreeSet<&str> = adj.keys().copied().filter(|&w| w != v).collect();
                let mut comps = 0;
                while let Some(&r) = left.iter().next() {
                    comps += 1;
                    let mut q = VecDeque::from([r]);
                    left.remove(r);
                    while let Some(x) = q.pop_front() {
                        for &y in &adj[x] {
                            if y != v && left.remove(y) {
                                q.push_back(y);
                            }
                        }
                    }
                }
                comps
            };
            block_degrees.insert(v.to_string(), b);
        }
        let m = edges.len();
        let blocks = if n == 1 {
            0
        } else {
            1 + block_degrees.values().map(|b| b - 1).sum::<usize>()
        };
        let bridges = edges
            .iter()
            .filter(|[a, b]| reach(&adj, a, None, Some((a, b))) < n)
            .count();
        is_cactus = n == 1 || m + 1 == n + (blocks - bridges);
        // a cactus is even iff it is bipartite
        let mut side: HashMap<&str, bool> = HashMap::new();
        is_even = true;
        if let Some(&r) = adj.keys().next() {
            side.insert(r, false);
            let mut q = VecDeque::from([r]);
            while let Some(x) = q.pop_front() {
                for &y in &adj[x] {
                    match side.get(y) {
                        Some(&sy) if sy == side[x] => is_even = false,
                        Some(_) => {}
                        None => {
                            side.insert(y, !side[x]);
                            q.push_back(y);
                        }
                    }
                }
            }
        }
    }
    CactusAudit {
        edges_in_host: true,
        spanning,
        connected,
        is_cactus,
        is_even,
        block_degrees,
        max_degree: adj.values().map(BTreeSet::len).max().unwrap_or(0),
    }
}
