//! Cactus recognition, block degrees and the good / 1-good / 2-good
//! taxonomy with witness edge paths.

use std::collections::{BTreeSet, VecDeque};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::blocks::IndexedBlocks;
use crate::connectivity::components;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Good,
    OneGood,
    TwoGood,
    None,
}

/// A path whose edges are all edge blocks of the host cactus. A single
/// vertex is a trivial edge path.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgePath {
    pub vertices: Vec<String>,
}

impl EdgePath {
    pub fn new<S: AsRef<str>>(vs: &[S]) -> Self {
        EdgePath {
            vertices: vs.iter().map(|v| v.as_ref().to_string()).collect(),
        }
    }

    pub fn internal(&self) -> &[String] {
        if self.vertices.len() < 3 {
            &[]
        } else {
            &self.vertices[1..self.vertices.len() - 1]
        }
    }

    pub fn endpoints(&self) -> Option<(&str, &str)> {
        Some((self.vertices.first()?, self.vertices.last()?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CactusReport {
    pub is_cactus: bool,
    pub is_even: bool,
    pub block_degrees: IndexMap<String, usize>,
    pub classification: Classification,
    pub witness_paths: Vec<EdgePath>,
    pub max_degree: usize,
}

impl CactusReport {
    pub fn is_good_even_cactus(&self) -> bool {
        self.is_cactus && self.is_even && self.classification == Classification::Good
    }

    pub fn block_degree(&self, v: &str) -> Option<usize> {
        self.block_degrees.get(v).copied()
    }
}

/// Block structure of a cactus candidate by vertex index.
struct Shape {
    is_cactus: bool,
    is_even: bool,
    b: Vec<usize>,
    /// Adjacency of the forest formed by the edge blocks.
    bridge_adj: Vec<Vec<usize>>,
}

impl Shape {
    fn new(q: &Graph) -> Self {
        let ib = IndexedBlocks::compute(q);
        let mut is_cactus = true;
        let mut is_even = true;
        let mut bridge_adj = vec![Vec::new(); q.vertex_count()];
        for (k, es) in ib.edges.iter().enumerate() {
            if es.len() == 1 {
                let (a, c) = es[0];
                bridge_adj[a].push(c);
                bridge_adj[c].push(a);
            } else if ib.is_cycle(k) {
                if es.len() % 2 == 1 {
                    is_even = false;
                }
            } else {
                is_cactus = false;
            }
        }
        for nb in &mut bridge_adj {
            nb.sort_unstable();
        }
        let b = (0..q.vertex_count()).map(|v| ib.block_degree(v)).collect();
        Shape {
            is_cactus,
            is_even,
            b,
            bridge_adj,
        }
    }

    fn is_bridge(&self, a: usize, c: usize) -> bool {
        self.bridge_adj[a].binary_search(&c).is_ok()
    }
}

fn require_connected(q: &Graph) -> Result<()> {
    if q.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if components(q).len() > 1 {
        return Err(Error::Disconnected);
    }
    Ok(())
}

pub fn analyze_cactus(q: &Graph) -> Result<CactusReport> {
    require_connected(q)?;
    let shape = Shape::new(q);
    let block_degrees = q
        .vertices()
        .zip(&shape.b)
        .map(|(v, &b)| (v.to_string(), b))
        .collect();
    let (classification, witness) = if shape.is_cactus {
        classify(q, &shape)
    } else {
        (Classification::None, Vec::new())
    };
    Ok(CactusReport {
        is_cactus: shape.is_cactus,
        is_even: shape.is_cactus && shape.is_even,
        block_degrees,
        classification,
        witness_paths: witness
            .into_iter()
            .map(|p| EdgePath {
                vertices: p.iter().map(|&v| q.label(v).to_string()).collect(),
            })
            .collect(),
        max_degree: q.max_degree(),
    })
}

fn classify(q: &Graph, s: &Shape) -> (Classification, Vec<Vec<usize>>) {
    let n = q.vertex_count();
    if s.b.iter().any(|&b| b >= 5) {
        return (Classification::None, Vec::new());
    }
    let t3: Vec<usize> = (0..n).filter(|&v| s.b[v] == 3).collect();
    let t4: Vec<usize> = (0..n).filter(|&v| s.b[v] == 4).collect();
    if t3.is_empty() && t4.is_empty() {
        return (Classification::Good, Vec::new());
    }
    let key = |p: &Vec<usize>| -> Vec<&str> { p.iter().map(|&v| q.label(v)).collect() };

    if t4.is_empty() {
        if let Some(core) = covering_path(s, &t3) {
            let best = extensions(s, &core)
                .into_iter()
                .map(|p| canonical(q, p))
                .min_by(|a, b| key(a).cmp(&key(b)));
            if let Some(p) = best {
                return (Classification::OneGood, vec![p]);
            }
        }
    }

    if t4.len() > 1 {
        return (Classification::None, Vec::new());
    }
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    let special: Vec<usize> = t3.iter().chain(&t4).copied().collect();
    let mut seen_cores = BTreeSet::new();
    for (i, &y) in special.iter().enumerate() {
        for &z in &special[i..] {
            let Some(core1) = forest_path(s, y, z) else {
                continue;
            };
            if !t4.iter().all(|x| core1.contains(x)) {
                continue;
            }
            let on1: BTreeSet<usize> = core1.iter().copied().collect();
            let a1: Vec<usize> = t3.iter().copied().filter(|v| on1.contains(v)).collect();
            if a1.is_empty() && t4.is_empty() {
                continue;
            }
            if !seen_cores.insert(a1.clone()) {
                continue;
            }
            let rest: Vec<usize> = t3
                .iter()
                .copied()
                .filter(|v| !on1.contains(v))
                .chain(t4.iter().copied())
                .collect();
            let Some(core1) = covering_path(s, &a1.iter().chain(&t4).copied().collect::<Vec<_>>())
            else {
                continue;
            };
            let core2 = if rest.is_empty() {
                continue;
            } else {
                match covering_path(s, &rest) {
                    Some(c) => c,
                    None => continue,
                }
            };
            for p1 in extensions(s, &core1) {
                for p2 in extensions(s, &core2) {
                    if !pair_ok(s, &p1, &p2) {
                        continue;
                    }
                    let (mut c1, mut c2) = (canonical(q, p1.clone()), canonical(q, p2));
                    if key(&c2) < key(&c1) {
                        std::mem::swap(&mut c1, &mut c2);
                    }
                    let better = match &best {
                        None => true,
                        Some((b1, b2)) => (key(&c1), key(&c2)) < (key(b1), key(b2)),
                    };
                    if better {
                        best = Some((c1, c2));
                    }
                }
            }
        }
    }
    match best {
        Some((p1, p2)) => (Classification::TwoGood, vec![p1, p2]),
        None => (Classification::None, Vec::new()),
    }
}

/// Conditions for a `{P1, P2}`-good pair once both paths cover their cores.
fn pair_ok(s: &Shape, p1: &[usize], p2: &[usize]) -> bool {
    let all1: BTreeSet<usize> = p1.iter().copied().collect();
    if p2.iter().filter(|v| all1.contains(v)).count() > 1 {
        return false;
    }
    let int1 = interior(p1);
    let int2 = interior(p2);
    for (v, &b) in s.b.iter().enumerate() {
        let (i1, i2) = (int1.contains(&v), int2.contains(&v));
        let ok = match (i1, i2) {
            (true, true) => b == 4,
            (true, false) | (false, true) => b <= 3,
            (false, false) => b <= 2,
        };
        if !ok {
            return false;
        }
    }
    true
}

fn interior(p: &[usize]) -> BTreeSet<usize> {
    if p.len() < 3 {
        BTreeSet::new()
    } else {
        p[1..p.len() - 1].iter().copied().collect()
    }
}

fn canonical(q: &Graph, p: Vec<usize>) -> Vec<usize> {
    let fwd: Vec<&str> = p.iter().map(|&v| q.label(v)).collect();
    let bwd: Vec<&str> = p.iter().rev().map(|&v| q.label(v)).collect();
    if bwd < fwd {
        p.into_iter().rev().collect()
    } else {
        p
    }
}

/// Path between `a` and `b` in the edge-block forest.
fn forest_path(s: &Shape, a: usize, b: usize) -> Option<Vec<usize>> {
    let prev = forest_bfs(s, a);
    prev[b]?;
    let mut path = vec![b];
    let mut x = b;
    while x != a {
        x = prev[x].unwrap();
        path.push(x);
    }
    path.reverse();
    Some(path)
}

fn forest_bfs(s: &Shape, a: usize) -> Vec<Option<usize>> {
    let mut prev = vec![None; s.bridge_adj.len()];
    prev[a] = Some(a);
    let mut queue = VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        for &y in &s.bridge_adj[x] {
            if prev[y].is_none() {
                prev[y] = Some(x);
                queue.push_back(y);
            }
        }
    }
    prev
}

fn forest_dist(s: &Shape, a: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; s.bridge_adj.len()];
    dist[a] = Some(0);
    let mut queue = VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        let d = dist[x].unwrap();
        for &y in &s.bridge_adj[x] {
            if dist[y].is_none() {
                dist[y] = Some(d + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

/// The shortest edge path containing every vertex of `set`, if one exists.
fn covering_path(s: &Shape, set: &[usize]) -> Option<Vec<usize>> {
    let &first = set.first()?;
    let farthest = |from: usize| -> Option<usize> {
        let d = forest_dist(s, from);
        let mut best = from;
        for &v in set {
            if d[v]? > d[best].unwrap() {
                best = v;
            }
        }
        Some(best)
    };
    let y = farthest(first)?;
    let z = farthest(y)?;
    let path = forest_path(s, y, z)?;
    let on: BTreeSet<usize> = path.iter().copied().collect();
    set.iter().all(|v| on.contains(v)).then_some(path)
}

/// All ways to extend `core` by one edge block at each end, so that every
/// core vertex becomes internal.
fn extensions(s: &Shape, core: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if core.len() == 1 {
        let x = core[0];
        let nb = &s.bridge_adj[x];
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                out.push(vec![a, x, b]);
            }
        }
        return out;
    }
    let (y, z) = (core[0], core[core.len() - 1]);
    let left: Vec<usize> = s.bridge_adj[y]
        .iter()
        .copied()
        .filter(|&a| a != core[1])
        .collect();
    let right: Vec<usize> = s.bridge_adj[z]
        .iter()
        .copied()
        .filter(|&b| b != core[core.len() - 2])
        .collect();
    for &a in &left {
        for &b in &right {
            let mut p = Vec::with_capacity(core.len() + 2);
            p.push(a);
            p.extend_from_slice(core);
            p.push(b);
            out.push(p);
        }
    }
    out
}

fn path_indices(q: &Graph, s: &Shape, p: &EdgePath) -> Result<Vec<usize>> {
    if p.vertices.is_empty() {
        return Err(Error::NotEdgePath("empty path".into()));
    }
    let idx: Vec<usize> = p
        .vertices
        .iter()
        .map(|v| q.require(v))
        .collect::<Result<_>>()?;
    let distinct: BTreeSet<usize> = idx.iter().copied().collect();
    if distinct.len() != idx.len() {
        return Err(Error::NotEdgePath("repeated vertex".into()));
    }
    for w in idx.windows(2) {
        if !s.is_bridge(w[0], w[1]) {
            return Err(Error::NotEdgePath(format!(
                "{}-{} is not an edge block",
                q.label(w[0]),
                q.label(w[1])
            )));
        }
    }
    Ok(idx)
}

/// True iff `q` is a `P`-good cactus.
pub fn is_p_good(q: &Graph, p: &EdgePath) -> Result<bool> {
    let s = Shape::new(q);
    let idx = path_indices(q, &s, p)?;
    if !s.is_cactus {
        return Ok(false);
    }
    let int = interior(&idx);
    Ok((0..q.vertex_count()).all(|v| {
        if int.contains(&v) {
            s.b[v] <= 3
        } else {
            s.b[v] <= 2
        }
    }))
}

/// True iff `q` is a `{P1, P2}`-good cactus.
pub fn is_p1p2_good(q: &Graph, p1: &EdgePath, p2: &EdgePath) -> Result<bool> {
    let s = Shape::new(q);
    let i1 = path_indices(q, &s, p1)?;
    let i2 = path_indices(q, &s, p2)?;
    let set1: BTreeSet<usize> = i1.iter().copied().collect();
    let shared = i2.iter().filter(|v| set1.contains(v)).count();
    if shared > 1 {
        return Err(Error::PathsOverlap(shared));
    }
    Ok(s.is_cactus && pair_ok(&s, &i1, &i2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(edges: &[(&str, &str)]) -> Graph {
        Graph::from_edges(edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let mut q = Graph::new();
        for i in 0..n {
            q.add_edge(&format!("c{i}"), &format!("c{}", (i + 1) % n)).unwrap();
        }
        q
    }

    #[test]
    fn even_and_odd_cycles() {
        let r = analyze_cactus(&cycle(6)).unwrap();
        assert!(r.is_good_even_cactus());
        assert!(r.block_degrees.values().all(|&b| b == 1));
        let r = analyze_cactus(&cycle(5)).unwrap();
        assert!(r.is_cactus && !r.is_even);
    }

    #[test]
    fn single_vertex_is_good() {
        let mut q = Graph::new();
        q.add_vertex("x");
        let r = analyze_cactus(&q).unwrap();
        assert_eq!(r.classification, Classification::Good);
        assert_eq!(r.block_degree("x"), Some(0));
    }

    #[test]
    fn disconnected_is_an_error() {
        assert!(matches!(
            analyze_cactus(&g(&[("a", "b"), ("c", "d")])),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn k4_is_not_a_cactus() {
        let q = g(&[
            ("a", "b"),
            ("a", "c"),
            ("a", "d"),
            ("b", "c"),
            ("b", "d"),
            ("c", "d"),
        ]);
        let r = analyze_cactus(&q).unwrap();
        assert!(!r.is_cactus);
        assert_eq!(r.classification, Classification::None);
    }

    #[test]
    fn star_k14_is_two_good() {
        let q = g(&[("c", "a"), ("c", "b"), ("c", "d"), ("c", "e")]);
        let r = analyze_cactus(&q).unwrap();
        assert_eq!(r.block_degree("c"), Some(4));
        assert_eq!(r.classification, Classification::TwoGood);
        let [p1, p2] = &r.witness_paths[..] else {
            panic!()
        };
        assert!(is_p1p2_good(&q, p1, p2).unwrap());
    }

    /// 4-cycle x-a-b-c with pendant edges x-p and x-p2.
    fn pendant_cactus() -> Graph {
        g(&[
            ("x", "a"),
            ("a", "b"),
            ("b", "c"),
            ("c", "x"),
            ("x", "p"),
            ("x", "p2"),
        ])
    }

    #[test]
    fn p_good_through_degree_three_vertex() {
        let q = pendant_cactus();
        assert!(is_p_good(&q, &EdgePath::new(&["p", "x", "p2"])).unwrap());
        assert!(!is_p_good(&q, &EdgePath::new(&["x", "p"])).unwrap());
        assert!(is_p_good(&q, &EdgePath::new(&["x", "a"])).is_err());
        let r = analyze_cactus(&q).unwrap();
        assert_eq!(r.classification, Classification::OneGood);
        assert_eq!(r.witness_paths, vec![EdgePath::new(&["p", "x", "p2"])]);
    }

    #[test]
    fn p1p2_conditions() {
        // good core: the path a-b-c-d-e plus pendants; two disjoint pendant paths
        let q = g(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e")]);
        assert!(is_p1p2_good(&q, &EdgePath::new(&["a", "b"]), &EdgePath::new(&["d", "e"])).unwrap());
        assert!(is_p1p2_good(&q, &EdgePath::new(&["a", "b", "c"]), &EdgePath::new(&["c", "d", "e"])).unwrap());
        assert!(matches!(
            is_p1p2_good(&q, &EdgePath::new(&["a", "b", "c"]), &EdgePath::new(&["b", "c", "d"])),
            Err(Error::PathsOverlap(2))
        ));
        // a vertex internal to both paths needs block degree exactly four
        let t = g(&[("c", "a"), ("c", "b"), ("c", "d"), ("c", "e"), ("c", "f")]);
        assert!(!is_p1p2_good(&t, &EdgePath::new(&["a", "c", "b"]), &EdgePath::new(&["d", "c", "e"])).unwrap());
        let t = g(&[("c", "a"), ("c", "b"), ("c", "d")]);
        assert!(is_p1p2_good(&t, &EdgePath::new(&["a", "c", "b"]), &EdgePath::new(&["d", "c"])).unwrap());
        let star = g(&[("c", "a"), ("c", "b"), ("c", "d"), ("c", "e")]);
        assert!(is_p1p2_good(&star, &EdgePath::new(&["a", "c", "b"]), &EdgePath::new(&["d", "c", "e"])).unwrap());
        assert!(!is_p1p2_good(&star, &EdgePath::new(&["a", "c", "b"]), &EdgePath::new(&["d", "c"])).unwrap());
    }

    #[test]
    fn block_degree_is_degree_minus_cycle_blocks() {
        let q = pendant_cactus();
        let r = analyze_cactus(&q).unwrap();
        assert_eq!(r.block_degree("x"), Some(3));
        assert_eq!(r.block_degree("a"), Some(1));
    }

    /// Every simple path of the edge-block forest, including single
    /// vertices, by exhaustive DFS.
    fn all_edge_paths(q: &Graph) -> Vec<EdgePath> {
        let s = Shape::new(q);
        let mut out = Vec::new();
        fn go(s: &Shape, q: &Graph, path: &mut Vec<usize>, out: &mut Vec<EdgePath>) {
            out.push(EdgePath {
                vertices: path.iter().map(|&v| q.label(v).to_string()).collect(),
            });
            let last = *path.last().unwrap();
            for &w in &s.bridge_adj[last] {
                if !path.contains(&w) {
                    path.push(w);
                    go(s, q, path, out);
                    path.pop();
                }
            }
        }
        for v in 0..q.vertex_count() {
            go(&s, q, &mut vec![v], &mut out);
        }
        out
    }

    fn brute_class(q: &Graph) -> Classification {
        let r = analyze_cactus(q).unwrap();
        if !r.is_cactus {
            return Classification::None;
        }
        if r.block_degrees.values().all(|&b| b <= 2) {
            return Classification::Good;
        }
        let paths = all_edge_paths(q);
        if paths.iter().any(|p| is_p_good(q, p).unwrap()) {
            return Classification::OneGood;
        }
        for p1 in &paths {
            for p2 in &paths {
                if let Ok(true) = is_p1p2_good(q, p1, p2) {
                    return Classification::TwoGood;
                }
            }
        }
        Classification::None
    }

    fn random_tree_like(seed: u64) -> Graph {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut q = Graph::new();
        q.add_vertex("v0");
        let mut next = 1;
        let target = rng.gen_range(2..11);
        while next < target {
            let at = format!("v{}", rng.gen_range(0..next));
            if rng.gen_bool(0.25) {
                let len = rng.gen_range(3..6);
                let mut prev = at.clone();
                for _ in 0..len - 1 {
                    let v = format!("v{next}");
                    next += 1;
                    q.add_edge(&prev, &v).unwrap();
                    prev = v;
                }
                q.add_edge(&prev, &at).unwrap();
            } else {
                let v = format!("v{next}");
                next += 1;
                q.add_edge(&at, &v).unwrap();
            }
        }
        q
    }

    #[test]
    fn classification_matches_exhaustive_witness_search() {
        for seed in 0..300 {
            let q = random_tree_like(seed);
            let r = analyze_cactus(&q).unwrap();
            assert_eq!(r.classification, brute_class(&q), "seed {seed}");
            match r.classification {
                Classification::OneGood => {
                    assert!(is_p_good(&q, &r.witness_paths[0]).unwrap())
                }
                Classification::TwoGood => assert!(is_p1p2_good(
                    &q,
                    &r.witness_paths[0],
                    &r.witness_paths[1]
                )
                .unwrap()),
                _ => assert!(r.witness_paths.is_empty()),
            }
        }
    }
}
