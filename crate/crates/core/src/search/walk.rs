//! Spanning closed walks visiting every vertex at most `k` times.
//!
//! For `k = 1` this is a Hamilton cycle. For `k ≥ 2` a spanning tree of
//! maximum degree `k` walked around gives a `k`-walk; when none exists the
//! search falls back to connected spanning multigraphs with edge
//! multiplicities in {0, 1, 2}, all degrees even and at most `2k`. Any
//! `k`-walk yields such a multigraph (reduce multiplicities by two) and an
//! Euler tour of one is a `k`-walk.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::verify::verify_k_walk;

use super::{hamilton_cycle, k_tree, Budget, Flow, Meter, SearchOutcome, Status, Witness};

struct MultiSearch<'m> {
    n: usize,
    edges: Vec<(usize, usize)>,
    mult: Vec<u8>,
    deg: Vec<usize>,
    /// Undecided edges still incident to each vertex.
    open: Vec<usize>,
    cap: usize,
    meter: &'m Meter,
}

impl<'m> MultiSearch<'m> {
    fn connected_possible(&self, next: usize) -> bool {
        // edges decided nonzero plus all undecided edges
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut comps = self.n;
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if i >= next || self.mult[i] > 0 {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                    comps -= 1;
                }
            }
        }
        comps == 1
    }

    fn run(&mut self, i: usize) -> Flow<Vec<u8>> {
        if !self.meter.tick() {
            return Flow::Timeout;
        }
        if !self.connected_possible(i) {
            return Flow::Exhausted;
        }
        if i == self.edges.len() {
            return Flow::Found(self.mult.clone());
        }
        let (a, b) = self.edges[i];
        self.open[a] -= 1;
        self.open[b] -= 1;
        for m in [1u8, 2, 0] {
            let (da, db) = (self.deg[a] + m as usize, self.deg[b] + m as usize);
            if da > self.cap || db > self.cap {
                continue;
            }
            // a vertex with no undecided edges left must be even and nonzero
            let closed_ok = |d: usize, open: usize| open > 0 || (d.is_multiple_of(2) && d > 0);
            if !closed_ok(da, self.open[a]) || !closed_ok(db, self.open[b]) {
                continue;
            }
            self.mult[i] = m;
            self.deg[a] = da;
            self.deg[b] = db;
            let r = self.run(i + 1);
            self.deg[a] -= m as usize;
            self.deg[b] -= m as usize;
            self.mult[i] = 0;
            if !matches!(r, Flow::Exhausted) {
                self.open[a] += 1;
                self.open[b] += 1;
                return r;
            }
        }
        self.open[a] += 1;
        self.open[b] += 1;
        Flow::Exhausted
    }
}

/// Euler tour of a connected multigraph with all degrees even, as a cyclic
/// vertex sequence.
fn euler_tour(n: usize, edges: &[(usize, usize)], mult: &[u8]) -> Vec<usize> {
    let mut inc: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut ends = Vec::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for _ in 0..mult[i] {
            let id = ends.len();
            ends.push((a, b));
            inc[a].push(id);
            inc[b].push(id);
        }
    }
    let mut used = vec![false; ends.len()];
    let mut ptr = vec![0usize; n];
    let mut stack = vec![0usize];
    let mut tour = Vec::new();
    while let Some(&v) = stack.last() {
        while ptr[v] < inc[v].len() && used[inc[v][ptr[v]]] {
            ptr[v] += 1;
        }
        if ptr[v] == inc[v].len() {
            tour.push(v);
            stack.pop();
        } else {
            let id = inc[v][ptr[v]];
            used[id] = true;
            let (a, b) = ends[id];
            stack.push(if a == v { b } else { a });
        }
    }
    tour.pop();
    tour
}

/// Search for a `k`-walk.
pub fn k_walk(g: &Graph, k: usize, budget: Budget) -> Result<SearchOutcome> {
    if k < 1 {
        return Err(Error::InvalidParameter("k-walk needs k >= 1".into()));
    }
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n == 1 {
        let meter = Meter::new(budget);
        meter.tick();
        return Ok(meter.outcome(Flow::Found(Witness::from_sequence(g, &[0], false))));
    }
    if k == 1 {
        return Ok(hamilton_cycle(g, budget));
    }
    let t = k_tree(g, k, budget)?;
    let meter = Meter::new(budget);
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    let mult = match t.status {
        Status::Found => {
            let tw = t.witness.expect("found carries a witness");
            let tree: Vec<(usize, usize)> = tw
                .edges
                .iter()
                .map(|[a, b]| (g.index_of(a).expect("tree vertex"), g.index_of(b).expect("tree vertex")))
                .collect();
            edges = tree;
            Flow::Found(vec![2u8; edges.len()])
        }
        Status::Timeout => Flow::Timeout,
        Status::None => {
            edges.sort_by_key(|&(a, b)| (g.degree(a).min(g.degree(b)), a, b));
            let mut open = vec![0; n];
            for &(a, b) in &edges {
                open[a] += 1;
                open[b] += 1;
            }
            let mut s = MultiSearch {
                n,
                mult: vec![0; edges.len()],
                deg: vec![0; n],
                open,
                cap: 2 * k,
                meter: &meter,
                edges: edges.clone(),
            };
            s.run(0)
        }
    };
    let result = match mult {
        Flow::Found(m) => {
            let seq = euler_tour(n, &edges, &m);
            let w = Witness::from_sequence(g, &seq, true);
            assert!(
                verify_k_walk(g, w.sequence.as_deref().unwrap_or(&[]), k),
                "k-walk witness failed verification"
            );
            Flow::Found(w)
        }
        Flow::Exhausted => Flow::Exhausted,
        Flow::Timeout => Flow::Timeout,
    };
    let mut o = meter.outcome(result);
    o.nodes_explored += t.nodes_explored;
    o.elapsed += t.elapsed;
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::fragment_d;

    #[test]
    fn star_has_no_one_walk() {
        let star = Graph::from_edges(&[("c", "a"), ("c", "b"), ("c", "d")]).unwrap();
        let o = k_walk(&star, 1, Budget::unlimited()).unwrap();
        assert_eq!(o.status, Status::None);
        let o = k_walk(&star, 3, Budget::unlimited()).unwrap();
        assert_eq!(o.status, Status::Found);
        assert!(k_walk(&star, 0, Budget::unlimited()).is_err());
    }

    #[test]
    fn d1_has_a_two_walk() {
        let d = fragment_d(1).unwrap();
        let o = k_walk(&d.graph, 2, Budget::unlimited()).unwrap();
        assert_eq!(o.status, Status::Found);
    }

    #[test]
    fn multigraph_fallback() {
        // three triangles glued at c: every closed walk passes c at least
        // three times
        let g = Graph::from_edges(&[
            ("c", "a1"),
            ("c", "a2"),
            ("a1", "a2"),
            ("c", "b1"),
            ("c", "b2"),
            ("b1", "b2"),
            ("c", "d1"),
            ("c", "d2"),
            ("d1", "d2"),
        ])
        .unwrap();
        assert_eq!(k_tree(&g, 2, Budget::unlimited()).unwrap().status, Status::None);
        let o = k_walk(&g, 3, Budget::unlimited()).unwrap();
        assert_eq!(o.status, Status::Found);
        let o = k_walk(&g, 2, Budget::unlimited()).unwrap();
        assert_eq!(o.status, Status::None);
        assert!(o.exhaustive);

        // K_{2,4} has no Hamilton path but x a y b x c y d is a 2-walk
        let mut k24 = Graph::new();
        for x in ["x", "y"] {
            for a in ["a", "b", "c", "d"] {
                k24.add_edge(x, a).unwrap();
            }
        }
        assert_eq!(k_tree(&k24, 2, Budget::unlimited()).unwrap().status, Status::None);
        let o = k_walk(&k24, 2, Budget::unlimited()).unwrap();
        assert_eq!(o.status, Status::Found);
    }
}
