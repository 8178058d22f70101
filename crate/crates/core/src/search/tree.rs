//! Spanning trees of bounded maximum degree.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::verify::verify_k_tree;

use super::{adjacency, Budget, Flow, Meter, SearchOutcome, Witness};

struct TreeSearch<'m> {
    adj: Vec<Vec<usize>>,
    k: usize,
    in_tree: Vec<bool>,
    deg: Vec<usize>,
    /// Excluded edges as an `n × n` mask.
    banned: Vec<bool>,
    tree: Vec<(usize, usize)>,
    meter: &'m Meter,
}

impl<'m> TreeSearch<'m> {
    fn n(&self) -> usize {
        self.adj.len()
    }

    fn is_banned(&self, a: usize, b: usize) -> bool {
        self.banned[a * self.n() + b]
    }

    fn set_banned(&mut self, a: usize, b: usize, on: bool) {
        let n = self.n();
        self.banned[a * n + b] = on;
        self.banned[b * n + a] = on;
    }

    /// Tree vertices with spare degree can still reach every outside vertex
    /// through usable edges.
    fn feasible(&self) -> bool {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut q = VecDeque::new();
        for v in 0..n {
            if self.in_tree[v] {
                seen[v] = true;
                if self.deg[v] < self.k {
                    q.push_back(v);
                }
            }
        }
        while let Some(x) = q.pop_front() {
            for &y in &self.adj[x] {
                if !seen[y] && !self.is_banned(x, y) {
                    seen[y] = true;
                    q.push_back(y);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    fn run(&mut self) -> Flow<Vec<(usize, usize)>> {
        if !self.meter.tick() {
            return Flow::Timeout;
        }
        let n = self.n();
        if self.tree.len() + 1 == n {
            return Flow::Found(self.tree.clone());
        }
        if !self.feasible() {
            return Flow::Exhausted;
        }
        // outside vertex with the fewest usable edges into the tree
        let mut best: Option<(usize, usize, usize)> = None;
        for x in (0..n).filter(|&x| !self.in_tree[x]) {
            let opts: Vec<usize> = self.adj[x]
                .iter()
                .copied()
                .filter(|&y| self.in_tree[y] && self.deg[y] < self.k && !self.is_banned(x, y))
                .collect();
            if let Some(&y) = opts.iter().min_by_key(|&&y| (self.deg[y], y)) {
                if best.is_none_or(|(c, _, _)| opts.len() < c) {
                    best = Some((opts.len(), x, y));
                }
            }
        }
        let Some((_, x, y)) = best else {
            return Flow::Exhausted;
        };
        self.in_tree[x] = true;
        self.deg[x] += 1;
        self.deg[y] += 1;
        self.tree.push((y, x));
        let r = self.run();
        self.tree.pop();
        self.deg[x] -= 1;
        self.deg[y] -= 1;
        self.in_tree[x] = false;
        if !matches!(r, Flow::Exhausted) {
            return r;
        }
        self.set_banned(x, y, true);
        let r = self.run();
        self.set_banned(x, y, false);
        r
    }
}

/// Spanning tree with maximum degree at most `k`.
pub fn k_tree(g: &Graph, k: usize, budget: Budget) -> Result<SearchOutcome> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k-tree needs k >= 2, got {k}")));
    }
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let meter = Meter::new(budget);
    let adj = adjacency(g);
    let root = (0..n).max_by_key(|&v| (adj[v].len(), std::cmp::Reverse(v))).expect("n > 0");
    let mut s = TreeSearch {
        banned: vec![false; n * n],
        in_tree: vec![false; n],
        deg: vec![0; n],
        tree: Vec::with_capacity(n),
        adj,
        k,
        meter: &meter,
    };
    s.in_tree[root] = true;
    let result = match s.run() {
        Flow::Found(edges) => {
            let w = Witness::from_edge_indices(g, edges);
            assert!(verify_k_tree(g, &w.edges, k), "k-tree witness failed verification");
            Flow::Found(w)
        }
        Flow::Exhausted => Flow::Exhausted,
        Flow::Timeout => Flow::Timeout,
    };
    Ok(meter.outcome(result))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::Status;

    #[test]
    fn star_and_path() {
        let star = Graph::from_edges(&[("c", "a"), ("c", "b"), ("c", "d"), ("c", "e")]).unwrap();
        let o = k_tree(&star, 3, Budget::unlimited()).unwrap();
        assert_eq!(o.status, Status::None);
        assert!(o.exhaustive);
        assert_eq!(k_tree(&star, 4, Budget::unlimited()).unwrap().status, Status::Found);
        let path = Graph::from_edges(&[("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(k_tree(&path, 2, Budget::unlimited()).unwrap().status, Status::Found);
        assert!(k_tree(&path, 1, Budget::unlimited()).is_err());
    }
}
