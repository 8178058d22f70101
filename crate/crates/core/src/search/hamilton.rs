//! Hamilton cycles and paths by path extension with degree forcing and
//! connectivity cuts.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::verify::{verify_hamilton_cycle, verify_hamilton_path};

use super::{adjacency, Budget, Flow, Matrix, Meter, SearchOutcome, Witness};

/// Hamilton path search from `src` to `dst` on an index graph.
struct PathSearch<'m> {
    adj: Vec<Vec<usize>>,
    mat: Matrix,
    dst: usize,
    visited: Vec<bool>,
    /// Unvisited neighbors of each vertex.
    free: Vec<usize>,
    path: Vec<usize>,
    meter: &'m Meter,
}

impl<'m> PathSearch<'m> {
    fn new(adj: Vec<Vec<usize>>, src: usize, dst: usize, meter: &'m Meter) -> Self {
        let n = adj.len();
        let mat = Matrix::new(&adj);
        let free = adj.iter().map(Vec::len).collect();
        let mut s = PathSearch {
            adj,
            mat,
            dst,
            visited: vec![false; n],
            free,
            path: Vec::with_capacity(n),
            meter,
        };
        s.visit(src);
        s
    }

    fn visit(&mut self, v: usize) {
        self.visited[v] = true;
        self.path.push(v);
        for &w in &self.adj[v] {
            self.free[w] -= 1;
        }
    }

    fn unvisit(&mut self) {
        let v = self.path.pop().expect("nonempty path");
        self.visited[v] = false;
        for &w in &self.adj[v] {
            self.free[w] += 1;
        }
    }

    /// Every unvisited vertex can still get its path neighbors, and all of
    /// them hang together with the current end.
    fn feasible(&self, end: usize) -> bool {
        let n = self.adj.len();
        let mut left = 0;
        for w in 0..n {
            if self.visited[w] {
                continue;
            }
            left += 1;
            let avail = self.free[w] + usize::from(self.mat.has(w, end));
            let need = if w == self.dst { 1 } else { 2 };
            if avail < need {
                return false;
            }
        }
        if left == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut q = VecDeque::new();
        let mut reached = 0;
        for &w in &self.adj[end] {
            if !self.visited[w] && !seen[w] {
                seen[w] = true;
                q.push_back(w);
            }
        }
        while let Some(x) = q.pop_front() {
            reached += 1;
            for &y in &self.adj[x] {
                if !self.visited[y] && !seen[y] {
                    seen[y] = true;
                    q.push_back(y);
                }
            }
        }
        reached == left
    }

    fn run(&mut self) -> Flow<Vec<usize>> {
        if !self.meter.tick() {
            return Flow::Timeout;
        }
        let n = self.adj.len();
        let end = *self.path.last().expect("nonempty path");
        if self.path.len() == n {
            return if end == self.dst {
                Flow::Found(self.path.clone())
            } else {
                Flow::Exhausted
            };
        }
        if end == self.dst || !self.feasible(end) {
            return Flow::Exhausted;
        }
        let left = n - self.path.len();
        let mut cands: Vec<usize> = self.adj[end]
            .iter()
            .copied()
            .filter(|&w| !self.visited[w] && (w != self.dst || left == 1))
            .collect();
        // a neighbor with a single other free neighbor must come next
        let forced: Vec<usize> = cands
            .iter()
            .copied()
            .filter(|&w| w != self.dst && self.free[w] == 1)
            .collect();
        match forced.len() {
            0 => cands.sort_by_key(|&w| (self.free[w], w)),
            1 => cands = forced,
            _ => return Flow::Exhausted,
        }
        for w in cands {
            self.visit(w);
            let r = self.run();
            self.unvisit();
            match r {
                Flow::Exhausted => {}
                other => return other,
            }
        }
        Flow::Exhausted
    }
}

fn fail_fast(adj: &[Vec<usize>]) -> bool {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 0;
    while let Some(v) = stack.pop() {
        count += 1;
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    count < n
}

/// Hamilton cycle search.
pub fn hamilton_cycle(g: &Graph, budget: Budget) -> SearchOutcome {
    let meter = Meter::new(budget);
    let n = g.vertex_count();
    let mut adj = adjacency(g);
    if n < 3 || adj.iter().any(|ns| ns.len() < 2) || fail_fast(&adj) {
        meter.tick();
        return meter.outcome(Flow::Exhausted);
    }
    // split the lowest-degree vertex into a source and a twin sink
    let start = (0..n).min_by_key(|&v| (adj[v].len(), v)).expect("n >= 3");
    let twin = n;
    adj.push(adj[start].clone());
    for &w in &adj[twin].clone() {
        adj[w].push(twin);
    }
    let result = match PathSearch::new(adj, start, twin, &meter).run() {
        Flow::Found(mut p) => {
            p.pop();
            let w = Witness::from_sequence(g, &p, true);
            assert!(
                verify_hamilton_cycle(g, w.sequence.as_deref().unwrap_or(&[])),
                "hamilton cycle witness failed verification"
            );
            Flow::Found(w)
        }
        Flow::Exhausted => Flow::Exhausted,
        Flow::Timeout => Flow::Timeout,
    };
    meter.outcome(result)
}

/// Hamilton path search, optionally between the given ends.
pub fn hamilton_path(g: &Graph, ends: Option<(&str, &str)>, budget: Budget) -> Result<SearchOutcome> {
    let meter = Meter::new(budget);
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let ends_idx = match ends {
        Some((u, v)) => {
            let (a, b) = (g.require(u)?, g.require(v)?);
            if a == b {
                return Err(Error::InvalidParameter("path ends coincide".into()));
            }
            Some((a, b))
        }
        None => None,
    };
    if n == 1 {
        meter.tick();
        return Ok(meter.outcome(Flow::Found(Witness::from_sequence(g, &[0], false))));
    }
    let mut adj = adjacency(g);
    if fail_fast(&adj) {
        meter.tick();
        return Ok(meter.outcome(Flow::Exhausted));
    }
    let (src, dst, dummies) = match ends_idx {
        Some((a, b)) => (a, b, 0),
        None => {
            // two dummy ends joined to every vertex
            let (z0, z1) = (n, n + 1);
            adj.push((0..n).collect());
            adj.push((0..n).collect());
            for ns in adj.iter_mut().take(n) {
                ns.push(z0);
                ns.push(z1);
            }
            (z0, z1, 2)
        }
    };
    let result = match PathSearch::new(adj, src, dst, &meter).run() {
        Flow::Found(p) => {
            let p: Vec<usize> = if dummies > 0 {
                p[1..p.len() - 1].to_vec()
            } else {
                p
            };
            let w = Witness::from_sequence(g, &p, false);
            assert!(
                verify_hamilton_path(g, w.sequence.as_deref().unwrap_or(&[]), ends),
                "hamilton path witness failed verification"
            );
            Flow::Found(w)
        }
        Flow::Exhausted => Flow::Exhausted,
        Flow::Timeout => Flow::Timeout,
    };
    Ok(meter.outcome(result))
}
