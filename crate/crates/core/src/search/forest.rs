//! Spanning linear forests with prescribed end pairs.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::verify::verify_linear_forest;

use super::{adjacency, Budget, Flow, Matrix, Meter, SearchOutcome, Witness};

struct ForestSearch<'m> {
    adj: Vec<Vec<usize>>,
    mat: Matrix,
    pairs: Vec<(usize, usize)>,
    /// Pair index for every end vertex.
    end_of: Vec<Option<usize>>,
    visited: Vec<bool>,
    /// Current path index and the edges laid so far.
    cur: usize,
    edges: Vec<(usize, usize)>,
    meter: &'m Meter,
}

impl<'m> ForestSearch<'m> {
    /// Vertices a free vertex may still use as a path neighbor.
    fn port(&self, y: usize, end: usize) -> bool {
        if y == end {
            return true;
        }
        match self.end_of[y] {
            Some(j) if j > self.cur => true,
            Some(j) => j == self.cur && y == self.pairs[j].1,
            None => !self.visited[y],
        }
    }

    fn feasible(&self, end: usize) -> bool {
        let n = self.adj.len();
        let free = |x: usize| !self.visited[x] && self.end_of[x].is_none();
        for x in 0..n {
            if free(x) {
                let avail = self.adj[x].iter().filter(|&&y| self.port(y, end)).count();
                if avail < 2 {
                    return false;
                }
            } else if let Some(j) = self.end_of[x] {
                // an end still waiting for its path needs some way in
                let waiting = j > self.cur || (j == self.cur && x == self.pairs[j].1);
                if waiting {
                    let partner = if x == self.pairs[j].0 {
                        self.pairs[j].1
                    } else {
                        self.pairs[j].0
                    };
                    let ok = self.adj[x].iter().any(|&y| {
                        free(y) || (j == self.cur && y == end) || (j > self.cur && y == partner)
                    });
                    if !ok {
                        return false;
                    }
                }
            }
        }
        // every free region must touch a port
        let mut seen = vec![false; n];
        for s in 0..n {
            if !free(s) || seen[s] {
                continue;
            }
            let mut q = VecDeque::from([s]);
            seen[s] = true;
            let mut touches = false;
            while let Some(x) = q.pop_front() {
                for &y in &self.adj[x] {
                    if free(y) {
                        if !seen[y] {
                            seen[y] = true;
                            q.push_back(y);
                        }
                    } else if self.port(y, end) {
                        touches = true;
                    }
                }
            }
            if !touches {
                return false;
            }
        }
        true
    }

    fn run(&mut self, end: usize) -> Flow<Vec<(usize, usize)>> {
        if !self.meter.tick() {
            return Flow::Timeout;
        }
        let target = self.pairs[self.cur].1;
        if end == target {
            if self.cur + 1 == self.pairs.len() {
                return if self.visited.iter().all(|&v| v) {
                    Flow::Found(self.edges.clone())
                } else {
                    Flow::Exhausted
                };
            }
            self.cur += 1;
            let start = self.pairs[self.cur].0;
            self.visited[start] = true;
            let r = self.run(start);
            self.visited[start] = false;
            self.cur -= 1;
            return r;
        }
        if !self.feasible(end) {
            return Flow::Exhausted;
        }
        let mut cands: Vec<usize> = self.adj[end]
            .iter()
            .copied()
            .filter(|&w| !self.visited[w] && self.end_of[w].is_none())
            .collect();
        cands.sort_by_key(|&w| {
            let f = self.adj[w].iter().filter(|&&y| self.port(y, end)).count();
            (f, w)
        });
        if self.mat.has(end, target) {
            cands.push(target);
        }
        for w in cands {
            self.visited[w] = true;
            self.edges.push((end, w));
            let r = self.run(w);
            self.edges.pop();
            self.visited[w] = false;
            if !matches!(r, Flow::Exhausted) {
                return r;
            }
        }
        Flow::Exhausted
    }
}

/// Spanning union of vertex-disjoint paths, path `i` joining `pairs[i]`.
pub fn linear_forest<S: AsRef<str>>(
    g: &Graph,
    pairs: &[(S, S)],
    budget: Budget,
) -> Result<SearchOutcome> {
    let n = g.vertex_count();
    let mut end_of = vec![None; n];
    let mut idx = Vec::new();
    for (j, (a, b)) in pairs.iter().enumerate() {
        let (a, b) = (g.require(a.as_ref())?, g.require(b.as_ref())?);
        for v in [a, b] {
            if end_of[v].is_some() {
                return Err(Error::InvalidParameter(format!(
                    "{} is an end of two paths",
                    g.label(v)
                )));
            }
            end_of[v] = Some(j);
        }
        if a == b {
            return Err(Error::InvalidParameter(format!("path {j} has equal ends")));
        }
        idx.push((a, b));
    }
    let meter = Meter::new(budget);
    if idx.is_empty() {
        meter.tick();
        let r = if n == 0 {
            Flow::Found(Witness::from_edge_indices(g, []))
        } else {
            Flow::Exhausted
        };
        return Ok(meter.outcome(r));
    }
    let adj = adjacency(g);
    let mut s = ForestSearch {
        mat: Matrix::new(&adj),
        adj,
        pairs: idx.clone(),
        end_of,
        visited: vec![false; n],
        cur: 0,
        edges: Vec::new(),
        meter: &meter,
    };
    s.visited[idx[0].0] = true;
    let result = match s.run(idx[0].0) {
        Flow::Found(edges) => {
            let w = Witness::from_edge_indices(g, edges);
            let named: Vec<(String, String)> = pairs
                .iter()
                .map(|(a, b)| (a.as_ref().to_string(), b.as_ref().to_string()))
                .collect();
            assert!(
                verify_linear_forest(g, &w.edges, &named),
                "linear forest witness failed verification"
            );
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
    fn small_cases() {
        let p = Graph::from_edges(&[("a", "b"), ("b", "c")]).unwrap();
        let o = linear_forest(&p, &[("a", "c")], Budget::unlimited()).unwrap();
        assert_eq!(o.status, Status::Found);
        let o = linear_forest(&p, &[("a", "b")], Budget::unlimited()).unwrap();
        assert_eq!(o.status, Status::None);

        let c4 = Graph::from_edges(&[("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v1")]).unwrap();
        let o = linear_forest(&c4, &[("v1", "v2"), ("v3", "v4")], Budget::unlimited()).unwrap();
        assert_eq!(o.status, Status::Found);
        assert_eq!(o.witness.unwrap().edges.len(), 2);
        let o = linear_forest(&c4, &[("v1", "v3"), ("v2", "v4")], Budget::unlimited()).unwrap();
        assert_eq!(o.status, Status::None);
    }

    #[test]
    fn rejects_shared_ends() {
        let c4 = Graph::from_edges(&[("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v1")]).unwrap();
        assert!(linear_forest(&c4, &[("v1", "v2"), ("v2", "v4")], Budget::unlimited()).is_err());
        assert!(linear_forest(&c4, &[("v1", "v1")], Budget::unlimited()).is_err());
    }
}
