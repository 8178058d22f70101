//! Biconnected components, block degrees and block paths `H[u, v]`.

use std::collections::VecDeque;

use indexmap::IndexMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Blocks by vertex index. Block order is by smallest edge, edges within a
/// block are sorted.
#[derive(Clone, Debug)]
pub(crate) struct IndexedBlocks {
    pub edges: Vec<Vec<(usize, usize)>>,
    pub vertices: Vec<Vec<usize>>,
    pub membership: Vec<Vec<usize>>,
    pub component: Vec<usize>,
}

impl IndexedBlocks {
    pub fn compute(g: &Graph) -> Self {
        let n = g.vertex_count();
        let adj: Vec<Vec<usize>> = (0..n).map(|i| g.neighbors(i).collect()).collect();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut time = 0usize;
        let mut raw: Vec<(usize, Vec<(usize, usize)>)> = Vec::new();
        let mut edge_stack: Vec<(usize, usize)> = Vec::new();
        let mut component = 0usize;

        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            // (vertex, parent, next neighbor position)
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            while let Some(&mut (v, parent, ref mut pos)) = stack.last_mut() {
                if *pos < adj[v].len() {
                    let w = adj[v][*pos];
                    *pos += 1;
                    if disc[w] == usize::MAX {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        edge_stack.push((v, w));
                        stack.push((w, v, 0));
                    } else if w != parent && disc[w] < disc[v] {
                        edge_stack.push((v, w));
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] >= disc[p] {
                            let mut block = Vec::new();
                            while let Some(e) = edge_stack.pop() {
                                block.push((e.0.min(e.1), e.0.max(e.1)));
                                if e == (p, v) {
                                    break;
                                }
                            }
                            block.sort_unstable();
                            raw.push((component, block));
                        }
                    }
                }
            }
            component += 1;
        }

        raw.sort_by(|a, b| a.1[0].cmp(&b.1[0]));
        let mut membership = vec![Vec::new(); n];
        let mut vertices = Vec::with_capacity(raw.len());
        let mut edges = Vec::with_capacity(raw.len());
        let mut comps = Vec::with_capacity(raw.len());
        for (k, (c, block)) in raw.into_iter().enumerate() {
            let mut vs: Vec<usize> = block.iter().flat_map(|&(a, b)| [a, b]).collect();
            vs.sort_unstable();
            vs.dedup();
            for &v in &vs {
                membership[v].push(k);
            }
            vertices.push(vs);
            edges.push(block);
            comps.push(c);
        }
        IndexedBlocks {
            edges,
            vertices,
            membership,
            component: comps,
        }
    }

    pub fn block_degree(&self, v: usize) -> usize {
        self.membership[v].len()
    }

    pub fn is_cycle(&self, k: usize) -> bool {
        self.edges[k].len() >= 3 && self.edges[k].len() == self.vertices[k].len()
    }
}

/// A block of a graph: a bridge or a maximal 2-connected subgraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub edges: Vec<(String, String)>,
    pub vertices: Vec<String>,
    /// Index of the connected component the block lies in.
    pub component: usize,
}

impl Block {
    pub fn is_edge(&self) -> bool {
        self.edges.len() == 1
    }

    /// A 2-connected block with as many edges as vertices is a cycle.
    pub fn is_cycle(&self) -> bool {
        self.edges.len() >= 3 && self.edges.len() == self.vertices.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<String>,
    /// Blocks containing each vertex; the list length is the block degree.
    pub block_membership: IndexMap<String, Vec<usize>>,
}

impl BlockDecomposition {
    pub fn block_degree(&self, v: &str) -> Option<usize> {
        self.block_membership.get(v).map(Vec::len)
    }
}

pub fn block_decomposition(g: &Graph) -> BlockDecomposition {
    let ib = IndexedBlocks::compute(g);
    let label = |i: usize| g.label(i).to_string();
    let blocks = ib
        .edges
        .iter()
        .zip(&ib.vertices)
        .zip(&ib.component)
        .map(|((es, vs), &c)| Block {
            edges: es.iter().map(|&(a, b)| (label(a), label(b))).collect(),
            vertices: vs.iter().map(|&v| label(v)).collect(),
            component: c,
        })
        .collect();
    let cut_vertices = (0..g.vertex_count())
        .filter(|&v| ib.block_degree(v) >= 2)
        .map(label)
        .collect();
    let block_membership = (0..g.vertex_count())
        .map(|v| (label(v), ib.membership[v].clone()))
        .collect();
    BlockDecomposition {
        blocks,
        cut_vertices,
        block_membership,
    }
}

/// `H[u, v]`: the union of the blocks on the block-cut-tree path from `u`
/// to `v`. For `u == v` this is the single vertex.
pub fn block_path(g: &Graph, u: &str, v: &str) -> Result<Graph> {
    let ui = g.require(u)?;
    let vi = g.require(v)?;
    let mut out = Graph::new();
    if ui == vi {
        out.add_vertex(u);
        return Ok(out);
    }
    let ib = IndexedBlocks::compute(g);
    let n = g.vertex_count();
    // nodes 0..n are vertices, n.. are blocks
    let mut prev = vec![usize::MAX; n + ib.edges.len()];
    let mut queue = VecDeque::from([ui]);
    prev[ui] = ui;
    while let Some(x) = queue.pop_front() {
        if x == vi {
            break;
        }
        let next: Vec<usize> = if x < n {
            ib.membership[x].iter().map(|&k| n + k).collect()
        } else {
            ib.vertices[x - n].clone()
        };
        for y in next {
            if prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    if prev[vi] == usize::MAX {
        return Err(Error::Disconnected);
    }
    let mut chosen = Vec::new();
    let mut x = vi;
    while x != ui {
        if x >= n {
            chosen.push(x - n);
        }
        x = prev[x];
    }
    let mut keep = vec![false; n];
    for &k in &chosen {
        for &w in &ib.vertices[k] {
            keep[w] = true;
        }
    }
    let map: Vec<Option<usize>> = (0..n)
        .map(|i| keep[i].then(|| out.add_vertex(g.label(i))))
        .collect();
    chosen.sort_unstable();
    for k in chosen {
        for &(a, b) in &ib.edges[k] {
            out.add_edge_idx(map[a].unwrap(), map[b].unwrap());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(edges: &[(&str, &str)]) -> Graph {
        Graph::from_edges(edges).unwrap()
    }

    #[test]
    fn single_cycle_is_one_block() {
        let c = g(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]);
        let bd = block_decomposition(&c);
        assert_eq!(bd.blocks.len(), 1);
        assert!(bd.blocks[0].is_cycle());
        assert!(bd.cut_vertices.is_empty());
    }

    #[test]
    fn cycle_with_pendant_edge() {
        let q = g(&[("a", "b"), ("b", "c"), ("c", "x"), ("x", "a"), ("x", "p")]);
        let bd = block_decomposition(&q);
        assert_eq!(bd.blocks.len(), 2);
        assert_eq!(bd.cut_vertices, vec!["x".to_string()]);
        assert_eq!(bd.block_degree("x"), Some(2));
        assert_eq!(bd.block_degree("p"), Some(1));
    }

    #[test]
    fn disconnected_input_tags_components() {
        let q = g(&[("a", "b"), ("c", "d")]);
        let bd = block_decomposition(&q);
        let comps: Vec<usize> = bd.blocks.iter().map(|b| b.component).collect();
        assert_eq!(comps, vec![0, 1]);
    }

    #[test]
    fn block_path_cases() {
        let p = g(&[("a", "b"), ("b", "c")]);
        assert_eq!(block_path(&p, "a", "c").unwrap(), p);
        let single = block_path(&p, "b", "b").unwrap();
        assert_eq!((single.vertex_count(), single.edge_count()), (1, 0));
        assert!(block_path(&p, "a", "zz").is_err());
        // bowtie with a tail: path from tail to far triangle crosses both triangles
        let q = g(&[
            ("x", "a"),
            ("a", "b"),
            ("b", "x"),
            ("x", "c"),
            ("c", "d"),
            ("d", "x"),
            ("d", "e"),
        ]);
        let h = block_path(&q, "a", "c").unwrap();
        assert_eq!(h.edge_count(), 6);
        let h = block_path(&q, "x", "e").unwrap();
        assert_eq!(h.edge_count(), 4);
    }
}
