//! Connected components and small-k vertex connectivity.

use crate::graph::Graph;

/// Connected components as sorted vertex-index lists, ordered by smallest
/// member.
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    components_avoiding(g, &vec![false; g.vertex_count()])
}

fn components_avoiding(g: &Graph, removed: &[bool]) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut seen = removed.to_vec();
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn is_connected(g: &Graph) -> bool {
    components(g).len() <= 1
}

/// Vertex-induced subgraphs of the connected components.
pub fn component_graphs(g: &Graph) -> Vec<Graph> {
    components(g)
        .into_iter()
        .map(|c| {
            let labels: Vec<&str> = c.iter().map(|&i| g.label(i)).collect();
            crate::graph::induced_subgraph(g, &labels)
        })
        .collect()
}

/// True iff `|V| > k` and no set of fewer than `k` vertices disconnects
/// `g`. Separators are found by enumerating every candidate set, which is
/// meant for `k <= 3`.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    let n = g.vertex_count();
    if n <= k {
        return false;
    }
    let mut removed = vec![false; n];
    for size in 0..k {
        if separator_exists(g, &mut removed, 0, size) {
            return false;
        }
    }
    true
}

fn separator_exists(g: &Graph, removed: &mut [bool], from: usize, left: usize) -> bool {
    if left == 0 {
        return components_avoiding(g, removed).len() > 1;
    }
    for v in from..g.vertex_count() {
        removed[v] = true;
        let hit = separator_exists(g, removed, v + 1, left - 1);
        removed[v] = false;
        if hit {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let mut g = Graph::new();
        for i in 0..n {
            g.add_edge(&format!("c{i}"), &format!("c{}", (i + 1) % n)).unwrap();
        }
        g
    }

    #[test]
    fn five_cycle() {
        let c = cycle(5);
        assert!(is_k_connected(&c, 1));
        assert!(is_k_connected(&c, 2));
        assert!(!is_k_connected(&c, 3));
    }

    #[test]
    fn complete_graph_needs_more_than_k_vertices() {
        let k4 = Graph::from_edges(&[
            ("a", "b"),
            ("a", "c"),
            ("a", "d"),
            ("b", "c"),
            ("b", "d"),
            ("c", "d"),
        ])
        .unwrap();
        assert!(is_k_connected(&k4, 3));
        assert!(!is_k_connected(&k4, 4));
    }

    #[test]
    fn components_are_ordered() {
        let g = Graph::from_edges(&[("a", "b"), ("c", "d"), ("b", "e")]).unwrap();
        let cs = components(&g);
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[0], vec![0, 1, 4]);
        assert!(!is_connected(&g));
    }
}
