//! Undirected simple graphs with stable string labels.
//!
//! Vertices keep their insertion order and adjacency is stored in ordered
//! sets, so every iteration over a [`Graph`] is reproducible.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use indexmap::IndexSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An undirected simple graph over string labels.
#[derive(Clone, Debug, Default)]
pub struct Graph {
    labels: IndexSet<String>,
    adj: Vec<BTreeSet<usize>>,
}

/// An element that can be removed from a graph with [`delete`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Vertex(String),
    Edge(String, String),
}

impl Item {
    pub fn vertex(v: impl Into<String>) -> Self {
        Item::Vertex(v.into())
    }

    pub fn edge(a: impl Into<String>, b: impl Into<String>) -> Self {
        Item::Edge(a.into(), b.into())
    }
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from an edge list; endpoints are declared in order of
    /// first appearance.
    pub fn from_edges<A: AsRef<str>, B: AsRef<str>>(edges: &[(A, B)]) -> Result<Self> {
        let mut g = Graph::new();
        for (a, b) in edges {
            g.add_edge(a.as_ref(), b.as_ref())?;
        }
        Ok(g)
    }

    /// Adds a vertex if absent and returns its index.
    pub fn add_vertex(&mut self, label: &str) -> usize {
        if let Some(i) = self.labels.get_index_of(label) {
            return i;
        }
        self.labels.insert(label.to_string());
        self.adj.push(BTreeSet::new());
        self.adj.len() - 1
    }

    /// Adds the edge `ab`, declaring missing endpoints. Re-adding an
    /// existing edge is a no-op.
    pub fn add_edge(&mut self, a: &str, b: &str) -> Result<()> {
        if a == b {
            return Err(Error::SelfLoop(a.to_string()));
        }
        let i = self.add_vertex(a);
        let j = self.add_vertex(b);
        self.adj[i].insert(j);
        self.adj[j].insert(i);
        Ok(())
    }

    /// Adds an edge between two existing vertex indices.
    pub(crate) fn add_edge_idx(&mut self, i: usize, j: usize) {
        debug_assert_ne!(i, j);
        self.adj[i].insert(j);
        self.adj[j].insert(i);
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &str> + '_ {
        self.labels.iter().map(String::as_str)
    }

    pub fn contains(&self, label: &str) -> bool {
        self.labels.contains(label)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.get_index_of(label)
    }

    pub(crate) fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[i].iter().copied()
    }

    /// Neighbor labels of `label`, in index order.
    pub fn neighbor_labels(&self, label: &str) -> Result<Vec<&str>> {
        let i = self.require(label)?;
        Ok(self.neighbors(i).map(|j| self.label(j)).collect())
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn degree_of(&self, label: &str) -> Option<usize> {
        self.index_of(label).map(|i| self.degree(i))
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn has_edge_idx(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(&j)
    }

    pub fn has_edge(&self, a: &str, b: &str) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.has_edge_idx(i, j),
            _ => false,
        }
    }

    /// Edges as index pairs `(i, j)` with `i < j`, ordered by `i` then `j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(i, ns)| ns.range(i + 1..).map(move |&j| (i, j)))
    }

    /// Edges as label pairs, endpoints in index order.
    pub fn edge_labels(&self) -> Vec<(String, String)> {
        self.edges()
            .map(|(i, j)| (self.label(i).to_string(), self.label(j).to_string()))
            .collect()
    }

    /// True if every vertex and edge of `self` is present in `host`.
    pub fn is_subgraph_of(&self, host: &Graph) -> bool {
        self.vertices().all(|v| host.contains(v))
            && self
                .edges()
                .all(|(i, j)| host.has_edge(self.label(i), self.label(j)))
    }

    /// Spanning subgraph of `self` on the given edges. Every edge must be
    /// present in `self`.
    pub fn spanning_subgraph<A: AsRef<str>, B: AsRef<str>>(
        &self,
        edges: &[(A, B)],
    ) -> Result<Graph> {
        let mut out = Graph::new();
        for v in self.vertices() {
            out.add_vertex(v);
        }
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            if !self.has_edge(a, b) {
                return Err(Error::MissingEdge(a.to_string(), b.to_string()));
            }
            out.add_edge(a, b)?;
        }
        Ok(out)
    }

    /// Applies `f` to every label. `f` must be injective on this graph.
    pub fn relabel(&self, mut f: impl FnMut(&str) -> String) -> Graph {
        let mut out = Graph::new();
        let map: Vec<usize> = self.vertices().map(|v| out.add_vertex(&f(v))).collect();
        for (i, j) in self.edges() {
            out.add_edge_idx(map[i], map[j]);
        }
        out
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson::from(self)
    }

    /// Graphviz rendering. Edges on `style`'s paths are colored and apex
    /// vertices are boxed.
    pub fn to_dot(&self, style: &DotStyle) -> String {
        let mut on_upper = BTreeSet::new();
        let mut on_lower = BTreeSet::new();
        for w in style.upper_path.windows(2) {
            on_upper.insert(ordered(&w[0], &w[1]));
        }
        for w in style.lower_path.windows(2) {
            on_lower.insert(ordered(&w[0], &w[1]));
        }
        let mut out = String::from("graph G {\n  node [shape=circle, fontsize=10];\n");
        for v in self.vertices() {
            if style.apexes.iter().any(|a| a == v) {
                let _ = writeln!(out, "  \"{v}\" [shape=box, style=filled, fillcolor=gold];");
            } else {
                let _ = writeln!(out, "  \"{v}\";");
            }
        }
        for (a, b) in self.edge_labels() {
            let key = ordered(&a, &b);
            let attr = if on_upper.contains(&key) {
                " [color=red, penwidth=2]"
            } else if on_lower.contains(&key) {
                " [color=blue, penwidth=2]"
            } else if style.apexes.iter().any(|x| *x == a || *x == b) {
                " [color=gray]"
            } else {
                ""
            };
            let _ = writeln!(out, "  \"{}\" -- \"{}\"{attr};", key.0, key.1);
        }
        out.push_str("}\n");
        out
    }
}

fn ordered(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count() == other.vertex_count()
            && self.edge_count() == other.edge_count()
            && self.is_subgraph_of(other)
    }
}

impl Eq for Graph {}

/// Optional decorations for [`Graph::to_dot`].
#[derive(Clone, Debug, Default)]
pub struct DotStyle {
    pub upper_path: Vec<String>,
    pub lower_path: Vec<String>,
    pub apexes: Vec<String>,
}

/// Wire format: `{"vertices":[...], "edges":[["a","b"],...]}`, each pair in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        let edges = g
            .edge_labels()
            .into_iter()
            .map(|(a, b)| {
                let (a, b) = ordered(&a, &b);
                [a, b]
            })
            .collect();
        GraphJson {
            vertices: g.vertices().map(str::to_string).collect(),
            edges,
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(json: GraphJson) -> Result<Graph> {
        let mut g = Graph::new();
        for v in &json.vertices {
            if g.contains(v) {
                return Err(Error::Schema(format!("duplicate vertex {v:?}")));
            }
            g.add_vertex(v);
        }
        for [a, b] in &json.edges {
            let (i, j) = match (g.index_of(a), g.index_of(b)) {
                (Some(i), Some(j)) => (i, j),
                _ => {
                    return Err(Error::Schema(format!(
                        "edge {a:?}-{b:?} uses an undeclared vertex"
                    )))
                }
            };
            if i == j {
                return Err(Error::Schema(format!("self-loop at {a:?}")));
            }
            if g.has_edge_idx(i, j) {
                return Err(Error::Schema(format!("parallel edge {a:?}-{b:?}")));
            }
            g.add_edge_idx(i, j);
        }
        Ok(g)
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = GraphJson::deserialize(d)?;
        Graph::try_from(json).map_err(serde::de::Error::custom)
    }
}

/// `g[vs ∩ V(g)]`: labels absent from `g` are ignored.
pub fn induced_subgraph<S: AsRef<str>>(g: &Graph, vs: &[S]) -> Graph {
    let keep: BTreeSet<usize> = vs.iter().filter_map(|v| g.index_of(v.as_ref())).collect();
    let mut out = Graph::new();
    // preserve the host's vertex order
    let map: Vec<Option<usize>> = (0..g.vertex_count())
        .map(|i| keep.contains(&i).then(|| out.add_vertex(g.label(i))))
        .collect();
    for (i, j) in g.edges() {
        if let (Some(a), Some(b)) = (map[i], map[j]) {
            out.add_edge_idx(a, b);
        }
    }
    out
}

/// `g − U` for a mixed set of vertices and edges. Unknown items are an
/// error.
pub fn delete(g: &Graph, items: &[Item]) -> Result<Graph> {
    let mut dead_vertices = BTreeSet::new();
    let mut dead_edges = BTreeSet::new();
    for item in items {
        match item {
            Item::Vertex(v) => {
                let i = g
                    .index_of(v)
                    .ok_or_else(|| Error::UnknownItem(format!("vertex {v}")))?;
                dead_vertices.insert(i);
            }
            Item::Edge(a, b) => {
                let (i, j) = match (g.index_of(a), g.index_of(b)) {
                    (Some(i), Some(j)) if g.has_edge_idx(i, j) => (i, j),
                    _ => return Err(Error::UnknownItem(format!("edge {a}-{b}"))),
                };
                dead_edges.insert((i.min(j), i.max(j)));
            }
        }
    }
    let mut out = Graph::new();
    let map: Vec<Option<usize>> = (0..g.vertex_count())
        .map(|i| (!dead_vertices.contains(&i)).then(|| out.add_vertex(g.label(i))))
        .collect();
    for (i, j) in g.edges() {
        if dead_edges.contains(&(i, j)) {
            continue;
        }
        if let (Some(a), Some(b)) = (map[i], map[j]) {
            out.add_edge_idx(a, b);
        }
    }
    Ok(out)
}

/// Label-wise union. Vertices of `g1` come first.
pub fn union(g1: &Graph, g2: &Graph) -> Graph {
    let mut out = g1.clone();
    let map: Vec<usize> = g2.vertices().map(|v| out.add_vertex(v)).collect();
    for (i, j) in g2.edges() {
        out.add_edge_idx(map[i], map[j]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(labels: &[&str]) -> Graph {
        let mut g = Graph::new();
        for k in 0..labels.len() {
            g.add_edge(labels[k], labels[(k + 1) % labels.len()]).unwrap();
        }
        g
    }

    #[test]
    fn rejects_self_loops() {
        let mut g = Graph::new();
        assert!(matches!(g.add_edge("a", "a"), Err(Error::SelfLoop(_))));
    }

    #[test]
    fn parallel_edges_collapse() {
        let g = Graph::from_edges(&[("a", "b"), ("b", "a")]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn induced_path_of_cycle() {
        let c = cycle(&["l", "w1", "w2", "r", "v1"]);
        let p = induced_subgraph(&c, &["l", "w1", "w2"]);
        assert_eq!(p, Graph::from_edges(&[("l", "w1"), ("w1", "w2")]).unwrap());
        assert!(induced_subgraph(&c, &[] as &[&str]).is_empty());
        // labels outside the host are ignored
        let q = induced_subgraph(&c, &["l", "zz"]);
        assert_eq!(q.vertex_count(), 1);
    }

    #[test]
    fn delete_vertex_and_edge() {
        let c = cycle(&["a", "b", "c", "d", "e"]);
        let p = delete(&c, &[Item::vertex("c")]).unwrap();
        assert_eq!((p.vertex_count(), p.edge_count()), (4, 3));
        let q = delete(&c, &[Item::edge("a", "b")]).unwrap();
        assert_eq!((q.vertex_count(), q.edge_count()), (5, 4));
        assert!(matches!(
            delete(&c, &[Item::vertex("zz")]),
            Err(Error::UnknownItem(_))
        ));
        assert!(matches!(
            delete(&c, &[Item::edge("a", "c")]),
            Err(Error::UnknownItem(_))
        ));
    }

    #[test]
    fn union_bowtie_and_idempotence() {
        let t1 = cycle(&["x", "a", "b"]);
        let t2 = cycle(&["x", "c", "d"]);
        let bowtie = union(&t1, &t2);
        assert_eq!((bowtie.vertex_count(), bowtie.edge_count()), (5, 6));
        assert_eq!(union(&bowtie, &bowtie), bowtie);
    }

    #[test]
    fn json_round_trip_and_schema_errors() {
        let g = cycle(&["b", "a", "c"]);
        let text = serde_json::to_string(&g).unwrap();
        assert!(text.contains(r#"["a","b"]"#));
        let back: Graph = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
        let bad = r#"{"vertices":["a"],"edges":[["a","z"]]}"#;
        assert!(serde_json::from_str::<Graph>(bad).is_err());
        let dup = r#"{"vertices":["a","a"],"edges":[]}"#;
        assert!(serde_json::from_str::<Graph>(dup).is_err());
    }

    #[test]
    fn dot_colors_paths() {
        let g = cycle(&["a", "b", "c", "d"]);
        let style = DotStyle {
            upper_path: vec!["a".into(), "b".into(), "c".into()],
            lower_path: vec!["a".into(), "d".into(), "c".into()],
            apexes: vec![],
        };
        let dot = g.to_dot(&style);
        assert!(dot.contains("\"a\" -- \"b\" [color=red"));
        assert!(dot.contains("\"a\" -- \"d\" [color=blue"));
    }
}
