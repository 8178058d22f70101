//! Gadget `I`, fragments `A`, `C_n`, `D_n`, the chain `G⁻(B)` and the apex
//! graph `G(B)`, each with its plane embedding and outer-path metadata.

use std::collections::HashMap;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::embedding::RotationEmbedding;
use crate::error::{Error, Result};
use crate::graph::{DotStyle, Graph};

pub const APEX_S: &str = "s";
pub const APEX_T: &str = "t";
/// Copies of `A` in the full chain.
pub const CHAIN_LENGTH: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChartKind {
    I,
    A,
    C,
    D,
    Gminus,
    G,
}

/// The fragment `B` used between consecutive copies of `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FragmentKind {
    C,
    D,
}

impl std::str::FromStr for FragmentKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "C" | "c" => Ok(FragmentKind::C),
            "D" | "d" => Ok(FragmentKind::D),
            _ => Err(Error::InvalidParameter(format!("unknown fragment {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Junction {
    pub label: String,
    pub aliases: Vec<String>,
}

/// A built family graph with the metadata the analyses need.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FragmentChart {
    pub kind: ChartKind,
    pub base: Option<FragmentKind>,
    pub n: Option<usize>,
    pub graph: Graph,
    pub endvertices: (String, String),
    pub upper_path: Vec<String>,
    pub lower_path: Vec<String>,
    pub junctions: Vec<Junction>,
    pub u2_set: Vec<String>,
    /// Copy id ("A3", "B5") to the canonical labels of its vertices.
    pub fragment_spans: IndexMap<String, Vec<String>>,
    /// Copy id to its endvertices (`u1, u3` for `A`, `l, r` for `B`).
    pub fragment_ends: IndexMap<String, (String, String)>,
    pub apexes: Option<(String, String)>,
    /// Number of `A` copies in a chain; zero for single fragments.
    pub a_count: usize,
    pub embedding: RotationEmbedding,
}

impl FragmentChart {
    /// Canonical label for a vertex name or junction alias.
    pub fn resolve(&self, name: &str) -> Option<String> {
        if self.graph.contains(name) {
            return Some(name.to_string());
        }
        self.junctions
            .iter()
            .find(|j| j.aliases.iter().any(|a| a == name))
            .map(|j| j.label.clone())
    }

    /// Canonical label of vertex `local` in copy `copy` ("A3", "B1").
    pub fn copy_label(&self, copy: &str, local: &str) -> Result<String> {
        let name = format!("{copy}:{local}");
        self.resolve(&name).ok_or(Error::UnknownVertex(name))
    }

    /// `l^i` with the boundary convention: `u1^1` below 1, the last `u3`
    /// above the last `B` copy.
    pub fn l(&self, i: usize) -> String {
        self.boundary(i, "l")
    }

    pub fn r(&self, i: usize) -> String {
        self.boundary(i, "r")
    }

    fn boundary(&self, i: usize, side: &str) -> String {
        if i < 1 {
            self.endvertices.0.clone()
        } else if i >= self.a_count {
            self.endvertices.1.clone()
        } else {
            self.copy_label(&format!("B{i}"), side).expect("chain junction")
        }
    }

    /// `G⁻`: the chart graph without its apexes.
    pub fn chain_graph(&self) -> Graph {
        match &self.apexes {
            Some((s, t)) => crate::graph::delete(
                &self.graph,
                &[crate::graph::Item::vertex(s), crate::graph::Item::vertex(t)],
            )
            .expect("apexes are vertices"),
            None => self.graph.clone(),
        }
    }

    pub fn dot_style(&self) -> DotStyle {
        DotStyle {
            upper_path: self.upper_path.clone(),
            lower_path: self.lower_path.clone(),
            apexes: self
                .apexes
                .iter()
                .flat_map(|(s, t)| [s.clone(), t.clone()])
                .collect(),
        }
    }

    pub fn outer_face(&self) -> &[String] {
        &self.embedding.outer_face
    }
}

/// A fragment in local labels with drawing coordinates.
struct Local {
    graph: Graph,
    coords: Vec<(String, (f64, f64))>,
    upper: Vec<String>,
    lower: Vec<String>,
    width: f64,
}

impl Local {
    fn ends(&self) -> (String, String) {
        (self.upper[0].clone(), self.upper.last().unwrap().clone())
    }
}

fn names(prefix: &str, range: impl IntoIterator<Item = usize>) -> Vec<String> {
    range.into_iter().map(|i| format!("{prefix}{i}")).collect()
}

fn path_edges(g: &mut Graph, path: &[String]) {
    for w in path.windows(2) {
        g.add_edge(&w[0], &w[1]).expect("distinct labels");
    }
}

fn local_i() -> Local {
    let mut g = Graph::new();
    for v in ["u1", "u2"].iter().map(|s| s.to_string()).chain(names("v", 1..=12)) {
        g.add_vertex(&v);
    }
    for (a, b) in [
        ("u1", "v1"),
        ("v1", "v2"),
        ("v2", "v3"),
        ("v3", "v4"),
        ("v4", "v5"),
        ("v5", "u2"),
        ("u1", "v6"),
        ("v3", "v6"),
        ("v6", "u2"),
        ("u1", "v7"),
        ("v7", "v8"),
        ("v8", "v9"),
        ("v9", "v10"),
        ("v10", "v11"),
        ("v11", "u2"),
        ("u1", "v12"),
        ("v9", "v12"),
        ("v12", "u2"),
    ] {
        g.add_edge(a, b).unwrap();
    }
    let mut coords = vec![("u1".into(), (0.0, 0.0)), ("u2".into(), (6.0, 0.0))];
    for k in 1..=5 {
        coords.push((format!("v{k}"), (k as f64, 1.0)));
        coords.push((format!("v{}", k + 6), (k as f64, -1.0)));
    }
    coords.push(("v6".into(), (3.0, 0.4)));
    coords.push(("v12".into(), (3.0, -0.4)));
    let upper = ["u1", "v1", "v2", "v3", "v4", "v5", "u2"].map(String::from).to_vec();
    let lower = ["u1", "v7", "v8", "v9", "v10", "v11", "u2"].map(String::from).to_vec();
    Local {
        graph: g,
        coords,
        upper,
        lower,
        width: 6.0,
    }
}

fn local_a() -> Local {
    let first = local_i();
    let shift = |v: &str| -> String {
        match v {
            "u1" => "u2".into(),
            "u2" => "u3".into(),
            _ => format!("v{}", v[1..].parse::<usize>().unwrap() + 12),
        }
    };
    let mut g = Graph::new();
    for v in ["u1", "u2", "u3"].iter().map(|s| s.to_string()).chain(names("v", 1..=24)) {
        g.add_vertex(&v);
    }
    for (a, b) in first.graph.edge_labels() {
        g.add_edge(&a, &b).unwrap();
    }
    for (a, b) in first.graph.edge_labels() {
        g.add_edge(&shift(&a), &shift(&b)).unwrap();
    }
    let mut coords = first.coords.clone();
    for (v, (x, y)) in &first.coords {
        if v != "u1" {
            coords.push((shift(v), (x + 6.0, *y)));
        }
    }
    let join = |p: &[String]| -> Vec<String> {
        p.iter()
            .cloned()
            .chain(p.iter().skip(1).map(|v| shift(v)))
            .collect()
    };
    Local {
        graph: g,
        coords,
        upper: join(&first.upper),
        lower: join(&first.lower),
        width: 12.0,
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidParameter(format!("n must be positive, got {n}")));
    }
    Ok(())
}

fn local_c(n: usize) -> Local {
    let mut g = Graph::new();
    let upper: Vec<String> = std::iter::once("l".to_string())
        .chain(names("w", 1..=n + 1))
        .chain(std::iter::once("r".to_string()))
        .collect();
    let lower: Vec<String> = std::iter::once("l".to_string())
        .chain(names("v", 1..=n))
        .chain(std::iter::once("r".to_string()))
        .collect();
    for v in upper.iter().chain(&lower[1..n + 1]) {
        g.add_vertex(v);
    }
    path_edges(&mut g, &upper);
    path_edges(&mut g, &lower);
    let width = (n + 2) as f64;
    let mut coords = vec![("l".into(), (0.0, 0.0)), ("r".into(), (width, 0.0))];
    for i in 1..=n + 1 {
        coords.push((format!("w{i}"), (i as f64, 1.0)));
    }
    for i in 1..=n {
        coords.push((format!("v{i}"), (width * i as f64 / (n + 1) as f64, -1.0)));
    }
    Local {
        graph: g,
        coords,
        upper,
        lower,
        width,
    }
}

/// Two `(2n+3)`-cycles sharing `m`. The `w` vertices are numbered outward
/// from `m`, so `Z1 = l, w_{n+1}, …, w_1, m, v_n, …, v_1` and
/// `Z2 = m, x_1, …, x_n, r, x_{n+1}, …, x_{2n+1}`.
fn local_d(n: usize) -> Local {
    let mut g = Graph::new();
    let z1_upper: Vec<String> = std::iter::once("l".to_string())
        .chain(names("w", (1..=n + 1).rev()))
        .chain(std::iter::once("m".to_string()))
        .collect();
    let z1_lower: Vec<String> = std::iter::once("l".to_string())
        .chain(names("v", 1..=n))
        .chain(std::iter::once("m".to_string()))
        .collect();
    let z2_upper: Vec<String> = std::iter::once("m".to_string())
        .chain(names("x", 1..=n))
        .chain(std::iter::once("r".to_string()))
        .collect();
    let z2_lower: Vec<String> = std::iter::once("m".to_string())
        .chain(names("x", (n + 1..=2 * n + 1).rev()))
        .chain(std::iter::once("r".to_string()))
        .collect();
    g.add_vertex("l");
    for v in names("w", 1..=n + 1) {
        g.add_vertex(&v);
    }
    g.add_vertex("m");
    for v in names("v", 1..=n).into_iter().chain(names("x", 1..=2 * n + 1)) {
        g.add_vertex(&v);
    }
    g.add_vertex("r");
    for p in [&z1_upper, &z1_lower, &z2_upper, &z2_lower] {
        path_edges(&mut g, p);
    }
    let half = (n + 2) as f64;
    let mut coords = vec![
        ("l".into(), (0.0, 0.0)),
        ("m".into(), (half, 0.0)),
        ("r".into(), (2.0 * half, 0.0)),
    ];
    for (k, v) in z1_upper[1..=n + 1].iter().enumerate() {
        coords.push((v.clone(), ((k + 1) as f64, 1.0)));
    }
    for (k, v) in z1_lower[1..=n].iter().enumerate() {
        coords.push((v.clone(), (half * (k + 1) as f64 / (n + 1) as f64, -1.0)));
    }
    for (k, v) in z2_upper[1..=n].iter().enumerate() {
        coords.push((v.clone(), (half + half * (k + 1) as f64 / (n + 1) as f64, 1.0)));
    }
    for (k, v) in z2_lower[1..=n + 1].iter().enumerate() {
        coords.push((v.clone(), (half + half * (k + 1) as f64 / (n + 2) as f64, -1.0)));
    }
    let upper = z1_upper.iter().chain(&z2_upper[1..]).cloned().collect();
    let lower = z1_lower.iter().chain(&z2_lower[1..]).cloned().collect();
    Local {
        graph: g,
        coords,
        upper,
        lower,
        width: 2.0 * half,
    }
}

fn local_b(kind: FragmentKind, n: usize) -> Local {
    match kind {
        FragmentKind::C => local_c(n),
        FragmentKind::D => local_d(n),
    }
}

fn outer_of(upper: &[String], lower: &[String]) -> Vec<String> {
    upper
        .iter()
        .chain(lower[1..lower.len() - 1].iter().rev())
        .cloned()
        .collect()
}

fn single(kind: ChartKind, n: Option<usize>, local: Local) -> FragmentChart {
    let coords: HashMap<String, (f64, f64)> = local.coords.iter().cloned().collect();
    let outer = outer_of(&local.upper, &local.lower);
    let embedding = RotationEmbedding::from_coordinates(&local.graph, &coords, outer);
    let ends = local.ends();
    let u2_set = if local.graph.contains("u2") {
        vec!["u2".to_string()]
    } else {
        Vec::new()
    };
    FragmentChart {
        kind,
        base: None,
        n,
        endvertices: ends,
        upper_path: local.upper,
        lower_path: local.lower,
        junctions: Vec::new(),
        u2_set,
        fragment_spans: IndexMap::new(),
        fragment_ends: IndexMap::new(),
        apexes: None,
        a_count: 0,
        embedding,
        graph: local.graph,
    }
}

/// `I`: the half of `A` between `u1` and `u2`.
pub fn gadget_i() -> FragmentChart {
    single(ChartKind::I, None, local_i())
}

pub fn fragment_a() -> FragmentChart {
    single(ChartKind::A, None, local_a())
}

pub fn fragment_c(n: usize) -> Result<FragmentChart> {
    check_n(n)?;
    Ok(single(ChartKind::C, Some(n), local_c(n)))
}

pub fn fragment_d(n: usize) -> Result<FragmentChart> {
    check_n(n)?;
    Ok(single(ChartKind::D, Some(n), local_d(n)))
}

pub fn fragment_b(kind: FragmentKind, n: usize) -> Result<FragmentChart> {
    match kind {
        FragmentKind::C => fragment_c(n),
        FragmentKind::D => fragment_d(n),
    }
}

/// Canonical label of `local` in a copy of `A` or `B` inside a chain with
/// `a_count` copies of `A`. Junction `J_{2i−1}` is `u3^i = l^i` and
/// `J_{2i}` is `r^i = u1^{i+1}`.
fn chain_label(is_a: bool, i: usize, local: &str, a_count: usize) -> String {
    match (is_a, local) {
        (true, "u1") if i > 1 => format!("J{}", 2 * (i - 1)),
        (true, "u3") if i < a_count => format!("J{}", 2 * i - 1),
        (false, "l") => format!("J{}", 2 * i - 1),
        (false, "r") => format!("J{}", 2 * i),
        _ => format!("{}{i}:{local}", if is_a { "A" } else { "B" }),
    }
}

/// `G⁻(B)` with the standard eight copies of `A`.
pub fn build_chain(kind: FragmentKind, n: usize) -> Result<FragmentChart> {
    build_chain_with(kind, n, CHAIN_LENGTH)
}

/// A chain `A¹ B¹ A² … B^{k−1} A^k` with `k = a_count`.
pub fn build_chain_with(kind: FragmentKind, n: usize, a_count: usize) -> Result<FragmentChart> {
    check_n(n)?;
    if a_count < 1 {
        return Err(Error::InvalidParameter("chain needs at least one A".into()));
    }
    let a = local_a();
    let b = local_b(kind, n);
    let mut g = Graph::new();
    let mut coords: HashMap<String, (f64, f64)> = HashMap::new();
    let mut upper: Vec<String> = Vec::new();
    let mut lower: Vec<String> = Vec::new();
    let mut spans = IndexMap::new();
    let mut ends = IndexMap::new();
    let mut junctions: Vec<Junction> = Vec::new();
    let mut x0 = 0.0;

    let mut place = |is_a: bool, i: usize, local: &Local, x0: f64| {
        let map = |v: &str| chain_label(is_a, i, v, a_count);
        for v in local.graph.vertices() {
            g.add_vertex(&map(v));
        }
        for (p, q) in local.graph.edge_labels() {
            g.add_edge(&map(&p), &map(&q)).unwrap();
        }
        for (v, (x, y)) in &local.coords {
            coords.insert(map(v), (x + x0, *y));
        }
        let skip = usize::from(!upper.is_empty());
        upper.extend(local.upper.iter().skip(skip).map(|v| map(v)));
        lower.extend(local.lower.iter().skip(skip).map(|v| map(v)));
        let id = format!("{}{i}", if is_a { "A" } else { "B" });
        spans.insert(id.clone(), local.graph.vertices().map(map).collect::<Vec<_>>());
        let (e0, e1) = local.ends();
        ends.insert(id, (map(&e0), map(&e1)));
    };

    for i in 1..=a_count {
        place(true, i, &a, x0);
        x0 += a.width;
        if i < a_count {
            place(false, i, &b, x0);
            x0 += b.width;
        }
    }
    for i in 1..a_count {
        junctions.push(Junction {
            label: format!("J{}", 2 * i - 1),
            aliases: vec![format!("A{i}:u3"), format!("B{i}:l")],
        });
        junctions.push(Junction {
            label: format!("J{}", 2 * i),
            aliases: vec![format!("B{i}:r"), format!("A{}:u1", i + 1)],
        });
    }
    let outer = outer_of(&upper, &lower);
    let embedding = RotationEmbedding::from_coordinates(&g, &coords, outer);
    let u2_set = (1..=a_count).map(|i| format!("A{i}:u2")).collect();
    Ok(FragmentChart {
        kind: ChartKind::Gminus,
        base: Some(kind),
        n: Some(n),
        endvertices: (upper[0].clone(), upper.last().unwrap().clone()),
        graph: g,
        upper_path: upper,
        lower_path: lower,
        junctions,
        u2_set,
        fragment_spans: spans,
        fragment_ends: ends,
        apexes: None,
        a_count,
        embedding,
    })
}

/// `G(B)` with the standard eight copies of `A`.
pub fn build_g(kind: FragmentKind, n: usize) -> Result<FragmentChart> {
    build_g_with(kind, n, CHAIN_LENGTH)
}

/// Joins `s` to the upper path and `t` to the lower path of a chain.
pub fn build_g_with(kind: FragmentKind, n: usize, a_count: usize) -> Result<FragmentChart> {
    let chain = build_chain_with(kind, n, a_count)?;
    let mut g = chain.graph.clone();
    for v in &chain.upper_path {
        g.add_edge(APEX_S, v)?;
    }
    for v in &chain.lower_path {
        g.add_edge(APEX_T, v)?;
    }
    let upper_rank: HashMap<&str, f64> = chain
        .upper_path
        .iter()
        .enumerate()
        .map(|(k, v)| (v.as_str(), k as f64))
        .collect();
    let lower_rank: HashMap<&str, f64> = chain
        .lower_path
        .iter()
        .enumerate()
        .map(|(k, v)| (v.as_str(), -(k as f64)))
        .collect();
    let base = &chain.embedding.rotation;
    let pos = |v: &str, w: &str| base[v].iter().position(|x| x == w);
    // Apex edges enter each path vertex from straight above or below the
    // drawing; apex rotations follow the paths.
    let chain_angles = angles_from_rotation(&chain);
    let embedding = RotationEmbedding::from_angles(
        &g,
        vec![
            APEX_S.to_string(),
            chain.endvertices.0.clone(),
            APEX_T.to_string(),
            chain.endvertices.1.clone(),
        ],
        |v, w| match (v, w) {
            (APEX_S, _) => upper_rank[w],
            (APEX_T, _) => lower_rank[w],
            (_, APEX_S) => std::f64::consts::FRAC_PI_2,
            (_, APEX_T) => -std::f64::consts::FRAC_PI_2,
            _ => {
                debug_assert!(pos(v, w).is_some());
                chain_angles[&(v.to_string(), w.to_string())]
            }
        },
    );
    Ok(FragmentChart {
        kind: ChartKind::G,
        graph: g,
        apexes: Some((APEX_S.to_string(), APEX_T.to_string())),
        embedding,
        ..chain
    })
}

/// Edge directions of the chain drawing, recomputed from the builder's
/// coordinates.
fn angles_from_rotation(chain: &FragmentChart) -> HashMap<(String, String), f64> {
    let coords = chain_coordinates(chain);
    let mut out = HashMap::new();
    for (v, w) in chain.graph.edge_labels() {
        let (x0, y0) = coords[&v];
        let (x1, y1) = coords[&w];
        out.insert((v.clone(), w.clone()), (y1 - y0).atan2(x1 - x0));
        out.insert((w, v), (y0 - y1).atan2(x0 - x1));
    }
    out
}

fn chain_coordinates(chain: &FragmentChart) -> HashMap<String, (f64, f64)> {
    let a = local_a();
    let b = local_b(chain.base.expect("chain"), chain.n.expect("chain"));
    let mut coords = HashMap::new();
    let mut x0 = 0.0;
    for i in 1..=chain.a_count {
        for (v, (x, y)) in &a.coords {
            coords.insert(chain_label(true, i, v, chain.a_count), (x + x0, *y));
        }
        x0 += a.width;
        if i < chain.a_count {
            for (v, (x, y)) in &b.coords {
                coords.insert(chain_label(false, i, v, chain.a_count), (x + x0, *y));
            }
            x0 += b.width;
        }
    }
    coords
}

/// One edge of the explicit spanning-cactus formula for `G(C_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaEdge {
    pub a: String,
    pub b: String,
    pub apex: bool,
}

/// The edge list of the explicit spanning good even cactus of `G(C_n)`:
/// the eight copies of `K_A`, the `B` copies with the listed deletions,
/// and the listed apex edges, in that order. Labels are canonical.
pub fn formula_gc_edges(chart: &FragmentChart, ka: &Graph) -> Result<Vec<FormulaEdge>> {
    if chart.kind != ChartKind::G || chart.base != Some(FragmentKind::C) || chart.a_count != 8 {
        return Err(Error::InvalidParameter(
            "the formula needs G(C_n) with eight copies of A".into(),
        ));
    }
    let n = chart.n.unwrap();
    let mut out = Vec::new();
    let mut push = |a: String, b: String, apex: bool| out.push(FormulaEdge { a, b, apex });
    for i in 1..=8 {
        let copy = format!("A{i}");
        for (p, q) in ka.edge_labels() {
            push(chart.copy_label(&copy, &p)?, chart.copy_label(&copy, &q)?, false);
        }
    }
    let c = local_c(n);
    let wl = format!("w{}", n + 1);
    for i in 1..=7 {
        let removed: Vec<(&str, &str)> = match i {
            1 | 3 => vec![("l", "w1")],
            5 | 7 => vec![(wl.as_str(), "r")],
            _ => vec![("l", "v1"), (wl.as_str(), "r")],
        };
        let copy = format!("B{i}");
        for (p, q) in c.graph.edge_labels() {
            let gone = removed
                .iter()
                .any(|&(x, y)| (x == p && y == q) || (x == q && y == p));
            if !gone {
                push(chart.copy_label(&copy, &p)?, chart.copy_label(&copy, &q)?, false);
            }
        }
    }
    let bl = |i: usize, local: &str| chart.copy_label(&format!("B{i}"), local);
    for (apex, i, local) in [
        (APEX_S, 1, "l"),
        (APEX_S, 1, "w1"),
        (APEX_T, 3, "l"),
        (APEX_S, 3, "w1"),
        (APEX_T, 5, wl.as_str()),
        (APEX_S, 5, "r"),
        (APEX_T, 7, wl.as_str()),
        (APEX_T, 5, "r"),
    ] {
        push(apex.to_string(), bl(i, local)?, true);
    }
    Ok(out)
}

/// Assembles the formula's edge set verbatim as a subgraph of `G(C_n)`.
/// Fails with [`Error::MissingEdge`] on the first formula edge absent from
/// `G`.
pub fn certificate_cactus_gc(n: usize, ka: &Graph) -> Result<Graph> {
    let chart = build_g(FragmentKind::C, n)?;
    certificate_cactus_gc_in(&chart, ka)
}

pub fn certificate_cactus_gc_in(chart: &FragmentChart, ka: &Graph) -> Result<Graph> {
    let edges = formula_gc_edges(chart, ka)?;
    let mut out = Graph::new();
    for v in chart.graph.vertices() {
        out.add_vertex(v);
    }
    for e in &edges {
        if !chart.graph.has_edge(&e.a, &e.b) {
            return Err(Error::MissingEdge(e.a.clone(), e.b.clone()));
        }
        out.add_edge(&e.a, &e.b)?;
    }
    Ok(out)
}

/// Random connected good cacti, grown by attaching edges and cycles at
/// vertices of block degree below two.
pub fn random_good_cactus(
    rng: &mut impl rand::Rng,
    max_vertices: usize,
    even: bool,
    max_degree: Option<usize>,
) -> Graph {
    let mut g = Graph::new();
    g.add_vertex("q0");
    let mut blocks = vec![0usize];
    let target = rng.gen_range(1..=max_vertices.max(1));
    let mut stale = 0;
    while g.vertex_count() < target && stale < 50 {
        let at = rng.gen_range(0..g.vertex_count());
        let room = target - g.vertex_count();
        let cycle_len = if even {
            2 * rng.gen_range(2..=3)
        } else {
            rng.gen_range(3..=6)
        };
        let want_cycle = rng.gen_bool(0.4) && cycle_len - 1 <= room;
        let add_deg = if want_cycle { 2 } else { 1 };
        let deg_ok = max_degree.is_none_or(|d| g.degree(at) + add_deg <= d);
        if blocks[at] >= 2 || !deg_ok {
            stale += 1;
            continue;
        }
        stale = 0;
        let anchor = g.label(at).to_string();
        blocks[at] += 1;
        if want_cycle {
            let mut prev = anchor.clone();
            for _ in 0..cycle_len - 1 {
                let v = format!("q{}", g.vertex_count());
                g.add_edge(&prev, &v).unwrap();
                blocks.push(1);
                prev = v;
            }
            g.add_edge(&prev, &anchor).unwrap();
        } else {
            let v = format!("q{}", g.vertex_count());
            g.add_edge(&anchor, &v).unwrap();
            blocks.push(1);
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::{block_decomposition, block_path};
    use crate::cactus::analyze_cactus;
    use crate::connectivity::is_k_connected;
    use crate::embedding::check_embedding;
    use crate::graph::induced_subgraph;

    #[test]
    fn gadget_and_fragment_sizes() {
        let i = gadget_i();
        assert_eq!((i.graph.vertex_count(), i.graph.edge_count()), (14, 18));
        assert!(is_k_connected(&i.graph, 2));
        let a = fragment_a();
        assert_eq!((a.graph.vertex_count(), a.graph.edge_count()), (27, 36));
        // the two copies of I meet only at u2
        let bd = block_decomposition(&a.graph);
        assert_eq!(bd.blocks.len(), 2);
        assert_eq!(bd.cut_vertices, vec!["u2".to_string()]);
        assert_eq!(
            a.upper_path.join(" "),
            "u1 v1 v2 v3 v4 v5 u2 v13 v14 v15 v16 v17 u3"
        );
        assert_eq!(
            a.lower_path.join(" "),
            "u1 v7 v8 v9 v10 v11 u2 v19 v20 v21 v22 v23 u3"
        );
    }

    #[test]
    fn half_gadget_is_induced() {
        let i = gadget_i();
        let h = induced_subgraph(
            &i.graph,
            &["u1", "u2", "v7", "v8", "v9", "v10", "v11", "v12"],
        );
        assert_eq!((h.vertex_count(), h.edge_count()), (8, 9));
    }

    #[test]
    fn c_and_d_layouts() {
        let c = fragment_c(1).unwrap();
        assert_eq!(c.graph.vertex_count(), 5);
        assert!(!c.graph.has_edge("l", "r"));
        for (a, b) in [("l", "w1"), ("w2", "r"), ("l", "v1")] {
            assert!(c.graph.has_edge(a, b));
        }
        assert!(fragment_c(0).is_err());
        for n in 1..=4 {
            let d = fragment_d(n).unwrap();
            assert_eq!(d.graph.vertex_count(), 4 * n + 5);
            let bd = block_decomposition(&d.graph);
            assert_eq!(bd.blocks.len(), 2);
            assert!(bd.blocks.iter().all(|b| b.edges.len() == 2 * n + 3));
            assert_eq!(bd.cut_vertices, vec!["m".to_string()]);
            assert!(d.upper_path.contains(&format!("w{n}")));
            assert!(d.upper_path.contains(&"x1".to_string()));
            assert!(d.lower_path.contains(&format!("x{}", 2 * n)));
            assert!(d.lower_path.contains(&format!("x{}", 2 * n + 1)));
            assert!(!is_k_connected(&d.graph, 2));
        }
    }

    #[test]
    fn every_builder_embedding_is_plane() {
        let mut charts = vec![gadget_i(), fragment_a()];
        for n in 1..=2 {
            charts.push(fragment_c(n).unwrap());
            charts.push(fragment_d(n).unwrap());
            for k in [FragmentKind::C, FragmentKind::D] {
                charts.push(build_chain(k, n).unwrap());
                charts.push(build_g(k, n).unwrap());
            }
        }
        for ch in &charts {
            let r = check_embedding(&ch.graph, &ch.embedding).unwrap();
            assert!(r.euler_holds, "{:?} n={:?}", ch.kind, ch.n);
            assert!(r.outer_face_found, "{:?} n={:?}", ch.kind, ch.n);
        }
    }

    #[test]
    fn chain_counts_and_junctions() {
        let c = build_chain(FragmentKind::C, 1).unwrap();
        assert_eq!(c.graph.vertex_count(), 8 * 27 + 7 * 5 - 14);
        let d = build_chain(FragmentKind::D, 1).unwrap();
        assert_eq!(d.graph.vertex_count(), 8 * 27 + 7 * 9 - 14);
        assert_eq!(c.junctions.len(), 14);
        assert_eq!(c.resolve("A3:u3").as_deref(), Some("J5"));
        assert_eq!(c.resolve("B3:l").as_deref(), Some("J5"));
        assert_eq!(c.resolve("A4:u1").as_deref(), Some("J6"));
        assert_eq!(c.l(0), "A1:u1");
        assert_eq!(c.r(8), "A8:u3");
        assert_eq!(c.l(3), "J5");
        assert_eq!(c.upper_path.first(), c.lower_path.first());
        assert_eq!(c.upper_path.last(), c.lower_path.last());
    }

    #[test]
    fn block_path_recovers_fragment_copies() {
        let c = build_chain(FragmentKind::C, 1).unwrap();
        let h = block_path(&c.graph, &c.l(3), &c.r(3)).unwrap();
        let b3 = induced_subgraph(&c.graph, &c.fragment_spans["B3"]);
        assert_eq!(h, b3);
    }

    #[test]
    fn apex_joins() {
        for k in [FragmentKind::C, FragmentKind::D] {
            let g = build_g(k, 1).unwrap();
            let expect = match k {
                FragmentKind::C => 239,
                FragmentKind::D => 267,
            };
            assert_eq!(g.graph.vertex_count(), expect);
            assert_eq!(g.graph.degree_of("s"), Some(g.upper_path.len()));
            assert_eq!(g.graph.degree_of("t"), Some(g.lower_path.len()));
            let chain = build_chain(k, 1).unwrap();
            assert_eq!(g.chain_graph(), chain.graph);
        }
    }

    #[test]
    fn g_is_three_connected() {
        for k in [FragmentKind::C, FragmentKind::D] {
            assert!(is_k_connected(&build_g(k, 1).unwrap().graph, 3));
        }
    }

    #[test]
    fn formula_needs_edges_present_in_g() {
        let chart = build_g(FragmentKind::C, 1).unwrap();
        let ka = crate::graph::Graph::from_edges(&[("u1", "v1")]).unwrap();
        let edges = formula_gc_edges(&chart, &ka).unwrap();
        let apex: Vec<_> = edges.iter().filter(|e| e.apex).collect();
        assert_eq!(apex.len(), 8);
        let missing: Vec<String> = apex
            .iter()
            .filter(|e| !chart.graph.has_edge(&e.a, &e.b))
            .map(|e| format!("{}-{}", e.a, e.b))
            .collect();
        assert_eq!(missing, vec!["t-B5:w2", "t-B7:w2"]);
        assert!(matches!(
            certificate_cactus_gc_in(&chart, &ka),
            Err(Error::MissingEdge(..))
        ));
    }

    #[test]
    fn random_cacti_are_good() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let q = random_good_cactus(&mut rng, 20, true, None);
            let r = analyze_cactus(&q).unwrap();
            assert!(r.is_good_even_cactus());
            let q = random_good_cactus(&mut rng, 20, false, Some(3));
            let r = analyze_cactus(&q).unwrap();
            assert!(r.is_cactus && r.max_degree <= 3);
            assert_eq!(r.classification, crate::cactus::Classification::Good);
        }
    }
}
