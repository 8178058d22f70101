//! Prisms `G □ K₂`, reflection, Hamilton cycles of prisms over good even
//! cacti, fragment path systems and the stitched cycle of `G(D_n) □ K₂`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::blocks::block_decomposition;
use crate::cactus::analyze_cactus;
use crate::error::{Error, Result};
use crate::families::{build_g, fragment_a, fragment_d, FragmentChart, FragmentKind, APEX_S, APEX_T};
use crate::graph::Graph;
use crate::search::{linear_forest, spanning_even_cactus, Budget, CactusConstraints, SearchOutcome, Status};
use crate::verify::verify_cycle_edges;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Alpha,
    Beta,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Alpha => Side::Beta,
            Side::Beta => Side::Alpha,
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Side::Alpha => "a",
            Side::Beta => "b",
        }
    }
}

/// A vertex `(base, side)` of a prism, written `base@a` or `base@b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrismVertex {
    pub base: String,
    pub side: Side,
}

impl PrismVertex {
    pub fn new(base: impl Into<String>, side: Side) -> Self {
        PrismVertex {
            base: base.into(),
            side,
        }
    }

    pub fn alpha(base: impl Into<String>) -> Self {
        Self::new(base, Side::Alpha)
    }

    pub fn beta(base: impl Into<String>) -> Self {
        Self::new(base, Side::Beta)
    }

    pub fn reflected(&self) -> Self {
        Self::new(self.base.clone(), self.side.flip())
    }

    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for PrismVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.base, self.side.tag())
    }
}

impl FromStr for PrismVertex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.rsplit_once('@') {
            Some((base, "a")) if !base.is_empty() => Ok(PrismVertex::alpha(base)),
            Some((base, "b")) if !base.is_empty() => Ok(PrismVertex::beta(base)),
            _ => Err(Error::NotPrismVertex(s.to_string())),
        }
    }
}

impl Serialize for PrismVertex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PrismVertex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `g □ K₂`.
pub fn prism(g: &Graph) -> Graph {
    let mut p = Graph::new();
    for v in g.vertices() {
        let (a, b) = (PrismVertex::alpha(v).label(), PrismVertex::beta(v).label());
        p.add_vertex(&a);
        p.add_vertex(&b);
    }
    for v in g.vertices() {
        p.add_edge(&PrismVertex::alpha(v).label(), &PrismVertex::beta(v).label())
            .expect("distinct sides");
    }
    for (x, y) in g.edge_labels() {
        for side in [Side::Alpha, Side::Beta] {
            p.add_edge(
                &PrismVertex::new(x.clone(), side).label(),
                &PrismVertex::new(y.clone(), side).label(),
            )
            .expect("distinct ends");
        }
    }
    p
}

/// Swaps the sides of every vertex of a prism subgraph.
pub fn reflect(s: &Graph) -> Result<Graph> {
    for v in s.vertices() {
        v.parse::<PrismVertex>()?;
    }
    Ok(s.relabel(|v| {
        v.parse::<PrismVertex>()
            .expect("checked above")
            .reflected()
            .label()
    }))
}

type PEdge = (PrismVertex, PrismVertex);

fn norm(a: PrismVertex, b: PrismVertex) -> PEdge {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn vertical(v: &str) -> PEdge {
    norm(PrismVertex::alpha(v), PrismVertex::beta(v))
}

/// Cyclic vertex order of a cycle block given by its edges.
fn cycle_order(edges: &[(String, String)]) -> Vec<String> {
    let mut adj: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let start = *adj.keys().next().expect("nonempty block");
    let mut order = vec![start.to_string()];
    let (mut prev, mut cur) = (start, adj[start][0]);
    while cur != start {
        order.push(cur.to_string());
        let next = *adj[cur].iter().find(|&&w| w != prev).expect("cycle");
        prev = cur;
        cur = next;
    }
    order
}

/// A Hamilton cycle of `q □ K₂` for a good even cactus `q`, using the
/// vertical edge at every vertex in `required` (each of block degree 1).
///
/// Every block contributes a cycle through all of its verticals: a 4-cycle
/// for an edge block and an alternating zigzag for an even cycle. Two block
/// cycles meeting at a cut vertex share exactly its vertical, so the
/// symmetric difference of all of them is one Hamilton cycle keeping the
/// verticals at block-degree-1 vertices.
pub fn cactus_prism_hamilton<S: AsRef<str>>(q: &Graph, required: &[S]) -> Result<Vec<PrismVertex>> {
    let rep = analyze_cactus(q)?;
    if !rep.is_good_even_cactus() {
        return Err(Error::NotGoodCactus(format!(
            "cactus {}, even {}, {:?}",
            rep.is_cactus, rep.is_even, rep.classification
        )));
    }
    if q.vertex_count() < 2 {
        return Err(Error::InvalidParameter(
            "the prism over a single vertex has no Hamilton cycle".into(),
        ));
    }
    for v in required {
        let v = v.as_ref();
        match rep.block_degree(v) {
            Some(1) => {}
            Some(b) => {
                return Err(Error::InvalidParameter(format!(
                    "{v} has block degree {b}, not 1"
                )))
            }
            None => return Err(Error::UnknownVertex(v.to_string())),
        }
    }
    let mut edges: BTreeSet<PEdge> = BTreeSet::new();
    let mut toggle = |e: PEdge| {
        if !edges.remove(&e) {
            edges.insert(e);
        }
    };
    for block in block_decomposition(q).blocks {
        if block.is_edge() {
            let (x, y) = &block.edges[0];
            toggle(vertical(x));
            toggle(vertical(y));
            toggle(norm(PrismVertex::alpha(x), PrismVertex::alpha(y)));
            toggle(norm(PrismVertex::beta(x), PrismVertex::beta(y)));
        } else {
            let c = cycle_order(&block.edges);
            let k = c.len();
            for (i, v) in c.iter().enumerate() {
                toggle(vertical(v));
                let side = if i % 2 == 0 { Side::Beta } else { Side::Alpha };
                toggle(norm(
                    PrismVertex::new(v.clone(), side),
                    PrismVertex::new(c[(i + 1) % k].clone(), side),
                ));
            }
        }
    }
    let start = required
        .first()
        .map(|v| v.as_ref().to_string())
        .unwrap_or_else(|| q.label(0).to_string());
    let seq = walk_cycle(&edges, &PrismVertex::alpha(start))?;
    let host = prism(q);
    let named: Vec<[String; 2]> = edges.iter().map(|(a, b)| [a.label(), b.label()]).collect();
    let check = verify_cycle_edges(&host, &named);
    assert!(check.holds(), "prism cycle failed verification: {check:?}");
    for v in required {
        assert!(edges.contains(&vertical(v.as_ref())), "required vertical missing");
    }
    Ok(seq)
}

/// Walks a 2-regular edge set from `start`, first towards the smaller
/// neighbor.
fn walk_cycle(edges: &BTreeSet<PEdge>, start: &PrismVertex) -> Result<Vec<PrismVertex>> {
    let mut adj: BTreeMap<&PrismVertex, Vec<&PrismVertex>> = BTreeMap::new();
    for (a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let not_cycle = || Error::InvalidParameter("edge set is not a single cycle".into());
    let first = adj.get(start).and_then(|ns| ns.iter().min()).ok_or_else(not_cycle)?;
    let mut seq = vec![start.clone()];
    let (mut prev, mut cur) = (start, *first);
    while cur != start {
        seq.push(cur.clone());
        let ns = adj.get(cur).filter(|ns| ns.len() == 2).ok_or_else(not_cycle)?;
        let next = if ns[0] == prev { ns[1] } else { ns[0] };
        prev = cur;
        cur = next;
        if seq.len() > edges.len() {
            return Err(not_cycle());
        }
    }
    if seq.len() != edges.len() {
        return Err(not_cycle());
    }
    Ok(seq)
}

/// Endpoint declarations for the path systems on a `D_n` copy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PathSpec {
    L,
    S,
    #[serde(rename = "S~")]
    STilde,
    R,
    #[serde(rename = "R~")]
    RTilde,
}

impl PathSpec {
    /// Endpoint pairs, with the `w` and `x` indices moved by `shift`.
    pub fn pairs(self, n: usize, shift: (i64, i64)) -> Vec<(PrismVertex, PrismVertex)> {
        let w = format!("w{}", n as i64 + shift.0);
        let x_s = format!("x{}", 2 * n as i64 + 1 + shift.1);
        let x_st = format!("x{}", 2 * n as i64 + shift.1);
        let a = |v: &str| PrismVertex::alpha(v);
        let b = |v: &str| PrismVertex::beta(v);
        match self {
            PathSpec::L => vec![(a("l"), b("l")), (a("r"), b("r"))],
            PathSpec::S => vec![(a("l"), b(w.as_str())), (b("l"), b("r")), (a("r"), a(x_s.as_str()))],
            PathSpec::STilde => vec![(a("l"), b(w.as_str())), (b("l"), b("r")), (a("r"), b(x_st.as_str()))],
            PathSpec::R | PathSpec::RTilde => {
                let base = if self == PathSpec::R {
                    PathSpec::S
                } else {
                    PathSpec::STilde
                };
                base.pairs(n, shift)
                    .into_iter()
                    .map(|(p, q)| (p.reflected(), q.reflected()))
                    .collect()
            }
        }
    }

    fn shiftable(self) -> bool {
        self != PathSpec::L
    }
}

/// Index shifts tried in order when a declared endpoint choice is
/// infeasible.
pub const SHIFTS: [(i64, i64); 9] = [
    (0, 0),
    (-1, 0),
    (1, 0),
    (0, -1),
    (-1, -1),
    (1, -1),
    (0, 1),
    (-1, 1),
    (1, 1),
];

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PathSystem {
    pub pairs: Vec<(PrismVertex, PrismVertex)>,
    pub edges: Vec<(PrismVertex, PrismVertex)>,
}

/// Spanning linear forest of `chart □ K₂` with the given end pairs.
pub fn solve_path_system(
    chart: &FragmentChart,
    pairs: &[(PrismVertex, PrismVertex)],
    budget: Budget,
) -> Result<(SearchOutcome, Option<PathSystem>)> {
    let p = prism(&chart.graph);
    let named: Vec<(String, String)> = pairs.iter().map(|(a, b)| (a.label(), b.label())).collect();
    let out = linear_forest(&p, &named, budget)?;
    let system = match &out.witness {
        Some(w) => Some(PathSystem {
            pairs: pairs.to_vec(),
            edges: w
                .edges
                .iter()
                .map(|[a, b]| Ok((a.parse()?, b.parse()?)))
                .collect::<Result<_>>()?,
        }),
        None => None,
    };
    Ok((out, system))
}

/// Which declaration and shift was used on a `B` copy.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpecUse {
    pub copy: String,
    pub spec: PathSpec,
    pub shift: (i64, i64),
    pub pairs: Vec<(PrismVertex, PrismVertex)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StitchReport {
    pub n: usize,
    pub cycle: Vec<PrismVertex>,
    pub k_a: Graph,
    pub specs: Vec<SpecUse>,
    pub connectors: Vec<(PrismVertex, PrismVertex)>,
}

fn shift_valid(n: usize, spec: PathSpec, shift: (i64, i64)) -> bool {
    let w = n as i64 + shift.0;
    let x = match spec {
        PathSpec::S | PathSpec::R => 2 * n as i64 + 1 + shift.1,
        _ => 2 * n as i64 + shift.1,
    };
    (1..=n as i64 + 1).contains(&w) && (n as i64 + 1..=2 * n as i64 + 1).contains(&x)
}

/// Solves `spec` on `D_n`, retrying shifted indices when the declared one is
/// infeasible.
fn solve_with_shift(
    d: &FragmentChart,
    n: usize,
    spec: PathSpec,
    budget: Budget,
) -> Result<((i64, i64), PathSystem)> {
    let shifts: &[(i64, i64)] = if spec.shiftable() { &SHIFTS } else { &SHIFTS[..1] };
    let mut last = Status::None;
    for &sh in shifts {
        if !shift_valid(n, spec, sh) {
            continue;
        }
        let (out, sys) = solve_path_system(d, &spec.pairs(n, sh), budget)?;
        if let Some(sys) = sys {
            return Ok((sh, sys));
        }
        last = out.status;
    }
    Err(Error::Fragment {
        fragment: format!("D_{n} {spec:?}"),
        reason: format!("no feasible endpoint declaration (last status {last:?})"),
    })
}

/// Hamilton cycle of `G(D_n) □ K₂` assembled from the fragment pieces.
pub fn stitch_hamilton_gd(n: usize, budget: Budget) -> Result<StitchReport> {
    let g = build_g(FragmentKind::D, n)?;
    let d = fragment_d(n)?;
    let a = fragment_a();
    let kc = CactusConstraints::good().with_block_degree_1(&["u1", "u3"]);
    let ko = spanning_even_cactus(&a.graph, &kc, budget)?;
    let k_a = match &ko.witness {
        Some(w) => w.to_graph(&a.graph)?,
        None => {
            return Err(Error::Fragment {
                fragment: "A".into(),
                reason: format!("no K_A found ({:?})", ko.status),
            })
        }
    };
    let h_a = cactus_prism_hamilton(&k_a, &["u1", "u3"])?;
    let h_a_edges: Vec<PEdge> = (0..h_a.len())
        .map(|i| norm(h_a[i].clone(), h_a[(i + 1) % h_a.len()].clone()))
        .collect();

    let mut edges: BTreeSet<PEdge> = BTreeSet::new();
    let top = g.a_count;
    let lift = |copy: &str, v: &PrismVertex| -> Result<PrismVertex> {
        Ok(PrismVertex::new(g.copy_label(copy, &v.base)?, v.side))
    };
    for i in 1..=top {
        let copy = format!("A{i}");
        for (x, y) in &h_a_edges {
            let junction_vertical = x.base == y.base
                && ((x.base == "u1" && i > 1) || (x.base == "u3" && i < top));
            if !junction_vertical {
                edges.insert(norm(lift(&copy, x)?, lift(&copy, y)?));
            }
        }
    }

    let plan = [
        (1, PathSpec::S),
        (2, PathSpec::L),
        (3, PathSpec::STilde),
        (4, PathSpec::L),
        (5, PathSpec::R),
        (6, PathSpec::L),
        (7, PathSpec::RTilde),
    ];
    let mut solved: BTreeMap<PathSpec, ((i64, i64), PathSystem)> = BTreeMap::new();
    let mut specs = Vec::new();
    for &(i, spec) in plan.iter().filter(|(i, _)| *i < top) {
        if let std::collections::btree_map::Entry::Vacant(e) = solved.entry(spec) {
            let r = solve_with_shift(&d, n, spec, budget).map_err(|e| match e {
                Error::Fragment { reason, .. } => Error::Fragment {
                    fragment: format!("B{i}"),
                    reason,
                },
                other => other,
            })?;
            e.insert(r);
        }
        let (shift, sys) = &solved[&spec];
        let copy = format!("B{i}");
        for (x, y) in &sys.edges {
            edges.insert(norm(lift(&copy, x)?, lift(&copy, y)?));
        }
        specs.push(SpecUse {
            copy,
            spec,
            shift: *shift,
            pairs: sys.pairs.clone(),
        });
    }

    // apex connectors at the free ends (w, x) of each S-type system
    let (s, t) = (APEX_S, APEX_T);
    let mut connectors = Vec::new();
    for u in &specs {
        if u.spec == PathSpec::L {
            continue;
        }
        let (w_end, x_end) = (&u.pairs[0].1, &u.pairs[2].1);
        let w = lift(&u.copy, w_end)?;
        let x = lift(&u.copy, x_end)?;
        connectors.push(norm(PrismVertex::new(s, w.side), w));
        connectors.push(norm(PrismVertex::new(t, x.side), x));
    }
    edges.extend(connectors.iter().cloned());

    let host = prism(&g.graph);
    let named: Vec<[String; 2]> = edges.iter().map(|(a, b)| [a.label(), b.label()]).collect();
    let check = verify_cycle_edges(&host, &named);
    if !check.holds() {
        return Err(Error::Fragment {
            fragment: "G(D)".into(),
            reason: format!("stitched edges are not a Hamilton cycle: {check:?}"),
        });
    }
    let cycle = walk_cycle(&edges, &PrismVertex::alpha(g.endvertices.0.clone()))?;
    Ok(StitchReport {
        n,
        cycle,
        k_a,
        specs,
        connectors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::hamilton_cycle;

    fn cycle(n: usize) -> Graph {
        let mut g = Graph::new();
        for i in 0..n {
            g.add_edge(&format!("c{i}"), &format!("c{}", (i + 1) % n)).unwrap();
        }
        g
    }

    #[test]
    fn prism_counts() {
        let k2 = Graph::from_edges(&[("a", "b")]).unwrap();
        let p = prism(&k2);
        assert_eq!((p.vertex_count(), p.edge_count()), (4, 4));
        assert!(p.vertices().all(|v| p.degree_of(v) == Some(2)));
        let p = prism(&cycle(5));
        assert_eq!((p.vertex_count(), p.edge_count()), (10, 15));
        assert_eq!(hamilton_cycle(&p, Budget::unlimited()).status, Status::Found);
    }

    #[test]
    fn reflection() {
        let p = prism(&cycle(4));
        let path = Graph::from_edges(&[("l@a", "x@a"), ("x@a", "w@b")]).unwrap();
        let r = reflect(&path).unwrap();
        assert!(r.has_edge("l@b", "x@b") && r.has_edge("x@b", "w@a"));
        assert_eq!(reflect(&r).unwrap(), path);
        assert_eq!(reflect(&p).unwrap(), p);
        let bad = Graph::from_edges(&[("l", "x@a")]).unwrap();
        assert!(matches!(reflect(&bad), Err(Error::NotPrismVertex(_))));
        assert!("x@c".parse::<PrismVertex>().is_err());
        assert_eq!("a@b@a".parse::<PrismVertex>().unwrap().base, "a@b");
    }

    #[test]
    fn cactus_cycles() {
        let e = Graph::from_edges(&[("a", "b")]).unwrap();
        let h = cactus_prism_hamilton(&e, &["a", "b"]).unwrap();
        assert_eq!(h.len(), 4);
        let h = cactus_prism_hamilton(&cycle(4), &[] as &[&str]).unwrap();
        assert_eq!(h.len(), 8);
        assert!(cactus_prism_hamilton(&cycle(5), &[] as &[&str]).is_err());
        let star = Graph::from_edges(&[("c", "a"), ("c", "b")]).unwrap();
        assert!(cactus_prism_hamilton(&star, &["c"]).is_err());
        assert_eq!(cactus_prism_hamilton(&star, &["a", "b"]).unwrap().len(), 6);
    }

    #[test]
    fn d1_path_systems() {
        let d = fragment_d(1).unwrap();
        for spec in [PathSpec::L, PathSpec::S, PathSpec::STilde, PathSpec::R, PathSpec::RTilde] {
            let (o, sys) = solve_path_system(&d, &spec.pairs(1, (0, 0)), Budget::unlimited()).unwrap();
            assert_eq!(o.status, Status::Found, "{spec:?}");
            assert!(sys.is_some());
        }
    }

    #[test]
    fn reflected_spec_ends() {
        let r = PathSpec::R.pairs(1, (0, 0));
        assert_eq!(r[0], (PrismVertex::beta("l"), PrismVertex::alpha("w1")));
        assert_eq!(r[2].1, PrismVertex::beta("x3"));
    }

    #[test]
    fn stitched_cycle_n1() {
        let rep = stitch_hamilton_gd(1, Budget::unlimited()).unwrap();
        assert_eq!(rep.cycle.len(), 2 * 267);
        let g = build_g(FragmentKind::D, 1).unwrap();
        let on_cycle: BTreeSet<(String, String)> = (0..rep.cycle.len())
            .map(|i| {
                let (a, b) = (&rep.cycle[i], &rep.cycle[(i + 1) % rep.cycle.len()]);
                let (a, b) = (a.label(), b.label());
                if a < b { (a, b) } else { (b, a) }
            })
            .collect();
        for j in &g.junctions {
            let v = (PrismVertex::alpha(&j.label).label(), PrismVertex::beta(&j.label).label());
            assert!(!on_cycle.contains(&v), "junction vertical {} used", j.label);
        }
    }
}
