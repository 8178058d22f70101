//! Spanning even cacti under block-degree, degree and edge-path constraints.
//!
//! The included edges always form one growing cactus. An edge between two of
//! its vertices may only be added when the two are joined by a path of
//! bridges of odd length, so every closed cycle is even and edge-disjoint
//! from the others. Block degrees are bounded from below using the bridges
//! of the graph of still-available edges: such a bridge can never lie on a
//! cycle, and two included bridges at `v` merge into one block at best.

use serde::{Deserialize, Serialize};

use crate::cactus::{analyze_cactus, is_p_good, Classification, EdgePath};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::verify::verify_spanning_cactus;

use super::{Budget, Flow, Meter, SearchOutcome, Status, Witness};

/// Largest edge count enumerated without an explicit override.
pub const ENUMERATION_EDGE_GUARD: usize = 40;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Goodness {
    /// Every block degree at most 2.
    #[default]
    #[serde(rename = "good")]
    Good,
    /// `P`-good for the edge path `P` between the required endpoints.
    #[serde(rename = "P_good")]
    PGood,
    /// Good, 1-good or 2-good.
    #[serde(rename = "P1P2_good")]
    P1P2Good,
    /// Any even cactus.
    #[serde(rename = "any")]
    Unrestricted,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CactusConstraints {
    pub goodness: Goodness,
    #[serde(default)]
    pub max_degree: Option<usize>,
    #[serde(default)]
    pub required_block_degree_1: Vec<String>,
    #[serde(default)]
    pub required_edge_path_endpoints: Option<(String, String)>,
    /// Edges every witness must contain.
    #[serde(default)]
    pub required_edges: Vec<(String, String)>,
}

impl CactusConstraints {
    pub fn good() -> Self {
        CactusConstraints::default()
    }

    pub fn any() -> Self {
        CactusConstraints {
            goodness: Goodness::Unrestricted,
            ..Default::default()
        }
    }

    pub fn p_good(u: &str, v: &str) -> Self {
        CactusConstraints {
            goodness: Goodness::PGood,
            required_edge_path_endpoints: Some((u.to_string(), v.to_string())),
            ..Default::default()
        }
    }

    pub fn two_good() -> Self {
        CactusConstraints {
            goodness: Goodness::P1P2Good,
            ..Default::default()
        }
    }

    pub fn with_max_degree(mut self, d: usize) -> Self {
        self.max_degree = Some(d);
        self
    }

    pub fn with_block_degree_1<S: AsRef<str>>(mut self, vs: &[S]) -> Self {
        self.required_block_degree_1
            .extend(vs.iter().map(|v| v.as_ref().to_string()));
        self
    }

    pub fn with_required_edges<A: AsRef<str>, B: AsRef<str>>(mut self, es: &[(A, B)]) -> Self {
        self.required_edges.extend(
            es.iter()
                .map(|(a, b)| (a.as_ref().to_string(), b.as_ref().to_string())),
        );
        self
    }
}

/// Constraints resolved to vertex and edge indices.
struct Resolved {
    cap: Vec<usize>,
    ends: Option<(usize, usize)>,
    max_degree: usize,
    required: Vec<bool>,
}

fn resolve(g: &Graph, c: &CactusConstraints, edges: &[(usize, usize)]) -> Result<Resolved> {
    let n = g.vertex_count();
    let ends = match (&c.goodness, &c.required_edge_path_endpoints) {
        (Goodness::PGood, Some((u, v))) => {
            let (a, b) = (g.require(u)?, g.require(v)?);
            if a == b {
                return Err(Error::InconsistentConstraints(
                    "edge path endpoints coincide".into(),
                ));
            }
            Some((a, b))
        }
        (Goodness::PGood, None) => {
            return Err(Error::InconsistentConstraints(
                "P_good needs edge path endpoints".into(),
            ))
        }
        (_, Some(_)) => {
            return Err(Error::InconsistentConstraints(
                "edge path endpoints need goodness P_good".into(),
            ))
        }
        (_, None) => None,
    };
    let base = match c.goodness {
        Goodness::Good => 2,
        Goodness::PGood => 3,
        Goodness::P1P2Good => 4,
        Goodness::Unrestricted => usize::MAX,
    };
    let mut cap = vec![base; n];
    if let Some((a, b)) = ends {
        cap[a] = 2;
        cap[b] = 2;
    }
    for v in &c.required_block_degree_1 {
        cap[g.require(v)?] = 1;
    }
    let mut required = vec![false; edges.len()];
    for (a, b) in &c.required_edges {
        let (x, y) = (g.require(a)?, g.require(b)?);
        let k = edges
            .iter()
            .position(|&(p, q)| (p, q) == (x, y) || (p, q) == (y, x))
            .ok_or_else(|| Error::MissingEdge(a.clone(), b.clone()))?;
        required[k] = true;
    }
    Ok(Resolved {
        cap,
        ends,
        max_degree: c.max_degree.unwrap_or(usize::MAX),
        required,
    })
}

/// Checks a candidate witness `q` against `c` from scratch.
pub fn cactus_constraints_hold(host: &Graph, q: &Graph, c: &CactusConstraints) -> Result<bool> {
    if q.vertex_count() != host.vertex_count() || !q.is_subgraph_of(host) {
        return Ok(false);
    }
    let rep = match analyze_cactus(q) {
        Ok(r) => r,
        Err(Error::Disconnected) => return Ok(false),
        Err(e) => return Err(e),
    };
    if !(rep.is_cactus && rep.is_even) {
        return Ok(false);
    }
    let shape_ok = match c.goodness {
        Goodness::Good => rep.classification == Classification::Good,
        Goodness::P1P2Good => rep.classification != Classification::None,
        Goodness::Unrestricted => true,
        Goodness::PGood => {
            let Some((u, v)) = &c.required_edge_path_endpoints else {
                return Err(Error::InconsistentConstraints(
                    "P_good needs edge path endpoints".into(),
                ));
            };
            match path_between(q, u, v) {
                Some(p) => match is_p_good(q, &p) {
                    Ok(ok) => ok,
                    Err(Error::NotEdgePath(_)) => false,
                    Err(e) => return Err(e),
                },
                None => false,
            }
        }
    };
    Ok(shape_ok
        && c
            .required_block_degree_1
            .iter()
            .all(|v| rep.block_degree(v) == Some(1))
        && c.max_degree.is_none_or(|d| q.max_degree() <= d)
        && c.required_edges.iter().all(|(a, b)| q.has_edge(a, b)))
}

fn path_between(q: &Graph, u: &str, v: &str) -> Option<EdgePath> {
    let (s, t) = (q.index_of(u)?, q.index_of(v)?);
    let mut parent = vec![usize::MAX; q.vertex_count()];
    parent[s] = s;
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        for y in q.neighbors(x) {
            if parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    if parent[t] == usize::MAX {
        return None;
    }
    let mut seq = vec![t];
    while *seq.last().expect("nonempty") != s {
        let x = *seq.last().expect("nonempty");
        seq.push(parent[x]);
    }
    seq.reverse();
    let labels: Vec<&str> = seq.iter().map(|&i| q.label(i)).collect();
    Some(EdgePath::new(&labels))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum St {
    Open,
    In,
    Out,
}

enum Op {
    Bridge { e: usize, joined: Option<usize> },
    Close { e: usize, path: Vec<usize>, verts: Vec<usize> },
    Exclude(usize),
}

struct CactusSearch<'m> {
    n: usize,
    edges: Vec<(usize, usize)>,
    inc: Vec<Vec<(usize, usize)>>,
    st: Vec<St>,
    rs: Resolved,
    in_tree: Vec<bool>,
    tree_size: usize,
    deg: Vec<usize>,
    bridges_at: Vec<usize>,
    cycles_at: Vec<usize>,
    cyc: Vec<bool>,
    trail: Vec<Op>,
    meter: &'m Meter,
    // bridge forest of the included cactus
    fcomp: Vec<usize>,
    fdepth: Vec<usize>,
    fparent: Vec<(usize, usize)>,
    // bridges of the available graph
    abridge: Vec<bool>,
    disc: Vec<usize>,
    low: Vec<usize>,
}

const NONE: usize = usize::MAX;

impl<'m> CactusSearch<'m> {
    fn new(g: &Graph, edges: Vec<(usize, usize)>, rs: Resolved, root: usize, meter: &'m Meter) -> Self {
        let n = g.vertex_count();
        let m = edges.len();
        let mut inc = vec![Vec::new(); n];
        for (e, &(a, b)) in edges.iter().enumerate() {
            inc[a].push((e, b));
            inc[b].push((e, a));
        }
        let mut s = CactusSearch {
            n,
            inc,
            st: vec![St::Open; m],
            rs,
            in_tree: vec![false; n],
            tree_size: 1,
            deg: vec![0; n],
            bridges_at: vec![0; n],
            cycles_at: vec![0; n],
            cyc: vec![false; m],
            trail: Vec::new(),
            meter,
            fcomp: vec![NONE; n],
            fdepth: vec![0; n],
            fparent: vec![(NONE, NONE); n],
            abridge: vec![false; m],
            disc: vec![NONE; n],
            low: vec![0; n],
            edges,
        };
        s.in_tree[root] = true;
        s
    }

    fn include_bridge(&mut self, e: usize) {
        let (a, b) = self.edges[e];
        let joined = if !self.in_tree[a] {
            Some(a)
        } else if !self.in_tree[b] {
            Some(b)
        } else {
            None
        };
        if let Some(x) = joined {
            self.in_tree[x] = true;
            self.tree_size += 1;
        }
        self.st[e] = St::In;
        for v in [a, b] {
            self.deg[v] += 1;
            self.bridges_at[v] += 1;
        }
        self.trail.push(Op::Bridge { e, joined });
    }

    /// Closes the even cycle formed by `e` and the bridge path between its
    /// ends. Needs a fresh bridge forest.
    fn close(&mut self, e: usize) {
        let (mut u, mut v) = self.edges[e];
        let mut path = Vec::new();
        let mut verts = vec![u, v];
        while u != v {
            let climb_u = self.fdepth[u] >= self.fdepth[v];
            let x = if climb_u { &mut u } else { &mut v };
            let (p, pe) = self.fparent[*x];
            path.push(pe);
            *x = p;
            verts.push(p);
        }
        verts.sort_unstable();
        verts.dedup();
        for &pe in &path {
            self.cyc[pe] = true;
            let (a, b) = self.edges[pe];
            self.bridges_at[a] -= 1;
            self.bridges_at[b] -= 1;
        }
        for &x in &verts {
            self.cycles_at[x] += 1;
        }
        let (a, b) = self.edges[e];
        self.deg[a] += 1;
        self.deg[b] += 1;
        self.st[e] = St::In;
        self.cyc[e] = true;
        self.trail.push(Op::Close { e, path, verts });
    }

    fn exclude(&mut self, e: usize) {
        self.st[e] = St::Out;
        self.trail.push(Op::Exclude(e));
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().expect("trail above mark") {
                Op::Bridge { e, joined } => {
                    let (a, b) = self.edges[e];
                    for v in [a, b] {
                        self.deg[v] -= 1;
                        self.bridges_at[v] -= 1;
                    }
                    self.st[e] = St::Open;
                    if let Some(x) = joined {
                        self.in_tree[x] = false;
                        self.tree_size -= 1;
                    }
                }
                Op::Close { e, path, verts } => {
                    let (a, b) = self.edges[e];
                    self.deg[a] -= 1;
                    self.deg[b] -= 1;
                    self.st[e] = St::Open;
                    self.cyc[e] = false;
                    for &x in &verts {
                        self.cycles_at[x] -= 1;
                    }
                    for &pe in &path {
                        self.cyc[pe] = false;
                        let (a, b) = self.edges[pe];
                        self.bridges_at[a] += 1;
                        self.bridges_at[b] += 1;
                    }
                }
                Op::Exclude(e) => self.st[e] = St::Open,
            }
        }
    }

    fn compute_forest(&mut self) {
        self.fcomp.fill(NONE);
        let mut stack = Vec::new();
        for r in 0..self.n {
            if !self.in_tree[r] || self.fcomp[r] != NONE {
                continue;
            }
            self.fcomp[r] = r;
            self.fdepth[r] = 0;
            self.fparent[r] = (NONE, NONE);
            stack.push(r);
            while let Some(x) = stack.pop() {
                for &(e, y) in &self.inc[x] {
                    if self.st[e] == St::In && !self.cyc[e] && self.fcomp[y] == NONE {
                        self.fcomp[y] = r;
                        self.fdepth[y] = self.fdepth[x] + 1;
                        self.fparent[y] = (x, e);
                        stack.push(y);
                    }
                }
            }
        }
    }

    fn closable(&self, e: usize) -> bool {
        let (a, b) = self.edges[e];
        self.fcomp[a] == self.fcomp[b] && (self.fdepth[a] + self.fdepth[b]) % 2 == 1
    }

    fn internal(&self, e: usize) -> bool {
        let (a, b) = self.edges[e];
        self.in_tree[a] && self.in_tree[b]
    }

    /// Bridges of the graph of non-excluded edges. False if that graph is
    /// disconnected.
    fn available_bridges(&mut self) -> bool {
        self.disc.fill(NONE);
        self.abridge.fill(false);
        let mut time = 0;
        // (vertex, parent edge, next incidence index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(0, NONE, 0)];
        self.disc[0] = 0;
        self.low[0] = 0;
        time += 1;
        while let Some(top) = stack.last_mut() {
            let (x, pe, i) = *top;
            if i < self.inc[x].len() {
                top.2 += 1;
                let (e, y) = self.inc[x][i];
                if e == pe || self.st[e] == St::Out {
                    continue;
                }
                if self.disc[y] == NONE {
                    self.disc[y] = time;
                    self.low[y] = time;
                    time += 1;
                    stack.push((y, e, 0));
                } else {
                    self.low[x] = self.low[x].min(self.disc[y]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    self.low[p] = self.low[p].min(self.low[x]);
                    if self.low[x] > self.disc[p] {
                        self.abridge[pe] = true;
                    }
                }
            }
        }
        time == self.n
    }

    /// Interior of the edge path between the required endpoints, once both
    /// are in the cactus. `Err` when they are joined through a cycle.
    fn path_interior(&self) -> Result<Option<Vec<usize>>, ()> {
        let Some((p, q)) = self.rs.ends else {
            return Ok(None);
        };
        if !(self.in_tree[p] && self.in_tree[q]) {
            return Ok(None);
        }
        if self.fcomp[p] != self.fcomp[q] {
            return Err(());
        }
        let (mut u, mut v) = (p, q);
        let mut inner = Vec::new();
        while u != v {
            let x = if self.fdepth[u] >= self.fdepth[v] { &mut u } else { &mut v };
            *x = self.fparent[*x].0;
            inner.push(*x);
        }
        inner.retain(|&x| x != p && x != q);
        inner.sort_unstable();
        inner.dedup();
        Ok(Some(inner))
    }

    fn feasible(&mut self) -> bool {
        if !self.available_bridges() {
            return false;
        }
        let interior = match self.path_interior() {
            Ok(i) => i,
            Err(()) => return false,
        };
        for v in 0..self.n {
            let mut cap = self.rs.cap[v];
            if let Some(inner) = &interior {
                if cap > 1 {
                    cap = if inner.binary_search(&v).is_ok() { 3 } else { 2 };
                }
            }
            let mut perm = 0;
            let mut perm_in = 0;
            let mut forced_new = 0;
            for &(e, _) in &self.inc[v] {
                if self.abridge[e] {
                    match self.st[e] {
                        St::In => {
                            perm += 1;
                            perm_in += 1;
                        }
                        St::Open => {
                            perm += 1;
                            forced_new += 1;
                        }
                        St::Out => {}
                    }
                }
            }
            let loose = self.bridges_at[v] - perm_in;
            let lb = self.cycles_at[v] + perm + loose.div_ceil(2);
            if lb > cap || self.deg[v] + forced_new > self.rs.max_degree {
                return false;
            }
        }
        true
    }

    fn run(&mut self, sink: &mut dyn FnMut(&Self) -> bool) -> Flow<()> {
        if !self.meter.tick() {
            return Flow::Timeout;
        }
        let mark = self.trail.len();
        let r = self.step(sink);
        self.undo_to(mark);
        r
    }

    fn branch(&mut self, e: usize, sink: &mut dyn FnMut(&Self) -> bool) -> Flow<()> {
        let mark = self.trail.len();
        if self.internal(e) {
            self.close(e);
        } else {
            self.include_bridge(e);
        }
        let ok = self.deg[self.edges[e].0] <= self.rs.max_degree
            && self.deg[self.edges[e].1] <= self.rs.max_degree;
        let r = if ok { self.run(sink) } else { Flow::Exhausted };
        self.undo_to(mark);
        if !matches!(r, Flow::Exhausted) || self.rs.required[e] {
            return r;
        }
        self.exclude(e);
        let r = self.run(sink);
        self.undo_to(mark);
        r
    }

    fn step(&mut self, sink: &mut dyn FnMut(&Self) -> bool) -> Flow<()> {
        self.compute_forest();
        let m = self.edges.len();
        for e in 0..m {
            if self.st[e] == St::Open && self.internal(e) && !self.closable(e) {
                if self.rs.required[e] {
                    return Flow::Exhausted;
                }
                self.exclude(e);
            }
        }
        if !self.feasible() {
            return Flow::Exhausted;
        }
        if let Some(e) = (0..m).find(|&e| self.st[e] == St::Open && self.internal(e)) {
            return self.branch(e, sink);
        }
        if self.tree_size == self.n {
            return if sink(self) { Flow::Found(()) } else { Flow::Exhausted };
        }
        // frontier: required edges first, then the outside vertex with the
        // fewest open edges into the cactus
        let mut best: Option<(bool, usize, usize)> = None;
        let mut count = vec![0usize; self.n];
        let mut first = vec![NONE; self.n];
        for e in 0..m {
            if self.st[e] != St::Open {
                continue;
            }
            let (a, b) = self.edges[e];
            let x = match (self.in_tree[a], self.in_tree[b]) {
                (true, false) => b,
                (false, true) => a,
                _ => continue,
            };
            if self.rs.required[e] {
                return self.branch(e, sink);
            }
            count[x] += 1;
            if first[x] == NONE {
                first[x] = e;
            }
        }
        for x in 0..self.n {
            if first[x] != NONE && best.is_none_or(|(_, c, _)| count[x] < c) {
                best = Some((true, count[x], first[x]));
            }
        }
        match best {
            Some((_, _, e)) => self.branch(e, sink),
            None => Flow::Exhausted,
        }
    }

    fn included(&self) -> Vec<(usize, usize)> {
        (0..self.edges.len())
            .filter(|&e| self.st[e] == St::In)
            .map(|e| self.edges[e])
            .collect()
    }
}

/// Edges in branching order: by smaller endpoint degree, then labels.
fn ordered_edges(g: &Graph) -> Vec<(usize, usize)> {
    let mut es: Vec<(usize, usize)> = g.edges().collect();
    es.sort_by(|&(a, b), &(c, d)| {
        let ka = g.degree(a).min(g.degree(b));
        let kc = g.degree(c).min(g.degree(d));
        ka.cmp(&kc)
            .then_with(|| (g.label(a), g.label(b)).cmp(&(g.label(c), g.label(d))))
    });
    es
}

fn root_of(g: &Graph, c: &CactusConstraints, rs: &Resolved) -> usize {
    if let Some((p, _)) = rs.ends {
        return p;
    }
    if let Some(v) = c.required_block_degree_1.first() {
        return g.index_of(v).expect("resolved vertex");
    }
    0
}

fn check_witness(g: &Graph, c: &CactusConstraints, edges: &[(usize, usize)]) -> Result<Option<Graph>> {
    let w = Witness::from_edge_indices(g, edges.iter().copied());
    let q = w.to_graph(g)?;
    if !cactus_constraints_hold(g, &q, c)? {
        return Ok(None);
    }
    let audit = verify_spanning_cactus(g, &w.edges);
    assert!(
        audit.connected && audit.is_cactus && audit.is_even,
        "cactus witness failed the independent audit"
    );
    Ok(Some(q))
}

/// Finds a spanning even cactus of `g` satisfying `c`.
pub fn spanning_even_cactus(g: &Graph, c: &CactusConstraints, budget: Budget) -> Result<SearchOutcome> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let edges = ordered_edges(g);
    let rs = resolve(g, c, &edges)?;
    let meter = Meter::new(budget);
    if g.vertex_count() == 1 {
        meter.tick();
        let r = match check_witness(g, c, &[])? {
            Some(_) => Flow::Found(Witness::from_edge_indices(g, [])),
            None => Flow::Exhausted,
        };
        return Ok(meter.outcome(r));
    }
    let root = root_of(g, c, &rs);
    let mut s = CactusSearch::new(g, edges, rs, root, &meter);
    let mut found: Option<Vec<(usize, usize)>> = None;
    let mut error: Option<Error> = None;
    let mut sink = |st: &CactusSearch| -> bool {
        let inc = st.included();
        match check_witness(g, c, &inc) {
            Ok(Some(_)) => {
                found = Some(inc);
                true
            }
            Ok(None) => false,
            Err(e) => {
                error = Some(e);
                true
            }
        }
    };
    let flow = s.run(&mut sink);
    if let Some(e) = error {
        return Err(e);
    }
    let r = match (flow, found) {
        (Flow::Found(()), Some(inc)) => Flow::Found(Witness::from_edge_indices(g, inc)),
        (Flow::Timeout, _) => Flow::Timeout,
        _ => Flow::Exhausted,
    };
    Ok(meter.outcome(r))
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumerationOutcome {
    pub count: u64,
    /// `NONE` when the enumeration ran to completion.
    pub status: Status,
    pub nodes_explored: u64,
    #[serde(skip)]
    pub elapsed: std::time::Duration,
    pub exhaustive: bool,
}

/// Calls `visit` on every spanning even cactus of `g` satisfying `c`.
/// Graphs with more than [`ENUMERATION_EDGE_GUARD`] edges need
/// `allow_large`.
pub fn enumerate_spanning_even_cacti(
    g: &Graph,
    c: &CactusConstraints,
    budget: Budget,
    allow_large: bool,
    mut visit: impl FnMut(&Graph),
) -> Result<EnumerationOutcome> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if g.edge_count() > ENUMERATION_EDGE_GUARD && !allow_large {
        return Err(Error::GuardExceeded {
            edges: g.edge_count(),
            limit: ENUMERATION_EDGE_GUARD,
        });
    }
    let edges = ordered_edges(g);
    let rs = resolve(g, c, &edges)?;
    let meter = Meter::new(budget);
    let mut count = 0u64;
    let mut error: Option<Error> = None;
    let flow = if g.vertex_count() == 1 {
        meter.tick();
        if let Some(q) = check_witness(g, c, &[])? {
            count = 1;
            visit(&q);
        }
        Flow::Exhausted
    } else {
        let root = root_of(g, c, &rs);
        let mut s = CactusSearch::new(g, edges, rs, root, &meter);
        let mut sink = |st: &CactusSearch| -> bool {
            match check_witness(g, c, &st.included()) {
                Ok(Some(q)) => {
                    count += 1;
                    visit(&q);
                    false
                }
                Ok(None) => false,
                Err(e) => {
                    error = Some(e);
                    true
                }
            }
        };
        s.run(&mut sink)
    };
    if let Some(e) = error {
        return Err(e);
    }
    let status = match flow {
        Flow::Timeout => Status::Timeout,
        _ => Status::None,
    };
    Ok(EnumerationOutcome {
        count,
        status,
        nodes_explored: meter.nodes(),
        elapsed: meter.elapsed(),
        exhaustive: status == Status::None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{fragment_a, fragment_c, fragment_d, gadget_i};

    fn cycle(n: usize) -> Graph {
        let mut g = Graph::new();
        for i in 0..n {
            g.add_edge(&format!("c{i}"), &format!("c{}", (i + 1) % n)).unwrap();
        }
        g
    }

    fn count(g: &Graph, c: &CactusConstraints) -> u64 {
        enumerate_spanning_even_cacti(g, c, Budget::unlimited(), false, |_| {})
            .unwrap()
            .count
    }

    #[test]
    fn c4_and_c5_counts() {
        assert_eq!(count(&cycle(4), &CactusConstraints::good()), 5);
        assert_eq!(count(&cycle(5), &CactusConstraints::any()), 5);
        let o = spanning_even_cactus(&cycle(4), &CactusConstraints::good(), Budget::unlimited()).unwrap();
        assert_eq!(o.status, Status::Found);
    }

    #[test]
    fn k4_counts() {
        // 16 spanning trees and the three Hamilton cycles
        let mut k4 = Graph::new();
        for (a, b) in [("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")] {
            k4.add_edge(a, b).unwrap();
        }
        assert_eq!(count(&k4, &CactusConstraints::any()), 19);
    }

    #[test]
    fn lemma_five_instances() {
        for n in [1, 2] {
            for b in [fragment_c(n).unwrap(), fragment_d(n).unwrap()] {
                let c = CactusConstraints::good().with_block_degree_1(&["l", "r"]);
                let o = spanning_even_cactus(&b.graph, &c, Budget::unlimited()).unwrap();
                assert_eq!(o.status, Status::None, "n={n}");
                assert!(o.exhaustive);
            }
        }
    }

    #[test]
    fn gadget_i_edge_path_forces_block_degree_two() {
        let i = gadget_i();
        let c = CactusConstraints::p_good("u1", "u2");
        let mut seen = 0;
        let out = enumerate_spanning_even_cacti(&i.graph, &c, Budget::unlimited(), false, |q| {
            let r = analyze_cactus(q).unwrap();
            assert_eq!(r.block_degree("u1"), Some(2));
            assert_eq!(r.block_degree("u2"), Some(2));
            seen += 1;
        })
        .unwrap();
        assert!(out.exhaustive);
        assert!(seen >= 1);
    }

    #[test]
    fn fragment_a_has_no_p_good_cactus() {
        let a = fragment_a();
        let c = CactusConstraints::p_good("u1", "u3");
        let o = spanning_even_cactus(&a.graph, &c, Budget::unlimited()).unwrap();
        assert_eq!(o.status, Status::None);
        assert!(o.exhaustive);
    }

    #[test]
    fn k_a_exists() {
        let a = fragment_a();
        let c = CactusConstraints::good().with_block_degree_1(&["u1", "u3"]);
        let o = spanning_even_cactus(&a.graph, &c, Budget::unlimited()).unwrap();
        assert_eq!(o.status, Status::Found);
    }

    #[test]
    fn constraint_typing() {
        let g = cycle(4);
        let mut c = CactusConstraints::good();
        c.required_edge_path_endpoints = Some(("c0".into(), "c1".into()));
        assert!(matches!(
            spanning_even_cactus(&g, &c, Budget::unlimited()),
            Err(Error::InconsistentConstraints(_))
        ));
        c.goodness = Goodness::PGood;
        c.required_edge_path_endpoints = None;
        assert!(spanning_even_cactus(&g, &c, Budget::unlimited()).is_err());
        let c = CactusConstraints::good().with_required_edges(&[("c0", "c2")]);
        assert!(matches!(
            spanning_even_cactus(&g, &c, Budget::unlimited()),
            Err(Error::MissingEdge(..))
        ));
    }

    #[test]
    fn required_edges_and_degree_caps() {
        let g = cycle(6);
        let c = CactusConstraints::good().with_required_edges(&[("c0", "c1")]);
        let mut all = 0;
        enumerate_spanning_even_cacti(&g, &c, Budget::unlimited(), false, |q| {
            assert!(q.has_edge("c0", "c1"));
            all += 1;
        })
        .unwrap();
        // the 6-cycle and the five Hamilton paths through c0c1
        assert_eq!(all, 6);
        let c = CactusConstraints::any().with_max_degree(1);
        assert_eq!(count(&g, &c), 0);
    }

    #[test]
    fn guard() {
        let i = gadget_i();
        let r = enumerate_spanning_even_cacti(&i.graph, &CactusConstraints::good(), Budget::unlimited(), false, |_| {});
        assert!(r.unwrap().count > 0);
        let mut big = Graph::new();
        for i in 0..42 {
            big.add_edge(&format!("x{i}"), &format!("x{}", i + 1)).unwrap();
        }
        assert!(matches!(
            enumerate_spanning_even_cacti(&big, &CactusConstraints::good(), Budget::unlimited(), false, |_| {}),
            Err(Error::GuardExceeded { .. })
        ));
    }
}
