//! Certificates: a claim about a graph, its witness, and per-predicate
//! checks that [`verify_certificate`] recomputes from scratch.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{build_g, certificate_cactus_gc_in, formula_gc_edges, fragment_a, FragmentChart, FragmentKind};
use crate::graph::Graph;
use crate::lemmas::{check_lemma, LemmaId, LemmaOptions, LemmaReport, Verdict};
use crate::prism::{prism, stitch_hamilton_gd, PrismVertex, SpecUse};
use crate::search::{spanning_even_cactus, Budget, CactusConstraints, SearchOutcome, Status, Witness};
use crate::verify::{
    verify_cycle_edges, verify_hamilton_cycle, verify_hamilton_path, verify_k_tree, verify_k_walk,
    verify_spanning_cactus,
};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    SpanningGoodEvenCactus,
    HamiltonCycle,
    HamiltonPath,
    KWalk,
    KTree,
    PrismHamilton,
    LemmaCheck,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Formula,
    Search,
    External,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Parameters {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ends: Option<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constraints: Option<CactusConstraints>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lemma: Option<LemmaId>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lemma_ns: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lemma_report: Option<LemmaReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fragment_systems: Vec<SpecUse>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Timing {
    pub elapsed_seconds: f64,
    pub nodes_explored: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub schema_version: u32,
    pub graph: Graph,
    pub claim: Claim,
    pub parameters: Parameters,
    pub witness: Witness,
    pub verification: BTreeMap<String, bool>,
    pub provenance: Provenance,
    pub tool_version: String,
    pub timing: Option<Timing>,
}

impl Certificate {
    pub fn new(graph: Graph, claim: Claim, parameters: Parameters, witness: Witness, provenance: Provenance) -> Self {
        Certificate {
            schema_version: SCHEMA_VERSION,
            graph,
            claim,
            parameters,
            witness,
            verification: BTreeMap::new(),
            provenance,
            tool_version: TOOL_VERSION.to_string(),
            timing: None,
        }
    }

    /// Fills `verification` from a fresh check.
    pub fn seal(mut self) -> Result<Self> {
        self.verification = verify_certificate(&self)?;
        Ok(self)
    }

    pub fn holds(&self) -> bool {
        !self.verification.is_empty() && self.verification.values().all(|&b| b)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let c: Certificate = serde_json::from_str(s).map_err(|e| Error::Schema(e.to_string()))?;
        if c.schema_version != SCHEMA_VERSION {
            return Err(Error::Schema(format!(
                "schema_version {} is not supported",
                c.schema_version
            )));
        }
        Ok(c)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn timing(start: Instant, nodes: u64) -> Option<Timing> {
    Some(Timing {
        elapsed_seconds: start.elapsed().as_secs_f64(),
        nodes_explored: nodes,
    })
}

fn need<T: Clone>(v: &Option<T>, what: &str) -> Result<T> {
    v.clone()
        .ok_or_else(|| Error::Schema(format!("parameters.{what} is required for this claim")))
}

fn need_sequence(w: &Witness) -> Result<&[String]> {
    w.sequence
        .as_deref()
        .ok_or_else(|| Error::Schema("witness.sequence is required for this claim".into()))
}

/// Every witness label must name a vertex of `host`.
fn labels_known(host: &Graph, w: &Witness) -> Result<()> {
    let labels = w.edges.iter().flatten().chain(w.sequence.iter().flatten());
    for v in labels {
        if !host.contains(v) {
            return Err(Error::Schema(format!("witness vertex {v:?} is not in the graph")));
        }
    }
    Ok(())
}

/// Edge set of a vertex sequence, as sorted label pairs.
fn sequence_edges(seq: &[String], closed: bool) -> BTreeSet<[String; 2]> {
    let mut pairs: Vec<(&String, &String)> = seq.windows(2).map(|w| (&w[0], &w[1])).collect();
    if closed && seq.len() > 2 {
        pairs.push((&seq[seq.len() - 1], &seq[0]));
    }
    pairs
        .into_iter()
        .map(|(a, b)| {
            if a <= b {
                [a.clone(), b.clone()]
            } else {
                [b.clone(), a.clone()]
            }
        })
        .collect()
}

fn edges_match(w: &Witness, closed: bool) -> bool {
    match &w.sequence {
        Some(seq) => {
            let given: BTreeSet<[String; 2]> = w
                .edges
                .iter()
                .map(|[a, b]| if a <= b { [a.clone(), b.clone()] } else { [b.clone(), a.clone()] })
                .collect();
            given == sequence_edges(seq, closed)
        }
        None => true,
    }
}

/// Recomputes every predicate of the claim. Stored booleans are ignored.
pub fn verify_certificate(c: &Certificate) -> Result<BTreeMap<String, bool>> {
    let g = &c.graph;
    let w = &c.witness;
    let p = &c.parameters;
    let mut out = BTreeMap::new();
    let mut put = |k: &str, v: bool| {
        out.insert(k.to_string(), v);
    };
    match c.claim {
        Claim::SpanningGoodEvenCactus => {
            labels_known(g, w)?;
            let a = verify_spanning_cactus(g, &w.edges);
            put("edges_in_host", a.edges_in_host);
            put("spanning", a.spanning);
            put("connected", a.connected);
            put("is_cactus", a.is_cactus);
            put("is_even", a.is_even);
            put("good", a.spanning && a.block_degrees.values().all(|&b| b <= 2));
            if let Some(cons) = &p.constraints {
                if !cons.required_block_degree_1.is_empty() {
                    let ok = cons
                        .required_block_degree_1
                        .iter()
                        .all(|v| a.block_degrees.get(v) == Some(&1));
                    put("block_degree_1", ok);
                }
                if let Some(d) = cons.max_degree {
                    put("max_degree", a.max_degree <= d);
                }
            }
        }
        Claim::HamiltonCycle => {
            labels_known(g, w)?;
            let seq = need_sequence(w)?;
            put("hamilton_cycle", verify_hamilton_cycle(g, seq));
            put("witness_consistent", edges_match(w, true));
        }
        Claim::HamiltonPath => {
            labels_known(g, w)?;
            let seq = need_sequence(w)?;
            let ends = p.ends.as_ref().map(|(a, b)| (a.as_str(), b.as_str()));
            put("hamilton_path", verify_hamilton_path(g, seq, ends));
            put("witness_consistent", edges_match(w, false));
        }
        Claim::KWalk => {
            labels_known(g, w)?;
            let k = need(&p.k, "k")?;
            put("k_walk", verify_k_walk(g, need_sequence(w)?, k));
        }
        Claim::KTree => {
            labels_known(g, w)?;
            let k = need(&p.k, "k")?;
            put("k_tree", verify_k_tree(g, &w.edges, k));
        }
        Claim::PrismHamilton => {
            let host = prism(g);
            for v in w.edges.iter().flatten().chain(w.sequence.iter().flatten()) {
                let pv: PrismVertex = v.parse().map_err(|_| Error::Schema(format!("bad prism vertex {v:?}")))?;
                if !g.contains(&pv.base) {
                    return Err(Error::Schema(format!("witness vertex {v:?} is not in the prism")));
                }
            }
            let chk = verify_cycle_edges(&host, &w.edges);
            put("edges_in_host", chk.edges_in_host);
            put("spanning", chk.spanning);
            put("two_regular", chk.two_regular);
            put("connected", chk.connected);
            if let Some(seq) = &w.sequence {
                put("hamilton_cycle", verify_hamilton_cycle(&host, seq));
                put("witness_consistent", edges_match(w, true));
            }
        }
        Claim::LemmaCheck => {
            let id = need(&p.lemma, "lemma")?;
            let opts = LemmaOptions {
                ns: p.lemma_ns.clone(),
                samples: p.samples.unwrap_or(LemmaOptions::default().samples),
                seed: p.seed.unwrap_or(0),
                ..Default::default()
            };
            let r = check_lemma(id, &opts)?;
            put("confirmed", r.verdict == Verdict::Confirmed);
        }
    }
    Ok(out)
}

/// `K_A`: a spanning good even cactus of `A` with `b(u1) = b(u3) = 1`.
pub fn certify_ka(budget: Budget) -> Result<Certificate> {
    let start = Instant::now();
    let a = fragment_a();
    let cons = CactusConstraints::good().with_block_degree_1(&["u1", "u3"]);
    let o = spanning_even_cactus(&a.graph, &cons, budget)?;
    let w = found(&o, "A")?;
    let params = Parameters {
        target: Some("kA".into()),
        constraints: Some(cons),
        ..Default::default()
    };
    let mut c = Certificate::new(a.graph, Claim::SpanningGoodEvenCactus, params, w, Provenance::Search);
    c.timing = timing(start, o.nodes_explored);
    c.seal()
}

fn found(o: &SearchOutcome, fragment: &str) -> Result<Witness> {
    o.witness.clone().ok_or_else(|| Error::Fragment {
        fragment: fragment.into(),
        reason: match o.status {
            Status::Timeout => "search ran out of budget".into(),
            _ => "no witness exists".into(),
        },
    })
}

/// Result of building a spanning good even cactus of `G(C_n)`.
pub struct GcCactus {
    pub chart: FragmentChart,
    pub ka: Graph,
    pub cactus: Graph,
    pub provenance: Provenance,
    pub notes: Vec<String>,
    pub nodes_explored: u64,
}

/// The explicit formula when it verifies, otherwise a search keeping the
/// formula's chain edges and choosing the apex edges.
pub fn cactus_gc(n: usize, budget: Budget) -> Result<GcCactus> {
    let chart = build_g(FragmentKind::C, n)?;
    let a = fragment_a();
    let ko = spanning_even_cactus(
        &a.graph,
        &CactusConstraints::good().with_block_degree_1(&["u1", "u3"]),
        budget,
    )?;
    let ka = found(&ko, "A")?.to_graph(&a.graph)?;
    let mut nodes = ko.nodes_explored;
    let mut notes = Vec::new();
    match certificate_cactus_gc_in(&chart, &ka) {
        Ok(q) => {
            let edges: Vec<[String; 2]> = q.edge_labels().into_iter().map(|(a, b)| [a, b]).collect();
            if verify_spanning_cactus(&chart.graph, &edges).is_good_even() {
                return Ok(GcCactus {
                    chart,
                    ka,
                    cactus: q,
                    provenance: Provenance::Formula,
                    notes,
                    nodes_explored: nodes,
                });
            }
            notes.push("formula edge set is not a spanning good even cactus".into());
        }
        Err(e) => notes.push(format!("formula rejected: {e}")),
    }
    let formula = formula_gc_edges(&chart, &ka)?;
    let (s, t) = chart.apexes.clone().expect("G has apexes");
    let chain_fixed: Vec<(String, String)> = formula
        .iter()
        .filter(|e| !e.apex)
        .map(|e| (e.a.clone(), e.b.clone()))
        .collect();
    let ka_fixed: Vec<(String, String)> = formula
        .iter()
        .filter(|e| !e.apex && chart.fragment_spans.iter().any(|(c, vs)| {
            c.starts_with('A') && vs.contains(&e.a) && vs.contains(&e.b)
        }))
        .map(|e| (e.a.clone(), e.b.clone()))
        .collect();
    let b_copies: Vec<(&String, &Vec<String>)> = chart
        .fragment_spans
        .iter()
        .filter(|(copy, _)| copy.starts_with('B'))
        .collect();
    let on_b: BTreeSet<&str> = b_copies
        .iter()
        .flat_map(|(_, vs)| vs.iter().map(String::as_str))
        .collect();
    let in_copy = |vs: &[String], x: &str, y: &str| vs.iter().any(|v| v == x) && vs.iter().any(|v| v == y);

    // Tiers: the formula's chain edges as given, then with one B copy
    // re-chosen, then only the K_A copies kept.
    let mut tiers: Vec<(Vec<(String, String)>, Vec<(String, String)>, String)> =
        vec![(chain_fixed.clone(), Vec::new(), "the formula's chain edges fixed".into())];
    for (copy, vs) in &b_copies {
        let fixed = chain_fixed.iter().filter(|(x, y)| !in_copy(vs, x, y)).cloned().collect();
        let free = chart.graph.edge_labels().into_iter().filter(|(x, y)| in_copy(vs, x, y)).collect();
        tiers.push((fixed, free, format!("the formula's chain edges fixed except in {copy}")));
    }
    let all_b = chart
        .graph
        .edge_labels()
        .into_iter()
        .filter(|(x, y)| b_copies.iter().any(|(_, vs)| in_copy(vs, x, y)))
        .collect();
    tiers.push((ka_fixed, all_b, "only the K_A copies fixed".into()));

    for (fixed, free, what) in tiers {
        let mut host = Graph::new();
        for v in chart.graph.vertices() {
            host.add_vertex(v);
        }
        for (x, y) in fixed.iter().chain(&free) {
            if !host.has_edge(x, y) {
                host.add_edge(x, y)?;
            }
        }
        // apex edges towards B copies only
        for (x, y) in chart.graph.edge_labels() {
            let apex = (x == s || x == t) && on_b.contains(y.as_str()) || (y == s || y == t) && on_b.contains(x.as_str());
            if apex && !host.has_edge(&x, &y) {
                host.add_edge(&x, &y)?;
            }
        }
        let cons = CactusConstraints::good().with_required_edges(&fixed);
        let o = spanning_even_cactus(&host, &cons, budget)?;
        nodes += o.nodes_explored;
        match o.status {
            Status::Found => {
                let cactus = o.witness.expect("found").to_graph(&chart.graph)?;
                notes.push(format!("search with {what} found the remaining edges"));
                return Ok(GcCactus {
                    chart,
                    ka,
                    cactus,
                    provenance: Provenance::Search,
                    notes,
                    nodes_explored: nodes,
                });
            }
            Status::None => notes.push(format!("no completion with {what} (exhaustive)")),
            Status::Timeout => notes.push(format!("search with {what} ran out of budget")),
        }
    }
    Err(Error::Fragment {
        fragment: format!("G(C_{n})"),
        reason: notes.join("; "),
    })
}

pub fn certify_cactus_gc(n: usize, budget: Budget) -> Result<Certificate> {
    let start = Instant::now();
    let r = cactus_gc(n, budget)?;
    let w = Witness {
        edges: sorted_edges(&r.cactus),
        sequence: None,
    };
    let params = Parameters {
        target: Some("cactus_GC".into()),
        n: Some(n),
        constraints: Some(CactusConstraints::good()),
        notes: r.notes,
        ..Default::default()
    };
    let mut c = Certificate::new(r.chart.graph, Claim::SpanningGoodEvenCactus, params, w, r.provenance);
    c.timing = timing(start, r.nodes_explored);
    c.seal()
}

fn sorted_edges(g: &Graph) -> Vec<[String; 2]> {
    let mut e: Vec<[String; 2]> = g
        .edge_labels()
        .into_iter()
        .map(|(a, b)| if a <= b { [a, b] } else { [b, a] })
        .collect();
    e.sort();
    e
}

/// The stitched Hamilton cycle of `G(D_n) □ K₂`.
pub fn certify_prism_gd(n: usize, budget: Budget) -> Result<Certificate> {
    let start = Instant::now();
    let rep = stitch_hamilton_gd(n, budget)?;
    let g = build_g(FragmentKind::D, n)?;
    let seq: Vec<String> = rep.cycle.iter().map(PrismVertex::label).collect();
    let mut edges: Vec<[String; 2]> = sequence_edges(&seq, true).into_iter().collect();
    edges.sort();
    let params = Parameters {
        target: Some("prism_GD".into()),
        n: Some(n),
        fragment_systems: rep.specs,
        ..Default::default()
    };
    let w = Witness {
        edges,
        sequence: Some(seq),
    };
    let mut c = Certificate::new(g.graph, Claim::PrismHamilton, params, w, Provenance::Formula);
    c.timing = timing(start, 0);
    c.seal()
}

/// Wraps a FOUND search outcome; other outcomes have no certificate.
pub fn certify_search(g: &Graph, claim: Claim, params: Parameters, o: &SearchOutcome) -> Result<Option<Certificate>> {
    let Some(w) = o.witness.clone() else {
        return Ok(None);
    };
    let mut c = Certificate::new(g.clone(), claim, params, w, Provenance::Search);
    c.timing = Some(Timing {
        elapsed_seconds: o.elapsed.as_secs_f64(),
        nodes_explored: o.nodes_explored,
    });
    c.seal().map(Some)
}

pub fn certify_lemma(id: LemmaId, opts: &LemmaOptions) -> Result<(Certificate, LemmaReport)> {
    let start = Instant::now();
    let r = check_lemma(id, opts)?;
    let params = Parameters {
        target: Some(format!("lemma {id}")),
        lemma: Some(id),
        lemma_ns: opts.ns.clone(),
        samples: Some(opts.samples),
        seed: Some(opts.seed),
        lemma_report: Some(r.clone()),
        ..Default::default()
    };
    let w = Witness {
        edges: Vec::new(),
        sequence: None,
    };
    let mut c = Certificate::new(Graph::new(), Claim::LemmaCheck, params, w, Provenance::Search);
    c.verification.insert("confirmed".into(), r.verdict == Verdict::Confirmed);
    c.timing = timing(start, r.nodes_explored);
    Ok((c, r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ka_round_trip() {
        let c = certify_ka(Budget::unlimited()).unwrap();
        assert!(c.holds(), "{:?}", c.verification);
        let back = Certificate::from_json(&c.to_json().unwrap()).unwrap();
        assert_eq!(verify_certificate(&back).unwrap(), c.verification);
    }

    #[test]
    fn tampering_is_caught() {
        let c = certify_ka(Budget::unlimited()).unwrap();
        let mut cut = c.clone();
        cut.witness.edges.pop();
        assert!(!verify_certificate(&cut).unwrap().values().all(|&b| b));
        let mut bad = c.clone();
        bad.witness.edges[0][0] = "nowhere".into();
        assert!(matches!(verify_certificate(&bad), Err(Error::Schema(_))));
        let json = c.to_json().unwrap().replacen("\"claim\"", "\"claims\"", 1);
        assert!(matches!(Certificate::from_json(&json), Err(Error::Schema(_))));
    }

    #[test]
    fn prism_gd_small() {
        let c = certify_prism_gd(1, Budget::unlimited()).unwrap();
        assert!(c.holds(), "{:?}", c.verification);
        assert_eq!(c.witness.sequence.as_ref().unwrap().len(), 2 * c.graph.vertex_count());
    }
}
