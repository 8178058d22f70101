//! Intervals `G⁻[l^a, r^b]` and bags of a component of `K − s − t`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cactus::{Classification, EdgePath};
use crate::error::{Error, Result};
use crate::families::{ChartKind, FragmentChart};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub a: usize,
    pub b: usize,
}

impl Interval {
    pub fn width(&self) -> usize {
        self.b - self.a
    }
}

fn require_chain(chart: &FragmentChart) -> Result<()> {
    match chart.kind {
        ChartKind::Gminus | ChartKind::G if chart.a_count > 0 => Ok(()),
        _ => Err(Error::InvalidParameter(
            "bags need a chain or an apex graph".into(),
        )),
    }
}

fn span<'a>(chart: &'a FragmentChart, copy: &str) -> &'a [String] {
    chart
        .fragment_spans
        .get(copy)
        .map(Vec::as_slice)
        .unwrap_or(&[])
}

/// Vertex set of `G⁻[l^a, r^b]`.
pub fn region(chart: &FragmentChart, iv: Interval) -> BTreeSet<String> {
    let top = chart.a_count;
    let mut out = BTreeSet::new();
    for i in iv.a..=iv.b {
        if i == 0 {
            out.insert(chart.endvertices.0.clone());
        } else if i >= top {
            out.insert(chart.endvertices.1.clone());
        } else {
            out.extend(span(chart, &format!("B{i}")).iter().cloned());
        }
        if i > iv.a {
            out.extend(span(chart, &format!("A{i}")).iter().cloned());
        }
    }
    out
}

/// Vertex set of `G⁻[r^a, l^b]`, the part strictly between the two
/// boundary `B` copies.
pub fn inner_region(chart: &FragmentChart, iv: Interval) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for i in iv.a + 1..=iv.b {
        out.extend(span(chart, &format!("A{i}")).iter().cloned());
        if i < iv.b {
            out.extend(span(chart, &format!("B{i}")).iter().cloned());
        }
    }
    if iv.a == iv.b {
        out.insert(chart.r(iv.a));
    }
    out
}

/// Minimal interval containing `q`, and the copies that are bags of `q`.
pub fn bags(q: &Graph, chart: &FragmentChart) -> Result<(Interval, Vec<String>)> {
    require_chain(chart)?;
    let chain = chart.chain_graph();
    if !q.is_subgraph_of(&chain) {
        return Err(Error::NotInChart(format!(
            "graph with {} vertices",
            q.vertex_count()
        )));
    }
    if q.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let top = chart.a_count;
    let mut best = None;
    'width: for w in 0..=top {
        for a in 0..=top - w {
            let iv = Interval { a, b: a + w };
            let reg = region(chart, iv);
            if q.vertices().all(|v| reg.contains(v)) {
                best = Some(iv);
                break 'width;
            }
        }
    }
    let iv = best.expect("the full chain contains q");
    let bags = chart
        .fragment_ends
        .iter()
        .filter(|(copy, (x, y))| {
            q.contains(x) && q.contains(y) && span(chart, copy).iter().any(|v| !q.contains(v))
        })
        .map(|(copy, _)| copy.clone())
        .collect();
    Ok((iv, bags))
}

/// Lower bound on the number of bags for a component of the given class.
pub fn bag_lower_bound(class: Classification, iv: Interval) -> Option<i64> {
    let w = iv.width() as i64;
    match class {
        Classification::Good => Some(w - 1),
        Classification::OneGood => Some(w - 2),
        Classification::TwoGood => Some(w - 3),
        Classification::None => None,
    }
}

/// Second clause for 1-good components: zero bags and `b = a + 2` force the
/// witness path into `G⁻[r^a, l^b]`. Returns `None` when the clause does not
/// apply.
pub fn witness_within_inner(
    chart: &FragmentChart,
    iv: Interval,
    bag_count: usize,
    p: &EdgePath,
) -> Option<bool> {
    if bag_count != 0 || iv.b != iv.a + 2 {
        return None;
    }
    let inner = inner_region(chart, iv);
    Some(p.vertices.iter().all(|v| inner.contains(v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_chain, build_g, FragmentKind};
    use crate::graph::induced_subgraph;

    #[test]
    fn whole_chain_has_no_bags() {
        let c = build_chain(FragmentKind::C, 1).unwrap();
        let (iv, b) = bags(&c.graph, &c).unwrap();
        assert_eq!(iv, Interval { a: 0, b: 8 });
        assert!(b.is_empty());
    }

    #[test]
    fn single_u2_vertex() {
        let c = build_chain(FragmentKind::D, 1).unwrap();
        let q = induced_subgraph(&c.graph, &["A1:u2"]);
        let (iv, b) = bags(&q, &c).unwrap();
        assert_eq!(iv, Interval { a: 0, b: 1 });
        assert!(b.is_empty());
        let q = induced_subgraph(&c.graph, &["A8:u2"]);
        assert_eq!(bags(&q, &c).unwrap().0, Interval { a: 7, b: 8 });
    }

    #[test]
    fn missing_vertex_inside_a_copy_makes_a_bag() {
        let c = build_chain(FragmentKind::C, 1).unwrap();
        let drop = c.copy_label("B3", "w1").unwrap();
        let keep: Vec<&str> = c.graph.vertices().filter(|v| *v != drop).collect();
        let q = induced_subgraph(&c.graph, &keep);
        let (iv, b) = bags(&q, &c).unwrap();
        assert_eq!(iv, Interval { a: 0, b: 8 });
        assert_eq!(b, vec!["B3".to_string()]);
    }

    #[test]
    fn apex_is_not_in_chart() {
        let g = build_g(FragmentKind::C, 1).unwrap();
        let q = induced_subgraph(&g.graph, &["s", "A1:u1"]);
        assert!(matches!(bags(&q, &g), Err(Error::NotInChart(_))));
    }

    #[test]
    fn inner_region_of_width_two() {
        let c = build_chain(FragmentKind::C, 1).unwrap();
        let iv = Interval { a: 2, b: 4 };
        let inner = inner_region(&c, iv);
        assert!(inner.contains(&c.r(2)) && inner.contains(&c.l(4)));
        assert!(!inner.contains(&c.copy_label("B2", "w1").unwrap()));
        assert!(inner.contains(&c.copy_label("B3", "w1").unwrap()));
    }
}
