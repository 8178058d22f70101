//! Components of `K − s − t` for a good cactus `K`, and the two-case
//! disjunction they satisfy.

use serde::Serialize;

use crate::bags::{bags, Interval};
use crate::cactus::{analyze_cactus, CactusReport, Classification};
use crate::connectivity::component_graphs;
use crate::error::{Error, Result};
use crate::families::FragmentChart;
use crate::graph::{delete, Graph, Item};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DeletionCase {
    I,
    II,
}

/// Which statement the report was checked against: the maximum-degree-3
/// version or the general one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeletionLemma {
    MaxDegreeThree,
    General,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeletionComponent {
    pub graph: Graph,
    pub report: CactusReport,
    /// Set when a chart was supplied.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interval: Option<Interval>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bags: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeletionReport {
    pub components: Vec<DeletionComponent>,
    pub case: Option<DeletionCase>,
    pub lemma: DeletionLemma,
    pub q1: usize,
    pub q2: usize,
    pub holds: bool,
}

impl DeletionReport {
    pub fn bag_counts(&self) -> Option<Vec<usize>> {
        self.components
            .iter()
            .map(|c| c.bags.as_ref().map(Vec::len))
            .collect()
    }
}

/// Deletes `s` and `t` from the good cactus `k` and classifies what is left.
pub fn classify_deletion(k: &Graph, s: &str, t: &str, max_degree_3: bool) -> Result<DeletionReport> {
    classify(k, s, t, max_degree_3, None)
}

/// As [`classify_deletion`] with the chart's apexes as `s, t`, also counting
/// the bags of every component.
pub fn classify_deletion_in(
    k: &Graph,
    chart: &FragmentChart,
    max_degree_3: bool,
) -> Result<DeletionReport> {
    let (s, t) = chart
        .apexes
        .clone()
        .ok_or_else(|| Error::InvalidParameter("chart has no apexes".into()))?;
    classify(k, &s, &t, max_degree_3, Some(chart))
}

fn classify(
    k: &Graph,
    s: &str,
    t: &str,
    max_degree_3: bool,
    chart: Option<&FragmentChart>,
) -> Result<DeletionReport> {
    if s == t {
        return Err(Error::InvalidParameter("s and t coincide".into()));
    }
    k.require(s)?;
    k.require(t)?;
    let rep = analyze_cactus(k)?;
    if !(rep.is_cactus && rep.classification == Classification::Good) {
        return Err(Error::NotGoodCactus(format!(
            "classification {:?}",
            rep.classification
        )));
    }
    let rest = delete(k, &[Item::vertex(s), Item::vertex(t)])?;
    let mut components = Vec::new();
    for c in component_graphs(&rest) {
        let report = analyze_cactus(&c)?;
        let (interval, bag_list) = match chart {
            Some(ch) => {
                let (iv, b) = bags(&c, ch)?;
                (Some(iv), Some(b))
            }
            None => (None, None),
        };
        components.push(DeletionComponent {
            graph: c,
            report,
            interval,
            bags: bag_list,
        });
    }
    let count = |cl| {
        components
            .iter()
            .filter(|c| c.report.classification == cl)
            .count()
    };
    let (q1, q2, q0) = (
        count(Classification::OneGood),
        count(Classification::TwoGood),
        count(Classification::None),
    );
    let total = components.len();
    let lemma = if max_degree_3 && k.max_degree() <= 3 {
        DeletionLemma::MaxDegreeThree
    } else {
        DeletionLemma::General
    };
    let case = match lemma {
        DeletionLemma::MaxDegreeThree if total <= 4 && q0 == 0 && q2 == 0 && q1 <= 2 => {
            Some(DeletionCase::I)
        }
        DeletionLemma::MaxDegreeThree if total <= 3 && q0 == 0 && q2 == 1 && q1 == 0 => {
            Some(DeletionCase::II)
        }
        DeletionLemma::General if total <= 4 && q0 == 0 && q2 == 0 => Some(DeletionCase::I),
        DeletionLemma::General if total <= 3 && q0 == 0 && q2 == 1 => Some(DeletionCase::II),
        _ => None,
    };
    Ok(DeletionReport {
        components,
        case,
        lemma,
        q1,
        q2,
        holds: case.is_some(),
    })
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
    fn c8_antipodal() {
        let r = classify_deletion(&cycle(8), "c0", "c4", true).unwrap();
        assert_eq!(r.components.len(), 2);
        assert!(r
            .components
            .iter()
            .all(|c| c.report.classification == Classification::Good));
        assert_eq!(r.case, Some(DeletionCase::I));
        assert_eq!(r.lemma, DeletionLemma::MaxDegreeThree);
    }

    #[test]
    fn c8_adjacent() {
        let r = classify_deletion(&cycle(8), "c0", "c1", true).unwrap();
        assert_eq!(r.components.len(), 1);
        assert_eq!(r.case, Some(DeletionCase::I));
    }

    #[test]
    fn two_cycles_through_one_component() {
        // s on one 4-cycle, t on another, both hanging off the same path
        let k = Graph::from_edges(&[
            ("s", "a1"),
            ("a1", "a2"),
            ("a2", "a3"),
            ("a3", "s"),
            ("a2", "m"),
            ("m", "b2"),
            ("t", "b1"),
            ("b1", "b2"),
            ("b2", "b3"),
            ("b3", "t"),
        ])
        .unwrap();
        let r = classify_deletion(&k, "s", "t", true).unwrap();
        assert_eq!(r.components.len(), 1);
        // a1-a2-m-b2-b1 carries both block-degree-3 vertices
        assert_eq!(r.components[0].report.classification, Classification::OneGood);
        assert_eq!(r.case, Some(DeletionCase::I));
        assert_eq!((r.q1, r.q2), (1, 0));
    }

    #[test]
    fn rejects_bad_input() {
        let star = Graph::from_edges(&[("c", "a"), ("c", "b"), ("c", "d")]).unwrap();
        assert!(matches!(
            classify_deletion(&star, "a", "b", true),
            Err(Error::NotGoodCactus(_))
        ));
        assert!(classify_deletion(&cycle(4), "c0", "c0", true).is_err());
        assert!(classify_deletion(&cycle(4), "c0", "zz", true).is_err());
    }

    #[test]
    fn isolated_leftovers_are_good() {
        let r = classify_deletion(&cycle(4), "c0", "c2", false).unwrap();
        assert_eq!(r.components.len(), 2);
        assert_eq!(r.lemma, DeletionLemma::General);
        assert!(r.holds);
    }
}
