//! Rotation systems, face tracing and the Euler check.

use std::collections::{BTreeSet, HashMap};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::connectivity::components;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A combinatorial embedding: the cyclic order of neighbors around each
/// vertex, plus a designated outer face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationEmbedding {
    pub rotation: IndexMap<String, Vec<String>>,
    pub outer_face: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceReport {
    pub face_count: usize,
    /// Each face as the cyclic sequence of vertices met on its boundary walk.
    pub faces: Vec<Vec<String>>,
    /// `V − E + F = 2` on every connected component.
    pub euler_holds: bool,
    pub outer_face_found: bool,
}

impl FaceReport {
    pub fn is_plane(&self) -> bool {
        self.euler_holds && self.outer_face_found
    }
}

impl RotationEmbedding {
    /// Orders each vertex's neighbors counterclockwise by `angle(v, w)`,
    /// the direction of the edge `vw` as seen from `v`.
    pub fn from_angles(
        g: &Graph,
        outer_face: Vec<String>,
        mut angle: impl FnMut(&str, &str) -> f64,
    ) -> Self {
        let rotation = g
            .vertices()
            .enumerate()
            .map(|(i, v)| {
                let mut nbrs: Vec<(f64, &str)> = g
                    .neighbors(i)
                    .map(|j| {
                        let w = g.label(j);
                        (angle(v, w), w)
                    })
                    .collect();
                nbrs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(b.1)));
                (v.to_string(), nbrs.into_iter().map(|(_, w)| w.to_string()).collect())
            })
            .collect();
        RotationEmbedding {
            rotation,
            outer_face,
        }
    }

    /// Straight-line embedding from vertex coordinates.
    pub fn from_coordinates(
        g: &Graph,
        coords: &HashMap<String, (f64, f64)>,
        outer_face: Vec<String>,
    ) -> Self {
        Self::from_angles(g, outer_face, |v, w| {
            let (x0, y0) = coords[v];
            let (x1, y1) = coords[w];
            (y1 - y0).atan2(x1 - x0)
        })
    }
}

/// Traces every face of `emb` and checks Euler's formula per component.
pub fn check_embedding(g: &Graph, emb: &RotationEmbedding) -> Result<FaceReport> {
    let n = g.vertex_count();
    if emb.rotation.len() != n {
        return Err(Error::InvalidRotation(format!(
            "rotation covers {} vertices, graph has {n}",
            emb.rotation.len()
        )));
    }
    // rot[v] as indices, pos[(v, w)] = position of w in rot[v]
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut pos: HashMap<(usize, usize), usize> = HashMap::new();
    for (v, order) in &emb.rotation {
        let vi = g
            .index_of(v)
            .ok_or_else(|| Error::InvalidRotation(format!("unknown vertex {v:?}")))?;
        let mut seen = BTreeSet::new();
        for w in order {
            let wi = g
                .index_of(w)
                .filter(|&wi| g.has_edge_idx(vi, wi))
                .ok_or_else(|| Error::InvalidRotation(format!("{v:?} has no neighbor {w:?}")))?;
            if !seen.insert(wi) {
                return Err(Error::InvalidRotation(format!("{w:?} repeated around {v:?}")));
            }
            pos.insert((vi, wi), rot[vi].len());
            rot[vi].push(wi);
        }
        if seen.len() != g.degree(vi) {
            return Err(Error::InvalidRotation(format!(
                "rotation at {v:?} misses neighbors"
            )));
        }
    }

    let mut used: HashMap<(usize, usize), bool> = pos.keys().map(|&d| (d, false)).collect();
    let mut darts: Vec<(usize, usize)> = pos.keys().copied().collect();
    darts.sort_unstable();
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for start in darts {
        if used[&start] {
            continue;
        }
        let mut face = Vec::new();
        let mut d = start;
        loop {
            used.insert(d, true);
            face.push(d.0);
            let (u, v) = d;
            let k = rot[v].len();
            let w = rot[v][(pos[&(v, u)] + k - 1) % k];
            d = (v, w);
            if d == start {
                break;
            }
        }
        faces.push(face);
    }

    let comp_id = {
        let mut id = vec![0usize; n];
        for (c, vs) in components(g).iter().enumerate() {
            for &v in vs {
                id[v] = c;
            }
        }
        id
    };
    let comps = components(g);
    let mut euler_holds = true;
    for (c, vs) in comps.iter().enumerate() {
        let e: usize = vs.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
        let f = if e == 0 {
            1
        } else {
            faces.iter().filter(|fc| comp_id[fc[0]] == c).count()
        };
        if vs.len() as i64 - e as i64 + f as i64 != 2 {
            euler_holds = false;
        }
    }

    let outer: Option<Vec<usize>> = emb
        .outer_face
        .iter()
        .map(|v| g.index_of(v))
        .collect();
    let outer_face_found = match outer {
        Some(o) if !o.is_empty() => faces.iter().any(|f| same_cycle(f, &o)),
        _ => false,
    };

    Ok(FaceReport {
        face_count: faces.len() + comps.iter().filter(|c| c.len() == 1).count(),
        faces: faces
            .iter()
            .map(|f| f.iter().map(|&v| g.label(v).to_string()).collect())
            .collect(),
        euler_holds,
        outer_face_found,
    })
}

/// Equality of cyclic sequences up to rotation and reversal.
fn same_cycle(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    let rev: Vec<usize> = b.iter().rev().copied().collect();
    (0..n).any(|s| {
        (0..n).all(|i| a[(s + i) % n] == b[i]) || (0..n).all(|i| a[(s + i) % n] == rev[i])
    })
}
