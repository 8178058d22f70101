//! Brute-force oracles over edge subsets. Nothing here calls the library's
//! search or block code.

#![allow(dead_code)]

use cactuslab_core::Graph;
use rand::Rng;

pub struct Small {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Small {
    pub fn of(g: &Graph) -> Small {
        Small {
            n: g.vertex_count(),
            edges: g.edges().collect(),
        }
    }

    fn chosen(&self, mask: u64) -> Vec<(usize, usize)> {
        (0..self.edges.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.edges[i])
            .collect()
    }

    fn degrees(&self, es: &[(usize, usize)]) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(a, b) in es {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    fn connected(&self, es: &[(usize, usize)]) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut parts = self.n;
        for &(a, b) in es {
            let (x, y) = (find(&mut parent, a), find(&mut parent, b));
            if x != y {
                parent[x] = y;
                parts -= 1;
            }
        }
        parts == 1
    }

    /// Some subset with between `lo` and `hi` edges passes `ok`.
    fn any_subset(&self, lo: usize, hi: usize, mut ok: impl FnMut(&[(usize, usize)]) -> bool) -> bool {
        let m = self.edges.len();
        assert!(m <= 24, "oracle is exponential in the edge count");
        (0u64..1 << m)
            .filter(|mask| (lo..=hi).contains(&(mask.count_ones() as usize)))
            .any(|mask| ok(&self.chosen(mask)))
    }

    pub fn has_hamilton_cycle(&self) -> bool {
        if self.n < 3 {
            return false;
        }
        self.any_subset(self.n, self.n, |es| {
            self.degrees(es).iter().all(|&d| d == 2) && self.connected(es)
        })
    }

    pub fn has_hamilton_path(&self) -> bool {
        if self.n == 1 {
            return true;
        }
        self.any_subset(self.n - 1, self.n - 1, |es| {
            self.degrees(es).iter().all(|&d| d <= 2) && self.connected(es)
        })
    }

    /// A spanning tree with maximum degree at most `k`.
    pub fn has_k_tree(&self, k: usize) -> bool {
        if self.n == 1 {
            return true;
        }
        self.any_subset(self.n - 1, self.n - 1, |es| {
            self.degrees(es).iter().all(|&d| d <= k) && self.connected(es)
        })
    }

    /// A spanning connected even cactus whose vertices all lie in at most
    /// two blocks.
    pub fn has_good_even_cactus(&self) -> bool {
        if self.n == 1 {
            return true;
        }
        // a cactus on n vertices has at most 3(n - 1)/2 edges
        self.any_subset(self.n - 1, 3 * (self.n - 1) / 2, |es| {
            self.connected(es) && good_even_cactus(self.n, es)
        })
    }
}

/// All simple cycles, each as its edge indices into `es`. Gives up (None)
/// once some edge lies on two cycles.
fn cycles_if_cactus(n: usize, es: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    let mut adj = vec![Vec::new(); n];
    for (i, &(a, b)) in es.iter().enumerate() {
        adj[a].push((b, i));
        adj[b].push((a, i));
    }
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut used = vec![false; es.len()];
    // cycles through `root` with every other vertex larger than `root`
    for root in 0..n {
        let mut stack = vec![(root, Vec::<usize>::new(), vec![root])];
        while let Some((v, path, verts)) = stack.pop() {
            for &(w, e) in &adj[v] {
                if path.contains(&e) {
                    continue;
                }
                if w == root && path.len() >= 2 {
                    let mut c = path.clone();
                    c.push(e);
                    let mut key = c.clone();
                    key.sort();
                    if found.iter().any(|f| {
                        let mut k = f.clone();
                        k.sort();
                        k == key
                    }) {
                        continue;
                    }
                    for &x in &c {
                        if used[x] {
                            return None;
                        }
                        used[x] = true;
                    }
                    found.push(c);
                } else if w > root && !verts.contains(&w) {
                    let mut p = path.clone();
                    p.push(e);
                    let mut vs = verts.clone();
                    vs.push(w);
                    stack.push((w, p, vs));
                }
            }
        }
    }
    Some(found)
}

fn good_even_cactus(n: usize, es: &[(usize, usize)]) -> bool {
    let Some(cycles) = cycles_if_cactus(n, es) else {
        return false;
    };
    if cycles.iter().any(|c| c.len() % 2 == 1) {
        return false;
    }
    let mut on_cycle = vec![false; es.len()];
    let mut blocks = vec![0usize; n];
    for c in &cycles {
        let mut verts: Vec<usize> = c.iter().flat_map(|&i| [es[i].0, es[i].1]).collect();
        verts.sort();
        verts.dedup();
        for v in verts {
            blocks[v] += 1;
        }
        for &i in c {
            on_cycle[i] = true;
        }
    }
    for (i, &(a, b)) in es.iter().enumerate() {
        if !on_cycle[i] {
            blocks[a] += 1;
            blocks[b] += 1;
        }
    }
    blocks.iter().all(|&b| b <= 2)
}

/// A random connected graph on `n` vertices with about `extra` edges
/// beyond a random spanning tree.
pub fn random_connected(rng: &mut impl Rng, n: usize, extra: usize) -> Graph {
    let mut g = Graph::new();
    for i in 0..n {
        g.add_vertex(&format!("v{i}"));
    }
    for i in 1..n {
        let j = rng.gen_range(0..i);
        g.add_edge(&format!("v{i}"), &format!("v{j}")).unwrap();
    }
    for _ in 0..extra {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b {
            let _ = g.add_edge(&format!("v{a}"), &format!("v{b}"));
        }
    }
    g
}

/// Runs the four searches and the oracle on `rounds` random graphs with
/// 4 to 12 vertices. Returns how often each search answered yes, or the
/// first disagreement.
pub fn compare_with_oracle(seed: u64, rounds: usize) -> Result<[usize; 4], String> {
    use cactuslab_core::search::{hamilton_cycle, hamilton_path, k_tree, spanning_even_cactus, Budget, CactusConstraints, Status};
    use rand::SeedableRng;

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut tally = [0usize; 4];
    for round in 0..rounds {
        let n = rng.gen_range(4..=12);
        let g = if round % 5 == 4 {
            // possibly disconnected
            let mut g = Graph::new();
            for i in 0..n {
                g.add_vertex(&format!("v{i}"));
            }
            for _ in 0..n + 2 {
                let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
                if a != b {
                    g.add_edge(&format!("v{a}"), &format!("v{b}")).unwrap();
                }
            }
            g
        } else {
            let extra = rng.gen_range(0..=(20 - (n - 1)).min(n));
            random_connected(&mut rng, n, extra)
        };
        let small = Small::of(&g);
        let b = Budget::unlimited();
        let checks = [
            ("hamilton_cycle", hamilton_cycle(&g, b), small.has_hamilton_cycle()),
            ("hamilton_path", hamilton_path(&g, None, b).unwrap(), small.has_hamilton_path()),
            ("k_tree(3)", k_tree(&g, 3, b).unwrap(), small.has_k_tree(3)),
            (
                "cactus(good)",
                spanning_even_cactus(&g, &CactusConstraints::good(), b).unwrap(),
                small.has_good_even_cactus(),
            ),
        ];
        for (i, (name, o, expect)) in checks.iter().enumerate() {
            if o.found() != *expect || !(o.exhaustive || o.status == Status::Found) {
                return Err(format!(
                    "round {round}: {name} says {:?} (exhaustive {}), oracle says {expect} on {:?}",
                    o.status,
                    o.exhaustive,
                    g.edge_labels()
                ));
            }
            tally[i] += *expect as usize;
        }
    }
    Ok(tally)
}
