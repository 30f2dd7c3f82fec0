//! A family of graphs on which no single ordering is near-optimal for two
//! radii `r < r'` at once.
//!
//! `Z` is split into `n` groups `Z_i = {z_i^1, …, z_i^t}`. For every ordered
//! pair `i ≠ j` there is a hub `x_{i,j}`, joined to each `z_i^h` by a path of
//! length `r` and to each `z_j^h` by a path of length `r' - r`. The remaining
//! (internal path) vertices form `Y`.
//!
//! Vertex ids: `Z` first (by group, then index), then `X` (by `(i, j)`), then
//! `Y` in construction order, so the `Z < X < Y` block ordering is the
//! identity.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Ordering, Radius, VertexId};
use crate::reach;
use crate::rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoRadiiParams {
    pub t: usize,
    pub n: usize,
    pub r: usize,
    pub r_prime: usize,
}

impl TwoRadiiParams {
    pub fn new(t: usize, n: usize, r: usize, r_prime: usize) -> Result<Self> {
        if t < 4 || t > n {
            return Err(Error::InvalidParams(format!("need 4 <= t <= n, got t = {t}, n = {n}")));
        }
        if r == 0 || r_prime <= r {
            return Err(Error::InvalidParams(format!("need 1 <= r < r', got r = {r}, r' = {r_prime}")));
        }
        Ok(TwoRadiiParams { t, n, r, r_prime })
    }

    /// `n·t + n(n-1)·(1 + t(r' - 2))`
    pub fn vertex_count(&self) -> usize {
        self.n * self.t + self.n * (self.n - 1) * (1 + self.t * (self.r_prime - 2))
    }
}

#[derive(Clone, Debug)]
pub struct TwoRadiiGraph {
    pub params: TwoRadiiParams,
    pub graph: Graph,
    /// Label of every vertex, indexed by id.
    pub labels: Vec<String>,
    /// `z[i][h]`, 0-based group and index.
    pub z: Vec<Vec<VertexId>>,
    /// Hubs `x_{i,j}` with their 0-based pair.
    pub x: Vec<((usize, usize), VertexId)>,
    pub y: Vec<VertexId>,
}

impl TwoRadiiGraph {
    pub fn hub(&self, i: usize, j: usize) -> VertexId {
        let n = self.params.n;
        // Pairs are enumerated row by row, skipping the diagonal.
        self.x[i * (n - 1) + if j > i { j - 1 } else { j }].1
    }

    /// `X_i`: hubs with `i` as either end of their pair.
    pub fn hubs_touching(&self, i: usize) -> Vec<VertexId> {
        self.x
            .iter()
            .filter(|((a, b), _)| *a == i || *b == i)
            .map(|&(_, v)| v)
            .collect()
    }

    pub fn label_map(&self) -> BTreeMap<String, VertexId> {
        self.labels.iter().enumerate().map(|(v, l)| (l.clone(), v)).collect()
    }
}

pub fn build_two_radii_graph(p: TwoRadiiParams) -> Result<TwoRadiiGraph> {
    let TwoRadiiParams { t, n, r, r_prime } = TwoRadiiParams::new(p.t, p.n, p.r, p.r_prime)?;
    let mut labels = Vec::with_capacity(p.vertex_count());
    let mut z = vec![Vec::with_capacity(t); n];
    for (i, group) in z.iter_mut().enumerate() {
        for h in 0..t {
            group.push(labels.len());
            labels.push(format!("z_{}^{}", i + 1, h + 1));
        }
    }
    let mut x = Vec::with_capacity(n * (n - 1));
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            x.push(((i, j), labels.len()));
            labels.push(format!("x_{},{}", i + 1, j + 1));
        }
    }

    let mut y = Vec::new();
    let mut edges = Vec::new();
    let mut chain = |from: VertexId, to: VertexId, len: usize, tag: &str, labels: &mut Vec<String>| {
        let mut prev = from;
        for s in 1..len {
            let v = labels.len();
            labels.push(format!("{tag}[{s}]"));
            y.push(v);
            edges.push((prev, v));
            prev = v;
        }
        edges.push((prev, to));
    };
    for &((i, j), hub) in &x {
        for (h, (&zi, &zj)) in z[i].iter().zip(&z[j]).enumerate() {
            chain(zi, hub, r, &format!("p_{},{}^{}", i + 1, j + 1, h + 1), &mut labels);
            chain(hub, zj, r_prime - r, &format!("q_{},{}^{}", i + 1, j + 1, h + 1), &mut labels);
        }
    }
    let graph = Graph::from_edges(labels.len(), edges)?;
    debug_assert_eq!(graph.n(), p.vertex_count());
    Ok(TwoRadiiGraph {
        params: p,
        graph,
        labels,
        z,
        x,
        y,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactsReport {
    /// Vertices in different groups of `Z` are exactly `r'` apart.
    pub e1: bool,
    /// Removing `X` separates all of `Z`; removing `x_{i,j}, x_{j,i}` pushes
    /// `Z_i` and `Z_j` more than `r'` apart.
    pub e2: bool,
    /// Hubs sharing no group are more than `r'` apart.
    pub e3: bool,
    pub ok: bool,
}

pub fn verify_facts(g: &TwoRadiiGraph) -> FactsReport {
    let TwoRadiiParams { n, r_prime, .. } = g.params;
    let graph = &g.graph;
    let mut group_of = vec![usize::MAX; graph.n()];
    for (i, zs) in g.z.iter().enumerate() {
        for &v in zs {
            group_of[v] = i;
        }
    }

    let e1 = g.z.par_iter().flatten().all(|&src| {
        let dist = graph.bfs_within(src, usize::MAX, |_| true);
        g.z.iter()
            .flatten()
            .filter(|&&w| group_of[w] != group_of[src])
            .all(|&w| dist[w] == Some(r_prime))
    });

    let mut is_hub = vec![false; graph.n()];
    for &(_, v) in &g.x {
        is_hub[v] = true;
    }
    let comp = graph.without_vertices(&g.x.iter().map(|&(_, v)| v).collect::<Vec<_>>()).components();
    let mut z_comps: Vec<usize> = g.z.iter().flatten().map(|&v| comp[v]).collect();
    let total_z = z_comps.len();
    z_comps.sort_unstable();
    z_comps.dedup();
    let separated = z_comps.len() == total_z;

    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let blocked = pairs.par_iter().all(|&(i, j)| {
        let (a, b) = (g.hub(i, j), g.hub(j, i));
        g.z[i].iter().all(|&src| {
            let dist = graph.bfs_within(src, r_prime, |v| v != a && v != b);
            g.z[j].iter().all(|&w| dist[w].is_none())
        })
    });
    let e2 = separated && blocked;

    let e3 = g.x.par_iter().all(|&((i, j), hub)| {
        let dist = graph.bfs_within(hub, r_prime, |_| true);
        g.x.iter()
            .filter(|((a, b), _)| ![i, j].contains(a) && ![i, j].contains(b))
            .all(|&(_, other)| dist[other].is_none())
    });

    FactsReport {
        e1,
        e2,
        e3,
        ok: e1 && e2 && e3,
    }
}

/// The block orderings `Z < X < Y` and `X < Z < Y`, each block in id order.
pub fn claim_orderings(g: &TwoRadiiGraph) -> (Ordering, Ordering) {
    let zxy = Ordering::identity(g.graph.n());
    let xzy: Vec<VertexId> = g
        .x
        .iter()
        .map(|&(_, v)| v)
        .chain(g.z.iter().flatten().copied())
        .chain(g.y.iter().copied())
        .collect();
    (zxy, Ordering::new(xzy).expect("blocks partition the vertex set"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockClaim {
    pub radius: usize,
    pub value: usize,
    pub bound: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisjunctionSample {
    pub scol_r: usize,
    pub scol_r_prime: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimsReport {
    /// `scol_r` under `Z < X < Y` is at most `2t + 1`.
    pub zxy_bound: BlockClaim,
    /// `scol_{r'}` under `X < Z < Y` is at most `4n - 6`.
    pub xzy_bound: BlockClaim,
    /// Least integers meeting `0.246 n` and `0.754 n t`.
    pub threshold_r: usize,
    pub threshold_r_prime: usize,
    pub samples: Vec<DisjunctionSample>,
    pub ok: bool,
}

/// Checks the two block-ordering upper bounds, and for `samples` random
/// orderings that `scol_r >= 0.246 n` or `scol_{r'} >= 0.754 n t`.
pub fn verify_claims(g: &TwoRadiiGraph, samples: usize, seed: u64) -> Result<ClaimsReport> {
    let TwoRadiiParams { t, n, r, r_prime } = g.params;
    let (zxy, xzy) = claim_orderings(g);
    let v1 = reach::scol_of_ordering(&g.graph, &zxy, Radius::Finite(r))?.value;
    let v2 = reach::scol_of_ordering(&g.graph, &xzy, Radius::Finite(r_prime))?.value;
    let zxy_bound = BlockClaim {
        radius: r,
        value: v1,
        bound: 2 * t + 1,
        ok: v1 <= 2 * t + 1,
    };
    let xzy_bound = BlockClaim {
        radius: r_prime,
        value: v2,
        bound: 4 * n - 6,
        ok: v2 <= 4 * n - 6,
    };

    let samples = (0..samples as u64)
        .into_par_iter()
        .map(|s| {
            let mut rng = rng::stream(seed, s);
            let mut order: Vec<VertexId> = g.graph.vertices().collect();
            order.shuffle(&mut rng);
            let sigma = Ordering::new(order)?;
            let a = reach::scol_of_ordering(&g.graph, &sigma, Radius::Finite(r))?.value;
            let b = reach::scol_of_ordering(&g.graph, &sigma, Radius::Finite(r_prime))?.value;
            Ok(DisjunctionSample {
                scol_r: a,
                scol_r_prime: b,
                ok: 1000 * a >= 246 * n || 1000 * b >= 754 * n * t,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let ok = zxy_bound.ok && xzy_bound.ok && samples.iter().all(|s| s.ok);
    Ok(ClaimsReport {
        zxy_bound,
        xzy_bound,
        threshold_r: (246 * n).div_ceil(1000),
        threshold_r_prime: (754 * n * t).div_ceil(1000),
        samples,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_counts() {
        let g = build_two_radii_graph(TwoRadiiParams::new(4, 4, 2, 4).unwrap()).unwrap();
        assert_eq!(g.graph.n(), 124);
        let g = build_two_radii_graph(TwoRadiiParams::new(4, 4, 1, 2).unwrap()).unwrap();
        assert_eq!(g.graph.n(), 28);
        assert!(g.y.is_empty());
    }

    #[test]
    fn rejects_bad_params() {
        assert!(TwoRadiiParams::new(3, 4, 2, 4).is_err());
        assert!(TwoRadiiParams::new(5, 4, 2, 4).is_err());
        assert!(TwoRadiiParams::new(4, 4, 2, 2).is_err());
        assert!(TwoRadiiParams::new(4, 4, 0, 2).is_err());
    }

    #[test]
    fn structure() {
        let g = build_two_radii_graph(TwoRadiiParams::new(4, 5, 2, 5).unwrap()).unwrap();
        for zs in &g.z {
            for &a in zs {
                for &b in g.z.iter().flatten() {
                    assert!(!g.graph.has_edge(a, b));
                }
            }
        }
        for &(_, hub) in &g.x {
            assert_eq!(g.graph.degree(hub), 8);
        }
        assert_eq!(g.hubs_touching(0).len(), 8);
        assert_eq!(g.labels[g.hub(2, 0)], "x_3,1");
        assert_eq!(g.label_map()["z_1^1"], 0);
    }

    #[test]
    fn facts_and_distances() {
        let g = build_two_radii_graph(TwoRadiiParams::new(4, 4, 2, 4).unwrap()).unwrap();
        assert!(verify_facts(&g).ok);
        let d = |a: VertexId, b: VertexId| g.graph.distance(a, b).unwrap();
        assert_eq!(d(g.z[0][0], g.z[1][2]), Some(4));
        assert_eq!(d(g.z[0][0], g.z[0][1]), Some(4));
        assert!(d(g.hub(0, 1), g.hub(2, 3)).unwrap() > 4);
    }

    #[test]
    fn block_orderings() {
        let g = build_two_radii_graph(TwoRadiiParams::new(4, 4, 1, 3).unwrap()).unwrap();
        let (zxy, xzy) = claim_orderings(&g);
        let zs: Vec<_> = g.z.iter().flatten().copied().collect();
        let xs: Vec<_> = g.x.iter().map(|&(_, v)| v).collect();
        let max_rank = |s: &Ordering, set: &[VertexId]| set.iter().map(|&v| s.rank(v)).max().unwrap();
        let min_rank = |s: &Ordering, set: &[VertexId]| set.iter().map(|&v| s.rank(v)).min().unwrap();
        assert!(max_rank(&zxy, &zs) < min_rank(&zxy, &xs));
        assert!(max_rank(&zxy, &xs) < min_rank(&zxy, &g.y));
        assert!(max_rank(&xzy, &xs) < min_rank(&xzy, &zs));
        assert!(max_rank(&xzy, &zs) < min_rank(&xzy, &g.y));
        assert_eq!(xzy.len(), g.graph.n());
    }

    #[test]
    fn claims_hold_small() {
        let g = build_two_radii_graph(TwoRadiiParams::new(4, 4, 2, 4).unwrap()).unwrap();
        let rep = verify_claims(&g, 10, 1).unwrap();
        assert!(rep.ok, "{rep:?}");
        assert_eq!(rep.zxy_bound.bound, 9);
        assert_eq!(rep.xzy_bound.bound, 10);
        assert_eq!(rep.threshold_r, 1);
        assert_eq!(rep.threshold_r_prime, 13);
    }

    #[test]
    fn deleting_edges_never_raises_scol() {
        let g = build_two_radii_graph(TwoRadiiParams::new(4, 4, 1, 2).unwrap()).unwrap();
        let (zxy, xzy) = claim_orderings(&g);
        for (u, v) in g.graph.edges().step_by(5) {
            let h = g.graph.without_edge(u, v);
            for (sigma, r) in [(&zxy, 1), (&xzy, 2), (&zxy, 3)] {
                let before = reach::scol_of_ordering(&g.graph, sigma, Radius::Finite(r)).unwrap();
                let after = reach::scol_of_ordering(&h, sigma, Radius::Finite(r)).unwrap();
                assert!(after.value <= before.value);
                assert!(after.per_vertex.iter().zip(&before.per_vertex).all(|(a, b)| a <= b));
            }
        }
    }
}
