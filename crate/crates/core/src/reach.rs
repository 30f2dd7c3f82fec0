//! Weak and strong reachability sets, back-connectivity, and the per-ordering
//! weak/strong coloring numbers and admissibility built on them.
//!
//! For an ordering σ, a vertex `y ≤σ x` is *weakly* r-reachable from `x` if
//! some `x,y`-path of length at most r avoids every vertex σ-smaller than
//! `y`, and *strongly* r-reachable if every vertex of the path other than `y`
//! is σ-greater than or equal to `x`. Both sets contain `x` itself.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Ordering, Radius, VertexId};

/// Default cap on the number of candidate paths enumerated per vertex when
/// computing back-connectivity.
pub const DEFAULT_PATH_BUDGET: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReachKind {
    Weak,
    Strong,
    Adm,
}

impl ReachKind {
    pub const ALL: [ReachKind; 3] = [ReachKind::Weak, ReachKind::Strong, ReachKind::Adm];
}

impl fmt::Display for ReachKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReachKind::Weak => "weak",
            ReachKind::Strong => "strong",
            ReachKind::Adm => "adm",
        })
    }
}

impl FromStr for ReachKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "weak" | "wcol" => Ok(ReachKind::Weak),
            "strong" | "scol" => Ok(ReachKind::Strong),
            "adm" | "admissibility" => Ok(ReachKind::Adm),
            other => Err(Error::InvalidParams(format!("unknown kind '{other}'"))),
        }
    }
}

/// Per-vertex reachability sizes for one ordering, radius and kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReachReport {
    pub kind: ReachKind,
    pub r: Radius,
    pub value: usize,
    pub per_vertex: Vec<usize>,
}

impl ReachReport {
    fn new(kind: ReachKind, r: Radius, per_vertex: Vec<usize>) -> Self {
        let value = per_vertex.iter().copied().max().unwrap_or(0);
        ReachReport {
            kind,
            r,
            value,
            per_vertex,
        }
    }
}

/// Reusable breadth-first search state; avoids an O(n) reset per source.
pub(crate) struct Bfs {
    dist: Vec<usize>,
    stamp: Vec<u32>,
    epoch: u32,
    queue: Vec<VertexId>,
}

impl Bfs {
    pub(crate) fn new(n: usize) -> Self {
        Bfs {
            dist: vec![0; n],
            stamp: vec![0; n],
            epoch: 0,
            queue: Vec::with_capacity(n),
        }
    }

    /// Visits vertices reachable from `source` through `allowed` vertices in
    /// at most `max_depth` steps. Returns them in BFS order; `depth` is valid
    /// for each returned vertex.
    pub(crate) fn run<F>(&mut self, g: &Graph, source: VertexId, max_depth: usize, allowed: F) -> &[VertexId]
    where
        F: Fn(VertexId) -> bool,
    {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        self.queue.clear();
        self.queue.push(source);
        self.stamp[source] = self.epoch;
        self.dist[source] = 0;
        let mut head = 0;
        while head < self.queue.len() {
            let u = self.queue[head];
            head += 1;
            let du = self.dist[u];
            if du == max_depth {
                continue;
            }
            for &v in g.neighbors(u) {
                if self.stamp[v] != self.epoch && allowed(v) {
                    self.stamp[v] = self.epoch;
                    self.dist[v] = du + 1;
                    self.queue.push(v);
                }
            }
        }
        &self.queue
    }

}

fn check_inputs(g: &Graph, sigma: &Ordering, x: VertexId) -> Result<()> {
    sigma.check_covers(g)?;
    g.check_vertex(x)
}

/// `W_r[G,σ,x]`, sorted by vertex id.
///
/// Checks each candidate `y ≤σ x` separately: `y` qualifies iff `x` is within
/// distance `r` of `y` in the subgraph induced by the vertices `≥σ y`.
pub fn weakly_reachable_set(g: &Graph, sigma: &Ordering, x: VertexId, r: Radius) -> Result<Vec<VertexId>> {
    check_inputs(g, sigma, x)?;
    let steps = r.steps(g.n());
    let rx = sigma.rank(x);
    let mut out = Vec::new();
    for y in g.vertices() {
        let ry = sigma.rank(y);
        if ry > rx {
            continue;
        }
        let dist = g.bfs_within(x, steps, |v| sigma.rank(v) >= ry);
        if dist[y].is_some() {
            out.push(y);
        }
    }
    Ok(out)
}

/// `S_r[G,σ,x]`, sorted by vertex id.
pub fn strongly_reachable_set(g: &Graph, sigma: &Ordering, x: VertexId, r: Radius) -> Result<Vec<VertexId>> {
    check_inputs(g, sigma, x)?;
    let rx = sigma.rank(x);
    let mut bfs = Bfs::new(g.n());
    let mut set = strong_set_with(g, x, r.steps(g.n()), |v| sigma.rank(v) < rx, &mut bfs);
    set.sort_unstable();
    Ok(set)
}

/// Strongly reachable set of `x` when exactly the vertices satisfying
/// `earlier` precede `x`. Only membership in that set matters, not the order
/// among earlier vertices. Includes `x`.
pub(crate) fn strong_set_with<F>(g: &Graph, x: VertexId, steps: usize, earlier: F, bfs: &mut Bfs) -> Vec<VertexId>
where
    F: Fn(VertexId) -> bool,
{
    let mut out = vec![x];
    let mut seen = HashSet::new();
    let interior: Vec<VertexId> = bfs
        .run(g, x, steps.saturating_sub(1), |v| v != x && !earlier(v))
        .to_vec();
    for u in interior {
        for &y in g.neighbors(u) {
            if earlier(y) && seen.insert(y) {
                out.push(y);
            }
        }
    }
    out
}

/// All weak reachability sets at once: `result[x] = W_r[G,σ,x]`, each listed
/// earliest first. One bounded BFS per target `y` inside `{v ≥σ y}`.
pub fn weak_reach_sets(g: &Graph, sigma: &Ordering, r: Radius) -> Result<Vec<Vec<VertexId>>> {
    sigma.check_covers(g)?;
    let steps = r.steps(g.n());
    let mut sets = vec![Vec::new(); g.n()];
    let mut bfs = Bfs::new(g.n());
    for &y in sigma.position() {
        let ry = sigma.rank(y);
        for &x in bfs.run(g, y, steps, |v| sigma.rank(v) > ry) {
            sets[x].push(y);
        }
    }
    Ok(sets)
}

pub fn wcol_of_ordering(g: &Graph, sigma: &Ordering, r: Radius) -> Result<ReachReport> {
    let per_vertex = weak_reach_sets(g, sigma, r)?.iter().map(Vec::len).collect();
    Ok(ReachReport::new(ReachKind::Weak, r, per_vertex))
}

pub fn scol_of_ordering(g: &Graph, sigma: &Ordering, r: Radius) -> Result<ReachReport> {
    sigma.check_covers(g)?;
    let steps = r.steps(g.n());
    let mut bfs = Bfs::new(g.n());
    let per_vertex = g
        .vertices()
        .map(|x| {
            let rx = sigma.rank(x);
            strong_set_with(g, x, steps, |v| sigma.rank(v) < rx, &mut bfs).len()
        })
        .collect();
    Ok(ReachReport::new(ReachKind::Strong, r, per_vertex))
}

/// `b_r[G,σ,x]`: the maximum number of paths from `x`, each of length between
/// 1 and `r`, ending at a vertex σ-before `x` with all internal vertices
/// σ-after `x`, pairwise disjoint apart from `x`.
pub fn back_connectivity(g: &Graph, sigma: &Ordering, x: VertexId, r: Radius, budget: usize) -> Result<usize> {
    check_inputs(g, sigma, x)?;
    let rx = sigma.rank(x);
    back_connectivity_with(g, x, r.steps(g.n()), |v| sigma.rank(v) < rx, budget)
}

pub fn adm_of_ordering(g: &Graph, sigma: &Ordering, r: Radius, budget: usize) -> Result<ReachReport> {
    sigma.check_covers(g)?;
    let steps = r.steps(g.n());
    let per_vertex = g
        .vertices()
        .map(|x| {
            let rx = sigma.rank(x);
            back_connectivity_with(g, x, steps, |v| sigma.rank(v) < rx, budget).map(|b| b + 1)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ReachReport::new(ReachKind::Adm, r, per_vertex))
}

pub fn report_of_ordering(
    g: &Graph,
    sigma: &Ordering,
    r: Radius,
    kind: ReachKind,
    budget: usize,
) -> Result<ReachReport> {
    match kind {
        ReachKind::Weak => wcol_of_ordering(g, sigma, r),
        ReachKind::Strong => scol_of_ordering(g, sigma, r),
        ReachKind::Adm => adm_of_ordering(g, sigma, r, budget),
    }
}

/// Back-connectivity of `x` when exactly the vertices satisfying `earlier`
/// precede it.
pub(crate) fn back_connectivity_with<F>(g: &Graph, x: VertexId, steps: usize, earlier: F, budget: usize) -> Result<usize>
where
    F: Fn(VertexId) -> bool,
{
    // Direct edges to earlier vertices never conflict with anything else:
    // their ends are distinct and they have no internal vertices.
    let direct: HashSet<VertexId> = g.neighbors(x).iter().copied().filter(|&y| earlier(y)).collect();
    if steps <= 1 {
        return Ok(direct.len());
    }

    // Candidate interiors per remaining endpoint, deduplicated as sets.
    let mut local: HashMap<VertexId, usize> = HashMap::new();
    let mut groups: HashMap<VertexId, HashSet<Vec<usize>>> = HashMap::new();
    let mut enumerated = 0usize;
    let mut path = vec![x];
    let mut on_path = HashSet::from([x]);

    struct Ctx<'a, F> {
        g: &'a Graph,
        steps: usize,
        earlier: &'a F,
        direct: &'a HashSet<VertexId>,
        budget: usize,
    }

    fn dfs<F: Fn(VertexId) -> bool>(
        ctx: &Ctx<'_, F>,
        path: &mut Vec<VertexId>,
        on_path: &mut HashSet<VertexId>,
        local: &mut HashMap<VertexId, usize>,
        groups: &mut HashMap<VertexId, HashSet<Vec<usize>>>,
        enumerated: &mut usize,
    ) -> Result<()> {
        let u = *path.last().unwrap();
        let len = path.len() - 1;
        for &w in ctx.g.neighbors(u) {
            if on_path.contains(&w) {
                continue;
            }
            if (ctx.earlier)(w) {
                if len == 0 || ctx.direct.contains(&w) {
                    continue;
                }
                *enumerated += 1;
                if *enumerated > ctx.budget {
                    return Err(Error::BudgetExceeded { budget: ctx.budget });
                }
                let mut interior = Vec::with_capacity(len);
                for &v in &path[1..] {
                    let fresh = local.len();
                    interior.push(*local.entry(v).or_insert(fresh));
                }
                interior.sort_unstable();
                groups.entry(w).or_default().insert(interior);
            } else if len + 1 < ctx.steps {
                path.push(w);
                on_path.insert(w);
                dfs(ctx, path, on_path, local, groups, enumerated)?;
                on_path.remove(&w);
                path.pop();
            }
        }
        Ok(())
    }

    let ctx = Ctx {
        g,
        steps,
        earlier: &earlier,
        direct: &direct,
        budget,
    };
    dfs(&ctx, &mut path, &mut on_path, &mut local, &mut groups, &mut enumerated)?;

    let words = local.len().div_ceil(64).max(1);
    let mut packing: Vec<Vec<Vec<u64>>> = groups
        .into_values()
        .map(|paths| {
            let mut masks: Vec<Vec<u64>> = paths
                .into_iter()
                .map(|interior| {
                    let mut mask = vec![0u64; words];
                    for i in interior {
                        mask[i / 64] |= 1 << (i % 64);
                    }
                    mask
                })
                .collect();
            masks.sort();
            masks
        })
        .collect();
    packing.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    let mut memo = HashMap::new();
    let used = vec![0u64; words];
    Ok(direct.len() + best_packing(&packing, 0, &used, &mut memo))
}

fn best_packing(groups: &[Vec<Vec<u64>>], idx: usize, used: &[u64], memo: &mut HashMap<(usize, Vec<u64>), usize>) -> usize {
    if idx == groups.len() {
        return 0;
    }
    if let Some(&v) = memo.get(&(idx, used.to_vec())) {
        return v;
    }
    let mut best = best_packing(groups, idx + 1, used, memo);
    let remaining = groups.len() - idx;
    for mask in &groups[idx] {
        if best == remaining {
            break;
        }
        if mask.iter().zip(used).any(|(a, b)| a & b != 0) {
            continue;
        }
        let next: Vec<u64> = mask.iter().zip(used).map(|(a, b)| a | b).collect();
        best = best.max(1 + best_packing(groups, idx + 1, &next, memo));
    }
    memo.insert((idx, used.to_vec()), best);
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn natural(n: usize) -> Ordering {
        Ordering::identity(n)
    }

    #[test]
    fn weak_and_strong_on_path() {
        let g = Graph::path(4);
        let s = natural(4);
        let r2 = Radius::Finite(2);
        assert_eq!(weakly_reachable_set(&g, &s, 2, r2).unwrap(), vec![0, 1, 2]);
        assert_eq!(strongly_reachable_set(&g, &s, 2, r2).unwrap(), vec![1, 2]);
        assert_eq!(wcol_of_ordering(&g, &s, r2).unwrap().value, 3);
        assert_eq!(scol_of_ordering(&g, &s, r2).unwrap().value, 2);
    }

    #[test]
    fn strong_on_five_cycle() {
        let g = Graph::cycle(5);
        let set = strongly_reachable_set(&g, &natural(5), 3, Radius::Finite(2)).unwrap();
        assert_eq!(set, vec![0, 2, 3]);
    }

    #[test]
    fn minimum_vertex_reaches_only_itself() {
        let g = Graph::cycle(5);
        let s = Ordering::new(vec![3, 0, 1, 2, 4]).unwrap();
        for r in [Radius::Finite(1), Radius::Finite(3), Radius::Infinite] {
            assert_eq!(weakly_reachable_set(&g, &s, 3, r).unwrap(), vec![3]);
            assert_eq!(strongly_reachable_set(&g, &s, 3, r).unwrap(), vec![3]);
        }
    }

    #[test]
    fn star_center_last() {
        let g = Graph::star(4);
        let s = Ordering::new(vec![1, 2, 3, 4, 0]).unwrap();
        let r1 = Radius::Finite(1);
        assert_eq!(weakly_reachable_set(&g, &s, 0, r1).unwrap(), vec![0, 1, 2, 3, 4]);
        assert_eq!(back_connectivity(&g, &s, 0, r1, DEFAULT_PATH_BUDGET).unwrap(), 4);
        assert_eq!(adm_of_ordering(&g, &s, r1, DEFAULT_PATH_BUDGET).unwrap().value, 5);
    }

    #[test]
    fn complete_graph_last_vertex() {
        let g = Graph::complete(4);
        let s = Ordering::new(vec![2, 0, 3, 1]).unwrap();
        let r1 = Radius::Finite(1);
        assert_eq!(strongly_reachable_set(&g, &s, 1, r1).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(wcol_of_ordering(&g, &s, r1).unwrap().value, 4);
        assert_eq!(scol_of_ordering(&g, &s, r1).unwrap().value, 4);
    }

    #[test]
    fn single_vertex() {
        let g = Graph::empty(1);
        let s = natural(1);
        for r in [Radius::Finite(1), Radius::Finite(5), Radius::Infinite] {
            assert_eq!(wcol_of_ordering(&g, &s, r).unwrap().value, 1);
            assert_eq!(scol_of_ordering(&g, &s, r).unwrap().value, 1);
            assert_eq!(adm_of_ordering(&g, &s, r, 10).unwrap().value, 1);
        }
        assert_eq!(back_connectivity(&g, &s, 0, Radius::Finite(3), 10).unwrap(), 0);
    }

    #[test]
    fn back_connectivity_on_path() {
        let g = Graph::path(5);
        let b = back_connectivity(&g, &natural(5), 2, Radius::Finite(2), DEFAULT_PATH_BUDGET).unwrap();
        assert_eq!(b, 1);
        let adm = adm_of_ordering(&Graph::path(4), &natural(4), Radius::Finite(1), DEFAULT_PATH_BUDGET).unwrap();
        assert_eq!(adm.value, 2);
    }

    #[test]
    fn back_connectivity_packs_around_shared_interior() {
        // x = 4 last; earlier 0, 1; interior 2, 3 (placed after x).
        // Paths 4-2-0, 4-2-1, 4-3-1: best packing uses 4-2-0 and 4-3-1.
        let g = Graph::from_edges(5, [(4, 2), (4, 3), (2, 0), (2, 1), (3, 1)]).unwrap();
        let s = Ordering::new(vec![0, 1, 4, 2, 3]).unwrap();
        assert_eq!(back_connectivity(&g, &s, 4, Radius::Finite(2), 100).unwrap(), 2);
        assert_eq!(back_connectivity(&g, &s, 4, Radius::Finite(1), 100).unwrap(), 0);
    }

    #[test]
    fn budget_is_reported() {
        // 0 reaches the earlier 4..8 only through the later 1..4.
        let mut edges = vec![(1, 2), (2, 3), (1, 3)];
        for l in 1..4 {
            edges.push((0, l));
            edges.extend((4..8).map(|e| (l, e)));
        }
        let g = Graph::from_edges(8, edges).unwrap();
        let s = Ordering::new(vec![4, 5, 6, 7, 0, 1, 2, 3]).unwrap();
        let err = back_connectivity(&g, &s, 0, Radius::Infinite, 5).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { budget: 5 }));
    }

    #[test]
    fn invalid_vertex() {
        let g = Graph::path(3);
        assert!(weakly_reachable_set(&g, &natural(3), 3, Radius::Finite(1)).is_err());
        assert!(strongly_reachable_set(&g, &natural(2), 0, Radius::Finite(1)).is_err());
    }

    #[test]
    fn report_json_shape() {
        let rep = scol_of_ordering(&Graph::path(3), &natural(3), Radius::Infinite).unwrap();
        let v = serde_json::to_value(&rep).unwrap();
        assert_eq!(v["kind"], "strong");
        assert_eq!(v["r"], "inf");
        assert_eq!(v["value"], 2);
        assert_eq!(v["per_vertex"], serde_json::json!([1, 2, 2]));
    }
}
