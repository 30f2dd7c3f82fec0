//! Exact (exponential) optimisation over orderings, independent treewidth
//! and treedepth oracles, and the smallest-last heuristic.
//!
//! All exact routines work on vertex bitmasks and are limited to graphs with
//! at most 64 vertices; a configurable cap (default 10) guards against
//! accidental use on large inputs.

use std::collections::{BTreeSet, HashMap};

use log::debug;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Ordering, Radius, VertexId};
use crate::reach::{self, back_connectivity_with, strong_set_with, Bfs, ReachKind};

pub const DEFAULT_EXACT_CAP: usize = 10;
const MASK_LIMIT: usize = 64;

#[derive(Clone, Copy, Debug)]
pub struct ExactOptions {
    /// Largest vertex count accepted by the exact searches.
    pub cap: usize,
    /// Candidate-path budget for back-connectivity evaluations.
    pub path_budget: usize,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            cap: DEFAULT_EXACT_CAP,
            path_budget: reach::DEFAULT_PATH_BUDGET,
        }
    }
}

impl ExactOptions {
    pub fn with_cap(cap: usize) -> Self {
        ExactOptions {
            cap,
            ..Default::default()
        }
    }

    fn check(&self, g: &Graph) -> Result<()> {
        let cap = self.cap.min(MASK_LIMIT);
        if g.n() > cap {
            Err(Error::CapExceeded { n: g.n(), cap })
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactResult {
    pub kind: ReachKind,
    pub r: Radius,
    pub value: usize,
    pub witness: Ordering,
    /// Search nodes expanded (orderings, for the exhaustive variant).
    pub explored: u64,
}

fn bits(mut mask: u64) -> impl Iterator<Item = VertexId> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

fn adjacency_masks(g: &Graph) -> Vec<u64> {
    g.vertices()
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
        .collect()
}

fn components_of(adj: &[u64], mut mask: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while mask != 0 {
        let start = mask & mask.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let next = bits(frontier).fold(0u64, |m, v| m | adj[v]) & mask & !comp;
            comp |= next;
            frontier = next;
        }
        out.push(comp);
        mask &= !comp;
    }
    out
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Minimum of the weak/strong coloring number or admissibility over all
/// orderings of `g`, with a witness ordering.
pub fn exact_min(g: &Graph, r: Radius, kind: ReachKind, opts: &ExactOptions) -> Result<ExactResult> {
    opts.check(g)?;
    let start = degeneracy_ordering(g);
    let seed = reach::report_of_ordering(g, &start, r, kind, opts.path_budget)?.value;
    let result = match kind {
        ReachKind::Weak => WeakSearch::new(g, r).solve(start, seed),
        ReachKind::Strong | ReachKind::Adm => PrefixSearch::new(g, r, kind, opts.path_budget).solve(start, seed)?,
    };
    debug!(
        "exact {kind} r={r} n={}: value {} after {} nodes",
        g.n(),
        result.1,
        result.2
    );
    Ok(ExactResult {
        kind,
        r,
        value: result.1,
        witness: result.0,
        explored: result.2,
    })
}

/// Branch-and-bound over ordering prefixes for the strong coloring number and
/// admissibility. Under both measures the value at `x` depends only on which
/// vertices precede `x`, so a prefix set reached again with a partial maximum
/// no better than before is pruned.
struct PrefixSearch<'a> {
    g: &'a Graph,
    steps: usize,
    kind: ReachKind,
    budget: usize,
    full: u64,
    incumbent: usize,
    best: Vec<VertexId>,
    order: Vec<VertexId>,
    seen: HashMap<u64, usize>,
    costs: HashMap<(u64, VertexId), usize>,
    bfs: Bfs,
    explored: u64,
}

impl<'a> PrefixSearch<'a> {
    fn new(g: &'a Graph, r: Radius, kind: ReachKind, budget: usize) -> Self {
        PrefixSearch {
            g,
            steps: r.steps(g.n()),
            kind,
            budget,
            full: full_mask(g.n()),
            incumbent: usize::MAX,
            best: Vec::new(),
            order: Vec::with_capacity(g.n()),
            seen: HashMap::new(),
            costs: HashMap::new(),
            bfs: Bfs::new(g.n()),
            explored: 0,
        }
    }

    fn solve(mut self, start: Ordering, value: usize) -> Result<(Ordering, usize, u64)> {
        self.incumbent = value;
        self.best = start.position().to_vec();
        self.search(0, 0)?;
        Ok((Ordering::new(self.best).expect("search yields a permutation"), self.incumbent, self.explored))
    }

    fn cost(&mut self, placed: u64, x: VertexId) -> Result<usize> {
        if let Some(&c) = self.costs.get(&(placed, x)) {
            return Ok(c);
        }
        let earlier = |v: VertexId| placed >> v & 1 == 1;
        let c = match self.kind {
            ReachKind::Strong => strong_set_with(self.g, x, self.steps, earlier, &mut self.bfs).len(),
            _ => back_connectivity_with(self.g, x, self.steps, earlier, self.budget)? + 1,
        };
        self.costs.insert((placed, x), c);
        Ok(c)
    }

    fn search(&mut self, placed: u64, partial: usize) -> Result<()> {
        self.explored += 1;
        if placed == self.full {
            if partial < self.incumbent {
                self.incumbent = partial;
                self.best = self.order.clone();
            }
            return Ok(());
        }
        match self.seen.get(&placed) {
            Some(&p) if p <= partial => return Ok(()),
            _ => {
                self.seen.insert(placed, partial);
            }
        }
        let mut children = Vec::new();
        for x in bits(self.full & !placed) {
            let c = self.cost(placed, x)?.max(partial);
            if c < self.incumbent {
                children.push((c, x));
            }
        }
        children.sort_unstable();
        for (c, x) in children {
            if c >= self.incumbent {
                break;
            }
            self.order.push(x);
            self.search(placed | 1 << x, c)?;
            self.order.pop();
        }
        Ok(())
    }
}

/// Exact weak coloring number. Vertices are placed earliest first; placing
/// `y` adds `y` to the weak set of every unplaced vertex within distance `r`
/// of `y` among the unplaced vertices, and closes the weak set of `y`.
/// Different components of the unplaced part never interact again, so each
/// is solved on its own.
struct WeakSearch {
    adj: Vec<u64>,
    steps: usize,
    n: usize,
    limit: usize,
    memo: HashMap<(u64, Vec<u8>), Option<Vec<VertexId>>>,
    explored: u64,
}

impl WeakSearch {
    fn new(g: &Graph, r: Radius) -> Self {
        WeakSearch {
            adj: adjacency_masks(g),
            steps: r.steps(g.n()),
            n: g.n(),
            limit: 0,
            memo: HashMap::new(),
            explored: 0,
        }
    }

    fn solve(mut self, start: Ordering, upper: usize) -> (Ordering, usize, u64) {
        // wcol_r >= wcol_1, the coloring number, which smallest-last attains.
        let lower = coloring_number(&self.adj, &start);
        for limit in lower..upper {
            self.limit = limit;
            self.memo.clear();
            let counts = vec![0u8; self.n];
            let mut order = Vec::with_capacity(self.n);
            let mut ok = true;
            for comp in components_of(&self.adj, full_mask(self.n)) {
                match self.feasible(comp, &counts) {
                    Some(part) => order.extend(part),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                let witness = Ordering::new(order).expect("search yields a permutation");
                return (witness, limit, self.explored);
            }
        }
        (start, upper, self.explored)
    }

    fn ball(&self, comp: u64, y: VertexId) -> u64 {
        let mut ball = 1u64 << y;
        let mut frontier = ball;
        for _ in 0..self.steps {
            let next = bits(frontier).fold(0u64, |m, v| m | self.adj[v]) & comp & !ball;
            if next == 0 {
                break;
            }
            ball |= next;
            frontier = next;
        }
        ball
    }

    fn feasible(&mut self, comp: u64, counts: &[u8]) -> Option<Vec<VertexId>> {
        self.explored += 1;
        let key = (comp, bits(comp).map(|v| counts[v]).collect::<Vec<_>>());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let mut candidates: Vec<VertexId> = bits(comp).collect();
        candidates.sort_by_key(|&v| (std::cmp::Reverse((self.adj[v] & comp).count_ones()), v));

        let mut found = None;
        'next: for y in candidates {
            if counts[y] as usize + 1 > self.limit {
                continue;
            }
            let ball = self.ball(comp, y) & !(1u64 << y);
            let mut updated = counts.to_vec();
            for x in bits(ball) {
                updated[x] += 1;
                if updated[x] as usize + 1 > self.limit {
                    continue 'next;
                }
            }
            let mut order = vec![y];
            for part in components_of(&self.adj, comp & !(1u64 << y)) {
                match self.feasible(part, &updated) {
                    Some(sub) => order.extend(sub),
                    None => continue 'next,
                }
            }
            found = Some(order);
            break;
        }
        self.memo.insert(key, found.clone());
        found
    }
}

fn coloring_number(adj: &[u64], sigma: &Ordering) -> usize {
    let mut before = 0u64;
    let mut best = 0;
    for &v in sigma.position() {
        best = best.max((adj[v] & before).count_ones() as usize + 1);
        before |= 1 << v;
    }
    best
}

/// Minimum over all `n!` orderings by plain enumeration, no pruning.
/// Reference for the branch-and-bound searches on tiny graphs.
pub fn exhaustive_min(g: &Graph, r: Radius, kind: ReachKind, path_budget: usize) -> Result<ExactResult> {
    let mut perm: Vec<VertexId> = g.vertices().collect();
    let mut best: Option<(usize, Vec<VertexId>)> = None;
    let mut explored = 0u64;
    loop {
        explored += 1;
        let sigma = Ordering::new(perm.clone())?;
        let value = reach::report_of_ordering(g, &sigma, r, kind, path_budget)?.value;
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, perm.clone()));
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let (value, witness) = best.expect("at least one ordering");
    Ok(ExactResult {
        kind,
        r,
        value,
        witness: Ordering::new(witness)?,
        explored,
    })
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Treewidth by simulated vertex elimination: eliminating `v` turns its
/// remaining neighbourhood into a clique, and the width of an elimination
/// order is the largest neighbourhood met. Memoised on the set of remaining
/// vertices, which determines the filled graph.
pub fn treewidth_oracle(g: &Graph, cap: usize) -> Result<usize> {
    ExactOptions::with_cap(cap).check(g)?;
    fn eliminate(remaining: u64, adj: &[u64], memo: &mut HashMap<u64, usize>) -> usize {
        if remaining.count_ones() <= 1 {
            return 0;
        }
        if let Some(&w) = memo.get(&remaining) {
            return w;
        }
        let mut best = usize::MAX;
        for v in bits(remaining) {
            let nb = adj[v] & remaining & !(1 << v);
            let deg = nb.count_ones() as usize;
            if deg >= best {
                continue;
            }
            let mut filled = adj.to_vec();
            for u in bits(nb) {
                filled[u] |= nb & !(1 << u);
            }
            best = best.min(deg.max(eliminate(remaining & !(1 << v), &filled, memo)));
        }
        memo.insert(remaining, best);
        best
    }
    let adj = adjacency_masks(g);
    Ok(eliminate(full_mask(g.n()), &adj, &mut HashMap::new()))
}

/// Treedepth from the recursion td = max over components, and for a
/// connected graph 1 + min over deleted vertices.
pub fn treedepth_oracle(g: &Graph, cap: usize) -> Result<usize> {
    ExactOptions::with_cap(cap).check(g)?;
    fn td(mask: u64, adj: &[u64], memo: &mut HashMap<u64, usize>) -> usize {
        match mask.count_ones() {
            0 => return 0,
            1 => return 1,
            _ => {}
        }
        if let Some(&d) = memo.get(&mask) {
            return d;
        }
        let comps = components_of(adj, mask);
        let d = if comps.len() > 1 {
            comps.into_iter().map(|c| td(c, adj, memo)).max().unwrap()
        } else {
            1 + bits(mask).map(|v| td(mask & !(1 << v), adj, memo)).min().unwrap()
        };
        memo.insert(mask, d);
        d
    }
    let adj = adjacency_masks(g);
    Ok(td(full_mask(g.n()), &adj, &mut HashMap::new()))
}

/// Smallest-last ordering: repeatedly remove a vertex of minimum remaining
/// degree (smallest id on ties) and place it after all vertices still
/// present. The result attains the coloring number.
pub fn degeneracy_ordering(g: &Graph) -> Ordering {
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, VertexId)> = g.vertices().map(|v| (deg[v], v)).collect();
    let mut removed = vec![false; g.n()];
    let mut sequence = Vec::with_capacity(g.n());
    while let Some((_, v)) = queue.pop_first() {
        removed[v] = true;
        sequence.push(v);
        for &u in g.neighbors(v) {
            if !removed[u] {
                queue.remove(&(deg[u], u));
                deg[u] -= 1;
                queue.insert((deg[u], u));
            }
        }
    }
    sequence.reverse();
    Ordering::new(sequence).expect("every vertex removed once")
}
