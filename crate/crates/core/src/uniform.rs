//! One ordering that is simultaneously good for several graphs and radii.
//!
//! Each layer `i` supplies a graph `G_i` on the shared vertex set, a radius
//! `r_i`, a positive weight `a_i` and an ordering `σ_i`. From these we build
//! the reachability graph `H_i` (edge `uv` whenever `u` is weakly
//! `r_i`-reachable from `v` under `σ_i`) and run the collecting procedure:
//! every vertex holds a budget `m_v(i) = a_i` per layer; the current vertex
//! spends one unit of some layer `i`, is appended to `σ*` once its budget is
//! exhausted, and hands over to the `σ_i`-least uncollected vertex of its
//! closed `H_i`-neighbourhood. With `A = Σ a_i` and `w_i = wcol_{2r_i}(G_i, σ_i)`
//! the result satisfies `scol_{r_i}(G_i, σ*) <= (A / a_i) w_i² + w_i`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{self, ExactOptions};
use crate::graph::{Graph, Ordering, Radius, VertexId};
use crate::reach::{self, ReachKind};
use crate::rng;

#[derive(Clone, Debug)]
pub struct Layer {
    pub graph: Graph,
    pub r: usize,
    pub a: usize,
    pub sigma: Ordering,
}

#[derive(Clone, Debug)]
pub struct UniformInstance {
    n: usize,
    layers: Vec<Layer>,
}

impl UniformInstance {
    pub fn new(layers: Vec<Layer>) -> Result<Self> {
        let first = layers
            .first()
            .ok_or_else(|| Error::InvalidParams("instance needs at least one layer".into()))?;
        let n = first.graph.n();
        for layer in &layers {
            if layer.graph.n() != n {
                return Err(Error::Mismatch {
                    expected: n,
                    found: layer.graph.n(),
                });
            }
            if layer.sigma.len() != n {
                return Err(Error::Mismatch {
                    expected: n,
                    found: layer.sigma.len(),
                });
            }
            if layer.r == 0 || layer.a == 0 {
                return Err(Error::InvalidParams("layer radius and weight must be positive".into()));
            }
        }
        Ok(UniformInstance { n, layers })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    /// `A`, the sum of the layer weights.
    pub fn total_weight(&self) -> usize {
        self.layers.iter().map(|l| l.a).sum()
    }
}

/// Graph on the same vertex set with an edge `uv` whenever `u ≠ v` is weakly
/// r-reachable from `v` under `σ`.
pub fn build_reachability_graph(g: &Graph, sigma: &Ordering, r: Radius) -> Result<Graph> {
    let sets = reach::weak_reach_sets(g, sigma, r)?;
    let edges = sets
        .iter()
        .enumerate()
        .flat_map(|(v, set)| set.iter().filter(move |&&u| u != v).map(move |&u| (u, v)));
    Graph::from_edges(g.n(), edges)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReachGraphCheck {
    /// `scol_2(H, σ)`
    pub scol2_h: usize,
    /// `wcol_{2r}(G, σ)`
    pub wcol_g: usize,
    pub ok: bool,
}

/// Compares `scol_2(H, σ)` with `wcol_{2r}(G, σ)`; the first never exceeds
/// the second when `H` is the reachability graph of `(G, σ, r)`.
pub fn check_reachability_graph(h: &Graph, sigma: &Ordering, g: &Graph, r: usize) -> Result<ReachGraphCheck> {
    let scol2_h = reach::scol_of_ordering(h, sigma, Radius::Finite(2))?.value;
    let wcol_g = reach::wcol_of_ordering(g, sigma, Radius::Finite(2 * r))?.value;
    Ok(ReachGraphCheck {
        scol2_h,
        wcol_g,
        ok: scol2_h <= wcol_g,
    })
}

/// An instance with its reachability graphs and `w_i` values computed.
#[derive(Clone, Debug)]
pub struct PreparedInstance {
    pub instance: UniformInstance,
    pub h: Vec<Graph>,
    /// `w_i = wcol_{2r_i}(G_i, σ_i)`
    pub w: Vec<usize>,
    pub reach_graph_checks: Vec<ReachGraphCheck>,
}

impl PreparedInstance {
    pub fn new(instance: UniformInstance) -> Result<Self> {
        let mut h = Vec::new();
        let mut w = Vec::new();
        let mut reach_graph_checks = Vec::new();
        for layer in instance.layers() {
            let hi = build_reachability_graph(&layer.graph, &layer.sigma, Radius::Finite(layer.r))?;
            let check = check_reachability_graph(&hi, &layer.sigma, &layer.graph, layer.r)?;
            w.push(check.wcol_g);
            reach_graph_checks.push(check);
            h.push(hi);
        }
        Ok(PreparedInstance {
            instance,
            h,
            w,
            reach_graph_checks,
        })
    }
}

/// Resolution of the choices the collecting procedure leaves open: which
/// uncollected vertex to start from (or restart with), and which layer to
/// charge when several still have budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "policy", content = "seed")]
pub enum TieBreak {
    /// `σ_1`-least uncollected vertex; smallest layer index with budget left.
    Deterministic,
    /// Uniform choices from a ChaCha8 stream with this seed.
    Seeded(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollectTrace {
    pub sigma_star: Ordering,
    pub rounds: u64,
    pub processed_counts: Vec<u64>,
    /// Per layer, the largest number of collected `H_i`-neighbours `σ_i`-after
    /// an uncollected vertex, observed over the run.
    pub collected_after_max: Vec<usize>,
    /// Times that count exceeded `(A / a_i) · w_i`.
    pub collected_after_violations: usize,
}

enum Chooser {
    Deterministic { cursor: usize },
    Seeded { rng: Box<rng::Rng>, pool: Vec<VertexId>, slot: Vec<usize> },
}

impl Chooser {
    fn new(tie: TieBreak, n: usize) -> Self {
        match tie {
            TieBreak::Deterministic => Chooser::Deterministic { cursor: 0 },
            TieBreak::Seeded(seed) => Chooser::Seeded {
                rng: Box::new(rng::stream(seed, 0x636f_6c6c)),
                pool: (0..n).collect(),
                slot: (0..n).collect(),
            },
        }
    }

    fn fresh(&mut self, first: &Ordering, collected: &[bool]) -> VertexId {
        match self {
            Chooser::Deterministic { cursor } => {
                while collected[first.at(*cursor)] {
                    *cursor += 1;
                }
                first.at(*cursor)
            }
            Chooser::Seeded { rng, pool, .. } => pool[rng.random_range(0..pool.len())],
        }
    }

    fn layer(&mut self, budget: &[usize]) -> usize {
        match self {
            Chooser::Deterministic { .. } => budget.iter().position(|&m| m != 0).unwrap(),
            Chooser::Seeded { rng, .. } => {
                let open: Vec<usize> = (0..budget.len()).filter(|&i| budget[i] != 0).collect();
                open[rng.random_range(0..open.len())]
            }
        }
    }

    fn remove(&mut self, v: VertexId) {
        if let Chooser::Seeded { pool, slot, .. } = self {
            let i = slot[v];
            let last = *pool.last().unwrap();
            pool.swap_remove(i);
            if last != v {
                slot[last] = i;
            }
        }
    }
}

/// Runs the collecting procedure and returns `σ*` with its bookkeeping.
pub fn collect_ordering(prepared: &PreparedInstance, tie: TieBreak) -> Result<CollectTrace> {
    let inst = &prepared.instance;
    let n = inst.n();
    let k = inst.layers().len();
    let total = inst.total_weight();
    let weights: Vec<usize> = inst.layers().iter().map(|l| l.a).collect();

    let mut budget: Vec<Vec<usize>> = vec![weights.clone(); n];
    let mut collected = vec![false; n];
    let mut uncollected = n;
    let mut sigma_star = Vec::with_capacity(n);
    let mut processed = vec![0u64; n];
    let mut rounds = 0u64;
    // seen[i][w]: collected H_i-neighbours of w that come σ_i-after w.
    let mut seen = vec![vec![0usize; n]; k];
    let mut collected_after_max = vec![0usize; k];
    let mut violations = 0usize;

    let mut chooser = Chooser::new(tie, n);
    let first = &inst.layers()[0].sigma;
    if n == 0 {
        return Err(Error::InvalidParams("empty vertex set".into()));
    }
    let mut v = chooser.fresh(first, &collected);

    while uncollected > 0 {
        if collected[v] {
            return Err(Error::Invariant(format!("processing collected vertex {v}")));
        }
        let i = chooser.layer(&budget[v]);
        budget[v][i] = budget[v][i]
            .checked_sub(1)
            .ok_or_else(|| Error::Invariant(format!("budget of vertex {v} went negative")))?;
        rounds += 1;
        processed[v] += 1;

        if budget[v].iter().all(|&m| m == 0) {
            collected[v] = true;
            uncollected -= 1;
            sigma_star.push(v);
            chooser.remove(v);
            for (j, layer) in inst.layers().iter().enumerate() {
                let sj = &layer.sigma;
                for &w in prepared.h[j].neighbors(v) {
                    if !collected[w] && sj.before(w, v) {
                        seen[j][w] += 1;
                        collected_after_max[j] = collected_after_max[j].max(seen[j][w]);
                        if seen[j][w] * layer.a > total * prepared.w[j] {
                            violations += 1;
                        }
                    }
                }
            }
        }
        if uncollected == 0 {
            break;
        }

        let si = &inst.layers()[i].sigma;
        let next = si.min_of(
            prepared.h[i]
                .neighbors(v)
                .iter()
                .copied()
                .chain(std::iter::once(v))
                .filter(|&u| !collected[u]),
        );
        v = match next {
            Some(u) => u,
            None => chooser.fresh(first, &collected),
        };
    }

    Ok(CollectTrace {
        sigma_star: Ordering::new(sigma_star)?,
        rounds,
        processed_counts: processed,
        collected_after_max,
        collected_after_violations: violations,
    })
}

/// Per-layer comparison `scol_{r_i}(G_i, σ*) <= (A / a_i) w_i² + w_i`, the
/// right-hand side kept as a reduced fraction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerCheck {
    pub r: usize,
    pub a: usize,
    pub w: usize,
    pub lhs: usize,
    pub rhs_num: u64,
    pub rhs_den: u64,
    pub ok: bool,
}

pub fn verify_layer_bounds(prepared: &PreparedInstance, sigma_star: &Ordering) -> Result<Vec<LayerCheck>> {
    let total = prepared.instance.total_weight() as u64;
    prepared
        .instance
        .layers()
        .iter()
        .zip(&prepared.w)
        .map(|(layer, &w)| {
            let lhs = reach::scol_of_ordering(&layer.graph, sigma_star, Radius::Finite(layer.r))?.value;
            let (a, w64) = (layer.a as u64, w as u64);
            let num = total * w64 * w64 + a * w64;
            let g = num.gcd(&a);
            let (rhs_num, rhs_den) = (num / g, a / g);
            Ok(LayerCheck {
                r: layer.r,
                a: layer.a,
                w,
                lhs,
                rhs_num,
                rhs_den,
                ok: (lhs as u64) * rhs_den <= rhs_num,
            })
        })
        .collect()
}

/// Size of each part of the strongly reachable set of one vertex, split by
/// where the `σ_i`-least vertex of a witnessing path sits.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditLayer {
    pub r: usize,
    /// Largest `|X1|` (witness minimum is the far end `u`).
    pub max_x1: usize,
    /// Largest `|X2|` (witness minimum is the vertex `w` itself).
    pub max_x2: usize,
    /// Largest `|X3|` (witness minimum strictly before both ends).
    pub max_x3: usize,
    pub violations: usize,
    pub ok: bool,
}

/// Splits every `S_{r_i}(G_i, σ*, w) ∖ {w}` by the `σ_i`-minimum of a shortest
/// witnessing path (lexicographically least among shortest, listed from the
/// far end) and checks the size bound of each part together with the
/// membership facts that justify it.
pub fn audit_partition(prepared: &PreparedInstance, sigma_star: &Ordering) -> Result<Vec<AuditLayer>> {
    let inst = &prepared.instance;
    let total = inst.total_weight();
    let mut out = Vec::new();
    for ((layer, h), &w_i) in inst.layers().iter().zip(&prepared.h).zip(&prepared.w) {
        let g = &layer.graph;
        let si = &layer.sigma;
        let weak = reach::weak_reach_sets(g, si, Radius::Finite(layer.r))?;
        let mut report = AuditLayer {
            r: layer.r,
            ..Default::default()
        };
        for w in g.vertices() {
            let rw = sigma_star.rank(w);
            let interior = |v: VertexId| sigma_star.rank(v) > rw;
            let dist = g.bfs_within(w, layer.r.saturating_sub(1), interior);
            let hop = |v: VertexId| if v == w { Some(0) } else { dist[v] };
            let (mut x1, mut x2, mut x3) = (0usize, 0usize, 0usize);
            for u in reach::strongly_reachable_set(g, sigma_star, w, Radius::Finite(layer.r))? {
                if u == w {
                    continue;
                }
                let path = witness_path(g, u, &hop);
                let p = si.min_of(path.iter().copied()).unwrap();
                if p == u {
                    x1 += 1;
                    if !weak[w].contains(&u) {
                        report.violations += 1;
                    }
                } else if p == w {
                    x2 += 1;
                    if !(h.has_edge(u, w) && si.before(w, u) && sigma_star.before(u, w)) {
                        report.violations += 1;
                    }
                } else {
                    x3 += 1;
                    if !(h.has_edge(p, u) && weak[w].contains(&p) && si.before(p, u)) {
                        report.violations += 1;
                    }
                }
            }
            if x1 + 1 > w_i || x2 * layer.a > total * w_i || x3 * layer.a > (w_i - 1) * total * w_i {
                report.violations += 1;
            }
            report.max_x1 = report.max_x1.max(x1);
            report.max_x2 = report.max_x2.max(x2);
            report.max_x3 = report.max_x3.max(x3);
        }
        report.ok = report.violations == 0;
        out.push(report);
    }
    Ok(out)
}

/// Shortest path from `u` to the BFS root, choosing the smallest-id neighbour
/// one step closer at every hop. `hop(v)` is the distance of `v` from the
/// root through admissible vertices.
fn witness_path<F>(g: &Graph, u: VertexId, hop: &F) -> Vec<VertexId>
where
    F: Fn(VertexId) -> Option<usize>,
{
    let mut path = vec![u];
    let mut current = g
        .neighbors(u)
        .iter()
        .copied()
        .filter_map(|v| hop(v).map(|d| (d, v)))
        .min()
        .expect("strongly reachable vertex has a witness");
    loop {
        path.push(current.1);
        if current.0 == 0 {
            return path;
        }
        let d = current.0 - 1;
        let v = *g
            .neighbors(current.1)
            .iter()
            .find(|&&v| hop(v) == Some(d))
            .expect("BFS layers are connected");
        current = (d, v);
    }
}

/// Where the per-layer orderings `σ_i` come from.
#[derive(Clone, Debug)]
pub enum SigmaProvider {
    /// Optimal orderings for `wcol_{2r_i}` by exact search.
    Exact(ExactOptions),
    /// Smallest-last ordering of each layer graph.
    Degeneracy,
    /// Caller-supplied orderings, one per layer.
    Fixed(Vec<Ordering>),
}

impl SigmaProvider {
    pub fn sigma_for(&self, g: &Graph, r: usize, layer: usize) -> Result<Ordering> {
        match self {
            SigmaProvider::Exact(opts) => Ok(exact::exact_min(g, Radius::Finite(2 * r), ReachKind::Weak, opts)?.witness),
            SigmaProvider::Degeneracy => Ok(exact::degeneracy_ordering(g)),
            SigmaProvider::Fixed(list) => {
                let sigma = list
                    .get(layer)
                    .or(list.last())
                    .cloned()
                    .ok_or_else(|| Error::InvalidParams("no ordering supplied".into()))?;
                sigma.check_covers(g)?;
                Ok(sigma)
            }
        }
    }
}

/// Distance-specific bound checked by the wrappers:
/// `scol_r(G_i, σ*) <= bound · w_i²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub r: usize,
    pub w: usize,
    pub lhs: usize,
    /// Coefficient of `w²`, as a reduced fraction in decimal.
    pub coeff_num: String,
    pub coeff_den: String,
    pub ok: bool,
}

fn bound_check(r: usize, w: usize, lhs: usize, coeff: &BigRational) -> BoundCheck {
    let bound = coeff * BigRational::from_integer(BigInt::from(w * w));
    BoundCheck {
        r,
        w,
        lhs,
        coeff_num: coeff.numer().to_string(),
        coeff_den: coeff.denom().to_string(),
        ok: BigRational::from_integer(BigInt::from(lhs)) <= bound,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformReport {
    pub mode: String,
    pub k: usize,
    pub weights: Vec<usize>,
    pub total_weight: usize,
    pub sigma_star: Ordering,
    pub rounds: u64,
    pub processed_exactly_a: bool,
    pub layers: Vec<LayerCheck>,
    pub reach_graph_checks: Vec<ReachGraphCheck>,
    pub collected_after_max: Vec<usize>,
    pub collected_after_violations: usize,
    pub bounds: Vec<BoundCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub audit: Option<Vec<AuditLayer>>,
    pub ok: bool,
}

impl UniformReport {
    fn finish(mut self) -> Self {
        self.ok = self.processed_exactly_a
            && self.rounds == (self.total_weight * self.sigma_star.len()) as u64
            && self.layers.iter().all(|c| c.ok)
            && self.reach_graph_checks.iter().all(|c| c.ok)
            && self.collected_after_violations == 0
            && self.bounds.iter().all(|b| b.ok)
            && self.audit.as_ref().is_none_or(|a| a.iter().all(|l| l.ok));
        self
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub tie: TieBreak,
    pub audit: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            tie: TieBreak::Deterministic,
            audit: false,
        }
    }
}

/// Collecting procedure plus every check on a raw instance.
pub fn run_instance(instance: UniformInstance, opts: RunOptions) -> Result<UniformReport> {
    run_prepared(&PreparedInstance::new(instance)?, "instance", opts, |_| Vec::new())
}

fn run_prepared<F>(prepared: &PreparedInstance, mode: &str, opts: RunOptions, bounds: F) -> Result<UniformReport>
where
    F: FnOnce(&[LayerCheck]) -> Vec<BoundCheck>,
{
    let trace = collect_ordering(prepared, opts.tie)?;
    let layers = verify_layer_bounds(prepared, &trace.sigma_star)?;
    let audit = if opts.audit {
        Some(audit_partition(prepared, &trace.sigma_star)?)
    } else {
        None
    };
    let total = prepared.instance.total_weight();
    Ok(UniformReport {
        mode: mode.to_string(),
        k: prepared.instance.layers().len(),
        weights: prepared.instance.layers().iter().map(|l| l.a).collect(),
        total_weight: total,
        sigma_star: trace.sigma_star.clone(),
        rounds: trace.rounds,
        processed_exactly_a: trace.processed_counts.iter().all(|&c| c == total as u64),
        bounds: bounds(&layers),
        layers,
        reach_graph_checks: prepared.reach_graph_checks.clone(),
        collected_after_max: trace.collected_after_max,
        collected_after_violations: trace.collected_after_violations,
        audit,
        ok: false,
    }
    .finish())
}

fn layers_for(g: &Graph, radii_weights: &[(usize, usize)], provider: &SigmaProvider) -> Result<UniformInstance> {
    let layers = radii_weights
        .iter()
        .enumerate()
        .map(|(idx, &(r, a))| {
            Ok(Layer {
                graph: g.clone(),
                r,
                a,
                sigma: provider.sigma_for(g, r, idx)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    UniformInstance::new(layers)
}

/// Number of dyadic layers used for a graph on `n >= 4` vertices:
/// `floor(log2(n - 2))`.
pub fn dyadic_depth(n: usize) -> usize {
    assert!(n >= 4);
    (n - 2).ilog2() as usize
}

/// Dyadic weights `a_i = 2^(k-i)` on radii `1..=k`, checking
/// `scol_i(G, σ*) <= (2^i + 1) w_i²` for each `i <= k`. Graphs with at most
/// three vertices get the identity ordering and no checks.
pub fn uniform_single(g: &Graph, provider: &SigmaProvider, opts: RunOptions) -> Result<UniformReport> {
    if g.n() <= 3 {
        return Ok(UniformReport {
            mode: "dyadic".into(),
            k: 0,
            weights: Vec::new(),
            total_weight: 0,
            sigma_star: Ordering::identity(g.n()),
            rounds: 0,
            processed_exactly_a: true,
            layers: Vec::new(),
            reach_graph_checks: Vec::new(),
            collected_after_max: Vec::new(),
            collected_after_violations: 0,
            bounds: Vec::new(),
            audit: opts.audit.then(Vec::new),
            ok: true,
        });
    }
    let k = dyadic_depth(g.n());
    let spec: Vec<(usize, usize)> = (1..=k).map(|i| (i, 1usize << (k - i))).collect();
    let prepared = PreparedInstance::new(layers_for(g, &spec, provider)?)?;
    run_prepared(&prepared, "dyadic", opts, |layers| {
        layers
            .iter()
            .map(|c| {
                let coeff = BigRational::from_integer(BigInt::from((1u64 << c.r) + 1));
                bound_check(c.r, c.w, c.lhs, &coeff)
            })
            .collect()
    })
}

fn rational_pow(base: &BigRational, exp: usize) -> BigRational {
    (0..exp).fold(BigRational::one(), |acc, _| acc * base)
}

/// Layer count and weights for the ε-variant: `k` is the least positive
/// integer with `(1+ε)^(k+2) / ε² + 1 >= n`, and
/// `a_i = ceil((1+ε)^(k+1-i) - 1)`.
pub fn eps_schedule(n: usize, eps: &BigRational) -> Result<(usize, Vec<usize>)> {
    if !eps.is_positive() {
        return Err(Error::InvalidParams("epsilon must be positive".into()));
    }
    let one = BigRational::one();
    let base = &one + eps;
    let eps_sq = eps * eps;
    let target = BigRational::from_integer(BigInt::from(n));
    let mut k = 1;
    while rational_pow(&base, k + 2) / &eps_sq + &one < target {
        k += 1;
    }
    let weights = (1..=k)
        .map(|i| {
            let a = (rational_pow(&base, k + 1 - i) - &one).ceil().to_integer();
            usize::try_from(a).map_err(|_| Error::InvalidParams("weight does not fit in usize".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let total = BigRational::from_integer(BigInt::from(weights.iter().sum::<usize>()));
    if total >= rational_pow(&base, k + 1) / eps {
        return Err(Error::Invariant(format!(
            "total weight {total} not below (1+eps)^(k+1)/eps for k = {k}"
        )));
    }
    Ok((k, weights))
}

/// ε-weighted variant: checks `scol_i(G, σ*) <= ((1+ε)^(i+1)/ε² + 1) w_i²`.
pub fn uniform_single_eps(g: &Graph, eps: &BigRational, provider: &SigmaProvider, opts: RunOptions) -> Result<UniformReport> {
    let (k, weights) = eps_schedule(g.n(), eps)?;
    let spec: Vec<(usize, usize)> = (1..=k).zip(weights).collect();
    let prepared = PreparedInstance::new(layers_for(g, &spec, provider)?)?;
    let base = BigRational::one() + eps;
    let eps_sq = eps * eps;
    run_prepared(&prepared, "eps", opts, |layers| {
        layers
            .iter()
            .map(|c| {
                let coeff = rational_pow(&base, c.r + 1) / &eps_sq + BigRational::one();
                bound_check(c.r, c.w, c.lhs, &coeff)
            })
            .collect()
    })
}

/// Several graphs on one vertex set, all weights 1: checks
/// `scol_{r_i}(G_i, σ*) <= (k + 1) w_i²`.
pub fn uniform_multi(pairs: &[(Graph, usize)], provider: &SigmaProvider, opts: RunOptions) -> Result<UniformReport> {
    let layers = pairs
        .iter()
        .enumerate()
        .map(|(idx, (g, r))| {
            Ok(Layer {
                graph: g.clone(),
                r: *r,
                a: 1,
                sigma: provider.sigma_for(g, *r, idx)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let prepared = PreparedInstance::new(UniformInstance::new(layers)?)?;
    let k = pairs.len();
    run_prepared(&prepared, "multi", opts, |layers| {
        let coeff = BigRational::from_integer(BigInt::from(k + 1));
        layers.iter().map(|c| bound_check(c.r, c.w, c.lhs, &coeff)).collect()
    })
}

/// Parses `p/q`, a decimal such as `0.5`, or an integer.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::InvalidParams(format!("'{text}' is not a rational number"));
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    let (int, frac) = t.split_once('.').unwrap_or((t, ""));
    if !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let num: BigInt = digits.parse().map_err(|_| bad())?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    Ok(BigRational::new(num, den))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SigmaSpec {
    Explicit(Vec<VertexId>),
    Named(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LayerFile {
    pub edges: Vec<[VertexId; 2]>,
    pub r: usize,
    pub a: usize,
    pub sigma: SigmaSpec,
}

/// JSON instance file: `{ "n", "layers": [{ "edges", "r", "a", "sigma" }] }`
/// where `sigma` is a permutation, `"exact"` or `"degeneracy"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    pub layers: Vec<LayerFile>,
}

impl InstanceFile {
    pub fn into_instance(self, exact: &ExactOptions) -> Result<UniformInstance> {
        let layers = self
            .layers
            .into_iter()
            .map(|l| {
                let graph = Graph::from_edges(self.n, l.edges.iter().map(|e| (e[0], e[1])))?;
                let sigma = match l.sigma {
                    SigmaSpec::Explicit(p) => {
                        let s = Ordering::new(p)?;
                        s.check_covers(&graph)?;
                        s
                    }
                    SigmaSpec::Named(name) => match name.as_str() {
                        "exact" => SigmaProvider::Exact(*exact).sigma_for(&graph, l.r, 0)?,
                        "degeneracy" => exact::degeneracy_ordering(&graph),
                        other => return Err(Error::InvalidParams(format!("unknown sigma source '{other}'"))),
                    },
                };
                Ok(Layer {
                    graph,
                    r: l.r,
                    a: l.a,
                    sigma,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        UniformInstance::new(layers)
    }
}
