//! Seeded verification suites. Each suite checks one family of facts over a
//! reproducible corpus and returns a [`CriterionReport`]; `colnum verify`
//! prints them as JSON.
//!
//! Randomness: suite `s` with seed `seed` draws from ChaCha8 stream
//! `(seed, s << 32 | item)`, so items can be evaluated in parallel and in any
//! order without changing the output.

use std::sync::OnceLock;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::counterexample::{build_two_radii_graph, verify_claims, verify_facts, TwoRadiiParams};
use crate::error::{Error, Result};
use crate::exact::{self, ExactOptions};
use crate::graph::{Graph, Ordering, Radius};
use crate::oracle;
use crate::reach::{self, ReachKind, DEFAULT_PATH_BUDGET};
use crate::rng;
use crate::uniform::{self, Layer, PreparedInstance, RunOptions, SigmaProvider, TieBreak, UniformInstance};

const MAX_LISTED_FAILURES: usize = 10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub checked: u64,
    pub failures: Vec<String>,
    pub detail: serde_json::Value,
}

struct Tally {
    checked: u64,
    failed: u64,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checked: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_LISTED_FAILURES {
                self.failures.push(what());
            }
        }
    }

    fn merge(&mut self, other: Tally) {
        self.checked += other.checked;
        self.failed += other.failed;
        for f in other.failures {
            if self.failures.len() < MAX_LISTED_FAILURES {
                self.failures.push(f);
            }
        }
    }

    fn error(&mut self, context: String, err: Error) {
        self.check(false, || format!("{context}: {err}"));
    }

    fn report(self, id: u32, name: &str, detail: serde_json::Value) -> CriterionReport {
        CriterionReport {
            id,
            name: name.to_string(),
            passed: self.failed == 0 && self.checked > 0,
            checked: self.checked,
            failures: self.failures,
            detail,
        }
    }
}

fn item_rng(seed: u64, suite: u64, item: u64) -> rng::Rng {
    rng::stream(seed, suite << 32 | item)
}

/// Every graph on 1 to 6 vertices, one per isomorphism class (208 graphs;
/// 156 of them on exactly 6 vertices).
pub fn small_graph_corpus() -> &'static [Graph] {
    static CORPUS: OnceLock<Vec<Graph>> = OnceLock::new();
    CORPUS.get_or_init(|| (1..=6).flat_map(graphs_up_to_isomorphism).collect())
}

/// One representative (the least edge mask under relabeling) per
/// isomorphism class of graphs on `n` vertices.
pub fn graphs_up_to_isomorphism(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let index = |u: usize, v: usize| pairs.iter().position(|&p| p == (u.min(v), u.max(v))).unwrap();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut maps = Vec::new();
    loop {
        maps.push(pairs.iter().map(|&(u, v)| index(perm[u], perm[v])).collect::<Vec<_>>());
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    (0u32..1 << pairs.len())
        .filter(|&mask| {
            maps.iter().all(|map| {
                let image = map
                    .iter()
                    .enumerate()
                    .filter(|(e, _)| mask >> e & 1 == 1)
                    .fold(0u32, |acc, (_, &f)| acc | 1 << f);
                image >= mask
            })
        })
        .map(|mask| {
            let edges = pairs.iter().enumerate().filter(|(e, _)| mask >> e & 1 == 1).map(|(_, &p)| p);
            Graph::from_edges(n, edges).expect("simple by construction")
        })
        .collect()
}

/// `G(n, p)` random graph.
pub fn random_graph(rng: &mut rng::Rng, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.random_bool(p))
        .collect();
    Graph::from_edges(n, edges).expect("simple by construction")
}

/// Random spanning tree on shuffled labels plus independent extra edges.
pub fn random_connected_graph(rng: &mut rng::Rng, n: usize, p: f64) -> Graph {
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let mut edges = std::collections::BTreeSet::new();
    for v in 1..n {
        let u = rng.random_range(0..v);
        let (a, b) = (labels[u], labels[v]);
        edges.insert((a.min(b), a.max(b)));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.insert((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("simple by construction")
}

fn random_ordering(rng: &mut rng::Rng, n: usize) -> Ordering {
    let mut pos: Vec<usize> = (0..n).collect();
    pos.shuffle(rng);
    Ordering::new(pos).expect("shuffle is a permutation")
}

fn sparse_p(rng: &mut rng::Rng, n: usize) -> f64 {
    if n <= 1 {
        return 0.0;
    }
    let avg_degree = rng.random_range(1.0..4.0);
    (avg_degree / (n - 1) as f64).min(1.0)
}

fn radius_label(r: Radius) -> String {
    r.to_string()
}

const RADII: [Radius; 4] = [Radius::Finite(1), Radius::Finite(2), Radius::Finite(3), Radius::Infinite];

/// Reachability sets equal the all-simple-paths oracle on the small corpus.
pub fn suite_oracle(seed: u64) -> CriterionReport {
    let corpus = small_graph_corpus();
    let tallies: Vec<Tally> = corpus
        .par_iter()
        .enumerate()
        .map(|(gi, g)| {
            let mut t = Tally::new();
            let mut rng = item_rng(seed, 1, gi as u64);
            for _ in 0..5 {
                let sigma = random_ordering(&mut rng, g.n());
                for r in RADII {
                    for x in g.vertices() {
                        let weak = reach::weakly_reachable_set(g, &sigma, x, r).unwrap();
                        let strong = reach::strongly_reachable_set(g, &sigma, x, r).unwrap();
                        let mut all_weak = reach::weak_reach_sets(g, &sigma, r).unwrap()[x].clone();
                        all_weak.sort_unstable();
                        let nw = oracle::naive_weak_set(g, &sigma, x, r);
                        let ns = oracle::naive_strong_set(g, &sigma, x, r);
                        let ctx = || format!("graph #{gi} {:?} sigma {:?} x={x} r={r}", g.to_edge_list(), sigma.position());
                        t.check(weak == nw && all_weak == nw, || format!("weak mismatch: {}", ctx()));
                        t.check(strong == ns, || format!("strong mismatch: {}", ctx()));
                        let b = reach::back_connectivity(g, &sigma, x, r, DEFAULT_PATH_BUDGET);
                        let nb = oracle::naive_back_connectivity(g, &sigma, x, r);
                        t.check(b.as_ref().ok() == Some(&nb), || format!("back-connectivity {b:?} vs {nb}: {}", ctx()));
                    }
                }
            }
            t
        })
        .collect();
    let mut total = Tally::new();
    tallies.into_iter().for_each(|t| total.merge(t));
    total.report(
        1,
        "definition-oracle equivalence",
        json!({ "graphs": corpus.len(), "orderings_per_graph": 5, "radii": RADII.map(radius_label) }),
    )
}

/// `adm_r <= scol_r <= wcol_r <= scol_r^r` per ordering on the corpus and,
/// via exact search, per graph; plus monotonicity in `r` and the collapse of
/// all three at `r = 1`.
pub fn suite_sandwich(seed: u64) -> CriterionReport {
    let corpus = small_graph_corpus();
    let opts = ExactOptions::with_cap(6);
    let tallies: Vec<Tally> = corpus
        .par_iter()
        .enumerate()
        .map(|(gi, g)| {
            let mut t = Tally::new();
            let mut rng = item_rng(seed, 2, gi as u64);
            let name = || format!("graph #{gi} ({})", g.to_edge_list().replace('\n', ";"));
            for _ in 0..5 {
                let sigma = random_ordering(&mut rng, g.n());
                let mut prev: Option<(usize, usize, usize)> = None;
                for r in RADII {
                    let w = reach::wcol_of_ordering(g, &sigma, r).unwrap().value;
                    let s = reach::scol_of_ordering(g, &sigma, r).unwrap().value;
                    let a = reach::adm_of_ordering(g, &sigma, r, DEFAULT_PATH_BUDGET).unwrap().value;
                    t.check(a <= s && s <= w, || format!("{} sigma {:?} r={r}: adm {a} scol {s} wcol {w}", name(), sigma.position()));
                    if let Radius::Finite(rr) = r {
                        t.check(w <= s.pow(rr as u32), || format!("{} r={r}: wcol {w} > scol^r", name()));
                    }
                    if r == Radius::Finite(1) {
                        t.check(a == s && s == w, || format!("{} r=1 collapse fails", name()));
                    }
                    if let Some((pw, ps, pa)) = prev {
                        t.check(pw <= w && ps <= s && pa <= a, || format!("{} not monotone at r={r}", name()));
                    }
                    prev = Some((w, s, a));
                }
            }
            let mut prev: Option<(usize, usize, usize)> = None;
            for rr in 1..=3usize {
                let r = Radius::Finite(rr);
                let ex = |kind| exact::exact_min(g, r, kind, &opts).map(|e| e.value);
                match (ex(ReachKind::Weak), ex(ReachKind::Strong), ex(ReachKind::Adm)) {
                    (Ok(w), Ok(s), Ok(a)) => {
                        t.check(a <= s && s <= w && w <= s.pow(rr as u32), || {
                            format!("{} exact r={rr}: adm {a} scol {s} wcol {w}", name())
                        });
                        if rr == 1 {
                            t.check(a == s && s == w, || format!("{} exact r=1 collapse fails", name()));
                        }
                        if let Some((pw, ps, pa)) = prev {
                            t.check(pw <= w && ps <= s && pa <= a, || format!("{} exact not monotone at r={rr}", name()));
                        }
                        prev = Some((w, s, a));
                    }
                    (w, s, a) => {
                        let err = [w.err(), s.err(), a.err()].into_iter().flatten().next().unwrap();
                        t.error(name(), err);
                    }
                }
            }
            t
        })
        .collect();
    let mut total = Tally::new();
    tallies.into_iter().for_each(|t| total.merge(t));
    total.report(2, "coloring-number sandwich", json!({ "graphs": corpus.len(), "exact_radii": [1, 2, 3] }))
}

/// `scol_∞ = tw + 1` and `wcol_∞ = td` by exact search against the
/// elimination and deletion oracles.
pub fn suite_width_parameters(seed: u64) -> CriterionReport {
    let mut graphs: Vec<Graph> = small_graph_corpus().iter().filter(|g| g.is_connected()).cloned().collect();
    let exhaustive = graphs.len();
    graphs.extend((0..200u64).map(|i| {
        let mut rng = item_rng(seed, 3, i);
        let p = rng.random_range(0.1..0.6);
        random_connected_graph(&mut rng, 7, p)
    }));
    let opts = ExactOptions::with_cap(7);
    let tallies: Vec<Tally> = graphs
        .par_iter()
        .enumerate()
        .map(|(gi, g)| {
            let mut t = Tally::new();
            let s = exact::exact_min(g, Radius::Infinite, ReachKind::Strong, &opts);
            let w = exact::exact_min(g, Radius::Infinite, ReachKind::Weak, &opts);
            let tw = exact::treewidth_oracle(g, 7);
            let td = exact::treedepth_oracle(g, 7);
            match (s, w, tw, td) {
                (Ok(s), Ok(w), Ok(tw), Ok(td)) => {
                    let name = || g.to_edge_list().replace('\n', ";");
                    t.check(s.value == tw + 1, || format!("#{gi} {}: scol_inf {} vs tw+1 {}", name(), s.value, tw + 1));
                    t.check(w.value == td, || format!("#{gi} {}: wcol_inf {} vs td {td}", name(), w.value));
                }
                (s, w, tw, td) => {
                    let err = [s.err(), w.err(), tw.err(), td.err()].into_iter().flatten().next().unwrap();
                    t.error(format!("#{gi}"), err);
                }
            }
            t
        })
        .collect();
    let mut total = Tally::new();
    tallies.into_iter().for_each(|t| total.merge(t));
    total.report(
        3,
        "treewidth and treedepth at infinite radius",
        json!({ "connected_small_graphs": exhaustive, "random_connected_n7": 200 }),
    )
}

fn random_instance(rng: &mut rng::Rng, exact_ok: bool) -> Result<UniformInstance> {
    let n = rng.random_range(2..=30);
    let k = rng.random_range(1..=3);
    let use_exact = exact_ok && n <= 9;
    let layers = (0..k)
        .map(|_| {
            let p = sparse_p(rng, n);
            let graph = random_graph(rng, n, p);
            let r = rng.random_range(1..=3);
            let a = rng.random_range(1..=4);
            let sigma = if use_exact {
                SigmaProvider::Exact(ExactOptions::with_cap(9)).sigma_for(&graph, r, 0)?
            } else {
                exact::degeneracy_ordering(&graph)
            };
            Ok(Layer { graph, r, a, sigma })
        })
        .collect::<Result<Vec<_>>>()?;
    UniformInstance::new(layers)
}

/// The layered bound on 500 random instances under both tie-break policies,
/// with the per-run bookkeeping checks (criterion 4) and the round counts
/// (criterion 10).
pub fn suite_layered_bound(seed: u64) -> (CriterionReport, CriterionReport) {
    let results: Vec<(Tally, Tally, usize)> = (0..500u64)
        .into_par_iter()
        .map(|i| {
            let mut bound = Tally::new();
            let mut rounds = Tally::new();
            let mut rng = item_rng(seed, 4, i);
            let prepared = match random_instance(&mut rng, i % 2 == 0).and_then(PreparedInstance::new) {
                Ok(p) => p,
                Err(e) => {
                    bound.error(format!("instance {i}"), e);
                    return (bound, rounds, 0);
                }
            };
            for (li, c) in prepared.reach_graph_checks.iter().enumerate() {
                bound.check(c.ok, || format!("instance {i} layer {li}: reach_graph_checks {c:?}"));
            }
            let total = prepared.instance.total_weight();
            let n = prepared.instance.n();
            for tie in [TieBreak::Deterministic, TieBreak::Seeded(rng.random())] {
                let outcome = uniform::collect_ordering(&prepared, tie).and_then(|trace| {
                    let checks = uniform::verify_layer_bounds(&prepared, &trace.sigma_star)?;
                    let audit = uniform::audit_partition(&prepared, &trace.sigma_star)?;
                    Ok((trace, checks, audit))
                });
                match outcome {
                    Ok((trace, checks, audit)) => {
                        for c in &checks {
                            bound.check(c.ok, || format!("instance {i} {tie:?}: {c:?}"));
                        }
                        bound.check(trace.collected_after_violations == 0, || {
                            format!("instance {i} {tie:?}: {} collected-neighbour violations", trace.collected_after_violations)
                        });
                        for a in &audit {
                            bound.check(a.ok, || format!("instance {i} {tie:?}: audit {a:?}"));
                        }
                        rounds.check(trace.rounds == (total * n) as u64, || {
                            format!("instance {i} {tie:?}: {} rounds, expected {}", trace.rounds, total * n)
                        });
                        rounds.check(trace.processed_counts.iter().all(|&c| c == total as u64), || {
                            format!("instance {i} {tie:?}: processed counts {:?}", trace.processed_counts)
                        });
                        let mut seen = trace.sigma_star.position().to_vec();
                        seen.sort_unstable();
                        rounds.check(seen == (0..n).collect::<Vec<_>>(), || format!("instance {i}: sigma* not a permutation"));
                    }
                    Err(e) => bound.error(format!("instance {i} {tie:?}"), e),
                }
            }
            (bound, rounds, n)
        })
        .collect();
    let mut bound = Tally::new();
    let mut rounds = Tally::new();
    let mut max_n = 0;
    for (b, r, n) in results {
        bound.merge(b);
        rounds.merge(r);
        max_n = max_n.max(n);
    }
    (
        bound.report(4, "layered uniform-ordering bound", json!({ "instances": 500, "max_n": max_n })),
        rounds.report(10, "collecting-procedure round accounting", json!({ "instances": 500 })),
    )
}

fn wrapper_tally(i: u64, what: &str, rep: Result<uniform::UniformReport>) -> Tally {
    let mut t = Tally::new();
    match rep {
        Ok(rep) => {
            for b in &rep.bounds {
                t.check(b.ok, || format!("{what} {i}: {b:?}"));
            }
            t.check(rep.ok, || format!("{what} {i}: report not ok"));
        }
        Err(e) => t.error(format!("{what} {i}"), e),
    }
    t
}

const WRAPPER_CAP: usize = 12;

/// Dyadic weights with exact witness orderings on 100 graphs, 4 to 12 vertices.
pub fn suite_dyadic(seed: u64) -> CriterionReport {
    let provider = SigmaProvider::Exact(ExactOptions::with_cap(WRAPPER_CAP));
    let tallies: Vec<Tally> = (0..100u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = item_rng(seed, 5, i);
            let n = rng.random_range(4..=12);
            let p = rng.random_range(0.15..0.5);
            let g = random_graph(&mut rng, n, p);
            wrapper_tally(i, "graph", uniform::uniform_single(&g, &provider, RunOptions::default()))
        })
        .collect();
    let mut total = Tally::new();
    tallies.into_iter().for_each(|t| total.merge(t));
    total.report(5, "dyadic uniform ordering", json!({ "graphs": 100, "n_range": [4, 12] }))
}

/// Unit weights over up to three graphs on a shared vertex set.
pub fn suite_multi(seed: u64) -> CriterionReport {
    let provider = SigmaProvider::Exact(ExactOptions::with_cap(WRAPPER_CAP));
    let tallies: Vec<Tally> = (0..100u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = item_rng(seed, 6, i);
            let n = rng.random_range(2..=12);
            let k = rng.random_range(1..=3);
            let pairs: Vec<(Graph, usize)> = (0..k)
                .map(|_| {
                    let p = rng.random_range(0.15..0.5);
                    (random_graph(&mut rng, n, p), rng.random_range(1..=3))
                })
                .collect();
            wrapper_tally(i, "instance", uniform::uniform_multi(&pairs, &provider, RunOptions::default()))
        })
        .collect();
    let mut total = Tally::new();
    tallies.into_iter().for_each(|t| total.merge(t));
    total.report(6, "multi-graph uniform ordering", json!({ "instances": 100 }))
}

/// ε-weighted schedule for ε in {1/2, 1, 2} on 50 graphs each.
pub fn suite_eps(seed: u64) -> CriterionReport {
    let provider = SigmaProvider::Exact(ExactOptions::with_cap(WRAPPER_CAP));
    let epsilons = ["1/2", "1", "2"];
    let jobs: Vec<(usize, u64)> = (0..epsilons.len()).flat_map(|e| (0..50u64).map(move |i| (e, i))).collect();
    let tallies: Vec<Tally> = jobs
        .par_iter()
        .map(|&(e, i)| {
            let eps: BigRational = uniform::parse_rational(epsilons[e]).expect("literal");
            let mut rng = item_rng(seed, 7, i);
            let n = rng.random_range(4..=12);
            let p = rng.random_range(0.15..0.5);
            let g = random_graph(&mut rng, n, p);
            let rep = uniform::uniform_single_eps(&g, &eps, &provider, RunOptions::default());
            wrapper_tally(i, &format!("eps={} graph", epsilons[e]), rep)
        })
        .collect();
    let mut total = Tally::new();
    tallies.into_iter().for_each(|t| total.merge(t));
    total.report(7, "epsilon-weighted uniform ordering", json!({ "epsilons": epsilons, "graphs_per_eps": 50 }))
}

pub const TWO_RADII_CASES: [(usize, usize, usize, usize); 3] = [(4, 4, 2, 4), (4, 8, 2, 4), (4, 6, 1, 3)];

/// Distance facts and the three ordering claims on the counterexample family.
pub fn suite_two_radii(seed: u64) -> CriterionReport {
    let mut t = Tally::new();
    let mut detail = Vec::new();
    for (idx, &(tt, n, r, rp)) in TWO_RADII_CASES.iter().enumerate() {
        let label = format!("(t,n,r,r')=({tt},{n},{r},{rp})");
        let built = TwoRadiiParams::new(tt, n, r, rp).and_then(build_two_radii_graph);
        let g = match built {
            Ok(g) => g,
            Err(e) => {
                t.error(label, e);
                continue;
            }
        };
        t.check(g.graph.n() == g.params.vertex_count(), || format!("{label}: vertex count"));
        let facts = verify_facts(&g);
        t.check(facts.e1, || format!("{label}: E1"));
        t.check(facts.e2, || format!("{label}: E2"));
        t.check(facts.e3, || format!("{label}: E3"));
        match verify_claims(&g, 100, seed.wrapping_add(idx as u64)) {
            Ok(claims) => {
                t.check(claims.zxy_bound.ok, || format!("{label}: claim 1 {:?}", claims.zxy_bound));
                t.check(claims.xzy_bound.ok, || format!("{label}: claim 2 {:?}", claims.xzy_bound));
                for (s, sample) in claims.samples.iter().enumerate() {
                    t.check(sample.ok, || format!("{label}: sample {s} {sample:?}"));
                }
                let min_r = claims.samples.iter().map(|s| s.scol_r).min();
                let min_rp = claims.samples.iter().map(|s| s.scol_r_prime).min();
                detail.push(json!({
                    "params": [tt, n, r, rp],
                    "vertices": g.graph.n(),
                    "zxy_bound": claims.zxy_bound,
                    "xzy_bound": claims.xzy_bound,
                    "threshold_r": claims.threshold_r,
                    "threshold_r_prime": claims.threshold_r_prime,
                    "min_sampled_scol_r": min_r,
                    "min_sampled_scol_r_prime": min_rp,
                }));
            }
            Err(e) => t.error(label, e),
        }
    }
    t.report(8, "counterexample family", json!(detail))
}

pub const SUITES: [&str; 9] = [
    "oracle", "sandwich", "widths", "layered", "collect", "dyadic", "multi", "eps", "two-radii",
];

/// Short names accepted by `colnum verify` in place of the descriptive ones.
const ALIASES: [(&str, &str); 6] = [
    ("prop11", "widths"),
    ("thm41", "layered"),
    ("thm13", "dyadic"),
    ("thm15", "multi"),
    ("cor43", "eps"),
    ("example21", "two-radii"),
];

/// Runs one suite by name, or every suite for `"all"`, in criterion order.
pub fn run(suite: &str, seed: u64) -> Result<Vec<CriterionReport>> {
    let name = ALIASES.iter().find(|(a, _)| *a == suite).map_or(suite, |(_, n)| n);
    let mut out = match name {
        "all" => {
            let (layered, collect) = suite_layered_bound(seed);
            vec![
                suite_oracle(seed),
                suite_sandwich(seed),
                suite_width_parameters(seed),
                layered,
                suite_dyadic(seed),
                suite_multi(seed),
                suite_eps(seed),
                suite_two_radii(seed),
                collect,
            ]
        }
        "oracle" => vec![suite_oracle(seed)],
        "sandwich" => vec![suite_sandwich(seed)],
        "widths" => vec![suite_width_parameters(seed)],
        "layered" => vec![suite_layered_bound(seed).0],
        "collect" => vec![suite_layered_bound(seed).1],
        "dyadic" => vec![suite_dyadic(seed)],
        "multi" => vec![suite_multi(seed)],
        "eps" => vec![suite_eps(seed)],
        "two-radii" => vec![suite_two_radii(seed)],
        other => {
            return Err(Error::InvalidParams(format!(
                "unknown suite '{other}' (expected one of: all, {})",
                SUITES.join(", ")
            )))
        }
    };
    out.sort_by_key(|c| c.id);
    Ok(out)
}
