//! Definition-level oracles: enumerate every simple path and test the
//! reachability conditions literally. Exponential; meant for graphs with a
//! handful of vertices, as a cross-check of the `reach` module.

use crate::graph::{Graph, Ordering, Radius, VertexId};

/// Every simple path starting at `x` with at most `max_len` edges
/// (including the trivial path `[x]`).
pub fn simple_paths_from(g: &Graph, x: VertexId, max_len: usize) -> Vec<Vec<VertexId>> {
    fn go(g: &Graph, path: &mut Vec<VertexId>, max_len: usize, out: &mut Vec<Vec<VertexId>>) {
        out.push(path.clone());
        if path.len() - 1 == max_len {
            return;
        }
        let u = *path.last().unwrap();
        for &w in g.neighbors(u) {
            if !path.contains(&w) {
                path.push(w);
                go(g, path, max_len, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(g, &mut vec![x], max_len, &mut out);
    out
}

pub fn naive_weak_set(g: &Graph, sigma: &Ordering, x: VertexId, r: Radius) -> Vec<VertexId> {
    let mut out: Vec<VertexId> = simple_paths_from(g, x, r.steps(g.n()))
        .into_iter()
        .filter_map(|p| {
            let y = *p.last().unwrap();
            let ok = sigma.rank(y) <= sigma.rank(x) && p.iter().all(|&v| sigma.rank(v) >= sigma.rank(y));
            ok.then_some(y)
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn naive_strong_set(g: &Graph, sigma: &Ordering, x: VertexId, r: Radius) -> Vec<VertexId> {
    let mut out: Vec<VertexId> = simple_paths_from(g, x, r.steps(g.n()))
        .into_iter()
        .filter_map(|p| {
            let y = *p.last().unwrap();
            let ok = sigma.rank(y) <= sigma.rank(x)
                && p[..p.len() - 1].iter().all(|&v| sigma.rank(v) >= sigma.rank(x));
            ok.then_some(y)
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Largest family of qualifying paths from `x` that pairwise share only
/// `x`, found by trying every subset.
pub fn naive_back_connectivity(g: &Graph, sigma: &Ordering, x: VertexId, r: Radius) -> usize {
    let rx = sigma.rank(x);
    let paths: Vec<Vec<VertexId>> = simple_paths_from(g, x, r.steps(g.n()))
        .into_iter()
        .filter(|p| {
            p.len() >= 2
                && sigma.rank(*p.last().unwrap()) < rx
                && p[1..p.len() - 1].iter().all(|&v| sigma.rank(v) > rx)
        })
        .map(|p| p[1..].to_vec())
        .collect();

    fn go(paths: &[Vec<VertexId>], used: &mut Vec<VertexId>) -> usize {
        let Some((first, rest)) = paths.split_first() else {
            return 0;
        };
        let mut best = go(rest, used);
        if first.iter().all(|v| !used.contains(v)) {
            let before = used.len();
            used.extend_from_slice(first);
            best = best.max(1 + go(rest, used));
            used.truncate(before);
        }
        best
    }
    go(&paths, &mut Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_enumeration_counts() {
        // Triangle: from 0 there are 1 + 2 + 2 simple paths of length <= 2.
        let g = Graph::complete(3);
        assert_eq!(simple_paths_from(&g, 0, 2).len(), 5);
        assert_eq!(simple_paths_from(&g, 0, 1).len(), 3);
    }

    #[test]
    fn spec_examples() {
        let g = Graph::path(4);
        let s = Ordering::identity(4);
        assert_eq!(naive_weak_set(&g, &s, 2, Radius::Finite(2)), vec![0, 1, 2]);
        assert_eq!(naive_strong_set(&g, &s, 2, Radius::Finite(2)), vec![1, 2]);
        let g = Graph::path(5);
        assert_eq!(naive_back_connectivity(&g, &Ordering::identity(5), 2, Radius::Finite(2)), 1);
    }
}
