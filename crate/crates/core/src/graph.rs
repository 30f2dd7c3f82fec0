//! Simple undirected graphs on dense vertex ids, vertex orderings, and the
//! plain-text formats both are exchanged in.
//!
//! Graph file:
//!
//! ```text
//! # comment lines start with '#'
//! n m
//! u v        (m lines, 0-based ids, u != v)
//! ```
//!
//! Ordering file: `n` whitespace-separated ids, earliest vertex first.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type VertexId = usize;

/// A path-length bound. `Infinite` places no bound on the length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Radius {
    Finite(usize),
    Infinite,
}

impl Radius {
    pub fn finite(r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidParams("radius must be at least 1".into()));
        }
        Ok(Radius::Finite(r))
    }

    /// Maximum number of edges a qualifying path may have in a graph on
    /// `n` vertices. Simple paths never exceed `n - 1` edges, so an infinite
    /// radius becomes `n`.
    pub fn steps(self, n: usize) -> usize {
        match self {
            Radius::Finite(r) => r,
            Radius::Infinite => n.max(1),
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Radius::Infinite)
    }
}

impl fmt::Display for Radius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Radius::Finite(r) => write!(f, "{r}"),
            Radius::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Radius {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "inf" | "infinity" | "INF" | "INFINITY" => Ok(Radius::Infinite),
            _ => {
                let r: usize = s
                    .parse()
                    .map_err(|_| Error::InvalidParams(format!("bad radius '{s}'")))?;
                Radius::finite(r)
            }
        }
    }
}

impl Serialize for Radius {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Radius::Finite(r) => serializer.serialize_u64(*r as u64),
            Radius::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Radius {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(usize),
            Str(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(r) => Radius::finite(r).map_err(serde::de::Error::custom),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Finite simple undirected graph with vertex set `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<Vec<VertexId>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            m: 0,
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list, rejecting loops, repeated edges and
    /// out-of-range ids.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut g = Graph::empty(n);
        let mut seen = HashSet::new();
        for (u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::InvalidParams(format!("self-loop at vertex {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidParams(format!("duplicate edge {u} {v}")));
            }
            g.adj[u].push(v);
            g.adj[v].push(u);
            g.m += 1;
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).expect("complete graph is simple")
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle is simple")
    }

    /// Star with center 0 and leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Self {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star is simple")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.n
    }

    /// Neighbors of `v` in increasing id order.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, n: self.n })
        }
    }

    pub fn without_edge(&self, u: VertexId, v: VertexId) -> Graph {
        Graph::from_edges(self.n, self.edges().filter(|&e| e != (u.min(v), u.max(v))))
            .expect("subgraph of a simple graph is simple")
    }

    /// Graph with every vertex in `removed` isolated (ids are kept).
    pub fn without_vertices(&self, removed: &[VertexId]) -> Graph {
        let mut gone = vec![false; self.n];
        for &v in removed {
            gone[v] = true;
        }
        Graph::from_edges(self.n, self.edges().filter(|&(u, v)| !gone[u] && !gone[v]))
            .expect("subgraph of a simple graph is simple")
    }

    /// Breadth-first distances from `source` inside the subgraph induced by
    /// vertices satisfying `allowed`, explored to depth `max_depth`.
    /// `source` is always entered; unreached vertices get `None`.
    pub fn bfs_within<F>(&self, source: VertexId, max_depth: usize, allowed: F) -> Vec<Option<usize>>
    where
        F: Fn(VertexId) -> bool,
    {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            if du == max_depth {
                continue;
            }
            for &v in &self.adj[u] {
                if dist[v].is_none() && allowed(v) {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Shortest-path length between `x` and `y`, `None` if they lie in
    /// different components.
    pub fn distance(&self, x: VertexId, y: VertexId) -> Result<Option<usize>> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        Ok(self.bfs_within(x, usize::MAX, |_| true)[y])
    }

    /// Component index per vertex, components numbered in order of their
    /// smallest vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n];
        let mut next = 0;
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &v in &self.adj[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().iter().all(|&c| c == 0)
    }

    /// Serializes to the edge-list text format.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.m);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Parses the edge-list text format. Errors carry 1-based line numbers.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let nums = parse_fields(hline, header)?;
        let [n, m] = nums[..] else {
            return Err(Error::parse(hline, "header must be 'n m'"));
        };
        if n == 0 {
            return Err(Error::parse(hline, "graph must have at least one vertex"));
        }

        let mut g = Graph::empty(n);
        let mut seen = HashSet::with_capacity(m);
        let mut last_line = hline;
        for (line, text) in lines {
            last_line = line;
            let fields = parse_fields(line, text)?;
            let [u, v] = fields[..] else {
                return Err(Error::parse(line, "edge line must be 'u v'"));
            };
            if g.m == m {
                return Err(Error::parse(line, format!("more than the declared {m} edges")));
            }
            if u >= n || v >= n {
                return Err(Error::parse(line, format!("vertex id {} >= n = {n}", u.max(v))));
            }
            if u == v {
                return Err(Error::parse(line, format!("self-loop at vertex {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::parse(line, format!("duplicate edge {u} {v}")));
            }
            g.adj[u].push(v);
            g.adj[v].push(u);
            g.m += 1;
        }
        if g.m != m {
            return Err(Error::parse(
                last_line,
                format!("header declares {m} edges, found {}", g.m),
            ));
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        Ok(g)
    }
}

fn parse_fields(line: usize, text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| Error::parse(line, format!("expected a non-negative integer, found '{tok}'")))
        })
        .collect()
}

/// A total order on `0..n`. `position[k]` is the vertex of rank `k`; rank 0
/// is the earliest (smallest) vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ordering {
    position: Vec<VertexId>,
    rank: Vec<usize>,
}

impl Ordering {
    pub fn new(position: Vec<VertexId>) -> Result<Self> {
        let n = position.len();
        let mut rank = vec![usize::MAX; n];
        for (k, &v) in position.iter().enumerate() {
            if v >= n {
                return Err(Error::InvalidOrdering(format!("id {v} out of range 0..{n}")));
            }
            if rank[v] != usize::MAX {
                return Err(Error::InvalidOrdering(format!("id {v} repeated")));
            }
            rank[v] = k;
        }
        Ok(Ordering { position, rank })
    }

    pub fn identity(n: usize) -> Self {
        Ordering {
            position: (0..n).collect(),
            rank: (0..n).collect(),
        }
    }

    /// Parses whitespace-separated ids that must form a permutation of `0..n`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let ids = text
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::InvalidOrdering(format!("'{tok}' is not a vertex id")))
            })
            .collect::<Result<Vec<_>>>()?;
        if ids.len() != n {
            if let Some(&v) = ids.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidOrdering(format!("id {v} out of range 0..{n}")));
            }
            return Err(Error::InvalidOrdering(format!(
                "expected {n} ids, found {}",
                ids.len()
            )));
        }
        Ordering::new(ids)
    }

    pub fn len(&self) -> usize {
        self.position.len()
    }

    pub fn is_empty(&self) -> bool {
        self.position.is_empty()
    }

    pub fn position(&self) -> &[VertexId] {
        &self.position
    }

    pub fn rank(&self, v: VertexId) -> usize {
        self.rank[v]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    pub fn at(&self, k: usize) -> VertexId {
        self.position[k]
    }

    /// `u <_σ v`
    pub fn before(&self, u: VertexId, v: VertexId) -> bool {
        self.rank[u] < self.rank[v]
    }

    /// The σ-smallest element of `set`, if any.
    pub fn min_of<I: IntoIterator<Item = VertexId>>(&self, set: I) -> Option<VertexId> {
        set.into_iter().min_by_key(|&v| self.rank[v])
    }

    pub fn check_covers(&self, g: &Graph) -> Result<()> {
        if self.len() == g.n() {
            Ok(())
        } else {
            Err(Error::Mismatch {
                expected: g.n(),
                found: self.len(),
            })
        }
    }

    /// Restriction of this ordering to `subset`, relabeled to `0..|subset|`.
    pub fn induced(&self, subset: &[VertexId]) -> Result<InducedOrdering> {
        if subset.is_empty() {
            return Err(Error::InvalidParams("induced ordering of an empty set".into()));
        }
        let mut member = vec![false; self.len()];
        for &v in subset {
            if v >= self.len() {
                return Err(Error::InvalidVertex { vertex: v, n: self.len() });
            }
            member[v] = true;
        }
        let vertices: Vec<VertexId> = self.position.iter().copied().filter(|&v| member[v]).collect();
        let ordering = Ordering::identity(vertices.len());
        Ok(InducedOrdering { ordering, vertices })
    }

    pub fn to_text(&self) -> String {
        let mut out = self
            .position
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        out.push('\n');
        out
    }
}

impl Serialize for Ordering {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.position.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Ordering {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let position = Vec::<VertexId>::deserialize(deserializer)?;
        Ordering::new(position).map_err(serde::de::Error::custom)
    }
}

/// An ordering restricted to a vertex subset. Local id `i` stands for the
/// original vertex `vertices[i]`; local ids are assigned in order, so the
/// local ordering is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedOrdering {
    pub ordering: Ordering,
    pub vertices: Vec<VertexId>,
}

impl InducedOrdering {
    /// The induced order expressed in original vertex ids.
    pub fn original_sequence(&self) -> Vec<VertexId> {
        self.ordering.position().iter().map(|&i| self.vertices[i]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_path() {
        let g = Graph::parse("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn parse_single_vertex() {
        let g = Graph::parse("1 0\n").unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn parse_rejects_duplicate_edge_with_line() {
        match Graph::parse("3 2\n0 1\n0 1\n") {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 3);
                assert!(msg.contains("duplicate"), "{msg}");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(Graph::parse("3 2\n0 1\n1 0\n"), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Graph::parse(""), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(Graph::parse("3\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(Graph::parse("3 1\n0 3\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(Graph::parse("3 1\n1 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(Graph::parse("3 2\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(Graph::parse("3 1\n0 1\n1 2\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(Graph::parse("3 1\n0 x\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn parse_skips_comments() {
        let g = Graph::parse("# a path\n3 2\n# middle\n0 1\n\n1 2\n").unwrap();
        assert_eq!(g.edge_count(), 2);
        let err = Graph::parse("# c\n3 2\n0 1\n0 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }));
    }

    #[test]
    fn ordering_parse() {
        assert_eq!(Ordering::parse("0 1 2", 3).unwrap(), Ordering::identity(3));
        let o = Ordering::parse("2 0 1", 3).unwrap();
        assert!(o.before(2, 0) && o.before(0, 1));
        assert_eq!(o.rank(2), 0);
        assert!(Ordering::parse("0 0 1", 3).is_err());
        assert!(Ordering::parse("0 1", 3).is_err());
        assert!(Ordering::parse("0 1 3", 3).is_err());
        assert!(Ordering::parse("0 1 5 2", 3).is_err());
    }

    #[test]
    fn induced_orderings() {
        let s = Ordering::new(vec![2, 0, 1]).unwrap();
        assert_eq!(s.induced(&[0, 1]).unwrap().original_sequence(), vec![0, 1]);
        assert_eq!(s.induced(&[2]).unwrap().original_sequence(), vec![2]);
        let s = Ordering::new(vec![3, 1, 0, 2]).unwrap();
        assert_eq!(s.induced(&[0, 2, 3]).unwrap().original_sequence(), vec![3, 0, 2]);
        assert!(s.induced(&[]).is_err());
        assert!(s.induced(&[7]).is_err());
    }

    #[test]
    fn distances() {
        let p = Graph::path(3);
        assert_eq!(p.distance(0, 2).unwrap(), Some(2));
        assert_eq!(p.distance(1, 1).unwrap(), Some(0));
        assert_eq!(Graph::empty(2).distance(0, 1).unwrap(), None);
        assert!(p.distance(0, 3).is_err());
    }

    #[test]
    fn radius_text_and_json() {
        assert_eq!("3".parse::<Radius>().unwrap(), Radius::Finite(3));
        assert_eq!("inf".parse::<Radius>().unwrap(), Radius::Infinite);
        assert!("0".parse::<Radius>().is_err());
        assert_eq!(serde_json::to_string(&Radius::Infinite).unwrap(), "\"inf\"");
        assert_eq!(serde_json::from_str::<Radius>("2").unwrap(), Radius::Finite(2));
        assert_eq!(Radius::Infinite.steps(7), 7);
    }
}
