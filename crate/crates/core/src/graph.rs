//! Simple undirected graphs with bitset adjacency, and the edge-list file format.
//!
//! The on-disk format is a header line `n m` followed by `m` lines `u v`.
//! Emission is canonical: `u < v`, edges in ascending lexicographic order,
//! every line terminated by `\n`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::perm::Perm;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    rows: Vec<FixedBitSet>,
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n(), self.edge_count)
    }
}

impl Graph {
    /// Builds a graph on `n` vertices. Repeated pairs collapse to one edge.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        Ok(Graph::from_rows(rows))
    }

    fn from_rows(rows: Vec<FixedBitSet>) -> Graph {
        let adj: Vec<Vec<usize>> = rows.iter().map(|r| r.ones().collect()).collect();
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { rows, adj, edge_count }
    }

    pub fn empty(n: usize) -> Graph {
        Graph::from_rows(vec![FixedBitSet::with_capacity(n); n])
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).expect("complete graph edges are valid")
    }

    pub fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are valid")
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn row(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// The common degree, if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|a| a.len() == d).then_some(d)
    }

    /// Edges with `u < v`, ascending lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(u, r)| {
                let mut c = r.clone();
                c.toggle_range(..);
                c.set(u, false);
                c
            })
            .collect::<Vec<_>>();
        debug_assert!(rows.iter().all(|r| r.len() == n));
        Graph::from_rows(rows)
    }

    /// Component id per vertex and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = count;
                        queue.push_back(v);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().1 == 1
    }

    /// Length of a shortest cycle; `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        for s in 0..n {
            dist.fill(usize::MAX);
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        let len = dist[u] + dist[v] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Relabels vertex `v` as `p(v)`.
    pub fn relabel(&self, p: &Perm) -> Result<Graph> {
        if p.degree() != self.n() {
            return Err(Error::DegreeMismatch(p.degree(), self.n()));
        }
        Graph::from_edges(self.n(), self.edges().map(|(u, v)| (p.apply(u), p.apply(v))))
    }

    /// True iff `a` maps edges to edges (and hence, being a bijection, non-edges to non-edges).
    pub fn is_automorphism(&self, a: &Perm) -> Result<bool> {
        if a.degree() != self.n() {
            return Err(Error::DegreeMismatch(a.degree(), self.n()));
        }
        Ok(self.edges().all(|(u, v)| self.has_edge(a.apply(u), a.apply(v))))
    }

    /// Removes every edge whose endpoints lie in the same orbit of `a`.
    pub fn remove_intra_orbit_edges(&self, a: &Perm) -> Result<Graph> {
        if a.degree() != self.n() {
            return Err(Error::DegreeMismatch(a.degree(), self.n()));
        }
        let orbit_of = a.orbits().orbit_of;
        Graph::from_edges(
            self.n(),
            self.edges().filter(|&(u, v)| orbit_of[u] != orbit_of[v]),
        )
    }

    pub fn to_edgelist(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {}", self.n(), self.edge_count).unwrap();
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    pub fn parse_edgelist(text: &str) -> Result<Graph> {
        let body = text.strip_suffix('\n').unwrap_or(text);
        let mut lines = body.split('\n').enumerate().map(|(i, l)| (i + 1, l));
        let (_, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
        let [n, m] = parse_pair(header, 1)?;
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        let mut seen = 0;
        for (line, text) in lines {
            if seen == m {
                return Err(Error::Parse { line, msg: format!("more than {m} edges") });
            }
            let [u, v] = parse_pair(text, line)?;
            if u >= n || v >= n {
                return Err(Error::Parse { line, msg: format!("endpoint out of range for {n} vertices") });
            }
            if u == v {
                return Err(Error::Parse { line, msg: format!("loop at vertex {u}") });
            }
            if rows[u].contains(v) {
                return Err(Error::Parse { line, msg: format!("duplicate edge {u} {v}") });
            }
            rows[u].insert(v);
            rows[v].insert(u);
            seen += 1;
        }
        if seen != m {
            return Err(Error::Parse {
                line: 1,
                msg: format!("header declares {m} edges, found {seen}"),
            });
        }
        Ok(Graph::from_rows(rows))
    }
}

fn parse_pair(text: &str, line: usize) -> Result<[usize; 2]> {
    let err = |msg: String| Error::Parse { line, msg };
    let fields: Vec<&str> = text.split(' ').collect();
    if fields.len() != 2 {
        return Err(err(format!("expected two integers, got {text:?}")));
    }
    let mut out = [0; 2];
    for (slot, f) in out.iter_mut().zip(&fields) {
        *slot = f.parse().map_err(|_| err(format!("not a non-negative integer: {f:?}")))?;
    }
    Ok(out)
}

/// The `v_i^j <-> i*n + j` vertex numbering for `m` rows of length `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct GridLabeling {
    pub m: usize,
    pub n: usize,
}

impl GridLabeling {
    pub fn new(m: usize, n: usize) -> GridLabeling {
        GridLabeling { m, n }
    }

    /// Vertex id of `v_i^j`, indices reduced modulo `m` and `n`.
    #[inline]
    pub fn vertex(&self, i: i64, j: i64) -> usize {
        let i = i.rem_euclid(self.m as i64) as usize;
        let j = j.rem_euclid(self.n as i64) as usize;
        i * self.n + j
    }

    #[inline]
    pub fn coords(&self, v: usize) -> (usize, usize) {
        (v / self.n, v % self.n)
    }

    pub fn order(&self) -> usize {
        self.m * self.n
    }
}
