//! Simple undirected graphs with adjacency-set representation, the edge-list
//! text format, and the two vertex orderings the encoding engine consumes.

use crate::bitset::VertexSet;
use crate::error::ErrorClass;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: expected {expected}, got `{got}`")]
    Malformed {
        line: usize,
        expected: &'static str,
        got: String,
    },
    #[error("line {line}: self-loop at vertex {v}")]
    SelfLoop { line: usize, v: usize },
    #[error("line {line}: vertex {v} out of range (n = {n})")]
    VertexOutOfRange { line: usize, v: usize, n: usize },
    #[error("vertex {v} is not a member of the given set")]
    VertexNotInSet { v: usize },
    #[error("ordering of an empty set requested")]
    EmptySet,
}

impl GraphError {
    pub fn class(&self) -> ErrorClass {
        ErrorClass::Input
    }
}

/// Simple undirected graph on vertices `0..n`.
///
/// Immutable once built; every operation below is a pure function of the
/// graph, so shared references may be used freely across threads.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![VertexSet::empty(n); n],
        }
    }

    pub fn with_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            assert!(u != v && u < n && v < n, "bad edge ({u},{v}) for n={n}");
            g.add_edge_unchecked(u, v);
        }
        g
    }

    fn add_edge_unchecked(&mut self, u: usize, v: usize) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// All vertices as a set.
    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Number of edges with both endpoints in `u`.
    pub fn edges_within(&self, u: &VertexSet) -> usize {
        u.iter()
            .map(|v| self.adj[v].intersection_len(u))
            .sum::<usize>()
            / 2
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| self.adj[v].is_disjoint_from(s))
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        if self.n == 0 {
            return Some(0);
        }
        let d = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    /// Parses the edge-list format: a header line `n m` followed by `m` lines
    /// `u v`. Duplicate edges are accepted and deduplicated.
    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(GraphError::Malformed {
            line: 1,
            expected: "header `n m`",
            got: String::new(),
        })?;
        let (n, m) = parse_pair(header, 1, "header `n m`")?;
        let mut g = Graph::new(n);
        let mut seen = 0usize;
        for (idx, raw) in lines {
            let line_no = idx + 1;
            if raw.trim().is_empty() {
                continue;
            }
            if seen == m {
                return Err(GraphError::Malformed {
                    line: line_no,
                    expected: "end of input (edge count exhausted)",
                    got: raw.to_string(),
                });
            }
            let (u, v) = parse_pair(raw, line_no, "edge `u v`")?;
            if u == v {
                return Err(GraphError::SelfLoop { line: line_no, v: u });
            }
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { line: line_no, v: w, n });
                }
            }
            g.add_edge_unchecked(u, v);
            seen += 1;
        }
        if seen < m {
            return Err(GraphError::Malformed {
                line: 0,
                expected: "m edge lines",
                got: format!("{seen} of {m}"),
            });
        }
        Ok(g)
    }

    /// Emits the same edge-list format `parse_edge_list` accepts.
    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Degree of `v` inside the subgraph induced by `a`. Requires `v ∈ a`.
    pub fn degree_in(&self, v: usize, a: &VertexSet) -> Result<usize, GraphError> {
        if !a.contains(v) {
            return Err(GraphError::VertexNotInSet { v });
        }
        Ok(self.adj[v].intersection_len(a))
    }

    /// The max-degree ordering of `a`: repeatedly extract the vertex of
    /// maximum degree in the subgraph induced by the not-yet-extracted
    /// members, breaking ties by smallest vertex index. Degrees are
    /// recomputed in the shrinking induced subgraph after every extraction.
    pub fn max_degree_ordering(&self, a: &VertexSet) -> Result<VertexOrdering, GraphError> {
        if a.is_empty() {
            return Err(GraphError::EmptySet);
        }
        let mut remaining = a.clone();
        let mut seq = Vec::with_capacity(a.len());
        while !remaining.is_empty() {
            let best = remaining
                .iter()
                .map(|v| (self.adj[v].intersection_len(&remaining), v))
                .max_by(|(d1, v1), (d2, v2)| d1.cmp(d2).then(v2.cmp(v1)))
                .map(|(_, v)| v)
                .expect("remaining is nonempty");
            seq.push(best);
            remaining.remove(best);
        }
        Ok(VertexOrdering {
            kind: OrderingKind::MaxDegree,
            seq,
        })
    }

    /// Degeneracy-style ordering of the whole vertex set: repeatedly remove a
    /// minimum-degree vertex and place it at the back of the sequence. Ties
    /// are resolved so that vertices earlier in the fixed index order come
    /// earlier in the final sequence (the last position takes the
    /// largest-indexed minimum-degree vertex).
    ///
    /// The result satisfies `δ(G_{i-1}) ≥ deg_{G_i}(v_i) − 1` for every
    /// prefix `G_i` induced by the first `i` vertices of the sequence.
    pub fn min_degree_ordering(&self) -> VertexOrdering {
        let mut remaining = self.vertex_set();
        let mut seq = vec![0usize; self.n];
        for slot in (0..self.n).rev() {
            let pick = remaining
                .iter()
                .map(|v| (self.adj[v].intersection_len(&remaining), v))
                .min_by(|(d1, v1), (d2, v2)| d1.cmp(d2).then(v2.cmp(v1)))
                .map(|(_, v)| v)
                .expect("remaining is nonempty");
            seq[slot] = pick;
            remaining.remove(pick);
        }
        VertexOrdering {
            kind: OrderingKind::MinDegree,
            seq,
        }
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

fn parse_pair(s: &str, line: usize, expected: &'static str) -> Result<(usize, usize), GraphError> {
    let mut it = s.split_whitespace();
    let err = || GraphError::Malformed {
        line,
        expected,
        got: s.to_string(),
    };
    let a = it.next().ok_or_else(err)?.parse().map_err(|_| err())?;
    let b = it.next().ok_or_else(err)?.parse().map_err(|_| err())?;
    if it.next().is_some() {
        return Err(err());
    }
    Ok((a, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderingKind {
    MaxDegree,
    MinDegree,
}

/// A permutation of some vertex subset, tagged with how it was built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexOrdering {
    kind: OrderingKind,
    seq: Vec<usize>,
}

impl VertexOrdering {
    pub fn kind(&self) -> OrderingKind {
        self.kind
    }

    pub fn seq(&self) -> &[usize] {
        &self.seq
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// Vertex at the given 1-based position.
    pub fn at_position(&self, j: usize) -> Option<usize> {
        (j >= 1).then(|| self.seq.get(j - 1).copied()).flatten()
    }
}
