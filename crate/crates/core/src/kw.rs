//! The Kleitman--Winston encoding engine: position-sequence traces and their
//! inversion, fingerprints, container enumeration, and the local-density
//! hypotheses under which the counting and container bounds hold.

use crate::bitset::VertexSet;
use crate::bounds::{big_binomial, log2_binomial, log2_biguint, LogBound};
use crate::error::ErrorClass;
use crate::graph::{Graph, VertexOrdering};
use num_bigint::BigUint;
use num_traits::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

/// Cap for the exhaustive subset-density verifiers.
pub const DENSITY_CAP: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KwError {
    #[error("input set is not independent")]
    NotIndependent,
    #[error("q = {q} exceeds the input set size {size}")]
    QTooLarge { q: usize, size: usize },
    #[error("container enumeration requires q >= 1")]
    ZeroQ,
    #[error("malformed trace: position {position} out of range at step {step} ({remaining} vertices remain)")]
    MalformedTrace {
        step: usize,
        position: usize,
        remaining: usize,
    },
    #[error("container search exceeded node cap {cap}: {visited} nodes visited, {keys} containers found")]
    NodeCapExceeded {
        cap: usize,
        visited: usize,
        keys: usize,
    },
    #[error("density check: n = {n} exceeds the exhaustive cap {cap}")]
    DensityTooLarge { n: usize, cap: usize },
    #[error("count bound requires m >= q (m = {m}, q = {q})")]
    MSmallerThanQ { m: usize, q: usize },
    #[error("count bound requires R >= 0")]
    NegativeR,
}

impl KwError {
    pub fn class(&self) -> ErrorClass {
        match self {
            KwError::NodeCapExceeded { .. } | KwError::DensityTooLarge { .. } => {
                ErrorClass::Resource
            }
            _ => ErrorClass::Input,
        }
    }
}

/// Output of one run of the encoding algorithm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KwTrace {
    /// Number of iterations.
    pub q: usize,
    /// 1-based positions `j_1..j_q` into the per-step max-degree orderings.
    pub positions: Vec<usize>,
    /// The selected set S.
    pub selected: VertexSet,
    /// The surviving set A after the last iteration.
    pub survivors: VertexSet,
    /// `survivors ∩ I`, the second half of the encoding.
    pub leftover: VertexSet,
}

impl KwTrace {
    /// One-line serialization `q; j_1,..,j_q; S-members; A-members`.
    pub fn to_line(&self) -> String {
        let positions = self
            .positions
            .iter()
            .map(|j| j.to_string())
            .collect::<Vec<_>>()
            .join(",");
        format!(
            "{}; {}; {}; {}",
            self.q, positions, self.selected, self.survivors
        )
    }
}

/// Applies one iteration with the chosen 1-based position `j`: the vertex at
/// position `j` of `ordering` moves from `a` to `s`, the vertices before it
/// are deleted from `a`, and so are the selected vertex's neighbors.
fn apply_position(g: &Graph, a: &mut VertexSet, s: &mut VertexSet, ordering: &VertexOrdering, j: usize) {
    let v = ordering.at_position(j).expect("position checked by caller");
    for &u in &ordering.seq()[..j - 1] {
        a.remove(u);
    }
    a.remove(v);
    *a = a.difference(g.neighbors(v));
    s.insert(v);
}

/// Runs the encoding algorithm for `q` iterations on an independent set.
///
/// Each iteration takes the max-degree ordering of the surviving set A,
/// selects the first ordered vertex belonging to the input set, and deletes
/// everything ordered before it together with the selection's neighborhood.
pub fn kw_run(g: &Graph, input: &VertexSet, q: usize) -> Result<KwTrace, KwError> {
    if !g.is_independent(input) {
        return Err(KwError::NotIndependent);
    }
    if q > input.len() {
        return Err(KwError::QTooLarge {
            q,
            size: input.len(),
        });
    }
    let mut a = g.vertex_set();
    let mut s = VertexSet::empty(g.n());
    let mut positions = Vec::with_capacity(q);
    for _ in 0..q {
        let ordering = g
            .max_degree_ordering(&a)
            .expect("unselected input vertices keep A nonempty");
        let j = ordering
            .seq()
            .iter()
            .position(|v| input.contains(*v))
            .expect("I minus S stays inside A")
            + 1;
        apply_position(g, &mut a, &mut s, &ordering, j);
        positions.push(j);
    }
    let leftover = a.intersection(input);
    Ok(KwTrace {
        q,
        positions,
        selected: s,
        survivors: a,
        leftover,
    })
}

/// Inverts the encoding: replays the deterministic evolution of A from the
/// position sequence alone and returns `S ∪ leftover`, the original set.
pub fn kw_reconstruct(
    g: &Graph,
    q: usize,
    positions: &[usize],
    leftover: &VertexSet,
) -> Result<VertexSet, KwError> {
    if positions.len() != q {
        return Err(KwError::MalformedTrace {
            step: 0,
            position: positions.len(),
            remaining: q,
        });
    }
    let mut a = g.vertex_set();
    let mut s = VertexSet::empty(g.n());
    for (idx, &j) in positions.iter().enumerate() {
        if j == 0 || j > a.len() {
            return Err(KwError::MalformedTrace {
                step: idx + 1,
                position: j,
                remaining: a.len(),
            });
        }
        let ordering = g.max_degree_ordering(&a).expect("bounds checked above");
        apply_position(g, &mut a, &mut s, &ordering, j);
    }
    Ok(s.union(leftover))
}

/// The q-element fingerprint of an independent set: the set S selected by
/// `kw_run`. Running the algorithm on the fingerprint itself reproduces the
/// same trace, so the fingerprint is idempotent.
pub fn fingerprint(g: &Graph, input: &VertexSet, q: usize) -> Result<VertexSet, KwError> {
    kw_run(g, input, q).map(|t| t.selected)
}

/// A family of containers keyed by fingerprint: every independent set I with
/// at least `q` elements satisfies `g(I) ⊆ I ⊆ f(g(I)) ∪ g(I)` where `g(I)`
/// is its fingerprint and `f` is this map.
#[derive(Clone, Debug)]
pub struct ContainerFamily {
    pub q: usize,
    entries: BTreeMap<VertexSet, VertexSet>,
}

impl ContainerFamily {
    pub fn entries(&self) -> impl Iterator<Item = (&VertexSet, &VertexSet)> {
        self.entries.iter()
    }

    pub fn container_for(&self, fingerprint: &VertexSet) -> Option<&VertexSet> {
        self.entries.get(fingerprint)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn container_sizes(&self) -> Vec<usize> {
        self.entries.values().map(|c| c.len()).collect()
    }

    pub fn max_container_size(&self) -> usize {
        self.entries.values().map(|c| c.len()).max().unwrap_or(0)
    }
}

/// Enumerates the full container family by depth-first search over position
/// sequences, replaying the deterministic evolution of A. Keys are the
/// selected sets S; values the surviving sets f(S).
///
/// Sequences are pruned to those realizable by an independent input: the
/// vertex at a chosen position is always non-adjacent to the current S
/// because earlier iterations already deleted all neighbors of S. A final
/// filter keeps only keys whose own run reproduces them.
pub fn enumerate_containers(
    g: &Graph,
    q: usize,
    node_cap: usize,
) -> Result<ContainerFamily, KwError> {
    if q == 0 {
        return Err(KwError::ZeroQ);
    }
    let mut entries = BTreeMap::new();
    let mut visited = 0usize;
    let a = g.vertex_set();
    let s = VertexSet::empty(g.n());
    dfs_containers(g, a, s, q, node_cap, &mut visited, &mut entries)?;
    entries.retain(|key, _| {
        fingerprint(g, key, q)
            .map(|fp| fp == *key)
            .unwrap_or(false)
    });
    Ok(ContainerFamily { q, entries })
}

fn dfs_containers(
    g: &Graph,
    a: VertexSet,
    s: VertexSet,
    depth_left: usize,
    node_cap: usize,
    visited: &mut usize,
    entries: &mut BTreeMap<VertexSet, VertexSet>,
) -> Result<(), KwError> {
    if depth_left == 0 {
        entries.insert(s, a);
        return Ok(());
    }
    if a.is_empty() {
        return Ok(());
    }
    let ordering = g.max_degree_ordering(&a).expect("a nonempty");
    for j in 1..=ordering.len() {
        *visited += 1;
        if *visited > node_cap {
            return Err(KwError::NodeCapExceeded {
                cap: node_cap,
                visited: *visited,
                keys: entries.len(),
            });
        }
        let mut a2 = a.clone();
        let mut s2 = s.clone();
        apply_position(g, &mut a2, &mut s2, &ordering, j);
        dfs_containers(g, a2, s2, depth_left - 1, node_cap, visited, entries)?;
    }
    Ok(())
}

/// Parameters for the two density hypotheses.
#[derive(Clone, Copy, Debug)]
pub struct DensityParams {
    pub q: usize,
    pub r: f64,
    pub beta: f64,
    pub avg_degree: f64,
}

impl DensityParams {
    /// `R >= e^{-beta q} n`, the hypothesis of the counting bound.
    pub fn count_hypothesis_holds(&self, n: usize) -> bool {
        self.r >= (-self.beta * self.q as f64).exp() * n as f64
    }

    /// `R + q D >= n`, the hypothesis of the container bound.
    pub fn container_hypothesis_holds(&self, n: usize) -> bool {
        self.r + self.q as f64 * self.avg_degree >= n as f64
    }
}

fn density_check(
    g: &Graph,
    r: f64,
    satisfied: impl Fn(usize, usize) -> bool,
) -> Result<bool, KwError> {
    let n = g.n();
    if n > DENSITY_CAP {
        return Err(KwError::DensityTooLarge { n, cap: DENSITY_CAP });
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, u| m | (1 << u)))
        .collect();
    for mask in 0u64..(1 << n) {
        let size = mask.count_ones() as usize;
        if (size as f64) < r {
            continue;
        }
        let mut twice_edges = 0usize;
        let mut bits = mask;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            twice_edges += (adj[v] & mask).count_ones() as usize;
        }
        if !satisfied(twice_edges / 2, size) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exhaustively verifies that every `U` with `|U| >= R` spans at least
/// `beta * C(|U|, 2)` edges.
pub fn verify_density_beta(g: &Graph, r: f64, beta: f64) -> Result<bool, KwError> {
    density_check(g, r, |edges, size| {
        edges as f64 >= beta * (size * (size.saturating_sub(1)) / 2) as f64
    })
}

/// Exhaustively verifies that every `U` with `|U| >= R` has average degree at
/// least `D`, i.e. `2 e(U) >= D |U|`.
pub fn verify_density_avg_degree(g: &Graph, r: f64, d: f64) -> Result<bool, KwError> {
    density_check(g, r, move |edges, size| 2.0 * edges as f64 >= d * size as f64)
}

/// The counting bound `log2 [ C(n, q) * C(floor(R), m - q) ]` on the number
/// of m-element independent sets under the beta-density hypothesis.
pub fn container_count_bound(n: u64, q: usize, r: f64, m: usize) -> Result<LogBound, KwError> {
    if m < q {
        return Err(KwError::MSmallerThanQ { m, q });
    }
    if r < 0.0 {
        return Err(KwError::NegativeR);
    }
    let value = log2_binomial(n as f64, q) + log2_binomial(r.floor(), m - q);
    Ok(LogBound::new(
        "container-count",
        vec![("n", n as f64), ("q", q as f64), ("R", r), ("m", m as f64)],
        value,
    ))
}

/// The total-count bound `log2 [ sum_{m<q} C(n, m) + sum_S 2^{|f(S)|} ]`
/// assembled from the container sizes of an enumeration run. Exact
/// big-integer arithmetic inside the logarithm.
pub fn container_total_bound(n: u64, q: usize, container_sizes: &[usize]) -> LogBound {
    let mut total = BigUint::zero();
    for m in 0..q {
        total += big_binomial(n, m as u64);
    }
    for &s in container_sizes {
        total += BigUint::from(1u32) << s;
    }
    LogBound::new(
        "container-total",
        vec![
            ("n", n as f64),
            ("q", q as f64),
            ("containers", container_sizes.len() as f64),
        ],
        log2_biguint(&total),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn p3() -> Graph {
        Graph::with_edges(3, &[(0, 1), (1, 2)])
    }

    fn vs(universe: usize, members: &[usize]) -> VertexSet {
        VertexSet::from_members(universe, members.iter().copied())
    }

    #[test]
    fn run_on_p3_q1() {
        let g = p3();
        let t = kw_run(&g, &vs(3, &[0, 2]), 1).unwrap();
        assert_eq!(t.positions, vec![2]);
        assert_eq!(t.selected, vs(3, &[0]));
        assert_eq!(t.survivors, vs(3, &[2]));
        assert_eq!(t.leftover, vs(3, &[2]));
        assert_eq!(t.to_line(), "1; 2; 0; 2");
    }

    #[test]
    fn run_on_p3_q2() {
        let g = p3();
        let t = kw_run(&g, &vs(3, &[0, 2]), 2).unwrap();
        assert_eq!(t.positions, vec![2, 1]);
        assert_eq!(t.selected, vs(3, &[0, 2]));
        assert!(t.survivors.is_empty());
    }

    #[test]
    fn run_on_empty_graph() {
        let g = Graph::new(3);
        let t = kw_run(&g, &vs(3, &[0, 1, 2]), 1).unwrap();
        assert_eq!(t.positions, vec![1]);
        assert_eq!(t.selected, vs(3, &[0]));
        assert_eq!(t.survivors, vs(3, &[1, 2]));
    }

    #[test]
    fn run_rejects_bad_inputs() {
        let g = p3();
        assert_eq!(kw_run(&g, &vs(3, &[0, 1]), 1), Err(KwError::NotIndependent));
        assert_eq!(
            kw_run(&g, &vs(3, &[0, 2]), 3),
            Err(KwError::QTooLarge { q: 3, size: 2 })
        );
    }

    #[test]
    fn reconstruct_inverts_run() {
        let g = p3();
        let recovered = kw_reconstruct(&g, 1, &[2], &vs(3, &[2])).unwrap();
        assert_eq!(recovered, vs(3, &[0, 2]));
    }

    #[test]
    fn reconstruct_with_no_iterations_returns_leftover() {
        let g = p3();
        let leftover = vs(3, &[0, 2]);
        assert_eq!(kw_reconstruct(&g, 0, &[], &leftover).unwrap(), leftover);
    }

    #[test]
    fn reconstruct_rejects_out_of_range_position() {
        let g = p3();
        let err = kw_reconstruct(&g, 1, &[5], &vs(3, &[])).unwrap_err();
        assert!(matches!(err, KwError::MalformedTrace { position: 5, .. }));
    }

    #[test]
    fn fingerprint_examples() {
        let g = p3();
        assert_eq!(fingerprint(&g, &vs(3, &[0, 2]), 1).unwrap(), vs(3, &[0]));
        assert_eq!(fingerprint(&g, &vs(3, &[0]), 1).unwrap(), vs(3, &[0]));
        let empty = Graph::new(3);
        assert_eq!(
            fingerprint(&empty, &vs(3, &[0, 1, 2]), 2).unwrap(),
            vs(3, &[0, 1])
        );
    }

    #[test]
    fn fingerprint_with_q_equal_to_size_is_identity() {
        let g = catalog::cycle(6);
        let input = vs(6, &[0, 2, 4]);
        assert_eq!(fingerprint(&g, &input, 3).unwrap(), input);
    }

    #[test]
    fn containers_on_k2() {
        let g = catalog::complete(2);
        let fam = enumerate_containers(&g, 1, 1_000).unwrap();
        assert_eq!(fam.len(), 2);
        assert_eq!(fam.container_for(&vs(2, &[0])).unwrap(), &vs(2, &[]));
        assert_eq!(fam.container_for(&vs(2, &[1])).unwrap(), &vs(2, &[]));
    }

    #[test]
    fn containers_on_empty_graph_n2() {
        let g = Graph::new(2);
        let fam = enumerate_containers(&g, 1, 1_000).unwrap();
        assert_eq!(fam.len(), 2);
        assert_eq!(fam.container_for(&vs(2, &[0])).unwrap(), &vs(2, &[1]));
        assert_eq!(fam.container_for(&vs(2, &[1])).unwrap(), &vs(2, &[]));
    }

    #[test]
    fn containers_q1_has_at_most_n_keys() {
        for entry in catalog::builtin_catalog() {
            if entry.graph.n() > 8 {
                continue;
            }
            let fam = enumerate_containers(&entry.graph, 1, 1_000_000).unwrap();
            assert!(fam.len() <= entry.graph.n(), "{}", entry.name);
        }
    }

    #[test]
    fn containers_node_cap_is_reported() {
        let g = Graph::new(6);
        let err = enumerate_containers(&g, 3, 10).unwrap_err();
        match err {
            KwError::NodeCapExceeded { cap, visited, .. } => {
                assert_eq!(cap, 10);
                assert!(visited > 10);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn density_beta_examples() {
        assert!(verify_density_beta(&catalog::complete(4), 2.0, 1.0).unwrap());
        assert!(!verify_density_beta(&Graph::new(4), 2.0, 0.1).unwrap());
        assert!(verify_density_beta(&catalog::cycle(4), 3.0, 1.0 / 3.0).unwrap());
    }

    #[test]
    fn density_avg_degree_examples() {
        assert!(verify_density_avg_degree(&catalog::complete(4), 2.0, 1.0).unwrap());
        assert!(!verify_density_avg_degree(&Graph::new(4), 2.0, 0.5).unwrap());
        // d-regular with R = n checks only U = V, where 2e = dn.
        assert!(verify_density_avg_degree(&catalog::cycle(6), 6.0, 2.0).unwrap());
    }

    #[test]
    fn density_cap_is_enforced() {
        let g = Graph::new(DENSITY_CAP + 1);
        assert!(matches!(
            verify_density_beta(&g, 1.0, 0.5),
            Err(KwError::DensityTooLarge { .. })
        ));
    }

    #[test]
    fn count_bound_examples() {
        let b = container_count_bound(10, 2, 5.0, 4).unwrap();
        assert!((b.log2_value - 450f64.log2()).abs() < 1e-9);
        let b = container_count_bound(10, 2, 5.0, 2).unwrap();
        assert!((b.log2_value - 45f64.log2()).abs() < 1e-9);
        let b = container_count_bound(10, 2, 3.0, 9).unwrap();
        assert_eq!(b.log2_value, f64::NEG_INFINITY);
        assert!(matches!(
            container_count_bound(10, 3, 5.0, 2),
            Err(KwError::MSmallerThanQ { m: 2, q: 3 })
        ));
    }

    #[test]
    fn total_bound_examples() {
        let b = container_total_bound(2, 1, &[1, 0]);
        assert!((b.log2_value - 2.0).abs() < 1e-12);
        let b = container_total_bound(9, 0, &[5]);
        assert!((b.log2_value - 5.0).abs() < 1e-12);
        let b = container_total_bound(4, 1, &[]);
        assert_eq!(b.log2_value, 0.0);
    }
}
