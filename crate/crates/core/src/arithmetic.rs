//! Arithmetic applications: the shift-graph reduction for sum-free sets and
//! the 3-AP container machinery with its seeded random experiment.

use crate::bounds::{log2_add, log2_binomial, sapozhenko_bound, LogBound};
use crate::error::ErrorClass;
use crate::graph::Graph;
use crate::oracle::{self, OracleError};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Cap on the ground set of the exhaustive Varnavides scan.
pub const VARNAVIDES_CAP: u64 = 22;
/// Per-trial ground-set cap of the random experiment.
pub const EXPERIMENT_CAP: u64 = 40;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithmeticError {
    #[error("shift set must be nonempty")]
    EmptyShifts,
    #[error("shift {s} outside the admissible range 1..={max} for n = {n}")]
    ShiftOutOfRange { s: u64, max: u64, n: u64 },
    #[error("the t smallest elements do not fit the admissible shift range")]
    NotApplicable,
    #[error("input set is not sum-free")]
    NotSumFree,
    #[error("set has {size} elements, fewer than t = {t}")]
    FewerThanT { size: usize, t: usize },
    #[error("element {value} outside the ground set [1, {n}]")]
    OutOfRange { value: u64, n: u64 },
    #[error("witness set is not a subset of the ground set")]
    WitnessNotSubset,
    #[error("experiment needs at least one trial")]
    ZeroTrials,
    #[error("sample size m = {m} exceeds n = {n}")]
    MTooLarge { m: u64, n: u64 },
    #[error("n = {n} exceeds cap {cap}")]
    TooLarge { n: u64, cap: u64 },
    #[error("recursion bound requires m >= 2 K floor(sqrt(n)) = {floor}")]
    MBelowRecursionFloor { floor: u64 },
    #[error("bound requires n >= 8")]
    NTooSmall,
    #[error("no subset meets the density threshold")]
    NoQualifyingSubset,
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl ArithmeticError {
    pub fn class(&self) -> ErrorClass {
        match self {
            ArithmeticError::TooLarge { .. } => ErrorClass::Resource,
            ArithmeticError::Oracle(e) => e.class(),
            _ => ErrorClass::Input,
        }
    }
}

fn max_shift(n: u64) -> u64 {
    n.div_ceil(2).saturating_sub(1)
}

/// The circulant graph on `{1..n}` joining `x` and `y` whenever
/// `x + s = y (mod n)` for some shift `s` in the set or its negation.
/// Vertices are labeled `0..n-1` standing for values `1..n`.
///
/// With shifts drawn from `1..=ceil(n/2)-1` the result is `2|S|`-regular.
pub fn shift_graph(n: u64, shifts: &[u64]) -> Result<Graph, ArithmeticError> {
    if shifts.is_empty() {
        return Err(ArithmeticError::EmptyShifts);
    }
    let max = max_shift(n);
    let mut uniq: Vec<u64> = shifts.to_vec();
    uniq.sort_unstable();
    uniq.dedup();
    for &s in &uniq {
        if s == 0 || s > max {
            return Err(ArithmeticError::ShiftOutOfRange { s, max, n });
        }
    }
    let mut edges = Vec::new();
    for x in 0..n {
        for &s in &uniq {
            let y = (x + s) % n;
            edges.push((x as usize, y as usize));
        }
    }
    let g = Graph::with_edges(n as usize, &edges);
    debug_assert_eq!(g.regular_degree(), Some(2 * uniq.len()));
    Ok(g)
}

/// A shift-graph instance together with the parameters that produced it.
#[derive(Clone, Debug)]
pub struct SumFreeInstance {
    pub n: u64,
    pub shifts: Vec<u64>,
    pub graph: Graph,
}

impl SumFreeInstance {
    pub fn build(n: u64, shifts: &[u64]) -> Result<Self, ArithmeticError> {
        let graph = shift_graph(n, shifts)?;
        let mut s = shifts.to_vec();
        s.sort_unstable();
        s.dedup();
        Ok(SumFreeInstance { n, shifts: s, graph })
    }
}

/// For a sum-free `a ⊆ [n]`, takes the `t` smallest elements as shifts and
/// checks that the rest of `a` is independent in the resulting shift graph.
/// The reduction guarantees `true` whenever the shifts fit the admissible
/// range; out-of-range shifts yield `NotApplicable`.
pub fn sum_free_independence_check(a: &[u64], n: u64, t: usize) -> Result<bool, ArithmeticError> {
    if !oracle::is_sum_free(a)? {
        return Err(ArithmeticError::NotSumFree);
    }
    if let Some(&bad) = a.iter().find(|&&x| x > n) {
        return Err(ArithmeticError::OutOfRange { value: bad, n });
    }
    let mut vals: Vec<u64> = a.to_vec();
    vals.sort_unstable();
    vals.dedup();
    if vals.len() < t {
        return Err(ArithmeticError::FewerThanT {
            size: vals.len(),
            t,
        });
    }
    let (smallest, rest) = vals.split_at(t);
    if smallest.iter().any(|&s| s == 0 || s > max_shift(n)) {
        return Err(ArithmeticError::NotApplicable);
    }
    let g = shift_graph(n, smallest)?;
    let members = crate::bitset::VertexSet::from_members(
        n as usize,
        rest.iter().map(|&v| (v - 1) as usize),
    );
    Ok(g.is_independent(&members))
}

/// The two log-space terms of the sum-free count bound: subsets with few
/// small elements, and shift-graph independent sets counted through the
/// regular-graph bound with constant `c_reg`.
pub fn sum_free_count_bound_terms(n: u64, c_reg: f64) -> Result<(f64, f64), ArithmeticError> {
    if n < 8 {
        return Err(ArithmeticError::NTooSmall);
    }
    let nf = n as f64;
    let small_elements = nf.powf(2.0 / 3.0);
    let t = small_elements.floor() as u64;
    let few_small = small_elements * (nf / 2.0).log2() + nf / 2.0 + 1.0;
    let regular = sapozhenko_bound(n, 2 * t, c_reg)
        .expect("2 floor(n^{2/3}) >= 2 for n >= 8")
        .log2_value;
    let many_small = log2_binomial(nf / 2.0, t as usize) + regular;
    Ok((few_small, many_small))
}

/// Assembled count bound for sum-free subsets of `[n]`.
pub fn sum_free_count_bound(n: u64, c_reg: f64) -> Result<LogBound, ArithmeticError> {
    let (few_small, many_small) = sum_free_count_bound_terms(n, c_reg)?;
    Ok(LogBound::new(
        "sum-free-count",
        vec![("n", n as f64), ("C", c_reg)],
        log2_add(few_small, many_small),
    ))
}

/// The 3-uniform hypergraph of all 3-term APs inside `[n]`.
#[derive(Clone, Debug)]
pub struct ApInstance {
    pub n: u64,
    pub triples: Vec<[u64; 3]>,
}

impl ApInstance {
    /// Number of triples containing `x`.
    pub fn degree(&self, x: u64) -> usize {
        self.triples.iter().filter(|t| t.contains(&x)).count()
    }

    pub fn max_degree(&self) -> usize {
        (1..=self.n).map(|x| self.degree(x)).max().unwrap_or(0)
    }
}

/// All triples `(x, x+d, x+2d)` with `d >= 1` inside `[n]`.
pub fn build_3ap_hypergraph(n: u64) -> ApInstance {
    let mut triples = Vec::new();
    if n >= 3 {
        for d in 1..=(n - 1) / 2 {
            for x in 1..=(n - 2 * d) {
                triples.push([x, x + d, x + 2 * d]);
            }
        }
    }
    ApInstance { n, triples }
}

/// A graph whose vertices carry ground-set labels.
#[derive(Clone, Debug)]
pub struct LabeledGraph {
    pub graph: Graph,
    labels: Vec<u64>,
}

impl LabeledGraph {
    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn index_of(&self, value: u64) -> Option<usize> {
        self.labels.binary_search(&value).ok()
    }

    pub fn label(&self, idx: usize) -> u64 {
        self.labels[idx]
    }
}

/// The witness graph on ground set `b`: an edge joins `x` and `y` whenever
/// some triple of the AP hypergraph contains both together with a witness
/// `z` in `w`. Its maximum degree is at most `3 |w|`.
pub fn ap_witness_graph(
    b: &[u64],
    w: &[u64],
    ap: &ApInstance,
) -> Result<LabeledGraph, ArithmeticError> {
    let mut labels: Vec<u64> = b.to_vec();
    labels.sort_unstable();
    labels.dedup();
    let index = |v: u64| labels.binary_search(&v).ok();
    for &z in w {
        if index(z).is_none() {
            return Err(ArithmeticError::WitnessNotSubset);
        }
    }
    let mut wit: Vec<u64> = w.to_vec();
    wit.sort_unstable();
    let in_w = |v: u64| wit.binary_search(&v).is_ok();
    let mut edges = Vec::new();
    for t in &ap.triples {
        for r in 0..3 {
            let z = t[r];
            if !in_w(z) {
                continue;
            }
            let (x, y) = (t[(r + 1) % 3], t[(r + 2) % 3]);
            if let (Some(ix), Some(iy)) = (index(x), index(y)) {
                edges.push((ix, iy));
            }
        }
    }
    Ok(LabeledGraph {
        graph: Graph::with_edges(labels.len(), &edges),
        labels,
    })
}

/// Elements of `b` lying in at least `threshold` triples fully inside `b`.
pub fn high_ap_degree_elements(b: &[u64], ap: &ApInstance, threshold: usize) -> Vec<u64> {
    let mut sorted: Vec<u64> = b.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let inside = |v: u64| sorted.binary_search(&v).is_ok();
    let mut degree = std::collections::BTreeMap::new();
    for t in &ap.triples {
        if t.iter().all(|&v| inside(v)) {
            for &v in t {
                *degree.entry(v).or_insert(0usize) += 1;
            }
        }
    }
    sorted
        .into_iter()
        .filter(|v| degree.get(v).copied().unwrap_or(0) >= threshold)
        .collect()
}

/// Whether every subset of `a` with at least `delta |a|` elements contains a
/// 3-term AP, decided through the maximum 3-AP-free subset size. The empty
/// set counts as delta-Roth.
pub fn is_delta_roth(a: &[u64], delta: f64) -> Result<bool, ArithmeticError> {
    if a.is_empty() {
        return Ok(true);
    }
    let mut vals: Vec<u64> = a.to_vec();
    vals.sort_unstable();
    vals.dedup();
    let t = (delta * vals.len() as f64).ceil().max(0.0) as usize;
    Ok(!oracle::has_3ap_free_subset_of_size(&vals, t)?)
}

/// The definition of delta-Roth checked verbatim: every subset with at least
/// `delta |a|` elements is scanned for a 3-term AP. Exponential in `|a|`;
/// used to validate `is_delta_roth`.
pub fn is_delta_roth_direct(a: &[u64], delta: f64) -> Result<bool, ArithmeticError> {
    if a.is_empty() {
        return Ok(true);
    }
    let mut vals: Vec<u64> = a.to_vec();
    vals.sort_unstable();
    vals.dedup();
    let k = vals.len();
    if k > 20 {
        return Err(ArithmeticError::TooLarge {
            n: k as u64,
            cap: 20,
        });
    }
    let threshold = delta * k as f64;
    for mask in 0u64..(1 << k) {
        if (mask.count_ones() as f64) < threshold {
            continue;
        }
        let subset: Vec<u64> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| vals[i]).collect();
        if !oracle::has_3ap(&subset) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Result of the seeded random delta-Roth experiment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RothExperiment {
    pub trials: u64,
    pub successes: u64,
}

impl RothExperiment {
    pub fn rate(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }
}

/// Estimates the probability that a uniform random m-element subset of
/// `[n]` is delta-Roth. Trial `i` samples with a generator seeded by
/// `seed ^ i`, so trials are reproducible and order-independent.
pub fn roth_random_experiment(
    n: u64,
    m: u64,
    delta: f64,
    trials: u64,
    seed: u64,
) -> Result<RothExperiment, ArithmeticError> {
    if trials == 0 {
        return Err(ArithmeticError::ZeroTrials);
    }
    if m > n {
        return Err(ArithmeticError::MTooLarge { m, n });
    }
    if n > EXPERIMENT_CAP {
        return Err(ArithmeticError::TooLarge {
            n,
            cap: EXPERIMENT_CAP,
        });
    }
    let mut successes = 0;
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ trial);
        let mut pool: Vec<u64> = (1..=n).collect();
        let (sample, _) = pool.partial_shuffle(&mut rng, m as usize);
        if is_delta_roth(sample, delta)? {
            successes += 1;
        }
    }
    Ok(RothExperiment { trials, successes })
}

/// Parameters of the container recursion on 3-AP-free counts.
#[derive(Clone, Copy, Debug)]
pub struct RothRecursionParams {
    pub epsilon: f64,
    pub beta: f64,
    pub depth: usize,
    /// Witness-set size per step, `floor(sqrt(n))`.
    pub w: u64,
    /// Fingerprint size per step, `floor(sqrt(n))`.
    pub q: u64,
}

/// Budget state after each recursion step: the ground-set budget shrinks by
/// `ceil(beta n / 12)` and the remaining size by `2 floor(sqrt(n))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RothRecursionState {
    pub step: usize,
    pub ground_budget: i64,
    pub remaining_size: i64,
}

/// The default recursion depth `ceil((12 - 6 eps) / beta)`.
pub fn recursion_default_depth(epsilon: f64, beta: f64) -> usize {
    ((12.0 - 6.0 * epsilon) / beta).ceil() as usize
}

pub fn recursion_states(
    n: u64,
    m: u64,
    epsilon: f64,
    beta: f64,
    depth: usize,
) -> (RothRecursionParams, Vec<RothRecursionState>) {
    let w = (n as f64).sqrt().floor() as u64;
    let ground_step = (beta * n as f64 / 12.0).ceil() as i64;
    let mut states = vec![RothRecursionState {
        step: 0,
        ground_budget: n as i64,
        remaining_size: m as i64,
    }];
    for step in 1..=depth {
        let prev = states[step - 1];
        states.push(RothRecursionState {
            step,
            ground_budget: prev.ground_budget - ground_step,
            remaining_size: prev.remaining_size - 2 * w as i64,
        });
    }
    (
        RothRecursionParams {
            epsilon,
            beta,
            depth,
            w,
            q: w,
        },
        states,
    )
}

/// The unrolled recursion bound
/// `log2 [ 2^K C(n, floor(sqrt n))^{2K} C(eps n / 2, m - 2K floor(sqrt n)) ]`.
pub fn three_ap_recursion_bound(
    n: u64,
    m: u64,
    epsilon: f64,
    beta: f64,
    depth: usize,
) -> Result<LogBound, ArithmeticError> {
    let w = (n as f64).sqrt().floor() as u64;
    let floor = 2 * depth as u64 * w;
    if m < floor {
        return Err(ArithmeticError::MBelowRecursionFloor { floor });
    }
    let k = depth as f64;
    let value = k
        + 2.0 * k * log2_binomial(n as f64, w as usize)
        + log2_binomial(epsilon * n as f64 / 2.0, (m - floor) as usize);
    Ok(LogBound::new(
        "ap-recursion",
        vec![
            ("n", n as f64),
            ("m", m as f64),
            ("epsilon", epsilon),
            ("beta", beta),
            ("K", k),
        ],
        value,
    ))
}

/// Empirical profile of the AP-count lower bound: the minimum number of
/// 3-term APs over all subsets of `[n]` with at least `delta n` elements,
/// and that minimum divided by `n^2`.
pub fn varnavides_profile(n: u64, delta: f64) -> Result<(u64, f64), ArithmeticError> {
    if n > VARNAVIDES_CAP {
        return Err(ArithmeticError::TooLarge {
            n,
            cap: VARNAVIDES_CAP,
        });
    }
    let ap = build_3ap_hypergraph(n);
    let triple_masks: Vec<u64> = ap
        .triples
        .iter()
        .map(|t| t.iter().fold(0u64, |m, &v| m | (1 << (v - 1))))
        .collect();
    let threshold = delta * n as f64;
    let mut min_count: Option<u64> = None;
    for mask in 0u64..(1 << n) {
        if (mask.count_ones() as f64) < threshold {
            continue;
        }
        let count = triple_masks.iter().filter(|&&t| mask & t == t).count() as u64;
        if min_count.is_none_or(|m| count < m) {
            min_count = Some(count);
        }
    }
    let min_count = min_count.ok_or(ArithmeticError::NoQualifyingSubset)?;
    Ok((min_count, min_count as f64 / (n as f64 * n as f64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn shift_graph_is_a_cycle_for_single_unit_shift() {
        let g = shift_graph(5, &[1]).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]);
        let g4 = shift_graph(4, &[1]).unwrap();
        assert_eq!(g4.edges(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
    }

    #[test]
    fn shift_graph_two_triangles() {
        let g = shift_graph(6, &[2]).unwrap();
        // Values {1,3,5} and {2,4,6} each induce a triangle.
        assert_eq!(g.edges(), vec![(0, 2), (0, 4), (1, 3), (1, 5), (2, 4), (3, 5)]);
    }

    #[test]
    fn shift_graph_regularity_and_range() {
        for n in 4..=30u64 {
            let max = n.div_ceil(2) - 1;
            for s in 1..=max {
                let g = shift_graph(n, &[s]).unwrap();
                assert_eq!(g.regular_degree(), Some(2), "n={n} s={s}");
            }
        }
        assert!(matches!(
            shift_graph(20, &[10]),
            Err(ArithmeticError::ShiftOutOfRange { s: 10, .. })
        ));
        assert_eq!(shift_graph(9, &[]), Err(ArithmeticError::EmptyShifts));
    }

    #[test]
    fn independence_check_examples() {
        // Large smallest elements make the shifts inadmissible.
        assert_eq!(
            sum_free_independence_check(&[11, 13, 15, 17, 19], 20, 2),
            Err(ArithmeticError::NotApplicable)
        );
        assert_eq!(sum_free_independence_check(&[3, 4, 9, 10], 20, 2), Ok(true));
        // |A| = t is vacuously independent.
        assert_eq!(sum_free_independence_check(&[3, 4], 20, 2), Ok(true));
        assert_eq!(
            sum_free_independence_check(&[1, 2], 20, 1),
            Err(ArithmeticError::NotSumFree)
        );
    }

    #[test]
    fn sum_free_bound_terms_and_trend() {
        let (few, _) = sum_free_count_bound_terms(1000, 10.0).unwrap();
        let expect = 1000f64.powf(2.0 / 3.0) * 500f64.log2() + 501.0;
        assert!((few - expect).abs() < 1e-9);
        assert!(sum_free_count_bound(7, 1.0).is_err());

        // The exponent is always at least n/2 and its ratio to n falls
        // toward 1/2 as n grows.
        let ratio = |n: u64| sum_free_count_bound(n, 10.0).unwrap().log2_value / n as f64;
        let (r3, r6, r12) = (ratio(1_000), ratio(1_000_000), ratio(1_000_000_000_000));
        assert!(r3 > r6 && r6 > r12, "{r3} {r6} {r12}");
        assert!(r6 > 0.5);
        assert!(r12 <= 0.51, "ratio at 1e12 is {r12}");
    }

    #[test]
    fn ap_hypergraph_counts() {
        assert_eq!(build_3ap_hypergraph(5).triples.len(), 4);
        assert_eq!(build_3ap_hypergraph(3).triples, vec![[1, 2, 3]]);
        assert!(build_3ap_hypergraph(2).triples.is_empty());
        for n in 1..=100 {
            let ap = build_3ap_hypergraph(n);
            assert!(ap.max_degree() as u64 <= 2 * n, "degree cap fails at n={n}");
        }
    }

    #[test]
    fn witness_graph_example() {
        let ap = build_3ap_hypergraph(5);
        let b: Vec<u64> = (1..=5).collect();
        let lg = ap_witness_graph(&b, &[3], &ap).unwrap();
        let mut edges: Vec<(u64, u64)> = lg
            .graph
            .edges()
            .into_iter()
            .map(|(u, v)| (lg.label(u), lg.label(v)))
            .collect();
        edges.sort_unstable();
        assert_eq!(edges, vec![(1, 2), (1, 5), (2, 4), (4, 5)]);
    }

    #[test]
    fn witness_graph_empty_witness_set() {
        let ap = build_3ap_hypergraph(9);
        let b: Vec<u64> = (1..=9).collect();
        let lg = ap_witness_graph(&b, &[], &ap).unwrap();
        assert_eq!(lg.graph.edge_count(), 0);
        assert!(matches!(
            ap_witness_graph(&[1, 2, 3], &[7], &ap),
            Err(ArithmeticError::WitnessNotSubset)
        ));
    }

    #[test]
    fn witness_graph_degree_cap_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let n = rng.random_range(5..=30u64);
            let ap = build_3ap_hypergraph(n);
            let b: Vec<u64> = (1..=n).filter(|_| rng.random_bool(0.7)).collect();
            let w: Vec<u64> = b.iter().copied().filter(|_| rng.random_bool(0.3)).collect();
            let lg = ap_witness_graph(&b, &w, &ap).unwrap();
            for v in 0..lg.graph.n() {
                assert!(lg.graph.degree(v) <= 3 * w.len());
            }
        }
    }

    #[test]
    fn delta_roth_examples() {
        let all5: Vec<u64> = (1..=5).collect();
        assert_eq!(is_delta_roth(&all5, 0.9), Ok(true));
        assert_eq!(is_delta_roth(&all5, 0.8), Ok(false));
        assert_eq!(is_delta_roth(&[], 0.5), Ok(true));
    }

    #[test]
    fn delta_roth_direct_agrees_on_small_sets() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let a: Vec<u64> = (1..=12).filter(|_| rng.random_bool(0.5)).collect();
            for delta in [0.3, 0.5, 0.7, 0.9] {
                assert_eq!(
                    is_delta_roth(&a, delta).unwrap(),
                    is_delta_roth_direct(&a, delta).unwrap(),
                    "A = {a:?}, delta = {delta}"
                );
            }
        }
    }

    #[test]
    fn experiment_with_m_equal_n_has_no_randomness() {
        let expect = is_delta_roth(&(1..=9).collect::<Vec<_>>(), 0.7).unwrap();
        let res = roth_random_experiment(9, 9, 0.7, 25, 3).unwrap();
        assert_eq!(res.rate(), if expect { 1.0 } else { 0.0 });
    }

    #[test]
    fn experiment_rejects_zero_trials_and_is_deterministic() {
        assert_eq!(
            roth_random_experiment(10, 5, 0.5, 0, 1),
            Err(ArithmeticError::ZeroTrials)
        );
        let a = roth_random_experiment(20, 10, 0.7, 50, 42).unwrap();
        let b = roth_random_experiment(20, 10, 0.7, 50, 42).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn recursion_bound_cases() {
        let b0 = three_ap_recursion_bound(100, 20, 0.5, 0.01, 0).unwrap();
        assert!((b0.log2_value - log2_binomial(25.0, 20)).abs() < 1e-9);
        let mut prev = b0.log2_value;
        for depth in 1..=3 {
            let b = three_ap_recursion_bound(100, 80, 0.5, 0.01, depth).unwrap();
            let base = three_ap_recursion_bound(100, 80, 0.5, 0.01, depth - 1).unwrap();
            assert!(b.log2_value >= base.log2_value);
            prev = prev.max(b.log2_value);
        }
        assert!(matches!(
            three_ap_recursion_bound(100, 30, 0.5, 0.01, 2),
            Err(ArithmeticError::MBelowRecursionFloor { floor: 40 })
        ));
        let b = three_ap_recursion_bound(100, 60, 0.5, 0.01, 2).unwrap();
        let expect = 2.0 + 4.0 * log2_binomial(100.0, 10) + log2_binomial(25.0, 20);
        assert!((b.log2_value - expect).abs() < 1e-9);
    }

    #[test]
    fn recursion_states_track_budgets() {
        let (params, states) = recursion_states(100, 60, 0.5, 0.01, 3);
        assert_eq!(params.w, 10);
        assert_eq!(states.len(), 4);
        for pair in states.windows(2) {
            assert_eq!(pair[1].ground_budget, pair[0].ground_budget - 1);
            assert_eq!(pair[1].remaining_size, pair[0].remaining_size - 20);
        }
        assert_eq!(recursion_default_depth(0.5, 0.01), 900);
    }

    #[test]
    fn varnavides_profiles() {
        let (count, beta) = varnavides_profile(9, 1.0).unwrap();
        assert_eq!(count, oracle::count_3aps(&(1..=9).collect::<Vec<_>>(), 9).unwrap());
        assert!((beta - count as f64 / 81.0).abs() < 1e-12);
        // Smaller subsets qualify at delta = 8/9; the minimum cannot rise.
        let (count_89, _) = varnavides_profile(9, 8.0 / 9.0).unwrap();
        assert!(count_89 <= count);
        let mut prev = 0;
        for k in 1..=9 {
            let (c, _) = varnavides_profile(9, k as f64 / 9.0).unwrap();
            assert!(c >= prev, "min count must be non-decreasing in delta");
            prev = c;
        }
    }
}
