//! Smallest adjacency eigenvalue of regular graphs and the bounds driven by
//! it: the subset edge-density lemma, Hoffman's independence bound, and the
//! eigenvalue counting bound.

use crate::bitset::VertexSet;
use crate::bounds::{log2_binomial, LogBound};
use crate::error::ErrorClass;
use crate::graph::Graph;
use nalgebra::{DMatrix, SymmetricEigen};
use thiserror::Error;

/// Cap for dense eigen-decomposition.
pub const SPECTRUM_CAP: usize = 64;
/// Cap for exhaustive all-subsets checks.
pub const SUBSET_CAP: usize = 14;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpectralError {
    #[error("graph is not regular")]
    NotRegular,
    #[error("n = {n} exceeds cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("degenerate ratio: d equals the eigenvalue")]
    DegenerateRatio,
    #[error("vacuous bound: lambda/(d+lambda) + epsilon >= 1")]
    VacuousBound,
}

impl SpectralError {
    pub fn class(&self) -> ErrorClass {
        match self {
            SpectralError::TooLarge { .. } => ErrorClass::Resource,
            _ => ErrorClass::Input,
        }
    }
}

/// All adjacency eigenvalues, ascending, by dense symmetric decomposition.
pub fn adjacency_spectrum(g: &Graph) -> Result<Vec<f64>, SpectralError> {
    let n = g.n();
    if n > SPECTRUM_CAP {
        return Err(SpectralError::TooLarge { n, cap: SPECTRUM_CAP });
    }
    let mut m = DMatrix::<f64>::zeros(n, n);
    for u in 0..n {
        for v in g.neighbors(u).iter() {
            m[(u, v)] = 1.0;
        }
    }
    let mut eigen: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    eigen.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(eigen)
}

/// The smallest adjacency eigenvalue of a regular graph.
pub fn smallest_eigenvalue(g: &Graph) -> Result<f64, SpectralError> {
    if g.regular_degree().is_none() {
        return Err(SpectralError::NotRegular);
    }
    let spectrum = adjacency_spectrum(g)?;
    Ok(spectrum.first().copied().unwrap_or(0.0))
}

/// Spectral summary of a regular graph.
#[derive(Clone, Copy, Debug)]
pub struct SpectralProfile {
    pub n: usize,
    pub degree: usize,
    pub lambda_min: f64,
}

impl SpectralProfile {
    pub fn of(g: &Graph) -> Result<Self, SpectralError> {
        let degree = g.regular_degree().ok_or(SpectralError::NotRegular)?;
        Ok(SpectralProfile {
            n: g.n(),
            degree,
            lambda_min: smallest_eigenvalue(g)?,
        })
    }
}

fn alon_chung_slack_with(g: &Graph, d: usize, lambda: f64, size: usize, twice_edges: usize) -> f64 {
    let n = g.n() as f64;
    let a = size as f64;
    let rhs = d as f64 / n * a * a + lambda / n * a * (n - a);
    twice_edges as f64 - rhs
}

/// `2 e(A) - [ (d/n)|A|^2 + (lambda/n)|A|(n - |A|) ]`; the density lemma
/// asserts this is nonnegative for every subset of a regular graph.
pub fn alon_chung_slack(g: &Graph, a: &VertexSet) -> Result<f64, SpectralError> {
    let d = g.regular_degree().ok_or(SpectralError::NotRegular)?;
    let lambda = smallest_eigenvalue(g)?;
    Ok(alon_chung_slack_with(g, d, lambda, a.len(), 2 * g.edges_within(a)))
}

/// The density inequality with additive tolerance 1e-6.
pub fn alon_chung_check(g: &Graph, a: &VertexSet) -> Result<bool, SpectralError> {
    Ok(alon_chung_slack(g, a)? >= -1e-6)
}

/// Minimum slack over all `2^n` subsets.
pub fn alon_chung_worst_slack(g: &Graph) -> Result<f64, SpectralError> {
    let n = g.n();
    if n > SUBSET_CAP {
        return Err(SpectralError::TooLarge { n, cap: SUBSET_CAP });
    }
    let d = g.regular_degree().ok_or(SpectralError::NotRegular)?;
    let lambda = smallest_eigenvalue(g)?;
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, u| m | (1 << u)))
        .collect();
    let mut worst = f64::INFINITY;
    for mask in 0u64..(1 << n) {
        let mut twice_edges = 0usize;
        let mut bits = mask;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            twice_edges += (adj[v] & mask).count_ones() as usize;
        }
        let slack = alon_chung_slack_with(g, d, lambda, mask.count_ones() as usize, twice_edges);
        if slack < worst {
            worst = slack;
        }
    }
    Ok(worst)
}

/// Hoffman's independence bound `(-lambda / (d - lambda)) n` for a d-regular
/// graph with smallest eigenvalue `lambda`.
pub fn hoffman_bound(n: usize, d: usize, lambda: f64) -> Result<f64, SpectralError> {
    if (d as f64 - lambda).abs() < 1e-12 {
        return Err(SpectralError::DegenerateRatio);
    }
    if (d as f64) < lambda {
        return Err(SpectralError::DegenerateRatio);
    }
    Ok(-lambda / (d as f64 - lambda) * n as f64)
}

/// The eigenvalue counting bound `log2 C((lambda/(d+lambda) + eps) n, m)`
/// where `lambda` is the magnitude of the smallest eigenvalue. Errors with
/// `VacuousBound` when the ratio reaches 1 and there is nothing to prove.
pub fn eigenvalue_count_bound(
    n: usize,
    d: usize,
    lambda: f64,
    epsilon: f64,
    m: usize,
) -> Result<LogBound, SpectralError> {
    let ratio = lambda / (d as f64 + lambda) + epsilon;
    if ratio >= 1.0 {
        return Err(SpectralError::VacuousBound);
    }
    Ok(LogBound::new(
        "eigenvalue-count",
        vec![
            ("n", n as f64),
            ("d", d as f64),
            ("lambda", lambda),
            ("epsilon", epsilon),
            ("m", m as f64),
        ],
        log2_binomial(ratio * n as f64, m),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::oracle;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn known_smallest_eigenvalues() {
        for d in 1..=4 {
            let g = catalog::complete_bipartite(d, d);
            assert_close(smallest_eigenvalue(&g).unwrap(), -(d as f64), 1e-9);
        }
        for n in 2..=6 {
            assert_close(smallest_eigenvalue(&catalog::complete(n)).unwrap(), -1.0, 1e-9);
        }
        assert_close(smallest_eigenvalue(&catalog::cycle(4)).unwrap(), -2.0, 1e-9);
        assert_close(smallest_eigenvalue(&catalog::petersen()).unwrap(), -2.0, 1e-9);
    }

    #[test]
    fn non_regular_is_rejected() {
        assert_eq!(
            smallest_eigenvalue(&catalog::path(3)),
            Err(SpectralError::NotRegular)
        );
    }

    #[test]
    fn spectrum_trace_identities() {
        for entry in catalog::builtin_catalog() {
            if entry.graph.n() > 12 {
                continue;
            }
            let spectrum = adjacency_spectrum(&entry.graph).unwrap();
            let trace: f64 = spectrum.iter().sum();
            let trace_sq: f64 = spectrum.iter().map(|x| x * x).sum();
            assert_close(trace, 0.0, 1e-6);
            assert_close(trace_sq, 2.0 * entry.graph.edge_count() as f64, 1e-6);
        }
    }

    #[test]
    fn alon_chung_degenerate_subsets() {
        let g = catalog::cycle(4);
        // A = V gives equality by the handshake identity; A = empty gives 0 >= 0.
        assert_close(alon_chung_slack(&g, &g.vertex_set()).unwrap(), 0.0, 1e-9);
        assert_close(
            alon_chung_slack(&g, &VertexSet::empty(4)).unwrap(),
            0.0,
            1e-9,
        );
        // One side of the bipartition: 0 >= (2/4)*4 + (-2/4)*2*2 = 0.
        let side = VertexSet::from_members(4, [0, 2]);
        assert_close(alon_chung_slack(&g, &side).unwrap(), 0.0, 1e-9);
        assert!(alon_chung_check(&g, &side).unwrap());
    }

    #[test]
    fn alon_chung_worst_slack_nonnegative_on_small_regular_graphs() {
        for entry in catalog::regular_catalog(10) {
            let worst = alon_chung_worst_slack(&entry.graph).unwrap();
            assert!(worst >= -1e-6, "{}: worst slack {worst}", entry.name);
        }
    }

    #[test]
    fn hoffman_tight_cases() {
        // Complete bipartite: (d/2d) * 2d = d = alpha.
        assert_close(hoffman_bound(8, 4, -4.0).unwrap(), 4.0, 1e-9);
        // Complete graph: bound 1 = alpha.
        assert_close(hoffman_bound(6, 5, -1.0).unwrap(), 1.0, 1e-9);
        assert_eq!(hoffman_bound(6, 2, 2.0), Err(SpectralError::DegenerateRatio));
    }

    #[test]
    fn hoffman_matches_petersen_alpha() {
        let g = catalog::petersen();
        let lambda = smallest_eigenvalue(&g).unwrap();
        let bound = hoffman_bound(10, 3, lambda).unwrap();
        assert_close(bound, 4.0, 1e-6);
        assert_eq!(oracle::independence_number(&g).unwrap(), 4);
    }

    #[test]
    fn eigenvalue_count_bound_cases() {
        assert_eq!(
            eigenvalue_count_bound(10, 3, 2.0, 0.1, 0).unwrap().log2_value,
            0.0
        );
        let b = eigenvalue_count_bound(20, 3, 2.0, 0.1, 2).unwrap();
        assert_close(b.log2_value, 45f64.log2(), 1e-9);
        assert!(matches!(
            eigenvalue_count_bound(10, 1, 9.0, 0.5, 2),
            Err(SpectralError::VacuousBound)
        ));
    }

    #[test]
    fn eigenvalue_count_bound_dominates_on_petersen() {
        let g = catalog::petersen();
        let lambda = -smallest_eigenvalue(&g).unwrap();
        let bound = eigenvalue_count_bound(10, 3, lambda, 0.1, 4).unwrap();
        let exact = oracle::count_independent_sets(&g).unwrap().count(4);
        assert_eq!(exact.to_string(), "5");
        assert!(bound.log2_value + 1e-9 >= 5f64.log2());
    }
}
