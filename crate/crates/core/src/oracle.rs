//! Exact brute-force oracles: independent-set counts, sum-free subsets,
//! 3-AP-free sets, and C4-free graph counts. Everything here is exact
//! big-integer arithmetic; no floating point.

use crate::error::ErrorClass;
use crate::graph::Graph;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::collections::HashMap;
use thiserror::Error;

/// Size cap for the branch-and-bound independent-set counter.
pub const INDEPENDENT_SET_CAP: usize = 40;
/// Size cap for plain bitmask exhaustion.
pub const BITMASK_CAP: usize = 20;
/// Size cap for the sum-free subset counter.
pub const SUM_FREE_CAP: u64 = 24;
/// Size cap for full 3-AP-free count tables.
pub const AP_FREE_TABLE_CAP: usize = 30;
/// Size cap for the maximum 3-AP-free subset search.
pub const AP_FREE_MAX_CAP: usize = 40;
/// Size cap for exhaustive C4-free graph enumeration.
pub const C4_GRAPH_CAP: usize = 6;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("{what}: size {size} exceeds cap {cap}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("set elements must be positive integers")]
    NonPositiveElement,
    #[error("element {value} outside the ground set [1, {n}]")]
    OutOfRange { value: u64, n: u64 },
}

impl OracleError {
    pub fn class(&self) -> ErrorClass {
        match self {
            OracleError::TooLarge { .. } => ErrorClass::Resource,
            _ => ErrorClass::Input,
        }
    }
}

/// Exact counts indexed by subset size, plus their total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    by_size: Vec<BigUint>,
    total: BigUint,
}

impl CountTable {
    pub fn from_sizes(mut by_size: Vec<BigUint>) -> Self {
        while by_size.len() > 1 && by_size.last().is_some_and(|c| c.is_zero()) {
            by_size.pop();
        }
        let total = by_size.iter().sum();
        CountTable { by_size, total }
    }

    pub fn by_size(&self) -> &[BigUint] {
        &self.by_size
    }

    pub fn count(&self, m: usize) -> BigUint {
        self.by_size.get(m).cloned().unwrap_or_else(BigUint::zero)
    }

    pub fn total(&self) -> &BigUint {
        &self.total
    }

    /// Largest size with a nonzero count.
    pub fn max_size(&self) -> usize {
        self.by_size.len() - 1
    }

    /// CSV rows `m,count` followed by a `total` footer row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,count\n");
        for (m, c) in self.by_size.iter().enumerate() {
            out.push_str(&format!("{m},{c}\n"));
        }
        out.push_str(&format!("total,{}\n", self.total));
        out
    }
}

fn adjacency_masks(g: &Graph) -> Vec<u64> {
    assert!(g.n() <= 64);
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, u| m | (1 << u)))
        .collect()
}

fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.n()];
    let mut comps = Vec::new();
    for start in 0..g.n() {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        let mut queue = vec![start];
        seen[start] = true;
        while let Some(v) = queue.pop() {
            for u in g.neighbors(v).iter() {
                if !seen[u] {
                    seen[u] = true;
                    comp.push(u);
                    queue.push(u);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Independence polynomial coefficients of the subgraph induced by `mask`,
/// by branching on a maximum-degree vertex: every independent set either
/// avoids `v` or contains `v` and avoids `N[v]`.
fn independence_poly(mask: u64, adj: &[u64], memo: &mut HashMap<u64, Vec<BigUint>>) -> Vec<BigUint> {
    if mask == 0 {
        return vec![BigUint::one()];
    }
    if let Some(p) = memo.get(&mask) {
        return p.clone();
    }
    let mut best_v = usize::MAX;
    let mut best_deg = 0usize;
    let mut edge_free = true;
    let mut bits = mask;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let deg = (adj[v] & mask).count_ones() as usize;
        if deg > 0 {
            edge_free = false;
        }
        if best_v == usize::MAX || deg > best_deg {
            best_v = v;
            best_deg = deg;
        }
    }
    let poly = if edge_free {
        // (1 + x)^k
        let k = mask.count_ones() as u64;
        (0..=k).map(|i| crate::bounds::big_binomial(k, i)).collect()
    } else {
        let without = independence_poly(mask & !(1 << best_v), adj, memo);
        let with = independence_poly(mask & !(1 << best_v) & !adj[best_v], adj, memo);
        let mut out = without;
        if out.len() < with.len() + 1 {
            out.resize(with.len() + 1, BigUint::zero());
        }
        for (i, c) in with.iter().enumerate() {
            out[i + 1] += c;
        }
        out
    };
    memo.insert(mask, poly.clone());
    poly
}

fn poly_mul(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact independent-set counts by size, component by component.
pub fn count_independent_sets(g: &Graph) -> Result<CountTable, OracleError> {
    if g.n() > INDEPENDENT_SET_CAP {
        return Err(OracleError::TooLarge {
            what: "independent-set count",
            size: g.n(),
            cap: INDEPENDENT_SET_CAP,
        });
    }
    let mut acc = vec![BigUint::one()];
    for comp in connected_components(g) {
        let local_index: HashMap<usize, usize> =
            comp.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj: Vec<u64> = comp
            .iter()
            .map(|&v| {
                g.neighbors(v)
                    .iter()
                    .filter_map(|u| local_index.get(&u))
                    .fold(0u64, |m, &i| m | (1 << i))
            })
            .collect();
        let full = if comp.len() == 64 {
            u64::MAX
        } else {
            (1u64 << comp.len()) - 1
        };
        let mut memo = HashMap::new();
        let poly = independence_poly(full, &adj, &mut memo);
        acc = poly_mul(&acc, &poly);
    }
    Ok(CountTable::from_sizes(acc))
}

/// Exhaustive bitmask route for the same counts; the independent second
/// oracle used to cross-check `count_independent_sets`.
pub fn count_independent_sets_bitmask(g: &Graph) -> Result<CountTable, OracleError> {
    let n = g.n();
    if n > BITMASK_CAP {
        return Err(OracleError::TooLarge {
            what: "bitmask independent-set count",
            size: n,
            cap: BITMASK_CAP,
        });
    }
    let adj = adjacency_masks(g);
    let mut by_size = vec![BigUint::zero(); n + 1];
    for mask in 0u64..(1 << n) {
        if mask_independent(mask, &adj) {
            by_size[mask.count_ones() as usize] += BigUint::one();
        }
    }
    Ok(CountTable::from_sizes(by_size))
}

fn mask_independent(mask: u64, adj: &[u64]) -> bool {
    let mut bits = mask;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        if adj[v] & mask != 0 {
            return false;
        }
    }
    true
}

/// All independent sets of `g` as bitmasks, ascending.
pub fn independent_set_masks(g: &Graph) -> Result<Vec<u64>, OracleError> {
    let n = g.n();
    if n > BITMASK_CAP {
        return Err(OracleError::TooLarge {
            what: "independent-set enumeration",
            size: n,
            cap: BITMASK_CAP,
        });
    }
    let adj = adjacency_masks(g);
    Ok((0u64..(1 << n)).filter(|&m| mask_independent(m, &adj)).collect())
}

pub fn independence_number(g: &Graph) -> Result<usize, OracleError> {
    Ok(count_independent_sets(g)?.max_size())
}

fn check_positive(a: &[u64]) -> Result<(), OracleError> {
    if a.contains(&0) {
        return Err(OracleError::NonPositiveElement);
    }
    Ok(())
}

/// Whether `a` has no solution to `x + y = z` (`x = y` allowed).
pub fn is_sum_free(a: &[u64]) -> Result<bool, OracleError> {
    check_positive(a)?;
    let mut vals: Vec<u64> = a.to_vec();
    vals.sort_unstable();
    vals.dedup();
    for (i, &x) in vals.iter().enumerate() {
        for &y in &vals[i..] {
            if vals.binary_search(&(x + y)).is_ok() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Exact sum-free subset counts of `[n]` by size, via DFS in increasing
/// element order: a new largest element `z` is admissible iff `z` is not a
/// sum of two chosen elements.
pub fn count_sum_free(n: u64) -> Result<CountTable, OracleError> {
    if n > SUM_FREE_CAP {
        return Err(OracleError::TooLarge {
            what: "sum-free subset count",
            size: n as usize,
            cap: SUM_FREE_CAP as usize,
        });
    }
    let mut by_size = vec![0u64; n as usize + 1];
    let mut forbidden = vec![0u32; 2 * n as usize + 2];
    let mut chosen: Vec<u64> = Vec::new();
    fn dfs(next: u64, n: u64, chosen: &mut Vec<u64>, forbidden: &mut [u32], by_size: &mut [u64]) {
        if next > n {
            by_size[chosen.len()] += 1;
            return;
        }
        dfs(next + 1, n, chosen, forbidden, by_size);
        if forbidden[next as usize] == 0 {
            for &x in chosen.iter() {
                let s = x + next;
                if s <= n {
                    forbidden[s as usize] += 1;
                }
            }
            if 2 * next <= n {
                forbidden[2 * next as usize] += 1;
            }
            chosen.push(next);
            dfs(next + 1, n, chosen, forbidden, by_size);
            chosen.pop();
            for &x in chosen.iter() {
                let s = x + next;
                if s <= n {
                    forbidden[s as usize] -= 1;
                }
            }
            if 2 * next <= n {
                forbidden[2 * next as usize] -= 1;
            }
        }
    }
    dfs(1, n, &mut chosen, &mut forbidden, &mut by_size);
    Ok(CountTable::from_sizes(
        by_size.into_iter().map(BigUint::from).collect(),
    ))
}

/// Bitmask second oracle for sum-free counts (bit `v-1` encodes value `v`).
pub fn count_sum_free_bitmask(n: u64) -> Result<CountTable, OracleError> {
    if n > BITMASK_CAP as u64 {
        return Err(OracleError::TooLarge {
            what: "bitmask sum-free count",
            size: n as usize,
            cap: BITMASK_CAP,
        });
    }
    let mut by_size = vec![0u64; n as usize + 1];
    'mask: for mask in 0u64..(1 << n) {
        let mut xs = mask;
        while xs != 0 {
            let x = xs.trailing_zeros() as u64 + 1;
            xs &= xs - 1;
            let mut ys = mask & !((1 << (x - 1)) - 1);
            while ys != 0 {
                let y = ys.trailing_zeros() as u64 + 1;
                ys &= ys - 1;
                let s = x + y;
                if s <= n && mask & (1 << (s - 1)) != 0 {
                    continue 'mask;
                }
            }
        }
        by_size[mask.count_ones() as usize] += 1;
    }
    Ok(CountTable::from_sizes(
        by_size.into_iter().map(BigUint::from).collect(),
    ))
}

/// Exact number of 3-term APs `(x, x+d, x+2d)` with `d >= 1` fully inside `b`.
pub fn count_3aps(b: &[u64], n: u64) -> Result<u64, OracleError> {
    check_positive(b)?;
    if let Some(&bad) = b.iter().find(|&&x| x > n) {
        return Err(OracleError::OutOfRange { value: bad, n });
    }
    let mut member = vec![false; n as usize + 1];
    for &x in b {
        member[x as usize] = true;
    }
    let mut count = 0;
    for &x in b {
        let mut d = 1;
        while x + 2 * d <= n {
            if member[(x + d) as usize] && member[(x + 2 * d) as usize] {
                count += 1;
            }
            d += 1;
        }
    }
    Ok(count)
}

/// 3-AP-free subset counts of `b` by size, via DFS in increasing order: a new
/// largest element `z` closes an AP iff `2y - z` is chosen for some chosen `y`.
pub fn count_3ap_free_sizes(b: &[u64]) -> Result<CountTable, OracleError> {
    check_positive(b)?;
    if b.len() > AP_FREE_TABLE_CAP {
        return Err(OracleError::TooLarge {
            what: "3-AP-free count table",
            size: b.len(),
            cap: AP_FREE_TABLE_CAP,
        });
    }
    let mut vals: Vec<u64> = b.to_vec();
    vals.sort_unstable();
    vals.dedup();
    let mut by_size = vec![0u64; vals.len() + 1];
    let mut chosen: Vec<u64> = Vec::new();
    fn dfs(idx: usize, vals: &[u64], chosen: &mut Vec<u64>, by_size: &mut [u64]) {
        if idx == vals.len() {
            by_size[chosen.len()] += 1;
            return;
        }
        dfs(idx + 1, vals, chosen, by_size);
        let z = vals[idx];
        if !closes_ap(chosen, z) {
            chosen.push(z);
            dfs(idx + 1, vals, chosen, by_size);
            chosen.pop();
        }
    }
    dfs(0, &vals, &mut chosen, &mut by_size);
    Ok(CountTable::from_sizes(
        by_size.into_iter().map(BigUint::from).collect(),
    ))
}

/// `z` would complete a 3-term AP as the largest element of `chosen ∪ {z}`.
/// `chosen` must be sorted ascending with every element below `z`.
fn closes_ap(chosen: &[u64], z: u64) -> bool {
    for &y in chosen.iter().rev() {
        if 2 * y <= z {
            break;
        }
        let x = 2 * y - z;
        if chosen.binary_search(&x).is_ok() {
            return true;
        }
    }
    false
}

/// Whether `b` contains any 3-term AP.
pub fn has_3ap(b: &[u64]) -> bool {
    let mut vals: Vec<u64> = b.to_vec();
    vals.sort_unstable();
    vals.dedup();
    for (i, &x) in vals.iter().enumerate() {
        for &y in &vals[i + 1..] {
            if vals.binary_search(&(2 * y - x)).is_ok() {
                return true;
            }
        }
    }
    false
}

/// `a(n, m)`: the number of m-element subsets of `[n]` with no 3-term AP.
pub fn count_3ap_free(n: u64, m: usize) -> Result<BigUint, OracleError> {
    let ground: Vec<u64> = (1..=n).collect();
    let table = count_3ap_free_sizes(&ground)?;
    Ok(table.count(m))
}

/// Size of the largest 3-AP-free subset of `a`, by branch and bound.
pub fn max_3ap_free_subset(a: &[u64]) -> Result<usize, OracleError> {
    check_positive(a)?;
    if a.len() > AP_FREE_MAX_CAP {
        return Err(OracleError::TooLarge {
            what: "max 3-AP-free subset",
            size: a.len(),
            cap: AP_FREE_MAX_CAP,
        });
    }
    let mut vals: Vec<u64> = a.to_vec();
    vals.sort_unstable();
    vals.dedup();
    let mut best = 0usize;
    let mut chosen: Vec<u64> = Vec::new();
    fn dfs(idx: usize, vals: &[u64], chosen: &mut Vec<u64>, best: &mut usize) {
        if chosen.len() > *best {
            *best = chosen.len();
        }
        if idx == vals.len() || chosen.len() + (vals.len() - idx) <= *best {
            return;
        }
        let z = vals[idx];
        if !closes_ap(chosen, z) {
            chosen.push(z);
            dfs(idx + 1, vals, chosen, best);
            chosen.pop();
        }
        dfs(idx + 1, vals, chosen, best);
    }
    dfs(0, &vals, &mut chosen, &mut best);
    Ok(best)
}

/// Decision form of `max_3ap_free_subset`: does `a` contain a 3-AP-free
/// subset with at least `t` elements? Exits as soon as one is found, and
/// prunes branches that cannot reach `t`.
pub fn has_3ap_free_subset_of_size(a: &[u64], t: usize) -> Result<bool, OracleError> {
    if t == 0 {
        return Ok(true);
    }
    check_positive(a)?;
    if a.len() > AP_FREE_MAX_CAP {
        return Err(OracleError::TooLarge {
            what: "3-AP-free subset decision",
            size: a.len(),
            cap: AP_FREE_MAX_CAP,
        });
    }
    let mut vals: Vec<u64> = a.to_vec();
    vals.sort_unstable();
    vals.dedup();
    if vals.len() < t {
        return Ok(false);
    }
    let mut chosen: Vec<u64> = Vec::new();
    fn dfs(idx: usize, vals: &[u64], chosen: &mut Vec<u64>, t: usize) -> bool {
        if chosen.len() >= t {
            return true;
        }
        if idx == vals.len() || chosen.len() + (vals.len() - idx) < t {
            return false;
        }
        let z = vals[idx];
        if !closes_ap(chosen, z) {
            chosen.push(z);
            if dfs(idx + 1, vals, chosen, t) {
                return true;
            }
            chosen.pop();
        }
        dfs(idx + 1, vals, chosen, t)
    }
    Ok(dfs(0, &vals, &mut chosen, t))
}

/// Whether some vertex pair has two or more common neighbors.
pub fn has_c4(g: &Graph) -> bool {
    for u in 0..g.n() {
        for v in (u + 1)..g.n() {
            if g.neighbors(u).intersection_len(g.neighbors(v)) >= 2 {
                return true;
            }
        }
    }
    false
}

fn enumerate_c4_free_graphs(n: usize) -> Result<(BigUint, usize), OracleError> {
    if n > C4_GRAPH_CAP {
        return Err(OracleError::TooLarge {
            what: "C4-free graph enumeration",
            size: n,
            cap: C4_GRAPH_CAP,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    let mut count = 0u64;
    let mut max_edges = 0usize;
    'outer: for mask in 0u64..(1 << pairs.len()) {
        let mut adj = [0u64; C4_GRAPH_CAP];
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask & (1 << i) != 0 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        for u in 0..n {
            for v in (u + 1)..n {
                if (adj[u] & adj[v]).count_ones() >= 2 {
                    continue 'outer;
                }
            }
        }
        count += 1;
        max_edges = max_edges.max(mask.count_ones() as usize);
    }
    Ok((BigUint::from(count), max_edges))
}

/// Exact number of labeled C4-free graphs on `n` vertices.
pub fn count_c4_free_graphs(n: usize) -> Result<BigUint, OracleError> {
    enumerate_c4_free_graphs(n).map(|(count, _)| count)
}

/// Maximum edge count over C4-free graphs on `n` vertices.
pub fn max_c4_free_edges(n: usize) -> Result<usize, OracleError> {
    enumerate_c4_free_graphs(n).map(|(_, ex)| ex)
}
