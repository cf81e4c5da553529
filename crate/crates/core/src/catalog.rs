//! Built-in graph families used by the verification suite and tests.
//!
//! Generated programmatically rather than shipped as files so the catalog
//! cannot drift from the constructors.

use crate::graph::Graph;

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Graph::with_edges(n, &edges)
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::with_edges(n, &edges)
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    Graph::with_edges(n, &edges)
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in a..(a + b) {
            edges.push((u, v));
        }
    }
    Graph::with_edges(a + b, &edges)
}

/// The 3-dimensional hypercube Q3.
pub fn cube() -> Graph {
    let mut edges = Vec::new();
    for u in 0..8u32 {
        for bit in 0..3 {
            let v = u ^ (1 << bit);
            if u < v {
                edges.push((u as usize, v as usize));
            }
        }
    }
    Graph::with_edges(8, &edges)
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    // Outer 5-cycle 0..5, inner 5-cycle (pentagram) 5..10, spokes i -- i+5.
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    Graph::with_edges(10, &edges)
}

pub struct CatalogEntry {
    pub name: String,
    pub graph: Graph,
}

fn entry(name: String, graph: Graph) -> CatalogEntry {
    CatalogEntry { name, graph }
}

/// The built-in catalog: paths, cycles C3..C12, complete graphs, balanced
/// complete bipartite graphs, the 3-cube, and the Petersen graph.
pub fn builtin_catalog() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for n in 2..=10 {
        out.push(entry(format!("P{n}"), path(n)));
    }
    for n in 3..=12 {
        out.push(entry(format!("C{n}"), cycle(n)));
    }
    for n in 2..=8 {
        out.push(entry(format!("K{n}"), complete(n)));
    }
    for d in 1..=6 {
        out.push(entry(format!("K{d},{d}"), complete_bipartite(d, d)));
    }
    out.push(entry("Q3".into(), cube()));
    out.push(entry("Petersen".into(), petersen()));
    out
}

/// Catalog members that are regular with at most `max_n` vertices.
pub fn regular_catalog(max_n: usize) -> Vec<CatalogEntry> {
    builtin_catalog()
        .into_iter()
        .filter(|e| e.graph.n() <= max_n && e.graph.n() > 0 && e.graph.regular_degree().is_some())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_shapes() {
        assert_eq!(path(5).edge_count(), 4);
        assert_eq!(cycle(6).edge_count(), 6);
        assert_eq!(complete(5).edge_count(), 10);
        assert_eq!(complete_bipartite(3, 3).edge_count(), 9);
        assert_eq!(cube().edge_count(), 12);
        assert_eq!(petersen().edge_count(), 15);
    }

    #[test]
    fn petersen_is_cubic_and_triangle_free() {
        let g = petersen();
        assert_eq!(g.regular_degree(), Some(3));
        for (u, v) in g.edges() {
            assert_eq!(g.neighbors(u).intersection_len(g.neighbors(v)), 0);
        }
    }

    #[test]
    fn regular_catalog_filters() {
        for e in regular_catalog(12) {
            assert!(e.graph.n() <= 12, "{} too large", e.name);
            assert!(e.graph.regular_degree().is_some(), "{} not regular", e.name);
        }
    }
}
