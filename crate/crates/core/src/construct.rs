//! Explicit extremal graphs. Every report recounts copies on the built
//! graph; nothing about the contract is assumed.

use serde::Serialize;

use crate::count::count_copies;
use crate::error::{Error, Result};
use crate::graph::{binomial, path_forest, turan_edges, turan_part_sizes, Graph};
use crate::partition::{is_unique_partition, PartitionPair};

#[derive(Debug, Clone, Serialize)]
pub struct ConstructionReport {
    #[serde(rename = "graph6")]
    pub graph: Graph,
    pub expected_edges: u64,
    pub actual_edges: u64,
    pub expected_copies: u64,
    pub actual_copies: u64,
    pub ok: bool,
}

impl ConstructionReport {
    fn check(graph: Graph, pattern: &Graph, expected_edges: u64, expected_copies: u64) -> Self {
        let actual_edges = graph.edge_count() as u64;
        let actual_copies = count_copies(&graph, pattern).value();
        ConstructionReport {
            graph,
            expected_edges,
            actual_edges,
            expected_copies,
            actual_copies,
            ok: expected_edges == actual_edges && expected_copies == actual_copies,
        }
    }
}

/// A `K_r` on `v_1..v_r` (labels `0..r`) plus a Turán graph on the remaining
/// vertices with classes `V_1..V_{r-1}`; each vertex of `V_i` is joined to
/// the clique except `v_i` and `v_{i+1}`. Contains exactly one `K_r`.
pub fn build_klikk(n: usize, r: usize) -> Result<ConstructionReport> {
    if r < 3 || r > n {
        return Err(Error::Precondition(format!(
            "build_klikk needs 3 <= r <= n, got n={n}, r={r}"
        )));
    }
    let mut g =
        Graph::complete(r)?.disjoint_union(&crate::graph::complete_multipartite(&turan_part_sizes(n - r, r - 1))?)?;
    let mut v = r;
    for (class, size) in turan_part_sizes(n - r, r - 1).into_iter().enumerate() {
        for _ in 0..size {
            for c in (0..r).filter(|&c| c != class && c != class + 1) {
                g.add_edge(v, c)?;
            }
            v += 1;
        }
    }
    let expected = binomial(r as u64, 2) + ((r - 2) * (n - r)) as u64 + turan_edges(n - r, r - 1) as u64;
    Ok(ConstructionReport::check(g, &Graph::complete(r)?, expected, 1))
}

/// `K_{⌊(n-1)/2⌋,⌈(n-1)/2⌉}` plus an apex joined to one vertex of the smaller
/// class and `k` vertices of the larger one. Contains exactly `k` triangles.
pub fn build_triangle_k(n: usize, k: usize) -> Result<ConstructionReport> {
    if n < 3 || k < 1 {
        return Err(Error::Precondition(format!(
            "build_triangle_k needs n >= 3 and k >= 1, got n={n}, k={k}"
        )));
    }
    let small = (n - 1) / 2;
    let large = n - 1 - small;
    if k > large {
        return Err(Error::Precondition(format!(
            "class of size {large} cannot host k={k} apex neighbours"
        )));
    }
    let mut g = Graph::complete_bipartite(small, large)?.disjoint_union(&Graph::empty(1)?)?;
    let apex = n - 1;
    g.add_edge(apex, 0)?;
    for j in 0..k {
        g.add_edge(apex, small + j)?;
    }
    let expected = ((n - 1) * (n - 1) / 4 + k + 1) as u64;
    Ok(ConstructionReport::check(g, &Graph::complete(3)?, expected, k as u64))
}

/// Complement of a path forest with one path per part of a unique partition
/// of `(a, b)`. Contains exactly one spanning `K_{a,b}`.
pub fn build_unique_kab(a: usize, b: usize, pp: &PartitionPair) -> Result<ConstructionReport> {
    if !is_unique_partition(a as u32, b as u32, pp)? {
        return Err(Error::Precondition(format!(
            "{pp} is not a unique partition of ({a}, {b})"
        )));
    }
    let sizes: Vec<usize> = pp.parts_a().iter().chain(pp.parts_b()).map(|&p| p as usize).collect();
    let g = path_forest(&sizes)?.complement();
    let n = (a + b) as u64;
    let expected = binomial(n, 2) - n + sizes.len() as u64;
    Ok(ConstructionReport::check(
        g,
        &Graph::complete_bipartite(a, b)?,
        expected,
        1,
    ))
}

/// `n / r` disjoint copies of `K_r` plus `k / 2` edges joining distinct
/// components at fresh endpoints. Contains exactly `k` copies of the star
/// with `r` leaves.
pub fn build_star_k(n: usize, r: usize, k: usize) -> Result<ConstructionReport> {
    if r < 2 || !n.is_multiple_of(r) {
        return Err(Error::Precondition(format!(
            "build_star_k needs r >= 2 dividing n, got n={n}, r={r}"
        )));
    }
    if !k.is_multiple_of(2) {
        return Err(Error::Precondition(format!("build_star_k needs even k, got {k}")));
    }
    if k > 2 * (n / (2 * r)) {
        return Err(Error::Precondition(format!(
            "k={k} exceeds 2*floor(n/(2r)) = {}",
            2 * (n / (2 * r))
        )));
    }
    let mut g = Graph::empty(0)?;
    for _ in 0..n / r {
        g = g.disjoint_union(&Graph::complete(r)?)?;
    }
    for j in 0..k / 2 {
        g.add_edge(2 * j * r, (2 * j + 1) * r)?;
    }
    let expected = (n * (r - 1) / 2 + k / 2) as u64;
    Ok(ConstructionReport::check(g, &Graph::star(r)?, expected, k as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klikk_examples() {
        let r = build_klikk(5, 3).unwrap();
        assert!(r.ok);
        assert_eq!((r.actual_edges, r.actual_copies), (6, 1));
        let r = build_klikk(7, 3).unwrap();
        assert!(r.ok);
        assert_eq!(r.actual_edges, 11);
        for r in 3..=6 {
            let rep = build_klikk(r, r).unwrap();
            assert!(rep.ok);
            assert_eq!(rep.graph, Graph::complete(r).unwrap());
        }
        assert!(build_klikk(5, 2).is_err());
        assert!(build_klikk(3, 4).is_err());
    }

    #[test]
    fn klikk_range() {
        for r in 3..=5 {
            for n in r..=12 {
                assert!(build_klikk(n, r).unwrap().ok, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn triangle_examples() {
        let r = build_triangle_k(7, 2).unwrap();
        assert!(r.ok);
        assert_eq!((r.actual_edges, r.actual_copies), (12, 2));
        let r = build_triangle_k(5, 1).unwrap();
        assert_eq!((r.actual_edges, r.actual_copies), (6, 1));
        assert!(matches!(build_triangle_k(4, 3), Err(Error::Precondition(_))));
        assert!(build_triangle_k(6, 0).is_err());
    }

    #[test]
    fn unique_kab_examples() {
        let r = build_unique_kab(1, 2, &PartitionPair::new(vec![1], vec![2]).unwrap()).unwrap();
        assert!(r.ok);
        assert_eq!(r.actual_edges, 2);
        let r = build_unique_kab(2, 2, &PartitionPair::new(vec![1, 1], vec![2]).unwrap()).unwrap();
        assert!(r.ok);
        assert_eq!(r.actual_edges, 5);
        assert!(crate::count::is_isomorphic(
            &r.graph,
            &Graph::complete_minus_edge(4).unwrap()
        ));
        assert!(matches!(
            build_unique_kab(2, 2, &PartitionPair::new(vec![2], vec![2]).unwrap()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn unique_kab_brute_force_on_three_vertices() {
        // all graphs on 3 vertices with exactly one spanning K_{1,2}
        let p3 = Graph::path(3).unwrap();
        let best = (0..8u64)
            .map(|m| Graph::from_edge_mask(3, m))
            .filter(|g| count_copies(g, &p3).value() == 1)
            .map(|g| g.edge_count())
            .max();
        assert_eq!(best, Some(2));
    }

    #[test]
    fn star_examples() {
        let r = build_star_k(6, 3, 2).unwrap();
        assert!(r.ok);
        assert_eq!((r.actual_edges, r.actual_copies), (7, 2));
        let r = build_star_k(6, 3, 0).unwrap();
        assert!(r.ok);
        assert_eq!((r.actual_edges, r.actual_copies), (6, 0));
        assert!(build_star_k(6, 3, 3).is_err());
        assert!(build_star_k(6, 3, 4).is_err());
        assert!(build_star_k(7, 3, 2).is_err());
        for (n, r, k) in [(12, 3, 4), (8, 2, 4), (12, 4, 2), (16, 4, 4)] {
            assert!(build_star_k(n, r, k).unwrap().ok, "{n} {r} {k}");
        }
    }
}
