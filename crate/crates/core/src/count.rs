//! Exact counting of subgraph copies: injective adjacency-preserving maps
//! divided by the pattern's automorphism count.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{BitIter, Graph};

/// Largest pattern order accepted by [`automorphism_count`].
pub const MAX_AUT_ORDER: usize = 10;

/// Number of subgraphs (edge subsets) of a host isomorphic to a pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct CopyCount(pub u64);

impl CopyCount {
    pub fn value(self) -> u64 {
        self.0
    }
}

impl std::ops::Add for CopyCount {
    type Output = CopyCount;
    fn add(self, rhs: CopyCount) -> CopyCount {
        CopyCount(self.0 + rhs.0)
    }
}

/// Drops zero-degree vertices, keeping the remaining labels in order.
pub fn strip_isolated(f: &Graph) -> Graph {
    let keep: Vec<usize> = (0..f.order()).filter(|&v| f.degree(v) > 0).collect();
    f.induced(&keep).expect("subset of a valid graph")
}

/// A pattern prepared for repeated embedding searches.
#[derive(Debug, Clone)]
pub struct Pattern {
    graph: Graph,
    /// Pattern vertices in search order.
    order: Vec<usize>,
    /// For each search position, the earlier positions it must be adjacent to.
    back: Vec<Vec<usize>>,
    degree: Vec<u32>,
    automorphisms: u64,
    /// Order of the pattern when it is a complete graph.
    clique: Option<usize>,
}

impl Pattern {
    /// Strips isolated vertices and precomputes the search order.
    pub fn new(f: &Graph) -> Pattern {
        let graph = strip_isolated(f);
        let order = search_order(&graph);
        let mut back = Vec::with_capacity(order.len());
        for (k, &p) in order.iter().enumerate() {
            back.push((0..k).filter(|&j| graph.has_edge(order[j], p)).collect());
        }
        let degree = order.iter().map(|&p| graph.degree(p) as u32).collect();
        let v = graph.order();
        let clique = (v >= 2 && graph.edge_count() == v * (v - 1) / 2).then_some(v);
        let mut pat = Pattern {
            graph,
            order,
            back,
            degree,
            automorphisms: 1,
            clique,
        };
        pat.automorphisms = pat.embeddings(&pat.graph.clone(), None);
        pat
    }

    /// The stripped pattern graph.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn automorphisms(&self) -> u64 {
        self.automorphisms
    }

    /// Counts injective maps sending pattern edges onto host edges, stopping
    /// once `limit` is reached.
    pub fn embeddings(&self, host: &Graph, limit: Option<u64>) -> u64 {
        let p = self.order.len();
        if p > host.order() {
            return 0;
        }
        if p == 0 {
            return 1;
        }
        let limit = limit.unwrap_or(u64::MAX);
        let mut image = [0usize; crate::graph::MAX_VERTICES];
        let mut count = 0u64;
        self.extend(host, 0, 0, &mut image, &mut count, limit);
        count
    }

    fn extend(&self, host: &Graph, k: usize, used: u32, image: &mut [usize], count: &mut u64, limit: u64) -> bool {
        if k == self.order.len() {
            *count += 1;
            return *count >= limit;
        }
        let mut cand = host.vertex_mask() & !used;
        for &j in &self.back[k] {
            cand &= host.neighbors(image[j]);
        }
        for v in BitIter(cand as u64) {
            if (host.neighbors(v).count_ones()) < self.degree[k] {
                continue;
            }
            image[k] = v;
            if self.extend(host, k + 1, used | 1 << v, image, count, limit) {
                return true;
            }
        }
        false
    }

    pub fn count_in(&self, host: &Graph) -> u64 {
        match self.clique {
            Some(r) => count_cliques(host, r, u64::MAX),
            None => self.embeddings(host, None) / self.automorphisms,
        }
    }

    /// `min(count, cap)`, aborting the search early.
    pub fn count_in_capped(&self, host: &Graph, cap: u64) -> u64 {
        if let Some(r) = self.clique {
            return count_cliques(host, r, cap);
        }
        let limit = cap.saturating_mul(self.automorphisms);
        self.embeddings(host, Some(limit)) / self.automorphisms
    }

    pub fn occurs_in(&self, host: &Graph) -> bool {
        self.count_in_capped(host, 1) > 0
    }

    /// Calls `visit` with every embedding's image, indexed by pattern vertex.
    pub fn for_each_embedding(&self, host: &Graph, mut visit: impl FnMut(&[usize])) {
        let p = self.order.len();
        if p > host.order() {
            return;
        }
        let mut image = vec![0usize; p];
        let mut by_vertex = vec![0usize; self.graph.order()];
        self.walk(host, 0, 0, &mut image, &mut |img: &[usize]| {
            for (k, &pv) in self.order.iter().enumerate() {
                by_vertex[pv] = img[k];
            }
            visit(&by_vertex);
        });
    }

    fn walk(&self, host: &Graph, k: usize, used: u32, image: &mut [usize], visit: &mut dyn FnMut(&[usize])) {
        if k == self.order.len() {
            visit(image);
            return;
        }
        let mut cand = host.vertex_mask() & !used;
        for &j in &self.back[k] {
            cand &= host.neighbors(image[j]);
        }
        for v in BitIter(cand as u64) {
            image[k] = v;
            self.walk(host, k + 1, used | 1 << v, image, visit);
        }
    }
}

/// Number of `r`-cliques in `host`, up to `cap`.
fn count_cliques(host: &Graph, r: usize, cap: u64) -> u64 {
    fn go(host: &Graph, cand: u32, r: usize, count: &mut u64, cap: u64) {
        if r == 0 {
            *count += 1;
            return;
        }
        if (cand.count_ones() as usize) < r {
            return;
        }
        for v in BitIter(cand as u64) {
            // only neighbours above `v`, so each clique is met once
            let above = cand & host.neighbors(v) & !(((2u64 << v) - 1) as u32);
            go(host, above, r - 1, count, cap);
            if *count >= cap {
                return;
            }
        }
    }
    if cap == 0 {
        return 0;
    }
    let mut count = 0;
    go(host, host.vertex_mask(), r, &mut count, cap);
    count.min(cap)
}

/// Most already-placed neighbours first, then higher degree, then lower label.
fn search_order(f: &Graph) -> Vec<usize> {
    let n = f.order();
    let mut placed = 0u32;
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&v| placed >> v & 1 == 0)
            .max_by_key(|&v| {
                (
                    (f.neighbors(v) & placed).count_ones(),
                    f.degree(v),
                    std::cmp::Reverse(v),
                )
            })
            .unwrap();
        placed |= 1 << next;
        order.push(next);
    }
    order
}

pub fn automorphism_count(f: &Graph) -> Result<u64> {
    if f.order() > MAX_AUT_ORDER {
        return Err(Error::Guard(format!(
            "automorphism search limited to {MAX_AUT_ORDER} vertices, got {}",
            f.order()
        )));
    }
    // Isolated vertices permute freely; the pattern machinery strips them.
    let isolated = (0..f.order()).filter(|&v| f.degree(v) == 0).count() as u64;
    let free: u64 = (1..=isolated).product();
    Ok(Pattern::new(f).automorphisms() * free)
}

pub fn count_copies(host: &Graph, f: &Graph) -> CopyCount {
    CopyCount(Pattern::new(f).count_in(host))
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da = a.degrees();
    let mut db = b.degrees();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    // Same order and size: an edge-preserving injection is an isomorphism.
    Pattern::new(a).occurs_in(&strip_isolated(b))
}
