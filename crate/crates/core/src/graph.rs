//! Labeled simple graphs on at most 32 vertices, stored as one adjacency
//! bitset per vertex.

use std::fmt;

use crate::error::{Error, Result};

/// Hard cap on the vertex count; every adjacency row fits in a `u32`.
pub const MAX_VERTICES: usize = 32;

/// Largest order whose full edge indicator fits in a `u64` (C(11,2) = 55).
pub const MAX_MASK_VERTICES: usize = 11;

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[inline]
pub const fn pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of the pair `{i, j}` in graph6 (column-major upper triangle) order.
#[inline]
pub const fn pair_index(i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    j * (j - 1) / 2 + i
}

/// Inverse of [`pair_index`].
pub fn index_pair(idx: usize) -> (usize, usize) {
    let mut j = 1;
    while pair_index(0, j + 1) <= idx {
        j += 1;
    }
    (idx - pair_index(0, j), j)
}

/// Ordered list of distinct vertex pairs `(u, v)` with `u < v`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct EdgeSet(Vec<(usize, usize)>);

impl EdgeSet {
    /// Normalizes orientation and sorts; rejects loops and repeated pairs.
    pub fn new(pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut out = Vec::new();
        for (u, v) in pairs {
            if u == v {
                return Err(Error::Loop(u));
            }
            out.push((u.min(v), u.max(v)));
        }
        out.sort_unstable();
        if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(EdgeSet(out))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[(usize, usize)] {
        &self.0
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.0.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Edge indicator in [`pair_index`] order.
    pub fn to_mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &(u, v)| m | 1 << pair_index(u, v))
    }

    pub fn from_mask(mask: u64) -> Self {
        let mut out: Vec<_> = BitIter(mask).map(index_pair).collect();
        out.sort_unstable();
        EdgeSet(out)
    }
}

impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Iterates the positions of set bits, lowest first.
#[derive(Clone, Copy)]
pub(crate) struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let b = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(b)
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: [u32; MAX_VERTICES],
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Graph {
            n,
            adj: [0; MAX_VERTICES],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u == v {
                return Err(Error::Loop(u));
            }
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for v in 0..n {
            g.adj[v] = g.vertex_mask() & !(1 << v);
        }
        Ok(g)
    }

    pub fn cycle(len: usize) -> Result<Self> {
        if len < 3 {
            return Err(Error::InvalidParameter(format!(
                "cycle needs at least 3 vertices, got {len}"
            )));
        }
        let edges: Vec<_> = (0..len).map(|i| (i, (i + 1) % len)).collect();
        Graph::from_edges(len, &edges)
    }

    pub fn path(len: usize) -> Result<Self> {
        let edges: Vec<_> = (1..len).map(|i| (i - 1, i)).collect();
        Graph::from_edges(len, &edges)
    }

    /// Star with `leaves` leaves; the center is vertex 0.
    pub fn star(leaves: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges)
    }

    /// `edges` disjoint edges on `2 * edges` vertices.
    pub fn matching(edges: usize) -> Result<Self> {
        let list: Vec<_> = (0..edges).map(|i| (2 * i, 2 * i + 1)).collect();
        Graph::from_edges(2 * edges, &list)
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        complete_multipartite(&[a, b])
    }

    /// `K_n` with the pair `{0, 1}` removed.
    pub fn complete_minus_edge(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter("K_n minus an edge needs n >= 2".into()));
        }
        let mut g = Graph::complete(n)?;
        g.remove_edge(0, 1);
        Ok(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertex_mask(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u32 {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj[..self.n]
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(Error::Loop(u));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u < self.n && v < self.n {
            self.adj[u] &= !(1 << v);
            self.adj[v] &= !(1 << u);
        }
    }

    pub fn edges(&self) -> EdgeSet {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            let mut higher = self.adj[u] >> u >> 1;
            let mut v = u + 1;
            while higher != 0 {
                if higher & 1 == 1 {
                    out.push((u, v));
                }
                higher >>= 1;
                v += 1;
            }
        }
        EdgeSet(out)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn complement(&self) -> Graph {
        let mut g = *self;
        let all = self.vertex_mask();
        for v in 0..self.n {
            g.adj[v] = !self.adj[v] & all & !(1 << v);
        }
        g
    }

    /// Places `other` after `self`, relabeling its vertices by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let mut g = *self;
        g.n = n;
        for v in 0..other.n {
            g.adj[self.n + v] = other.adj[v] << self.n;
        }
        Ok(g)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter("permutation length differs from order".into()));
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= self.n || seen >> p & 1 == 1 {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
            seen |= 1 << p;
        }
        let mut g = Graph::empty(self.n)?;
        for (u, v) in self.edges().iter() {
            g.add_edge(perm[u], perm[v])?;
        }
        Ok(g)
    }

    /// Subgraph induced by `vertices`, relabeled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph> {
        let mut g = Graph::empty(vertices.len())?;
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(a, b)?;
                }
            }
        }
        Ok(g)
    }

    /// Edge indicator in [`pair_index`] order; only for orders up to
    /// [`MAX_MASK_VERTICES`].
    pub fn edge_mask(&self) -> u64 {
        debug_assert!(self.n <= MAX_MASK_VERTICES);
        let mut m = 0u64;
        for j in 1..self.n {
            let lower = (self.adj[j] & ((1 << j) - 1)) as u64;
            m |= lower << pair_index(0, j);
        }
        m
    }

    pub fn from_edge_mask(n: usize, mask: u64) -> Graph {
        debug_assert!(n <= MAX_MASK_VERTICES);
        let mut g = Graph {
            n,
            adj: [0; MAX_VERTICES],
        };
        for j in 1..n {
            let lower = (mask >> pair_index(0, j)) as u32 & ((1 << j) - 1);
            g.adj[j] |= lower;
            for i in BitIter(lower as u64) {
                g.adj[i] |= 1 << j;
            }
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = 1u32;
        let mut frontier = 1u32;
        while frontier != 0 {
            let mut next = 0;
            for v in BitIter(frontier as u64) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == self.vertex_mask()
    }

    pub fn is_bipartite(&self) -> Bipartition {
        let mut color = vec![None::<bool>; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut depth = vec![0usize; self.n];
        for root in 0..self.n {
            if color[root].is_some() {
                continue;
            }
            color[root] = Some(false);
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for v in BitIter(self.adj[u] as u64) {
                    match color[v] {
                        None => {
                            color[v] = Some(!color[u].unwrap());
                            parent[v] = u;
                            depth[v] = depth[u] + 1;
                            queue.push_back(v);
                        }
                        Some(c) if c == color[u].unwrap() => {
                            return Bipartition::OddCycle(odd_cycle(u, v, &parent, &depth));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for (v, c) in color.iter().enumerate() {
            if *c == Some(false) {
                left.push(v);
            } else {
                right.push(v);
            }
        }
        Bipartition::Bipartite { left, right }
    }
}

/// Closes the monochromatic edge `u v` through the BFS tree.
fn odd_cycle(mut u: usize, mut v: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let mut from_u = vec![u];
    let mut from_v = vec![v];
    while depth[u] > depth[v] {
        u = parent[u];
        from_u.push(u);
    }
    while depth[v] > depth[u] {
        v = parent[v];
        from_v.push(v);
    }
    while u != v {
        u = parent[u];
        v = parent[v];
        from_u.push(u);
        from_v.push(v);
    }
    from_v.pop();
    from_u.extend(from_v.into_iter().rev());
    from_u
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartition {
    Bipartite {
        left: Vec<usize>,
        right: Vec<usize>,
    },
    /// Vertices of an odd cycle in traversal order.
    OddCycle(Vec<usize>),
}

impl Bipartition {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartition::Bipartite { .. })
    }
}

pub fn make_graph(n: usize, edges: &EdgeSet) -> Result<Graph> {
    Graph::from_edges(n, edges.as_slice())
}

/// Balanced part sizes for a Turán graph; larger parts first.
pub fn turan_part_sizes(n: usize, r: usize) -> Vec<usize> {
    (0..r).map(|i| n / r + usize::from(i < n % r)).collect()
}

pub fn complete_multipartite(sizes: &[usize]) -> Result<Graph> {
    let n: usize = sizes.iter().sum();
    let mut g = Graph::empty(n)?;
    let mut start = 0;
    let all = g.vertex_mask();
    for &s in sizes {
        let part = ((1u64 << (start + s)) - (1u64 << start)) as u32;
        for v in start..start + s {
            g.adj[v] = all & !part;
        }
        start += s;
    }
    Ok(g)
}

/// Balanced complete `r`-partite graph on `n` vertices, parts as contiguous
/// label blocks.
pub fn turan_graph(n: usize, r: usize) -> Result<Graph> {
    if r < 1 || r > n {
        return Err(Error::InvalidParameter(format!(
            "turan_graph needs 1 <= r <= n, got n={n}, r={r}"
        )));
    }
    complete_multipartite(&turan_part_sizes(n, r))
}

/// Edge count of the Turán graph, allowing `r > n` (then it is `K_n`).
pub fn turan_edges(n: usize, r: usize) -> usize {
    if r == 0 {
        return 0;
    }
    let sizes = turan_part_sizes(n, r);
    let total: usize = sizes.iter().sum();
    (total * total - sizes.iter().map(|s| s * s).sum::<usize>()) / 2
}

/// Disjoint union of paths with the given vertex counts.
pub fn path_forest(sizes: &[usize]) -> Result<Graph> {
    if sizes.contains(&0) {
        return Err(Error::InvalidParameter("path sizes must be positive".into()));
    }
    let n: usize = sizes.iter().sum();
    let mut g = Graph::empty(n)?;
    let mut start = 0;
    for &s in sizes {
        for v in start + 1..start + s {
            g.add_edge(v - 1, v)?;
        }
        start += s;
    }
    Ok(g)
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}, {})", self.n, self.edges())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::graph6::encode(self))
    }
}

impl serde::Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&crate::graph6::encode(self))
    }
}
