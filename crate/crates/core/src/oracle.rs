//! Exhaustive extremal search over all labeled graphs on `n` vertices.
//!
//! Edge counts are tried from `C(n,2)` downwards. Each level is enumerated in
//! full (so the reported witness and statistics do not depend on thread
//! count) and the search stops at the first level with a feasible graph.
//! Among feasible graphs the one with the lexicographically smallest graph6
//! string is returned.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::count::Pattern;
use crate::error::{Error, Result};
use crate::family::{GraphFamily, ResolvedFamily};
use crate::graph::{binomial, pairs, Graph, MAX_MASK_VERTICES};

/// Orders above this need [`SearchOptions::allow_large`].
pub const DEFAULT_MAX_ORDER: usize = 8;

const CHUNK: u64 = 1 << 14;

#[derive(Debug, Clone, Default)]
pub struct SearchOptions {
    /// Wall-clock budget; on expiry the result is marked incomplete.
    pub budget: Option<Duration>,
    /// Permit orders up to [`MAX_MASK_VERTICES`].
    pub allow_large: bool,
}

impl SearchOptions {
    pub fn with_budget(budget: Option<Duration>) -> Self {
        SearchOptions {
            budget,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleResult {
    /// Maximum edge count; `None` when no graph qualifies (or the search was
    /// cut short before finding one).
    pub value: Option<usize>,
    #[serde(rename = "witness_graph6")]
    pub witness: Option<Graph>,
    pub explored: u64,
    #[serde(skip)]
    pub elapsed: Duration,
    pub complete: bool,
}

impl OracleResult {
    /// The value of a complete search; `Err` when the budget ran out.
    pub fn exact(&self) -> Result<Option<usize>> {
        if self.complete {
            Ok(self.value)
        } else {
            Err(Error::Unsolved("search budget exhausted".into()))
        }
    }
}

fn check_order(n: usize, opts: &SearchOptions) -> Result<()> {
    if n > MAX_MASK_VERTICES {
        return Err(Error::Guard(format!(
            "exhaustive search supports n <= {MAX_MASK_VERTICES}, got {n}"
        )));
    }
    if n > DEFAULT_MAX_ORDER && !opts.allow_large {
        return Err(Error::Guard(format!(
            "n = {n} exceeds the default limit {DEFAULT_MAX_ORDER}; enable allow_large to proceed"
        )));
    }
    Ok(())
}

/// Colex unranking of an `s`-subset of bit positions.
fn unrank(mut rank: u64, s: usize) -> u64 {
    let mut mask = 0u64;
    for i in (1..=s).rev() {
        let mut c = i - 1;
        while binomial(c as u64 + 1, i as u64) <= rank {
            c += 1;
        }
        rank -= binomial(c as u64, i as u64);
        mask |= 1 << c;
    }
    mask
}

/// Next subset of the same size in colex order (Gosper's hack).
#[inline]
fn next_combination(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

#[derive(Debug, Clone, Copy)]
struct Best {
    score: i64,
    key: u64,
    mask: u64,
}

impl Best {
    fn better(self, other: Best) -> Best {
        if other.score > self.score || (other.score == self.score && other.key < self.key) {
            other
        } else {
            self
        }
    }
}

struct LevelScan {
    best: Option<Best>,
    explored: u64,
    interrupted: bool,
}

/// Evaluates `eval` on every graph with exactly `m` edges.
fn scan_level<F>(n: usize, m: usize, deadline: Option<Instant>, eval: &F) -> LevelScan
where
    F: Fn(&Graph) -> Option<i64> + Sync,
{
    let total = pairs(n);
    let full = if total == 0 { 0 } else { u64::MAX >> (64 - total) };
    let flip = m > total - m;
    let s = if flip { total - m } else { m };
    let count = binomial(total as u64, s as u64);
    let key_of = |mask: u64| {
        if total == 0 {
            0
        } else {
            mask.reverse_bits() >> (64 - total)
        }
    };
    let chunks = count.div_ceil(CHUNK);

    let results: Vec<(Option<Best>, u64, bool)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            if deadline.is_some_and(|d| Instant::now() > d) {
                return (None, 0, true);
            }
            let start = c * CHUNK;
            let len = CHUNK.min(count - start);
            let mut combo = unrank(start, s);
            let mut best: Option<Best> = None;
            for i in 0..len {
                let mask = if flip { full ^ combo } else { combo };
                let g = Graph::from_edge_mask(n, mask);
                if let Some(score) = eval(&g) {
                    let cand = Best {
                        score,
                        key: key_of(mask),
                        mask,
                    };
                    best = Some(best.map_or(cand, |b| b.better(cand)));
                }
                if i + 1 < len {
                    combo = next_combination(combo);
                }
            }
            (best, len, false)
        })
        .collect();

    let mut scan = LevelScan {
        best: None,
        explored: 0,
        interrupted: false,
    };
    for (best, explored, interrupted) in results {
        scan.explored += explored;
        scan.interrupted |= interrupted;
        if let Some(b) = best {
            scan.best = Some(scan.best.map_or(b, |cur| cur.better(b)));
        }
    }
    scan
}

/// Largest edge count over labeled `n`-vertex graphs satisfying `pred`.
pub fn max_edges_with<P>(n: usize, pred: P, opts: &SearchOptions) -> Result<OracleResult>
where
    P: Fn(&Graph) -> bool + Sync,
{
    check_order(n, opts)?;
    let started = Instant::now();
    let deadline = opts.budget.map(|b| started + b);
    let eval = |g: &Graph| pred(g).then_some(0);
    let mut explored = 0;
    for m in (0..=pairs(n)).rev() {
        let scan = scan_level(n, m, deadline, &eval);
        explored += scan.explored;
        if let Some(best) = scan.best {
            let witness = Graph::from_edge_mask(n, best.mask);
            assert!(
                pred(&witness) && witness.edge_count() == m,
                "witness failed re-verification"
            );
            return Ok(OracleResult {
                value: Some(m),
                witness: Some(witness),
                explored,
                elapsed: started.elapsed(),
                complete: !scan.interrupted,
            });
        }
        if scan.interrupted {
            return Ok(OracleResult {
                value: None,
                witness: None,
                explored,
                elapsed: started.elapsed(),
                complete: false,
            });
        }
    }
    Ok(OracleResult {
        value: None,
        witness: None,
        explored,
        elapsed: started.elapsed(),
        complete: true,
    })
}

/// Largest edge count with the total family copy count in `allowed`.
pub fn exa_set_oracle(n: usize, allowed: &[u64], fam: &GraphFamily, opts: &SearchOptions) -> Result<OracleResult> {
    let Some(&top) = allowed.iter().max() else {
        return Err(Error::InvalidParameter("the set of allowed counts is empty".into()));
    };
    let resolved = fam.resolve(n)?;
    exa_set_resolved(n, allowed, &resolved, top, opts)
}

fn exa_set_resolved(
    n: usize,
    allowed: &[u64],
    fam: &ResolvedFamily,
    top: u64,
    opts: &SearchOptions,
) -> Result<OracleResult> {
    let result = max_edges_with(n, |g| allowed.contains(&fam.count_capped(g, top + 1)), opts)?;
    if let Some(w) = &result.witness {
        assert!(allowed.contains(&fam.count(w)), "witness failed full recount");
    }
    Ok(result)
}

/// `exa_k(n, fam)`: most edges with exactly `k` copies in total.
pub fn exa_oracle(n: usize, k: u64, fam: &GraphFamily, opts: &SearchOptions) -> Result<OracleResult> {
    exa_set_oracle(n, &[k], fam, opts)
}

/// The Turán number `ex(n, fam)`.
pub fn ex_oracle(n: usize, fam: &GraphFamily, opts: &SearchOptions) -> Result<OracleResult> {
    let resolved = fam.resolve(n)?;
    max_edges_with(n, |g| !resolved.members().iter().any(|m| m.occurs_in(g)), opts)
}

/// Most edges of a triangle-free graph that is not bipartite.
pub fn triangle_free_non_bipartite(n: usize, opts: &SearchOptions) -> Result<OracleResult> {
    let k3 = Pattern::new(&Graph::complete(3)?);
    max_edges_with(n, |g| !k3.occurs_in(g) && !g.is_bipartite().is_bipartite(), opts)
}

#[derive(Debug, Clone, Serialize)]
pub struct ExaPrimeResult {
    /// Maximum of `|E(G)| - |E(F)|`.
    pub value: Option<i64>,
    #[serde(rename = "witness_graph6")]
    pub witness: Option<Graph>,
    /// The unique member occurring in the witness.
    #[serde(rename = "member_graph6")]
    pub member: Option<Graph>,
    pub explored: u64,
    #[serde(skip)]
    pub elapsed: Duration,
    pub complete: bool,
}

/// Maximum of `|E(G)| - |E(F)|` over graphs `G` containing exactly one copy
/// of one member `F` and no copy of any other member.
pub fn exa_prime_oracle(n: usize, fam: &GraphFamily, opts: &SearchOptions) -> Result<ExaPrimeResult> {
    check_order(n, opts)?;
    let resolved = fam.resolve(n)?;
    let started = Instant::now();
    let deadline = opts.budget.map(|b| started + b);
    let min_e = resolved.min_edges() as i64;
    let unique_member = |g: &Graph| -> Option<usize> {
        let mut found = None;
        for (i, m) in resolved.members().iter().enumerate() {
            match m.count_in_capped(g, 2) {
                0 => {}
                1 if found.is_none() => found = Some(i),
                _ => return None,
            }
        }
        found
    };
    let eval = |g: &Graph| unique_member(g).map(|i| (g.edge_count() - resolved.members()[i].edge_count()) as i64);

    let mut best: Option<Best> = None;
    let mut explored = 0;
    let mut complete = true;
    for m in (0..=pairs(n)).rev() {
        if best.is_some_and(|b| m as i64 - min_e < b.score) {
            break;
        }
        let scan = scan_level(n, m, deadline, &eval);
        explored += scan.explored;
        if let Some(b) = scan.best {
            best = Some(best.map_or(b, |cur| cur.better(b)));
        }
        if scan.interrupted {
            complete = false;
            break;
        }
    }
    let (witness, member) = match best {
        Some(b) => {
            let g = Graph::from_edge_mask(n, b.mask);
            let i = unique_member(&g).expect("witness failed re-verification");
            (Some(g), Some(*resolved.members()[i].graph()))
        }
        None => (None, None),
    };
    Ok(ExaPrimeResult {
        value: best.map(|b| b.score),
        witness,
        member,
        explored,
        elapsed: started.elapsed(),
        complete,
    })
}

/// Largest number of edges from a new vertex to a copy of `f` that creates
/// no second copy of `f`. Isolated vertices of `f` are ignored.
pub fn zeta(f: &Graph) -> Result<usize> {
    zeta_with_witness(f).map(|(z, _)| z)
}

/// [`zeta`] together with one optimal attachment set.
pub fn zeta_with_witness(f: &Graph) -> Result<(usize, Vec<usize>)> {
    let pattern = Pattern::new(f);
    let base = *pattern.graph();
    let v = base.order();
    if v > DEFAULT_MAX_ORDER {
        return Err(Error::Guard(format!(
            "zeta limited to patterns on {DEFAULT_MAX_ORDER} vertices, got {v}"
        )));
    }
    let extended = base.disjoint_union(&Graph::empty(1)?)?;
    for z in (1..=v).rev() {
        let mut subset = (1u64 << z) - 1;
        while subset < 1 << v {
            let mut g = extended;
            let attach: Vec<usize> = (0..v).filter(|i| subset >> i & 1 == 1).collect();
            for &u in &attach {
                g.add_edge(u, v)?;
            }
            if pattern.count_in_capped(&g, 2) == 1 {
                return Ok((z, attach));
            }
            subset = next_combination(subset);
        }
    }
    Ok((0, Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::turan_edges;

    fn opts() -> SearchOptions {
        SearchOptions::default()
    }

    fn k(r: usize) -> GraphFamily {
        GraphFamily::Clique(r)
    }

    #[test]
    fn combination_walk_is_exhaustive() {
        for total in 0..=10usize {
            for s in 0..=total {
                let count = binomial(total as u64, s as u64);
                let mut seen = std::collections::HashSet::new();
                let mut x = unrank(0, s);
                for r in 0..count {
                    assert_eq!(unrank(r, s), x);
                    assert_eq!(x.count_ones() as usize, s);
                    assert!(total == 0 || x >> total == 0);
                    seen.insert(x);
                    if r + 1 < count {
                        x = next_combination(x);
                    }
                }
                assert_eq!(seen.len() as u64, count);
            }
        }
    }

    #[test]
    fn engine_examples() {
        let none = max_edges_with(3, |g| g.edge_count() == 5, &opts()).unwrap();
        assert_eq!(none.value, None);
        assert!(none.complete);
        assert_eq!(none.explored, 8);

        let tf = max_edges_with(4, |g| !Pattern::new(&Graph::complete(3).unwrap()).occurs_in(g), &opts()).unwrap();
        assert_eq!(tf.value, Some(4));
        assert!(crate::count::is_isomorphic(
            &tf.witness.unwrap(),
            &Graph::cycle(4).unwrap()
        ));

        let brouwer = triangle_free_non_bipartite(5, &opts()).unwrap();
        assert_eq!(brouwer.value, Some(5));
        assert!(crate::count::is_isomorphic(
            &brouwer.witness.unwrap(),
            &Graph::cycle(5).unwrap()
        ));
    }

    #[test]
    fn guard_on_order() {
        assert!(matches!(max_edges_with(9, |_| true, &opts()), Err(Error::Guard(_))));
        assert!(matches!(
            max_edges_with(
                12,
                |_| true,
                &SearchOptions {
                    allow_large: true,
                    ..opts()
                }
            ),
            Err(Error::Guard(_))
        ));
        let r = max_edges_with(
            9,
            |_| true,
            &SearchOptions {
                allow_large: true,
                ..opts()
            },
        )
        .unwrap();
        assert_eq!(r.value, Some(36));
    }

    #[test]
    fn zero_budget_is_incomplete() {
        let r = ex_oracle(7, &k(3), &SearchOptions::with_budget(Some(Duration::ZERO))).unwrap();
        assert!(!r.complete);
        assert!(r.exact().is_err());
    }

    #[test]
    fn ex_examples() {
        assert_eq!(ex_oracle(5, &k(3), &opts()).unwrap().value, Some(6));
        assert_eq!(ex_oracle(6, &k(4), &opts()).unwrap().value, Some(12));
        assert_eq!(
            ex_oracle(5, &GraphFamily::Star(Some(3)), &opts()).unwrap().value,
            Some(5)
        );
        for n in 1..=6 {
            for r in 1..=4 {
                assert_eq!(ex_oracle(n, &k(r + 1), &opts()).unwrap().value, Some(turan_edges(n, r)));
            }
        }
    }

    #[test]
    fn exa_examples() {
        assert_eq!(exa_oracle(5, 1, &k(3), &opts()).unwrap().value, Some(6));
        let two_k2 = GraphFamily::single(Graph::matching(2).unwrap());
        assert_eq!(exa_oracle(6, 1, &two_k2, &opts()).unwrap().value, Some(4));
        assert_eq!(exa_oracle(3, 5, &k(2), &opts()).unwrap().value, None);
        assert_eq!(
            exa_oracle(4, 1, &GraphFamily::PerfectMatching, &opts()).unwrap().value,
            Some(4)
        );
        assert_eq!(
            exa_oracle(4, 1, &GraphFamily::Cycle(4), &opts()).unwrap().value,
            Some(5)
        );
    }

    #[test]
    fn exa_zero_is_ex() {
        for fam in [
            k(3),
            GraphFamily::Cycle(4),
            GraphFamily::Path(3),
            GraphFamily::Matching(4),
        ] {
            for n in 3..=6 {
                assert_eq!(
                    exa_oracle(n, 0, &fam, &opts()).unwrap().value,
                    ex_oracle(n, &fam, &opts()).unwrap().value
                );
            }
        }
    }

    #[test]
    fn exa_set_examples() {
        assert_eq!(exa_set_oracle(5, &[0, 1], &k(3), &opts()).unwrap().value, Some(6));
        assert_eq!(exa_set_oracle(4, &[0], &k(3), &opts()).unwrap().value, Some(4));
        assert_eq!(exa_set_oracle(4, &[0, 1, 2, 3], &k(3), &opts()).unwrap().value, Some(5));
        assert!(exa_set_oracle(4, &[], &k(3), &opts()).is_err());
        for allowed in [vec![0, 2], vec![1, 3], vec![2, 4, 10]] {
            let direct = exa_set_oracle(5, &allowed, &k(3), &opts()).unwrap().value;
            let by_parts = allowed
                .iter()
                .filter_map(|&a| exa_oracle(5, a, &k(3), &opts()).unwrap().value)
                .max();
            assert_eq!(direct, by_parts);
        }
    }

    #[test]
    fn exa_prime_examples() {
        let fam = GraphFamily::Union(vec![GraphFamily::Trees, k(3)]);
        assert_eq!(exa_prime_oracle(4, &fam, &opts()).unwrap().value, Some(0));
        let r = exa_prime_oracle(4, &GraphFamily::KMinus, &opts()).unwrap();
        assert_eq!(r.value, Some(0));
        assert_eq!(r.witness.unwrap().edge_count(), 5);
        assert_eq!(exa_prime_oracle(4, &k(2), &opts()).unwrap().value, Some(0));
        // exa'_1 <= exa_1
        for fam in [k(3), GraphFamily::Cycle(4), GraphFamily::Star(None)] {
            let p = exa_prime_oracle(5, &fam, &opts()).unwrap().value.unwrap();
            let e = exa_oracle(5, 1, &fam, &opts()).unwrap().value.unwrap() as i64;
            assert!(p <= e);
        }
    }

    #[test]
    fn witness_is_smallest_graph6() {
        let r = exa_oracle(4, 1, &k(3), &opts()).unwrap();
        let w = r.witness.unwrap();
        let m = r.value.unwrap();
        let fam = k(3).resolve(4).unwrap();
        let mut all: Vec<String> = (0..1u64 << 6)
            .map(|mask| Graph::from_edge_mask(4, mask))
            .filter(|g| g.edge_count() == m && fam.count(g) == 1)
            .map(|g| crate::graph6::encode(&g))
            .collect();
        all.sort();
        assert_eq!(crate::graph6::encode(&w), all[0]);
    }

    #[test]
    fn zeta_examples() {
        assert_eq!(zeta(&Graph::complete(3).unwrap()).unwrap(), 1);
        assert_eq!(zeta(&Graph::complete(4).unwrap()).unwrap(), 2);
        assert_eq!(zeta(&Graph::complete(5).unwrap()).unwrap(), 3);
        assert_eq!(zeta(&Graph::path(3).unwrap()).unwrap(), 0);
        for f in [
            Graph::cycle(4).unwrap(),
            Graph::cycle(5).unwrap(),
            Graph::path(4).unwrap(),
            Graph::star(3).unwrap(),
            Graph::complete_bipartite(2, 3).unwrap(),
        ] {
            assert!(zeta(&f).unwrap() + 1 >= f.min_degree());
        }
        assert!(zeta(&Graph::complete(9).unwrap()).is_err());
    }
}
