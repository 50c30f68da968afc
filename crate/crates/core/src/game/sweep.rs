use serde::Serialize;

use super::solver::{solve, Cost, SolverOptions};
use crate::count::{is_isomorphic, strip_isolated};
use crate::error::{Error, Result};
use crate::family::GraphFamily;
use crate::graph::{binomial, Graph};
use crate::oracle::{exa_oracle, exa_prime_oracle, SearchOptions};

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    #[serde(rename = "pattern_graph6")]
    pub pattern: Graph,
    pub n: usize,
    pub exa1: usize,
    pub exa1_prime: i64,
    pub l: u32,
    pub x: u32,
    pub x_prime: u32,
    /// `x - (C(n,2) - exa1)`.
    pub x_gap: i64,
    /// `x' - (C(n,2) - exa1')`.
    pub x_prime_gap: i64,
}

/// Every graph with at most four vertices, no isolated vertex and at least
/// one edge, up to isomorphism.
pub fn small_patterns() -> Vec<Graph> {
    let mut out: Vec<Graph> = Vec::new();
    for mask in 1..64u64 {
        let g = strip_isolated(&Graph::from_edge_mask(4, mask));
        if !out.iter().any(|h| is_isomorphic(h, &g)) {
            out.push(g);
        }
    }
    out.sort_by_key(|g| (g.order(), g.edge_count(), g.to_string()));
    out
}

/// Game values against extremal numbers for every small pattern on up to
/// `n_max` vertices.
pub fn sweep_small_patterns(n_max: usize) -> Result<Vec<SweepRow>> {
    if n_max > 5 {
        return Err(Error::Guard(format!(
            "the pattern sweep is limited to n <= 5, got {n_max}"
        )));
    }
    let opts = SearchOptions::default();
    let mut rows = Vec::new();
    for f in small_patterns() {
        let fam = GraphFamily::single(f);
        for n in f.order().max(2)..=n_max {
            let exa1 = exa_oracle(n, 1, &fam, &opts)?.exact()?.unwrap_or(0);
            let exa1_prime = exa_prime_oracle(n, &fam, &opts)?.value.unwrap_or(0);
            let value = |cost| -> Result<u32> {
                solve(n, &fam, cost, SolverOptions::default())?
                    .value
                    .ok_or_else(|| Error::Unsolved(format!("{cost}({n}, {fam})")))
            };
            let (l, x, x_prime) = (value(Cost::L)?, value(Cost::X)?, value(Cost::XPrime)?);
            let c = binomial(n as u64, 2) as i64;
            rows.push(SweepRow {
                pattern: f,
                n,
                exa1,
                exa1_prime,
                l,
                x,
                x_prime,
                x_gap: x as i64 - (c - exa1 as i64),
                x_prime_gap: x_prime as i64 - (c - exa1_prime),
            });
        }
    }
    Ok(rows)
}
