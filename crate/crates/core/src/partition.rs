//! Unique partitions of a pair `(A, B)` and the maximum number of parts
//! `mup(A, B)` such a partition can have.
//!
//! A pair of partitions is unique when the combined parts admit exactly one
//! split into sides summing to `A` and `B`. Parts are indexed items: a value
//! shared between the two sides can be swapped across, so it is never
//! unique. When `A == B` a split and its mirror count once.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::binomial;

/// Largest `A + B` accepted by [`mup`].
pub const MAX_MUP_TOTAL: u32 = 60;

/// Default node budget for the branch-and-bound search.
pub const DEFAULT_MUP_NODES: u64 = 200_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PartitionPair {
    parts_a: Vec<u32>,
    parts_b: Vec<u32>,
}

impl PartitionPair {
    /// Sorts both sides non-increasingly; rejects empty sides and zero parts.
    pub fn new(mut parts_a: Vec<u32>, mut parts_b: Vec<u32>) -> Result<Self> {
        if parts_a.is_empty() || parts_b.is_empty() {
            return Err(Error::Partition("both sides need at least one part".into()));
        }
        if parts_a.contains(&0) || parts_b.contains(&0) {
            return Err(Error::Partition("parts must be positive".into()));
        }
        parts_a.sort_unstable_by(|x, y| y.cmp(x));
        parts_b.sort_unstable_by(|x, y| y.cmp(x));
        Ok(PartitionPair { parts_a, parts_b })
    }

    pub fn parts_a(&self) -> &[u32] {
        &self.parts_a
    }

    pub fn parts_b(&self) -> &[u32] {
        &self.parts_b
    }

    pub fn sum_a(&self) -> u32 {
        self.parts_a.iter().sum()
    }

    pub fn sum_b(&self) -> u32 {
        self.parts_b.iter().sum()
    }

    pub fn total_parts(&self) -> usize {
        self.parts_a.len() + self.parts_b.len()
    }

    fn swapped(&self) -> PartitionPair {
        PartitionPair {
            parts_a: self.parts_b.clone(),
            parts_b: self.parts_a.clone(),
        }
    }
}

impl fmt::Display for PartitionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |p: &[u32]| p.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{}/{}", side(&self.parts_a), side(&self.parts_b))
    }
}

impl FromStr for PartitionPair {
    type Err = Error;

    /// `3,3/13,13,13,13,1`
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once('/')
            .ok_or_else(|| Error::Partition(format!("expected 'parts/parts', got '{s}'")))?;
        let side = |t: &str| -> Result<Vec<u32>> {
            t.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Partition(format!("bad part '{x}'")))
                })
                .collect()
        };
        PartitionPair::new(side(a)?, side(b)?)
    }
}

/// Saturating counts of index subsets per sum, for sums up to a target.
#[derive(Clone)]
struct SubsetSums {
    counts: Vec<u8>,
}

impl SubsetSums {
    const CAP: u8 = 3;

    fn new(target: u32) -> Self {
        let mut counts = vec![0; target as usize + 1];
        counts[0] = 1;
        SubsetSums { counts }
    }

    fn add(&mut self, v: u32) {
        let v = v as usize;
        for x in (v..self.counts.len()).rev() {
            self.counts[x] = (self.counts[x] + self.counts[x - v]).min(Self::CAP);
        }
    }

    fn at_target(&self) -> u8 {
        *self.counts.last().unwrap()
    }
}

fn shares_value(a: &[u32], b: &[u32]) -> bool {
    a.iter().any(|x| b.contains(x))
}

/// Number of index subsets summing to the smaller side that a unique pair
/// must have: the original split, plus its mirror when `A == B`.
fn required_count(a: u32, b: u32) -> u8 {
    if a == b {
        2
    } else {
        1
    }
}

pub fn is_unique_partition(a: u32, b: u32, pp: &PartitionPair) -> Result<bool> {
    if pp.sum_a() != a || pp.sum_b() != b {
        return Err(Error::Partition(format!(
            "parts sum to ({}, {}), expected ({a}, {b})",
            pp.sum_a(),
            pp.sum_b()
        )));
    }
    if shares_value(&pp.parts_a, &pp.parts_b) {
        return Ok(false);
    }
    let mut sums = SubsetSums::new(a.min(b));
    for &p in pp.parts_a.iter().chain(&pp.parts_b) {
        sums.add(p);
    }
    Ok(sums.at_target() == required_count(a, b))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MupResult {
    pub value: u32,
    /// Lexicographically smallest optimal pair; absent only for `(1, 1)`,
    /// which has no unique partition and is defined as 2.
    pub witness: Option<PartitionPair>,
    pub nodes: u64,
}

pub fn mup(a: u32, b: u32) -> Result<MupResult> {
    mup_with_budget(a, b, DEFAULT_MUP_NODES)
}

pub fn mup_with_budget(a: u32, b: u32, max_nodes: u64) -> Result<MupResult> {
    if a == 0 || b == 0 {
        return Err(Error::Partition("mup needs positive A and B".into()));
    }
    if a + b > MAX_MUP_TOTAL {
        return Err(Error::Guard(format!(
            "mup limited to A + B <= {MAX_MUP_TOTAL}, got {}",
            a + b
        )));
    }
    if a == 1 && b == 1 {
        return Ok(MupResult {
            value: 2,
            witness: None,
            nodes: 0,
        });
    }
    // Enumerate the smaller side in full and branch on the larger one.
    let swap = a > b;
    let (small, large) = if swap { (b, a) } else { (a, b) };
    let mut search = MupSearch {
        small,
        large,
        need: required_count(a, b),
        best: None,
        nodes: 0,
        max_nodes,
        swap,
    };
    let mut outer = Vec::new();
    partitions_of(small, small, &mut outer, &mut |parts| search.outer(parts))?;
    let best = search
        .best
        .expect("the all-ones split of the larger side is always unique");
    Ok(MupResult {
        value: best.total_parts() as u32,
        witness: Some(best),
        nodes: search.nodes,
    })
}

/// Calls `visit` on every partition of `rest` (parts at most `max`) in
/// non-increasing order.
fn partitions_of(rest: u32, max: u32, cur: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32]) -> Result<()>) -> Result<()> {
    if rest == 0 {
        return visit(cur);
    }
    for p in (1..=max.min(rest)).rev() {
        cur.push(p);
        partitions_of(rest - p, p, cur, visit)?;
        cur.pop();
    }
    Ok(())
}

struct MupSearch {
    small: u32,
    large: u32,
    need: u8,
    best: Option<PartitionPair>,
    nodes: u64,
    max_nodes: u64,
    swap: bool,
}

impl MupSearch {
    fn best_total(&self) -> usize {
        self.best.as_ref().map_or(0, PartitionPair::total_parts)
    }

    fn outer(&mut self, small_parts: &[u32]) -> Result<()> {
        if small_parts.len() + self.large as usize <= self.best_total().saturating_sub(1) {
            return Ok(());
        }
        let mut sums = SubsetSums::new(self.small);
        for &p in small_parts {
            sums.add(p);
        }
        if sums.at_target() > self.need {
            return Ok(());
        }
        let min_free = (1..).find(|v| !small_parts.contains(v)).unwrap();
        let mut inner = Vec::new();
        self.inner(small_parts, min_free, self.large, self.large, &mut inner, &sums)
    }

    fn inner(
        &mut self,
        small_parts: &[u32],
        min_free: u32,
        rest: u32,
        max: u32,
        cur: &mut Vec<u32>,
        sums: &SubsetSums,
    ) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::Unsolved(format!(
                "mup({}, {}) exceeded {} search nodes",
                self.small, self.large, self.max_nodes
            )));
        }
        if rest == 0 {
            if sums.at_target() == self.need {
                self.offer(small_parts, cur);
            }
            return Ok(());
        }
        let bound = small_parts.len() + cur.len() + (rest / min_free) as usize;
        if bound < self.best_total() {
            return Ok(());
        }
        for p in (1..=max.min(rest)).rev() {
            if small_parts.contains(&p) {
                continue;
            }
            let mut next = sums.clone();
            next.add(p);
            if next.at_target() > self.need {
                continue;
            }
            cur.push(p);
            self.inner(small_parts, min_free, rest - p, p, cur, &next)?;
            cur.pop();
        }
        Ok(())
    }

    fn offer(&mut self, small_parts: &[u32], large_parts: &[u32]) {
        let mut pp = PartitionPair {
            parts_a: small_parts.to_vec(),
            parts_b: large_parts.to_vec(),
        };
        if self.swap {
            pp = pp.swapped();
        }
        if self.small == self.large {
            pp = pp.clone().min(pp.swapped());
        }
        let better = match &self.best {
            None => true,
            Some(b) => pp.total_parts() > b.total_parts() || (pp.total_parts() == b.total_parts() && pp < *b),
        };
        if better {
            self.best = Some(pp);
        }
    }
}

/// Smallest integer `>= 2` that does not divide `c`.
pub fn smallest_nondivisor(c: u32) -> u32 {
    (2..).find(|d| !c.is_multiple_of(*d)).unwrap()
}

/// `C(A+B, 2) - A - B + mup(A, B)`: most edges of a graph on `A + B`
/// vertices with exactly one spanning `K_{A,B}`.
pub fn exa1_kab(a: u32, b: u32) -> Result<u64> {
    let n = (a + b) as u64;
    Ok(binomial(n, 2) + mup(a, b)?.value as u64 - n)
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesRow {
    pub n: u32,
    pub c: u32,
    pub mup: u32,
    pub witness: Option<PartitionPair>,
    /// `mup(n, c) - floor(n / nu)`.
    pub delta_vs_formula: i64,
    /// Parts of size `nu` on the `n` side, and all parts on that side.
    pub nu_parts: usize,
    pub n_parts: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesReport {
    pub c: u32,
    pub nu: u32,
    pub rows: Vec<SeriesRow>,
    /// Rows whose search ran out of budget.
    pub unsolved: Vec<u32>,
    /// Every witness has at most `c / d` parts of size `d` for each divisor
    /// `d` of `c`.
    pub divisor_property: bool,
    /// `mup(n + nu, c) - mup(n, c)` for every observed `n`.
    pub differences: Vec<(u32, i64)>,
    /// Smallest `n` from which every observed difference equals 1.
    pub stable_from: Option<u32>,
}

impl SeriesReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,c,mup,witness,delta_vs_formula\n");
        for r in &self.rows {
            let w = r.witness.as_ref().map(ToString::to_string).unwrap_or_default();
            out.push_str(&format!("{},{},{},{},{}\n", r.n, r.c, r.mup, w, r.delta_vs_formula));
        }
        out
    }
}

fn divisor_property(c: u32, pp: &PartitionPair) -> bool {
    (1..=c).filter(|d| c.is_multiple_of(*d)).all(|d| {
        let count = pp.parts_a.iter().chain(&pp.parts_b).filter(|&&p| p == d).count() as u32;
        count <= c / d
    })
}

/// `mup(n, c)` for `c < n <= n_max`, with the structural checks on each
/// optimal witness.
pub fn mup_series_check(c: u32, n_max: u32) -> Result<SeriesReport> {
    if c == 0 || c > 6 {
        return Err(Error::Guard(format!("series check supports 1 <= c <= 6, got {c}")));
    }
    if n_max + c > MAX_MUP_TOTAL {
        return Err(Error::Guard(format!("series check needs n_max + c <= {MAX_MUP_TOTAL}")));
    }
    let nu = smallest_nondivisor(c);
    let mut rows = Vec::new();
    let mut unsolved = Vec::new();
    for n in c + 1..=n_max {
        match mup(n, c) {
            Ok(res) => {
                let w = res.witness.expect("n > c so a witness exists");
                rows.push(SeriesRow {
                    n,
                    c,
                    mup: res.value,
                    delta_vs_formula: res.value as i64 - (n / nu) as i64,
                    nu_parts: w.parts_a.iter().filter(|&&p| p == nu).count(),
                    n_parts: w.parts_a.len(),
                    witness: Some(w),
                });
            }
            Err(Error::Unsolved(_)) => unsolved.push(n),
            Err(e) => return Err(e),
        }
    }
    let divisor_ok = rows
        .iter()
        .all(|r| r.witness.as_ref().is_some_and(|w| divisor_property(c, w)));
    let value = |n: u32| rows.iter().find(|r| r.n == n).map(|r| r.mup as i64);
    let differences: Vec<(u32, i64)> = (c + 1..=n_max.saturating_sub(nu))
        .filter_map(|n| Some((n, value(n + nu)? - value(n)?)))
        .collect();
    let stable_from = match differences.iter().rposition(|&(_, d)| d != 1) {
        None => differences.first().map(|&(n, _)| n),
        Some(i) => differences.get(i + 1).map(|&(n, _)| n),
    };
    Ok(SeriesReport {
        c,
        nu,
        rows,
        unsolved,
        divisor_property: divisor_ok,
        differences,
        stable_from,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn pp(s: &str) -> PartitionPair {
        s.parse().unwrap()
    }

    /// Reads the definition literally: collect every distinct way (as a pair
    /// of multisets) to split the combined numbers into sums `(A, B)`.
    fn unique_by_enumeration(a: u32, b: u32, pair: &PartitionPair) -> bool {
        if shares_value(pair.parts_a(), pair.parts_b()) {
            return false;
        }
        let items: Vec<u32> = pair.parts_a().iter().chain(pair.parts_b()).copied().collect();
        let mut ways = BTreeSet::new();
        for mask in 0u64..(1 << items.len()) {
            let (mut x, mut y): (Vec<u32>, Vec<u32>) = (vec![], vec![]);
            for (i, &v) in items.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    x.push(v)
                } else {
                    y.push(v)
                }
            }
            if x.iter().sum::<u32>() != a {
                continue;
            }
            x.sort_unstable();
            y.sort_unstable();
            if a == b && y < x {
                std::mem::swap(&mut x, &mut y);
            }
            ways.insert((x, y));
        }
        ways.len() == 1
    }

    fn all_partitions(n: u32) -> Vec<Vec<u32>> {
        let mut out = vec![];
        let mut cur = vec![];
        partitions_of(n, n, &mut cur, &mut |p| {
            out.push(p.to_vec());
            Ok(())
        })
        .unwrap();
        out
    }

    fn brute_mup(a: u32, b: u32) -> u32 {
        let mut best = 0;
        for pa in all_partitions(a) {
            for pb in all_partitions(b) {
                let pair = PartitionPair::new(pa.clone(), pb).unwrap();
                if unique_by_enumeration(a, b, &pair) {
                    best = best.max(pair.total_parts() as u32);
                }
            }
        }
        best
    }

    #[test]
    fn nondivisor_examples() {
        assert_eq!(smallest_nondivisor(1), 2);
        assert_eq!(smallest_nondivisor(2), 3);
        assert_eq!(smallest_nondivisor(6), 4);
        assert_eq!(smallest_nondivisor(12), 5);
        assert_eq!(smallest_nondivisor(60), 7);
    }

    #[test]
    fn worked_uniqueness_examples() {
        assert!(is_unique_partition(6, 53, &pp("3,3/13,13,13,13,1")).unwrap());
        assert!(!is_unique_partition(6, 53, &pp("3,3/50,3")).unwrap());
        assert!(is_unique_partition(6, 6, &pp("3,3/2,2,2")).unwrap());
        assert!(!is_unique_partition(6, 6, &pp("3,3/3,3")).unwrap());
        assert!(is_unique_partition(6, 6, &pp("2,2,2/3,3")).unwrap());
    }

    #[test]
    fn single_shared_part_is_not_unique() {
        for v in 1..6 {
            assert!(!is_unique_partition(v, v, &PartitionPair::new(vec![v], vec![v]).unwrap()).unwrap());
        }
    }

    #[test]
    fn uniqueness_errors() {
        assert!(is_unique_partition(5, 53, &pp("3,3/50,3")).is_err());
        assert!(PartitionPair::new(vec![], vec![1]).is_err());
        assert!(PartitionPair::new(vec![0, 2], vec![1]).is_err());
        assert!("3,3".parse::<PartitionPair>().is_err());
        assert!("3,x/1".parse::<PartitionPair>().is_err());
    }

    #[test]
    fn uniqueness_matches_enumeration() {
        for a in 1..=7 {
            for b in a..=8 {
                for pa in all_partitions(a) {
                    for pb in all_partitions(b) {
                        let pair = PartitionPair::new(pa.clone(), pb).unwrap();
                        assert_eq!(
                            is_unique_partition(a, b, &pair).unwrap(),
                            unique_by_enumeration(a, b, &pair),
                            "{a} {b} {pair}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn mup_examples() {
        assert_eq!(mup(1, 1).unwrap().value, 2);
        let r = mup(2, 2).unwrap();
        assert_eq!(r.value, 3);
        assert_eq!(r.witness, Some(pp("1,1/2")));
        assert_eq!(mup(1, 2).unwrap().value, 2);
        for a in 2..=10 {
            for b in a..=10 {
                let v = mup(a, b).unwrap().value;
                assert!(a < v && v <= a + b, "mup({a},{b}) = {v}");
            }
        }
        assert!(mup(0, 3).is_err());
        assert!(mup(30, 31).is_err());
    }

    #[test]
    fn mup_is_exact_and_symmetric() {
        // exhaustive for A + B <= 14
        for a in 1..=13u32 {
            for b in 1..=14 - a {
                if a == 1 && b == 1 {
                    continue;
                }
                let r = mup(a, b).unwrap();
                assert_eq!(r.value, brute_mup(a, b), "mup({a},{b})");
                let w = r.witness.unwrap();
                assert!(is_unique_partition(a, b, &w).unwrap());
                assert_eq!(w.total_parts() as u32, r.value);
                assert_eq!(mup(b, a).unwrap().value, r.value);
            }
        }
    }

    #[test]
    fn witness_is_lexicographically_smallest() {
        for (a, b) in [(3, 5), (4, 7), (5, 5), (6, 4)] {
            let r = mup(a, b).unwrap();
            let mut best: Option<PartitionPair> = None;
            for pa in all_partitions(a) {
                for pb in all_partitions(b) {
                    let pair = PartitionPair::new(pa.clone(), pb).unwrap();
                    if pair.total_parts() as u32 == r.value && is_unique_partition(a, b, &pair).unwrap() {
                        let pair = if a == b { pair.clone().min(pair.swapped()) } else { pair };
                        best = Some(best.map_or(pair.clone(), |x| x.min(pair)));
                    }
                }
            }
            assert_eq!(r.witness, best, "({a},{b})");
        }
    }

    #[test]
    fn tiny_budget_is_unsolved() {
        assert!(matches!(mup_with_budget(20, 30, 10), Err(Error::Unsolved(_))));
    }

    #[test]
    fn exa1_kab_values() {
        assert_eq!(exa1_kab(1, 2).unwrap(), 2);
        assert_eq!(exa1_kab(2, 2).unwrap(), 5);
        assert_eq!(exa1_kab(1, 1).unwrap(), 1);
    }

    #[test]
    fn series_small() {
        let r = mup_series_check(1, 20).unwrap();
        assert_eq!(r.nu, 2);
        assert!(r.divisor_property);
        for row in &r.rows {
            assert_eq!(row.mup, row.n / 2 + 1);
        }
        assert_eq!(r.stable_from, Some(2));
        let r = mup_series_check(2, 30).unwrap();
        assert_eq!(r.nu, 3);
        assert!(r.divisor_property);
        assert!(r.stable_from.is_some());
        assert!(r.to_csv().starts_with("n,c,mup,witness,delta_vs_formula\n3,2,"));
        assert!(mup_series_check(7, 10).is_err());
    }
}
