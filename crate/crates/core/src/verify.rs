//! Named check suites. Each suite returns a report of exact values with no
//! timings, so the JSON form is reproducible.

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::construct::{build_klikk, build_star_k, build_triangle_k, build_unique_kab};
use crate::count::strip_isolated;
use crate::error::{Error, Result};
use crate::family::GraphFamily;
use crate::game::{
    min_no_answers_vs_no_first, questioner_extremal_strategy, simulate, solve, sweep_small_patterns, worst_case, Cost,
    Game, MatchingFirstQuestioner, NoFirst, OptimalQuestioner, SolverOptions, YesOnFirstQuery,
};
use crate::graph::{turan_edges, Graph};
use crate::oracle::{
    ex_oracle, exa_oracle, exa_prime_oracle, triangle_free_non_bipartite, zeta, OracleResult, SearchOptions,
};
use crate::partition::{exa1_kab, is_unique_partition, mup, mup_series_check, PartitionPair};

pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Klikk,
    Triangle,
    Classics,
    Sandwich,
    Kab,
    MupSeries,
    Games,
    Questioner,
    Zeta,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Klikk,
        Suite::Triangle,
        Suite::Classics,
        Suite::Sandwich,
        Suite::Kab,
        Suite::MupSeries,
        Suite::Games,
        Suite::Questioner,
        Suite::Zeta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Klikk => "klikk",
            Suite::Triangle => "triangle",
            Suite::Classics => "classics",
            Suite::Sandwich => "sandwich",
            Suite::Kab => "kab",
            Suite::MupSeries => "mup-series",
            Suite::Games => "games",
            Suite::Questioner => "questioner",
            Suite::Zeta => "zeta",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
            Error::InvalidParameter(format!("unknown suite {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Informational; never fails the suite.
    Report,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub computed: Value,
    pub status: Status,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite {} (seed {})\n", self.suite, self.seed);
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "ok    ",
                Status::Fail => "FAIL  ",
                Status::Report => "report",
            };
            out.push_str(&format!(
                "  {tag} {}: expected {}, computed {}\n",
                c.name, c.expected, c.computed
            ));
        }
        let fails = self.failures().count();
        out.push_str(&format!(
            "{}: {} checks, {} failed\n",
            if self.passed { "PASS" } else { "FAIL" },
            self.checks.len(),
            fails
        ));
        out
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Upper limit on the order used by oracle-backed checks.
    pub n_max: Option<usize>,
    /// Seed for the random relabelings used to re-check witnesses.
    pub seed: u64,
    pub budget: Option<Duration>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            n_max: None,
            seed: DEFAULT_SEED,
            budget: None,
        }
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut ctx = Ctx::new(opts);
    match suite {
        Suite::Klikk => klikk(&mut ctx, opts.n_max.unwrap_or(7))?,
        Suite::Triangle => triangle(&mut ctx, opts.n_max.unwrap_or(7))?,
        Suite::Classics => classics(&mut ctx, opts.n_max.unwrap_or(8))?,
        Suite::Sandwich => sandwich(&mut ctx, opts.n_max.unwrap_or(7))?,
        Suite::Kab => kab(&mut ctx, opts.n_max.unwrap_or(7))?,
        Suite::MupSeries => mup_series(&mut ctx, opts.n_max.unwrap_or(40))?,
        Suite::Games => games(&mut ctx, opts.n_max.unwrap_or(5))?,
        Suite::Questioner => questioner(&mut ctx)?,
        Suite::Zeta => zeta_suite(&mut ctx)?,
    }
    Ok(ctx.finish(suite, opts.seed))
}

struct Ctx {
    checks: Vec<Check>,
    rng: StdRng,
    search: SearchOptions,
    witnesses_checked: u64,
    witnesses_failed: Vec<String>,
}

impl Ctx {
    fn new(opts: &VerifyOptions) -> Ctx {
        Ctx {
            checks: Vec::new(),
            rng: StdRng::seed_from_u64(opts.seed),
            search: SearchOptions::with_budget(opts.budget),
            witnesses_checked: 0,
            witnesses_failed: Vec::new(),
        }
    }

    fn push(&mut self, name: String, expected: Value, computed: Value, status: Status) {
        self.checks.push(Check {
            name,
            expected,
            computed,
            status,
        });
    }

    fn eq<T: Serialize + PartialEq>(&mut self, name: impl Into<String>, expected: T, computed: T) {
        let status = if expected == computed {
            Status::Pass
        } else {
            Status::Fail
        };
        self.push(name.into(), json!(expected), json!(computed), status);
    }

    fn holds(&mut self, name: impl Into<String>, ok: bool, expected: Value, computed: Value) {
        self.push(
            name.into(),
            expected,
            computed,
            if ok { Status::Pass } else { Status::Fail },
        );
    }

    fn report(&mut self, name: impl Into<String>, expected: Value, computed: Value) {
        self.push(name.into(), expected, computed, Status::Report);
    }

    /// Re-checks a witness after a random relabeling.
    fn reverify(&mut self, what: &str, g: &Graph, edges: usize, ok: impl Fn(&Graph) -> bool) -> Result<()> {
        let mut perm: Vec<usize> = (0..g.order()).collect();
        perm.shuffle(&mut self.rng);
        let h = g.relabel(&perm)?;
        self.witnesses_checked += 1;
        if h.edge_count() != edges || !ok(&h) {
            self.witnesses_failed.push(format!("{what}: {g}"));
        }
        Ok(())
    }

    fn exa(&mut self, n: usize, k: u64, fam: &GraphFamily) -> Result<Option<usize>> {
        let what = format!("exa_{k}({n}, {fam})");
        let r = complete(exa_oracle(n, k, fam, &self.search)?, &what)?;
        if let (Some(v), Some(w)) = (r.value, r.witness) {
            let resolved = fam.resolve(n)?;
            self.reverify(&what, &w, v, |h| resolved.count(h) == k)?;
        }
        Ok(r.value)
    }

    fn ex(&mut self, n: usize, fam: &GraphFamily) -> Result<usize> {
        let what = format!("ex({n}, {fam})");
        let r = complete(ex_oracle(n, fam, &self.search)?, &what)?;
        let (Some(v), Some(w)) = (r.value, r.witness) else {
            return Err(Error::InvalidParameter(format!("{what} has no witness")));
        };
        let resolved = fam.resolve(n)?;
        self.reverify(&what, &w, v, |h| resolved.count(h) == 0)?;
        Ok(v)
    }

    fn exa_prime(&mut self, n: usize, fam: &GraphFamily) -> Result<Option<i64>> {
        let what = format!("exa'_1({n}, {fam})");
        let r = exa_prime_oracle(n, fam, &self.search)?;
        if !r.complete {
            return Err(Error::Unsolved(format!("{what} ran out of budget")));
        }
        if let (Some(v), Some(w), Some(m)) = (r.value, r.witness, r.member) {
            let resolved = fam.resolve(n)?;
            let e = w.edge_count();
            self.reverify(&what, &w, e, |h| {
                resolved.count(h) == 1 && (e as i64 - m.edge_count() as i64) == v
            })?;
        }
        Ok(r.value)
    }

    fn finish(mut self, suite: Suite, seed: u64) -> SuiteReport {
        if self.witnesses_checked > 0 {
            let failed = std::mem::take(&mut self.witnesses_failed);
            let name = "oracle witnesses re-checked under random relabeling";
            self.holds(
                name,
                failed.is_empty(),
                json!(self.witnesses_checked),
                json!({ "failed": failed }),
            );
        }
        let passed = self.checks.iter().all(|c| c.status != Status::Fail);
        SuiteReport {
            suite,
            seed,
            passed,
            checks: self.checks,
        }
    }
}

fn complete(r: OracleResult, what: &str) -> Result<OracleResult> {
    if r.complete {
        Ok(r)
    } else {
        Err(Error::Unsolved(format!("{what} ran out of budget")))
    }
}

fn c2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn klikk(ctx: &mut Ctx, n_max: usize) -> Result<()> {
    for (r, hi) in [(3, 7), (4, 6)] {
        let fam = GraphFamily::Clique(r);
        for n in r..=hi.min(n_max) {
            let exa = ctx.exa(n, 1, &fam)?;
            let ex = ctx.ex(n - r, &fam)?;
            let formula = c2(r) + (r - 2) * (n - r) + ex;
            ctx.eq(
                format!(
                    "exa_1({n}, K_{r}) = C({r},2) + {}*{} + ex({}, K_{r})",
                    r - 2,
                    n - r,
                    n - r
                ),
                Some(formula),
                exa,
            );
            if r == 3 {
                let built = build_klikk(n, r)?.actual_edges as usize;
                ctx.eq(
                    format!("exa_1({n}, K_3) = edges of build_klikk({n}, 3)"),
                    Some(built),
                    exa,
                );
            }
        }
    }
    for r in 3..=5 {
        for n in r..=12 {
            let rep = build_klikk(n, r)?;
            ctx.holds(
                format!("build_klikk({n}, {r})"),
                rep.ok,
                json!({ "edges": rep.expected_edges, "copies": rep.expected_copies }),
                json!({ "edges": rep.actual_edges, "copies": rep.actual_copies }),
            );
        }
    }
    Ok(())
}

fn triangle(ctx: &mut Ctx, n_max: usize) -> Result<()> {
    let fits = |n: usize, k: usize| k <= n - 1 - (n - 1) / 2;
    for n in 3..=12 {
        for k in (1..=4).filter(|&k| fits(n, k)) {
            let rep = build_triangle_k(n, k)?;
            ctx.holds(
                format!("build_triangle_k({n}, {k})"),
                rep.ok,
                json!({ "edges": rep.expected_edges, "copies": rep.expected_copies }),
                json!({ "edges": rep.actual_edges, "copies": rep.actual_copies }),
            );
        }
    }
    let rejected = matches!(build_triangle_k(4, 3), Err(Error::Precondition(_)));
    ctx.holds(
        "build_triangle_k(4, 3) rejected",
        rejected,
        json!("precondition error"),
        json!(rejected),
    );
    let k3 = GraphFamily::Clique(3);
    for n in 3..=7.min(n_max) {
        for k in (1..=3).filter(|&k| fits(n, k)) {
            let bound = (n - 1) * (n - 1) / 4 + k + 1;
            let exa = ctx.exa(n, k as u64, &k3)?;
            ctx.holds(
                format!("exa_{k}({n}, K_3) >= floor(({n}-1)^2/4) + {k} + 1"),
                exa.is_some_and(|v| v >= bound),
                json!(bound),
                json!(exa),
            );
            ctx.report(
                format!("exa_{k}({n}, K_3) equality with the construction"),
                json!(bound),
                json!(exa),
            );
        }
    }
    Ok(())
}

fn classics(ctx: &mut Ctx, n_max: usize) -> Result<()> {
    for (n, fam, name, expected) in [
        (4, GraphFamily::PerfectMatching, "perfect matching", 4),
        (6, GraphFamily::PerfectMatching, "perfect matching", 9),
        (4, GraphFamily::HamCycle, "Hamilton cycle", 5),
        (6, GraphFamily::HamCycle, "Hamilton cycle", 10),
    ] {
        let exa = ctx.exa(n, 1, &fam)?;
        ctx.eq(format!("exa_1({n}, {name})"), Some(expected), exa);
    }
    for n in 1..=8.min(n_max) {
        for r in 1..=4 {
            let ex = ctx.ex(n, &GraphFamily::Clique(r + 1))?;
            ctx.eq(
                format!("ex({n}, K_{}) = |E(T({n}, {r}))|", r + 1),
                turan_edges(n, r),
                ex,
            );
        }
    }
    let k3 = Graph::complete(3)?;
    for n in 5..=8.min(n_max) {
        let r = complete(
            triangle_free_non_bipartite(n, &ctx.search)?,
            "triangle-free non-bipartite search",
        )?;
        if let (Some(v), Some(w)) = (r.value, r.witness) {
            ctx.reverify("triangle-free non-bipartite", &w, v, |h| {
                crate::count::count_copies(h, &k3).value() == 0 && !h.is_bipartite().is_bipartite()
            })?;
        }
        ctx.eq(
            format!("max edges of a triangle-free non-bipartite graph on {n} vertices = floor(({n}-1)^2/4) + 1"),
            Some((n - 1) * (n - 1) / 4 + 1),
            r.value,
        );
    }
    Ok(())
}

// `lhs <= n * exa`, where a missing `exa` only satisfies a non-positive
// left side.
fn scaled_lower(lhs: i64, n: usize, exa: Option<usize>) -> bool {
    match exa {
        Some(v) => lhs <= (n * v) as i64,
        None => lhs <= 0,
    }
}

fn sandwich(ctx: &mut Ctx, n_max: usize) -> Result<()> {
    for (fam, name, v) in [
        (GraphFamily::Clique(3), "K_3", 3),
        (GraphFamily::Cycle(4), "C_4", 4),
        (GraphFamily::Cycle(5), "C_5", 5),
    ] {
        for n in 5..=7.min(n_max) {
            let ex = ctx.ex(n, &fam)?;
            for k in 1..=3usize {
                let exa = ctx.exa(n, k as u64, &fam)?;
                let lhs = (n as i64 - 2 * (k * v) as i64) * ex as i64;
                ctx.holds(
                    format!("(1 - 2*{k}*{v}/{n}) ex({n}, {name}) <= exa_{k}({n}, {name})"),
                    scaled_lower(lhs, n, exa),
                    json!({ "ex": ex, "scaled_lower_bound": lhs, "scale": n }),
                    json!(exa),
                );
                ctx.holds(
                    format!("exa_{k}({n}, {name}) <= ex({n}, {name}) + {k}"),
                    exa.is_none_or(|e| e <= ex + k),
                    json!(ex + k),
                    json!(exa),
                );
            }
        }
    }

    let two_k2 = GraphFamily::Matching(4);
    for n in 4..=7.min(n_max) {
        let ex_k2 = ctx.ex(n, &GraphFamily::Clique(2))?;
        for k in 1..=3usize {
            let exa = ctx.exa(n, k as u64, &two_k2)?;
            let lhs = (n as i64 - 8 * k as i64) * ex_k2 as i64;
            ctx.holds(
                format!("ex({n}, K_2) (1 - 2*{k}*4/{n}) <= exa_{k}({n}, 2K_2)"),
                scaled_lower(lhs, n, exa),
                json!({ "ex_k2": ex_k2, "scaled_lower_bound": lhs, "scale": n }),
                json!(exa),
            );
            if k == 1 {
                ctx.eq(format!("exa_1({n}, 2K_2) = 4"), Some(4), exa);
            }
        }
    }

    for (fam, g, name) in [
        (GraphFamily::Clique(3), Graph::complete(3)?, "K_3"),
        (GraphFamily::Clique(4), Graph::complete(4)?, "K_4"),
        (GraphFamily::Cycle(4), Graph::cycle(4)?, "C_4"),
    ] {
        let v = g.order();
        let z = zeta(&g)?;
        for n in v..=7.min(n_max) {
            let exa = ctx.exa(n, 1, &fam)?;
            let ex = ctx.ex(n - v, &fam)?;
            let bound = c2(v) + z * (n - v) + ex;
            ctx.holds(
                format!(
                    "exa_1({n}, {name}) <= C({v},2) + zeta*{} + ex({}, {name})",
                    n - v,
                    n - v
                ),
                exa.is_none_or(|e| e <= bound),
                json!(bound),
                json!(exa),
            );
        }
    }

    let r = 3;
    let star = GraphFamily::Star(Some(r));
    for n in [5, 6].into_iter().filter(|&n| n <= n_max) {
        let ex = ctx.ex(n, &star)?;
        ctx.eq(format!("ex({n}, S_{r}) = floor({n}*{}/2)", r - 1), n * (r - 1) / 2, ex);
        for k in [2usize, 4] {
            let exa = ctx.exa(n, k as u64, &star)?;
            ctx.holds(
                format!("exa_{k}({n}, S_{r}) >= ex({n}, S_{r}) + {} - 1", k / 2),
                exa.is_some_and(|e| e + 1 >= ex + k / 2),
                json!(ex + k / 2 - 1),
                json!(exa),
            );
            if n * (r - 1) % 2 == 0 {
                ctx.eq(
                    format!("exa_{k}({n}, S_{r}) = {n}*{}/2 + {k}/2", r - 1),
                    Some(n * (r - 1) / 2 + k / 2),
                    exa,
                );
            }
        }
    }
    let rep = build_star_k(6, 3, 2)?;
    ctx.holds(
        "build_star_k(6, 3, 2)",
        rep.ok,
        json!({ "edges": rep.expected_edges, "copies": rep.expected_copies }),
        json!({ "edges": rep.actual_edges, "copies": rep.actual_copies }),
    );
    Ok(())
}

fn kab(ctx: &mut Ctx, n_max: usize) -> Result<()> {
    for (a, b, s, expected) in [
        (6, 53, "3,3/13,13,13,13,1", true),
        (6, 53, "3,3/50,3", false),
        (6, 6, "3,3/2,2,2", true),
        (6, 6, "3,3/3,3", false),
    ] {
        let pp: PartitionPair = s.parse()?;
        ctx.eq(
            format!("unique({a}, {b}, {s})"),
            expected,
            is_unique_partition(a, b, &pp)?,
        );
    }
    ctx.eq("mup(1, 1)", 2, mup(1, 1)?.value);
    let m22 = mup(2, 2)?;
    ctx.eq(
        "mup(2, 2)",
        (3, Some("1,1/2".to_string())),
        (m22.value, m22.witness.map(|w| w.to_string())),
    );
    for a in 2..=10 {
        for b in a..=10 {
            let m = mup(a, b)?;
            let ok = a < m.value && m.value <= a + b;
            ctx.holds(
                format!("{} <= mup({a}, {b}) <= {}", a + 1, a + b),
                ok,
                json!([a + 1, a + b]),
                json!(m.value),
            );
            let witness_ok = m
                .witness
                .as_ref()
                .is_some_and(|w| w.total_parts() == m.value as usize && is_unique_partition(a, b, w).unwrap_or(false));
            ctx.holds(
                format!("mup({a}, {b}) witness is unique with {} parts", m.value),
                witness_ok,
                json!(m.value),
                json!(m.witness.map(|w| w.to_string())),
            );
        }
    }
    for total in 2..=7.min(n_max) {
        for a in 1..=total / 2 {
            let b = total - a;
            let formula = exa1_kab(a as u32, b as u32)? as usize;
            let exa = ctx.exa(total, 1, &GraphFamily::CompleteBipartite(a, b))?;
            ctx.eq(
                format!("C({total},2) - {a} - {b} + mup({a}, {b}) = exa_1({total}, K_{{{a},{b}}})"),
                Some(formula),
                exa,
            );
            if let Some(w) = mup(a as u32, b as u32)?.witness {
                let rep = build_unique_kab(a, b, &w)?;
                ctx.holds(
                    format!("build_unique_kab({a}, {b}, {w})"),
                    rep.ok && rep.actual_edges as usize == formula,
                    json!({ "edges": formula, "copies": 1 }),
                    json!({ "edges": rep.actual_edges, "copies": rep.actual_copies }),
                );
            }
        }
    }
    Ok(())
}

fn mup_series(ctx: &mut Ctx, n_max: usize) -> Result<()> {
    for c in 1..=4u32 {
        let rep = mup_series_check(c, n_max as u32)?;
        if let Some(&n) = rep.unsolved.first() {
            return Err(Error::Unsolved(format!("mup({n}, {c}) exceeded its node budget")));
        }
        ctx.holds(
            format!("c = {c}: every witness has at most c/d parts of size d"),
            rep.divisor_property,
            json!(true),
            json!(rep.divisor_property),
        );
        let tail = rep
            .stable_from
            .is_some_and(|s| rep.differences.iter().any(|&(n, _)| n >= s));
        ctx.holds(
            format!(
                "c = {c}: mup(n+{}, {c}) - mup(n, {c}) = 1 beyond a finite prefix",
                rep.nu
            ),
            tail,
            json!("some stable tail"),
            json!({ "stable_from": rep.stable_from }),
        );
        let nu_parts: usize = rep.rows.iter().map(|r| r.nu_parts).sum();
        let parts: usize = rep.rows.iter().map(|r| r.n_parts).sum();
        ctx.report(
            format!("c = {c}: table of mup(n, {c}) for {} < n <= {n_max}", c),
            json!({ "nu": rep.nu, "nu_parts": nu_parts, "parts": parts }),
            json!(rep
                .rows
                .iter()
                .map(|r| json!([
                    r.n,
                    r.mup,
                    r.witness.as_ref().map(|w| w.to_string()),
                    r.delta_vs_formula
                ]))
                .collect::<Vec<_>>()),
        );
    }
    Ok(())
}

fn game_value(n: usize, fam: &GraphFamily, cost: Cost) -> Result<u32> {
    solve(n, fam, cost, SolverOptions::default())?
        .value
        .ok_or_else(|| Error::Unsolved(format!("{cost}({n}, {fam}) hit the state limit")))
}

fn games(ctx: &mut Ctx, n_max: usize) -> Result<()> {
    let f = |s: &str| -> GraphFamily { s.parse().expect("built-in family") };
    for (cost, n, name, expected) in [
        (Cost::L, 4, "star", 2),
        (Cost::L, 5, "star", 3),
        (Cost::X, 4, "star", 2),
        (Cost::X, 5, "star", 2),
        (Cost::L, 4, "trees", 5),
        (Cost::X, 4, "trees", 3),
        (Cost::L, 4, "kminus", 5),
        (Cost::X, 4, "kminus", 1),
        (Cost::XPrime, 4, "star", 5),
        (Cost::XPrime, 4, "trees+clique:3", 6),
    ] {
        ctx.eq(format!("{cost}({n}, {name})"), expected, game_value(n, &f(name), cost)?);
    }
    let exa1 = ctx.exa(4, 1, &f("clique:3"))?.unwrap_or(0);
    ctx.eq(
        "L(4, K_3) = C(4,2) - exa_1(4, K_3)",
        (6 - exa1) as u32,
        game_value(4, &f("clique:3"), Cost::L)?,
    );

    let g = Game::new(4, &f("star"))?;
    let t = simulate(&g, &mut MatchingFirstQuestioner, &mut NoFirst)?;
    ctx.eq(
        "matching-first questioner vs NO-first adversary on (4, star): NO answers",
        2,
        t.no_count,
    );
    let g = Game::new(4, &f("clique:3"))?;
    let t = simulate(&g, &mut OptimalQuestioner::new(&g, Cost::L)?, &mut NoFirst)?;
    ctx.eq(
        "optimal questioner vs NO-first adversary on (4, clique:3): queries",
        2,
        t.total,
    );

    let names = [
        "star",
        "trees",
        "kminus",
        "clique:3",
        "path:3",
        "path:4",
        "cycle:4",
        "perfmatching",
        "matching:4",
        "star:2+clique:3",
        "trees+clique:3",
        "trees+clique:4",
    ];
    for n in 4..=5.min(n_max) {
        for name in names {
            let fam = f(name);
            let game = match Game::new(n, &fam) {
                Ok(g) => g,
                Err(Error::Family(_)) => continue,
                Err(e) => return Err(e),
            };
            let (l, x, xp) = (
                game_value(n, &fam, Cost::L)?,
                game_value(n, &fam, Cost::X)?,
                game_value(n, &fam, Cost::XPrime)?,
            );
            let c = c2(n) as i64;
            let exa1 = ctx.exa(n, 1, &fam)?.map_or(0, |v| v as i64);
            let exa1p = ctx.exa_prime(n, &fam)?.unwrap_or(0);
            let tag = format!("({n}, {name})");
            ctx.holds(
                format!("C(n,2) - exa_1 <= x <= L <= x' on {tag}"),
                c - exa1 <= x as i64 && x <= l && l <= xp,
                json!({ "c_minus_exa1": c - exa1 }),
                json!({ "x": x, "L": l, "xprime": xp }),
            );
            ctx.holds(
                format!("C(n,2) - exa'_1 <= x' on {tag}"),
                c - exa1p <= xp as i64,
                json!(c - exa1p),
                json!(xp),
            );
            if let Some(e) = fam.resolve(n)?.uniform_edges() {
                ctx.eq(format!("x + e = x' on {tag}"), x + e as u32, xp);
            }
            let t = simulate(&game, &mut OptimalQuestioner::new(&game, Cost::L)?, &mut NoFirst)?;
            ctx.holds(
                format!("NO-first adversary vs optimal questioner on {tag}: NO answers >= C(n,2) - exa_1"),
                t.no_count as i64 >= c - exa1,
                json!(c - exa1),
                json!(t.no_count),
            );
            let least = min_no_answers_vs_no_first(&game)?;
            ctx.holds(
                format!("NO-first adversary vs every questioner on {tag}: NO answers >= C(n,2) - exa_1"),
                least as i64 >= c - exa1,
                json!(c - exa1),
                json!(least),
            );
            if (n, name) == (4, "trees+clique:3") || (n, name) == (5, "trees+clique:4") {
                ctx.report(
                    format!("x{tag} against C(n,2) - exa_1"),
                    json!({ "c_minus_exa1": c - exa1, "exa1": exa1 }),
                    json!({ "x": x, "gap": x as i64 - (c - exa1) }),
                );
            }
        }
    }

    for row in sweep_small_patterns(5.min(n_max))? {
        ctx.report(
            format!(
                "pattern {} on {} vertices: x - (C(n,2) - exa_1), x' - (C(n,2) - exa'_1)",
                row.pattern, row.n
            ),
            json!({ "exa1": row.exa1, "exa1_prime": row.exa1_prime }),
            json!({ "L": row.l, "x": row.x, "xprime": row.x_prime, "x_gap": row.x_gap, "xprime_gap": row.x_prime_gap }),
        );
    }
    Ok(())
}

fn questioner(ctx: &mut Ctx) -> Result<()> {
    let k3 = Graph::complete(3)?;
    for n in [4usize, 5] {
        let ext = build_klikk(n, 3)?.graph;
        let game = Game::new(n, &GraphFamily::Clique(3))?;
        let mut q = questioner_extremal_strategy(n, &k3, &ext)?;
        let non_edges = c2(n) - ext.edge_count();
        let t = simulate(&game, &mut q, &mut NoFirst)?;
        ctx.eq(
            format!("extremal questioner vs NO-first adversary on (n={n}, K_3): queries, NO answers"),
            (non_edges, non_edges),
            (t.total, t.no_count),
        );
        let t = simulate(&game, &mut q, &mut YesOnFirstQuery)?;
        ctx.holds(
            format!("extremal questioner vs YES-on-first adversary on (n={n}, K_3): queries <= C({n},2)"),
            t.total <= c2(n),
            json!(c2(n)),
            json!(t.total),
        );
        let wc = worst_case(&game, &mut q)?;
        ctx.holds(
            format!("extremal questioner worst case over all adversaries on (n={n}, K_3) <= C({n},2)"),
            wc.max_total <= c2(n),
            json!(c2(n)),
            json!(wc.max_total),
        );
        ctx.report(
            format!("extremal questioner overhead over C({n},2) - |E(G_ext)| on (n={n}, K_3)"),
            json!(non_edges),
            json!({ "worst_case": wc.max_total, "overhead": wc.max_total as i64 - non_edges as i64, "plays": wc.plays }),
        );
    }
    let rejected = matches!(
        questioner_extremal_strategy(5, &k3, &Graph::complete(5)?),
        Err(Error::Precondition(_))
    );
    ctx.holds(
        "extremal questioner rejects a host with several copies",
        rejected,
        json!(true),
        json!(rejected),
    );
    Ok(())
}

fn zeta_suite(ctx: &mut Ctx) -> Result<()> {
    for (name, g, expected) in [
        ("K_3", Graph::complete(3)?, 1),
        ("K_4", Graph::complete(4)?, 2),
        ("K_5", Graph::complete(5)?, 3),
        ("P_3", Graph::path(3)?, 0),
    ] {
        ctx.eq(format!("zeta({name})"), expected, zeta(&g)?);
    }
    let mut graphs = crate::game::small_patterns();
    graphs.extend([
        Graph::cycle(5)?,
        Graph::complete(5)?,
        Graph::complete_bipartite(2, 3)?,
        Graph::path(5)?,
    ]);
    for g in graphs {
        let z = zeta(&g)?;
        let delta = strip_isolated(&g).min_degree();
        ctx.holds(
            format!("zeta({g}) >= min degree - 1"),
            z + 1 >= delta,
            json!(delta.saturating_sub(1)),
            json!(z),
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn fast_suites_pass() {
        for s in [Suite::Zeta, Suite::Questioner] {
            let rep = run_suite(s, &VerifyOptions::default()).unwrap();
            assert!(rep.passed, "{}", rep.to_text());
        }
        let rep = run_suite(
            Suite::Klikk,
            &VerifyOptions {
                n_max: Some(5),
                ..Default::default()
            },
        )
        .unwrap();
        assert!(rep.passed, "{}", rep.to_text());
    }

    #[test]
    fn reports_are_reproducible() {
        let opts = VerifyOptions {
            n_max: Some(5),
            seed: 7,
            budget: None,
        };
        let a = serde_json::to_string(&run_suite(Suite::Triangle, &opts).unwrap()).unwrap();
        let b = serde_json::to_string(&run_suite(Suite::Triangle, &opts).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn scaled_lower_bound() {
        assert!(scaled_lower(-3, 5, None));
        assert!(!scaled_lower(1, 5, None));
        assert!(scaled_lower(10, 5, Some(2)));
        assert!(!scaled_lower(11, 5, Some(2)));
    }
}
