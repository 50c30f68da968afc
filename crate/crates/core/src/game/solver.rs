use std::collections::HashMap;

use serde::Serialize;

use super::{popcount, Answer, Game, GameState, Pair};
use crate::error::{Error, Result};
use crate::family::GraphFamily;
use crate::graph::pair_index;

/// What the questioner pays.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Cost {
    /// Every query.
    L,
    /// NO answers only.
    X,
    /// Every query, where all edges of the hidden placement must be asked.
    XPrime,
}

impl Cost {
    fn charge(self, a: Answer) -> u32 {
        match (self, a) {
            (_, Answer::No) | (Cost::L, Answer::Yes) => 1,
            _ => 0,
        }
    }
}

impl std::fmt::Display for Cost {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Cost::L => "L",
            Cost::X => "x",
            Cost::XPrime => "xprime",
        })
    }
}

impl std::str::FromStr for Cost {
    type Err = Error;
    fn from_str(s: &str) -> Result<Cost> {
        match s {
            "L" | "l" => Ok(Cost::L),
            "x" | "X" => Ok(Cost::X),
            "xprime" | "x'" | "XPrime" => Ok(Cost::XPrime),
            _ => Err(Error::InvalidParameter(format!(
                "unknown game cost {s:?} (use L, x or xprime)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    /// Identify states that differ by a vertex relabeling.
    pub symmetry: bool,
    /// Memoized states allowed before giving up.
    pub max_states: u64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            symmetry: true,
            max_states: 20_000_000,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GameValue {
    pub n: usize,
    pub family: String,
    pub cost: Cost,
    pub value: Option<u32>,
    /// Optimal first queries, lexicographically.
    pub first_moves: Vec<Pair>,
    pub states_explored: u64,
    pub complete: bool,
}

pub struct Solver<'g> {
    game: &'g Game,
    cost: Cost,
    max_states: u64,
    /// Pair-index images under every vertex permutation.
    perms: Vec<Vec<u8>>,
    memo: HashMap<(u64, u64), u32>,
}

impl<'g> Solver<'g> {
    pub fn new(game: &'g Game, cost: Cost, opts: SolverOptions) -> Result<Solver<'g>> {
        let n = game.order();
        if n > 5 && !opts.symmetry {
            return Err(Error::Guard(format!("games on {n} vertices need symmetry reduction")));
        }
        let perms = if opts.symmetry {
            pair_permutations(n)
        } else {
            Vec::new()
        };
        Ok(Solver {
            game,
            cost,
            max_states: opts.max_states,
            perms,
            memo: HashMap::new(),
        })
    }

    pub fn states_explored(&self) -> u64 {
        self.memo.len() as u64
    }

    /// Optimal cost still to be paid from `st` when both sides play well.
    pub fn remaining(&mut self, st: &GameState) -> Result<u32> {
        let cons = self.game.consistent_masks(st);
        if cons.is_empty() {
            return Err(Error::Strategy("no placement is consistent with the answers".into()));
        }
        let v = self.value(st.yes_mask(), st.no_mask(), &cons)?;
        Ok(match self.cost {
            Cost::XPrime => v - popcount(st.yes_mask()),
            _ => v,
        })
    }

    /// Exact minimax value of every splitting query at `st`.
    pub fn query_values(&mut self, st: &GameState) -> Result<Vec<(Pair, u32)>> {
        let cons = self.game.consistent_masks(st);
        let queries: Vec<Pair> = self.game.splitting_pairs(&cons).collect();
        let mut out = Vec::with_capacity(queries.len());
        for q in queries {
            let v = self.query_value(st.yes_mask(), st.no_mask(), &cons, q, u32::MAX)?;
            out.push((q, v));
        }
        Ok(out)
    }

    /// Lexicographically smallest optimal query, if the game is not over.
    pub fn best_query(&mut self, st: &GameState) -> Result<Option<Pair>> {
        let vals = self.query_values(st)?;
        let best = vals.iter().map(|&(_, v)| v).min();
        Ok(vals.into_iter().find(|&(_, v)| Some(v) == best).map(|(q, _)| q))
    }

    /// The answer that maximises the remaining cost; NO on ties.
    pub fn best_answer(&mut self, st: &GameState, q: Pair) -> Result<Answer> {
        self.game.check_query(st, q)?;
        let bit = 1u64 << pair_index(q.0, q.1);
        let cons = self.game.consistent_masks(st);
        let (with, without): (Vec<u64>, Vec<u64>) = cons.iter().partition(|&&p| p & bit != 0);
        if without.is_empty() {
            return Ok(Answer::Yes);
        }
        if with.is_empty() {
            return Ok(Answer::No);
        }
        let yes = self.cost.charge(Answer::Yes) + self.value(st.yes_mask() | bit, st.no_mask(), &with)?;
        let no = self.cost.charge(Answer::No) + self.value(st.yes_mask(), st.no_mask() | bit, &without)?;
        Ok(if yes > no { Answer::Yes } else { Answer::No })
    }

    fn terminal(&self, p: u64) -> u32 {
        match self.cost {
            Cost::XPrime => popcount(p),
            _ => 0,
        }
    }

    fn lower_bound(&self, cons: &[u64]) -> u32 {
        match self.cost {
            Cost::L => usize::BITS - (cons.len() - 1).leading_zeros(),
            Cost::X => 0,
            Cost::XPrime => cons.iter().map(|&p| popcount(p)).min().unwrap_or(0),
        }
    }

    fn key(&self, yes: u64, no: u64) -> (u64, u64) {
        let mut best = (yes, no);
        for perm in &self.perms {
            let img = (map_mask(perm, yes), map_mask(perm, no));
            if img < best {
                best = img;
            }
        }
        best
    }

    // Future charges plus the terminal cost, for the state (yes, no) whose
    // consistent placements are `cons`.
    fn value(&mut self, yes: u64, no: u64, cons: &[u64]) -> Result<u32> {
        if let [p] = cons {
            return Ok(self.terminal(*p));
        }
        let key = self.key(yes, no);
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        if self.memo.len() as u64 >= self.max_states {
            return Err(Error::Unsolved(format!("state limit {} reached", self.max_states)));
        }
        let lb = self.lower_bound(cons);
        let queries: Vec<Pair> = self.game.splitting_pairs(cons).collect();
        let mut best = u32::MAX;
        for q in queries {
            let v = self.query_value(yes, no, cons, q, best)?;
            if v < best {
                best = v;
                if best <= lb {
                    break;
                }
            }
        }
        self.memo.insert(key, best);
        Ok(best)
    }

    // Value of asking `q`; any result >= `cutoff` may be returned as soon as
    // it is known to be at least `cutoff`.
    fn query_value(&mut self, yes: u64, no: u64, cons: &[u64], q: Pair, cutoff: u32) -> Result<u32> {
        let bit = 1u64 << pair_index(q.0, q.1);
        let (with, without): (Vec<u64>, Vec<u64>) = cons.iter().partition(|&&p| p & bit != 0);
        let mut worst = 0;
        if !without.is_empty() {
            worst = self.cost.charge(Answer::No) + self.value(yes, no | bit, &without)?;
            if worst >= cutoff {
                return Ok(worst);
            }
        }
        if !with.is_empty() {
            worst = worst.max(self.cost.charge(Answer::Yes) + self.value(yes | bit, no, &with)?);
        }
        Ok(worst)
    }
}

fn map_mask(perm: &[u8], m: u64) -> u64 {
    crate::graph::BitIter(m).fold(0, |acc, i| acc | 1 << perm[i])
}

fn pair_permutations(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    permute(&mut p, 0, &mut |p| {
        let mut img = vec![0u8; n * n.saturating_sub(1) / 2];
        for j in 1..n {
            for i in 0..j {
                img[pair_index(i, j)] = pair_index(p[i], p[j]) as u8;
            }
        }
        out.push(img);
    });
    out
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

pub fn solve(n: usize, fam: &GraphFamily, cost: Cost, opts: SolverOptions) -> Result<GameValue> {
    let game = Game::new(n, fam)?;
    let mut solver = Solver::new(&game, cost, opts)?;
    let st = game.start();
    let mut out = GameValue {
        n,
        family: fam.to_string(),
        cost,
        value: None,
        first_moves: Vec::new(),
        states_explored: 0,
        complete: false,
    };
    let res = solver.query_values(&st).and_then(|vals| {
        if vals.is_empty() {
            return solver.remaining(&st).map(|v| (v, Vec::new()));
        }
        let best = vals.iter().map(|&(_, v)| v).min().unwrap_or(0);
        Ok((
            best,
            vals.into_iter().filter(|&(_, v)| v == best).map(|(q, _)| q).collect(),
        ))
    });
    out.states_explored = solver.states_explored();
    match res {
        Ok((v, moves)) => {
            out.value = Some(v);
            out.first_moves = moves;
            out.complete = true;
            Ok(out)
        }
        Err(Error::Unsolved(_)) => Ok(out),
        Err(e) => Err(e),
    }
}

fn solved(n: usize, fam: &GraphFamily, cost: Cost) -> Result<u32> {
    let gv = solve(n, fam, cost, SolverOptions::default())?;
    gv.value
        .ok_or_else(|| Error::Unsolved(format!("{cost}({n}, {fam}) exceeded the state limit")))
}

pub fn solve_l(n: usize, fam: &GraphFamily) -> Result<u32> {
    solved(n, fam, Cost::L)
}

pub fn solve_x(n: usize, fam: &GraphFamily) -> Result<u32> {
    solved(n, fam, Cost::X)
}

pub fn solve_x_prime(n: usize, fam: &GraphFamily) -> Result<u32> {
    solved(n, fam, Cost::XPrime)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn fam(s: &str) -> GraphFamily {
        s.parse().unwrap()
    }

    // Plain minimax over (state, consistent set) with no memo, pruning or
    // symmetry; only usable on tiny games.
    fn naive(game: &Game, cost: Cost, yes: u64, no: u64) -> u32 {
        let st = GameState { yes, no };
        let cons = game.consistent_masks(&st);
        if cons.len() == 1 {
            return if cost == Cost::XPrime { popcount(cons[0]) } else { 0 };
        }
        let mut best = u32::MAX;
        for &(u, v) in game.pairs() {
            let bit = 1u64 << pair_index(u, v);
            if (yes | no) & bit != 0 {
                continue;
            }
            let mut worst = 0;
            for a in [Answer::Yes, Answer::No] {
                let (y, n) = if a == Answer::Yes {
                    (yes | bit, no)
                } else {
                    (yes, no | bit)
                };
                if game.consistent_masks(&GameState { yes: y, no: n }).is_empty() {
                    continue;
                }
                worst = worst.max(cost.charge(a) + naive(game, cost, y, n));
            }
            best = best.min(worst);
        }
        best
    }

    #[test]
    fn known_values() {
        assert_eq!(solve_l(4, &fam("star")).unwrap(), 2);
        assert_eq!(solve_l(5, &fam("star")).unwrap(), 3);
        assert_eq!(solve_x(4, &fam("star")).unwrap(), 2);
        assert_eq!(solve_x(5, &fam("star")).unwrap(), 2);
        assert_eq!(solve_l(4, &fam("trees")).unwrap(), 5);
        assert_eq!(solve_x(4, &fam("trees")).unwrap(), 3);
        assert_eq!(solve_l(4, &fam("kminus")).unwrap(), 5);
        assert_eq!(solve_x(4, &fam("kminus")).unwrap(), 1);
        assert_eq!(solve_l(4, &fam("clique:3")).unwrap(), 2);
        assert_eq!(solve_x_prime(4, &fam("star")).unwrap(), 5);
        assert_eq!(solve_x_prime(4, &fam("trees+clique:3")).unwrap(), 6);
    }

    #[test]
    fn matches_naive_minimax() {
        for f in ["star", "clique:3", "path:3", "matching:4", "cycle:4", "star:2+clique:3"] {
            let game = Game::new(4, &fam(f)).unwrap();
            for cost in [Cost::L, Cost::X, Cost::XPrime] {
                let exp = naive(&game, cost, 0, 0);
                let got = solve(4, &fam(f), cost, SolverOptions::default()).unwrap();
                assert_eq!(got.value, Some(exp), "{cost}({f})");
            }
        }
    }

    #[test]
    fn symmetry_does_not_change_values() {
        for f in [
            "star",
            "trees",
            "kminus",
            "clique:3",
            "path:4",
            "cycle:4",
            "perfmatching",
            "star:2",
        ] {
            for n in 4..=5 {
                if n % 2 == 1 && f == "perfmatching" {
                    continue;
                }
                for cost in [Cost::L, Cost::X, Cost::XPrime] {
                    let on = solve(
                        n,
                        &fam(f),
                        cost,
                        SolverOptions {
                            symmetry: true,
                            ..Default::default()
                        },
                    )
                    .unwrap();
                    let off = solve(
                        n,
                        &fam(f),
                        cost,
                        SolverOptions {
                            symmetry: false,
                            ..Default::default()
                        },
                    )
                    .unwrap();
                    assert_eq!(on.value, off.value, "{cost}({n}, {f})");
                    assert_eq!(on.first_moves, off.first_moves, "{cost}({n}, {f})");
                    assert!(on.states_explored <= off.states_explored);
                }
            }
        }
    }

    #[test]
    fn first_moves_and_limits() {
        let gv = solve(4, &fam("clique:3"), Cost::L, SolverOptions::default()).unwrap();
        assert_eq!(gv.first_moves.len(), 6);
        assert!(gv.complete);
        let gv = solve(
            5,
            &fam("trees"),
            Cost::L,
            SolverOptions {
                symmetry: false,
                max_states: 10,
            },
        )
        .unwrap();
        assert!(!gv.complete);
        assert_eq!(gv.value, None);
        assert!(matches!(
            solve(
                6,
                &fam("star"),
                Cost::L,
                SolverOptions {
                    symmetry: false,
                    ..Default::default()
                }
            ),
            Err(Error::Guard(_))
        ));
        let single = GraphFamily::single(Graph::complete(4).unwrap());
        let gv = solve(4, &single, Cost::XPrime, SolverOptions::default()).unwrap();
        assert_eq!((gv.value, gv.first_moves.len()), (Some(6), 0));
    }

    #[test]
    fn six_vertices_with_symmetry() {
        assert_eq!(solve_l(6, &fam("star")).unwrap(), 3);
        assert_eq!(solve_x(6, &fam("star")).unwrap(), 3);
        assert_eq!(solve_x(6, &fam("trees")).unwrap(), 10);
    }

    #[test]
    fn cost_parsing() {
        assert_eq!("L".parse::<Cost>().unwrap(), Cost::L);
        assert_eq!("xprime".parse::<Cost>().unwrap(), Cost::XPrime);
        assert!("y".parse::<Cost>().is_err());
    }
}
