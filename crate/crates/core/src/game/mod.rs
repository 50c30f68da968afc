//! The edge-query identification game. A hidden placement (a labeled copy of
//! a family member on `n` vertices) is located by asking vertex pairs; the
//! answer says whether the pair is an edge of the placement.

mod solver;
mod strategy;
mod sweep;

pub use solver::{solve, solve_l, solve_x, solve_x_prime, Cost, GameValue, Solver, SolverOptions};
pub use strategy::{
    min_no_answers_vs_no_first, questioner_extremal_strategy, simulate, worst_case, Adversary, ExtremalQuestioner,
    MatchingFirstQuestioner, NoFirst, OptimalAdversary, OptimalQuestioner, Questioner, Step, Transcript, Truthful,
    WorstCase, YesFirst, YesOnFirstQuery,
};
pub use sweep::{small_patterns, sweep_small_patterns, SweepRow};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::GraphFamily;
use crate::graph::{pair_index, BitIter, EdgeSet, Graph};

/// Largest order for which placements are enumerated.
pub const MAX_GAME_ORDER: usize = 6;

pub type Pair = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Answer {
    Yes,
    No,
}

/// Answered pairs so far; every other pair is unasked.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct GameState {
    yes: u64,
    no: u64,
}

impl GameState {
    pub fn yes_edges(&self) -> EdgeSet {
        EdgeSet::from_mask(self.yes)
    }

    pub fn no_edges(&self) -> EdgeSet {
        EdgeSet::from_mask(self.no)
    }

    pub fn yes_mask(&self) -> u64 {
        self.yes
    }

    pub fn no_mask(&self) -> u64 {
        self.no
    }

    pub fn is_asked(&self, (u, v): Pair) -> bool {
        (self.yes | self.no) >> pair_index(u, v) & 1 == 1
    }

    pub fn asked(&self) -> usize {
        (self.yes | self.no).count_ones() as usize
    }

    pub fn with_answer(&self, (u, v): Pair, answer: Answer) -> GameState {
        let bit = 1u64 << pair_index(u, v);
        match answer {
            Answer::Yes => GameState {
                yes: self.yes | bit,
                no: self.no,
            },
            Answer::No => GameState {
                yes: self.yes,
                no: self.no | bit,
            },
        }
    }
}

#[derive(Debug, Clone)]
pub struct Game {
    n: usize,
    family: String,
    placements: Vec<u64>,
    /// All vertex pairs in lexicographic order.
    pairs: Vec<Pair>,
}

impl Game {
    pub fn new(n: usize, fam: &GraphFamily) -> Result<Game> {
        if n > MAX_GAME_ORDER {
            return Err(Error::Guard(format!(
                "games are limited to n <= {MAX_GAME_ORDER}, got {n}"
            )));
        }
        let resolved = fam.resolve(n)?;
        let host = Graph::complete(n)?;
        let mut placements = Vec::new();
        for m in resolved.members() {
            if m.order() > n {
                continue;
            }
            let edges: Vec<Pair> = m.graph().edges().iter().collect();
            m.for_each_embedding(&host, |image| {
                placements.push(
                    edges
                        .iter()
                        .fold(0u64, |acc, &(a, b)| acc | 1 << pair_index(image[a], image[b])),
                );
            });
        }
        placements.sort_unstable();
        placements.dedup();
        if placements.is_empty() {
            return Err(Error::Family(format!("no member of {fam} fits on {n} vertices")));
        }
        let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Ok(Game {
            n,
            family: fam.to_string(),
            placements,
            pairs,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> &str {
        &self.family
    }

    pub fn placement_masks(&self) -> &[u64] {
        &self.placements
    }

    pub fn placements(&self) -> Vec<EdgeSet> {
        self.placements.iter().map(|&m| EdgeSet::from_mask(m)).collect()
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn start(&self) -> GameState {
        GameState::default()
    }

    pub fn consistent_masks(&self, st: &GameState) -> Vec<u64> {
        self.placements
            .iter()
            .copied()
            .filter(|&p| p & st.yes == st.yes && p & st.no == 0)
            .collect()
    }

    pub fn consistent_placements(&self, st: &GameState) -> Vec<EdgeSet> {
        self.consistent_masks(st).into_iter().map(EdgeSet::from_mask).collect()
    }

    /// The game ends once a single placement is consistent.
    pub fn identified(&self, st: &GameState) -> Option<EdgeSet> {
        match self.consistent_masks(st).as_slice() {
            [p] => Some(EdgeSet::from_mask(*p)),
            _ => None,
        }
    }

    pub(crate) fn check_query(&self, st: &GameState, (u, v): Pair) -> Result<()> {
        if u == v || u >= self.n || v >= self.n {
            return Err(Error::Strategy(format!(
                "({u}, {v}) is not a vertex pair on {} vertices",
                self.n
            )));
        }
        if st.is_asked((u, v)) {
            return Err(Error::Strategy(format!("pair ({u}, {v}) was already asked")));
        }
        Ok(())
    }

    /// Pairs on which the consistent placements disagree, lexicographically.
    pub(crate) fn splitting_pairs(&self, cons: &[u64]) -> impl Iterator<Item = Pair> + '_ {
        let union = cons.iter().fold(0, |a, &p| a | p);
        let inter = cons.iter().fold(u64::MAX, |a, &p| a & p);
        let split = union & !inter;
        self.pairs
            .iter()
            .copied()
            .filter(move |&(u, v)| split >> pair_index(u, v) & 1 == 1)
    }
}

/// All labeled copies of family members on `n` vertices, as edge sets.
pub fn placements(n: usize, fam: &GraphFamily) -> Result<Vec<EdgeSet>> {
    Ok(Game::new(n, fam)?.placements())
}

pub fn consistent_placements(game: &Game, st: &GameState) -> Vec<EdgeSet> {
    game.consistent_placements(st)
}

/// Answers NO whenever some consistent placement avoids the pair.
pub fn adversary_no_first(game: &Game, st: &GameState, query: Pair) -> Result<Answer> {
    game.check_query(st, query)?;
    let bit = 1u64 << pair_index(query.0, query.1);
    if game.consistent_masks(st).iter().any(|&p| p & bit == 0) {
        Ok(Answer::No)
    } else {
        Ok(Answer::Yes)
    }
}

pub(crate) fn popcount(m: u64) -> u32 {
    m.count_ones()
}

pub(crate) fn mask_pairs(m: u64) -> impl Iterator<Item = Pair> {
    BitIter(m).map(crate::graph::index_pair)
}
