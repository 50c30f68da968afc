use std::collections::HashMap;

use serde::Serialize;

use super::solver::{Cost, Solver, SolverOptions};
use super::{adversary_no_first, mask_pairs, Answer, Game, GameState, Pair};
use crate::count::{count_copies, strip_isolated};
use crate::error::{Error, Result};
use crate::graph::{pair_index, EdgeSet, Graph};

/// Chooses the next query from the current state alone.
pub trait Questioner {
    /// `None` means the questioner has nothing left to ask.
    fn next_query(&mut self, game: &Game, st: &GameState) -> Result<Option<Pair>>;
}

pub trait Adversary {
    fn answer(&mut self, game: &Game, st: &GameState, q: Pair) -> Result<Answer>;
}

/// NO whenever some consistent placement avoids the pair.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoFirst;

impl Adversary for NoFirst {
    fn answer(&mut self, game: &Game, st: &GameState, q: Pair) -> Result<Answer> {
        adversary_no_first(game, st, q)
    }
}

/// YES whenever some consistent placement contains the pair.
#[derive(Debug, Clone, Copy, Default)]
pub struct YesFirst;

impl Adversary for YesFirst {
    fn answer(&mut self, game: &Game, st: &GameState, q: Pair) -> Result<Answer> {
        game.check_query(st, q)?;
        let bit = 1u64 << pair_index(q.0, q.1);
        if game.consistent_masks(st).iter().any(|&p| p & bit != 0) {
            Ok(Answer::Yes)
        } else {
            Ok(Answer::No)
        }
    }
}

/// YES on the very first query when possible, NO-first afterwards.
#[derive(Debug, Clone, Copy, Default)]
pub struct YesOnFirstQuery;

impl Adversary for YesOnFirstQuery {
    fn answer(&mut self, game: &Game, st: &GameState, q: Pair) -> Result<Answer> {
        if st.asked() == 0 {
            YesFirst.answer(game, st, q)
        } else {
            NoFirst.answer(game, st, q)
        }
    }
}

/// Answers according to a fixed hidden placement.
#[derive(Debug, Clone)]
pub struct Truthful {
    hidden: u64,
}

impl Truthful {
    pub fn new(game: &Game, hidden: &EdgeSet) -> Result<Truthful> {
        let m = hidden.to_mask();
        if !game.placement_masks().contains(&m) {
            return Err(Error::Strategy(format!(
                "{hidden} is not a placement of {}",
                game.family()
            )));
        }
        Ok(Truthful { hidden: m })
    }
}

impl Adversary for Truthful {
    fn answer(&mut self, game: &Game, st: &GameState, q: Pair) -> Result<Answer> {
        game.check_query(st, q)?;
        Ok(if self.hidden >> pair_index(q.0, q.1) & 1 == 1 {
            Answer::Yes
        } else {
            Answer::No
        })
    }
}

/// Minimax-optimal answers; NO on ties.
pub struct OptimalAdversary<'g> {
    solver: Solver<'g>,
}

impl<'g> OptimalAdversary<'g> {
    pub fn new(game: &'g Game, cost: Cost) -> Result<Self> {
        Ok(OptimalAdversary {
            solver: Solver::new(game, cost, SolverOptions::default())?,
        })
    }
}

impl Adversary for OptimalAdversary<'_> {
    fn answer(&mut self, _game: &Game, st: &GameState, q: Pair) -> Result<Answer> {
        self.solver.best_answer(st, q)
    }
}

/// Minimax-optimal queries; lexicographically smallest on ties.
pub struct OptimalQuestioner<'g> {
    solver: Solver<'g>,
}

impl<'g> OptimalQuestioner<'g> {
    pub fn new(game: &'g Game, cost: Cost) -> Result<Self> {
        Ok(OptimalQuestioner {
            solver: Solver::new(game, cost, SolverOptions::default())?,
        })
    }
}

impl Questioner for OptimalQuestioner<'_> {
    fn next_query(&mut self, _game: &Game, st: &GameState) -> Result<Option<Pair>> {
        self.solver.best_query(st)
    }
}

/// For spanning stars: query a matching until some YES, then test one
/// endpoint of the YES edge against a third vertex.
#[derive(Debug, Clone, Copy, Default)]
pub struct MatchingFirstQuestioner;

impl Questioner for MatchingFirstQuestioner {
    fn next_query(&mut self, game: &Game, st: &GameState) -> Result<Option<Pair>> {
        let cons = game.consistent_masks(st);
        if cons.len() <= 1 {
            return Ok(None);
        }
        let n = game.order();
        if let Some((u, v)) = mask_pairs(st.yes_mask()).next() {
            if let Some(w) = (0..n).find(|&w| w != u && w != v && !st.is_asked(ord(u, w))) {
                return Ok(Some(ord(u, w)));
            }
        } else if let Some(q) = (0..n / 2).map(|i| (2 * i, 2 * i + 1)).find(|&q| !st.is_asked(q)) {
            return Ok(Some(q));
        }
        Ok(game.splitting_pairs(&cons).next())
    }
}

/// Queries the non-edges of an extremal graph, then expands around YES
/// edges.
#[derive(Debug, Clone)]
pub struct ExtremalQuestioner {
    non_edges: Vec<Pair>,
}

/// Strategy built from a graph `g_ext` on `n` vertices holding exactly one
/// copy of the connected graph `f`.
pub fn questioner_extremal_strategy(n: usize, f: &Graph, g_ext: &Graph) -> Result<ExtremalQuestioner> {
    if g_ext.order() != n {
        return Err(Error::Precondition(format!(
            "extremal graph has {} vertices, expected {n}",
            g_ext.order()
        )));
    }
    if !strip_isolated(f).is_connected() {
        return Err(Error::Precondition("pattern must be connected".into()));
    }
    let copies = count_copies(g_ext, f).value();
    if copies != 1 {
        return Err(Error::Precondition(format!(
            "extremal graph holds {copies} copies of the pattern, expected 1"
        )));
    }
    let non_edges = g_ext.complement().edges().iter().collect();
    Ok(ExtremalQuestioner { non_edges })
}

impl Questioner for ExtremalQuestioner {
    fn next_query(&mut self, game: &Game, st: &GameState) -> Result<Option<Pair>> {
        let cons = game.consistent_masks(st);
        if cons.len() <= 1 {
            return Ok(None);
        }
        if st.yes_mask() == 0 {
            if let Some(&q) = self.non_edges.iter().find(|&&q| !st.is_asked(q)) {
                return Ok(Some(q));
            }
        }
        let touched = mask_pairs(st.yes_mask()).fold(0u32, |acc, (u, v)| acc | 1 << u | 1 << v);
        let frontier = game
            .pairs()
            .iter()
            .copied()
            .find(|&(u, v)| !st.is_asked((u, v)) && (touched >> u | touched >> v) & 1 == 1);
        Ok(frontier.or_else(|| game.splitting_pairs(&cons).next()))
    }
}

fn ord(u: usize, v: usize) -> Pair {
    (u.min(v), u.max(v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Step {
    pub query: Pair,
    pub answer: Answer,
}

#[derive(Debug, Clone, Serialize)]
pub struct Transcript {
    pub steps: Vec<Step>,
    pub placement: EdgeSet,
    pub total: usize,
    pub no_count: usize,
}

impl Transcript {
    pub fn yes_edges(&self) -> EdgeSet {
        EdgeSet::new(self.steps.iter().filter(|s| s.answer == Answer::Yes).map(|s| s.query)).unwrap_or_default()
    }
}

/// Plays until a single placement is consistent.
pub fn simulate(game: &Game, questioner: &mut dyn Questioner, adversary: &mut dyn Adversary) -> Result<Transcript> {
    let mut st = game.start();
    let mut steps = Vec::new();
    loop {
        if let Some(placement) = game.identified(&st) {
            let no_count = steps.iter().filter(|s: &&Step| s.answer == Answer::No).count();
            return Ok(Transcript {
                total: steps.len(),
                no_count,
                steps,
                placement,
            });
        }
        let Some(q) = questioner.next_query(game, &st)? else {
            return Err(Error::Strategy(
                "questioner stopped before the placement was identified".into(),
            ));
        };
        game.check_query(&st, q)?;
        let a = adversary.answer(game, &st, q)?;
        st = st.with_answer(q, a);
        if game.consistent_masks(&st).is_empty() {
            return Err(Error::Strategy(format!(
                "adversary answered {a:?} to {q:?}, leaving no consistent placement"
            )));
        }
        steps.push(Step { query: q, answer: a });
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WorstCase {
    pub max_total: usize,
    pub max_no: usize,
    /// Distinct answer sequences explored.
    pub plays: u64,
}

/// A questioner's worst case over every adaptive adversary.
pub fn worst_case(game: &Game, questioner: &mut dyn Questioner) -> Result<WorstCase> {
    let mut out = WorstCase {
        max_total: 0,
        max_no: 0,
        plays: 0,
    };
    explore(game, questioner, game.start(), 0, &mut out)?;
    Ok(out)
}

fn explore(game: &Game, q: &mut dyn Questioner, st: GameState, nos: usize, out: &mut WorstCase) -> Result<()> {
    if game.identified(&st).is_some() {
        out.max_total = out.max_total.max(st.asked());
        out.max_no = out.max_no.max(nos);
        out.plays += 1;
        return Ok(());
    }
    let Some(pair) = q.next_query(game, &st)? else {
        return Err(Error::Strategy(
            "questioner stopped before the placement was identified".into(),
        ));
    };
    game.check_query(&st, pair)?;
    for a in [Answer::Yes, Answer::No] {
        let next = st.with_answer(pair, a);
        if !game.consistent_masks(&next).is_empty() {
            explore(game, q, next, nos + usize::from(a == Answer::No), out)?;
        }
    }
    Ok(())
}

/// Fewest NO answers any questioner can end with against the NO-first
/// adversary, over all query sequences.
pub fn min_no_answers_vs_no_first(game: &Game) -> Result<usize> {
    fn go(game: &Game, st: GameState, memo: &mut HashMap<GameState, usize>) -> Result<usize> {
        let cons = game.consistent_masks(&st);
        if cons.len() == 1 {
            return Ok(0);
        }
        if let Some(&v) = memo.get(&st) {
            return Ok(v);
        }
        let mut best = usize::MAX;
        for q in game.splitting_pairs(&cons).collect::<Vec<_>>() {
            let a = adversary_no_first(game, &st, q)?;
            let v = usize::from(a == Answer::No) + go(game, st.with_answer(q, a), memo)?;
            best = best.min(v);
        }
        memo.insert(st, best);
        Ok(best)
    }
    go(game, game.start(), &mut HashMap::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build_klikk;
    use crate::family::GraphFamily;
    use crate::graph::binomial;
    use crate::oracle::{exa_oracle, SearchOptions};

    fn game(n: usize, f: &str) -> Game {
        Game::new(n, &f.parse().unwrap()).unwrap()
    }

    #[test]
    fn optimal_questioner_reaches_solver_value() {
        let g = game(4, "clique:3");
        let t = simulate(&g, &mut OptimalQuestioner::new(&g, Cost::L).unwrap(), &mut NoFirst).unwrap();
        assert_eq!(t.total, 2);
        for f in ["star", "trees", "kminus", "clique:3"] {
            let g = game(4, f);
            let l = crate::game::solve_l(4, &f.parse().unwrap()).unwrap() as usize;
            let t = simulate(
                &g,
                &mut OptimalQuestioner::new(&g, Cost::L).unwrap(),
                &mut OptimalAdversary::new(&g, Cost::L).unwrap(),
            )
            .unwrap();
            assert_eq!(t.total, l, "{f}");
            let wc = worst_case(&g, &mut OptimalQuestioner::new(&g, Cost::L).unwrap()).unwrap();
            assert_eq!(wc.max_total, l, "{f}");
        }
    }

    #[test]
    fn matching_first_on_stars() {
        let g = game(4, "star");
        let t = simulate(&g, &mut MatchingFirstQuestioner, &mut NoFirst).unwrap();
        assert_eq!(t.no_count, 2);
        for n in 3..=6 {
            let g = game(n, "star");
            let wc = worst_case(&g, &mut MatchingFirstQuestioner).unwrap();
            assert_eq!(wc.max_no, n / 2, "n={n}");
        }
    }

    #[test]
    fn extremal_questioner_on_triangles() {
        let ext = build_klikk(5, 3).unwrap().graph;
        let k3 = Graph::complete(3).unwrap();
        let g = game(5, "clique:3");
        let mut q = questioner_extremal_strategy(5, &k3, &ext).unwrap();
        let t = simulate(&g, &mut q, &mut NoFirst).unwrap();
        assert_eq!((t.total, t.no_count), (4, 4));
        let t = simulate(&g, &mut q, &mut YesOnFirstQuery).unwrap();
        assert!(t.total <= 10);
        assert_eq!(t.steps[0].answer, Answer::Yes);
        let wc = worst_case(&g, &mut q).unwrap();
        assert!(wc.max_total <= 10);
        for p in g.placements() {
            let t = simulate(&g, &mut q, &mut Truthful::new(&g, &p).unwrap()).unwrap();
            assert_eq!(t.placement, p);
        }
        assert!(matches!(
            questioner_extremal_strategy(5, &k3, &Graph::complete(5).unwrap()),
            Err(Error::Precondition(_))
        ));
        assert!(questioner_extremal_strategy(4, &Graph::matching(2).unwrap(), &Graph::path(4).unwrap()).is_err());
    }

    #[test]
    fn transcript_bookkeeping() {
        let g = game(5, "trees");
        let adversaries: Vec<Box<dyn Adversary>> =
            vec![Box::new(NoFirst), Box::new(YesFirst), Box::new(YesOnFirstQuery)];
        for mut a in adversaries {
            let t = simulate(&g, &mut MatchingFirstQuestioner, a.as_mut()).unwrap();
            let asked: Vec<Pair> = t.steps.iter().map(|s| s.query).collect();
            let expected = EdgeSet::new(t.placement.iter().filter(|q| asked.contains(q))).unwrap();
            assert_eq!(t.yes_edges(), expected);
            assert_eq!(t.no_count, t.steps.iter().filter(|s| s.answer == Answer::No).count());
        }
    }

    struct Repeater;
    impl Questioner for Repeater {
        fn next_query(&mut self, _: &Game, _: &GameState) -> Result<Option<Pair>> {
            Ok(Some((0, 1)))
        }
    }

    struct Liar;
    impl Adversary for Liar {
        fn answer(&mut self, _: &Game, _: &GameState, _: Pair) -> Result<Answer> {
            Ok(Answer::No)
        }
    }

    #[test]
    fn invalid_strategies_are_flagged() {
        let g = game(4, "clique:3");
        assert!(matches!(
            simulate(&g, &mut Repeater, &mut NoFirst),
            Err(Error::Strategy(_))
        ));
        let g = game(4, "star");
        let err = simulate(&g, &mut MatchingFirstQuestioner, &mut Liar).unwrap_err();
        assert!(matches!(err, Error::Strategy(_)));
    }

    #[test]
    fn no_first_forces_no_answers() {
        for f in ["clique:3", "star", "trees", "kminus", "path:3", "cycle:4"] {
            for n in 4..=5 {
                let fam: GraphFamily = f.parse().unwrap();
                let g = Game::new(n, &fam).unwrap();
                let exa1 = exa_oracle(n, 1, &fam, &SearchOptions::default())
                    .unwrap()
                    .value
                    .unwrap() as u64;
                let bound = (binomial(n as u64, 2) - exa1) as usize;
                assert!(min_no_answers_vs_no_first(&g).unwrap() >= bound, "{f} n={n}");
                let t = simulate(&g, &mut OptimalQuestioner::new(&g, Cost::L).unwrap(), &mut NoFirst).unwrap();
                assert!(t.no_count >= bound, "{f} n={n}");
            }
        }
    }
}
