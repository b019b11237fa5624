use std::collections::HashMap;

use crate::games::{
    enumerate_memoryless, induced_play, memoryless_count, BudgetExceeded, GameGraph, MemorylessStrategy, Player,
};
use crate::payoff::{ExactEvaluator, LassoWord};
use crate::rational::Rational;

use super::SolveError;

/// Outcome of solving a game over memoryless strategies only.
#[derive(Debug, Clone)]
pub struct SolveReport {
    /// `max_sigma min_tau`, player 1 moving first.
    pub maximin: Rational,
    /// `min_tau max_sigma`.
    pub minimax: Rational,
    pub p1_strategies: Vec<MemorylessStrategy>,
    pub p2_strategies: Vec<MemorylessStrategy>,
    /// `table[i][j]`: payoff of `p1_strategies[i]` against `p2_strategies[j]`.
    pub table: Vec<Vec<Rational>>,
    /// First (in enumeration order) player-1 strategy attaining the maximin.
    pub p1_best: usize,
    /// First player-2 strategy attaining the minimax.
    pub p2_best: usize,
}

impl SolveReport {
    pub fn saddle(&self) -> bool {
        self.maximin == self.minimax
    }

    pub fn p1_optimal(&self) -> &MemorylessStrategy {
        &self.p1_strategies[self.p1_best]
    }

    pub fn p2_optimal(&self) -> &MemorylessStrategy {
        &self.p2_strategies[self.p2_best]
    }

    pub fn profiles(&self) -> u64 {
        (self.p1_strategies.len() * self.p2_strategies.len()) as u64
    }
}

/// Evaluates every pair of memoryless strategies. `budget` caps the number of
/// profiles.
pub fn solve_enumerative(g: &GameGraph, ev: &ExactEvaluator, budget: u64) -> Result<SolveReport, SolveError> {
    let n1 = memoryless_count(g, Player::One);
    let n2 = memoryless_count(g, Player::Two);
    if n1.saturating_mul(n2) > budget as u128 {
        return Err(BudgetExceeded { limit: budget }.into());
    }
    let p1: Vec<_> = enumerate_memoryless(g, Player::One).collect();
    let p2: Vec<_> = enumerate_memoryless(g, Player::Two).collect();
    let mut cache: HashMap<LassoWord, Rational> = HashMap::new();
    let table: Vec<Vec<Rational>> = p1
        .iter()
        .map(|s| {
            p2.iter()
                .map(|t| {
                    let w = induced_play(g, s, t).lasso(g);
                    cache.entry(w).or_insert_with_key(|w| ev.evaluate(w)).clone()
                })
                .collect()
        })
        .collect();
    let mut p1_best = 0;
    let mut maximin: Option<Rational> = None;
    for (i, row) in table.iter().enumerate() {
        let worst = row.iter().min().expect("nonempty row");
        if maximin.as_ref().is_none_or(|m| worst > m) {
            maximin = Some(worst.clone());
            p1_best = i;
        }
    }
    let mut p2_best = 0;
    let mut minimax: Option<Rational> = None;
    for j in 0..p2.len() {
        let best = table.iter().map(|row| &row[j]).max().expect("nonempty column");
        if minimax.as_ref().is_none_or(|m| best < m) {
            minimax = Some(best.clone());
            p2_best = j;
        }
    }
    Ok(SolveReport {
        maximin: maximin.expect("at least one strategy"),
        minimax: minimax.expect("at least one strategy"),
        p1_strategies: p1,
        p2_strategies: p2,
        table,
        p1_best,
        p2_best,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::Gadget;
    use crate::payoff::Mode;
    use crate::rational::rat;
    use crate::seq::CoeffSeq;

    fn ev(spec: &str) -> ExactEvaluator {
        let seq: crate::seq::Sequence = spec.parse().unwrap();
        ExactEvaluator::new(seq.as_block().unwrap(), Mode::Liminf).unwrap()
    }

    #[test]
    fn left_right_game_under_doubling_weights() {
        let g = Gadget::G1024.build(Player::Two);
        let r = solve_enumerative(&g, &ev("geom:2"), 100).unwrap();
        assert_eq!(r.maximin, rat(4, 3));
        assert!(r.saddle());
        assert_eq!(r.p2_optimal().describe(&g), "c->l, l->c, r->c");
    }

    #[test]
    fn one_player_loop_choice() {
        let g = Gadget::g4(4, 1, 3).build(Player::One);
        let r = solve_enumerative(&g, &ev("blocks:1,1/2;mu=1/8"), 100).unwrap();
        assert_eq!(r.maximin, rat(3, 1));
        let mean = ExactEvaluator::new(&CoeffSeq::mean(), Mode::Liminf).unwrap();
        assert_eq!(solve_enumerative(&g, &mean, 100).unwrap().maximin, rat(3, 1));
    }

    #[test]
    fn budget_counts_profiles() {
        let g = Gadget::G1024.build(Player::Two);
        assert!(matches!(
            solve_enumerative(&g, &ev("mean"), 1),
            Err(SolveError::Budget(BudgetExceeded { limit: 1 }))
        ));
    }
}
