//! Seeded random game generator for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::games::{GameGraph, Player};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomGameOptions {
    pub states: usize,
    pub max_out_degree: usize,
    /// Integer weights are drawn uniformly from `-max_weight..=max_weight`.
    pub max_weight: i64,
}

impl Default for RandomGameOptions {
    fn default() -> Self {
        RandomGameOptions {
            states: 4,
            max_out_degree: 2,
            max_weight: 4,
        }
    }
}

/// Same seed, same game. Whenever there are at least two states the start
/// state gets at least two successors, so there is always a real choice.
pub fn random_game(seed: u64, opts: &RandomGameOptions) -> GameGraph {
    let n = opts.states.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = GameGraph::builder();
    let names: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    for name in &names {
        let owner = if rng.gen_bool(0.5) { Player::One } else { Player::Two };
        b.state(name, owner).expect("fresh names");
    }
    let max_deg = opts.max_out_degree.clamp(1, n);
    let targets: Vec<usize> = (0..n).collect();
    for (q, name) in names.iter().enumerate() {
        let min_deg = if q == 0 && n >= 2 { 2.min(max_deg) } else { 1 };
        let deg = rng.gen_range(min_deg..=max_deg);
        for &t in targets.choose_multiple(&mut rng, deg) {
            let w = rng.gen_range(-opts.max_weight..=opts.max_weight);
            b.edge(name, &names[t], Rational::from(w)).expect("distinct targets");
        }
    }
    b.start(&names[0]).expect("declared");
    b.build().expect("every state has a successor")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::serialize_game;

    #[test]
    fn deterministic_per_seed() {
        let opts = RandomGameOptions::default();
        assert_eq!(serialize_game(&random_game(7, &opts)), serialize_game(&random_game(7, &opts)));
        let g = random_game(7, &opts);
        assert!(g.out_edges(g.start()).len() >= 2);
    }
}
