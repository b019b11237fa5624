use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::games::{
    search_machines, FiniteMemoryStrategy, GameGraph, MachineVisitor, MemorylessStrategy, Play, Player,
};
use crate::payoff::{ExactEvaluator, LassoWord};
use crate::rational::Rational;

use super::solve::{solve_enumerative, SolveReport};
use super::SolveError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOptions {
    /// Largest memory size tried for deviating strategies.
    pub mem_bound: usize,
    /// Cap on memoryless profiles plus machine-search nodes.
    pub budget: u64,
    /// Stop collecting improving deviations after this many.
    pub max_deviations: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            mem_bound: 2,
            budget: 2_000_000,
            max_deviations: 64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictKind {
    /// The memoryless values coincide and nothing else is possible: every
    /// state has a single successor.
    MemorylessSaddle,
    WitnessFound,
    NoWitnessUpToBound,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictKind::MemorylessSaddle => "memoryless-saddle",
            VerdictKind::WitnessFound => "witness-found",
            VerdictKind::NoWitnessUpToBound => "no-witness-up-to-bound",
        })
    }
}

/// A finite-memory strategy that beats every memoryless strategy of the same
/// player against all memoryless opponents.
#[derive(Debug, Clone)]
pub struct Deviation {
    pub player: Player,
    pub strategy: FiniteMemoryStrategy,
    pub description: String,
    /// Play against the opponent strategy that hurts the deviation most.
    pub play: Play,
    pub lasso: LassoWord,
    /// Worst-case payoff of the deviation.
    pub payoff: Rational,
    /// Best value a memoryless strategy of the same player guarantees.
    pub memoryless_value: Rational,
}

#[derive(Debug, Clone)]
pub enum Witness {
    /// Memoryless strategies leave a gap between maximin and minimax.
    SaddleGap { maximin: Rational, minimax: Rational },
    Deviation(Deviation),
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub witness: Option<Witness>,
    /// All improving deviations found, in search order (capped).
    pub deviations: Vec<Deviation>,
    pub mem_bound: usize,
    pub nodes: u64,
    pub report: SolveReport,
}

/// Searches for evidence that memoryless strategies are not optimal.
///
/// Checks the memoryless saddle first, then looks for finite-memory
/// deviations of either player with at most `mem_bound` memory states.
pub fn check_memoryless(g: &GameGraph, ev: &ExactEvaluator, opts: &CheckOptions) -> Result<Verdict, SolveError> {
    let report = solve_enumerative(g, ev, opts.budget)?;
    let mut verdict = Verdict {
        kind: VerdictKind::NoWitnessUpToBound,
        witness: None,
        deviations: Vec::new(),
        mem_bound: opts.mem_bound,
        nodes: report.profiles(),
        report,
    };
    if !verdict.report.saddle() {
        verdict.kind = VerdictKind::WitnessFound;
        verdict.witness = Some(Witness::SaddleGap {
            maximin: verdict.report.maximin.clone(),
            minimax: verdict.report.minimax.clone(),
        });
        return Ok(verdict);
    }
    if (0..g.num_states()).all(|q| g.out_edges(q).len() == 1) {
        verdict.kind = VerdictKind::MemorylessSaddle;
        return Ok(verdict);
    }
    if opts.mem_bound >= 2 {
        for player in [Player::One, Player::Two] {
            let remaining = opts.budget.saturating_sub(verdict.nodes);
            let found = deviations_for(g, ev, &verdict.report, player, opts, remaining, &mut verdict.nodes)?;
            verdict.deviations.extend(found);
            if verdict.deviations.len() >= opts.max_deviations {
                verdict.deviations.truncate(opts.max_deviations);
                break;
            }
        }
    }
    if let Some(first) = verdict.deviations.first() {
        verdict.kind = VerdictKind::WitnessFound;
        verdict.witness = Some(Witness::Deviation(first.clone()));
    }
    Ok(verdict)
}

fn deviations_for(
    g: &GameGraph,
    ev: &ExactEvaluator,
    report: &SolveReport,
    player: Player,
    opts: &CheckOptions,
    budget: u64,
    nodes: &mut u64,
) -> Result<Vec<Deviation>, SolveError> {
    // Opponent's memoryless optimum first: it prunes the most.
    let (pool, best, threshold): (&[MemorylessStrategy], usize, &Rational) = match player {
        Player::One => (&report.p2_strategies, report.p2_best, &report.maximin),
        Player::Two => (&report.p1_strategies, report.p1_best, &report.minimax),
    };
    let mut opponents = vec![pool[best].clone()];
    opponents.extend(pool.iter().enumerate().filter(|&(i, _)| i != best).map(|(_, s)| s.clone()));

    let mut visitor = DeviationVisitor {
        g,
        ev,
        player,
        threshold,
        cache: HashMap::new(),
        values: Vec::new(),
        seen: HashSet::new(),
        found: Vec::new(),
        limit: opts.max_deviations,
    };
    let stats = search_machines(g, player, opts.mem_bound, &opponents, budget, &mut visitor)?;
    *nodes += stats.nodes;
    Ok(visitor.found)
}

struct DeviationVisitor<'a> {
    g: &'a GameGraph,
    ev: &'a ExactEvaluator,
    player: Player,
    threshold: &'a Rational,
    cache: HashMap<LassoWord, Rational>,
    values: Vec<Rational>,
    seen: HashSet<Vec<Play>>,
    found: Vec<Deviation>,
    limit: usize,
}

impl DeviationVisitor<'_> {
    fn improves(&self, v: &Rational) -> bool {
        match self.player {
            Player::One => v > self.threshold,
            Player::Two => v < self.threshold,
        }
    }
}

impl MachineVisitor for DeviationVisitor<'_> {
    fn on_play(&mut self, index: usize, play: &Play) -> bool {
        let w = play.lasso(self.g);
        let v = self.cache.entry(w).or_insert_with_key(|w| self.ev.evaluate(w)).clone();
        self.values.truncate(index);
        let keep = self.improves(&v);
        self.values.push(v);
        keep
    }

    fn on_machine(&mut self, machine: &FiniteMemoryStrategy, plays: &[Play]) -> ControlFlow<()> {
        if !self.seen.insert(plays.to_vec()) {
            return ControlFlow::Continue(());
        }
        let values = &self.values[..plays.len()];
        let worst = match self.player {
            Player::One => (0..values.len()).min_by(|&a, &b| values[a].cmp(&values[b])),
            Player::Two => (0..values.len()).max_by(|&a, &b| values[a].cmp(&values[b]).then(b.cmp(&a))),
        }
        .expect("at least one opponent");
        let play = plays[worst].clone();
        self.found.push(Deviation {
            player: self.player,
            strategy: machine.clone(),
            description: machine.describe(self.g),
            lasso: play.lasso(self.g),
            play,
            payoff: values[worst].clone(),
            memoryless_value: self.threshold.clone(),
        });
        if self.found.len() >= self.limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::Gadget;
    use crate::payoff::Mode;
    use crate::rational::rat;
    use crate::seq::Sequence;

    fn ev(spec: &str) -> ExactEvaluator {
        let seq: Sequence = spec.parse().unwrap();
        ExactEvaluator::new(seq.as_block().unwrap(), Mode::Liminf).unwrap()
    }

    #[test]
    fn alternating_beats_both_loops_under_doubling() {
        let g = Gadget::G1024.build(Player::Two);
        let v = check_memoryless(&g, &ev("geom:2"), &CheckOptions::default()).unwrap();
        assert_eq!(v.kind, VerdictKind::WitnessFound);
        let Some(Witness::Deviation(d)) = &v.witness else {
            panic!("expected a deviation")
        };
        assert_eq!(d.player, Player::Two);
        assert_eq!(d.payoff, rat(14, 15));
        assert_eq!(d.memoryless_value, rat(4, 3));
    }

    #[test]
    fn mean_payoff_has_no_small_witness() {
        let g = Gadget::G1024.build(Player::Two);
        let v = check_memoryless(&g, &ev("mean"), &CheckOptions::default()).unwrap();
        assert_eq!(v.kind, VerdictKind::NoWitnessUpToBound);
    }

    #[test]
    fn single_successor_everywhere_is_a_saddle() {
        let g = Gadget::GK {
            k: 1,
            reward: Rational::one(),
        }
        .build(Player::One);
        let v = check_memoryless(&g, &ev("mean"), &CheckOptions::default()).unwrap();
        assert_eq!(v.kind, VerdictKind::MemorylessSaddle);
    }

    #[test]
    fn three_memory_states_reach_the_long_prefix_play() {
        let g = Gadget::g4(4, 1, 3).build(Player::One);
        let seq = ev("blocks:1,1/2;mu=1/8");
        let two = check_memoryless(&g, &seq, &CheckOptions::default()).unwrap();
        let Some(Witness::Deviation(d)) = &two.witness else {
            panic!("expected a deviation")
        };
        assert_eq!(d.payoff, rat(19, 6));
        let three = check_memoryless(
            &g,
            &seq,
            &CheckOptions {
                mem_bound: 3,
                ..CheckOptions::default()
            },
        )
        .unwrap();
        assert!(three.deviations.iter().any(|d| d.payoff == rat(151, 48)));
        assert!(three.deviations.iter().all(|d| d.memoryless_value == rat(3, 1)));
    }
}
