use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::ControlFlow;

use thiserror::Error;

use super::graph::{EdgeId, GameGraph, Player, StateId};
use crate::payoff::LassoWord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("search budget of {limit} exceeded")]
pub struct BudgetExceeded {
    pub limit: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("table has {got} entries, expected {expected}")]
    WrongSize { expected: usize, got: usize },
    #[error("no choice for owned state `{0}`")]
    MissingChoice(String),
    #[error("edge {edge} does not leave state `{state}`")]
    ForeignEdge { state: String, edge: EdgeId },
    #[error("memory state {0} out of range")]
    MemoryOutOfRange(usize),
    #[error("memory size must be at least 1")]
    NoMemory,
}

/// Anything that can drive one player's moves in a play.
pub trait Behavior {
    fn player(&self) -> Player;
    fn memory_size(&self) -> usize;
    /// Edge taken from owned state `q` while in memory state `mem`.
    fn choose(&self, mem: usize, q: StateId) -> EdgeId;
    /// Memory after observing arrival in `q`.
    fn next_memory(&self, mem: usize, q: StateId) -> usize;
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MemorylessStrategy {
    player: Player,
    choice: Vec<Option<EdgeId>>,
}

impl MemorylessStrategy {
    /// `choice[q]` must be `Some` exactly for the states owned by `player`.
    pub fn new(g: &GameGraph, player: Player, choice: Vec<Option<EdgeId>>) -> Result<Self, StrategyError> {
        if choice.len() != g.num_states() {
            return Err(StrategyError::WrongSize {
                expected: g.num_states(),
                got: choice.len(),
            });
        }
        for q in g.states_of(player) {
            let e = choice[q].ok_or_else(|| StrategyError::MissingChoice(g.name(q).to_string()))?;
            if !g.out_edges(q).contains(&e) {
                return Err(StrategyError::ForeignEdge {
                    state: g.name(q).to_string(),
                    edge: e,
                });
            }
        }
        let choice = (0..g.num_states())
            .map(|q| if g.owner(q) == player { choice[q] } else { None })
            .collect();
        Ok(MemorylessStrategy { player, choice })
    }

    pub fn choice(&self, q: StateId) -> Option<EdgeId> {
        self.choice[q]
    }

    pub fn describe(&self, g: &GameGraph) -> String {
        let parts: Vec<String> = self.choice.iter().flatten().map(|&e| g.edge_label(e)).collect();
        if parts.is_empty() {
            "(no choices)".to_string()
        } else {
            parts.join(", ")
        }
    }
}

impl Behavior for MemorylessStrategy {
    fn player(&self) -> Player {
        self.player
    }

    fn memory_size(&self) -> usize {
        1
    }

    fn choose(&self, _mem: usize, q: StateId) -> EdgeId {
        self.choice[q].expect("memoryless strategy asked about a state it does not own")
    }

    fn next_memory(&self, _mem: usize, _q: StateId) -> usize {
        0
    }
}

/// Mealy-style machine: memory starts at 0, the owner picks an edge from its
/// current memory, then memory is updated on the state the play arrives in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteMemoryStrategy {
    player: Player,
    memory: usize,
    states: usize,
    choice: Vec<Option<EdgeId>>,
    update: Vec<usize>,
}

impl FiniteMemoryStrategy {
    /// Both tables are indexed by `mem * num_states + q`.
    pub fn new(
        g: &GameGraph,
        player: Player,
        memory: usize,
        choice: Vec<Option<EdgeId>>,
        update: Vec<usize>,
    ) -> Result<Self, StrategyError> {
        if memory == 0 {
            return Err(StrategyError::NoMemory);
        }
        let n = g.num_states();
        for table_len in [choice.len(), update.len()] {
            if table_len != memory * n {
                return Err(StrategyError::WrongSize {
                    expected: memory * n,
                    got: table_len,
                });
            }
        }
        if let Some(&m) = update.iter().find(|&&m| m >= memory) {
            return Err(StrategyError::MemoryOutOfRange(m));
        }
        let mut choice = choice;
        for mem in 0..memory {
            for q in 0..n {
                let slot = &mut choice[mem * n + q];
                if g.owner(q) != player {
                    *slot = None;
                    continue;
                }
                let e = slot.ok_or_else(|| StrategyError::MissingChoice(g.name(q).to_string()))?;
                if !g.out_edges(q).contains(&e) {
                    return Err(StrategyError::ForeignEdge {
                        state: g.name(q).to_string(),
                        edge: e,
                    });
                }
            }
        }
        Ok(FiniteMemoryStrategy {
            player,
            memory,
            states: n,
            choice,
            update,
        })
    }

    pub fn from_memoryless(g: &GameGraph, s: &MemorylessStrategy) -> Self {
        FiniteMemoryStrategy {
            player: s.player,
            memory: 1,
            states: g.num_states(),
            choice: s.choice.clone(),
            update: vec![0; g.num_states()],
        }
    }

    pub fn describe(&self, g: &GameGraph) -> String {
        let n = self.states;
        let mut choices = Vec::new();
        for mem in 0..self.memory {
            for q in 0..n {
                if let Some(e) = self.choice[mem * n + q] {
                    if self.memory == 1 {
                        choices.push(g.edge_label(e));
                    } else {
                        choices.push(format!("m{mem}:{}", g.edge_label(e)));
                    }
                }
            }
        }
        if self.memory == 1 {
            return if choices.is_empty() {
                "(no choices)".to_string()
            } else {
                choices.join(", ")
            };
        }
        let mut updates = Vec::new();
        for mem in 0..self.memory {
            for q in 0..n {
                let next = self.update[mem * n + q];
                if next != mem {
                    updates.push(format!("m{mem}@{}->m{next}", g.name(q)));
                }
            }
        }
        format!(
            "memory {}; choose [{}]; switch [{}]",
            self.memory,
            choices.join(", "),
            updates.join(", ")
        )
    }
}

impl Behavior for FiniteMemoryStrategy {
    fn player(&self) -> Player {
        self.player
    }

    fn memory_size(&self) -> usize {
        self.memory
    }

    fn choose(&self, mem: usize, q: StateId) -> EdgeId {
        self.choice[mem * self.states + q].expect("strategy asked about a state it does not own")
    }

    fn next_memory(&self, mem: usize, q: StateId) -> usize {
        self.update[mem * self.states + q]
    }
}

/// An ultimately periodic play: `edges[..loop_start]` once, then
/// `edges[loop_start..]` forever.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Play {
    pub edges: Vec<EdgeId>,
    pub loop_start: usize,
}

impl Play {
    pub fn lasso(&self, g: &GameGraph) -> LassoWord {
        let weights: Vec<_> = self.edges.iter().map(|&e| g.edge(e).weight.clone()).collect();
        let (prefix, cycle) = weights.split_at(self.loop_start);
        LassoWord::new(prefix.to_vec(), cycle.to_vec()).expect("plays always close a cycle")
    }

    /// State path such as `a b (c d)` with the repeated part in parentheses.
    pub fn describe(&self, g: &GameGraph) -> String {
        let names: Vec<&str> = self.edges.iter().map(|&e| g.name(g.edge(e).source)).collect();
        let (prefix, cycle) = names.split_at(self.loop_start);
        let mut out = String::new();
        for s in prefix {
            out.push_str(s);
            out.push(' ');
        }
        out.push('(');
        out.push_str(&cycle.join(" "));
        out.push(')');
        out
    }
}

/// Plays two strategies against each other until a full configuration
/// (state, both memories) repeats.
pub fn induced_play(g: &GameGraph, p1: &dyn Behavior, p2: &dyn Behavior) -> Play {
    debug_assert_eq!(p1.player(), Player::One);
    debug_assert_eq!(p2.player(), Player::Two);
    let mut seen: HashMap<(StateId, usize, usize), usize> = HashMap::new();
    let mut edges = Vec::new();
    let (mut q, mut m1, mut m2) = (g.start(), 0, 0);
    loop {
        if let Some(&at) = seen.get(&(q, m1, m2)) {
            return Play { edges, loop_start: at };
        }
        seen.insert((q, m1, m2), edges.len());
        let e = match g.owner(q) {
            Player::One => p1.choose(m1, q),
            Player::Two => p2.choose(m2, q),
        };
        edges.push(e);
        q = g.edge(e).target;
        m1 = p1.next_memory(m1, q);
        m2 = p2.next_memory(m2, q);
    }
}

pub fn induced_lasso(g: &GameGraph, p1: &dyn Behavior, p2: &dyn Behavior) -> LassoWord {
    induced_play(g, p1, p2).lasso(g)
}

/// Number of memoryless strategies for `player`, saturating at `u128::MAX`.
pub fn memoryless_count(g: &GameGraph, player: Player) -> u128 {
    g.states_of(player)
        .map(|q| g.out_edges(q).len() as u128)
        .fold(1u128, |acc, d| acc.saturating_mul(d))
}

/// Memoryless strategies in lexicographic order of edge choices, the first
/// owned state varying slowest.
pub fn enumerate_memoryless(g: &GameGraph, player: Player) -> MemorylessIter<'_> {
    let owned: Vec<StateId> = g.states_of(player).collect();
    MemorylessIter {
        g,
        player,
        digits: Some(vec![0; owned.len()]),
        owned,
    }
}

pub struct MemorylessIter<'g> {
    g: &'g GameGraph,
    player: Player,
    owned: Vec<StateId>,
    digits: Option<Vec<usize>>,
}

impl Iterator for MemorylessIter<'_> {
    type Item = MemorylessStrategy;

    fn next(&mut self) -> Option<MemorylessStrategy> {
        let digits = self.digits.as_mut()?;
        let mut choice = vec![None; self.g.num_states()];
        for (i, &q) in self.owned.iter().enumerate() {
            choice[q] = Some(self.g.out_edges(q)[digits[i]]);
        }
        let out = MemorylessStrategy {
            player: self.player,
            choice,
        };
        let mut i = self.owned.len();
        loop {
            if i == 0 {
                self.digits = None;
                break;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < self.g.out_edges(self.owned[i]).len() {
                break;
            }
            digits[i] = 0;
        }
        Some(out)
    }
}

/// Callbacks for [`search_machines`].
pub trait MachineVisitor {
    /// The play against opponent `index` is fully determined. Returning
    /// `false` abandons every machine extending the current partial one.
    fn on_play(&mut self, index: usize, play: &Play) -> bool;
    /// A machine whose plays against all opponents are determined.
    fn on_machine(&mut self, machine: &FiniteMemoryStrategy, plays: &[Play]) -> ControlFlow<()>;
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub machines: u64,
    pub stopped: bool,
}

/// Depth-first search over finite-memory machines with at most `mem_bound`
/// memory states, playing each against every strategy in `opponents`.
///
/// Table entries are only fixed when a play actually reaches them; entries
/// never reached are irrelevant to the plays and get a default value in the
/// reported machine. Fresh memory states are introduced in order of first use,
/// so machines differing only by a renaming of memory are generated once.
/// `budget` caps the number of search nodes.
pub fn search_machines(
    g: &GameGraph,
    player: Player,
    mem_bound: usize,
    opponents: &[MemorylessStrategy],
    budget: u64,
    visitor: &mut dyn MachineVisitor,
) -> Result<SearchStats, BudgetExceeded> {
    let mem_bound = mem_bound.max(1);
    let n = g.num_states();
    let mut search = Search {
        g,
        player,
        mem_bound,
        opponents,
        budget,
        choice: vec![None; mem_bound * n],
        update: vec![None; mem_bound * n],
        used: 1,
        stats: SearchStats::default(),
    };
    let mut plays = Vec::with_capacity(opponents.len());
    let flow = search.dfs(&mut plays, visitor)?;
    search.stats.stopped = flow.is_break();
    Ok(search.stats)
}

enum Need {
    Choice(usize),
    Update(usize),
}

struct Search<'a> {
    g: &'a GameGraph,
    player: Player,
    mem_bound: usize,
    opponents: &'a [MemorylessStrategy],
    budget: u64,
    choice: Vec<Option<EdgeId>>,
    update: Vec<Option<usize>>,
    used: usize,
    stats: SearchStats,
}

impl Search<'_> {
    fn simulate(&self, opponent: &MemorylessStrategy) -> Result<Play, Need> {
        let n = self.g.num_states();
        let mut seen: HashMap<(StateId, usize), usize> = HashMap::new();
        let mut edges = Vec::new();
        let (mut q, mut m) = (self.g.start(), 0);
        loop {
            if let Some(&at) = seen.get(&(q, m)) {
                return Ok(Play { edges, loop_start: at });
            }
            seen.insert((q, m), edges.len());
            let e = if self.g.owner(q) == self.player {
                self.choice[m * n + q].ok_or(Need::Choice(m * n + q))?
            } else {
                opponent.choose(0, q)
            };
            edges.push(e);
            q = self.g.edge(e).target;
            m = self.update[m * n + q].ok_or(Need::Update(m * n + q))?;
        }
    }

    fn machine(&self) -> FiniteMemoryStrategy {
        let n = self.g.num_states();
        let mut choice = vec![None; self.used * n];
        let mut update = vec![0; self.used * n];
        for mem in 0..self.used {
            for q in 0..n {
                let i = mem * n + q;
                if self.g.owner(q) == self.player {
                    choice[i] = Some(self.choice[i].unwrap_or(self.g.out_edges(q)[0]));
                }
                update[i] = self.update[i].unwrap_or(0);
            }
        }
        FiniteMemoryStrategy {
            player: self.player,
            memory: self.used,
            states: n,
            choice,
            update,
        }
    }

    fn dfs(&mut self, plays: &mut Vec<Play>, visitor: &mut dyn MachineVisitor) -> Result<ControlFlow<()>, BudgetExceeded> {
        self.stats.nodes += 1;
        if self.stats.nodes > self.budget {
            return Err(BudgetExceeded { limit: self.budget });
        }
        let r = plays.len();
        if r == self.opponents.len() {
            self.stats.machines += 1;
            let machine = self.machine();
            return Ok(visitor.on_machine(&machine, plays));
        }
        match self.simulate(&self.opponents[r]) {
            Ok(play) => {
                if !visitor.on_play(r, &play) {
                    return Ok(ControlFlow::Continue(()));
                }
                plays.push(play);
                let flow = self.dfs(plays, visitor);
                plays.pop();
                flow
            }
            Err(Need::Choice(i)) => {
                let q = i % self.g.num_states();
                let options = self.g.out_edges(q).to_vec();
                for e in options {
                    self.choice[i] = Some(e);
                    let flow = self.dfs(plays, visitor);
                    if !matches!(flow, Ok(ControlFlow::Continue(()))) {
                        self.choice[i] = None;
                        return flow;
                    }
                }
                self.choice[i] = None;
                Ok(ControlFlow::Continue(()))
            }
            Err(Need::Update(i)) => {
                let limit = (self.used + 1).min(self.mem_bound);
                for next in 0..limit {
                    self.update[i] = Some(next);
                    let fresh = next == self.used;
                    if fresh {
                        self.used += 1;
                    }
                    let flow = self.dfs(plays, visitor);
                    if fresh {
                        self.used -= 1;
                    }
                    if !matches!(flow, Ok(ControlFlow::Continue(()))) {
                        self.update[i] = None;
                        return flow;
                    }
                }
                self.update[i] = None;
                Ok(ControlFlow::Continue(()))
            }
        }
    }
}

/// Finite-memory strategies with at most `mem_bound` memory states, one per
/// distinct behavior against the opponent's memoryless strategies.
///
/// With `mem_bound <= 1` this is exactly [`enumerate_memoryless`].
pub fn enumerate_finite_memory(
    g: &GameGraph,
    player: Player,
    mem_bound: usize,
    budget: u64,
) -> Result<Vec<FiniteMemoryStrategy>, BudgetExceeded> {
    if mem_bound <= 1 {
        if memoryless_count(g, player) > budget as u128 {
            return Err(BudgetExceeded { limit: budget });
        }
        return Ok(enumerate_memoryless(g, player)
            .map(|s| FiniteMemoryStrategy::from_memoryless(g, &s))
            .collect());
    }
    if memoryless_count(g, player.opponent()) > budget as u128 {
        return Err(BudgetExceeded { limit: budget });
    }
    let opponents: Vec<_> = enumerate_memoryless(g, player.opponent()).collect();
    struct Collect {
        seen: HashSet<Vec<Play>>,
        out: Vec<FiniteMemoryStrategy>,
    }
    impl MachineVisitor for Collect {
        fn on_play(&mut self, _: usize, _: &Play) -> bool {
            true
        }
        fn on_machine(&mut self, machine: &FiniteMemoryStrategy, plays: &[Play]) -> ControlFlow<()> {
            if self.seen.insert(plays.to_vec()) {
                self.out.push(machine.clone());
            }
            ControlFlow::Continue(())
        }
    }
    let mut collect = Collect {
        seen: HashSet::new(),
        out: Vec::new(),
    };
    search_machines(g, player, mem_bound, &opponents, budget, &mut collect)?;
    Ok(collect.out)
}

impl fmt::Display for Play {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} loop at {}", self.edges, self.loop_start)
    }
}
