//! Game graphs, strategies and the small gadget games used as test beds.

mod format;
mod gadgets;
mod graph;
mod strategy;

pub use format::{parse_game, serialize_game, ParseGameError};
pub use gadgets::{monotone_gadget, Gadget, ParseGadgetError};
pub use graph::{Edge, EdgeId, GameBuilder, GameError, GameGraph, Player, StateId};
pub use strategy::{
    enumerate_finite_memory, enumerate_memoryless, induced_lasso, induced_play, memoryless_count, search_machines,
    Behavior, BudgetExceeded, FiniteMemoryStrategy, MachineVisitor, MemorylessIter, MemorylessStrategy, Play,
    SearchStats, StrategyError,
};
