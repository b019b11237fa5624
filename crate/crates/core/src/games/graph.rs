use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::Rational;

pub type StateId = usize;
pub type EdgeId = usize;

/// Player 1 maximizes the payoff, player 2 minimizes it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Player::One => 1,
            Player::Two => 2,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("duplicate edge {0} -> {1} with weight {2}")]
    DuplicateEdge(String, String, Rational),
    #[error("state `{0}` has no outgoing edge")]
    NoOutgoingEdge(String),
    #[error("no start state")]
    MissingStart,
    #[error("game has no states")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub source: StateId,
    pub target: StateId,
    pub weight: Rational,
}

/// Finite two-player game graph with rational edge rewards.
///
/// Parallel edges between the same pair of states are allowed as long as
/// their weights differ; edges are unique per (source, target, weight).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameGraph {
    names: Vec<String>,
    owners: Vec<Player>,
    edges: Vec<Edge>,
    out: Vec<Vec<EdgeId>>,
    start: StateId,
}

impl GameGraph {
    pub fn builder() -> GameBuilder {
        GameBuilder::default()
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn name(&self, q: StateId) -> &str {
        &self.names[q]
    }

    pub fn owner(&self, q: StateId) -> Player {
        self.owners[q]
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    /// Outgoing edges of `q` in declaration order.
    pub fn out_edges(&self, q: StateId) -> &[EdgeId] {
        &self.out[q]
    }

    pub fn states_of(&self, player: Player) -> impl Iterator<Item = StateId> + '_ {
        (0..self.num_states()).filter(move |&q| self.owners[q] == player)
    }

    pub fn max_abs_weight(&self) -> Rational {
        self.edges
            .iter()
            .map(|e| e.weight.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Same graph with every state handed to `player`.
    pub fn with_owner(&self, player: Player) -> GameGraph {
        let mut g = self.clone();
        g.owners.iter_mut().for_each(|o| *o = player);
        g
    }

    pub fn edge_label(&self, e: EdgeId) -> String {
        let edge = &self.edges[e];
        format!("{}->{}", self.names[edge.source], self.names[edge.target])
    }
}

#[derive(Debug, Default)]
pub struct GameBuilder {
    names: Vec<String>,
    owners: Vec<Player>,
    index: HashMap<String, StateId>,
    edges: Vec<Edge>,
    seen: HashSet<(StateId, StateId, Rational)>,
    start: Option<StateId>,
}

impl GameBuilder {
    pub fn state(&mut self, name: &str, owner: Player) -> Result<StateId, GameError> {
        if self.index.contains_key(name) {
            return Err(GameError::DuplicateState(name.to_string()));
        }
        let id = self.names.len();
        self.names.push(name.to_string());
        self.owners.push(owner);
        self.index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn lookup(&self, name: &str) -> Result<StateId, GameError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| GameError::UnknownState(name.to_string()))
    }

    pub fn edge(&mut self, source: &str, target: &str, weight: Rational) -> Result<EdgeId, GameError> {
        let s = self.lookup(source)?;
        let t = self.lookup(target)?;
        if !self.seen.insert((s, t, weight.clone())) {
            return Err(GameError::DuplicateEdge(source.to_string(), target.to_string(), weight));
        }
        self.edges.push(Edge {
            source: s,
            target: t,
            weight,
        });
        Ok(self.edges.len() - 1)
    }

    pub fn start(&mut self, name: &str) -> Result<(), GameError> {
        self.start = Some(self.lookup(name)?);
        Ok(())
    }

    pub fn build(self) -> Result<GameGraph, GameError> {
        if self.names.is_empty() {
            return Err(GameError::Empty);
        }
        let mut out = vec![Vec::new(); self.names.len()];
        for (id, e) in self.edges.iter().enumerate() {
            out[e.source].push(id);
        }
        if let Some(q) = out.iter().position(Vec::is_empty) {
            return Err(GameError::NoOutgoingEdge(self.names[q].clone()));
        }
        let start = self.start.ok_or(GameError::MissingStart)?;
        Ok(GameGraph {
            names: self.names,
            owners: self.owners,
            edges: self.edges,
            out,
            start,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_enforces_invariants() {
        let mut b = GameGraph::builder();
        b.state("a", Player::One).unwrap();
        assert_eq!(b.state("a", Player::Two), Err(GameError::DuplicateState("a".into())));
        b.state("b", Player::Two).unwrap();
        b.edge("a", "b", Rational::from(1)).unwrap();
        b.edge("a", "b", Rational::from(2)).unwrap();
        assert!(matches!(b.edge("a", "b", Rational::from(1)), Err(GameError::DuplicateEdge(..))));
        assert_eq!(b.edge("a", "zz", Rational::zero()), Err(GameError::UnknownState("zz".into())));
        b.start("a").unwrap();
        assert_eq!(b.build(), Err(GameError::NoOutgoingEdge("b".into())));
    }

    #[test]
    fn missing_start_is_an_error() {
        let mut b = GameGraph::builder();
        b.state("a", Player::One).unwrap();
        b.edge("a", "a", Rational::zero()).unwrap();
        assert_eq!(b.build(), Err(GameError::MissingStart));
    }
}
