//! Line-oriented text format for game graphs.
//!
//! ```text
//! # comment
//! state c 2
//! state l 2
//! edge c l 0
//! edge l c 4
//! start c
//! ```
//!
//! States must be declared before edges use them. Exactly one `start` line.

use std::fmt::Write as _;

use thiserror::Error;

use super::graph::{GameError, GameGraph, Player};
use crate::rational::{ParseRationalError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseGameError {
    #[error("line {line}: {source}")]
    Game { line: usize, source: GameError },
    #[error("line {line}: {source}")]
    Weight { line: usize, source: ParseRationalError },
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("line {line}: duplicate start line")]
    DuplicateStart { line: usize },
    #[error("no start line")]
    MissingStart,
    #[error("no states declared")]
    Empty,
}

impl ParseGameError {
    pub fn line(&self) -> Option<usize> {
        match self {
            ParseGameError::Game { line, .. }
            | ParseGameError::Weight { line, .. }
            | ParseGameError::Syntax { line, .. }
            | ParseGameError::DuplicateStart { line } => Some(*line),
            ParseGameError::MissingStart | ParseGameError::Empty => None,
        }
    }
}

pub fn parse_game(text: &str) -> Result<GameGraph, ParseGameError> {
    let mut b = GameGraph::builder();
    let mut decl_line = Vec::new();
    let mut start: Option<(usize, String)> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let syntax = |reason: &str| ParseGameError::Syntax {
            line,
            reason: reason.to_string(),
        };
        let game = |source| ParseGameError::Game { line, source };
        match tokens.as_slice() {
            [] => {}
            ["state", name, owner] => {
                let owner = match *owner {
                    "1" => Player::One,
                    "2" => Player::Two,
                    _ => return Err(syntax("owner must be 1 or 2")),
                };
                b.state(name, owner).map_err(game)?;
                decl_line.push(line);
            }
            ["edge", src, dst, weight] => {
                let w: Rational = weight.parse().map_err(|source| ParseGameError::Weight { line, source })?;
                b.edge(src, dst, w).map_err(game)?;
            }
            ["start", name] => {
                if start.is_some() {
                    return Err(ParseGameError::DuplicateStart { line });
                }
                start = Some((line, name.to_string()));
            }
            ["state", ..] => return Err(syntax("expected `state <name> <1|2>`")),
            ["edge", ..] => return Err(syntax("expected `edge <source> <target> <weight>`")),
            ["start", ..] => return Err(syntax("expected `start <name>`")),
            [other, ..] => return Err(syntax(&format!("unknown directive `{other}`"))),
        }
    }
    if decl_line.is_empty() {
        return Err(ParseGameError::Empty);
    }
    let (line, name) = start.ok_or(ParseGameError::MissingStart)?;
    b.start(&name).map_err(|source| ParseGameError::Game { line, source })?;
    b.build().map_err(|source| match source {
        GameError::NoOutgoingEdge(ref name) => {
            // Blame the declaration of the dead-end state.
            let line = declaration_line(&decl_line, text, name);
            ParseGameError::Game { line, source }
        }
        GameError::MissingStart => ParseGameError::MissingStart,
        GameError::Empty => ParseGameError::Empty,
        other => ParseGameError::Game { line: 0, source: other },
    })
}

fn declaration_line(decl_line: &[usize], text: &str, name: &str) -> usize {
    decl_line
        .iter()
        .copied()
        .find(|&l| {
            let content = text.lines().nth(l - 1).unwrap_or("");
            content.split_whitespace().nth(1) == Some(name)
        })
        .unwrap_or(0)
}

/// Canonical text form; `parse_game(&serialize_game(g)) == g`.
pub fn serialize_game(g: &GameGraph) -> String {
    let mut out = String::new();
    for q in 0..g.num_states() {
        let _ = writeln!(out, "state {} {}", g.name(q), g.owner(q));
    }
    for e in g.edges() {
        let _ = writeln!(out, "edge {} {} {}", g.name(e.source), g.name(e.target), e.weight);
    }
    let _ = writeln!(out, "start {}", g.name(g.start()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const G1024: &str = "# left/right\nstate c 2\nstate l 2\nstate r 2\nedge c l 0\nedge l c 4\nedge c r 1\nedge r c 2  # back\nstart c\n";

    #[test]
    fn parses_and_round_trips() {
        let g = parse_game(G1024).unwrap();
        assert_eq!(g.num_states(), 3);
        assert_eq!(g.num_edges(), 4);
        assert_eq!(parse_game(&serialize_game(&g)).unwrap(), g);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("state a 1\nstate a 2\n", 2),
            ("state a 1\nedge a b 0\n", 2),
            ("state a 1\nstate b 1\nedge a b 1\nstart a\n", 2),
            ("state a 1\nedge a a x\nstart a\n", 2),
            ("state a 3\n", 1),
            ("state a 1\nedge a a 0\nstart a\nstart a\n", 4),
            ("state a 1\nedge a a 0\nstart z\n", 3),
            ("state a 1\nedge a a 1/0\nstart a\n", 2),
            ("bogus\n", 1),
        ];
        for (text, line) in cases {
            let err = parse_game(text).unwrap_err();
            assert_eq!(err.line(), Some(line), "{text:?}: {err}");
        }
        assert_eq!(parse_game("state a 1\nedge a a 0\n"), Err(ParseGameError::MissingStart));
        assert_eq!(parse_game("# nothing\n"), Err(ParseGameError::Empty));
    }
}
