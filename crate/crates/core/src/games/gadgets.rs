//! Small fixed games on which memoryless determinacy is easy to break.

use std::fmt;
use std::str::FromStr;

use super::graph::{GameError, GameGraph, Player};
use crate::rational::{parse_list, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gadget {
    /// One state with self-loops of reward 1 and 0.
    G1,
    /// Start loops on 1, or leaves with reward `w` to an absorbing 0-loop.
    G2(Rational),
    /// One state with self-loops of reward -1 and 0.
    G3,
    /// Start loops on `gamma`, or goes out with `alpha` and back with `beta`.
    G4 {
        alpha: Rational,
        beta: Rational,
        gamma: Rational,
    },
    /// Center with `k` cycles of length `k`; cycle `i` carries `reward` on
    /// its `i`-th edge and 0 elsewhere.
    GK { k: usize, reward: Rational },
    /// Center choosing between a left cycle (0, 4) and a right cycle (1, 2).
    G1024,
}

impl Gadget {
    pub fn g4(alpha: i64, beta: i64, gamma: i64) -> Gadget {
        Gadget::G4 {
            alpha: alpha.into(),
            beta: beta.into(),
            gamma: gamma.into(),
        }
    }

    pub fn build(&self, owner: Player) -> GameGraph {
        let mut b = GameGraph::builder();
        let r = Rational::from;
        let res: Result<(), GameError> = (|| {
            match self {
                Gadget::G1 | Gadget::G3 => {
                    b.state("q0", owner)?;
                    let hi = if *self == Gadget::G1 { r(1) } else { r(-1) };
                    b.edge("q0", "q0", hi)?;
                    b.edge("q0", "q0", r(0))?;
                }
                Gadget::G2(w) => {
                    b.state("q0", owner)?;
                    b.state("q1", owner)?;
                    b.edge("q0", "q0", r(1))?;
                    b.edge("q0", "q1", w.clone())?;
                    b.edge("q1", "q1", r(0))?;
                }
                Gadget::G4 { alpha, beta, gamma } => {
                    b.state("q0", owner)?;
                    b.state("q1", owner)?;
                    b.edge("q0", "q0", gamma.clone())?;
                    b.edge("q0", "q1", alpha.clone())?;
                    b.edge("q1", "q0", beta.clone())?;
                }
                Gadget::GK { k, reward } => {
                    b.state("q0", owner)?;
                    for i in 0..*k {
                        let names: Vec<String> = (1..*k).map(|j| format!("c{i}_{j}")).collect();
                        for name in &names {
                            b.state(name, owner)?;
                        }
                        let mut path = vec!["q0".to_string()];
                        path.extend(names);
                        path.push("q0".to_string());
                        for (j, pair) in path.windows(2).enumerate() {
                            let w = if j == i { reward.clone() } else { r(0) };
                            b.edge(&pair[0], &pair[1], w)?;
                        }
                    }
                }
                Gadget::G1024 => {
                    for s in ["c", "l", "r"] {
                        b.state(s, owner)?;
                    }
                    b.edge("c", "l", r(0))?;
                    b.edge("l", "c", r(4))?;
                    b.edge("c", "r", r(1))?;
                    b.edge("r", "c", r(2))?;
                }
            }
            b.start("q0").or_else(|_| b.start("c"))
        })();
        res.expect("gadget construction is well-formed");
        b.build().expect("gadget construction is well-formed")
    }
}

impl fmt::Display for Gadget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gadget::G1 => write!(f, "g1"),
            Gadget::G2(w) => write!(f, "g2:{w}"),
            Gadget::G3 => write!(f, "g3"),
            Gadget::G4 { alpha, beta, gamma } => write!(f, "g4:{alpha},{beta},{gamma}"),
            Gadget::GK { k, reward } if reward.is_one() => write!(f, "gk:{k}"),
            Gadget::GK { k, reward } => write!(f, "gk:{k},{reward}"),
            Gadget::G1024 => write!(f, "g1024"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown gadget `{0}` (expected g1, g2:w, g3, g4:a,b,c, gk:k[,r] or g1024)")]
pub struct ParseGadgetError(pub String);

impl FromStr for Gadget {
    type Err = ParseGadgetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseGadgetError(s.to_string());
        let (name, args) = s.split_once(':').unwrap_or((s, ""));
        let args = parse_list(args).map_err(|_| err())?;
        match (name, args.as_slice()) {
            ("g1", []) => Ok(Gadget::G1),
            ("g2", [w]) => Ok(Gadget::G2(w.clone())),
            ("g3", []) => Ok(Gadget::G3),
            ("g4", [a, b, c]) => Ok(Gadget::G4 {
                alpha: a.clone(),
                beta: b.clone(),
                gamma: c.clone(),
            }),
            ("gk", [k, rest @ ..]) if rest.len() <= 1 => {
                let k = k.to_i64().filter(|&k| (1..=64).contains(&k)).ok_or_else(err)? as usize;
                let reward = rest.first().cloned().unwrap_or_else(Rational::one);
                Ok(Gadget::GK { k, reward })
            }
            ("g1024", []) => Ok(Gadget::G1024),
            _ => Err(err()),
        }
    }
}

/// Game turning a monotonicity failure into a determinacy failure.
///
/// Player 2 at the start picks the `x` path or the `y` path into a hub;
/// player 1 at the hub then commits to looping on `u` or on `v`. All four
/// words must be nonempty.
pub fn monotone_gadget(x: &[Rational], y: &[Rational], u: &[Rational], v: &[Rational]) -> Result<GameGraph, GameError> {
    if [x, y, u, v].iter().any(|w| w.is_empty()) {
        return Err(GameError::Empty);
    }
    let mut b = GameGraph::builder();
    b.state("start", Player::Two)?;
    b.state("hub", Player::One)?;
    let chain = |b: &mut super::graph::GameBuilder, tag: &str, from: &str, to: &str, w: &[Rational]| {
        let mut names = vec![from.to_string()];
        for j in 1..w.len() {
            let name = format!("{tag}{j}");
            b.state(&name, Player::One)?;
            names.push(name);
        }
        names.push(to.to_string());
        for (j, pair) in names.windows(2).enumerate() {
            b.edge(&pair[0], &pair[1], w[j].clone())?;
        }
        Ok::<(), GameError>(())
    };
    chain(&mut b, "x", "start", "hub", x)?;
    chain(&mut b, "y", "start", "hub", y)?;
    chain(&mut b, "u", "hub", "hub", u)?;
    chain(&mut b, "v", "hub", "hub", v)?;
    b.start("start")?;
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let g = Gadget::GK {
            k: 3,
            reward: Rational::one(),
        }
        .build(Player::One);
        assert_eq!(g.num_states(), 7);
        assert_eq!(g.num_edges(), 9);
        assert_eq!(g.out_edges(g.start()).len(), 3);
        let g = Gadget::GK {
            k: 1,
            reward: Rational::one(),
        }
        .build(Player::One);
        assert_eq!((g.num_states(), g.num_edges()), (1, 1));
        let g = Gadget::G1024.build(Player::Two);
        assert_eq!(g.name(g.start()), "c");
        assert_eq!(Gadget::g4(4, 1, 3).build(Player::One).num_edges(), 3);
    }

    #[test]
    fn names_round_trip() {
        for s in ["g1", "g2:3/2", "g3", "g4:4,1,3", "gk:3", "gk:2,-1", "g1024"] {
            let g: Gadget = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
        for bad in ["g5", "g4:1,2", "gk:0", "g2", "g1:3"] {
            assert!(bad.parse::<Gadget>().is_err(), "{bad}");
        }
    }

    #[test]
    fn monotone_gadget_layout() {
        let r = |v: &[i64]| v.iter().map(|&x| Rational::from(x)).collect::<Vec<_>>();
        let g = monotone_gadget(&r(&[0, 0]), &r(&[0]), &r(&[0, 1]), &r(&[1, 0])).unwrap();
        assert_eq!(g.owner(g.start()), Player::Two);
        assert_eq!(g.out_edges(g.start()).len(), 2);
        assert_eq!(g.out_edges(g.state_id("hub").unwrap()).len(), 2);
        assert!(monotone_gadget(&[], &r(&[0]), &r(&[1]), &r(&[0])).is_err());
    }
}
