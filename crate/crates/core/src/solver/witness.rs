//! Automatic search for a game on which a given sequence loses memoryless
//! determinacy.

use crate::games::{monotone_gadget, Gadget, GameGraph, Player};
use crate::payoff::{ExactEvaluator, Mode};
use crate::rational::Rational;
use crate::seq::{Classification, CoeffSeq};

use super::check::{check_memoryless, CheckOptions, Verdict, VerdictKind};
use super::monotone::{monotone_falsify, MonotoneOptions};
use super::SolveError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessSearchOptions {
    /// Largest memory bound tried; candidates are swept at 2, 3, ... up to this.
    pub max_mem_bound: usize,
    /// Maximum number of (game, memory bound) checks.
    pub max_checks: usize,
    /// Budget handed to each individual check.
    pub check_budget: u64,
}

impl Default for WitnessSearchOptions {
    fn default() -> Self {
        WitnessSearchOptions {
            max_mem_bound: 3,
            max_checks: 200,
            check_budget: 2_000_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Candidate {
    pub name: String,
    pub game: GameGraph,
}

#[derive(Debug, Clone)]
pub struct FoundGame {
    pub candidate: Candidate,
    pub verdict: Verdict,
}

#[derive(Debug, Clone)]
pub struct WitnessSearchOutcome {
    pub found: Option<FoundGame>,
    /// One line per check, in order: candidate, memory bound, outcome.
    pub tried: Vec<String>,
}

fn owner_tag(p: Player) -> &'static str {
    match p {
        Player::One => "p1",
        Player::Two => "p2",
    }
}

fn push_gadget(out: &mut Vec<Candidate>, gadget: Gadget) {
    for owner in [Player::One, Player::Two] {
        let name = format!("{gadget}/{}", owner_tag(owner));
        if out.iter().all(|c| c.name != name) {
            out.push(Candidate {
                game: gadget.build(owner),
                name,
            });
        }
    }
}
/// `(numerator, denominator)`.
type Fraction = (i64, i64);


/// Stern-Brocot bounds met while locating `lambda`, as (left, right) lists of
/// (numerator, denominator) pairs; `lambda` itself ends both lists.
fn stern_brocot_bounds(lambda: &Rational, max_steps: usize) -> (Vec<Fraction>, Vec<Fraction>) {
    let (mut lo, mut hi) = ((0i64, 1i64), (1i64, 0i64));
    let (mut left, mut right) = (vec![lo], Vec::new());
    for _ in 0..max_steps {
        let mid = (lo.0 + hi.0, lo.1 + hi.1);
        let m = Rational::new(mid.0, mid.1);
        match m.cmp(lambda) {
            std::cmp::Ordering::Equal => {
                left.push(mid);
                right.push(mid);
                break;
            }
            std::cmp::Ordering::Less => {
                lo = mid;
                left.push(mid);
            }
            std::cmp::Ordering::Greater => {
                hi = mid;
                right.push(mid);
            }
        }
    }
    if lambda.is_zero() {
        right.push((0, 1));
    }
    (left, right)
}

/// Candidate games for `seq`, most promising first.
pub fn candidate_games(ev: &ExactEvaluator) -> Vec<Candidate> {
    let mut out = Vec::new();
    push_gadget(&mut out, Gadget::g4(1, -1, 0));
    let analysis = ev.analysis();
    match analysis.classification {
        Classification::Convergent => {
            if let (Some(s0), Some(s1)) = (&analysis.s0, &analysis.s1) {
                if s0.is_positive() && !s1.is_negative() && s1 < s0 {
                    let lambda = s1 / s0;
                    let (left, right) = stern_brocot_bounds(&lambda, 48);
                    // Right bound l/k gives g4(1, k+l+1, l+1); left bound r/s
                    // gives g4(r+s+1, 1, s+1).
                    for &(l, k) in right.iter().rev().take(2) {
                        push_gadget(&mut out, Gadget::g4(1, k + l + 1, l + 1));
                    }
                    for &(r, s) in left.iter().rev().take(2) {
                        push_gadget(&mut out, Gadget::g4(r + s + 1, 1, s + 1));
                    }
                }
            }
            let top = match &analysis.inv_liminf {
                Some(l) if l.is_positive() => (l.recip().ceil() + 2u32).try_into().unwrap_or(8i64).min(16),
                _ => 1,
            };
            for w in 1..=top {
                push_gadget(&mut out, Gadget::G2(Rational::from(w)));
            }
        }
        Classification::DivergentBounded => {
            for k in 2..=4 {
                push_gadget(
                    &mut out,
                    Gadget::GK {
                        k,
                        reward: Rational::one(),
                    },
                );
            }
            push_gadget(&mut out, Gadget::G2(Rational::one()));
        }
        Classification::DivergentUnbounded => {
            push_gadget(&mut out, Gadget::G1024);
            push_gadget(&mut out, Gadget::G2(Rational::one()));
        }
    }
    push_gadget(&mut out, Gadget::G1);
    push_gadget(&mut out, Gadget::G3);
    out
}

/// Sweeps the candidate games, and finally a gadget built from a
/// monotonicity failure, until one of them yields a witness.
pub fn find_witness_sequence_failure(
    seq: &CoeffSeq,
    mode: Mode,
    opts: &WitnessSearchOptions,
) -> Result<WitnessSearchOutcome, SolveError> {
    let ev = ExactEvaluator::new(seq, mode)?;
    let mut candidates = candidate_games(&ev);
    let monotone = monotone_falsify(
        seq,
        mode,
        &MonotoneOptions {
            nonempty_prefixes: true,
            ..MonotoneOptions::default()
        },
    )?;
    if let Some(w) = &monotone {
        if let Ok(game) = monotone_gadget(&w.x, &w.y, &w.u, &w.v) {
            candidates.push(Candidate {
                name: "monotone-route".to_string(),
                game,
            });
        }
    }
    let mut tried = Vec::new();
    for mem_bound in 2..=opts.max_mem_bound.max(2) {
        for c in &candidates {
            if tried.len() >= opts.max_checks {
                return Ok(WitnessSearchOutcome { found: None, tried });
            }
            let check = CheckOptions {
                mem_bound,
                budget: opts.check_budget,
                ..CheckOptions::default()
            };
            let verdict = match check_memoryless(&c.game, &ev, &check) {
                Ok(v) => v,
                Err(SolveError::Budget(b)) => {
                    tried.push(format!("{} mem {mem_bound}: {b}", c.name));
                    continue;
                }
                Err(e) => return Err(e),
            };
            tried.push(format!("{} mem {mem_bound}: {}", c.name, verdict.kind));
            if verdict.kind == VerdictKind::WitnessFound {
                return Ok(WitnessSearchOutcome {
                    found: Some(FoundGame {
                        candidate: c.clone(),
                        verdict,
                    }),
                    tried,
                });
            }
        }
    }
    Ok(WitnessSearchOutcome { found: None, tried })
}
