//! Bounded search for a failure of prefix monotonicity: words `x, y` and
//! cycles `u, v` with `phi(x u^w) <= phi(x v^w)` but `phi(y u^w) > phi(y v^w)`.

use crate::games::BudgetExceeded;
use crate::payoff::{eval_exact, ExactEvaluator, LassoWord, Mode};
use crate::rational::Rational;
use crate::seq::CoeffSeq;

use super::SolveError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneOptions {
    pub alphabet: Vec<Rational>,
    pub max_prefix_len: usize,
    pub max_cycle_len: usize,
    /// Only report witnesses with nonempty `x` and `y`.
    pub nonempty_prefixes: bool,
    /// Cap on distinct (prefix, cycle) evaluations.
    pub budget: u64,
}

impl Default for MonotoneOptions {
    fn default() -> Self {
        MonotoneOptions {
            alphabet: vec![Rational::zero(), Rational::one()],
            max_prefix_len: 2,
            max_cycle_len: 2,
            nonempty_prefixes: false,
            budget: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonicityWitness {
    pub x: Vec<Rational>,
    pub y: Vec<Rational>,
    pub u: Vec<Rational>,
    pub v: Vec<Rational>,
    pub phi_xu: Rational,
    pub phi_xv: Rational,
    pub phi_yu: Rational,
    pub phi_yv: Rational,
}

impl MonotonicityWitness {
    /// Re-evaluates the four plays from scratch.
    pub fn verify(&self, seq: &CoeffSeq, mode: Mode) -> Result<bool, SolveError> {
        let phi = |p: &[Rational], c: &[Rational]| -> Result<Rational, SolveError> {
            let w = LassoWord::new(p.to_vec(), c.to_vec())?;
            Ok(eval_exact(seq, &w, mode)?.exact().cloned().expect("exact evaluation"))
        };
        let xu = phi(&self.x, &self.u)?;
        let xv = phi(&self.x, &self.v)?;
        let yu = phi(&self.y, &self.u)?;
        let yv = phi(&self.y, &self.v)?;
        Ok(xu == self.phi_xu && xv == self.phi_xv && yu == self.phi_yu && yv == self.phi_yv && xu <= xv && yu > yv)
    }
}

/// All words up to `max_len`, shortest first, then lexicographic in
/// alphabet order.
pub(crate) fn words(alphabet: &[Rational], min_len: usize, max_len: usize) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Rational>> = vec![Vec::new()];
    for len in 0..=max_len {
        if len >= min_len {
            out.extend(layer.iter().cloned());
        }
        layer = layer
            .iter()
            .flat_map(|w| {
                alphabet.iter().map(move |a| {
                    let mut w = w.clone();
                    w.push(a.clone());
                    w
                })
            })
            .collect();
    }
    out
}

fn is_primitive(w: &[Rational]) -> bool {
    let n = w.len();
    (1..n).filter(|d| n.is_multiple_of(*d)).all(|d| (d..n).any(|i| w[i] != w[i - d]))
}

/// First witness in the order: `u`, then `v`, then `x`, then `y`, each
/// enumerated shortest first. `Ok(None)` means none exists within the bounds.
pub fn monotone_falsify(
    seq: &CoeffSeq,
    mode: Mode,
    opts: &MonotoneOptions,
) -> Result<Option<MonotonicityWitness>, SolveError> {
    let ev = ExactEvaluator::new(seq, mode)?;
    let min_prefix = usize::from(opts.nonempty_prefixes);
    let prefixes = words(&opts.alphabet, min_prefix, opts.max_prefix_len);
    let cycles: Vec<Vec<Rational>> = words(&opts.alphabet, 1, opts.max_cycle_len)
        .into_iter()
        .filter(|w| is_primitive(w))
        .collect();
    let cost = (prefixes.len() as u128).saturating_mul(cycles.len() as u128);
    if cost > opts.budget as u128 {
        return Err(BudgetExceeded { limit: opts.budget }.into());
    }
    // val[x][u]
    let val: Vec<Vec<Rational>> = prefixes
        .iter()
        .map(|x| {
            cycles
                .iter()
                .map(|u| ev.evaluate(&LassoWord::new(x.clone(), u.clone()).expect("nonempty cycle")))
                .collect()
        })
        .collect();
    for (ui, u) in cycles.iter().enumerate() {
        for (vi, v) in cycles.iter().enumerate() {
            if ui == vi {
                continue;
            }
            let Some(xi) = (0..prefixes.len()).find(|&x| val[x][ui] <= val[x][vi]) else {
                continue;
            };
            let Some(yi) = (0..prefixes.len()).find(|&y| val[y][ui] > val[y][vi]) else {
                continue;
            };
            return Ok(Some(MonotonicityWitness {
                x: prefixes[xi].clone(),
                y: prefixes[yi].clone(),
                u: u.clone(),
                v: v.clone(),
                phi_xu: val[xi][ui].clone(),
                phi_xv: val[xi][vi].clone(),
                phi_yu: val[yi][ui].clone(),
                phi_yv: val[yi][vi].clone(),
            }));
        }
    }
    Ok(None)
}
