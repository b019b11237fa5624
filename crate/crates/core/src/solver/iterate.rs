//! Exact value iteration for the discounted and mean-payoff special cases.

use crate::games::{GameGraph, Player};
use crate::rational::Rational;

use super::SolveError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueEstimate {
    /// Estimated value of every state.
    pub values: Vec<Rational>,
    /// Every true value lies within this distance of its estimate.
    pub error_bound: Rational,
    pub iterations: usize,
}

impl ValueEstimate {
    pub fn at(&self, q: usize) -> &Rational {
        &self.values[q]
    }
}

fn step(g: &GameGraph, v: &[Rational], scale: &Rational) -> Vec<Rational> {
    (0..g.num_states())
        .map(|q| {
            let options = g.out_edges(q).iter().map(|&e| {
                let edge = g.edge(e);
                &edge.weight + scale * &v[edge.target]
            });
            match g.owner(q) {
                Player::One => options.max(),
                Player::Two => options.min(),
            }
            .expect("every state has a successor")
        })
        .collect()
}

/// Normalized discounted value `(1 - lambda) sum lambda^i w_i` after
/// `iterations` rounds; error at most `lambda^t * W`.
pub fn value_iter_disc(g: &GameGraph, lambda: &Rational, iterations: usize) -> Result<ValueEstimate, SolveError> {
    if !lambda.is_positive() || *lambda >= 1 {
        return Err(SolveError::InvalidArgument(format!("discount factor {lambda} outside (0,1)")));
    }
    let mut v = vec![Rational::zero(); g.num_states()];
    for _ in 0..iterations {
        v = step(g, &v, lambda);
    }
    let norm = Rational::one() - lambda;
    Ok(ValueEstimate {
        values: v.into_iter().map(|x| x * &norm).collect(),
        error_bound: lambda.pow(iterations as u64) * g.max_abs_weight(),
        iterations,
    })
}

/// Mean-payoff value estimated as `v_t / t`; error at most `2 |Q| W / t`.
pub fn value_iter_mean(g: &GameGraph, steps: usize) -> Result<ValueEstimate, SolveError> {
    if steps == 0 {
        return Err(SolveError::InvalidArgument("need at least one step".into()));
    }
    let mut v = vec![Rational::zero(); g.num_states()];
    let one = Rational::one();
    for _ in 0..steps {
        v = step(g, &v, &one);
    }
    let t = Rational::from(steps as i64);
    let bound = Rational::from(2 * g.num_states() as i64) * g.max_abs_weight() / &t;
    Ok(ValueEstimate {
        values: v.into_iter().map(|x| x / &t).collect(),
        error_bound: bound,
        iterations: steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::Gadget;
    use crate::rational::rat;

    #[test]
    fn discounted_single_loop() {
        let g = Gadget::G1.build(Player::One);
        let est = value_iter_disc(&g, &rat(1, 2), 10).unwrap();
        assert!((est.at(0) - Rational::one()).abs() <= est.error_bound);
        assert!(value_iter_disc(&g, &rat(1, 1), 3).is_err());
    }

    #[test]
    fn mean_converges_on_loop_choice() {
        let g = Gadget::g4(4, 1, 3).build(Player::One);
        let est = value_iter_mean(&g, 50).unwrap();
        assert!((est.at(0) - rat(3, 1)).abs() <= est.error_bound);
    }
}
