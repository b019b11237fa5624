//! Weighted-average payoff of ultimately periodic reward sequences.
//!
//! For a coefficient sequence `c` and rewards `w`,
//! `phi(w) = liminf_n (sum_{i<=n} c_i w_i) / (sum_{i<=n} c_i)` (or limsup).
//! Exact evaluation covers three shapes of sequence:
//!
//! * ratio < 1: the ratio converges to `sum c_i w_i / c*`;
//! * ratio = 1: numerator and denominator grow linearly over the
//!   super-period `lcm(p, k)`, so the ratio converges to the ratio of slopes;
//! * pure geometric with ratio > 1: each phase of the cycle has its own
//!   limit (a weighted average of a rotation of the cycle) and the liminf is
//!   the smallest of them.
//!
//! [`eval_approx`] is the independent truncation route used to cross-check
//! all three.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{format_list, lcm, parse_list, ParseRationalError, Rational};
use crate::seq::{Classification, CoeffSeq, SeqAnalysis, SeqError, Sequence, ZeroSumCheck};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PayoffError {
    #[error("lasso cycle must be nonempty")]
    EmptyCycle,
    #[error("bad lasso word `{spec}`: {reason}")]
    Spec { spec: String, reason: String },
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
    #[error("sequence not admitted: {0}")]
    Admission(#[from] SeqError),
    #[error("exact evaluation unsupported: {0}")]
    Unsupported(String),
    #[error("horizon {got} too short, need at least {needed}")]
    HorizonTooShort { needed: usize, got: usize },
    #[error("horizon {horizon} exceeds table horizon {available}")]
    HorizonBeyondTable { horizon: usize, available: usize },
    #[error("discount factor must lie in (0,1), got {0}")]
    DiscountOutOfRange(Rational),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Liminf,
    Limsup,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Liminf => "liminf",
            Mode::Limsup => "limsup",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "liminf" => Ok(Mode::Liminf),
            "limsup" => Ok(Mode::Limsup),
            other => Err(format!("unknown mode `{other}` (expected liminf or limsup)")),
        }
    }
}

/// Ultimately periodic reward word `prefix (cycle)^omega`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LassoWord {
    prefix: Vec<Rational>,
    cycle: Vec<Rational>,
}

impl LassoWord {
    pub fn new(prefix: Vec<Rational>, cycle: Vec<Rational>) -> Result<Self, PayoffError> {
        if cycle.is_empty() {
            return Err(PayoffError::EmptyCycle);
        }
        Ok(LassoWord { prefix, cycle })
    }

    pub fn periodic(cycle: Vec<Rational>) -> Result<Self, PayoffError> {
        Self::new(Vec::new(), cycle)
    }

    pub fn constant(a: Rational) -> Self {
        LassoWord {
            prefix: Vec::new(),
            cycle: vec![a],
        }
    }

    pub fn prefix(&self) -> &[Rational] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[Rational] {
        &self.cycle
    }

    pub fn reward(&self, i: usize) -> &Rational {
        if i < self.prefix.len() {
            &self.prefix[i]
        } else {
            &self.cycle[(i - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// Same word with `x` prepended.
    pub fn prepend(&self, x: &[Rational]) -> LassoWord {
        let mut prefix = x.to_vec();
        prefix.extend(self.prefix.iter().cloned());
        LassoWord {
            prefix,
            cycle: self.cycle.clone(),
        }
    }

    pub fn max_abs_reward(&self) -> Rational {
        self.prefix
            .iter()
            .chain(&self.cycle)
            .map(Rational::abs)
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

impl fmt::Display for LassoWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.prefix.is_empty() {
            write!(f, "prefix={};", format_list(&self.prefix))?;
        }
        write!(f, "cycle={}", format_list(&self.cycle))
    }
}

impl FromStr for LassoWord {
    type Err = PayoffError;

    /// `prefix=r0,r1,...;cycle=s0,s1,...` with the prefix part optional.
    fn from_str(spec: &str) -> Result<Self, PayoffError> {
        let bad = |reason: &str| PayoffError::Spec {
            spec: spec.to_string(),
            reason: reason.to_string(),
        };
        let mut prefix = None;
        let mut cycle = None;
        for part in spec.split(';') {
            match part.split_once('=') {
                Some(("prefix", v)) if prefix.is_none() => prefix = Some(parse_list(v)?),
                Some(("cycle", v)) if cycle.is_none() => cycle = Some(parse_list(v)?),
                _ => return Err(bad(&format!("unexpected field `{part}`"))),
            }
        }
        let cycle = cycle.ok_or_else(|| bad("missing `cycle=`"))?;
        LassoWord::new(prefix.unwrap_or_default(), cycle)
    }
}

impl Serialize for LassoWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LassoWord {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PayoffValue {
    Exact {
        value: Rational,
        mode: Mode,
    },
    Bracket {
        lo: Rational,
        hi: Rational,
        horizon: usize,
        mode: Mode,
        /// Whether the bracket is a proven enclosure of the payoff.
        rigorous: bool,
    },
}

impl PayoffValue {
    pub fn exact(&self) -> Option<&Rational> {
        match self {
            PayoffValue::Exact { value, .. } => Some(value),
            PayoffValue::Bracket { .. } => None,
        }
    }

    pub fn bracket(&self) -> Option<(&Rational, &Rational)> {
        match self {
            PayoffValue::Bracket { lo, hi, .. } => Some((lo, hi)),
            PayoffValue::Exact { .. } => None,
        }
    }

    pub fn contains(&self, v: &Rational) -> bool {
        match self {
            PayoffValue::Exact { value, .. } => value == v,
            PayoffValue::Bracket { lo, hi, .. } => lo <= v && v <= hi,
        }
    }
}

impl fmt::Display for PayoffValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PayoffValue::Exact { value, .. } => write!(f, "{value}"),
            PayoffValue::Bracket { lo, hi, .. } => write!(f, "bracket[{lo}, {hi}]"),
        }
    }
}

/// Exact evaluator bound to one admitted sequence and mode.
///
/// Admission and analysis run once here; [`ExactEvaluator::evaluate`] is
/// then cheap enough to call for every profile of a game.
#[derive(Debug, Clone)]
pub struct ExactEvaluator {
    seq: CoeffSeq,
    analysis: SeqAnalysis,
    mode: Mode,
}

impl ExactEvaluator {
    pub fn new(seq: &CoeffSeq, mode: Mode) -> Result<Self, PayoffError> {
        let analysis = seq.analyze()?;
        let evaluator = ExactEvaluator {
            seq: seq.clone(),
            analysis,
            mode,
        };
        evaluator.support()?;
        Ok(evaluator)
    }

    pub fn seq(&self) -> &CoeffSeq {
        &self.seq
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn analysis(&self) -> &SeqAnalysis {
        &self.analysis
    }

    fn support(&self) -> Result<(), PayoffError> {
        match self.analysis.classification {
            Classification::Convergent if self.analysis.c_star.as_ref().is_some_and(Rational::is_zero) => Err(
                PayoffError::Unsupported("series sums to zero, the ratio diverges".into()),
            ),
            Classification::DivergentUnbounded if self.seq.period() > 1 => Err(PayoffError::Unsupported(
                "ratio > 1 with block length > 1 has no closed form".into(),
            )),
            _ => Ok(()),
        }
    }

    pub fn evaluate(&self, w: &LassoWord) -> Rational {
        match self.analysis.classification {
            Classification::Convergent => {
                let c_star = self.analysis.c_star.as_ref().expect("convergent analysis");
                let total = self
                    .seq
                    .series_against(w.prefix(), w.cycle())
                    .expect("ratio below one");
                total / c_star
            }
            Classification::DivergentBounded => {
                let start = self.seq.prefix_len().max(w.prefix().len());
                let span = lcm(self.seq.period(), w.cycle().len());
                let mut num = Rational::zero();
                let mut den = Rational::zero();
                for (i, c) in self.seq.terms().enumerate().skip(start).take(span) {
                    num += &c * w.reward(i);
                    den += c;
                }
                num / den
            }
            Classification::DivergentUnbounded => {
                let values = rotation_values(self.seq.ratio(), w.cycle());
                match self.mode {
                    Mode::Liminf => values.into_iter().min(),
                    Mode::Limsup => values.into_iter().max(),
                }
                .expect("nonempty cycle")
            }
        }
    }
}

/// `(sum_j lambda^j a_{i+j}) / (sum_j lambda^j)` for each rotation `i` of the
/// cycle, indices mod k.
pub fn rotation_values(lambda: &Rational, cycle: &[Rational]) -> Vec<Rational> {
    let k = cycle.len();
    let mut powers = Vec::with_capacity(k);
    let mut p = Rational::one();
    for _ in 0..k {
        powers.push(p.clone());
        p *= lambda;
    }
    let den: Rational = powers.iter().sum();
    (0..k)
        .map(|i| {
            let num: Rational = powers
                .iter()
                .enumerate()
                .map(|(j, pw)| pw * &cycle[(i + j) % k])
                .sum();
            num / &den
        })
        .collect()
}

/// Exact payoff of a lasso word, or `Unsupported`.
pub fn eval_exact(seq: &CoeffSeq, w: &LassoWord, mode: Mode) -> Result<PayoffValue, PayoffError> {
    let value = ExactEvaluator::new(seq, mode)?.evaluate(w);
    Ok(PayoffValue::Exact { value, mode })
}

/// Mean-payoff of a lasso word: the cycle average.
pub fn mean_payoff(w: &LassoWord) -> Rational {
    let sum: Rational = w.cycle().iter().sum();
    sum / Rational::from(w.cycle().len() as i64)
}

/// `(1 - lambda) * sum_i lambda^i w_i` in closed form.
pub fn disc_sum(lambda: &Rational, w: &LassoWord) -> Result<Rational, PayoffError> {
    if !lambda.is_positive() || *lambda >= 1 {
        return Err(PayoffError::DiscountOutOfRange(lambda.clone()));
    }
    let one = Rational::one();
    let mut pw = one.clone();
    let mut head = Rational::zero();
    for u in w.prefix() {
        head += &pw * u;
        pw *= lambda;
    }
    let lambda_m = pw;
    let mut cyc = Rational::zero();
    let mut pw = one.clone();
    for v in w.cycle() {
        cyc += &pw * v;
        pw *= lambda;
    }
    let lambda_k = pw;
    Ok((&one - lambda) * (head + lambda_m * cyc / (one - lambda_k)))
}

/// Truncated evaluation up to `horizon`.
///
/// Computes `R_n = A_n / D_n` (inclusive sums up to index n) exactly and
/// looks at the final window of `lcm(p, k)` indices, which visits every
/// phase of the play once. For block-geometric sequences each `R_n` comes
/// with a tail radius `rho_n` bounding its distance to the limit of its
/// phase, and the bracket is
/// `[min(R - rho), min(R + rho)]` (liminf) or `[max(R - rho), max(R + rho)]`
/// (limsup), a proven enclosure. Tables and unsupported shapes fall back to
/// the plain hull `[min R, max R]` with `rigorous = false`.
pub fn eval_approx(seq: &Sequence, w: &LassoWord, horizon: usize, mode: Mode) -> Result<PayoffValue, PayoffError> {
    let k = w.cycle().len();
    let needed = w.prefix().len() + 2 * k;
    if horizon < needed {
        return Err(PayoffError::HorizonTooShort { needed, got: horizon });
    }
    if let Sequence::Block(s) = seq {
        if let ZeroSumCheck::Violation(n) = s.check_no_zero_partial_sum() {
            return Err(PayoffError::Admission(SeqError::ZeroPartialSum { n }));
        }
    }
    let window = match seq {
        Sequence::Block(s) => lcm(s.period(), k),
        Sequence::Table(t) => {
            if horizon > t.horizon() {
                return Err(PayoffError::HorizonBeyondTable {
                    horizon,
                    available: t.horizon(),
                });
            }
            k
        }
    }
    .min(horizon + 1);

    let radius = match seq {
        Sequence::Block(s) => TailRadius::new(s, w),
        Sequence::Table(_) => None,
    };
    let first = horizon + 1 - window;
    let mut samples: Vec<(Rational, Option<Rational>)> = Vec::with_capacity(window);
    let mut sample = |i: usize, num: Rational, den: Rational| {
        let rho = radius.as_ref().and_then(|rad| rad.at(i, &num, &den));
        samples.push((num / den, rho));
    };
    match seq {
        Sequence::Block(s) => {
            // Integer accumulation over common denominators; rationals are
            // only formed for the sampled window.
            let (terms, scale) = s.scaled_terms(horizon + 1);
            let reward_den = w
                .prefix()
                .iter()
                .chain(w.cycle().iter())
                .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
            let scaled = |r: &Rational| r.numer() * (&reward_den / r.denom());
            let prefix: Vec<BigInt> = w.prefix().iter().map(scaled).collect();
            let cycle: Vec<BigInt> = w.cycle().iter().map(scaled).collect();
            let (mut num, mut den) = (BigInt::zero(), BigInt::zero());
            for (i, e) in terms.iter().enumerate() {
                let u = if i < prefix.len() {
                    &prefix[i]
                } else {
                    &cycle[(i - prefix.len()) % cycle.len()]
                };
                num += e * u;
                den += e;
                if i >= first {
                    sample(
                        i,
                        Rational::from_big(num.clone(), &scale * &reward_den),
                        Rational::from_big(den.clone(), scale.clone()),
                    );
                }
            }
        }
        Sequence::Table(t) => {
            let mut num = Rational::zero();
            let mut den = Rational::zero();
            for (i, c) in t.values().iter().take(horizon + 1).enumerate() {
                num += c * w.reward(i);
                den += c;
                if i >= first {
                    sample(i, num.clone(), den.clone());
                }
            }
        }
    }

    let rigorous = samples.iter().all(|(_, rho)| rho.is_some());
    let (lo, hi) = if rigorous {
        let lows: Vec<Rational> = samples.iter().map(|(r, rho)| r - rho.as_ref().unwrap()).collect();
        let highs: Vec<Rational> = samples.iter().map(|(r, rho)| r + rho.as_ref().unwrap()).collect();
        match mode {
            Mode::Liminf => (Rational::min_of(&lows), Rational::min_of(&highs)),
            Mode::Limsup => (Rational::max_of(&lows), Rational::max_of(&highs)),
        }
    } else {
        let rs: Vec<Rational> = samples.into_iter().map(|(r, _)| r).collect();
        (Rational::min_of(&rs), Rational::max_of(&rs))
    };
    Ok(PayoffValue::Bracket {
        lo: lo.expect("nonempty window"),
        hi: hi.expect("nonempty window"),
        horizon,
        mode,
        rigorous,
    })
}

/// Per-index bound on `|R_n - limit of n's phase|`, derived from tail sums
/// of `|c_i|` and the reward bound `W` only.
enum TailRadius {
    /// `|v - R_n| <= T (W |D| + |A|) / (|D| (|D| - T))`, `T = sum_{i>n} |c_i|`.
    Convergent { seq: CoeffSeq, w_max: Rational },
    /// `|R_n - v| <= 2 W S / |D_n|`, `S = sum_{i < M + L} |c_i|`, for `n >= M`.
    Periodic { start: usize, scale: Rational },
    /// `|R_n - v_phase| <= 2 W (S_{M+k} + lambda^k S_M) / ((lambda^k - 1) |D_n|)`, `n >= M - 1`.
    Geometric { start: usize, scale: Rational },
}

impl TailRadius {
    fn new(seq: &CoeffSeq, w: &LassoWord) -> Option<Self> {
        let w_max = w.max_abs_reward();
        let start = seq.prefix_len().max(w.prefix().len());
        let abs_prefix_sum = |n: usize| -> Rational { seq.terms().take(n).map(|c| c.abs()).sum() };
        match seq.classification() {
            Classification::Convergent => Some(TailRadius::Convergent {
                seq: seq.clone(),
                w_max,
            }),
            Classification::DivergentBounded => {
                if seq.block_sum().is_zero() {
                    return None;
                }
                let span = lcm(seq.period(), w.cycle().len());
                let s = abs_prefix_sum(start + span);
                Some(TailRadius::Periodic {
                    start,
                    scale: Rational::from(2) * w_max * s,
                })
            }
            Classification::DivergentUnbounded => {
                if seq.period() != 1 {
                    return None;
                }
                let k = w.cycle().len();
                let lambda_k = seq.ratio().pow(k as u64);
                let s = abs_prefix_sum(start + k) + &lambda_k * abs_prefix_sum(start);
                Some(TailRadius::Geometric {
                    start,
                    scale: Rational::from(2) * w_max * s / (lambda_k - Rational::one()),
                })
            }
        }
    }

    fn at(&self, n: usize, num: &Rational, den: &Rational) -> Option<Rational> {
        let d = den.abs();
        match self {
            TailRadius::Convergent { seq, w_max } => {
                let tail = seq.abs_tail(n as u64 + 1)?;
                if d <= tail {
                    return None;
                }
                Some(&tail * (w_max * &d + num.abs()) / (&d * (&d - &tail)))
            }
            TailRadius::Periodic { start, scale } => (n >= *start).then(|| scale / &d),
            TailRadius::Geometric { start, scale } => (n + 1 >= *start).then(|| scale / &d),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn word(prefix: &[i64], cycle: &[i64]) -> LassoWord {
        LassoWord::new(prefix.iter().map(|&x| r(x)).collect(), cycle.iter().map(|&x| r(x)).collect()).unwrap()
    }

    fn exact(seq: &CoeffSeq, w: &LassoWord) -> Rational {
        eval_exact(seq, w, Mode::Liminf).unwrap().exact().unwrap().clone()
    }

    fn seq(spec: &str) -> CoeffSeq {
        spec.parse::<Sequence>().unwrap().as_block().unwrap().clone()
    }

    #[test]
    fn exact_examples() {
        assert_eq!(exact(&CoeffSeq::mean(), &word(&[], &[1, 0])), rat(1, 2));
        for s in ["mean", "geom:2", "blocks:2,1;mu=1"] {
            assert_eq!(exact(&seq(s), &word(&[5, -2], &[7])), r(7), "{s}");
        }
        // Convergent weights keep the prefix: (5 - 2/3 + 7/6) / (3/2).
        assert_eq!(exact(&seq("disc:1/3"), &word(&[5, -2], &[7])), rat(11, 3));
        let g2 = seq("geom:2");
        assert_eq!(exact(&g2, &word(&[], &[0, 4])), rat(4, 3));
        assert_eq!(exact(&g2, &word(&[], &[1, 2, 0, 4])), rat(14, 15));
        assert_eq!(exact(&seq("disc:1/2"), &word(&[1], &[0])), rat(1, 2));
        assert_eq!(exact(&seq("blocks:2,1;mu=1"), &word(&[], &[1, 0])), rat(2, 3));
    }

    #[test]
    fn rotation_values_for_alternating_play() {
        let values = rotation_values(&r(2), &[r(1), r(2), r(0), r(4)]);
        assert_eq!(values, vec![rat(37, 15), rat(26, 15), rat(28, 15), rat(14, 15)]);
        assert_eq!(rotation_values(&r(2), &[r(0), r(4)]), vec![rat(8, 3), rat(4, 3)]);
        assert_eq!(rotation_values(&r(2), &[r(1), r(2)]), vec![rat(5, 3), rat(4, 3)]);
    }

    #[test]
    fn limsup_takes_largest_rotation() {
        let v = eval_exact(&seq("geom:2"), &word(&[], &[1, 2, 0, 4]), Mode::Limsup).unwrap();
        assert_eq!(v.exact(), Some(&rat(37, 15)));
        // Convergent and periodic cases have a plain limit.
        for s in ["mean", "disc:1/2", "blocks:2,1;mu=1"] {
            let w = word(&[3], &[1, 0, 2]);
            let a = eval_exact(&seq(s), &w, Mode::Liminf).unwrap();
            let b = eval_exact(&seq(s), &w, Mode::Limsup).unwrap();
            assert_eq!(a.exact(), b.exact());
        }
    }

    #[test]
    fn unsupported_shapes() {
        let s = seq("blocks:1,2;mu=2");
        assert!(matches!(
            eval_exact(&s, &word(&[], &[1]), Mode::Liminf),
            Err(PayoffError::Unsupported(_))
        ));
        // Convergent with total sum zero.
        let s = seq("blocks:-1/2;mu=1/2;prefix=1");
        assert!(matches!(
            eval_exact(&s, &word(&[], &[1]), Mode::Liminf),
            Err(PayoffError::Unsupported(_))
        ));
        let bad = seq("blocks:1;mu=1;prefix=1,-1");
        assert!(matches!(
            eval_exact(&bad, &word(&[], &[1]), Mode::Liminf),
            Err(PayoffError::Admission(SeqError::ZeroPartialSum { n: 2 }))
        ));
    }

    #[test]
    fn mean_payoff_examples() {
        assert_eq!(mean_payoff(&word(&[], &[1, 0])), rat(1, 2));
        assert_eq!(mean_payoff(&word(&[100], &[0])), r(0));
        assert_eq!(mean_payoff(&word(&[], &[1, 2, 0, 4])), rat(7, 4));
    }

    #[test]
    fn disc_sum_examples() {
        assert_eq!(disc_sum(&rat(1, 2), &word(&[], &[1, 0])).unwrap(), rat(2, 3));
        assert!(disc_sum(&rat(3, 7), &word(&[4, 4], &[-3])).unwrap() > r(-3));
        assert_eq!(disc_sum(&rat(3, 7), &word(&[], &[-3])).unwrap(), r(-3));
        assert_eq!(disc_sum(&rat(1, 2), &word(&[1], &[0])).unwrap(), rat(1, 2));
        assert!(disc_sum(&r(1), &word(&[], &[1])).is_err());
        assert!(disc_sum(&r(0), &word(&[], &[1])).is_err());
    }

    #[test]
    fn approx_examples() {
        let mean = Sequence::Block(CoeffSeq::mean());
        let v = eval_approx(&mean, &word(&[], &[1, 0]), 1000, Mode::Liminf).unwrap();
        let (lo, hi) = v.bracket().unwrap();
        assert!(v.contains(&rat(1, 2)));
        assert!(hi - lo <= rat(1, 100), "width {}", hi - lo);

        let g2 = Sequence::Block(seq("geom:2"));
        let v = eval_approx(&g2, &word(&[], &[1, 2, 0, 4]), 64, Mode::Liminf).unwrap();
        let (lo, _) = v.bracket().unwrap();
        let tol = Rational::one() / Rational::from(2).pow(50);
        assert!((lo - rat(14, 15)).abs() <= tol);
        assert!(v.contains(&rat(14, 15)));

        let table: Sequence = format!("table:{}", vec!["1"; 100].join(",")).parse().unwrap();
        let v = eval_approx(&table, &word(&[], &[3]), 99, Mode::Liminf).unwrap();
        assert_eq!(v.bracket(), Some((&r(3), &r(3))));
        assert_eq!(v.to_string(), "bracket[3, 3]");
    }

    #[test]
    fn approx_errors() {
        let table: Sequence = "table:1,1,1,1".parse().unwrap();
        assert!(matches!(
            eval_approx(&table, &word(&[], &[3]), 4, Mode::Liminf),
            Err(PayoffError::HorizonBeyondTable { .. })
        ));
        let mean = Sequence::Block(CoeffSeq::mean());
        assert!(matches!(
            eval_approx(&mean, &word(&[1, 1], &[3, 4]), 5, Mode::Liminf),
            Err(PayoffError::HorizonTooShort { needed: 6, got: 5 })
        ));
        let zero_sum: Sequence = "blocks:1,-1;mu=1".parse().unwrap();
        assert!(matches!(
            eval_approx(&zero_sum, &word(&[], &[1]), 10, Mode::Liminf),
            Err(PayoffError::Admission(SeqError::ZeroPartialSum { n: 2 }))
        ));
    }

    #[test]
    fn approx_brackets_monotone_descending_tail() {
        // R_n decreases strictly to 1/2; the plain hull would miss it.
        let disc = Sequence::Block(seq("disc:1/2"));
        let v = eval_approx(&disc, &word(&[1], &[0]), 60, Mode::Liminf).unwrap();
        assert!(v.contains(&rat(1, 2)));
        // Same for the periodic case.
        let mean = Sequence::Block(CoeffSeq::mean());
        let v = eval_approx(&mean, &word(&[0], &[1]), 200, Mode::Liminf).unwrap();
        assert!(v.contains(&r(1)));
    }

    #[test]
    fn lasso_grammar() {
        let w: LassoWord = "prefix=1,-2/3;cycle=0,4".parse().unwrap();
        assert_eq!(w.prefix(), &[r(1), rat(-2, 3)]);
        assert_eq!(w.to_string(), "prefix=1,-2/3;cycle=0,4");
        let w: LassoWord = "cycle=1,2,0,4".parse().unwrap();
        assert_eq!(w.to_string(), "cycle=1,2,0,4");
        for bad in ["", "cycle=", "prefix=1", "cycle=1;cycle=2", "cycle=a", "loop=1"] {
            assert!(bad.parse::<LassoWord>().is_err(), "{bad}");
        }
    }
}
