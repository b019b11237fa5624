//! Coefficient sequences and their analytic classification.
//!
//! Exact sequences are carried in block-geometric normal form
//!
//! ```text
//! c_n                 = prefix[n]          for n < m
//! c_{m + j + t*p}     = block[j] * ratio^t for 0 <= j < p, t >= 0
//! ```
//!
//! which covers geometric sequences (`p = 1`), eventually periodic sequences
//! (`ratio = 1`) and mixed convergent sequences. Every quantity below
//! (partial sums, limits of `1/d_n`, the even/odd split of the total) is
//! computed in closed form over this representation. Sequences outside the
//! class are carried by [`RawCoeffTable`] and only support truncated
//! evaluation.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::rational::{format_list, lcm, parse_list, ParseRationalError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("block must be nonempty")]
    EmptyBlock,
    #[error("ratio must be nonnegative, got {0}")]
    NegativeRatio(Rational),
    #[error("first coefficient c_0 must be nonzero")]
    ZeroFirstCoefficient,
    #[error("partial sum d_{n} is zero")]
    ZeroPartialSum { n: u64 },
    #[error("ratio 1 with zero block sum: partial sums stay bounded")]
    ZeroBlockSum,
    #[error("coefficient table must be nonempty")]
    EmptyTable,
    #[error("discount factor must lie in (0,1), got {0}")]
    DiscountOutOfRange(Rational),
    #[error("geometric ratio must be positive, got {0}")]
    NonPositiveRatio(Rational),
    #[error("bad sequence spec `{spec}`: {reason}")]
    Spec { spec: String, reason: String },
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Classification {
    Convergent,
    DivergentBounded,
    DivergentUnbounded,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Convergent => "convergent",
            Classification::DivergentBounded => "divergent-bounded",
            Classification::DivergentUnbounded => "divergent-unbounded",
        })
    }
}

/// Outcome of the analytic no-zero-partial-sum check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroSumCheck {
    Pass,
    /// Smallest `n >= 1` with `d_n = 0`.
    Violation(u64),
}

/// Block-geometric coefficient sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoeffSeq {
    prefix: Vec<Rational>,
    block: Vec<Rational>,
    ratio: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeqAnalysis {
    pub classification: Classification,
    /// Sum of the series, convergent case only.
    pub c_star: Option<Rational>,
    /// liminf of `1/d_n`.
    pub inv_liminf: Option<Rational>,
    /// limsup of `1/d_n`.
    pub inv_limsup: Option<Rational>,
    /// Sum of even-indexed coefficients (convergent only).
    pub s0: Option<Rational>,
    /// Sum of odd-indexed coefficients (convergent only).
    pub s1: Option<Rational>,
    /// `max |c_n|` for eventually periodic sequences.
    pub bound: Option<Rational>,
}

impl CoeffSeq {
    /// Structural validation only: nonempty block and nonnegative ratio.
    /// Admission (nonzero partial sums) is checked by [`CoeffSeq::analyze`].
    ///
    /// An all-zero block makes the sequence eventually zero; the ratio is
    /// then irrelevant and is normalized to 0.
    pub fn new(prefix: Vec<Rational>, block: Vec<Rational>, ratio: Rational) -> Result<Self, SeqError> {
        if block.is_empty() {
            return Err(SeqError::EmptyBlock);
        }
        if ratio.is_negative() {
            return Err(SeqError::NegativeRatio(ratio));
        }
        let ratio = if block.iter().all(Rational::is_zero) {
            Rational::zero()
        } else {
            ratio
        };
        Ok(CoeffSeq { prefix, block, ratio })
    }

    /// `c_n = 1` for all n.
    pub fn mean() -> Self {
        CoeffSeq {
            prefix: Vec::new(),
            block: vec![Rational::one()],
            ratio: Rational::one(),
        }
    }

    /// `c_n = lambda^n`, `lambda > 0`.
    pub fn geometric(lambda: Rational) -> Result<Self, SeqError> {
        if !lambda.is_positive() {
            return Err(SeqError::NonPositiveRatio(lambda));
        }
        Ok(CoeffSeq {
            prefix: Vec::new(),
            block: vec![Rational::one()],
            ratio: lambda,
        })
    }

    /// `c_n = lambda^n` with `0 < lambda < 1`.
    pub fn discounted(lambda: Rational) -> Result<Self, SeqError> {
        if !lambda.is_positive() || lambda >= 1 {
            return Err(SeqError::DiscountOutOfRange(lambda));
        }
        Self::geometric(lambda)
    }

    pub fn prefix(&self) -> &[Rational] {
        &self.prefix
    }

    pub fn block(&self) -> &[Rational] {
        &self.block
    }

    pub fn ratio(&self) -> &Rational {
        &self.ratio
    }

    pub fn period(&self) -> usize {
        self.block.len()
    }

    pub fn prefix_len(&self) -> usize {
        self.prefix.len()
    }

    pub fn block_sum(&self) -> Rational {
        self.block.iter().sum()
    }

    pub fn classification(&self) -> Classification {
        if self.ratio < 1 {
            Classification::Convergent
        } else if self.ratio == 1 {
            Classification::DivergentBounded
        } else {
            Classification::DivergentUnbounded
        }
    }

    pub fn term(&self, n: u64) -> Rational {
        let m = self.prefix.len() as u64;
        if n < m {
            return self.prefix[n as usize].clone();
        }
        let p = self.block.len() as u64;
        let (t, j) = ((n - m) / p, (n - m) % p);
        &self.block[j as usize] * self.ratio.pow(t)
    }

    /// `c_0, c_1, ...` without re-exponentiating each term.
    pub fn terms(&self) -> Terms<'_> {
        Terms {
            seq: self,
            index: 0,
            scale: Rational::one(),
        }
    }

    /// Integers `e_0 .. e_{count-1}` and a positive scale `D` with
    /// `c_i = e_i / D`, so long prefix sums can run in integer arithmetic.
    pub fn scaled_terms(&self, count: usize) -> (Vec<BigInt>, BigInt) {
        let m = self.prefix.len();
        let p = self.block.len();
        let periods = if count > m { ((count - 1 - m) / p) as u32 } else { 0 };
        let mut common = BigInt::one();
        for c in self.prefix.iter().chain(&self.block) {
            common = common.lcm(c.denom());
        }
        let (a, b) = (self.ratio.numer().clone(), self.ratio.denom().clone());
        let scale = &common * num_traits::pow(b.clone(), periods as usize);
        let as_int = |c: &Rational| c.numer() * (&scale / c.denom());
        let block: Vec<BigInt> = self.block.iter().map(|c| c.numer() * (&common / c.denom())).collect();
        let mut out = Vec::with_capacity(count);
        // a^t * b^(periods - t)
        let mut level = num_traits::pow(b.clone(), periods as usize);
        for i in 0..count {
            if i < m {
                out.push(as_int(&self.prefix[i]));
                continue;
            }
            let j = (i - m) % p;
            if j == 0 && i > m {
                level = level / &b * &a;
            }
            out.push(&block[j] * &level);
        }
        (out, scale)
    }

    /// `d_n = c_0 + ... + c_{n-1}` in `O(p + log n)` arithmetic operations.
    pub fn partial_sum(&self, n: u64) -> Rational {
        let m = self.prefix.len() as u64;
        if n <= m {
            return self.prefix[..n as usize].iter().sum();
        }
        let p = self.block.len() as u64;
        let (t, j) = ((n - m) / p, (n - m) % p);
        let head: Rational = self.prefix.iter().sum();
        let partial_block: Rational = self.block[..j as usize].iter().sum();
        head + self.block_sum() * self.geometric_count(t) + self.ratio.pow(t) * partial_block
    }

    /// `1 + ratio + ... + ratio^{t-1}`.
    fn geometric_count(&self, t: u64) -> Rational {
        if self.ratio == 1 {
            Rational::from(t as i64)
        } else {
            (self.ratio.pow(t) - Rational::one()) / (&self.ratio - Rational::one())
        }
    }

    /// `sum_{i >= n} |c_i|`, convergent case only.
    pub fn abs_tail(&self, n: u64) -> Option<Rational> {
        if self.ratio >= 1 {
            return None;
        }
        let m = self.prefix.len() as u64;
        let abs_block: Rational = self.block.iter().map(Rational::abs).sum();
        let one_minus = Rational::one() - &self.ratio;
        if n <= m {
            let head: Rational = self.prefix[n as usize..].iter().map(Rational::abs).sum();
            return Some(head + abs_block / one_minus);
        }
        let p = self.block.len() as u64;
        let (t, j) = ((n - m) / p, (n - m) % p);
        let rest: Rational = self.block[j as usize..].iter().map(Rational::abs).sum();
        let scale = self.ratio.pow(t);
        Some(&scale * rest + scale * &self.ratio * abs_block / one_minus)
    }

    /// Decides `d_n != 0` for every `n >= 1`.
    ///
    /// Indices up to `m + p` are checked directly. Beyond that, for each
    /// residue `j` the closed form `d_{m+tp+j} = K + a_j * ratio^t` (or the
    /// linear form when the ratio is 1) has at most one root `t`, which is
    /// tested for integrality.
    pub fn check_no_zero_partial_sum(&self) -> ZeroSumCheck {
        let m = self.prefix.len() as u64;
        let p = self.block.len() as u64;

        let mut running = Rational::zero();
        for (n, c) in self.terms().take((m + p) as usize).enumerate() {
            running += c;
            if running.is_zero() {
                return ZeroSumCheck::Violation(n as u64 + 1);
            }
        }

        if self.ratio.is_zero() {
            // d_n is constant from n = m + p on.
            return ZeroSumCheck::Pass;
        }

        let d_m: Rational = self.prefix.iter().sum();
        let block_sum = self.block_sum();
        let mut best: Option<u64> = None;
        let mut partial = Rational::zero();
        for (j, b) in self.block.iter().enumerate() {
            let root = if self.ratio == 1 {
                // d = (d_m + P_j) + t * B
                if block_sum.is_zero() {
                    None
                } else {
                    let t = -(&d_m + &partial) / &block_sum;
                    t.to_i64().filter(|&t| t >= 1).map(|t| t as u64)
                }
            } else {
                let shift = &block_sum / (&self.ratio - Rational::one());
                let k = &d_m - &shift;
                let a_j = &shift + &partial;
                if a_j.is_zero() {
                    None
                } else {
                    self.solve_power(&(-k / a_j))
                }
            };
            if let Some(t) = root {
                let n = m + t * p + j as u64;
                best = Some(best.map_or(n, |b| b.min(n)));
            }
            partial += b;
        }
        match best {
            Some(n) => ZeroSumCheck::Violation(n),
            None => ZeroSumCheck::Pass,
        }
    }

    /// Integer `t >= 1` with `ratio^t = target`, if any. Requires ratio > 0, != 1.
    fn solve_power(&self, target: &Rational) -> Option<u64> {
        if !target.is_positive() {
            return None;
        }
        let mut pow = self.ratio.clone();
        let mut t = 1u64;
        if self.ratio > 1 {
            while &pow < target {
                pow *= &self.ratio;
                t += 1;
            }
        } else {
            while &pow > target {
                pow *= &self.ratio;
                t += 1;
            }
        }
        (&pow == target).then_some(t)
    }

    /// Admission check plus closed-form analysis.
    pub fn analyze(&self) -> Result<SeqAnalysis, SeqError> {
        if self.term(0).is_zero() {
            return Err(SeqError::ZeroFirstCoefficient);
        }
        if let ZeroSumCheck::Violation(n) = self.check_no_zero_partial_sum() {
            return Err(SeqError::ZeroPartialSum { n });
        }
        let block_sum = self.block_sum();
        let classification = self.classification();
        let mut analysis = SeqAnalysis {
            classification,
            c_star: None,
            inv_liminf: None,
            inv_limsup: None,
            s0: None,
            s1: None,
            bound: None,
        };
        match classification {
            Classification::Convergent => {
                let one = [Rational::one()];
                let c_star = self
                    .series_against(&[], &one)
                    .expect("convergent series");
                let s0 = self
                    .series_against(&[], &[Rational::one(), Rational::zero()])
                    .expect("convergent series");
                let s1 = &c_star - &s0;
                if !c_star.is_zero() {
                    analysis.inv_liminf = Some(c_star.recip());
                    analysis.inv_limsup = Some(c_star.recip());
                }
                analysis.c_star = Some(c_star);
                analysis.s0 = Some(s0);
                analysis.s1 = Some(s1);
            }
            Classification::DivergentBounded => {
                if block_sum.is_zero() {
                    return Err(SeqError::ZeroBlockSum);
                }
                analysis.inv_liminf = Some(Rational::zero());
                analysis.inv_limsup = Some(Rational::zero());
                analysis.bound = Rational::max_of(
                    self.prefix
                        .iter()
                        .chain(self.block.iter())
                        .map(Rational::abs)
                        .collect::<Vec<_>>()
                        .iter(),
                );
            }
            Classification::DivergentUnbounded => {
                // d_{m+tp+j} = K + a_j * ratio^t; the residue tends to 1/K when
                // a_j = 0 and to 0 otherwise.
                let d_m: Rational = self.prefix.iter().sum();
                let shift = &block_sum / (&self.ratio - Rational::one());
                let k = &d_m - &shift;
                let mut partial = Rational::zero();
                let mut limits = Vec::with_capacity(self.block.len());
                for b in &self.block {
                    let a_j = &shift + &partial;
                    limits.push(if a_j.is_zero() { k.recip() } else { Rational::zero() });
                    partial += b;
                }
                analysis.inv_liminf = Rational::min_of(&limits);
                analysis.inv_limsup = Rational::max_of(&limits);
            }
        }
        Ok(analysis)
    }

    /// `lambda` such that `c_{i+1} = lambda * c_i` for every i, if one exists.
    ///
    /// Pairs up to index `m + p` suffice: beyond that `c_{i+p} = ratio * c_i`
    /// propagates the relation.
    pub fn is_geometric(&self) -> Option<Rational> {
        let horizon = self.prefix.len() + self.block.len() + 1;
        let terms: Vec<Rational> = self.terms().take(horizon).collect();
        let c0 = &terms[0];
        if c0.is_zero() {
            return None;
        }
        let lambda = &terms[1] / c0;
        terms
            .windows(2)
            .all(|w| w[1] == &lambda * &w[0])
            .then_some(lambda)
    }

    /// `sum_i c_i * f_i` for an ultimately periodic `f = fprefix (fcycle)^omega`.
    ///
    /// Defined only when the ratio is below 1. After `M = max(m, |fprefix|)`
    /// both sequences repeat with super-period `L = lcm(p, k)`, up to the
    /// factor `ratio^{L/p}` on the coefficients, so the tail is one geometric
    /// series over a single super-period.
    pub fn series_against(&self, fprefix: &[Rational], fcycle: &[Rational]) -> Option<Rational> {
        if self.ratio >= 1 || fcycle.is_empty() {
            return None;
        }
        let f = |i: usize| -> &Rational {
            if i < fprefix.len() {
                &fprefix[i]
            } else {
                &fcycle[(i - fprefix.len()) % fcycle.len()]
            }
        };
        let start = self.prefix.len().max(fprefix.len());
        let span = lcm(self.block.len(), fcycle.len());
        let mut head = Rational::zero();
        let mut period = Rational::zero();
        for (i, c) in self.terms().take(start + span).enumerate() {
            let contribution = c * f(i);
            if i < start {
                head += contribution;
            } else {
                period += contribution;
            }
        }
        let factor = self.ratio.pow((span / self.block.len()) as u64);
        Some(head + period / (Rational::one() - factor))
    }

    /// Canonical spec string in the sequence grammar.
    pub fn spec_string(&self) -> String {
        let unit_block = self.block.len() == 1 && self.block[0].is_one();
        if self.prefix.is_empty() && unit_block {
            if self.ratio == 1 {
                return "mean".to_string();
            }
            if self.ratio.is_positive() {
                return format!("geom:{}", self.ratio);
            }
        }
        let mut s = format!("blocks:{};mu={}", format_list(&self.block), self.ratio);
        if !self.prefix.is_empty() {
            s.push_str(";prefix=");
            s.push_str(&format_list(&self.prefix));
        }
        s
    }
}

impl fmt::Display for CoeffSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_string())
    }
}

pub struct Terms<'a> {
    seq: &'a CoeffSeq,
    index: usize,
    scale: Rational,
}

impl Iterator for Terms<'_> {
    type Item = Rational;

    fn next(&mut self) -> Option<Rational> {
        let seq = self.seq;
        let m = seq.prefix.len();
        let i = self.index;
        self.index += 1;
        if i < m {
            return Some(seq.prefix[i].clone());
        }
        let j = (i - m) % seq.block.len();
        if j == 0 && i > m {
            self.scale *= &seq.ratio;
        }
        Some(&seq.block[j] * &self.scale)
    }
}

/// Finite table `c_0 .. c_N` for sequences outside the block-geometric class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RawCoeffTable {
    values: Vec<Rational>,
}

impl RawCoeffTable {
    pub fn new(values: Vec<Rational>) -> Result<Self, SeqError> {
        if values.is_empty() {
            return Err(SeqError::EmptyTable);
        }
        if values[0].is_zero() {
            return Err(SeqError::ZeroFirstCoefficient);
        }
        let mut running = Rational::zero();
        for (n, c) in values.iter().enumerate() {
            running += c;
            if running.is_zero() {
                return Err(SeqError::ZeroPartialSum { n: n as u64 + 1 });
            }
        }
        Ok(RawCoeffTable { values })
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Largest usable index `N`.
    pub fn horizon(&self) -> usize {
        self.values.len() - 1
    }
}

/// A parsed sequence spec: exact block-geometric or approximate-only table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Sequence {
    Block(CoeffSeq),
    Table(RawCoeffTable),
}

impl Sequence {
    pub fn as_block(&self) -> Option<&CoeffSeq> {
        match self {
            Sequence::Block(s) => Some(s),
            Sequence::Table(_) => None,
        }
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sequence::Block(s) => write!(f, "{s}"),
            Sequence::Table(t) => write!(f, "table:{}", format_list(&t.values)),
        }
    }
}

impl FromStr for Sequence {
    type Err = SeqError;

    /// Grammar:
    /// `mean` | `disc:<r>` | `geom:<r>` | `blocks:<r,..>;mu=<r>[;prefix=<r,..>]` | `table:<r,..>`
    fn from_str(spec: &str) -> Result<Self, SeqError> {
        let bad = |reason: &str| SeqError::Spec {
            spec: spec.to_string(),
            reason: reason.to_string(),
        };
        if spec == "mean" {
            return Ok(Sequence::Block(CoeffSeq::mean()));
        }
        let (kind, body) = spec.split_once(':').ok_or_else(|| bad("expected `<kind>:<body>`"))?;
        match kind {
            "disc" => Ok(Sequence::Block(CoeffSeq::discounted(body.parse()?)?)),
            "geom" => Ok(Sequence::Block(CoeffSeq::geometric(body.parse()?)?)),
            "table" => Ok(Sequence::Table(RawCoeffTable::new(parse_list(body)?)?)),
            "blocks" => {
                let mut parts = body.split(';');
                let block = parse_list(parts.next().unwrap_or(""))?;
                let mut mu = None;
                let mut prefix = Vec::new();
                for part in parts {
                    match part.split_once('=') {
                        Some(("mu", v)) if mu.is_none() => mu = Some(v.parse::<Rational>()?),
                        Some(("prefix", v)) => prefix = parse_list(v)?,
                        _ => return Err(bad(&format!("unexpected field `{part}`"))),
                    }
                }
                let mu = mu.ok_or_else(|| bad("missing `mu=`"))?;
                Ok(Sequence::Block(CoeffSeq::new(prefix, block, mu)?))
            }
            other => Err(bad(&format!("unknown kind `{other}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn blocks(prefix: &[Rational], block: &[Rational], mu: Rational) -> CoeffSeq {
        CoeffSeq::new(prefix.to_vec(), block.to_vec(), mu).unwrap()
    }

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn partial_sum_examples() {
        assert_eq!(CoeffSeq::mean().partial_sum(5), r(5));
        assert_eq!(CoeffSeq::geometric(rat(1, 2)).unwrap().partial_sum(3), rat(7, 4));
        assert_eq!(CoeffSeq::geometric(r(2)).unwrap().partial_sum(4), r(15));
    }

    #[test]
    fn partial_sum_agrees_with_running_sum() {
        let seq = blocks(&[r(3), rat(-1, 2)], &[r(2), r(-1), rat(1, 3)], rat(3, 4));
        let mut running = Rational::zero();
        for (n, c) in seq.terms().take(40).enumerate() {
            assert_eq!(seq.partial_sum(n as u64), running, "n = {n}");
            assert_eq!(seq.term(n as u64), c);
            running += c;
        }
    }

    #[test]
    fn analyze_examples() {
        let a = CoeffSeq::geometric(rat(1, 2)).unwrap().analyze().unwrap();
        assert_eq!(a.classification, Classification::Convergent);
        assert_eq!(a.c_star, Some(r(2)));
        assert_eq!(a.s0, Some(rat(4, 3)));
        assert_eq!(a.s1, Some(rat(2, 3)));
        assert_eq!(a.inv_liminf, Some(rat(1, 2)));
        assert_eq!(a.inv_limsup, Some(rat(1, 2)));

        let a = CoeffSeq::mean().analyze().unwrap();
        assert_eq!(a.classification, Classification::DivergentBounded);
        assert_eq!(a.inv_liminf, Some(r(0)));
        assert_eq!(a.inv_limsup, Some(r(0)));
        assert_eq!(a.bound, Some(r(1)));

        let a = CoeffSeq::geometric(r(2)).unwrap().analyze().unwrap();
        assert_eq!(a.classification, Classification::DivergentUnbounded);
        assert_eq!(a.inv_liminf, Some(r(0)));
    }

    #[test]
    fn theorem_sequence_split() {
        // c = 1, 1/2, 1/8, 1/16, 1/64, ...
        let a = blocks(&[], &[r(1), rat(1, 2)], rat(1, 8)).analyze().unwrap();
        assert_eq!(a.s0, Some(rat(8, 7)));
        assert_eq!(a.s1, Some(rat(4, 7)));
        assert_eq!(a.c_star, Some(rat(12, 7)));
    }

    #[test]
    fn zero_partial_sum_examples() {
        let g = CoeffSeq::geometric(r(2)).unwrap();
        assert_eq!(g.check_no_zero_partial_sum(), ZeroSumCheck::Pass);
        let bad = blocks(&[r(1), r(-1)], &[r(1)], r(1));
        assert_eq!(bad.check_no_zero_partial_sum(), ZeroSumCheck::Violation(2));
        assert_eq!(bad.analyze(), Err(SeqError::ZeroPartialSum { n: 2 }));
        let periodic = blocks(&[], &[r(2), r(1)], r(1));
        assert_eq!(periodic.check_no_zero_partial_sum(), ZeroSumCheck::Pass);
    }

    #[test]
    fn zero_partial_sum_found_far_out() {
        // d = -7 + (n - 1) for n >= 1: zero at n = 8.
        let seq = blocks(&[r(-7)], &[r(1)], r(1));
        assert_eq!(seq.check_no_zero_partial_sum(), ZeroSumCheck::Violation(8));
        // d_n = 2^{n-1} - 64 + ..: prefix -63, then 1, 2, 4, ...: d_{1+t} = -63 + 2^t - 1.
        let seq = blocks(&[r(-63)], &[r(1)], r(2));
        assert_eq!(seq.check_no_zero_partial_sum(), ZeroSumCheck::Violation(7));
        // Convergent: prefix -3/2, then 1, 1/2, 1/4...: d tends to 1/2, hits 0 at n = 2+..?
        // -3/2 + 1 = -1/2, + 1/2 = 0 -> n = 3.
        let seq = blocks(&[rat(-3, 2)], &[r(1)], rat(1, 2));
        assert_eq!(seq.check_no_zero_partial_sum(), ZeroSumCheck::Violation(3));
    }

    #[test]
    fn zero_first_coefficient_rejected() {
        let seq = blocks(&[r(0)], &[r(1)], r(1));
        assert_eq!(seq.analyze(), Err(SeqError::ZeroFirstCoefficient));
    }

    #[test]
    fn zero_block_sum_rejected_for_ratio_one() {
        let seq = blocks(&[r(1)], &[r(2), r(-2)], r(1));
        assert_eq!(seq.check_no_zero_partial_sum(), ZeroSumCheck::Pass);
        assert_eq!(seq.analyze(), Err(SeqError::ZeroBlockSum));
    }

    #[test]
    fn is_geometric_examples() {
        assert_eq!(CoeffSeq::geometric(rat(1, 4)).unwrap().is_geometric(), Some(rat(1, 4)));
        let mixed = blocks(&[r(1), rat(1, 2)], &[rat(1, 8), rat(1, 16)], rat(1, 8));
        assert_eq!(mixed.is_geometric(), None);
        assert_eq!(CoeffSeq::mean().is_geometric(), Some(r(1)));
        // Written in non-normal form but still geometric.
        let hidden = blocks(&[r(3)], &[r(6), r(12)], r(4));
        assert_eq!(hidden.is_geometric(), Some(r(2)));
    }

    #[test]
    fn unbounded_residue_limits() {
        // block [1, -2], ratio 2 after prefix [1]: d_{1+2t} = 1 + (-1)(2^t - 1),
        // d_{1+2t+1} = d_{1+2t} + 2^t = 2: residue 1 has constant d = 2.
        let seq = blocks(&[r(1)], &[r(1), r(-2)], r(2));
        assert_eq!(seq.check_no_zero_partial_sum(), ZeroSumCheck::Violation(3));
        // With prefix 3 the even residue d = 4 - 2^t vanishes at n = 5.
        let seq = blocks(&[r(3)], &[r(1), r(-2)], r(2));
        assert_eq!(seq.check_no_zero_partial_sum(), ZeroSumCheck::Violation(5));
        // Prefix 5/2: d = 7/2 - 2^t on one residue, constant 7/2 on the other.
        let seq = blocks(&[rat(5, 2)], &[r(1), r(-2)], r(2));
        let a = seq.analyze().unwrap();
        assert_eq!(a.classification, Classification::DivergentUnbounded);
        assert_eq!(a.inv_liminf, Some(r(0)));
        assert_eq!(a.inv_limsup, Some(rat(2, 7)));
    }

    #[test]
    fn abs_tail_matches_truncated_sum() {
        let seq = blocks(&[r(2), r(-1)], &[r(1), rat(-1, 3)], rat(1, 2));
        for n in 0..12u64 {
            let tail = seq.abs_tail(n).unwrap();
            let truncated: Rational = seq.terms().skip(n as usize).take(200).map(|c| c.abs()).sum();
            assert!(tail >= truncated);
            assert!(&tail - &truncated < rat(1, 1_000_000));
        }
    }

    #[test]
    fn parses_grammar() {
        assert_eq!("mean".parse::<Sequence>().unwrap(), Sequence::Block(CoeffSeq::mean()));
        let s: Sequence = "blocks:1,1/2;mu=1/8".parse().unwrap();
        assert_eq!(s.to_string(), "blocks:1,1/2;mu=1/8");
        let s: Sequence = "blocks:2,1;mu=1;prefix=3".parse().unwrap();
        assert_eq!(s.as_block().unwrap().prefix(), &[r(3)]);
        assert_eq!(s.to_string(), "blocks:2,1;mu=1;prefix=3");
        assert_eq!("geom:2".parse::<Sequence>().unwrap().to_string(), "geom:2");
        assert_eq!("disc:1/2".parse::<Sequence>().unwrap().to_string(), "geom:1/2");
        assert!(matches!("table:1,1,1".parse::<Sequence>().unwrap(), Sequence::Table(_)));
        for bad in ["disc:2", "disc:0", "geom:-1", "blocks:;mu=1", "blocks:1", "blocks:1;mu=-1", "table:", "foo:1", "mean2", "table:1,-1"] {
            assert!(bad.parse::<Sequence>().is_err(), "{bad}");
        }
    }
}
