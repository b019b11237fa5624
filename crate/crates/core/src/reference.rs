//! Built-in suite of known values and bounded property checks.
//!
//! Output is fully deterministic: no timings, fixed seeds, fixed order.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::games::{
    enumerate_finite_memory, enumerate_memoryless, induced_lasso, induced_play, memoryless_count, Gadget, Player,
};
use crate::payoff::{disc_sum, eval_approx, eval_exact, rotation_values, ExactEvaluator, LassoWord, Mode, PayoffError};
use crate::rational::{format_list, rat, Rational};
use crate::seq::{CoeffSeq, Sequence};
use crate::solver::{
    check_memoryless, monotone_falsify, random_game, solve_enumerative, CheckOptions, MonotoneOptions,
    RandomGameOptions, VerdictKind, Witness,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceCheck {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceReport {
    pub checks: Vec<ReferenceCheck>,
    pub passed: usize,
    pub total: usize,
    pub overall: bool,
}

impl ReferenceReport {
    pub fn failures(&self) -> impl Iterator<Item = &ReferenceCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn render_table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.pass { "pass" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{status}  {:width$}  expected {}  got {}",
                c.name, c.expected, c.actual
            );
        }
        let _ = writeln!(
            out,
            "{}/{} checks passed: {}",
            self.passed,
            self.total,
            if self.overall { "PASS" } else { "FAIL" }
        );
        out
    }
}

/// Evaluator signature used by the suite, so tests can substitute a broken one.
pub type Evaluate<'a> = &'a dyn Fn(&CoeffSeq, &LassoWord, Mode) -> Result<Rational, PayoffError>;

fn default_eval(seq: &CoeffSeq, w: &LassoWord, mode: Mode) -> Result<Rational, PayoffError> {
    Ok(eval_exact(seq, w, mode)?.exact().cloned().expect("exact evaluation"))
}

pub fn run_reference_suite() -> ReferenceReport {
    run_reference_suite_with(&default_eval)
}

struct Suite<'a> {
    eval: Evaluate<'a>,
    checks: Vec<ReferenceCheck>,
}

fn seq(spec: &str) -> CoeffSeq {
    spec.parse::<Sequence>()
        .expect("built-in spec")
        .as_block()
        .expect("block sequence")
        .clone()
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from(x)).collect()
}

fn lasso(prefix: &[i64], cycle: &[i64]) -> LassoWord {
    LassoWord::new(ints(prefix), ints(cycle)).expect("nonempty cycle")
}

impl Suite<'_> {
    fn record(&mut self, name: &str, expected: impl ToString, actual: impl ToString) {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        self.checks.push(ReferenceCheck {
            name: name.to_string(),
            pass: expected == actual,
            expected,
            actual,
        });
    }

    fn value(&mut self, name: &str, spec: &str, w: LassoWord, expected: Rational) {
        let actual = match (self.eval)(&seq(spec), &w, Mode::Liminf) {
            Ok(v) => v.to_string(),
            Err(e) => format!("error: {e}"),
        };
        self.record(name, expected, actual);
    }

    fn eval(&self, s: &CoeffSeq, w: &LassoWord) -> String {
        match (self.eval)(s, w, Mode::Liminf) {
            Ok(v) => v.to_string(),
            Err(e) => format!("error: {e}"),
        }
    }
}

pub fn run_reference_suite_with(eval: Evaluate<'_>) -> ReferenceReport {
    let mut s = Suite {
        eval,
        checks: Vec::new(),
    };
    let geom2 = seq("geom:2");

    s.record("partial sum geom:2 at n=4", 15, geom2.partial_sum(4));
    s.value("mean on (1,0)^w", "mean", lasso(&[], &[1, 0]), rat(1, 2));
    s.value("geom:2 on (0,4)^w", "geom:2", lasso(&[], &[0, 4]), rat(4, 3));
    s.value("geom:2 on (1,2)^w", "geom:2", lasso(&[], &[1, 2]), rat(4, 3));
    s.value("geom:2 on alternating (1,2,0,4)^w", "geom:2", lasso(&[], &[1, 2, 0, 4]), rat(14, 15));
    s.record(
        "rotation values of (1,2,0,4) under ratio 2",
        "37/15,26/15,28/15,14/15",
        format_list(&rotation_values(&Rational::from(2), &ints(&[1, 2, 0, 4]))),
    );

    let g1024 = Gadget::G1024.build(Player::Two);
    let weights: Vec<Rational> = g1024.edges().iter().map(|e| e.weight.clone()).collect();
    s.record(
        "left/right game shape",
        "3 states, 4 edges, weights 0,4,1,2",
        format!(
            "{} states, {} edges, weights {}",
            g1024.num_states(),
            g1024.num_edges(),
            format_list(&weights)
        ),
    );
    let idle = enumerate_memoryless(&g1024, Player::One).next().expect("one empty strategy");
    let left = enumerate_memoryless(&g1024, Player::Two).next().expect("two strategies");
    s.record(
        "always-left play",
        "cycle=0,4",
        induced_lasso(&g1024, &idle, &left),
    );
    s.record(
        "memoryless strategies of the minimizer",
        2,
        memoryless_count(&g1024, Player::Two),
    );
    let alternating = ints(&[1, 2, 0, 4]);
    let has_alternating = enumerate_finite_memory(&g1024, Player::Two, 2, 100_000)
        .map(|all| {
            all.iter()
                .any(|m| induced_lasso(&g1024, &idle, m).cycle() == alternating.as_slice())
        })
        .unwrap_or(false);
    s.record("two memory states reach the alternating play", true, has_alternating);

    let g4 = Gadget::g4(1, -1, 0).build(Player::One);
    let plays: Vec<String> = enumerate_memoryless(&g4, Player::One)
        .map(|p1| {
            let idle2 = enumerate_memoryless(&g4, Player::Two).next().expect("empty");
            induced_play(&g4, &p1, &idle2).lasso(&g4).to_string()
        })
        .collect();
    s.record("g4:1,-1,0 memoryless plays", "cycle=0 | cycle=1,-1", plays.join(" | "));

    let ev_geom2 = ExactEvaluator::new(&geom2, Mode::Liminf).expect("supported");
    match solve_enumerative(&g1024, &ev_geom2, 1000) {
        Ok(r) => {
            let row: Vec<String> = r.table[0].iter().map(ToString::to_string).collect();
            s.record(
                "left/right game under geom:2, memoryless values",
                "minimax 4/3, strategies 4/3,4/3",
                format!("minimax {}, strategies {}", r.minimax, row.join(",")),
            );
        }
        Err(e) => s.record("left/right game under geom:2, memoryless values", "solved", e),
    }
    let mean = ExactEvaluator::new(&CoeffSeq::mean(), Mode::Liminf).expect("supported");
    let g1 = Gadget::G1.build(Player::One);
    match solve_enumerative(&g1, &mean, 1000) {
        Ok(r) => {
            let col: Vec<String> = r.table.iter().map(|row| row[0].to_string()).collect();
            s.record(
                "two self-loops under mean",
                "maximin 1, loops 1,0",
                format!("maximin {}, loops {}", r.maximin, col.join(",")),
            );
        }
        Err(e) => s.record("two self-loops under mean", "solved", e),
    }

    let check = |g: &crate::games::GameGraph, ev: &ExactEvaluator, mem_bound| {
        check_memoryless(
            g,
            ev,
            &CheckOptions {
                mem_bound,
                ..CheckOptions::default()
            },
        )
    };
    match check(&g1024, &ev_geom2, 2) {
        Ok(v) => {
            let detail = match &v.witness {
                Some(Witness::Deviation(d)) => format!("{} {} < {}", v.kind, d.payoff, d.memoryless_value),
                _ => v.kind.to_string(),
            };
            s.record("memory helps the minimizer under geom:2", "witness-found 14/15 < 4/3", detail);
        }
        Err(e) => s.record("memory helps the minimizer under geom:2", "witness-found", e),
    }
    match check(&g1024, &mean, 2) {
        Ok(v) => s.record("no small witness under mean", VerdictKind::NoWitnessUpToBound, v.kind),
        Err(e) => s.record("no small witness under mean", VerdictKind::NoWitnessUpToBound, e),
    }

    let mean_seq = CoeffSeq::mean();
    let mut failures = Vec::new();
    for k in 1..=6i64 {
        for i in 0..k {
            for sign in [1, -1] {
                let cycle: Vec<i64> = (0..k).map(|j| if j == i { sign } else { 0 }).collect();
                let got = s.eval(&mean_seq, &lasso(&[], &cycle));
                if got != rat(sign, k).to_string() {
                    failures.push(format!("k={k} i={i} sign={sign}: {got}"));
                }
            }
        }
    }
    s.record("single-reward cycles under mean, k<=6", "all 1/k and -1/k", if failures.is_empty() {
        "all 1/k and -1/k".to_string()
    } else {
        failures.join("; ")
    });

    let irregular = seq("blocks:1,1/2;mu=1/8");
    match irregular.analyze() {
        Ok(a) => s.record(
            "blocks:1,1/2;mu=1/8 even/odd/total sums",
            "8/7 4/7 12/7",
            format!(
                "{} {} {}",
                a.s0.unwrap_or_default(),
                a.s1.unwrap_or_default(),
                a.c_star.unwrap_or_default()
            ),
        ),
        Err(e) => s.record("blocks:1,1/2;mu=1/8 even/odd/total sums", "8/7 4/7 12/7", e),
    }
    let ev_irr = ExactEvaluator::new(&irregular, Mode::Liminf).expect("supported");
    let g413 = Gadget::g4(4, 1, 3).build(Player::One);
    match check(&g413, &ev_irr, 3) {
        Ok(v) => {
            let long = v.deviations.iter().find(|d| d.payoff == rat(151, 48));
            let actual = match long {
                Some(d) => format!("{} > {} via {}", d.payoff, d.memoryless_value, d.lasso),
                None => format!("{} without 151/48", v.kind),
            };
            s.record(
                "g4:4,1,3 under blocks:1,1/2;mu=1/8, three memory states",
                "151/48 > 3 via prefix=3,4,1;cycle=3",
                actual,
            );
        }
        Err(e) => s.record("g4:4,1,3 under blocks:1,1/2;mu=1/8, three memory states", "151/48 > 3", e),
    }

    s.value("blocks:2,1;mu=1 on (1,0)^w", "blocks:2,1;mu=1", lasso(&[], &[1, 0]), rat(2, 3));
    let alt = seq("blocks:2,1;mu=1");
    match monotone_falsify(&alt, Mode::Liminf, &MonotoneOptions::default()) {
        Ok(Some(w)) => s.record(
            "prefix monotonicity fails for blocks:2,1;mu=1",
            "verified witness",
            if w.verify(&alt, Mode::Liminf).unwrap_or(false) {
                "verified witness"
            } else {
                "witness failed re-evaluation"
            },
        ),
        Ok(None) => s.record("prefix monotonicity fails for blocks:2,1;mu=1", "verified witness", "none found"),
        Err(e) => s.record("prefix monotonicity fails for blocks:2,1;mu=1", "verified witness", e),
    }
    for spec in ["mean", "disc:1/2"] {
        let found = match monotone_falsify(&seq(spec), Mode::Liminf, &MonotoneOptions::default()) {
            Ok(Some(_)) => "witness".to_string(),
            Ok(None) => "none".to_string(),
            Err(e) => e.to_string(),
        };
        s.record(&format!("prefix monotonicity holds for {spec}"), "none", found);
    }

    let samples = [
        lasso(&[], &[1]),
        lasso(&[3], &[0, 1]),
        lasso(&[-2, 5], &[4, -1, 0]),
        lasso(&[1, 1, 1], &[2, -3]),
    ];
    let mut mismatches = Vec::new();
    for lambda in [rat(1, 4), rat(1, 2), rat(9, 10)] {
        let geom = CoeffSeq::geometric(lambda.clone()).expect("positive ratio");
        for w in &samples {
            let closed = disc_sum(&lambda, w).map(|v| v.to_string()).unwrap_or_else(|e| e.to_string());
            let general = s.eval(&geom, w);
            if closed != general {
                mismatches.push(format!("{lambda} {w}: {closed} vs {general}"));
            }
        }
    }
    s.record("discounted closed form matches general evaluator", "agree", if mismatches.is_empty() {
        "agree".to_string()
    } else {
        mismatches.join("; ")
    });

    let mut dependent = Vec::new();
    for w in &samples {
        let bare = LassoWord::periodic(w.cycle().to_vec()).expect("nonempty");
        let avg = w.cycle().iter().sum::<Rational>() / Rational::from(w.cycle().len() as i64);
        let (a, b) = (s.eval(&mean_seq, w), s.eval(&mean_seq, &bare));
        if a != b || a != avg.to_string() {
            dependent.push(format!("{w}: {a} vs {b}"));
        }
    }
    s.record("mean is the cycle average, prefix ignored", "yes", if dependent.is_empty() {
        "yes".to_string()
    } else {
        dependent.join("; ")
    });

    let opts = RandomGameOptions {
        states: 4,
        max_out_degree: 2,
        max_weight: 4,
    };
    let disc = ExactEvaluator::new(&seq("disc:1/2"), Mode::Liminf).expect("supported");
    let mut broken = Vec::new();
    for seed in 0..10u64 {
        let g = random_game(seed, &opts);
        for (name, ev) in [("mean", &mean), ("disc:1/2", &disc)] {
            match check(&g, ev, 2) {
                Ok(v) if v.kind != VerdictKind::WitnessFound => {}
                Ok(v) => broken.push(format!("seed {seed} {name}: {}", v.kind)),
                Err(e) => broken.push(format!("seed {seed} {name}: {e}")),
            }
        }
    }
    s.record("random games keep memoryless optima (seeds 0-9)", "no witness", if broken.is_empty() {
        "no witness".to_string()
    } else {
        broken.join("; ")
    });

    let pairs = [
        ("geom:2", lasso(&[], &[1, 2, 0, 4])),
        ("geom:2", lasso(&[], &[0, 4])),
        ("mean", lasso(&[5], &[1, 0])),
        ("disc:1/2", lasso(&[1], &[0])),
        ("blocks:1,1/2;mu=1/8", lasso(&[3, 4, 1], &[3])),
        ("blocks:2,1;mu=1", lasso(&[], &[1, 0])),
    ];
    let mut outside = Vec::new();
    for (spec, w) in &pairs {
        let sq: Sequence = spec.parse().expect("built-in spec");
        let exact = eval_exact(sq.as_block().expect("block"), w, Mode::Liminf);
        let approx = eval_approx(&sq, w, 1000, Mode::Liminf);
        match (exact, approx) {
            (Ok(e), Ok(a)) if a.contains(e.exact().expect("exact")) => {}
            (e, a) => outside.push(format!("{spec} {w}: {e:?} {a:?}")),
        }
    }
    s.record("horizon-1000 brackets contain exact values", "all contained", if outside.is_empty() {
        "all contained".to_string()
    } else {
        outside.join("; ")
    });

    let total = s.checks.len();
    let passed = s.checks.iter().filter(|c| c.pass).count();
    ReferenceReport {
        checks: s.checks,
        passed,
        total,
        overall: passed == total,
    }
}
