use std::fmt::Write as _;
use std::fs;

use serde_json::{json, Value};
use wavg_core::games::{parse_game, serialize_game, Behavior, Gadget, GameGraph, Player};
use wavg_core::payoff::{eval_approx, eval_exact, ExactEvaluator, LassoWord};
use wavg_core::reference::run_reference_suite;
use wavg_core::seq::{CoeffSeq, Sequence};
use wavg_core::solver::{
    check_memoryless, find_witness_sequence_failure, monotone_falsify, random_game, solve_enumerative,
    value_iter_disc, value_iter_mean, CheckOptions, MonotoneOptions, RandomGameOptions, SolveError, ValueEstimate,
    Verdict, VerdictKind, Witness, WitnessSearchOptions,
};
use wavg_core::Rational;

use crate::record;
use crate::{Command, Common, Format, GameSource};

/// Rounds of value iteration used to cross-check `solve`.
const VALUE_ITERATIONS: usize = 64;

pub struct Output {
    pub text: String,
    pub exit: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, exit: 0 }
    }
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Budget(String),
}

impl CliError {
    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Budget(m) => m,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Budget(b) => CliError::Budget(b.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

pub fn run(cmd: Command) -> Result<Output, CliError> {
    match cmd {
        Command::EvalWord { common, word, horizon } => eval_word(&common, &word, horizon),
        Command::Solve { common, game, budget } => solve(&common, &game, budget),
        Command::CheckMemoryless {
            common,
            game,
            mem_bound,
            budget,
        } => check(&common, &game, mem_bound, budget),
        Command::FindWitness {
            common,
            mem_bound,
            budget,
        } => find_witness(&common, mem_bound, budget),
        Command::Monotone {
            common,
            alphabet,
            prefix_len,
            cycle_len,
            nonempty,
            budget,
        } => {
            let opts = MonotoneOptions {
                alphabet: wavg_core::rational::parse_list(&alphabet).map_err(input)?,
                max_prefix_len: prefix_len,
                max_cycle_len: cycle_len,
                nonempty_prefixes: nonempty,
                budget,
            };
            monotone(&common, &opts)
        }
        Command::VerifyPaper { format } => Ok(verify(format)),
        Command::Gadget { name, owner } => {
            let g = gadget(&name, &owner)?;
            Ok(Output::ok(serialize_game(&g)))
        }
    }
}

fn parse_seq(common: &Common) -> Result<Sequence, CliError> {
    common.seq.parse::<Sequence>().map_err(input)
}

fn block_seq(common: &Common) -> Result<CoeffSeq, CliError> {
    match parse_seq(common)? {
        Sequence::Block(s) => Ok(s),
        Sequence::Table(_) => Err(CliError::Input(
            "coefficient tables only support `eval-word --horizon`".into(),
        )),
    }
}

fn evaluator(common: &Common) -> Result<ExactEvaluator, CliError> {
    ExactEvaluator::new(&block_seq(common)?, common.mode()).map_err(input)
}

fn parse_owner(s: &str) -> Result<Player, CliError> {
    match s {
        "1" => Ok(Player::One),
        "2" => Ok(Player::Two),
        other => Err(CliError::Input(format!("owner must be 1 or 2, got `{other}`"))),
    }
}

fn gadget(name: &str, owner: &str) -> Result<GameGraph, CliError> {
    let g: Gadget = name.parse().map_err(input)?;
    Ok(g.build(parse_owner(owner)?))
}

fn load_game(src: &GameSource) -> Result<GameGraph, CliError> {
    if let Some(path) = &src.game {
        let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        return parse_game(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())));
    }
    if let Some(name) = &src.gadget {
        return gadget(name, &src.owner);
    }
    if let Some(states) = src.random {
        if states == 0 || src.degree == 0 {
            return Err(CliError::Input("random games need at least one state and one edge per state".into()));
        }
        let opts = RandomGameOptions {
            states,
            max_out_degree: src.degree,
            ..RandomGameOptions::default()
        };
        return Ok(random_game(src.seed, &opts));
    }
    Err(CliError::Input("one of --game, --gadget or --random is required".into()))
}

fn eval_word(common: &Common, word: &str, horizon: Option<usize>) -> Result<Output, CliError> {
    let seq = parse_seq(common)?;
    let w: LassoWord = word.parse().map_err(input)?;
    let mode = common.mode();
    let value = match (&seq, horizon) {
        (_, Some(h)) => eval_approx(&seq, &w, h, mode),
        (Sequence::Block(s), None) => eval_exact(s, &w, mode),
        (Sequence::Table(_), None) => return Err(CliError::Input("coefficient tables need --horizon".into())),
    }
    .map_err(input)?;
    let text = match common.format {
        Format::Text => format!("{value}\n"),
        Format::Json => {
            let mut rec = record::header("eval-word", &seq, mode, None);
            rec["word"] = json!(w.to_string());
            rec["horizon"] = json!(horizon);
            rec["value"] = record::payoff_value(&value);
            record::render(&rec)
        }
    };
    Ok(Output::ok(text))
}

/// Value-iteration estimate for the special cases that have one.
fn iterate_estimate(g: &GameGraph, seq: &CoeffSeq) -> Result<Option<(&'static str, ValueEstimate)>, CliError> {
    if *seq == CoeffSeq::mean() {
        return Ok(Some(("mean", value_iter_mean(g, VALUE_ITERATIONS)?)));
    }
    if let Some(lambda) = seq.is_geometric() {
        if lambda.is_positive() && lambda < Rational::one() {
            return Ok(Some(("discounted", value_iter_disc(g, &lambda, VALUE_ITERATIONS)?)));
        }
    }
    Ok(None)
}

fn solve(common: &Common, src: &GameSource, budget: u64) -> Result<Output, CliError> {
    let g = load_game(src)?;
    let ev = evaluator(common)?;
    let r = solve_enumerative(&g, &ev, budget)?;
    let estimate = iterate_estimate(&g, ev.seq())?;
    let text = match common.format {
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "maximin: {}", r.maximin);
            let _ = writeln!(s, "minimax: {}", r.minimax);
            let _ = writeln!(s, "saddle: {}", r.saddle());
            let _ = writeln!(s, "player 1 optimal: {}", r.p1_optimal().describe(&g));
            let _ = writeln!(s, "player 2 optimal: {}", r.p2_optimal().describe(&g));
            let _ = writeln!(s, "profiles: {}", r.profiles());
            if let Some((kind, est)) = &estimate {
                let _ = writeln!(
                    s,
                    "{kind} value iteration: {:.6} (within {:.3e}, {} rounds)",
                    est.at(g.start()).to_f64(),
                    est.error_bound.to_f64(),
                    est.iterations
                );
            }
            if src.random.is_some() {
                let _ = writeln!(s, "seed: {}", src.seed);
            }
            s
        }
        Format::Json => {
            let mut rec = record::header("solve", &parse_seq(common)?, common.mode(), Some(&g));
            record::game_source(&mut rec, src);
            rec["budget"] = json!(budget);
            rec["result"] = json!({
                "maximin": r.maximin,
                "minimax": r.minimax,
                "saddle": r.saddle(),
                "p1_optimal": r.p1_optimal().describe(&g),
                "p2_optimal": r.p2_optimal().describe(&g),
                "profiles": r.profiles(),
            });
            if let Some((kind, est)) = &estimate {
                rec["value_iteration"] = json!({
                    "kind": kind,
                    "value": est.at(g.start()),
                    "error_bound": est.error_bound,
                    "iterations": est.iterations,
                });
            }
            record::render(&rec)
        }
    };
    Ok(Output::ok(text))
}

fn describe_verdict(v: &Verdict, g: &GameGraph) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "verdict: {}", v.kind);
    let _ = writeln!(s, "maximin: {}", v.report.maximin);
    let _ = writeln!(s, "minimax: {}", v.report.minimax);
    match &v.witness {
        Some(Witness::SaddleGap { maximin, minimax }) => {
            let _ = writeln!(s, "witness: memoryless gap {maximin} < {minimax}");
        }
        Some(Witness::Deviation(d)) => {
            let _ = writeln!(s, "witness: player {} with memory {}", d.player, d.strategy.memory_size());
            let _ = writeln!(s, "strategy: {}", d.description);
            let _ = writeln!(s, "payoff: {} (memoryless best {})", d.payoff, d.memoryless_value);
            let _ = writeln!(s, "play: {}", d.play.describe(g));
            let _ = writeln!(s, "word: {}", d.lasso);
        }
        None => {}
    }
    if v.deviations.len() > 1 {
        let _ = writeln!(s, "improving deviations found: {}", v.deviations.len());
    }
    let _ = writeln!(s, "memory bound: {}", v.mem_bound);
    let _ = writeln!(s, "search nodes: {}", v.nodes);
    s
}

fn exit_for(kind: VerdictKind) -> u8 {
    match kind {
        VerdictKind::WitnessFound => 1,
        VerdictKind::MemorylessSaddle | VerdictKind::NoWitnessUpToBound => 0,
    }
}

fn check(common: &Common, src: &GameSource, mem_bound: usize, budget: u64) -> Result<Output, CliError> {
    if mem_bound == 0 {
        return Err(CliError::Input("--mem-bound must be positive".into()));
    }
    let g = load_game(src)?;
    let ev = evaluator(common)?;
    let opts = CheckOptions {
        mem_bound,
        budget,
        ..CheckOptions::default()
    };
    let v = check_memoryless(&g, &ev, &opts)?;
    let text = match common.format {
        Format::Text => {
            let mut s = describe_verdict(&v, &g);
            if src.random.is_some() {
                let _ = writeln!(s, "seed: {}", src.seed);
            }
            s
        }
        Format::Json => {
            let mut rec = record::header("check-memoryless", &parse_seq(common)?, common.mode(), Some(&g));
            record::game_source(&mut rec, src);
            rec["mem_bound"] = json!(mem_bound);
            rec["budget"] = json!(budget);
            rec["result"] = record::verdict(&v, &g);
            record::render(&rec)
        }
    };
    Ok(Output {
        text,
        exit: exit_for(v.kind),
    })
}

fn find_witness(common: &Common, mem_bound: usize, budget: u64) -> Result<Output, CliError> {
    if mem_bound == 0 || budget == 0 {
        return Err(CliError::Input("--mem-bound and --budget must be positive".into()));
    }
    let seq = block_seq(common)?;
    let opts = WitnessSearchOptions {
        max_mem_bound: mem_bound,
        max_checks: budget as usize,
        ..WitnessSearchOptions::default()
    };
    let out = find_witness_sequence_failure(&seq, common.mode(), &opts)?;
    let exit = u8::from(out.found.is_some());
    let text = match common.format {
        Format::Text => {
            let mut s = String::new();
            match &out.found {
                Some(f) => {
                    let _ = writeln!(s, "found: {}", f.candidate.name);
                    s.push_str(&describe_verdict(&f.verdict, &f.candidate.game));
                    s.push_str("game:\n");
                    s.push_str(&serialize_game(&f.candidate.game));
                }
                None => {
                    let _ = writeln!(s, "no witness among {} candidate games", out.tried.len());
                }
            }
            s
        }
        Format::Json => {
            let mut rec = record::header("find-witness", &parse_seq(common)?, common.mode(), None);
            rec["mem_bound"] = json!(mem_bound);
            rec["budget"] = json!(budget);
            rec["tried"] = json!(out.tried);
            rec["result"] = match &out.found {
                Some(f) => json!({
                    "candidate": f.candidate.name,
                    "game": serialize_game(&f.candidate.game),
                    "instance": record::instance_hash(&f.candidate.game),
                    "verdict": record::verdict(&f.verdict, &f.candidate.game),
                }),
                None => Value::Null,
            };
            record::render(&rec)
        }
    };
    Ok(Output { text, exit })
}

fn monotone(common: &Common, opts: &MonotoneOptions) -> Result<Output, CliError> {
    let seq = block_seq(common)?;
    let mode = common.mode();
    let found = monotone_falsify(&seq, mode, opts)?;
    let exit = u8::from(found.is_some());
    let text = match common.format {
        Format::Text => match &found {
            Some(w) => {
                let list = |v: &[Rational]| wavg_core::rational::format_list(v);
                format!(
                    "x = [{}], y = [{}], u = [{}], v = [{}]\nxu^w: {}  xv^w: {}  yu^w: {}  yv^w: {}\n",
                    list(&w.x),
                    list(&w.y),
                    list(&w.u),
                    list(&w.v),
                    w.phi_xu,
                    w.phi_xv,
                    w.phi_yu,
                    w.phi_yv
                )
            }
            None => "no monotonicity failure within bounds\n".to_string(),
        },
        Format::Json => {
            let mut rec = record::header("monotone", &parse_seq(common)?, mode, None);
            rec["alphabet"] = json!(opts.alphabet);
            rec["prefix_len"] = json!(opts.max_prefix_len);
            rec["cycle_len"] = json!(opts.max_cycle_len);
            rec["nonempty"] = json!(opts.nonempty_prefixes);
            rec["budget"] = json!(opts.budget);
            rec["result"] = match &found {
                Some(w) => json!({
                    "x": w.x, "y": w.y, "u": w.u, "v": w.v,
                    "phi_xu": w.phi_xu, "phi_xv": w.phi_xv, "phi_yu": w.phi_yu, "phi_yv": w.phi_yv,
                }),
                None => Value::Null,
            };
            record::render(&rec)
        }
    };
    Ok(Output { text, exit })
}

fn verify(format: Format) -> Output {
    let report = run_reference_suite();
    let text = match format {
        Format::Text => {
            let mut s = report.render_table();
            if !s.ends_with('\n') {
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let mut rec = json!({ "command": "verify-paper" });
            rec["report"] = serde_json::to_value(&report).expect("report serializes");
            record::render(&rec)
        }
    };
    Output {
        text,
        exit: if report.overall { 0 } else { 1 },
    }
}
