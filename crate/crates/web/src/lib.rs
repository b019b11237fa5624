//! WebAssembly bindings for the browser demo. Every binding returns a JSON
//! string; rationals are written as `"p/q"` strings, plot points as floats.
//!
//! The `*_json` functions carry the logic and run natively too, so they are
//! what the tests exercise.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;
use wavg_core::games::{parse_game, serialize_game, Gadget, GameGraph, Player};
use wavg_core::payoff::{eval_approx, eval_exact, ExactEvaluator, LassoWord, Mode};
use wavg_core::seq::{CoeffSeq, Sequence};
use wavg_core::solver::{check_memoryless, solve_enumerative, CheckOptions, Witness};
use wavg_core::Rational;

/// Longest curve the page may request.
pub const MAX_HORIZON: usize = 2000;
/// Profile and search-node cap for the in-browser solvers.
pub const BUDGET: u64 = 200_000;

fn mode(limsup: bool) -> Mode {
    if limsup {
        Mode::Limsup
    } else {
        Mode::Liminf
    }
}

fn block_seq(spec: &str) -> Result<CoeffSeq, String> {
    match spec.parse::<Sequence>().map_err(|e| e.to_string())? {
        Sequence::Block(s) => Ok(s),
        Sequence::Table(_) => Err("games need a block sequence, not a table".into()),
    }
}

/// Game text, or a gadget name such as `g1024` or `g4:4,1,3@2` (owner after `@`).
fn load_game(spec: &str) -> Result<GameGraph, String> {
    let spec = spec.trim();
    if spec.lines().count() > 1 || spec.starts_with("state") {
        return parse_game(spec).map_err(|e| e.to_string());
    }
    let (name, owner) = spec.split_once('@').unwrap_or((spec, "1"));
    let owner = match owner.trim() {
        "1" => Player::One,
        "2" => Player::Two,
        other => return Err(format!("owner must be 1 or 2, got `{other}`")),
    };
    let g: Gadget = name.trim().parse().map_err(|e: wavg_core::games::ParseGadgetError| e.to_string())?;
    Ok(g.build(owner))
}

/// `R_0..R_horizon` of a lasso word as floats, with `null` where the
/// partial coefficient sum vanishes.
fn curve(seq: &Sequence, w: &LassoWord, horizon: usize) -> Vec<Option<f64>> {
    let coeffs: Vec<Rational> = match seq {
        Sequence::Block(s) => s.terms().take(horizon + 1).collect(),
        Sequence::Table(t) => t.values()[..=horizon].to_vec(),
    };
    let mut num = Rational::zero();
    let mut den = Rational::zero();
    coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            num += c * w.reward(i);
            den += c;
            num.checked_div(&den).map(|r| r.to_f64())
        })
        .collect()
}

pub fn payoff_curve_json(seq: &str, word: &str, horizon: usize, limsup: bool) -> Result<String, String> {
    let parsed: Sequence = seq.parse().map_err(|e: wavg_core::SeqError| e.to_string())?;
    let w: LassoWord = word.parse().map_err(|e: wavg_core::PayoffError| e.to_string())?;
    let horizon = horizon.clamp(1, MAX_HORIZON);
    if let Sequence::Table(t) = &parsed {
        if horizon > t.horizon() {
            return Err(format!("table has {} coefficients, horizon {horizon} needs more", t.values().len()));
        }
    }
    let mode = mode(limsup);
    let exact = match &parsed {
        Sequence::Block(s) => match eval_exact(s, &w, mode) {
            Ok(v) => json!({ "value": v.exact().map(|x| x.to_string()), "approx": v.exact().map(|x| x.to_f64()) }),
            Err(e) => json!({ "error": e.to_string() }),
        },
        Sequence::Table(_) => Value::Null,
    };
    let bracket = match eval_approx(&parsed, &w, horizon, mode) {
        Ok(v) => match v.bracket() {
            Some((lo, hi)) => json!({ "lower": lo, "upper": hi, "text": v.to_string() }),
            None => json!({ "text": v.to_string() }),
        },
        Err(e) => json!({ "error": e.to_string() }),
    };
    let rewards: Vec<f64> = (0..=horizon).map(|i| w.reward(i).to_f64()).collect();
    let rec = json!({
        "seq": parsed.to_string(),
        "word": w.to_string(),
        "mode": mode,
        "horizon": horizon,
        "exact": exact,
        "bracket": bracket,
        "rewards": rewards,
        "curve": curve(&parsed, &w, horizon),
    });
    Ok(rec.to_string())
}

pub fn solve_json(game: &str, seq: &str, limsup: bool) -> Result<String, String> {
    let g = load_game(game)?;
    let ev = ExactEvaluator::new(&block_seq(seq)?, mode(limsup)).map_err(|e| e.to_string())?;
    let r = solve_enumerative(&g, &ev, BUDGET).map_err(|e| e.to_string())?;
    Ok(json!({
        "game": serialize_game(&g),
        "maximin": r.maximin,
        "minimax": r.minimax,
        "saddle": r.saddle(),
        "p1_optimal": r.p1_optimal().describe(&g),
        "p2_optimal": r.p2_optimal().describe(&g),
        "profiles": r.profiles(),
    })
    .to_string())
}

pub fn check_json(game: &str, seq: &str, mem_bound: usize, limsup: bool) -> Result<String, String> {
    let g = load_game(game)?;
    let ev = ExactEvaluator::new(&block_seq(seq)?, mode(limsup)).map_err(|e| e.to_string())?;
    let opts = CheckOptions {
        mem_bound: mem_bound.clamp(1, 3),
        budget: BUDGET,
        ..CheckOptions::default()
    };
    let v = check_memoryless(&g, &ev, &opts).map_err(|e| e.to_string())?;
    let witness = match &v.witness {
        Some(Witness::SaddleGap { maximin, minimax }) => json!({
            "kind": "saddle-gap",
            "maximin": maximin,
            "minimax": minimax,
        }),
        Some(Witness::Deviation(d)) => json!({
            "kind": "deviation",
            "player": d.player,
            "strategy": d.description,
            "payoff": d.payoff,
            "memoryless_value": d.memoryless_value,
            "word": d.lasso.to_string(),
        }),
        None => Value::Null,
    };
    Ok(json!({
        "game": serialize_game(&g),
        "verdict": v.kind,
        "maximin": v.report.maximin,
        "minimax": v.report.minimax,
        "witness": witness,
        "mem_bound": v.mem_bound,
        "nodes": v.nodes,
    })
    .to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

/// Partial ratios `R_n` of a reward word together with its exact value.
#[wasm_bindgen]
pub fn payoff_curve(seq: &str, word: &str, horizon: usize, limsup: bool) -> Result<String, JsValue> {
    js(payoff_curve_json(seq, word, horizon, limsup))
}

/// Maximin and minimax over memoryless strategies.
#[wasm_bindgen]
pub fn solve_game(game: &str, seq: &str, limsup: bool) -> Result<String, JsValue> {
    js(solve_json(game, seq, limsup))
}

/// Searches for a finite-memory deviation that beats memoryless play.
#[wasm_bindgen]
pub fn check_game(game: &str, seq: &str, mem_bound: usize, limsup: bool) -> Result<String, JsValue> {
    js(check_json(game, seq, mem_bound, limsup))
}

/// Text form of a built-in gadget, for the game editor.
#[wasm_bindgen]
pub fn gadget_text(spec: &str) -> Result<String, JsValue> {
    js(load_game(spec).map(|g| serialize_game(&g)))
}
