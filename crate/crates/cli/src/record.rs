//! Structured (JSON) report records. Rationals are written as strings such
//! as `"-7/3"` so they re-parse exactly.

use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use wavg_core::games::{serialize_game, GameGraph};
use wavg_core::payoff::{Mode, PayoffValue};
use wavg_core::seq::Sequence;
use wavg_core::solver::{Verdict, Witness};

use crate::GameSource;

/// SHA-256 of the canonical text form of a game.
pub fn instance_hash(g: &GameGraph) -> String {
    hex::encode(Sha256::digest(serialize_game(g).as_bytes()))
}

pub fn header(command: &str, seq: &Sequence, mode: Mode, game: Option<&GameGraph>) -> Value {
    let mut rec = json!({
        "command": command,
        "seq": seq.to_string(),
        "mode": mode,
    });
    if let Some(g) = game {
        rec["instance"] = json!(instance_hash(g));
        rec["states"] = json!(g.num_states());
        rec["edges"] = json!(g.num_edges());
    }
    rec
}

pub fn game_source(rec: &mut Value, src: &GameSource) {
    if let Some(p) = &src.game {
        rec["game"] = json!(p.display().to_string());
    }
    if let Some(name) = &src.gadget {
        rec["gadget"] = json!(name);
        rec["owner"] = json!(src.owner);
    }
    if let Some(n) = src.random {
        rec["random_states"] = json!(n);
        rec["degree"] = json!(src.degree);
        rec["seed"] = json!(src.seed);
    }
}

pub fn payoff_value(v: &PayoffValue) -> Value {
    match (v.exact(), v.bracket()) {
        (Some(x), _) => json!({ "exact": x }),
        (None, Some((lo, hi))) => json!({ "lower": lo, "upper": hi }),
        (None, None) => Value::Null,
    }
}

pub fn verdict(v: &Verdict, g: &GameGraph) -> Value {
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
            "play": d.play.describe(g),
            "word": d.lasso.to_string(),
        }),
        None => Value::Null,
    };
    json!({
        "verdict": v.kind,
        "maximin": v.report.maximin,
        "minimax": v.report.minimax,
        "witness": witness,
        "deviations": v.deviations.iter().map(|d| json!({
            "player": d.player,
            "payoff": d.payoff,
            "word": d.lasso.to_string(),
        })).collect::<Vec<_>>(),
        "mem_bound": v.mem_bound,
        "nodes": v.nodes,
    })
}

pub fn render(rec: &Value) -> String {
    let mut s = serde_json::to_string_pretty(rec).expect("json values serialize");
    s.push('\n');
    s
}
