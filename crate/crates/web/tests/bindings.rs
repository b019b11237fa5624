use serde_json::Value;
use wavg_web::{check_json, payoff_curve_json, solve_json, MAX_HORIZON};

fn parse(s: Result<String, String>) -> Value {
    serde_json::from_str(&s.expect("call succeeds")).unwrap()
}

fn floats(v: &Value) -> Vec<Option<f64>> {
    v.as_array().unwrap().iter().map(Value::as_f64).collect()
}

#[test]
fn curve_matches_direct_float_ratios() {
    let d = parse(payoff_curve_json("blocks:2,1;mu=1", "prefix=5;cycle=1,0,-2", 30, false));
    let rewards = [5.0, 1.0, 0.0, -2.0];
    let reward = |i: usize| if i == 0 { rewards[0] } else { rewards[1 + (i - 1) % 3] };
    let (mut num, mut den) = (0.0, 0.0);
    for (i, r) in floats(&d["curve"]).into_iter().enumerate() {
        let c = if i % 2 == 0 { 2.0 } else { 1.0 };
        num += c * reward(i);
        den += c;
        assert!((r.unwrap() - num / den).abs() < 1e-12, "n={i}");
        assert_eq!(d["rewards"][i].as_f64().unwrap(), reward(i));
    }
    assert_eq!(d["curve"].as_array().unwrap().len(), 31);
}

#[test]
fn curve_reports_exact_value_and_bracket() {
    let d = parse(payoff_curve_json("geom:2", "cycle=1,2,0,4", 40, false));
    assert_eq!(d["exact"]["value"], "14/15");
    let lo: f64 = d["bracket"]["lower"].as_str().unwrap().parse::<wavg_core::Rational>().unwrap().to_f64();
    let hi: f64 = d["bracket"]["upper"].as_str().unwrap().parse::<wavg_core::Rational>().unwrap().to_f64();
    assert!(lo <= 14.0 / 15.0 && 14.0 / 15.0 <= hi);

    let d = parse(payoff_curve_json("geom:2", "cycle=1,2,0,4", 40, true));
    assert_eq!(d["mode"], "limsup");
    assert_eq!(d["exact"]["value"], "37/15");
}

#[test]
fn curve_marks_vanishing_sums_and_clamps_horizon() {
    let d = parse(payoff_curve_json("blocks:-1,2;mu=1;prefix=1", "cycle=1", 3, false));
    assert_eq!(floats(&d["curve"]), vec![Some(1.0), None, Some(1.0), Some(1.0)]);
    assert!(d["exact"]["error"].is_string());
    assert!(d["bracket"]["error"].is_string());
    assert!(payoff_curve_json("table:1,-1,1", "cycle=1", 2, false).is_err());

    let d = parse(payoff_curve_json("mean", "cycle=1,0", 10 * MAX_HORIZON, false));
    assert_eq!(d["horizon"].as_u64().unwrap() as usize, MAX_HORIZON);
}

#[test]
fn curve_input_errors() {
    assert!(payoff_curve_json("geom:-1", "cycle=1", 5, false).is_err());
    assert!(payoff_curve_json("mean", "prefix=1", 5, false).is_err());
    assert!(payoff_curve_json("table:1,1", "cycle=1", 5, false).is_err());
}

#[test]
fn solve_and_check_gadgets() {
    let r = parse(solve_json("g1024@2", "geom:2", false));
    assert_eq!(r["maximin"], "4/3");
    assert_eq!(r["minimax"], "4/3");

    let r = parse(check_json("g1024@2", "geom:2", 2, false));
    assert_eq!(r["verdict"], "witness-found");
    assert_eq!(r["witness"]["payoff"], "14/15");

    let r = parse(check_json("g1024@2", "mean", 2, false));
    assert_eq!(r["verdict"], "no-witness-up-to-bound");
}

#[test]
fn solve_accepts_game_text() {
    let r = parse(solve_json("state a 1\nstate b 2\nedge a b 1\nedge a a 3\nedge b a -1\nstart a\n", "mean", false));
    assert_eq!(r["maximin"], "3");
    assert!(solve_json("state a 1\nstart a\n", "mean", false).is_err());
    assert!(solve_json("g1024@3", "mean", false).is_err());
    assert!(solve_json("g1024", "table:1,2", false).is_err());
}
