use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use wavg_core::Rational;

fn wavg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wavg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("valid json")
}

fn rational(v: &Value) -> Rational {
    v.as_str().expect("rationals are strings").parse().unwrap()
}

fn write_game(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wavg-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn eval_word_values() {
    let cases: [(&[&str], &str); 4] = [
        (&["--seq", "geom:2", "--word", "cycle=1,2,0,4"], "14/15"),
        (&["--seq", "mean", "--word", "cycle=1,0"], "1/2"),
        (&["--seq", "table:1,1,1,1", "--word", "cycle=3", "--horizon", "3"], "bracket[3, 3]"),
        (&["--seq", "geom:2", "--word", "cycle=1,2,0,4", "--limsup"], "37/15"),
    ];
    for (args, expected) in cases {
        let o = wavg(&[&["eval-word"], args].concat());
        assert_eq!(code(&o), 0, "{args:?}");
        assert_eq!(stdout(&o).trim(), expected, "{args:?}");
    }
}

#[test]
fn eval_word_input_errors_exit_2() {
    for args in [
        &["eval-word", "--seq", "geom:0", "--word", "cycle=1"][..],
        &["eval-word", "--seq", "mean", "--word", "cycle="],
        &["eval-word", "--seq", "table:1,1", "--word", "cycle=1"],
        &["eval-word", "--seq", "table:1,-1", "--word", "cycle=1", "--horizon", "1"],
    ] {
        let o = wavg(args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"), "{args:?}");
    }
}

#[test]
fn solve_left_right_game_from_file() {
    let text = stdout(&wavg(&["gadget", "g1024", "--owner", "2"]));
    let path = write_game("g1024.game", &text);
    let o = wavg(&["solve", "--game", path.to_str().unwrap(), "--seq", "geom:2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let rec = json(&o);
    assert_eq!(rational(&rec["result"]["maximin"]), Rational::new(4, 3));
    assert_eq!(rational(&rec["result"]["minimax"]), Rational::new(4, 3));
}

#[test]
fn solve_self_loop_gives_its_weight() {
    let path = write_game("loop.game", "state a 1\nedge a a -5/2\nstart a\n");
    for seq in ["mean", "geom:2", "disc:1/3", "blocks:2,1;mu=1"] {
        let o = wavg(&["solve", "--game", path.to_str().unwrap(), "--seq", seq]);
        assert_eq!(code(&o), 0);
        assert!(stdout(&o).starts_with("maximin: -5/2\nminimax: -5/2\n"), "{seq}");
    }
}

#[test]
fn solve_random_game_agrees_with_value_iteration() {
    for seed in 0..8 {
        let seed = seed.to_string();
        let o = wavg(&["solve", "--random", "4", "--seed", &seed, "--seq", "disc:1/2", "--format", "json"]);
        assert_eq!(code(&o), 0);
        let rec = json(&o);
        assert_eq!(rec["seed"].as_u64().unwrap().to_string(), seed);
        let exact = rational(&rec["result"]["maximin"]);
        let approx = rational(&rec["value_iteration"]["value"]);
        let bound = rational(&rec["value_iteration"]["error_bound"]);
        assert!((exact - approx).abs() <= bound, "seed {seed}");
    }
}

#[test]
fn check_memoryless_exit_codes() {
    let o = wavg(&["check-memoryless", "--gadget", "g1024", "--owner", "2", "--seq", "geom:2", "--mem-bound", "2"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("verdict: witness-found"));
    assert!(stdout(&o).contains("payoff: 14/15"));

    let o = wavg(&["check-memoryless", "--gadget", "g1024", "--owner", "2", "--seq", "mean"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("verdict: no-witness-up-to-bound"));

    let o = wavg(&[
        "check-memoryless",
        "--gadget",
        "g4:4,1,3",
        "--seq",
        "blocks:1,1/2;mu=1/8",
        "--mem-bound",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 1);
    let rec = json(&o);
    assert_eq!(rational(&rec["result"]["maximin"]), Rational::from(3));
    let found = rec["result"]["deviations"]
        .as_array()
        .unwrap()
        .iter()
        .any(|d| d["word"] == "prefix=3,4,1;cycle=3" && rational(&d["payoff"]) == Rational::new(151, 48));
    assert!(found);
}

#[test]
fn budget_exceeded_exits_3() {
    let o = wavg(&["solve", "--random", "6", "--degree", "3", "--seq", "mean", "--budget", "10"]);
    assert_eq!(code(&o), 3);
    let o = wavg(&["monotone", "--seq", "mean", "--alphabet", "0,1,2", "--budget", "5"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn game_input_errors_exit_2() {
    let bad = write_game("bad.game", "state a 1\nedge a b 1\nstart a\n");
    for args in [
        &["solve", "--game", bad.to_str().unwrap(), "--seq", "mean"][..],
        &["solve", "--game", "/nonexistent/file.game", "--seq", "mean"],
        &["solve", "--seq", "mean"],
        &["solve", "--gadget", "g9", "--seq", "mean"],
        &["solve", "--gadget", "g1", "--owner", "3", "--seq", "mean"],
        &["check-memoryless", "--gadget", "g1", "--seq", "table:1,2"],
        &["check-memoryless", "--gadget", "g1", "--seq", "mean", "--mem-bound", "0"],
    ] {
        assert_eq!(code(&wavg(args)), 2, "{args:?}");
    }
}

#[test]
fn find_witness_and_monotone() {
    let o = wavg(&["find-witness", "--seq", "geom:2"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("found: "));
    let o = wavg(&["find-witness", "--seq", "geom:1/2"]);
    assert_eq!(code(&o), 0);

    let o = wavg(&["monotone", "--seq", "blocks:2,1;mu=1", "--format", "json"]);
    assert_eq!(code(&o), 1);
    let r = &json(&o)["result"];
    assert!(rational(&r["phi_xu"]) <= rational(&r["phi_xv"]));
    assert!(rational(&r["phi_yu"]) > rational(&r["phi_yv"]));
    assert_eq!(code(&wavg(&["monotone", "--seq", "mean"])), 0);
}

#[test]
fn structured_output_round_trips_rationals() {
    let text = wavg(&["eval-word", "--seq", "blocks:1,1/2;mu=1/8", "--word", "prefix=3,4,1;cycle=3"]);
    let rec = json(&wavg(&[
        "eval-word",
        "--seq",
        "blocks:1,1/2;mu=1/8",
        "--word",
        "prefix=3,4,1;cycle=3",
        "--format",
        "json",
    ]));
    assert_eq!(rational(&rec["value"]["exact"]).to_string(), stdout(&text).trim());
    assert_eq!(rec["mode"], "liminf");
    let again: Value = serde_json::from_str(&serde_json::to_string(&rec).unwrap()).unwrap();
    assert_eq!(again, rec);

    let rec = json(&wavg(&["eval-word", "--seq", "mean", "--word", "cycle=1,0", "--mode", "limsup", "--format", "json"]));
    assert_eq!(rec["mode"], "limsup");
    assert_eq!(rational(&rec["value"]["exact"]), Rational::new(1, 2));
}

#[test]
fn verify_paper_is_deterministic_and_passes() {
    let a = wavg(&["verify-paper", "--format", "json"]);
    let b = wavg(&["verify-paper", "--format", "json"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let rec = json(&a);
    assert_eq!(rec["report"]["overall"], true);
    assert!(rec["report"]["checks"].as_array().unwrap().len() >= 20);

    let text = wavg(&["verify-paper"]);
    assert_eq!(code(&text), 0);
    assert!(stdout(&text).contains("14/15"));
}

#[test]
fn gadget_output_parses_back() {
    for name in ["g1", "g2:5", "g3", "g4:4,1,3", "gk:3,2", "g1024"] {
        let o = wavg(&["gadget", name]);
        assert_eq!(code(&o), 0, "{name}");
        let g = wavg_core::games::parse_game(&stdout(&o)).unwrap();
        assert_eq!(wavg_core::games::serialize_game(&g), stdout(&o));
    }
}
