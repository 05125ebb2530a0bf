//! End-to-end runs of the `bmgame` binary.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn bmgame(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bmgame"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn bmgame_with_input(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bmgame"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn pure_sets_markov_play_passes() {
    let o = bmgame(&[
        "play",
        "--class",
        "pure_sets",
        "--odd",
        "markov",
        "--eve",
        "random",
        "--rounds",
        "6",
        "--seed",
        "1",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("verdict: PASS"));
}

#[test]
fn zero_rounds_is_a_usage_error() {
    let o = bmgame(&["play", "--class", "pure_sets", "--rounds", "0"]);
    assert_eq!(code(&o), 64);
}

#[test]
fn graph_play_meets_the_extension_check() {
    let o = bmgame(&[
        "play",
        "--class",
        "graphs",
        "--odd",
        "markov",
        "--eve",
        "random",
        "--rounds",
        "16",
        "--check",
        "extension:2",
        "--seed",
        "7",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn exit_codes_follow_the_verdict_and_error_kind() {
    let dir = tempfile::tempdir().unwrap();
    // Odd only echoes, so Eve's small graphs miss extensions
    let o = bmgame(&[
        "play",
        "--class",
        "graphs",
        "--odd",
        "echo",
        "--rounds",
        "6",
        "--check",
        "extension:2",
    ]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("verdict: FAIL"));
    // a finite ideal of integers settles membership exactly
    let o = bmgame(&[
        "play",
        "--poset",
        "divisibility",
        "--odd",
        "echo",
        "--rounds",
        "4",
        "--check",
        "generic:2",
    ]);
    assert_eq!(code(&o), 1);
    let cases: &[(&[&str], i32)] = &[
        (&["play", "--poset", "divisibility", "--rounds", "6"], 0),
        (&["play", "--poset", "divisibility", "--eve", "echo"], 64),
        (&["play", "--poset", "tori"], 64),
        (&["play"], 64),
        (&["play", "--class", "graphs", "--check", "generic:2"], 64),
        (&["play", "--class", "graphs", "--odd", "sideways"], 64),
        (&["play", "--class", "graphs", "--format", "dot"], 64),
        (&["frobnicate"], 64),
        (
            &[
                "play",
                "--class",
                "graphs",
                "--config",
                "/nonexistent/config.json",
            ],
            74,
        ),
        (
            &[
                "verify",
                "--class",
                "graphs",
                "--transcript",
                "/nonexistent/t.json",
            ],
            74,
        ),
        (
            &[
                "tree",
                "--poset",
                "divisibility",
                "--odd",
                "echo",
                "--depth",
                "2",
                "--budget",
                "1",
            ],
            4,
        ),
        (
            &["export", "--poset", "divisibility", "--format", "dot"],
            64,
        ),
    ];
    for (args, want) in cases {
        assert_eq!(code(&bmgame(args)), *want, "{args:?}");
    }
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"class": 3}"#).unwrap();
    assert_eq!(code(&bmgame(&["play", "--config", path_str(&bad)])), 65);
    let script = dir.path().join("eve.txt");
    let eve = format!("script:{}", path_str(&script));
    let scripted = |rounds: &str| {
        code(&bmgame(&[
            "play",
            "--class",
            "pure_sets",
            "--eve",
            &eve,
            "--rounds",
            rounds,
        ]))
    };
    // the second line reuses vertex 0
    std::fs::write(&script, "0\n0\n").unwrap();
    assert_eq!(scripted("4"), 65);
    // a script that runs out is an end of input
    std::fs::write(&script, "0\n").unwrap();
    assert_eq!(scripted("4"), 3);
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(
        &cfg,
        r#"{"poset": "unit_intervals", "odd": "middle_half", "rounds": 8, "check": "generic:9"}"#,
    )
    .unwrap();
    // middle halves shrink by 1/2 per Odd move; four moves cannot reach
    // 2^-9, and no finite play rules out a later move that does
    let o = bmgame(&["play", "--config", path_str(&cfg)]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("verdict: UNDECIDED"));
    assert_eq!(
        code(&bmgame(&[
            "play",
            "--config",
            path_str(&cfg),
            "--check",
            "generic:4"
        ])),
        0
    );
}

#[test]
fn transcripts_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|i| {
            let out = dir.path().join(format!("t{i}.json"));
            let o = bmgame(&[
                "play",
                "--class",
                "graphs",
                "--rounds",
                "8",
                "--seed",
                "11",
                "--out",
                path_str(&out),
            ]);
            assert_eq!(code(&o), 0);
            std::fs::read(&out).unwrap()
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    let other = dir.path().join("other.json");
    bmgame(&[
        "play",
        "--class",
        "graphs",
        "--rounds",
        "8",
        "--seed",
        "12",
        "--out",
        path_str(&other),
    ]);
    assert_ne!(runs[0], std::fs::read(&other).unwrap());
}

#[test]
fn scripted_stdin_matches_the_script_strategy() {
    let dir = tempfile::tempdir().unwrap();
    let moves = "0 1:0\n\n100:0 101:100\n200\n";
    let script = dir.path().join("eve.txt");
    std::fs::write(&script, moves).unwrap();
    let a = dir.path().join("interactive.json");
    let b = dir.path().join("script.json");
    let common = [
        "--class", "graphs", "--rounds", "8", "--seed", "4", "--check", "always",
    ];
    let o = bmgame_with_input(
        &[&["interactive"][..], &common, &["--out", path_str(&a)]].concat(),
        moves,
    );
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let eve = format!("script:{}", path_str(&script));
    let o = bmgame(
        &[
            &["play"][..],
            &common,
            &["--eve", &eve, "--out", path_str(&b)],
        ]
        .concat(),
    );
    assert_eq!(code(&o), 0);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn interactive_reprompts_on_bad_input_and_allows_stalls() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.json");
    // line 2 names a taken vertex and is retried; line 4 stalls
    let input = "0 1:0\n1\n300:999\n\n";
    let o = bmgame_with_input(
        &[
            "interactive",
            "--class",
            "graphs",
            "--rounds",
            "4",
            "--check",
            "always",
            "--out",
            path_str(&out),
        ],
        input,
    );
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(stdout(&o).matches("invalid move").count(), 2);
    let t: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let moves = t["moves"].as_array().unwrap();
    assert_eq!(moves.len(), 4);
    // the stall repeats Odd's first answer
    assert_eq!(moves[2], moves[1]);
}

#[test]
fn interactive_end_of_input_exits_3() {
    let o = bmgame_with_input(
        &["interactive", "--class", "linear_orders", "--rounds", "4"],
        "0@0\n",
    );
    assert_eq!(code(&o), 3);
}

#[test]
fn tree_depth_zero_is_an_empty_graph() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.dot");
    let o = bmgame(&[
        "tree",
        "--poset",
        "binary_strings",
        "--depth",
        "0",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(code(&o), 0);
    let dot = std::fs::read_to_string(&out).unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(!dot.contains("->") && !dot.contains("label"));
}

#[test]
fn tree_demo_on_binary_strings() {
    // Eve's openings within budget 2 are the empty word and "0"; Odd appends "1"
    let o = bmgame(&[
        "tree",
        "--poset",
        "binary_strings",
        "--odd",
        "append:1",
        "--depth",
        "1",
        "--budget",
        "2",
    ]);
    assert_eq!(code(&o), 0);
    let dot = stdout(&o);
    assert!(dot.contains("label=\"1\"") && dot.contains("label=\"01\""));
    let log = String::from_utf8_lossy(&o.stderr);
    assert!(
        log.contains("level 0: 2 nodes, 1 of 1 pairs incompatible"),
        "{log}"
    );
    assert!(log.contains("antichain check: ok"));
}

#[test]
fn tree_report_counts_incompatible_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.dot");
    let o = bmgame(&[
        "tree",
        "--poset",
        "binary_strings",
        "--odd",
        "append:1",
        "--depth",
        "3",
        "--budget",
        "4",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(code(&o), 0);
    // 3, 9 and 27 pairwise incomparable nodes
    let log = stdout(&o);
    for (n, size) in [3usize, 9, 27].iter().enumerate() {
        let pairs = size * (size - 1) / 2;
        assert!(
            log.contains(&format!(
                "level {n}: {size} nodes, {pairs} of {pairs} pairs"
            )),
            "{log}"
        );
    }
}

#[test]
fn verify_rechecks_saved_transcripts() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("t.json");
    let o = bmgame(&[
        "play",
        "--poset",
        "binary_strings",
        "--rounds",
        "10",
        "--seed",
        "2",
        "--out",
        path_str(&t),
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        code(&bmgame(&[
            "verify",
            "--poset",
            "binary_strings",
            "--transcript",
            path_str(&t)
        ])),
        0
    );
    // wrong poset
    assert_eq!(
        code(&bmgame(&[
            "verify",
            "--poset",
            "strings:3",
            "--transcript",
            path_str(&t)
        ])),
        65
    );
    // a broken chain fails
    let mut v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&t).unwrap()).unwrap();
    v["moves"][1] = serde_json::Value::String("1111111111111111".into());
    v["moves"][2] = serde_json::Value::String("0".into());
    std::fs::write(&t, v.to_string()).unwrap();
    assert_eq!(
        code(&bmgame(&[
            "verify",
            "--poset",
            "binary_strings",
            "--transcript",
            path_str(&t)
        ])),
        1
    );
}

#[test]
fn export_writes_final_structures() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("f.dot");
    let o = bmgame(&[
        "export",
        "--class",
        "forests",
        "--rounds",
        "6",
        "--format",
        "dot",
        "--out",
        path_str(&dot),
    ]);
    assert_eq!(code(&o), 0);
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("graph"));
    let o = bmgame(&["export", "--class", "linear_orders", "--rounds", "4"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["universe"].as_array().is_some_and(|u| !u.is_empty()));
}
