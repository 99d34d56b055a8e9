use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use proptest::prelude::*;
use shannon_cli::histogram::{self, Histogram};
use shannon_core::RationalDist;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

fn shannon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shannon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn shannon_on(args: &[&str], file: &Path) -> Output {
    let mut all: Vec<&str> = args.to_vec();
    all.push(file.to_str().unwrap());
    shannon(&all)
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let cases: Vec<(Vec<String>, i32)> = vec![
        (
            vec!["entropy".into(), data("fruit.hist").display().to_string()],
            0,
        ),
        (
            vec![
                "compose".into(),
                data("coin_two_dice.tree").display().to_string(),
            ],
            0,
        ),
        (
            vec!["verify".into(), "--check".into(), "additivity".into()],
            0,
        ),
        (vec!["verify".into(), "--check".into(), "nosuch".into()], 2),
        (vec!["frobnicate".into()], 2),
        (
            vec![
                "--base".into(),
                "1".into(),
                "entropy".into(),
                data("fruit.hist").display().to_string(),
            ],
            2,
        ),
        (
            vec![
                "entropy".into(),
                d.join("missing.hist").display().to_string(),
            ],
            2,
        ),
        (
            vec![
                "entropy".into(),
                write(d, "junk.hist", "x\n").display().to_string(),
            ],
            2,
        ),
        (
            vec![
                "entropy".into(),
                write(d, "mixed.hist", "1\n0.5\n").display().to_string(),
            ],
            2,
        ),
        (
            vec![
                "entropy".into(),
                write(d, "neg.hist", "-1\n2\n").display().to_string(),
            ],
            3,
        ),
        (
            vec![
                "entropy".into(),
                write(d, "zero.hist", "0\n0\n").display().to_string(),
            ],
            3,
        ),
        (
            vec![
                "entropy".into(),
                write(d, "half.hist", "0.5\n0.4\n").display().to_string(),
            ],
            3,
        ),
        (
            vec![
                "compose".into(),
                write(
                    d,
                    "bad.tree",
                    "branch:\n  - 0.45 leaf: 1\n  - 0.45 leaf: 1\n",
                )
                .display()
                .to_string(),
            ],
            3,
        ),
        (
            vec!["approx".into(), data("fruit.hist").display().to_string()],
            2,
        ),
        (
            vec![
                "approx".into(),
                data("inverse_pi.hist").display().to_string(),
                "--N".into(),
                "100,10".into(),
            ],
            2,
        ),
    ];
    for (args, code) in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = shannon(&args);
        assert_eq!(out.status.code(), Some(code), "{args:?}: {}", stderr(&out));
        if code != 0 {
            assert!(out.stdout.is_empty(), "{args:?}");
            assert!(!stderr(&out).is_empty(), "{args:?}");
        }
    }
}

#[test]
fn error_messages_point_at_the_problem() {
    let dir = tempfile::tempdir().unwrap();
    let out = shannon_on(&["entropy"], &write(dir.path(), "n.hist", "# c\n3\n-1\n"));
    assert_eq!(stderr(&out).trim(), "error: negative count at line 3");

    let tree = write(
        dir.path(),
        "t.tree",
        "branch:\n  - 1 branch:\n    - 0.5 leaf: 1\n    - 0.4 leaf: 1\n",
    );
    let out = shannon_on(&["compose"], &tree);
    assert_eq!(
        stderr(&out).trim(),
        "error: node root/0: branch probabilities sum to 0.9"
    );

    let out = shannon(&["verify", "--check", "nosuch"]);
    assert!(stderr(&out).contains("estimate-k"), "{}", stderr(&out));
}

#[test]
fn failed_check_exits_4() {
    // A schedule this coarse does not get within the continuity tolerance.
    let out = shannon(&["--json", "verify", "--check", "continuity", "--N", "10"]);
    assert_eq!(out.status.code(), Some(4));
    let v = json(&out);
    assert_eq!(v["passed"], false);
    assert_eq!(v["reports"][0]["check_name"], "continuity");
}

#[test]
fn human_and_json_agree() {
    let fruit = data("fruit.hist");
    let human = String::from_utf8(shannon_on(&["entropy"], &fruit).stdout).unwrap();
    let v = json(&shannon_on(&["--json", "entropy"], &fruit));
    let h = v["entropy"].as_f64().unwrap();
    assert!(
        human.starts_with(&format!("entropy   {h:.6} bits\n")),
        "{human}"
    );
    assert!(human.contains("total     10\n"));

    let tree = data("coin_two_dice.tree");
    let human = String::from_utf8(shannon_on(&["compose"], &tree).stdout).unwrap();
    let v = json(&shannon_on(&["--json", "compose"], &tree));
    let total = v["total"].as_f64().unwrap();
    assert!(
        human.contains(&format!("total uncertainty  {total:.6} bits")),
        "{human}"
    );
    assert_eq!(v["flattened_outcomes"], 12);
}

#[test]
fn base_changes_units_not_information() {
    let fruit = data("fruit.hist");
    let bits = json(&shannon_on(&["--json", "entropy"], &fruit))["entropy"]
        .as_f64()
        .unwrap();
    let nats = json(&shannon_on(&["--json", "--base", "e", "entropy"], &fruit));
    let nats = nats["entropy"].as_f64().unwrap();
    assert!((nats - bits * std::f64::consts::LN_2).abs() < 1e-12);
    let human = String::from_utf8(shannon_on(&["--base", "10", "entropy"], &fruit).stdout).unwrap();
    assert!(human.contains("hartleys"), "{human}");
}

#[test]
fn seed_is_reported_and_changes_the_sample() {
    let run = |seed: &str| {
        json(&shannon(&[
            "--json",
            "--seed",
            seed,
            "verify",
            "--check",
            "general-additivity",
            "--pairs",
            "20",
        ]))
    };
    let a = run("3");
    assert_eq!(a["seed"], 3);
    assert_eq!(a["passed"], true);
    assert_eq!(a, run("3"));
    assert_ne!(
        a["reports"][0]["worst_case_input"],
        run("4")["reports"][0]["worst_case_input"]
    );
}

#[test]
fn approx_counts_sum_to_each_denominator() {
    let v = json(&shannon(&[
        "--json",
        "approx",
        data("biased_die.hist").to_str().unwrap(),
        "--N",
        "7,50,999",
    ]));
    for point in v["points"].as_array().unwrap() {
        let n = point["denominator"].as_u64().unwrap();
        let sum: u64 = point["counts"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c.as_u64().unwrap())
            .sum();
        assert_eq!(sum, n);
    }
}

fn label() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9 _-]{0,8}[a-z0-9]"
}

proptest! {
    #[test]
    fn histogram_round_trip(
        rows in prop::collection::vec((label(), 0u64..1_000_000), 1..20)
            .prop_filter("some mass", |rows| rows.iter().any(|(_, n)| *n > 0)),
        labelled in any::<bool>(),
    ) {
        let counts: Vec<u64> = rows.iter().map(|(_, n)| *n).collect();
        let mut dist = RationalDist::new(counts).unwrap();
        if labelled {
            dist = dist.with_labels(rows.iter().map(|(l, _)| l.clone()).collect()).unwrap();
        }
        let text = histogram::write_counts(&dist).unwrap();
        prop_assert_eq!(histogram::parse(&text).unwrap(), Histogram::Counts(dist));
    }
}
