use std::path::PathBuf;
use std::process::{Command, Output};

fn ptg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn solve_fixture_a_with_verification() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("result.json");
    let plot = dir.path().join("plot.csv");
    let o = ptg(&[
        "solve",
        &fixture("fixture-a.json"),
        "--verify",
        "--out",
        out.to_str().unwrap(),
        "--plot",
        plot.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_str(stderr(&o).trim()).unwrap();
    assert_eq!(report["verified"], true);
    let result: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(result["stats"]["event_points"], 1);
    assert_eq!(result["states"][0]["segments"][1]["left"], "1/2");
    let table = std::fs::read_to_string(&plot).unwrap();
    assert!(table.contains("k1,0,1/2,3/2,1\n"));
}

#[test]
fn output_is_deterministic() {
    let a = ptg(&["solve", &fixture("fig3.json")]);
    let b = ptg(&["solve", &fixture("fig3.json")]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("\"left_jump\": \"1\""));
}

#[test]
fn timings_are_opt_in() {
    let plain = ptg(&["solve", &fixture("fixture-a.json")]);
    assert!(!stdout(&plain).contains("wall_time_us"));
    let timed = ptg(&["solve", &fixture("fixture-a.json"), "--timings"]);
    assert!(stdout(&timed).contains("wall_time_us"));
}

#[test]
fn every_fixture_verifies() {
    for name in [
        "fixture-a.json",
        "fig3.json",
        "reset-loop.json",
        "self-loop.json",
    ] {
        let o = ptg(&["solve", &fixture(name), "--verify"]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stderr(&o));
    }
}

#[test]
fn corrupted_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixture("fixture-a.json")).unwrap();
    let cases = [
        ("truncated.json", text[..60].to_owned(), "E001"),
        ("negative.json", text.replace("\"1/2\"", "\"-1\""), "E023"),
        (
            "dangling.json",
            text.replace("\"to\": \"k2a\"", "\"to\": \"nowhere\""),
            "E011",
        ),
    ];
    for (name, body, code) in cases {
        let path = dir.path().join(name);
        std::fs::write(&path, body).unwrap();
        let o = ptg(&["solve", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{name}");
        assert!(stderr(&o).contains(code), "{name}: {}", stderr(&o));
        assert!(!stderr(&o).contains("panicked"));
    }
    let o = ptg(&["solve", "/definitely/not/here.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn plot_of_untimed_game_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let plot = dir.path().join("plot.csv");
    let o = ptg(&[
        "solve",
        &fixture("self-loop.json"),
        "--plot",
        plot.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fast_numerics_only_changes_plots() {
    let dir = tempfile::tempdir().unwrap();
    let plot = dir.path().join("plot.csv");
    let o = Command::new(env!("CARGO_BIN_EXE_ptg"))
        .args([
            "solve",
            &fixture("fixture-a.json"),
            "--plot",
            plot.to_str().unwrap(),
        ])
        .env("PTG_FAST_NUMERICS", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"1/2\""));
    assert!(std::fs::read_to_string(&plot)
        .unwrap()
        .contains("k1,0,0.5,1.5,1\n"));
}

#[test]
fn fuzz_reports_agreement() {
    let o = ptg(&["fuzz", "--seed", "1", "--count", "50"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("50 agree, 0 disagree"));
}

#[test]
fn bench_families_run() {
    for family in ["reach", "automata", "random"] {
        let o = ptg(&["bench", "--family", family, "--size", "5", "--count", "2"]);
        assert_eq!(o.status.code(), Some(0), "{family}: {}", stderr(&o));
        assert_eq!(stdout(&o).lines().count(), 3);
    }
    let o = ptg(&["bench", "--family", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
}
