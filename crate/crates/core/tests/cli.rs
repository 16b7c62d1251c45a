use std::path::Path;
use std::process::{Command, Output};

const TWO_SQUARES: &str = r#"{
  "num_colors": 2,
  "objects": [
    {"color": 0, "vertices": [["0", "0"], ["1", "0"], ["1", "1"], ["0", "1"]]},
    {"color": 1, "vertices": [["3", "0"], ["4", "0"], ["4", "1"], ["3", "1"]]}
  ]
}"#;

fn geomcut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geomcut"))
        .args(args)
        .env_remove("GEOMCUT_ORACLE_BUDGET")
        .output()
        .expect("run geomcut")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn solve_and_validate_two_squares() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "two.json", TWO_SQUARES);
    let fence = dir.path().join("fence.json");
    let svg = dir.path().join("fence.svg");
    let o = geomcut(&[
        "solve",
        &inst,
        "-o",
        fence.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{o:?}");
    assert_eq!(stdout(&o), "4.000000000\n");
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<svg"));

    let o = geomcut(&["validate", &inst, "--fence", fence.to_str().unwrap()]);
    assert!(o.status.success(), "{o:?}");
    assert!(stdout(&o).contains("fence length 4.000000000"));
}

#[test]
fn single_object_costs_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(
        dir.path(),
        "one.json",
        r#"{"num_colors": 2, "objects": [{"color": 1, "vertices": [["0","0"],["2","0"],["0","2"]]}]}"#,
    );
    let o = geomcut(&["solve", &inst]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0.000000000\n");
}

#[test]
fn generated_lower_bound_stats() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lb.json");
    let o = geomcut(&["gen", "lower-bound", "--k", "1", "-o", path.to_str().unwrap()]);
    assert!(o.status.success(), "{o:?}");
    let o = geomcut(&["stats", path.to_str().unwrap()]);
    let text = stdout(&o);
    assert!(text.contains("objects 6\n") && text.contains("corners 24\n"), "{text}");
    assert!(text.contains("faces 211\n"), "{text}");

    // Three colors: exact2 is refused, an exhaustive run over budget too.
    let o = geomcut(&["solve", path.to_str().unwrap(), "--method", "exact2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = geomcut(&["solve", path.to_str().unwrap(), "--method", "bruteforce"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exit_codes_for_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{\"num_colors\": 2, \"objects\": [}");
    let o = geomcut(&["solve", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));

    let inst = write(dir.path(), "two.json", TWO_SQUARES);
    let o = geomcut(&["solve", &inst, "--method", "bruteforce", "--oracle-budget", "10"]);
    assert_eq!(o.status.code(), Some(2));
    let o = geomcut(&["solve", &inst, "--method", "nope"]);
    assert_eq!(o.status.code(), Some(2), "clap usage errors exit 2");
}

#[test]
fn steiner_dp_on_unit_star() {
    let o = geomcut(&["steiner-dp", "--tree", "(L:1,L:1):1"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("1.000000000\n"));
    let o = geomcut(&["steiner-dp", "--tree", "(L:1,L:1"]);
    assert_eq!(o.status.code(), Some(1));
}
