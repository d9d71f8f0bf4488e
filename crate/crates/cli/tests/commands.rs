use std::path::PathBuf;
use std::process::{Command, Output};

use posetcode::decomp::DecompositionReport;
use posetcode::format::parse_poset;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_posetcode"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn canonicalize_worked_example() {
    let out = stdout(&[
        "canonicalize",
        "--poset",
        &data("p1.poset"),
        "--code",
        &data("g.code"),
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["degree"], 2);
    assert_eq!(v["profile"], serde_json::json!([[1, 1], [4, 2], [1, 1]]));
    assert_eq!(v["canonical"], true);

    let out = stdout(&[
        "profile",
        "--poset",
        &data("p2.poset"),
        "--code",
        &data("g.code"),
    ]);
    assert_eq!(out, "[(1,1),(2,1),(2,1),(1,1)]\n");
    let out = stdout(&[
        "degree",
        "--poset",
        &data("p2.poset"),
        "--code",
        &data("g.code"),
    ]);
    assert_eq!(out, "3\n");
}

#[test]
fn weight_under_a_chain() {
    assert_eq!(
        stdout(&["weight", "--poset", &data("chain3.poset"), "--vec", "0 1 1"]),
        "3\n"
    );
    assert_eq!(
        stdout(&[
            "weight",
            "--poset",
            &data("chain3.poset"),
            "--vec",
            "1 0 0",
            "--vec",
            "0 2 0"
        ]),
        "1\n2\n"
    );
}

#[test]
fn selftest_passes() {
    let out = run(&["selftest"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text
        .lines()
        .all(|l| l.starts_with("PASS") || l.starts_with("    ")));
}

#[test]
fn decomposition_json_round_trips() {
    for poset in ["p1.poset", "p2.poset"] {
        let out = stdout(&[
            "decompose",
            "--poset",
            &data(poset),
            "--code",
            &data("g.code"),
            "--json",
        ]);
        let report: DecompositionReport = serde_json::from_str(&out).unwrap();
        let (d, witness) = report.to_decomposition().unwrap();
        assert_eq!(d.profile().entries(), report.profile);
        assert_eq!(witness.rows(), 6);
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["selftest", "--seed", "5", "--json"];
    assert_eq!(stdout(&args), stdout(&args));
    let args = [
        "decompose",
        "--poset",
        &data("p2.poset"),
        "--code",
        &data("g.code"),
        "--json",
    ];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn neighbors_are_hierarchical_posets() {
    let out = stdout(&["neighbors", "--poset", &data("p1.poset")]);
    let mut parts = out.split("# lower\n");
    let upper = parse_poset(parts.next().unwrap()).unwrap();
    let lower = parse_poset(parts.next().unwrap()).unwrap();
    assert!(upper.is_hierarchical() && lower.is_hierarchical());
    assert_eq!(upper.n(), 6);
}

#[test]
fn radius_and_decoding() {
    let (p, c) = (data("star.poset"), data("star.code"));
    assert_eq!(
        stdout(&["radius", "--exact", "--poset", &p, "--code", &c]),
        "3\n"
    );
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["radius", "--poset", &p, "--code", &c, "--json"])).unwrap();
    assert_eq!(v, serde_json::json!({"lower": 3, "upper": 3, "exact": 3}));
    assert_eq!(stdout(&["mindist", "--poset", &p, "--code", &c]), "4\n");
    for decoder in ["full", "alg1", "alg2"] {
        let out = stdout(&[
            "decode",
            "--poset",
            &p,
            "--code",
            &c,
            "--vec",
            "1 0 0 1",
            "--vec",
            "1 1 0 0",
            "--decoder",
            decoder,
        ]);
        assert_eq!(out, "1 0 0 1 0\n0 0 0 0 2\n", "{decoder}");
    }
}

#[test]
fn table_plan_reports_sizes() {
    let out = stdout(&[
        "table-plan",
        "--poset",
        &data("p1.poset"),
        "--code",
        &data("g.code"),
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["full"], 8);
    assert_eq!(v["n"], 6);
}

#[test]
fn exit_codes() {
    let out = run(&[
        "degree",
        "--poset",
        &data("chain3.poset"),
        "--code",
        &data("g.code"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n=3"));

    let out = run(&[
        "radius",
        "--exact",
        "--poset",
        &data("p1.poset"),
        "--code",
        &data("g.code"),
        "--budget",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["weight", "--poset", &data("missing.poset"), "--vec", "0"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn parse_errors_carry_positions() {
    let dir = std::env::temp_dir().join(format!("posetcode-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.poset");
    std::fs::write(&bad, "poset n=3\n1 x\n").unwrap();
    let out = run(&["neighbors", "--poset", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2, column 3"));
    std::fs::remove_dir_all(&dir).unwrap();
}
