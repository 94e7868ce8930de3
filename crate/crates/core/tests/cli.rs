use std::path::Path;
use std::process::{Command, Output};

use harborth::{ElementSet, GroupSpec};

fn harborth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_harborth"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_fixture(dir: &Path, name: &str, n: u64, residues: &[u64]) -> String {
    let g = GroupSpec::cyclic(n).unwrap();
    let path = dir.join(name);
    ElementSet::from_residues(&g, residues)
        .unwrap()
        .write_set_file(&path)
        .unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn verify_reports_freeness() {
    let dir = tempfile::tempdir().unwrap();
    let free = write_fixture(dir.path(), "fixture_c12_k3.txt", 12, &[1, 2, 5, 7, 10, 11]);
    let o = harborth(&["verify", "--set", &free, "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("k-zero-sum-free: true"));

    let not_free = write_fixture(dir.path(), "bad.txt", 12, &[1, 2, 9]);
    let o = harborth(&["verify", "--set", &not_free, "--k", "3"]);
    assert_eq!(o.status.code(), Some(5));
    assert!(stdout(&o).contains("k-zero-sum-free: false"));
}

#[test]
fn exact_json_schema_and_witness_file() {
    let dir = tempfile::tempdir().unwrap();
    let witness = dir.path().join("w.txt");
    let o = harborth(&[
        "exact",
        "--group",
        "4,2",
        "--k",
        "3",
        "--format",
        "json",
        "--no-timestamp",
        "--witness-out",
        witness.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for key in [
        "command",
        "group",
        "k",
        "max_free_size",
        "harborth",
        "exhausted",
        "nodes_explored",
        "symmetry",
        "witness",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["group"], "2,4");
    let summary: harborth::solver::ExactSummary = serde_json::from_value(v.clone()).unwrap();
    let w = ElementSet::read_set_file(&witness).unwrap();
    assert_eq!(w.len(), summary.max_free_size);
    assert!(harborth::is_k_zero_sum_free(&w, 3).unwrap());
}

#[test]
fn reports_are_reproducible() {
    let args = [
        "exact",
        "--group",
        "16",
        "--k",
        "5",
        "--format",
        "csv",
        "--no-timestamp",
    ];
    let a = harborth(&args);
    let b = harborth(&[&args[..], &["--workers", "3"]].concat());
    assert_eq!(a.stdout, b.stdout);
    let header = stdout(&a).lines().next().unwrap().to_string();
    assert_eq!(
        header,
        "group,k,max_free_size,harborth,exhausted,nodes_explored,symmetry,witness,timestamp"
    );

    let with_ts = harborth(&["bounds", "--group", "13", "--k", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&with_ts)).unwrap();
    assert!(v["timestamp"].is_u64());
}

#[test]
fn construct_writes_set_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.txt");
    let o = harborth(&[
        "construct",
        "--name",
        "prime_cyclic_extremal",
        "--p",
        "13",
        "--k",
        "4",
        "--format",
        "json",
        "--no-timestamp",
        "--witness-out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let r = &v["results"][0];
    assert_eq!(r["claimed_size"], 6);
    assert_eq!(r["implied_lower_bound"], 7);
    assert_eq!(r["verified"], true);
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text, "group: 13\n0\n1\n9\n10\n11\n12\n");

    let lifted = harborth(&[
        "construct",
        "--name",
        "double_lift",
        "--set",
        out.to_str().unwrap(),
        "--k",
        "4",
        "--format",
        "csv",
        "--no-timestamp",
    ]);
    assert_eq!(
        lifted.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&lifted.stderr)
    );
    assert!(stdout(&lifted).contains("double_lift,26,4,6,7,true"));
}

#[test]
fn tables_match() {
    for which in ["remark313", "prop315", "thm39", "harborth_classical"] {
        let o = harborth(&["table", which, "--no-timestamp"]);
        assert_eq!(o.status.code(), Some(0), "{which}: {}", stdout(&o));
        assert!(!stdout(&o).contains("NO"));
    }
    let o = harborth(&["table", "remark313", "--format", "csv", "--no-timestamp"]);
    let rows: Vec<String> = stdout(&o).lines().skip(1).map(String::from).collect();
    assert_eq!(
        rows,
        [
            "remark313,7,6,7,7,7,7,true,",
            "remark313,11,8,10,10,10,10,true,",
            "remark313,13,8,10,10,10,10,true,",
        ]
    );
}

#[test]
fn usage_errors() {
    let o = harborth(&["exact", "--group", "0", "--k", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--group"));
    let o = harborth(&["bounds", "--group", "7", "--k", "8"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--k"));
    let o = harborth(&["sumset", "--set", "/no/such/file", "--k", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = harborth(&["table", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sumset_reports_restricted_sums() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_fixture(dir.path(), "x.txt", 7, &[1, 2, 3]);
    let o = harborth(&[
        "sumset",
        "--set",
        &path,
        "--k",
        "2",
        "--format",
        "json",
        "--no-timestamp",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["sums"], serde_json::json!([[3], [4], [5]]));
    assert_eq!(v["dsh"]["bound"], 3);
    assert_eq!(v["dsh"]["holds"], true);
}
