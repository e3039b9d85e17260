use std::path::PathBuf;
use std::process::{Command, Output};

fn hbetti(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hbetti")).args(args).output().expect("run hbetti")
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Golden files are produced with `--jobs 1`; every width must reproduce them.
fn check_golden(args: &[&str], name: &str, code: i32) {
    for jobs in ["1", "4"] {
        let mut full = vec!["--jobs", jobs];
        full.extend_from_slice(args);
        let o = hbetti(&full);
        assert_eq!(o.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(stdout(&o), golden(name), "{args:?} with --jobs {jobs}");
    }
}

#[test]
fn hopf_betti_json() {
    check_golden(&["betti", "--braid", "1 1", "--strands", "2", "--format", "json"], "hopf_betti.json", 0);
    let v: serde_json::Value = serde_json::from_str(&golden("hopf_betti.json")).unwrap();
    let rows: Vec<[i64; 5]> = v["betti"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| ["p", "q", "j", "k", "value"].map(|f| r[f].as_i64().unwrap()))
        .collect();
    assert_eq!(rows, [[0, 0, 1, 1, 1], [0, 2, 3, -3, 1], [0, 4, 1, -3, 1], [1, 2, 1, 1, 1]]);
    assert_eq!(v["pd"], 1);
}

#[test]
fn other_goldens() {
    check_golden(&["betti", "--braid", "1 1 1", "--strands", "2", "--format", "csv"], "trefoil_betti.csv", 0);
    check_golden(
        &["betti", "--braid", "1 1", "--strands", "2", "--reduced", "--format", "text"],
        "hopf_reduced.txt",
        0,
    );
    check_golden(&["poincare", "--braid", "1 1", "--strands", "2", "--format", "text"], "hopf_poincare.txt", 0);
    check_golden(&["homfly", "--braid", "1 1 1", "--strands", "2"], "trefoil_homfly.txt", 0);
}

#[test]
fn split_check_hopf_pair() {
    check_golden(
        &["split-check", "--braid", "1 1 3 3", "--strands", "4", "--format", "text"],
        "hopf_hopf_split.txt",
        0,
    );
}

#[test]
fn fixtures_report_the_displayed_table_mismatch() {
    check_golden(&["fixtures"], "fixtures.txt", 1);
}

#[test]
fn negative_letters_are_out_of_scope() {
    let o = hbetti(&["betti", "--braid", "-1", "--strands", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("negative crossings unsupported"));
    assert!(o.stdout.is_empty());
}

#[test]
fn usage_errors() {
    let o = hbetti(&["betti", "--braid", "1 x", "--strands", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = hbetti(&["betti", "--braid", "3", "--strands", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = hbetti(&["betti", "--braid", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oracle_check_verdicts() {
    let o = hbetti(&["oracle-check", "--braid", "1 1 1", "--strands", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    // the split union is not predicted by the fitted normalization
    let o = hbetti(&["oracle-check", "--braid", "1 1", "--strands", "3", "--format", "text"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("PASS euler identities"));
    assert!(text.contains("FAIL homfly prediction"));
}

#[test]
fn out_flag_writes_the_report() {
    let dir = std::env::temp_dir().join(format!("hbetti-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("hopf.json");
    let o = hbetti(&["--out", file.to_str().unwrap(), "betti", "--braid", "1 1", "--strands", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&file).unwrap(), golden("hopf_betti.json"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn module_and_dump_commands() {
    let dir = std::env::temp_dir().join(format!("hbetti-mod-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("m.txt");
    std::fs::write(&file, "ring: X1 X2\ndegrees: 0\nrelation: X1\nrelation: X2\n").unwrap();
    let o = hbetti(&["module", file.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(stdout(&o), "p,q,value\n0,0,1\n1,2,2\n2,4,1\n");
    std::fs::remove_dir_all(&dir).unwrap();

    let o = hbetti(&["diagram", "--braid", "1 -1", "--strands", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["components"], 2);
    let o = hbetti(&["complex", "--braid", "1 1", "--strands", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["positions"].as_array().unwrap().len(), 9);
}
