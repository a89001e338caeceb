use std::path::Path;
use std::process::{Command, Output};

use qcell::rigidity::symmetric_matrices_pipeline;
use serde_json::Value;

fn qcell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcell"))
        .args(args)
        .env_remove("QCELL_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("not JSON ({e}): {}", stdout(o)))
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn analyze_exit_codes() {
    let g2 = qcell(&["analyze", "G2", "1"]);
    assert_eq!(code(&g2), 0);
    assert!(stdout(&g2).contains("descriptor: (K^×)^2"));

    let a3 = qcell(&["analyze", "A3", "1"]);
    assert_eq!(code(&a3), 2);
    assert!(stdout(&a3).contains("A_q(K^3)"));

    let f4 = qcell(&["analyze", "F4", "1,2"]);
    assert_eq!(code(&f4), 2);

    for bad in [&["analyze", "X9", "1"][..], &["analyze", "G2", "a,b"], &["analyze", "G2", "3"]] {
        let o = qcell(bad);
        assert_eq!(code(&o), 1, "{bad:?}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("qcell: "));
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn analyze_formats() {
    let o = qcell(&["analyze", "B6", "2,5", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["type"], "B6");
    assert_eq!(v["J"], serde_json::json!([2, 5]));
    assert_eq!(v["theta_degrees"], serde_json::json!([4, 8, 10, 12, 14, 7]));
    assert_eq!(v["conclusion"], "diagonal_on_degree_one");
    assert_eq!(v["aut_descriptor"], "(K^×)^6");

    let csv = stdout(&qcell(&["analyze", "B6", "2,5", "--format", "csv"]));
    let mut r = csv::Reader::from_reader(csv.as_bytes());
    let head = r.headers().unwrap().clone();
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 1);
    let field = |name: &str| rows[0][head.iter().position(|h| h == name).unwrap()].to_string();
    assert_eq!(field("type"), "B6");
    assert_eq!(field("theta_degrees"), "4 8 10 12 14 7");
    assert_eq!(field("degree_one"), "15");
    assert_eq!(field("separated"), "15");
}

/// The text report shows the same facts as the JSON one.
#[test]
fn text_and_json_agree() {
    for (t, j) in [("G2", "2"), ("F4", "3"), ("C4", "4"), ("B6", "2,5")] {
        let v = json(&qcell(&["analyze", t, j, "--format", "json"]));
        let text = stdout(&qcell(&["analyze", t, j]));
        let ints = |x: &Value| x.as_array().unwrap().iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ");
        assert!(text.contains(&format!("theta degrees: {}", ints(&v["theta_degrees"]))), "{t} {j}");
        assert!(text.contains(&format!("descriptor: {}", v["aut_descriptor"].as_str().unwrap())));
        for r in v["degree_one_roots"].as_array().unwrap() {
            assert!(text.contains(r["label"].as_str().unwrap()));
        }
        let n = v["separated_roots"].as_array().unwrap().len();
        assert!(text.contains(&format!("separated ({n})")), "{t} {j}");
        let conclusion = v["conclusion"].as_str().unwrap().replace('_', " ");
        assert!(text.contains(&format!("conclusion: {conclusion}")) || text.contains(&format!("conclusion: {}", v["conclusion"].as_str().unwrap())));
    }

    let tv = json(&qcell(&["tables", "--format", "json"]));
    let tt = stdout(&qcell(&["tables"]));
    let rows = tv.as_array().unwrap();
    assert_eq!(tt.lines().count(), rows.len());
    for (row, line) in rows.iter().zip(tt.lines()) {
        let degs: Vec<String> = row["theta_degrees"].as_array().unwrap().iter().map(|d| d.to_string()).collect();
        assert!(line.starts_with(row["type"].as_str().unwrap()));
        assert!(line.ends_with(&format!("[{}]", degs.join(", "))), "{line}");
    }
}

#[test]
fn json_is_deterministic() {
    for args in [&["analyze", "F4", "2,4", "--format", "json"][..], &["tables", "--format", "json"], &["enumerate", "--max-rank", "4", "--format", "json"]] {
        let a = qcell(args);
        let b = qcell(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let a = qcell(&["enumerate", "--max-rank", "5", "--format", "json", "--jobs", "1"]);
    let b = qcell(&["enumerate", "--max-rank", "5", "--format", "json", "--jobs", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn enumerate_small_ranks() {
    let o = qcell(&["enumerate", "--max-rank", "2", "--format", "json"]);
    let v = json(&o);
    let cases = v["cases"].as_array().unwrap();
    let has = |t: &str, j: u64| cases.iter().any(|c| c["type"] == t && c["j"] == serde_json::json!([j]));
    assert!(has("G2", 1) && has("G2", 2));
    let diff_empty = v["diff"]["missing"].as_array().unwrap().is_empty() && v["diff"]["extra"].as_array().unwrap().is_empty();
    assert_eq!(code(&o), if diff_empty { 0 } else { 2 });

    let v = json(&qcell(&["enumerate", "--max-rank", "3", "--format", "json"]));
    assert!(v["cases"].as_array().unwrap().iter().all(|c| !c["type"].as_str().unwrap().starts_with('A')));

    let csv = stdout(&qcell(&["enumerate", "--max-rank", "3", "--format", "csv"]));
    assert!(csv.starts_with("type,J,status\n"));
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",found") || l.ends_with(",extra") || l.ends_with(",missing")));

    assert_eq!(code(&qcell(&["enumerate", "--max-rank", "1"])), 1);
}

#[test]
fn verify_suites() {
    let g2 = qcell(&["verify", "g2"]);
    assert_eq!(code(&g2), 0);
    assert!(stdout(&g2).starts_with("G2 relations: 15/15 pass"));

    let f4 = qcell(&["verify", "f4x", "--tier", "2", "--format", "json"]);
    assert_eq!(code(&f4), 0);
    let v = json(&f4);
    assert_eq!(v["tiers"].as_array().unwrap().len(), 2);
    let f4 = qcell(&["verify", "f4y"]);
    assert_eq!(code(&f4), 0, "{}", stdout(&f4));

    assert_eq!(code(&qcell(&["verify", "f4x", "--tier", "4"])), 1);
    assert_eq!(code(&qcell(&["verify", "nope"])), 2, "clap usage error");

    // budget exhaustion is its own exit code
    let tight = qcell(&["verify", "f4x", "--tier", "2", "--budget", "1"]);
    assert_eq!(code(&tight), 3, "{}", stdout(&tight));

    let sym = qcell(&["verify", "symmetric", "--n", "6"]);
    let holds = symmetric_matrices_pipeline(6).unwrap().symmetric.unwrap().claim_holds;
    assert_eq!(code(&sym), if holds { 0 } else { 1 });
    let text = stdout(&sym);
    assert!(text.starts_with("C6: steps (a) "));
    assert!(text.contains("(d) 3"));
}

fn only_file(dir: &Path) -> std::path::PathBuf {
    let files: Vec<_> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1, "{files:?}");
    files[0].clone()
}

#[test]
fn result_cache() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let run = |env: Option<&Path>, flag: Option<&Path>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_qcell"));
        c.args(["tables", "--max-n", "3", "--format", "json"]).env_remove("QCELL_CACHE");
        if let Some(d) = env {
            c.env("QCELL_CACHE", d);
        }
        if let Some(d) = flag {
            c.arg("--cache").arg(d);
        }
        c.output().unwrap()
    };

    let first = run(None, Some(flag_dir.path()));
    let file = only_file(flag_dir.path());
    let stored = std::fs::read_to_string(&file).unwrap();
    assert!(stored.starts_with("0\n"));
    // a doctored entry is what comes back, so the second run is a cache hit
    std::fs::write(&file, "0\n[\"cached\"]").unwrap();
    let second = run(None, Some(flag_dir.path()));
    assert_eq!(stdout(&second).trim(), "[\"cached\"]");

    // the environment variable wins over the flag
    let third = run(Some(env_dir.path()), Some(flag_dir.path()));
    assert_eq!(third.stdout, first.stdout);
    only_file(env_dir.path());

    // different arguments, different key
    Command::new(env!("CARGO_BIN_EXE_qcell"))
        .args(["tables", "--max-n", "4", "--format", "json", "--cache"])
        .arg(flag_dir.path())
        .env_remove("QCELL_CACHE")
        .output()
        .unwrap();
    assert_eq!(std::fs::read_dir(flag_dir.path()).unwrap().count(), 2);

    // analyze is never cached
    let d = tempfile::tempdir().unwrap();
    Command::new(env!("CARGO_BIN_EXE_qcell")).args(["analyze", "G2", "1", "--cache"]).arg(d.path()).output().unwrap();
    assert_eq!(std::fs::read_dir(d.path()).unwrap().count(), 0);
}

#[test]
fn help_and_version() {
    let o = qcell(&["--help"]);
    assert_eq!(code(&o), 0);
    let h = stdout(&o);
    for cmd in ["analyze", "enumerate", "verify", "tables"] {
        assert!(h.contains(cmd));
    }
    let v = qcell(&["--version"]);
    assert!(stdout(&v).contains(env!("CARGO_PKG_VERSION")));
}
