use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn kronlab(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_kronlab"))
        .args(args)
        .env_remove("KRONLAB_FORMAT")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(input) = stdin {
            pipe.write_all(input.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = kronlab(args, None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn terms(sum: &Value) -> Vec<(String, String)> {
    sum["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (t["partition"].to_string(), t["coeff"].as_str().unwrap().to_string()))
        .collect()
}

#[test]
fn chartable_ascii() {
    let out = kronlab(&["chartable", "4", "--format=ascii"], None);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<Vec<&str>> =
        text.lines().skip(2).map(|l| l.split('|').nth(1).unwrap().split_whitespace().collect()).collect();
    assert_eq!(
        rows,
        vec![
            vec!["1", "1", "1", "1", "1"],
            vec!["-1", "0", "-1", "1", "3"],
            vec!["0", "-1", "2", "0", "2"],
            vec!["1", "0", "-1", "-1", "3"],
            vec!["-1", "1", "1", "-1", "1"],
        ]
    );
}

#[test]
fn chartable_json_schema() {
    let v = json(&["chartable", "3"]);
    assert_eq!(v["schema"], "kronlab/1");
    assert_eq!(v["table"]["n"], 3);
}

#[test]
fn kron_both_agree() {
    let v = json(&["kron", "[3,1]", "[3,1]", "--method=both"]);
    assert_eq!(v["agree"], true);
    let expected: Vec<(String, String)> =
        ["[4]", "[3,1]", "[2,2]", "[2,1,1]"].iter().map(|p| (p.to_string(), "1".to_string())).collect();
    assert_eq!(terms(&v["results"]["operator"]), expected);
    assert_eq!(terms(&v["results"]["character"]), expected);
}

#[test]
fn kron_trivial_factor() {
    let v = json(&["kron", "[4]", "[3,1]"]);
    assert_eq!(terms(&v["result"]), vec![("[3,1]".to_string(), "1".to_string())]);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(kronlab(&["kron", "[4]", "[2,1]"], None).status.code(), Some(2));
    assert_eq!(kronlab(&["kron", "[3,x]", "[2]"], None).status.code(), Some(2));
    assert_eq!(kronlab(&["power", "4", "2", "--method", "bogus"], None).status.code(), Some(2));
    assert_eq!(kronlab(&["formula", "4", "3", "[2,2]"], None).status.code(), Some(2));
    assert_eq!(kronlab(&["bijection"], Some("[4] [2,2]\n")).status.code(), Some(2));
}

#[test]
fn limits_exit_3() {
    assert_eq!(kronlab(&["verify", "--n", "20", "--k", "1"], None).status.code(), Some(3));
    assert_eq!(kronlab(&["tableaux", "list", "[5]", "[3,2]", "6", "--max-list", "3"], None).status.code(), Some(3));
    assert_eq!(kronlab(&["power", "5", "9", "--max-k", "4"], None).status.code(), Some(3));
}

#[test]
fn power_all_routes() {
    let v = json(&["power", "4", "2", "--method", "all"]);
    assert_eq!(v["agree"], true);
    let expected: Vec<(String, String)> =
        ["[4]", "[3,1]", "[2,2]", "[2,1,1]"].iter().map(|p| (p.to_string(), "1".to_string())).collect();
    for route in ["operator", "character", "tableaux", "formula"] {
        assert_eq!(terms(&v["results"][route]), expected, "{route}");
    }
    assert_eq!(v["outside_regime"].as_array().unwrap().len(), 0);
}

#[test]
fn tableaux_count_and_list() {
    let v = json(&["tableaux", "count", "[4]", "[2,2]", "2"]);
    assert_eq!(v["count"], "1");
    let v = json(&["tableaux", "list", "[4]", "[3,1]", "2"]);
    assert_eq!(v["tableaux"], serde_json::json!(["[4] [3,1] [3,1]*2:1"]));
}

#[test]
fn bijection_from_stdin() {
    let walk = "[6] [5,1] [5,1]*2:1 [4,2] [3,2,1] [4,1,1] [3,2,1] [2,2,2] [2,2,1,1] [3,2,1] [2,2,2] [3,2,1] [2,2,2]";
    let out = kronlab(&["bijection"], Some(&format!("# example\n{walk}\n\n[4] [3,1]\n")));
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 2);
    assert_eq!(entries[0]["pair"]["display"]["permutation"], "(4)(5,3)(8,6)(9,2,1)(10)(11,7)(12)");
    assert_eq!(entries[0]["pair"]["tableau"]["rows"], serde_json::json!([[4, 10], [8, 12]]));
    assert_eq!(entries[0]["in_regime"], false);
    assert_eq!(entries[0]["round_trip"], true);
    assert_eq!(entries[1]["line"], 4);
    assert_eq!(entries[1]["in_regime"], true);

    let out = kronlab(&["bijection", "--inverse"], Some("6 ; 8,12/4,10 ; (4)(5,3)(8,6)(9,2,1)(10)(11,7)(12)\n"));
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["entries"][0]["walk"], walk);
}

#[test]
fn bijection_from_file() {
    let dir = std::env::temp_dir().join(format!("kronlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("walks.txt");
    std::fs::write(&path, "[5] [4,1] [4,1]*2:1 [3,2]\n").unwrap();
    let out = kronlab(&["bijection", path.to_str().unwrap(), "--format", "ascii"], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("round trip: ok"));
    assert_eq!(kronlab(&["bijection", dir.join("missing").to_str().unwrap()], None).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn formula_and_egf() {
    let v = json(&["formula", "6", "2", "[6]"]);
    assert_eq!(v["multiplicity"], "1");
    let v = json(&["egf", "[]", "--order", "8", "--check"]);
    assert_eq!(v["passed"], true);
    assert_eq!(
        v["egf_coefficients"].as_array().unwrap()[..4],
        serde_json::json!(["1", "0", "1", "1"]).as_array().unwrap()[..]
    );
    let rows = v["report"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r["ok"] == true));
    assert_eq!(json(&["egf", "[2,1]", "--order", "8", "--check"])["passed"], true);
}

#[test]
fn verify_sweeps() {
    for (n, k) in [("2", "0"), ("5", "4"), ("6", "5")] {
        let v = json(&["verify", "--n", n, "--k", k]);
        assert_eq!(v["passed"], true, "n={n} k={k}");
    }
}

#[test]
fn format_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_kronlab"))
        .args(["kron", "[2]", "[1,1]"])
        .env("KRONLAB_FORMAT", "ascii")
        .output()
        .unwrap();
    assert_eq!(stdout(&out), "s[1,1]\n");
}

#[test]
fn output_is_deterministic() {
    let a = kronlab(&["power", "6", "3", "--method", "all"], None);
    let b = kronlab(&["power", "6", "3", "--method", "all"], None);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn operator_display() {
    let out = kronlab(&["operator", "[1]", "--format", "ascii"], None);
    assert_eq!(stdout(&out), "s[1] s[1]^⊥ - 1\n");
}
