use std::process::{Command, Output};

use serde_json::Value;

fn spinsv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinsv")).args(args).env_remove("SPINSV_VOL_TABLE").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn fixture() -> String {
    format!("{}/../core/tests/data/volumes.json", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn sergeev_three_text_table() {
    let out = spinsv(&["chartable", "--group", "sergeev", "--degree", "3", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "Se_3 | e | C_{(123)} | C_{(123),1}\n96 | 1 | 8 | 8\n3+ | 4 | 1 | +i√3\n3- | 4 | 1 | -i√3\n2,1 | 4 | -2 | 0\n"
    );
}

#[test]
fn chartable_json_and_csv() {
    let v = json(&spinsv(&["chartable", "--group", "spinalt", "--degree", "4"]));
    assert_eq!(v["order"], 24);
    assert_eq!(v["characters"].as_array().unwrap().len(), 3);
    let csv = spinsv(&["chartable", "--group", "sergeev0", "--degree", "4", "--format", "csv"]);
    assert!(String::from_utf8(csv.stdout).unwrap().starts_with("Se0_4,e,"));
}

#[test]
fn hurwitz_both_routes() {
    let out = spinsv(&["hurwitz", "--degree", "3", "--profile", "3", "--weight", "pminus1", "--route", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["character"], "-10/3");
    assert_eq!(v["bruteforce"], "-10/3");
    assert_eq!(v["match"], true);
    let single = json(&spinsv(&["hurwitz", "--degree", "3", "--profile", "3"]));
    assert_eq!(single["value"], "-3");
    assert_eq!(single["route"], "character");
}

#[test]
fn bracket_report() {
    let v = json(&spinsv(&["bracket", "--slots", "p1|p1"]));
    assert_eq!(v["weight"], 4);
    assert_eq!(v["L"], "1/12");
    assert_eq!(v["routes_agree"], true);
    assert_eq!(v["q_expansion"].as_array().unwrap().len(), 21);
    assert_eq!(v["command"], "bracket");
    assert!(v["elapsed_seconds"].is_f64());
    let m = json(&spinsv(&["bracket", "--slots", "p1", "--pminus1", "--q-order", "5"]));
    assert_eq!(m["L"], "1/24");
    assert_eq!(m["q_expansion"].as_array().unwrap().len(), 6);
}

#[test]
fn svconst_modes() {
    let v = json(&spinsv(&["svconst", "--mu", "3,1", "--route", "both", "--emit", "volume-free"]));
    assert_eq!(v["numerator"]["bracket"], "1/16");
    assert_eq!(v["numerator"]["genfun"], "1/16");
    assert_eq!(v["routes_agree"], true);
    let out = spinsv(&["svconst", "--mu", "3,1", "--emit", "constant", "--vol-table", &fixture()]);
    let c = json(&out);
    assert_eq!(c["c0"], "-10/3");
    assert_eq!(c["unit"], "pi^-2");
    assert_eq!(c["c_i"], serde_json::json!(["-10", "-10/3"]));
    // without a table the constant needs a volume
    assert_eq!(spinsv(&["svconst", "--mu", "3,1", "--emit", "constant"]).status.code(), Some(1));
}

#[test]
fn volume_table_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_spinsv"))
        .args(["graphs", "--mu", "2,2", "--what", "d1"])
        .env("SPINSV_VOL_TABLE", fixture())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["d1"], "-1/12");
}

#[test]
fn graphs_queries() {
    assert_eq!(json(&spinsv(&["volpm", "--mu", "3"]))["vol_pm"], "-1/640");
    assert_eq!(json(&spinsv(&["graphs", "--mu", "3,1", "--what", "d1pm"]))["d1pm"], "1/16");
    assert_eq!(json(&spinsv(&["graphs", "--mu", "3,1", "--what", "chains"]))["chain_sum"], "3/8");
    let v = json(&spinsv(&["graphs", "--mu", "3,1", "--what", "check-mainint"]));
    assert_eq!(v["passed"], true);
    let out = spinsv(&["graphs", "--mu", "3,1", "--what", "check-expansion", "--sector", "non-spin", "--vol-table", &fixture()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["sector"], "non-spin");
}

#[test]
fn census_report() {
    let v = json(&spinsv(&["census", "--degree", "3", "--profile", "3"]));
    assert_eq!(v["tuples"], 18);
    assert_eq!(v["cylinders"], 30);
    assert_eq!(v["rows"][0]["f"], serde_json::json!([2]));
}

#[test]
fn verify_single_suite_and_csv() {
    let out = spinsv(&["verify", "--suite", "census"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
    let csv = spinsv(&["verify", "--suite", "svconst", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("suite,check,passed,known_deviation,detail\n"));
    // the literal (1,1) reading is reported as a known deviation
    assert!(text.lines().any(|l| l.contains("(1,1)") && l.contains(",false,true,")));
}

#[test]
fn verify_all_passes() {
    let out = spinsv(&["verify", "--suite", "all", "--max-weight", "10", "--vol-table", &fixture()]);
    let v = json(&out);
    assert_eq!(out.status.code(), Some(0), "{v}");
    assert_eq!(v["suites"].as_array().unwrap().len(), 11);
}

#[test]
fn exit_codes() {
    assert_eq!(spinsv(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(spinsv(&["chartable", "--group", "sergeev", "--degree", "3", "--colour"]).status.code(), Some(64));
    assert_eq!(spinsv(&["--help"]).status.code(), Some(0));
    // domain errors
    assert_eq!(spinsv(&["chartable", "--group", "sergeev", "--degree", "9"]).status.code(), Some(1));
    assert_eq!(spinsv(&["volpm", "--mu", "2"]).status.code(), Some(1));
    assert_eq!(spinsv(&["verify", "--suite", "nope"]).status.code(), Some(1));
    // parse errors
    assert_eq!(spinsv(&["volpm", "--mu", "three"]).status.code(), Some(65));
    assert_eq!(spinsv(&["chartable", "--group", "monster", "--degree", "3"]).status.code(), Some(65));
    assert_eq!(spinsv(&["bracket", "--slots", "p2"]).status.code(), Some(65));
    let dir = std::env::temp_dir().join(format!("spinsv-bad-{}.json", std::process::id()));
    std::fs::write(&dir, "{\"volumes\": {\"[1]\": \"1/0\"}}").unwrap();
    let out = spinsv(&["graphs", "--mu", "1,1", "--what", "d1", "--vol-table", dir.to_str().unwrap()]);
    std::fs::remove_file(&dir).unwrap();
    assert_eq!(out.status.code(), Some(65));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
    // a table that lacks a needed volume
    let out = spinsv(&["graphs", "--mu", "9,9", "--what", "d1", "--vol-table", &fixture()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("volume unavailable"));
}

#[test]
fn reports_are_deterministic() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("elapsed_seconds");
        v
    };
    let a = strip(json(&spinsv(&["bracket", "--slots", "p1*p3|p1"])));
    let b = strip(json(&spinsv(&["bracket", "--slots", "p1*p3|p1"])));
    assert_eq!(a, b);
}
