//! One line per acceptance criterion. Criteria listed in `KNOWN_FAIL` print
//! FAIL with the documented reason; every other criterion is asserted.

use std::process::Command;
use std::time::Instant;

use spinsv::exact::rat;
use spinsv::graphs::VolumeTable;
use spinsv::sergeev::{Family, MAX_TABLE_DEGREE};
use spinsv::svgf::{c0_numerator, c0_numerator_genfun_literal, odd_signatures, OddSignature, Route};
use spinsv::verify::{growth_ratio, run_suite, VerifyOptions};

/// Criteria that cannot pass as stated, with the reason (see README).
const KNOWN_FAIL: [(u32, &str); 2] = [
    (1, "eight printed Ã and Se₄⁰ cells repeat a split column instead of its conjugate and violate orthogonality"),
    (7, "the literal generating-function reading gives 1/4 at (1,1); both routes agree on -1/2"),
];

const APPENDIX: &str = include_str!("../../core/tests/data/appendix_tables.txt");

/// (group, row, column) of the printed cells that contradict orthogonality.
const ERRATA: [(&str, usize, usize); 8] = [
    ("A~_3", 2, 3),
    ("A~_3", 3, 3),
    ("A~_4", 3, 3),
    ("A~_4", 4, 3),
    ("Se0_4", 3, 3),
    ("Se0_4", 4, 3),
    ("A~_5", 2, 3),
    ("A~_5", 3, 3),
];

struct Outcome {
    passed: bool,
    detail: String,
}

fn report(n: u32, name: &str, limit_s: f64, run: impl FnOnce() -> Outcome) {
    let t = Instant::now();
    let o = run();
    let secs = t.elapsed().as_secs_f64();
    let known = KNOWN_FAIL.iter().find(|k| k.0 == n);
    let verdict = if o.passed { "PASS" } else { "FAIL" };
    match (o.passed, known) {
        (false, Some((_, why))) => println!("criterion {n:>2} {name}: FAIL (known: {why}) [{:.2}s] {}", secs, o.detail),
        _ => println!("criterion {n:>2} {name}: {verdict} [{secs:.2}s] {}", o.detail),
    }
    if known.is_none() {
        assert!(o.passed, "criterion {n} failed: {}", o.detail);
    }
    assert!(secs < limit_s, "criterion {n} took {secs:.1}s (limit {limit_s}s)");
}

fn suite(name: &str, opts: &VerifyOptions) -> Outcome {
    let r = run_suite(name, opts).unwrap();
    let fails: Vec<String> = r.failures().iter().map(|c| format!("{} ({})", c.name, c.detail)).collect();
    Outcome { passed: r.passed(), detail: format!("{} checks; failures: {fails:?}", r.checks.len()) }
}

fn table_text(group: &str, degree: u32) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_spinsv"))
        .args(["chartable", "--group", group, "--degree", &degree.to_string(), "--format", "text"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    String::from_utf8(out.stdout).unwrap()
}

fn criterion_1() -> Outcome {
    let printed: Vec<&str> = APPENDIX.split("\n\n").map(str::trim).filter(|b| !b.is_empty()).collect();
    let mut mismatched = Vec::new();
    let mut compared = 0;
    for (fam, flag) in [(Family::SpinSym, "spinsym"), (Family::SpinAlt, "spinalt"), (Family::Sergeev, "sergeev"), (Family::SergeevEven, "sergeev0")] {
        for d in 1..=MAX_TABLE_DEGREE {
            let ours = table_text(flag, d);
            let name = ours.split(" | ").next().unwrap().to_string();
            let Some(block) = printed.iter().find(|b| b.split(" | ").next() == Some(name.as_str())) else {
                // Ã₁ is printed only as "≃ S̃₁"
                assert_eq!((fam, d), (Family::SpinAlt, 1));
                assert_eq!(ours.replace("A~_1", "S~_1"), table_text("spinsym", 1));
                continue;
            };
            // the order of Se₄⁰ is 384; the printed 48 is a misprint
            let block = if name == "Se0_4" { block.replacen("48 |", "384 |", 1) } else { block.to_string() };
            for (i, (a, b)) in block.lines().zip(ours.lines()).enumerate() {
                for (j, (x, y)) in a.split(" | ").zip(b.split(" | ")).enumerate() {
                    compared += 1;
                    if x != y {
                        mismatched.push((name.clone(), i, j));
                    }
                }
            }
            assert_eq!(block.lines().count(), ours.lines().count(), "{name}");
        }
    }
    let mut errata: Vec<(String, usize, usize)> = ERRATA.iter().map(|e| (e.0.to_string(), e.1, e.2)).collect();
    errata.sort();
    mismatched.sort();
    // every disagreement must be one of the documented printed errors
    assert_eq!(mismatched, errata);
    Outcome { passed: mismatched.is_empty(), detail: format!("{compared} cells, {} differ (all documented errata)", mismatched.len()) }
}

fn criterion_6() -> Outcome {
    let mut o = suite("hurwitz", &VerifyOptions::default());
    let out = Command::new(env!("CARGO_BIN_EXE_spinsv"))
        .args(["hurwitz", "--degree", "3", "--profile", "3", "--weight", "pminus1", "--route", "both"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let one = Command::new(env!("CARGO_BIN_EXE_spinsv"))
        .args(["hurwitz", "--degree", "3", "--profile", "3", "--weight", "one", "--route", "both"])
        .output()
        .unwrap();
    let w: serde_json::Value = serde_json::from_slice(&one.stdout).unwrap();
    // S₃ has 36 − 18 = 18 non-commuting pairs
    let ok = v["character"] == "-10/3" && v["match"] == true && w["character"] == "-3" && w["match"] == true;
    o.passed &= ok;
    o.detail.push_str(&format!("; d=3 (3): {} / {}", w["character"], v["character"]));
    o
}

fn criterion_7() -> Outcome {
    let sigs = odd_signatures(9, 3);
    let agree = sigs.iter().all(|s| c0_numerator(s, Route::Bracket).unwrap() == c0_numerator(s, Route::Genfun).unwrap());
    assert!(agree, "bracket and generating-function numerators disagree");
    let s = OddSignature::new(vec![1, 1]).unwrap();
    let literal = c0_numerator_genfun_literal(&s);
    let value = c0_numerator(&s, Route::Genfun).unwrap();
    assert_eq!((literal.clone(), value.clone()), (rat(1, 4), rat(-1, 2)));
    Outcome {
        passed: agree && literal == value,
        detail: format!("{} signatures agree; (1,1): literal {literal}, routes {value}", sigs.len()),
    }
}

fn criterion_10() -> Outcome {
    let r = growth_ratio(400).unwrap();
    Outcome { passed: (r - 1.0).abs() < 0.15, detail: format!("ratio {r:.4} at N = 400") }
}

#[test]
fn acceptance() {
    let fixture = format!("{}/../core/tests/data/volumes.json", env!("CARGO_MANIFEST_DIR"));
    let table = VolumeTable::from_json_str(&std::fs::read_to_string(fixture).unwrap()).unwrap();
    let base = VerifyOptions::default();

    report(1, "Appendix tables", 10.0, criterion_1);
    report(2, "orthogonality", 5.0, || suite("orthogonality", &base));
    report(3, "closed vs direct brackets, weight <= 12", 60.0, || {
        suite("brackets", &VerifyOptions { max_weight: 12, ..base.clone() })
    });
    report(4, "modified bracket", 30.0, || suite("modified", &VerifyOptions { max_weight: 10, ..base.clone() }));
    report(5, "hbar-bracket double route", 30.0, || suite("hbar", &base));
    report(6, "weighted spin Hurwitz numbers", 300.0, criterion_6);
    report(7, "c0 numerator route agreement", 120.0, criterion_7);
    report(8, "spin end-to-end identities", 300.0, || suite("spin-graphs", &VerifyOptions { max_size: 8, ..base.clone() }));
    report(9, "expansion ladder", 300.0, || {
        suite("expansion", &VerifyOptions { max_size: 8, vol_table: Some(table.clone()), ..base.clone() })
    });
    report(10, "growth of [p1|p1]_N", 10.0, criterion_10);
    report(11, "census invariants", 30.0, || suite("census", &base));
}
