use std::collections::BTreeMap;
use std::process::{Command, Output};

use halphen_cli::claims::CATALOG;
use halphen_cli::ledger::{Ledger, Verdict};

fn halphen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_halphen")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_all_json() {
    let o = halphen(&["verify", "all", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let ledger: Ledger = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(ledger.entries.len() >= 25);
    for n in 1..=17u8 {
        let ids: Vec<_> = CATALOG.iter().filter(|c| c.criterion == Some(n)).map(|c| c.id).collect();
        assert_eq!(ids.len(), 1);
        assert_eq!(ledger.entries.iter().filter(|e| e.claim == ids[0]).count(), 1);
    }
    let failed: Vec<_> = ledger.entries.iter().filter(|e| e.verdict != Verdict::Pass).map(|e| e.claim.as_str()).collect();
    assert_eq!(failed, ["invariants.log-chern"]);
    assert!(ledger.entries.iter().all(|e| e.ms.is_none()));
    // round trip
    assert_eq!(serde_json::from_str::<Ledger>(&serde_json::to_string(&ledger).unwrap()).unwrap(), ledger);
}

#[test]
fn output_is_identical_across_runs_and_threads() {
    let args = ["verify", "incidence", "pencil", "lattice", "code", "--format", "json", "--seed", "7"];
    let one = halphen(&[&args[..], &["--jobs", "1"]].concat());
    let four = halphen(&[&args[..], &["--jobs", "4"]].concat());
    let again = halphen(&args);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.stdout, again.stdout);
}

#[test]
fn seed_changes_only_randomized_claims() {
    let run = |seed: &str| -> Ledger { serde_json::from_str(&stdout(&halphen(&["verify", "incidence", "--format", "json", "--seed", seed]))).unwrap() };
    let (a, b) = (run("1"), run("2"));
    for (x, y) in a.entries.iter().zip(&b.entries) {
        assert_eq!(x.verdict, Verdict::Pass);
        if x.claim != "incidence.random-specializations" {
            assert_eq!(x, y);
        }
    }
}

#[test]
fn csv_has_one_row_per_entry() {
    let o = halphen(&["verify", "lattice", "--format", "csv"]);
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(r.headers().unwrap(), vec!["claim", "anchor", "verdict", "witness", "ms"]);
    let rows: Vec<_> = r.records().map(|x| x.unwrap()).collect();
    assert_eq!(rows.len(), CATALOG.iter().filter(|c| c.id.starts_with("lattice.")).count());
    assert!(rows.iter().all(|x| &x[2] == "pass" && x[4].is_empty()));
}

#[test]
fn text_report_lists_anchors() {
    let s = stdout(&halphen(&["verify", "code"]));
    assert!(s.contains("\"1+9t^5+102t^8+144t^9+144t^12+102t^13+9t^16+t^21\""));
    assert!(s.ends_with("3 claims: 3 pass, 0 fail, 0 skipped\n"));
}

#[test]
fn enumerate_minus1_csv() {
    let o = halphen(&["enumerate", "minus1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let rows: Vec<_> = r.records().map(|x| x.unwrap()).collect();
    assert_eq!(rows.len(), 144);
    let mut h = BTreeMap::new();
    for x in &rows {
        *h.entry(x[10].parse::<i64>().unwrap()).or_insert(0) += 1;
    }
    assert_eq!(h, BTreeMap::from([(0, 9), (1, 36), (2, 54), (3, 36), (4, 9)]));
}

#[test]
fn torsion_scan_found_and_not_found() {
    let o = halphen(&["verify", "torsion", "--m", "5", "--p-max", "200", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let l: Ledger = serde_json::from_str(&stdout(&o)).unwrap();
    let e = l.get("torsion.loci").unwrap();
    assert_eq!(e.verdict, Verdict::Pass);
    assert!(e.witness.starts_with("m = 5: GF(37), t = 9"));

    let o = halphen(&["verify", "torsion", "--m", "5", "--p-max", "30", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let l: Ledger = serde_json::from_str(&stdout(&o)).unwrap();
    let e = l.get("torsion.loci").unwrap();
    assert_eq!(e.verdict, Verdict::Skipped);
    assert!(e.witness.starts_with("no point of order 5"));
}

#[test]
fn quadratic_extension_is_opt_in() {
    let plain: Ledger = serde_json::from_str(&stdout(&halphen(&["verify", "torsion", "--m", "4", "--format", "json"]))).unwrap();
    assert!(plain.get("torsion.quadratic-extension").is_none());
    let o = halphen(&["verify", "torsion", "--m", "4", "--with-quadratic-extension", "--format", "json"]);
    let l: Ledger = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(l.get("torsion.quadratic-extension").unwrap().verdict, Verdict::Pass);
}

#[test]
fn specialized_mode_at_one_prime() {
    let o = halphen(&["verify", "incidence", "pencil", "--mode", "specialized", "--prime", "43", "--a", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let l: Ledger = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(l.entries.iter().all(|e| e.verdict == Verdict::Pass));
    assert!(l.get("pencil.identity").unwrap().witness.starts_with("p = 43: λ = "));
}

#[test]
fn fail_fast_skips_the_rest() {
    let o = halphen(&["verify", "invariants", "code", "--fail-fast", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let l: Ledger = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(l.entries[0].verdict, Verdict::Fail);
    assert!(l.entries[1..].iter().all(|e| e.verdict == Verdict::Skipped));
}

#[test]
fn configuration_errors_exit_2() {
    for args in [
        &["verify", "--prime", "7"][..],
        &["verify", "--prime", "11"],
        &["verify", "--prime", "9"],
        &["verify", "--a", "1"],
        &["verify", "--a", "x"],
        &["verify", "--mode", "numeric"],
        &["verify", "geometry"],
        &["verify", "--format", "xml"],
        &["verify", "--m", "3"],
        &["verify", "--d-max", "2"],
        &["verify", "--jobs", "0"],
        &["verify", "--output", "/nonexistent/dir/ledger.json", "code"],
        &["verify", "--bogus"],
    ] {
        let o = halphen(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("code.json");
    let o = halphen(&["verify", "code", "--format", "json", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let l: Ledger = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(l.entries.len(), 3);
}

#[test]
fn golden_polynomials() {
    for (what, file) in [("conics", "conics.txt"), ("lines", "lines.txt"), ("sextic", "sextic.txt")] {
        let want = std::fs::read_to_string(format!("{}/tests/fixtures/{file}", env!("CARGO_MANIFEST_DIR"))).unwrap();
        assert_eq!(stdout(&halphen(&["export", what])), want, "{what}");
    }
}

#[test]
fn code_and_invariants_subcommands() {
    let s = stdout(&halphen(&["code", "--k", "2"]));
    assert!(s.contains("1 + 9t^5 + 102t^8 + 144t^9 + 144t^12 + 102t^13 + 9t^16 + t^21"));
    assert_eq!(halphen(&["code", "--k", "1"]).status.code(), Some(1));

    let o = halphen(&["invariants", "--format", "csv"]);
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let rows: Vec<_> = r.records().map(|x| x.unwrap()).collect();
    let a3: Vec<_> = rows.iter().filter(|x| &x[0] == "A3").collect();
    assert_eq!(a3.len(), 2);
    assert!(a3.iter().all(|x| &x[3] == "180" && &x[4] == "72" && &x[5] == "5/2"));
}
