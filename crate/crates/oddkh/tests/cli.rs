use std::path::PathBuf;
use std::process::{Command, Output};

use oddkh::complex::HomologyEntry;
use oddkh::verify::RunReport;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn oddkh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oddkh")).args(args).env_remove("ODDKH_MAX_CROSSINGS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn homology_json(args: &[&str]) -> Vec<HomologyEntry> {
    let o = oddkh(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn unknot_homology() {
    let p = data("unknot.json");
    let h = homology_json(&["homology", p.to_str().unwrap(), "--json"]);
    let got: Vec<(i32, i32, usize)> = h.iter().map(|e| (e.h, e.q, e.rank)).collect();
    assert_eq!(got, vec![(0, -1, 1), (0, 1, 1)]);
}

#[test]
fn theories_agree_on_the_trefoil() {
    let p = data("trefoil.json");
    let x = homology_json(&["homology", p.to_str().unwrap(), "--theory", "x", "--json"]);
    let y = homology_json(&["homology", p.to_str().unwrap(), "--theory", "y", "--json"]);
    assert_eq!(x, y);
    assert_eq!(x.len(), 6);
}

#[test]
fn homology_json_round_trips() {
    let p = data("figure_eight.json");
    let o = oddkh(&["homology", p.to_str().unwrap(), "--json"]);
    let text = stdout(&o);
    let h: Vec<HomologyEntry> = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string(&h).unwrap(), text.trim());
    let keys: Vec<(i32, i32)> = h.iter().map(|e| (e.h, e.q)).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn coefficient_choices() {
    let p = data("trefoil.json");
    let z2 = homology_json(&["homology", p.to_str().unwrap(), "--coeff", "z2", "--json"]);
    let q = homology_json(&["homology", p.to_str().unwrap(), "--coeff", "q", "--json"]);
    assert!(z2.iter().chain(&q).all(|e| e.torsion.is_empty()));
    let total = |v: &[HomologyEntry]| v.iter().map(|e| e.rank).sum::<usize>();
    assert!(total(&z2) >= total(&q));
}

#[test]
fn malformed_pd_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"pd\": [[1,2,3]]}").unwrap();
    let o = oddkh(&["homology", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("oddkh:"));
}

#[test]
fn crossing_limit_from_the_environment() {
    let p = data("trefoil.json");
    let o = Command::new(env!("CARGO_BIN_EXE_oddkh"))
        .args(["homology", p.to_str().unwrap()])
        .env("ODDKH_MAX_CROSSINGS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds the limit of 2"));
}

fn movie_report(args: &[&str]) -> (Option<i32>, RunReport) {
    let o = oddkh(args);
    let report: RunReport = serde_json::from_str(&stdout(&o)).unwrap();
    (o.status.code(), report)
}

#[test]
fn empty_movie_is_the_identity() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("empty.json");
    std::fs::write(&m, "{\"initial\": {\"pd\": [[1,4,2,5],[3,6,4,1],[5,2,6,3]]}, \"events\": []}").unwrap();
    let (code, r) = movie_report(&["movie", m.to_str().unwrap(), "--check", "identity-up-to-sign"]);
    assert_eq!(code, Some(0));
    assert_eq!(r.checks[0].detail, "sign +1");
}

#[test]
fn movie_move_11_script() {
    let m = data("movies/mm11.json");
    let (code, r) = movie_report(&["movie", m.to_str().unwrap(), "--check", "chainmap", "--check", "identity-up-to-sign"]);
    assert_eq!(code, Some(0));
    assert!(r.passed());
    // the report round-trips
    let again: RunReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(again, r);
}

#[test]
fn movie_move_12_scripts_differ_by_sign() {
    let (l, r) = (data("movies/mm12_left.json"), data("movies/mm12_right.json"));
    let (code, rep) = movie_report(&["movie", l.to_str().unwrap(), "--against", r.to_str().unwrap()]);
    assert_eq!(code, Some(0));
    assert_eq!(rep.checks[0].detail, "sign -1");
}

#[test]
fn matrices_are_dumped() {
    let m = data("movies/r1_round_trip.json");
    let (code, r) = movie_report(&["movie", m.to_str().unwrap(), "--dump-matrices"]);
    assert_eq!(code, Some(0));
    assert!(r.output["matrices"].as_object().is_some_and(|m| !m.is_empty()));
}

#[test]
fn unknown_arc_reports_the_event() {
    let m = data("movies/bad_arc.json");
    let o = oddkh(&["movie", m.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("event 0"));
}

#[test]
fn verify_signs() {
    let o = oddkh(&["verify", "signs", "--max-crossings", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for n in ["2 valid", "8 valid", "128 valid"] {
        assert!(out.contains(n), "{out}");
    }
}

#[test]
fn verify_unknown_suite() {
    let o = oddkh(&["verify", "nonsense"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
}

#[test]
fn cube_dump() {
    let p = data("hopf.json");
    let o = oddkh(&["cube", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 4);
    assert_eq!(v["faces"].as_array().unwrap().len(), 1);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(oddkh(&[]).status.code(), Some(1));
    assert_eq!(oddkh(&["homology", "x.json", "--coeff", "z7"]).status.code(), Some(1));
    assert_eq!(oddkh(&["--help"]).status.code(), Some(0));
}
