use std::process::{Command, Output};

fn linset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linset"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn census_csv_has_one_row_per_endomorphism() {
    let o = linset(&["census", "--p", "2", "--t", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("q,t,beta_qpoly,scattered,pseudoregulus"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 512);
    assert_eq!(rows.iter().filter(|r| r.contains(",true,")).count(), 112);
}

#[test]
fn census_json_carries_orbits() {
    let o = linset(&["census", "--p", "2", "--t", "2", "--out", "json"]);
    assert!(o.status.success());
    let rows: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 16);
    for r in rows {
        assert_eq!(r["scattered"].as_bool().unwrap(), !r["orbit_id"].is_null());
    }
}

#[test]
fn verify_reports_one_json_line_per_check() {
    let o = linset(&["verify", "--prop", "all", "--p", "2", "--t", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let ids: Vec<String> = text
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["id"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(ids.len(), linset_workbench::checks::ids().count());
    assert!(!text.contains("wall_ms"));
}

#[test]
fn exit_codes() {
    assert_eq!(linset(&["verify", "--prop", "nope", "--p", "2", "--t", "3"]).status.code(), Some(2));
    assert_eq!(linset(&["tower", "--p", "4", "--t", "3"]).status.code(), Some(2));
    assert_eq!(linset(&["classify", "--p", "2", "--t", "3", "--beta", "Q:1"]).status.code(), Some(2));
    let budget = linset(&["verify", "--prop", "prop5", "--p", "2", "--e", "2", "--t", "4"]);
    assert_eq!(budget.status.code(), Some(3));
    assert!(stdout(&budget).contains("\"status\":\"skipped\""));
}

#[test]
fn swap_search_finds_the_frobenius_swap() {
    let o = linset(&["swap-search", "--p", "2", "--t", "3", "--beta", "Q:0;0;0/1;0;0/0;0;0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"found\": true"));
}

#[test]
fn classify_reports_a_verdict_for_scattered_points() {
    let o = linset(&["classify", "--p", "3", "--t", "3", "--beta", "Q:0;0;0/1;0;0/0;0;0"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["linear_set_report"]["size"], 13);
    assert_eq!(v["verdict"]["pseudoregulus"], true);
    assert_eq!(v["verdict"]["consistent"], true);
}
