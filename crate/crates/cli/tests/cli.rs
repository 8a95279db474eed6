use std::process::{Command, Output};

fn dumont(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dumont"))
        .args(args)
        .env_remove("DUMONT_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn expand_second_derivative_of_x() {
    let o = dumont(&["expand", "--grammar", "schett", "--op", "D", "--start", "x", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "D^2(x) = x*y^2+x*z^2\n");
}

#[test]
fn expand_with_literal_rules_and_composite_operator() {
    let o = dumont(&["expand", "--grammar", "x->y*z; y->x*z; z->x*y", "--op", "Dx", "--start", "y", "--n", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let p = v["levels"][0]["polynomial"].as_str().unwrap();
    assert_eq!(p, "x^4*y+x^2*y^3+5*x^2*y*z^2+y^3*z^2");
}

#[test]
fn t_triangle_both_methods_matches_small_tables() {
    let o = dumont(&["triangle", "--name", "t", "--method", "both", "--nmax", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["name"], "t");
    assert_eq!(v["nmax"], 4);
    let entries = v["entries"].as_array().unwrap();
    assert!(entries.contains(&serde_json::json!([4, 1, 1, "10"])));
    assert!(entries.contains(&serde_json::json!([3, 0, 1, "3"])));
}

#[test]
fn triangle_csv_has_header() {
    let o = dumont(&["triangle", "--name", "r", "--nmax", "2", "--format", "csv"]);
    let s = stdout(&o);
    assert!(s.starts_with("n,i,j,value\n"));
    assert!(s.contains("\n2,1,0,4\n"));
}

#[test]
fn stats_updown_runs_json() {
    let o = dumont(&["stats", "--statistic", "updown-runs", "--n", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["statistic"], "updown-runs");
    let total: u64 = v["counts"].as_object().unwrap().values().map(|c| c.as_str().unwrap().parse::<u64>().unwrap()).sum();
    assert_eq!(total, 24);
}

#[test]
fn stats_past_default_bound_needs_flag() {
    let o = dumont(&["stats", "--statistic", "descents-b", "--n", "8"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn series_sn_json() {
    let o = dumont(&["series", "--function", "sn", "--order", "5", "--ring", "classical", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["order"], 5);
    assert_eq!(v["coeffs"][3], "-k2-1");
    assert_eq!(v["coeffs"][5], "k2^2+14*k2+1");
}

#[test]
fn verify_list_covers_all_ids() {
    let o = dumont(&["verify", "--list"]);
    let s = stdout(&o);
    for id in ["mainthm01.i", "mainthm01.ix", "concl01.iii", "mainthm02.v", "typeB", "recurrences.Ptilde", "dumont-gf", "conjecture", "thCCth", "th_RR"] {
        assert!(s.lines().any(|l| l.split_whitespace().next() == Some(id)), "{id}");
    }
}

#[test]
fn verify_numeric_case_reports_json() {
    let o = dumont(&["verify", "--id", "thCCth", "--order", "12", "--samples", "20", "--tol", "1e-8", "--seed", "42", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["id"], "thCCth");
    assert_eq!(v["status"], "pass");
    assert!(v["samples"].as_u64().unwrap() >= 5);
    assert!(v["worst_rel_err"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--id", "th_TT", "--seed", "3", "--format", "json"];
    let mut a = json(&dumont(&args));
    let mut b = json(&dumont(&args));
    a["elapsed_ms"] = 0.into();
    b["elapsed_ms"] = 0.into();
    assert_eq!(a, b);
}

#[test]
fn verify_conjecture_exit_code() {
    let o = dumont(&["verify", "--id", "conjecture", "--nmax", "7"]);
    assert!(matches!(o.status.code(), Some(0) | Some(1)));
    assert!(stdout(&o).contains("conjecture"));
}

#[test]
fn too_small_tolerance_fails_verification() {
    let o = dumont(&["verify", "--id", "thCCth", "--tol", "1e-16"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(dumont(&["verify", "--id", "no-such-case"]).status.code(), Some(2));
    assert_eq!(dumont(&["verify", "--tol", "0"]).status.code(), Some(2));
    assert_eq!(dumont(&["triangle", "--name", "q"]).status.code(), Some(2));
    assert_eq!(dumont(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(dumont(&["expand", "--op", "Dy"]).status.code(), Some(2));
}

#[test]
fn config_file_sets_defaults() {
    let dir = std::env::temp_dir().join(format!("dumont-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.conf");
    std::fs::write(&path, "format = csv\nseries_order = 3\n").unwrap();
    let o = dumont(&["--config", path.to_str().unwrap(), "series", "--function", "cn"]);
    assert_eq!(stdout(&o), "m,numerator\n0,1\n1,0\n2,-1\n3,0\n");
    std::fs::write(&path, "colour = red\n").unwrap();
    assert_eq!(dumont(&["--config", path.to_str().unwrap(), "series", "--function", "cn"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn thread_count_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_dumont"))
        .args(["verify", "--id", "mainthm01.i", "--nmax", "6"])
        .env("DUMONT_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let bad = Command::new(env!("CARGO_BIN_EXE_dumont"))
        .args(["verify", "--list"])
        .env("DUMONT_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

fn check_schema(schema: &str, instance: &serde_json::Value) {
    let schema: serde_json::Value = serde_json::from_str(schema).unwrap();
    let v = jsonschema::validator_for(&schema).expect("valid schema");
    let errors: Vec<String> = v.iter_errors(instance).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:#?}");
}

#[test]
fn json_outputs_follow_shipped_schemas() {
    let triangle = json(&dumont(&["triangle", "--name", "d", "--nmax", "5", "--format", "json"]));
    check_schema(include_str!("../schemas/triangle.schema.json"), &triangle);
    let stats = json(&dumont(&["stats", "--statistic", "cycle-peaks", "--n", "5", "--format", "json"]));
    check_schema(include_str!("../schemas/stats.schema.json"), &stats);
    let series = json(&dumont(&["series", "--function", "dn", "--ring", "two-param", "--format", "json"]));
    check_schema(include_str!("../schemas/series.schema.json"), &series);
    let expand = json(&dumont(&["expand", "--grammar", "extended", "--start", "w", "--n", "3", "--all", "--format", "json"]));
    check_schema(include_str!("../schemas/expand.schema.json"), &expand);
    let one = json(&dumont(&["verify", "--id", "th_RR", "--format", "json"]));
    check_schema(include_str!("../schemas/report.schema.json"), &one);
    let failing = json(&dumont(&["verify", "--id", "thCCth", "--tol", "1e-16", "--format", "json"]));
    check_schema(include_str!("../schemas/report.schema.json"), &failing);
    let many = json(&dumont(&["verify", "--id", "all", "--nmax", "5", "--format", "json"]));
    assert_eq!(many.as_array().unwrap().len(), 47);
    check_schema(include_str!("../schemas/report.schema.json"), &many);
}
