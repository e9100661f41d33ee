use std::process::{Command, Output};

fn prmq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prmq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn classify_elliptic_quadric_over_gf2() {
    let o = prmq(&["--q", "2", "--N", "3", "classify", "X0^2 + X0*X1 + X1^2 + X2*X3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["class"], "Elliptic");
    assert_eq!(v["rank"], 4);
    assert_eq!(v["point_count"], 5);
}

#[test]
fn points_of_a_conic() {
    let o = prmq(&["--q", "3", "--N", "2", "points", "X0^2 + X1*X2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["count"], 4);
    assert_eq!(v["points"].as_array().unwrap().len(), 4);
}

#[test]
fn census_gf2_p3_exhaustive() {
    let o = prmq(&["--q", "2", "--N", "3", "census", "--method", "exhaustive"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let rows: Vec<(u64, u64)> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["weight"].as_u64().unwrap(), r["brute"].as_u64().unwrap()))
        .collect();
    assert_eq!(rows, vec![(4, 105), (6, 280)]);
}

#[test]
fn census_csv_has_header() {
    let o = prmq(&["--q", "3", "--N", "2", "--format", "csv", "census"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("weight,closed,brute\n"));
}

#[test]
fn minimal_methods_agree_on_hyperplane_pair() {
    for m in ["char", "interp", "exhaustive"] {
        let o = prmq(&["--q", "2", "--N", "2", "minimal", "X0*X1", "--method", m]);
        assert_eq!(o.status.code(), Some(0), "{m}");
        assert_eq!(json(&o)["minimal"], true, "{m}");
    }
}

#[test]
fn verify_drivers_pass() {
    for args in [
        vec!["verify", "exception"],
        vec!["--q", "2", "--N", "3", "verify", "containment"],
        vec!["--q", "3", "--N", "2", "verify", "serre"],
        vec!["--q", "2", "verify", "pencil"],
        vec!["--q", "3", "verify", "pencil"],
        vec!["--q", "4", "verify", "pencil"],
    ] {
        let o = prmq(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert!(json(&o)["passed"].as_bool().unwrap_or(true), "{args:?}");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(prmq(&["classify", "X0^2"]).status.code(), Some(2));
    assert_eq!(prmq(&["--q", "6", "--N", "2", "classify", "X0^2"]).status.code(), Some(2));
    assert_eq!(prmq(&["--q", "2", "--N", "2", "classify", "X0 X1"]).status.code(), Some(2));
    assert_eq!(prmq(&["--q", "2", "--N", "2", "classify", "X7^2"]).status.code(), Some(2));
    assert_eq!(prmq(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn worker_count_does_not_change_output() {
    let base = ["--q", "2", "--N", "3", "verify", "containment"];
    let one = prmq(&[&base[..], &["--workers", "1"]].concat());
    let four = prmq(&[&base[..], &["--workers", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);

    let base = ["--q", "3", "--N", "3", "census"];
    let one = prmq(&[&base[..], &["--workers", "1"]].concat());
    let four = prmq(&[&base[..], &["--workers", "4"]].concat());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("prmq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("info.json");
    let o = prmq(&["--q", "3", "--N", "2", "code", "info", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["length"], 13);
    assert_eq!(v["dimension"], 6);
    std::fs::remove_dir_all(&dir).unwrap();
}
