use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_curvecount"))
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap()
}

#[test]
fn gv_gw_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "gv.csv", "g,d,value\n0,1,1\n1,2,3\n2,5,-7\n");
    let o = run(d, &["transform", "gv2gw", "--in", "gv.csv", "--out", "gw.csv", "--gmax", "4", "--dmax", "6"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let gw = read(d, "gw.csv");
    assert!(gw.starts_with("g,d,value\n0,1,1\n"));
    assert!(gw.contains("\n0,2,1/8\n"));
    assert!(gw.contains("\n1,1,1/12\n"));
    let o = run(
        d,
        &["transform", "gw2gv", "--in", "gw.csv", "--out", "gv2.csv", "--gmax", "4", "--dmax", "6", "--integrality"],
    );
    assert_eq!(code(&o), 0);
    assert_eq!(read(d, "gv2.csv"), "g,d,value\n0,1,1\n1,2,3\n2,5,-7\n");
}

#[test]
fn non_integral_result_exits_two_with_report() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "gw.csv", "g,d,value\n0,1,1/2\n");
    let o = run(
        d,
        &[
            "transform",
            "gw2gv",
            "--in",
            "gw.csv",
            "--out",
            "gv.csv",
            "--gmax",
            "0",
            "--dmax",
            "1",
            "--integrality",
            "--report",
            "r.json",
        ],
    );
    assert_eq!(code(&o), 2);
    let r: serde_json::Value = serde_json::from_str(&read(d, "r.json")).unwrap();
    assert_eq!(r["integrality"]["non_integral"][0]["value"], "1/2");
    assert!(d.join("gv.csv").exists());
}

#[test]
fn gv_to_pt_applies_vanishing() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "gv.csv", "g,d,value\n0,1,1\n3,1,4\n");
    let o = run(
        d,
        &[
            "transform",
            "gv2pt",
            "--in",
            "gv.csv",
            "--out",
            "pt.csv",
            "--gmax",
            "3",
            "--dmax",
            "3",
            "--qwindow",
            "-10:10",
            "--apply-castelnuovo",
            "--report",
            "r.json",
        ],
    );
    assert_eq!(code(&o), 2);
    let r: serde_json::Value = serde_json::from_str(&read(d, "r.json")).unwrap();
    assert_eq!(r["gv_zeroed"][0]["key"], 3);
    let pt = read(d, "pt.csv");
    assert!(pt.starts_with("n,d,value\n1,1,1\n2,1,-2\n"));
    let bottom = |deg: u32| {
        pt.lines()
            .skip(1)
            .filter(|l| l.split(',').nth(1) == Some(&deg.to_string()))
            .map(|l| l.split(',').next().unwrap().parse::<i64>().unwrap())
            .min()
    };
    for deg in 1..=3u32 {
        if let Some(n) = bottom(deg) {
            assert!(10 * (n - 1) >= -((deg * deg + 5 * deg + 10) as i64));
        }
    }
}

#[test]
fn connected_series_and_validate() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "gv.csv", "g,d,value\n0,1,2875\n");
    let o = run(
        d,
        &[
            "transform",
            "gv2fp",
            "--in",
            "gv.csv",
            "--out",
            "fp.json",
            "--dmax",
            "2",
            "--qwindow",
            "0:5",
            "--genus-complete",
        ],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(d, &["validate", "--in", "fp.json", "--kind", "fp"]);
    assert_eq!(code(&o), 0);
    write(d, "bad.csv", "g,d,value\n7,5,1\n");
    let o = run(d, &["validate", "--in", "bad.csv", "--kind", "gv", "--castelnuovo"]);
    assert_eq!(code(&o), 2);
    write(d, "frac.csv", "g,d,value\n0,1,1/3\n");
    assert_eq!(code(&run(d, &["validate", "--in", "frac.csv", "--kind", "gv", "--integrality"])), 2);
}

#[test]
fn pt_to_dt_convolution() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "pt.csv", "n,d,value\n0,1,2\n1,1,3\n");
    write(d, "dt0.json", r#"{"variable":"q","min_exp":0,"trunc":3,"coeffs":["1","1","0","0"]}"#);
    let o = run(d, &["transform", "pt2dt", "--in", "pt.csv", "--out", "dt.csv", "--dt0", "dt0.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(read(d, "dt.csv"), "n,d,value\n0,1,2\n1,1,5\n");
}

#[test]
fn bounds_table_and_checks() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = run(d, &["bounds", "table", "--n", "5", "--i", "0", "--dmax", "25", "--emit-svg", "b.svg"]);
    assert_eq!(code(&o), 0);
    let csv = String::from_utf8(o.stdout).unwrap();
    assert!(csv.lines().any(|l| l == "20,51,51"));
    assert!(read(d, "b.svg").starts_with("<svg"));
    assert_eq!(code(&run(d, &["bounds", "corollary", "--gmax", "53"])), 0);
    assert_eq!(code(&run(d, &["bounds", "properties", "--dmax", "20"])), 0);
    let o = run(d, &["bounds", "extremal", "--mmax", "4"]);
    assert!(String::from_utf8(o.stdout).unwrap().ends_with("4,20,51,175\n"));
}

#[test]
fn wall_candidates() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o =
        run(d, &["walls", "candidates", "--n", "5", "--d", "20", "--b", "-2", "--out", "c.csv", "--emit-svg", "w.svg"]);
    assert_eq!(code(&o), 0);
    let csv = read(d, "c.csv");
    assert_eq!(csv.lines().count(), 10);
    assert!(csv.contains("\n1,5,-7/2,17/4\n"));
    assert_eq!(csv.lines().filter(|l| l.starts_with("2,")).count(), 1);
    assert_eq!(read(d, "w.svg").matches("<g id=").count(), 9);
    assert_eq!(code(&run(d, &["walls", "candidates", "--n", "5", "--d", "20", "--b", "-3", "--out", "x.csv"])), 1);
    assert!(!d.join("x.csv").exists());
    let o = run(d, &["walls", "genus-bound", "--d", "20", "--b", "-2"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "41\n");
    let o = run(d, &["walls", "extremal", "--n", "5", "--d", "20"]);
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["tangent_center"], "-13/2");
}

#[test]
fn bcov_plan_and_solves() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = run(d, &["bcov", "plan", "--g", "51"]);
    assert_eq!(code(&o), 0);
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["status"]["status"], "closes-with-extremal");
    assert_eq!(r["unresolved_without_extremal"], 1);
    assert_eq!(r["steps"][49]["extremal"]["value"], "175");
    assert_eq!(code(&run(d, &["bcov", "plan", "--g", "54"])), 2);

    let o = run(d, &["bcov", "gap", "--g", "2", "--out", "amb.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let a: serde_json::Value = serde_json::from_str(&read(d, "amb.json")).unwrap();
    assert_eq!(a["coeffs"][2]["value"], "-1/120");
    assert_eq!(a["coeffs"][3]["status"], "fixed-gap");

    write(d, "known.json", r#"{"variable":"q","min_exp":0,"trunc":2,"coeffs":["6","0","0"]}"#);
    let o = run(d, &["bcov", "castelnuovo", "--g", "4", "--known", "known.json", "--out", "amb4.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let a: serde_json::Value = serde_json::from_str(&read(d, "amb4.json")).unwrap();
    assert_eq!(a["coeffs"][3]["value"], "6");
    assert_eq!(a["coeffs"][3]["status"], "fixed-castelnuovo");
    let o = run(d, &["bcov", "castelnuovo", "--g", "51", "--known", "known.json", "--out", "amb51.json"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("cannot fix"));
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "run.toml", "n = 5\ndmax = 3\nformula = \"hypersurface\"\n");
    let o = run(d, &["--config", "run.toml", "bounds", "table"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "d,bound,floor\n1,8/5,1\n2,12/5,2\n3,17/5,3\n");
    let o = run(d, &["--config", "run.toml", "bounds", "table", "--dmax", "1"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 2);
}

#[test]
fn deterministic_output() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for name in ["a", "b"] {
        let o = run(
            d,
            &[
                "walls",
                "candidates",
                "--n",
                "5",
                "--d",
                "30",
                "--b",
                "-9/4",
                "--out",
                &format!("{name}.csv"),
                "--emit-svg",
                &format!("{name}.svg"),
            ],
        );
        assert_eq!(code(&o), 0);
    }
    assert_eq!(read(d, "a.csv"), read(d, "b.csv"));
    assert_eq!(read(d, "a.svg"), read(d, "b.svg"));
}

#[test]
fn usage_and_parse_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&run(d, &["nonsense"])), 1);
    assert_eq!(code(&run(d, &["--help"])), 0);
    write(d, "bad.csv", "g,d,value\nx,1,2\n");
    assert_eq!(code(&run(d, &["transform", "gv2gw", "--in", "bad.csv", "--out", "o.csv"])), 1);
    assert!(!d.join("o.csv").exists());
    assert_eq!(
        code(&run(d, &["transform", "gv2pt", "--in", "bad.csv", "--out", "o.csv", "--dmax", "1", "--qwindow", "3:1"])),
        1
    );
}
