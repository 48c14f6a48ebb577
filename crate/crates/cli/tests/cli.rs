use std::path::PathBuf;
use std::process::{Command, Output};

fn tqft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tqft")).args(args).env_remove("TQFT_OUT_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("tqft-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn dims_example() {
    let o = tqft(&["dims", "--g", "2", "--p", "7", "--label", "4", "--methods", "recursion", "--no-timestamp"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "g\tp\tlabels\tdim\tmethod\n2\t7\t4\t14\trecursion\n");
}

#[test]
fn timestamp_line_unless_suppressed() {
    let o = tqft(&["square-scan", "--max", "100"]);
    let out = stdout(&o);
    assert!(out.starts_with("# generated\t"));
    assert!(out.contains("0 squares found"));
}

#[test]
fn exit_codes_are_distinct() {
    assert_eq!(tqft(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(tqft(&["dims", "--p", "7"]).status.code(), Some(2));
    let bad = tqft(&["dims", "--g", "2", "--p", "9"]);
    assert_eq!(bad.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("level 9"));
    assert_eq!(tqft(&["dims", "--g", "2", "--p", "7", "--label", "3"]).status.code(), Some(4));
    assert_eq!(tqft(&["roundtrip", "/nonexistent/file"]).status.code(), Some(3));
    assert_eq!(tqft(&["closure", "--cell", "nowhere"]).status.code(), Some(4));
    assert_eq!(tqft(&["--config", "/nonexistent/run.conf", "dims"]).status.code(), Some(3));
}

#[test]
fn failed_checks_exit_one_with_a_failure_list() {
    let o = tqft(&["closure", "--sl2", "5", "--expect-order", "121", "--no-timestamp"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.starts_with("failed\tdetail\norder=121\torder 120\n"), "{err}");
}

#[test]
fn undecided_never_reports_an_order() {
    let o = tqft(&["closure", "--cell", "torus2-p7-q13", "--gens", "loops", "--cap", "500", "--no-timestamp"]);
    let out = stdout(&o);
    let row: Vec<&str> = out.lines().nth(1).unwrap().split('\t').collect();
    assert_eq!(&row[5..7], ["undecided", "-"]);
}

#[test]
fn json_has_the_same_fields() {
    let o = tqft(&["closure", "--sl2", "7", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let run = &v["sections"]["runs"][0];
    assert_eq!(run["order"], "336");
    assert_eq!(run["method"], "closure");
    assert!(v["generated"].is_u64());
}

#[test]
fn config_file_mirrors_flags() {
    let d = scratch("config");
    let conf = d.join("run.conf");
    std::fs::write(&conf, "# sample\ncommand = dims\ng = 2\np = 5\nlabel = 2\nmethods = recursion,verlinde\nno-timestamp = true\n").unwrap();
    let o = tqft(&["--config", conf.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "g\tp\tlabels\tdim\tmethod\n2\t5\t2\t5\trecursion\n2\t5\t2\t5\tverlinde\n");
    // explicit flags override the file
    let o = tqft(&["dims", "--config", conf.to_str().unwrap(), "--p", "7", "--label", "4"]);
    assert!(stdout(&o).contains("2\t7\t4\t14\trecursion"));
    std::fs::remove_dir_all(d).unwrap();
}

#[test]
fn bundles_round_trip_and_corruption_is_located() {
    let d = scratch("bundles");
    let rep = d.join("w.rep");
    let res = d.join("w.res");
    let o = tqft(&["build-rep", "--spec", "torus1(2)", "--p", "7", "--output", rep.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = tqft(&["reduce", "--bundle", rep.to_str().unwrap(), "--q", "13", "--output", res.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    for f in [&rep, &res] {
        assert_eq!(tqft(&["roundtrip", f.to_str().unwrap()]).status.code(), Some(0));
    }
    let text = std::fs::read_to_string(&rep).unwrap();
    let at = text.find("\nt\t").unwrap() + 3;
    let mut bad = text.clone();
    bad.replace_range(at..at + 1, "x");
    std::fs::write(&rep, bad).unwrap();
    let o = tqft(&["roundtrip", rep.to_str().unwrap(), "--no-timestamp"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let row: Vec<&str> = out.lines().nth(1).unwrap().split('\t').collect();
    assert_eq!(row[3], "false");
    assert_eq!(row[4], at.to_string());
    // the residue file can drive a closure without the representation
    let o = tqft(&["closure", "--residue", res.to_str().unwrap(), "--gens", "T_a", "--no-timestamp"]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::remove_dir_all(d).unwrap();
}
