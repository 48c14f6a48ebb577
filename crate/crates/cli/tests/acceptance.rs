//! The ten acceptance criteria, one PASS/FAIL line each.
//!
//! Runs the `tqft` binary where a subcommand covers the criterion and the
//! library otherwise. Exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_traits::One;
use tqft_core::cyclo::{make_root, CycNum, Level, RootChoice};
use tqft_core::rep::{burau_block, Quantum, Representation};

/// Pinned limits.
const DIMS_BUDGET: Duration = Duration::from_secs(60);
const SCAN_BUDGET: Duration = Duration::from_secs(120);
const RATIO_TARGET: f64 = 0.7;
const RATIO_TOLERANCE: f64 = 0.01;
const WORD_BOUND: usize = 8;

const SPECS_P5: [&str; 7] = ["torus1(0)", "torus1(2)", "torus2(0,0)", "torus2(2,2)", "sphere(2,2,2,2)", "genus2", "genus2pt(2)"];
const SPECS_P7: [&str; 9] = [
    "torus1(0)",
    "torus1(2)",
    "torus1(4)",
    "torus2(2,4)",
    "torus2(4,4)",
    "sphere(2,2,2,4)",
    "sphere(2,2,2,2,2)",
    "genus2",
    "genus2pt(4)",
];
const SPECS_P11: [&str; 5] = ["torus1(2)", "torus2(2,4)", "sphere(2,2,2,4)", "sphere(4,4,4,8)", "genus2pt(8)"];

type Outcome = Result<String, String>;

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn tqft(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_tqft"))
        .args(args)
        .arg("--no-timestamp")
        .env("TQFT_OUT_DIR", out_dir())
        .output()
        .expect("spawn tqft");
    Run {
        stdout: String::from_utf8(out.stdout).expect("utf-8"),
        stderr: String::from_utf8(out.stderr).expect("utf-8"),
        code: out.status.code().unwrap_or(-1),
    }
}

fn out_dir() -> std::path::PathBuf {
    std::env::temp_dir().join(format!("tqft-acceptance-{}", std::process::id()))
}

/// Rows of every TSV section as column -> value maps.
fn rows(out: &str) -> Vec<BTreeMap<String, String>> {
    let mut all = Vec::new();
    for block in out.split("\n\n") {
        let mut lines = block.lines().filter(|l| !l.starts_with('#'));
        let Some(header) = lines.next() else { continue };
        let cols: Vec<&str> = header.split('\t').collect();
        for l in lines {
            all.push(cols.iter().map(|c| c.to_string()).zip(l.split('\t').map(str::to_string)).collect());
        }
    }
    all
}

fn ok(run: &Run, what: &str) -> Result<(), String> {
    if run.code == 0 {
        Ok(())
    } else {
        Err(format!("{what}: exit {} {}", run.code, run.stderr.lines().take(3).collect::<Vec<_>>().join(" | ")))
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn dimension_agreement() -> Outcome {
    let start = Instant::now();
    let run = tqft(&["dims", "--g", "1,2,3,4", "--p", "5,7,11,13", "--all-labels", "--methods", "enumeration,recursion,verlinde"]);
    let took = start.elapsed();
    ok(&run, "dims")?;
    let mut cells: BTreeMap<(String, String, String), Vec<String>> = BTreeMap::new();
    for r in rows(&run.stdout) {
        cells.entry((r["g"].clone(), r["p"].clone(), r["labels"].clone())).or_default().push(r["dim"].clone());
    }
    for (k, v) in &cells {
        ensure(v.len() == 3 && v.iter().all(|d| *d == v[0]), format!("{k:?}: {v:?}"))?;
    }
    // tuples of length <= 2 over (p-1)/2 colors
    let want: usize = [5usize, 7, 11, 13].iter().map(|p| (p - 1) / 2).map(|k| 4 * (1 + k + k * (k + 1) / 2)).sum();
    ensure(cells.len() == want, format!("{} cells, expected {want}", cells.len()))?;
    ensure(took < DIMS_BUDGET, format!("{took:?} over {DIMS_BUDGET:?}"))?;
    Ok(format!("{} cells, three methods, {:.1}s", cells.len(), took.as_secs_f64()))
}

fn reference_values() -> Outcome {
    let cases = [("2", "5", "2", "5"), ("2", "7", "4", "14"), ("1", "7", "2,4", "3"), ("3", "7", "4", "147")];
    for (g, p, label, want) in cases {
        let run = tqft(&["dims", "--g", g, "--p", p, "--label", label]);
        ok(&run, "dims")?;
        let rs = rows(&run.stdout);
        ensure(rs.iter().all(|r| r["dim"] == want), format!("g={g} p={p} ({label}): {rs:?}"))?;
        ensure(rs.iter().any(|r| r["method"] == "closed-form"), format!("g={g} p={p}: no closed-form row"))?;
    }
    Ok("5, 14, 3, 147 by every method".into())
}

fn square_scan() -> Outcome {
    let start = Instant::now();
    let run = tqft(&["square-scan", "--max", "10000"]);
    let took = start.elapsed();
    ok(&run, "square-scan")?;
    let r = &rows(&run.stdout)[0];
    ensure(r["result"] == "0 squares found", r["result"].clone())?;
    ensure(took < SCAN_BUDGET, format!("{took:?}"))?;
    Ok(format!("{} primes, 0 squares, {:.1}s", r["primes"], took.as_secs_f64()))
}

fn lemmas() -> Outcome {
    let run = tqft(&["verify-lemmas", "--p", "7,11,19", "--gmax", "4", "--ratio-p", "9973"]);
    ok(&run, "verify-lemmas")?;
    let rs = rows(&run.stdout);
    for r in &rs {
        ensure(r["holds"] == "true", format!("{r:?}"))?;
    }
    let compare: Vec<_> = rs.iter().filter(|r| r.contains_key("relation")).collect();
    for r in &compare {
        let want = if r["g"] == "2" { "equal" } else { "greater" };
        ensure(r["relation"] == want, format!("{r:?}"))?;
    }
    let growth: Vec<_> = rs.iter().filter(|r| r.contains_key("bound_kind")).collect();
    ensure(compare.len() == 9 && growth.len() == 9, "missing rows")?;
    let ratio = rs.iter().find(|r| r.contains_key("ratio")).ok_or("no ratio row")?;
    let v: f64 = ratio["ratio"].parse().map_err(|_| "ratio")?;
    ensure((v - RATIO_TARGET).abs() <= RATIO_TOLERANCE, format!("ratio {v}"))?;
    Ok(format!("compare and growth at p=7,11,19; ratio {v:.4} at p=9973 (tolerance {RATIO_TOLERANCE})"))
}

fn check_rep_rows(p: &str, specs: &[&str]) -> Result<Vec<BTreeMap<String, String>>, String> {
    let mut args = vec!["check-rep", "--p", p];
    for s in specs {
        args.extend(["--spec", s]);
    }
    let run = tqft(&args);
    ok(&run, &format!("check-rep p={p}"))?;
    Ok(rows(&run.stdout))
}

fn representation_contracts() -> Outcome {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for (p, specs) in [("5", &SPECS_P5[..]), ("7", &SPECS_P7[..])] {
        for r in check_rep_rows(p, specs)? {
            ensure(r["passed"] == "true", format!("{r:?}"))?;
            for kind in ["unitary", "braid", "modular"] {
                if r["check"].starts_with(kind) {
                    *counts.entry(kind).or_default() += 1;
                }
            }
        }
    }
    ensure(counts.len() == 3, format!("{counts:?}"))?;
    // twist eigenvalues against repeated multiplication by A
    for p in [5u64, 7] {
        let root = make_root(Level::new(p).unwrap(), RootChoice::Unitary).unwrap();
        let q = Arc::new(Quantum::new(root.clone()));
        let specs: &[&str] = if p == 5 { &SPECS_P5 } else { &SPECS_P7 };
        for s in specs {
            let rep = Representation::build(&s.parse().unwrap(), q.clone()).map_err(|e| e.to_string())?;
            let space = rep.space();
            for e in 0..space.graph().edge_count() {
                let t = space.twist_matrix(e).map_err(|e| e.to_string())?;
                for (k, c) in space.basis().iter().enumerate() {
                    let n = c[e] as usize * (c[e] as usize + 2);
                    let want = (0..n).fold(CycNum::one(), |acc, _| &acc * &root.value());
                    ensure(t.get(k, k) == &want, format!("p={p} {s} edge {e}"))?;
                }
            }
        }
    }
    let block = burau_block(3, 2, Arc::new(Quantum::new(make_root(Level::new(7).unwrap(), RootChoice::Unitary).unwrap())))
        .map_err(|e| e.to_string())?;
    ensure(block.ratio_is_minus_a_two_a_squared(), "burau ratio")?;
    Ok(format!("{counts:?} all exact; twists A^(c(c+2)); Burau ratio -1 : A^8 at a=2"))
}

fn burnside() -> Outcome {
    let mut n = 0;
    for (p, specs) in [("5", &SPECS_P5[..]), ("7", &SPECS_P7[..]), ("11", &SPECS_P11[..])] {
        for r in check_rep_rows(p, specs)? {
            if r["check"].starts_with("burnside(") {
                ensure(r["passed"] == "true", format!("{r:?}"))?;
                n += 1;
            }
        }
    }
    ensure(n > 0, "no loops")?;
    Ok(format!("{n} loop p-th powers are the identity"))
}

fn infinite_image() -> Outcome {
    let bound = WORD_BOUND.to_string();
    let run = tqft(&["push-explore", "--spec", "torus2(2,4)", "--p", "7", "--search", &bound]);
    ok(&run, "push-explore")?;
    let rs = rows(&run.stdout);
    let inf = rs.iter().find(|r| r.get("kind").map(String::as_str) == Some("infinite-order")).ok_or("no search row")?;
    ensure(inf["detail"].contains("non-cyclotomic"), inf["detail"].clone())?;
    let com = rs.iter().find(|r| r.get("kind").map(String::as_str) == Some("noncentral-commutator")).ok_or("no commutator")?;
    Ok(format!("word '{}' ({}); commutator '{}'", inf["word"], inf["detail"], com["word"]))
}

fn conjugation_symmetry() -> Outcome {
    let mut n = 0;
    for (p, specs) in [("5", &SPECS_P5[..]), ("7", &SPECS_P7[..])] {
        for r in check_rep_rows(p, specs)? {
            if r["check"].starts_with("conj(") {
                ensure(r["passed"] == "true", format!("{r:?}"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} generator bundles equal their rebuild at A^-1"))
}

fn closure_row(args: &[&str]) -> Result<(Run, BTreeMap<String, String>), String> {
    let run = tqft(args);
    let r = rows(&run.stdout).into_iter().next().ok_or_else(|| format!("{args:?}: no output; {}", run.stderr))?;
    Ok((run, r))
}

fn finite_quotients() -> Outcome {
    let (run, r) = closure_row(&["closure", "--sl2", "7", "--expect-order", "336"])?;
    ok(&run, "sl2")?;
    ensure(r["order"] == "336", format!("{r:?}"))?;
    let mut burau = Vec::new();
    for cell in ["burau-p7-q29", "burau-p7-q43", "burau-p7-q71"] {
        let (first, r) = closure_row(&["closure", "--cell", cell])?;
        let (second, _) = closure_row(&["closure", "--cell", cell])?;
        ok(&first, cell)?;
        ensure(r["status"] == "complete", format!("{r:?}"))?;
        ensure(first.stdout == second.stdout, format!("{cell} differs between runs"))?;
        burau.push(format!("q={} {}", r["q"], r["order"]));
    }
    let desk = tqft(&["compare-images", "--cell", "torus2-p5-q3"]);
    ok(&desk, "desk cell")?;
    let (over, r) = closure_row(&["closure", "--cell", "torus2-p7-q13", "--gens", "loops", "--cap", "20000"])?;
    ok(&over, "over-cap closure")?;
    ensure(r["status"] == "undecided" && r["order"] == "-", format!("{r:?}"))?;
    Ok(format!("SL(2,7) 336; Burau {}; desk cell equal; over-cap cell undecided", burau.join(", ")))
}

fn determinism() -> Outcome {
    let dir = out_dir();
    let rep = dir.join("det.rep");
    let res = dir.join("det.res");
    let table = dir.join("det.tsv");
    let (rep_s, res_s, table_s) = (rep.to_str().unwrap(), res.to_str().unwrap(), table.to_str().unwrap());
    let commands: Vec<Vec<&str>> = vec![
        vec!["dims", "--g", "2,3", "--p", "7", "--label", "4", "--output", table_s],
        vec!["verify-lemmas", "--p", "7", "--gmax", "3"],
        vec!["square-scan", "--max", "2000"],
        vec!["build-rep", "--spec", "torus2(2,4)", "--p", "7", "--output", rep_s],
        vec!["check-rep", "--spec", "torus2(2,4)", "--p", "7"],
        vec!["push-explore", "--spec", "torus2(2,4)", "--p", "7", "--word", "x d", "--search", "2"],
        vec!["reduce", "--bundle", rep_s, "--q", "29", "--output", res_s],
        vec!["closure", "--residue", res_s, "--gens", "T_x,T_y", "--projective", "--cap", "5000"],
        vec!["compare-images", "--cell", "burau-p7-q29", "--normality"],
        vec!["roundtrip", rep_s],
        vec!["roundtrip", res_s],
        vec!["roundtrip", table_s],
    ];
    for args in &commands {
        let a = tqft(args);
        let files: Vec<String> = [&rep, &res, &table].iter().map(|f| std::fs::read_to_string(f).unwrap_or_default()).collect();
        let b = tqft(args);
        let again: Vec<String> = [&rep, &res, &table].iter().map(|f| std::fs::read_to_string(f).unwrap_or_default()).collect();
        ensure(a.code == b.code && a.stdout == b.stdout, format!("{}: stdout differs", args[0]))?;
        ensure(files == again, format!("{}: written files differ", args[0]))?;
        ensure(a.code == 0 || args[0] == "compare-images", format!("{}: exit {}", args[0], a.code))?;
    }
    Ok(format!("{} invocations byte-identical", commands.len()))
}

fn main() {
    std::fs::create_dir_all(out_dir()).expect("temp dir");
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("dimension agreement", dimension_agreement),
        ("reference values", reference_values),
        ("square scan", square_scan),
        ("compare and growth lemmas", lemmas),
        ("representation contracts", representation_contracts),
        ("burnside factoring", burnside),
        ("infinite non-abelian image", infinite_image),
        ("conjugation symmetry", conjugation_symmetry),
        ("finite quotients", finite_quotients),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    let _ = std::fs::remove_dir_all(out_dir());
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
