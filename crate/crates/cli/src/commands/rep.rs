use tqft_core::blocks::Method;
use tqft_core::quotients::{find_infinite_order_word, find_noncentral_commutator, spectrum_report, SpectrumReport};
use tqft_core::rep::{check_modular, check_representation, conj_symmetry_check, CheckReport, RepBundle, SurfaceSpec, Word};

use super::{build, level, root, spec, stem};
use crate::error::{CliError, CliResult};
use crate::report::{Report, Section};
use crate::{row, BuildArgs, CheckArgs, Ctx, PushArgs};

const SPECTRUM_METHOD: &str = "spectrum";

pub fn build_rep(a: &BuildArgs, ctx: &Ctx) -> CliResult<Report> {
    let s = spec(&a.rep.spec)?;
    let r = root(a.rep.p, &a.rep.root)?;
    let t = r.exponent();
    let rep = build(&s, r)?;
    let bundle = RepBundle::from_representation(&rep);
    let path = a.output.clone().unwrap_or_else(|| ctx.out_dir.join(format!("{}-p{}-t{t}.rep", stem(&a.rep.spec), a.rep.p)));
    ctx.write(&path, &bundle.to_text())?;
    let mut report = Report::default();
    let mut sec = Section::new("bundle", &["spec", "p", "t", "dim", "generators", "loops", "file", "method"]);
    sec.push(row![s, a.rep.p, t, bundle.dim(), rep.generators().len(), rep.loops().len(), path.display(), Method::Enumeration]);
    report.section(sec);
    Ok(report)
}

fn record(report: &mut Report, sec: &mut Section, ctx: &[String], checks: CheckReport) {
    for item in checks.items {
        report.check(sec, ctx, &item.name, item.passed, &item.detail);
    }
}

fn check_one(report: &mut Report, sec: &mut Section, s: &SurfaceSpec, p: u64, root_arg: &str, stored: Option<&RepBundle>) -> CliResult<()> {
    let r = root(p, root_arg)?;
    let rep = build(s, r.clone())?;
    let ctx = [s.to_string(), p.to_string(), r.exponent().to_string()];
    if let Some(b) = stored {
        let same = RepBundle::from_representation(&rep) == *b;
        report.check(sec, &ctx, "bundle-matches-rebuild", same, "");
    }
    record(report, sec, &ctx, check_representation(&rep)?);
    record(report, sec, &ctx, conj_symmetry_check(s, &r)?);
    if let SurfaceSpec::OneHoledTorus(_) = s {
        record(report, sec, &ctx, check_modular(rep.space(), 0)?);
    }
    Ok(())
}

pub fn check_rep(a: &CheckArgs) -> CliResult<Report> {
    let mut report = Report::default();
    let mut sec = Section::new("checks", &["spec", "p", "t", "check", "passed", "detail"]);
    if let Some(path) = &a.bundle {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let b = RepBundle::from_text(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let s = spec(&b.spec)?;
        check_one(&mut report, &mut sec, &s, b.p as u64, &b.t.to_string(), Some(&b))?;
    } else {
        if a.specs.is_empty() || a.p.is_empty() {
            return Err(CliError::Config("check-rep needs --spec and --p, or --bundle".into()));
        }
        let specs: Vec<SurfaceSpec> = a.specs.iter().map(|s| spec(s)).collect::<CliResult<_>>()?;
        for &p in &a.p {
            level(p)?;
            root(p, &a.root)?;
        }
        for &p in &a.p {
            for s in &specs {
                check_one(&mut report, &mut sec, s, p, &a.root, None)?;
            }
        }
    }
    report.section(sec);
    Ok(report)
}

fn cyclotomic_text(r: &SpectrumReport) -> String {
    if r.cyclotomic.is_empty() {
        return "-".to_string();
    }
    r.cyclotomic.iter().map(|(m, k)| format!("{m}^{k}")).collect::<Vec<_>>().join(",")
}

fn spectrum_row(word: &Word, r: &SpectrumReport) -> Vec<String> {
    let cofactor = r.cofactor.degree().unwrap_or(0);
    row![word, r.verdict, format!("{:.6}", r.max_modulus), cyclotomic_text(r), cofactor, SPECTRUM_METHOD]
}

pub fn push_explore(a: &PushArgs) -> CliResult<Report> {
    let s = spec(&a.rep.spec)?;
    let r = root(a.rep.p, &a.rep.root)?;
    let words: Vec<Word> = a
        .word
        .iter()
        .map(|w| w.parse().map_err(|e: tqft_core::Error| CliError::Config(format!("word '{w}': {e}"))))
        .collect::<CliResult<_>>()?;
    if a.search == Some(0) {
        return Err(CliError::Config("search length must be positive".into()));
    }
    let l = level(a.rep.p)?;
    let rep = build(&s, r)?;
    let mut report = Report::default();
    let columns = ["word", "verdict", "max_modulus", "cyclotomic", "cofactor_degree", "method"];
    let mut sec = Section::new("words", &columns);
    for w in &words {
        let m = rep.point_push(w)?;
        sec.push(spectrum_row(w, &spectrum_report(&m.matrix, l)?));
    }
    report.section(sec);
    if let Some(n) = a.search {
        let mut found = Section::new("search", &["kind", "bound", "found", "word", "detail", "method"]);
        match find_infinite_order_word(&rep, n)? {
            Some((w, sr)) => found.push(row!["infinite-order", n, true, w, sr.verdict, SPECTRUM_METHOD]),
            None => {
                found.push(row!["infinite-order", n, false, "-", "-", SPECTRUM_METHOD]);
                report.fail("infinite-order", format!("no witness up to length {n}"));
            }
        }
        match find_noncentral_commutator(&rep)? {
            Some((w, _)) => found.push(row!["noncentral-commutator", 4, true, w, "not a scalar matrix", "exact"]),
            None => {
                found.push(row!["noncentral-commutator", 4, false, "-", "-", "exact"]);
                report.fail("noncentral-commutator", "every commutator of two loops is scalar");
            }
        }
        report.section(found);
    }
    Ok(report)
}
