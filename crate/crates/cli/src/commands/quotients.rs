use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use tqft_core::cyclo::RootChoice;
use tqft_core::primes::is_prime;
use tqft_core::quotients::cells::cell;
use tqft_core::quotients::{
    check_prime, first_split_prime, normality_check, prime_field, reduce_rep, same_subgroup, Closure, ClosureOptions,
    ClosureResult, ClosureStatus, Decision, ResidueMatrix, ResidueRep, DEFAULT_CAP,
};
use tqft_core::rep::{RepBundle, Representation};

use super::{build, level, root, spec, stem};
use crate::error::{CliError, CliResult};
use crate::report::{Report, Section};
use crate::{row, ClosureArgs, CompareArgs, Ctx, ReduceArgs, SourceArgs};

const RUN_COLUMNS: [&str; 9] = ["p", "q", "f", "spec", "generators", "status", "order", "time", "method"];

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn read_bundle(path: &Path) -> CliResult<RepBundle> {
    RepBundle::from_text(&read(path)?).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn prime_arg(q: &str, bundle: &RepBundle) -> CliResult<u64> {
    if q == "auto" {
        return Ok(first_split_prime(bundle)?);
    }
    let q = q.parse().map_err(|_| CliError::Config(format!("q '{q}' is neither 'auto' nor a number")))?;
    check_prime(q, level(bundle.p as u64)?)?;
    Ok(q)
}

fn bundle_from(spec_arg: &str, p: u64, root_arg: &str) -> CliResult<(Representation, RepBundle)> {
    let rep = build(&spec(spec_arg)?, root(p, root_arg)?)?;
    let b = RepBundle::from_representation(&rep);
    Ok((rep, b))
}

pub fn reduce(a: &ReduceArgs, ctx: &Ctx) -> CliResult<Report> {
    let bundle = match (&a.bundle, &a.spec, a.p) {
        (Some(path), _, _) => read_bundle(path)?,
        (None, Some(s), Some(p)) => bundle_from(s, p, &a.root)?.1,
        _ => return Err(CliError::Config("reduce needs --spec and --p, or --bundle".into())),
    };
    let q = prime_arg(&a.q, &bundle)?;
    let residue = reduce_rep(&bundle, q, a.modulus_index)?;
    let path = a.output.clone().unwrap_or_else(|| {
        ctx.out_dir.join(format!("{}-p{}-t{}-q{q}-m{}.res", stem(&bundle.spec), bundle.p, bundle.t, a.modulus_index))
    });
    ctx.write(&path, &residue.to_text())?;
    let mut report = Report::default();
    let mut sec = Section::new("residue", &["spec", "p", "q", "f", "modulus_index", "dim", "file"]);
    sec.push(row![bundle.spec, bundle.p, q, residue.field.f(), a.modulus_index, residue.dim(), path.display()]);
    report.section(sec);
    let mut checks = Section::new("checks", &["check", "passed", "detail"]);
    for item in residue.check().items {
        report.check(&mut checks, &[], &item.name, item.passed, &item.detail);
    }
    report.section(checks);
    Ok(report)
}

/// A residue representation with the generator and loop names of the
/// surface it came from.
struct Source {
    residue: ResidueRep,
    generators: Vec<String>,
    loops: Vec<String>,
    opts: ClosureOptions,
}

impl Source {
    fn resolve(a: &SourceArgs) -> CliResult<Source> {
        let mut opts = ClosureOptions { cap: DEFAULT_CAP, projective: a.projective, histogram: false };
        let (rep, residue) = if let Some(name) = &a.cell {
            let c = cell(name).ok_or_else(|| CliError::Config(format!("unknown cell '{name}'")))?;
            opts = ClosureOptions { projective: c.projective || a.projective, ..c.options() };
            let data = c.build()?;
            (data.rep, data.residue)
        } else if let Some(path) = &a.residue {
            let residue = ResidueRep::from_text(&read(path)?).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            let r = tqft_core::cyclo::make_root(level(residue.field.p() as u64)?, RootChoice::Exponent(residue.t as i64))?;
            (build(&spec(&residue.spec)?, r)?, residue)
        } else if let (Some(s), Some(p)) = (&a.spec, a.p) {
            let (rep, bundle) = bundle_from(s, p, &a.root)?;
            let q = prime_arg(&a.q, &bundle)?;
            let residue = reduce_rep(&bundle, q, a.modulus_index)?;
            (rep, residue)
        } else {
            return Err(CliError::Config("give --cell, --residue, or --spec with --p".into()));
        };
        if let Some(cap) = a.cap {
            if cap == 0 {
                return Err(CliError::Config("cap must be positive".into()));
            }
            opts.cap = cap;
        }
        let names = |ops: &[tqft_core::rep::RepMatrix]| ops.iter().map(|g| g.name.clone()).collect();
        Ok(Source { generators: names(rep.generators()), loops: names(rep.loops()), residue, opts })
    }

    fn set(&self, name: &str) -> CliResult<Vec<ResidueMatrix>> {
        let names: Vec<String> = match name {
            "generators" => self.generators.clone(),
            "loops" => self.loops.clone(),
            list => list.split(',').map(|s| s.trim().to_string()).collect(),
        };
        if names.is_empty() || names.iter().any(String::is_empty) {
            return Err(CliError::Config(format!("empty generator set '{name}'")));
        }
        names.iter().map(|n| Ok(self.residue.matrix(n)?.matrix.clone())).collect()
    }

    fn run_row(&self, set: &str, r: &ClosureResult, time: String) -> Vec<String> {
        let f = &self.residue.field;
        run_row(&f.p().to_string(), f.q(), f.f(), &self.residue.spec, set, r, time)
    }
}

fn run_row(p: &str, q: u64, f: usize, spec: &str, set: &str, r: &ClosureResult, time: String) -> Vec<String> {
    // only a complete closure has an order
    let order = r.order().map_or("-".to_string(), |o| o.to_string());
    row![p, q, f, spec, set, r.status, order, time, "closure"]
}

fn histogram_section(h: &BTreeMap<u64, u64>) -> Section {
    let mut s = Section::new("orders", &["element_order", "count", "method"]);
    for (o, c) in h {
        s.push(row![o, c, "closure"]);
    }
    s
}

pub fn closure(a: &ClosureArgs, ctx: &Ctx) -> CliResult<Report> {
    let mut report = Report::default();
    let mut runs = Section::new("runs", &RUN_COLUMNS);
    let start = Instant::now();
    let result = if let Some(q) = a.sl2 {
        if q < 3 || !is_prime(q) {
            return Err(CliError::Config(format!("sl2 needs an odd prime, got {q}")));
        }
        let opts = ClosureOptions {
            cap: a.source.cap.unwrap_or(DEFAULT_CAP),
            projective: a.source.projective,
            histogram: a.histogram,
        };
        let gens = vec![vec![1, 1, 0, 1], vec![1, 0, 1, 1]];
        let c = Closure::run_indices(prime_field(q)?, 2, &gens, opts, &[])?;
        let r = c.result().clone();
        runs.push(run_row("-", q, 1, &format!("SL(2,{q})"), "transvections", &r, ctx.elapsed(start)));
        r
    } else {
        let src = Source::resolve(&a.source)?;
        let gens = src.set(&a.gens)?;
        let opts = ClosureOptions { histogram: a.histogram, ..src.opts };
        let r = Closure::run(&src.residue.field, &gens, opts)?.result().clone();
        runs.push(src.run_row(&a.gens, &r, ctx.elapsed(start)));
        r
    };
    report.section(runs);
    if let Some(h) = &result.histogram {
        report.section(histogram_section(h));
    }
    if let Some(want) = a.expect_order {
        let mut checks = Section::new("checks", &["check", "passed", "detail"]);
        let passed = result.order() == Some(want);
        let detail = match result.status {
            ClosureStatus::Complete { order } => format!("order {order}"),
            s => format!("{s} after {} elements", result.elements),
        };
        report.check(&mut checks, &[], &format!("order={want}"), passed, &detail);
        report.section(checks);
    }
    Ok(report)
}

pub fn compare_images(a: &CompareArgs, ctx: &Ctx) -> CliResult<Report> {
    let src = Source::resolve(&a.source)?;
    let (ga, gb) = (src.set(&a.a)?, src.set(&a.b)?);
    let field = &src.residue.field;
    let mut report = Report::default();
    let mut runs = Section::new("runs", &RUN_COLUMNS);
    let mut decisions = Section::new("decisions", &["check", "passed", "detail"]);

    let start = Instant::now();
    let cmp = same_subgroup(field, &ga, &gb, src.opts)?;
    let time = ctx.elapsed(start);
    runs.push(src.run_row(&a.a, &cmp.a, time.clone()));
    if let Some(rb) = &cmp.b {
        runs.push(src.run_row(&a.b, rb, time));
    }
    let name = format!("same_subgroup({},{})", a.a, a.b);
    report.check(&mut decisions, &[], &name, cmp.decision == Decision::True, &cmp.decision.to_string());

    if a.normality {
        let start = Instant::now();
        let (d, r) = normality_check(field, &ga, &gb, src.opts)?;
        runs.push(src.run_row(&a.a, &r, ctx.elapsed(start)));
        let name = format!("normal({} in {})", a.a, a.b);
        report.check(&mut decisions, &[], &name, d == Decision::True, &d.to_string());
    }
    report.section(runs);
    report.section(decisions);
    Ok(report)
}
