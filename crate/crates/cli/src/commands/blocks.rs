use num_bigint::BigUint;
use num_traits::Zero;
use tqft_core::blocks::{
    check_compare, check_growth, count_colorings, dim_closed_form, dim_recursive, growth_ratio, labels_text,
    square_scan as scan, verlinde_dim, ClosedForm, ColoredGraph, DimRow, DimTable, Method,
};
use tqft_core::cyclo::Level;
use tqft_core::primes::primes_in;

use super::level;
use crate::error::{CliError, CliResult};
use crate::report::{Report, Section};
use crate::{row, Ctx, DimsArgs, LemmaArgs, ScanArgs};

const RATIO_TARGET: f64 = 0.7;
const RATIO_TOLERANCE: f64 = 0.01;

fn parse_labels(s: &str, l: Level) -> CliResult<Vec<u32>> {
    if s == "-" || s.is_empty() {
        return Ok(Vec::new());
    }
    let labels: Vec<u32> = s
        .split(',')
        .map(|c| c.trim().parse().map_err(|_| CliError::Config(format!("label '{s}': '{c}' is not a color"))))
        .collect::<CliResult<_>>()?;
    for &c in &labels {
        if c % 2 == 1 || c + 3 > l.p() {
            return Err(CliError::Config(format!("label {c} at p={}: colors are even and at most p-3", l.p())));
        }
    }
    Ok(labels)
}

fn all_tuples(l: Level) -> Vec<Vec<u32>> {
    let colors: Vec<u32> = l.colors().collect();
    let mut out = vec![vec![]];
    for &a in &colors {
        out.push(vec![a]);
    }
    for &a in &colors {
        for &b in colors.iter().filter(|&&b| b >= a) {
            out.push(vec![a, b]);
        }
    }
    out
}

fn closed_form_kind(g: usize, labels: &[u32], p: u32) -> Option<ClosedForm> {
    match (g, labels) {
        (1, []) => Some(ClosedForm::Genus1(0, 0)),
        (1, [i]) => Some(ClosedForm::Genus1(*i, 0)),
        (1, [i, j]) => Some(ClosedForm::Genus1(*i, *j)),
        (2, [k]) if *k + 3 == p => Some(ClosedForm::Genus2Top),
        (3, [k]) if *k + 3 == p => Some(ClosedForm::Genus3Top),
        _ => None,
    }
}

pub fn dims(a: &DimsArgs, ctx: &Ctx) -> CliResult<Report> {
    let methods = if a.methods.is_empty() { Method::ALL.to_vec() } else { a.methods.clone() };
    // validate every cell before computing anything
    let mut cells = Vec::new();
    for &p in &a.p {
        let l = level(p)?;
        let tuples = if a.all_labels {
            all_tuples(l)
        } else if a.labels.is_empty() {
            vec![vec![]]
        } else {
            a.labels.iter().map(|s| parse_labels(s, l)).collect::<CliResult<_>>()?
        };
        for &g in &a.g {
            for labels in &tuples {
                if g == 0 && labels.len() < 3 {
                    if a.all_labels {
                        continue;
                    }
                    return Err(CliError::Config(format!("genus 0 needs at least three boundary colors, got {}", labels.len())));
                }
                cells.push((g, l, labels.clone()));
            }
        }
    }
    let mut table = DimTable::default();
    let mut report = Report::default();
    for (g, l, labels) in cells {
        for &m in &methods {
            let dim = match m {
                Method::Enumeration => BigUint::from(count_colorings(&ColoredGraph::surface(g, &labels)?, l)?),
                Method::Recursion => dim_recursive(g, l, &labels)?,
                Method::Verlinde => verlinde_dim(g, l, &labels)?,
                Method::ClosedForm => {
                    let Some(kind) = closed_form_kind(g, &labels, l.p()) else { continue };
                    let v = dim_closed_form(kind, l)?;
                    match v.is_integer().then(|| v.to_integer().to_biguint()).flatten() {
                        Some(d) => d,
                        None => {
                            report.fail(format!("g={g} p={} labels={}", l.p(), labels_text(&labels)), format!("closed form {v} is not a natural number"));
                            continue;
                        }
                    }
                }
            };
            table.push(DimRow { g, p: l.p(), labels: labels.clone(), dim, method: m });
        }
    }
    for (x, y) in table.disagreements() {
        report.fail(
            format!("g={} p={} labels={}", x.g, x.p, labels_text(&x.labels)),
            format!("{} {} != {} {}", x.method, x.dim, y.method, y.dim),
        );
    }
    let mut s = Section::new("dims", &["g", "p", "labels", "dim", "method"]);
    for r in &table.rows {
        s.push(row![r.g, r.p, labels_text(&r.labels), r.dim, r.method]);
    }
    report.section(s);
    if let Some(path) = &a.output {
        ctx.write(path, &table.to_tsv())?;
    }
    Ok(report)
}

pub fn verify_lemmas(a: &LemmaArgs) -> CliResult<Report> {
    if a.gmax < 2 {
        return Err(CliError::Config(format!("gmax {} is below 2", a.gmax)));
    }
    let levels: Vec<Level> = a.p.iter().map(|&p| level(p)).collect::<CliResult<_>>()?;
    let ratio_level = a.ratio_p.map(level).transpose()?;
    let mut report = Report::default();

    let mut compare = Section::new("compare", &["g", "p", "top", "zero", "relation", "holds", "method"]);
    let mut growth = Section::new("growth", &["g", "p", "next", "bound", "bound_kind", "holds", "method"]);
    let mut decomposition = Section::new("decomposition", &["g", "p", "dim", "sum", "holds", "method"]);
    for &l in &levels {
        for g in 2..=a.gmax {
            let c = check_compare(g, l);
            let relation = if c.expect_equal { "equal" } else { "greater" };
            compare.push(row![g, c.p, c.top, c.zero, relation, c.holds, Method::Recursion]);
            if !c.holds {
                report.fail(format!("compare g={g} p={}", c.p), format!("top {} zero {}", c.top, c.zero));
            }
            let r = check_growth(g, l);
            let kind = if r.square_bound { "square" } else { "binomial" };
            growth.push(row![g, r.p, r.next, r.bound, kind, r.holds, Method::Recursion]);
            if !r.holds {
                report.fail(format!("growth g={g} p={}", r.p), format!("next {} bound {}", r.next, r.bound));
            }
        }
        // dim W_{g+1} against the sum over the separating color
        for g in 1..a.gmax.min(4) {
            let whole = verlinde_dim(g + 1, l, &[])?;
            let mut sum = BigUint::zero();
            for i in l.colors() {
                sum += dim_recursive(g, l, &[i])? * dim_recursive(1, l, &[i])?;
            }
            let holds = whole == sum;
            decomposition.push(row![g + 1, l.p(), whole, sum, holds, "verlinde,recursion"]);
            if !holds {
                report.fail(format!("decomposition g={} p={}", g + 1, l.p()), format!("{whole} != {sum}"));
            }
        }
    }
    report.section(compare);
    report.section(growth);
    report.section(decomposition);
    if let Some(l) = ratio_level {
        let (_, r) = growth_ratio(l);
        let holds = (r - RATIO_TARGET).abs() <= RATIO_TOLERANCE;
        let mut s = Section::new("ratio", &["p", "ratio", "target", "tolerance", "holds", "method"]);
        s.push(row![l.p(), format!("{r:.6}"), RATIO_TARGET, RATIO_TOLERANCE, holds, Method::Recursion]);
        if !holds {
            report.fail(format!("ratio p={}", l.p()), format!("{r:.6}"));
        }
        report.section(s);
    }
    Ok(report)
}

pub fn square_scan(a: &ScanArgs) -> CliResult<Report> {
    if a.max < 5 {
        return Err(CliError::Config(format!("max {} is below the smallest level 5", a.max)));
    }
    let checked = primes_in(5, a.max).len();
    let hits = scan(a.max);
    let mut report = Report::default();
    let mut s = Section::new("scan", &["p_max", "primes", "squares", "method", "result"]);
    s.push(row![a.max, checked, hits.len(), Method::Recursion, format!("{} squares found", hits.len())]);
    report.section(s);
    if !hits.is_empty() {
        let mut h = Section::new("hits", &["p", "value", "sqrt"]);
        for hit in &hits {
            let r = hit.value.sqrt();
            h.push(row![hit.p, hit.value, r]);
            report.fail(format!("square p={}", hit.p), format!("1 + 8 dim = {} = {r}^2", hit.value));
        }
        report.section(h);
    }
    Ok(report)
}
