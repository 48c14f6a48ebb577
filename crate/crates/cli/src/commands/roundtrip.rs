use tqft_core::blocks::{DimTable, DIM_TABLE_HEADER};
use tqft_core::quotients::ResidueRep;
use tqft_core::rep::RepBundle;
use tqft_core::Error;

use crate::error::{CliError, CliResult};
use crate::report::{Report, Section};
use crate::{row, RoundtripArgs};

fn first_difference(a: &str, b: &str) -> usize {
    a.bytes().zip(b.bytes()).position(|(x, y)| x != y).unwrap_or(a.len().min(b.len()))
}

/// Parses `text` and serializes it again; `Err(offset, message)` on
/// corruption or any byte difference.
fn cycle(text: &str) -> (&'static str, Result<(), (usize, String)>) {
    let parsed = |r: Result<String, Error>| match r {
        Ok(back) if back == text => Ok(()),
        Ok(back) => Err((first_difference(&back, text), "re-serialization differs".to_string())),
        Err(Error::Parse { offset, message }) => Err((offset, message)),
        Err(e) => Err((0, e.to_string())),
    };
    if text.starts_with("format\trep\n") {
        ("rep", parsed(RepBundle::from_text(text).map(|b| b.to_text())))
    } else if text.starts_with("format\tresidue\n") {
        ("residue", parsed(ResidueRep::from_text(text).map(|r| r.to_text())))
    } else if text.starts_with(DIM_TABLE_HEADER) {
        ("dims", parsed(DimTable::from_tsv(text).map(|t| t.to_tsv())))
    } else {
        ("unknown", Err((0, "not a bundle, residue bundle or dimension table".to_string())))
    }
}

pub fn roundtrip(a: &RoundtripArgs) -> CliResult<Report> {
    let text = std::fs::read_to_string(&a.file).map_err(|e| CliError::Io(format!("{}: {e}", a.file.display())))?;
    let (format, outcome) = cycle(&text);
    let mut report = Report::default();
    let mut sec = Section::new("roundtrip", &["file", "format", "bytes", "identical", "offset", "detail"]);
    let file = a.file.display().to_string();
    match outcome {
        Ok(()) => sec.push(row![file, format, text.len(), true, "-", "-"]),
        Err((offset, message)) => {
            sec.push(row![file, format, text.len(), false, offset, message]);
            report.fail(format!("roundtrip {file}"), format!("byte {offset}: {message}"));
        }
    }
    report.section(sec);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_tables_cycle() {
        let text = format!("{DIM_TABLE_HEADER}\n2\t7\t4\t14\trecursion\n");
        assert_eq!(cycle(&text), ("dims", Ok(())));
        let bad = format!("{DIM_TABLE_HEADER}\n2\t7\t4\tx\trecursion\n");
        let (_, r) = cycle(&bad);
        assert_eq!(r.unwrap_err().0, DIM_TABLE_HEADER.len() + 7);
        assert_eq!(cycle("hello\n").0, "unknown");
    }
}
