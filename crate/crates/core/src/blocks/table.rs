use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Enumeration,
    Recursion,
    ClosedForm,
    Verlinde,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Enumeration, Method::Recursion, Method::ClosedForm, Method::Verlinde];

    pub fn tag(self) -> &'static str {
        match self {
            Method::Enumeration => "enumeration",
            Method::Recursion => "recursion",
            Method::ClosedForm => "closed-form",
            Method::Verlinde => "verlinde",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Method::ALL.into_iter().find(|m| m.tag() == s).ok_or_else(|| format!("unknown method '{s}'"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimRow {
    pub g: usize,
    pub p: u32,
    pub labels: Vec<u32>,
    pub dim: BigUint,
    pub method: Method,
}

/// Dimension values keyed by genus, level and boundary colors, one row per
/// method.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DimTable {
    pub rows: Vec<DimRow>,
}

pub const DIM_TABLE_HEADER: &str = "g\tp\tlabels\tdim\tmethod";

pub fn labels_text(labels: &[u32]) -> String {
    if labels.is_empty() {
        "-".to_string()
    } else {
        labels.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
    }
}

impl DimTable {
    pub fn push(&mut self, row: DimRow) {
        self.rows.push(row);
    }

    /// Cells where two methods disagree, as `(first, second)` row pairs.
    pub fn disagreements(&self) -> Vec<(&DimRow, &DimRow)> {
        let mut out = Vec::new();
        for (i, a) in self.rows.iter().enumerate() {
            for b in &self.rows[i + 1..] {
                if (a.g, a.p, &a.labels) == (b.g, b.p, &b.labels) && a.dim != b.dim {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::from(DIM_TABLE_HEADER);
        s.push('\n');
        for r in &self.rows {
            s.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", r.g, r.p, labels_text(&r.labels), r.dim, r.method));
        }
        s
    }

    pub fn from_tsv(text: &str) -> Result<Self> {
        let mut lines = text.split_inclusive('\n');
        let header = lines.next().ok_or_else(|| Error::parse(0, "empty table"))?;
        if header.trim_end_matches('\n') != DIM_TABLE_HEADER {
            return Err(Error::parse(0, "unexpected header"));
        }
        let mut offset = header.len();
        let mut rows = Vec::new();
        for line in lines {
            let body = line.strip_suffix('\n').ok_or_else(|| Error::parse(offset + line.len(), "missing newline"))?;
            let fields: Vec<&str> = body.split('\t').collect();
            if fields.len() != 5 {
                return Err(Error::parse(offset, "expected 5 fields"));
            }
            let mut col = offset;
            let mut at = |i: usize| {
                let o = col;
                col += fields[i].len() + 1;
                o
            };
            let (o0, o1, o2, o3, o4) = (at(0), at(1), at(2), at(3), at(4));
            let g = fields[0].parse().map_err(|_| Error::parse(o0, "bad genus"))?;
            let p = fields[1].parse().map_err(|_| Error::parse(o1, "bad level"))?;
            let labels = if fields[2] == "-" {
                Vec::new()
            } else {
                fields[2]
                    .split(',')
                    .map(|c| c.parse::<u32>().map_err(|_| Error::parse(o2, "bad label")))
                    .collect::<Result<Vec<_>>>()?
            };
            let dim: BigUint = fields[3].parse().map_err(|_| Error::parse(o3, "bad dimension"))?;
            let method = fields[4].parse().map_err(|m: String| Error::parse(o4, m))?;
            let row = DimRow { g, p, labels, dim, method };
            rows.push(row);
            offset += line.len();
        }
        let table = DimTable { rows };
        if table.to_tsv() != text {
            return Err(Error::parse(0, "table is not in canonical form"));
        }
        Ok(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tsv_round_trip() {
        let mut t = DimTable::default();
        t.push(DimRow { g: 2, p: 7, labels: vec![4], dim: 14u32.into(), method: Method::Recursion });
        t.push(DimRow { g: 1, p: 5, labels: vec![], dim: 2u32.into(), method: Method::Verlinde });
        let s = t.to_tsv();
        assert_eq!(DimTable::from_tsv(&s).unwrap(), t);
        let bad = s.replace("14", "1x");
        assert!(matches!(DimTable::from_tsv(&bad), Err(Error::Parse { .. })));
    }
}
