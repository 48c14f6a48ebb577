//! Tabular reports: TSV with a one-line header per section, or JSON with
//! the same field names.

use serde_json::{Map, Value};

#[derive(Clone, Debug)]
pub struct Section {
    pub name: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Section {
    pub fn new(name: &'static str, columns: &[&'static str]) -> Self {
        Section { name, columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len(), "section {}", self.name);
        self.rows.push(row);
    }
}

/// Builds a row from heterogeneous displayable values.
#[macro_export]
macro_rules! row {
    ($($x:expr),* $(,)?) => { vec![$($x.to_string()),*] };
}

/// Everything a subcommand produces besides the files it writes.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub sections: Vec<Section>,
    /// `(check, detail)` for every failed check.
    pub failures: Vec<(String, String)>,
}

impl Report {
    pub fn section(&mut self, s: Section) {
        self.sections.push(s);
    }

    pub fn fail(&mut self, check: impl Into<String>, detail: impl Into<String>) {
        self.failures.push((check.into(), detail.into()));
    }

    /// Records a check row after the `context` columns, and its failure.
    pub fn check(&mut self, section: &mut Section, context: &[String], name: &str, passed: bool, detail: &str) {
        let mut r = context.to_vec();
        r.extend(row![name, passed, if detail.is_empty() { "-" } else { detail }]);
        section.push(r);
        if !passed {
            let mut label = context.join(" ");
            if !label.is_empty() {
                label.push(' ');
            }
            label.push_str(name);
            self.fail(label, detail);
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_tsv(&self, timestamp: Option<u64>) -> String {
        let mut out = String::new();
        if let Some(t) = timestamp {
            out.push_str(&format!("# generated\t{t}\n"));
        }
        for (i, s) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.push_str(&s.columns.join("\t"));
            out.push('\n');
            for r in &s.rows {
                let cells: Vec<String> = r.iter().map(|c| c.replace(['\t', '\n'], " ")).collect();
                out.push_str(&cells.join("\t"));
                out.push('\n');
            }
        }
        out
    }

    pub fn to_json(&self, timestamp: Option<u64>) -> String {
        let mut top = Map::new();
        if let Some(t) = timestamp {
            top.insert("generated".into(), t.into());
        }
        let mut sections = Map::new();
        for s in &self.sections {
            let rows = s
                .rows
                .iter()
                .map(|r| Value::Object(s.columns.iter().zip(r).map(|(c, v)| (c.to_string(), v.clone().into())).collect()))
                .collect();
            sections.insert(s.name.into(), Value::Array(rows));
        }
        top.insert("sections".into(), Value::Object(sections));
        let failures = self
            .failures
            .iter()
            .map(|(c, d)| {
                let mut m = Map::new();
                m.insert("check".into(), c.clone().into());
                m.insert("detail".into(), d.clone().into());
                Value::Object(m)
            })
            .collect();
        top.insert("failures".into(), Value::Array(failures));
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("plain values serialize");
        s.push('\n');
        s
    }

    /// Machine-readable failure list for stderr.
    pub fn failures_tsv(&self) -> String {
        let mut out = String::from("failed\tdetail\n");
        for (c, d) in &self.failures {
            out.push_str(&format!("{c}\t{}\n", if d.is_empty() { "-" } else { d }));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::default();
        let mut s = Section::new("dims", &["g", "p", "dim"]);
        s.push(row![2, 7, 14]);
        r.section(s);
        let mut c = Section::new("checks", &["check", "passed", "detail"]);
        r.check(&mut c, &[], "x", false, "");
        r.section(c);
        r
    }

    #[test]
    fn tsv_sections() {
        let r = sample();
        assert_eq!(r.to_tsv(None), "g\tp\tdim\n2\t7\t14\n\ncheck\tpassed\tdetail\nx\tfalse\t-\n");
        assert!(r.to_tsv(Some(5)).starts_with("# generated\t5\n"));
        assert!(!r.passed());
    }

    #[test]
    fn json_keeps_field_names() {
        let v: Value = serde_json::from_str(&sample().to_json(None)).unwrap();
        assert_eq!(v["sections"]["dims"][0]["dim"], "14");
        assert_eq!(v["failures"][0]["check"], "x");
        assert!(v.get("generated").is_none());
    }
}
