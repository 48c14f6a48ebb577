//! Line-oriented matrix bundles.
//!
//! ```text
//! format<TAB>rep
//! p<TAB>7
//! t<TAB>11
//! spec<TAB>torus2(2,4)
//! graph<TAB>e1 e0 l0:2 | e1 l1:4 e0
//! basis<TAB>2,2
//! weight<TAB><entry>
//! matrix<TAB><name><TAB><provenance>
//! row<TAB><entry> <entry> ...
//! ```
//!
//! `basis` and `weight` lines appear once per basis vector, each matrix is
//! followed by one `row` line per row. Readers accept only the canonical
//! text their writer produces.

use super::surfaces::{RepMatrix, Representation};
use crate::blocks::{Coloring, ColoredGraph, Slot};
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Cursor over newline-terminated lines with byte offsets.
pub(crate) struct Lines<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Lines<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Lines { text, pos: 0 }
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.text.len()
    }

    fn peek(&self) -> Option<&'a str> {
        let rest = &self.text[self.pos..];
        (!rest.is_empty()).then(|| rest.split('\n').next().unwrap_or(""))
    }

    pub(crate) fn peek_key(&self) -> Option<&'a str> {
        self.peek().map(|l| l.split('\t').next().unwrap_or(""))
    }

    pub(crate) fn pos(&self) -> usize {
        self.pos
    }

    /// Next line split on tabs, with the offset of each field.
    pub(crate) fn fields(&mut self) -> Result<Vec<(usize, &'a str)>> {
        let start = self.pos;
        let rest = &self.text[start..];
        let end = rest.find('\n').ok_or_else(|| Error::parse(self.text.len(), "missing final newline"))?;
        self.pos = start + end + 1;
        let mut out = Vec::new();
        let mut off = start;
        for f in rest[..end].split('\t') {
            out.push((off, f));
            off += f.len() + 1;
        }
        Ok(out)
    }

    /// Next line, which must be `key<TAB>value`.
    pub(crate) fn keyed(&mut self, key: &str) -> Result<(usize, &'a str)> {
        let at = self.pos;
        let f = self.fields()?;
        match f[..] {
            [(_, k), v] if k == key => Ok(v),
            _ => Err(Error::parse(at, format!("expected '{key}' line"))),
        }
    }

    pub(crate) fn keyed_num<T: std::str::FromStr>(&mut self, key: &str) -> Result<T> {
        let (off, v) = self.keyed(key)?;
        v.parse().map_err(|_| Error::parse(off, format!("bad {key}")))
    }
}

/// First byte where `a` and `b` differ.
pub(crate) fn first_difference(a: &str, b: &str) -> usize {
    a.bytes().zip(b.bytes()).position(|(x, y)| x != y).unwrap_or(a.len().min(b.len()))
}

pub(crate) fn coloring_text(c: &[u32]) -> String {
    if c.is_empty() {
        "-".into()
    } else {
        c.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
    }
}

pub(crate) fn parse_coloring(off: usize, s: &str) -> Result<Coloring> {
    if s == "-" {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| x.parse().map_err(|_| Error::parse(off, "bad coloring"))).collect()
}

pub fn graph_text(g: &ColoredGraph) -> String {
    (0..g.vertex_count())
        .map(|v| {
            g.corners(v)
                .iter()
                .map(|s| match *s {
                    Slot::Edge(e) => format!("e{e}"),
                    Slot::Leg(l) => format!("l{l}:{}", g.legs()[l].1),
                })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join(" | ")
}

pub fn parse_graph(off: usize, s: &str) -> Result<ColoredGraph> {
    let bad = || Error::parse(off, "bad graph");
    let mut corners = Vec::new();
    let mut legs: Vec<Option<u32>> = Vec::new();
    let mut edges = 0;
    for vertex in s.split(" | ") {
        let mut cs = Vec::new();
        for tok in vertex.split(' ') {
            if let Some(e) = tok.strip_prefix('e') {
                let e: usize = e.parse().map_err(|_| bad())?;
                edges = edges.max(e + 1);
                cs.push(Slot::Edge(e));
            } else if let Some(l) = tok.strip_prefix('l') {
                let (i, c) = l.split_once(':').ok_or_else(bad)?;
                let (i, c): (usize, u32) = (i.parse().map_err(|_| bad())?, c.parse().map_err(|_| bad())?);
                if legs.len() <= i {
                    legs.resize(i + 1, None);
                }
                legs[i] = Some(c);
                cs.push(Slot::Leg(i));
            } else {
                return Err(bad());
            }
        }
        corners.push(<[Slot; 3]>::try_from(cs).map_err(|_| bad())?);
    }
    let legs = legs.into_iter().collect::<Option<Vec<_>>>().ok_or_else(bad)?;
    ColoredGraph::from_corners(corners, edges, legs).map_err(|e| Error::parse(off, e.to_string()))
}

/// Writes the `matrix` and `row` lines of one named matrix.
pub(crate) fn write_matrix<E>(out: &mut String, name: &str, provenance: &str, m: &Matrix<E>, fmt: impl Fn(&E) -> String) {
    out.push_str(&format!("matrix\t{name}\t{provenance}\n"));
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(&fmt).collect();
        out.push_str(&format!("row\t{}\n", row.join(" ")));
    }
}

/// Reads every remaining named `dim x dim` matrix.
pub(crate) fn read_matrices<E>(
    lines: &mut Lines<'_>,
    dim: usize,
    parse: impl Fn(&str, usize) -> Result<E>,
) -> Result<Vec<(String, String, Matrix<E>)>> {
    let mut out = Vec::new();
    while !lines.at_end() {
        let at = lines.pos;
        let head = lines.fields()?;
        let (name, provenance) = match head[..] {
            [(_, "matrix"), (_, n), (_, pv)] => (n.to_string(), pv.to_string()),
            _ => return Err(Error::parse(at, "expected 'matrix' line")),
        };
        let mut data = Vec::with_capacity(dim * dim);
        for _ in 0..dim {
            let (off, row) = lines.keyed("row")?;
            let mut o = off;
            let mut count = 0;
            for tok in row.split(' ') {
                data.push(parse(tok, o)?);
                o += tok.len() + 1;
                count += 1;
            }
            if count != dim {
                return Err(Error::parse(off, format!("expected {dim} entries")));
            }
        }
        out.push((name, provenance, Matrix::from_vec(dim, dim, data)));
    }
    Ok(out)
}

/// Generator and loop images of a representation with the data needed to
/// interpret them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepBundle {
    pub p: u32,
    /// Root exponent: `A = A0^t` with `A0 = -zeta^((p+1)/2)`.
    pub t: u32,
    pub spec: String,
    pub graph: ColoredGraph,
    pub basis: Vec<Coloring>,
    pub weights: Vec<CycNum>,
    pub matrices: Vec<RepMatrix>,
}

impl RepBundle {
    pub fn from_representation(rep: &Representation) -> Self {
        let q = rep.space().quantum();
        RepBundle {
            p: q.p(),
            t: q.root().exponent(),
            spec: rep.spec().to_string(),
            graph: rep.space().graph().clone(),
            basis: rep.space().basis().to_vec(),
            weights: rep.space().weights().to_vec(),
            matrices: rep.operators().cloned().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn matrix(&self, name: &str) -> Result<&RepMatrix> {
        self.matrices.iter().find(|m| m.name == name).ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub(crate) fn write_header(&self, out: &mut String, format: &str) {
        out.push_str(&format!("format\t{format}\np\t{}\nt\t{}\nspec\t{}\n", self.p, self.t, self.spec));
        out.push_str(&format!("graph\t{}\n", graph_text(&self.graph)));
        for c in &self.basis {
            out.push_str(&format!("basis\t{}\n", coloring_text(c)));
        }
    }

    /// Reads `format` through the `basis` lines.
    pub(crate) fn read_header(lines: &mut Lines<'_>, format: &str) -> Result<(u32, u32, String, ColoredGraph, Vec<Coloring>)> {
        let (off, f) = lines.keyed("format")?;
        if f != format {
            return Err(Error::parse(off, format!("expected format '{format}'")));
        }
        let p = lines.keyed_num("p")?;
        let t = lines.keyed_num("t")?;
        let spec = lines.keyed("spec")?.1.to_string();
        let (off, g) = lines.keyed("graph")?;
        let graph = parse_graph(off, g)?;
        let mut basis = Vec::new();
        while lines.peek_key() == Some("basis") {
            let (off, c) = lines.keyed("basis")?;
            basis.push(parse_coloring(off, c)?);
        }
        Ok((p, t, spec, graph, basis))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_header(&mut out, "rep");
        for w in &self.weights {
            out.push_str(&format!("weight\t{}\n", w.to_text(self.p)));
        }
        for m in &self.matrices {
            write_matrix(&mut out, &m.name, &m.provenance, &m.matrix, |x| x.to_text(self.p));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = Lines::new(text);
        let (p, t, spec, graph, basis) = Self::read_header(&mut lines, "rep")?;
        let mut weights = Vec::new();
        for _ in 0..basis.len() {
            let (off, w) = lines.keyed("weight")?;
            weights.push(CycNum::parse_at(w, off)?);
        }
        let matrices = read_matrices(&mut lines, basis.len(), CycNum::parse_at)?
            .into_iter()
            .map(|(name, provenance, matrix)| RepMatrix { name, provenance, matrix })
            .collect();
        let bundle = RepBundle { p, t, spec, graph, basis, weights, matrices };
        let back = bundle.to_text();
        if back != text {
            return Err(Error::parse(first_difference(&back, text), "bundle is not in canonical form"));
        }
        Ok(bundle)
    }
}
