//! The supported surfaces, their basis graphs and their named curves and
//! based loops.
//!
//! Curve generators are named `T_<curve>`, half-twists `s<m>`, and based
//! loops (point-pushing operators) carry plain names. The tables:
//!
//! | surface | graph | generators | loops |
//! |---|---|---|---|
//! | `torus1(i)` | loop `a` at a vertex with leg `i` | `T_a`, `T_b = S T_a S^-1` | none |
//! | `torus2(i,j)` | edges `x`, `y` between `u = (y,x,i)` and `v = (y,j,x)` | `T_x`, `T_y`, `T_b`, `T_d` | `x`, `y`, `d` (point `j` pushed) |
//! | `sphere(c0,...)` | caterpillar, legs in cyclic order | `s1 .. s{k-1}` on the leading run of equal colors | `l1 .. l{k-1}` (leg 0 pushed) |
//! | `genus2` | dumbbell `u = (e,a,a)`, `v = (e,b,b)` | chain `T_a1 T_b1 T_c T_b2 T_a2` | none |
//! | `genus2pt(i)` | `u = (e1,a,a)`, `w = (e1,i,e2)`, `v = (e2,b,b)` | chain `T_a1 T_b1 T_c T_b2 T_a2` | `a1 b1 c b2 a2` (point `i` pushed) |
//!
//! `T_b` is the twist along the curve meeting the loop edge once, obtained
//! from the modular transformation `S` of its one-holed torus. On
//! `torus2`, flipping `y` turns `x` into a loop with a new edge `z`
//! separating the two legs from the handle; `T_d` is the twist dual to `z`.
//! Loops are `T_+ T_-^-1` for the two boundary curves of an annulus around
//! the loop: `x = T_x T_y^-1`, `y = phi x phi^-1` with
//! `phi = T_x T_b T_x`, `d = T_d A^{-i(i+2)}`. On `sphere`, `l_j` pushes
//! leg 0 around leg `j`: `s_j .. s_2 s_1^2 s_2^-1 .. s_j^-1` times the twist
//! of leg 0. On `genus2pt`, `a1` is `T_a T_y^-1` after flipping `e1`, where
//! `a` and `y` cobound the pair of pants holding the point; each further
//! loop is the previous one conjugated by `T_u T_v T_u` along the chain.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::quantum::Quantum;
use super::space::BlockSpace;
use super::word::Word;
use crate::blocks::{ColoredGraph, Slot};
use crate::error::{Error, Result};
use crate::CycMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceSpec {
    OneHoledTorus(u32),
    TwiceHoledTorus(u32, u32),
    HoledSphere(Vec<u32>),
    Genus2Closed,
    Genus2OnePoint(u32),
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceSpec::OneHoledTorus(i) => write!(f, "torus1({i})"),
            SurfaceSpec::TwiceHoledTorus(i, j) => write!(f, "torus2({i},{j})"),
            SurfaceSpec::HoledSphere(c) => {
                let s: Vec<String> = c.iter().map(u32::to_string).collect();
                write!(f, "sphere({})", s.join(","))
            }
            SurfaceSpec::Genus2Closed => write!(f, "genus2"),
            SurfaceSpec::Genus2OnePoint(i) => write!(f, "genus2pt({i})"),
        }
    }
}

impl FromStr for SurfaceSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownName(format!("surface '{s}'"));
        if s == "genus2" {
            return Ok(SurfaceSpec::Genus2Closed);
        }
        let (head, rest) = s.split_once('(').ok_or_else(bad)?;
        let body = rest.strip_suffix(')').ok_or_else(bad)?;
        let args = body.split(',').map(|x| x.trim().parse::<u32>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?;
        match (head, &args[..]) {
            ("torus1", &[i]) => Ok(SurfaceSpec::OneHoledTorus(i)),
            ("torus2", &[i, j]) => Ok(SurfaceSpec::TwiceHoledTorus(i, j)),
            ("sphere", c) if c.len() >= 3 => Ok(SurfaceSpec::HoledSphere(c.to_vec())),
            ("genus2pt", &[i]) => Ok(SurfaceSpec::Genus2OnePoint(i)),
            _ => Err(bad()),
        }
    }
}

/// A named operator with the word or construction that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMatrix {
    pub name: String,
    pub provenance: String,
    pub matrix: CycMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationKind {
    /// `aba = bab` up to a scalar.
    Braid,
    /// `ab = ba` up to a scalar.
    Commute,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub kind: RelationKind,
    pub a: String,
    pub b: String,
}

/// Generator and loop images of one surface at one root.
#[derive(Clone, Debug)]
pub struct Representation {
    spec: SurfaceSpec,
    space: BlockSpace,
    generators: Vec<RepMatrix>,
    loops: Vec<RepMatrix>,
    relations: Vec<Relation>,
}

fn similar(m: &CycMatrix, d: &CycMatrix) -> CycMatrix {
    &(m * d) * &m.inverse().expect("invertible")
}

fn inv(m: &CycMatrix) -> CycMatrix {
    m.inverse().expect("invertible")
}

fn e(i: usize) -> Slot {
    Slot::Edge(i)
}

fn l(i: usize) -> Slot {
    Slot::Leg(i)
}

struct Builder {
    space: BlockSpace,
    generators: Vec<RepMatrix>,
    loops: Vec<RepMatrix>,
    relations: Vec<Relation>,
}

impl Builder {
    fn new(quantum: Arc<Quantum>, corners: Vec<[Slot; 3]>, edges: usize, legs: Vec<u32>) -> Result<Self> {
        let graph = ColoredGraph::from_corners(corners, edges, legs)?;
        let space = BlockSpace::new(quantum, graph)?;
        if space.dim() == 0 {
            return Err(Error::Unsupported("no admissible colorings".into()));
        }
        Ok(Builder { space, generators: Vec::new(), loops: Vec::new(), relations: Vec::new() })
    }

    fn gen(&mut self, name: &str, provenance: &str, matrix: CycMatrix) -> CycMatrix {
        self.generators.push(RepMatrix { name: name.into(), provenance: provenance.into(), matrix: matrix.clone() });
        matrix
    }

    fn lp(&mut self, name: &str, provenance: String, matrix: CycMatrix) -> CycMatrix {
        self.loops.push(RepMatrix { name: name.into(), provenance, matrix: matrix.clone() });
        matrix
    }

    fn rel(&mut self, kind: RelationKind, a: &str, b: &str) {
        self.relations.push(Relation { kind, a: a.into(), b: b.into() });
    }

    fn chain(&mut self, names: &[&str]) {
        for (x, a) in names.iter().enumerate() {
            for b in &names[x + 1..] {
                let kind = if b == &names[x + 1] { RelationKind::Braid } else { RelationKind::Commute };
                self.rel(kind, a, b);
            }
        }
    }

    fn finish(self, spec: &SurfaceSpec) -> Representation {
        Representation {
            spec: spec.clone(),
            space: self.space,
            generators: self.generators,
            loops: self.loops,
            relations: self.relations,
        }
    }
}

impl Representation {
    pub fn build(spec: &SurfaceSpec, quantum: Arc<Quantum>) -> Result<Self> {
        match spec {
            SurfaceSpec::OneHoledTorus(i) => one_holed_torus(spec, quantum, *i),
            SurfaceSpec::TwiceHoledTorus(i, j) => twice_holed_torus(spec, quantum, *i, *j),
            SurfaceSpec::HoledSphere(colors) => holed_sphere(spec, quantum, colors),
            SurfaceSpec::Genus2Closed => genus_two(spec, quantum, None),
            SurfaceSpec::Genus2OnePoint(i) => genus_two(spec, quantum, Some(*i)),
        }
    }

    pub fn spec(&self) -> &SurfaceSpec {
        &self.spec
    }

    pub fn space(&self) -> &BlockSpace {
        &self.space
    }

    pub fn generators(&self) -> &[RepMatrix] {
        &self.generators
    }

    pub fn loops(&self) -> &[RepMatrix] {
        &self.loops
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Generators followed by loops.
    pub fn operators(&self) -> impl Iterator<Item = &RepMatrix> {
        self.generators.iter().chain(&self.loops)
    }

    pub fn operator(&self, name: &str) -> Result<&RepMatrix> {
        self.operators().find(|m| m.name == name).ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn loop_op(&self, name: &str) -> Result<&RepMatrix> {
        self.loops.iter().find(|m| m.name == name).ok_or_else(|| Error::UnknownName(format!("loop {name}")))
    }

    /// Product of named operators, left to right.
    pub fn evaluate(&self, word: &Word) -> Result<CycMatrix> {
        let mut out = CycMatrix::identity(self.space.dim());
        for (name, power) in word.letters() {
            let m = &self.operator(name)?.matrix;
            let base = if *power < 0 { inv(m) } else { m.clone() };
            out = &out * &base.pow(power.unsigned_abs());
        }
        Ok(out)
    }

    /// Point-pushing image of a word in the named based loops.
    pub fn point_push(&self, word: &Word) -> Result<RepMatrix> {
        for (name, _) in word.letters() {
            self.loop_op(name)?;
        }
        Ok(RepMatrix { name: word.to_string(), provenance: word.to_string(), matrix: self.evaluate(word)? })
    }
}

fn one_holed_torus(spec: &SurfaceSpec, q: Arc<Quantum>, i: u32) -> Result<Representation> {
    let mut b = Builder::new(q, vec![[e(0), e(0), l(0)]], 1, vec![i])?;
    let ta = b.space.twist_matrix(0)?;
    let s = b.space.s_move(0)?;
    b.gen("T_a", "T(a)", ta.clone());
    b.gen("T_b", "S(a) T(a) S(a)^-1", similar(&s, &ta));
    b.rel(RelationKind::Braid, "T_a", "T_b");
    Ok(b.finish(spec))
}

fn twice_holed_torus(spec: &SurfaceSpec, q: Arc<Quantum>, i: u32, j: u32) -> Result<Representation> {
    let mut b = Builder::new(q.clone(), vec![[e(1), e(0), l(0)], [e(1), l(1), e(0)]], 2, vec![i, j])?;
    let tx = b.space.twist_matrix(0)?;
    let ty = b.space.twist_matrix(1)?;
    let (flipped, f) = b.space.flip(1)?;
    let s = flipped.s_move(0)?;
    let tb = BlockSpace::pull_back(&f, &similar(&s, &flipped.twist_matrix(0)?));
    let td = BlockSpace::pull_back(&f, &flipped.twist_matrix(1)?);
    b.gen("T_x", "T(x)", tx.clone());
    b.gen("T_y", "T(y)", ty.clone());
    b.gen("T_b", "F(y)^-1 S(x) T(x) S(x)^-1 F(y)", tb.clone());
    b.gen("T_d", "F(y)^-1 T(z) F(y)", td.clone());
    b.rel(RelationKind::Braid, "T_x", "T_b");
    b.rel(RelationKind::Braid, "T_y", "T_b");
    b.rel(RelationKind::Commute, "T_x", "T_y");
    b.rel(RelationKind::Commute, "T_d", "T_x");
    b.rel(RelationKind::Commute, "T_d", "T_b");
    let x = b.lp("x", "T_x T_y^-1".into(), &tx * &inv(&ty));
    let phi = &(&tx * &tb) * &tx;
    b.lp("y", "T_x T_b T_x x T_x^-1 T_b^-1 T_x^-1".into(), similar(&phi, &x));
    let k = (i * (i + 2)) as i64;
    b.lp("d", format!("A^-{k} T_d"), td.scale(&q.a_pow(-k)));
    Ok(b.finish(spec))
}

/// Leading run of equal colors, capped so at least one other leg remains.
fn strands(colors: &[u32]) -> usize {
    let run = colors.iter().take_while(|&&c| c == colors[0]).count();
    run.min(colors.len() - 1)
}

fn caterpillar(n: usize) -> Vec<[Slot; 3]> {
    if n == 3 {
        return vec![[l(0), l(1), l(2)]];
    }
    let mut corners = vec![[e(0), l(0), l(1)]];
    for k in 1..n - 3 {
        corners.push([e(k - 1), l(k + 1), e(k)]);
    }
    corners.push([e(n - 4), l(n - 2), l(n - 1)]);
    corners
}

/// Half-twist exchanging legs `m - 1` and `m`.
fn sphere_half_twist(space: &BlockSpace, m: usize) -> Result<CycMatrix> {
    let g = space.graph();
    let (v0, v1) = (g.legs()[m - 1].0, g.legs()[m].0);
    let at_vertex = |s: &BlockSpace, v: usize| {
        let cs = s.graph().corners(v);
        let fixed = (0..3).find(|&k| cs[k] != l(m - 1) && cs[k] != l(m)).expect("third corner");
        s.half_twist(v, fixed)
    };
    if v0 == v1 {
        return at_vertex(space, v0);
    }
    let edge = g
        .edges()
        .iter()
        .position(|&(a, b)| (a, b) == (v0, v1) || (a, b) == (v1, v0))
        .ok_or_else(|| Error::IllegalMove(format!("legs {} and {m} are not adjacent", m - 1)))?;
    let (flipped, f) = space.flip(edge)?;
    let v = flipped.graph().legs()[m].0;
    if flipped.graph().legs()[m - 1].0 != v {
        return Err(Error::IllegalMove(format!("legs {} and {m} are not adjacent", m - 1)));
    }
    Ok(BlockSpace::pull_back(&f, &at_vertex(&flipped, v)?))
}

fn holed_sphere(spec: &SurfaceSpec, q: Arc<Quantum>, colors: &[u32]) -> Result<Representation> {
    let n = colors.len();
    if n < 3 {
        return Err(Error::Unsupported("a holed sphere needs at least three legs".into()));
    }
    let mut b = Builder::new(q.clone(), caterpillar(n), n.saturating_sub(3), colors.to_vec())?;
    let k = strands(colors);
    let mut sigma = Vec::new();
    for m in 1..k {
        let s = sphere_half_twist(&b.space, m)?;
        sigma.push(b.gen(&format!("s{m}"), &format!("H({},{m})", m - 1), s));
    }
    let names: Vec<String> = (1..k).map(|m| format!("s{m}")).collect();
    for x in 0..names.len() {
        for y in x + 1..names.len() {
            let kind = if y == x + 1 { RelationKind::Braid } else { RelationKind::Commute };
            b.rel(kind, &names[x], &names[y]);
        }
    }
    if let Some(s1) = sigma.first() {
        let tw = q.twist(colors[0]);
        let mut pure = s1 * s1;
        let mut word = "s1^2".to_string();
        for j in 1..k {
            if j >= 2 {
                pure = similar(&sigma[j - 1], &pure);
                word = format!("s{j} {word} s{j}^-1");
            }
            let c = colors[0] * (colors[0] + 2);
            b.lp(&format!("l{j}"), format!("A^{c} {word}"), pure.scale(&tw));
        }
    }
    Ok(b.finish(spec))
}

fn genus_two(spec: &SurfaceSpec, q: Arc<Quantum>, point: Option<u32>) -> Result<Representation> {
    // edges: closed a=1, b=2 around e=0; pointed a=1, b=3 with e1=0, e2=2
    let mut b = match point {
        None => Builder::new(q, vec![[e(0), e(1), e(1)], [e(0), e(2), e(2)]], 3, vec![])?,
        Some(i) => Builder::new(q, vec![[e(0), e(1), e(1)], [e(0), l(0), e(2)], [e(2), e(3), e(3)]], 4, vec![i])?,
    };
    let (ea, eb) = (1, if point.is_some() { 3 } else { 2 });
    let ta1 = b.space.twist_matrix(ea)?;
    let ta2 = b.space.twist_matrix(eb)?;
    let tb1 = similar(&b.space.s_move(ea)?, &ta1);
    let tb2 = similar(&b.space.s_move(eb)?, &ta2);
    // flip the separating edges until z, dual to c, appears
    let (first, f1) = b.space.flip(0)?;
    let (tc, prov) = match point {
        None => (BlockSpace::pull_back(&f1, &first.twist_matrix(0)?), "F(e)^-1 T(z) F(e)"),
        Some(_) => {
            let (second, f2) = first.flip(2)?;
            let f = &f2 * &f1;
            (BlockSpace::pull_back(&f, &second.twist_matrix(2)?), "F(e1)^-1 F(e2)^-1 T(z) F(e2) F(e1)")
        }
    };
    b.gen("T_a1", "T(a)", ta1.clone());
    b.gen("T_b1", "S(a) T(a) S(a)^-1", tb1.clone());
    b.gen("T_c", prov, tc.clone());
    b.gen("T_b2", "S(b) T(b) S(b)^-1", tb2.clone());
    b.gen("T_a2", "T(b)", ta2.clone());
    let chain = ["T_a1", "T_b1", "T_c", "T_b2", "T_a2"];
    b.chain(&chain);
    if point.is_some() {
        // after flipping e1, edges a and y = e1 cobound the pants with the point
        let pushed = &first.twist_matrix(ea)? * &inv(&first.twist_matrix(0)?);
        let mut current = BlockSpace::pull_back(&f1, &pushed);
        let mut word = "a1".to_string();
        b.lp("a1", "F(e1)^-1 T(a) T(y)^-1 F(e1)".into(), current.clone());
        let mats = [ta1, tb1, tc, tb2, ta2];
        let names = ["a1", "b1", "c", "b2", "a2"];
        for k in 1..5 {
            let (u, v) = (&mats[k - 1], &mats[k]);
            let phi = &(u * v) * u;
            current = similar(&phi, &current);
            let (nu, nv) = (chain[k - 1], chain[k]);
            word = format!("{nu} {nv} {nu} {word} {nu}^-1 {nv}^-1 {nu}^-1");
            b.lp(names[k], word.clone(), current.clone());
        }
    }
    Ok(b.finish(spec))
}

