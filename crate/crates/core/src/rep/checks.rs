use std::sync::Arc;

use super::quantum::Quantum;
use super::space::BlockSpace;
use super::surfaces::{Relation, RelationKind, Representation, SurfaceSpec};
use crate::cyclo::{is_root_of_unity, CycNum, Root, UnityVerdict};
use crate::error::Result;
use crate::CycMatrix;

/// One named check with its outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.items.push(CheckItem { name: name.into(), passed, detail: detail.into() });
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.items.extend(other.items);
    }

    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.passed)
    }
}

/// `s` with `x = s y`, when it exists.
pub fn scalar_ratio(x: &CycMatrix, y: &CycMatrix) -> Option<CycNum> {
    let y_inv = y.inverse()?;
    (x * &y_inv).as_scalar()
}

fn unity_text(v: &UnityVerdict) -> String {
    match v {
        UnityVerdict::Root { order } => format!("root of unity of order {order}"),
        UnityVerdict::NotRoot { witness: Some((e, m)) } => format!("not a root of unity: modulus {m} at t={}", e.t()),
        UnityVerdict::NotRoot { witness: None } => "not a root of unity".into(),
    }
}

/// The relation holds up to a scalar, and the scalar passes the exact
/// root-of-unity test.
pub fn check_relation(rep: &Representation, rel: &Relation) -> Result<CheckItem> {
    let a = &rep.operator(&rel.a)?.matrix;
    let b = &rep.operator(&rel.b)?.matrix;
    let (lhs, rhs) = match rel.kind {
        RelationKind::Braid => (&(a * b) * a, &(b * a) * b),
        RelationKind::Commute => (a * b, b * a),
    };
    let tag = match rel.kind {
        RelationKind::Braid => "braid",
        RelationKind::Commute => "commute",
    };
    let name = format!("{tag}({},{})", rel.a, rel.b);
    Ok(match scalar_ratio(&lhs, &rhs) {
        None => CheckItem { name, passed: false, detail: "not proportional".into() },
        Some(s) => {
            let v = is_root_of_unity(&s)?;
            CheckItem { name, passed: v.is_root(), detail: format!("scalar is a {}", unity_text(&v)) }
        }
    })
}

/// H-invariance and root-of-unity determinants of every operator, the
/// listed relations, and `g^p = Id` for every loop.
pub fn check_representation(rep: &Representation) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    let space = rep.space();
    for op in rep.operators() {
        report.push(format!("unitary({})", op.name), space.is_h_unitary(&op.matrix), "M^+ H M = H");
        let v = is_root_of_unity(&op.matrix.det())?;
        report.push(format!("det({})", op.name), v.is_root(), unity_text(&v));
    }
    for rel in rep.relations() {
        let item = check_relation(rep, rel)?;
        report.items.push(item);
    }
    report.extend(check_burnside(rep));
    Ok(report)
}

/// `g^p = Id` exactly for every named loop.
pub fn check_burnside(rep: &Representation) -> CheckReport {
    let p = rep.space().quantum().p() as u64;
    let mut report = CheckReport::default();
    for op in rep.loops() {
        report.push(format!("burnside({})", op.name), op.matrix.pow(p).is_identity(), format!("power {p}"));
    }
    report
}

/// Modular relations on the one-holed torus cut out by the loop `edge`:
/// `(ST)^3 = lambda S^2` with `lambda` a root of unity, and `S^2` commuting
/// with `T`.
pub fn check_modular(space: &BlockSpace, edge: usize) -> Result<CheckReport> {
    let s = space.s_move(edge)?;
    let t = space.twist_matrix(edge)?;
    let mut report = CheckReport::default();
    let st = &s * &t;
    let s2 = &s * &s;
    match scalar_ratio(&st.pow(3), &s2) {
        Some(l) => {
            let v = is_root_of_unity(&l)?;
            report.push("modular((ST)^3=lambda S^2)", v.is_root(), unity_text(&v));
        }
        None => report.push("modular((ST)^3=lambda S^2)", false, "not proportional"),
    }
    report.push("modular(S^2 T = T S^2)", s2.commutes_with(&t), "");
    report.push("unitary(S)", space.is_h_unitary(&s), "M^+ H M = H");
    Ok(report)
}

fn quantum_at(root: Root) -> Arc<Quantum> {
    Arc::new(Quantum::new(root))
}

/// Entrywise conjugation of every operator built at `A` equals the operator
/// built at `A^-1`.
pub fn conj_symmetry_check(spec: &SurfaceSpec, root: &Root) -> Result<CheckReport> {
    let here = Representation::build(spec, quantum_at(root.clone()))?;
    let there = Representation::build(spec, quantum_at(root.conjugate()))?;
    let mut report = CheckReport::default();
    for (a, b) in here.operators().zip(there.operators()) {
        report.push(format!("conj({})", a.name), a.matrix.conj() == b.matrix, format!("{spec}"));
    }
    Ok(report)
}

/// Building at `sigma_s(A)` equals applying `sigma_s` entrywise, for each
/// Galois exponent `s`.
pub fn galois_coherence_check(spec: &SurfaceSpec, root: &Root) -> Result<CheckReport> {
    let here = Representation::build(spec, quantum_at(root.clone()))?;
    let mut report = CheckReport::default();
    let p = root.level().p();
    for s in 2..p {
        let there = Representation::build(spec, quantum_at(root.galois(s)))?;
        let ok = here.operators().zip(there.operators()).all(|(a, b)| a.matrix.map(|x| x.galois(s as i64)) == b.matrix);
        report.push(format!("galois({s})"), ok, format!("{spec}"));
    }
    Ok(report)
}
