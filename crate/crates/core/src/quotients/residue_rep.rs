use crate::blocks::{Coloring, ColoredGraph};
use crate::cyclo::{reduce_mod, Level, ResidueElem, ResidueField};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::primes::{is_prime, multiplicative_order, pow_mod};
use crate::rep::{first_difference, read_matrices, write_matrix, CheckReport, Lines, RepBundle, Word};
use crate::CycMatrix;

pub type ResidueMatrix = Matrix<ResidueElem>;

/// A named matrix over a residue field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedResidueMatrix {
    pub name: String,
    pub provenance: String,
    pub matrix: ResidueMatrix,
}

/// A representation bundle reduced modulo a prime ideal above `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueRep {
    pub field: ResidueField,
    pub t: u32,
    pub spec: String,
    pub graph: ColoredGraph,
    pub basis: Vec<Coloring>,
    pub weights: Vec<ResidueElem>,
    pub matrices: Vec<NamedResidueMatrix>,
}

/// Rejects primes dividing `2p` and composite `q`.
pub fn check_prime(q: u64, level: Level) -> Result<()> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if q == 2 {
        return Err(Error::BadPrime { q, reason: "divides 2p".into() });
    }
    if q == level.p() as u64 {
        return Err(Error::Ramified { q, p: level.p() });
    }
    Ok(())
}

/// Smallest prime `q = 1 (mod p)` for which every entry of the bundle
/// reduces.
pub fn first_split_prime(bundle: &RepBundle) -> Result<u64> {
    let p = bundle.p as u64;
    let level = Level::new(p)?;
    (1..)
        .map(|k| 2 * k * p + 1)
        .filter(|&q| is_prime(q))
        .find(|&q| reduce_rep(bundle, q, 0).is_ok())
        .ok_or_else(|| Error::BadPrime { q: 0, reason: format!("no split prime at level {level}") })
}

pub fn reduce_matrix(m: &CycMatrix, field: &ResidueField) -> Result<ResidueMatrix> {
    m.try_map(|x| reduce_mod(x, field))
}

pub fn reduce_rep(bundle: &RepBundle, q: u64, modulus_index: usize) -> Result<ResidueRep> {
    let level = Level::new(bundle.p as u64)?;
    check_prime(q, level)?;
    let field = ResidueField::new(q, level, modulus_index)?;
    let weights = bundle.weights.iter().map(|w| reduce_mod(w, &field)).collect::<Result<Vec<_>>>()?;
    if weights.iter().any(|w| w.coeffs().iter().all(|&c| c == 0)) {
        return Err(Error::BadPrime { q, reason: "a Hermitian weight vanishes".into() });
    }
    let matrices = bundle
        .matrices
        .iter()
        .map(|m| {
            Ok(NamedResidueMatrix {
                name: m.name.clone(),
                provenance: m.provenance.clone(),
                matrix: reduce_matrix(&m.matrix, &field)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ResidueRep {
        field,
        t: bundle.t,
        spec: bundle.spec.clone(),
        graph: bundle.graph.clone(),
        basis: bundle.basis.clone(),
        weights,
        matrices,
    })
}

/// Matrix arithmetic over a residue field.
pub struct ResidueOps<'a>(pub &'a ResidueField);

impl ResidueOps<'_> {
    pub fn identity(&self, n: usize) -> ResidueMatrix {
        Matrix::from_fn(n, n, |r, c| if r == c { self.0.one() } else { self.0.zero() })
    }

    pub fn mul(&self, a: &ResidueMatrix, b: &ResidueMatrix) -> ResidueMatrix {
        let f = self.0;
        Matrix::from_fn(a.rows(), b.cols(), |r, c| {
            (0..a.cols()).fold(f.zero(), |acc, k| f.add(&acc, &f.mul(a.get(r, k), b.get(k, c))))
        })
    }

    pub fn pow(&self, a: &ResidueMatrix, mut e: u64) -> ResidueMatrix {
        let mut base = a.clone();
        let mut out = self.identity(a.rows());
        while e > 0 {
            if e & 1 == 1 {
                out = self.mul(&out, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        out
    }

    /// Determinant and inverse by Gauss-Jordan elimination.
    pub fn det_inverse(&self, a: &ResidueMatrix) -> (ResidueElem, Option<ResidueMatrix>) {
        let f = self.0;
        let n = a.rows();
        let mut m: Vec<Vec<ResidueElem>> = (0..n).map(|r| a.row(r).to_vec()).collect();
        let mut inv: Vec<Vec<ResidueElem>> = (0..n).map(|r| self.identity(n).row(r).to_vec()).collect();
        let mut det = f.one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !is_zero(&m[r][col])) else { return (f.zero(), None) };
            if piv != col {
                m.swap(piv, col);
                inv.swap(piv, col);
                det = f.sub(&f.zero(), &det);
            }
            det = f.mul(&det, &m[col][col]);
            let s = f.inv(&m[col][col]).expect("pivot is nonzero");
            for k in 0..n {
                m[col][k] = f.mul(&m[col][k], &s);
                inv[col][k] = f.mul(&inv[col][k], &s);
            }
            for r in 0..n {
                if r != col && !is_zero(&m[r][col]) {
                    let c = m[r][col].clone();
                    for k in 0..n {
                        m[r][k] = f.sub(&m[r][k], &f.mul(&c, &m[col][k]));
                        inv[r][k] = f.sub(&inv[r][k], &f.mul(&c, &inv[col][k]));
                    }
                }
            }
        }
        (det, Some(Matrix::from_vec(n, n, inv.into_iter().flatten().collect())))
    }

    pub fn is_identity(&self, a: &ResidueMatrix) -> bool {
        *a == self.identity(a.rows())
    }
}

fn is_zero(a: &ResidueElem) -> bool {
    a.coeffs().iter().all(|&c| c == 0)
}

/// The exponent `k` with `q^k = -1 (mod p)`, when complex conjugation
/// preserves the prime and acts as `a -> a^(q^k)`.
pub fn conjugation_frobenius(field: &ResidueField) -> Option<u32> {
    let (p, q) = (field.p() as u64, field.q());
    let f = multiplicative_order(q, p)?;
    (f % 2 == 0 && pow_mod(q, f / 2, p) == p - 1).then_some((f / 2) as u32)
}

impl ResidueRep {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ops(&self) -> ResidueOps<'_> {
        ResidueOps(&self.field)
    }

    pub fn matrix(&self, name: &str) -> Result<&NamedResidueMatrix> {
        self.matrices.iter().find(|m| m.name == name).ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    /// Product of named matrices, left to right.
    pub fn evaluate(&self, word: &Word) -> Result<ResidueMatrix> {
        let ops = self.ops();
        let mut out = ops.identity(self.dim());
        for (name, k) in word.letters() {
            let m = &self.matrix(name)?.matrix;
            let base = if *k < 0 { ops.det_inverse(m).1.ok_or(Error::DivisionByZero)? } else { m.clone() };
            out = ops.mul(&out, &ops.pow(&base, k.unsigned_abs()));
        }
        Ok(out)
    }

    /// Conjugation applied entrywise, when it acts on this residue field.
    pub fn conj(&self, m: &ResidueMatrix) -> Option<ResidueMatrix> {
        let k = conjugation_frobenius(&self.field)?;
        let e = (self.field.q() as u128).pow(k);
        let fld = self.field.field();
        Some(m.map(|a| ResidueElem(fld.pow(a.coeffs(), &num_bigint::BigUint::from(e)))))
    }

    /// Determinants are `2p`-th roots of unity; `M^+ H M = H` over the
    /// residue field when conjugation acts on it.
    pub fn check(&self) -> CheckReport {
        let ops = self.ops();
        let f = &self.field;
        let mut report = CheckReport::default();
        let two_p = 2 * f.p() as u64;
        let h = Matrix::from_fn(self.dim(), self.dim(), |r, c| if r == c { self.weights[r].clone() } else { f.zero() });
        for m in &self.matrices {
            let (det, _) = ops.det_inverse(&m.matrix);
            let ok = !is_zero(&det) && two_p % f.order_of(&det) == 0;
            report.push(format!("det({})", m.name), ok, format!("det order divides {two_p}"));
            match self.conj(&m.matrix) {
                Some(mc) => {
                    let lhs = ops.mul(&ops.mul(&mc.transpose(), &h), &m.matrix);
                    report.push(format!("unitary({})", m.name), lhs == h, "M^+ H M = H mod q");
                }
                None => report.push(format!("unitary({})", m.name), true, "not applicable: q is not inert under conjugation"),
            }
        }
        report
    }

    fn elem_text(&self, a: &ResidueElem) -> String {
        a.coeffs().iter().map(u64::to_string).collect::<Vec<_>>().join(",")
    }

    fn parse_elem(&self, s: &str, off: usize) -> Result<ResidueElem> {
        let v: Vec<u64> =
            s.split(',').map(|c| c.parse().map_err(|_| Error::parse(off, "bad residue entry"))).collect::<Result<_>>()?;
        if v.len() != self.field.f() || v.iter().any(|&c| c >= self.field.q()) {
            return Err(Error::parse(off, "entry is not a reduced coefficient vector"));
        }
        Ok(ResidueElem(v))
    }

    fn header_bundle(&self) -> RepBundle {
        RepBundle {
            p: self.field.p(),
            t: self.t,
            spec: self.spec.clone(),
            graph: self.graph.clone(),
            basis: self.basis.clone(),
            weights: Vec::new(),
            matrices: Vec::new(),
        }
    }

    /// The bundle layout with `q`, `f` and `modulus` lines after the basis
    /// and entries written as comma-separated coefficients.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.header_bundle().write_header(&mut out, "residue");
        let modulus: Vec<String> = self.field.modulus().iter().map(u64::to_string).collect();
        out.push_str(&format!("q\t{}\nf\t{}\n", self.field.q(), self.field.f()));
        out.push_str(&format!("modulus\t{}\t{}\n", self.field.modulus_index(), modulus.join(",")));
        for w in &self.weights {
            out.push_str(&format!("weight\t{}\n", self.elem_text(w)));
        }
        for m in &self.matrices {
            write_matrix(&mut out, &m.name, &m.provenance, &m.matrix, |x| self.elem_text(x));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = Lines::new(text);
        let (p, t, spec, graph, basis) = RepBundle::read_header(&mut lines, "residue")?;
        let level = Level::new(p as u64)?;
        let q: u64 = lines.keyed_num("q")?;
        let _f: usize = lines.keyed_num("f")?;
        let at = lines.pos();
        let (off, index) = match lines.fields()?[..] {
            [(_, "modulus"), i, _] => i,
            _ => return Err(Error::parse(at, "expected 'modulus' line")),
        };
        let index: usize = index.parse().map_err(|_| Error::parse(off, "bad modulus index"))?;
        let field = ResidueField::new(q, level, index).map_err(|e| Error::parse(off, e.to_string()))?;
        let mut rep = ResidueRep { field, t, spec, graph, basis, weights: Vec::new(), matrices: Vec::new() };
        for _ in 0..rep.dim() {
            let (off, w) = lines.keyed("weight")?;
            let w = rep.parse_elem(w, off)?;
            rep.weights.push(w);
        }
        let matrices = read_matrices(&mut lines, rep.dim(), |s, off| rep.parse_elem(s, off))?;
        rep.matrices = matrices
            .into_iter()
            .map(|(name, provenance, matrix)| NamedResidueMatrix { name, provenance, matrix })
            .collect();
        let back = rep.to_text();
        if back != text {
            return Err(Error::parse(first_difference(&back, text), "bundle is not in canonical form"));
        }
        Ok(rep)
    }
}

/// `reduce(u) reduce(v) = reduce(u v)` for each pair of words.
pub fn check_homomorphism(bundle: &RepBundle, residue: &ResidueRep, pairs: &[(Word, Word)]) -> Result<CheckReport> {
    let ops = residue.ops();
    let eval = |w: &Word| -> Result<CycMatrix> {
        let mut out = CycMatrix::identity(bundle.dim());
        for (name, k) in w.letters() {
            let m = &bundle.matrix(name)?.matrix;
            let base = if *k < 0 { m.inverse().ok_or(Error::DivisionByZero)? } else { m.clone() };
            out = &out * &base.pow(k.unsigned_abs());
        }
        Ok(out)
    };
    let mut report = CheckReport::default();
    for (u, v) in pairs {
        let exact = reduce_matrix(&(&eval(u)? * &eval(v)?), &residue.field)?;
        let product = ops.mul(&residue.evaluate(u)?, &residue.evaluate(v)?);
        report.push(format!("hom({u} | {v})"), exact == product, "");
    }
    Ok(report)
}
