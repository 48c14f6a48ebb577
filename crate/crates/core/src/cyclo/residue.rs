use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::fq::{first_irreducible, poly, ExtField};
use super::{CycNum, Level};
use crate::error::{Error, Result};
use crate::primes::{is_prime, multiplicative_order};

/// Factorization pattern of the `p`-th cyclotomic polynomial modulo `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    pub q: u64,
    pub p: u32,
    /// Residue degree: the order of `q` modulo `p`.
    pub f: usize,
    /// Distinct monic irreducible factors, ascending coefficients, sorted.
    pub moduli: Vec<Vec<u64>>,
}

impl Splitting {
    pub fn factor_count(&self) -> usize {
        self.moduli.len()
    }
}

/// Factors `Phi_p` over `F_q` through the minimal polynomials of the powers
/// of a primitive `p`-th root in `F_{q^f}`.
pub fn splitting_data(q: u64, level: Level) -> Result<Splitting> {
    let p = level.p();
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if q == p as u64 {
        return Err(Error::Ramified { q, p });
    }
    let f = multiplicative_order(q, p as u64).expect("q is prime to p") as usize;
    let k = ExtField::new(q, first_irreducible(q, f));
    let cofactor = (k.order() - BigUint::from(1u32)) / BigUint::from(p);
    let one = k.one();
    let beta = (1..)
        .map(|i| k.pow(&k.from_index(i), &cofactor))
        .find(|b| *b != one)
        .expect("a primitive p-th root exists");
    let mut seen = vec![false; p as usize];
    let mut moduli = Vec::new();
    for t in 1..p as u64 {
        if seen[t as usize] {
            continue;
        }
        // (x - beta^(t q^j)) over the Frobenius orbit of t
        let mut minpoly: Vec<Vec<u64>> = vec![k.one()];
        let mut e = t;
        for _ in 0..f {
            seen[e as usize] = true;
            let root = k.pow_u64(&beta, e);
            let mut next = vec![k.zero(); minpoly.len() + 1];
            for (i, c) in minpoly.iter().enumerate() {
                next[i + 1] = k.add(&next[i + 1], c);
                next[i] = k.sub(&next[i], &k.mul(c, &root));
            }
            minpoly = next;
            e = e * q % p as u64;
        }
        let coeffs: Vec<u64> = minpoly
            .iter()
            .map(|c| {
                debug_assert!(c[1..].iter().all(|&d| d == 0), "minimal polynomial lies over F_q");
                c[0]
            })
            .collect();
        moduli.push(coeffs);
    }
    moduli.sort();
    Ok(Splitting { q, p, f, moduli })
}

/// The residue field `Z[zeta_p] / (q, g)` for one irreducible factor `g` of
/// `Phi_p` modulo `q`, with `zeta` sent to the class of `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueField {
    p: u32,
    index: usize,
    field: ExtField,
}

impl ResidueField {
    pub fn new(q: u64, level: Level, index: usize) -> Result<Self> {
        let s = splitting_data(q, level)?;
        let count = s.moduli.len();
        let modulus = s.moduli.into_iter().nth(index).ok_or(Error::ModulusIndex { index, count })?;
        Ok(ResidueField { p: level.p(), index, field: ExtField::new(q, modulus) })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    pub fn f(&self) -> usize {
        self.field.degree()
    }

    pub fn modulus_index(&self) -> usize {
        self.index
    }

    pub fn modulus(&self) -> &[u64] {
        self.field.modulus()
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn elem(&self, coeffs: Vec<u64>) -> ResidueElem {
        ResidueElem(self.field.reduce(&coeffs))
    }

    pub fn zero(&self) -> ResidueElem {
        ResidueElem(self.field.zero())
    }

    pub fn one(&self) -> ResidueElem {
        ResidueElem(self.field.one())
    }

    pub fn add(&self, a: &ResidueElem, b: &ResidueElem) -> ResidueElem {
        ResidueElem(self.field.add(&a.0, &b.0))
    }

    pub fn sub(&self, a: &ResidueElem, b: &ResidueElem) -> ResidueElem {
        ResidueElem(self.field.sub(&a.0, &b.0))
    }

    pub fn mul(&self, a: &ResidueElem, b: &ResidueElem) -> ResidueElem {
        ResidueElem(self.field.mul(&a.0, &b.0))
    }

    pub fn inv(&self, a: &ResidueElem) -> Option<ResidueElem> {
        self.field.inv(&a.0).map(ResidueElem)
    }

    pub fn order_of(&self, a: &ResidueElem) -> u64 {
        self.field.element_order(&a.0)
    }

    /// `q:<int>;f:<int>;mod:<coeffs>;val:<coeffs>`, coefficients ascending.
    pub fn elem_to_text(&self, a: &ResidueElem) -> String {
        format!("q:{};f:{};mod:{};val:{}", self.q(), self.f(), join(self.modulus()), join(&a.0))
    }

    pub fn elem_from_text(&self, s: &str) -> Result<ResidueElem> {
        self.parse_elem_at(s, 0)
    }

    pub(crate) fn parse_elem_at(&self, s: &str, base: usize) -> Result<ResidueElem> {
        let mut offset = 0;
        let mut fields = Vec::new();
        for (part, key) in s.split(';').zip(["q:", "f:", "mod:", "val:"]) {
            let body = part.strip_prefix(key).ok_or_else(|| Error::parse(base + offset, format!("expected '{key}'")))?;
            fields.push((offset + key.len(), body));
            offset += part.len() + 1;
        }
        if fields.len() != 4 || s.split(';').count() != 4 {
            return Err(Error::parse(base, "expected four ';'-separated fields"));
        }
        let parse_list = |(off, body): (usize, &str)| -> Result<Vec<u64>> {
            body.split(',').map(|c| c.parse::<u64>().map_err(|_| Error::parse(base + off, "bad coefficient"))).collect()
        };
        let q: u64 = fields[0].1.parse().map_err(|_| Error::parse(base + fields[0].0, "bad q"))?;
        let f: usize = fields[1].1.parse().map_err(|_| Error::parse(base + fields[1].0, "bad f"))?;
        if q != self.q() || f != self.f() {
            return Err(Error::parse(base, "element belongs to a different residue field"));
        }
        if parse_list(fields[2])? != self.modulus() {
            return Err(Error::parse(base + fields[2].0, "modulus mismatch"));
        }
        let val = parse_list(fields[3])?;
        if val.len() != f || val.iter().any(|&c| c >= q) {
            return Err(Error::parse(base + fields[3].0, "value is not a reduced coefficient vector"));
        }
        Ok(ResidueElem(val))
    }
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

/// Element of a [`ResidueField`]: coefficient vector of length `f`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueElem(pub Vec<u64>);

impl ResidueElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Debug for ResidueElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", join(&self.0))
    }
}

fn mod_q(n: &BigInt, q: u64) -> u64 {
    n.mod_floor(&BigInt::from(q)).to_u64().expect("reduced residue fits")
}

/// The reduction map `Z[zeta_p]_(q) -> F`.
pub fn reduce_mod(x: &CycNum, field: &ResidueField) -> Result<ResidueElem> {
    let q = field.q();
    let den = mod_q(x.denominator(), q);
    if den == 0 {
        return Err(Error::DenominatorNotCoprime { q, entry: x.to_text(field.p()) });
    }
    let den_inv = crate::primes::pow_mod(den, q - 2, q);
    let coeffs: Vec<u64> = x.numerators(field.p()).iter().map(|c| mod_q(c, q) * den_inv % q).collect();
    let mut r = poly::rem(&coeffs, field.modulus(), q);
    r.resize(field.f(), 0);
    Ok(ResidueElem(r))
}
