use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclo::{complex_embed, Embedding, Level};
use crate::error::{Error, Result};
use crate::primes::{divisors, totient};
use crate::rep::{Representation, Word};
use crate::{CycMatrix, CycPoly, RationalPoly};

/// Largest power checked by exact multiplication.
pub const VERIFY_LIMIT: u64 = 10_000;
/// Numeric moduli above `1 + MODULUS_SLACK` count as witnesses.
pub const MODULUS_SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum InfiniteWitness {
    /// An eigenvalue of modulus > 1 under the embedding `zeta -> exp(2 pi i t/p)`.
    Modulus { t: u32, modulus: f64 },
    /// Part of the norm of the characteristic polynomial with no cyclotomic
    /// factor.
    NonCyclotomic(RationalPoly),
    /// Every eigenvalue is a `k`-th root of unity but `M^k != Id`.
    NonSemisimple { power: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    /// `order` is the lcm of the eigenvalue orders; when `verified` it is the
    /// exact order, checked by exact powering.
    Finite { order: u64, verified: bool },
    Infinite { witnesses: Vec<InfiniteWitness> },
}

impl Verdict {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Verdict::Infinite { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Finite { order, verified: true } => write!(f, "finite order {order}"),
            Verdict::Finite { order, verified: false } => write!(f, "finite order {order} (unverified)"),
            Verdict::Infinite { witnesses } => {
                write!(f, "infinite order")?;
                for w in witnesses {
                    match w {
                        InfiniteWitness::Modulus { t, modulus } => write!(f, "; modulus {modulus:.6} at t={t}")?,
                        InfiniteWitness::NonCyclotomic(poly) => {
                            write!(f, "; non-cyclotomic factor of degree {}", poly.degree().unwrap_or(0))?
                        }
                        InfiniteWitness::NonSemisimple { power } => write!(f, "; M^{power} is not the identity")?,
                    }
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct SpectrumReport {
    pub charpoly: CycPoly,
    /// Product of the Galois conjugates of `charpoly`.
    pub norm: RationalPoly,
    /// `(m, multiplicity)` of each cyclotomic factor of `norm`.
    pub cyclotomic: Vec<(u64, usize)>,
    /// `norm` with the cyclotomic factors removed.
    pub cofactor: RationalPoly,
    /// Largest eigenvalue modulus over all embeddings.
    pub max_modulus: f64,
    pub verdict: Verdict,
}

pub fn embed_matrix(m: &CycMatrix, e: Embedding) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows(), m.cols(), |r, c| complex_embed(m.get(r, c), e))
}

/// Largest eigenvalue modulus under each embedding.
pub fn embedded_moduli(m: &CycMatrix, level: Level) -> Vec<(u32, f64)> {
    level.embeddings().map(|e| (e.t(), max_modulus(&embed_matrix(m, e)))).collect()
}

fn max_modulus(m: &DMatrix<Complex64>) -> f64 {
    match m.eigenvalues() {
        Some(v) => v.iter().map(|z| z.norm()).fold(0.0, f64::max),
        None => f64::NAN,
    }
}

fn mobius(n: u64) -> i8 {
    let mut n = n;
    let mut sign = 1;
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            n /= f;
            if n % f == 0 {
                return 0;
            }
            sign = -sign;
        }
        f += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `Phi_m` from `prod_{d | m} (x^d - 1)^mu(m/d)`.
pub fn cyclotomic_poly(m: u64) -> RationalPoly {
    let mut num = vec![BigInt::one()];
    let mut dens = Vec::new();
    for d in divisors(m) {
        match mobius(m / d) {
            1 => {
                let mut next = vec![BigInt::zero(); num.len() + d as usize];
                for (i, c) in num.iter().enumerate() {
                    next[i + d as usize] += c;
                    next[i] -= c;
                }
                num = next;
            }
            -1 => dens.push(d as usize),
            _ => {}
        }
    }
    for d in dens {
        // divide by x^d - 1: q_i = q_{i-d} - n_i from the bottom
        let len = num.len() - d;
        let mut q = vec![BigInt::zero(); len];
        for i in 0..len {
            let prev = if i >= d { q[i - d].clone() } else { BigInt::zero() };
            q[i] = prev - &num[i];
        }
        num = q;
    }
    RationalPoly::new(num.into_iter().map(BigRational::from_integer).collect())
}

fn norm_poly(cp: &CycPoly, p: u32) -> RationalPoly {
    let mut acc = cp.clone();
    for s in 2..p as i64 {
        acc = acc.mul(&cp.map(|c| c.galois(s)));
    }
    RationalPoly::new(acc.coeffs().iter().map(|c| c.as_rational().expect("norm is rational")).collect())
}

fn is_integral(f: &RationalPoly) -> bool {
    f.coeffs().iter().all(|c| c.is_integer())
}

/// Removes every cyclotomic factor of `f`; returns the factors found and the
/// cofactor.
fn strip_cyclotomic(f: &RationalPoly) -> (Vec<(u64, usize)>, RationalPoly) {
    let mut rest = f.clone();
    let mut found = BTreeMap::new();
    let Some(lead) = rest.leading().cloned() else { return (Vec::new(), rest) };
    rest = rest.map(|c| c / &lead);
    if !is_integral(&rest) {
        return (Vec::new(), rest);
    }
    let mut m = 1u64;
    loop {
        let deg = rest.degree().unwrap_or(0) as u64;
        if deg == 0 || m > 2 * deg * deg + 2 {
            break;
        }
        if totient(m) <= deg {
            let phi = cyclotomic_poly(m);
            while let Some((q, r)) = rest.div_rem(&phi) {
                if !r.is_zero() {
                    break;
                }
                *found.entry(m).or_insert(0) += 1;
                rest = q;
            }
        }
        m += 1;
    }
    (found.into_iter().collect(), rest)
}

fn lcm_all(ms: &[(u64, usize)]) -> u64 {
    ms.iter().fold(1u64, |acc, &(m, _)| acc.lcm(&m))
}

/// Exact finite/infinite order verdict for a matrix over `Q(zeta_p)`.
pub fn spectrum_report(m: &CycMatrix, level: Level) -> Result<SpectrumReport> {
    if !m.is_square() {
        return Err(Error::Dimension(format!("{}x{} matrix has no spectrum", m.rows(), m.cols())));
    }
    let p = level.p();
    let charpoly = m.charpoly();
    let norm = norm_poly(&charpoly, p);
    let moduli = embedded_moduli(m, level);
    let max_modulus = moduli.iter().map(|&(_, x)| x).fold(0.0, f64::max);
    let (cyclotomic, cofactor) = strip_cyclotomic(&norm);
    let mut witnesses: Vec<InfiniteWitness> = moduli
        .iter()
        .filter(|&&(_, x)| x > 1.0 + MODULUS_SLACK)
        .map(|&(t, modulus)| InfiniteWitness::Modulus { t, modulus })
        .collect();
    let verdict = if cofactor.degree().unwrap_or(0) > 0 {
        witnesses.push(InfiniteWitness::NonCyclotomic(cofactor.clone()));
        Verdict::Infinite { witnesses }
    } else {
        let k = lcm_all(&cyclotomic);
        if k <= VERIFY_LIMIT {
            if m.pow(k).is_identity() {
                Verdict::Finite { order: k, verified: true }
            } else {
                witnesses.push(InfiniteWitness::NonSemisimple { power: k });
                Verdict::Infinite { witnesses }
            }
        } else {
            Verdict::Finite { order: k, verified: false }
        }
    };
    Ok(SpectrumReport { charpoly, norm, cyclotomic, cofactor, max_modulus, verdict })
}

/// The loops and their inverses, in that order.
fn loop_letters(rep: &Representation) -> Vec<(String, i64)> {
    let names: Vec<String> = rep.loops().iter().map(|l| l.name.clone()).collect();
    names.iter().map(|n| (n.clone(), 1)).chain(names.iter().map(|n| (n.clone(), -1))).collect()
}

/// Freely reduced words of exactly `len` letters, in lexicographic order of
/// letter indices; letter `i` and `i + letters / 2` are inverse. Stops when
/// `visit` returns true.
fn reduced_words(letters: usize, len: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    fn go(word: &mut Vec<usize>, letters: usize, len: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if word.len() == len {
            return visit(word);
        }
        let half = letters / 2;
        for a in 0..letters {
            if let Some(&last) = word.last() {
                if a == (last + half) % letters {
                    continue;
                }
            }
            word.push(a);
            let stop = go(word, letters, len, visit);
            word.pop();
            if stop {
                return true;
            }
        }
        false
    }
    go(&mut Vec::with_capacity(len), letters, len, &mut visit);
}

fn word_of(letters: &[(String, i64)], idx: &[usize]) -> Word {
    Word::new(idx.iter().map(|&i| letters[i].clone()).collect())
}

/// Shortest freely reduced word in the loops, of length at most `max_len`,
/// whose image has infinite order. Candidates are screened numerically and
/// confirmed by [`spectrum_report`].
pub fn find_infinite_order_word(rep: &Representation, max_len: usize) -> Result<Option<(Word, SpectrumReport)>> {
    let letters = loop_letters(rep);
    if letters.is_empty() {
        return Ok(None);
    }
    let level = rep.space().quantum().level();
    let embeddings: Vec<Embedding> = level.embeddings().collect();
    let numeric: Vec<Vec<DMatrix<Complex64>>> = letters
        .iter()
        .map(|(name, k)| {
            let m = rep.loop_op(name).map(|l| l.matrix.clone())?;
            let m = if *k < 0 { m.inverse().ok_or(Error::DivisionByZero)? } else { m };
            Ok(embeddings.iter().map(|&e| embed_matrix(&m, e)).collect())
        })
        .collect::<Result<_>>()?;
    let mut found = None;
    let mut failure = None;
    for len in 1..=max_len {
        reduced_words(letters.len(), len, |idx| {
            let big = (0..embeddings.len()).any(|k| {
                let prod = idx.iter().skip(1).fold(numeric[idx[0]][k].clone(), |acc, &i| acc * &numeric[i][k]);
                max_modulus(&prod) > 1.0 + MODULUS_SLACK
            });
            if !big {
                return false;
            }
            let word = word_of(&letters, idx);
            match rep.evaluate(&word).and_then(|m| spectrum_report(&m, level)) {
                Ok(report) if report.verdict.is_infinite() => {
                    found = Some((word, report));
                    true
                }
                Ok(_) => false,
                Err(e) => {
                    failure = Some(e);
                    true
                }
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
        if found.is_some() {
            break;
        }
    }
    Ok(found)
}

/// First commutator `a b a^-1 b^-1` of two loops that is not a scalar
/// matrix.
pub fn find_noncentral_commutator(rep: &Representation) -> Result<Option<(Word, CycMatrix)>> {
    let names: Vec<&str> = rep.loops().iter().map(|l| l.name.as_str()).collect();
    for (i, a) in names.iter().enumerate() {
        for b in &names[i + 1..] {
            let word = Word::new(vec![(a.to_string(), 1), (b.to_string(), 1), (a.to_string(), -1), (b.to_string(), -1)]);
            let m = rep.evaluate(&word)?;
            if m.as_scalar().is_none() {
                return Ok(Some((word, m)));
            }
        }
    }
    Ok(None)
}
