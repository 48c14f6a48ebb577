use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Conjugate, Field, Ring};

/// Exact element of `Q(zeta_p)` on the power basis `1, zeta, ..., zeta^(p-2)`.
///
/// Stored as integer numerators over one positive common denominator, in
/// lowest terms. Rational elements are stored with level 0 so that `0` and
/// `1` exist without a level; they combine with any level.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    p: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    pub fn from_integer(n: i64) -> Self {
        CycNum { p: 0, num: vec![BigInt::from(n)], den: BigInt::one() }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        CycNum { p: 0, num: vec![r.numer().clone()], den: r.denom().clone() }
    }

    /// `zeta_p^k` for any integer `k`.
    pub fn zeta_pow(p: u32, k: i64) -> Self {
        assert!(p >= 3, "cyclotomic level must be at least 3");
        let k = k.rem_euclid(p as i64) as usize;
        let mut cyc = vec![BigInt::zero(); p as usize];
        cyc[k] = BigInt::one();
        Self::from_cyclic(p, cyc, BigInt::one())
    }

    pub fn zeta(p: u32) -> Self {
        Self::zeta_pow(p, 1)
    }

    /// Build from rational coefficients on the power basis. Lengths up to `p`
    /// are accepted; a coefficient of `zeta^(p-1)` is reduced.
    pub fn from_coeffs(p: u32, coeffs: &[BigRational]) -> Self {
        assert!(coeffs.len() <= p as usize);
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut cyc = vec![BigInt::zero(); p as usize];
        for (slot, c) in cyc.iter_mut().zip(coeffs) {
            *slot = c.numer() * (&den / c.denom());
        }
        Self::from_cyclic(p, cyc, den)
    }

    pub fn from_int_coeffs(p: u32, coeffs: &[i64]) -> Self {
        let c: Vec<BigRational> = coeffs.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        Self::from_coeffs(p, &c)
    }

    /// Takes a length-`p` vector of numerators in `Z[x]/(x^p - 1)` and
    /// reduces it modulo the cyclotomic polynomial.
    fn from_cyclic(p: u32, mut cyc: Vec<BigInt>, den: BigInt) -> Self {
        debug_assert_eq!(cyc.len(), p as usize);
        let top = cyc.pop().expect("nonempty");
        if !top.is_zero() {
            for c in cyc.iter_mut() {
                *c -= &top;
            }
        }
        Self::normalize(p, cyc, den)
    }

    fn normalize(p: u32, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            den /= &g;
            for c in num.iter_mut() {
                *c /= &g;
            }
        }
        if num.iter().skip(1).all(Zero::is_zero) {
            let c0 = num.into_iter().next().unwrap_or_default();
            let den = if c0.is_zero() { BigInt::one() } else { den };
            return CycNum { p: 0, num: vec![c0], den };
        }
        CycNum { p, num, den }
    }

    /// Level of the element, `None` for rationals.
    pub fn level(&self) -> Option<u32> {
        (self.p != 0).then_some(self.p)
    }

    pub fn is_rational(&self) -> bool {
        self.p == 0
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Integer numerators on the power basis of level `p`, length `p - 1`.
    pub fn numerators(&self, p: u32) -> Vec<BigInt> {
        self.lift(p).0
    }

    /// Rational coefficients on the power basis of level `p`, length `p - 1`.
    pub fn coeffs(&self, p: u32) -> Vec<BigRational> {
        self.lift(p).0.into_iter().map(|n| BigRational::new(n, self.den.clone())).collect()
    }

    fn lift(&self, p: u32) -> (Vec<BigInt>, &BigInt) {
        if self.p == 0 {
            let mut v = vec![BigInt::zero(); (p - 1) as usize];
            v[0] = self.num[0].clone();
            (v, &self.den)
        } else {
            assert_eq!(self.p, p, "mixing cyclotomic levels {} and {}", self.p, p);
            (self.num.clone(), &self.den)
        }
    }

    fn common_level(&self, other: &Self) -> u32 {
        match (self.p, other.p) {
            (0, q) | (q, 0) => q,
            (a, b) => {
                assert_eq!(a, b, "mixing cyclotomic levels {a} and {b}");
                a
            }
        }
    }

    fn cyclic(&self, p: u32) -> Vec<BigInt> {
        let mut v = self.lift(p).0;
        v.push(BigInt::zero());
        v
    }

    /// The Galois automorphism `zeta -> zeta^t`.
    pub fn galois(&self, t: i64) -> Self {
        if self.p == 0 {
            return self.clone();
        }
        let p = self.p;
        let t = t.rem_euclid(p as i64) as usize;
        assert!(t != 0, "Galois exponent must be a unit modulo {p}");
        let v = self.cyclic(p);
        let mut w = vec![BigInt::zero(); p as usize];
        for (k, c) in v.into_iter().enumerate() {
            w[(t * k) % p as usize] = c;
        }
        Self::from_cyclic(p, w, self.den.clone())
    }

    /// Field norm down to `Q`.
    pub fn norm(&self) -> BigRational {
        match self.p {
            0 => {
                let r = BigRational::new(self.num[0].clone(), self.den.clone());
                r
            }
            p => {
                let prod = (1..p as i64).fold(CycNum::one(), |acc, t| &acc * &self.galois(t));
                prod.as_rational().expect("norm is rational")
            }
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.p == 0 {
            return Some(CycNum { p: 0, num: vec![self.den.clone()], den: self.num[0].clone() }.renorm());
        }
        let others = (2..self.p as i64).fold(CycNum::one(), |acc, t| &acc * &self.galois(t));
        let n = (&others * self).as_rational().expect("norm is rational");
        Some(others.scale(&n.recip()))
    }

    fn renorm(self) -> Self {
        let p = self.p;
        if p == 0 {
            return Self::normalize(0, self.num, self.den);
        }
        Self::normalize(p, self.num, self.den)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Self::normalize(self.p, num, &self.den * r.denom())
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse().expect("negative power of zero") } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut b = base;
        let mut acc = CycNum::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        acc
    }

    /// Self-conjugate elements lie in the maximal totally real subfield.
    pub fn is_self_conjugate(&self) -> bool {
        self.conj() == *self
    }

    /// Canonical text form `p:<int>;coeffs:<num>/<den>,...` with `p - 1`
    /// entries in lowest terms.
    pub fn to_text(&self, p: u32) -> String {
        let coeffs = self.coeffs(p);
        let body: Vec<String> = coeffs.iter().map(|c| format!("{}/{}", c.numer(), c.denom())).collect();
        format!("p:{};coeffs:{}", p, body.join(","))
    }

    pub fn from_text(s: &str) -> Result<Self> {
        Self::parse_at(s, 0)
    }

    /// Parser used by the bundle readers, reporting offsets relative to `base`.
    pub(crate) fn parse_at(s: &str, base: usize) -> Result<Self> {
        let rest = s.strip_prefix("p:").ok_or_else(|| Error::parse(base, "expected 'p:'"))?;
        let semi = rest.find(';').ok_or_else(|| Error::parse(base + 2, "expected ';'"))?;
        let p: u32 = rest[..semi].parse().map_err(|_| Error::parse(base + 2, "bad level"))?;
        if p < 3 {
            return Err(Error::parse(base + 2, "level must be at least 3"));
        }
        let mut offset = 2 + semi + 1;
        let body = rest[semi + 1..]
            .strip_prefix("coeffs:")
            .ok_or_else(|| Error::parse(base + offset, "expected 'coeffs:'"))?;
        offset += "coeffs:".len();
        let mut coeffs = Vec::new();
        for part in body.split(',') {
            let (n, d) = part.split_once('/').ok_or_else(|| Error::parse(base + offset, "expected num/den"))?;
            let n: BigInt = n.parse().map_err(|_| Error::parse(base + offset, "bad numerator"))?;
            let d: BigInt = d.parse().map_err(|_| Error::parse(base + offset, "bad denominator"))?;
            if !d.is_positive() {
                return Err(Error::parse(base + offset, "denominator must be positive"));
            }
            let r = BigRational::new(n.clone(), d.clone());
            if r.numer() != &n || r.denom() != &d {
                return Err(Error::parse(base + offset, "coefficient not in lowest terms"));
            }
            coeffs.push(r);
            offset += part.len() + 1;
        }
        if coeffs.len() != (p - 1) as usize {
            return Err(Error::parse(base, format!("expected {} coefficients, found {}", p - 1, coeffs.len())));
        }
        Ok(Self::from_coeffs(p, &coeffs))
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p == 0 {
            return write!(f, "{}/{}", self.num[0], self.den);
        }
        write!(f, "{}", self.to_text(self.p))
    }
}

impl Zero for CycNum {
    fn zero() -> Self {
        CycNum::from_integer(0)
    }
    fn is_zero(&self) -> bool {
        self.p == 0 && self.num[0].is_zero()
    }
}

impl One for CycNum {
    fn one() -> Self {
        CycNum::from_integer(1)
    }
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let p = self.common_level(rhs);
        let den = self.den.lcm(&rhs.den);
        let fa = &den / &self.den;
        let fb = &den / &rhs.den;
        if p == 0 {
            return CycNum::normalize(0, vec![&self.num[0] * &fa + &rhs.num[0] * &fb], den);
        }
        let (a, _) = self.lift(p);
        let (b, _) = rhs.lift(p);
        let num = a.iter().zip(&b).map(|(x, y)| x * &fa + y * &fb).collect();
        CycNum::normalize(p, num, den)
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self + &(-rhs)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { p: self.p, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        if self.is_zero() || rhs.is_zero() {
            return CycNum::zero();
        }
        if self.p == 0 {
            return CycNum::normalize(rhs.p, rhs.num.iter().map(|c| c * &self.num[0]).collect(), &rhs.den * &self.den);
        }
        if rhs.p == 0 {
            return rhs * self;
        }
        let p = self.common_level(rhs) as usize;
        let mut cyc = vec![BigInt::zero(); p];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = (i + j) % p;
                cyc[k] += a * b;
            }
        }
        CycNum::from_cyclic(p as u32, cyc, &self.den * &rhs.den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &CycNum) -> CycNum {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl Ring for CycNum {}

impl Field for CycNum {
    fn inv(&self) -> Option<Self> {
        self.inverse()
    }
}

impl Conjugate for CycNum {
    fn conj(&self) -> Self {
        self.galois(-1)
    }
}

impl From<i64> for CycNum {
    fn from(n: i64) -> Self {
        CycNum::from_integer(n)
    }
}
