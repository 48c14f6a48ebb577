//! Finite fields `F_q[x]/(g)` with small prime `q`, in two flavours: a
//! polynomial-vector representation for reductions and a table-driven one
//! indexed by `u32` for group closures.

use num_bigint::BigUint;
use num_traits::One;

use crate::primes::pow_mod;

fn inv_mod(a: u64, q: u64) -> u64 {
    pow_mod(a, q - 2, q)
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Polynomial arithmetic over `F_q`; coefficients ascending, trimmed.
pub mod poly {
    use super::{inv_mod, trim};

    pub fn mul(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % q;
            }
        }
        trim(out)
    }

    pub fn sub(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + q - y) % q
            })
            .collect();
        trim(out)
    }

    /// `(quotient, remainder)`; `b` must be nonzero.
    pub fn div_rem(a: &[u64], b: &[u64], q: u64) -> (Vec<u64>, Vec<u64>) {
        let b = trim(b.to_vec());
        assert!(!b.is_empty(), "polynomial division by zero");
        let mut r = trim(a.to_vec());
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lead_inv = inv_mod(*b.last().unwrap(), q);
        let mut quo = vec![0u64; r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = r.last().unwrap() * lead_inv % q;
            quo[shift] = c;
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + q - c * bi % q) % q;
            }
            r = trim(r);
        }
        (trim(quo), r)
    }

    pub fn rem(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
        div_rem(a, b, q).1
    }

    pub fn monic(a: &[u64], q: u64) -> Vec<u64> {
        let a = trim(a.to_vec());
        match a.last() {
            None => a,
            Some(&l) => {
                let li = inv_mod(l, q);
                a.iter().map(|&c| c * li % q).collect()
            }
        }
    }

    pub fn gcd(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, q);
            a = b;
            b = r;
        }
        monic(&a, q)
    }

    /// `base^e mod m`.
    pub fn pow_mod(base: &[u64], mut e: u128, m: &[u64], q: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem(base, m, q);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, q), m, q);
            }
            e >>= 1;
            if e > 0 {
                b = rem(&mul(&b, &b, q), m, q);
            }
        }
        rem(&acc, m, q)
    }
}

/// Rabin's irreducibility test for a monic `g` over `F_q`.
pub fn is_irreducible(g: &[u64], q: u64) -> bool {
    let g = trim(g.to_vec());
    let n = g.len().saturating_sub(1);
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let qq = q as u128;
    // x^(q^k) mod g by repeated Frobenius
    let frob = |v: &[u64], k: usize| {
        let mut v = v.to_vec();
        for _ in 0..k {
            v = poly::pow_mod(&v, qq, &g, q);
        }
        v
    };
    let full = frob(&x, n);
    if poly::sub(&full, &x, q) != Vec::<u64>::new() {
        return false;
    }
    let mut primes = Vec::new();
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            primes.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    for r in primes {
        let h = poly::sub(&frob(&x, n / r), &x, q);
        if poly::gcd(&g, &h, q) != vec![1] {
            return false;
        }
    }
    true
}

/// Lexicographically first monic irreducible polynomial of degree `f`,
/// counting the non-leading coefficients as base-`q` digits (lowest first).
pub fn first_irreducible(q: u64, f: usize) -> Vec<u64> {
    if f == 1 {
        return vec![0, 1];
    }
    let mut digits = vec![0u64; f];
    loop {
        let mut g = digits.clone();
        g.push(1);
        if g[0] != 0 && is_irreducible(&g, q) {
            return g;
        }
        let mut i = 0;
        loop {
            digits[i] += 1;
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
            i += 1;
            assert!(i < f, "no irreducible polynomial found");
        }
    }
}

/// The field `F_q[x]/(g)` for a monic irreducible `g` of degree `f`.
/// Elements are coefficient vectors of length exactly `f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtField {
    q: u64,
    modulus: Vec<u64>,
}

impl ExtField {
    pub fn new(q: u64, modulus: Vec<u64>) -> Self {
        let modulus = trim(modulus);
        assert!(modulus.len() >= 2 && *modulus.last().unwrap() == 1, "modulus must be monic of degree >= 1");
        ExtField { q, modulus }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.q).pow(self.degree() as u32)
    }

    fn pad(&self, mut v: Vec<u64>) -> Vec<u64> {
        v.resize(self.degree(), 0);
        v
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.degree()]
    }

    pub fn one(&self) -> Vec<u64> {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = n.rem_euclid(self.q as i64) as u64;
        v
    }

    /// The class of `x`.
    pub fn generator(&self) -> Vec<u64> {
        self.reduce(&[0, 1])
    }

    /// Reduces an arbitrary polynomial over `F_q` into the field.
    pub fn reduce(&self, a: &[u64]) -> Vec<u64> {
        let a: Vec<u64> = a.iter().map(|c| c % self.q).collect();
        self.pad(poly::rem(&a, &self.modulus, self.q))
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.q).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + self.q - y) % self.q).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().map(|x| (self.q - x) % self.q).collect()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.pad(poly::rem(&poly::mul(&trim(a.to_vec()), &trim(b.to_vec()), self.q), &self.modulus, self.q))
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn pow(&self, a: &[u64], e: &BigUint) -> Vec<u64> {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    pub fn pow_u64(&self, a: &[u64], e: u64) -> Vec<u64> {
        self.pow(a, &BigUint::from(e))
    }

    pub fn inv(&self, a: &[u64]) -> Option<Vec<u64>> {
        if self.is_zero(a) {
            return None;
        }
        Some(self.pow(a, &(self.order() - BigUint::from(2u32))))
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: &[u64]) -> u64 {
        let n = self.order() - BigUint::one();
        let n: u64 = n.try_into().expect("field too large for order computation");
        let one = self.one();
        crate::primes::divisors(n)
            .into_iter()
            .find(|&d| self.pow_u64(a, d) == one)
            .expect("order divides q^f - 1")
    }

    /// Element index `sum c_k q^k`, valid when `q^f` fits in `u64`.
    pub fn index_of(&self, a: &[u64]) -> u64 {
        a.iter().rev().fold(0u64, |acc, &c| acc * self.q + c)
    }

    pub fn from_index(&self, mut i: u64) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.degree());
        for _ in 0..self.degree() {
            v.push(i % self.q);
            i /= self.q;
        }
        v
    }

    /// A generator of the multiplicative group; found by scanning indices.
    pub fn primitive_element(&self) -> Vec<u64> {
        let n: u64 = (self.order() - BigUint::one()).try_into().expect("field too large");
        (1..=n)
            .map(|i| self.from_index(i))
            .find(|a| self.element_order(a) == n)
            .expect("multiplicative group is cyclic")
    }
}

/// Table-driven arithmetic on element indices `0..q^f` for fields with at
/// most `2^24` elements. Index `0` is zero, index `1` is one.
#[derive(Clone, Debug)]
pub struct SmallField {
    q: u32,
    f: u32,
    size: u32,
    log: Vec<u32>,
    exp: Vec<u32>,
    add: Option<Vec<u32>>,
}

pub const SMALL_FIELD_LIMIT: u64 = 1 << 24;
const ADD_TABLE_LIMIT: u32 = 4096;

impl SmallField {
    pub fn new(field: &ExtField) -> Option<Self> {
        let size: u64 = field.order().try_into().ok()?;
        if size > SMALL_FIELD_LIMIT {
            return None;
        }
        let g = field.primitive_element();
        let n = (size - 1) as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; size as usize];
        let mut x = field.one();
        for k in 0..n {
            let idx = field.index_of(&x) as u32;
            exp[k] = idx;
            exp[k + n] = idx;
            log[idx as usize] = k as u32;
            x = field.mul(&x, &g);
        }
        let mut sf = SmallField { q: field.q() as u32, f: field.degree() as u32, size: size as u32, log, exp, add: None };
        if sf.size <= ADD_TABLE_LIMIT && sf.f > 1 {
            let s = sf.size;
            let mut t = vec![0u32; (s * s) as usize];
            for a in 0..s {
                for b in 0..s {
                    t[(a * s + b) as usize] = sf.add_digits(a, b);
                }
            }
            sf.add = Some(t);
        }
        Some(sf)
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    /// Bytes needed to store one element index.
    pub fn width(&self) -> usize {
        match self.size {
            0..=0x100 => 1,
            0x101..=0x1_0000 => 2,
            0x1_0001..=0x100_0000 => 3,
            _ => 4,
        }
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.f {
            let d = (a % self.q + b % self.q) % self.q;
            out += d * place;
            place *= self.q;
            a /= self.q;
            b /= self.q;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.f == 1 {
            return (a + b) % self.q;
        }
        match &self.add {
            Some(t) => t[(a * self.size + b) as usize],
            None => self.add_digits(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.size - 1;
        Some(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn neg(&self, a: u32) -> u32 {
        let mut out = 0;
        let mut place = 1;
        let mut a = a;
        for _ in 0..self.f {
            out += ((self.q - a % self.q) % self.q) * place;
            place *= self.q;
            a /= self.q;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility_counts() {
        // number of monic irreducibles of degree 2 over F_3 is 3, degree 3 over F_2 is 2
        let count = |q: u64, f: usize| {
            let total = q.pow(f as u32);
            (0..total)
                .filter(|&i| {
                    let mut g: Vec<u64> = (0..f).map(|k| i / q.pow(k as u32) % q).collect();
                    g.push(1);
                    is_irreducible(&g, q)
                })
                .count()
        };
        assert_eq!(count(3, 2), 3);
        assert_eq!(count(2, 3), 2);
        assert_eq!(count(2, 4), 3);
        assert_eq!(count(5, 2), 10);
    }

    #[test]
    fn extension_field_arithmetic() {
        let g = first_irreducible(3, 4);
        let k = ExtField::new(3, g);
        assert_eq!(k.order(), BigUint::from(81u32));
        let a = k.primitive_element();
        assert_eq!(k.element_order(&a), 80);
        let b = k.from_index(17);
        let bi = k.inv(&b).unwrap();
        assert_eq!(k.mul(&b, &bi), k.one());
        let s = SmallField::new(&k).unwrap();
        for x in 0..81u32 {
            for y in 0..81u32 {
                let (ex, ey) = (k.from_index(x as u64), k.from_index(y as u64));
                assert_eq!(s.mul(x, y) as u64, k.index_of(&k.mul(&ex, &ey)));
                assert_eq!(s.add(x, y) as u64, k.index_of(&k.add(&ex, &ey)));
            }
            assert_eq!(s.add(x, s.neg(x)), 0);
        }
    }
}
