//! Quantum integers, theta and tetrahedron evaluations and recoupling
//! coefficients in the Kauffman bracket normalization.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::blocks::adm;
use crate::cyclo::{CycNum, Level, Root};
use crate::linalg::Matrix;
use crate::primes::legendre;

/// Everything that depends on the level and the choice of `A`.
#[derive(Clone, Debug)]
pub struct Quantum {
    root: Root,
    qint: Vec<CycNum>,
    fact: Vec<CycNum>,
    fact_inv: Vec<CycNum>,
    kappa: CycNum,
}

fn sign(k: i64) -> CycNum {
    CycNum::from_integer(if k.rem_euclid(2) == 0 { 1 } else { -1 })
}

impl Quantum {
    pub fn new(root: Root) -> Self {
        let p = root.level().p() as i64;
        let denom = (&root.pow(2) - &root.pow(-2)).inverse().expect("A^2 != A^-2");
        let top = 2 * p as usize;
        let qint: Vec<CycNum> = (0..=top as i64).map(|n| &(&root.pow(2 * n) - &root.pow(-2 * n)) * &denom).collect();
        let mut fact = vec![CycNum::one()];
        for n in 1..=top {
            let next = &fact[n - 1] * &qint[n];
            fact.push(next);
        }
        // [n]! is a unit for n < p and vanishes from n = p on
        let mut fact_inv = Vec::with_capacity(p as usize);
        for n in 0..p as usize {
            fact_inv.push(fact[n].inverse().expect("[n]! is invertible below p"));
        }
        let zeta = root.pow(2);
        let gauss = (1..p).fold(CycNum::zero(), |acc, k| {
            let s = legendre(k, p as u64) as i64;
            &acc + &(&zeta.pow(k) * &CycNum::from_integer(s))
        });
        let kappa = &(&zeta - &zeta.pow(-1)) * &gauss.inverse().expect("Gauss sum is nonzero");
        Quantum { root, qint, fact, fact_inv, kappa }
    }

    pub fn root(&self) -> &Root {
        &self.root
    }

    pub fn level(&self) -> Level {
        self.root.level()
    }

    pub fn p(&self) -> u32 {
        self.root.level().p()
    }

    pub fn a_pow(&self, k: i64) -> CycNum {
        self.root.pow(k)
    }

    /// `[n] = (A^2n - A^-2n) / (A^2 - A^-2)`.
    pub fn qint(&self, n: usize) -> &CycNum {
        &self.qint[n]
    }

    pub fn qfact(&self, n: usize) -> &CycNum {
        &self.fact[n]
    }

    fn qfact_inv(&self, n: i64) -> &CycNum {
        assert!(n >= 0 && (n as usize) < self.fact_inv.len(), "[{n}]! is not invertible at level {}", self.p());
        &self.fact_inv[n as usize]
    }

    /// Loop value `Delta_c = (-1)^c [c+1]`.
    pub fn delta(&self, c: u32) -> CycNum {
        &sign(c as i64) * &self.qint[c as usize + 1]
    }

    pub fn delta_inv(&self, c: u32) -> CycNum {
        &sign(c as i64) * &(self.qfact_inv(c as i64 + 1) * &self.fact[c as usize])
    }

    fn theta_parts(&self, a: u32, b: u32, c: u32) -> (i64, i64, i64) {
        assert!(adm(a, b, c, self.p()), "theta({a},{b},{c}) is not admissible");
        let (a, b, c) = (a as i64, b as i64, c as i64);
        ((a + b - c) / 2, (b + c - a) / 2, (a + c - b) / 2)
    }

    pub fn theta(&self, a: u32, b: u32, c: u32) -> CycNum {
        let (m, n, q) = self.theta_parts(a, b, c);
        let f = |k: i64| &self.fact[k as usize];
        let num = &(&(f(m + n + q + 1) * f(m)) * f(n)) * f(q);
        let den = &(self.qfact_inv(m + n) * self.qfact_inv(n + q)) * self.qfact_inv(m + q);
        &sign(m + n + q) * &(&num * &den)
    }

    pub fn theta_inv(&self, a: u32, b: u32, c: u32) -> CycNum {
        let (m, n, q) = self.theta_parts(a, b, c);
        let f = |k: i64| &self.fact[k as usize];
        let num = &(f(m + n) * f(n + q)) * f(m + q);
        let den = &(&(self.qfact_inv(m + n + q + 1) * self.qfact_inv(m)) * self.qfact_inv(n)) * self.qfact_inv(q);
        &sign(m + n + q) * &(&num * &den)
    }

    /// Tetrahedron `Tet[A B E; C D F]` with faces `(A,D,E)`, `(B,C,E)`,
    /// `(A,B,F)`, `(C,D,F)`.
    pub fn tet(&self, a: u32, b: u32, e: u32, c: u32, d: u32, f: u32) -> CycNum {
        let p = self.p();
        for (x, y, z) in [(a, d, e), (b, c, e), (a, b, f), (c, d, f)] {
            assert!(adm(x, y, z, p), "tetrahedron face ({x},{y},{z}) is not admissible");
        }
        let (a, b, c, d, e, f) = (a as i64, b as i64, c as i64, d as i64, e as i64, f as i64);
        let ai = [(a + d + e) / 2, (b + c + e) / 2, (a + b + f) / 2, (c + d + f) / 2];
        let bj = [(b + d + e + f) / 2, (a + c + e + f) / 2, (a + b + c + d) / 2];
        let mut outer = CycNum::one();
        for &x in &ai {
            for &y in &bj {
                outer = &outer * &self.fact[(y - x) as usize];
            }
        }
        for x in [a, b, c, d, e, f] {
            outer = &outer * self.qfact_inv(x);
        }
        let lo = *ai.iter().max().unwrap();
        let hi = *bj.iter().min().unwrap();
        let mut sum = CycNum::zero();
        for s in lo..=hi {
            let top = &self.fact[(s + 1) as usize];
            if top.is_zero() {
                continue;
            }
            let mut term = &sign(s) * top;
            for &x in &ai {
                term = &term * self.qfact_inv(s - x);
            }
            for &y in &bj {
                term = &term * self.qfact_inv(y - s);
            }
            sum = &sum + &term;
        }
        &outer * &sum
    }

    /// Recoupling coefficient: the graph with `F` joining `(A,B)` to `(C,D)`
    /// equals `sum_E sixj(A,B,E,C,D,F)` times the graph with `E` joining
    /// `(A,D)` to `(B,C)`.
    pub fn sixj(&self, a: u32, b: u32, e: u32, c: u32, d: u32, f: u32) -> CycNum {
        let t = self.tet(a, b, e, c, d, f);
        &(&t * &self.delta(e)) * &(&self.theta_inv(a, d, e) * &self.theta_inv(b, c, e))
    }

    /// Dehn twist eigenvalue `A^{c(c+2)}`.
    pub fn twist(&self, c: u32) -> CycNum {
        self.a_pow((c * (c + 2)) as i64)
    }

    /// Half-twist eigenvalue exchanging legs colored `a` and `b` that fuse to
    /// `c`: `(-1)^{(a+b-c)/2} A^{(c(c+2)-a(a+2)-b(b+2))/2}`.
    pub fn half_twist(&self, a: u32, b: u32, c: u32) -> CycNum {
        let e = (c * (c + 2)) as i64 - (a * (a + 2)) as i64 - (b * (b + 2)) as i64;
        &sign((a + b - c) as i64 / 2) * &self.a_pow(e / 2)
    }

    /// `(zeta - zeta^-1) / G` with `G` the quadratic Gauss sum in `zeta = A^2`.
    pub fn kappa(&self) -> &CycNum {
        &self.kappa
    }

    fn gamma(&self, a: u32, b: u32, i: u32) -> CycNum {
        let p = self.p();
        let mut sum = CycNum::zero();
        let mut c = 0;
        while c + 3 <= p {
            if adm(a, b, c, p) {
                let e = (c * (c + 2)) as i64 - (a * (a + 2)) as i64 - (b * (b + 2)) as i64;
                let term = &(&self.delta(c) * &self.theta_inv(a, b, c)) * &self.a_pow(e);
                sum = &sum + &(&term * &self.tet(a, b, i, b, a, c));
            }
            c += 2;
        }
        sum
    }

    /// Modular `S` matrix of the one-holed torus with boundary color `i`,
    /// on the loop colors `basis` (each with `(a, a, i)` admissible).
    pub fn s_matrix(&self, i: u32, basis: &[u32]) -> Matrix<CycNum> {
        Matrix::from_fn(basis.len(), basis.len(), |r, c| {
            let (a, b) = (basis[r], basis[c]);
            let w = &self.delta(a) * &self.theta_inv(a, a, i);
            &(&self.kappa * &self.gamma(a, b, i)) * &w
        })
    }

    pub fn rational(&self, r: &BigRational) -> CycNum {
        CycNum::from_rational(r)
    }
}
