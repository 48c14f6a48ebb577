use num_traits::{One, Zero};

use super::{complex_embed, CycNum, Embedding, Level};
use crate::error::{Error, Result};
use crate::primes::divisors;

/// Modulus tolerance of the numeric pre-filter in [`is_root_of_unity`].
pub const UNITY_TOLERANCE: f64 = 1e-9;

/// Which primitive `2p`-th root plays the role of `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootChoice {
    /// The root whose principal embedding is `(-1)^((p-1)/2) exp((p+1) pi i / 2p)`,
    /// for which the Hermitian forms are positive definite.
    Unitary,
    /// `A = A0^t` where `A0 = exp(pi i / p)` under the principal embedding;
    /// `t` must be odd and prime to `p`, taken modulo `2p`.
    Exponent(i64),
}

/// A primitive `2p`-th root of unity inside `Q(zeta_p)`, remembered by its
/// exponent relative to `A0 = -zeta^((p+1)/2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root {
    level: Level,
    t: u32,
}

impl Root {
    pub fn level(&self) -> Level {
        self.level
    }

    /// Exponent `t` with `A = A0^t`, in `0..2p`.
    pub fn exponent(&self) -> u32 {
        self.t
    }

    pub fn value(&self) -> CycNum {
        self.pow(1)
    }

    /// `A^k` computed directly from the exponent.
    pub fn pow(&self, k: i64) -> CycNum {
        let p = self.level.p() as i64;
        let m = (k * self.t as i64).rem_euclid(2 * p);
        // A0^m = (-1)^m zeta^(m(p+1)/2)
        let z = CycNum::zeta_pow(p as u32, m * ((p + 1) / 2));
        if m % 2 == 1 {
            -z
        } else {
            z
        }
    }

    /// `zeta = A^2` for this choice of `A`.
    pub fn zeta(&self) -> CycNum {
        self.pow(2)
    }

    pub fn is_unitary(&self) -> bool {
        self.t == unitary_exponent(self.level.p())
    }

    /// `A^-1`, the complex conjugate of `A`.
    pub fn conjugate(&self) -> Root {
        let m = 2 * self.level.p();
        Root { level: self.level, t: (m - self.t) % m }
    }

    /// Image of `A` under `zeta -> zeta^s`, for `s` prime to `p`.
    pub fn galois(&self, s: u32) -> Root {
        let p = self.level.p();
        assert!(s % p != 0, "galois exponent must be prime to p");
        // sigma_s(A0) = A0^s' with s' = s mod p and s' odd
        let s = s % (2 * p);
        let s_odd = if s % 2 == 1 { s } else { (s + p) % (2 * p) };
        Root { level: self.level, t: ((self.t as u64 * s_odd as u64) % (2 * p as u64)) as u32 }
    }
}

fn unitary_exponent(p: u32) -> u32 {
    let p = p as u64;
    (((p + 1) / 2 + p * (p - 1) / 2) % (2 * p)) as u32
}

/// Selects the root `A`. With [`RootChoice::Unitary`] the principal
/// embedding of the result is `A_p`.
pub fn make_root(level: Level, choice: RootChoice) -> Result<Root> {
    let p = level.p();
    let t = match choice {
        RootChoice::Unitary => unitary_exponent(p),
        RootChoice::Exponent(t) => {
            let r = t.rem_euclid(2 * p as i64);
            if r % 2 == 0 || r % p as i64 == 0 {
                return Err(Error::InvalidRootExponent { t, modulus: 2 * p as u64 });
            }
            r as u32
        }
    };
    Ok(Root { level, t })
}

#[derive(Clone, Debug, PartialEq)]
pub enum UnityVerdict {
    Root { order: u64 },
    /// `witness` names an embedding where the modulus is visibly not 1; it is
    /// `None` when every modulus is 1 and the exact power test decided.
    NotRoot { witness: Option<(Embedding, f64)> },
}

impl UnityVerdict {
    pub fn is_root(&self) -> bool {
        matches!(self, UnityVerdict::Root { .. })
    }
}

/// Exact root-of-unity test. Roots of unity in `Q(zeta_p)` have order
/// dividing `2p`, so only those exponents are tried.
pub fn is_root_of_unity(x: &CycNum) -> Result<UnityVerdict> {
    if x.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let p = match x.level() {
        None => {
            let r = x.as_rational().expect("rational");
            return Ok(if r.is_one() {
                UnityVerdict::Root { order: 1 }
            } else if (-r).is_one() {
                UnityVerdict::Root { order: 2 }
            } else {
                UnityVerdict::NotRoot { witness: None }
            });
        }
        Some(p) => p,
    };
    for t in 1..=(p - 1) / 2 {
        let e = Embedding::new(p, t)?;
        let m = complex_embed(x, e).norm();
        if (m - 1.0).abs() > UNITY_TOLERANCE {
            return Ok(UnityVerdict::NotRoot { witness: Some((e, m)) });
        }
    }
    for d in divisors(2 * p as u64) {
        if x.pow(d as i64).is_one() {
            return Ok(UnityVerdict::Root { order: d });
        }
    }
    Ok(UnityVerdict::NotRoot { witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    #[test]
    fn unitary_root_matches_formula() {
        for p in [5u32, 7, 11, 13] {
            let level = Level::new(p as u64).unwrap();
            let a = make_root(level, RootChoice::Unitary).unwrap();
            let sign = if ((p - 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
            let expected = Complex64::from_polar(1.0, (p + 1) as f64 * PI / (2.0 * p as f64)) * sign;
            let v = complex_embed(&a.value(), Embedding::principal(p));
            assert!((v - expected).norm() < 1e-12, "p = {p}");
            assert!(a.value().pow(2 * p as i64).is_one());
            assert_eq!(a.value().pow(2), a.zeta());
            assert_eq!(is_root_of_unity(&a.zeta()).unwrap(), UnityVerdict::Root { order: p as u64 });
            assert_eq!(is_root_of_unity(&a.value()).unwrap(), UnityVerdict::Root { order: 2 * p as u64 });
        }
    }

    #[test]
    fn exponent_choice_validated() {
        let level = Level::new(7).unwrap();
        assert!(make_root(level, RootChoice::Exponent(2)).is_err());
        assert!(make_root(level, RootChoice::Exponent(7)).is_err());
        let r = make_root(level, RootChoice::Exponent(-1)).unwrap();
        assert_eq!(r.exponent(), 13);
        assert_eq!(&r.value() * &make_root(level, RootChoice::Exponent(1)).unwrap().value(), CycNum::one());
    }

    #[test]
    fn galois_action_on_roots() {
        let level = Level::new(7).unwrap();
        let a = make_root(level, RootChoice::Unitary).unwrap();
        assert_eq!(a.conjugate().value(), a.value().galois(-1));
        for s in 1..7 {
            assert_eq!(a.galois(s).value(), a.value().galois(s as i64), "s = {s}");
        }
    }

    #[test]
    fn small_verdicts() {
        assert_eq!(is_root_of_unity(&CycNum::from_integer(-1)).unwrap(), UnityVerdict::Root { order: 2 });
        let x = &CycNum::from_integer(1) + &CycNum::zeta(5);
        match is_root_of_unity(&x).unwrap() {
            UnityVerdict::NotRoot { witness: Some((e, m)) } => {
                assert_eq!(e.t(), 1);
                assert!((m - 1.618_033_988_749_895).abs() < 1e-12);
            }
            v => panic!("unexpected {v:?}"),
        }
        assert!(is_root_of_unity(&CycNum::zero()).is_err());
    }
}
