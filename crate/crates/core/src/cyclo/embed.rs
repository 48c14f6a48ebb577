use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::CycNum;
use crate::error::{Error, Result};

/// The complex embedding `sigma_t: zeta -> exp(2 pi i t / p)`, taken up to
/// complex conjugation (`1 <= t <= (p - 1) / 2`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Embedding {
    p: u32,
    t: u32,
}

impl Embedding {
    pub fn new(p: u32, t: u32) -> Result<Self> {
        if t == 0 || t > (p - 1) / 2 {
            return Err(Error::InvalidRootExponent { t: t as i64, modulus: p as u64 });
        }
        Ok(Embedding { p, t })
    }

    pub fn principal(p: u32) -> Self {
        Embedding { p, t: 1 }
    }

    pub fn p(self) -> u32 {
        self.p
    }

    pub fn t(self) -> u32 {
        self.t
    }

    /// Image of `zeta^k`.
    pub fn zeta_power(self, k: i64) -> Complex64 {
        let e = (k * self.t as i64).rem_euclid(self.p as i64) as f64;
        Complex64::from_polar(1.0, 2.0 * PI * e / self.p as f64)
    }
}

/// Numeric value of `x` under `e`.
pub fn complex_embed(x: &CycNum, e: Embedding) -> Complex64 {
    let den = x.denominator().to_f64().unwrap_or(f64::NAN);
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, c) in x.numerators(e.p).iter().enumerate() {
        if let Some(c) = c.to_f64() {
            if c != 0.0 {
                acc += e.zeta_power(k as i64) * c;
            }
        }
    }
    acc / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Conjugate;

    #[test]
    fn basis_and_real_elements() {
        let p = 7;
        let z = CycNum::zeta(p);
        let e = Embedding::principal(p);
        let v = complex_embed(&z, e);
        assert!((v - Complex64::from_polar(1.0, 2.0 * PI / 7.0)).norm() < 1e-12);
        for t in 1..=3 {
            let e = Embedding::new(p, t).unwrap();
            let r = complex_embed(&(&z + &z.conj()), e);
            assert!(r.im.abs() < 1e-12);
            assert!((r.re - 2.0 * (2.0 * PI * t as f64 / 7.0).cos()).abs() < 1e-12);
        }
        let x = &CycNum::from_integer(1) + &CycNum::zeta(5);
        let m = complex_embed(&x, Embedding::principal(5)).norm();
        assert!((m - 2.0 * (PI / 5.0).cos()).abs() < 1e-12);
        assert!(Embedding::new(7, 4).is_err());
    }
}
