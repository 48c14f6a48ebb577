use astro_float::{BigFloat, Consts, RoundingMode};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{adm, check_color};
use crate::cyclo::Level;
use crate::error::{Error, Result};

/// Working precision of the Verlinde sum (about 77 decimal digits).
pub const VERLINDE_PRECISION_BITS: usize = 256;
/// Largest accepted relative distance from the nearest integer.
pub const VERLINDE_TOLERANCE: f64 = 1e-6;

fn color_count(p: u32) -> usize {
    ((p - 1) / 2) as usize
}

/// Dimensions of the sphere with the given boundary colors: the number of
/// fusion trees.
pub fn sphere_count(level: Level, labels: &[u32]) -> Result<BigUint> {
    let p = level.p();
    for &c in labels {
        check_color(c, p)?;
    }
    let n = color_count(p);
    let mut v = vec![BigUint::zero(); n];
    v[0] = BigUint::from(1u32);
    for &l in labels {
        let mut next = vec![BigUint::zero(); n];
        for (b, vb) in v.iter().enumerate() {
            if vb.is_zero() {
                continue;
            }
            for (c, slot) in next.iter_mut().enumerate() {
                if adm(2 * b as u32, l, 2 * c as u32, p) {
                    *slot += vb;
                }
            }
        }
        v = next;
    }
    Ok(v.swap_remove(0))
}

/// `dim W_{g,(j)}` for every color `j` (indexed by `j / 2`), by the fusion
/// recursion `W_{g+1,(k)} = sum_j W_{g,(j)} W_{1,(j,k)}`.
pub fn one_point_dims(g: usize, level: Level) -> Vec<BigUint> {
    let p = level.p();
    let n = color_count(p);
    let col = |i: usize| 2 * i as u32;
    let w1: Vec<BigUint> =
        (0..n).map(|j| BigUint::from((0..n).filter(|&a| adm(col(a), col(a), col(j), p)).count())).collect();
    if g == 0 {
        let mut v = vec![BigUint::zero(); n];
        v[0] = BigUint::from(1u32);
        return v;
    }
    let pair: Vec<Vec<BigUint>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|k| (0..n).filter(|&m| adm(col(j), col(k), col(m), p)).map(|m| &w1[m]).sum())
                .collect()
        })
        .collect();
    let mut w = w1;
    for _ in 1..g {
        w = (0..n).map(|k| (0..n).map(|j| &w[j] * &pair[j][k]).sum()).collect();
    }
    w
}

/// Same values as [`one_point_dims`] in `O(p)` per genus, using the
/// genus-one two-point closed form and prefix sums.
pub fn one_point_dims_fast(g: usize, level: Level) -> Vec<BigUint> {
    let p = level.p() as u64;
    let n = color_count(level.p());
    if g == 0 {
        return one_point_dims(0, level);
    }
    // W_{1,(j)}: number of even a with j/2 <= a <= min(p-3, p-2-j/2)
    let mut w: Vec<BigUint> = (0..n as u64)
        .map(|i| {
            let lo = i + i % 2;
            let hi = (p - 3).min(p - 2 - i);
            let hi = hi - hi % 2;
            BigUint::from(if hi >= lo { (hi - lo) / 2 + 1 } else { 0 })
        })
        .collect();
    for _ in 1..g {
        // W'(k) = (p-1-k)/2 * sum_{j<=k} W(j)(j+1) + (k+1) * sum_{j>k} W(j)(p-1-j)/2
        let mut lower = vec![BigUint::zero(); n];
        let mut acc = BigUint::zero();
        for i in 0..n {
            acc += &w[i] * BigUint::from(2 * i as u64 + 1);
            lower[i] = acc.clone();
        }
        let mut upper = vec![BigUint::zero(); n];
        let mut acc = BigUint::zero();
        for i in (0..n).rev() {
            upper[i] = acc.clone();
            acc += &w[i] * BigUint::from((p - 1 - 2 * i as u64) / 2);
        }
        w = (0..n)
            .map(|i| {
                let k = 2 * i as u64;
                &lower[i] * BigUint::from((p - 1 - k) / 2) + &upper[i] * BigUint::from(k + 1)
            })
            .collect();
    }
    w
}

/// Authoritative dimension `dim W_{g,p,(labels)}`: one-point recursion glued
/// to a fusion count on the sphere carrying the labels.
pub fn dim_recursive(g: usize, level: Level, labels: &[u32]) -> Result<BigUint> {
    let p = level.p();
    for &c in labels {
        check_color(c, p)?;
    }
    if g == 0 {
        return sphere_count(level, labels);
    }
    let w = one_point_dims(g, level);
    let mut total = BigUint::zero();
    for (j, wj) in w.iter().enumerate() {
        if wj.is_zero() {
            continue;
        }
        let mut with_j = vec![2 * j as u32];
        with_j.extend_from_slice(labels);
        total += wj * sphere_count(level, &with_j)?;
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedForm {
    /// Torus with two boundary colors `(i, j)`.
    Genus1(u32, u32),
    /// Genus two, one boundary color `p - 3`.
    Genus2Top,
    /// Genus three, one boundary color `p - 3`.
    Genus3Top,
}

/// The closed-form polynomials, evaluated exactly.
pub fn dim_closed_form(kind: ClosedForm, level: Level) -> Result<BigRational> {
    let p = BigRational::from_integer(level.p().into());
    let int = |x: i64| BigRational::from_integer(x.into());
    Ok(match kind {
        ClosedForm::Genus1(i, j) => {
            check_color(i, level.p())?;
            check_color(j, level.p())?;
            let (lo, hi) = (i.min(j) as i64, i.max(j) as i64);
            (&p - int(1) - int(hi)) * int(lo + 1) / int(2)
        }
        ClosedForm::Genus2Top => (&p * &p * &p - &p) / int(24),
        ClosedForm::Genus3Top => {
            let poly = int(7) * &p * &p * &p + int(28) * &p * &p + int(101) * &p + int(80);
            &p * (&p - int(1)) * (&p - int(3)) * poly / int(5760) + (&p * &p * &p - &p) / int(24)
        }
    })
}

fn to_biguint(x: &BigFloat) -> BigUint {
    match x.as_raw_parts() {
        None => BigUint::zero(),
        Some((words, _, _, e, _)) => {
            let bits = (words.len() * 64) as i64;
            let m = BigUint::from_slice(
                &words.iter().flat_map(|w| [(*w & 0xffff_ffff) as u32, (*w >> 32) as u32]).collect::<Vec<_>>(),
            );
            let e = e as i64;
            if e <= 0 {
                BigUint::zero()
            } else if e >= bits {
                m << (e - bits) as usize
            } else {
                m >> (bits - e) as usize
            }
        }
    }
}

fn to_f64(x: &BigFloat) -> f64 {
    match x.as_raw_parts() {
        None => 0.0,
        Some((words, _, s, e, _)) => {
            let top = *words.last().unwrap_or(&0) as f64;
            let v = top * 2f64.powi(e - 64);
            if s == astro_float::Sign::Neg {
                -v
            } else {
                v
            }
        }
    }
}

/// `(p/4)^(g-1) sum_s prod_l sin((l+1) pi s/p) * sin(pi s/p)^(2-2g-r)`,
/// rounded to the nearest integer under a relative guard.
pub fn verlinde_dim(g: usize, level: Level, labels: &[u32]) -> Result<BigUint> {
    let p = level.p();
    for &c in labels {
        check_color(c, p)?;
    }
    let prec = VERLINDE_PRECISION_BITS;
    let rm = RoundingMode::ToEven;
    let mut cc = Consts::new().expect("constant cache");
    let pi = cc.pi(prec, rm);
    let pf = BigFloat::from_u32(p, prec);
    let angle = |k: u64, cc: &mut Consts| pi.mul(&BigFloat::from_u64(k, prec), prec, rm).div(&pf, prec, rm).sin(prec, rm, cc);
    let exponent = 2 - 2 * g as i64 - labels.len() as i64;
    let mut sum = BigFloat::from_u32(0, prec);
    for s in 1..=(p as u64 - 1) / 2 {
        let base = angle(s, &mut cc);
        let mut term = if exponent >= 0 {
            base.powi(exponent as usize, prec, rm)
        } else {
            base.powi((-exponent) as usize, prec, rm).reciprocal(prec, rm)
        };
        for &l in labels {
            term = term.mul(&angle((l as u64 + 1) * s, &mut cc), prec, rm);
        }
        sum = sum.add(&term, prec, rm);
    }
    let quarter = pf.div(&BigFloat::from_u32(4, prec), prec, rm);
    let scale = if g >= 1 {
        quarter.powi(g - 1, prec, rm)
    } else {
        quarter.reciprocal(prec, rm)
    };
    let value = sum.mul(&scale, prec, rm);
    if value.is_negative() && !value.is_zero() {
        let v = to_f64(&value);
        if v.abs() > VERLINDE_TOLERANCE {
            return Err(Error::RoundingGuard { value: format!("{v}"), distance: v.abs() });
        }
    }
    let half = BigFloat::from_f64(0.5, prec);
    let rounded = if value.is_negative() { BigFloat::from_u32(0, prec) } else { value.add(&half, prec, rm).floor() };
    let n = to_biguint(&rounded);
    let diff = to_f64(&value.sub(&rounded, prec, rm)).abs();
    let scale = n.to_f64().unwrap_or(f64::INFINITY).max(1.0);
    if diff / scale > VERLINDE_TOLERANCE {
        return Err(Error::RoundingGuard { value: format!("{}", to_f64(&value)), distance: diff });
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn level(p: u64) -> Level {
        Level::new(p).unwrap()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn recursion_examples() {
        assert_eq!(dim_recursive(2, level(7), &[4]).unwrap(), big(14));
        assert_eq!(dim_recursive(3, level(7), &[4]).unwrap(), big(147));
        assert_eq!(dim_recursive(1, level(7), &[0]).unwrap(), big(3));
        assert_eq!(dim_recursive(2, level(7), &[2]).unwrap(), big(21));
        assert_eq!(dim_recursive(1, level(7), &[2, 4]).unwrap(), big(3));
    }

    #[test]
    fn fast_recursion_agrees() {
        for p in crate::primes::primes_in(5, 80) {
            let l = level(p);
            for g in 0..4 {
                assert_eq!(one_point_dims(g, l), one_point_dims_fast(g, l), "p={p} g={g}");
            }
        }
    }

    #[test]
    fn verlinde_examples() {
        assert_eq!(verlinde_dim(2, level(5), &[0]).unwrap(), big(5));
        assert_eq!(verlinde_dim(2, level(7), &[4]).unwrap(), big(14));
        assert_eq!(verlinde_dim(1, level(11), &[0]).unwrap(), big(5));
        assert_eq!(verlinde_dim(3, level(7), &[4]).unwrap(), big(147));
        assert_eq!(verlinde_dim(1, level(7), &[2, 4]).unwrap(), big(3));
        assert_eq!(verlinde_dim(1, level(7), &[]).unwrap(), big(3));
    }

    #[test]
    fn closed_forms() {
        let r = |n: i64| BigRational::from_integer(n.into());
        assert_eq!(dim_closed_form(ClosedForm::Genus1(2, 4), level(7)).unwrap(), r(3));
        assert_eq!(dim_closed_form(ClosedForm::Genus2Top, level(5)).unwrap(), r(5));
        assert_eq!(dim_closed_form(ClosedForm::Genus3Top, level(7)).unwrap(), r(147));
    }
}
