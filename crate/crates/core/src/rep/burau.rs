use std::sync::Arc;

use super::quantum::Quantum;
use super::surfaces::{Representation, SurfaceSpec};
use crate::blocks::check_color;
use crate::cyclo::{is_root_of_unity, CycNum, UnityVerdict};
use crate::error::{Error, Result};

/// Orders of the Hecke parameter for which the braid group image is finite.
pub const FINITE_ORDERS: [u64; 4] = [2, 3, 4, 5];

/// The braid group on `k` strands acting on the sphere with colors
/// `(a, ..., a, ak - 2)`.
#[derive(Clone, Debug)]
pub struct BurauBlock {
    pub rep: Representation,
    pub strands: usize,
    pub color: u32,
    /// Eigenvalues of `s1`, one per fusion channel `c` of two `a` legs,
    /// by increasing `c`.
    pub eigenvalues: Vec<CycNum>,
    /// `-lambda_hi / lambda_lo`, so that the eigenvalues are proportional to
    /// `-1` and `q`.
    pub q: Option<CycNum>,
    pub q_order: Option<u64>,
    pub expect_infinite: bool,
}

pub fn burau_block(k: usize, a: u32, quantum: Arc<Quantum>) -> Result<BurauBlock> {
    let p = quantum.p();
    if k < 2 {
        return Err(Error::Unsupported("at least two strands".into()));
    }
    let last = (a as usize * k).checked_sub(2).ok_or(Error::InvalidColor { color: a, p, reason: "ak - 2 < 0" })?;
    check_color(a, p)?;
    check_color(u32::try_from(last).unwrap_or(u32::MAX), p)?;
    let mut colors = vec![a; k];
    colors.push(last as u32);
    let rep = Representation::build(&SurfaceSpec::HoledSphere(colors), quantum.clone())?;
    let mut channels: Vec<u32> = rep.space().basis().iter().map(|c| c.first().copied().unwrap_or(last as u32)).collect();
    channels.sort_unstable();
    channels.dedup();
    let eigenvalues: Vec<CycNum> = channels.iter().map(|&c| quantum.half_twist(a, a, c)).collect();
    let q = match &eigenvalues[..] {
        [lo, hi] => Some(-(hi * &lo.inverse().expect("unit"))),
        _ => None,
    };
    let q_order = match &q {
        Some(q) => match is_root_of_unity(q)? {
            UnityVerdict::Root { order } => Some(order),
            UnityVerdict::NotRoot { .. } => None,
        },
        None => None,
    };
    if q_order == Some(1) {
        return Err(Error::Unsupported("degenerate Hecke parameter of order 1".into()));
    }
    let expect_infinite = q_order.is_some_and(|o| !FINITE_ORDERS.contains(&o));
    Ok(BurauBlock { rep, strands: k, color: a, eigenvalues, q, q_order, expect_infinite })
}

impl BurauBlock {
    /// Whether the eigenvalue ratio is `-A^{2a^2}` or its inverse.
    pub fn ratio_is_minus_a_two_a_squared(&self) -> bool {
        let Some(q) = &self.q else { return false };
        let quantum = self.rep.space().quantum();
        let e = 2 * (self.color as i64).pow(2);
        *q == quantum.a_pow(e) || *q == quantum.a_pow(-e)
    }

    /// `A^{4a}`, the ratio observed for every `a`.
    pub fn expected_q(&self) -> CycNum {
        self.rep.space().quantum().a_pow(4 * self.color as i64)
    }
}
