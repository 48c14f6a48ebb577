use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::dims::one_point_dims_fast;
use crate::cyclo::Level;
use crate::primes::primes_in;

/// Reported next to genus-two closed-form checks.
pub const GENUS_TWO_GENERAL_NOTE: &str = "general-k genus-two polynomial not used: it gives 329/24 at p=7 for k=0 and k=4, \
     against 14 by enumeration; only the k=p-3 specialization (p^3-p)/24 is evaluated";

/// `dim W_{g,p,(p-3)}`.
pub fn top_dims(g: usize, level: Level) -> BigUint {
    one_point_dims_fast(g, level).pop().expect("at least one color")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompareReport {
    pub g: usize,
    pub p: u32,
    /// `dim W_{g,p,(p-3)}`.
    pub top: BigUint,
    /// `dim W_{g,p,(0)}`.
    pub zero: BigUint,
    /// `true` when equality is the expected relation (genus two).
    pub expect_equal: bool,
    pub holds: bool,
}

/// Strict inequality `dim W_{g,(p-3)} > dim W_{g,(0)}` for `g >= 3`;
/// equality for `g = 2`.
pub fn check_compare(g: usize, level: Level) -> CompareReport {
    let w = one_point_dims_fast(g, level);
    let zero = w[0].clone();
    let top = w.last().expect("at least one color").clone();
    let expect_equal = g == 2;
    let holds = if expect_equal { top == zero } else { top > zero };
    CompareReport { g, p: level.p(), top, zero, expect_equal, holds }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthReport {
    pub g: usize,
    pub p: u32,
    /// `dim W_{g+1,p,(p-3)}`.
    pub next: BigUint,
    /// `d(d-1)/2` for `g >= 3`, `d^2` for `g = 2`, with `d = dim W_{g,p,(p-3)}`.
    pub bound: BigUint,
    pub square_bound: bool,
    pub holds: bool,
}

pub fn check_growth(g: usize, level: Level) -> GrowthReport {
    let d = top_dims(g, level);
    let next = top_dims(g + 1, level);
    let square_bound = g == 2;
    let bound = if square_bound { &d * &d } else { &d * (&d - BigUint::one()) / BigUint::from(2u32) };
    let holds = next < bound;
    GrowthReport { g, p: level.p(), next, bound, square_bound, holds }
}

/// `dim W_{3,p,(p-3)} / (dim W_{2,p,(p-3)})^2`, exactly and as a float.
pub fn growth_ratio(level: Level) -> (BigRational, f64) {
    let w2 = top_dims(2, level);
    let w3 = top_dims(3, level);
    let r = BigRational::new(w3.into(), (&w2 * &w2).into());
    let f = r.to_f64().unwrap_or(f64::NAN);
    (r, f)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanHit {
    pub p: u32,
    pub value: BigUint,
}

/// Primes `5 <= p <= p_max` for which `1 + 8 dim W_{3,p,(p-3)}` is a perfect
/// square.
pub fn square_scan(p_max: u64) -> Vec<ScanHit> {
    primes_in(5, p_max)
        .into_iter()
        .filter_map(|p| {
            let level = Level::new(p).expect("odd prime");
            let value = BigUint::one() + BigUint::from(8u32) * top_dims(3, level);
            let r = value.sqrt();
            (&r * &r == value).then_some(ScanHit { p: p as u32, value })
        })
        .collect()
}
