//! Admissible colorings of trivalent graphs and the dimensions of the
//! conformal-block spaces they span.

mod dims;
mod graph;
mod lemmas;
mod table;

pub use dims::{
    dim_closed_form, dim_recursive, one_point_dims, one_point_dims_fast, sphere_count, verlinde_dim, ClosedForm,
    VERLINDE_PRECISION_BITS, VERLINDE_TOLERANCE,
};
pub use graph::{count_colorings, enumerate_colorings, Coloring, ColoredGraph, Slot};
pub use lemmas::{
    check_compare, check_growth, growth_ratio, square_scan, top_dims, CompareReport, GrowthReport, ScanHit,
    GENUS_TWO_GENERAL_NOTE,
};
pub use table::{labels_text, DimRow, DimTable, Method, DIM_TABLE_HEADER};

use crate::cyclo::Level;
use crate::error::{Error, Result};

/// Fast admissibility test on raw even colors; no range checks.
#[inline]
pub(crate) fn adm(a: u32, b: u32, c: u32, p: u32) -> bool {
    (a + b + c) % 2 == 0 && a <= b + c && b <= a + c && c <= a + b && a + b + c <= 2 * (p - 2)
}

pub(crate) fn check_color(c: u32, p: u32) -> Result<()> {
    if c % 2 == 1 {
        return Err(Error::InvalidColor { color: c, p, reason: "colors are even" });
    }
    if c + 3 > p {
        return Err(Error::InvalidColor { color: c, p, reason: "colors are at most p - 3" });
    }
    Ok(())
}

/// Triangle inequalities, even sum and the `2(p - 2)` bound.
pub fn admissible(a: u32, b: u32, c: u32, level: Level) -> Result<bool> {
    for x in [a, b, c] {
        check_color(x, level.p())?;
    }
    Ok(adm(a, b, c, level.p()))
}
