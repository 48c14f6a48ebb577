//! Documented experiment cells.
//!
//! | name | p | spec | q | f | generators | mode | result |
//! |---|---|---|---|---|---|---|---|
//! | `burau-p7-q29` | 7 | `sphere(2,2,2,4)` | 29 | 1 | s1 s2 | projective | 12180 = \|PSL(2,29)\| |
//! | `burau-p7-q43` | 7 | `sphere(2,2,2,4)` | 43 | 1 | s1 s2 | projective | 79464 = \|PGL(2,43)\| |
//! | `burau-p7-q71` | 7 | `sphere(2,2,2,4)` | 71 | 1 | s1 s2 | projective | 357840 = \|PGL(2,71)\| |
//! | `torus2-p5-q3` | 5 | `torus2(2,2)` | 3 | 4 | loops vs T's | projective | equal, 42573600 = \|PSU(3,9)\| |
//! | `torus2-p7-q13` | 7 | `torus2(2,4)` | 13 | 2 | loops | projective | undecided under the default cap |
//!
//! The dimension-3 cell at `p = 7` is out of reach: `q = 13` is the
//! smallest usable prime and the expected image `PSU(3,13)` has about
//! `8 * 10^8` elements.

use std::sync::Arc;

use super::closure::{ClosureOptions, DEFAULT_CAP};
use super::residue_rep::{reduce_rep, ResidueMatrix, ResidueRep};
use crate::cyclo::{make_root, Level, RootChoice};
use crate::error::Result;
use crate::rep::{Quantum, RepBundle, Representation, SurfaceSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cell {
    pub name: &'static str,
    pub p: u64,
    pub spec: &'static str,
    pub q: u64,
    pub modulus_index: usize,
    pub projective: bool,
    pub cap: u64,
}

pub const BURAU_CELLS: [Cell; 3] = [
    Cell { name: "burau-p7-q29", p: 7, spec: "sphere(2,2,2,4)", q: 29, modulus_index: 0, projective: true, cap: DEFAULT_CAP },
    Cell { name: "burau-p7-q43", p: 7, spec: "sphere(2,2,2,4)", q: 43, modulus_index: 0, projective: true, cap: DEFAULT_CAP },
    Cell { name: "burau-p7-q71", p: 7, spec: "sphere(2,2,2,4)", q: 71, modulus_index: 0, projective: true, cap: DEFAULT_CAP },
];

/// Surface-group image against mapping-class image.
pub const DESK_CELL: Cell =
    Cell { name: "torus2-p5-q3", p: 5, spec: "torus2(2,2)", q: 3, modulus_index: 0, projective: true, cap: 50_000_000 };

pub const OVER_CAP_CELL: Cell =
    Cell { name: "torus2-p7-q13", p: 7, spec: "torus2(2,4)", q: 13, modulus_index: 0, projective: true, cap: DEFAULT_CAP };

pub const CELLS: [Cell; 5] = [BURAU_CELLS[0], BURAU_CELLS[1], BURAU_CELLS[2], DESK_CELL, OVER_CAP_CELL];

pub fn cell(name: &str) -> Option<Cell> {
    CELLS.iter().copied().find(|c| c.name == name)
}

/// A cell's representation at the unitary root and its reduction.
pub struct CellData {
    pub rep: Representation,
    pub bundle: RepBundle,
    pub residue: ResidueRep,
}

impl CellData {
    pub fn generators(&self) -> Vec<ResidueMatrix> {
        self.named(self.rep.generators().iter().map(|g| g.name.as_str()))
    }

    pub fn loops(&self) -> Vec<ResidueMatrix> {
        self.named(self.rep.loops().iter().map(|g| g.name.as_str()))
    }

    fn named<'a>(&self, names: impl Iterator<Item = &'a str>) -> Vec<ResidueMatrix> {
        names.map(|n| self.residue.matrix(n).expect("reduced from the same bundle").matrix.clone()).collect()
    }
}

impl Cell {
    pub fn options(&self) -> ClosureOptions {
        ClosureOptions { cap: self.cap, projective: self.projective, histogram: false }
    }

    pub fn build(&self) -> Result<CellData> {
        let spec: SurfaceSpec = self.spec.parse()?;
        let root = make_root(Level::new(self.p)?, RootChoice::Unitary)?;
        let rep = Representation::build(&spec, Arc::new(Quantum::new(root)))?;
        let bundle = RepBundle::from_representation(&rep);
        let residue = reduce_rep(&bundle, self.q, self.modulus_index)?;
        Ok(CellData { rep, bundle, residue })
    }
}
