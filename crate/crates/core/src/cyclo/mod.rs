//! Exact arithmetic in `Q(zeta_p)`, its complex embeddings and its residue
//! fields.

mod embed;
pub mod fq;
mod number;
mod residue;
mod unity;

pub use embed::{complex_embed, Embedding};
pub use number::CycNum;
pub use residue::{reduce_mod, splitting_data, ResidueElem, ResidueField, Splitting};
pub use unity::{is_root_of_unity, make_root, Root, RootChoice, UnityVerdict, UNITY_TOLERANCE};

use crate::error::{Error, Result};
use crate::primes::is_prime;

/// Level of the TQFT: an odd prime `p >= 5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Level(u32);

impl Level {
    pub fn new(p: u64) -> Result<Self> {
        if p < 5 || p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::InvalidLevel(p));
        }
        Ok(Level(p as u32))
    }

    pub fn p(self) -> u32 {
        self.0
    }

    /// The main statements about these representations assume `p = 3 mod 4`;
    /// other levels are accepted but flagged in reports.
    pub fn is_three_mod_four(self) -> bool {
        self.0 % 4 == 3
    }

    /// The color set `{0, 2, ..., p - 3}`.
    pub fn colors(self) -> impl Iterator<Item = u32> {
        (0..=self.0 - 3).step_by(2)
    }

    /// One representative per pair of complex conjugate embeddings.
    pub fn embeddings(self) -> impl Iterator<Item = Embedding> {
        let p = self.0;
        (1..=(p - 1) / 2).map(move |t| Embedding::new(p, t).expect("valid embedding index"))
    }

    /// Every Galois automorphism `zeta -> zeta^t`, `t = 1..p-1`.
    pub fn galois_exponents(self) -> impl Iterator<Item = u32> {
        1..self.0
    }
}

impl std::fmt::Display for Level {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}
