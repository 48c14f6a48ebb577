//! Reductions modulo primes, finite matrix group closures and spectra.

pub mod cells;
mod closure;
mod residue_rep;
mod spectrum;

pub use closure::{
    closure, gl_order, normality_check, prime_field, same_subgroup, small_field, to_indices, Closure, ClosureOptions, ClosureResult,
    ClosureStatus, Comparison, Decision, DEFAULT_CAP,
};
pub use residue_rep::{
    check_homomorphism, check_prime, conjugation_frobenius, first_split_prime, reduce_matrix, reduce_rep,
    NamedResidueMatrix, ResidueMatrix, ResidueOps, ResidueRep,
};
pub use spectrum::{
    cyclotomic_poly, embed_matrix, embedded_moduli, find_infinite_order_word, find_noncentral_commutator,
    spectrum_report, InfiniteWitness, SpectrumReport, Verdict, MODULUS_SLACK, VERIFY_LIMIT,
};
