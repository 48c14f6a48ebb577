//! Quantum representations of mapping class groups on spaces of conformal
//! blocks, with exact entries in `Q(zeta_p)`.

mod bundle;
mod burau;
mod checks;
mod quantum;
mod space;
mod surfaces;
mod word;

pub use bundle::{graph_text, parse_graph, RepBundle};
pub(crate) use bundle::{first_difference, read_matrices, write_matrix, Lines};
pub use burau::{burau_block, BurauBlock, FINITE_ORDERS};
pub use checks::{
    check_burnside, check_modular, check_relation, check_representation, conj_symmetry_check, galois_coherence_check,
    scalar_ratio, CheckItem, CheckReport,
};
pub use quantum::Quantum;
pub use space::BlockSpace;
pub use surfaces::{Relation, RelationKind, RepMatrix, Representation, SurfaceSpec};
pub use word::Word;
