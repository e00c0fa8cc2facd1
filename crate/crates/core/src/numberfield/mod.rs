//! The field `Q(θ)`: exact element arithmetic, unit tables, real
//! embeddings and the log-embedding matrix.

mod embedding;
mod field;
mod units;

pub use embedding::{
    eta, from_logs, interval_determinant, invert_certified, log_embedding_matrix, unit_logs,
    CertifiedInverse, EmbeddingMatrix,
};
pub use field::{FieldElement, NumberField};
pub use units::{
    bundled_table, load_units, parse_element, parse_unit_table, verify_unit_system, UnitReport,
    UnitSystem,
};
