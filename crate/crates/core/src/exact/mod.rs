//! Exact rational probabilities: ideal probabilities under the ER-type,
//! graded and general models, Krull dimension via hypergraph transversals and
//! its distribution, and a brute-force enumeration oracle.

mod hypergraph;
mod krull;
mod oracle;
mod prob;

use thiserror::Error;

use crate::ideal::IdealError;

pub use hypergraph::{ideal_support_hypergraph, krull_dimension, support_hypergraph, Clutter, Hypergraph};
pub use krull::{
    enumerate_clutters, krull_dim_distribution, krull_dim_distribution_all, support_exact_count, KrullMethod,
    MAX_CLUTTER_VERTICES,
};
pub use oracle::{brute_force_distribution, brute_force_distribution_graded, SubsetCensus, MAX_ORACLE_MONOMIALS};
pub use prob::{prob_ideal_er, prob_ideal_general, prob_ideal_graded};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("ideal has {got} variables, parameters have {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("generator {generator} exceeds the degree bound {bound}")]
    GeneratorExceedsDegree { generator: String, bound: u32 },
    #[error("{what} exceeds the supported size ({limit})")]
    TooLarge { what: &'static str, limit: u64 },
    #[error("t = {t} outside 0..={n}")]
    TOutOfRange { t: usize, n: usize },
    #[error("no closed form for P(dim = {t}) with n = {n}; use the clutter sum")]
    ClosedFormUnavailable { n: usize, t: usize },
    #[error(transparent)]
    Ideal(#[from] IdealError),
}
