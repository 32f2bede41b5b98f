//! Finitely presented groups and the algorithms run on them.

mod coset;
mod presentation;
mod schreier;
mod smith;
mod word;

use thiserror::Error;

pub use coset::{
    coset_enumeration, enumerate_cosets, quotient_coset_table, table_to_permutations, trace_word, CosetTable,
    EnumerationLimits,
};
pub use presentation::{geodesic_presentation, triangle_presentation, GroupPresentation};
pub use schreier::subgroup_presentation;
pub use smith::{abelian_invariants, smith_diagonal, AbelianInvariants};
pub use word::{Letter, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FpGroupError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("coset enumeration exceeded its limits (max index {max_index}, budget {coset_budget}, defined {defined})")]
    LimitExceeded {
        max_index: usize,
        coset_budget: usize,
        defined: usize,
    },
}
