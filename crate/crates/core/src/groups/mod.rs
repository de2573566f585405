//! Finite classical groups over residue rings: forms, generators, BSGS
//! orders, Bruhat decomposition and coset histograms.

pub mod bruhat;
pub mod bsgs;
pub mod charpoly;
pub mod coset;
pub mod forms;
pub mod generation;
pub mod generators;
pub mod matrix;
pub mod order;

pub use bruhat::{bruhat_decompose, bruhat_selftest, BruhatFactors, BruhatSelftest};
pub use bsgs::{bsgs_order, GroupAtlas, MAX_DOMAIN};
pub use charpoly::{char_poly, dual_reciprocal};
pub use coset::{coset_charpoly_histogram, CosetGroup, HistogramMode, MAX_ENUMERATION};
pub use forms::{
    block_embed, similitude, split_embed, split_hermitian_space, standard_hermitian_space,
    standard_symplectic_space, FormKind, FormedSpace, SummandPair,
};
pub use generation::{order_report, verify_generation, GenerationReport, GroupKind, OrderReport};
pub use generators::{sl_generators, sp_generators, split_su_generators, su_generators};
pub use matrix::Matrix;
pub use order::{sl_order, sp_order, su_order};

use thiserror::Error;

use crate::residue::ResidueError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error(transparent)]
    Residue(#[from] ResidueError),
    #[error("ℓ = 2 is not supported")]
    EvenCharacteristic,
    #[error("unitary groups are not defined here for the ramified prime 3")]
    RamifiedUnitary,
    #[error("prime {0} has the wrong splitting type for this construction")]
    WrongSplitting(u32),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid dimension {0}")]
    InvalidDimension(usize),
    #[error("invalid summand pair ({0}, {1})")]
    InvalidSummands(usize, usize),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("matrix does not have determinant 1")]
    NotDeterminantOne,
    #[error("space carries no form")]
    NoForm,
    #[error("group kind does not match the form on the space")]
    IncompatibleKind,
    #[error("unknown group kind {0:?}")]
    UnknownKind(String),
    #[error("no similitude with the requested multiplier")]
    NoSimilitude,
    #[error("permutation domain of {0} vectors exceeds the limit")]
    DomainTooLarge(u64),
    #[error("group of order {0} is too large to enumerate")]
    EnumerationTooLarge(u128),
    #[error("no SU generators stored for n={n}, ℓ={ell}")]
    SuTableMissing { n: usize, ell: u32 },
    #[error("SU generator table is malformed")]
    MalformedTable,
    #[error("random generator search did not reach the full group")]
    GeneratorSearchFailed,
    #[error("internal error: {0}")]
    Internal(String),
}
