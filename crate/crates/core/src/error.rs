use thiserror::Error;

/// Errors raised by the algebra engine and the verification harness.
///
/// Elements are carried as already-formatted words so that messages stay
/// readable without access to the originating system.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),
    #[error("root closure exceeded the cap of {cap} (group infinite or too large)")]
    InfiniteOrTooLarge { cap: usize },
    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("{elem} is not a minimal coset representative for {subset}")]
    NotACosetRep { elem: String, subset: String },
    #[error("Pos(E) = {pos} differs from S \\ E = {complement}")]
    PosMismatch { pos: String, complement: String },
    #[error("reference set {j} is not contained in Pos(E) = {pos}")]
    BadReference { j: String, pos: String },
    #[error("{0} is not suffix-closed")]
    NotAnIdeal(String),
    #[error("suffixes of {alpha} lying in E have no dominating maximum")]
    NoUniqueMax { alpha: String },
    #[error("no unique length-additive factorization through D_K x F_J for {sigma}")]
    FactorizationHypothesisViolated { sigma: String },
    #[error("sign twist undefined: {0}")]
    PhiUndefined(String),
    #[error("invalid weight function: {0}")]
    InvalidWeights(String),
    #[error("missing r-table entry for s = {s}, y = {y}")]
    MissingRTableEntry { s: String, y: String },
    #[error("r-table entry ({s}, {y}, {z}) is not admissible")]
    InadmissibleRTableEntry { s: String, y: String, z: String },
    #[error("r-table solver stalled with {unresolved} unresolved unknowns")]
    SolverIncomplete { unresolved: usize, residue: Vec<String> },
    #[error("r-table constraints are inconsistent: {0}")]
    Inconsistent(String),
    #[error("T_z T_y m_e is not a multiple of m_z for z = {z}, y = {y}")]
    NotScalarMultiple { z: String, y: String },
    #[error("unknown claim id {0:?}")]
    UnknownClaim(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
