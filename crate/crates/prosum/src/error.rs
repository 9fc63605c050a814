use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("chain ring exponent must be at least 1")]
    BadExponent,
    #[error("p^k overflows u64 for p = {p}, k = {k}")]
    ModulusOverflow { p: u64, k: u32 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operands live over different rings")]
    RingMismatch,
    #[error("operands live over different groups")]
    GroupMismatch,
    #[error("{0:?} is not a permutation of 0..{1}")]
    NotAPermutation(Vec<usize>, usize),
    #[error("generated group exceeds the element cap of {0}")]
    GroupTooLarge(usize),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("invalid group action: {0}")]
    InvalidAction(String),
    #[error("module validation failed: {0}")]
    InvalidModule(String),
    #[error("matrix is not a module homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("operation needs field coefficients (k = 1), got k = {0}")]
    UnsupportedRing(u32),
    #[error("quotient is not free over the chain ring; only field coefficients guarantee freeness")]
    NonFreeQuotient,
    #[error("kernel is not free over the chain ring; only field coefficients guarantee freeness")]
    NonFreeKernel,
    #[error("point {0} is not in the bundle space of size {1}")]
    PointNotInSpace(usize, usize),
    #[error("invalid bundle: {0}")]
    InvalidBundle(String),
    #[error("invalid bundle morphism: {0}")]
    InvalidMorphism(String),
    #[error("cosection table violates the cosheaf axiom: {0}")]
    NotACosheaf(String),
    #[error("tower transition is not surjective: {0}")]
    TransitionNotSurjective(String),
    #[error("no factorization through the requested levels")]
    NoFactorization,
    #[error("map is not middle linear: {0}")]
    NotMiddleLinear(String),
    #[error("exhaustive enumeration too large: {0}")]
    EnumerationTooLarge(String),
    #[error("unknown sweep suite '{0}'")]
    UnknownSuite(String),
    #[error("input graph is not a tree: {0}")]
    NotATree(String),
    #[error("group action is not simplicial: {0}")]
    ActionNotSimplicial(String),
}

pub type Result<T> = std::result::Result<T, Error>;
