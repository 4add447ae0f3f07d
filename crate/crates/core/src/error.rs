use thiserror::Error;

/// Errors produced by group construction and the formation machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("group order {order} exceeds the order cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("search budget of {budget} nodes exhausted")]
    SearchBudgetExceeded { budget: u64 },
    #[error("group of order {order} exceeds the lattice budget {budget}")]
    LatticeBudgetExceeded { order: usize, budget: usize },
    #[error("subgroup is not normal: {by} conjugates {element} outside it")]
    NotNormal { element: usize, by: usize },
    #[error("section is not centralized: {by} moves the coset of {element}")]
    NotCentralized { element: usize, by: usize },
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("element index {index} out of range for a group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },
    #[error("formation law violated: {group} modulo its {formation} residual is not in the formation")]
    FormationLawViolated { group: String, formation: String },
    #[error("{formation}-hypercentre of {group} is not {formation}-hypercentral")]
    HypercentreNotHypercentral { group: String, formation: String },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown formation {0:?} (expected nilpotent, supersoluble, soluble or sigma-nilpotent)")]
    UnknownFormation(String),
    #[error("invalid sigma partition: {0}")]
    InvalidSigma(String),
    #[error("invalid group selector {0:?}")]
    InvalidSelector(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
