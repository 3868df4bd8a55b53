use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input does not match the documented data format.
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("degenerate polytope: {0}")]
    Degenerate(String),
    #[error("not a face of the polytope: {0}")]
    NotAFace(String),
    #[error("targets do not match: {0}")]
    TargetMismatch(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("fibre product is not transverse: {0}")]
    NotTransverse(String),
    #[error("not a strong submersion: {0}")]
    NotSubmersion(String),
    #[error("non-injective tag: {0}")]
    NonInjectiveTag(String),
    #[error("requires a Q-algebra: {0}")]
    RequiresRationals(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("not invariant under the group action: {0}")]
    NotInvariant(String),
    #[error("group of even order: {0}")]
    EvenOrder(String),
    #[error("relation space has corners: {0}")]
    HasCorners(String),
    #[error("not closed: {0}")]
    NotClosed(String),
    #[error("search cap exceeded, undecided: {0}")]
    Undecided(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl Error {
    /// Process exit status for the command-line front ends.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Schema(_) => 2,
            _ => 3,
        }
    }
}
