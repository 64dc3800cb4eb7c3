use thiserror::Error;

/// Errors raised by the group substrate and everything built on it.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element does not belong to this group descriptor: {0}")]
    DescriptorMismatch(String),

    #[error("letter index {index} is outside the alphabet of rank {rank}")]
    InvalidLetter { index: u32, rank: u32 },

    #[error("element budget of {cap} exceeded after {partial} elements")]
    Budget { cap: usize, partial: usize },

    #[error("invalid group descriptor: {0}")]
    Descriptor(String),

    #[error("cannot parse element `{text}`: {reason}")]
    ElementSyntax { text: String, reason: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error("group is finitely generated and admits no filtration")]
    NoFiltration,

    #[error("configuration error: {0}")]
    Config(String),

    #[error("no witness exists: {0}")]
    NoWitness(String),

    #[error("brute force is capped at |G| <= {cap}, got {size}; use the estimate mode")]
    TooLarge { size: usize, cap: usize },

    #[error("{0}")]
    Parse(#[from] crate::expr::ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
