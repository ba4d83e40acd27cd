use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("could not allocate {bits} bits")]
    Resource { bits: usize },

    #[error("corrupt sequence at bit {pos}: {reason}")]
    Corrupt { pos: usize, reason: &'static str },

    #[error("container full: need {needed} bits, {available} available")]
    ContainerFull { needed: usize, available: usize },

    #[error("value at bit {pos} has {bits} payload bits and does not fit a machine word")]
    ValueTooWide { pos: usize, bits: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("iterator exhausted")]
    Exhausted,

    #[error("node {node}: value needs {needed} bits but its slot holds {available}")]
    SlotOverflow {
        node: usize,
        needed: usize,
        available: usize,
    },

    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
