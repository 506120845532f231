use std::io;

use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown node reference {0}")]
    UnknownNode(usize),
    #[error("unknown signal name `{0}`")]
    UnknownName(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("operation {op} expects {expected} operand(s), got {got}")]
    Arity {
        op: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("block input {0} is not bound")]
    UnboundBlockInput(usize),
    #[error("block `{0}` already exists")]
    BlockNameCollision(String),
    #[error("expected {expected} values, got {got}")]
    AssignmentLength { expected: usize, got: usize },
    #[error("{inputs} inputs exceed the enumeration cap of {cap}")]
    TooManyInputs { inputs: usize, cap: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("cycle detected through node {0}")]
    Cycle(usize),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("gate {0} is not expressible in the AIG basis")]
    NotAig(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("solver failure: {0}")]
    Solver(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
