use thiserror::Error;

use crate::step::Letter;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PomsetError {
    #[error("not series-parallel")]
    NotSeriesParallel,
    #[error("order relation is not antisymmetric (cycle through node {0})")]
    Cyclic(usize),
    #[error("node {0} out of range")]
    NodeOutOfRange(usize),
    #[error("posets are limited to {max} nodes, got {got}")]
    TooLarge { max: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LanguageError {
    #[error("size bounds differ: {0} vs {1}")]
    BoundMismatch(usize, usize),
    #[error("substitution undefined on letter `{0}`")]
    MissingLetter(Letter),
    #[error(transparent)]
    Pomset(#[from] PomsetError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("empty step on a transition from `{0}`")]
    EmptyStep(String),
    #[error("state set is not support-closed: `{0}` reaches `{1}`")]
    NotSupportClosed(String, String),
    #[error("malformed automaton file: {0}")]
    Format(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KleeneError {
    #[error("step width cap W={cap} exceeded while deriving `{expr}`")]
    WidthCapExceeded { cap: usize, expr: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StmError {
    #[error("invalid machine: {0}")]
    Invalid(String),
    #[error("malformed machine file: {0}")]
    Format(String),
    #[error("unsupported classical machine feature: {0}")]
    Unsupported(String),
}
