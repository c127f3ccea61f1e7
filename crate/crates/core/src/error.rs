use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate segment: endpoints coincide")]
    DegenerateSegment,
    #[error("degenerate line: the two points coincide")]
    DegenerateLine,
    #[error("the two lines are the same line")]
    SameLine,
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("degenerate grid: {0}")]
    DegenerateGrid(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("segment set does not cover the grid ({0} uncovered points)")]
    NotCovering(usize),
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
