use thiserror::Error;

use crate::extraction::ExtractionFailure;
use crate::minor::ModelViolation;
use crate::rig::RegionViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),

    #[error("vertex set is disconnected or does not contain the root: {0}")]
    Disconnected(String),

    #[error("degenerate arrangement: segments {0} and {1} overlap or touch at an endpoint")]
    DegenerateArrangement(usize, usize),

    #[error("segment {0} has coincident endpoints")]
    ZeroLengthSegment(usize),

    #[error("invalid region system: {0}")]
    Regions(#[from] RegionViolation),

    #[error("invalid minor model: {0}")]
    Model(#[from] ModelViolation),

    #[error("host-model extraction failed: {0}")]
    Extraction(Box<ExtractionFailure>),

    #[error("instance has {n} vertices, above the exact-search cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("invalid ordering: {0}")]
    Ordering(String),

    #[error("orientation does not match the graph: {0}")]
    Orientation(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("pipeline stage `{stage}` failed: {detail}")]
    Stage { stage: &'static str, detail: String },
}

impl From<ExtractionFailure> for Error {
    fn from(f: ExtractionFailure) -> Self {
        Error::Extraction(Box::new(f))
    }
}
