use thiserror::Error;

use crate::label::FacetLabel;
use crate::subgraph::Violation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension {0} is outside the supported range 2..={max}", max = crate::MAX_DIM)]
    Dimension(usize),

    #[error("cannot parse facet label {0:?}")]
    ParseLabel(String),

    #[error("cannot parse direction {0:?}")]
    ParseDirection(String),

    #[error("cannot parse edge {0:?}")]
    ParseEdge(String),

    #[error("label {label} does not exist in dimension {n}")]
    LabelOutOfRange { label: FacetLabel, n: usize },

    #[error("{0} and itself do not form an edge")]
    SelfPair(FacetLabel),

    #[error("direction {direction} is invalid in dimension {n}")]
    Direction { direction: i32, n: usize },

    #[error("invalid subgraph: {0}")]
    Invalid(#[from] Violation),

    #[error("roll {step} re-enters facet {label}")]
    Revisit { label: FacetLabel, step: usize },

    #[error("base {0} is not a node of the tree")]
    BaseNotInTree(FacetLabel),

    #[error("illegal slide in direction {direction}: {reason}")]
    IllegalSlide { direction: usize, reason: &'static str },

    #[error("invalid cube partition {parts:?}: {reason}")]
    Partition { parts: Vec<usize>, reason: &'static str },

    #[error("invalid chord diagram: {0}")]
    Diagram(String),

    #[error("{what} for dimension {requested} exceeds the configured limit {limit}")]
    ResourceLimit {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("methods disagree at n={n}: {what}")]
    Mismatch { n: usize, what: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
