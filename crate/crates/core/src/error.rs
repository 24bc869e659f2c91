use std::path::PathBuf;

use thiserror::Error;

use crate::hypergraph::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(ValidationReport),

    #[error("brute force over {candidates} colorings exceeds the limit of {limit}")]
    InstanceTooLarge { candidates: f64, limit: u64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: node `{node}` appears twice in one edge")]
    DuplicateNodeInEdge { line: usize, node: String },

    #[error("line {line}: label {label} outside 0..={categories}")]
    LabelOutOfRange {
        line: usize,
        label: u64,
        categories: u32,
    },

    #[error("{}: {source}", path.as_ref().map(|p| p.display().to_string()).unwrap_or_else(|| "i/o".into()))]
    Io {
        path: Option<PathBuf>,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid flow network: {0}")]
    InvalidNetwork(String),

    #[error("edge {edge} has {size} nodes, expected at most {expected}")]
    WrongArity {
        edge: usize,
        size: usize,
        expected: usize,
    },

    #[error("expected {expected} categories, instance has {found}")]
    WrongCategoryCount { expected: u32, found: u32 },

    #[error("unlabeled (wildcard) edges are not supported here (edge {edge})")]
    WildcardUnsupported { edge: usize },

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program solver hit its iteration limit")]
    IterationLimit,

    #[error("linear program solver failed: {0}")]
    Solver(String),

    #[error("rounding threshold {0} outside [1/2, 2/3]")]
    BadThreshold(f64),

    #[error("{candidates} candidate tuples exceed the enumeration budget of {budget}")]
    TooManyTuples { candidates: f64, budget: u64 },

    #[error("{edges} edges cannot fill {bins} bins")]
    FewerEdgesThanBins { edges: usize, bins: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("instance has no edges")]
    EmptyEdgeSet,

    #[error("no edge lies entirely inside a cluster")]
    NoInteriorEdges,

    #[error("invalid parameter: {0}")]
    BadParameter(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn io(path: Option<&std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.map(|p| p.to_path_buf()),
            source,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(source: std::io::Error) -> Self {
        Error::Io { path: None, source }
    }
}
