use thiserror::Error;

pub type Result<T, E = NcpError> = std::result::Result<T, E>;

/// Errors raised by partition constructors and the operations built on them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NcpError {
    #[error("element {element} is outside the ground set [1..{n}]")]
    OutOfRange { element: usize, n: usize },

    #[error("element {element} appears in more than one block")]
    Overlap { element: usize },

    #[error("element {missing} is not covered by any block")]
    NotACover { missing: usize },

    #[error("empty block")]
    EmptyBlock,

    #[error("blocks {first:?} and {second:?} cross")]
    Crossing { first: Vec<usize>, second: Vec<usize> },

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("size {n} exceeds the enumeration bound {max}")]
    TooLarge { n: usize, max: usize },

    #[error("block index {index} out of range ({blocks} blocks)")]
    IndexOutOfRange { index: usize, blocks: usize },

    #[error("ground subset must be strictly increasing")]
    NotIncreasing,

    #[error("fixed blocks {first:?} and {second:?} cross")]
    CrossingBlocks { first: Vec<usize>, second: Vec<usize> },

    #[error("lower element does not divide upper element")]
    NotDividing,

    #[error("partition is not {k}-preserving")]
    NotKPreserving { k: usize },

    #[error("tuple is not admissible")]
    NotAdmissible,

    #[error("sequence is not a multichain")]
    NotAMultichain,

    #[error("tuple is not complete")]
    NotComplete,

    #[error("partition is not {k}-completing")]
    NotCompleting { k: usize },

    #[error("value {value} exceeds the bound {bound}")]
    OutOfBound { value: u64, bound: u64 },

    #[error("function is not defined on basis element {0}")]
    BasisMismatch(String),

    #[error("convolution inverse does not exist: {0}")]
    NotInvertible(String),

    #[error("truncation degree {d_max} is too shallow (need at least {needed})")]
    TooShallow { d_max: usize, needed: usize },

    #[error("simplicial structure map leaves the truncated set: {0}")]
    NotClosed(String),

    #[error("empty sequence")]
    EmptySequence,

    #[error("parse error at byte {offset}: {reason}")]
    Parse { offset: usize, reason: String },

    #[error("at byte {offset}: {source}")]
    Located {
        offset: usize,
        #[source]
        source: Box<NcpError>,
    },
}

impl NcpError {
    /// Strips any location wrapper.
    pub fn kind(&self) -> &NcpError {
        match self {
            NcpError::Located { source, .. } => source.kind(),
            other => other,
        }
    }
}
