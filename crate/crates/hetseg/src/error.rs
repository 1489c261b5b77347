use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong across the pipeline, from input validation to
/// file ingestion. Variants carry enough context to point at the offending
/// observation, interval, or file line.
#[derive(Debug, Error)]
pub enum Error {
    #[error("series has {series} values but the interval map labels {labels}")]
    LengthMismatch { series: usize, labels: usize },

    #[error("interval label {label} has no observations")]
    EmptyInterval { label: usize },

    #[error("value at index {index} is not finite")]
    NonFiniteValue { index: usize },

    #[error("label {label} at index {index} is outside 1..={max}")]
    LabelOutOfRange {
        index: usize,
        label: usize,
        max: usize,
    },

    #[error("dates must be strictly increasing; offending entry at index {index}")]
    NonIncreasingDates { index: usize },

    #[error("need at least {min} values, got {len}")]
    TooShort { len: usize, min: usize },

    #[error("interval {name}: fewer than two contiguous differences available")]
    IntervalTooSparse { name: String },

    #[error(
        "interval {name}: robust scale is zero (constant data within the interval); \
         enable the zero-scale floor to proceed"
    )]
    ZeroScale { name: String },

    #[error("kmax {kmax} exceeds {limit} (n = {n})")]
    KmaxTooLarge { kmax: usize, limit: usize, n: usize },

    #[error("{candidates} candidate segmentations exceed the enumeration cap {cap}")]
    TooManySegmentations { candidates: u128, cap: u128 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("column {name:?} not found in header")]
    UnknownColumn { name: String },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("duplicate date {date}")]
    DuplicateDate { date: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
