use thiserror::Error;

/// Errors produced by the codecs, the segmenter and the evaluation harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed PBM at byte {offset}: {message}")]
    Format { offset: usize, message: String },

    #[error("truncated pixel data: expected {expected} {unit}, found {found}")]
    Truncated {
        expected: usize,
        found: usize,
        unit: &'static str,
    },

    #[error("invalid run-length row {row}: {message}")]
    Structural { row: usize, message: String },

    #[error("RLC parse error on line {line}: {message}")]
    Rlc { line: usize, message: String },

    #[error("unknown codeword at bit {bit_offset}")]
    Codeword { bit_offset: usize },

    #[error("row {row} decodes to {found} pixels, declared width is {expected}")]
    RowLength {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("framing error at bit {bit_offset}: {message}")]
    Framing { bit_offset: usize, message: String },

    #[error("bad MH container header: {0}")]
    Header(String),

    #[error("row band [{start}, {end}] is outside 1..={height}")]
    Bounds {
        start: usize,
        end: usize,
        height: usize,
    },

    #[error("column scanner exhausted after {width} columns")]
    Exhausted { width: usize },

    #[error("layout does not fit: {0}")]
    Dimension(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
