//! Segmentation of binary printed-text pages into lines, words and
//! characters, working on run-length rows instead of pixels.
//!
//! The main path is `.mh`/`.rlc` bytes → [`RleDocument`] → [`segment_document`].
//! Nothing on that path expands a row into pixels: line bands come from
//! summing black runs, and column information comes from a
//! [`ColumnScanner`] that pops one pixel per row from the run heads.
//!
//! ```
//! use rlcseg::{compress, segment_document, sample::sample_page, SegmentConfig, ThresholdMode};
//!
//! let doc = compress(&sample_page());
//! let config = SegmentConfig { tau: 0, threshold: ThresholdMode::Fixed(2) };
//! let result = segment_document(&doc, &config).unwrap();
//! assert_eq!(result.lines.len(), 1);
//! assert_eq!(result.char_count(), 2);
//! ```

pub mod bitmap;
pub mod cost;
pub mod error;
pub mod eval;
pub mod layout;
pub mod mhcodec;
pub mod profile;
pub mod rle;
pub mod sample;
pub mod segment;

pub use bitmap::{load_pbm, save_pbm, synth_doc, BitImage, GroundTruth, LayoutSpec, TruthLine};
pub use cost::CostLedger;
pub use error::{Error, Result};
pub use eval::{
    cost_report, evaluate, f_measure, reference_segment, CostReport, Evaluation, Metrics,
};
pub use layout::{CharBox, PageLayout, Span, WordBox};
pub use mhcodec::{mh_decode, mh_encode, MhBitstream, MhCodeTable};
pub use profile::{
    column_profile, new_scanner, row_profile, Axis, ColumnScanner, ColumnTransitions, ProfileCurve,
};
pub use rle::{compress, decompress, RleDocument, RleRow};
pub use segment::{
    estimate_word_space_threshold, segment_document, segment_lines, segment_words_chars,
    LineSegment, SegmentConfig, SegmentationResult, SegmentedLine, ThresholdEstimate,
    ThresholdMode, ThresholdSource,
};
