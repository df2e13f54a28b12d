//! Line, word and character segmentation on run-length rows.
//!
//! Lines are maximal row intervals whose row profile exceeds the noise
//! tolerance `tau`. Inside a line band, a virtual column scan marks space
//! columns; maximal runs of non-space columns are characters, and a blank
//! gap of at least the word-space threshold starts a new word.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cost::CostLedger;
use crate::error::{Error, Result};
use crate::layout::{CharBox, PageLayout, Span, WordBox};
use crate::profile::{check_band, row_profile, Axis, ColumnScanner, ProfileCurve};
use crate::rle::RleDocument;

/// Threshold used when a line offers no gaps to estimate from.
pub const DEFAULT_THRESHOLD: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineSegment {
    pub rows: Span,
    /// Blank rows between the previous line (or the page top) and this one.
    pub gap_above: usize,
}

pub fn segment_lines(profile: &ProfileCurve, tau: u32) -> Vec<LineSegment> {
    let mut ledger = CostLedger::default();
    segment_lines_counted(profile, tau, &mut ledger)
}

/// Single pass over the profile; each value is read exactly once.
pub(crate) fn segment_lines_counted(
    profile: &ProfileCurve,
    tau: u32,
    ledger: &mut CostLedger,
) -> Vec<LineSegment> {
    debug_assert_eq!(profile.axis, Axis::Row);
    let mut lines = Vec::new();
    let mut start = None;
    let mut last_end = 0usize;
    for (i, &v) in profile.values.iter().enumerate() {
        ledger.profile_reads += 1;
        let row = i + 1;
        match (v > tau, start) {
            (true, None) => start = Some(row),
            (false, Some(s)) => {
                lines.push(LineSegment {
                    rows: Span::new(s, row - 1),
                    gap_above: s - last_end - 1,
                });
                last_end = row - 1;
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        lines.push(LineSegment {
            rows: Span::new(s, profile.values.len()),
            gap_above: s - last_end - 1,
        });
    }
    lines
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThresholdSource {
    /// Two-means split of the gap widths.
    Cluster,
    /// Median-based fallback for unimodal or sparse gaps.
    Fallback,
    /// No gaps at all; [`DEFAULT_THRESHOLD`].
    NoGaps,
    /// Supplied by the caller.
    Fixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdEstimate {
    pub threshold: usize,
    pub source: ThresholdSource,
}

/// Picks a word-space threshold from blank-gap widths.
///
/// With at least four gaps, a two-means clustering seeded at the smallest
/// and largest width is run; if the upper center is at least twice the lower
/// one the threshold is the rounded-up midpoint of the centers. Otherwise
/// the threshold is `max(2, ceil(2.5 * median))`.
pub fn estimate_word_space_threshold(gaps: &[usize]) -> ThresholdEstimate {
    if gaps.is_empty() {
        return ThresholdEstimate {
            threshold: DEFAULT_THRESHOLD,
            source: ThresholdSource::NoGaps,
        };
    }
    if gaps.len() >= 4 {
        if let Some((lo, hi)) = two_means(gaps) {
            if hi >= 2.0 * lo {
                return ThresholdEstimate {
                    threshold: ceil((lo + hi) / 2.0),
                    source: ThresholdSource::Cluster,
                };
            }
        }
    }
    let mut sorted = gaps.to_vec();
    sorted.sort_unstable();
    let n = sorted.len();
    let median = if n % 2 == 1 {
        sorted[n / 2] as f64
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) as f64 / 2.0
    };
    ThresholdEstimate {
        threshold: ceil(2.5 * median).max(DEFAULT_THRESHOLD),
        source: ThresholdSource::Fallback,
    }
}

fn ceil(x: f64) -> usize {
    (x - 1e-9).ceil().max(0.0) as usize
}

/// Lloyd iterations for k = 2 in one dimension. `None` if all gaps are
/// equal or a cluster empties.
fn two_means(gaps: &[usize]) -> Option<(f64, f64)> {
    let mut lo = *gaps.iter().min()? as f64;
    let mut hi = *gaps.iter().max()? as f64;
    if lo == hi {
        return None;
    }
    for _ in 0..100 {
        let (mut sum_lo, mut n_lo, mut sum_hi, mut n_hi) = (0.0, 0usize, 0.0, 0usize);
        for &g in gaps {
            let g = g as f64;
            if (g - lo).abs() <= (g - hi).abs() {
                sum_lo += g;
                n_lo += 1;
            } else {
                sum_hi += g;
                n_hi += 1;
            }
        }
        if n_lo == 0 || n_hi == 0 {
            return None;
        }
        let (new_lo, new_hi) = (sum_lo / n_lo as f64, sum_hi / n_hi as f64);
        if new_lo == lo && new_hi == hi {
            break;
        }
        lo = new_lo;
        hi = new_hi;
    }
    Some((lo, hi))
}

/// Characters and interior gaps found by scanning one line band.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineScan {
    /// Maximal runs of non-space columns, left to right.
    pub chars: Vec<Span>,
    /// `gaps[i]` is the blank width between `chars[i]` and `chars[i + 1]`.
    pub gaps: Vec<usize>,
    pub ledger: CostLedger,
}

/// Runs one full column scan over `band` and collects character spans.
pub fn scan_line(doc: &RleDocument, band: Span) -> Result<LineScan> {
    let mut scanner = ColumnScanner::new(doc, band)?;
    let mut chars = Vec::new();
    let mut gaps = Vec::new();
    let mut open: Option<usize> = None;
    let mut space_counter = 0usize;
    while !scanner.is_exhausted() {
        let column = scanner.emitted() + 1;
        let space = scanner.advance_count()? == 0;
        match (space, open) {
            (false, None) => {
                if !chars.is_empty() {
                    gaps.push(space_counter);
                }
                open = Some(column);
            }
            (true, Some(start)) => {
                chars.push(Span::new(start, column - 1));
                open = None;
                space_counter = 1;
            }
            (true, None) => space_counter += 1,
            (false, Some(_)) => {}
        }
    }
    if let Some(start) = open {
        chars.push(Span::new(start, doc.width()));
    }
    Ok(LineScan {
        chars,
        gaps,
        ledger: scanner.ledger(),
    })
}

/// Groups characters into words: a gap `>= threshold` is a word break.
pub fn group_words(chars: &[Span], threshold: usize) -> Vec<WordBox> {
    let mut words = Vec::new();
    let mut current: Vec<CharBox> = Vec::new();
    for &cols in chars {
        if let Some(prev) = current.last() {
            let gap = cols.start - prev.cols.end - 1;
            if gap >= threshold {
                words.push(WordBox::from_chars(std::mem::take(&mut current)));
            }
        }
        current.push(CharBox { cols });
    }
    if !current.is_empty() {
        words.push(WordBox::from_chars(current));
    }
    words
}

/// Word and character boxes of one line at a fixed threshold.
pub fn segment_words_chars(
    doc: &RleDocument,
    line: &LineSegment,
    threshold: usize,
) -> Result<Vec<WordBox>> {
    check_threshold(threshold)?;
    check_band(doc, line.rows)?;
    let scan = scan_line(doc, line.rows)?;
    Ok(group_words(&scan.chars, threshold))
}

fn check_threshold(threshold: usize) -> Result<()> {
    if threshold == 0 {
        return Err(Error::Input("word-space threshold must be >= 1".into()));
    }
    Ok(())
}

/// How the word-space threshold is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ThresholdRepr", into = "ThresholdRepr")]
pub enum ThresholdMode {
    Fixed(usize),
    /// Estimated separately for every line from its own gaps.
    AutoLine,
    /// Estimated once from the gaps of all lines.
    AutoPage,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ThresholdRepr {
    Fixed(usize),
    Named(String),
}

impl TryFrom<ThresholdRepr> for ThresholdMode {
    type Error = String;
    fn try_from(r: ThresholdRepr) -> std::result::Result<Self, String> {
        match r {
            ThresholdRepr::Fixed(n) => Ok(ThresholdMode::Fixed(n)),
            ThresholdRepr::Named(s) => s.parse(),
        }
    }
}

impl From<ThresholdMode> for ThresholdRepr {
    fn from(m: ThresholdMode) -> Self {
        match m {
            ThresholdMode::Fixed(n) => ThresholdRepr::Fixed(n),
            other => ThresholdRepr::Named(other.to_string()),
        }
    }
}

impl FromStr for ThresholdMode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "auto" => Ok(ThresholdMode::AutoLine),
            "auto-page" => Ok(ThresholdMode::AutoPage),
            n => match n.parse::<usize>() {
                Ok(v) if v >= 1 => Ok(ThresholdMode::Fixed(v)),
                _ => Err(format!(
                    "threshold must be a positive integer, `auto` or `auto-page`, got {s:?}"
                )),
            },
        }
    }
}

impl fmt::Display for ThresholdMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThresholdMode::Fixed(n) => write!(f, "{n}"),
            ThresholdMode::AutoLine => f.write_str("auto"),
            ThresholdMode::AutoPage => f.write_str("auto-page"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentConfig {
    /// Rows with a profile value `<= tau` separate lines.
    pub tau: u32,
    pub threshold: ThresholdMode,
}

impl Default for SegmentConfig {
    fn default() -> Self {
        SegmentConfig {
            tau: 0,
            threshold: ThresholdMode::AutoLine,
        }
    }
}

/// Configuration echo stored with a result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub tau: u32,
    pub threshold: ThresholdMode,
    /// Threshold applied to each line, in line order.
    pub line_thresholds: Vec<ThresholdEstimate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentedLine {
    pub rows: Span,
    pub gap_above: usize,
    pub words: Vec<WordBox>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentationResult {
    pub height: usize,
    pub width: usize,
    pub lines: Vec<SegmentedLine>,
    pub config: ConfigEcho,
    pub cost: CostLedger,
}

impl SegmentationResult {
    /// Equal boxes and thresholds, ignoring operation counts.
    pub fn same_segmentation(&self, other: &SegmentationResult) -> bool {
        self.height == other.height
            && self.width == other.width
            && self.lines == other.lines
            && self.config == other.config
    }

    pub fn word_count(&self) -> usize {
        self.lines.iter().map(|l| l.words.len()).sum()
    }

    pub fn char_count(&self) -> usize {
        self.lines
            .iter()
            .flat_map(|l| &l.words)
            .map(|w| w.chars.len())
            .sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result serializes")
    }
}

impl PageLayout for SegmentationResult {
    fn height(&self) -> usize {
        self.height
    }

    fn width(&self) -> usize {
        self.width
    }

    fn line_boxes(&self) -> Vec<(Span, &[WordBox])> {
        self.lines
            .iter()
            .map(|l| (l.rows, l.words.as_slice()))
            .collect()
    }
}

/// Resolves the per-line thresholds for `mode` given each line's gaps.
pub fn resolve_thresholds(
    mode: ThresholdMode,
    line_gaps: &[&[usize]],
) -> Result<Vec<ThresholdEstimate>> {
    Ok(match mode {
        ThresholdMode::Fixed(t) => {
            check_threshold(t)?;
            vec![
                ThresholdEstimate {
                    threshold: t,
                    source: ThresholdSource::Fixed,
                };
                line_gaps.len()
            ]
        }
        ThresholdMode::AutoLine => line_gaps
            .iter()
            .map(|g| estimate_word_space_threshold(g))
            .collect(),
        ThresholdMode::AutoPage => {
            let all: Vec<usize> = line_gaps.iter().flat_map(|g| g.iter().copied()).collect();
            vec![estimate_word_space_threshold(&all); line_gaps.len()]
        }
    })
}

/// Full pipeline: row profile, line bands, one column scan per band,
/// threshold selection, word grouping.
pub fn segment_document(doc: &RleDocument, config: &SegmentConfig) -> Result<SegmentationResult> {
    if let ThresholdMode::Fixed(t) = config.threshold {
        check_threshold(t)?;
    }
    let profile = row_profile(doc);
    let mut cost = CostLedger {
        profile_additions: profile.addition_count,
        ..CostLedger::default()
    };
    let lines = segment_lines_counted(&profile, config.tau, &mut cost);
    let scans = lines
        .iter()
        .map(|l| scan_line(doc, l.rows))
        .collect::<Result<Vec<_>>>()?;
    let gaps: Vec<&[usize]> = scans.iter().map(|s| s.gaps.as_slice()).collect();
    let thresholds = resolve_thresholds(config.threshold, &gaps)?;
    let mut out = Vec::with_capacity(lines.len());
    for ((line, scan), t) in lines.iter().zip(&scans).zip(&thresholds) {
        cost += scan.ledger;
        out.push(SegmentedLine {
            rows: line.rows,
            gap_above: line.gap_above,
            words: group_words(&scan.chars, t.threshold),
        });
    }
    Ok(SegmentationResult {
        height: doc.height(),
        width: doc.width(),
        lines: out,
        config: ConfigEcho {
            tau: config.tau,
            threshold: config.threshold,
            line_thresholds: thresholds,
        },
        cost,
    })
}
