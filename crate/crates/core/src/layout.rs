//! Page-coordinate boxes shared by ground truth and segmentation output.
//!
//! Coordinates are 1-based and intervals are inclusive at both ends. Rows are
//! indexed top to bottom, columns left to right.

use serde::{Deserialize, Serialize};

/// Inclusive 1-based interval, serialized as `[start, end]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub const fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn len(&self) -> usize {
        (self.end + 1).saturating_sub(self.start)
    }

    pub fn is_empty(&self) -> bool {
        self.end < self.start
    }

    pub fn contains(&self, index: usize) -> bool {
        self.start <= index && index <= self.end
    }

    pub fn contains_span(&self, other: &Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    /// True when both boundaries differ by at most `tol`.
    pub fn matches_within(&self, other: &Span, tol: usize) -> bool {
        self.start.abs_diff(other.start) <= tol && self.end.abs_diff(other.end) <= tol
    }
}

impl From<[usize; 2]> for Span {
    fn from([start, end]: [usize; 2]) -> Self {
        Span { start, end }
    }
}

impl From<Span> for [usize; 2] {
    fn from(s: Span) -> Self {
        [s.start, s.end]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharBox {
    pub cols: Span,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordBox {
    pub cols: Span,
    pub chars: Vec<CharBox>,
}

impl WordBox {
    /// Builds a word spanning its first to last character.
    ///
    /// Panics if `chars` is empty.
    pub fn from_chars(chars: Vec<CharBox>) -> Self {
        let cols = Span::new(chars[0].cols.start, chars[chars.len() - 1].cols.end);
        WordBox { cols, chars }
    }
}

/// Checks that `children` are non-empty, sorted, disjoint and inside `parent`.
pub(crate) fn check_children(
    parent: Span,
    children: impl Iterator<Item = Span>,
) -> Result<(), String> {
    let mut prev_end = None;
    for child in children {
        if child.is_empty() {
            return Err(format!("empty interval [{}, {}]", child.start, child.end));
        }
        if !parent.contains_span(&child) {
            return Err(format!(
                "[{}, {}] escapes parent [{}, {}]",
                child.start, child.end, parent.start, parent.end
            ));
        }
        if let Some(end) = prev_end {
            if child.start <= end {
                return Err(format!(
                    "[{}, {}] overlaps or precedes its left neighbour ending at {}",
                    child.start, child.end, end
                ));
            }
        }
        prev_end = Some(child.end);
    }
    Ok(())
}

/// Read access to a nested line/word/char layout.
pub trait PageLayout {
    fn height(&self) -> usize;
    fn width(&self) -> usize;
    /// Lines in reading order as `(row span, words)`.
    fn line_boxes(&self) -> Vec<(Span, &[WordBox])>;
}
