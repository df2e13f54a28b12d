use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::layout::{check_children, PageLayout, Span, WordBox};

/// Reference line/word/char boxes for a page.
///
/// The JSON form is also a subset of segmentation output, so a saved
/// segmentation result can be read back as a `GroundTruth`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub height: usize,
    pub width: usize,
    pub lines: Vec<TruthLine>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruthLine {
    pub rows: Span,
    pub words: Vec<WordBox>,
}

impl GroundTruth {
    pub fn empty(height: usize, width: usize) -> Self {
        GroundTruth {
            height,
            width,
            lines: Vec::new(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let truth: GroundTruth = serde_json::from_str(text)?;
        truth.validate()?;
        Ok(truth)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ground truth serializes")
    }

    /// Checks bounds, ordering, disjointness and containment at every level.
    pub fn validate(&self) -> Result<()> {
        let bad = |what: String| Error::Input(format!("ground truth: {what}"));
        let page_rows = Span::new(1, self.height);
        let page_cols = Span::new(1, self.width);
        check_children(page_rows, self.lines.iter().map(|l| l.rows))
            .map_err(|e| bad(format!("lines: {e}")))?;
        for (i, line) in self.lines.iter().enumerate() {
            check_children(page_cols, line.words.iter().map(|w| w.cols))
                .map_err(|e| bad(format!("line {}: {e}", i + 1)))?;
            for (j, word) in line.words.iter().enumerate() {
                check_children(word.cols, word.chars.iter().map(|c| c.cols))
                    .map_err(|e| bad(format!("line {} word {}: {e}", i + 1, j + 1)))?;
            }
        }
        Ok(())
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
}

impl PageLayout for GroundTruth {
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
