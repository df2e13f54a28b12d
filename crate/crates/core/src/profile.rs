//! Projection profiles and virtual column extraction on run-length rows.
//!
//! The row profile is the sum of each row's black runs. Column information
//! is recovered by [`ColumnScanner`], which keeps a cursor on the leading
//! white/black run pair of every row in a band and pops one pixel per row
//! per step: from the white head while it is non-zero (emitting 0), else
//! from the black head (emitting 1). When both heads reach zero the cursor
//! moves on to the next pair. Each step therefore yields one image column
//! without ever expanding a row.

use serde::{Deserialize, Serialize};

use crate::cost::CostLedger;
use crate::error::{Error, Result};
use crate::layout::Span;
use crate::rle::RleDocument;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    /// One value per row: black pixels across the row.
    Row,
    /// One value per column: black pixels down the column within a band.
    Column,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileCurve {
    pub axis: Axis,
    pub values: Vec<u32>,
    pub addition_count: u64,
}

impl ProfileCurve {
    pub fn total(&self) -> u64 {
        self.values.iter().map(|&v| u64::from(v)).sum()
    }

    /// `index,value` lines with a header, indices 1-based.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,value\n");
        for (i, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{},{}\n", i + 1, v));
        }
        out
    }
}

/// Black-pixel count of every row, summed from black run entries only.
pub fn row_profile(doc: &RleDocument) -> ProfileCurve {
    let mut additions = 0u64;
    let values = doc
        .rows()
        .iter()
        .map(|row| {
            let mut sum = 0u32;
            for run in row.black_runs() {
                sum += run;
                additions += 1;
            }
            sum
        })
        .collect();
    ProfileCurve {
        axis: Axis::Row,
        values,
        addition_count: additions,
    }
}

/// One virtual column: the pixel of every band row at `column`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnTransitions {
    /// 1-based column index.
    pub column: usize,
    /// `true` = black, one entry per band row, top to bottom.
    pub bits: Vec<bool>,
}

impl ColumnTransitions {
    /// A column with no ink inside the band.
    pub fn is_space(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }
}

#[derive(Debug, Clone, Copy)]
struct RowCursor {
    /// Index of the next white entry to load.
    next: usize,
    white: u32,
    black: u32,
}

/// Stateful left-to-right column cursor over a band of rows.
#[derive(Debug, Clone)]
pub struct ColumnScanner<'a> {
    doc: &'a RleDocument,
    band: Span,
    cursors: Vec<RowCursor>,
    emitted: usize,
    ledger: CostLedger,
}

pub(crate) fn check_band(doc: &RleDocument, band: Span) -> Result<()> {
    if band.start == 0 || band.is_empty() || band.end > doc.height() {
        return Err(Error::Bounds {
            start: band.start,
            end: band.end,
            height: doc.height(),
        });
    }
    Ok(())
}

/// Creates a scanner positioned before column 1 over the rows of `band`.
pub fn new_scanner(doc: &RleDocument, band: Span) -> Result<ColumnScanner<'_>> {
    ColumnScanner::new(doc, band)
}

impl<'a> ColumnScanner<'a> {
    pub fn new(doc: &'a RleDocument, band: Span) -> Result<Self> {
        check_band(doc, band)?;
        let cursors = (band.start..=band.end)
            .map(|r| {
                let runs = doc.row(r).runs();
                RowCursor {
                    next: 2,
                    white: runs[0],
                    black: runs.get(1).copied().unwrap_or(0),
                }
            })
            .collect();
        Ok(ColumnScanner {
            doc,
            band,
            cursors,
            emitted: 0,
            ledger: CostLedger::default(),
        })
    }

    pub fn band(&self) -> Span {
        self.band
    }

    /// Columns emitted so far.
    pub fn emitted(&self) -> usize {
        self.emitted
    }

    pub fn is_exhausted(&self) -> bool {
        self.emitted == self.doc.width()
    }

    pub fn ledger(&self) -> CostLedger {
        self.ledger
    }

    #[inline]
    fn step(&mut self, mut emit: impl FnMut(bool)) -> Result<usize> {
        if self.is_exhausted() {
            return Err(Error::Exhausted {
                width: self.doc.width(),
            });
        }
        let rows = &self.doc.rows()[self.band.start - 1..self.band.end];
        let mut shifts = 0u64;
        for (cursor, row) in self.cursors.iter_mut().zip(rows) {
            if cursor.white == 0 && cursor.black == 0 {
                let runs = row.runs();
                cursor.white = runs[cursor.next];
                cursor.black = runs.get(cursor.next + 1).copied().unwrap_or(0);
                cursor.next += 2;
                shifts += 1;
            }
            if cursor.white > 0 {
                cursor.white -= 1;
                emit(false);
            } else {
                cursor.black -= 1;
                emit(true);
            }
        }
        self.emitted += 1;
        self.ledger.scanner_advances += 1;
        self.ledger.scanner_pops += self.cursors.len() as u64;
        self.ledger.run_shifts += shifts;
        Ok(self.emitted)
    }

    /// Emits the next column.
    pub fn advance(&mut self) -> Result<ColumnTransitions> {
        let mut bits = Vec::with_capacity(self.cursors.len());
        let column = self.step(|b| bits.push(b))?;
        Ok(ColumnTransitions { column, bits })
    }

    /// Emits the next column, returning only how many band rows are black.
    pub fn advance_count(&mut self) -> Result<u32> {
        let mut count = 0u32;
        self.step(|b| count += u32::from(b))?;
        Ok(count)
    }
}

/// Per-column black counts within `band`, built from `width` scanner steps.
///
/// `addition_count` counts black transitions accumulated into the curve.
pub fn column_profile(doc: &RleDocument, band: Span) -> Result<ProfileCurve> {
    let mut scanner = ColumnScanner::new(doc, band)?;
    let mut values = Vec::with_capacity(doc.width());
    let mut additions = 0u64;
    while !scanner.is_exhausted() {
        let count = scanner.advance_count()?;
        additions += u64::from(count);
        values.push(count);
    }
    Ok(ProfileCurve {
        axis: Axis::Column,
        values,
        addition_count: additions,
    })
}
