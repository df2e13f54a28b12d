//! Per-row run-length model of a binary page.
//!
//! Each row is a list of run lengths alternating white, black, white, ...
//! starting with white. A row that begins with ink has a leading white run
//! of length 0; that is the only place a zero may appear. Rows are ragged:
//! the trailing-zero padding of a rectangular run table only exists in
//! [`RleDocument::to_padded_matrix`].

use std::fmt::Write as _;

use crate::bitmap::BitImage;
use crate::error::{Error, Result};

/// One compressed row: alternating white/black run lengths.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RleRow {
    runs: Vec<u32>,
}

impl RleRow {
    /// Validates `runs` against `width`. `row` is only used for error reports.
    fn checked(runs: Vec<u32>, width: usize, row: usize) -> Result<Self> {
        let bad = |message: String| Error::Structural { row, message };
        if runs.is_empty() {
            return Err(bad("row has no runs".into()));
        }
        if let Some(pos) = runs.iter().skip(1).position(|&r| r == 0) {
            return Err(bad(format!("zero-length run at position {}", pos + 2)));
        }
        let sum: u64 = runs.iter().map(|&r| u64::from(r)).sum();
        if sum != width as u64 {
            return Err(bad(format!("runs sum to {sum}, width is {width}")));
        }
        Ok(RleRow { runs })
    }

    /// Encodes one row of pixels.
    pub fn encode(pixels: &[bool]) -> Self {
        let mut runs = Vec::new();
        let mut color = false;
        let mut len = 0u32;
        for &p in pixels {
            if p == color {
                len += 1;
            } else {
                runs.push(len);
                color = p;
                len = 1;
            }
        }
        runs.push(len);
        RleRow { runs }
    }

    pub fn runs(&self) -> &[u32] {
        &self.runs
    }

    /// White runs sit at even indices, black runs at odd indices.
    pub fn black_runs(&self) -> impl Iterator<Item = u32> + '_ {
        self.runs.iter().skip(1).step_by(2).copied()
    }

    pub fn white_runs(&self) -> impl Iterator<Item = u32> + '_ {
        self.runs.iter().step_by(2).copied()
    }

    pub fn is_blank(&self) -> bool {
        self.runs.len() == 1
    }

    pub fn decode_into(&self, out: &mut Vec<bool>) {
        for (i, &len) in self.runs.iter().enumerate() {
            out.extend(std::iter::repeat_n(i % 2 == 1, len as usize));
        }
    }
}

/// A page as `height` run-length rows of a common `width`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RleDocument {
    width: usize,
    rows: Vec<RleRow>,
}

impl RleDocument {
    /// Builds a document from raw run lists, checking every row.
    pub fn new(width: usize, rows: Vec<Vec<u32>>) -> Result<Self> {
        if width == 0 {
            return Err(Error::Input("document width must be positive".into()));
        }
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(i, runs)| RleRow::checked(runs, width, i + 1))
            .collect::<Result<_>>()?;
        Ok(RleDocument { width, rows })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[RleRow] {
        &self.rows
    }

    /// Row by 1-based index.
    pub fn row(&self, row: usize) -> &RleRow {
        &self.rows[row - 1]
    }

    /// Total number of run entries stored.
    pub fn run_entries(&self) -> usize {
        self.rows.iter().map(|r| r.runs.len()).sum()
    }

    /// Rows right-padded with zeros to the longest row, as run tables are
    /// usually printed.
    pub fn to_padded_matrix(&self) -> Vec<Vec<u32>> {
        let cols = self.rows.iter().map(|r| r.runs.len()).max().unwrap_or(0);
        self.rows
            .iter()
            .map(|r| {
                let mut v = r.runs.clone();
                v.resize(cols, 0);
                v
            })
            .collect()
    }

    /// Serializes to the RLC text format.
    pub fn to_rlc(&self) -> String {
        let mut out = format!("RLC1 {} {}\n", self.width, self.height());
        for row in &self.rows {
            for (i, r) in row.runs.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                write!(out, "{r}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// Parses the RLC text format: a `RLC1 <width> <height>` header line
    /// followed by one line of space-separated runs per row.
    pub fn from_rlc(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let err = |line: usize, message: String| Error::Rlc { line, message };
        let (_, header) = lines
            .next()
            .ok_or_else(|| err(1, "missing header".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let [magic, w, h] = fields[..] else {
            return Err(err(1, "header must be `RLC1 <width> <height>`".into()));
        };
        if magic != "RLC1" {
            return Err(err(1, format!("bad magic {magic:?}")));
        }
        let width: usize = w.parse().map_err(|_| err(1, format!("bad width {w:?}")))?;
        let height: usize = h.parse().map_err(|_| err(1, format!("bad height {h:?}")))?;
        if width == 0 {
            return Err(err(1, "width must be positive".into()));
        }
        let mut rows = Vec::with_capacity(height);
        for (idx, line) in lines {
            let lineno = idx + 1;
            if line.trim().is_empty() {
                if rows.len() == height {
                    continue;
                }
                return Err(err(lineno, "empty row".into()));
            }
            if rows.len() == height {
                return Err(err(lineno, format!("more than {height} rows")));
            }
            let runs = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| err(lineno, format!("bad run {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            let row = RleRow::checked(runs, width, rows.len() + 1).map_err(|e| match e {
                Error::Structural { message, .. } => err(lineno, message),
                other => other,
            })?;
            rows.push(row);
        }
        if rows.len() != height {
            return Err(err(
                text.lines().count() + 1,
                format!("expected {height} rows, found {}", rows.len()),
            ));
        }
        Ok(RleDocument { width, rows })
    }
}

/// Run-length encodes every row of `img`.
pub fn compress(img: &BitImage) -> RleDocument {
    RleDocument {
        width: img.width(),
        rows: img.rows().map(RleRow::encode).collect(),
    }
}

/// Expands a document back to pixels.
pub fn decompress(doc: &RleDocument) -> BitImage {
    let mut pixels = Vec::with_capacity(doc.width * doc.height());
    for row in &doc.rows {
        row.decode_into(&mut pixels);
    }
    BitImage::from_pixels(doc.height(), doc.width, pixels).expect("validated rows fill the width")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(bits: &str) -> Vec<u32> {
        let img = BitImage::from_rows(&[bits]).unwrap();
        compress(&img).rows[0].runs.clone()
    }

    #[test]
    fn encodes_rows() {
        assert_eq!(row("00110000111110"), vec![2, 2, 4, 5, 1]);
        assert_eq!(row("10000000000000"), vec![0, 1, 13]);
        assert_eq!(row("00000000000000"), vec![14]);
        assert_eq!(row("11"), vec![0, 2]);
    }

    #[test]
    fn decodes_rows() {
        let doc = RleDocument::new(14, vec![vec![2, 2, 4, 5, 1], vec![14]]).unwrap();
        assert_eq!(
            decompress(&doc),
            BitImage::from_rows(&["00110000111110", "00000000000000"]).unwrap()
        );
    }

    #[test]
    fn structural_errors_name_the_row() {
        match RleDocument::new(14, vec![vec![14], vec![2, 2, 4, 5]]) {
            Err(Error::Structural { row: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        match RleDocument::new(14, vec![vec![2, 0, 12]]) {
            Err(Error::Structural { row: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(RleDocument::new(3, vec![vec![]]).is_err());
        assert!(RleDocument::new(0, vec![]).is_err());
    }

    #[test]
    fn padded_matrix() {
        let doc = RleDocument::new(14, vec![vec![0, 1, 13], vec![14]]).unwrap();
        assert_eq!(doc.to_padded_matrix(), vec![vec![0, 1, 13], vec![14, 0, 0]]);
        let single = RleDocument::new(9, vec![vec![9]]).unwrap();
        assert_eq!(single.to_padded_matrix(), vec![vec![9]]);
    }

    #[test]
    fn rlc_text_roundtrip() {
        let doc =
            RleDocument::new(14, vec![vec![0, 1, 13], vec![14], vec![2, 2, 4, 5, 1]]).unwrap();
        let text = doc.to_rlc();
        assert_eq!(text, "RLC1 14 3\n0 1 13\n14\n2 2 4 5 1\n");
        assert_eq!(RleDocument::from_rlc(&text).unwrap(), doc);
    }

    #[test]
    fn rlc_errors_carry_line_numbers() {
        let cases: &[(&str, usize)] = &[
            ("", 1),
            ("RLC2 3 1\n3\n", 1),
            ("RLC1 3\n3\n", 1),
            ("RLC1 3 2\n3\n1 1\n", 3),
            ("RLC1 3 2\n3\n1 0 2\n", 3),
            ("RLC1 3 1\nx\n", 2),
            ("RLC1 3 1\n3\n3\n", 3),
            ("RLC1 3 2\n3\n", 3),
        ];
        for &(text, want) in cases {
            match RleDocument::from_rlc(text) {
                Err(Error::Rlc { line, .. }) => assert_eq!(line, want, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn empty_document() {
        let doc = RleDocument::from_rlc("RLC1 7 0\n").unwrap();
        assert_eq!(doc.height(), 0);
        assert_eq!(decompress(&doc).height(), 0);
        assert!(doc.to_padded_matrix().is_empty());
    }
}
