//! Binary rasters, PBM I/O and synthetic ground-truthed pages.

mod pbm;
mod synth;
mod truth;

pub use pbm::{load_pbm, save_pbm};
pub use synth::{synth_doc, LayoutSpec};
pub use truth::{GroundTruth, TruthLine};

use crate::error::{Error, Result};

/// A binary raster. `true` (1) is black ink, `false` (0) is background.
///
/// Pixels are addressed 1-based as `(row, col)`; storage is row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct BitImage {
    height: usize,
    width: usize,
    pixels: Vec<bool>,
}

impl BitImage {
    /// An all-white image. `width` must be positive; a zero height is allowed
    /// for the degenerate empty page.
    pub fn new(height: usize, width: usize) -> Result<Self> {
        if width == 0 {
            return Err(Error::Input("image width must be positive".into()));
        }
        Ok(BitImage {
            height,
            width,
            pixels: vec![false; height * width],
        })
    }

    pub fn from_pixels(height: usize, width: usize, pixels: Vec<bool>) -> Result<Self> {
        if width == 0 {
            return Err(Error::Input("image width must be positive".into()));
        }
        if pixels.len() != height * width {
            return Err(Error::Input(format!(
                "{} pixels given for a {}x{} image",
                pixels.len(),
                height,
                width
            )));
        }
        Ok(BitImage {
            height,
            width,
            pixels,
        })
    }

    /// Parses rows of `'0'`/`'1'` characters.
    pub fn from_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let width = rows.first().map_or(0, |r| r.as_ref().len());
        let mut pixels = Vec::with_capacity(width * rows.len());
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != width {
                return Err(Error::Input(format!(
                    "row {} has {} pixels, expected {}",
                    i + 1,
                    row.len(),
                    width
                )));
            }
            for c in row.chars() {
                pixels.push(match c {
                    '0' => false,
                    '1' => true,
                    other => return Err(Error::Input(format!("bad pixel character {other:?}"))),
                });
            }
        }
        Self::from_pixels(rows.len(), width, pixels)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Pixel at 1-based `(row, col)`.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        debug_assert!(row >= 1 && row <= self.height && col >= 1 && col <= self.width);
        self.pixels[(row - 1) * self.width + (col - 1)]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, black: bool) {
        let w = self.width;
        self.pixels[(row - 1) * w + (col - 1)] = black;
    }

    /// Row `row` (1-based) as a slice.
    pub fn row(&self, row: usize) -> &[bool] {
        let start = (row - 1) * self.width;
        &self.pixels[start..start + self.width]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[bool]> {
        self.pixels.chunks_exact(self.width)
    }

    pub fn pixels(&self) -> &[bool] {
        &self.pixels
    }

    pub fn black_count(&self) -> usize {
        self.pixels.iter().filter(|&&p| p).count()
    }
}

impl std::fmt::Debug for BitImage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitImage {}x{}", self.height, self.width)?;
        for row in self.rows() {
            let line: String = row.iter().map(|&b| if b { '1' } else { '0' }).collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_rows_and_get() {
        let img = BitImage::from_rows(&["01", "10"]).unwrap();
        assert_eq!((img.height(), img.width()), (2, 2));
        assert!(!img.get(1, 1));
        assert!(img.get(1, 2));
        assert!(img.get(2, 1));
        assert_eq!(img.black_count(), 2);
    }

    #[test]
    fn rejects_ragged_rows_and_zero_width() {
        assert!(BitImage::from_rows(&["01", "1"]).is_err());
        assert!(BitImage::new(3, 0).is_err());
        assert!(BitImage::from_pixels(2, 2, vec![false; 3]).is_err());
    }
}
