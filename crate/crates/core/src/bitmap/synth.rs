//! Synthetic text pages with exact ground truth.
//!
//! Every glyph is a rectangle whose border is always black, so each glyph
//! column and row holds ink and the ground-truth boxes are tight. Interior
//! pixels may be knocked out at random to give pages some texture.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{BitImage, GroundTruth, TruthLine};
use crate::error::{Error, Result};
use crate::layout::{CharBox, Span, WordBox};

/// Page layout parameters for [`synth_doc`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutSpec {
    pub lines: usize,
    pub words_per_line: usize,
    pub chars_per_word: usize,
    pub glyph_width: usize,
    pub glyph_height: usize,
    /// Each glyph is `glyph_width + k` wide with `k` uniform in `0..=jitter`.
    pub glyph_width_jitter: usize,
    pub char_gap: usize,
    pub word_gap: usize,
    pub line_gap: usize,
    pub margin: usize,
    /// Probability that an interior glyph pixel is white.
    pub perforation: f64,
    /// Fixed `(height, width)`; computed from the layout when `None`.
    pub page: Option<(usize, usize)>,
    pub seed: u64,
}

impl Default for LayoutSpec {
    fn default() -> Self {
        LayoutSpec {
            lines: 3,
            words_per_line: 4,
            chars_per_word: 5,
            glyph_width: 6,
            glyph_height: 9,
            glyph_width_jitter: 0,
            char_gap: 1,
            word_gap: 5,
            line_gap: 6,
            margin: 4,
            perforation: 0.0,
            page: None,
            seed: 0,
        }
    }
}

impl LayoutSpec {
    fn check(&self) -> Result<()> {
        let fail = |msg: &str| Err(Error::Dimension(msg.to_string()));
        if self.glyph_width == 0 || self.glyph_height == 0 {
            return fail("glyph width and height must be >= 1");
        }
        if self.words_per_line == 0 || self.chars_per_word == 0 {
            return fail("words per line and chars per word must be >= 1");
        }
        if self.char_gap == 0 || self.word_gap == 0 || self.line_gap == 0 {
            return fail("char, word and line gaps must be >= 1");
        }
        if self.char_gap >= self.word_gap {
            return fail("char gap must be strictly less than word gap");
        }
        if !(0.0..=1.0).contains(&self.perforation) {
            return fail("perforation must lie in [0, 1]");
        }
        Ok(())
    }
}

/// Renders a page from `spec` and returns it with its exact ground truth.
pub fn synth_doc(spec: &LayoutSpec) -> Result<(BitImage, GroundTruth)> {
    spec.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    // glyph widths per line, per word, per char
    let widths: Vec<Vec<Vec<usize>>> = (0..spec.lines)
        .map(|_| {
            (0..spec.words_per_line)
                .map(|_| {
                    (0..spec.chars_per_word)
                        .map(|_| spec.glyph_width + rng.random_range(0..=spec.glyph_width_jitter))
                        .collect()
                })
                .collect()
        })
        .collect();

    let line_width = |words: &[Vec<usize>]| -> usize {
        let glyphs: usize = words.iter().flatten().sum();
        let char_gaps: usize = words.iter().map(|w| w.len() - 1).sum();
        glyphs + char_gaps * spec.char_gap + (words.len() - 1) * spec.word_gap
    };
    let nominal = line_width(&vec![
        vec![spec.glyph_width; spec.chars_per_word];
        spec.words_per_line
    ]);
    let content_width = widths
        .iter()
        .map(|l| line_width(l))
        .max()
        .unwrap_or(nominal);
    let content_height = if spec.lines == 0 {
        0
    } else {
        spec.lines * spec.glyph_height + (spec.lines - 1) * spec.line_gap
    };
    let need_h = content_height + 2 * spec.margin;
    let need_w = content_width + 2 * spec.margin;
    let (height, width) = match spec.page {
        None => (need_h, need_w),
        Some((h, w)) => {
            if need_h > h {
                return Err(Error::Dimension(format!(
                    "layout needs {need_h} rows, page height is {h}"
                )));
            }
            if need_w > w {
                return Err(Error::Dimension(format!(
                    "layout needs {need_w} columns, page width is {w}"
                )));
            }
            (h, w)
        }
    };

    let mut img = BitImage::new(height, width)?;
    let mut truth = GroundTruth::empty(height, width);
    for (li, line) in widths.iter().enumerate() {
        let top = spec.margin + 1 + li * (spec.glyph_height + spec.line_gap);
        let rows = Span::new(top, top + spec.glyph_height - 1);
        let mut col = spec.margin + 1;
        let mut words = Vec::with_capacity(line.len());
        for (wi, word) in line.iter().enumerate() {
            if wi > 0 {
                col += spec.word_gap;
            }
            let mut chars = Vec::with_capacity(word.len());
            for (ci, &gw) in word.iter().enumerate() {
                if ci > 0 {
                    col += spec.char_gap;
                }
                let cols = Span::new(col, col + gw - 1);
                draw_glyph(&mut img, rows, cols, spec.perforation, &mut rng);
                chars.push(CharBox { cols });
                col += gw;
            }
            words.push(WordBox::from_chars(chars));
        }
        truth.lines.push(TruthLine { rows, words });
    }
    Ok((img, truth))
}

fn draw_glyph(img: &mut BitImage, rows: Span, cols: Span, perforation: f64, rng: &mut ChaCha8Rng) {
    for r in rows.start..=rows.end {
        for c in cols.start..=cols.end {
            let border = r == rows.start || r == rows.end || c == cols.start || c == cols.end;
            let black = border || perforation == 0.0 || !rng.random_bool(perforation);
            img.set(r, c, black);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> LayoutSpec {
        LayoutSpec {
            lines: 1,
            words_per_line: 1,
            chars_per_word: 1,
            glyph_width: 3,
            glyph_height: 3,
            glyph_width_jitter: 0,
            char_gap: 1,
            word_gap: 2,
            line_gap: 1,
            margin: 1,
            perforation: 0.0,
            page: None,
            seed: 0,
        }
    }

    #[test]
    fn single_glyph_page() {
        let (img, truth) = synth_doc(&tiny()).unwrap();
        assert_eq!(
            img,
            BitImage::from_rows(&["00000", "01110", "01110", "01110", "00000"]).unwrap()
        );
        assert_eq!(truth.lines.len(), 1);
        assert_eq!(truth.lines[0].rows, Span::new(2, 4));
        assert_eq!(truth.lines[0].words[0].cols, Span::new(2, 4));
        assert_eq!(truth.lines[0].words[0].chars[0].cols, Span::new(2, 4));
    }

    #[test]
    fn gaps_are_exact() {
        let spec = LayoutSpec {
            lines: 2,
            words_per_line: 2,
            chars_per_word: 2,
            char_gap: 1,
            word_gap: 4,
            ..tiny()
        };
        let (_, truth) = synth_doc(&spec).unwrap();
        truth.validate().unwrap();
        assert_eq!(truth.lines.len(), 2);
        let gap = truth.lines[1].rows.start - truth.lines[0].rows.end - 1;
        assert!(gap >= spec.line_gap);
        for line in &truth.lines {
            assert_eq!(line.words[1].cols.start - line.words[0].cols.end - 1, 4);
            for word in &line.words {
                assert_eq!(word.chars[1].cols.start - word.chars[0].cols.end - 1, 1);
            }
        }
    }

    #[test]
    fn zero_lines_gives_blank_page() {
        let (img, truth) = synth_doc(&LayoutSpec { lines: 0, ..tiny() }).unwrap();
        assert_eq!(img.black_count(), 0);
        assert!(truth.lines.is_empty());
        assert_eq!(img.width(), 5);
    }

    #[test]
    fn perforation_keeps_borders() {
        let spec = LayoutSpec {
            glyph_width: 7,
            glyph_height: 8,
            perforation: 0.9,
            seed: 3,
            ..tiny()
        };
        let (img, truth) = synth_doc(&spec).unwrap();
        let rows = truth.lines[0].rows;
        let cols = truth.lines[0].words[0].chars[0].cols;
        for r in rows.start..=rows.end {
            assert!(img.get(r, cols.start) && img.get(r, cols.end));
        }
        for c in cols.start..=cols.end {
            assert!(img.get(rows.start, c) && img.get(rows.end, c));
        }
        assert!(img.black_count() < 7 * 8);
    }

    #[test]
    fn deterministic_for_seed() {
        let spec = LayoutSpec {
            perforation: 0.3,
            glyph_width_jitter: 2,
            seed: 11,
            ..LayoutSpec::default()
        };
        assert_eq!(synth_doc(&spec).unwrap(), synth_doc(&spec).unwrap());
    }

    #[test]
    fn constraint_violations_name_the_problem() {
        let err = synth_doc(&LayoutSpec {
            word_gap: 1,
            ..tiny()
        })
        .unwrap_err();
        assert!(err.to_string().contains("char gap"));
        let err = synth_doc(&LayoutSpec {
            page: Some((5, 4)),
            ..tiny()
        })
        .unwrap_err();
        assert!(err.to_string().contains("columns"));
        assert!(synth_doc(&LayoutSpec {
            glyph_height: 0,
            ..tiny()
        })
        .is_err());
        assert!(synth_doc(&LayoutSpec {
            line_gap: 0,
            ..tiny()
        })
        .is_err());
    }
}
