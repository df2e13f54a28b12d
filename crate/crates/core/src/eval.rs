//! Pixel-domain reference segmentation, precision/recall scoring and cost
//! reporting.
//!
//! [`reference_segment`] re-derives lines and characters straight from the
//! raster (row sums, column ink tests) and shares only the threshold
//! estimator with the compressed path, so the two can be compared box for
//! box.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitmap::BitImage;
use crate::cost::CostLedger;
use crate::error::{Error, Result};
use crate::layout::{CharBox, PageLayout, Span, WordBox};
use crate::rle::RleDocument;
use crate::segment::{
    resolve_thresholds, ConfigEcho, SegmentConfig, SegmentationResult, SegmentedLine,
};

/// Segments `img` by looking at every pixel.
pub fn reference_segment(img: &BitImage, config: &SegmentConfig) -> Result<SegmentationResult> {
    let (m, n) = (img.height(), img.width());
    let mut cost = CostLedger::default();

    let sums: Vec<u32> = img
        .rows()
        .map(|row| row.iter().filter(|&&p| p).count() as u32)
        .collect();
    cost.pixel_reads += (m * n) as u64;

    // (start, end, gap_above) of every maximal run of rows above tau
    let mut bands = Vec::new();
    let mut prev_end = 0;
    let mut row = 1;
    while row <= m {
        if sums[row - 1] > config.tau {
            let start = row;
            while row <= m && sums[row - 1] > config.tau {
                row += 1;
            }
            bands.push((Span::new(start, row - 1), start - prev_end - 1));
            prev_end = row - 1;
        } else {
            row += 1;
        }
    }

    let mut line_chars = Vec::with_capacity(bands.len());
    let mut line_gaps = Vec::with_capacity(bands.len());
    for (band, _) in &bands {
        let inked: Vec<bool> = (1..=n)
            .map(|c| (band.start..=band.end).any(|r| img.get(r, c)))
            .collect();
        cost.pixel_reads += (n * band.len()) as u64;
        let mut chars = Vec::new();
        let mut c = 1;
        while c <= n {
            if inked[c - 1] {
                let start = c;
                while c <= n && inked[c - 1] {
                    c += 1;
                }
                chars.push(Span::new(start, c - 1));
            } else {
                c += 1;
            }
        }
        let gaps: Vec<usize> = chars
            .windows(2)
            .map(|w| w[1].start - w[0].end - 1)
            .collect();
        line_chars.push(chars);
        line_gaps.push(gaps);
    }

    let gap_refs: Vec<&[usize]> = line_gaps.iter().map(Vec::as_slice).collect();
    let thresholds = resolve_thresholds(config.threshold, &gap_refs)?;

    let lines = bands
        .iter()
        .zip(&line_chars)
        .zip(&thresholds)
        .map(|(((rows, gap_above), chars), t)| {
            let mut words: Vec<WordBox> = Vec::new();
            for (i, &cols) in chars.iter().enumerate() {
                let breaks = i == 0 || {
                    let gap = cols.start - chars[i - 1].end - 1;
                    gap >= t.threshold
                };
                if breaks {
                    words.push(WordBox {
                        cols,
                        chars: vec![],
                    });
                }
                let word = words.last_mut().expect("first char opens a word");
                word.cols.end = cols.end;
                word.chars.push(CharBox { cols });
            }
            SegmentedLine {
                rows: *rows,
                gap_above: *gap_above,
                words,
            }
        })
        .collect();

    Ok(SegmentationResult {
        height: m,
        width: n,
        lines,
        config: ConfigEcho {
            tau: config.tau,
            threshold: config.threshold,
            line_thresholds: thresholds,
        },
        cost,
    })
}

/// Precision, recall and F-measure in percent, with the raw counts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub true_positives: usize,
    pub false_positives: usize,
    pub false_negatives: usize,
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
}

/// Harmonic mean of two percentages; 0 when both are 0.
pub fn f_measure(precision: f64, recall: f64) -> f64 {
    if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    }
}

impl Metrics {
    /// An empty denominator scores 100 if nothing went wrong on the other
    /// side (nothing predicted, nothing missed), else 0.
    pub fn from_counts(tp: usize, fp: usize, fn_: usize) -> Self {
        let ratio = |den: usize, other_err: usize| {
            if den == 0 {
                if other_err == 0 {
                    100.0
                } else {
                    0.0
                }
            } else {
                100.0 * tp as f64 / den as f64
            }
        };
        let precision = ratio(tp + fp, fn_);
        let recall = ratio(tp + fn_, fp);
        Metrics {
            true_positives: tp,
            false_positives: fp,
            false_negatives: fn_,
            precision,
            recall,
            f_measure: f_measure(precision, recall),
        }
    }

    pub fn is_perfect(&self) -> bool {
        self.false_positives == 0 && self.false_negatives == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub lines: Metrics,
    pub words: Metrics,
    pub chars: Metrics,
}

impl Evaluation {
    pub fn levels(&self) -> [(&'static str, &Metrics); 3] {
        [
            ("Lines", &self.lines),
            ("Words", &self.words),
            ("Characters", &self.chars),
        ]
    }

    pub fn is_perfect(&self) -> bool {
        self.levels().iter().all(|(_, m)| m.is_perfect())
    }
}

impl fmt::Display for Evaluation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<12}{:>10}{:>15}{:>12}{:>12}",
            "Level", "Samples", "Precision(%)", "Recall(%)", "F-Measure"
        )?;
        for (name, m) in self.levels() {
            writeln!(
                f,
                "{:<12}{:>10}{:>15.2}{:>12.2}{:>12.2}",
                name,
                m.true_positives + m.false_negatives,
                m.precision,
                m.recall,
                m.f_measure
            )?;
        }
        Ok(())
    }
}

/// A box as (rows, cols); lines use the full page width for cols and
/// compare rows only.
type Rect = (Span, Span);

fn boxes<L: PageLayout + ?Sized>(layout: &L) -> [Vec<Rect>; 3] {
    let full = Span::new(1, layout.width());
    let mut lines = Vec::new();
    let mut words = Vec::new();
    let mut chars = Vec::new();
    for (rows, ws) in layout.line_boxes() {
        lines.push((rows, full));
        for w in ws {
            words.push((rows, w.cols));
            chars.extend(w.chars.iter().map(|c| (rows, c.cols)));
        }
    }
    [lines, words, chars]
}

/// Greedy one-to-one matching in reading order.
fn match_level(pred: &[Rect], truth: &[Rect], tol: usize) -> Metrics {
    let mut taken = vec![false; truth.len()];
    let mut tp = 0;
    // both lists are in reading order, so the search can start at the first
    // truth box that is still unmatched
    let mut first_free = 0;
    for p in pred {
        while first_free < truth.len() && taken[first_free] {
            first_free += 1;
        }
        let hit = (first_free..truth.len()).find(|&i| {
            !taken[i]
                && p.0.matches_within(&truth[i].0, tol)
                && p.1.matches_within(&truth[i].1, tol)
        });
        if let Some(i) = hit {
            taken[i] = true;
            tp += 1;
        }
    }
    Metrics::from_counts(tp, pred.len() - tp, truth.len() - tp)
}

/// Scores `pred` against `truth` at line, word and character level. Two
/// boxes match when every boundary differs by at most `tol` pixels.
pub fn evaluate<P, T>(pred: &P, truth: &T, tol: usize) -> Result<Evaluation>
where
    P: PageLayout + ?Sized,
    T: PageLayout + ?Sized,
{
    if (pred.height(), pred.width()) != (truth.height(), truth.width()) {
        return Err(Error::Input(format!(
            "page size mismatch: prediction {}x{}, truth {}x{}",
            pred.height(),
            pred.width(),
            truth.height(),
            truth.width()
        )));
    }
    let [pl, pw, pc] = boxes(pred);
    let [tl, tw, tc] = boxes(truth);
    Ok(Evaluation {
        lines: match_level(&pl, &tl, tol),
        words: match_level(&pw, &tw, tol),
        chars: match_level(&pc, &tc, tol),
    })
}

/// Compressed-path work against the `height x width` pixel baseline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostReport {
    pub height: usize,
    pub width: usize,
    pub run_entries: usize,
    pub profile_additions: u64,
    /// `height * ceil(width / 2)`: most black runs any page can have.
    pub profile_addition_bound: u64,
    pub scanner_advances: u64,
    pub scanner_pops: u64,
    pub pixel_reads: u64,
    /// Pixel operations of a naive row-sum over the raster.
    pub naive_pixel_ops: u64,
    /// `profile_additions / naive_pixel_ops` (0 for an empty page).
    pub profile_ratio: f64,
}

impl CostReport {
    pub const CSV_HEADER: &'static str = "height,width,run_entries,profile_additions,profile_addition_bound,scanner_advances,scanner_pops,pixel_reads,naive_pixel_ops,profile_ratio";

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{:.6}",
            self.height,
            self.width,
            self.run_entries,
            self.profile_additions,
            self.profile_addition_bound,
            self.scanner_advances,
            self.scanner_pops,
            self.pixel_reads,
            self.naive_pixel_ops,
            self.profile_ratio
        )
    }
}

pub fn cost_report(doc: &RleDocument, result: &SegmentationResult) -> CostReport {
    let naive = (doc.height() * doc.width()) as u64;
    let c = &result.cost;
    CostReport {
        height: doc.height(),
        width: doc.width(),
        run_entries: doc.run_entries(),
        profile_additions: c.profile_additions,
        profile_addition_bound: (doc.height() * doc.width().div_ceil(2)) as u64,
        scanner_advances: c.scanner_advances,
        scanner_pops: c.scanner_pops,
        pixel_reads: c.pixel_reads,
        naive_pixel_ops: naive,
        profile_ratio: if naive == 0 {
            0.0
        } else {
            c.profile_additions as f64 / naive as f64
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitmap::{GroundTruth, TruthLine};
    use crate::rle::compress;
    use crate::sample::sample_page;
    use crate::segment::{segment_document, ThresholdMode};

    #[test]
    fn f_measure_arithmetic() {
        assert!((f_measure(96.19, 100.0) - 98.06).abs() <= 0.01);
        assert!((f_measure(94.39, 88.68) - 91.45).abs() <= 0.01);
        assert_eq!(f_measure(0.0, 0.0), 0.0);
    }

    #[test]
    fn counts_to_metrics() {
        let m = Metrics::from_counts(3, 1, 2);
        assert_eq!(m.precision, 75.0);
        assert_eq!(m.recall, 60.0);
        assert!((m.f_measure - 2.0 * 75.0 * 60.0 / 135.0).abs() < 1e-12);
        let empty = Metrics::from_counts(0, 0, 0);
        assert_eq!(
            (empty.precision, empty.recall, empty.f_measure),
            (100.0, 100.0, 100.0)
        );
        let missed = Metrics::from_counts(0, 0, 4);
        assert_eq!(
            (missed.precision, missed.recall, missed.f_measure),
            (0.0, 0.0, 0.0)
        );
    }

    #[test]
    fn reference_matches_compressed_on_sample() {
        let img = sample_page();
        let config = SegmentConfig {
            tau: 0,
            threshold: ThresholdMode::Fixed(2),
        };
        let a = reference_segment(&img, &config).unwrap();
        let b = segment_document(&compress(&img), &config).unwrap();
        assert!(a.same_segmentation(&b));
        assert_eq!(a.cost.pixel_reads, 13 * 14 + 11 * 14);
        assert_eq!(b.cost.pixel_reads, 0);
    }

    #[test]
    fn reference_on_blank_page() {
        let img = BitImage::new(6, 9).unwrap();
        assert!(reference_segment(&img, &SegmentConfig::default())
            .unwrap()
            .lines
            .is_empty());
    }

    fn truth() -> GroundTruth {
        GroundTruth {
            height: 10,
            width: 20,
            lines: vec![TruthLine {
                rows: Span::new(2, 5),
                words: vec![
                    WordBox::from_chars(vec![
                        CharBox {
                            cols: Span::new(2, 4),
                        },
                        CharBox {
                            cols: Span::new(6, 8),
                        },
                    ]),
                    WordBox::from_chars(vec![CharBox {
                        cols: Span::new(12, 14),
                    }]),
                ],
            }],
        }
    }

    #[test]
    fn identity_scores_perfect() {
        for tol in [0, 1, 5] {
            let e = evaluate(&truth(), &truth(), tol).unwrap();
            assert!(e.is_perfect());
            for (_, m) in e.levels() {
                assert_eq!((m.precision, m.recall, m.f_measure), (100.0, 100.0, 100.0));
            }
        }
    }

    #[test]
    fn tolerance_and_misses() {
        let mut pred = truth();
        // shift the last char (and its word) by one column, merge the first word's chars
        pred.lines[0].words[1] = WordBox::from_chars(vec![CharBox {
            cols: Span::new(13, 15),
        }]);
        pred.lines[0].words[0] = WordBox::from_chars(vec![CharBox {
            cols: Span::new(2, 8),
        }]);
        let strict = evaluate(&pred, &truth(), 0).unwrap();
        assert!(strict.lines.is_perfect());
        assert_eq!(strict.words.true_positives, 1);
        assert_eq!(strict.chars.true_positives, 0);
        assert_eq!(strict.chars.false_positives, 2);
        assert_eq!(strict.chars.false_negatives, 3);
        let loose = evaluate(&pred, &truth(), 1).unwrap();
        assert_eq!(loose.words.true_positives, 2);
        assert_eq!(loose.chars.true_positives, 1);
    }

    #[test]
    fn matching_is_one_to_one() {
        let mut pred = truth();
        let dup = pred.lines[0].clone();
        pred.lines.push(dup);
        let e = evaluate(&pred, &truth(), 0).unwrap();
        assert_eq!(e.lines.true_positives, 1);
        assert_eq!(e.lines.false_positives, 1);
        assert_eq!(e.chars.false_positives, 3);
    }

    #[test]
    fn dimension_mismatch() {
        let mut other = truth();
        other.width = 21;
        assert!(matches!(
            evaluate(&other, &truth(), 0),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn cost_of_sample_and_blank() {
        let doc = compress(&sample_page());
        let r = segment_document(&doc, &SegmentConfig::default()).unwrap();
        let c = cost_report(&doc, &r);
        assert_eq!(c.naive_pixel_ops, 182);
        assert!(c.profile_additions <= 91);
        assert!(c.profile_ratio < 1.0);

        let blank = RleDocument::new(100, vec![vec![100]; 10]).unwrap();
        let r = segment_document(&blank, &SegmentConfig::default()).unwrap();
        let c = cost_report(&blank, &r);
        assert_eq!((c.profile_additions, c.naive_pixel_ops), (0, 1000));
    }

    #[test]
    fn checkerboard_hits_the_bound() {
        let (m, n) = (8, 10);
        let pixels = (0..m * n).map(|i| (i / n + i % n) % 2 == 1).collect();
        let img = BitImage::from_pixels(m, n, pixels).unwrap();
        let doc = compress(&img);
        let r = segment_document(&doc, &SegmentConfig::default()).unwrap();
        let c = cost_report(&doc, &r);
        assert_eq!(c.profile_additions, (m * n / 2) as u64);
        assert_eq!(c.profile_additions, c.profile_addition_bound);
        assert!(c.to_csv_row().split(',').count() == CostReport::CSV_HEADER.split(',').count());
    }

    #[test]
    fn table_layout() {
        let e = evaluate(&truth(), &truth(), 0).unwrap();
        let text = e.to_string();
        assert!(text.starts_with("Level"));
        assert!(text.contains("Characters"));
        assert_eq!(text.lines().count(), 4);
    }
}
