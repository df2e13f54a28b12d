#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rlcseg::{synth_doc, BitImage, GroundTruth, LayoutSpec};

/// Random raster of the given size. Pixels follow a two-state Markov chain
/// along each row so that long runs and single-pixel runs both show up.
pub fn random_image(height: usize, width: usize, seed: u64) -> BitImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let density: f64 = rng.random_range(0.0..1.0);
    let stickiness: f64 = rng.random_range(0.0..0.95);
    let blank_row_p: f64 = rng.random_range(0.0..0.5);
    let mut img = BitImage::new(height, width).unwrap();
    for r in 1..=height {
        if rng.random_bool(blank_row_p) {
            continue;
        }
        let mut black = rng.random_bool(density);
        for c in 1..=width {
            if !rng.random_bool(stickiness) {
                black = rng.random_bool(density);
            }
            img.set(r, c, black);
        }
    }
    img
}

/// Brute-force column read straight from the raster.
pub fn pixel_column(
    img: &BitImage,
    rows: std::ops::RangeInclusive<usize>,
    col: usize,
) -> Vec<bool> {
    rows.map(|r| img.get(r, col)).collect()
}

pub struct CorpusPage {
    pub spec: LayoutSpec,
    pub image: BitImage,
    pub truth: GroundTruth,
}

pub const CHAR_GAPS: [usize; 2] = [1, 2];
pub const WORD_GAPS: [usize; 3] = [4, 6, 8];
pub const GLYPH_SIZES: std::ops::RangeInclusive<usize> = 3..=8;
pub const SEEDS_PER_CELL: u64 = 6;

/// Synthetic pages over char gap x word gap x glyph size, several seeds
/// per cell. Layout counts, jitter and perforation vary with the seed.
/// Every word holds at least two characters.
pub fn synthetic_corpus() -> Vec<CorpusPage> {
    let mut pages = Vec::new();
    for &char_gap in &CHAR_GAPS {
        for &word_gap in &WORD_GAPS {
            for glyph in GLYPH_SIZES {
                for k in 0..SEEDS_PER_CELL {
                    let seed = (char_gap as u64) * 1_000_000
                        + (word_gap as u64) * 10_000
                        + (glyph as u64) * 100
                        + k;
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let spec = LayoutSpec {
                        lines: rng.random_range(1..=4),
                        words_per_line: rng.random_range(1..=5),
                        chars_per_word: rng.random_range(2..=6),
                        glyph_width: glyph,
                        glyph_height: glyph + rng.random_range(0..=4),
                        glyph_width_jitter: rng.random_range(0..=2),
                        char_gap,
                        word_gap,
                        line_gap: rng.random_range(1..=6),
                        margin: rng.random_range(0..=5),
                        perforation: [0.0, 0.2, 0.5][(k % 3) as usize],
                        page: None,
                        seed,
                    };
                    let (image, truth) = synth_doc(&spec).unwrap();
                    pages.push(CorpusPage { spec, image, truth });
                }
            }
        }
    }
    pages
}
