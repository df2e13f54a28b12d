//! Page fixtures shared by the criterion benchmarks.

use rlcseg::{synth_doc, BitImage, GroundTruth, LayoutSpec};

/// A text-like page of roughly `lines` x `words` words.
pub fn text_page(lines: usize, words: usize, seed: u64) -> (BitImage, GroundTruth) {
    let spec = LayoutSpec {
        lines,
        words_per_line: words,
        chars_per_word: 5,
        glyph_width: 8,
        glyph_height: 14,
        glyph_width_jitter: 3,
        char_gap: 2,
        word_gap: 9,
        line_gap: 10,
        margin: 40,
        perforation: 0.25,
        page: None,
        seed,
    };
    synth_doc(&spec).expect("benchmark layout fits")
}
