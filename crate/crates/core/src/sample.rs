//! A small two-glyph page used in docs, tests and the CLI smoke tests.

use crate::bitmap::BitImage;

/// 13 x 14 page: two glyphs separated by one blank column, a blank row
/// above and below.
pub const SAMPLE_PAGE_ROWS: [&str; 13] = [
    "00000000000000",
    "00110000111110",
    "01111000111110",
    "01111000111110",
    "01111000111110",
    "00110000000000",
    "10000000000000",
    "10000000000000",
    "00100001111100",
    "01110001111100",
    "01111001111100",
    "01111100000000",
    "00000000000000",
];

pub fn sample_page() -> BitImage {
    BitImage::from_rows(&SAMPLE_PAGE_ROWS).expect("sample rows are well formed")
}
