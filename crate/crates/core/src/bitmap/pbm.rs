//! Netpbm bitmap (PBM) reading and writing, plain (P1) and raw (P4).
//!
//! PBM's own convention (1 = black) matches [`BitImage`], so no inversion
//! happens in either direction. Raw rows are packed most-significant bit
//! first and padded to a whole byte.

use super::BitImage;
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Variant {
    Plain,
    Raw,
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Format {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.data.get(self.pos).copied()
    }

    /// Skips whitespace and `#` comments running to end of line.
    fn skip_separators(&mut self) {
        while let Some(b) = self.peek() {
            if b == b'#' {
                while let Some(c) = self.peek() {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        self.skip_separators();
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err(format!("expected {what}")));
        }
        std::str::from_utf8(&self.data[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Format {
                offset: start,
                message: format!("{what} out of range"),
            })
    }
}

/// Decodes a P1 or P4 stream. Comments are accepted anywhere whitespace is.
pub fn load_pbm(bytes: &[u8]) -> Result<BitImage> {
    let mut cur = Cursor {
        data: bytes,
        pos: 0,
    };
    let variant = match bytes.get(..2) {
        Some(b"P1") => Variant::Plain,
        Some(b"P4") => Variant::Raw,
        _ => return Err(cur.err("magic must be P1 or P4")),
    };
    cur.pos = 2;
    if !matches!(cur.peek(), Some(b) if b.is_ascii_whitespace() || b == b'#') {
        return Err(cur.err("expected whitespace after magic"));
    }
    let width = cur.number("width")?;
    let height = cur.number("height")?;
    if width == 0 {
        return Err(cur.err("width must be positive"));
    }
    let total = width
        .checked_mul(height)
        .ok_or_else(|| cur.err("image dimensions overflow"))?;

    let mut pixels = Vec::with_capacity(total);
    match variant {
        Variant::Plain => {
            while pixels.len() < total {
                cur.skip_separators();
                match cur.peek() {
                    Some(b'0') => pixels.push(false),
                    Some(b'1') => pixels.push(true),
                    Some(_) => return Err(cur.err("expected pixel value 0 or 1")),
                    None => {
                        return Err(Error::Truncated {
                            expected: total,
                            found: pixels.len(),
                            unit: "pixels",
                        })
                    }
                }
                cur.pos += 1;
            }
        }
        Variant::Raw => {
            // exactly one whitespace byte separates the header from the raster
            match cur.peek() {
                Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
                Some(_) => return Err(cur.err("expected single whitespace before raster")),
                None if total == 0 => {}
                None => {
                    return Err(Error::Truncated {
                        expected: width.div_ceil(8) * height,
                        found: 0,
                        unit: "bytes",
                    })
                }
            }
            let stride = width.div_ceil(8);
            let needed = stride * height;
            let raster = &bytes[cur.pos..];
            if raster.len() < needed {
                return Err(Error::Truncated {
                    expected: needed,
                    found: raster.len(),
                    unit: "bytes",
                });
            }
            for row in raster[..needed].chunks_exact(stride.max(1)).take(height) {
                for col in 0..width {
                    pixels.push(row[col / 8] & (0x80 >> (col % 8)) != 0);
                }
            }
        }
    }
    BitImage::from_pixels(height, width, pixels)
}

/// Encodes `img` as P1 (`ascii = true`) or P4.
///
/// P1 output writes one text line per image row with space-separated pixels.
pub fn save_pbm(img: &BitImage, ascii: bool) -> Vec<u8> {
    let mut out = Vec::new();
    let magic = if ascii { "P1" } else { "P4" };
    out.extend_from_slice(format!("{magic}\n{} {}\n", img.width(), img.height()).as_bytes());
    if ascii {
        for row in img.rows() {
            for (i, &p) in row.iter().enumerate() {
                if i > 0 {
                    out.push(b' ');
                }
                out.push(if p { b'1' } else { b'0' });
            }
            out.push(b'\n');
        }
    } else {
        let stride = img.width().div_ceil(8);
        for row in img.rows() {
            let mut packed = vec![0u8; stride];
            for (col, &p) in row.iter().enumerate() {
                if p {
                    packed[col / 8] |= 0x80 >> (col % 8);
                }
            }
            out.extend_from_slice(&packed);
        }
    }
    out
}
