//! CCITT Group 3 one-dimensional (Modified Huffman) coding of run-length rows.
//!
//! Decoding stops at run lengths: [`mh_decode`] produces an [`RleDocument`]
//! directly and never allocates a pixel buffer.
//!
//! Container layout (`.mh` files), bit-exact:
//!
//! ```text
//! "MH1D" | width: u32 BE | height: u32 BE | bitstream
//! bitstream = ( EOL row-codes )* EOL, zero-padded to a byte
//! ```
//!
//! Each row starts with a white code (white 0 when the row starts black),
//! then alternates colors. Runs of 64 or more are a makeup code followed by
//! a terminating code; runs above 2623 repeat the 2560 makeup first. There
//! are no fill bits and no byte alignment between rows.

mod bits;
mod tables;

use std::sync::OnceLock;

use bits::{BitReader, BitWriter};

use crate::error::{Error, Result};
use crate::rle::RleDocument;

pub const MAGIC: &[u8; 4] = b"MH1D";
pub const HEADER_LEN: usize = 12;
const MAX_MAKEUP: u32 = 2560;
const EOL_LEN: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    White,
    Black,
}

impl Color {
    fn flip(self) -> Self {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }
}

/// A single prefix codeword.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Codeword {
    pub bits: u32,
    pub len: u8,
}

impl Codeword {
    fn parse(s: &str) -> Self {
        Codeword {
            bits: u32::from_str_radix(s, 2).expect("table entries are binary"),
            len: s.len() as u8,
        }
    }

    /// True if `self` is a prefix of `other` (or equal to it).
    pub fn is_prefix_of(&self, other: &Codeword) -> bool {
        self.len <= other.len && other.bits >> (other.len - self.len) == self.bits
    }
}

impl std::fmt::Display for Codeword {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:0width$b}", self.bits, width = usize::from(self.len))
    }
}

#[derive(Clone, Copy)]
enum Symbol {
    Terminating(u32),
    Makeup(u32),
}

#[derive(Clone, Copy, Default)]
struct Node {
    child: [u16; 2],
    symbol: Option<Symbol>,
}

/// Code alphabet for one color: terminating, makeup and extended makeup
/// codes, plus the EOL codeword.
pub struct MhCodeTable {
    color: Color,
    terminating: [Codeword; 64],
    makeup: Vec<Codeword>,
    trie: Vec<Node>,
}

impl MhCodeTable {
    pub fn get(color: Color) -> &'static MhCodeTable {
        static WHITE: OnceLock<MhCodeTable> = OnceLock::new();
        static BLACK: OnceLock<MhCodeTable> = OnceLock::new();
        match color {
            Color::White => WHITE.get_or_init(|| Self::build(Color::White)),
            Color::Black => BLACK.get_or_init(|| Self::build(Color::Black)),
        }
    }

    fn build(color: Color) -> Self {
        let (term, makeup) = match color {
            Color::White => (&tables::WHITE_TERMINATING, &tables::WHITE_MAKEUP),
            Color::Black => (&tables::BLACK_TERMINATING, &tables::BLACK_MAKEUP),
        };
        let terminating = term.map(Codeword::parse);
        let makeup: Vec<Codeword> = makeup
            .iter()
            .chain(tables::EXTENDED_MAKEUP.iter())
            .map(|s| Codeword::parse(s))
            .collect();
        let mut table = MhCodeTable {
            color,
            terminating,
            makeup,
            trie: vec![Node::default()],
        };
        for run in 0..64 {
            table.insert(table.terminating[run as usize], Symbol::Terminating(run));
        }
        for i in 0..table.makeup.len() {
            table.insert(table.makeup[i], Symbol::Makeup(64 * (i as u32 + 1)));
        }
        table
    }

    fn insert(&mut self, code: Codeword, symbol: Symbol) {
        let mut node = 0usize;
        for i in (0..code.len).rev() {
            let bit = ((code.bits >> i) & 1) as usize;
            if self.trie[node].child[bit] == 0 {
                self.trie.push(Node::default());
                self.trie[node].child[bit] = (self.trie.len() - 1) as u16;
            }
            node = usize::from(self.trie[node].child[bit]);
        }
        debug_assert!(self.trie[node].symbol.is_none());
        self.trie[node].symbol = Some(symbol);
    }

    pub fn color(&self) -> Color {
        self.color
    }

    /// Terminating code for a run of `0..=63` pixels.
    pub fn terminating(&self, run: u32) -> Codeword {
        self.terminating[run as usize]
    }

    /// Makeup code for `run`, a positive multiple of 64 up to 2560.
    pub fn makeup(&self, run: u32) -> Codeword {
        debug_assert!(run.is_multiple_of(64) && (64..=MAX_MAKEUP).contains(&run));
        self.makeup[(run / 64 - 1) as usize]
    }

    pub fn eol() -> Codeword {
        Codeword::parse(tables::EOL)
    }

    /// Every codeword of the alphabet with the run length it stands for
    /// (`None` for EOL).
    pub fn codewords(&self) -> Vec<(Option<u32>, Codeword)> {
        let mut all: Vec<_> = (0..64).map(|r| (Some(r), self.terminating(r))).collect();
        all.extend(
            self.makeup
                .iter()
                .enumerate()
                .map(|(i, &c)| (Some(64 * (i as u32 + 1)), c)),
        );
        all.push((None, Self::eol()));
        all
    }

    /// Codewords that together encode a run of `run` pixels.
    pub fn encode_run(&self, mut run: u32) -> Vec<Codeword> {
        let mut out = Vec::with_capacity(2);
        while run > MAX_MAKEUP + 63 {
            out.push(self.makeup(MAX_MAKEUP));
            run -= MAX_MAKEUP;
        }
        if run >= 64 {
            out.push(self.makeup(run / 64 * 64));
            run %= 64;
        }
        out.push(self.terminating(run));
        out
    }

    /// Reads one codeword. `None` if the bits match no codeword or run out.
    fn read_symbol(&self, reader: &mut BitReader) -> Option<Symbol> {
        let mut node = 0usize;
        loop {
            let bit = reader.read_bit()? as usize;
            node = usize::from(self.trie[node].child[bit]);
            if node == 0 {
                return None;
            }
            if let Some(sym) = self.trie[node].symbol {
                return Some(sym);
            }
        }
    }
}

/// A container header plus the coded bitstream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MhBitstream {
    pub width: u32,
    pub height: u32,
    /// Packed bitstream following the header.
    pub body: Vec<u8>,
    /// Number of meaningful bits in `body`; the rest is zero padding.
    pub bit_len: usize,
}

impl MhBitstream {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + self.body.len());
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&self.width.to_be_bytes());
        out.extend_from_slice(&self.height.to_be_bytes());
        out.extend_from_slice(&self.body);
        out
    }

    /// Splits a `.mh` file into header fields and body. The bit length is
    /// taken to be the whole body; the decoder stops at the final EOL.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < HEADER_LEN {
            return Err(Error::Header(format!(
                "need {HEADER_LEN} header bytes, found {}",
                bytes.len()
            )));
        }
        if &bytes[..4] != MAGIC {
            return Err(Error::Header("magic is not MH1D".into()));
        }
        let width = u32::from_be_bytes(bytes[4..8].try_into().unwrap());
        let height = u32::from_be_bytes(bytes[8..12].try_into().unwrap());
        if width == 0 {
            return Err(Error::Header("width must be positive".into()));
        }
        let body = bytes[HEADER_LEN..].to_vec();
        let bit_len = body.len() * 8;
        Ok(MhBitstream {
            width,
            height,
            body,
            bit_len,
        })
    }
}

/// Statistics gathered while decoding.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DecodeStats {
    pub codewords: usize,
    pub bits_read: usize,
}

/// Encodes `doc` row by row.
pub fn mh_encode(doc: &RleDocument) -> MhBitstream {
    let white = MhCodeTable::get(Color::White);
    let black = MhCodeTable::get(Color::Black);
    let eol = MhCodeTable::eol();
    let mut w = BitWriter::with_capacity(doc.run_entries() + 2 * doc.height() + 2);
    for row in doc.rows() {
        w.put(eol.bits, eol.len);
        for (i, &run) in row.runs().iter().enumerate() {
            let table = if i % 2 == 0 { white } else { black };
            for code in table.encode_run(run) {
                w.put(code.bits, code.len);
            }
        }
    }
    w.put(eol.bits, eol.len);
    let bit_len = w.bit_len();
    MhBitstream {
        width: doc.width() as u32,
        height: doc.height() as u32,
        body: w.finish(),
        bit_len,
    }
}

pub fn mh_decode(stream: &MhBitstream) -> Result<RleDocument> {
    mh_decode_with_stats(stream).map(|(doc, _)| doc)
}

/// Decodes a stream to run lengths, reporting how much of it was consumed.
///
/// Bit offsets in errors count from the start of the container, header
/// included.
pub fn mh_decode_with_stats(stream: &MhBitstream) -> Result<(RleDocument, DecodeStats)> {
    let header_bits = HEADER_LEN * 8;
    let width = stream.width as usize;
    let height = stream.height as usize;
    let mut reader = BitReader::new(&stream.body, stream.bit_len);
    let mut stats = DecodeStats::default();
    let at = |r: &BitReader| header_bits + r.pos();

    if height == 0 && reader.peek(EOL_LEN).is_none() {
        return RleDocument::new(width, Vec::new()).map(|d| (d, stats));
    }

    let expect_eol = |reader: &mut BitReader, what: &str| -> Result<()> {
        if reader.peek(EOL_LEN) == Some(1) {
            reader.skip(EOL_LEN);
            Ok(())
        } else {
            Err(Error::Framing {
                bit_offset: at(reader),
                message: format!("missing EOL {what}"),
            })
        }
    };

    let mut rows = Vec::with_capacity(height);
    for row in 1..=height {
        expect_eol(&mut reader, &format!("before row {row}"))?;
        stats.codewords += 1;
        let mut runs = Vec::new();
        let mut sum = 0usize;
        let mut color = Color::White;
        while sum < width {
            let table = MhCodeTable::get(color);
            let mut run = 0u32;
            loop {
                let start = reader.pos();
                match table.read_symbol(&mut reader) {
                    Some(Symbol::Makeup(n)) => {
                        stats.codewords += 1;
                        run += n;
                    }
                    Some(Symbol::Terminating(n)) => {
                        stats.codewords += 1;
                        run += n;
                        break;
                    }
                    None => {
                        let mut probe = BitReader::new(&stream.body, stream.bit_len);
                        probe.skip(start);
                        return Err(if probe.peek(EOL_LEN) == Some(1) {
                            Error::RowLength {
                                row,
                                expected: width,
                                found: sum,
                            }
                        } else if probe.remaining() < EOL_LEN {
                            Error::Framing {
                                bit_offset: header_bits + start,
                                message: format!("stream ends inside row {row}"),
                            }
                        } else {
                            Error::Codeword {
                                bit_offset: header_bits + start,
                            }
                        });
                    }
                }
            }
            sum += run as usize;
            if sum > width {
                return Err(Error::RowLength {
                    row,
                    expected: width,
                    found: sum,
                });
            }
            runs.push(run);
            color = color.flip();
        }
        rows.push(runs);
    }
    expect_eol(&mut reader, "after the last row")?;
    stats.codewords += 1;
    stats.bits_read = reader.pos();
    let doc = RleDocument::new(width, rows)?;
    Ok((doc, stats))
}
