//! MSB-first bit packing.

#[derive(Default)]
pub(super) struct BitWriter {
    bytes: Vec<u8>,
    acc: u32,
    filled: u32,
    len: usize,
}

impl BitWriter {
    pub(super) fn with_capacity(bytes: usize) -> Self {
        BitWriter {
            bytes: Vec::with_capacity(bytes),
            ..Default::default()
        }
    }

    /// Appends the low `len` bits of `code`, most significant first.
    pub(super) fn put(&mut self, code: u32, len: u8) {
        debug_assert!(len <= 24);
        self.acc = (self.acc << len) | (code & ((1 << len) - 1));
        self.filled += u32::from(len);
        self.len += usize::from(len);
        while self.filled >= 8 {
            self.filled -= 8;
            self.bytes.push((self.acc >> self.filled) as u8);
        }
        self.acc &= (1 << self.filled) - 1;
    }

    pub(super) fn bit_len(&self) -> usize {
        self.len
    }

    /// Flushes, zero-padding the final partial byte.
    pub(super) fn finish(mut self) -> Vec<u8> {
        if self.filled > 0 {
            self.bytes.push((self.acc << (8 - self.filled)) as u8);
        }
        self.bytes
    }
}

pub(super) struct BitReader<'a> {
    bytes: &'a [u8],
    pos: usize,
    end: usize,
}

impl<'a> BitReader<'a> {
    pub(super) fn new(bytes: &'a [u8], bit_len: usize) -> Self {
        BitReader {
            bytes,
            pos: 0,
            end: bit_len.min(bytes.len() * 8),
        }
    }

    pub(super) fn pos(&self) -> usize {
        self.pos
    }

    pub(super) fn remaining(&self) -> usize {
        self.end - self.pos
    }

    pub(super) fn read_bit(&mut self) -> Option<bool> {
        if self.pos >= self.end {
            return None;
        }
        let bit = self.bytes[self.pos / 8] & (0x80 >> (self.pos % 8)) != 0;
        self.pos += 1;
        Some(bit)
    }

    /// The next `n` bits without consuming them, or `None` if fewer remain.
    pub(super) fn peek(&self, n: usize) -> Option<u32> {
        if self.remaining() < n {
            return None;
        }
        let mut v = 0u32;
        for i in self.pos..self.pos + n {
            v = (v << 1) | u32::from(self.bytes[i / 8] & (0x80 >> (i % 8)) != 0);
        }
        Some(v)
    }

    pub(super) fn skip(&mut self, n: usize) {
        self.pos = (self.pos + n).min(self.end);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn write_then_read() {
        let mut w = BitWriter::default();
        w.put(0b0111, 4);
        w.put(0b010, 3);
        w.put(0b000000000001, 12);
        assert_eq!(w.bit_len(), 19);
        let bytes = w.finish();
        assert_eq!(bytes, vec![0b0111_0100, 0b0000_0000, 0b0010_0000]);
        let mut r = BitReader::new(&bytes, 19);
        assert_eq!(r.peek(4), Some(0b0111));
        r.skip(4);
        assert_eq!(r.read_bit(), Some(false));
        assert_eq!(r.read_bit(), Some(true));
        assert_eq!(r.read_bit(), Some(false));
        assert_eq!(r.peek(12), Some(1));
        assert_eq!(r.peek(13), None);
        r.skip(12);
        assert_eq!(r.read_bit(), None);
    }
}
