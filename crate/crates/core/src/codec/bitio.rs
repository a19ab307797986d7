//! MSB-first bit packing over byte buffers.

/// Accumulates bits most-significant-first.
pub struct BitWriter {
    buf: Vec<u8>,
    cur: u8,
    used: u32, // bits filled in `cur`
    total: u64,
}

impl BitWriter {
    pub fn new() -> Self {
        BitWriter { buf: Vec::new(), cur: 0, used: 0, total: 0 }
    }

    /// Writes the low `count` bits of `value`, MSB first.
    pub fn write_bits(&mut self, value: u64, count: u32) {
        debug_assert!(count <= 64);
        for k in (0..count).rev() {
            let bit = ((value >> k) & 1) as u8;
            self.cur |= bit << (7 - self.used);
            self.used += 1;
            self.total += 1;
            if self.used == 8 {
                self.buf.push(self.cur);
                self.cur = 0;
                self.used = 0;
            }
        }
    }

    /// Pads the last byte with zeros and returns (bytes, bit count).
    pub fn finish(mut self) -> (Vec<u8>, u64) {
        if self.used > 0 {
            self.buf.push(self.cur);
        }
        (self.buf, self.total)
    }
}

impl Default for BitWriter {
    fn default() -> Self {
        Self::new()
    }
}

/// Reads bits most-significant-first; reads past the end see zeros, which
/// is exactly how the padded tail of a container behaves.
pub struct BitReader<'a> {
    data: &'a [u8],
    pos: u64, // bit cursor
}

impl<'a> BitReader<'a> {
    pub fn new(data: &'a [u8]) -> Self {
        BitReader { data, pos: 0 }
    }

    /// Next `count` bits without consuming them, zero-padded past the end.
    pub fn peek_bits(&self, count: u32) -> u64 {
        debug_assert!(count <= 64);
        let mut out = 0u64;
        for k in 0..count as u64 {
            let bit_pos = self.pos + k;
            let byte = self.data.get((bit_pos / 8) as usize).copied().unwrap_or(0);
            let bit = (byte >> (7 - (bit_pos % 8))) & 1;
            out = (out << 1) | bit as u64;
        }
        out
    }

    pub fn consume(&mut self, count: u32) {
        self.pos += count as u64;
    }

    /// Bits consumed so far.
    pub fn position(&self) -> u64 {
        self.pos
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_msb_first() {
        let mut w = BitWriter::new();
        w.write_bits(0b101, 3);
        w.write_bits(0b1, 1);
        w.write_bits(0b0110, 4);
        let (bytes, bits) = w.finish();
        assert_eq!(bits, 8);
        assert_eq!(bytes, vec![0b1011_0110]);
    }

    #[test]
    fn pads_with_zeros() {
        let mut w = BitWriter::new();
        w.write_bits(0b11, 2);
        let (bytes, bits) = w.finish();
        assert_eq!(bits, 2);
        assert_eq!(bytes, vec![0b1100_0000]);
    }

    #[test]
    fn peek_and_consume() {
        let data = [0b1011_0110, 0b1000_0000];
        let mut r = BitReader::new(&data);
        assert_eq!(r.peek_bits(3), 0b101);
        r.consume(3);
        assert_eq!(r.peek_bits(6), 0b101101);
        r.consume(6);
        assert_eq!(r.position(), 9);
        // past the end reads zeros
        assert_eq!(r.peek_bits(10), 0);
    }
}
