//! The encoded-stream container. Layout, all integers big-endian:
//!
//! ```text
//! "DPFX"  magic, 4 bytes
//! 0x01    version
//! u64     number of encoded symbols
//! u32     alphabet size
//!         per symbol, canonical order: symbol id (u16), code length (u8)
//! u64     payload bit count
//!         payload, MSB-first, zero-padded to a byte boundary
//! ```

use crate::error::{Error, Result};
use crate::freq::Symbol;
use crate::tree::PrefixCode;

pub const MAGIC: &[u8; 4] = b"DPFX";
pub const VERSION: u8 = 0x01;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedContainer {
    /// Symbols encoded in the payload (decoding stops after this many).
    pub symbol_count: u64,
    /// `(symbol, length)` pairs in canonical order.
    pub alphabet: Vec<(Symbol, u32)>,
    pub payload_bits: u64,
    pub payload: Vec<u8>,
}

impl EncodedContainer {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(21 + 3 * self.alphabet.len() + self.payload.len());
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        out.extend_from_slice(&self.symbol_count.to_be_bytes());
        out.extend_from_slice(&(self.alphabet.len() as u32).to_be_bytes());
        for &(sym, len) in &self.alphabet {
            out.extend_from_slice(&sym.to_be_bytes());
            out.push(len as u8);
        }
        out.extend_from_slice(&self.payload_bits.to_be_bytes());
        out.extend_from_slice(&self.payload);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader { bytes, pos: 0 };
        if r.take(4)? != MAGIC {
            return Err(Error::CorruptContainer("bad magic"));
        }
        if r.take(1)?[0] != VERSION {
            return Err(Error::CorruptContainer("unsupported version"));
        }
        let symbol_count = u64::from_be_bytes(r.take(8)?.try_into().expect("8 bytes"));
        let alphabet_size = u32::from_be_bytes(r.take(4)?.try_into().expect("4 bytes"));
        if alphabet_size == 0 && symbol_count > 0 {
            return Err(Error::CorruptContainer("symbols without an alphabet"));
        }
        let mut alphabet = Vec::with_capacity(alphabet_size as usize);
        for _ in 0..alphabet_size {
            let sym = u16::from_be_bytes(r.take(2)?.try_into().expect("2 bytes"));
            let len = r.take(1)?[0];
            alphabet.push((sym, len as u32));
        }
        let payload_bits = u64::from_be_bytes(r.take(8)?.try_into().expect("8 bytes"));
        let payload = r.rest();
        if payload.len() as u64 != payload_bits.div_ceil(8) {
            return Err(Error::CorruptContainer("payload size mismatch"));
        }
        Ok(EncodedContainer {
            symbol_count,
            alphabet,
            payload_bits,
            payload: payload.to_vec(),
        })
    }

    /// Rebuilds the canonical code the container describes.
    pub fn code(&self) -> Result<PrefixCode> {
        if self.alphabet.is_empty() {
            return Err(Error::CorruptContainer("empty alphabet"));
        }
        PrefixCode::from_lengths(&self.alphabet)
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, count: usize) -> Result<&'a [u8]> {
        if self.pos + count > self.bytes.len() {
            return Err(Error::CorruptContainer("truncated"));
        }
        let out = &self.bytes[self.pos..self.pos + count];
        self.pos += count;
        Ok(out)
    }

    fn rest(&self) -> &'a [u8] {
        &self.bytes[self.pos..]
    }
}
