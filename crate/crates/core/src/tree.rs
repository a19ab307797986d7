//! Materializes a canonical prefix code from a tree shape: within each
//! level the leaves take the numerically smallest codes and the higher
//! frequencies take the shallower leaves.

use crate::error::{Error, Result};
use crate::freq::{FrequencyTable, Symbol};
use crate::shape::TreeShape;

/// One codeword: `bits` holds the code MSB-aligned to `len` bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeEntry {
    pub symbol: Symbol,
    pub bits: u64,
    pub len: u32,
}

/// A complete prefix code in canonical form: entries sorted by
/// `(len, bits)` are consecutive integers within each length, so the code
/// is reconstructible from the `(symbol, len)` pairs alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixCode {
    /// Entries in canonical `(len, bits)` order.
    entries: Vec<CodeEntry>,
    /// Canonical index of each position in the ingested symbol sequence;
    /// empty when the code was rebuilt from lengths alone.
    original: Vec<usize>,
    height: u32,
}

impl PrefixCode {
    /// Builds the canonical code for `shape`, assigning sorted
    /// frequencies highest-first to the shallowest leaves. Frequency ties
    /// keep the ingested symbol order.
    pub fn from_shape(ft: &FrequencyTable, shape: &TreeShape) -> Result<Self> {
        let n = ft.len();
        if shape.n() != n {
            return Err(Error::InvalidShape);
        }
        if n == 1 {
            // a lone symbol still needs one addressable bit
            return Ok(PrefixCode {
                entries: vec![CodeEntry { symbol: ft.symbols_by_rank()[0], bits: 0, len: 1 }],
                original: vec![0],
                height: 1,
            });
        }
        let height = shape.height();
        if height > 64 {
            return Err(Error::CodeTooDeep { height });
        }

        // shallow-first assignment order: frequency descending, ties by
        // ingested position ascending
        let mut by_depth: Vec<usize> = (0..n).collect();
        by_depth.sort_by_key(|&rank| {
            (std::cmp::Reverse(ft.freqs()[rank]), ft.original_index(rank))
        });

        let leaves = shape.leaves_per_level();
        let mut entries = Vec::with_capacity(n);
        let mut original = vec![0usize; n];
        let mut idx = 0usize;
        let mut first_value = 0u64; // smallest code value on this level
        for (lvl, &count) in leaves.iter().enumerate() {
            for k in 0..count as u64 {
                let rank = by_depth[idx];
                entries.push(CodeEntry {
                    symbol: ft.symbols_by_rank()[rank],
                    bits: first_value + k,
                    len: lvl as u32,
                });
                original[ft.original_index(rank)] = idx;
                idx += 1;
            }
            // internal nodes extend the remaining values of this level
            if lvl < height as usize {
                first_value = (first_value + count as u64) << 1;
            }
        }

        Ok(PrefixCode { entries, original, height })
    }

    /// Rebuilds the canonical code from `(symbol, len)` pairs in canonical
    /// order, the form stored in containers and codebook files.
    pub fn from_lengths(pairs: &[(Symbol, u32)]) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::EmptyInput);
        }
        if pairs.len() == 1 {
            if pairs[0].1 != 1 {
                return Err(Error::CorruptContainer("single-symbol code must use length 1"));
            }
            return Ok(PrefixCode {
                entries: vec![CodeEntry { symbol: pairs[0].0, bits: 0, len: 1 }],
                original: Vec::new(),
                height: 1,
            });
        }
        let mut entries = Vec::with_capacity(pairs.len());
        let mut kraft = 0u128; // in units of 2^-64
        let mut code = 0u64;
        let mut prev_len = 0u32;
        for &(symbol, len) in pairs {
            if len == 0 || len > 64 {
                return Err(Error::CorruptContainer("code length out of range"));
            }
            if len < prev_len {
                return Err(Error::CorruptContainer("lengths not in canonical order"));
            }
            // an in-budget prefix sum also keeps the shift below from
            // overflowing: the next code value always fits `len` bits
            kraft += 1u128 << (64 - len);
            if kraft > 1u128 << 64 {
                return Err(Error::CorruptContainer("code overfull"));
            }
            if prev_len > 0 {
                code = (code + 1) << (len - prev_len);
            }
            prev_len = len;
            entries.push(CodeEntry { symbol, bits: code, len });
        }
        if kraft != 1u128 << 64 {
            return Err(Error::CorruptContainer("lengths do not form a complete code"));
        }
        let height = prev_len;
        Ok(PrefixCode { entries, original: Vec::new(), height })
    }

    /// Entries in canonical `(len, bits)` order.
    pub fn entries(&self) -> &[CodeEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false // at least one symbol by construction
    }

    /// Maximum codeword length.
    pub fn height(&self) -> u32 {
        self.height
    }

    /// The entry for `symbol`, if present.
    pub fn lookup(&self, symbol: Symbol) -> Option<&CodeEntry> {
        self.entries.iter().find(|e| e.symbol == symbol)
    }

    /// Codeword lengths in the order symbols were ingested. Only
    /// available for codes built from a frequency table.
    pub fn depth_vector(&self) -> Vec<u32> {
        self.original.iter().map(|&idx| self.entries[idx].len).collect()
    }

    /// `(symbol, len)` pairs in canonical order.
    pub fn length_pairs(&self) -> Vec<(Symbol, u32)> {
        self.entries.iter().map(|e| (e.symbol, e.len)).collect()
    }

    /// Recomputes the shape this code realizes.
    pub fn shape(&self) -> Result<TreeShape> {
        let depths: Vec<u32> = self.entries.iter().map(|e| e.len).collect();
        TreeShape::from_depths(&depths)
    }
}
