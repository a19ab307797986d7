//! Table-driven encoder/decoder. The compiler turns a prefix code and a
//! blocking scheme into chained lookup tables; the decoder walks them one
//! block per step and meters every access, so the measured cost can be
//! held against the analytical model exactly.

mod bitio;
mod container;

pub use bitio::{BitReader, BitWriter};
pub use container::EncodedContainer;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::freq::Symbol;
use crate::scheme::{BlockingScheme, Cost};
use crate::tree::PrefixCode;

const MAX_TABLE_WIDTH: u32 = 24;

/// One slot of a lookup table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    /// A codeword completes within this table; `bits_used` of the looked
    /// up bits belong to it.
    Decoded { symbol: Symbol, bits_used: u32 },
    /// No codeword completes; continue in the table at this index.
    Descend { table: u32 },
}

/// A table of `2^width` slots at one block level.
#[derive(Debug, Clone)]
pub struct LookupTable {
    pub block_level: u32,
    pub width: u32,
    pub cost: Cost,
    pub slots: Vec<Slot>,
}

/// The compiled table chain: index 0 is the root.
#[derive(Debug, Clone)]
pub struct TableSet {
    tables: Vec<LookupTable>,
    code_pairs: Vec<(Symbol, u32)>,
}

impl TableSet {
    pub fn tables(&self) -> &[LookupTable] {
        &self.tables
    }

    pub fn root(&self) -> &LookupTable {
        &self.tables[0]
    }
}

/// Compiles the chained lookup tables for `code` under `bs`: the root
/// table plus one table per internal node sitting on a block boundary.
pub fn compile_tables(code: &PrefixCode, bs: &BlockingScheme) -> Result<TableSet> {
    if let Some(width) = bs.addressable_width() {
        if (code.height() as u64) > width {
            return Err(Error::SchemeTooShort);
        }
    }
    let entries = code.entries();
    let single = entries.len() == 1;

    // the worklist index doubles as the table id
    let mut work = vec![(0u64, 0u32, 1u32)]; // (prefix bits, prefix length, block index)
    let mut tables: Vec<LookupTable> = Vec::new();
    let mut next = 0usize;
    while next < work.len() {
        let (prefix, depth, block_index) = work[next];
        next += 1;
        let block = bs.block_at(block_index)?;
        let width = block.width;
        if width > MAX_TABLE_WIDTH {
            return Err(Error::InvalidParameter("table width above 24 bits"));
        }
        let full_len = depth + width;
        if full_len > 64 {
            return Err(Error::CodeTooDeep { height: full_len });
        }
        let mut slots = Vec::with_capacity(1 << width);
        for value in 0..(1u64 << width) {
            let full = (prefix << width) | value;
            // the unique codeword completing inside this lookup, if any
            let hit = entries.iter().find(|e| {
                e.len > depth && e.len <= full_len && (full >> (full_len - e.len)) == e.bits
            });
            let slot = match hit {
                Some(e) => Slot::Decoded { symbol: e.symbol, bits_used: e.len - depth },
                None if single => {
                    // a one-symbol code leaves half the slots unreachable;
                    // decoding still consumes exactly one bit
                    Slot::Decoded { symbol: entries[0].symbol, bits_used: 1 }
                }
                None => {
                    let child = work.len() as u32;
                    work.push((full, full_len, block_index + 1));
                    Slot::Descend { table: child }
                }
            };
            slots.push(slot);
        }
        tables.push(LookupTable { block_level: block_index, width, cost: block.cost, slots });
    }
    Ok(TableSet { tables, code_pairs: code.length_pairs() })
}

/// Per-block-level access counts from a decode run (index 0 ↔ block 1).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AccessMeter {
    counts: Vec<u64>,
}

impl AccessMeter {
    fn record(&mut self, block_level: u32) {
        let idx = block_level as usize - 1;
        if self.counts.len() <= idx {
            self.counts.resize(idx + 1, 0);
        }
        self.counts[idx] += 1;
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total_accesses(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Measured decode cost: each block level's access count times its cost.
pub fn measured_cost(meter: &AccessMeter, bs: &BlockingScheme) -> Result<Cost> {
    let mut total = Cost::zero();
    for (idx, &count) in meter.counts().iter().enumerate() {
        if count == 0 {
            continue;
        }
        let block = bs.block_at(idx as u32 + 1)?;
        total += block.cost * Cost::from_integer(count as i128);
    }
    Ok(total)
}

/// Encodes a symbol sequence into a self-describing container.
pub fn encode_stream(symbols: &[Symbol], code: &PrefixCode) -> Result<EncodedContainer> {
    // dense codeword index so long streams don't rescan the code
    let max_sym = code.entries().iter().map(|e| e.symbol).max().unwrap_or(0);
    let mut by_symbol: Vec<Option<(u64, u32)>> = vec![None; max_sym as usize + 1];
    for e in code.entries() {
        by_symbol[e.symbol as usize] = Some((e.bits, e.len));
    }
    let mut w = BitWriter::new();
    for &sym in symbols {
        let entry = by_symbol
            .get(sym as usize)
            .copied()
            .flatten()
            .ok_or(Error::UnknownSymbol(sym))?;
        w.write_bits(entry.0, entry.1);
    }
    let (payload, payload_bits) = w.finish();
    Ok(EncodedContainer {
        symbol_count: symbols.len() as u64,
        alphabet: code.length_pairs(),
        payload_bits,
        payload,
    })
}

/// Decodes a container through compiled tables, metering every table
/// access. The tables must have been compiled from the container's code.
pub fn decode_stream(
    container: &EncodedContainer,
    tables: &TableSet,
) -> Result<(Vec<Symbol>, AccessMeter)> {
    if tables.code_pairs != container.alphabet {
        return Err(Error::TableMismatch);
    }
    let mut reader = BitReader::new(&container.payload);
    let mut meter = AccessMeter::default();
    let mut out = Vec::with_capacity(container.symbol_count as usize);
    for _ in 0..container.symbol_count {
        let mut table = tables.root();
        loop {
            if reader.position() >= container.payload_bits {
                return Err(Error::CorruptContainer("payload exhausted mid-symbol"));
            }
            let value = reader.peek_bits(table.width);
            meter.record(table.block_level);
            match table.slots[value as usize] {
                Slot::Decoded { symbol, bits_used } => {
                    reader.consume(bits_used);
                    out.push(symbol);
                    break;
                }
                Slot::Descend { table: child } => {
                    reader.consume(table.width);
                    table = &tables.tables()[child as usize];
                }
            }
        }
    }
    if reader.position() != container.payload_bits {
        return Err(Error::CorruptContainer("trailing payload bits"));
    }
    Ok((out, meter))
}
