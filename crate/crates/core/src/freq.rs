//! Frequency tables sorted ascending, and their prefix sums.

use crate::error::{Error, Result};

/// Symbol identifier. Byte alphabets use the byte value; other alphabets
/// assign ids at ingestion time.
pub type Symbol = u16;

/// Symbol frequencies held in ascending order.
///
/// All level-structure arithmetic in this crate runs over the prefix sums
/// of the ascending frequencies, so the sorted order is fixed here once.
/// Ties are broken by position in the ingested sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyTable {
    /// Frequencies, ascending.
    freqs: Vec<u64>,
    /// Symbol at each ascending rank.
    symbols: Vec<Symbol>,
    /// Position of each ascending rank in the ingested sequence.
    original: Vec<usize>,
}

impl FrequencyTable {
    /// Builds a table from `(symbol, count)` pairs. Zero counts are
    /// dropped; duplicate symbols are rejected.
    pub fn from_pairs(pairs: &[(Symbol, u64)]) -> Result<Self> {
        let kept: Vec<(usize, Symbol, u64)> = pairs
            .iter()
            .enumerate()
            .filter(|(_, &(_, f))| f > 0)
            .map(|(pos, &(sym, f))| (pos, sym, f))
            .collect();
        if kept.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut seen: Vec<Symbol> = kept.iter().map(|&(_, s, _)| s).collect();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedTable("duplicate symbol".into()));
        }
        let mut order: Vec<usize> = (0..kept.len()).collect();
        order.sort_by_key(|&k| (kept[k].2, k));
        Ok(FrequencyTable {
            freqs: order.iter().map(|&k| kept[k].2).collect(),
            symbols: order.iter().map(|&k| kept[k].1).collect(),
            original: order.iter().map(|&k| kept[k].0).collect(),
        })
    }

    /// Convenience constructor for tests and small tools: counts indexed
    /// by symbol id.
    pub fn from_counts(counts: &[u64]) -> Result<Self> {
        let pairs: Vec<(Symbol, u64)> = counts
            .iter()
            .enumerate()
            .map(|(i, &f)| (i as Symbol, f))
            .collect();
        Self::from_pairs(&pairs)
    }

    /// Alphabet size `n`.
    pub fn len(&self) -> usize {
        self.freqs.len()
    }

    pub fn is_empty(&self) -> bool {
        false // n >= 1 by construction
    }

    /// Frequencies in ascending order.
    pub fn freqs(&self) -> &[u64] {
        &self.freqs
    }

    /// Symbols in ascending frequency order.
    pub fn symbols_by_rank(&self) -> &[Symbol] {
        &self.symbols
    }

    /// Position of ascending rank `rank` in the ingested sequence.
    pub fn original_index(&self, rank: usize) -> usize {
        self.original[rank]
    }

    pub fn total(&self) -> u64 {
        self.freqs.iter().sum()
    }

    /// Prefix sums `P_0..P_n` over the ascending frequencies:
    /// `P_i` is the weight of the `i` rarest symbols.
    pub fn prefix_sums(&self) -> Vec<u64> {
        let mut p = Vec::with_capacity(self.freqs.len() + 1);
        p.push(0);
        let mut acc = 0u64;
        for &f in &self.freqs {
            acc += f;
            p.push(acc);
        }
        p
    }
}
