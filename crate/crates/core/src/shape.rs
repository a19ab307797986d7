//! The internal-node sequence `⟨i_0..i_h⟩` that pins down a prefix tree's
//! level structure, and the prefix-sum evaluation of its costs.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::freq::FrequencyTable;
use crate::scheme::{BlockingScheme, Cost};

/// `counts[ℓ]` is the number of internal nodes at depth `ℓ` or deeper.
/// The sequence runs from `i_0 = n-1` strictly down to `i_h = 0` and obeys
/// `0 ≤ 2·i_ℓ − i_{ℓ+1} ≤ n` at every level, which is exactly the
/// condition under which a prefix tree with this profile exists.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeShape {
    counts: Vec<u32>,
}

impl TreeShape {
    pub fn new(counts: Vec<u32>, n: usize) -> Result<Self> {
        if Self::is_valid(&counts, n) {
            Ok(TreeShape { counts })
        } else {
            Err(Error::InvalidShape)
        }
    }

    /// Checks the feasibility conditions without constructing. Besides
    /// the window `0 ≤ 2·i_ℓ − i_{ℓ+1} ≤ n`, the symbols-below counts
    /// must not grow with depth, or some level would owe more internal
    /// nodes than it has nodes.
    pub fn is_valid(counts: &[u32], n: usize) -> bool {
        if counts.is_empty() || n == 0 {
            return false;
        }
        if counts[0] as usize != n - 1 || *counts.last().unwrap() != 0 {
            return false;
        }
        let mut below_prev = n as u64;
        for w in counts.windows(2) {
            let (i, j) = (w[0] as u64, w[1] as u64);
            if j >= i {
                return false; // strictly decreasing
            }
            let below = 2 * i - j;
            if below > below_prev {
                return false;
            }
            below_prev = below;
        }
        true
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Tree height `h`.
    pub fn height(&self) -> u32 {
        (self.counts.len() - 1) as u32
    }

    /// Alphabet size this shape describes.
    pub fn n(&self) -> usize {
        self.counts[0] as usize + 1
    }

    /// Leaves at each level `0..=h`, derived from the node bookkeeping:
    /// a level's internal nodes are `i_ℓ − i_{ℓ+1}` and each spawns two
    /// nodes on the next level.
    pub fn leaves_per_level(&self) -> Vec<u32> {
        let h = self.counts.len() - 1;
        let mut leaves = Vec::with_capacity(h + 1);
        let mut nodes = 1u32;
        for lvl in 0..=h {
            let internal = self.counts[lvl] - self.counts.get(lvl + 1).copied().unwrap_or(0);
            leaves.push(nodes - internal);
            nodes = 2 * internal;
        }
        leaves
    }

    /// Recovers the shape from per-symbol depths (any order). Fails when
    /// the depths do not describe a full binary tree.
    pub fn from_depths(depths: &[u32]) -> Result<Self> {
        let n = depths.len();
        if n == 0 {
            return Err(Error::InvalidShape);
        }
        if n == 1 {
            // single-symbol convention: the 1-bit code maps to shape ⟨0⟩
            return if depths[0] <= 1 {
                Ok(TreeShape { counts: vec![0] })
            } else {
                Err(Error::InvalidShape)
            };
        }
        let h = *depths.iter().max().unwrap() as usize;
        let mut leaves = vec![0u32; h + 1];
        for &d in depths {
            leaves[d as usize] += 1;
        }
        // walk levels computing internal counts, then suffix-sum them
        let mut internal = vec![0u32; h + 1];
        let mut nodes = 1u32;
        for lvl in 0..=h {
            if leaves[lvl] > nodes {
                return Err(Error::InvalidShape);
            }
            internal[lvl] = nodes - leaves[lvl];
            nodes = 2 * internal[lvl];
        }
        if internal[h] != 0 {
            return Err(Error::InvalidShape);
        }
        let mut counts = vec![0u32; h + 1];
        let mut acc = 0u32;
        for lvl in (0..=h).rev() {
            acc += internal[lvl];
            counts[lvl] = acc;
        }
        TreeShape::new(counts, n)
    }
}

/// Code length of the tree a shape describes, as the sum of one prefix sum
/// per level. For the degenerate single-symbol shape `⟨0⟩` this is 0 even
/// though the emitted code still spends one bit per symbol.
pub fn len_from_shape(ft: &FrequencyTable, shape: &TreeShape) -> Result<u64> {
    if shape.n() != ft.len() {
        return Err(Error::InvalidShape);
    }
    let p = ft.prefix_sums();
    Ok(level_weights(shape).map(|below| p[below]).sum())
}

/// Decode time of the tree a shape describes: each level's prefix sum
/// weighted by the block cost charged at that level.
pub fn decode_time_from_shape(
    ft: &FrequencyTable,
    shape: &TreeShape,
    bs: &BlockingScheme,
) -> Result<Cost> {
    if shape.n() != ft.len() {
        return Err(Error::InvalidShape);
    }
    let p = ft.prefix_sums();
    let profile = bs.level_cost_profile(shape.height())?;
    let mut total = Cost::zero();
    for (lvl, below) in level_weights(shape).enumerate() {
        total += profile.qhat(lvl as u32 + 1) * Cost::from_integer(p[below] as i128);
    }
    Ok(total)
}

/// Symbols that land in each block level (index 0 ↔ block 1).
pub fn per_block_counts(shape: &TreeShape, bs: &BlockingScheme) -> Result<Vec<u64>> {
    let mut counts = Vec::new();
    if shape.n() == 1 {
        counts.push(1);
        return Ok(counts);
    }
    for (lvl, leaves) in shape.leaves_per_level().iter().enumerate().skip(1) {
        if *leaves == 0 {
            continue;
        }
        let (block, _) = bs.block_of_depth(lvl as u32)?;
        if counts.len() < block as usize {
            counts.resize(block as usize, 0);
        }
        counts[block as usize - 1] += *leaves as u64;
    }
    Ok(counts)
}

/// Iterator over `2·i_ℓ − i_{ℓ+1}` for `ℓ = 0..h`: the number of symbols
/// strictly below each level.
fn level_weights(shape: &TreeShape) -> impl Iterator<Item = usize> + '_ {
    shape
        .counts()
        .windows(2)
        .map(|w| (2 * w[0] - w[1]) as usize)
}
