//! Minimum decode time under a hard code-length budget, solved exactly by
//! dynamic programming over (internal nodes, level, remaining budget).

use num_rational::Ratio;

use crate::cost::CostReport;
use crate::dp::DpInstance;
use crate::error::{Error, Result};
use crate::freq::FrequencyTable;
use crate::huffman::ceil_log2;
use crate::scheme::{BlockingScheme, Cost};
use crate::shape::{decode_time_from_shape, len_from_shape, per_block_counts, TreeShape};

/// Knobs common to every solver.
#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Height bound `h`; `None` means `n − 1`. Finite schemes clamp it to
    /// their addressable width either way.
    pub height: Option<u32>,
    /// Upper bound on dynamic-program table cells.
    pub max_cells: u128,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { height: None, max_cells: 50_000_000 }
    }
}

impl SolveOptions {
    pub fn with_height(height: u32) -> Self {
        SolveOptions { height: Some(height), ..Self::default() }
    }
}

/// Height the solvers actually search: the requested bound (default
/// `n − 1`), clamped to what the scheme can address. A clamp below the
/// minimum feasible height means no tree is decodable at all.
pub(crate) fn effective_height(
    n: usize,
    bs: &BlockingScheme,
    requested: Option<u32>,
) -> Result<u32> {
    let mut h = requested.unwrap_or((n - 1) as u32);
    if let Some(width) = bs.addressable_width() {
        let width = width.min(u32::MAX as u64) as u32;
        if width < h {
            if width < ceil_log2(n) {
                return Err(Error::SchemeTooShort);
            }
            h = width;
        }
    }
    Ok(h)
}

/// Shared degenerate case: one symbol takes one bit and one block-1 access
/// per occurrence.
pub(crate) fn solve_single_symbol(
    ft: &FrequencyTable,
    bs: &BlockingScheme,
    budget: u64,
) -> Result<(CostReport, TreeShape)> {
    let f = ft.total();
    if budget < f {
        return Err(Error::Infeasible { budget });
    }
    let q1 = bs.blocks()[0].cost;
    let report = CostReport {
        code_length: f,
        decode_time: q1 * Cost::from_integer(f as i128),
        per_block_counts: vec![1],
        budget,
    };
    Ok((report, TreeShape::new(vec![0], 1).expect("degenerate shape")))
}

/// Finds the tree with the smallest decode time among trees of height at
/// most `h` whose code length is at most `budget`; among those, the
/// shortest code length. The budget axis runs over integers, so the cost
/// is pseudo-polynomial in `budget`.
pub fn solve_exact(
    ft: &FrequencyTable,
    bs: &BlockingScheme,
    budget: u64,
    opts: &SolveOptions,
) -> Result<(CostReport, TreeShape)> {
    let n = ft.len();
    if n == 1 {
        return solve_single_symbol(ft, bs, budget);
    }
    let h = effective_height(n, bs, opts.height)?;
    let profile = bs.level_cost_profile(h)?;
    let (weights, denom) = profile.scaled();
    let pfx = ft.prefix_sums();

    // budgets beyond h·P_n cannot be spent; clamping keeps the axis finite
    // for "unbounded" requests
    let spendable = (h as u64).saturating_mul(ft.total());
    let axis_top = budget.min(spendable);
    let inst = DpInstance {
        pfx: &pfx,
        n,
        height: h,
        weights: &weights,
        axis_len: axis_top as usize + 1,
        lambda: 1,
        max_cells: opts.max_cells,
    };
    let sol = inst.solve()?.ok_or(Error::Infeasible { budget })?;

    let shape = sol.shape;
    let code_length = len_from_shape(ft, &shape)?;
    debug_assert_eq!(code_length, sol.len);
    let decode_time = Ratio::new(sol.dec_scaled, denom);
    debug_assert_eq!(decode_time_from_shape(ft, &shape, bs)?, decode_time);
    let report = CostReport {
        code_length,
        decode_time,
        per_block_counts: per_block_counts(&shape, bs)?,
        budget,
    };
    Ok((report, shape))
}
