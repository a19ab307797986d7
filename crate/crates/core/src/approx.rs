//! Rounded-budget solvers: the pseudo-approximation that quantizes the
//! budget axis to multiples of a step `λ`, and the constant-hierarchy
//! variant that additionally bounds the tree height.

use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive};

use crate::cost::CostReport;
use crate::dp::DpInstance;
use crate::error::{Error, Result};
use crate::exact::{effective_height, solve_exact, solve_single_symbol, SolveOptions};
use crate::freq::FrequencyTable;
use crate::huffman::ceil_log2;
use crate::scheme::{BlockingScheme, Cost};
use crate::shape::{decode_time_from_shape, len_from_shape, per_block_counts, TreeShape};

/// The quantized budget axis: multiples of `lambda` from 0 up to
/// `max_index · lambda`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundingGrid {
    pub lambda: u64,
    pub max_index: u64,
    pub epsilon: Cost,
    pub height: u32,
}

impl RoundingGrid {
    /// `λ = ⌊ε·budget / 2h⌋`. Returns `None` when the step degenerates to
    /// zero, in which case the exact solver is the right tool anyway.
    pub fn new(budget: u64, epsilon: Cost, height: u32) -> Option<Self> {
        let lambda = (epsilon * Cost::from_integer(budget as i128)
            / Cost::from_integer(2 * height as i128))
        .floor()
        .to_integer()
        .to_u64()
        .expect("λ fits u64 for valid ε and budget");
        if lambda == 0 {
            return None;
        }
        // answers are read at r(budget) + h·λ; the index covers both that
        // and the nominal 2h/ε + h loop bound
        let max_index = budget.div_ceil(lambda) + height as u64;
        Some(RoundingGrid { lambda, max_index, epsilon, height })
    }
}

/// Smallest grid multiple at or above `x`.
pub fn round_up(x: u64, grid: &RoundingGrid) -> u64 {
    x.div_ceil(grid.lambda) * grid.lambda
}

fn check_epsilon(epsilon: &Cost, name: &'static str) -> Result<()> {
    if !epsilon.is_positive() || *epsilon > Cost::one() {
        return Err(Error::InvalidParameter(name));
    }
    Ok(())
}

/// Finds a tree with code length at most `(1+ε)·budget` whose decode time
/// is no worse than the exact optimum at `budget`. Runs in time
/// independent of the budget's magnitude because the budget axis shrinks
/// to `O(h/ε)` grid points.
pub fn solve_pseudo_approx(
    ft: &FrequencyTable,
    bs: &BlockingScheme,
    budget: u64,
    epsilon: Cost,
    opts: &SolveOptions,
) -> Result<(CostReport, TreeShape)> {
    check_epsilon(&epsilon, "epsilon must satisfy 0 < ε ≤ 1")?;
    let n = ft.len();
    if n == 1 {
        return solve_single_symbol(ft, bs, budget);
    }
    let h = effective_height(n, bs, opts.height)?;
    let grid = match RoundingGrid::new(budget, epsilon, h) {
        Some(grid) => grid,
        None => {
            let mut exact_opts = opts.clone();
            exact_opts.height = Some(h);
            return solve_exact(ft, bs, budget, &exact_opts);
        }
    };

    let profile = bs.level_cost_profile(h)?;
    let (weights, denom) = profile.scaled();
    let pfx = ft.prefix_sums();
    let inst = DpInstance {
        pfx: &pfx,
        n,
        height: h,
        weights: &weights,
        axis_len: grid.max_index as usize + 1,
        lambda: grid.lambda,
        max_cells: opts.max_cells,
    };
    let sol = inst.solve()?.ok_or(Error::Infeasible { budget })?;

    let shape = sol.shape;
    let code_length = len_from_shape(ft, &shape)?;
    debug_assert_eq!(code_length, sol.len);
    debug_assert!(
        Cost::from_integer(code_length as i128)
            <= (Cost::one() + epsilon) * Cost::from_integer(budget as i128)
    );
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

/// Height that still admits a near-optimal tree when the scheme has `k`
/// memory hierarchies: `2·k·⌈1/δ⌉·⌈log₂ n⌉`, never below `⌈log₂ n⌉`.
pub fn height_bound(n: usize, k: u32, delta: Cost) -> u32 {
    debug_assert!(n >= 2);
    let inv = (Cost::one() / delta).ceil().to_integer().to_u32().unwrap_or(u32::MAX);
    let log = ceil_log2(n);
    (2u64 * k as u64 * inv as u64 * log as u64).min(u32::MAX as u64).max(log as u64) as u32
}

/// Constant-hierarchy solve: runs the rounded solver with the height
/// bound above and the budget relaxed to `(1+δ)·budget`, trading a
/// `(1+δ)` factor on both costs for a table whose size no longer depends
/// on the alphabet's worst-case depth.
pub fn solve_constant_hierarchy(
    ft: &FrequencyTable,
    bs: &BlockingScheme,
    budget: u64,
    epsilon: Cost,
    delta: Cost,
    opts: &SolveOptions,
) -> Result<(CostReport, TreeShape)> {
    check_epsilon(&delta, "delta must satisfy 0 < δ ≤ 1")?;
    let n = ft.len();
    if n == 1 {
        return solve_single_symbol(ft, bs, budget);
    }
    let k = bs.hierarchy_count();
    let bound = height_bound(n, k, delta).min((n - 1) as u32);
    // heights beyond the requested cap never help
    let bound = match opts.height {
        Some(cap) => bound.min(cap.max(ceil_log2(n))),
        None => bound,
    };
    let relaxed = ((Cost::one() + delta) * Cost::from_integer(budget as i128))
        .floor()
        .to_integer()
        .to_u64()
        .unwrap_or(u64::MAX);
    let mut inner = opts.clone();
    inner.height = Some(bound);
    let (mut report, shape) = solve_pseudo_approx(ft, bs, relaxed, epsilon, &inner)?;
    report.budget = budget;
    Ok((report, shape))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig3() -> (FrequencyTable, BlockingScheme) {
        (
            FrequencyTable::from_counts(&[1, 1, 4, 6, 9, 25]).unwrap(),
            BlockingScheme::from_ints(&[(2, 1), (3, 5)], true).unwrap(),
        )
    }

    #[test]
    fn round_up_examples() {
        let grid = RoundingGrid::new(10_000, Cost::new(1, 10), 10).unwrap();
        assert_eq!(grid.lambda, 50);
        assert_eq!(grid.max_index, 210);
        assert_eq!(round_up(46, &grid), 50);
        assert_eq!(round_up(100, &grid), 100);
        assert_eq!(round_up(0, &grid), 0);
    }

    #[test]
    fn degenerate_lambda_falls_back_to_exact() {
        // λ = ⌊0.02·87 / 12⌋ = 0
        assert!(RoundingGrid::new(87, Cost::new(2, 100), 6).is_none());
        let (ft, bs) = fig3();
        let opts = SolveOptions::with_height(6);
        let approx = solve_pseudo_approx(&ft, &bs, 87, Cost::new(2, 100), &opts).unwrap();
        let exact = solve_exact(&ft, &bs, 87, &opts).unwrap();
        assert_eq!(approx.0, exact.0);
        assert_eq!(approx.1, exact.1);
    }

    #[test]
    fn guarantee_on_the_reference_instance() {
        let (ft, bs) = fig3();
        let opts = SolveOptions::default();
        let exact = solve_exact(&ft, &bs, 100, &opts).unwrap();
        let (report, _) =
            solve_pseudo_approx(&ft, &bs, 100, Cost::new(5, 100), &opts).unwrap();
        assert!(report.decode_time <= exact.0.decode_time);
        assert!(Cost::from_integer(report.code_length as i128) <= Cost::new(105, 1));
    }

    #[test]
    fn height_bound_examples() {
        assert_eq!(height_bound(256, 2, Cost::new(1, 2)), 64);
        assert_eq!(height_bound(2, 1, Cost::one()), 2);
        assert_eq!(height_bound(6, 2, Cost::new(1, 4)), 48);
    }

    #[test]
    fn two_symbols_match_exact_under_any_delta() {
        let ft = FrequencyTable::from_counts(&[3, 5]).unwrap();
        let bs = BlockingScheme::from_ints(&[(1, 1), (1, 7)], true).unwrap();
        let opts = SolveOptions::default();
        let exact = solve_exact(&ft, &bs, 100, &opts).unwrap();
        let konst =
            solve_constant_hierarchy(&ft, &bs, 100, Cost::new(1, 10), Cost::one(), &opts).unwrap();
        assert_eq!(konst.0.decode_time, exact.0.decode_time);
        assert_eq!(konst.1, exact.1);
    }

    #[test]
    fn epsilon_domain_checked() {
        let (ft, bs) = fig3();
        let opts = SolveOptions::default();
        assert!(matches!(
            solve_pseudo_approx(&ft, &bs, 100, Cost::from_integer(0), &opts),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            solve_pseudo_approx(&ft, &bs, 100, Cost::from_integer(2), &opts),
            Err(Error::InvalidParameter(_))
        ));
    }

    // Table-level properties of the rounded DP, checked against a naive
    // dense reimplementation of both recurrences.
    mod tables {
        use super::*;

        const INF: i128 = i128::MAX;

        struct Dense {
            n: usize,
            axis: usize,
            cells: Vec<i128>,
        }

        impl Dense {
            fn at(&self, i: usize, lvl: usize, b: usize) -> i128 {
                self.cells[(lvl * self.n + i) * self.axis + b]
            }
        }

        // budget axis in steps of `lambda`; lambda = 1 gives the exact DP
        fn dense_dp(pfx: &[u64], n: usize, h: usize, weights: &[i128], axis: usize, lambda: u64) -> Dense {
            let mut cells = vec![INF; (h + 1) * n * axis];
            let idx = |i: usize, lvl: usize, b: usize| (lvl * n + i) * axis + b;
            for lvl in 0..=h {
                for b in 0..axis {
                    cells[idx(0, lvl, b)] = 0;
                }
            }
            for lvl in (0..h).rev() {
                for i in 1..n {
                    for b in 0..axis {
                        let lo = (2 * i).saturating_sub(n);
                        let mut best = INF;
                        for j in lo..i {
                            let p = pfx[2 * i - j];
                            let s = p.div_ceil(lambda) as usize;
                            if s > b {
                                continue;
                            }
                            let sub = cells[idx(j, lvl + 1, b - s)];
                            if sub == INF {
                                continue;
                            }
                            best = best.min(sub + weights[lvl] * p as i128);
                        }
                        cells[idx(i, lvl, b)] = best;
                    }
                }
            }
            Dense { n, axis, cells }
        }

        fn instance() -> (Vec<u64>, Vec<i128>, usize) {
            let ft = FrequencyTable::from_counts(&[2, 3, 5, 9, 21]).unwrap();
            let bs = BlockingScheme::from_ints(&[(1, 1), (2, 4)], true).unwrap();
            let profile = bs.level_cost_profile(4).unwrap();
            let (weights, _) = profile.scaled();
            (ft.prefix_sums(), weights, 5)
        }

        #[test]
        fn rounded_rows_are_monotone_in_budget() {
            let (pfx, weights, n) = instance();
            let budget = 120u64;
            let grid = RoundingGrid::new(budget, Cost::new(1, 4), 4).unwrap();
            let axis = grid.max_index as usize + 1;
            let rounded = dense_dp(&pfx, n, 4, &weights, axis, grid.lambda);
            for lvl in 0..=4 {
                for i in 0..n {
                    for b in 1..axis {
                        let (lo, hi) = (rounded.at(i, lvl, b - 1), rounded.at(i, lvl, b));
                        assert!(hi <= lo, "row must not worsen with more budget");
                    }
                }
            }
        }

        #[test]
        fn rounded_table_dominates_exact_per_level_slack() {
            let (pfx, weights, n) = instance();
            let budget = 120u64;
            let h = 4usize;
            let grid = RoundingGrid::new(budget, Cost::new(1, 4), h as u32).unwrap();
            let exact = dense_dp(&pfx, n, h, &weights, budget as usize + 1, 1);
            let axis = grid.max_index as usize + 1;
            let rounded = dense_dp(&pfx, n, h, &weights, axis, grid.lambda);
            // D(i,ℓ,L) ≥ D̄(i,ℓ, r(L) + (h−ℓ)λ): one λ of slack per level
            for lvl in 0..=h {
                for i in 0..n {
                    for budget_l in 0..=budget {
                        let d = exact.at(i, lvl, budget_l as usize);
                        if d == INF {
                            continue;
                        }
                        let slack_index =
                            budget_l.div_ceil(grid.lambda) + (h - lvl) as u64;
                        let b = (slack_index as usize).min(axis - 1);
                        assert!(rounded.at(i, lvl, b) <= d);
                    }
                }
            }
        }

        #[test]
        fn dense_dp_agrees_with_rolling_fill() {
            let (pfx, weights, n) = instance();
            let budget = 120u64;
            let dense = dense_dp(&pfx, n, 4, &weights, budget as usize + 1, 1);
            let inst = DpInstance {
                pfx: &pfx,
                n,
                height: 4,
                weights: &weights,
                axis_len: budget as usize + 1,
                lambda: 1,
                max_cells: 1 << 20,
            };
            let sol = inst.run_relaxed().unwrap().unwrap();
            assert_eq!(sol.dec_scaled, dense.at(n - 1, 0, budget as usize));
        }
    }
}
