//! The fixed-block-level solver: with `m` declared blocks and no
//! extension, the achievable decode times form a polynomially small set,
//! so the DP can iterate over decode values and minimize code length
//! instead of the reverse. Strongly polynomial for constant `m`.

use std::collections::BTreeMap;

use num_rational::Ratio;
use num_traits::Zero;

use crate::cost::CostReport;
use crate::error::{Error, Result};
use crate::exact::{solve_single_symbol, SolveOptions};
use crate::freq::FrequencyTable;
use crate::huffman::ceil_log2;
use crate::scheme::{BlockingScheme, Cost};
use crate::shape::{decode_time_from_shape, len_from_shape, per_block_counts, TreeShape};

const MAX_BLOCK_LEVELS: usize = 3;

#[derive(Debug, Clone, Copy)]
struct Entry {
    len: u64,
    parent_j: u16,
    parent_dec: i128,
}

/// Solves the same problem as `solve_exact` for a finite scheme, reading
/// the answer as the smallest decode value whose best code length fits
/// the budget. The decode-value maps are pruned to their Pareto frontier
/// (larger decode must buy strictly shorter length).
pub fn solve_fixed_block_levels(
    ft: &FrequencyTable,
    bs: &BlockingScheme,
    budget: u64,
    opts: &SolveOptions,
) -> Result<(CostReport, TreeShape)> {
    if bs.extends() {
        return Err(Error::InvalidParameter("fixed-level solver needs a finite scheme"));
    }
    let m = bs.blocks().len();
    if m > MAX_BLOCK_LEVELS {
        return Err(Error::WorkLimitExceeded {
            cells: m as u128,
            limit: MAX_BLOCK_LEVELS as u128,
        });
    }
    let n = ft.len();
    if n == 1 {
        return solve_single_symbol(ft, bs, budget).map_err(|e| match e {
            Error::Infeasible { .. } => Error::NoValidTree,
            other => other,
        });
    }
    let work = (n as u128).checked_pow(m as u32 + 3).unwrap_or(u128::MAX);
    if work > opts.max_cells {
        return Err(Error::WorkLimitExceeded { cells: work, limit: opts.max_cells });
    }
    let width = bs.addressable_width().expect("finite scheme");
    if width < ceil_log2(n) as u64 {
        return Err(Error::SchemeTooShort);
    }
    let h = width.min((n - 1) as u64) as u32;

    let profile = bs.level_cost_profile(h)?;
    let (weights, denom) = profile.scaled();
    let pfx = ft.prefix_sums();
    let hh = h as usize;

    // paired states (count above, count here) keep every chain a real
    // shape; the root transition n−1 → n−2 is forced by the window
    let tri = |up: usize, i: usize| up * (up - 1) / 2 + i;
    let pairs = n * (n - 1) / 2;
    let base = || {
        let mut level: Vec<BTreeMap<i128, Entry>> = vec![BTreeMap::new(); pairs];
        for up in 1..n {
            level[tri(up, 0)].insert(0, Entry { len: 0, parent_j: u16::MAX, parent_dec: 0 });
        }
        level
    };
    // table[lvl-1] holds level lvl, for lvl in 1..=h
    let mut table: Vec<Vec<BTreeMap<i128, Entry>>> = vec![base(); hh.max(1)];
    for lvl in (1..hh).rev() {
        let w = weights[lvl];
        let mut fresh = base();
        for up in 2..n {
            let lo_window = (2 * up).saturating_sub(n);
            for i in lo_window.max(1)..up {
                let lo = (2 * i).saturating_sub(n).max((3 * i).saturating_sub(2 * up));
                let mut cell: BTreeMap<i128, Entry> = BTreeMap::new();
                for j in lo..i {
                    let p = pfx[2 * i - j];
                    for (&sub_dec, sub) in &table[lvl][tri(i, j)] {
                        let dec = sub_dec + w * p as i128;
                        let len = sub.len + p;
                        let slot = cell.entry(dec).or_insert(Entry {
                            len: u64::MAX,
                            parent_j: u16::MAX,
                            parent_dec: 0,
                        });
                        // ties keep the largest j, which arrives last
                        if len <= slot.len {
                            *slot = Entry { len, parent_j: j as u16, parent_dec: sub_dec };
                        }
                    }
                }
                prune(&mut cell);
                fresh[tri(up, i)] = cell;
            }
        }
        table[lvl - 1] = fresh;
    }

    // root pass: charge every symbol for block 1 and scan for the
    // smallest decode value whose best length fits the budget
    let root_charge = weights[0] * pfx[n] as i128;
    let root_map = &table[0][tri(n - 1, n - 2)];
    let pick = root_map
        .iter()
        .map(|(&sub_dec, e)| (sub_dec + root_charge, e.len + pfx[n], sub_dec))
        .find(|&(_, len, _)| len <= budget);
    let (dec, _, mut cur_dec) = match pick {
        Some(found) => found,
        None => return Err(Error::NoValidTree),
    };

    // walk parents from below the forced root step
    let mut counts = vec![(n - 1) as u32, (n - 2) as u32];
    let (mut up, mut i) = (n - 1, n - 2);
    for lvl in 1..=hh {
        if i == 0 {
            break;
        }
        let e = table[lvl - 1][tri(up, i)][&cur_dec];
        counts.push(e.parent_j as u32);
        cur_dec = e.parent_dec;
        up = i;
        i = e.parent_j as usize;
    }
    let shape = TreeShape::new(counts, n).expect("paired chains are realizable");

    let code_length = len_from_shape(ft, &shape)?;
    let decode_time = Ratio::new(dec, denom);
    debug_assert_eq!(decode_time_from_shape(ft, &shape, bs)?, decode_time);
    let report = CostReport {
        code_length,
        decode_time,
        per_block_counts: per_block_counts(&shape, bs)?,
        budget,
    };
    Ok((report, shape))
}

/// Drops entries dominated by a smaller-or-equal decode value with a
/// length at least as good.
fn prune(map: &mut BTreeMap<i128, Entry>) {
    let mut best = u64::MAX;
    map.retain(|_, e| {
        if e.len < best {
            best = e.len;
            true
        } else {
            false
        }
    });
}

/// All decode-time values a forest can contribute under the declared
/// blocks: over every split of the alphabet into `x_0` absent symbols
/// (the most frequent ones) and `x_b` symbols per block level, each
/// present symbol pays the cumulative cost of its block level. The
/// extension rule is ignored; only declared blocks participate.
pub fn enumerate_decode_values(ft: &FrequencyTable, bs: &BlockingScheme) -> Vec<Cost> {
    let m = bs.blocks().len();
    let pfx = ft.prefix_sums();
    let n = ft.len();
    // cumulative costs per block level, scaled to a common denominator
    let mut cums = Vec::with_capacity(m);
    let mut acc = Cost::zero();
    for b in bs.blocks() {
        acc += b.cost;
        cums.push(acc);
    }
    let denom = cums.iter().fold(1i128, |d, c| num_integer::lcm(d, *c.denom()));
    let scaled: Vec<i128> = cums.iter().map(|c| c.numer() * (denom / c.denom())).collect();

    // deepest-first composition walk: t_b symbols sit at block level ≥ b
    let mut values = std::collections::BTreeSet::new();
    let mut stack = vec![(0usize, 0usize, 0i128)]; // (block index from m down, t, value)
    while let Some((idx, t, value)) = stack.pop() {
        if idx == m {
            values.insert(value);
            continue;
        }
        let level = m - idx; // assign block m first, then m-1, ...
        for t_next in t..=n {
            // x_level = t_next - t extra symbols whose walk stops at `level`
            let value = value + scaled[level - 1] * (pfx[t_next] - pfx[t]) as i128;
            stack.push((idx + 1, t_next, value));
        }
    }
    values.into_iter().map(|v| Ratio::new(v, denom)).collect()
}
