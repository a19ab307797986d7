//! The level-by-level dynamic program shared by the exact and rounded
//! solvers. States carry (internal nodes `i`, level `ℓ`, remaining
//! budget), where the budget axis is quantized by a step `lambda` (1 for
//! the exact solver). Cell values are lexicographic (decode time, code
//! length), so among decode-optimal trees the shortest one is returned.
//!
//! Two fill strategies share the transition arithmetic:
//!
//! - `run_relaxed` keeps only `i` per level, like the textbook recurrence
//!   for this problem. That window admits chains in which the number of
//!   symbols below a level grows with depth, which no tree realizes, and
//!   such a chain can win outright when zero-cost levels let it terminate
//!   early. Its result is trusted only when the backtracked chain is a
//!   real shape.
//! - `run_paired` also remembers the previous level's count, which is
//!   exactly enough to keep every chain realizable, at an extra factor of
//!   `n` in table size.
//!
//! `solve` picks the paired fill outright when the instance is small and
//! otherwise tries the relaxed fill first, falling back on junk.

use crate::error::{Error, Result};
use crate::shape::TreeShape;

const INF: i128 = i128::MAX;
const NO_PARENT: u16 = u16::MAX;

/// Prefer the sound fill outright below this many (paired) cells.
const PAIRED_FIRST_CELLS: u128 = 4_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Cell {
    dec: i128,
    len: u64,
}

const DEAD: Cell = Cell { dec: INF, len: u64::MAX };

impl Cell {
    fn better_or_equal(&self, other: &Cell) -> bool {
        (self.dec, self.len) <= (other.dec, other.len)
    }
}

pub(crate) struct DpInstance<'a> {
    /// Prefix sums `P_0..P_n` of the ascending frequencies.
    pub pfx: &'a [u64],
    /// Alphabet size (`n ≥ 2`).
    pub n: usize,
    /// Height bound `h` (levels run `0..=h`).
    pub height: u32,
    /// Scaled level costs `q̂_1..q̂_h`.
    pub weights: &'a [i128],
    /// Number of budget grid points; index `b` stands for budget `b·lambda`.
    pub axis_len: usize,
    /// Budget grid step; spending `P` consumes `ceil(P / lambda)` points.
    pub lambda: u64,
    /// Table-cell guard.
    pub max_cells: u128,
}

pub(crate) struct DpOutcome {
    /// Scaled decode time (divide by the profile denominator).
    pub dec_scaled: i128,
    /// Exact code length accumulated along the winning path.
    pub len: u64,
    pub shape: TreeShape,
}

impl DpInstance<'_> {
    fn spend(&self, p: u64) -> usize {
        (p.div_ceil(self.lambda)) as usize
    }

    fn paired_cells(&self) -> u128 {
        let pairs = (self.n as u128) * (self.n as u128 - 1) / 2 + 1;
        (self.height as u128) * pairs * (self.axis_len as u128)
    }

    fn relaxed_cells(&self) -> u128 {
        (self.height as u128) * (self.n as u128) * (self.axis_len as u128)
    }

    /// Fills the table and backtracks the optimum read at the top budget
    /// index. Returns `None` when no tree fits.
    pub fn solve(&self) -> Result<Option<DpOutcome>> {
        debug_assert!(self.n >= 2);
        debug_assert_eq!(self.weights.len(), self.height as usize);
        if self.n >= u16::MAX as usize {
            return Err(Error::TooLarge { n: self.n, max: u16::MAX as usize - 1 });
        }
        if self.paired_cells() <= PAIRED_FIRST_CELLS.min(self.max_cells) {
            return self.run_paired();
        }
        if self.relaxed_cells() > self.max_cells {
            return Err(Error::WorkLimitExceeded {
                cells: self.relaxed_cells(),
                limit: self.max_cells,
            });
        }
        match self.run_relaxed()? {
            None => Ok(None), // the relaxation is a superset: truly infeasible
            Some(out) if TreeShape::is_valid(out.counts(), self.n) => {
                Ok(Some(out.into_outcome(self.n)))
            }
            Some(_) => {
                if self.paired_cells() > self.max_cells {
                    return Err(Error::WorkLimitExceeded {
                        cells: self.paired_cells(),
                        limit: self.max_cells,
                    });
                }
                self.run_paired()
            }
        }
    }

    /// The single-register fill. The backtracked chain may not be a
    /// realizable shape; callers must check.
    pub(crate) fn run_relaxed(&self) -> Result<Option<RawChain>> {
        let n = self.n;
        let h = self.height as usize;
        let axis = self.axis_len;
        let row = |i: usize, b: usize| i * axis + b;

        // level h: only the empty forest is alive
        let mut prev = vec![DEAD; n * axis];
        let mut cur = vec![DEAD; n * axis];
        for b in 0..axis {
            prev[row(0, b)] = Cell { dec: 0, len: 0 };
        }
        let mut parent = vec![NO_PARENT; h * n * axis];

        for lvl in (0..h).rev() {
            let w = self.weights[lvl]; // q̂_{lvl+1}, scaled
            for b in 0..axis {
                cur[row(0, b)] = Cell { dec: 0, len: 0 };
            }
            for i in 1..n {
                let lo = (2 * i).saturating_sub(n);
                for b in 0..axis {
                    let mut best = DEAD;
                    let mut best_j = NO_PARENT;
                    for j in lo..i {
                        let p = self.pfx[2 * i - j];
                        let s = self.spend(p);
                        if s > b {
                            continue;
                        }
                        let sub = prev[row(j, b - s)];
                        if sub.dec == INF {
                            continue;
                        }
                        let cand = Cell { dec: sub.dec + w * p as i128, len: sub.len + p };
                        // ties keep the largest j
                        if cand.better_or_equal(&best) {
                            best = cand;
                            best_j = j as u16;
                        }
                    }
                    cur[row(i, b)] = best;
                    parent[(lvl * n + i) * axis + b] = best_j;
                }
            }
            std::mem::swap(&mut prev, &mut cur);
        }

        let top = prev[row(n - 1, axis - 1)];
        if top.dec == INF {
            return Ok(None);
        }

        let mut counts = vec![(n - 1) as u32];
        let (mut i, mut b) = (n - 1, axis - 1);
        for lvl in 0..h {
            if i == 0 {
                break;
            }
            let j = parent[(lvl * n + i) * axis + b];
            debug_assert_ne!(j, NO_PARENT);
            let j = j as usize;
            counts.push(j as u32);
            b -= self.spend(self.pfx[2 * i - j]);
            i = j;
        }
        debug_assert_eq!(i, 0, "finite value must backtrack to the empty forest");
        Ok(Some(RawChain { dec_scaled: top.dec, len: top.len, counts }))
    }

    /// The sound fill: states are (count above, count here), so the
    /// symbols-below sequence can never grow with depth and every
    /// backtracked chain is a real shape.
    pub(crate) fn run_paired(&self) -> Result<Option<DpOutcome>> {
        let n = self.n;
        let h = self.height as usize;
        let axis = self.axis_len;
        if self.paired_cells() > self.max_cells {
            return Err(Error::WorkLimitExceeded {
                cells: self.paired_cells(),
                limit: self.max_cells,
            });
        }
        // triangular pair index for up > i
        let tri = |up: usize, i: usize| up * (up - 1) / 2 + i;
        let pairs = n * (n - 1) / 2;
        let row = |pair: usize, b: usize| pair * axis + b;

        // the root transition n−1 → n−2 is forced; n = 2 needs no slabs
        let top_spend = self.spend(self.pfx[n]);
        if top_spend > axis - 1 {
            return Ok(None);
        }
        let root_charge = self.weights[0] * self.pfx[n] as i128;
        if n == 2 {
            let counts = vec![1, 0];
            let shape = TreeShape::new(counts, n).expect("the two-symbol shape");
            return Ok(Some(DpOutcome {
                dec_scaled: root_charge,
                len: self.pfx[n],
                shape,
            }));
        }

        // S_ℓ[(up, i)]: best over chains with i_{ℓ-1} = up, i_ℓ = i;
        // slabs run levels h-1 down to 1, then the root pass reads S_1
        let mut below = vec![DEAD; pairs * axis]; // S_{ℓ+1}
        let mut here = vec![DEAD; pairs * axis]; // S_ℓ being filled
        // at level h only i = 0 lives: (up, 0) = zero for every up
        for up in 1..n {
            for b in 0..axis {
                below[row(tri(up, 0), b)] = Cell { dec: 0, len: 0 };
            }
        }
        let mut parent = vec![NO_PARENT; h.saturating_sub(1) * pairs * axis];

        for lvl in (1..h).rev() {
            let w = self.weights[lvl]; // q̂_{lvl+1}
            for up in 1..n {
                for b in 0..axis {
                    here[row(tri(up, 0), b)] = Cell { dec: 0, len: 0 };
                }
                let lo_window = (2 * up).saturating_sub(n);
                for i in lo_window.max(1)..up {
                    let pair = tri(up, i);
                    // j must keep 2i−j ≤ 2up−i, i.e. j ≥ 3i − 2up
                    let lo = (2 * i).saturating_sub(n).max((3 * i).saturating_sub(2 * up));
                    for b in 0..axis {
                        let mut best = DEAD;
                        let mut best_j = NO_PARENT;
                        for j in lo..i {
                            let p = self.pfx[2 * i - j];
                            let s = self.spend(p);
                            if s > b {
                                continue;
                            }
                            let sub = below[row(tri(i, j), b - s)];
                            if sub.dec == INF {
                                continue;
                            }
                            let cand =
                                Cell { dec: sub.dec + w * p as i128, len: sub.len + p };
                            if cand.better_or_equal(&best) {
                                best = cand;
                                best_j = j as u16;
                            }
                        }
                        here[row(pair, b)] = best;
                        parent[((lvl - 1) * pairs + pair) * axis + b] = best_j;
                    }
                }
            }
            std::mem::swap(&mut below, &mut here);
            for cell in here.iter_mut() {
                *cell = DEAD;
            }
        }

        // root pass: i_0 = n−1, i_1 = n−2 forced by the window
        let sub = below[row(tri(n - 1, n - 2), axis - 1 - top_spend)];
        if sub.dec == INF {
            return Ok(None);
        }
        let total = Cell { dec: sub.dec + root_charge, len: sub.len + self.pfx[n] };

        let mut counts = vec![(n - 1) as u32, (n - 2) as u32];
        let (mut up, mut i, mut b) = (n - 1, n - 2, axis - 1 - top_spend);
        for lvl in 1..h {
            if i == 0 {
                break;
            }
            let j = parent[((lvl - 1) * pairs + tri(up, i)) * axis + b];
            debug_assert_ne!(j, NO_PARENT);
            let j = j as usize;
            counts.push(j as u32);
            b -= self.spend(self.pfx[2 * i - j]);
            up = i;
            i = j;
        }
        debug_assert_eq!(i, 0, "finite value must backtrack to the empty forest");
        let shape = TreeShape::new(counts, n).expect("paired chains are realizable");
        Ok(Some(DpOutcome { dec_scaled: total.dec, len: total.len, shape }))
    }
}

pub(crate) struct RawChain {
    pub(crate) dec_scaled: i128,
    pub(crate) len: u64,
    counts: Vec<u32>,
}

impl RawChain {
    pub(crate) fn counts(&self) -> &[u32] {
        &self.counts
    }

    fn into_outcome(self, n: usize) -> DpOutcome {
        let shape = TreeShape::new(self.counts, n).expect("caller validated");
        DpOutcome { dec_scaled: self.dec_scaled, len: self.len, shape }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freq::FrequencyTable;
    use crate::scheme::BlockingScheme;

    fn instance<'a>(
        pfx: &'a [u64],
        weights: &'a [i128],
        n: usize,
        h: u32,
        axis_len: usize,
    ) -> DpInstance<'a> {
        DpInstance { pfx, n, height: h, weights, axis_len, lambda: 1, max_cells: 1 << 22 }
    }

    #[test]
    fn exact_axis_reproduces_known_optimum() {
        let ft = FrequencyTable::from_counts(&[1, 1, 4, 6, 9, 25]).unwrap();
        let bs = BlockingScheme::from_ints(&[(2, 1), (3, 5)], true).unwrap();
        let p = ft.prefix_sums();
        let profile = bs.level_cost_profile(5).unwrap();
        let (weights, denom) = profile.scaled();
        let inst = instance(&p, &weights, 6, 5, 101);
        let sol = inst.solve().unwrap().expect("feasible at budget 100");
        assert_eq!(denom, 1);
        assert_eq!(sol.dec_scaled, 76);
        assert_eq!(sol.len, 100);
        assert_eq!(sol.shape.counts(), &[5, 4, 2, 1, 0]);
    }

    #[test]
    fn infeasible_budget_returns_none() {
        let ft = FrequencyTable::from_counts(&[1, 1, 4, 6, 9, 25]).unwrap();
        let bs = BlockingScheme::from_ints(&[(2, 1), (3, 5)], true).unwrap();
        let p = ft.prefix_sums();
        let profile = bs.level_cost_profile(5).unwrap();
        let (weights, _) = profile.scaled();
        // budgets 0..=86, below the optimum 87
        let inst = instance(&p, &weights, 6, 5, 87);
        assert!(inst.solve().unwrap().is_none());
    }

    #[test]
    fn cell_guard_trips() {
        let ft = FrequencyTable::from_counts(&[1, 2, 3]).unwrap();
        let p = ft.prefix_sums();
        let weights = vec![1i128, 0];
        let mut inst = instance(&p, &weights, 3, 2, 100);
        inst.max_cells = 10;
        assert!(matches!(inst.solve(), Err(Error::WorkLimitExceeded { .. })));
    }

    #[test]
    fn relaxed_junk_is_caught_and_resolved() {
        // zero-cost levels let the relaxed fill terminate a chain early
        // with more symbols below a level than above it; the paired fill
        // must deliver the true optimum instead
        let ft = FrequencyTable::from_counts(&[22, 4, 17, 3, 26, 14, 31, 32]).unwrap();
        let bs = BlockingScheme::from_ints(&[(2, 6), (2, 11)], true).unwrap();
        let n = ft.len();
        let h = (n - 1) as u32;
        let p = ft.prefix_sums();
        let profile = bs.level_cost_profile(h).unwrap();
        let (weights, _) = profile.scaled();
        let budget = 473usize;

        let mut inst = instance(&p, &weights, n, h, budget + 1);
        let raw = inst.run_relaxed().unwrap().unwrap();
        assert!(
            !TreeShape::is_valid(raw.counts(), n),
            "this instance is chosen to fool the relaxed window"
        );
        assert_eq!(raw.dec_scaled, 1554);

        inst.max_cells = 1 << 24;
        let sound = inst.solve().unwrap().unwrap();
        assert_eq!(sound.dec_scaled, 1631);
        assert!(TreeShape::is_valid(sound.shape.counts(), n));
    }

    #[test]
    fn relaxed_and_paired_agree_when_relaxed_chain_is_real() {
        let ft = FrequencyTable::from_counts(&[1, 1, 4, 6, 9, 25]).unwrap();
        let bs = BlockingScheme::from_ints(&[(2, 1), (3, 5)], true).unwrap();
        let p = ft.prefix_sums();
        let profile = bs.level_cost_profile(5).unwrap();
        let (weights, _) = profile.scaled();
        let inst = instance(&p, &weights, 6, 5, 101);
        let raw = inst.run_relaxed().unwrap().unwrap();
        let paired = inst.run_paired().unwrap().unwrap();
        assert_eq!(raw.dec_scaled, paired.dec_scaled);
        assert_eq!(raw.len, paired.len);
        assert_eq!(raw.counts(), paired.shape.counts());
    }
}
