//! Brute-force ground truth for small alphabets: enumerate every valid
//! tree shape and take minima directly. Test-grade, guarded, and kept
//! deliberately independent of the dynamic programs it cross-checks.

use crate::error::{Error, Result};
use crate::freq::FrequencyTable;
use crate::scheme::{BlockingScheme, Cost};
use crate::shape::{decode_time_from_shape, len_from_shape, TreeShape};

const MAX_N: usize = 10;

/// Every internal-node sequence `⟨n−1, …, 0⟩` satisfying the feasibility
/// window, up to height `h_max`, in lexicographic order.
pub fn enumerate_shapes(n: usize, h_max: u32) -> Result<Vec<TreeShape>> {
    if n > MAX_N {
        return Err(Error::TooLarge { n, max: MAX_N });
    }
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if n == 1 {
        return Ok(vec![TreeShape::new(vec![0], 1).expect("degenerate shape")]);
    }
    let mut out = Vec::new();
    let mut counts = vec![(n - 1) as u32];
    descend(&mut counts, n, h_max, n as u64, &mut out);
    out.sort_by(|a, b| a.counts().cmp(b.counts()));
    Ok(out)
}

fn descend(counts: &mut Vec<u32>, n: usize, h_max: u32, below_prev: u64, out: &mut Vec<TreeShape>) {
    let i = *counts.last().unwrap() as usize;
    if i == 0 {
        out.push(TreeShape::new(counts.clone(), n).expect("window-constrained"));
        return;
    }
    if counts.len() as u32 > h_max {
        return; // would exceed the height budget
    }
    let lo = (2 * i).saturating_sub(n);
    for j in lo..i {
        let below = (2 * i - j) as u64;
        if below > below_prev {
            continue; // symbols-below may never grow with depth
        }
        counts.push(j as u32);
        descend(counts, n, h_max, below, out);
        counts.pop();
    }
}

/// Exact optimum by exhaustion: the least decode time among enumerated
/// shapes within the budget, breaking ties toward shorter code length and
/// then lexicographically smaller shape.
pub fn brute_force_optimal(
    ft: &FrequencyTable,
    bs: &BlockingScheme,
    budget: u64,
    h_max: u32,
) -> Result<(Cost, TreeShape)> {
    let n = ft.len();
    if n == 1 {
        if budget < ft.total() {
            return Err(Error::Infeasible { budget });
        }
        let q1 = bs.blocks()[0].cost;
        let dec = q1 * Cost::from_integer(ft.total() as i128);
        return Ok((dec, TreeShape::new(vec![0], 1).expect("degenerate shape")));
    }
    let mut best: Option<(Cost, u64, TreeShape)> = None;
    for shape in enumerate_shapes(n, h_max)? {
        let len = len_from_shape(ft, &shape)?;
        if len > budget {
            continue;
        }
        let dec = match decode_time_from_shape(ft, &shape, bs) {
            Ok(dec) => dec,
            // finite schemes simply cannot decode deeper shapes
            Err(Error::SchemeTooShort) => continue,
            Err(other) => return Err(other),
        };
        let candidate = (dec, len, shape);
        let better = match &best {
            None => true,
            Some(incumbent) => {
                (&candidate.0, candidate.1, candidate.2.counts())
                    < (&incumbent.0, incumbent.1, incumbent.2.counts())
            }
        };
        if better {
            best = Some(candidate);
        }
    }
    match best {
        Some((dec, _, shape)) => Ok((dec, shape)),
        None => Err(Error::Infeasible { budget }),
    }
}
