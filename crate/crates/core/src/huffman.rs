//! Unconstrained optimal code length, two ways: the internal-node-count
//! dynamic program (which also yields a shape) and the classic greedy
//! merge used to cross-check it.

use crate::freq::FrequencyTable;
use crate::shape::{len_from_shape, TreeShape};

/// Optimal code length and a shape realizing it.
///
/// `H(i)` is the best code length over forests with `i` internal nodes;
/// `H(i) = min_j H(j) + P_{2i−j}` over `j ∈ [max(0, 2i−n), i−1]`. Ties
/// keep the largest `j` so the recovered shape is deterministic.
///
/// The single-symbol table returns its frequency: the emitted code spends
/// one bit per symbol even though no merge happens.
pub fn huffman_dp(ft: &FrequencyTable) -> (u64, TreeShape) {
    let n = ft.len();
    if n == 1 {
        return (ft.total(), TreeShape::new(vec![0], 1).expect("degenerate shape"));
    }
    let p = ft.prefix_sums();
    let mut best = vec![0u64; n];
    let mut parent = vec![0usize; n];
    for i in 1..n {
        let lo = (2 * i).saturating_sub(n);
        let mut best_len = u64::MAX;
        let mut best_j = lo;
        for j in lo..i {
            let len = best[j] + p[2 * i - j];
            if len <= best_len {
                best_len = len;
                best_j = j;
            }
        }
        best[i] = best_len;
        parent[i] = best_j;
    }
    let mut counts = vec![(n - 1) as u32];
    let mut i = n - 1;
    while i > 0 {
        i = parent[i];
        counts.push(i as u32);
    }
    let shape = TreeShape::new(counts, n).expect("DP shapes satisfy the feasibility window");
    debug_assert_eq!(len_from_shape(ft, &shape), Ok(best[n - 1]));
    (best[n - 1], shape)
}

/// Code length by the classic two-smallest merge; the sum of all merge
/// weights equals the weighted code length.
pub fn classic_huffman(ft: &FrequencyTable) -> u64 {
    let n = ft.len();
    if n == 1 {
        return ft.total();
    }
    // leaves arrive pre-sorted; merged weights are produced in order, so
    // two queues replace a heap
    let leaves = ft.freqs();
    let mut merged: std::collections::VecDeque<u64> = std::collections::VecDeque::new();
    let mut li = 0usize;
    let mut total = 0u64;
    let take = |li: &mut usize, merged: &mut std::collections::VecDeque<u64>| -> u64 {
        match (leaves.get(*li), merged.front()) {
            (Some(&l), Some(&m)) if l <= m => {
                *li += 1;
                l
            }
            (Some(&l), None) => {
                *li += 1;
                l
            }
            (_, Some(_)) => merged.pop_front().expect("non-empty"),
            (None, None) => unreachable!("ran out of nodes mid-merge"),
        }
    };
    for _ in 0..n - 1 {
        let a = take(&mut li, &mut merged);
        let b = take(&mut li, &mut merged);
        total += a + b;
        merged.push_back(a + b);
    }
    total
}

/// `huffman_dp` shorthand for callers that only need the length.
pub fn huffman_codelength(ft: &FrequencyTable) -> u64 {
    huffman_dp(ft).0
}

/// Smallest `h` with `2^h ≥ n`; the minimum height of any prefix tree on
/// `n` leaves.
pub fn ceil_log2(n: usize) -> u32 {
    debug_assert!(n >= 1);
    usize::BITS - (n - 1).leading_zeros()
}
