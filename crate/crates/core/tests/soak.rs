//! Opt-in deep randomized validation, heavier than the acceptance suite.
//! Run with `cargo test -p tabcode --test soak -- --ignored`.

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tabcode::approx::{solve_constant_hierarchy, solve_pseudo_approx};
use tabcode::dual::solve_fixed_block_levels;
use tabcode::error::Error;
use tabcode::exact::{solve_exact, SolveOptions};
use tabcode::freq::FrequencyTable;
use tabcode::huffman::{ceil_log2, huffman_dp};
use tabcode::oracle::brute_force_optimal;
use tabcode::scheme::{Block, BlockingScheme, Cost};
use tabcode::shape::len_from_shape;

fn random_cost(rng: &mut ChaCha8Rng) -> Cost {
    if rng.gen_bool(0.3) {
        Cost::new(rng.gen_range(1..=40), rng.gen_range(1..=4))
    } else {
        Cost::from_integer(rng.gen_range(1..=25))
    }
}

fn random_scheme(rng: &mut ChaCha8Rng, extend: bool, max_blocks: usize) -> BlockingScheme {
    let m = rng.gen_range(1..=max_blocks);
    let blocks: Vec<Block> = (0..m)
        .map(|_| Block { width: rng.gen_range(1..=4), cost: random_cost(rng) })
        .collect();
    BlockingScheme::new(blocks, extend).unwrap()
}

#[test]
#[ignore = "heavy randomized soak"]
fn exact_never_disagrees_with_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x50a1_0001u64);
    let opts = SolveOptions::default();
    for trial in 0..3000 {
        let n = rng.gen_range(1..=9usize);
        let freqs: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=64)).collect();
        let ft = FrequencyTable::from_counts(&freqs).unwrap();
        let bs = random_scheme(&mut rng, true, 4);
        let (huff, _) = huffman_dp(&ft);
        for num in [100u64, 101, 107, 125, 150, 400] {
            let budget = huff * num / 100;
            let exact = solve_exact(&ft, &bs, budget, &opts).unwrap();
            let (best, _) =
                brute_force_optimal(&ft, &bs, budget, n.max(2) as u32 - 1).unwrap();
            assert_eq!(exact.0.decode_time, best, "trial {trial} n={n} budget={budget}");
        }
    }
}

#[test]
#[ignore = "heavy randomized soak"]
fn guarantees_hold_across_the_parameter_grid() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x50a1_0002u64);
    let opts = SolveOptions::default();
    let one = Cost::one();
    for trial in 0..400 {
        let n = rng.gen_range(2..=8usize);
        let freqs: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=64)).collect();
        let ft = FrequencyTable::from_counts(&freqs).unwrap();
        let bs = random_scheme(&mut rng, true, 3);
        let (huff, _) = huffman_dp(&ft);
        for num in [100u64, 110, 135] {
            let budget = huff * num / 100;
            let exact = solve_exact(&ft, &bs, budget, &opts).unwrap().0;
            for eps_q in [(1i128, 50i128), (1, 10), (1, 3), (1, 1)] {
                let eps = Cost::new(eps_q.0, eps_q.1);
                let (rep, shape) =
                    solve_pseudo_approx(&ft, &bs, budget, eps, &opts).unwrap();
                let len = len_from_shape(&ft, &shape).unwrap();
                assert!(
                    Cost::from_integer(len as i128)
                        <= (one + eps) * Cost::from_integer(budget as i128),
                    "trial {trial}"
                );
                assert!(rep.decode_time <= exact.decode_time, "trial {trial}");

                for delta_q in [(1i128, 4i128), (1, 2), (1, 1)] {
                    let delta = Cost::new(delta_q.0, delta_q.1);
                    let (rep, shape) =
                        solve_constant_hierarchy(&ft, &bs, budget, eps, delta, &opts).unwrap();
                    let len = len_from_shape(&ft, &shape).unwrap();
                    assert!(
                        Cost::from_integer(len as i128)
                            <= (one + eps) * (one + delta) * Cost::from_integer(budget as i128),
                        "trial {trial}"
                    );
                    assert!(
                        rep.decode_time <= (one + delta) * exact.decode_time,
                        "trial {trial}"
                    );
                }
            }
        }
    }
}

#[test]
#[ignore = "heavy randomized soak"]
fn dual_solver_agrees_up_to_three_blocks() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x50a1_0003u64);
    let opts = SolveOptions::default();
    let mut agreements = 0usize;
    while agreements < 1500 {
        let n = rng.gen_range(2..=8usize);
        let freqs: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=64)).collect();
        let ft = FrequencyTable::from_counts(&freqs).unwrap();
        let bs = random_scheme(&mut rng, false, 3);
        let width: u32 = bs.blocks().iter().map(|b| b.width).sum();
        if width < ceil_log2(n) {
            continue;
        }
        let (huff, _) = huffman_dp(&ft);
        for num in [90u64, 100, 120, 160] {
            let budget = huff * num / 100;
            let exact = solve_exact(&ft, &bs, budget, &opts);
            let dual = solve_fixed_block_levels(&ft, &bs, budget, &opts);
            match (exact, dual) {
                (Ok((a, _)), Ok((b, _))) => {
                    assert_eq!(a.decode_time, b.decode_time, "n={n} budget={budget}");
                    assert_eq!(a.code_length, b.code_length, "n={n} budget={budget}");
                    agreements += 1;
                }
                (Err(Error::Infeasible { .. }), Err(Error::NoValidTree)) => agreements += 1,
                (exact, dual) => panic!("split verdicts: {exact:?} vs {dual:?}"),
            }
        }
    }
}
