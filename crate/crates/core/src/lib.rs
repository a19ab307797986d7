//! Prefix codes tuned for fast table-driven decoding.
//!
//! Decoders that consume several bits per step through chained lookup
//! tables pay a different price per tree level: deep codewords cross into
//! tables held in slower memory. Given the per-table widths and access
//! costs, this crate finds the prefix tree with the smallest
//! frequency-weighted decode time subject to a cap on the
//! frequency-weighted code length, then actually builds the tables and
//! runs them.
//!
//! The solvers:
//!
//! - [`huffman::huffman_dp`] — the unconstrained length optimum (baseline),
//! - [`exact::solve_exact`] — the decode-time optimum under a hard budget,
//! - [`dual::solve_fixed_block_levels`] — the same optimum for a fixed
//!   number of block levels, polynomial in the alphabet size,
//! - [`approx::solve_pseudo_approx`] — budget relaxed by `1+ε`, decode
//!   time never worse than the strict optimum,
//! - [`approx::solve_constant_hierarchy`] — additionally bounds the tree
//!   height when the scheme has few distinct access costs.
//!
//! Everything is exact rational/integer arithmetic; no tolerances.
//!
//! ```
//! use tabcode::{solve_exact, BlockingScheme, FrequencyTable, PrefixCode, SolveOptions};
//!
//! let ft = FrequencyTable::from_counts(&[25, 9, 6, 4, 1, 1]).unwrap();
//! let bs: BlockingScheme = "(2,1),(3,5),...".parse().unwrap();
//! let (report, shape) = solve_exact(&ft, &bs, 100, &SolveOptions::default()).unwrap();
//! assert_eq!(report.decode_time, tabcode::Cost::from_integer(76));
//! let code = PrefixCode::from_shape(&ft, &shape).unwrap();
//! assert_eq!(code.depth_vector(), vec![2, 2, 2, 3, 4, 4]);
//! ```

pub mod approx;
pub mod codec;
pub mod cost;
mod dp;
pub mod dual;
pub mod error;
pub mod exact;
pub mod freq;
pub mod huffman;
pub mod oracle;
pub mod scheme;
pub mod shape;
pub mod tree;

pub use cost::{code_length, decode_time, CostReport};
pub use error::{Error, Result};
pub use exact::{solve_exact, SolveOptions};
pub use freq::{FrequencyTable, Symbol};
pub use scheme::{parse_cost, parse_scheme, BlockingScheme, Cost, LevelCostProfile};
pub use shape::{decode_time_from_shape, len_from_shape, per_block_counts, TreeShape};
pub use tree::{CodeEntry, PrefixCode};
