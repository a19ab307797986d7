//! Cost functions over realized codes, and the report the solvers emit.

use num_traits::Zero;

use crate::error::Result;
use crate::freq::FrequencyTable;
use crate::scheme::{BlockingScheme, Cost};
use crate::tree::PrefixCode;

/// Frequency-weighted code length of `code` over `ft`, in bits.
pub fn code_length(ft: &FrequencyTable, code: &PrefixCode) -> u64 {
    let depths = code.depth_vector();
    let mut total = 0u64;
    for rank in 0..ft.len() {
        total += ft.freqs()[rank] * depths[ft.original_index(rank)] as u64;
    }
    total
}

/// Frequency-weighted decode time of `code` under `bs`: each symbol pays
/// the cumulative access cost of the block level its depth lands in.
pub fn decode_time(ft: &FrequencyTable, code: &PrefixCode, bs: &BlockingScheme) -> Result<Cost> {
    let depths = code.depth_vector();
    let mut total = Cost::zero();
    for rank in 0..ft.len() {
        let d = depths[ft.original_index(rank)];
        let (_, cum) = bs.block_of_depth(d)?;
        total += cum * Cost::from_integer(ft.freqs()[rank] as i128);
    }
    Ok(total)
}

/// What a solver found: the analytical cost pair for the chosen tree,
/// how the symbols spread over block levels, and the budget asked for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostReport {
    pub code_length: u64,
    pub decode_time: Cost,
    /// Symbols per block level, index 0 ↔ block 1.
    pub per_block_counts: Vec<u64>,
    pub budget: u64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::TreeShape;

    fn fig3() -> (FrequencyTable, BlockingScheme) {
        (
            FrequencyTable::from_counts(&[25, 9, 6, 4, 1, 1]).unwrap(),
            BlockingScheme::from_ints(&[(2, 1), (3, 5)], false).unwrap(),
        )
    }

    #[test]
    fn code_length_examples() {
        let (ft, _) = fig3();
        let deep = PrefixCode::from_shape(&ft, &TreeShape::new(vec![5, 4, 3, 2, 1, 0], 6).unwrap())
            .unwrap();
        let wide =
            PrefixCode::from_shape(&ft, &TreeShape::new(vec![5, 4, 2, 1, 0], 6).unwrap()).unwrap();
        assert_eq!(code_length(&ft, &deep), 87);
        assert_eq!(code_length(&ft, &wide), 100);

        let two = FrequencyTable::from_counts(&[3, 4]).unwrap();
        let pair = PrefixCode::from_shape(&two, &TreeShape::new(vec![1, 0], 2).unwrap()).unwrap();
        assert_eq!(code_length(&two, &pair), 7);
    }

    #[test]
    fn decode_time_examples() {
        let (ft, bs) = fig3();
        let deep = PrefixCode::from_shape(&ft, &TreeShape::new(vec![5, 4, 3, 2, 1, 0], 6).unwrap())
            .unwrap();
        let wide =
            PrefixCode::from_shape(&ft, &TreeShape::new(vec![5, 4, 2, 1, 0], 6).unwrap()).unwrap();
        assert_eq!(decode_time(&ft, &deep, &bs).unwrap(), Cost::from_integer(106));
        assert_eq!(decode_time(&ft, &wide, &bs).unwrap(), Cost::from_integer(76));
    }

    #[test]
    fn single_block_decode_time_is_total_frequency() {
        let (ft, _) = fig3();
        let flat = BlockingScheme::from_ints(&[(8, 1)], false).unwrap();
        let deep = PrefixCode::from_shape(&ft, &TreeShape::new(vec![5, 4, 3, 2, 1, 0], 6).unwrap())
            .unwrap();
        assert_eq!(
            decode_time(&ft, &deep, &flat).unwrap(),
            Cost::from_integer(ft.total() as i128)
        );
    }
}
