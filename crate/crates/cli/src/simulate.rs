//! The decode-time sweep: evaluate restructuring gains over a grid of
//! memory latency factors, schemes, and relaxations, entirely from the
//! analytical model.

use anyhow::{bail, Result};
use num_traits::One;
use tabcode::exact::SolveOptions;
use tabcode::freq::FrequencyTable;
use tabcode::huffman::huffman_dp;
use tabcode::scheme::{parse_scheme, Cost};
use tabcode::shape::decode_time_from_shape;

use crate::commands::{run_solver, Algo};
use crate::report::{self, SimulateCell};

pub struct SweepSpec {
    /// Scheme texts; a literal `x` in a cost position is replaced by the
    /// latency factor.
    pub templates: Vec<String>,
    /// Total permitted relaxations over the unconstrained length optimum.
    pub epsilons: Vec<Cost>,
    /// Latency factors substituted for `x`, as written on the command line.
    pub factors: Vec<String>,
    pub algo: Algo,
    pub delta: Cost,
    pub opts: SolveOptions,
}

/// Runs the sweep. The relaxation is the total one: the rounded solver
/// gets the optimum itself as its budget and `ε` as its rounding slack,
/// so the achieved length stays within `(1+ε)` of the optimum; the exact
/// solver gets the relaxation in its budget instead.
pub fn run_sweep(ft: &FrequencyTable, spec: &SweepSpec) -> Result<Vec<SimulateCell>> {
    if spec.templates.is_empty() || spec.epsilons.is_empty() || spec.factors.is_empty() {
        bail!("the sweep needs at least one scheme, epsilon, and latency factor");
    }
    let (huff_len, huff_shape) = huffman_dp(ft);
    let mut cells = Vec::new();
    for factor in &spec.factors {
        for template in &spec.templates {
            let text = template.replace('x', factor);
            let bs = parse_scheme(&text)?;
            let huff_decode = decode_time_from_shape(ft, &huff_shape, &bs)?;
            for &eps in &spec.epsilons {
                let budget = match spec.algo {
                    Algo::Approx | Algo::ConstK => huff_len,
                    Algo::Exact | Algo::Fixed => {
                        ((Cost::one() + eps) * Cost::from_integer(huff_len as i128))
                            .floor()
                            .to_integer() as u64
                    }
                };
                let (result, _) =
                    run_solver(spec.algo, ft, &bs, budget, eps, spec.delta, &spec.opts)?;
                let speedup = huff_decode / result.decode_time;
                let realized = Cost::new(result.code_length as i128, huff_len.max(1) as i128)
                    - Cost::one();
                cells.push(SimulateCell {
                    latency_factor: factor.clone(),
                    scheme: template.clone(),
                    epsilon: report::decimal(&eps),
                    huffman_decode: report::exact(&huff_decode),
                    optimized_decode: report::exact(&result.decode_time),
                    speedup: report::decimal(&speedup),
                    realized_relaxation: report::decimal(&realized),
                });
            }
        }
    }
    Ok(cells)
}

/// Speedup as an exact rational, for tests and assertions.
pub fn model_speedup(
    ft: &FrequencyTable,
    scheme_text: &str,
    eps: Cost,
    opts: &SolveOptions,
) -> Result<Cost> {
    let bs = parse_scheme(scheme_text)?;
    let (huff_len, huff_shape) = huffman_dp(ft);
    let huff_decode = decode_time_from_shape(ft, &huff_shape, &bs)?;
    let (result, _) = run_solver(Algo::Approx, ft, &bs, huff_len, eps, Cost::new(1, 4), opts)?;
    Ok(huff_decode / result.decode_time)
}
