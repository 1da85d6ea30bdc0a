//! Grünwald–Letnikov differentiation of sampled signals.

use crate::error::Result;
use crate::series::{MemoryPolicy, SampledSeries};
use crate::weights::GlWeights;

/// Order-`order` GL derivative of `signal` on its own grid.
///
/// `d_m = h^(-order) * sum_{j=0}^{N(t_m)} w_j * s_{m-j}`; samples before
/// `t = 0` are taken as absent, i.e. zero initial history.
pub fn fractional_derivative(
    signal: &SampledSeries,
    order: f64,
    memory: MemoryPolicy,
) -> Result<SampledSeries> {
    memory.validate_for_step(signal.step())?;
    let weights = GlWeights::new(order, signal.last_index());
    let values = derivative_values(signal.values(), signal.step(), &weights, memory);
    signal.with_values(values)
}

/// Raw-slice kernel behind [`fractional_derivative`]; `weights` must cover
/// at least `values.len() - 1` lags.
pub(crate) fn derivative_values(
    values: &[f64],
    step: f64,
    weights: &GlWeights,
    memory: MemoryPolicy,
) -> Vec<f64> {
    let w = weights.as_slice();
    let scale = step.powf(-weights.order());
    (0..values.len())
        .map(|m| {
            let n = memory.bound(m, step);
            let acc: f64 = (0..=n).map(|j| w[j] * values[m - j]).sum();
            scale * acc
        })
        .collect()
}
