//! Uniformly sampled signals and the memory window used by the
//! Grünwald–Letnikov sums.

use crate::error::{Error, Result};

/// Fewest samples a series may hold. The fitting step works with samples
/// from index 2 onwards, so anything shorter carries no information.
pub const MIN_SAMPLES: usize = 3;

/// A signal sampled at `t_m = m * step` for `m = 0..=M`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSeries {
    step: f64,
    values: Vec<f64>,
}

impl SampledSeries {
    pub fn new(step: f64, values: Vec<f64>) -> Result<Self> {
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::NonPositiveStep(step));
        }
        if values.len() < MIN_SAMPLES {
            return Err(Error::TooShort {
                len: values.len(),
                min: MIN_SAMPLES,
            });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample(i));
        }
        Ok(Self { step, values })
    }

    /// Samples `f(t_m)` on `m = 0..len`.
    pub fn from_fn(step: f64, len: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = (0..len).map(|m| f(m as f64 * step)).collect();
        Self::new(step, values)
    }

    /// Unit step input, value 1 at every sample, spanning `[0, horizon]`.
    pub fn unit_step(step: f64, horizon: f64) -> Result<Self> {
        Self::constant(step, horizon, 1.0)
    }

    pub fn constant(step: f64, horizon: f64, value: f64) -> Result<Self> {
        let len = samples_for_horizon(step, horizon)?;
        Self::new(step, vec![value; len])
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Index of the last sample, `M`.
    pub fn last_index(&self) -> usize {
        self.values.len() - 1
    }

    /// `M * h`, the time of the last sample.
    pub fn horizon(&self) -> f64 {
        self.last_index() as f64 * self.step
    }

    pub fn time(&self, m: usize) -> f64 {
        m as f64 * self.step
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.values.len()).map(move |m| self.time(m))
    }

    /// Same grid, new values.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        if values.len() != self.values.len() {
            return Err(Error::LengthMismatch(format!(
                "expected {} samples, got {}",
                self.values.len(),
                values.len()
            )));
        }
        Self::new(self.step, values)
    }

    /// Checks that two series share a grid: same length, same step.
    pub fn ensure_aligned(&self, other: &SampledSeries) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(format!(
                "{} samples vs {} samples",
                self.len(),
                other.len()
            )));
        }
        if !steps_match(self.step, other.step) {
            return Err(Error::LengthMismatch(format!(
                "step {} vs step {}",
                self.step, other.step
            )));
        }
        Ok(())
    }
}

fn steps_match(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
}

/// Number of samples covering `[0, horizon]` at spacing `step`.
pub fn samples_for_horizon(step: f64, horizon: f64) -> Result<usize> {
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::NonPositiveStep(step));
    }
    if !(horizon.is_finite() && horizon >= 0.0) {
        return Err(Error::InvalidConfig(format!(
            "horizon must be finite and nonnegative, got {horizon}"
        )));
    }
    Ok((horizon / step).round() as usize + 1)
}

/// How much history the fractional sums see.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum MemoryPolicy {
    /// Every sample back to `t = 0`.
    #[default]
    Full,
    /// Only the last `length` time units.
    Truncated { length: f64 },
}

impl MemoryPolicy {
    pub fn truncated(length: f64) -> Result<Self> {
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "memory length must be finite and positive, got {length}"
            )));
        }
        Ok(MemoryPolicy::Truncated { length })
    }

    /// Rejects a window shorter than one step.
    pub fn validate_for_step(&self, step: f64) -> Result<()> {
        match *self {
            MemoryPolicy::Full => Ok(()),
            MemoryPolicy::Truncated { length } => {
                if !(length.is_finite() && length > 0.0) {
                    return Err(Error::InvalidConfig(format!(
                        "memory length must be finite and positive, got {length}"
                    )));
                }
                if window_samples(length, step) < 1 {
                    return Err(Error::MemoryTooShort { length, step });
                }
                Ok(())
            }
        }
    }

    /// Upper summation index `N(t_m) = min(m, floor(L/h))`.
    pub fn bound(&self, m: usize, step: f64) -> usize {
        match *self {
            MemoryPolicy::Full => m,
            MemoryPolicy::Truncated { length } => m.min(window_samples(length, step)),
        }
    }
}

/// `floor(L / h)` with a little slack so that e.g. `1.0 / 0.1` counts as 10.
fn window_samples(length: f64, step: f64) -> usize {
    let ratio = length / step;
    (ratio + 1e-9 * ratio.max(1.0)).floor() as usize
}
