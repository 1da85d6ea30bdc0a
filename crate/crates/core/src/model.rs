//! The three-member fractional model
//! `a2 * y^(alpha) + a1 * y^(beta) + a0 * y = u` and its step-by-step
//! numerical solution.

use std::fmt;

use crate::error::{Error, Result};
use crate::series::{MemoryPolicy, SampledSeries};
use crate::weights::GlWeights;

/// Coefficients and derivative orders of the model.
///
/// A model with `a2 == 0` is the two-member equation
/// `a1 * y^(beta) + a0 * y = u`; its `alpha` is ignored and conventionally
/// set equal to `beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParameters {
    pub a2: f64,
    pub a1: f64,
    pub a0: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl ModelParameters {
    pub fn new(a2: f64, a1: f64, a0: f64, alpha: f64, beta: f64) -> Result<Self> {
        let model = Self {
            a2,
            a1,
            a0,
            alpha,
            beta,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn two_member(a1: f64, a0: f64, beta: f64) -> Result<Self> {
        Self::new(0.0, a1, a0, beta, beta)
    }

    pub fn is_two_member(&self) -> bool {
        self.a2 == 0.0
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.a2, self.a1, self.a0, self.alpha, self.beta];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidModel(format!("non-finite parameter in {self}")));
        }
        if self.beta < 0.0 {
            return Err(Error::InvalidModel(format!(
                "beta must be nonnegative, got {}",
                self.beta
            )));
        }
        if !self.is_two_member() && self.alpha <= self.beta {
            return Err(Error::InvalidModel(format!(
                "alpha must exceed beta, got alpha {} and beta {}",
                self.alpha, self.beta
            )));
        }
        Ok(())
    }

    /// Response to a unit step once it has settled, `1 / a0`.
    pub fn steady_state_gain(&self) -> Result<f64> {
        if self.a0 == 0.0 {
            return Err(Error::ZeroA0);
        }
        Ok(1.0 / self.a0)
    }
}

impl fmt::Display for ModelParameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{a2: {}, a1: {}, a0: {}, alpha: {}, beta: {}}}",
            self.a2, self.a1, self.a0, self.alpha, self.beta
        )
    }
}

pub fn steady_state_gain(model: &ModelParameters) -> Result<f64> {
    model.steady_state_gain()
}

/// Solves the model for the given input by the explicit GL recursion.
///
/// The first two outputs are pinned to zero and the recursion runs from
/// `m = 2`, so `u_0` and `u_1` never influence the result.
pub fn simulate(
    model: &ModelParameters,
    input: &SampledSeries,
    memory: MemoryPolicy,
) -> Result<SampledSeries> {
    model.validate()?;
    memory.validate_for_step(input.step())?;
    let kernel = RecursionKernel::new(model, input.step(), input.last_index())?;
    let values = kernel.run(input.values(), memory, input.step());
    input.with_values(values)
}

/// Combined lag weights `k_j = a2 h^-alpha b_j + a1 h^-beta c_j`.
pub(crate) struct RecursionKernel {
    lag: Vec<f64>,
    denominator: f64,
}

impl RecursionKernel {
    pub(crate) fn new(model: &ModelParameters, step: f64, max_lag: usize) -> Result<Self> {
        let beta_scale = model.a1 * step.powf(-model.beta);
        let c = GlWeights::new(model.beta, max_lag);
        let mut lag: Vec<f64> = c.as_slice().iter().map(|w| beta_scale * w).collect();
        let mut alpha_scale = 0.0;
        if !model.is_two_member() {
            alpha_scale = model.a2 * step.powf(-model.alpha);
            let b = GlWeights::new(model.alpha, max_lag);
            for (k, w) in lag.iter_mut().zip(b.as_slice()) {
                *k += alpha_scale * w;
            }
        }
        let denominator = lag[0] + model.a0;
        let largest = alpha_scale.abs().max(beta_scale.abs()).max(model.a0.abs());
        if !denominator.is_finite() || denominator.abs() <= 1e-14 * largest {
            return Err(Error::DegenerateDenominator {
                step,
                value: denominator,
            });
        }
        Ok(Self { lag, denominator })
    }

    pub(crate) fn run(&self, input: &[f64], memory: MemoryPolicy, step: f64) -> Vec<f64> {
        let mut y = vec![0.0; input.len()];
        for m in 2..input.len() {
            let n = memory.bound(m, step);
            let history: f64 = (1..=n).map(|j| self.lag[j] * y[m - j]).sum();
            y[m] = (input[m] - history) / self.denominator;
        }
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn integer_model() -> ModelParameters {
        ModelParameters::new(1.0, 3.0, 2.0, 2.0, 1.0).unwrap()
    }

    fn fractional_model() -> ModelParameters {
        ModelParameters::new(0.8, 0.5, 1.0, 2.2, 0.9).unwrap()
    }

    #[test]
    fn validation() {
        assert!(ModelParameters::new(1.0, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(ModelParameters::new(1.0, 1.0, 1.0, 0.5, 1.0).is_err());
        assert!(ModelParameters::new(1.0, 1.0, 1.0, 1.0, -0.1).is_err());
        assert!(ModelParameters::new(1.0, f64::NAN, 1.0, 2.0, 1.0).is_err());
        let two = ModelParameters::two_member(800.0, 1.4, 0.75).unwrap();
        assert!(two.is_two_member());
    }

    #[test]
    fn gains() {
        assert_eq!(integer_model().steady_state_gain().unwrap(), 0.5);
        assert_eq!(fractional_model().steady_state_gain().unwrap(), 1.0);
        let m = ModelParameters::new(1.0, 1.0, 0.0, 2.0, 1.0).unwrap();
        assert!(matches!(steady_state_gain(&m), Err(Error::ZeroA0)));
    }

    #[test]
    fn zero_input_gives_zero_output() {
        let u = SampledSeries::new(0.1, vec![0.0; 50]).unwrap();
        let y = simulate(&fractional_model(), &u, MemoryPolicy::Full).unwrap();
        assert!(y.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn first_two_outputs_are_zero_and_early_inputs_ignored() {
        let mut values = vec![1.0; 40];
        let u = SampledSeries::new(0.05, values.clone()).unwrap();
        values[0] = 123.0;
        values[1] = -7.0;
        let u_perturbed = SampledSeries::new(0.05, values).unwrap();
        let y = simulate(&integer_model(), &u, MemoryPolicy::Full).unwrap();
        let y2 = simulate(&integer_model(), &u_perturbed, MemoryPolicy::Full).unwrap();
        assert_eq!(y.values()[0], 0.0);
        assert_eq!(y.values()[1], 0.0);
        assert_eq!(y, y2);
    }

    #[test]
    fn integer_step_response_tracks_analytic_solution() {
        let u = SampledSeries::unit_step(0.05, 20.0).unwrap();
        let y = simulate(&integer_model(), &u, MemoryPolicy::Full).unwrap();
        let worst = y
            .times()
            .zip(y.values())
            .map(|(t, v)| (v - (0.5 - (-t).exp() + 0.5 * (-2.0 * t).exp())).abs())
            .fold(0.0, f64::max);
        // first-order method, h = 0.05
        assert!(worst < 0.05, "max error {worst}");
        assert!((y.values().last().unwrap() - 0.5).abs() < 1e-6);
    }

    #[test]
    fn fractional_step_response_overshoots_and_settles() {
        let u = SampledSeries::unit_step(0.05, 20.0).unwrap();
        let y = simulate(&fractional_model(), &u, MemoryPolicy::Full).unwrap();
        let peak = y.values().iter().cloned().fold(f64::MIN, f64::max);
        assert!(peak > 1.05, "peak {peak}");
        let tail = &y.values()[y.len() - 40..];
        assert!(tail.iter().all(|v| (v - 1.0).abs() < 0.1));
    }

    #[test]
    fn degenerate_denominator() {
        // a2 h^-2 + a1 h^-1 + a0 = 1*100 - 20*10 + 100 = 0 at h = 0.1
        let m = ModelParameters::new(1.0, -20.0, 100.0, 2.0, 1.0).unwrap();
        let u = SampledSeries::unit_step(0.1, 1.0).unwrap();
        assert!(matches!(
            simulate(&m, &u, MemoryPolicy::Full),
            Err(Error::DegenerateDenominator { .. })
        ));
    }

    #[test]
    fn two_member_ignores_alpha() {
        let u = SampledSeries::unit_step(0.1, 5.0).unwrap();
        let a = ModelParameters {
            a2: 0.0,
            a1: 2.0,
            a0: 1.0,
            alpha: 0.5,
            beta: 0.5,
        };
        let b = ModelParameters { alpha: 3.0, ..a };
        assert_eq!(
            simulate(&a, &u, MemoryPolicy::Full).unwrap(),
            simulate(&b, &u, MemoryPolicy::Full).unwrap()
        );
    }
}
