//! Least-squares estimation of the linear coefficients at fixed orders and
//! the output-error criterion used to rank order pairs.

use crate::derivative::derivative_values;
use crate::error::{Error, Result};
use crate::linalg::solve_normal_equations;
use crate::model::ModelParameters;
use crate::series::{MemoryPolicy, SampledSeries};
use crate::weights::GlWeights;

/// Orders closer than this are treated as identical.
pub const ORDER_COLLISION: f64 = 1e-9;

/// Coefficients minimizing the summed squared equation error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFitResult {
    pub a2: f64,
    pub a1: f64,
    pub a0: f64,
    pub alpha: f64,
    pub beta: f64,
    /// Mean squared equation error over all samples.
    pub residual_norm: f64,
}

impl LinearFitResult {
    pub fn model(&self) -> Result<ModelParameters> {
        ModelParameters::new(self.a2, self.a1, self.a0, self.alpha, self.beta)
    }
}

/// Fits `a2, a1, a0` of the three-member model with the orders held fixed.
pub fn fit_linear_coefficients(
    output: &SampledSeries,
    input: &SampledSeries,
    alpha: f64,
    beta: f64,
    memory: MemoryPolicy,
) -> Result<LinearFitResult> {
    output.ensure_aligned(input)?;
    memory.validate_for_step(output.step())?;
    check_orders(alpha, beta)?;
    let n = output.last_index();
    let ya = derivative_values(output.values(), output.step(), &GlWeights::new(alpha, n), memory);
    let yb = derivative_values(output.values(), output.step(), &GlWeights::new(beta, n), memory);
    fit_three_member(&ya, &yb, output.values(), input.values(), alpha, beta)
}

/// Fits `a1, a0` of the two-member model `a1 y^(beta) + a0 y = u`.
pub fn fit_two_member_coefficients(
    output: &SampledSeries,
    input: &SampledSeries,
    beta: f64,
    memory: MemoryPolicy,
) -> Result<LinearFitResult> {
    output.ensure_aligned(input)?;
    memory.validate_for_step(output.step())?;
    if !(beta.is_finite() && beta >= 0.0) {
        return Err(Error::InvalidModel(format!("beta must be nonnegative, got {beta}")));
    }
    let n = output.last_index();
    let yb = derivative_values(output.values(), output.step(), &GlWeights::new(beta, n), memory);
    fit_two_member(&yb, output.values(), input.values(), beta)
}

fn check_orders(alpha: f64, beta: f64) -> Result<()> {
    if !(alpha.is_finite() && beta.is_finite()) {
        return Err(Error::InvalidModel("orders must be finite".into()));
    }
    if (alpha - beta).abs() < ORDER_COLLISION {
        // identical regressor columns
        return Err(Error::SingularNormalMatrix { ratio: 0.0 });
    }
    if alpha < beta || beta < 0.0 {
        return Err(Error::InvalidModel(format!(
            "orders must satisfy alpha > beta >= 0, got alpha {alpha}, beta {beta}"
        )));
    }
    Ok(())
}

/// Gram matrix and right-hand side over `m = 0..=M`.
pub(crate) fn normal_equations<const N: usize>(
    regressors: [&[f64]; N],
    input: &[f64],
) -> ([[f64; N]; N], [f64; N]) {
    let mut gram = [[0.0; N]; N];
    let mut rhs = [0.0; N];
    for i in 0..N {
        for j in i..N {
            let s: f64 = regressors[i].iter().zip(regressors[j]).map(|(p, q)| p * q).sum();
            gram[i][j] = s;
            gram[j][i] = s;
        }
        rhs[i] = regressors[i].iter().zip(input).map(|(p, q)| p * q).sum();
    }
    (gram, rhs)
}

fn mean_squared_equation_error<const N: usize>(
    regressors: [&[f64]; N],
    coefficients: &[f64; N],
    input: &[f64],
) -> f64 {
    let total: f64 = input
        .iter()
        .enumerate()
        .map(|(m, u)| {
            let lhs: f64 = (0..N).map(|i| coefficients[i] * regressors[i][m]).sum();
            (lhs - u).powi(2)
        })
        .sum();
    total / input.len() as f64
}

pub(crate) fn fit_three_member(
    ya: &[f64],
    yb: &[f64],
    y: &[f64],
    u: &[f64],
    alpha: f64,
    beta: f64,
) -> Result<LinearFitResult> {
    let regressors = [ya, yb, y];
    let (gram, rhs) = normal_equations(regressors, u);
    let [a2, a1, a0] = solve_normal_equations(&gram, &rhs)?;
    Ok(LinearFitResult {
        a2,
        a1,
        a0,
        alpha,
        beta,
        residual_norm: mean_squared_equation_error(regressors, &[a2, a1, a0], u),
    })
}

pub(crate) fn fit_two_member(yb: &[f64], y: &[f64], u: &[f64], beta: f64) -> Result<LinearFitResult> {
    let regressors = [yb, y];
    let (gram, rhs) = normal_equations(regressors, u);
    let [a1, a0] = solve_normal_equations(&gram, &rhs)?;
    Ok(LinearFitResult {
        a2: 0.0,
        a1,
        a0,
        alpha: beta,
        beta,
        residual_norm: mean_squared_equation_error(regressors, &[a1, a0], u),
    })
}

/// Mean squared deviation between measured and modelled outputs.
pub fn approximation_criterion(experimental: &SampledSeries, modeled: &SampledSeries) -> Result<f64> {
    experimental.ensure_aligned(modeled)?;
    Ok(mean_squared_deviation(experimental.values(), modeled.values()))
}

pub(crate) fn mean_squared_deviation(a: &[f64], b: &[f64]) -> f64 {
    let total: f64 = a.iter().zip(b).map(|(p, q)| (p - q).powi(2)).sum();
    total / a.len() as f64
}
