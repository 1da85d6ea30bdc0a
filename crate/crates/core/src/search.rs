//! Identification of all five parameters: least-squares coefficients for
//! each candidate order pair, ranked by the output-error criterion, with
//! the order intervals shrunk around the best pair round after round.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::derivative::derivative_values;
use crate::error::{Error, Result};
use crate::fit::{fit_three_member, fit_two_member, mean_squared_deviation, ORDER_COLLISION};
use crate::model::{ModelParameters, RecursionKernel};
use crate::series::{MemoryPolicy, SampledSeries};
use crate::weights::GlWeights;

/// Refinement needs at least this many subintervals per nondegenerate
/// interval; with three kept subintervals out of `n` the width then shrinks
/// by `3/n <= 3/4` per round.
pub const MIN_REFINING_SUBDIVISIONS: usize = 4;

pub const DEFAULT_EPSILON: f64 = 0.05;
pub const DEFAULT_ACCURACY: f64 = 1e-4;
pub const DEFAULT_MAX_ROUNDS: usize = 20;

/// Closed interval `[min, max]`; `min == max` pins the value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub min: f64,
    pub max: f64,
}

impl Interval {
    pub fn new(min: f64, max: f64) -> Result<Self> {
        let iv = Self { min, max };
        iv.validate()?;
        Ok(iv)
    }

    pub fn point(value: f64) -> Self {
        Self {
            min: value,
            max: value,
        }
    }

    pub fn width(&self) -> f64 {
        self.max - self.min
    }

    pub fn is_point(&self) -> bool {
        self.width() == 0.0
    }

    pub fn contains(&self, v: f64) -> bool {
        v >= self.min && v <= self.max
    }

    fn validate(&self) -> Result<()> {
        if !(self.min.is_finite() && self.max.is_finite()) || self.min > self.max {
            return Err(Error::InvalidConfig(format!("malformed interval {self}")));
        }
        Ok(())
    }

    /// Midpoints of `n` equal subintervals (the point itself for a point
    /// interval).
    fn midpoints(&self, n: usize) -> Vec<f64> {
        if self.is_point() {
            return vec![self.min];
        }
        let s = self.width() / n as f64;
        (0..n).map(|i| self.min + (i as f64 + 0.5) * s).collect()
    }

    /// The subinterval holding `v` widened by one neighbour on each side,
    /// clipped to `self`.
    fn refine_around(&self, v: f64, n: usize) -> Interval {
        if self.is_point() {
            return *self;
        }
        let s = self.width() / n as f64;
        let i = (((v - self.min) / s).floor().max(0.0) as usize).min(n - 1);
        Interval {
            min: (self.min + (i as f64 - 1.0) * s).max(self.min),
            max: (self.min + (i as f64 + 2.0) * s).min(self.max),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.min, self.max)
    }
}

/// `"min:max"`, or a single number for a point interval.
impl FromStr for Interval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidConfig(format!("cannot parse interval bound {t:?}")))
        };
        match s.split_once(':') {
            Some((lo, hi)) => Interval::new(parse(lo)?, parse(hi)?),
            None => {
                let v = parse(s)?;
                Interval::new(v, v)
            }
        }
    }
}

/// Search intervals for both orders.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalPair {
    pub alpha: Interval,
    pub beta: Interval,
}

/// `"alpha_min:alpha_max,beta_min:beta_max"`.
impl FromStr for IntervalPair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s.split_once(',').ok_or_else(|| {
            Error::InvalidConfig(format!(
                "expected alpha_min:alpha_max,beta_min:beta_max, got {s:?}"
            ))
        })?;
        Ok(Self {
            alpha: a.parse()?,
            beta: b.parse()?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ModelKind {
    /// `a2 y^(alpha) + a1 y^(beta) + a0 y = u`, both orders searched.
    #[default]
    ThreeMember,
    /// `a1 y^(beta) + a0 y = u`; only beta is searched.
    TwoMember,
    /// Three-member model at orders pinned by point intervals.
    FixedOrders,
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "three-member" | "three" => Ok(ModelKind::ThreeMember),
            "two-member" | "two" => Ok(ModelKind::TwoMember),
            "fixed-orders" | "fixed" => Ok(ModelKind::FixedOrders),
            other => Err(Error::InvalidConfig(format!("unknown model kind {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub alpha_interval: Interval,
    pub beta_interval: Interval,
    /// Fineness of division; the first round uses `2 * width / epsilon`
    /// subintervals per order.
    pub epsilon: f64,
    /// Stop once both intervals are at most this wide.
    pub accuracy: f64,
    pub max_rounds: usize,
    pub model_kind: ModelKind,
    /// Extra starting interval pairs tried after the primary one.
    pub restarts: Vec<IntervalPair>,
}

impl SearchConfig {
    pub fn new(alpha_interval: Interval, beta_interval: Interval) -> Self {
        Self {
            alpha_interval,
            beta_interval,
            epsilon: DEFAULT_EPSILON,
            accuracy: DEFAULT_ACCURACY,
            max_rounds: DEFAULT_MAX_ROUNDS,
            model_kind: ModelKind::ThreeMember,
            restarts: Vec::new(),
        }
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_accuracy(mut self, accuracy: f64) -> Self {
        self.accuracy = accuracy;
        self
    }

    pub fn with_max_rounds(mut self, max_rounds: usize) -> Self {
        self.max_rounds = max_rounds;
        self
    }

    pub fn with_model_kind(mut self, kind: ModelKind) -> Self {
        self.model_kind = kind;
        self
    }

    pub fn with_restart(mut self, pair: IntervalPair) -> Self {
        self.restarts.push(pair);
        self
    }

    /// Subinterval count `ceil(2 * width / epsilon)`, at least 1.
    pub fn subdivisions(&self, interval: &Interval) -> usize {
        let n = (2.0 * interval.width() / self.epsilon).ceil();
        if n.is_finite() && n >= 1.0 {
            n as usize
        } else {
            1
        }
    }

    /// The primary pair followed by the restarts.
    pub fn starts(&self) -> Vec<IntervalPair> {
        let mut starts = vec![IntervalPair {
            alpha: self.alpha_interval,
            beta: self.beta_interval,
        }];
        starts.extend(self.restarts.iter().copied());
        starts
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        if !(self.accuracy.is_finite() && self.accuracy > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "accuracy must be positive, got {}",
                self.accuracy
            )));
        }
        if self.max_rounds == 0 {
            return Err(Error::InvalidConfig("max_rounds must be at least 1".into()));
        }
        for pair in self.starts() {
            pair.alpha.validate()?;
            pair.beta.validate()?;
            if pair.beta.min < 0.0 {
                return Err(Error::InvalidConfig(format!(
                    "beta interval {} reaches below zero",
                    pair.beta
                )));
            }
            match self.model_kind {
                ModelKind::TwoMember => {}
                ModelKind::ThreeMember | ModelKind::FixedOrders => {
                    if pair.alpha.max <= pair.beta.min {
                        return Err(Error::InvalidConfig(format!(
                            "alpha interval {} lies entirely below beta interval {}",
                            pair.alpha, pair.beta
                        )));
                    }
                    if self.model_kind == ModelKind::FixedOrders
                        && !(pair.alpha.is_point() && pair.beta.is_point())
                    {
                        return Err(Error::InvalidConfig(
                            "fixed-orders mode needs point intervals for alpha and beta".into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// One evaluated order pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub alpha: f64,
    pub beta: f64,
    pub criterion: f64,
}

impl Evaluation {
    /// Lower criterion first, then smaller alpha, then smaller beta.
    fn rank(&self, other: &Evaluation) -> Ordering {
        self.criterion
            .total_cmp(&other.criterion)
            .then(self.alpha.total_cmp(&other.alpha))
            .then(self.beta.total_cmp(&other.beta))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentificationResult {
    pub model: ModelParameters,
    /// Criterion of `model` against the measured output.
    pub criterion: f64,
    /// Refinement rounds run by the winning start.
    pub rounds: usize,
    /// Every successfully evaluated pair of the winning start, round by
    /// round in grid order.
    pub trace: Vec<Evaluation>,
    /// Best pair so far after each round of the winning start.
    pub round_best: Vec<Evaluation>,
    /// 0 for the primary intervals, `k` for `restarts[k - 1]`.
    pub restart_index: usize,
    /// Search intervals of the winning start.
    pub start: IntervalPair,
}

/// Finds the model parameters that best reproduce `experimental_output`.
pub fn identify(
    experimental_output: &SampledSeries,
    input: &SampledSeries,
    config: &SearchConfig,
    memory: MemoryPolicy,
) -> Result<IdentificationResult> {
    experimental_output.ensure_aligned(input)?;
    memory.validate_for_step(input.step())?;
    config.validate()?;

    let problem = Problem {
        output: experimental_output,
        input,
        memory,
        kind: config.model_kind,
    };
    let mut best: Option<IdentificationResult> = None;
    for (index, start) in config.starts().into_iter().enumerate() {
        let Some(result) = problem.search(start, config, index) else {
            continue;
        };
        let better = match &best {
            None => true,
            Some(b) => result.criterion < b.criterion,
        };
        if better {
            best = Some(result);
        }
    }
    best.ok_or(Error::NoFeasibleCandidate)
}

struct Problem<'a> {
    output: &'a SampledSeries,
    input: &'a SampledSeries,
    memory: MemoryPolicy,
    kind: ModelKind,
}

struct Incumbent {
    eval: Evaluation,
    model: ModelParameters,
}

impl Problem<'_> {
    fn search(
        &self,
        start: IntervalPair,
        config: &SearchConfig,
        restart_index: usize,
    ) -> Option<IdentificationResult> {
        let two_member = self.kind == ModelKind::TwoMember;
        let counts = |iv: &Interval| {
            if iv.is_point() {
                1
            } else {
                config.subdivisions(iv).max(MIN_REFINING_SUBDIVISIONS)
            }
        };
        let n_alpha = if two_member { 1 } else { counts(&start.alpha) };
        let n_beta = counts(&start.beta);

        let mut alpha_iv = start.alpha;
        let mut beta_iv = start.beta;
        let mut incumbent: Option<Incumbent> = None;
        let mut trace = Vec::new();
        let mut round_best = Vec::new();
        let mut rounds = 0;

        while rounds < config.max_rounds {
            rounds += 1;
            let alphas = if two_member {
                vec![f64::NAN]
            } else {
                alpha_iv.midpoints(n_alpha)
            };
            let betas = beta_iv.midpoints(n_beta);
            for found in self.evaluate_round(&alphas, &betas) {
                trace.push(found.eval);
                let replace = match &incumbent {
                    None => true,
                    Some(inc) => found.eval.rank(&inc.eval) == Ordering::Less,
                };
                if replace {
                    incumbent = Some(found);
                }
            }
            let inc = incumbent.as_ref()?;
            round_best.push(inc.eval);

            if !two_member {
                alpha_iv = alpha_iv.refine_around(inc.eval.alpha, n_alpha);
            }
            beta_iv = beta_iv.refine_around(inc.eval.beta, n_beta);
            let alpha_done = two_member || alpha_iv.width() <= config.accuracy;
            if alpha_done && beta_iv.width() <= config.accuracy {
                break;
            }
        }

        let inc = incumbent?;
        Some(IdentificationResult {
            model: inc.model,
            criterion: inc.eval.criterion,
            rounds,
            trace,
            round_best,
            restart_index,
            start,
        })
    }

    /// Fits and scores every feasible pair; failures are dropped. Output is
    /// in alpha-major grid order regardless of scheduling.
    fn evaluate_round(&self, alphas: &[f64], betas: &[f64]) -> Vec<Incumbent> {
        let y = self.output.values();
        let step = self.output.step();
        let n = self.output.last_index();
        let derive = |order: f64| {
            derivative_values(y, step, &GlWeights::new(order, n), self.memory)
        };
        let alpha_derivs: Vec<Option<Vec<f64>>> = alphas
            .par_iter()
            .map(|&a| (!a.is_nan()).then(|| derive(a)))
            .collect();
        let beta_derivs: Vec<Vec<f64>> = betas.par_iter().map(|&b| derive(b)).collect();

        let pairs: Vec<(usize, usize)> = (0..alphas.len())
            .flat_map(|i| (0..betas.len()).map(move |k| (i, k)))
            .collect();
        pairs
            .par_iter()
            .filter_map(|&(i, k)| {
                let beta = betas[k];
                let fit = match &alpha_derivs[i] {
                    None => fit_two_member(&beta_derivs[k], y, self.input.values(), beta),
                    Some(ya) => {
                        let alpha = alphas[i];
                        if alpha - beta < ORDER_COLLISION {
                            return None;
                        }
                        fit_three_member(ya, &beta_derivs[k], y, self.input.values(), alpha, beta)
                    }
                }
                .ok()?;
                let model = fit.model().ok()?;
                let criterion = self.criterion_of(&model).ok()?;
                criterion.is_finite().then_some(Incumbent {
                    eval: Evaluation {
                        alpha: model.alpha,
                        beta: model.beta,
                        criterion,
                    },
                    model,
                })
            })
            .collect()
    }

    fn criterion_of(&self, model: &ModelParameters) -> Result<f64> {
        let step = self.input.step();
        let kernel = RecursionKernel::new(model, step, self.input.last_index())?;
        let simulated = kernel.run(self.input.values(), self.memory, step);
        Ok(mean_squared_deviation(self.output.values(), &simulated))
    }
}
