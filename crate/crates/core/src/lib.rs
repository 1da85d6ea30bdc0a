//! Simulation and identification of fractional-order dynamical systems
//! described by the three-member equation
//!
//! ```text
//! a2 * y^(alpha)(t) + a1 * y^(beta)(t) + a0 * y(t) = u(t)
//! ```
//!
//! with real orders `alpha > beta >= 0` and zero initial conditions.
//!
//! * [`weights`] and [`derivative`] discretize fractional derivatives with
//!   Grünwald–Letnikov sums.
//! * [`model`] solves the equation step by step for a given input.
//! * [`fit`] estimates `a2, a1, a0` for fixed orders by least squares.
//! * [`search`] finds the orders as well, by shrinking interval search
//!   over `(alpha, beta)`.
//! * [`io`] and [`cli`] read and write series files and reports and back
//!   the `fracid` binary.
//!
//! ```
//! use fracid::{identify, simulate, Interval, MemoryPolicy, ModelParameters, SampledSeries, SearchConfig};
//!
//! let truth = ModelParameters::new(0.8, 0.5, 1.0, 2.2, 0.9)?;
//! let input = SampledSeries::unit_step(0.1, 10.0)?;
//! let output = simulate(&truth, &input, MemoryPolicy::Full)?;
//!
//! let config = SearchConfig::new(Interval::point(2.2), Interval::point(0.9));
//! let found = identify(&output, &input, &config, MemoryPolicy::Full)?;
//! assert!((found.model.a2 - 0.8).abs() < 1e-8);
//! # Ok::<(), fracid::Error>(())
//! ```

pub mod cli;
pub mod derivative;
pub mod error;
pub mod fit;
pub mod io;
pub mod linalg;
pub mod model;
pub mod search;
pub mod series;
pub mod weights;

pub use derivative::fractional_derivative;
pub use error::{Error, Result};
pub use fit::{
    approximation_criterion, fit_linear_coefficients, fit_two_member_coefficients, LinearFitResult,
};
pub use model::{simulate, steady_state_gain, ModelParameters};
pub use search::{
    identify, Evaluation, IdentificationResult, Interval, IntervalPair, ModelKind, SearchConfig,
};
pub use series::{MemoryPolicy, SampledSeries};
pub use weights::{gl_weights, GlWeights};
