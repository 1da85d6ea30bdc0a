//! Batch front end behind the `fracid` binary.
//!
//! Command-line arguments are parsed into a [`RunConfig`], validated, and
//! dispatched to one of the `run_*` functions. Numbers use dot decimals.
//! Measured data must start from rest: the model assumes zero initial
//! conditions, so subtract any initial offset from the output (and input)
//! before fitting.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::derivative::fractional_derivative;
use crate::error::{Error, Result};
use crate::fit::{
    approximation_criterion, fit_linear_coefficients, fit_two_member_coefficients,
};
use crate::io::{self, load_series};
use crate::model::{simulate, ModelParameters};
use crate::search::{identify, Interval, IntervalPair, ModelKind, SearchConfig};
use crate::series::{MemoryPolicy, SampledSeries};

pub const DEFAULT_STEP: f64 = 0.05;
pub const DEFAULT_HORIZON: f64 = 20.0;

#[derive(Debug, Parser)]
#[command(name = "fracid", version, about = "Simulate and identify fractional-order systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Step response (or response to a file input) of a given model.
    Simulate(SimulateArgs),
    /// Grünwald–Letnikov derivative of a series.
    Derive(DeriveArgs),
    /// Least-squares coefficients at fixed orders.
    Fit(FitArgs),
    /// Coefficients and orders by interval search.
    Identify(IdentifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MemoryMode {
    Full,
    Truncated,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Series file: time, input[, output] per line.
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    /// Where to write the resulting series; stdout when omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Step size of a synthesized unit-step input.
    #[arg(long, default_value_t = DEFAULT_STEP)]
    pub step: f64,
    /// Horizon of a synthesized unit-step input.
    #[arg(long, default_value_t = DEFAULT_HORIZON)]
    pub horizon: f64,
    #[arg(long, value_enum, default_value_t = MemoryMode::Full)]
    pub memory: MemoryMode,
    /// Memory length in time units; implies truncated memory.
    #[arg(long)]
    pub memory_length: Option<f64>,
}

impl CommonArgs {
    fn memory_policy(&self) -> Result<MemoryPolicy> {
        match (self.memory, self.memory_length) {
            (_, Some(length)) => MemoryPolicy::truncated(length),
            (MemoryMode::Full, None) => Ok(MemoryPolicy::Full),
            (MemoryMode::Truncated, None) => Err(Error::InvalidConfig(
                "truncated memory needs --memory-length".into(),
            )),
        }
    }

    fn require_input(&self) -> Result<PathBuf> {
        self.input
            .clone()
            .ok_or_else(|| Error::InvalidConfig("this command needs --input".into()))
    }
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub a2: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub a1: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub a0: f64,
    /// Order of the a2 term; may be omitted when a2 is 0.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: f64,
    /// Write time, input and output columns instead of time and output.
    #[arg(long)]
    pub with_input: bool,
    /// Print the steady-state gain 1/a0 instead of simulating.
    #[arg(long)]
    pub gain: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Column {
    /// The output column when present, else the input column.
    Auto,
    Input,
    Output,
}

#[derive(Debug, Clone, Args)]
pub struct DeriveArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long)]
    pub order: f64,
    #[arg(long, value_enum, default_value_t = Column::Auto)]
    pub column: Column,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    ThreeMember,
    TwoMember,
    FixedOrders,
}

impl From<KindArg> for ModelKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::ThreeMember => ModelKind::ThreeMember,
            KindArg::TwoMember => ModelKind::TwoMember,
            KindArg::FixedOrders => ModelKind::FixedOrders,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Required unless the model is two-member.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: f64,
    #[arg(long, value_enum, default_value_t = KindArg::ThreeMember)]
    pub model_kind: KindArg,
    /// Where to write the report; stdout when omitted.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct IdentifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, default_value_t = 1.5)]
    pub alpha_min: f64,
    #[arg(long, default_value_t = 2.55)]
    pub alpha_max: f64,
    #[arg(long, default_value_t = 0.7)]
    pub beta_min: f64,
    #[arg(long, default_value_t = 1.33)]
    pub beta_max: f64,
    #[arg(long, default_value_t = crate::search::DEFAULT_EPSILON)]
    pub epsilon: f64,
    #[arg(long, default_value_t = crate::search::DEFAULT_ACCURACY)]
    pub accuracy: f64,
    #[arg(long, default_value_t = crate::search::DEFAULT_MAX_ROUNDS)]
    pub max_rounds: usize,
    #[arg(long, value_enum, default_value_t = KindArg::ThreeMember)]
    pub model_kind: KindArg,
    /// Extra starting intervals, `amin:amax,bmin:bmax`; repeatable.
    #[arg(long = "restart")]
    pub restarts: Vec<String>,
    /// Where to write the report; stdout when omitted.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

/// Where a simulation input comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum InputSource {
    File(PathBuf),
    UnitStep { step: f64, horizon: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulateConfig {
    pub model: ModelParameters,
    pub input: InputSource,
    pub memory: MemoryPolicy,
    pub output: Option<PathBuf>,
    pub with_input: bool,
    pub gain_only: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeriveConfig {
    pub input: PathBuf,
    pub column: Column,
    pub order: f64,
    pub memory: MemoryPolicy,
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitConfig {
    pub data: PathBuf,
    pub alpha: f64,
    pub beta: f64,
    pub two_member: bool,
    pub memory: MemoryPolicy,
    pub report: Option<PathBuf>,
    pub response: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentifyConfig {
    pub data: PathBuf,
    pub search: SearchConfig,
    pub memory: MemoryPolicy,
    pub report: Option<PathBuf>,
    pub response: Option<PathBuf>,
}

/// A validated command.
#[derive(Debug, Clone, PartialEq)]
pub enum RunConfig {
    Simulate(SimulateConfig),
    Derive(DeriveConfig),
    Fit(FitConfig),
    Identify(IdentifyConfig),
}

impl Cli {
    pub fn into_config(self) -> Result<RunConfig> {
        match self.command {
            Command::Simulate(a) => {
                let alpha = match (a.alpha, a.a2 == 0.0) {
                    (Some(alpha), _) => alpha,
                    (None, true) => a.beta,
                    (None, false) => {
                        return Err(Error::InvalidModel("--alpha is required when a2 != 0".into()))
                    }
                };
                let model = ModelParameters::new(a.a2, a.a1, a.a0, alpha, a.beta)?;
                let input = match &a.common.input {
                    Some(p) => InputSource::File(p.clone()),
                    None => InputSource::UnitStep {
                        step: a.common.step,
                        horizon: a.common.horizon,
                    },
                };
                Ok(RunConfig::Simulate(SimulateConfig {
                    model,
                    input,
                    memory: a.common.memory_policy()?,
                    output: a.common.output.clone(),
                    with_input: a.with_input,
                    gain_only: a.gain,
                }))
            }
            Command::Derive(a) => Ok(RunConfig::Derive(DeriveConfig {
                input: a.common.require_input()?,
                column: a.column,
                order: a.order,
                memory: a.common.memory_policy()?,
                output: a.common.output.clone(),
            })),
            Command::Fit(a) => {
                let two_member = a.model_kind == KindArg::TwoMember;
                let alpha = match (a.alpha, two_member) {
                    (_, true) => a.beta,
                    (Some(alpha), false) => alpha,
                    (None, false) => {
                        return Err(Error::InvalidConfig("--alpha is required for three-member fits".into()))
                    }
                };
                Ok(RunConfig::Fit(FitConfig {
                    data: a.common.require_input()?,
                    alpha,
                    beta: a.beta,
                    two_member,
                    memory: a.common.memory_policy()?,
                    report: a.report,
                    response: a.common.output.clone(),
                }))
            }
            Command::Identify(a) => {
                let mut search = SearchConfig::new(
                    Interval::new(a.alpha_min, a.alpha_max)?,
                    Interval::new(a.beta_min, a.beta_max)?,
                )
                .with_epsilon(a.epsilon)
                .with_accuracy(a.accuracy)
                .with_max_rounds(a.max_rounds)
                .with_model_kind(a.model_kind.into());
                for r in &a.restarts {
                    search = search.with_restart(r.parse::<IntervalPair>()?);
                }
                search.validate()?;
                Ok(RunConfig::Identify(IdentifyConfig {
                    data: a.common.require_input()?,
                    search,
                    memory: a.common.memory_policy()?,
                    report: a.report,
                    response: a.common.output.clone(),
                }))
            }
        }
    }
}

pub fn run(config: &RunConfig) -> Result<()> {
    match config {
        RunConfig::Simulate(c) => run_simulate(c),
        RunConfig::Derive(c) => run_derive(c),
        RunConfig::Fit(c) => run_fit(c),
        RunConfig::Identify(c) => run_identify(c),
    }
}

fn emit(dest: Option<&PathBuf>, text: &str) -> Result<()> {
    match dest {
        Some(path) => io::write_text(path, text),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| Error::io("<stdout>", e)),
    }
}

pub fn run_simulate(config: &SimulateConfig) -> Result<()> {
    if config.gain_only {
        let gain = config.model.steady_state_gain()?;
        return emit(config.output.as_ref(), &format!("steady_state_gain = {}\n", io::sig6(gain)));
    }
    let input = match &config.input {
        InputSource::File(path) => load_series(path)?.input,
        InputSource::UnitStep { step, horizon } => SampledSeries::unit_step(*step, *horizon)?,
    };
    let output = simulate(&config.model, &input, config.memory)?;
    let text = if config.with_input {
        io::format_io_series(&input, &output)?
    } else {
        io::format_series(&output)
    };
    emit(config.output.as_ref(), &text)
}

pub fn run_derive(config: &DeriveConfig) -> Result<()> {
    let loaded = load_series(&config.input)?;
    let signal = match config.column {
        Column::Input => &loaded.input,
        Column::Output => loaded.require_output(&config.input)?,
        Column::Auto => loaded.output.as_ref().unwrap_or(&loaded.input),
    };
    let derivative = fractional_derivative(signal, config.order, config.memory)?;
    emit(config.output.as_ref(), &io::format_series(&derivative))
}

pub fn run_fit(config: &FitConfig) -> Result<()> {
    let loaded = load_series(&config.data)?;
    let output = loaded.require_output(&config.data)?;
    let fit = if config.two_member {
        fit_two_member_coefficients(output, &loaded.input, config.beta, config.memory)?
    } else {
        fit_linear_coefficients(output, &loaded.input, config.alpha, config.beta, config.memory)?
    };
    let response = simulate(&fit.model()?, &loaded.input, config.memory)?;
    let criterion = approximation_criterion(output, &response)?;
    if let Some(path) = &config.response {
        io::write_series(path, &response)?;
    }
    emit(
        config.report.as_ref(),
        &io::fit_report(&fit, criterion, config.two_member),
    )
}

pub fn run_identify(config: &IdentifyConfig) -> Result<()> {
    let loaded = load_series(&config.data)?;
    let output = loaded.require_output(&config.data)?;
    let result = identify(output, &loaded.input, &config.search, config.memory)?;
    if let Some(path) = &config.response {
        let response = simulate(&result.model, &loaded.input, config.memory)?;
        io::write_series(path, &response)?;
    }
    emit(config.report.as_ref(), &io::identification_report(&result))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(args: &[&str]) -> Result<RunConfig> {
        let mut argv = vec!["fracid"];
        argv.extend_from_slice(args);
        Cli::try_parse_from(argv).expect("clap accepts").into_config()
    }

    #[test]
    fn simulate_defaults_to_unit_step() {
        let c = config(&["simulate", "--a2", "1", "--a1", "3", "--a0", "2", "--alpha", "2", "--beta", "1"])
            .unwrap();
        match c {
            RunConfig::Simulate(s) => {
                assert_eq!(s.input, InputSource::UnitStep { step: 0.05, horizon: 20.0 });
                assert_eq!(s.memory, MemoryPolicy::Full);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn simulate_two_member_needs_no_alpha() {
        let c = config(&["simulate", "--a1", "800", "--a0", "1.4", "--beta", "0.75"]).unwrap();
        let RunConfig::Simulate(s) = c else { panic!() };
        assert!(s.model.is_two_member());
        assert!(config(&["simulate", "--a2", "1", "--a1", "3", "--a0", "2", "--beta", "1"]).is_err());
    }

    #[test]
    fn memory_flags() {
        let c = config(&["derive", "-i", "x.dat", "--order", "0.5", "--memory-length", "2.5"]).unwrap();
        let RunConfig::Derive(d) = c else { panic!() };
        assert_eq!(d.memory, MemoryPolicy::Truncated { length: 2.5 });
        assert!(config(&["derive", "-i", "x.dat", "--order", "0.5", "--memory", "truncated"]).is_err());
        assert!(config(&["derive", "--order", "0.5"]).is_err());
    }

    #[test]
    fn identify_flags() {
        let c = config(&[
            "identify", "-i", "d.dat", "--alpha-min", "1.1", "--beta-min", "0.33", "--beta-max", "1.3",
            "--restart", "1.5:2.5,0.5:1.0", "--restart", "2:2,1:1", "--model-kind", "two-member",
        ])
        .unwrap();
        let RunConfig::Identify(i) = c else { panic!() };
        assert_eq!(i.search.alpha_interval, Interval::new(1.1, 2.55).unwrap());
        assert_eq!(i.search.restarts.len(), 2);
        assert_eq!(i.search.model_kind, ModelKind::TwoMember);
        assert!(matches!(
            config(&["identify", "-i", "d.dat", "--alpha-min", "3", "--alpha-max", "2"]),
            Err(Error::InvalidConfig(_))
        ));
        assert!(config(&["identify", "-i", "d.dat", "--restart", "nonsense"]).is_err());
    }
}
