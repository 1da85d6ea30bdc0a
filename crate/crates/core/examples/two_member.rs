//! Two-member model `a1 y^(beta) + a0 y = u` on a slow, furnace-like
//! response, compared with forcing a three-member integer-order fit.
//!
//! ```bash
//! cargo run --release -p fracid --example two_member
//! ```

use fracid::{
    approximation_criterion, fit_linear_coefficients, identify, simulate, Interval, MemoryPolicy,
    ModelKind, ModelParameters, SampledSeries, SearchConfig,
};

fn main() -> fracid::Result<()> {
    let truth = ModelParameters::two_member(800.0, 1.4, 0.75)?;
    let input = SampledSeries::unit_step(10.0, 10_000.0)?;
    let measured = simulate(&truth, &input, MemoryPolicy::Full)?;

    let config = SearchConfig::new(Interval::new(1.1, 2.55)?, Interval::new(0.33, 1.3)?)
        .with_model_kind(ModelKind::TwoMember);
    let r = identify(&measured, &input, &config, MemoryPolicy::Full)?;
    println!(
        "two-member: a1 {:.3} a0 {:.4} beta {:.4} Q {:.3e} ({} rounds)",
        r.model.a1, r.model.a0, r.model.beta, r.criterion, r.rounds
    );

    let forced = fit_linear_coefficients(&measured, &input, 2.0, 1.0, MemoryPolicy::Full)?;
    let q = approximation_criterion(
        &measured,
        &simulate(&forced.model()?, &input, MemoryPolicy::Full)?,
    )?;
    println!(
        "second order: a2 {:.1} a1 {:.2} a0 {:.4} Q {q:.3e}",
        forced.a2, forced.a1, forced.a0
    );
    Ok(())
}
