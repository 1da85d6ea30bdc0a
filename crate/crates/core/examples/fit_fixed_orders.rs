//! Least-squares coefficients at fixed derivative orders.
//!
//! Fitting at the true orders recovers the coefficients exactly; forcing a
//! fractional system into an integer-order model does not.
//!
//! ```bash
//! cargo run -p fracid --example fit_fixed_orders
//! ```

use fracid::{
    approximation_criterion, fit_linear_coefficients, simulate, MemoryPolicy, ModelParameters,
    SampledSeries,
};

fn main() -> fracid::Result<()> {
    let input = SampledSeries::unit_step(0.05, 20.0)?;
    let truth = ModelParameters::new(0.8, 0.5, 1.0, 2.2, 0.9)?;
    let measured = simulate(&truth, &input, MemoryPolicy::Full)?;

    for (alpha, beta) in [(2.2, 0.9), (2.0, 1.0)] {
        let fit = fit_linear_coefficients(&measured, &input, alpha, beta, MemoryPolicy::Full)?;
        let response = simulate(&fit.model()?, &input, MemoryPolicy::Full)?;
        let q = approximation_criterion(&measured, &response)?;
        println!(
            "alpha {alpha}, beta {beta}: a2 = {:.5}, a1 = {:.5}, a0 = {:.5}, Q = {q:.3e}",
            fit.a2, fit.a1, fit.a0
        );
    }

    match fit_linear_coefficients(&measured, &input, 1.0, 1.0, MemoryPolicy::Full) {
        Err(e) => println!("equal orders: {e}"),
        Ok(_) => unreachable!("equal orders give identical regressors"),
    }
    Ok(())
}
