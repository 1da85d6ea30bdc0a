//! Full identification: coefficients and both derivative orders.
//!
//! ```bash
//! cargo run --release -p fracid --example identify_orders
//! ```

use std::time::Instant;

use fracid::{identify, simulate, Interval, MemoryPolicy, ModelParameters, SampledSeries, SearchConfig};

fn main() -> fracid::Result<()> {
    let input = SampledSeries::unit_step(0.05, 20.0)?;
    let config = SearchConfig::new(Interval::new(1.5, 2.55)?, Interval::new(0.7, 1.33)?)
        .with_epsilon(0.05)
        .with_accuracy(1e-4);

    for truth in [
        ModelParameters::new(1.0, 3.0, 2.0, 2.0, 1.0)?,
        ModelParameters::new(0.8, 0.5, 1.0, 2.2, 0.9)?,
    ] {
        let measured = simulate(&truth, &input, MemoryPolicy::Full)?;
        let start = Instant::now();
        let result = identify(&measured, &input, &config, MemoryPolicy::Full)?;
        let m = result.model;
        println!("true   {truth}");
        println!(
            "found  a2 {:.5} a1 {:.5} a0 {:.5} alpha {:.5} beta {:.5}",
            m.a2, m.a1, m.a0, m.alpha, m.beta
        );
        println!(
            "       Q {:.3e}, {} rounds, {} candidates, {:.2?}",
            result.criterion,
            result.rounds,
            result.trace.len(),
            start.elapsed()
        );
        for (k, best) in result.round_best.iter().enumerate() {
            println!(
                "       round {}: alpha {:.5} beta {:.5} Q {:.3e}",
                k + 1,
                best.alpha,
                best.beta,
                best.criterion
            );
        }
        println!();
    }
    Ok(())
}
