//! Restarting the search from several interval pairs and keeping the best.
//!
//! ```bash
//! cargo run --release -p fracid --example multi_start
//! ```

use fracid::{identify, simulate, Interval, MemoryPolicy, ModelParameters, SampledSeries, SearchConfig};

fn main() -> fracid::Result<()> {
    let truth = ModelParameters::new(0.8, 0.5, 1.0, 2.2, 0.9)?;
    let input = SampledSeries::unit_step(0.05, 20.0)?;
    let measured = simulate(&truth, &input, MemoryPolicy::Full)?;

    // The primary pair misses the true orders; the restarts do not.
    let config = SearchConfig::new(Interval::new(1.1, 1.8)?, Interval::new(0.2, 0.6)?)
        .with_epsilon(0.1)
        .with_restart("1.8:2.6,0.6:1.2".parse()?)
        .with_restart("1.0:3.0,0.1:1.5".parse()?);

    for (k, start) in config.starts().iter().enumerate() {
        let single = SearchConfig {
            alpha_interval: start.alpha,
            beta_interval: start.beta,
            restarts: Vec::new(),
            ..config.clone()
        };
        let r = identify(&measured, &input, &single, MemoryPolicy::Full)?;
        println!(
            "start {k} alpha {} beta {}: alpha {:.4} beta {:.4} Q {:.3e}",
            start.alpha, start.beta, r.model.alpha, r.model.beta, r.criterion
        );
    }

    let best = identify(&measured, &input, &config, MemoryPolicy::Full)?;
    println!(
        "best of all: start {} -> {} (Q {:.3e})",
        best.restart_index, best.model, best.criterion
    );
    Ok(())
}
