//! Grünwald–Letnikov weights and fractional derivatives of sampled signals.
//!
//! ```bash
//! cargo run -p fracid --example gl_weights
//! ```

use fracid::{fractional_derivative, gl_weights, MemoryPolicy, SampledSeries};

fn main() -> fracid::Result<()> {
    println!("weights w_j = (-1)^j binom(order, j)");
    for order in [0.0, 0.5, 1.0, 2.0, 2.2] {
        let w = gl_weights(order, 5);
        let row: Vec<String> = w.as_slice().iter().map(|v| format!("{v:>9.5}")).collect();
        println!("  order {order:>3}: {}", row.join(" "));
    }

    let h = 0.01;
    let ramp = SampledSeries::from_fn(h, 201, |t| t)?;
    let quad = SampledSeries::from_fn(h, 201, |t| t * t)?;

    let d1 = fractional_derivative(&ramp, 1.0, MemoryPolicy::Full)?;
    let d2 = fractional_derivative(&quad, 2.0, MemoryPolicy::Full)?;
    println!("\nfirst derivative of t at t = 1:  {:.6}", d1.values()[100]);
    println!("second derivative of t^2 at t = 1: {:.6}", d2.values()[100]);

    // D^0.5 t = t^0.5 / Gamma(1.5); Gamma(1.5) = sqrt(pi) / 2
    let half = fractional_derivative(&ramp, 0.5, MemoryPolicy::Full)?;
    let gamma_1_5 = std::f64::consts::PI.sqrt() / 2.0;
    println!("\nhalf derivative of t (GL vs exact):");
    for m in [25, 50, 100, 200] {
        let t = half.time(m);
        println!(
            "  t = {t:.2}: {:.6} vs {:.6}",
            half.values()[m],
            t.sqrt() / gamma_1_5
        );
    }

    // A short memory forgets the start of the ramp.
    let window = MemoryPolicy::truncated(0.5)?;
    let short = fractional_derivative(&ramp, 0.5, window)?;
    println!(
        "\nat t = 2 with a 0.5 time-unit memory: {:.6} (full memory {:.6})",
        short.values()[200],
        half.values()[200]
    );
    Ok(())
}
