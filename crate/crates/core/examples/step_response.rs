//! Step responses of an integer-order and a fractional-order system.
//!
//! Pass a directory to also write `integer.dat` and `fractional.dat`
//! (`time input output` columns, ready for `fracid identify`):
//!
//! ```bash
//! cargo run -p fracid --example step_response -- /tmp/fracid
//! ```

use fracid::io::write_io_series;
use fracid::{simulate, MemoryPolicy, ModelParameters, SampledSeries};

fn main() -> fracid::Result<()> {
    let out_dir = std::env::args().nth(1).map(std::path::PathBuf::from);
    let input = SampledSeries::unit_step(0.05, 20.0)?;

    let integer = ModelParameters::new(1.0, 3.0, 2.0, 2.0, 1.0)?;
    let fractional = ModelParameters::new(0.8, 0.5, 1.0, 2.2, 0.9)?;
    let y_int = simulate(&integer, &input, MemoryPolicy::Full)?;
    let y_frac = simulate(&fractional, &input, MemoryPolicy::Full)?;

    println!("{:>6} {:>10} {:>10} {:>10}", "t", "integer", "exact", "fractional");
    for m in (0..input.len()).step_by(40) {
        let t = input.time(m);
        let exact = 0.5 - (-t).exp() + 0.5 * (-2.0 * t).exp();
        println!(
            "{t:>6.2} {:>10.6} {exact:>10.6} {:>10.6}",
            y_int.values()[m],
            y_frac.values()[m]
        );
    }

    let peak = y_frac.values().iter().cloned().fold(f64::MIN, f64::max);
    println!("\nfractional peak {peak:.4}, steady state {:.4}", fractional.steady_state_gain()?);
    println!("integer steady state {:.4}", integer.steady_state_gain()?);

    if let Some(dir) = out_dir {
        std::fs::create_dir_all(&dir).map_err(|e| fracid::Error::Io {
            path: dir.clone(),
            source: e,
        })?;
        write_io_series(dir.join("integer.dat"), &input, &y_int)?;
        write_io_series(dir.join("fractional.dat"), &input, &y_frac)?;
        println!("wrote {}", dir.display());
    }
    Ok(())
}
