//! Reading and writing series files and reports.
//!
//! ```bash
//! cargo run -p fracid --example series_files
//! ```

use fracid::io::{fit_report, identification_report, load_series, write_io_series};
use fracid::{
    approximation_criterion, fit_linear_coefficients, identify, simulate, Interval, MemoryPolicy,
    ModelParameters, SampledSeries, SearchConfig,
};

fn main() -> fracid::Result<()> {
    let dir = std::env::temp_dir().join("fracid-series-example");
    std::fs::create_dir_all(&dir).map_err(|e| fracid::Error::Io {
        path: dir.clone(),
        source: e,
    })?;
    let path = dir.join("integer.dat");

    let truth = ModelParameters::new(1.0, 3.0, 2.0, 2.0, 1.0)?;
    let input = SampledSeries::unit_step(0.05, 20.0)?;
    write_io_series(&path, &input, &simulate(&truth, &input, MemoryPolicy::Full)?)?;
    println!("wrote {}", path.display());

    let loaded = load_series(&path)?;
    let output = loaded.output.expect("three-column file");
    println!("loaded {} samples at step {}", output.len(), output.step());

    let fit = fit_linear_coefficients(&output, &loaded.input, 2.0, 1.0, MemoryPolicy::Full)?;
    let q = approximation_criterion(&output, &simulate(&fit.model()?, &loaded.input, MemoryPolicy::Full)?)?;
    println!("\n-- fit report --\n{}", fit_report(&fit, q, false));

    let config = SearchConfig::new(Interval::new(1.8, 2.2)?, Interval::new(0.8, 1.2)?)
        .with_epsilon(0.1)
        .with_accuracy(1e-3);
    let result = identify(&output, &loaded.input, &config, MemoryPolicy::Full)?;
    println!("-- identification report --\n{}", identification_report(&result));

    // Comma decimals are refused with the offending line.
    let bad = dir.join("comma.dat");
    std::fs::write(&bad, "0 1 0\n0,05 1 0,001\n0,1 1 0,004\n").expect("temp file");
    if let Err(e) = load_series(&bad) {
        println!("{}: {e}", e.class());
    }
    Ok(())
}
