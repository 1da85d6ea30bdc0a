//! Series files and text reports.
//!
//! A series file holds one record per line: `time input [output]`, fields
//! separated by whitespace (or `;`), or by commas when a line has no
//! whitespace at all. Decimals must use a dot. An optional header line is
//! recognized by a non-numeric first token, and `#` starts a comment. A
//! `# step=<h>` comment, as written by [`write_series`], fixes the step
//! exactly instead of averaging the time column.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::fit::LinearFitResult;
use crate::search::IdentificationResult;
use crate::series::{SampledSeries, MIN_SAMPLES};

/// Largest tolerated deviation of a time increment from the mean step.
pub const GRID_TOLERANCE: f64 = 1e-6;

/// Input column and, when present, output column of a series file.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedSeries {
    pub input: SampledSeries,
    pub output: Option<SampledSeries>,
}

impl LoadedSeries {
    pub fn require_output(&self, path: &Path) -> Result<&SampledSeries> {
        self.output.as_ref().ok_or_else(|| Error::Parse {
            path: path.to_path_buf(),
            line: 0,
            token: String::new(),
            reason: "file has no output column".into(),
        })
    }
}

pub fn load_series(path: impl AsRef<Path>) -> Result<LoadedSeries> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_series(&text, path)
}

#[derive(Clone, Copy, PartialEq)]
enum Delimiter {
    Whitespace,
    Comma,
}

/// Parses series text; `path` only labels error messages.
pub fn parse_series(text: &str, path: &Path) -> Result<LoadedSeries> {
    let parse_err = |line: usize, token: &str, reason: &str| Error::Parse {
        path: path.to_path_buf(),
        line,
        token: token.to_string(),
        reason: reason.to_string(),
    };

    let mut declared_step = None;
    let mut delimiter = None;
    let mut columns = None;
    let mut seen_content = false;
    let mut times = Vec::new();
    let mut lines_of = Vec::new();
    let mut rows: Vec<Vec<f64>> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let (content, comment) = match raw.split_once('#') {
            Some((c, m)) => (c, Some(m)),
            None => (raw, None),
        };
        if let Some(step) = comment.and_then(parse_step_comment) {
            declared_step = Some(step);
        }
        let content = content.trim();
        if content.is_empty() {
            continue;
        }

        let delim = *delimiter.get_or_insert_with(|| {
            if content.split_whitespace().nth(1).is_some() || !content.contains(',') {
                Delimiter::Whitespace
            } else {
                Delimiter::Comma
            }
        });
        let tokens: Vec<&str> = match delim {
            Delimiter::Whitespace => content
                .split(|c: char| c.is_whitespace() || c == ';')
                .filter(|t| !t.is_empty())
                .collect(),
            Delimiter::Comma => content.split(',').map(str::trim).collect(),
        };

        let first_content = !seen_content;
        seen_content = true;
        if first_content && tokens[0].parse::<f64>().is_err() && !looks_like_comma_decimal(tokens[0]) {
            // header
            delimiter = None;
            continue;
        }

        let mut row = Vec::with_capacity(tokens.len());
        for tok in &tokens {
            if looks_like_comma_decimal(tok) {
                return Err(parse_err(
                    line_no,
                    tok,
                    "comma decimal separator, use '.' for decimals",
                ));
            }
            let v: f64 = tok.parse().map_err(|_| parse_err(line_no, tok, "not a number"))?;
            if !v.is_finite() {
                return Err(parse_err(line_no, tok, "not a finite number"));
            }
            row.push(v);
        }
        if !(2..=3).contains(&row.len()) {
            return Err(parse_err(
                line_no,
                content,
                "expected 2 or 3 columns: time, input [, output]",
            ));
        }
        match columns {
            None => columns = Some(row.len()),
            Some(n) if n != row.len() => {
                return Err(parse_err(
                    line_no,
                    content,
                    &format!("expected {n} columns like the first record"),
                ));
            }
            _ => {}
        }
        times.push(row[0]);
        lines_of.push(line_no);
        rows.push(row);
    }

    if rows.len() < MIN_SAMPLES {
        return Err(Error::TooShort {
            len: rows.len(),
            min: MIN_SAMPLES,
        });
    }

    let mean = (times[times.len() - 1] - times[0]) / (times.len() - 1) as f64;
    let mut worst = (0.0f64, 0usize);
    for i in 1..times.len() {
        let d = times[i] - times[i - 1];
        let dev = if d > 0.0 && mean > 0.0 {
            (d - mean).abs() / mean
        } else {
            f64::INFINITY
        };
        if dev > worst.0 {
            worst = (dev, lines_of[i]);
        }
    }
    if worst.0 > GRID_TOLERANCE {
        return Err(Error::NonUniformGrid {
            path: path.to_path_buf(),
            line: worst.1,
            deviation: worst.0,
        });
    }
    let step = match declared_step {
        Some(h) if (h - mean).abs() <= GRID_TOLERANCE * mean => h,
        _ => mean,
    };

    let input = SampledSeries::new(step, rows.iter().map(|r| r[1]).collect())?;
    let output = if columns == Some(3) {
        Some(SampledSeries::new(step, rows.iter().map(|r| r[2]).collect())?)
    } else {
        None
    };
    Ok(LoadedSeries { input, output })
}

fn parse_step_comment(comment: &str) -> Option<f64> {
    let rest = comment.trim().strip_prefix("step")?.trim_start();
    let rest = rest.strip_prefix('=').unwrap_or(rest);
    rest.trim().parse().ok()
}

/// `1,5` or `0,05` style token: digits on both sides of a comma.
fn looks_like_comma_decimal(token: &str) -> bool {
    let bytes = token.as_bytes();
    bytes.windows(3).any(|w| {
        w[0].is_ascii_digit() && w[1] == b',' && w[2].is_ascii_digit()
    })
}

/// Two-column `time value` text with a `# step=` comment.
pub fn format_series(series: &SampledSeries) -> String {
    let mut out = format!("# step={}\n", series.step());
    for (t, v) in series.times().zip(series.values()) {
        let _ = writeln!(out, "{t} {v}");
    }
    out
}

/// Three-column `time input output` text, loadable as identification data.
pub fn format_io_series(input: &SampledSeries, output: &SampledSeries) -> Result<String> {
    input.ensure_aligned(output)?;
    let mut out = format!("# step={}\n", input.step());
    for ((t, u), y) in input.times().zip(input.values()).zip(output.values()) {
        let _ = writeln!(out, "{t} {u} {y}");
    }
    Ok(out)
}

pub fn write_series(path: impl AsRef<Path>, series: &SampledSeries) -> Result<()> {
    write_text(path, &format_series(series))
}

pub fn write_io_series(
    path: impl AsRef<Path>,
    input: &SampledSeries,
    output: &SampledSeries,
) -> Result<()> {
    write_text(path, &format_io_series(input, output)?)
}

pub fn write_text(path: impl AsRef<Path>, text: &str) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, text).map_err(|e| Error::io(PathBuf::from(path), e))
}

/// Formats `v` with six significant digits, `%g` style.
pub fn sig6(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Key/value report of an identification run followed by the per-round
/// best pairs.
pub fn identification_report(result: &IdentificationResult) -> String {
    let m = &result.model;
    let two_member = m.is_two_member();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "model = {}",
        if two_member { "two-member" } else { "three-member" }
    );
    if !two_member {
        let _ = writeln!(out, "a2 = {}", sig6(m.a2));
    }
    let _ = writeln!(out, "a1 = {}", sig6(m.a1));
    let _ = writeln!(out, "a0 = {}", sig6(m.a0));
    if !two_member {
        let _ = writeln!(out, "alpha = {}", sig6(m.alpha));
    }
    let _ = writeln!(out, "beta = {}", sig6(m.beta));
    let _ = writeln!(out, "Q = {}", sig6(result.criterion));
    let _ = writeln!(out, "rounds = {}", result.rounds);
    let _ = writeln!(out, "restart = {}", result.restart_index);
    let _ = writeln!(out, "# round alpha beta Q");
    for (k, e) in result.round_best.iter().enumerate() {
        let alpha = if two_member { "-".to_string() } else { sig6(e.alpha) };
        let _ = writeln!(out, "{} {} {} {}", k + 1, alpha, sig6(e.beta), sig6(e.criterion));
    }
    out
}

/// Key/value report of a fixed-order fit; `criterion` is the output-error
/// criterion of the fitted model.
pub fn fit_report(fit: &LinearFitResult, criterion: f64, two_member: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "model = {}",
        if two_member { "two-member" } else { "three-member" }
    );
    if !two_member {
        let _ = writeln!(out, "a2 = {}", sig6(fit.a2));
    }
    let _ = writeln!(out, "a1 = {}", sig6(fit.a1));
    let _ = writeln!(out, "a0 = {}", sig6(fit.a0));
    if !two_member {
        let _ = writeln!(out, "alpha = {}", sig6(fit.alpha));
    }
    let _ = writeln!(out, "beta = {}", sig6(fit.beta));
    let _ = writeln!(out, "residual = {}", sig6(fit.residual_norm));
    let _ = writeln!(out, "Q = {}", sig6(criterion));
    out
}
