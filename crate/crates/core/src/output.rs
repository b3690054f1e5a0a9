//! Deterministic text serialization shared by the CSV and JSON emitters.

use std::fmt::Write;

/// Shortest decimal form of `x` that parses back to the same f64.
pub fn format_f64(x: f64) -> String {
    format!("{x}")
}

/// Renders equal-length columns under a header line.
pub fn csv_table(header: &str, columns: &[&[f64]]) -> String {
    let rows = columns.first().map_or(0, |c| c.len());
    let mut out = String::with_capacity(32 * (rows + 1));
    out.push_str(header);
    out.push('\n');
    for r in 0..rows {
        for (i, col) in columns.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{}", col[r]);
        }
        out.push('\n');
    }
    out
}
