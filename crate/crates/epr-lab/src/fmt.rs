//! Stable numeric formatting for report files.

/// Renders a float with 12 significant digits, below every assertion
/// tolerance in the crate and stable across runs.
pub fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}
