//! Numeric rendering shared by reports, logs, and summaries.

/// Formats a score with up to 6 significant digits.
///
/// Integer-valued scores print without a decimal point; trailing zeros in
/// the fractional part are trimmed.
pub fn format_score(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    if v.fract() == 0.0 && v.abs() < 1e15 {
        return format!("{}", v as i64);
    }
    let exponent = v.abs().log10().floor() as i32;
    let decimals = 5 - exponent;
    if decimals <= 0 {
        // 6 significant digits land left of the decimal point
        let scale = 10f64.powi(-decimals);
        return format!("{}", ((v / scale).round() * scale) as i64);
    }
    let s = format!("{:.*}", decimals as usize, v);
    let trimmed = s.trim_end_matches('0').trim_end_matches('.');
    trimmed.to_string()
}
