//! Fixed-precision number formatting shared by the text and CSV writers.

/// Formats `x` with exactly `sig` significant digits, `%g`-style: plain
/// decimal for exponents in `[-5, sig)`, scientific otherwise. Negative zero
/// prints as zero.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    let sig = sig.max(1);
    if x == 0.0 {
        return format!("{:.*}", sig - 1, 0.0);
    }
    if !x.is_finite() {
        return x.to_string();
    }
    // exponent after rounding to `sig` digits
    let sci = format!("{:.*e}", sig - 1, x);
    let exp: i32 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .unwrap_or(0);
    if exp < -5 || exp >= sig as i32 {
        sci
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        format!("{:.*}", decimals, x)
    }
}

/// Scientific notation with 17 significant digits, the round-trip width of
/// an `f64`.
pub fn fmt_exact(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}
