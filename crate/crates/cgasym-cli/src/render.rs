//! Number formatting shared by the subcommands: shortest round-trip for
//! full-precision fields, printf-%g style for six-figure displays.

use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Six significant figures in %g style: fixed point in the middle of the
/// exponent range, scientific outside it, trailing zeros trimmed.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if (-5..6).contains(&mag) {
        let decimals = (5 - mag).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}"))
    } else {
        let s = format!("{x:.5e}");
        let (mantissa, exp) = s.split_once('e').expect("{:e} always carries an exponent");
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// Shortest string that round-trips to the same binary64, in scientific
/// notation outside the mid exponent range (Rust's plain Display would
/// spell 1e-19 with eighteen leading zeros).
pub fn full(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10();
    if (-4.0..15.0).contains(&mag) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub fn rational_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
