//! Float-side helpers: accurate log-factorials, Stirling residuals and
//! conversions from big integers and rationals that survive huge exponents.

use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// ln(n!) for n < TABLE_LEN, built once by compensated summation.
const TABLE_LEN: usize = 256;

fn ln_fact_table() -> &'static [f64; TABLE_LEN] {
    static TABLE: OnceLock<[f64; TABLE_LEN]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [0.0; TABLE_LEN];
        let (mut sum, mut comp) = (0.0f64, 0.0f64);
        for n in 2..TABLE_LEN {
            let term = (n as f64).ln() - comp;
            let next = sum + term;
            comp = (next - sum) - term;
            sum = next;
            t[n] = sum;
        }
        t
    })
}

/// Stirling leading part: x ln x - x + ln(2 pi x) / 2.
pub(crate) fn stirling_leading(x: f64) -> f64 {
    x * x.ln() - x + 0.5 * (TAU * x).ln()
}

/// ln(n!) minus the Stirling leading part, computed without cancellation for
/// large n. Equals ln f(n)^2 where f is the Stirling ratio.
pub(crate) fn stirling_residual(n: u64) -> f64 {
    if (n as usize) < TABLE_LEN {
        ln_fact_table()[n as usize] - stirling_leading(n as f64)
    } else {
        // asymptotic series; the first omitted term is below 1e-20 here
        let x = n as f64;
        let x2 = x * x;
        (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - 1.0 / (1680.0 * x2)) / x2) / x2) / x
    }
}

/// ln(n!), accurate to a few 1e-13 absolute across the u64 range.
pub(crate) fn ln_factorial(n: u64) -> f64 {
    if (n as usize) < TABLE_LEN {
        ln_fact_table()[n as usize]
    } else {
        stirling_leading(n as f64) + stirling_residual(n)
    }
}

/// x * 2^e without intermediate overflow, saturating to 0 / infinity.
pub(crate) fn mul_pow2(x: f64, e: i64) -> f64 {
    let mut v = x;
    let mut e = e;
    while e > 1000 {
        v *= 2f64.powi(1000);
        if v.is_infinite() {
            return v;
        }
        e -= 1000;
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        if v == 0.0 {
            return v;
        }
        e += 1000;
    }
    v * 2f64.powi(e as i32)
}

/// Nearest f64 to a nonnegative BigInt, correct to half an ulp except for
/// ties, which round up.
pub(crate) fn big_to_f64(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().unwrap_or(0.0);
    }
    let shift = bits - 54;
    let top: u64 = (x >> shift).to_u64().expect("54-bit window");
    let rounded = (top >> 1) + (top & 1);
    mul_pow2(rounded as f64, shift as i64 + 1)
}

/// f64 value of a rational whose parts may be thousands of bits wide.
pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let negative = r.is_negative();
    let p = r.numer().abs();
    let q = r.denom().clone();
    let (pb, qb) = (p.bits() as i64, q.bits() as i64);
    // scale so the integer quotient keeps ~100 significant bits
    let shift = (100 - (pb - qb)).max(0) as u64;
    let quotient = (p << shift) / q;
    let v = mul_pow2(big_to_f64(&quotient), -(shift as i64));
    if negative {
        -v
    } else {
        v
    }
}

/// Parity sign (-1)^n for an integer of either sign.
pub(crate) fn parity_sign(n: i64) -> f64 {
    if n.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// arg(z) moved onto the branch whose cut lies just below the negative
/// imaginary axis: the result lies in (-pi/2, 3 pi/2].
pub(crate) fn arg_below_negative_imag(re: f64, im: f64) -> f64 {
    let a = im.atan2(re);
    if a <= -PI / 2.0 {
        a + TAU
    } else {
        a
    }
}
