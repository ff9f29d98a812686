//! Exact factorials and binomials over big integers, cached append-only.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::One;

static CACHE: Mutex<Vec<BigInt>> = Mutex::new(Vec::new());

/// n! as an exact integer. The shared cache grows monotonically; each value
/// is computed once per process.
pub(crate) fn factorial(n: u64) -> BigInt {
    let n = n as usize;
    let mut cache = CACHE.lock().unwrap();
    if cache.is_empty() {
        cache.push(BigInt::one());
    }
    while cache.len() <= n {
        let next = cache.last().unwrap() * cache.len();
        cache.push(next);
    }
    cache[n].clone()
}

pub(crate) fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::ZERO;
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(factorial(20), BigInt::from(2432902008176640000u64));
        assert_eq!(binomial(40, 10), BigInt::from(847660528u64));
        assert_eq!(binomial(3, 7), BigInt::ZERO);
    }
}
