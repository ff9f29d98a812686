//! The exact engine: Clebsch-Gordan coefficients as signed square roots of
//! rationals, computed three independent ways.
//!
//! Every coefficient is sign * sqrt(p/q) with p/q a nonnegative rational in
//! lowest terms, so all three routes (the alternating single sum, and
//! coefficient extraction from a two-variable and a one-variable polynomial
//! product) can be compared for exact equality.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{CgError, Result};
use crate::factorial::{binomial, factorial};
use crate::halfint::QuantumNumbers;
use crate::numeric::{ln_factorial, mul_pow2, stirling_leading};

/// sign * sqrt(radicand): the exact value of a Clebsch-Gordan coefficient.
///
/// Canonical form: the radicand is nonnegative and in lowest terms, and the
/// sign is zero exactly when the radicand is. Structural equality therefore
/// coincides with numerical equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactRadical {
    sign: i8,
    radicand: BigRational,
}

impl ExactRadical {
    pub fn zero() -> Self {
        ExactRadical { sign: 0, radicand: BigRational::zero() }
    }

    /// Builds sign * sqrt(radicand); the radicand must be nonnegative.
    pub fn new(sign: i8, radicand: BigRational) -> Self {
        assert!(!radicand.is_negative(), "radicand must be nonnegative");
        if radicand.is_zero() || sign == 0 {
            return ExactRadical::zero();
        }
        ExactRadical { sign: sign.signum(), radicand }
    }

    /// sqrt(amplitude_squared) * scale, as a signed radical.
    /// amplitude_squared must be nonnegative; scale may have either sign.
    fn scaled_sqrt(amplitude_squared: BigRational, scale: &BigRational) -> Self {
        let sign = if scale.is_negative() { -1 } else { 1 };
        ExactRadical::new(sign, amplitude_squared * scale * scale)
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn radicand(&self) -> &BigRational {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// sign * radicand, the signed square. Orthogonality sums over these.
    pub fn signed_square(&self) -> BigRational {
        match self.sign {
            0 => BigRational::zero(),
            1 => self.radicand.clone(),
            _ => -self.radicand.clone(),
        }
    }

    /// Nearest binary64 within a few ulp, via an integer square root taken
    /// after scaling by an even power of two. Radicands far outside the
    /// binary64 range are fine as long as the root itself is representable.
    pub fn to_f64(&self) -> Result<f64> {
        if self.sign == 0 {
            return Ok(0.0);
        }
        let p = self.radicand.numer();
        let q = self.radicand.denom();
        let (pb, qb) = (p.bits() as i64, q.bits() as i64);
        // the value has roughly (pb - qb) / 2 binary digits before the point
        if (pb - qb) / 2 > 1100 || (pb - qb) / 2 < -1125 {
            return Err(CgError::Overflow);
        }
        // scale so the quotient carries ~240 bits, i.e. the root ~120
        let mut shift = (240 - (pb - qb)).max(0) as u64;
        shift += shift & 1;
        let quotient = (p << shift) / q;
        let root = quotient.sqrt();
        let bits = root.bits();
        let value = if bits <= 53 {
            mul_pow2(root.to_f64().unwrap(), -((shift / 2) as i64))
        } else {
            let top: u64 = ((&root) >> (bits - 54)).to_u64().expect("54-bit window");
            let rounded = (top >> 1) + (top & 1);
            mul_pow2(rounded as f64, bits as i64 - 53 - (shift / 2) as i64)
        };
        if !value.is_finite() || value == 0.0 {
            return Err(CgError::Overflow);
        }
        Ok(self.sign as f64 * value)
    }
}

impl fmt::Display for ExactRadical {
    /// "0", "sqrt(p/q)" or "-sqrt(p/q)"; an integer radicand drops the "/q".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == 0 {
            return write!(f, "0");
        }
        if self.sign < 0 {
            write!(f, "-")?;
        }
        write!(f, "sqrt({})", self.radicand)
    }
}

/// The ten factorial arguments shared by the normalization factor and the
/// single-sum form, as plain integers.
struct WignerArgs {
    // numerator: j1 +- m1, j2 +- m2, j +- m
    num: [i64; 6],
    // denominator: j1+j2+j+1, j1+j2-j, j1-j2+j, -j1+j2+j
    den: [i64; 4],
}

fn wigner_args(q: &QuantumNumbers) -> WignerArgs {
    let [tj1, tm1, tj2, tm2, tj, tm] = q.to_twice();
    WignerArgs {
        num: [
            (tj1 + tm1) / 2,
            (tj1 - tm1) / 2,
            (tj2 + tm2) / 2,
            (tj2 - tm2) / 2,
            (tj + tm) / 2,
            (tj - tm) / 2,
        ],
        den: [
            (tj1 + tj2 + tj) / 2 + 1,
            (tj1 + tj2 - tj) / 2,
            (tj1 - tj2 + tj) / 2,
            (-tj1 + tj2 + tj) / 2,
        ],
    }
}

fn checked_wigner_args(q: &QuantumNumbers) -> Result<WignerArgs> {
    let args = wigner_args(q);
    for a in args.num.iter().chain(&args.den) {
        if *a < 0 {
            return Err(CgError::Domain(format!(
                "normalization factorial argument {a} is negative at q = {q}"
            )));
        }
    }
    Ok(args)
}

/// ln N via accurate log-factorials, for the asymptotic evaluators where the
/// exact radical would be needlessly expensive (or its float value would
/// overflow before the e^g factor cancels it).
pub(crate) fn ln_n_factor(q: &QuantumNumbers) -> Result<f64> {
    let args = checked_wigner_args(q)?;
    let mut s = ((q.j.twice() + 1) as f64).ln();
    for a in args.num {
        s += ln_factorial(a as u64);
    }
    for b in args.den {
        s -= ln_factorial(b as u64);
    }
    Ok(0.5 * s)
}

/// ln N with every factorial replaced by the leading Stirling form
/// sqrt(2 pi x) x^x e^-x, plus the multiplicative bracket
/// 1 + (1/24)(sum 1/num - 1/(j1+j2+j) - sum 1/tri) that collects the
/// linearized 1/(12x) factorial corrections under the square root.
///
/// (j1+j2+j+1)! is split as (j1+j2+j+1) * (j1+j2+j)! first, so every
/// Stirling argument is one of the six numerator arguments, the triangle
/// total, or a triangle deficit. Any zero argument is rejected: the leading
/// form is singular there and the caller sits on a region boundary anyway.
pub(crate) fn ln_n_factor_stirling(q: &QuantumNumbers) -> Result<(f64, f64)> {
    let args = checked_wigner_args(q)?;
    let total = args.den[0] - 1;
    let mut s = ((q.j.twice() + 1) as f64).ln() - ((total + 1) as f64).ln();
    let mut linear = 0.0;
    for a in args.num {
        if a == 0 {
            return Err(CgError::Domain(format!(
                "Stirling normalization needs positive factorial arguments; q = {q}"
            )));
        }
        s += stirling_leading(a as f64);
        linear += 1.0 / a as f64;
    }
    for b in [total, args.den[1], args.den[2], args.den[3]] {
        if b == 0 {
            return Err(CgError::Domain(format!(
                "Stirling normalization needs positive factorial arguments; q = {q}"
            )));
        }
        s -= stirling_leading(b as f64);
        linear -= 1.0 / b as f64;
    }
    Ok((0.5 * s, 1.0 + linear / 24.0))
}

/// The square of the normalization factor N.
fn n_factor_squared(q: &QuantumNumbers) -> Result<BigRational> {
    let args = checked_wigner_args(q)?;
    let mut num = BigInt::from(q.j.twice() + 1);
    for a in args.num {
        num *= factorial(a as u64);
    }
    let mut den = BigInt::from(1);
    for b in args.den {
        den *= factorial(b as u64);
    }
    Ok(BigRational::new(num, den))
}

/// The positive normalization factor
/// N = sqrt((2j+1) (j1+m1)! (j1-m1)! (j2+m2)! (j2-m2)! (j+m)! (j-m)!
///     / ((j1+j2+j+1)! (j1+j2-j)! (j1-j2+j)! (-j1+j2+j)!)).
///
/// Requires |m_i| <= j_i and the triangle inequalities, otherwise some
/// factorial argument is negative and a DomainError is returned.
pub fn n_factor(q: &QuantumNumbers) -> Result<ExactRadical> {
    Ok(ExactRadical::new(1, n_factor_squared(q)?))
}

/// The classical single-sum form: prefactor times the alternating sum over
/// all z for which the six factorial arguments are nonnegative. Returns the
/// exact zero radical off the selection rule m = m1 + m2 or outside the
/// triangle-allowed region.
pub fn wigner_sum(q: &QuantumNumbers) -> ExactRadical {
    if !q.projections_consistent() || !q.triangle_allowed() {
        return ExactRadical::zero();
    }
    let args = wigner_args(q);
    let [_, a2, a3, _, _, _] = args.num;
    let b2 = args.den[1];
    let [tj1, tm1, tj2, tm2, tj, _] = q.to_twice();
    let d = (tj - tj2 + tm1) / 2; // j - j2 + m1, offset by +z
    let e = (tj - tj1 - tm2) / 2; // j - j1 - m2, offset by +z
    let z_min = 0.max(-d).max(-e);
    let z_max = b2.min(a2).min(a3);

    let mut sum = BigRational::zero();
    for z in z_min..=z_max {
        let mut denom = factorial(z as u64);
        denom *= factorial((b2 - z) as u64);
        denom *= factorial((a2 - z) as u64);
        denom *= factorial((a3 - z) as u64);
        denom *= factorial((d + z) as u64);
        denom *= factorial((e + z) as u64);
        let numer = if z % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
        sum += BigRational::new(numer, denom);
    }

    // prefactor^2 = N^2 * ((j1+j2-j)! (j1-j2+j)! (-j1+j2+j)!)^2
    let mut pre2 = BigInt::from(tj + 1);
    for a in args.num {
        pre2 *= factorial(a as u64);
    }
    let mut pre2 = BigRational::new(pre2, factorial(args.den[0] as u64));
    for b in &args.den[1..] {
        pre2 *= BigRational::from(factorial(*b as u64));
    }
    ExactRadical::scaled_sqrt(pre2, &sum)
}

fn require_polynomial_domain(q: &QuantumNumbers) -> Result<()> {
    if !q.triangle_allowed() {
        return Err(CgError::Domain(format!(
            "q = {q} lies outside the triangle-allowed region"
        )));
    }
    if !q.projections_consistent() {
        return Err(CgError::Domain(format!(
            "coefficient extraction needs m = m1 + m2; q = {q}"
        )));
    }
    Ok(())
}

/// (-1)^(j+m) * N * coefficient, shared tail of both polynomial routes.
fn polynomial_value(q: &QuantumNumbers, coefficient: BigInt) -> Result<ExactRadical> {
    let j_plus_m = (q.j.twice() + q.m.twice()) / 2;
    let signed = if j_plus_m % 2 == 0 { coefficient } else { -coefficient };
    Ok(ExactRadical::scaled_sqrt(
        n_factor_squared(q)?,
        &BigRational::from(signed),
    ))
}

/// Second route: the coefficient of u^(j1-m1) t^(j2-m2) in
/// (t-1)^(j+j2-j1) (t-u)^(j1+j2-j) (u-1)^(j+j1-j2), times (-1)^(j+m) N.
/// The product is expanded exactly; requires a triangle-allowed q with
/// m = m1 + m2.
pub fn poly_coeff_2var(q: &QuantumNumbers) -> Result<ExactRadical> {
    require_polynomial_domain(q)?;
    let [tj1, tm1, tj2, tm2, tj, _] = q.to_twice();
    let a = ((tj + tj2 - tj1) / 2) as usize; // (t-1)^a
    let b = ((tj1 + tj2 - tj) / 2) as usize; // (t-u)^b
    let c = ((tj + tj1 - tj2) / 2) as usize; // (u-1)^c

    // rows index the t-degree, columns the u-degree
    let mut poly = vec![vec![BigInt::ZERO; b + c + 1]; a + b + 1];
    for i in 0..=a {
        for k in 0..=b {
            // t^(i+k) u^(b-k) from (t-1)^a (t-u)^b
            let mut coeff = binomial(a as u64, i as u64) * binomial(b as u64, k as u64);
            if (a - i + b - k) % 2 == 1 {
                coeff = -coeff;
            }
            poly[i + k][b - k] += coeff;
        }
    }
    let mut product = vec![vec![BigInt::ZERO; b + c + 1]; a + b + 1];
    for l in 0..=c {
        let mut coeff = binomial(c as u64, l as u64);
        if (c - l) % 2 == 1 {
            coeff = -coeff;
        }
        for (row, prow) in poly.iter().enumerate() {
            for (col, p) in prow.iter().enumerate() {
                if !p.is_zero() {
                    product[row][col + l] += p * &coeff;
                }
            }
        }
    }

    let t_target = ((tj2 - tm2) / 2) as usize;
    let u_target = ((tj1 - tm1) / 2) as usize;
    let coefficient = product
        .get(t_target)
        .and_then(|row| row.get(u_target))
        .cloned()
        .unwrap_or(BigInt::ZERO);
    polynomial_value(q, coefficient)
}

/// Third route: the coefficient of u^(j-m+2j1(j2-m2)) in
/// (u^(2j1+1)-1)^(j+j2-j1) (u^(2j1)-1)^(j1+j2-j) (u-1)^(j+j1-j2),
/// times (-1)^(j+m) N. Same domain requirements as the two-variable form.
pub fn poly_coeff_1var(q: &QuantumNumbers) -> Result<ExactRadical> {
    require_polynomial_domain(q)?;
    let [tj1, tm1, tj2, tm2, tj, tm] = q.to_twice();
    let _ = tm1;
    let factors = [
        (tj1 as usize + 1, ((tj + tj2 - tj1) / 2) as usize),
        (tj1 as usize, ((tj1 + tj2 - tj) / 2) as usize),
        (1usize, ((tj + tj1 - tj2) / 2) as usize),
    ];
    let target = ((tj - tm) / 2 + tj1 * ((tj2 - tm2) / 2)) as usize;

    // dense coefficient vector, truncated above the target degree
    let mut poly = vec![BigInt::ZERO; target + 1];
    poly[0] = BigInt::from(1);
    for (stride, power) in factors {
        if power == 0 {
            continue;
        }
        if stride == 0 {
            // (u^0 - 1)^power with power > 0 would be zero; the triangle
            // bounds rule this out (stride 0 forces j1 = 0 = power here)
            return Ok(ExactRadical::zero());
        }
        let mut next = vec![BigInt::ZERO; target + 1];
        for k in 0..=power {
            let degree = stride * k;
            if degree > target {
                break;
            }
            let mut coeff = binomial(power as u64, k as u64);
            if (power - k) % 2 == 1 {
                coeff = -coeff;
            }
            for (idx, p) in poly.iter().enumerate() {
                if !p.is_zero() && idx + degree <= target {
                    next[idx + degree] += p * &coeff;
                }
            }
        }
        poly = next;
    }
    polynomial_value(q, poly[target].clone())
}

/// Closed form at m1 = m2 = m = 0 for integer j's: zero when j1 + j2 + j is
/// odd, otherwise
/// (-1)^((j1+j2-j)/2) sqrt(2j+1)
///   * sqrt((-j1+j2+j)! (j1-j2+j)! (j1+j2-j)! / (j1+j2+j+1)!)
///   * ((j1+j2+j)/2)! / (((-j1+j2+j)/2)! ((j1-j2+j)/2)! ((j1+j2-j)/2)!).
pub fn exact_m0(j1: i64, j2: i64, j: i64) -> Result<ExactRadical> {
    if j1 < 0 || j2 < 0 || j < 0 {
        return Err(CgError::Domain("j's must be nonnegative".into()));
    }
    let (g1, g2, g3) = (-j1 + j2 + j, j1 - j2 + j, j1 + j2 - j);
    if g1 < 0 || g2 < 0 || g3 < 0 {
        return Ok(ExactRadical::zero());
    }
    let big_j = j1 + j2 + j;
    if big_j % 2 == 1 {
        return Ok(ExactRadical::zero());
    }
    let under_root = BigRational::new(
        BigInt::from(2 * j + 1) * factorial(g1 as u64) * factorial(g2 as u64) * factorial(g3 as u64),
        factorial(big_j as u64 + 1),
    );
    let ratio = BigRational::new(
        factorial((big_j / 2) as u64),
        factorial((g1 / 2) as u64) * factorial((g2 / 2) as u64) * factorial((g3 / 2) as u64),
    );
    let signed_ratio = if (g3 / 2) % 2 == 0 { ratio } else { -ratio };
    Ok(ExactRadical::scaled_sqrt(under_root, &signed_ratio))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::halfint::HalfInt;

    fn q(t: [i64; 6]) -> QuantumNumbers {
        QuantumNumbers::from_twice(t).unwrap()
    }

    fn rational(p: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(d))
    }

    #[test]
    fn normalization_factor_small_case() {
        let n = n_factor(&q([2, 0, 2, 0, 4, 0])).unwrap();
        assert_eq!(n.sign(), 1);
        assert_eq!(*n.radicand(), rational(1, 24));
        assert!(n_factor(&q([2, 0, 2, 0, 10, 0])).is_err());
    }

    #[test]
    fn log_normalization_routes_agree() {
        // small case against the exact radical
        let ln = ln_n_factor(&q([2, 0, 2, 0, 4, 0])).unwrap();
        assert!((ln + 0.5 * 24f64.ln()).abs() < 1e-12, "{ln}");

        // large case: the Stirling route with its bracket tracks the
        // accurate route to the next order in 1/j
        let big = q([400, 200, 600, 300, 800, 500]);
        let accurate = ln_n_factor(&big).unwrap();
        let (leading, bracket) = ln_n_factor_stirling(&big).unwrap();
        assert!(bracket > 0.0 && (bracket - 1.0).abs() < 0.01, "{bracket}");
        assert!((accurate - leading - bracket.ln()).abs() < 1e-6, "{accurate} {leading}");

        // zero factorial arguments are singular for the Stirling form
        assert!(ln_n_factor_stirling(&q([2, 2, 2, 2, 4, 4])).is_err());
        assert!(ln_n_factor(&q([2, 2, 2, 2, 4, 4])).is_ok());
    }

    #[test]
    fn single_sum_spin_half_case() {
        let w = wigner_sum(&q([1, 1, 1, -1, 2, 0]));
        assert_eq!(w.sign(), 1);
        assert_eq!(*w.radicand(), rational(1, 2));
    }

    #[test]
    fn single_sum_zero_off_selection_rule_and_triangle() {
        assert!(wigner_sum(&q([2, 2, 2, 2, 4, 0])).is_zero());
        assert!(wigner_sum(&q([2, 0, 2, 0, 10, 0])).is_zero());
        assert!(wigner_sum(&q([2, 2, 4, 4, 6, 6])) == ExactRadical::new(1, rational(1, 1)));
    }

    #[test]
    fn one_variable_extraction_small_case() {
        let v = poly_coeff_1var(&q([2, 0, 2, 0, 4, 0])).unwrap();
        assert_eq!(v.sign(), 1);
        assert_eq!(*v.radicand(), rational(2, 3));
    }

    #[test]
    fn two_variable_extraction_spin_half_case() {
        let v = poly_coeff_2var(&q([1, 1, 1, -1, 2, 0])).unwrap();
        assert_eq!(v.sign(), 1);
        assert_eq!(*v.radicand(), rational(1, 2));
    }

    #[test]
    fn polynomial_routes_reject_out_of_domain_points() {
        assert!(poly_coeff_2var(&q([2, 2, 2, 2, 4, 0])).is_err());
        assert!(poly_coeff_1var(&q([2, 0, 2, 0, 10, 0])).is_err());
    }

    #[test]
    fn m0_closed_form_matches_hand_value() {
        let v = exact_m0(1, 1, 2).unwrap();
        assert_eq!(v.sign(), 1);
        assert_eq!(*v.radicand(), rational(2, 3));
        assert!(exact_m0(1, 1, 1).unwrap().is_zero());
        assert!(exact_m0(1, 1, 5).unwrap().is_zero());
    }

    #[test]
    fn display_forms() {
        assert_eq!(wigner_sum(&q([1, 1, 1, -1, 2, 0])).to_string(), "sqrt(1/2)");
        assert_eq!(exact_m0(2, 2, 2).unwrap().to_string(), "-sqrt(2/7)");
        assert_eq!(ExactRadical::zero().to_string(), "0");
        assert_eq!(wigner_sum(&q([2, 2, 4, 4, 6, 6])).to_string(), "sqrt(1)");
    }

    #[test]
    fn float_conversion_accuracy_and_range() {
        let v = ExactRadical::new(1, rational(1, 2)).to_f64().unwrap();
        assert_eq!(v, 0.5f64.sqrt());
        let n = ExactRadical::new(-1, rational(20, 480)).to_f64().unwrap();
        assert_eq!(n, -(1.0f64 / 24.0).sqrt());

        // radicand far below the binary64 range, value well inside it
        let tiny = ExactRadical::new(
            1,
            BigRational::new(BigInt::from(1), BigInt::from(10u8).pow(600)),
        );
        let f = tiny.to_f64().unwrap();
        assert!((f / 1e-300 - 1.0).abs() < 1e-12, "{f}");

        let too_big = ExactRadical::new(1, BigRational::from(BigInt::from(10u8).pow(620)));
        assert_eq!(too_big.to_f64(), Err(CgError::Overflow));
        let too_small = ExactRadical::new(
            1,
            BigRational::new(BigInt::from(1), BigInt::from(10u8).pow(700)),
        );
        assert_eq!(too_small.to_f64(), Err(CgError::Overflow));
        assert_eq!(ExactRadical::zero().to_f64().unwrap(), 0.0);
    }

    #[test]
    fn half_integer_parsing_feeds_the_engine() {
        let qn = QuantumNumbers::new(
            HalfInt::parse("1/2").unwrap(),
            HalfInt::parse("1/2").unwrap(),
            HalfInt::parse("1/2").unwrap(),
            HalfInt::parse("-1/2").unwrap(),
            HalfInt::parse("1").unwrap(),
            HalfInt::parse("0").unwrap(),
        )
        .unwrap();
        assert_eq!(wigner_sum(&qn).to_string(), "sqrt(1/2)");
    }
}
