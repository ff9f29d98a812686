//! Next-order corrections to the stationary-phase value: the delta4 and
//! delta6 terms built from the derivative bundle, the corrected evaluator,
//! and the m = 0 closed forms that cross-check it.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{CgError, Result};
use crate::exact;
use crate::halfint::QuantumNumbers;
use crate::stationary::{self, DerivativeBundle};

/// The two correction terms attached to one stationary point.
#[derive(Clone, Copy, Debug)]
pub struct CorrectionPair {
    pub delta4: Complex64,
    pub delta6: Complex64,
}

impl CorrectionPair {
    pub fn sum(&self) -> Complex64 {
        self.delta4 + self.delta6
    }
}

fn nonzero_det(b: &DerivativeBundle) -> Result<Complex64> {
    let det = b.det();
    if det.norm() == 0.0 {
        return Err(CgError::Singular(
            "corrections need a nonzero Hessian determinant".into(),
        ));
    }
    Ok(det)
}

/// Fourth-derivative correction: a quadratic form in the second derivatives
/// contracted with the fourth derivatives, over 8 det^2.
pub fn delta4(b: &DerivativeBundle) -> Result<Complex64> {
    let det = nonzero_det(b)?;
    let numerator = b.g_tttt * b.g_pp * b.g_pp - 4.0 * b.g_tttp * b.g_tp * b.g_pp
        + 2.0 * b.g_ttpp * (2.0 * b.g_tp * b.g_tp + b.g_tt * b.g_pp)
        - 4.0 * b.g_tppp * b.g_tt * b.g_tp
        + b.g_pppp * b.g_tt * b.g_tt;
    Ok(numerator / (8.0 * det * det))
}

/// Third-derivative correction: the quadratic form in the third derivatives,
/// over 24 det^3.
pub fn delta6(b: &DerivativeBundle) -> Result<Complex64> {
    let det = nonzero_det(b)?;
    let numerator = 2.0
        * b.g_tp
        * (3.0 * b.g_tt * b.g_pp + 2.0 * b.g_tp * b.g_tp)
        * (b.g_ttt * b.g_ppp + 9.0 * b.g_ttp * b.g_tpp)
        - 3.0
            * (b.g_tt * b.g_pp + 4.0 * b.g_tp * b.g_tp)
            * (2.0 * b.g_ttt * b.g_tpp * b.g_pp
                + 2.0 * b.g_ppp * b.g_ttp * b.g_tt
                + 3.0 * b.g_ttp * b.g_ttp * b.g_pp
                + 3.0 * b.g_tpp * b.g_tpp * b.g_tt)
        + 30.0 * b.g_tp * (b.g_ttt * b.g_ttp * b.g_pp * b.g_pp + b.g_ppp * b.g_tpp * b.g_tt * b.g_tt)
        - 5.0
            * (b.g_ttt * b.g_ttt * b.g_pp * b.g_pp * b.g_pp
                + b.g_ppp * b.g_ppp * b.g_tt * b.g_tt * b.g_tt);
    Ok(numerator / (24.0 * det * det * det))
}

/// Both corrections at one stationary point.
pub fn corrections(b: &DerivativeBundle) -> Result<CorrectionPair> {
    Ok(CorrectionPair {
        delta4: delta4(b)?,
        delta6: delta6(b)?,
    })
}

/// Corrected stationary-phase value: the first-order pipeline with each
/// stationary-point term multiplied by its own (1 + delta4 + delta6), and N
/// evaluated with leading-Stirling factorials times the linearized 1/(12x)
/// bracket. Keeping N at this matched order is what lets the m = 0 closed
/// form and the generic evaluator agree to full float precision.
pub fn higher_order(q: &QuantumNumbers) -> Result<f64> {
    let (ln_n, bracket) = exact::ln_n_factor_stirling(q)?;
    stationary::evaluate_semiclassical(q, ln_n + bracket.ln(), |_, b| {
        Ok(Complex64::new(1.0, 0.0) + corrections(b)?.sum())
    })
}

/// beta^2 for m1 = m2 = m = 0: the product of the four triangle sums.
/// Positive exactly when the triangle is strictly satisfied.
fn m0_beta_squared(j1: i64, j2: i64, j: i64) -> Result<i128> {
    if j1 <= 0 || j2 <= 0 || j <= 0 {
        return Err(CgError::Domain(
            "the m = 0 closed forms need positive integer j's".into(),
        ));
    }
    let (a, b, c) = (j1 as i128, j2 as i128, j as i128);
    let beta2 = (a + b + c) * (-c + a + b) * (c - a + b) * (c + a - b);
    if beta2 <= 0 {
        return Err(CgError::Domain(format!(
            "({j1},{j2},{j}) is on or outside the triangle boundary at m = 0"
        )));
    }
    Ok(beta2)
}

/// Closed form of delta4 + delta6 at m1 = m2 = m = 0: a degree-6 symmetric
/// polynomial over 12 j j1 j2 beta^2. Scales as 1/s under j -> s j.
pub fn m0_delta_sum(j1: i64, j2: i64, j: i64) -> Result<f64> {
    let beta2 = m0_beta_squared(j1, j2, j)?;
    let (a, b, c) = (j1 as i128, j2 as i128, j as i128);
    let numerator = a.pow(5) * b - 2 * a.pow(3) * b.pow(3) + a * b.pow(5)
        + a.pow(5) * c
        - a.pow(3) * b.pow(2) * c
        - a.pow(2) * b.pow(3) * c
        + b.pow(5) * c
        - a.pow(3) * b * c.pow(2)
        - 10 * a.pow(2) * b.pow(2) * c.pow(2)
        - a * b.pow(3) * c.pow(2)
        - 2 * a.pow(3) * c.pow(3)
        - a.pow(2) * b * c.pow(3)
        - a * b.pow(2) * c.pow(3)
        - 2 * b.pow(3) * c.pow(3)
        + a * c.pow(5)
        + b * c.pow(5);
    Ok(numerator as f64 / (12 * a * b * c * beta2) as f64)
}

/// 2 (-1)^((j1+j2-j)/2) sqrt((2j+1)/(2 pi beta)) sqrt(J/(J+1)) with
/// J = j1+j2+j; the common leading factor of both m = 0 approximations.
/// Callers have already screened out odd totals, so the sign exponent is an
/// integer.
fn m0_prefactor(j1: i64, j2: i64, j: i64, beta2: i128) -> f64 {
    let beta = (beta2 as f64).sqrt();
    let total = (j1 + j2 + j) as f64;
    let sign = if ((j1 + j2 - j) / 2) % 2 == 0 { 1.0 } else { -1.0 };
    sign * 2.0
        * ((2 * j + 1) as f64 / (2.0 * PI * beta)).sqrt()
        * (total / (total + 1.0)).sqrt()
}

/// The m = 0 specialization of higher_order for integer j's: zero when
/// j1+j2+j is odd (the two branch terms cancel), otherwise the prefactor
/// times (1 + delta4 + delta6) times the linearized factorial bracket.
pub fn m0_higher(j1: i64, j2: i64, j: i64) -> Result<f64> {
    let beta2 = m0_beta_squared(j1, j2, j)?;
    if (j1 + j2 + j) % 2 == 1 {
        return Ok(0.0);
    }
    let delta = m0_delta_sum(j1, j2, j)?;
    let bracket = 1.0
        + (2.0 / j1 as f64 + 2.0 / j2 as f64 + 2.0 / j as f64
            - 1.0 / (j + j1 + j2) as f64
            - 1.0 / (-j + j1 + j2) as f64
            - 1.0 / (j - j1 + j2) as f64
            - 1.0 / (j + j1 - j2) as f64)
            / 24.0;
    Ok(m0_prefactor(j1, j2, j, beta2) * (1.0 + delta) * bracket)
}

/// The same-order approximation obtained from the exact m = 0 closed form
/// instead of the stationary-phase sum: prefactor times (1 - j j1 j2 / beta^2).
/// Agrees with m0_higher through the first subleading order.
pub fn m0_approx_of_exact(j1: i64, j2: i64, j: i64) -> Result<f64> {
    let beta2 = m0_beta_squared(j1, j2, j)?;
    if (j1 + j2 + j) % 2 == 1 {
        return Ok(0.0);
    }
    let correction = 1.0 - (j as f64 * j1 as f64 * j2 as f64) / beta2 as f64;
    Ok(m0_prefactor(j1, j2, j, beta2) * correction)
}
