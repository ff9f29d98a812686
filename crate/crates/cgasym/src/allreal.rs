//! The all-real first-order forms: the allowed-region cosine expression
//! with its five-angle phase chi, the forbidden subregion-VI exponential
//! with chi^(vi), the Stirling-ratio I factor, and the symmetry dispatch
//! that reaches the other five forbidden subregions.
//!
//! Each of these equals the corresponding complex-branch expression in
//! stationary exactly; the test suites verify that equality at floating
//! precision, which is the strongest check this crate has that both
//! pipelines are transcribed correctly.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::error::{CgError, Result};
use crate::halfint::QuantumNumbers;
use crate::numeric::{parity_sign, stirling_residual};
use crate::region::{self, RegionClass, Subregion};

/// f(n) = sqrt(n! / (sqrt(2 pi n) n^n e^-n)), the square root of the ratio
/// of n! to its leading Stirling form. f(0) is defined as 1 so that edge
/// factorial arguments drop out of the I factor neutrally.
pub fn stirling_ratio_f(n: u64) -> f64 {
    if n == 0 {
        1.0
    } else {
        (0.5 * stirling_residual(n)).exp()
    }
}

/// ln of the I factor
/// sqrt((j+1/2)(j+j1+j2) / (j (j+j1+j2+1)))
///   * prod f(numerator args) / prod f(denominator args),
/// the exact residue by which the first-order normalization differs from
/// its own leading Stirling approximation. I -> 1 for large quantum
/// numbers; it is kept (not dropped) when verifying the all-real and
/// complex pipelines against each other.
pub fn ln_i_factor(q: &QuantumNumbers) -> Result<f64> {
    let [tj1, tm1, tj2, tm2, tj, tm] = q.to_twice();
    if tj == 0 {
        return Err(CgError::Domain(format!(
            "the I factor needs j > 0; q = {q}"
        )));
    }
    let num = [
        (tj1 + tm1) / 2,
        (tj1 - tm1) / 2,
        (tj2 + tm2) / 2,
        (tj2 - tm2) / 2,
        (tj + tm) / 2,
        (tj - tm) / 2,
    ];
    let den = [
        (tj1 + tj2 + tj) / 2,
        (tj1 + tj2 - tj) / 2,
        (tj1 - tj2 + tj) / 2,
        (-tj1 + tj2 + tj) / 2,
    ];
    if num.iter().chain(&den).any(|&a| a < 0) {
        return Err(CgError::Domain(format!(
            "the I factor needs |m_i| <= j_i and the triangle conditions; q = {q}"
        )));
    }
    let total = den[0] as f64;
    let mut s = 0.5 * (((tj + 1) as f64 * total) / (tj as f64 * (total + 1.0))).ln();
    for a in num {
        if a > 0 {
            s += 0.5 * stirling_residual(a as u64);
        }
    }
    for b in den {
        if b > 0 {
            s -= 0.5 * stirling_residual(b as u64);
        }
    }
    Ok(s)
}

/// The I factor itself.
pub fn i_factor(q: &QuantumNumbers) -> Result<f64> {
    Ok(ln_i_factor(q)?.exp())
}

/// The allowed-region phase chi together with its five constituent terms
/// (each already weighted by its coefficient).
#[derive(Clone, Copy, Debug)]
pub struct ChiAngles {
    pub chi: f64,
    pub terms: [f64; 5],
}

/// Principal arc cosine with a 1e-12 excursion window: arguments
/// microscopically outside [-1, 1] are rounding residue and get clamped;
/// anything further out is a logic error upstream.
fn checked_acos(x: f64) -> Result<f64> {
    if x.abs() > 1.0 + 1e-12 {
        return Err(CgError::ArgumentRange { arg: x });
    }
    Ok(x.clamp(-1.0, 1.0).acos())
}

/// Arc hyperbolic cosine with the matching window below 1.
fn checked_acosh(y: f64) -> Result<f64> {
    if y < 1.0 - 1e-12 {
        return Err(CgError::ArgumentRange { arg: y });
    }
    Ok(y.max(1.0).acosh())
}

/// The five arc-cosine terms of the allowed-region phase, with coefficients
/// (j1+1/2), (j2+1/2), (j+1/2), -m1, +m2.
pub fn chi_allowed(q: &QuantumNumbers) -> Result<ChiAngles> {
    if !matches!(region::classify(q), RegionClass::Allowed) {
        return Err(CgError::Domain(format!(
            "chi is defined in the allowed region only; q = {q}"
        )));
    }
    let g = region::lambda_alpha(q)?;
    let [tj1, tm1, tj2, tm2, tj, tm] = q.to_twice();
    let (j1, m1) = (tj1 as f64 / 2.0, tm1 as f64 / 2.0);
    let (j2, m2) = (tj2 as f64 / 2.0, tm2 as f64 / 2.0);
    let (j, m) = (tj as f64 / 2.0, tm as f64 / 2.0);
    let (s1, s2, s3) = (j1 * j1, j2 * j2, j * j);

    let x1 = (-m * (s1 + s2 - s3) - m2 * (s1 + s3 - s2)) / (g.alpha * g.lambda1);
    let x2 = (m1 * (s3 + s2 - s1) + m * (s1 + s2 - s3)) / (g.alpha * g.lambda2);
    let x3 = (m2 * (s1 + s3 - s2) - m1 * (s3 + s2 - s1)) / (g.alpha * g.lambda3);
    let x4 = (g.lambda1 * g.lambda1 + g.lambda3 * g.lambda3 - g.lambda2 * g.lambda2)
        / (2.0 * g.lambda1 * g.lambda3);
    let x5 = (g.lambda3 * g.lambda3 + g.lambda2 * g.lambda2 - g.lambda1 * g.lambda1)
        / (2.0 * g.lambda2 * g.lambda3);

    let terms = [
        (j1 + 0.5) * checked_acos(x1)?,
        (j2 + 0.5) * checked_acos(x2)?,
        (j + 0.5) * checked_acos(x3)?,
        -m1 * checked_acos(x4)?,
        m2 * checked_acos(x5)?,
    ];
    Ok(ChiAngles {
        chi: terms.iter().sum(),
        terms,
    })
}

/// Allowed-region value 2 I sqrt(j/(pi beta)) cos(chi + pi/4 - pi (j+1)).
/// With include_i unset the I factor is dropped; the result is then the
/// simplified same-order form rather than an exact match of the complex
/// expression. pi (j+1) is reduced modulo 2 pi on doubled integers before
/// any float arithmetic.
pub fn allowed_allreal(q: &QuantumNumbers, include_i: bool) -> Result<f64> {
    let angles = chi_allowed(q)?;
    let [_, _, _, _, tj, _] = q.to_twice();
    let j = tj as f64 / 2.0;
    let beta = region::beta_squared_f64(q).sqrt();
    let i_fac = if include_i { i_factor(q)? } else { 1.0 };
    let quarters = (tj + 2).rem_euclid(4);
    let phase = angles.chi + FRAC_PI_4 - FRAC_PI_2 * quarters as f64;
    Ok(2.0 * i_fac * (j / (PI * beta)).sqrt() * phase.cos())
}

/// The subregion-VI decay exponent chi^(vi): five arc-hyperbolic-cosine
/// terms with coefficients (j1+1/2), -(j2+1/2), -(j+1/2), -m, -m2.
pub fn chi_vi(q: &QuantumNumbers) -> Result<f64> {
    match region::classify(q) {
        RegionClass::Forbidden(info) if info.subregion == Subregion::VI => {}
        other => {
            return Err(CgError::Domain(format!(
                "chi^(vi) applies in forbidden subregion VI only; {} at q = {q}",
                other.tag()
            )))
        }
    }
    let g = region::lambda_alpha(q)?;
    if g.lambda1 == 0.0 || g.lambda2 == 0.0 || g.lambda3 == 0.0 || g.alpha == 0.0 {
        return Err(CgError::Domain(format!(
            "the subregion-VI form needs |m_i| < j_i and a nondegenerate triangle; q = {q}"
        )));
    }
    let [tj1, tm1, tj2, tm2, tj, tm] = q.to_twice();
    let (j1, m1) = (tj1 as f64 / 2.0, tm1 as f64 / 2.0);
    let (j2, m2) = (tj2 as f64 / 2.0, tm2 as f64 / 2.0);
    let (j, m) = (tj as f64 / 2.0, tm as f64 / 2.0);
    let (s1, s2, s3) = (j1 * j1, j2 * j2, j * j);

    let y1 = (-m * (s1 + s2 - s3) - m2 * (s1 + s3 - s2)) / (g.alpha * g.lambda1);
    let y2 = (-m1 * (s3 + s2 - s1) - m * (s2 + s1 - s3)) / (g.alpha * g.lambda2);
    let y3 = (-m2 * (s1 + s3 - s2) + m1 * (s3 + s2 - s1)) / (g.alpha * g.lambda3);
    let y4 = (g.lambda1 * g.lambda1 + g.lambda3 * g.lambda3 - g.lambda2 * g.lambda2)
        / (2.0 * g.lambda1 * g.lambda3);
    let y5 = (g.lambda1 * g.lambda1 + g.lambda2 * g.lambda2 - g.lambda3 * g.lambda3)
        / (2.0 * g.lambda2 * g.lambda1);

    Ok((j1 + 0.5) * checked_acosh(y1)?
        - (j2 + 0.5) * checked_acosh(y2)?
        - (j + 0.5) * checked_acosh(y3)?
        - m * checked_acosh(y4)?
        - m2 * checked_acosh(y5)?)
}

/// One generator of the coefficient symmetry group, as a map on quantum
/// numbers together with the factor A with value(q) = A * value(mapped q).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SymmetryOp {
    /// (j1,m1) <-> (j2,m2); A = (-1)^(j1+j2-j).
    Exchange,
    /// All m's negated; A = (-1)^(j1+j2-j).
    NegateM,
    /// (j2,m2) <-> (j,-m); A = (-1)^(j1-m1) sqrt((2j+1)/(2j2+1)).
    CoupleSwap,
}

fn apply_op(q: &QuantumNumbers, op: SymmetryOp) -> (QuantumNumbers, f64) {
    match op {
        SymmetryOp::Exchange => (q.exchanged(), parity_sign(q.j_sum() - q.j.twice())),
        SymmetryOp::NegateM => (q.m_negated(), parity_sign(q.j_sum() - q.j.twice())),
        SymmetryOp::CoupleSwap => {
            let phase = parity_sign((q.j1.twice() - q.m1.twice()) / 2);
            let weight = ((q.j.twice() + 1) as f64 / (q.j2.twice() + 1) as f64).sqrt();
            (q.coupling_swapped(), phase * weight)
        }
    }
}

/// Frozen composition taking each forbidden subregion into VI, applied left
/// to right. Derived from the generator actions (each generator flips the
/// branch; Exchange swaps lambda1/lambda2, CoupleSwap swaps lambda2/lambda3,
/// NegateM fixes the lambdas) and locked in by the sampling tests, which
/// verify every step against the classifier and the complex evaluator.
fn dispatch_ops(subregion: Subregion) -> &'static [SymmetryOp] {
    use SymmetryOp::*;
    match subregion {
        Subregion::I => &[CoupleSwap, Exchange, NegateM],
        Subregion::II => &[Exchange, NegateM],
        Subregion::III => &[NegateM],
        Subregion::IV => &[CoupleSwap, Exchange],
        Subregion::V => &[Exchange],
        Subregion::VI => &[],
    }
}

/// Applies the frozen dispatch for the classified subregion of q, returning
/// the subregion-VI image and the accumulated multiplier.
fn map_to_vi(q: &QuantumNumbers, subregion: Subregion) -> (QuantumNumbers, f64) {
    let mut point = *q;
    let mut multiplier = 1.0;
    for &op in dispatch_ops(subregion) {
        let (mapped, factor) = apply_op(&point, op);
        multiplier *= factor;
        point = mapped;
    }
    (point, multiplier)
}

/// Direct subregion-VI value (-1)^(j2+m2) I sqrt(j/(pi |beta|)) e^(-chi),
/// assembled in log space so deep-forbidden magnitudes stay representable.
/// No doubling here: only one saddle contributes in the forbidden region,
/// and this form must equal the complex single-saddle expression exactly
/// (the tests pin that equality at 1e-9 and the magnitude against exact
/// values, which rules the factor of two out).
fn vi_value(q: &QuantumNumbers) -> Result<f64> {
    let chi = chi_vi(q)?;
    let ln_i = ln_i_factor(q)?;
    let [_, _, tj2, tm2, tj, _] = q.to_twice();
    let j = tj as f64 / 2.0;
    let abs_beta = (-region::beta_squared_f64(q)).sqrt();
    let sign = parity_sign((tj2 + tm2) / 2);
    let ln_mag = ln_i + 0.5 * (j / (PI * abs_beta)).ln() - chi;
    Ok(sign * ln_mag.exp())
}

/// Forbidden-region all-real value: evaluates the subregion-VI form, either
/// directly or through the frozen symmetry route, unwinding the phases and
/// the coupling-swap weight.
pub fn forbidden_allreal(q: &QuantumNumbers) -> Result<f64> {
    let info = match region::classify(q) {
        RegionClass::Forbidden(info) => info,
        other => {
            return Err(CgError::Domain(format!(
                "the forbidden-region form applies to forbidden points only; {} at q = {q}",
                other.tag()
            )))
        }
    };
    let (image, multiplier) = map_to_vi(q, info.subregion);
    match region::classify(&image) {
        RegionClass::Forbidden(fi) if fi.subregion == Subregion::VI => {}
        other => {
            return Err(CgError::Mapping(format!(
                "dispatch from {} landed on a {} point at {image}; q = {q}",
                info.subregion,
                other.tag()
            )))
        }
    }
    Ok(multiplier * vi_value(&image)?)
}
