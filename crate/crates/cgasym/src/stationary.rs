//! Stationary points of the phase function, its derivatives through fourth
//! order, the e^g factor, and the first-order complex-branch evaluator.
//!
//! Everything downstream of the stationarity system is computed directly
//! from the two cotangents, so no angle is ever recovered and the only
//! branch choices are the two stated square-root conventions: beta is the
//! principal root of the binary64 value of beta^2, and the root of the
//! Hessian determinant keeps its argument in (-pi/4, 3pi/4].

use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{CgError, Result};
use crate::exact;
use crate::halfint::QuantumNumbers;
use crate::numeric::arg_below_negative_imag;
use crate::region::{self, Branch, RegionClass};

/// One solution of the stationarity system, tagged by its sign choice.
#[derive(Clone, Copy, Debug)]
pub struct StationaryPoint {
    pub cot_theta: Complex64,
    pub cot_phi: Complex64,
    pub branch: Branch,
}

/// All partial derivatives of the phase function at a stationary point
/// through fourth order; t and p abbreviate the two integration angles.
#[derive(Clone, Copy, Debug)]
pub struct DerivativeBundle {
    pub g_tt: Complex64,
    pub g_tp: Complex64,
    pub g_pp: Complex64,
    pub g_ttt: Complex64,
    pub g_ttp: Complex64,
    pub g_tpp: Complex64,
    pub g_ppp: Complex64,
    pub g_tttt: Complex64,
    pub g_tttp: Complex64,
    pub g_ttpp: Complex64,
    pub g_tppp: Complex64,
    pub g_pppp: Complex64,
}

impl DerivativeBundle {
    /// Determinant of the 2x2 Hessian.
    pub fn det(&self) -> Complex64 {
        self.g_tt * self.g_pp - self.g_tp * self.g_tp
    }
}

/// The triangle combinations j+j2-j1, j1+j2-j, j+j1-j2 and the total
/// j1+j2+j, in actual (not doubled) units.
fn triangle_coefficients(q: &QuantumNumbers) -> (f64, f64, f64, f64) {
    let [tj1, _, tj2, _, tj, _] = q.to_twice();
    (
        (tj + tj2 - tj1) as f64 / 2.0,
        (tj1 + tj2 - tj) as f64 / 2.0,
        (tj + tj1 - tj2) as f64 / 2.0,
        (tj1 + tj2 + tj) as f64 / 2.0,
    )
}

/// Both solutions of the stationarity system, Upper sign choice first.
///
/// The boundary (beta^2 = 0, detected exactly) is rejected, as are the
/// stretched configurations j = j1 + j2 and its permutations with j1 or j2
/// largest, where the cotangent denominators vanish and the stationary
/// points run off to infinity.
pub fn stationary_points(q: &QuantumNumbers) -> Result<(StationaryPoint, StationaryPoint)> {
    if !q.projections_consistent() || !q.triangle_allowed() {
        return Err(CgError::Domain(format!(
            "stationary points need m = m1 + m2, |m_i| <= j_i and the triangle conditions; q = {q}"
        )));
    }
    let beta2 = region::beta_squared(q);
    if beta2.is_zero() {
        return Err(CgError::Boundary);
    }
    let (k1, _, k3, total) = triangle_coefficients(q);
    if k1 == 0.0 || k3 == 0.0 {
        return Err(CgError::Singular(format!(
            "stationary points at infinity: a cotangent denominator vanishes at q = {q}"
        )));
    }

    // principal square root: a negative argument gives +i sqrt(|.|)
    let b2 = region::beta_squared_f64(q);
    let beta = if b2 >= 0.0 {
        Complex64::new(b2.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-b2).sqrt())
    };

    let [tj1, tm1, tj2, tm2, tj, tm] = q.to_twice();
    // -2i (j2 m + m2 j) and -2i (j1 m + m1 j); products of doubled values
    // carry a factor 4, so halving the doubled cross terms yields 2x actual
    let theta_lin = Complex64::new(0.0, -((tj2 * tm + tm2 * tj) as f64) / 2.0);
    let phi_lin = Complex64::new(0.0, -((tj1 * tm + tm1 * tj) as f64) / 2.0);

    let upper = StationaryPoint {
        cot_theta: (theta_lin - beta) / (total * k1),
        cot_phi: (phi_lin + beta) / (total * k3),
        branch: Branch::Upper,
    };
    let lower = StationaryPoint {
        cot_theta: (theta_lin + beta) / (total * k1),
        cot_phi: (phi_lin - beta) / (total * k3),
        branch: Branch::Lower,
    };
    Ok((upper, lower))
}

/// The stationary point with the requested sign choice.
pub fn stationary_point(q: &QuantumNumbers, branch: Branch) -> Result<StationaryPoint> {
    let (upper, lower) = stationary_points(q)?;
    Ok(match branch {
        Branch::Upper => upper,
        Branch::Lower => lower,
    })
}

/// Largest residual of the two stationarity equations, normalized by the
/// natural coefficient scale j1 + j2 + j. Zero at an exact solution.
pub fn stationarity_residual(pt: &StationaryPoint, q: &QuantumNumbers) -> f64 {
    let (k1, k2, k3, total) = triangle_coefficients(q);
    let [_, _, _, tm2, _, tm] = q.to_twice();
    let ct = pt.cot_theta;
    let cp = pt.cot_phi;
    let first = Complex64::new(0.0, tm as f64) + k1 * ct + k3 * cp;
    let ctp = (1.0 + ct * cp) / (cp - ct);
    let second = Complex64::new(0.0, tm2 as f64) + k1 * ct + k2 * ctp;
    first.norm().max(second.norm()) / total
}

/// The derivative bundle at a stationary point, built purely from the two
/// cotangents via csc^2 = 1 + cot^2 and the cotangent difference identity
/// cot(t-p) = (1 + cot t cot p)/(cot p - cot t).
pub fn derivative_bundle(pt: &StationaryPoint, q: &QuantumNumbers) -> Result<DerivativeBundle> {
    let (k1, k2, k3, _) = triangle_coefficients(q);
    let ct = pt.cot_theta;
    let cp = pt.cot_phi;
    if (cp - ct).norm() < 1e-12 * (1.0 + ct.norm().max(cp.norm())) {
        return Err(CgError::Singular(format!(
            "coincident cotangents at q = {q}: the angle difference is singular"
        )));
    }
    let ctp = (1.0 + ct * cp) / (cp - ct);
    let s2t = 1.0 + ct * ct;
    let s2p = 1.0 + cp * cp;
    let s2tp = 1.0 + ctp * ctp;
    // the (t-p)-dependent part common to all mixed fourth derivatives
    let quartic_tp = 2.0 * k2 * s2tp * (3.0 * ctp * ctp + 1.0);
    Ok(DerivativeBundle {
        g_tt: -k1 * s2t - k2 * s2tp,
        g_tp: k2 * s2tp,
        g_pp: -k2 * s2tp - k3 * s2p,
        g_ttt: 2.0 * k1 * s2t * ct + 2.0 * k2 * s2tp * ctp,
        g_ttp: -2.0 * k2 * s2tp * ctp,
        g_tpp: 2.0 * k2 * s2tp * ctp,
        g_ppp: -2.0 * k2 * s2tp * ctp + 2.0 * k3 * s2p * cp,
        g_tttt: -2.0 * k1 * s2t * (3.0 * ct * ct + 1.0) - quartic_tp,
        g_tttp: quartic_tp,
        g_ttpp: -quartic_tp,
        g_tppp: quartic_tp,
        g_pppp: -quartic_tp - 2.0 * k3 * s2p * (3.0 * cp * cp + 1.0),
    })
}

/// ln of the e^g factor
/// (i+cotphi)^(m1-j1) (-i+cotphi)^-(j1+m1)
///   (i+cottheta)^(m2-j2) (-i+cottheta)^-(j2+m2) (cotphi-cottheta)^(j1+j2-j)
/// as a sum of integer multiples of principal logarithms. The exponents are
/// all integers, so the product itself has no branch ambiguity; the log form
/// keeps magnitudes far outside binary64 range representable.
pub fn log_exp_g(pt: &StationaryPoint, q: &QuantumNumbers) -> Result<Complex64> {
    let [tj1, tm1, tj2, tm2, tj, _] = q.to_twice();
    let i = Complex64::new(0.0, 1.0);
    let factors = [
        (i + pt.cot_phi, (tm1 - tj1) / 2),
        (-i + pt.cot_phi, -(tj1 + tm1) / 2),
        (i + pt.cot_theta, (tm2 - tj2) / 2),
        (-i + pt.cot_theta, -(tj2 + tm2) / 2),
        (pt.cot_phi - pt.cot_theta, (tj1 + tj2 - tj) / 2),
    ];
    let mut sum = Complex64::zero();
    for (base, exponent) in factors {
        if exponent == 0 {
            continue;
        }
        if base.norm() == 0.0 {
            return Err(CgError::Singular(format!(
                "a base of the e^g product vanishes at q = {q}"
            )));
        }
        sum += exponent as f64 * base.ln();
    }
    Ok(sum)
}

/// The e^g factor itself. Fine for moderate quantum numbers; deep-forbidden
/// large-j points should stay in log space via log_exp_g.
pub fn exp_g(pt: &StationaryPoint, q: &QuantumNumbers) -> Result<Complex64> {
    Ok(log_exp_g(pt, q)?.exp())
}

/// Re ln e^g on the requested branch. The region classifier uses this to
/// pick the subdominant branch when the branch polynomial vanishes exactly.
pub(crate) fn branch_log_magnitude(q: &QuantumNumbers, branch: Branch) -> Result<f64> {
    let pt = stationary_point(q, branch)?;
    Ok(log_exp_g(&pt, q)?.re)
}

/// ln|T| and arg(T) of one stationary-point term
/// T = (-1)^(j+m) 2^(J+1) pi^-1 N i^J e^g / sqrt(det) * correction,
/// J = j1+j2+j. The quarter turns of (-1)^(j+m) i^J are reduced exactly as
/// an integer modulo 4 so that huge multiples of pi/2 never meet a float.
struct LogTerm {
    ln_abs: f64,
    arg: f64,
}

fn log_term(
    pt: &StationaryPoint,
    q: &QuantumNumbers,
    bundle: &DerivativeBundle,
    ln_n: f64,
    correction: Complex64,
) -> Result<LogTerm> {
    let det = bundle.det();
    if det.norm() == 0.0 {
        return Err(CgError::Singular(format!(
            "zero Hessian determinant at q = {q}"
        )));
    }
    let lg = log_exp_g(pt, q)?;
    let [tj1, _, tj2, _, tj, tm] = q.to_twice();
    let total = (tj1 + tj2 + tj) / 2;
    let quarters = (tj + tm + total).rem_euclid(4);
    let ln_abs = ln_n + (total + 1) as f64 * LN_2 - PI.ln() + lg.re - 0.5 * det.norm().ln()
        + correction.norm().ln();
    let arg = FRAC_PI_2 * quarters as f64 + lg.im - 0.5 * arg_below_negative_imag(det.re, det.im)
        + correction.arg();
    Ok(LogTerm { ln_abs, arg })
}

/// Region dispatch shared by the first-order and corrected evaluators: the
/// allowed region doubles the real part of the Upper term (its partner is
/// the conjugate), the forbidden region keeps the single classified branch
/// and requires the term phase to sit on the real axis to 1e-9.
pub(crate) fn evaluate_semiclassical<F>(q: &QuantumNumbers, ln_n: f64, correction: F) -> Result<f64>
where
    F: Fn(&StationaryPoint, &DerivativeBundle) -> Result<Complex64>,
{
    match region::classify(q) {
        RegionClass::TriangleForbidden => Err(CgError::Domain(format!(
            "q = {q} violates the selection rule or triangle conditions"
        ))),
        RegionClass::Boundary => Err(CgError::Boundary),
        RegionClass::Allowed => {
            let (upper, _) = stationary_points(q)?;
            let bundle = derivative_bundle(&upper, q)?;
            let corr = correction(&upper, &bundle)?;
            let term = log_term(&upper, q, &bundle, ln_n, corr)?;
            Ok(2.0 * term.ln_abs.exp() * term.arg.cos())
        }
        RegionClass::Forbidden(info) => {
            let pt = stationary_point(q, info.branch)?;
            let bundle = derivative_bundle(&pt, q)?;
            let corr = correction(&pt, &bundle)?;
            let term = log_term(&pt, q, &bundle, ln_n, corr)?;
            let residue = term.arg.sin().abs();
            if !(residue < 1e-9) {
                return Err(CgError::Residue { residue });
            }
            Ok(term.ln_abs.exp() * term.arg.cos())
        }
    }
}

/// First-order stationary-phase value, valid in the allowed and forbidden
/// regions; the boundary is rejected.
pub fn first_order(q: &QuantumNumbers) -> Result<f64> {
    let ln_n = exact::ln_n_factor(q)?;
    evaluate_semiclassical(q, ln_n, |_, _| Ok(Complex64::new(1.0, 0.0)))
}
