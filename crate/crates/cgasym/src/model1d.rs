//! One-dimensional toy integral F(m, n) = int_{-pi/2}^{pi/2} cos^n x e^{imx} dx
//! for positive integers m, n. Small enough to have an exact closed form for
//! every (m, n), yet it reproduces the key behaviors of the main evaluator:
//! an oscillatory/exponential split at m = n, a stationary-phase estimate
//! whose error falls off in 1/n, and a factor of two between the full
//! asymptotic value and a single saddle's Gaussian contribution.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::f64::consts::PI;

use crate::error::{CgError, Result};
use crate::factorial::{binomial, factorial};
use crate::numeric::rational_to_f64;

/// Validated integrand parameters: both exponents must be positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModelInput {
    pub m: i64,
    pub n: i64,
}

impl ModelInput {
    pub fn new(m: i64, n: i64) -> Result<Self> {
        if m < 1 || n < 1 {
            return Err(CgError::InvalidInput(format!(
                "the model integral needs positive m and n, got m = {m}, n = {n}"
            )));
        }
        Ok(ModelInput { m, n })
    }
}

/// Exact value as coefficient * pi^(times_pi as u32). The pi factor appears
/// exactly when n - m is even; odd n - m gives a plain rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelExact {
    pub coefficient: BigRational,
    pub times_pi: bool,
}

impl ModelExact {
    pub fn value(&self) -> f64 {
        let c = rational_to_f64(&self.coefficient);
        if self.times_pi {
            c * PI
        } else {
            c
        }
    }
}

fn pow2(e: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(2)).pow(e as i32)
}

fn rat(x: BigInt) -> BigRational {
    BigRational::from_integer(x)
}

/// Closed form of F(m, n), split on the parity of n - m.
///
/// Even n - m: expanding cos^n over exponentials, only the e^{-imx} term
/// survives the integral, giving 2^-n binomial(n, (n-m)/2) pi, zero when
/// m > n. Odd n - m: the integral telescopes to a pure rational; for
/// n < m it alternates in sign with (m - n - 1)/2 while for n > m it is
/// positive.
pub fn f_exact(inp: &ModelInput) -> ModelExact {
    let (m, n) = (inp.m, inp.n);
    if (n - m) % 2 == 0 {
        let coefficient = if n >= m {
            pow2(-n) * rat(binomial(n as u64, ((n - m) / 2) as u64))
        } else {
            BigRational::zero()
        };
        return ModelExact {
            coefficient,
            times_pi: true,
        };
    }
    let coefficient = if n < m {
        let sign = if ((n + 1 - m) / 2).rem_euclid(2) == 0 {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        sign * pow2(n + 2)
            * rat(factorial(n as u64))
            * rat(factorial(((m + n + 1) / 2) as u64))
            * rat(factorial((m - n - 1) as u64))
            / (rat(factorial((m + n + 1) as u64)) * rat(factorial(((m - n - 1) / 2) as u64)))
    } else {
        pow2(n + 2) * rat(factorial(n as u64)) * rat(factorial(((n + 1 - m) / 2) as u64))
            * rat(factorial(((n + 1 + m) / 2) as u64))
            / (rat(factorial((n + 1 - m) as u64)) * rat(factorial((n + 1 + m) as u64)))
    };
    ModelExact {
        coefficient,
        times_pi: false,
    }
}

/// Stationary-phase estimate of F(m, n).
///
/// For n > m the interior stationary point gives an oscillatory-free
/// Gaussian; for n < m the stationary points move off the real axis and
/// the value decays, vanishing identically at even n - m and alternating
/// at odd n - m; at m = n the stationary point collides with the endpoint
/// caustic and no estimate of this order exists.
pub fn f_asymptotic(inp: &ModelInput) -> Result<f64> {
    let (m, n) = (inp.m as f64, inp.n as f64);
    if inp.m == inp.n {
        return Err(CgError::CriticalRatio);
    }
    let r = m / n;
    if inp.n > inp.m {
        let ln = 0.5 * (2.0 * PI / n).ln() + 0.5 * m * ((1.0 - r) / (1.0 + r)).ln()
            - 0.5 * (n + 1.0) * (1.0 - r * r).ln();
        return Ok(ln.exp());
    }
    if (inp.n - inp.m) % 2 == 0 {
        return Ok(0.0);
    }
    let sign = if ((inp.n + 1 - inp.m) / 2).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    };
    let ln = 0.5 * (2.0 * PI / n).ln() + 0.5 * m * ((r - 1.0) / (r + 1.0)).ln()
        - 0.5 * (n + 1.0) * (r * r - 1.0).ln();
    Ok(sign * 2.0 * ln.exp())
}

/// Magnitude of one complex saddle's Gaussian contribution for n < m:
/// the saddle sits at x = +-pi/2 + i artanh(n/m), and the full odd-case
/// asymptotic value is exactly twice this (the two saddles contribute
/// equally or cancel, which is the even-case zero).
pub fn single_branch_gaussian(inp: &ModelInput) -> Result<f64> {
    if inp.n >= inp.m {
        return Err(CgError::Domain(format!(
            "the saddle leaves the real axis only for n < m, got m = {}, n = {}",
            inp.m, inp.n
        )));
    }
    let (m, n) = (inp.m as f64, inp.n as f64);
    let a = (n / m).atanh();
    let g2 = (m / n) * (m / n) - 1.0;
    let ln = 0.5 * ((2.0 * PI) / (n * g2)).ln() + n * a.sinh().ln() - m * a;
    Ok(ln.exp())
}

/// Adaptive Simpson quadrature of the full complex integrand. The true
/// value is real (the imaginary part of the integrand is odd), so the
/// accumulated imaginary part doubles as an independent error check; it
/// must come out below the tolerance.
///
/// The interval is pre-split into max(8, 2m) equal panels, at most a
/// quarter period of e^{imx} each, before any adaptive refinement.
/// Starting the recursion on the whole interval instead lets a wave with
/// m divisible by a power of two alias against the dyadic midpoints and
/// pass the refinement test while missing the oscillation entirely.
pub fn f_quadrature(inp: &ModelInput, tol: f64) -> Result<f64> {
    if !(tol >= 1e-12) {
        return Err(CgError::InvalidInput(format!(
            "quadrature tolerance must be at least 1e-12, got {tol}"
        )));
    }
    let f = |x: f64| Complex64::new(0.0, inp.m as f64 * x).exp() * x.cos().powi(inp.n as i32);
    let panels = inp.m.max(4) as usize * 2;
    let panel_tol = tol / panels as f64;
    let width = PI / panels as f64;
    let mut value = Complex64::zero();
    for p in 0..panels {
        let a = -PI / 2.0 + width * p as f64;
        let b = a + width;
        let mid = 0.5 * (a + b);
        let fa = f(a);
        let fb = f(b);
        let fm = f(mid);
        let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        value += simpson(&f, a, b, fa, fm, fb, whole, panel_tol, 40)?;
    }
    if value.im.abs() >= tol {
        return Err(CgError::Convergence(format!(
            "imaginary residue {} exceeds tolerance {tol}",
            value.im
        )));
    }
    Ok(value.re)
}

#[allow(clippy::too_many_arguments)]
fn simpson(
    f: &impl Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    fa: Complex64,
    fm: Complex64,
    fb: Complex64,
    whole: Complex64,
    tol: f64,
    depth: u32,
) -> Result<Complex64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.norm() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(CgError::Convergence(format!(
            "quadrature failed to converge on [{a}, {b}]"
        )));
    }
    let half_tol = 0.5 * tol;
    Ok(simpson(f, a, m, fa, flm, fm, left, half_tol, depth - 1)?
        + simpson(f, m, b, fm, frm, fb, right, half_tol, depth - 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact_f64(m: i64, n: i64) -> f64 {
        f_exact(&ModelInput::new(m, n).unwrap()).value()
    }

    #[test]
    fn closed_forms_at_small_orders() {
        assert!((exact_f64(1, 1) - PI / 2.0).abs() < 1e-15);
        assert!((exact_f64(2, 1) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(exact_f64(3, 1), 0.0);
        assert!((exact_f64(1, 2) - 4.0 / 3.0).abs() < 1e-15);
        assert!((exact_f64(4, 1) + 2.0 / 15.0).abs() < 1e-15);
        println!(
            "F(1,1) = {}, F(2,1) = {}, F(4,1) = {}",
            exact_f64(1, 1),
            exact_f64(2, 1),
            exact_f64(4, 1)
        );
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        assert!(matches!(
            ModelInput::new(0, 3),
            Err(CgError::InvalidInput(_))
        ));
        assert!(matches!(
            ModelInput::new(3, -1),
            Err(CgError::InvalidInput(_))
        ));
        let inp = ModelInput::new(2, 2).unwrap();
        assert!(matches!(
            f_quadrature(&inp, 1e-13),
            Err(CgError::InvalidInput(_))
        ));
    }

    #[test]
    fn quadrature_agrees_with_closed_forms() {
        // (16, 2) and (32, 3) pin the anti-aliasing pre-split: pure powers
        // of two were invisible to dyadic midpoints before it.
        for (m, n) in [
            (1, 1),
            (2, 1),
            (3, 1),
            (1, 2),
            (7, 12),
            (12, 7),
            (9, 9),
            (16, 2),
            (32, 3),
        ] {
            let inp = ModelInput::new(m, n).unwrap();
            let q = f_quadrature(&inp, 1e-11).unwrap();
            let e = exact_f64(m, n);
            println!("F({m},{n}): quadrature {q:.15e} exact {e:.15e}");
            assert!((q - e).abs() < 1e-10, "F({m},{n})");
        }
    }

    #[test]
    fn asymptotic_tracks_exact_at_moderate_order() {
        let oscillatory = ModelInput::new(20, 40).unwrap();
        let ratio = f_asymptotic(&oscillatory).unwrap() / exact_f64(20, 40);
        println!("n > m ratio: {ratio}");
        assert!((ratio - 1.0).abs() < 0.05);

        let decaying = ModelInput::new(81, 40).unwrap();
        let ratio = f_asymptotic(&decaying).unwrap() / exact_f64(81, 40);
        println!("n < m ratio: {ratio}");
        assert!((ratio - 1.0).abs() < 0.05);

        assert_eq!(
            f_asymptotic(&ModelInput::new(42, 40).unwrap()).unwrap(),
            0.0
        );
        assert!(matches!(
            f_asymptotic(&ModelInput::new(40, 40).unwrap()),
            Err(CgError::CriticalRatio)
        ));
    }

    #[test]
    fn single_saddle_is_half_the_asymptotic_magnitude() {
        for (m, n) in [(81, 40), (15, 4), (9, 2)] {
            let inp = ModelInput::new(m, n).unwrap();
            let asym = f_asymptotic(&inp).unwrap().abs();
            let gauss = single_branch_gaussian(&inp).unwrap();
            println!("({m},{n}): asym {asym:.15e} gaussian {gauss:.15e}");
            assert!((asym / gauss - 2.0).abs() < 1e-12);
        }
        assert!(single_branch_gaussian(&ModelInput::new(3, 9).unwrap()).is_err());
    }

    #[test]
    fn exact_pi_flag_follows_parity() {
        assert!(f_exact(&ModelInput::new(2, 4).unwrap()).times_pi);
        assert!(!f_exact(&ModelInput::new(3, 4).unwrap()).times_pi);
        // m > n with even difference vanishes outright
        let z = f_exact(&ModelInput::new(6, 4).unwrap());
        assert!(z.coefficient.is_zero());
    }
}
