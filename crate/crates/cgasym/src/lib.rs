//! Exact and semiclassical Clebsch-Gordan coefficients.
//!
//! The exact engine produces coefficients as signed square roots of
//! rationals in arbitrary precision. On top of it sit a region classifier
//! for the (m1, m2) plane, stationary-phase evaluators of first and higher
//! order, equivalent all-real forms, and a one-dimensional model integral
//! that isolates the analytic structure.

pub mod allreal;
pub mod error;
pub mod exact;
mod factorial;
pub mod halfint;
pub mod higher;
pub mod model1d;
mod numeric;
pub mod region;
pub mod stationary;

pub use error::{CgError, Result};
pub use exact::ExactRadical;
pub use halfint::{HalfInt, QuantumNumbers};
pub use region::RegionClass;

use num_rational::BigRational;

/// Evaluation routes exposed by the command line and the bindings.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Method {
    Exact,
    First,
    AllReal,
    Higher,
}

impl Method {
    pub fn parse(s: &str) -> Result<Method> {
        match s {
            "exact" => Ok(Method::Exact),
            "first" => Ok(Method::First),
            "allreal" => Ok(Method::AllReal),
            "higher" => Ok(Method::Higher),
            other => Err(CgError::Parse(format!(
                "unknown method '{other}' (expected exact, first, allreal or higher)"
            ))),
        }
    }
}

/// One evaluated coefficient plus the classification context callers
/// usually want alongside it.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub value: f64,
    /// Present only for the exact route.
    pub exact: Option<ExactRadical>,
    pub region: RegionClass,
    pub beta_squared: BigRational,
    pub near_caustic: bool,
}

/// Evaluates q by the requested route and attaches region data. The
/// all-real route dispatches on the region by itself.
pub fn evaluate(q: &QuantumNumbers, method: Method) -> Result<Evaluation> {
    evaluate_with_caustic_scale(q, method, 1.0)
}

/// evaluate with a tunable near-caustic threshold scale (the flag trips
/// when |beta^2| < scale x (j1+j2+j)^3).
pub fn evaluate_with_caustic_scale(
    q: &QuantumNumbers,
    method: Method,
    caustic_scale: f64,
) -> Result<Evaluation> {
    let region = region::classify(q);
    let beta_squared = region::beta_squared(q);
    let near_caustic = region::near_caustic(q, caustic_scale);
    let (value, exact) = match method {
        Method::Exact => {
            let r = exact::wigner_sum(q);
            (r.to_f64()?, Some(r))
        }
        Method::First => (stationary::first_order(q)?, None),
        Method::Higher => (higher::higher_order(q)?, None),
        Method::AllReal => match region {
            RegionClass::Allowed => (allreal::allowed_allreal(q, true)?, None),
            RegionClass::Forbidden(_) => (allreal::forbidden_allreal(q)?, None),
            RegionClass::Boundary => return Err(CgError::Boundary),
            RegionClass::TriangleForbidden => {
                return Err(CgError::Domain(format!(
                    "all-real forms are undefined outside the triangle-allowed region: {q}"
                )))
            }
        },
    };
    Ok(Evaluation { value, exact, region, beta_squared, near_caustic })
}
