use thiserror::Error;

/// Everything that can go wrong across the exact engine, the region
/// classifier and the asymptotic evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CgError {
    /// Quantum numbers that violate the structural invariants
    /// (negative j, parity mismatch between j and m, non-integer j1+j2+j).
    #[error("invalid quantum numbers: {0}")]
    InvalidInput(String),

    /// Input outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A value does not fit in binary64 (overflow or total underflow).
    #[error("value magnitude outside binary64 range")]
    Overflow,

    /// beta^2 = 0: the stationary points coalesce and every
    /// stationary-phase expression here loses its leading order.
    #[error("beta^2 = 0: the approximation breaks down on the caustic between the allowed and forbidden regions")]
    Boundary,

    /// Degenerate stationary-point data (coincident cotangents, vanishing
    /// exponential base, triangle edge).
    #[error("singular configuration: {0}")]
    Singular(String),

    /// The forbidden-region value came out with too large an imaginary part.
    #[error("imaginary residue {residue:.3e} exceeds 1e-9 of the magnitude")]
    Residue { residue: f64 },

    /// An inverse-cosine argument left [-1, 1] (or an inverse-hyperbolic
    /// argument fell below 1) by more than the clamp window.
    #[error("inverse trig argument {arg} outside its legal range")]
    ArgumentRange { arg: f64 },

    /// Symmetry dispatch failed to land in the target subregion.
    #[error("symmetry dispatch failed: {0}")]
    Mapping(String),

    /// Adaptive quadrature hit its depth limit before reaching tolerance.
    #[error("quadrature failed to converge: {0}")]
    Convergence(String),

    /// The 1-D model has no two-sided asymptotic form at m = n.
    #[error("asymptotic form undefined at the critical ratio m = n")]
    CriticalRatio,

    /// A quantum-number string could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, CgError>;
