//! (m1, m2) grid sweeps over fixed j's, written as CSV.
//!
//! Rows are evaluated in parallel but emitted in a fixed order (m1 outer,
//! m2 inner, both ascending), so identical flags give identical bytes.

use cgasym::exact::wigner_sum;
use cgasym::{higher, region, stationary, HalfInt, QuantumNumbers};
use rayon::prelude::*;

use crate::render::{full, rational_f64};
use crate::CliError;

pub const HEADER: &str =
    "m1,m2,region,subregion,sign_function,beta2,exact,first,higher,rel_err_first,rel_err_higher";

/// Inclusive half-integer range with a positive integer step.
#[derive(Clone, Copy, Debug)]
pub struct MRange {
    pub lo: HalfInt,
    pub hi: HalfInt,
    pub step: HalfInt,
}

impl MRange {
    /// Parses "lo:hi" or "lo:hi:step"; entries use the same integer,
    /// p/2 or .5 forms as everywhere else.
    pub fn parse(s: &str) -> Result<MRange, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 2 && parts.len() != 3 {
            return Err(format!("range '{s}' must look like lo:hi or lo:hi:step"));
        }
        let half = |p: &str| HalfInt::parse(p).map_err(|e| e.to_string());
        let lo = half(parts[0])?;
        let hi = half(parts[1])?;
        let step = if parts.len() == 3 {
            half(parts[2])?
        } else {
            HalfInt::from_int(1)
        };
        MRange { lo, hi, step }.validated()
    }

    pub fn covering(j: HalfInt) -> MRange {
        MRange { lo: -j, hi: j, step: HalfInt::from_int(1) }
    }

    fn validated(self) -> Result<MRange, String> {
        if self.step.twice() <= 0 {
            return Err(format!("step {} must be positive", self.step));
        }
        if !self.step.is_integer() {
            return Err(format!(
                "step {} must be an integer; a half step changes the parity of m",
                self.step
            ));
        }
        if self.lo > self.hi {
            return Err(format!("range start {} exceeds end {}", self.lo, self.hi));
        }
        Ok(self)
    }

    /// The range entries must carry the parity of the j they project on.
    fn check_parity(&self, name: &str, j: HalfInt) -> Result<(), String> {
        for (which, v) in [("start", self.lo), ("end", self.hi)] {
            if (j.twice() - v.twice()) % 2 != 0 {
                return Err(format!(
                    "{name} range {which} {v} does not match the parity of its j = {j}"
                ));
            }
        }
        Ok(())
    }

    fn values(&self) -> Vec<HalfInt> {
        let mut out = Vec::new();
        let mut t = self.lo.twice();
        while t <= self.hi.twice() {
            out.push(HalfInt::from_twice(t));
            t += self.step.twice();
        }
        out
    }
}

pub struct SweepSpec {
    pub j1: HalfInt,
    pub j2: HalfInt,
    pub j: HalfInt,
    pub m1_range: MRange,
    pub m2_range: MRange,
    pub exact_cap: i64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), String> {
        for (name, j) in [("j1", self.j1), ("j2", self.j2), ("j", self.j)] {
            if j.twice() < 0 {
                return Err(format!("{name} = {j} is negative"));
            }
        }
        if (self.j1.twice() + self.j2.twice() + self.j.twice()) % 2 != 0 {
            return Err(format!(
                "j1 + j2 + j must be an integer, got {}, {}, {}",
                self.j1, self.j2, self.j
            ));
        }
        self.m1_range.check_parity("m1", self.j1)?;
        self.m2_range.check_parity("m2", self.j2)?;
        Ok(())
    }
}

/// Renders the full sweep, header line included.
pub fn run(spec: &SweepSpec) -> Result<String, CliError> {
    spec.validate().map_err(CliError::usage)?;
    let max_tj = spec.j1.twice().max(spec.j2.twice()).max(spec.j.twice());
    let with_exact = max_tj <= spec.exact_cap;

    let mut points = Vec::new();
    for m1 in spec.m1_range.values() {
        for m2 in spec.m2_range.values() {
            points.push((m1, m2));
        }
    }
    let rows: Vec<String> = points
        .par_iter()
        .map(|&(m1, m2)| row(spec, m1, m2, with_exact))
        .collect();

    let mut out = String::with_capacity(rows.len() * 64 + HEADER.len() + 1);
    out.push_str(HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    Ok(out)
}

fn row(spec: &SweepSpec, m1: HalfInt, m2: HalfInt, with_exact: bool) -> String {
    // Constructible for any grid point: m = m1 + m2 carries the parity of
    // j1 + j2, which matches j because j1 + j2 + j is an integer.
    let q = QuantumNumbers::new(spec.j1, m1, spec.j2, m2, spec.j, m1 + m2)
        .expect("grid points satisfy the structural invariants");
    let class = region::classify(&q);
    let beta2 = rational_f64(&region::beta_squared(&q));
    let (subregion, sign_function) = match class.forbidden() {
        Some(info) => (info.subregion.to_string(), info.sign_function.to_string()),
        None => (String::new(), String::new()),
    };
    let exact = with_exact.then(|| wigner_sum(&q));
    let exact_cell = exact.as_ref().map(|r| r.to_string()).unwrap_or_default();
    let exact_f64 = exact.as_ref().and_then(|r| r.to_f64().ok()).filter(|v| *v != 0.0);

    // Boundary and triangle-forbidden points have no asymptotic value and
    // leave the cells empty; so do magnitudes that underflow binary64.
    let first = stationary::first_order(&q).ok();
    let higher = higher::higher_order(&q).ok();
    let float_cell = |v: &Option<f64>| v.map(full).unwrap_or_default();
    let rel_cell = |v: &Option<f64>| match (v, exact_f64) {
        (Some(v), Some(e)) => full(v / e - 1.0),
        _ => String::new(),
    };

    format!(
        "{m1},{m2},{},{subregion},{sign_function},{},{exact_cell},{},{},{},{}",
        class.tag(),
        full(beta2),
        float_cell(&first),
        float_cell(&higher),
        rel_cell(&first),
        rel_cell(&higher),
    )
}
