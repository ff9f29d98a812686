//! Half-integer quantum numbers stored exactly as doubled integers.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{CgError, Result};

/// A half-integer j stored as 2j. The doubled representation keeps every
/// angular-momentum expression in exact integer arithmetic.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };

    pub fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub fn from_int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub fn twice(self) -> i64 {
        self.twice
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// Integer value; caller must know the parity.
    pub fn to_int(self) -> Option<i64> {
        if self.is_integer() {
            Some(self.twice / 2)
        } else {
            None
        }
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub fn to_rational(self) -> BigRational {
        BigRational::new(BigInt::from(self.twice), BigInt::from(2))
    }

    pub fn abs(self) -> HalfInt {
        HalfInt { twice: self.twice.abs() }
    }

    pub fn is_negative(self) -> bool {
        self.twice < 0
    }

    /// Accepts plain integers ("3", "-4"), halves ("601/2", "-1/2") and
    /// decimals with a .0 or .5 tail ("150.5", "-2.0").
    pub fn parse(s: &str) -> Result<HalfInt> {
        let s = s.trim();
        let bad = || CgError::Parse(format!("cannot read '{s}' as an integer or half-integer"));
        if let Some((num, den)) = s.split_once('/') {
            if den.trim() != "2" {
                return Err(CgError::Parse(format!(
                    "fraction '{s}' must have denominator 2"
                )));
            }
            let n: i64 = num.trim().parse().map_err(|_| bad())?;
            return Ok(HalfInt::from_twice(n));
        }
        if let Some((int, frac)) = s.split_once('.') {
            let negative = int.trim_start().starts_with('-');
            let whole: i64 = if int == "-" || int == "" {
                0
            } else {
                int.parse().map_err(|_| bad())?
            };
            let half = match frac {
                "0" | "00" => 0,
                "5" | "50" => 1,
                _ => return Err(bad()),
            };
            let mut twice = 2 * whole;
            twice += if negative { -half } else { half };
            return Ok(HalfInt::from_twice(twice));
        }
        let n: i64 = s.parse().map_err(|_| bad())?;
        Ok(HalfInt::from_int(n))
    }
}

impl fmt::Display for HalfInt {
    /// Canonical form: integers plain, half-odd values as "p/2".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl FromStr for HalfInt {
    type Err = CgError;
    fn from_str(s: &str) -> Result<HalfInt> {
        HalfInt::parse(s)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice + rhs.twice }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice - rhs.twice }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

/// One coupled set (j1, m1) + (j2, m2) -> (j, m).
///
/// Construction enforces only the structural invariants: every 2j is
/// nonnegative, each (j, m) pair has matching parity, and j1 + j2 + j is an
/// integer. Neither m = m1 + m2 nor the triangle inequalities are required;
/// violating those merely makes the coefficient zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct QuantumNumbers {
    pub j1: HalfInt,
    pub m1: HalfInt,
    pub j2: HalfInt,
    pub m2: HalfInt,
    pub j: HalfInt,
    pub m: HalfInt,
}

impl QuantumNumbers {
    pub fn new(
        j1: HalfInt,
        m1: HalfInt,
        j2: HalfInt,
        m2: HalfInt,
        j: HalfInt,
        m: HalfInt,
    ) -> Result<Self> {
        for (name, jv, mv) in [("j1", j1, m1), ("j2", j2, m2), ("j", j, m)] {
            if jv.twice() < 0 {
                return Err(CgError::InvalidInput(format!("2{name} = {} < 0", jv.twice())));
            }
            if (jv.twice() - mv.twice()) % 2 != 0 {
                return Err(CgError::InvalidInput(format!(
                    "{name} = {jv} and its projection {mv} differ by a non-integer"
                )));
            }
        }
        if (j1.twice() + j2.twice() + j.twice()) % 2 != 0 {
            return Err(CgError::InvalidInput(format!(
                "j1 + j2 + j = {} is not an integer",
                (j1 + j2 + j).to_f64()
            )));
        }
        Ok(QuantumNumbers { j1, m1, j2, m2, j, m })
    }

    pub fn from_twice(t: [i64; 6]) -> Result<Self> {
        QuantumNumbers::new(
            HalfInt::from_twice(t[0]),
            HalfInt::from_twice(t[1]),
            HalfInt::from_twice(t[2]),
            HalfInt::from_twice(t[3]),
            HalfInt::from_twice(t[4]),
            HalfInt::from_twice(t[5]),
        )
    }

    /// Selection rule m = m1 + m2.
    pub fn projections_consistent(&self) -> bool {
        self.m1.twice() + self.m2.twice() == self.m.twice()
    }

    /// Triangle inequalities on (j1, j2, j) plus |m| <= j, |m1| <= j1,
    /// |m2| <= j2. Everything outside carries an exactly zero coefficient.
    pub fn triangle_allowed(&self) -> bool {
        let (tj1, tj2, tj) = (self.j1.twice(), self.j2.twice(), self.j.twice());
        tj1 + tj2 - tj >= 0
            && tj + tj2 - tj1 >= 0
            && tj + tj1 - tj2 >= 0
            && self.m1.abs() <= self.j1
            && self.m2.abs() <= self.j2
            && self.m.abs() <= self.j
    }

    /// j1 + j2 + j, always an integer.
    pub fn j_sum(&self) -> i64 {
        (self.j1.twice() + self.j2.twice() + self.j.twice()) / 2
    }

    /// (j2, m2) <-> (j1, m1); the coefficient picks up (-1)^(j1+j2-j).
    pub fn exchanged(&self) -> QuantumNumbers {
        QuantumNumbers {
            j1: self.j2,
            m1: self.m2,
            j2: self.j1,
            m2: self.m1,
            j: self.j,
            m: self.m,
        }
    }

    /// All projections negated; the coefficient picks up (-1)^(j1+j2-j).
    pub fn m_negated(&self) -> QuantumNumbers {
        QuantumNumbers {
            j1: self.j1,
            m1: -self.m1,
            j2: self.j2,
            m2: -self.m2,
            j: self.j,
            m: -self.m,
        }
    }

    /// (j2, m2) <-> (j, -m); the coefficient picks up
    /// (-1)^(j1-m1) * sqrt((2j+1)/(2j2+1)).
    pub fn coupling_swapped(&self) -> QuantumNumbers {
        QuantumNumbers {
            j1: self.j1,
            m1: self.m1,
            j2: self.j,
            m2: -self.m,
            j: self.j2,
            m: -self.m2,
        }
    }

    pub fn to_twice(&self) -> [i64; 6] {
        [
            self.j1.twice(),
            self.m1.twice(),
            self.j2.twice(),
            self.m2.twice(),
            self.j.twice(),
            self.m.twice(),
        ]
    }
}

impl fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {}, {}, {})",
            self.j1, self.m1, self.j2, self.m2, self.j, self.m
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_accepted_forms() {
        for (s, twice) in [
            ("3", 6),
            ("-4", -8),
            ("601/2", 601),
            ("-1/2", -1),
            ("150.5", 301),
            ("-2.0", -4),
            ("0.5", 1),
            ("-0.5", -1),
        ] {
            assert_eq!(HalfInt::parse(s).unwrap().twice(), twice, "input {s}");
        }
        for s in ["1/3", "abc", "2.25", "1e3", ""] {
            assert!(HalfInt::parse(s).is_err(), "should reject {s}");
        }
    }

    #[test]
    fn display_round_trips_canonically() {
        for s in ["3", "-4", "601/2", "-1/2", "0"] {
            let h = HalfInt::parse(s).unwrap();
            assert_eq!(h.to_string(), s);
            assert_eq!(HalfInt::parse(&h.to_string()).unwrap(), h);
        }
        // decimals normalize to the fraction form
        assert_eq!(HalfInt::parse("150.5").unwrap().to_string(), "301/2");
        assert_eq!(HalfInt::parse("2.0").unwrap().to_string(), "2");
    }

    #[test]
    fn construction_enforces_structure() {
        assert!(QuantumNumbers::from_twice([2, 0, 2, 0, 4, 0]).is_ok());
        // m may disagree with m1 + m2; that is a zero, not an error
        assert!(QuantumNumbers::from_twice([2, 2, 2, 2, 4, 0]).is_ok());
        // |m| > j is allowed structurally
        assert!(QuantumNumbers::from_twice([2, 6, 2, 0, 4, 6]).is_ok());
        // negative j
        assert!(QuantumNumbers::from_twice([-2, 0, 2, 0, 4, 0]).is_err());
        // parity mismatch within a pair
        assert!(QuantumNumbers::from_twice([2, 1, 2, 0, 4, 1]).is_err());
        // j1 + j2 + j not an integer
        assert!(QuantumNumbers::from_twice([1, 1, 2, 0, 4, 0]).is_err());
    }

    #[test]
    fn selection_and_triangle_predicates() {
        let q = QuantumNumbers::from_twice([2, 0, 2, 0, 4, 0]).unwrap();
        assert!(q.projections_consistent() && q.triangle_allowed());
        let far = QuantumNumbers::from_twice([2, 0, 2, 0, 8, 0]).unwrap();
        assert!(!far.triangle_allowed());
        let inconsistent = QuantumNumbers::from_twice([2, 2, 2, 2, 4, 0]).unwrap();
        assert!(!inconsistent.projections_consistent());
    }
}
