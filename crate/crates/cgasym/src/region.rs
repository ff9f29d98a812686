//! Classification of quantum numbers in the (m1, m2) plane.
//!
//! For fixed j-values the valid projections fill a hexagon, and the
//! inscribed ellipse beta^2 = 0 separates the classically allowed
//! interior from six forbidden corner pieces. Every decision here is
//! made on exact rationals; floating point appears only in the derived
//! lambda/alpha magnitudes and the exported tangency coordinates.

use crate::error::{CgError, Result};
use crate::halfint::{HalfInt, QuantumNumbers};
use crate::numeric::rational_to_f64;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// The two sign choices in the stationary-point cotangent solutions.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Branch {
    Upper,
    Lower,
}

/// Index of one of the three lambda magnitudes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Lambda {
    L1,
    L2,
    L3,
}

impl std::fmt::Display for Lambda {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Lambda::L1 => write!(f, "lambda1"),
            Lambda::L2 => write!(f, "lambda2"),
            Lambda::L3 => write!(f, "lambda3"),
        }
    }
}

/// One of the six forbidden corner pieces.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Subregion {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl Subregion {
    pub const ALL: [Subregion; 6] = [
        Subregion::I,
        Subregion::II,
        Subregion::III,
        Subregion::IV,
        Subregion::V,
        Subregion::VI,
    ];

    /// Stationary-point root used throughout this subregion.
    pub fn branch(self) -> Branch {
        match self {
            Subregion::I | Subregion::III | Subregion::V => Branch::Lower,
            Subregion::II | Subregion::IV | Subregion::VI => Branch::Upper,
        }
    }

    /// Which lambda is strictly largest inside this subregion.
    pub fn largest_lambda(self) -> Lambda {
        match self {
            Subregion::I | Subregion::IV => Lambda::L3,
            Subregion::II | Subregion::V => Lambda::L2,
            Subregion::III | Subregion::VI => Lambda::L1,
        }
    }

    /// Region-wise constant sign of the coefficient, +1 or -1.
    pub fn sign_function(self, q: &QuantumNumbers) -> i8 {
        // Exponents are integers for valid quantum numbers; work with
        // doubled values and halve after combining.
        let twice = match self {
            Subregion::I => 0,
            Subregion::II => q.j1.twice() - q.m1.twice(),
            Subregion::III => q.j1.twice() - q.j.twice() + q.m2.twice(),
            Subregion::IV => q.j1.twice() + q.j2.twice() - q.j.twice(),
            Subregion::V => q.j2.twice() - q.j.twice() - q.m1.twice(),
            Subregion::VI => q.j2.twice() + q.m2.twice(),
        };
        debug_assert!(twice % 2 == 0, "sign-function exponent must be an integer");
        if (twice / 2).rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    fn from_table(largest: Lambda, branch: Branch) -> Subregion {
        match (largest, branch) {
            (Lambda::L3, Branch::Lower) => Subregion::I,
            (Lambda::L2, Branch::Upper) => Subregion::II,
            (Lambda::L1, Branch::Lower) => Subregion::III,
            (Lambda::L3, Branch::Upper) => Subregion::IV,
            (Lambda::L2, Branch::Lower) => Subregion::V,
            (Lambda::L1, Branch::Upper) => Subregion::VI,
        }
    }
}

impl std::fmt::Display for Subregion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Subregion::I => "I",
            Subregion::II => "II",
            Subregion::III => "III",
            Subregion::IV => "IV",
            Subregion::V => "V",
            Subregion::VI => "VI",
        };
        write!(f, "{s}")
    }
}

/// Full classification payload for a forbidden point.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ForbiddenInfo {
    pub subregion: Subregion,
    pub branch: Branch,
    pub sign_function: i8,
    pub largest_lambda: Lambda,
    /// Set when the branch polynomial vanished exactly and the branch
    /// had to be chosen by subdominance instead.
    pub degenerate: bool,
}

/// Where a set of quantum numbers falls relative to the caustic.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum RegionClass {
    /// Selection rule or hexagon/triangle conditions fail; the exact
    /// coefficient is identically zero.
    TriangleForbidden,
    /// Exactly on the caustic beta^2 = 0.
    Boundary,
    Allowed,
    Forbidden(ForbiddenInfo),
}

impl RegionClass {
    pub fn tag(&self) -> &'static str {
        match self {
            RegionClass::TriangleForbidden => "TriangleForbidden",
            RegionClass::Boundary => "Boundary",
            RegionClass::Allowed => "Allowed",
            RegionClass::Forbidden(_) => "Forbidden",
        }
    }

    pub fn forbidden(&self) -> Option<&ForbiddenInfo> {
        match self {
            RegionClass::Forbidden(info) => Some(info),
            _ => None,
        }
    }
}

impl std::fmt::Display for RegionClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RegionClass::Forbidden(info) => write!(f, "Forbidden({})", info.subregion),
            other => write!(f, "{}", other.tag()),
        }
    }
}

impl Serialize for RegionClass {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = ser.serialize_struct("RegionClass", 5)?;
        s.serialize_field("tag", self.tag())?;
        match self {
            RegionClass::Forbidden(info) => {
                s.serialize_field("subregion", &info.subregion.to_string())?;
                s.serialize_field(
                    "branch",
                    match info.branch {
                        Branch::Upper => "Upper",
                        Branch::Lower => "Lower",
                    },
                )?;
                s.serialize_field("sign_function", &info.sign_function)?;
                s.serialize_field("largest_lambda", &info.largest_lambda.to_string())?;
            }
            _ => {
                s.skip_field("subregion")?;
                s.skip_field("branch")?;
                s.skip_field("sign_function")?;
                s.skip_field("largest_lambda")?;
            }
        }
        s.end()
    }
}

fn big(n: i128) -> BigInt {
    BigInt::from(n)
}

fn ratio(num: BigInt, den: i128) -> BigRational {
    BigRational::new(num, big(den))
}

/// Exact value of
/// 4 m1 m2 j^2 - 4 m m1 j2^2 - 4 m m2 j1^2
///   + (j1+j2-j)(j+j2-j1)(j+j1-j2)(j1+j2+j).
///
/// Positive in the classically allowed region, zero on the caustic,
/// negative in the forbidden region. Equals 16 times the squared area
/// of the lambda-triangle when that triangle exists.
pub fn beta_squared(q: &QuantumNumbers) -> BigRational {
    let tj1 = q.j1.twice() as i128;
    let tm1 = q.m1.twice() as i128;
    let tj2 = q.j2.twice() as i128;
    let tm2 = q.m2.twice() as i128;
    let tj = q.j.twice() as i128;
    let tm = q.m.twice() as i128;

    // Doubling every quantum number scales the degree-4 expression by 16.
    let num = 4 * tm1 * tm2 * tj * tj - 4 * tm * tm1 * tj2 * tj2 - 4 * tm * tm2 * tj1 * tj1
        + (tj1 + tj2 - tj) * (tj + tj2 - tj1) * (tj + tj1 - tj2) * (tj1 + tj2 + tj);
    let value = ratio(big(num), 16);

    if cfg!(debug_assertions) && value.is_positive() {
        heron_check(q, &value);
    }
    value
}

/// Cross-checks a positive beta^2 against 16 x Heron's formula on the
/// lambda-triangle, which only exists when every |m| is within range.
fn heron_check(q: &QuantumNumbers, value: &BigRational) {
    let l2 = match lambda_squared(q) {
        Ok(l2) => l2,
        Err(_) => return,
    };
    let [a, b, c] = l2.map(|x| rational_to_f64(&x));
    let heron = 2.0 * (a * b + b * c + c * a) - a * a - b * b - c * c;
    let direct = rational_to_f64(value);
    if heron.is_finite() && direct.is_finite() {
        debug_assert!(
            (heron - direct).abs() <= 1e-9 * direct.abs().max(1.0),
            "area form {heron} disagrees with direct beta^2 {direct} for {q}"
        );
    }
}

/// The three exact squared lambda magnitudes (j1^2-m1^2, j2^2-m2^2, j^2-m^2).
pub fn lambda_squared(q: &QuantumNumbers) -> Result<[BigRational; 3]> {
    let pair = |j: HalfInt, m: HalfInt| -> Result<BigRational> {
        let tj = j.twice() as i128;
        let tm = m.twice() as i128;
        if tm.abs() > tj {
            return Err(CgError::Domain(format!(
                "|{m}| exceeds {j}; lambda is undefined"
            )));
        }
        Ok(ratio(big(tj * tj - tm * tm), 4))
    };
    Ok([pair(q.j1, q.m1)?, pair(q.j2, q.m2)?, pair(q.j, q.m)?])
}

/// Exact alpha^2 = (j+j1+j2)(-j+j1+j2)(j-j1+j2)(j+j1-j2).
pub fn alpha_squared(q: &QuantumNumbers) -> BigRational {
    let tj1 = q.j1.twice() as i128;
    let tj2 = q.j2.twice() as i128;
    let tj = q.j.twice() as i128;
    let num = (tj + tj1 + tj2) * (-tj + tj1 + tj2) * (tj - tj1 + tj2) * (tj + tj1 - tj2);
    ratio(big(num), 16)
}

/// Triangle side lengths of the lambda-triangle plus four times the
/// area of the j-triangle, as binary64.
#[derive(Clone, Copy, Debug)]
pub struct LambdaAlpha {
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda3: f64,
    pub alpha: f64,
}

pub fn lambda_alpha(q: &QuantumNumbers) -> Result<LambdaAlpha> {
    let l2 = lambda_squared(q)?;
    let a2 = alpha_squared(q);
    if a2.is_negative() {
        return Err(CgError::Domain(format!(
            "triangle inequalities fail for {q}; alpha is undefined"
        )));
    }
    let sqrt = |r: &BigRational| rational_to_f64(r).max(0.0).sqrt();
    Ok(LambdaAlpha {
        lambda1: sqrt(&l2[0]),
        lambda2: sqrt(&l2[1]),
        lambda3: sqrt(&l2[2]),
        alpha: sqrt(&a2),
    })
}

/// The three exact dot products whose sign product selects the branch.
/// Factor k vanishes on the line through the origin and the k-th pair
/// of caustic-hexagon tangency points.
pub fn branch_factors(q: &QuantumNumbers) -> [BigRational; 3] {
    let tj1 = q.j1.twice() as i128;
    let tm1 = q.m1.twice() as i128;
    let tj2 = q.j2.twice() as i128;
    let tm2 = q.m2.twice() as i128;
    let tj = q.j.twice() as i128;
    let f1 = tm1 * (-2 * tj2 * tj2) + tm2 * (tj * tj - tj1 * tj1 - tj2 * tj2);
    let f2 = tm1 * (-tj * tj + tj1 * tj1 - tj2 * tj2) + tm2 * (tj * tj + tj1 * tj1 - tj2 * tj2);
    let f3 = tm1 * (-tj * tj + tj1 * tj1 + tj2 * tj2) + tm2 * (2 * tj1 * tj1);
    // Each dot product carries one power of m and two of j: 2^3 per factor.
    [ratio(big(f1), 8), ratio(big(f2), 8), ratio(big(f3), 8)]
}

/// Product of the three branch factors. Positive selects the upper
/// root, negative the lower one.
pub fn branch_polynomial(q: &QuantumNumbers) -> BigRational {
    let [f1, f2, f3] = branch_factors(q);
    f1 * f2 * f3
}

/// Classifies q against the caustic. Total on valid quantum numbers.
pub fn classify(q: &QuantumNumbers) -> RegionClass {
    if !q.projections_consistent() || !q.triangle_allowed() {
        return RegionClass::TriangleForbidden;
    }
    let b2 = beta_squared(q);
    if b2.is_zero() {
        return RegionClass::Boundary;
    }
    if b2.is_positive() {
        return RegionClass::Allowed;
    }

    let poly = branch_polynomial(q);
    let (branch, degenerate) = if poly.is_positive() {
        (Branch::Upper, false)
    } else if poly.is_negative() {
        (Branch::Lower, false)
    } else {
        // On an exact subregion boundary the stationary points trade
        // dominance; keep the subdominant (smaller |e^g|) one. The
        // product only vanishes at caustic pinch points, so this path
        // is defensive rather than expected.
        (subdominant_branch(q), true)
    };

    let l2 = match lambda_squared(q) {
        Ok(l2) => l2,
        // Unreachable: triangle_allowed already bounds every |m|.
        Err(_) => return RegionClass::TriangleForbidden,
    };
    let mut largest = Lambda::L1;
    let mut best = l2[0].clone();
    for (lam, sq) in [(Lambda::L2, &l2[1]), (Lambda::L3, &l2[2])] {
        // Strict comparison: exact ties occur only on piece boundaries,
        // which sit on the caustic and were classified above.
        if *sq > best {
            best = sq.clone();
            largest = lam;
        }
    }

    let subregion = Subregion::from_table(largest, branch);
    RegionClass::Forbidden(ForbiddenInfo {
        subregion,
        branch,
        sign_function: subregion.sign_function(q),
        largest_lambda: largest,
        degenerate,
    })
}

fn subdominant_branch(q: &QuantumNumbers) -> Branch {
    let upper = crate::stationary::branch_log_magnitude(q, Branch::Upper);
    let lower = crate::stationary::branch_log_magnitude(q, Branch::Lower);
    match (upper, lower) {
        (Ok(u), Ok(l)) if u < l => Branch::Upper,
        _ => Branch::Lower,
    }
}

/// True when |beta^2| falls below scale x (j1+j2+j)^3, the heuristic
/// band in which quadratic stationary phase degrades near the caustic.
pub fn near_caustic(q: &QuantumNumbers, scale: f64) -> bool {
    let b2 = beta_squared(q).abs();
    let tj_sum = (q.j1.twice() + q.j2.twice() + q.j.twice()) as i128;
    let cube = ratio(big(tj_sum * tj_sum * tj_sum), 8);
    let scale = BigRational::from_float(scale).unwrap_or_else(BigRational::one);
    b2 < scale * cube
}

/// The standard 3x3 magic array of integer linear combinations.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ReggeArray {
    pub entries: [[i64; 3]; 3],
}

impl ReggeArray {
    /// Requires m = m1 + m2 and the triangle-allowed conditions; the
    /// row/column magic-sum property fails otherwise.
    pub fn from_quantum_numbers(q: &QuantumNumbers) -> Result<ReggeArray> {
        if !q.projections_consistent() {
            return Err(CgError::Domain(format!(
                "projections must satisfy m = m1 + m2 to form a magic array: {q}"
            )));
        }
        let tj1 = q.j1.twice();
        let tm1 = q.m1.twice();
        let tj2 = q.j2.twice();
        let tm2 = q.m2.twice();
        let tj = q.j.twice();
        let tm = q.m.twice();
        let entries = [
            [(-tj1 + tj2 + tj) / 2, (tj1 - tj2 + tj) / 2, (tj1 + tj2 - tj) / 2],
            [(tj1 - tm1) / 2, (tj2 - tm2) / 2, (tj + tm) / 2],
            [(tj1 + tm1) / 2, (tj2 + tm2) / 2, (tj - tm) / 2],
        ];
        for row in &entries {
            for &e in row {
                if e < 0 {
                    return Err(CgError::Domain(format!(
                        "array entry {e} is negative; {q} is outside the triangle-allowed region"
                    )));
                }
            }
        }
        Ok(ReggeArray { entries })
    }

    /// Inverse of from_quantum_numbers.
    pub fn to_quantum_numbers(&self) -> Result<QuantumNumbers> {
        let r = &self.entries;
        QuantumNumbers::from_twice([
            r[1][0] + r[2][0],
            r[2][0] - r[1][0],
            r[1][1] + r[2][1],
            r[2][1] - r[1][1],
            r[1][2] + r[2][2],
            r[1][2] - r[2][2],
        ])
    }

    pub fn transpose(&self) -> ReggeArray {
        let r = &self.entries;
        ReggeArray {
            entries: [
                [r[0][0], r[1][0], r[2][0]],
                [r[0][1], r[1][1], r[2][1]],
                [r[0][2], r[1][2], r[2][2]],
            ],
        }
    }

    pub fn permute_rows(&self, p: [usize; 3]) -> ReggeArray {
        ReggeArray {
            entries: [self.entries[p[0]], self.entries[p[1]], self.entries[p[2]]],
        }
    }

    pub fn permute_cols(&self, p: [usize; 3]) -> ReggeArray {
        let pick = |row: &[i64; 3]| [row[p[0]], row[p[1]], row[p[2]]];
        ReggeArray {
            entries: [
                pick(&self.entries[0]),
                pick(&self.entries[1]),
                pick(&self.entries[2]),
            ],
        }
    }

    /// All 72 images under row permutations, column permutations and
    /// transposition, in deterministic order.
    pub fn images(&self) -> Vec<ReggeArray> {
        const PERMS: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let mut out = Vec::with_capacity(72);
        for base in [*self, self.transpose()] {
            for rp in PERMS {
                let rowed = base.permute_rows(rp);
                for cp in PERMS {
                    out.push(rowed.permute_cols(cp));
                }
            }
        }
        out
    }

    /// Power sums p_1..p_n of the nine entries.
    pub fn power_sums(&self, n_max: u32) -> Vec<BigRational> {
        (1..=n_max)
            .map(|n| {
                let sum: BigInt = self
                    .entries
                    .iter()
                    .flatten()
                    .map(|&e| BigInt::from(e).pow(n))
                    .sum();
                BigRational::from_integer(sum)
            })
            .collect()
    }
}

/// Power sums of the magic array for q. Requires n_max >= 4 so the
/// beta^2 reconstruction (p1^4 - 6 p2 p1^2 - 27 p2^2 + 108 p4)/324 is
/// available from the result.
pub fn regge_power_sums(q: &QuantumNumbers, n_max: u32) -> Result<Vec<BigRational>> {
    if n_max < 4 {
        return Err(CgError::InvalidInput(format!(
            "n_max must be at least 4, got {n_max}"
        )));
    }
    Ok(ReggeArray::from_quantum_numbers(q)?.power_sums(n_max))
}

/// Rebuilds beta^2 from the first four power sums.
pub fn beta_squared_from_power_sums(p: &[BigRational]) -> Result<BigRational> {
    if p.len() < 4 {
        return Err(CgError::InvalidInput(
            "need power sums p1..p4 to reconstruct beta^2".into(),
        ));
    }
    let (p1, p2, p4) = (&p[0], &p[1], &p[3]);
    let c = |n: i128| BigRational::from_integer(big(n));
    let num = p1.pow(4) - c(6) * p2 * p1 * p1 - c(27) * p2 * p2 + c(108) * p4;
    Ok(num / c(324))
}

/// One hexagon edge written as a.(2 m1) + b.(2 m2) = c with integer
/// coefficients (c is the doubled bound).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EdgeLine {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

/// Caustic coefficients in doubled coordinates:
/// a20.(2m1)^2 + a11.(2m1)(2m2) + a02.(2m2)^2 + constant = 4 beta^2.
#[derive(Clone, Debug, Serialize)]
pub struct EllipseCoefficients {
    pub a20: i64,
    pub a11: i64,
    pub a02: i64,
    pub constant: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RegionGeometry {
    pub hexagon_edges: [EdgeLine; 6],
    pub ellipse: EllipseCoefficients,
    /// (m1, m2) pairs where the caustic touches the hexagon, ordered as
    /// the edges: +-m1 bound, +-m2 bound, +-m bound.
    pub tangency_points: [[f64; 2]; 6],
}

/// Exact geometry of the allowed/forbidden map for fixed j's.
pub fn region_map_geometry(j1: HalfInt, j2: HalfInt, j: HalfInt) -> Result<RegionGeometry> {
    let tj1 = j1.twice();
    let tj2 = j2.twice();
    let tj = j.twice();
    if (tj1 + tj2 + tj) % 2 != 0 {
        return Err(CgError::Domain(format!(
            "j1 + j2 + j must be an integer, got {j1}, {j2}, {j}"
        )));
    }
    if tj1 + tj2 < tj || tj + tj1 < tj2 || tj + tj2 < tj1 {
        return Err(CgError::Domain(format!(
            "triangle inequalities fail for j1={j1}, j2={j2}, j={j}"
        )));
    }
    if tj1 == 0 || tj2 == 0 || tj == 0 {
        return Err(CgError::Domain(format!(
            "hexagon degenerates when a j vanishes: j1={j1}, j2={j2}, j={j}"
        )));
    }

    let hexagon_edges = [
        EdgeLine { a: 1, b: 0, c: tj1 },
        EdgeLine { a: 1, b: 0, c: -tj1 },
        EdgeLine { a: 0, b: 1, c: tj2 },
        EdgeLine { a: 0, b: 1, c: -tj2 },
        EdgeLine { a: 1, b: 1, c: tj },
        EdgeLine { a: 1, b: 1, c: -tj },
    ];

    let (s1, s2, s3) = (tj1 as i128, tj2 as i128, tj as i128);
    let product = (s1 + s2 - s3) * (s3 + s2 - s1) * (s3 + s1 - s2) * (s1 + s2 + s3);
    // Every doubled triangle sum is even, so the product carries 1/16.
    debug_assert!(product % 4 == 0);
    let ellipse = EllipseCoefficients {
        a20: -(tj2 * tj2),
        a11: tj * tj - tj1 * tj1 - tj2 * tj2,
        a02: -(tj1 * tj1),
        constant: i64::try_from(product / 4).map_err(|_| CgError::Overflow)?,
    };

    let fj1 = j1.to_f64();
    let fj2 = j2.to_f64();
    let fj = j.to_f64();
    let d1 = fj * fj - fj1 * fj1 - fj2 * fj2;
    let t1 = [fj1, d1 / (2.0 * fj1)];
    let t2 = [d1 / (2.0 * fj2), fj2];
    let t3 = [
        (fj * fj + fj1 * fj1 - fj2 * fj2) / (2.0 * fj),
        (fj * fj + fj2 * fj2 - fj1 * fj1) / (2.0 * fj),
    ];
    let tangency_points = [
        t1,
        [-t1[0], -t1[1]],
        t2,
        [-t2[0], -t2[1]],
        t3,
        [-t3[0], -t3[1]],
    ];

    Ok(RegionGeometry {
        hexagon_edges,
        ellipse,
        tangency_points,
    })
}

/// Binary64 beta^2, used by the asymptotic evaluators.
pub(crate) fn beta_squared_f64(q: &QuantumNumbers) -> f64 {
    rational_to_f64(&beta_squared(q))
}
