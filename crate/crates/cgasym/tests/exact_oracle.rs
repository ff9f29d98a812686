//! Exact-engine regression tests against values frozen from an independent
//! computer-algebra evaluation (symbolic Condon-Shortley coefficients and
//! 40-digit quadrature of the model integral).

use cgasym::exact::{exact_m0, wigner_sum};
use cgasym::model1d::{f_exact, f_quadrature, ModelInput};
use cgasym::QuantumNumbers;
use num_bigint::BigInt;
use num_rational::BigRational;

fn q(t: [i64; 6]) -> QuantumNumbers {
    QuantumNumbers::from_twice(t).unwrap()
}

fn rational(num: i128, den: i128) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// (2j1, 2m1, 2j2, 2m2, 2j, 2m, sign, radicand numerator, denominator)
const FROZEN_SQUARES: [(i64, i64, i64, i64, i64, i64, i8, i128, i128); 26] = [
    (2, 0, 2, 0, 4, 0, 1, 2, 3),
    (1, 1, 1, -1, 2, 0, 1, 1, 2),
    (1, 1, 1, 1, 2, 2, 1, 1, 1),
    (4, 0, 4, 0, 4, 0, -1, 2, 7),
    (4, 2, 4, -2, 4, 0, 1, 1, 14),
    (4, 4, 4, -2, 6, 2, 1, 3, 10),
    (6, 2, 4, 0, 8, 2, 1, 3, 28),
    (6, -4, 8, 2, 10, -2, 1, 625, 3276),
    (3, 1, 5, -3, 6, -2, 1, 49, 120),
    (3, 3, 3, -1, 4, 2, 1, 1, 2),
    (5, 3, 4, -2, 7, 1, 1, 121, 315),
    (8, 0, 8, 0, 8, 0, 1, 162, 1001),
    (10, 2, 8, -4, 6, -2, 1, 1849, 25740),
    (12, 4, 10, -2, 14, 2, -1, 134689, 1293292),
    (7, 5, 7, -3, 10, 2, 1, 80, 273),
    (9, -1, 7, 3, 12, 2, 1, 1, 660),
    (6, 6, 6, -6, 6, 0, 1, 1, 6),
    (8, 2, 6, 4, 4, 6, 0, 0, 1),
    (10, 10, 10, -4, 12, 6, 1, 105, 374),
    (12, 0, 12, 0, 24, 0, 1, 30492, 96577),
    (4, 2, 4, 2, 4, 4, -1, 3, 7),
    (14, 6, 10, -8, 16, -2, 1, 39, 209),
    (20, 10, 30, 16, 40, 26, -1, 695645, 5070582231),
    (21, 11, 31, 15, 40, 26, -1, 3808248020, 79439121619),
    (15, 7, 25, -13, 30, -6, 1, 1292, 78039),
    (40, 20, 60, 30, 80, 50, -1, 532782528478609959, 14567560577668528786),
];

#[test]
fn exact_values_match_frozen_table() {
    for (tj1, tm1, tj2, tm2, tj, tm, sign, num, den) in FROZEN_SQUARES {
        let point = q([tj1, tm1, tj2, tm2, tj, tm]);
        let value = wigner_sum(&point);
        println!("{point}: {value}");
        assert_eq!(value.sign(), sign, "sign at {point}");
        assert_eq!(
            value.radicand(),
            &rational(num, den),
            "radicand at {point}"
        );
    }
}

/// (doubled tuple, 20-digit decimal of the exact value)
const FROZEN_DECIMALS: [([i64; 6], f64); 4] = [
    ([400, 200, 600, 300, 800, 500], 0.070349885486955685308),
    ([400, 200, 601, 301, 801, 501], 0.073063592302754721253),
    ([400, 300, 600, -500, 800, -200], 3.0896095158223171373e-19),
    ([400, 300, 601, -499, 801, -199], 5.3271775984130409040e-19),
];

#[test]
fn large_point_decimals_match() {
    for (t, expected) in FROZEN_DECIMALS {
        let point = q(t);
        let value = wigner_sum(&point).to_f64().unwrap();
        println!("{point}: {value:.18e}");
        assert!(
            (value / expected - 1.0).abs() < 1e-12,
            "{point}: {value} vs {expected}"
        );
    }
}

/// (j1, j2, j, sign, radicand numerator, denominator) at m1 = m2 = m = 0
const FROZEN_M0: [(i64, i64, i64, i8, i128, i128); 6] = [
    (1, 1, 2, 1, 2, 3),
    (2, 2, 2, -1, 2, 7),
    (3, 2, 3, -1, 4, 15),
    (5, 4, 7, -1, 1400, 7293),
    (6, 6, 6, -1, 400, 3553),
    (4, 3, 5, -1, 20, 91),
];

#[test]
fn m0_closed_form_matches_table_and_general_sum() {
    for (j1, j2, j, sign, num, den) in FROZEN_M0 {
        let closed = exact_m0(j1, j2, j).unwrap();
        let general = wigner_sum(&q([2 * j1, 0, 2 * j2, 0, 2 * j, 0]));
        println!("({j1},{j2},{j}): {closed}");
        assert_eq!(closed.sign(), sign);
        assert_eq!(closed.radicand(), &rational(num, den));
        assert_eq!(general.sign(), closed.sign());
        assert_eq!(general.radicand(), closed.radicand());
    }
    // odd j1 + j2 + j vanishes
    let odd = exact_m0(2, 2, 3).unwrap();
    assert!(odd.is_zero());
}

/// (m, n, 25-digit real part of the model integral)
const FROZEN_MODEL: [(i64, i64, f64); 19] = [
    (1, 1, 1.570796326794896619231322),
    (2, 1, 0.6666666666666666666666667),
    (3, 1, 0.0),
    (1, 2, 1.333333333333333333333333),
    (2, 2, 0.7853981633974483096156608),
    (5, 2, -0.03809523809523809523809524),
    (4, 3, 0.1142857142857142857142857),
    (3, 4, 0.4571428571428571428571429),
    (7, 4, -0.004617604617604617604617605),
    (2, 6, 0.736310778185107790264682),
    (9, 6, -0.0007104007104007104007104007),
    (6, 9, 0.1193473193473193473193473),
    (11, 8, -0.0001231654482428476236525772),
    (8, 11, 0.04064459792013971580535048),
    (40, 20, 0.0),
    (20, 40, 0.002421988108383489117774001),
    (41, 20, 1.7876047514633712992002e-15),
    (21, 40, 0.001398520049521788051810532),
    (13, 13, 0.0003834951969714103074295219),
];

#[test]
fn model_integral_matches_frozen_quadrature() {
    for (m, n, expected) in FROZEN_MODEL {
        let inp = ModelInput::new(m, n).unwrap();
        let exact = f_exact(&inp).value();
        println!("F({m},{n}) = {exact:.18e}");
        if expected == 0.0 {
            assert_eq!(exact, 0.0, "F({m},{n})");
        } else {
            assert!(
                (exact / expected - 1.0).abs() < 1e-12,
                "F({m},{n}): {exact} vs {expected}"
            );
        }
        let quad = f_quadrature(&inp, 1e-11).unwrap();
        assert!(
            (quad - exact).abs() < 1e-9 * exact.abs().max(1.0),
            "quadrature F({m},{n}): {quad} vs {exact}"
        );
    }
}
