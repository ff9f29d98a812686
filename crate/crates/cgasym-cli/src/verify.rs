//! Self-verification: cross-route and cross-module identities evaluated on
//! seeded random samples, plus fixed reference values. Prints one line per
//! check and fails the process if any check fails.

use cgasym::exact::{poly_coeff_1var, poly_coeff_2var, wigner_sum};
use cgasym::model1d::{f_asymptotic, f_exact, f_quadrature, single_branch_gaussian, ModelInput};
use cgasym::region::{self, RegionClass};
use cgasym::{allreal, higher, stationary, QuantumNumbers};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::Config;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Level {
    Quick,
    Full,
}

impl Level {
    pub fn parse(s: &str) -> Result<Level, String> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            other => Err(format!("unknown level '{other}' (expected quick or full)")),
        }
    }
}

struct Outcome {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn check(name: &'static str, pass: bool, detail: String) -> Outcome {
    Outcome { name, pass, detail }
}

/// Runs every check; returns true when all pass.
pub fn run(seed: u64, level: Level, cfg: &Config) -> bool {
    let samples = match level {
        Level::Quick => cfg.verify_quick_samples,
        Level::Full => cfg.verify_full_samples,
    };
    let exhaustive_cap = match level {
        Level::Quick => 6,
        Level::Full => 8,
    };
    let model_cap = match level {
        Level::Quick => 12,
        Level::Full => 25,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let outcomes = [
        reference_values(),
        representation_routes(exhaustive_cap),
        allreal_matches_complex(&mut rng, samples),
        symmetry_closure(&mut rng, samples),
        scaling_decay(),
        model_triangle(model_cap),
        regge_invariance(&mut rng, samples.max(100)),
    ];

    let width = outcomes.iter().map(|o| o.name.len()).max().unwrap_or(0);
    let mut passed = 0;
    for o in &outcomes {
        let verdict = if o.pass { "pass" } else { "FAIL" };
        println!("{:width$}  {verdict}  {}", o.name, o.detail);
        passed += o.pass as usize;
    }
    println!(
        "verify: {passed}/{} checks passed (level {}, seed {seed})",
        outcomes.len(),
        match level {
            Level::Quick => "quick",
            Level::Full => "full",
        }
    );
    passed == outcomes.len()
}

/// Published six-figure values for two allowed and two forbidden points;
/// the tiny forbidden magnitudes are compared relatively.
fn reference_values() -> Outcome {
    let cases: [([i64; 6], f64, f64, bool); 4] = [
        ([400, 200, 600, 300, 800, 500], 0.0703499, 0.0703496, false),
        ([400, 200, 601, 301, 801, 501], 0.0730636, 0.0730633, false),
        ([400, 300, 600, -500, 800, -200], 3.08961e-19, 3.08958e-19, true),
        ([400, 300, 601, -499, 801, -199], 5.32718e-19, 5.32712e-19, true),
    ];
    let mut worst: f64 = 0.0;
    for (t, exact_target, higher_target, relative) in cases {
        let q = QuantumNumbers::from_twice(t).expect("reference tuples are valid");
        let pairs = [
            (wigner_sum(&q).to_f64(), exact_target),
            (higher::higher_order(&q), higher_target),
        ];
        for (got, target) in pairs {
            let Ok(got) = got else {
                return check("reference values", false, format!("evaluation failed at {q}"));
            };
            let err = if relative {
                (got / target - 1.0).abs()
            } else {
                (got - target).abs() / 5e-8 * 2e-5
            };
            worst = worst.max(err);
        }
    }
    check(
        "reference values",
        worst < 2e-5,
        format!("4 exact/higher pairs reproduce to 6 s.f. (worst scaled error {worst:.2e})"),
    )
}

/// The sum route and both polynomial-coefficient routes must agree
/// exactly, sign and radicand, over an exhaustive small grid.
fn representation_routes(cap: i64) -> Outcome {
    let mut count = 0u64;
    for q in exhaustive_tuples(cap) {
        let sum = wigner_sum(&q);
        let two = poly_coeff_2var(&q);
        let one = poly_coeff_1var(&q);
        let (Ok(two), Ok(one)) = (two, one) else {
            return check("representation routes", false, format!("route failed at {q}"));
        };
        if sum != two || sum != one {
            return check("representation routes", false, format!("routes disagree at {q}"));
        }
        count += 1;
    }
    check(
        "representation routes",
        true,
        format!("3 exact routes identical on {count} tuples (all 2j <= {cap})"),
    )
}

/// First-order complex pipeline against the all-real forms, both regions.
fn allreal_matches_complex(rng: &mut ChaCha8Rng, samples: usize) -> Outcome {
    let mut worst: f64 = 0.0;
    for allowed in [true, false] {
        for _ in 0..samples {
            let q = sample_region(rng, allowed);
            let complex = stationary::first_order(&q).expect("sampled off the caustic");
            let real = if allowed {
                allreal::allowed_allreal(&q, true)
            } else {
                allreal::forbidden_allreal(&q)
            }
            .expect("sampled off the caustic");
            worst = worst.max((real / complex - 1.0).abs());
        }
    }
    check(
        "all-real vs complex",
        worst < 1e-9,
        format!("{} points per region, worst relative spread {worst:.2e}", samples),
    )
}

/// Exchange, projection negation and coupling swap as exact identities on
/// the signed squares.
fn symmetry_closure(rng: &mut ChaCha8Rng, samples: usize) -> Outcome {
    for _ in 0..samples {
        let q = sample_tuple(rng, 1, 30);
        let base = wigner_sum(&q);
        let ex = wigner_sum(&q.exchanged());
        let neg = wigner_sum(&q.m_negated());
        let cs = wigner_sum(&q.coupling_swapped());
        if ex.radicand() != base.radicand() || neg.radicand() != base.radicand() {
            return check("symmetry closure", false, format!("radicand mismatch at {q}"));
        }
        let parity_ok = {
            let s = ((q.j1.twice() + q.j2.twice() - q.j.twice()) / 2).rem_euclid(2);
            let flip = if s == 0 { 1 } else { -1 };
            ex.sign() == base.sign() * flip && neg.sign() == base.sign() * flip
        };
        // coupling swap scales the square by (2 j2 + 1) / (2 j + 1) and
        // carries the phase (-1)^(j1 - m1)
        let weight = BigRational::new(
            (q.j2.twice() + 1).into(),
            (q.j.twice() + 1).into(),
        );
        let cflip = if ((q.j1.twice() - q.m1.twice()) / 2).rem_euclid(2) == 0 { 1 } else { -1 };
        let weight_ok = cs.radicand().clone() == base.radicand() * &weight
            && cs.sign() == base.sign() * cflip;
        if !parity_ok || !weight_ok {
            return check("symmetry closure", false, format!("sign or weight mismatch at {q}"));
        }
    }
    check(
        "symmetry closure",
        true,
        format!("exchange, m-negation, coupling swap exact on {samples} tuples"),
    )
}

/// First-order error must fall like 1/s and corrected error like 1/s^2
/// along a fixed interior direction scaled by s = 1, 2, 4, 8.
fn scaling_decay() -> Outcome {
    let base = [32i64, 16, 48, 24, 64, 40];
    let mut ln_s = Vec::new();
    let mut ln_e1 = Vec::new();
    let mut ln_e2 = Vec::new();
    for s in [1i64, 2, 4, 8] {
        let q = QuantumNumbers::from_twice(base.map(|x| x * s)).expect("ladder tuples are valid");
        let exact = wigner_sum(&q).to_f64().expect("moderate magnitude");
        let first = stationary::first_order(&q).expect("interior point");
        let corrected = higher::higher_order(&q).expect("interior point");
        ln_s.push((s as f64).ln());
        ln_e1.push((first / exact - 1.0).abs().ln());
        ln_e2.push((corrected / exact - 1.0).abs().ln());
    }
    let slope = |ys: &[f64]| {
        let n = ys.len() as f64;
        let xm = ln_s.iter().sum::<f64>() / n;
        let ym = ys.iter().sum::<f64>() / n;
        let num: f64 = ln_s.iter().zip(ys).map(|(x, y)| (x - xm) * (y - ym)).sum();
        let den: f64 = ln_s.iter().map(|x| (x - xm) * (x - xm)).sum();
        num / den
    };
    let e1 = -slope(&ln_e1);
    let e2 = -slope(&ln_e2);
    check(
        "scaling decay",
        (0.6..=1.4).contains(&e1) && (1.6..=2.6).contains(&e2),
        format!("decay exponents: first order {e1:.2}, corrected {e2:.2}"),
    )
}

/// Closed forms, quadrature and asymptotics of the 1-D model integral.
fn model_triangle(cap: i64) -> Outcome {
    let mut worst: f64 = 0.0;
    for m in 1..=cap {
        for n in 1..=cap {
            let inp = ModelInput::new(m, n).expect("positive orders");
            let exact = f_exact(&inp).value();
            let quad = match f_quadrature(&inp, 1e-10) {
                Ok(v) => v,
                Err(e) => {
                    return check("model integral", false, format!("quadrature failed at ({m},{n}): {e}"))
                }
            };
            worst = worst.max((quad - exact).abs());
        }
    }
    let ratio_osc = f_asymptotic(&ModelInput::new(20, 40).unwrap()).unwrap()
        / f_exact(&ModelInput::new(20, 40).unwrap()).value();
    let ratio_dec = f_asymptotic(&ModelInput::new(81, 40).unwrap()).unwrap()
        / f_exact(&ModelInput::new(81, 40).unwrap()).value();
    let two = f_asymptotic(&ModelInput::new(15, 4).unwrap()).unwrap().abs()
        / single_branch_gaussian(&ModelInput::new(15, 4).unwrap()).unwrap();
    let pass = worst < 1e-9
        && (ratio_osc - 1.0).abs() < 0.05
        && (ratio_dec - 1.0).abs() < 0.05
        && (two - 2.0).abs() < 1e-12;
    check(
        "model integral",
        pass,
        format!(
            "quadrature vs closed form on {cap}x{cap} grid (worst {worst:.2e}); \
             asymptotic ratios {ratio_osc:.4}/{ratio_dec:.4}; saddle pair factor {two:.12}"
        ),
    )
}

/// beta^2 must be identical across all 72 magic-array images and must
/// match its reconstruction from the entry power sums.
fn regge_invariance(rng: &mut ChaCha8Rng, samples: usize) -> Outcome {
    for _ in 0..samples {
        let q = sample_triangle_allowed(rng);
        let b2 = region::beta_squared(&q);
        let array = region::ReggeArray::from_quantum_numbers(&q).expect("triangle-allowed");
        for image in array.images() {
            let iq = image.to_quantum_numbers().expect("images stay valid");
            if region::beta_squared(&iq) != b2 {
                return check("Regge invariance", false, format!("image changed beta^2 at {q}"));
            }
        }
        let sums = array.power_sums(4);
        let rebuilt = region::beta_squared_from_power_sums(&sums).expect("four power sums");
        if rebuilt != b2 {
            return check("Regge invariance", false, format!("power-sum identity failed at {q}"));
        }
    }
    check(
        "Regge invariance",
        true,
        format!("beta^2 constant over 72 images and power sums, {samples} points"),
    )
}

// sampling helpers

/// Every structurally valid tuple with all 2j <= cap, consistent
/// projections and triangle-allowed j's.
fn exhaustive_tuples(cap: i64) -> Vec<QuantumNumbers> {
    let mut out = Vec::new();
    for tj1 in 0..=cap {
        for tj2 in 0..=cap {
            let mut tj = (tj1 - tj2).abs();
            while tj <= (tj1 + tj2).min(cap) {
                for tm1 in (-tj1..=tj1).step_by(2) {
                    for tm2 in (-tj2..=tj2).step_by(2) {
                        let tm = tm1 + tm2;
                        if tm.abs() <= tj {
                            out.push(
                                QuantumNumbers::from_twice([tj1, tm1, tj2, tm2, tj, tm])
                                    .expect("constructed with consistent parities"),
                            );
                        }
                    }
                }
                tj += 2;
            }
        }
    }
    out
}

/// Random valid tuple with doubled j's in [2 lo, 2 hi], m = m1 + m2.
fn sample_tuple(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> QuantumNumbers {
    loop {
        let tj1 = rng.random_range(2 * lo..=2 * hi);
        let tj2 = rng.random_range(2 * lo..=2 * hi);
        let span = (tj1 - tj2).abs()..=(tj1 + tj2);
        let tj = rng.random_range(span);
        if (tj1 + tj2 + tj) % 2 != 0 {
            continue;
        }
        let tm1 = sample_projection(rng, tj1);
        let tm2 = sample_projection(rng, tj2);
        let tm = tm1 + tm2;
        if tm.abs() > tj {
            continue;
        }
        return QuantumNumbers::from_twice([tj1, tm1, tj2, tm2, tj, tm])
            .expect("parities are consistent by construction");
    }
}

fn sample_projection(rng: &mut ChaCha8Rng, tj: i64) -> i64 {
    let k = rng.random_range(0..=tj);
    2 * k - tj
}

fn sample_triangle_allowed(rng: &mut ChaCha8Rng) -> QuantumNumbers {
    loop {
        let q = sample_tuple(rng, 1, 20);
        if q.triangle_allowed() {
            return q;
        }
    }
}

/// Random point of the requested region class, away from the caustic band
/// and with a representable first-order magnitude.
fn sample_region(rng: &mut ChaCha8Rng, allowed: bool) -> QuantumNumbers {
    loop {
        let q = sample_tuple(rng, 10, 150);
        let strict_triangle = (q.j1.twice() - q.j2.twice()).abs() < q.j.twice()
            && q.j.twice() < q.j1.twice() + q.j2.twice();
        if !strict_triangle
            || q.m1.abs() == q.j1
            || q.m2.abs() == q.j2
            || q.m.abs() == q.j
            || region::near_caustic(&q, 0.01)
        {
            continue;
        }
        let class = region::classify(&q);
        let matches = match class {
            RegionClass::Allowed => allowed,
            RegionClass::Forbidden(_) => !allowed,
            _ => false,
        };
        if !matches {
            continue;
        }
        // deep forbidden values can underflow binary64; resample those
        if let Ok(v) = stationary::first_order(&q) {
            if v.abs() > 1e-280 {
                return q;
            }
        }
    }
}
