//! Shared sampling helpers for the integration suites.

use cgasym::region::{self, RegionClass};
use cgasym::QuantumNumbers;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn q(t: [i64; 6]) -> QuantumNumbers {
    QuantumNumbers::from_twice(t).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every projection-consistent tuple with both doubled j1, j2 <= bound.
pub fn all_tuples(bound: i64) -> Vec<QuantumNumbers> {
    let mut out = Vec::new();
    for tj1 in 0..=bound {
        for tj2 in 0..=bound {
            let mut tj = (tj1 - tj2).abs();
            while tj <= tj1 + tj2 {
                for k1 in 0..=tj1 {
                    for k2 in 0..=tj2 {
                        let (tm1, tm2) = (-tj1 + 2 * k1, -tj2 + 2 * k2);
                        let tm = tm1 + tm2;
                        if tm.abs() <= tj {
                            out.push(q([tj1, tm1, tj2, tm2, tj, tm]));
                        }
                    }
                }
                tj += 2;
            }
        }
    }
    out
}

/// Draws a projection-consistent tuple whose doubled j's all lie in
/// [lo, hi], with parities already matched.
pub fn sample_tuple(r: &mut ChaCha8Rng, lo: i64, hi: i64) -> QuantumNumbers {
    loop {
        let tj1 = r.random_range(lo..=hi);
        let tj2 = r.random_range(lo..=hi);
        let lo_j = (tj1 - tj2).abs();
        let tj = lo_j + 2 * r.random_range(0..=(tj1 + tj2 - lo_j) / 2);
        if tj < lo || tj > hi {
            continue;
        }
        let tm1 = -tj1 + 2 * r.random_range(0..=tj1);
        let tm2 = -tj2 + 2 * r.random_range(0..=tj2);
        let tm = tm1 + tm2;
        if tm.abs() > tj {
            continue;
        }
        return q([tj1, tm1, tj2, tm2, tj, tm]);
    }
}

/// Rejection-samples a point classified into the requested region. The
/// asymptotic forms hold in the open interior, so points are also rejected
/// when any |m| reaches its j, when the triangle degenerates to a line, or
/// when beta^2 sits inside a thin caustic band where double precision
/// cannot support a 1e-9 cross-check of the two algebraically equal
/// pipelines.
pub fn sample_region(r: &mut ChaCha8Rng, allowed: bool, lo: i64, hi: i64) -> QuantumNumbers {
    loop {
        let p = sample_tuple(r, lo, hi);
        let t = p.to_twice();
        if t[1].abs() >= t[0] || t[3].abs() >= t[2] || t[5].abs() >= t[4] {
            continue;
        }
        let (tj1, tj2, tj) = (t[0], t[2], t[4]);
        if tj1 + tj2 == tj || tj + tj2 == tj1 || tj + tj1 == tj2 {
            continue;
        }
        if region::near_caustic(&p, 0.01) {
            continue;
        }
        match (region::classify(&p), allowed) {
            (RegionClass::Allowed, true) => return p,
            (RegionClass::Forbidden(_), false) => return p,
            _ => continue,
        }
    }
}
