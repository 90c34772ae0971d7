//! Synthetic Frobenius data sampled from Sato–Tate measures.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::euler::{check_surface, EulerData, EulerEntry, EulerKind, LocalFactor};
use super::primes::isqrt;
use crate::error::{Error, Result};
use crate::galois::ClassKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SatoTateModel {
    Su2,
    U1,
    Nu1,
    Usp4,
}

impl SatoTateModel {
    pub fn for_class(kind: &ClassKind) -> Self {
        match kind {
            ClassKind::NonCm => SatoTateModel::Su2,
            ClassKind::Cm {
                field_in_base: true,
                ..
            } => SatoTateModel::U1,
            ClassKind::Cm {
                field_in_base: false,
                ..
            } => SatoTateModel::Nu1,
            ClassKind::GenericSurface => SatoTateModel::Usp4,
        }
    }

    pub fn kind(self) -> EulerKind {
        match self {
            SatoTateModel::Usp4 => EulerKind::Surface,
            _ => EulerKind::Elliptic,
        }
    }
}

impl fmt::Display for SatoTateModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SatoTateModel::Su2 => "su2",
            SatoTateModel::U1 => "u1",
            SatoTateModel::Nu1 => "nu1",
            SatoTateModel::Usp4 => "usp4",
        })
    }
}

impl FromStr for SatoTateModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "su2" => Ok(SatoTateModel::Su2),
            "u1" => Ok(SatoTateModel::U1),
            "nu1" => Ok(SatoTateModel::Nu1),
            "usp4" => Ok(SatoTateModel::Usp4),
            other => Err(Error::Config(format!(
                "unknown Sato–Tate model `{other}` (expected su2, u1, nu1 or usp4)"
            ))),
        }
    }
}

/// Round `x` and clamp into `[−floor(2√p), floor(2√p)]`.
fn round_trace(x: f64, p: u64) -> i64 {
    let cap = isqrt(4 * p) as i64;
    (x.round() as i64).clamp(-cap, cap)
}

/// θ with density `(2/π)·sin²θ` on `[0, π]`.
fn su2_angle(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let t = PI * rng.gen::<f64>();
        if rng.gen::<f64>() < t.sin().powi(2) {
            return t;
        }
    }
}

/// `(θ1, θ2)` with density proportional to
/// `(cos θ1 − cos θ2)²·sin²θ1·sin²θ2` on `[0, π]²`; the density is below 4.
fn usp4_angles(rng: &mut ChaCha8Rng) -> (f64, f64) {
    loop {
        let (t1, t2) = (PI * rng.gen::<f64>(), PI * rng.gen::<f64>());
        let f = (t1.cos() - t2.cos()).powi(2) * (t1.sin() * t2.sin()).powi(2);
        if 4.0 * rng.gen::<f64>() < f {
            return (t1, t2);
        }
    }
}

fn sample(model: SatoTateModel, p: u64, rng: &mut ChaCha8Rng) -> LocalFactor {
    let sp = (p as f64).sqrt();
    let elliptic = |theta: f64| LocalFactor::Elliptic {
        a: round_trace(2.0 * sp * theta.cos(), p),
    };
    match model {
        SatoTateModel::Su2 => elliptic(su2_angle(rng)),
        SatoTateModel::U1 => elliptic(2.0 * PI * rng.gen::<f64>()),
        SatoTateModel::Nu1 => {
            // fair coin between the two components; the other one has trace 0
            if rng.gen::<bool>() {
                elliptic(2.0 * PI * rng.gen::<f64>())
            } else {
                LocalFactor::Elliptic { a: 0 }
            }
        }
        SatoTateModel::Usp4 => loop {
            let (t1, t2) = usp4_angles(rng);
            let (u1, u2) = (2.0 * t1.cos(), 2.0 * t2.cos());
            let c1 = (sp * (u1 + u2)).round() as i64;
            let c2 = (p as f64 * (2.0 + u1 * u2)).round() as i64;
            // rounding can push a boundary sample off the circle; redraw
            if check_surface(p, c1, c2).is_ok() {
                break LocalFactor::Surface { c1, c2 };
            }
        },
    }
}

/// Draw one Frobenius class per prime from the Haar measure of `model`.
/// Output depends only on `(model, primes, seed)`.
pub fn synthesize_euler(model: SatoTateModel, primes: &[u64], seed: u64) -> Result<EulerData> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries = primes
        .iter()
        .map(|&p| EulerEntry {
            p,
            local: sample(model, p, &mut rng),
        })
        .collect();
    EulerData::new(format!("synthetic_{model}_{seed}"), model.kind(), entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ap::primes::primes_up_to;

    fn odd_primes(lo: u64, hi: u64) -> Vec<u64> {
        primes_up_to(hi).into_iter().filter(|&p| p >= lo).collect()
    }

    #[test]
    fn deterministic_for_seed() {
        let ps = odd_primes(101, 997);
        let a = synthesize_euler(SatoTateModel::Su2, &ps, 42).unwrap();
        let b = synthesize_euler(SatoTateModel::Su2, &ps, 42).unwrap();
        assert_eq!(a, b);
        let c = synthesize_euler(SatoTateModel::Su2, &ps, 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn nu1_half_zero() {
        let ps: Vec<u64> = odd_primes(3, 10_000).into_iter().take(1000).collect();
        assert!(ps.len() >= 500);
        let d = synthesize_euler(SatoTateModel::Nu1, &ps, 7).unwrap();
        let zeros = d
            .entries()
            .iter()
            .filter(|e| e.local == LocalFactor::Elliptic { a: 0 })
            .count();
        let frac = zeros as f64 / ps.len() as f64;
        assert!((0.4..=0.6).contains(&frac), "{frac}");
    }

    #[test]
    fn usp4_entries_pass_bounds() {
        let ps = odd_primes(3, 3000);
        let d = synthesize_euler(SatoTateModel::Usp4, &ps, 1).unwrap();
        assert_eq!(d.kind, EulerKind::Surface);
        for e in d.entries() {
            let LocalFactor::Surface { c1, c2 } = e.local else {
                panic!()
            };
            check_surface(e.p, c1, c2).unwrap();
        }
    }

    #[test]
    fn su2_sym_power_means() {
        // normalized traces of Sym^k have Haar mean δ_{k,0}
        let ps: Vec<u64> = odd_primes(1000, 400_000).into_iter().take(12_000).collect();
        let d = synthesize_euler(SatoTateModel::Su2, &ps, 3).unwrap();
        for k in 0..=4u32 {
            let mean: f64 = d
                .entries()
                .iter()
                .map(|e| {
                    let LocalFactor::Elliptic { a } = e.local else {
                        panic!()
                    };
                    let x = a as f64 / (e.p as f64).sqrt();
                    let (mut prev, mut cur) = (1.0, x);
                    if k == 0 {
                        return 1.0;
                    }
                    for _ in 1..k {
                        (prev, cur) = (cur, x * cur - prev);
                    }
                    cur
                })
                .sum::<f64>()
                / ps.len() as f64;
            let target = if k == 0 { 1.0 } else { 0.0 };
            assert!((mean - target).abs() < 0.05, "k={k}: {mean}");
        }
    }

    #[test]
    fn model_names() {
        for m in [
            SatoTateModel::Su2,
            SatoTateModel::U1,
            SatoTateModel::Nu1,
            SatoTateModel::Usp4,
        ] {
            assert_eq!(m.to_string().parse::<SatoTateModel>().unwrap(), m);
        }
        assert!("so3".parse::<SatoTateModel>().is_err());
    }
}
