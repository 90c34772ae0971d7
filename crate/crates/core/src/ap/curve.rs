//! Elliptic curves over the rationals and naive point counting.

use rayon::prelude::*;

use super::euler::{EulerData, EulerEntry, EulerKind, LocalFactor};
use super::primes::{is_prime, primes_up_to};
use super::with_pool;
use crate::error::{Error, Result};

/// Long Weierstrass model `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6`.
///
/// Minimality is not checked; a non-minimal model treats a few extra primes
/// as bad.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticModel {
    coeffs: [i64; 5],
    discriminant: i128,
}

fn overflow() -> Error {
    Error::Overflow("discriminant does not fit in 128 bits".into())
}

impl EllipticModel {
    pub fn new(coeffs: [i64; 5]) -> Result<Self> {
        let discriminant = discriminant(&coeffs).ok_or_else(overflow)?;
        if discriminant == 0 {
            return Err(Error::SingularCurve);
        }
        Ok(EllipticModel {
            coeffs,
            discriminant,
        })
    }

    pub fn coeffs(&self) -> [i64; 5] {
        self.coeffs
    }

    pub fn discriminant(&self) -> i128 {
        self.discriminant
    }

    /// `(b2, b4, b6)`.
    fn b_invariants(&self) -> (i128, i128, i128) {
        let [a1, a2, a3, a4, a6] = self.coeffs.map(i128::from);
        (a1 * a1 + 4 * a2, 2 * a4 + a1 * a3, a3 * a3 + 4 * a6)
    }

    /// Stable identifier used for cache files, e.g. `curve_0_0_1_-1_0`.
    pub fn source_id(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(i64::to_string).collect();
        format!("curve_{}", parts.join("_"))
    }

    pub fn has_good_reduction(&self, p: u64) -> bool {
        self.discriminant % p as i128 != 0
    }
}

fn discriminant(c: &[i64; 5]) -> Option<i128> {
    let [a1, a2, a3, a4, a6] = c.map(i128::from);
    let m = |x: i128, y: i128| x.checked_mul(y);
    let b2 = m(a1, a1)?.checked_add(m(4, a2)?)?;
    let b4 = m(2, a4)?.checked_add(m(a1, a3)?)?;
    let b6 = m(a3, a3)?.checked_add(m(4, a6)?)?;
    let b8 = m(m(a1, a1)?, a6)?
        .checked_add(m(m(4, a2)?, a6)?)?
        .checked_sub(m(m(a1, a3)?, a4)?)?
        .checked_add(m(a2, m(a3, a3)?)?)?
        .checked_sub(m(a4, a4)?)?;
    let t1 = m(m(b2, b2)?, b8)?;
    let t2 = m(8, m(m(b4, b4)?, b4)?)?;
    let t3 = m(27, m(b6, b6)?)?;
    let t4 = m(9, m(m(b2, b4)?, b6)?)?;
    0i128
        .checked_sub(t1)?
        .checked_sub(t2)?
        .checked_sub(t3)?
        .checked_add(t4)
}

fn reduce(x: i128, p: u64) -> u64 {
    x.rem_euclid(p as i128) as u64
}

/// `a_p = p + 1 − #E(F_p)` for a prime `p >= 3` of good reduction.
///
/// Completing the square turns the model into `Y² = f(x)` with
/// `f = 4x³ + b2·x² + 2·b4·x + b6`, so `a_p = −Σ_x χ(f(x))` for the quadratic
/// character `χ`. `f` is stepped through `F_p` by finite differences.
pub fn count_points(e: &EllipticModel, p: u64) -> Result<i64> {
    if p == 2 {
        return Err(Error::UnsupportedPrime { p });
    }
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if !e.has_good_reduction(p) {
        return Err(Error::BadReduction { p });
    }
    let n = p as usize;
    let mut chi = vec![-1i8; n];
    chi[0] = 0;
    for x in 1..=(p - 1) / 2 {
        chi[((x * x) % p) as usize] = 1;
    }

    let (b2, b4, b6) = e.b_invariants();
    let add = |x: u64, y: u64| {
        let s = x + y;
        if s >= p {
            s - p
        } else {
            s
        }
    };
    // f(0), Δf(0), Δ²f(0), Δ³f
    let mut f = reduce(b6, p);
    let mut d1 = reduce(4 + b2 + 2 * b4, p);
    let mut d2 = reduce(24 + 2 * b2, p);
    let d3 = reduce(24, p);
    let mut sum: i64 = 0;
    for _ in 0..p {
        sum += chi[f as usize] as i64;
        f = add(f, d1);
        d1 = add(d1, d2);
        d2 = add(d2, d3);
    }
    let a = -sum;
    debug_assert!((a as i128).pow(2) <= 4 * p as i128);
    Ok(a)
}

/// Primes `3 <= p <= bound` of good reduction, ascending.
pub fn good_primes(e: &EllipticModel, bound: u64) -> Vec<u64> {
    primes_up_to(bound)
        .into_iter()
        .filter(|&p| p != 2 && e.has_good_reduction(p))
        .collect()
}

/// Count points at every good prime up to `bound` on `jobs` workers. The
/// result does not depend on `jobs`.
pub fn compute_euler(e: &EllipticModel, bound: u64, jobs: usize) -> Result<EulerData> {
    compute_at(e, &good_primes(e, bound), jobs)
}

pub(crate) fn compute_at(e: &EllipticModel, primes: &[u64], jobs: usize) -> Result<EulerData> {
    let entries = with_pool(jobs, || {
        primes
            .par_iter()
            .map(|&p| {
                Ok(EulerEntry {
                    p,
                    local: LocalFactor::Elliptic {
                        a: count_points(e, p)?,
                    },
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;
    EulerData::new(e.source_id(), EulerKind::Elliptic, entries)
}
