//! Frobenius traces of a weight-0 motive and numerical estimates of
//! `−ord_{s=1} L(H^{2r}(X)(r), s)`.
//!
//! Everything is unitarily normalized: an elliptic slot at `p` is described by
//! `x = a_p/√p = 2cos θ`, a surface slot by `s1 = c1/√p` and `s2 = c2/p`. Bad
//! primes (absent from the Euler data) are skipped. Float folds run in
//! ascending-prime order with compensated summation, so results do not
//! depend on the worker count.

use std::fmt;

use rayon::prelude::*;

use crate::ap::{
    check_elliptic, check_surface, primes_up_to, with_pool, EulerData, EulerKind, LocalFactor,
};
use crate::error::{Error, Result};
use crate::motive::{FactorKind, IrrepLabel, MotiveDecomposition, SlotPart};
use crate::rep::Sp4Weight;

/// Minimum number of primes accepted by the estimators.
pub const MIN_PRIMES: usize = 25;
/// Prime bounds below this produce an inconclusive verdict.
pub const MIN_VERDICT_BOUND: u64 = 1000;
pub const DEFAULT_TOLERANCE: f64 = 0.25;

/// Neumaier's variant of Kahan summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::default();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Trace of Frobenius on `Sym^k H^1(E)` at `p`, exactly:
/// `s_0 = 1`, `s_1 = a`, `s_k = a·s_{k−1} − p·s_{k−2}`.
pub fn sym_trace(a: i64, p: u64, k: u32) -> Result<i128> {
    check_elliptic(p, a)?;
    let (a, p) = (a as i128, p as i128);
    let (mut prev, mut cur) = (1i128, a);
    if k == 0 {
        return Ok(1);
    }
    for _ in 1..k {
        let next = a
            .checked_mul(cur)
            .and_then(|x| p.checked_mul(prev).and_then(|y| x.checked_sub(y)))
            .ok_or_else(|| Error::Overflow(format!("Sym^{k} trace at p={p}")))?;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Normalized `Sym^k` trace `U_k(x/2)` for `x = 2cos θ`.
pub fn normalized_sym_trace(x: f64, k: u32) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let (mut prev, mut cur) = (1.0, x);
    for _ in 1..k {
        (prev, cur) = (cur, x * cur - prev);
    }
    cur
}

/// Normalized trace of Frobenius on `H^k(A) = Λ^k H^1(A)`: the `k`-th
/// elementary symmetric function of the eigenvalues divided by `p^{k/2}`.
pub fn ext_trace_surface(c1: i64, c2: i64, p: u64, k: u32) -> Result<f64> {
    check_surface(p, c1, c2)?;
    let sp = (p as f64).sqrt();
    Ok(match k {
        0 | 4 => 1.0,
        // e1 = c1 and e3 = p·c1
        1 | 3 => c1 as f64 / sp,
        2 => c2 as f64 / p as f64,
        _ => return Err(Error::DegreeOutOfRange { degree: k, max: 4 }),
    })
}

/// Normalized Frobenius data of one slot at one prime (or a power of it).
#[derive(Clone, Copy, Debug, PartialEq)]
enum SlotFrob {
    Elliptic { x: f64 },
    Surface { s1: f64, s2: f64 },
}

impl SlotFrob {
    fn from_local(local: LocalFactor, p: u64) -> Self {
        let sp = (p as f64).sqrt();
        match local {
            LocalFactor::Elliptic { a } => SlotFrob::Elliptic { x: a as f64 / sp },
            LocalFactor::Surface { c1, c2 } => SlotFrob::Surface {
                s1: c1 as f64 / sp,
                s2: c2 as f64 / p as f64,
            },
        }
    }

    /// Data of the `j`-th power of the Frobenius element.
    fn power(self, j: u32) -> Self {
        match self {
            SlotFrob::Elliptic { x } => {
                // 2cos(jθ): x_0 = 2, x_1 = x, x_j = x·x_{j−1} − x_{j−2}
                let (mut prev, mut cur) = (2.0, x);
                for _ in 1..j {
                    (prev, cur) = (cur, x * cur - prev);
                }
                SlotFrob::Elliptic {
                    x: if j == 0 { 2.0 } else { cur },
                }
            }
            SlotFrob::Surface { s1, s2 } => {
                let p = power_sums(s1, s2, 2 * j as usize);
                let pj = p[j as usize];
                SlotFrob::Surface {
                    s1: pj,
                    s2: 0.5 * (pj * pj - p[2 * j as usize]),
                }
            }
        }
    }

    fn part_trace(self, part: &SlotPart) -> Result<f64> {
        match (self, part) {
            (SlotFrob::Elliptic { x }, SlotPart::Elliptic(k)) => Ok(normalized_sym_trace(x, *k)),
            (SlotFrob::Surface { s1, s2 }, SlotPart::Surface(ws)) => Ok(ws
                .iter()
                .map(|&w| match w {
                    Sp4Weight::TRIVIAL => 1.0,
                    Sp4Weight::STD => s1,
                    Sp4Weight::WEDGE2 => s2 - 1.0,
                    other => sp4_trace_general(other, s1, s2),
                })
                .product()),
            _ => Err(Error::InvalidSpec("slot data does not match label".into())),
        }
    }
}

/// Power sums `P_0..=P_n` of the roots of `x⁴ − s1·x³ + s2·x² − s1·x + 1`
/// by Newton's identities.
fn power_sums(s1: f64, s2: f64, n: usize) -> Vec<f64> {
    let e = [1.0, s1, s2, s1, 1.0];
    let mut p = vec![0.0; n + 1];
    p[0] = 4.0;
    for j in 1..=n {
        let mut acc = 0.0;
        for i in 1..=j.min(4) {
            let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
            let term = if i == j {
                i as f64 * e[i]
            } else {
                e[i] * p[j - i]
            };
            acc += sign * term;
        }
        p[j] = acc;
    }
    p
}

/// Character of an arbitrary Sp(4) irreducible at the torus element with
/// the given normalized coefficients.
fn sp4_trace_general(w: Sp4Weight, s1: f64, s2: f64) -> f64 {
    let disc = (s1 * s1 - 4.0 * (s2 - 2.0)).max(0.0).sqrt();
    let angle = |u: f64| (0.5 * u).clamp(-1.0, 1.0).acos();
    let (t1, t2) = (angle(0.5 * (s1 + disc)), angle(0.5 * (s1 - disc)));
    if (t1 - t2).abs() < 1e-9 || t1.sin().abs() < 1e-9 || t2.sin().abs() < 1e-9 {
        // singular torus element: fall back to the weight expansion
        return w.character().eval_angles(t1, t2);
    }
    let det =
        |l1: f64, l2: f64| (l1 * t1).sin() * (l2 * t2).sin() - (l2 * t1).sin() * (l1 * t2).sin();
    det(w.a as f64 + 2.0, w.b as f64 + 1.0) / det(2.0, 1.0)
}

fn check_alignment(d: &MotiveDecomposition, euler: &[EulerData]) -> Result<()> {
    if d.slots.len() != euler.len() {
        return Err(Error::InvalidSpec(format!(
            "{} slots but Euler data for {} factors",
            d.slots.len(),
            euler.len()
        )));
    }
    for (slot, data) in d.slots.iter().zip(euler) {
        let ok = matches!(
            (slot.kind, data.kind),
            (FactorKind::Elliptic, EulerKind::Elliptic) | (FactorKind::Surface, EulerKind::Surface)
        );
        if !ok {
            return Err(Error::InvalidSpec(format!(
                "factor `{}` is {} but its Euler data is {}",
                slot.id, slot.kind, data.kind
            )));
        }
    }
    Ok(())
}

fn slot_frobs(d: &MotiveDecomposition, euler: &[EulerData], p: u64) -> Result<Vec<SlotFrob>> {
    d.slots
        .iter()
        .zip(euler)
        .map(|(slot, data)| {
            data.get(p)
                .map(|local| SlotFrob::from_local(local, p))
                .ok_or_else(|| Error::MissingPrime {
                    factor: slot.id.clone(),
                    p,
                })
        })
        .collect()
}

fn label_trace(label: &IrrepLabel, frobs: &[SlotFrob]) -> Result<f64> {
    label
        .parts
        .iter()
        .zip(frobs)
        .try_fold(1.0, |acc, (part, f)| Ok(acc * f.part_trace(part)?))
}

fn decomposition_trace(d: &MotiveDecomposition, frobs: &[SlotFrob]) -> Result<f64> {
    let mut s = CompensatedSum::default();
    for (label, mult) in d.iter() {
        s.add(mult as f64 * label_trace(label, frobs)?);
    }
    Ok(s.value())
}

/// Normalized trace of Frobenius at `p` on the whole decomposition.
/// `euler[i]` holds the data of slot `i`.
pub fn motive_trace(d: &MotiveDecomposition, euler: &[EulerData], p: u64) -> Result<f64> {
    check_alignment(d, euler)?;
    decomposition_trace(d, &slot_frobs(d, euler, p)?)
}

/// Primes `<= bound` at which every slot has data. With no slots, all primes.
pub fn common_primes(euler: &[EulerData], bound: u64) -> Vec<u64> {
    let Some((first, rest)) = euler.split_first() else {
        return primes_up_to(bound);
    };
    first
        .primes()
        .take_while(|&p| p <= bound)
        .filter(|&p| rest.iter().all(|d| d.get(p).is_some()))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceSeries {
    pub primes: Vec<u64>,
    pub traces: Vec<f64>,
    pub dim: u64,
}

impl TraceSeries {
    pub fn new(primes: Vec<u64>, traces: Vec<f64>, dim: u64) -> Result<Self> {
        if primes.len() != traces.len() {
            return Err(Error::InvalidSpec("trace series length mismatch".into()));
        }
        if let Some((p, t)) = primes
            .iter()
            .zip(&traces)
            .find(|(_, t)| t.abs() > dim as f64 * (1.0 + 1e-9))
        {
            return Err(Error::Inconsistent(format!(
                "|t_{p}| = {} exceeds dimension {dim}",
                t.abs()
            )));
        }
        Ok(TraceSeries {
            primes,
            traces,
            dim,
        })
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// `p,t` CSV with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,t\n");
        for (p, t) in self.primes.iter().zip(&self.traces) {
            out.push_str(&format!("{p},{t}\n"));
        }
        out
    }
}

/// Traces at every common prime `<= bound`, computed on `jobs` workers.
pub fn trace_series(
    d: &MotiveDecomposition,
    euler: &[EulerData],
    bound: u64,
    jobs: usize,
) -> Result<TraceSeries> {
    check_alignment(d, euler)?;
    let primes = common_primes(euler, bound);
    let traces = with_pool(jobs, || {
        primes
            .par_iter()
            .map(|&p| decomposition_trace(d, &slot_frobs(d, euler, p)?))
            .collect::<Result<Vec<f64>>>()
    })?;
    TraceSeries::new(primes, traces, crate::motive::total_dim(d))
}

fn require_primes(ts: &TraceSeries) -> Result<()> {
    if ts.len() < MIN_PRIMES {
        return Err(Error::TooFewPrimes {
            needed: MIN_PRIMES,
            got: ts.len(),
        });
    }
    Ok(())
}

/// Sato–Tate mean `(1/N)·Σ t_p`.
pub fn pole_estimate_average(ts: &TraceSeries) -> Result<f64> {
    require_primes(ts)?;
    let s: CompensatedSum = ts.traces.iter().copied().collect();
    Ok(s.value() / ts.len() as f64)
}

/// Mertens-weighted mean `(Σ t_p·log p / p) / log(max p)`.
pub fn pole_estimate_mertens(ts: &TraceSeries) -> Result<f64> {
    require_primes(ts)?;
    let s: CompensatedSum = ts
        .primes
        .iter()
        .zip(&ts.traces)
        .map(|(&p, &t)| t * (p as f64).ln() / p as f64)
        .collect();
    let pmax = *ts.primes.last().expect("nonempty") as f64;
    Ok(s.value() / pmax.ln())
}

/// Truncation target for the prime-power sums in [`partial_log_l`].
const LOG_L_TAIL: f64 = 1e-12;

/// `Σ_{p <= bound} Σ_{j >= 1} tr(Frob_p^j) / (j·p^{js})` for `s > 1`.
///
/// The inner sum stops once the remaining terms are bounded by `1e-12`.
pub fn partial_log_l(
    d: &MotiveDecomposition,
    euler: &[EulerData],
    s: f64,
    bound: u64,
) -> Result<f64> {
    if s.is_nan() || s <= 1.0 {
        return Err(Error::Domain(format!("partial_log_l needs s > 1, got {s}")));
    }
    check_alignment(d, euler)?;
    let dim = crate::motive::total_dim(d) as f64;
    let mut total = CompensatedSum::default();
    for p in common_primes(euler, bound) {
        let frobs = slot_frobs(d, euler, p)?;
        let q = (p as f64).powf(-s);
        // dim·q^{J+1}/(1 − q) < tail
        let mut jmax = 1u32;
        while dim * q.powi(jmax as i32 + 1) / (1.0 - q) >= LOG_L_TAIL {
            jmax += 1;
        }
        for j in 1..=jmax {
            let powered: Vec<SlotFrob> = frobs.iter().map(|f| f.power(j)).collect();
            let t = decomposition_trace(d, &powered)?;
            total.add(t * q.powi(j as i32) / j as f64);
        }
    }
    Ok(total.value())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PoleEstimate {
    pub average: f64,
    pub mertens: f64,
    pub prime_bound: u64,
    pub primes_used: usize,
    pub predicted: u64,
    pub tolerance: f64,
    pub verdict: Verdict,
}

/// Pass iff `|average − predicted| <= tolerance` and `average` rounds to
/// `predicted`. Runs with `prime_bound < 1000` are inconclusive.
pub fn judge(average: f64, predicted: u64, tolerance: f64, prime_bound: u64) -> Verdict {
    if prime_bound < MIN_VERDICT_BOUND {
        return Verdict::Inconclusive;
    }
    let close = (average - predicted as f64).abs() <= tolerance;
    if close && average.round() == predicted as f64 {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

pub fn pole_estimate(
    ts: &TraceSeries,
    predicted: u64,
    tolerance: f64,
    prime_bound: u64,
) -> Result<PoleEstimate> {
    let average = pole_estimate_average(ts)?;
    let mertens = pole_estimate_mertens(ts)?;
    Ok(PoleEstimate {
        average,
        mertens,
        prime_bound,
        primes_used: ts.len(),
        predicted,
        tolerance,
        verdict: judge(average, predicted, tolerance, prime_bound),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ap::EulerEntry;
    use crate::motive::{build_motive, FactorSpec, ProductSpec};

    fn series(traces: Vec<f64>) -> TraceSeries {
        let primes: Vec<u64> = primes_up_to(10_000)
            .into_iter()
            .skip(1)
            .take(traces.len())
            .collect();
        TraceSeries::new(primes, traces, 1).unwrap()
    }

    #[test]
    fn sym_trace_examples() {
        assert_eq!(sym_trace(0, 7, 2).unwrap(), -7);
        assert_eq!(sym_trace(3, 7, 1).unwrap(), 3);
        assert_eq!(sym_trace(1, 5, 3).unwrap(), -9);
        assert!(matches!(
            sym_trace(5, 5, 2),
            Err(Error::HasseViolation { .. })
        ));
        assert!(matches!(sym_trace(1, 999_983, 40), Err(Error::Overflow(_))));
    }

    #[test]
    fn sym_trace_matches_eigenvalue_power_sums() {
        // α, β = (a ± i·sqrt(4p − a²))/2; Sym^k trace = Σ α^i β^{k−i}
        for p in [3u64, 101, 1009, 9973] {
            let cap = crate::ap::isqrt(4 * p) as i64;
            for a in [-cap, -1, 0, 1, cap / 2, cap] {
                let re = a as f64 / 2.0;
                let im = ((4 * p) as f64 - (a * a) as f64).max(0.0).sqrt() / 2.0;
                let r = (re * re + im * im).sqrt();
                let th = im.atan2(re);
                for k in 0..=10u32 {
                    let mut expect = 0.0;
                    for i in 0..=k {
                        // α^i β^{k−i} = r^k e^{iθ(2i − k)}
                        expect += r.powi(k as i32) * ((2 * i as i32 - k as i32) as f64 * th).cos();
                    }
                    let exact = sym_trace(a, p, k).unwrap() as f64;
                    let scale = r.powi(k as i32).max(1.0);
                    assert!((exact - expect).abs() <= 1e-6 * scale, "p={p} a={a} k={k}");
                    let norm = normalized_sym_trace(a as f64 / (p as f64).sqrt(), k);
                    assert!((norm - exact / r.powi(k as i32)).abs() < 1e-6);
                }
            }
        }
    }

    #[test]
    fn ext_traces() {
        assert_eq!(ext_trace_surface(2, 5, 3, 0).unwrap(), 1.0);
        assert!((ext_trace_surface(2, 5, 3, 1).unwrap() - 2.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((ext_trace_surface(2, 5, 3, 2).unwrap() - 5.0 / 3.0).abs() < 1e-15);
        assert_eq!(ext_trace_surface(2, 5, 3, 4).unwrap(), 1.0);
        assert!(ext_trace_surface(2, 5, 3, 5).is_err());
        assert!(matches!(
            ext_trace_surface(0, 7, 3, 1),
            Err(Error::BoundViolation { .. })
        ));
    }

    #[test]
    fn power_sums_match_angles() {
        let (t1, t2): (f64, f64) = (0.7, 2.1);
        let (u1, u2) = (2.0 * t1.cos(), 2.0 * t2.cos());
        let (s1, s2) = (u1 + u2, 2.0 + u1 * u2);
        let p = power_sums(s1, s2, 8);
        for (j, pj) in p.iter().enumerate() {
            let expect = 2.0 * (j as f64 * t1).cos() + 2.0 * (j as f64 * t2).cos();
            assert!((pj - expect).abs() < 1e-10, "j={j}");
        }
        for w in [Sp4Weight::STD, Sp4Weight::WEDGE2, Sp4Weight { a: 2, b: 1 }] {
            let a = sp4_trace_general(w, s1, s2);
            let b = w.character().eval_angles(t1, t2);
            assert!((a - b).abs() < 1e-9, "{w}");
        }
    }

    fn e2_data(a: i64, p: u64) -> (MotiveDecomposition, Vec<EulerData>) {
        let d = build_motive(&ProductSpec::new(vec![FactorSpec::elliptic("E", 2)], 1).unwrap())
            .unwrap();
        let data = EulerData::new(
            "E",
            EulerKind::Elliptic,
            vec![EulerEntry {
                p,
                local: LocalFactor::Elliptic { a },
            }],
        )
        .unwrap();
        (d, vec![data])
    }

    #[test]
    fn motive_trace_examples() {
        let trivial = MotiveDecomposition::trivial();
        assert_eq!(motive_trace(&trivial, &[], 7).unwrap(), 1.0);
        let (d, data) = e2_data(0, 101);
        assert!((motive_trace(&d, &data, 101).unwrap() - 2.0).abs() < 1e-12);
        assert!(matches!(
            motive_trace(&d, &data, 103),
            Err(Error::MissingPrime { p: 103, .. })
        ));
        let (d, data) = e2_data(7, 101);
        let expect = 3.0 + (49.0 - 101.0) / 101.0;
        assert!((motive_trace(&d, &data, 101).unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn estimator_examples() {
        assert_eq!(pole_estimate_average(&series(vec![1.0; 30])).unwrap(), 1.0);
        let alt: Vec<f64> = (0..30)
            .map(|i| if i % 2 == 0 { 1.0 } else { -1.0 })
            .collect();
        assert_eq!(pole_estimate_average(&series(alt)).unwrap(), 0.0);
        assert_eq!(pole_estimate_mertens(&series(vec![0.0; 30])).unwrap(), 0.0);
        assert!(matches!(
            pole_estimate_average(&series(vec![1.0])),
            Err(Error::TooFewPrimes { .. })
        ));
        assert!(matches!(
            pole_estimate_mertens(&series(vec![1.0])),
            Err(Error::TooFewPrimes { .. })
        ));
    }

    #[test]
    fn mertens_rises_towards_one() {
        let mut prev = 0.0;
        for bound in [1_000u64, 10_000, 100_000] {
            let primes = primes_up_to(bound);
            let n = primes.len();
            let ts = TraceSeries::new(primes, vec![1.0; n], 1).unwrap();
            let m = pole_estimate_mertens(&ts).unwrap();
            assert!(m > 0.0 && m <= 1.0, "{m}");
            assert!(m > prev);
            prev = m;
        }
    }

    #[test]
    fn trace_bound_enforced() {
        let err = TraceSeries::new(vec![3], vec![2.5], 2).unwrap_err();
        assert!(matches!(err, Error::Inconsistent(_)));
    }

    #[test]
    fn log_l_domain() {
        let d = MotiveDecomposition::trivial();
        assert!(matches!(
            partial_log_l(&d, &[], 1.0, 100),
            Err(Error::Domain(_))
        ));
        assert!(partial_log_l(&d, &[], 0.5, 100).is_err());
    }

    #[test]
    fn log_l_trivial_motive_small_bound() {
        // −Σ_p log(1 − p^{−2}) over p <= 100
        let d = MotiveDecomposition::trivial();
        let expect: f64 = primes_up_to(100)
            .iter()
            .map(|&p| -(1.0 - (p as f64).powi(-2)).ln())
            .sum();
        assert!((partial_log_l(&d, &[], 2.0, 100).unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn log_l_elliptic_factor_matches_euler_product() {
        // Sym^2 of one slot at s = 3: log of Π (1 − α²/p^s)^{-1}(1 − 1/p^s)^{-1}(1 − β²/p^s)^{-1}
        let d = build_motive(&ProductSpec::new(vec![FactorSpec::elliptic("E", 2)], 1).unwrap())
            .unwrap()
            .filter(|l| !l.is_trivial());
        let entries = vec![
            EulerEntry {
                p: 5,
                local: LocalFactor::Elliptic { a: 2 },
            },
            EulerEntry {
                p: 7,
                local: LocalFactor::Elliptic { a: -4 },
            },
        ];
        let data = vec![EulerData::new("E", EulerKind::Elliptic, entries.clone()).unwrap()];
        let s = 3.0;
        let mut expect = 0.0;
        for e in &entries {
            let LocalFactor::Elliptic { a } = e.local else {
                unreachable!()
            };
            let th = (a as f64 / (2.0 * (e.p as f64).sqrt())).acos();
            let q = (e.p as f64).powf(-s);
            // |1 − e^{2iθ}q|² contributes twice the real log
            let re = 1.0 - (2.0 * th).cos() * q;
            let im = (2.0 * th).sin() * q;
            expect += -(re * re + im * im).ln() - (1.0 - q).ln();
        }
        let got = partial_log_l(&d, &data, s, 10).unwrap();
        assert!((got - expect).abs() < 1e-12, "{got} vs {expect}");
    }

    #[test]
    fn verdict_rules() {
        assert_eq!(judge(3.1, 3, 0.25, 100_000), Verdict::Pass);
        assert_eq!(judge(2.6, 3, 0.25, 100_000), Verdict::Fail);
        assert_eq!(judge(2.45, 3, 0.6, 100_000), Verdict::Fail);
        assert_eq!(judge(3.0, 3, 0.25, 999), Verdict::Inconclusive);
    }
}
