//! End-to-end verification: predicted rank on the group side, pole estimate
//! on the L-function side, and a report.

use std::fmt::Write as _;
use std::path::Path;
use std::time::{Duration, Instant};

use crate::ap::{
    compute_euler, good_primes, load_euler_data, primes_up_to, save_cache, synthesize_euler,
    EllipticModel, EulerData, EulerKind, LocalFactor, SatoTateModel,
};
use crate::config::{DataSource, OutputFormat, RunConfig};
use crate::error::{Error, Result};
use crate::galois::{
    predicted_rank, theorem_coverage, ClassKind, CoverageVerdict, GaloisModel, RankPrediction,
};
use crate::lfunc::{
    pole_estimate, trace_series, PoleEstimate, TraceSeries, Verdict, MIN_VERDICT_BOUND,
};
use crate::motive::{build_motive, total_dim, FactorKind, MotiveDecomposition, ProductSpec};

/// Share of expected primes that may be absent from an Euler file.
const MAX_MISSING_FRACTION: f64 = 0.05;

pub const TOLERANCE_NOTE: &str =
    "tolerance is a heuristic calibration: the convergence rate of the average estimator is not proven";

/// Process exit code for an error: 3 for missing Euler data, 2 otherwise.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InsufficientData { .. }
        | Error::MissingPrime { .. }
        | Error::TooFewPrimes { .. } => 3,
        _ => 2,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceSummary {
    pub factor: String,
    /// `curve`, `cache`, `file` or `synthetic`.
    pub origin: &'static str,
    pub source_id: String,
    pub primes: usize,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub spec: ProductSpec,
    pub decomposition: MotiveDecomposition,
    pub rank: RankPrediction,
    pub coverage: CoverageVerdict,
    pub estimate: PoleEstimate,
    pub synthetic: bool,
    pub sources: Vec<SourceSummary>,
    pub traces: TraceSeries,
    pub warnings: Vec<String>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn exit_code(&self) -> i32 {
        match self.estimate.verdict {
            Verdict::Fail => 1,
            _ => 0,
        }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.render_text(),
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Lines => self.render_lines(),
        }
    }

    fn pairs(&self) -> Vec<(&'static str, String)> {
        let factors: Vec<String> = self
            .spec
            .factors()
            .iter()
            .map(|f| format!("{}:{}:{}", f.id, f.kind, f.exponent))
            .collect();
        let e = &self.estimate;
        let mut out = vec![
            ("factors", factors.join(" ")),
            ("dim_x", self.spec.dim().to_string()),
            ("r", self.spec.r().to_string()),
            (
                "data",
                if self.synthetic { "synthetic" } else { "real" }.to_string(),
            ),
            ("summands", self.decomposition.summands.len().to_string()),
            ("motive_dim", total_dim(&self.decomposition).to_string()),
            ("predicted_rank", self.rank.total.to_string()),
            ("coverage", self.coverage.to_string()),
            ("prime_bound", e.prime_bound.to_string()),
            ("primes_used", e.primes_used.to_string()),
            ("average", e.average.to_string()),
            ("mertens", e.mertens.to_string()),
            ("tolerance", e.tolerance.to_string()),
            ("verdict", e.verdict.to_string()),
        ];
        for w in &self.warnings {
            out.push(("warning", w.clone()));
        }
        out.push(("note", TOLERANCE_NOTE.to_string()));
        out
    }

    /// `key=value` lines. Contains no timing, so equal inputs give equal bytes.
    pub fn render_lines(&self) -> String {
        self.pairs()
            .into_iter()
            .map(|(k, v)| format!("{k}={v}\n"))
            .collect()
    }

    /// Four columns: `section,name,mult,value`.
    pub fn render_csv(&self) -> String {
        let mut out = String::from("section,name,mult,value\n");
        for s in &self.rank.summands {
            let name = s.label.name(&self.decomposition.slots);
            let _ = writeln!(
                out,
                "summand,{},{},{}",
                csv_field(&name),
                s.mult,
                s.invariant_dim
            );
        }
        for (k, v) in self.pairs() {
            let _ = writeln!(out, "metric,{k},,{}", csv_field(&v));
        }
        out
    }

    pub fn render_text(&self) -> String {
        let e = &self.estimate;
        let mut out = String::new();
        let factors: Vec<String> = self
            .spec
            .factors()
            .iter()
            .map(|f| {
                if f.exponent == 1 {
                    f.id.clone()
                } else {
                    format!("{}^{}", f.id, f.exponent)
                }
            })
            .collect();
        let _ = writeln!(
            out,
            "X = {}  (dim {}), r = {}",
            factors.join(" × "),
            self.spec.dim(),
            self.spec.r()
        );
        out.push('\n');
        out.push_str(&rank_table_text(&self.rank, &self.decomposition));
        let _ = writeln!(out, "coverage: {}", self.coverage);
        out.push('\n');
        for s in &self.sources {
            let _ = writeln!(
                out,
                "data {}: {} {} ({} primes)",
                s.factor, s.origin, s.source_id, s.primes
            );
        }
        let _ = writeln!(
            out,
            "primes used: {} (p <= {})",
            e.primes_used, e.prime_bound
        );
        let _ = writeln!(out, "average estimate: {:.6}", e.average);
        let _ = writeln!(out, "mertens estimate: {:.6}", e.mertens);
        let _ = writeln!(
            out,
            "predicted: {}   tolerance: {}   verdict: {}",
            e.predicted, e.tolerance, e.verdict
        );
        let _ = writeln!(out, "elapsed: {:.2}s", self.elapsed.as_secs_f64());
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        let _ = writeln!(out, "note: {TOLERANCE_NOTE}");
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn pad_table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(i, s)| format!("{s}{}", " ".repeat(widths[i] - s.chars().count())))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

/// Decomposition table: label, twist, multiplicity, dimension.
pub fn render_decomposition(d: &MotiveDecomposition, format: OutputFormat) -> String {
    let rows: Vec<Vec<String>> = d
        .iter()
        .map(|(l, m)| {
            vec![
                l.name(&d.slots),
                l.twist.to_string(),
                m.to_string(),
                l.dim().to_string(),
            ]
        })
        .collect();
    match format {
        OutputFormat::Text => {
            let mut all = vec![vec![
                "label".into(),
                "twist".into(),
                "mult".into(),
                "dim".into(),
            ]];
            all.extend(rows);
            pad_table(&all)
        }
        _ => {
            let mut out = String::from("label,twist,mult,dim\n");
            for r in rows {
                let _ = writeln!(out, "{},{},{},{}", csv_field(&r[0]), r[1], r[2], r[3]);
            }
            out
        }
    }
}

fn rank_table_text(rank: &RankPrediction, d: &MotiveDecomposition) -> String {
    let mut rows = vec![vec!["label".to_string(), "mult".into(), "inv_dim".into()]];
    for s in &rank.summands {
        rows.push(vec![
            s.label.name(&d.slots),
            s.mult.to_string(),
            s.invariant_dim.to_string(),
        ]);
    }
    let mut out = pad_table(&rows);
    let _ = writeln!(out, "total: {}", rank.total);
    out
}

/// Per-summand rank table with total and coverage verdict.
pub fn render_rank(
    rank: &RankPrediction,
    d: &MotiveDecomposition,
    coverage: CoverageVerdict,
    format: OutputFormat,
) -> String {
    match format {
        OutputFormat::Text => {
            let mut out = rank_table_text(rank, d);
            let _ = writeln!(out, "coverage: {coverage}");
            if coverage == CoverageVerdict::Conjectural {
                let _ = writeln!(out, "warning: {}", conjectural_warning());
            }
            out
        }
        OutputFormat::Csv => {
            let mut out = String::from("label,mult,inv_dim\n");
            for s in &rank.summands {
                let _ = writeln!(
                    out,
                    "{},{},{}",
                    csv_field(&s.label.name(&d.slots)),
                    s.mult,
                    s.invariant_dim
                );
            }
            let _ = writeln!(out, "total,,{}", rank.total);
            let _ = writeln!(out, "coverage,,{coverage}");
            out
        }
        OutputFormat::Lines => {
            let mut out = String::new();
            let _ = writeln!(out, "summands={}", rank.summands.len());
            let _ = writeln!(out, "predicted_rank={}", rank.total);
            let _ = writeln!(out, "coverage={coverage}");
            if coverage == CoverageVerdict::Conjectural {
                let _ = writeln!(out, "warning={}", conjectural_warning());
            }
            out
        }
    }
}

fn conjectural_warning() -> &'static str {
    "no proof of the rank/pole identity covers this product and base field; the comparison is conjectural"
}

/// Group side only: decomposition, predicted rank and coverage.
pub fn predict(
    config: &RunConfig,
) -> Result<(MotiveDecomposition, RankPrediction, CoverageVerdict)> {
    let spec = config.product_spec()?;
    let d = build_motive(&spec)?;
    let g = config.galois_type();
    let rank = predicted_rank(&d, &g)?;
    let coverage = theorem_coverage(&spec, &g)?;
    Ok((d, rank, coverage))
}

pub fn run(config: &RunConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    config.validate()?;
    let spec = config.product_spec()?;
    let (d, rank, coverage) = predict(config)?;
    let model = config.galois_type().resolve(&d.slots)?;

    let mut warnings = Vec::new();
    let (data, sources) = gather_data(config, &d, &model, &mut warnings)?;
    warnings.extend(ap_zero_diagnostics(&d, &model, &data, config.prime_bound));
    if coverage == CoverageVerdict::Conjectural {
        warnings.push(conjectural_warning().to_string());
    }
    if config.prime_bound < MIN_VERDICT_BOUND {
        warnings.push(format!(
            "prime_bound {} is below {MIN_VERDICT_BOUND}; the verdict is inconclusive",
            config.prime_bound
        ));
    }

    let traces = trace_series(&d, &data, config.prime_bound, config.jobs)?;
    let estimate = pole_estimate(&traces, rank.total, config.tolerance, config.prime_bound)?;
    Ok(VerificationReport {
        spec,
        decomposition: d,
        rank,
        coverage,
        estimate,
        synthetic: config.is_synthetic(),
        sources,
        traces,
        warnings,
        elapsed: start.elapsed(),
    })
}

fn expected_kind(kind: FactorKind) -> EulerKind {
    match kind {
        FactorKind::Elliptic => EulerKind::Elliptic,
        FactorKind::Surface => EulerKind::Surface,
    }
}

/// Independent seed stream for each isogeny class.
fn class_seed(seed: u64, class: usize) -> u64 {
    seed ^ (class as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn gather_data(
    config: &RunConfig,
    d: &MotiveDecomposition,
    model: &GaloisModel,
    warnings: &mut Vec<String>,
) -> Result<(Vec<EulerData>, Vec<SourceSummary>)> {
    let bound = config.prime_bound;
    let mut data = Vec::with_capacity(d.slots.len());
    let mut sources = Vec::with_capacity(d.slots.len());
    let odd_primes: Vec<u64> = primes_up_to(bound)
        .into_iter()
        .filter(|&p| p != 2)
        .collect();
    for (i, slot) in d.slots.iter().enumerate() {
        let factor = config
            .factor(&slot.id)
            .ok_or_else(|| Error::Config(format!("no factor entry for `{}`", slot.id)))?;
        let source = factor
            .source
            .as_ref()
            .ok_or_else(|| Error::Config(format!("factor `{}` has no data source", slot.id)))?;
        let (euler, origin) = match source {
            DataSource::Curve(coeffs) => {
                let e = EllipticModel::new(*coeffs)?;
                if let Some(p) = non_minimal_prime(&e) {
                    warnings.push(format!(
                        "model for `{}` may be non-minimal at p={p}; primes dividing its discriminant are treated as bad",
                        slot.id
                    ));
                }
                curve_data(&e, bound, config)?
            }
            DataSource::EulerFile(path) => (file_data(path, &slot.id, bound, &odd_primes)?, "file"),
            DataSource::Synthetic => {
                let class = model
                    .classes
                    .iter()
                    .position(|c| c.slots.contains(&i))
                    .expect("resolved model covers every slot");
                let m = SatoTateModel::for_class(&model.classes[class].kind);
                (
                    synthesize_euler(m, &odd_primes, class_seed(config.seed, class))?,
                    "synthetic",
                )
            }
        };
        if euler.kind != expected_kind(slot.kind) {
            return Err(Error::Config(format!(
                "factor `{}` is {} but its Euler data is {}",
                slot.id, slot.kind, euler.kind
            )));
        }
        sources.push(SourceSummary {
            factor: slot.id.clone(),
            origin,
            source_id: euler.source_id.clone(),
            primes: euler.len(),
        });
        data.push(euler);
    }
    Ok((data, sources))
}

fn curve_data(
    e: &EllipticModel,
    bound: u64,
    config: &RunConfig,
) -> Result<(EulerData, &'static str)> {
    let Some(dir) = &config.cache_dir else {
        return Ok((compute_euler(e, bound, config.jobs)?, "curve"));
    };
    let cached_path = dir.join(format!("{}.{}.csv", e.source_id(), EulerKind::Elliptic));
    if cached_path.exists() {
        let cached = load_euler_data(&cached_path)?.restrict(bound);
        if cached.primes().eq(good_primes(e, bound)) {
            return Ok((cached, "cache"));
        }
    }
    let fresh = compute_euler(e, bound, config.jobs)?;
    save_cache(&fresh, dir)?;
    Ok((fresh, "curve"))
}

fn file_data(path: &Path, factor: &str, bound: u64, expected: &[u64]) -> Result<EulerData> {
    let data = load_euler_data(path)?.restrict(bound);
    let missing = expected.iter().filter(|&&p| data.get(p).is_none()).count();
    if missing as f64 > MAX_MISSING_FRACTION * expected.len() as f64 {
        return Err(Error::InsufficientData {
            factor: factor.to_string(),
            missing,
            expected: expected.len(),
        });
    }
    Ok(data)
}

/// A prime `p` with `p^12 | Δ`, the only places a model can fail to be minimal.
fn non_minimal_prime(e: &EllipticModel) -> Option<u64> {
    let disc = e.discriminant().unsigned_abs();
    primes_up_to(1700).into_iter().find(|&p| {
        (p as u128)
            .checked_pow(12)
            .is_some_and(|q| disc.is_multiple_of(q))
    })
}

/// Fraction of `a_p = 0` should be near 1/2 for a CM curve whose CM field is
/// not in the base, and near 0 without CM. Warn when the declaration looks off.
fn ap_zero_diagnostics(
    d: &MotiveDecomposition,
    model: &GaloisModel,
    data: &[EulerData],
    bound: u64,
) -> Vec<String> {
    const MIN_SAMPLE: usize = 200;
    let mut out = Vec::new();
    for class in &model.classes {
        for &slot in &class.slots {
            let entries: Vec<_> = data[slot]
                .entries()
                .iter()
                .filter(|e| e.p <= bound)
                .collect();
            if entries.len() < MIN_SAMPLE {
                continue;
            }
            let zeros = entries
                .iter()
                .filter(|e| e.local == LocalFactor::Elliptic { a: 0 })
                .count();
            let frac = zeros as f64 / entries.len() as f64;
            let id = &d.slots[slot].id;
            match class.kind {
                ClassKind::NonCm if frac > 0.25 => out.push(format!(
                    "a_p = 0 at {:.1}% of primes for `{id}`; it looks like a CM curve but is declared non_cm",
                    100.0 * frac
                )),
                ClassKind::Cm {
                    field_in_base: false,
                    ..
                } if frac < 0.25 => out.push(format!(
                    "a_p = 0 at only {:.1}% of primes for `{id}`; expected about half for a CM curve whose CM field is not in the base",
                    100.0 * frac
                )),
                _ => {}
            }
        }
    }
    out
}
