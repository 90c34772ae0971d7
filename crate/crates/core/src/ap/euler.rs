//! Euler-factor files.
//!
//! UTF-8 text. The first non-comment line is the header `p,a` (elliptic) or
//! `p,c1,c2` (surface); every following line is one prime. Lines starting
//! with `#` are comments and blank lines are skipped. Primes must be strictly
//! ascending. A surface line `p,c1,c2` stands for the Frobenius polynomial
//! `T⁴ − c1·T³ + c2·T² − p·c1·T + p²`.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EulerKind {
    Elliptic,
    Surface,
}

impl EulerKind {
    fn header(self) -> &'static str {
        match self {
            EulerKind::Elliptic => "p,a",
            EulerKind::Surface => "p,c1,c2",
        }
    }
}

impl fmt::Display for EulerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EulerKind::Elliptic => "elliptic",
            EulerKind::Surface => "surface",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LocalFactor {
    Elliptic { a: i64 },
    Surface { c1: i64, c2: i64 },
}

impl LocalFactor {
    pub fn kind(&self) -> EulerKind {
        match self {
            LocalFactor::Elliptic { .. } => EulerKind::Elliptic,
            LocalFactor::Surface { .. } => EulerKind::Surface,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EulerEntry {
    pub p: u64,
    pub local: LocalFactor,
}

/// Validated Frobenius data for one factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerData {
    pub source_id: String,
    pub kind: EulerKind,
    entries: Vec<EulerEntry>,
}

/// `|a| <= 2√p`, checked exactly as `a² <= 4p`.
pub fn check_elliptic(p: u64, a: i64) -> Result<()> {
    if (a as i128).pow(2) > 4 * p as i128 {
        return Err(Error::HasseViolation { a, p });
    }
    Ok(())
}

/// `A >= B·√p`, exactly.
fn ge_b_sqrt_p(a: i128, b: i128, p: i128) -> bool {
    match (a >= 0, b > 0) {
        (true, false) => true,
        (false, true) => false,
        (true, true) => a * a >= b * b * p,
        (false, false) => a * a <= b * b * p,
    }
}

/// Check that `T⁴ − c1·T³ + c2·T² − p·c1·T + p²` has all roots of absolute
/// value `√p`.
///
/// Writing the roots as `√p·e^{±iθ_j}` and `u_j = 2cos θ_j`, the normalized
/// polynomial factors through `u² − (c1/√p)·u + (c2/p − 2)`, whose roots must
/// be real and lie in `[−2, 2]`. All comparisons are exact.
pub fn check_surface(p: u64, c1: i64, c2: i64) -> Result<()> {
    let (p, c1, c2) = (p as i128, c1 as i128, c2 as i128);
    let fail = |msg: &str| {
        Err(Error::BoundViolation {
            p: p as u64,
            msg: format!("c1={c1}, c2={c2}: {msg}"),
        })
    };
    if c1 * c1 > 16 * p {
        return fail("|c1| > 4·sqrt(p)");
    }
    if c2.abs() > 6 * p {
        return fail("|c2| > 6p");
    }
    if c1 * c1 - 4 * c2 + 8 * p < 0 {
        return fail("Frobenius angles are not real");
    }
    // q(2) >= 0 and q(−2) >= 0, scaled by p
    if !ge_b_sqrt_p(2 * p + c2, 2 * c1, p) || !ge_b_sqrt_p(2 * p + c2, -2 * c1, p) {
        return fail("Frobenius angles leave [−2, 2]");
    }
    Ok(())
}

fn check_local(p: u64, local: &LocalFactor) -> Result<()> {
    match *local {
        LocalFactor::Elliptic { a } => check_elliptic(p, a).map_err(|_| Error::BoundViolation {
            p,
            msg: format!("|a|={} exceeds 2·sqrt(p)", a.abs()),
        }),
        LocalFactor::Surface { c1, c2 } => check_surface(p, c1, c2),
    }
}

impl EulerData {
    pub fn new(
        source_id: impl Into<String>,
        kind: EulerKind,
        entries: Vec<EulerEntry>,
    ) -> Result<Self> {
        let source_id = source_id.into();
        for (i, e) in entries.iter().enumerate() {
            if e.local.kind() != kind {
                return Err(Error::InvalidSpec(format!(
                    "{source_id}: {} entry at p={} in {kind} data",
                    e.local.kind(),
                    e.p
                )));
            }
            if i > 0 && entries[i - 1].p >= e.p {
                return Err(Error::InvalidSpec(format!(
                    "{source_id}: primes not strictly ascending at p={}",
                    e.p
                )));
            }
            check_local(e.p, &e.local)?;
        }
        Ok(EulerData {
            source_id,
            kind,
            entries,
        })
    }

    pub fn entries(&self) -> &[EulerEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.iter().map(|e| e.p)
    }

    pub fn get(&self, p: u64) -> Option<LocalFactor> {
        self.entries
            .binary_search_by_key(&p, |e| e.p)
            .ok()
            .map(|i| self.entries[i].local)
    }

    /// Entries with `p <= bound`.
    pub fn restrict(&self, bound: u64) -> EulerData {
        let end = self.entries.partition_point(|e| e.p <= bound);
        EulerData {
            source_id: self.source_id.clone(),
            kind: self.kind,
            entries: self.entries[..end].to_vec(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(16 * self.entries.len() + 16);
        out.push_str(self.kind.header());
        out.push('\n');
        for e in &self.entries {
            match e.local {
                LocalFactor::Elliptic { a } => out.push_str(&format!("{},{a}\n", e.p)),
                LocalFactor::Surface { c1, c2 } => out.push_str(&format!("{},{c1},{c2}\n", e.p)),
            }
        }
        out
    }

    pub fn parse(source_id: impl Into<String>, text: &str) -> Result<EulerData> {
        let mut kind = None;
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let perr = |msg: String| Error::Parse { line: line_no, msg };
            let Some(k) = kind else {
                kind = Some(match line.replace(' ', "").as_str() {
                    "p,a" => EulerKind::Elliptic,
                    "p,c1,c2" => EulerKind::Surface,
                    other => {
                        return Err(perr(format!(
                            "expected header `p,a` or `p,c1,c2`, got `{other}`"
                        )))
                    }
                });
                continue;
            };
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            let expected = if k == EulerKind::Elliptic { 2 } else { 3 };
            if fields.len() != expected {
                return Err(perr(format!(
                    "expected {expected} fields, got {}",
                    fields.len()
                )));
            }
            let p: u64 = fields[0]
                .parse()
                .map_err(|_| perr(format!("bad prime `{}`", fields[0])))?;
            if p < 2 {
                return Err(perr(format!("bad prime `{p}`")));
            }
            let int = |s: &str| -> Result<i64> {
                s.parse().map_err(|_| perr(format!("bad integer `{s}`")))
            };
            let local = match k {
                EulerKind::Elliptic => LocalFactor::Elliptic { a: int(fields[1])? },
                EulerKind::Surface => LocalFactor::Surface {
                    c1: int(fields[1])?,
                    c2: int(fields[2])?,
                },
            };
            if let Some(prev) = entries.last().map(|e: &EulerEntry| e.p) {
                if p <= prev {
                    return Err(perr(format!("prime {p} not greater than previous {prev}")));
                }
            }
            check_local(p, &local)?;
            entries.push(EulerEntry { p, local });
        }
        let Some(kind) = kind else {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                msg: "missing header".into(),
            });
        };
        EulerData::new(source_id, kind, entries)
    }

    /// File name used by [`save_cache`].
    pub fn cache_file_name(&self) -> String {
        format!("{}.{}.csv", self.source_id, self.kind)
    }
}

fn source_id_from_path(path: &Path) -> String {
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let stem = name.strip_suffix(".csv").unwrap_or(&name);
    let stem = stem
        .strip_suffix(".elliptic")
        .or_else(|| stem.strip_suffix(".surface"))
        .unwrap_or(stem);
    stem.to_string()
}

/// Read and validate an Euler file. The source id is the file name without
/// its `.csv` and kind suffixes.
pub fn load_euler_data(path: impl AsRef<Path>) -> Result<EulerData> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    EulerData::parse(source_id_from_path(path), &text)
}

/// Write `data` to `dir/<source_id>.<kind>.csv`, replacing any previous file.
pub fn save_cache(data: &EulerData, dir: impl AsRef<Path>) -> Result<PathBuf> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let path = dir.join(data.cache_file_name());
    let tmp = dir.join(format!(".{}.tmp", data.cache_file_name()));
    fs::write(&tmp, data.to_text()).map_err(|e| Error::io(&tmp, e))?;
    fs::rename(&tmp, &path).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_elliptic_file() {
        let d = EulerData::parse("x", "p,a\n5,1\n7,-2\n").unwrap();
        assert_eq!(d.kind, EulerKind::Elliptic);
        assert_eq!(d.len(), 2);
        assert_eq!(d.get(7), Some(LocalFactor::Elliptic { a: -2 }));
        assert_eq!(d.get(11), None);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# exported\n\np,a\n# bad primes omitted\n3,0\n 5 , 2 \n";
        let d = EulerData::parse("x", text).unwrap();
        assert_eq!(d.primes().collect::<Vec<_>>(), vec![3, 5]);
    }

    #[test]
    fn hasse_violation_names_prime() {
        let err = EulerData::parse("x", "p,a\n5,6\n").unwrap_err();
        assert!(matches!(err, Error::BoundViolation { p: 5, .. }), "{err}");
        // 4 = floor(2·sqrt(5)) is allowed
        assert!(EulerData::parse("x", "p,a\n5,4\n").is_ok());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("p,b\n5,1\n", 1),
            ("p,a\n5,1\n7\n", 3),
            ("p,a\n5,x\n", 2),
            ("p,a\n7,1\n5,1\n", 3),
            ("p,a\n7,1\n7,1\n", 3),
            ("p,c1,c2\n5,1\n", 2),
        ];
        for (text, line) in cases {
            match EulerData::parse("x", text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert!(matches!(
            EulerData::parse("x", "# only\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn surface_line_accepted() {
        let d = EulerData::parse("A", "p,c1,c2\n3,2,5\n").unwrap();
        assert_eq!(d.get(3), Some(LocalFactor::Surface { c1: 2, c2: 5 }));
    }

    #[test]
    fn surface_bounds() {
        // (T² + 3)² = T⁴ + 6T² + 9 at p = 3: roots ±i√3
        assert!(check_surface(3, 0, 6).is_ok());
        // (T − √3)^2(T + √3)^2 = T⁴ − 6T² + 9
        assert!(check_surface(3, 0, -6).is_ok());
        assert!(check_surface(3, 0, 7).is_err());
        assert!(check_surface(5, 9, 0).is_err());
        // c1 = 4√p only at the boundary; p = 4 is not prime but exercises equality
        assert!(check_surface(4, 8, 24).is_ok());
    }

    #[test]
    fn source_id_strips_suffixes() {
        assert_eq!(
            source_id_from_path(Path::new("/a/b/E37.elliptic.csv")),
            "E37"
        );
        assert_eq!(source_id_from_path(Path::new("E37.csv")), "E37");
        assert_eq!(source_id_from_path(Path::new("E37")), "E37");
    }

    #[test]
    fn restrict_by_bound() {
        let d = EulerData::parse("x", "p,a\n3,1\n5,1\n7,1\n").unwrap();
        assert_eq!(d.restrict(5).len(), 2);
        assert_eq!(d.restrict(2).len(), 0);
    }
}
