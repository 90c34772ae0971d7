//! Which products and base fields have a proof of the pole-order identity.

use std::fmt;

use super::{BaseField, ClassKind, GaloisType};
use crate::error::Result;
use crate::motive::{FactorKind, ProductSpec};

/// The four proven families:
///
/// * `I`: `E1^n1 × E2^n2`, `n1 ≥ 1`, `n2 ≥ 0`;
/// * `II`: `E1^n1 × E2^n2 × E3`, `n1 ≥ 1`, `1 ≤ n2 ≤ 2`;
/// * `III`: `E1^n1 × E2^n2 × E3 × E4`, `1 ≤ n1, n2 ≤ 2`;
///
/// all over totally real or imaginary CM fields, and
///
/// * `IV`: `A` or `A²` over a totally real field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoremCase {
    I,
    II,
    III,
    IV,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverageVerdict {
    Proven(TheoremCase),
    Conjectural,
}

impl fmt::Display for CoverageVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverageVerdict::Proven(c) => {
                let roman = match c {
                    TheoremCase::I => "i",
                    TheoremCase::II => "ii",
                    TheoremCase::III => "iii",
                    TheoremCase::IV => "iv",
                };
                write!(f, "proven({roman})")
            }
            CoverageVerdict::Conjectural => f.write_str("conjectural"),
        }
    }
}

/// Classify `spec` after merging each isogeny class into one factor.
pub fn theorem_coverage(spec: &ProductSpec, g: &GaloisType) -> Result<CoverageVerdict> {
    let model = g.resolve(spec.factors())?;
    let mut elliptic = Vec::new();
    let mut surfaces = Vec::new();
    for class in &model.classes {
        let exponent: u32 = class
            .slots
            .iter()
            .map(|&i| spec.factors()[i].exponent)
            .sum();
        match (&class.kind, spec.factors()[class.slots[0]].kind) {
            (ClassKind::GenericSurface, _) | (_, FactorKind::Surface) => surfaces.push(exponent),
            _ => elliptic.push(exponent),
        }
    }
    let verdict = match (elliptic.len(), surfaces.as_slice()) {
        (0, [m]) if *m <= 2 && g.base_field == BaseField::TotallyReal => {
            CoverageVerdict::Proven(TheoremCase::IV)
        }
        (n, []) if n > 0 && g.base_field != BaseField::Other => elliptic_case(&mut elliptic),
        _ => CoverageVerdict::Conjectural,
    };
    Ok(verdict)
}

fn elliptic_case(exps: &mut [u32]) -> CoverageVerdict {
    exps.sort_unstable();
    let ones = exps.iter().filter(|&&e| e == 1).count();
    match exps.len() {
        1 | 2 => CoverageVerdict::Proven(TheoremCase::I),
        // sorted: exps[0] plays E3 (must be 1), exps[1] plays E2 (1 or 2)
        3 if exps[0] == 1 && exps[1] <= 2 => CoverageVerdict::Proven(TheoremCase::II),
        4 if ones >= 2 && exps[3] <= 2 => CoverageVerdict::Proven(TheoremCase::III),
        _ => CoverageVerdict::Conjectural,
    }
}
