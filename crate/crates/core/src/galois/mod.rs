//! Sato–Tate group models and exact invariant dimensions.
//!
//! The image of Galois on `H^1` of each isogeny class is modelled by a
//! compact group:
//!
//! | class                         | group      |
//! |-------------------------------|------------|
//! | elliptic, no CM               | SU(2)      |
//! | elliptic, CM field in base    | U(1)       |
//! | elliptic, CM field not in base| N(U(1))    |
//! | generic abelian surface       | USp(4)     |
//!
//! Distinct classes are independent, so the invariant dimension of a label is
//! the product of per-class invariant dimensions.

mod coverage;
mod weyl;

use std::fmt;

use serde::Deserialize;

pub use coverage::{theorem_coverage, CoverageVerdict, TheoremCase};
pub use weyl::{weyl_integrate_oracle, DEFAULT_QUADRATURE_POINTS};

use crate::error::{Error, Result};
use crate::motive::{FactorKind, FactorSpec, IrrepLabel, MotiveDecomposition, SlotPart};
use crate::rep::{sp4_decompose_product, CharPoly, Sl2Rep, Sp4Rep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseField {
    TotallyReal,
    ImaginaryCm,
    Other,
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BaseField::TotallyReal => "totally_real",
            BaseField::ImaginaryCm => "imaginary_cm",
            BaseField::Other => "other",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ClassKind {
    NonCm,
    Cm {
        /// Whether the CM field is contained in the base field.
        field_in_base: bool,
        /// Any stable name for the CM field, used only to detect sharing.
        cm_field: String,
    },
    GenericSurface,
}

impl ClassKind {
    /// Name of the Sato–Tate group this kind is modelled by.
    pub fn group_name(&self) -> &'static str {
        match self {
            ClassKind::NonCm => "SU(2)",
            ClassKind::Cm {
                field_in_base: true,
                ..
            } => "U(1)",
            ClassKind::Cm {
                field_in_base: false,
                ..
            } => "N(U(1))",
            ClassKind::GenericSurface => "USp(4)",
        }
    }
}

/// Factors (by id) that are mutually isogenous, with their shared kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsogenyClass {
    pub members: Vec<String>,
    pub kind: ClassKind,
}

/// User-declared arithmetic structure of the factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisType {
    pub classes: Vec<IsogenyClass>,
    pub base_field: BaseField,
}

/// A class resolved to slot indices of a particular decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedClass {
    pub kind: ClassKind,
    pub slots: Vec<usize>,
}

/// A [`GaloisType`] checked against a slot layout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisModel {
    pub classes: Vec<ResolvedClass>,
    pub base_field: BaseField,
}

impl GaloisType {
    pub fn resolve(&self, slots: &[FactorSpec]) -> Result<GaloisModel> {
        let mut owner: Vec<Option<usize>> = vec![None; slots.len()];
        let mut classes = Vec::with_capacity(self.classes.len());
        for (ci, class) in self.classes.iter().enumerate() {
            if class.members.is_empty() {
                return Err(Error::InvalidSpec(format!("isogeny class #{ci} is empty")));
            }
            let mut idx = Vec::new();
            for m in &class.members {
                let Some(i) = slots.iter().position(|s| &s.id == m) else {
                    return Err(Error::InvalidSpec(format!(
                        "isogeny class member `{m}` is not a factor"
                    )));
                };
                if owner[i].is_some() {
                    return Err(Error::InvalidSpec(format!(
                        "factor `{m}` belongs to more than one isogeny class"
                    )));
                }
                owner[i] = Some(ci);
                idx.push(i);
            }
            idx.sort_unstable();
            let kinds: Vec<FactorKind> = idx.iter().map(|&i| slots[i].kind).collect();
            match &class.kind {
                ClassKind::GenericSurface => {
                    if kinds.iter().any(|k| *k != FactorKind::Surface) {
                        return Err(Error::InvalidSpec(
                            "generic_surface class contains an elliptic factor".into(),
                        ));
                    }
                    if idx.len() != 1 {
                        return Err(Error::UnsupportedGaloisType(
                            "isogenous surface factors must share one id".into(),
                        ));
                    }
                }
                _ => {
                    if kinds.iter().any(|k| *k != FactorKind::Elliptic) {
                        return Err(Error::UnsupportedGaloisType(
                            "abelian surfaces support only the generic type".into(),
                        ));
                    }
                }
            }
            classes.push(ResolvedClass {
                kind: class.kind.clone(),
                slots: idx,
            });
        }
        if let Some(i) = owner.iter().position(Option::is_none) {
            return Err(Error::InvalidSpec(format!(
                "factor `{}` has no isogeny class",
                slots[i].id
            )));
        }
        for (i, a) in self.classes.iter().enumerate() {
            for b in &self.classes[i + 1..] {
                if let (ClassKind::Cm { cm_field: fa, .. }, ClassKind::Cm { cm_field: fb, .. }) =
                    (&a.kind, &b.kind)
                {
                    if fa == fb {
                        return Err(Error::UnsupportedGaloisType(format!(
                            "two distinct CM classes share the CM field `{fa}`"
                        )));
                    }
                }
            }
        }
        Ok(GaloisModel {
            classes,
            base_field: self.base_field,
        })
    }
}

fn elliptic_degrees(label: &IrrepLabel, slots: &[usize]) -> Result<Vec<u32>> {
    slots
        .iter()
        .map(|&i| match label.parts.get(i) {
            Some(SlotPart::Elliptic(k)) => Ok(*k),
            _ => Err(Error::InvalidSpec(format!(
                "label slot {i} is not an elliptic slot"
            ))),
        })
        .collect()
}

/// `c₀` for U(1): constant term of `Π (z^k + z^{k−2} + … + z^{−k})`.
fn u1_invariants(ks: &[u32]) -> u64 {
    ks.iter()
        .fold(CharPoly::one(), |acc, &k| acc.mul(&CharPoly::sym(k)))
        .coeff(0) as u64
}

fn class_invariant_dim(label: &IrrepLabel, class: &ResolvedClass) -> Result<u64> {
    match &class.kind {
        ClassKind::NonCm => {
            let ks = elliptic_degrees(label, &class.slots)?;
            let prod = ks.iter().fold(Sl2Rep::trivial(), |acc, &k| {
                acc.tensor(&Sl2Rep::irreducible(k))
            });
            Ok(prod.invariant_dim())
        }
        ClassKind::Cm {
            field_in_base: true,
            ..
        } => Ok(u1_invariants(&elliptic_degrees(label, &class.slots)?)),
        ClassKind::Cm {
            field_in_base: false,
            ..
        } => {
            let ks = elliptic_degrees(label, &class.slots)?;
            let c0 = u1_invariants(&ks) as i64;
            // on the non-identity component every element has eigenvalues ±i,
            // where Sym^k has trace (−1)^{k/2} for even k and 0 for odd k
            let eps: i64 = if ks.iter().all(|k| k % 2 == 0) {
                ks.iter()
                    .map(|k| if (k / 2) % 2 == 0 { 1 } else { -1 })
                    .product()
            } else {
                0
            };
            let twice = c0 + eps;
            if twice < 0 || twice % 2 != 0 {
                return Err(Error::Inconsistent(format!(
                    "N(U(1)) average ({c0} + {eps})/2 is not a natural number"
                )));
            }
            Ok((twice / 2) as u64)
        }
        ClassKind::GenericSurface => {
            let &[slot] = class.slots.as_slice() else {
                return Err(Error::UnsupportedGaloisType(
                    "generic_surface class must have one slot".into(),
                ));
            };
            let Some(SlotPart::Surface(ws)) = label.parts.get(slot) else {
                return Err(Error::InvalidSpec(format!(
                    "label slot {slot} is not a surface slot"
                )));
            };
            let mut prod = Sp4Rep::trivial();
            for w in ws {
                prod = sp4_decompose_product(&prod, &Sp4Rep::irreducible(*w))?;
            }
            Ok(prod.invariant_dim())
        }
    }
}

/// Dimension of the invariants of `label` under the model's Sato–Tate group.
pub fn invariant_dim(label: &IrrepLabel, model: &GaloisModel) -> Result<u64> {
    if label.motivic_weight() != 0 {
        return Err(Error::Domain(format!(
            "label has motivic weight {}, expected 0",
            label.motivic_weight()
        )));
    }
    model
        .classes
        .iter()
        .try_fold(1u64, |acc, c| Ok(acc * class_invariant_dim(label, c)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummandRank {
    pub label: IrrepLabel,
    pub mult: u64,
    pub invariant_dim: u64,
}

/// Predicted rank of codimension-`r` cycle classes modulo homological
/// equivalence: the dimension of Galois invariants in `H^{2r}(X)(r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankPrediction {
    pub summands: Vec<SummandRank>,
    pub total: u64,
}

pub fn predicted_rank(d: &MotiveDecomposition, g: &GaloisType) -> Result<RankPrediction> {
    let model = g.resolve(&d.slots)?;
    let summands = d
        .iter()
        .map(|(label, mult)| {
            Ok(SummandRank {
                label: label.clone(),
                mult,
                invariant_dim: invariant_dim(label, &model)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let total = summands.iter().map(|s| s.mult * s.invariant_dim).sum();
    Ok(RankPrediction { summands, total })
}
