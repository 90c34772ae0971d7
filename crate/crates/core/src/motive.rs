//! Künneth decomposition of `H^{2r}(X)(r)` for
//! `X = E_1^{n_1} × … × A_1^{m_1} × …` into twisted irreducible pieces.
//!
//! Each elliptic slot contributes a single `Sym^k H^1(E)`; each surface slot
//! contributes one Sp(4) irreducible per copy of `A`. A label's `twist` is the
//! net Tate twist after the global `(r)`, so every label has motivic weight
//! `degree − 2·twist = 0`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::rep::{tensor_power_decompose, Sp4Weight, TwistedTerm};

/// Largest supported `dim X`.
pub const MAX_DIM: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorKind {
    Elliptic,
    Surface,
}

impl FactorKind {
    /// Dimension of one copy of the factor.
    pub fn dim(self) -> u32 {
        match self {
            FactorKind::Elliptic => 1,
            FactorKind::Surface => 2,
        }
    }
}

impl fmt::Display for FactorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FactorKind::Elliptic => "elliptic",
            FactorKind::Surface => "surface",
        })
    }
}

/// `exponent` copies of one elliptic curve or abelian surface, named by `id`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactorSpec {
    pub id: String,
    pub kind: FactorKind,
    pub exponent: u32,
}

impl FactorSpec {
    pub fn elliptic(id: impl Into<String>, exponent: u32) -> Self {
        FactorSpec {
            id: id.into(),
            kind: FactorKind::Elliptic,
            exponent,
        }
    }

    pub fn surface(id: impl Into<String>, exponent: u32) -> Self {
        FactorSpec {
            id: id.into(),
            kind: FactorKind::Surface,
            exponent,
        }
    }

    pub fn dim(&self) -> u32 {
        self.kind.dim() * self.exponent
    }
}

/// A product variety together with a codimension `r`.
///
/// Factors sharing an `id` are merged into one slot with summed exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductSpec {
    factors: Vec<FactorSpec>,
    r: u32,
}

impl ProductSpec {
    pub fn new(factors: Vec<FactorSpec>, r: u32) -> Result<Self> {
        let mut merged: Vec<FactorSpec> = Vec::new();
        for f in factors {
            if f.id.is_empty() {
                return Err(Error::InvalidSpec("factor with empty id".into()));
            }
            if f.exponent == 0 {
                return Err(Error::InvalidSpec(format!(
                    "factor `{}` has exponent 0",
                    f.id
                )));
            }
            match merged.iter_mut().find(|g| g.id == f.id) {
                Some(g) if g.kind != f.kind => {
                    return Err(Error::InvalidSpec(format!(
                        "factor `{}` declared both {} and {}",
                        f.id, g.kind, f.kind
                    )))
                }
                Some(g) => g.exponent += f.exponent,
                None => merged.push(f),
            }
        }
        let dim: u32 = merged.iter().map(FactorSpec::dim).sum();
        if dim == 0 {
            return Err(Error::InvalidSpec("empty product".into()));
        }
        if dim > MAX_DIM {
            return Err(Error::Overflow(format!(
                "dim X = {dim} exceeds the supported maximum {MAX_DIM}"
            )));
        }
        if r == 0 || r > dim {
            return Err(Error::CodimensionOutOfRange { r, dim });
        }
        Ok(ProductSpec { factors: merged, r })
    }

    pub fn factors(&self) -> &[FactorSpec] {
        &self.factors
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn dim(&self) -> u32 {
        self.factors.iter().map(FactorSpec::dim).sum()
    }

    pub fn with_r(&self, r: u32) -> Result<Self> {
        ProductSpec::new(self.factors.clone(), r)
    }
}

/// The piece of a label living on one slot.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SlotPart {
    /// `Sym^k H^1(E)`.
    Elliptic(u32),
    /// One Sp(4) irreducible per copy of the surface, sorted descending.
    Surface(Vec<Sp4Weight>),
}

impl SlotPart {
    pub fn dim(&self) -> u64 {
        match self {
            SlotPart::Elliptic(k) => *k as u64 + 1,
            SlotPart::Surface(ws) => ws.iter().map(|w| w.dim()).product(),
        }
    }

    pub fn degree(&self) -> u32 {
        match self {
            SlotPart::Elliptic(k) => *k,
            SlotPart::Surface(ws) => ws.iter().map(|w| w.degree()).sum(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        match self {
            SlotPart::Elliptic(k) => *k == 0,
            SlotPart::Surface(ws) => ws.iter().all(|w| w.is_trivial()),
        }
    }
}

/// `(⊠_slots part)(twist)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IrrepLabel {
    pub parts: Vec<SlotPart>,
    pub twist: i32,
}

impl IrrepLabel {
    pub fn dim(&self) -> u64 {
        self.parts.iter().map(SlotPart::dim).product()
    }

    pub fn degree(&self) -> u32 {
        self.parts.iter().map(SlotPart::degree).sum()
    }

    pub fn motivic_weight(&self) -> i64 {
        self.degree() as i64 - 2 * self.twist as i64
    }

    pub fn is_trivial(&self) -> bool {
        self.parts.iter().all(SlotPart::is_trivial)
    }

    /// Human-readable name using the slot ids, e.g. `Sym^1(E1) ⊠ Sym^1(E2)`.
    pub fn name(&self, slots: &[FactorSpec]) -> String {
        let pieces: Vec<String> = self
            .parts
            .iter()
            .zip(slots)
            .filter(|(p, _)| !p.is_trivial())
            .map(|(p, s)| match p {
                SlotPart::Elliptic(k) => format!("Sym^{k}({})", s.id),
                SlotPart::Surface(ws) => {
                    let ws: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
                    format!("{}({})", ws.join("⊗"), s.id)
                }
            })
            .collect();
        if pieces.is_empty() {
            "triv".to_string()
        } else {
            pieces.join(" ⊠ ")
        }
    }
}

/// `H^{2r}(X)(r)` as a multiset of labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotiveDecomposition {
    pub slots: Vec<FactorSpec>,
    pub r: u32,
    pub summands: BTreeMap<IrrepLabel, u64>,
}

impl MotiveDecomposition {
    /// The unit motive over a point: one trivial label, no slots.
    pub fn trivial() -> Self {
        MotiveDecomposition {
            slots: Vec::new(),
            r: 0,
            summands: BTreeMap::from([(
                IrrepLabel {
                    parts: Vec::new(),
                    twist: 0,
                },
                1,
            )]),
        }
    }

    pub fn dim_x(&self) -> u32 {
        self.slots.iter().map(FactorSpec::dim).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IrrepLabel, u64)> + '_ {
        self.summands.iter().map(|(l, m)| (l, *m))
    }

    /// Formal direct sum of two decompositions over the same slots.
    pub fn direct_sum(&self, other: &MotiveDecomposition) -> Result<MotiveDecomposition> {
        if self.slots != other.slots {
            return Err(Error::InvalidSpec(
                "direct sum of motives over different slots".into(),
            ));
        }
        let mut out = self.clone();
        for (l, m) in other.iter() {
            *out.summands.entry(l.clone()).or_insert(0) += m;
        }
        Ok(out)
    }

    /// Restrict to a subset of labels.
    pub fn filter(&self, keep: impl Fn(&IrrepLabel) -> bool) -> MotiveDecomposition {
        MotiveDecomposition {
            slots: self.slots.clone(),
            r: self.r,
            summands: self
                .summands
                .iter()
                .filter(|(l, _)| keep(l))
                .map(|(l, m)| (l.clone(), *m))
                .collect(),
        }
    }
}

/// `Σ mult·dim(label)`.
pub fn total_dim(d: &MotiveDecomposition) -> u64 {
    d.iter().map(|(l, m)| m * l.dim()).sum()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

fn factorial(n: u32) -> u128 {
    (1..=n as u128).product()
}

/// `H^m(E^n)` as `(k, twist, mult)` triples, each standing for
/// `mult · Sym^k H^1(E)(−twist)` with `k + 2·twist = m`.
///
/// Künneth gives `⊕_{a+2b=m} n!/(a!·b!·(n−a−b)!) · (H^1)^{⊗a}(−b)`, and each
/// tensor power is split by [`tensor_power_decompose`].
pub fn cohomology_of_elliptic_power(n: u32, m: u32) -> Result<Vec<TwistedTerm>> {
    if n == 0 {
        return Err(Error::InvalidSpec(
            "elliptic exponent must be positive".into(),
        ));
    }
    if m > 2 * n {
        return Err(Error::DegreeOutOfRange {
            degree: m,
            max: 2 * n,
        });
    }
    let mut acc: BTreeMap<(u32, i32), u64> = BTreeMap::new();
    for b in 0..=m / 2 {
        let a = m - 2 * b;
        if a + b > n {
            continue;
        }
        let count = factorial(n) / (factorial(a) * factorial(b) * factorial(n - a - b));
        for t in tensor_power_decompose(a) {
            *acc.entry((t.k, t.twist + b as i32)).or_insert(0) += t.mult * count as u64;
        }
    }
    Ok(acc
        .into_iter()
        .rev()
        .map(|((k, twist), mult)| TwistedTerm { k, twist, mult })
        .collect())
}

/// One Sp(4) constituent of `H^k(A)`, standing for `V_weight(−twist)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SurfaceTerm {
    pub weight: Sp4Weight,
    pub twist: i32,
    pub mult: u64,
}

/// `H^k(A) = Λ^k(std)` for a generic abelian surface.
pub fn cohomology_of_surface(k: u32) -> Result<Vec<SurfaceTerm>> {
    let term = |weight, twist| SurfaceTerm {
        weight,
        twist,
        mult: 1,
    };
    Ok(match k {
        0 => vec![term(Sp4Weight::TRIVIAL, 0)],
        1 => vec![term(Sp4Weight::STD, 0)],
        // Λ² contains the line spanned by the symplectic form
        2 => vec![term(Sp4Weight::WEDGE2, 0), term(Sp4Weight::TRIVIAL, 1)],
        3 => vec![term(Sp4Weight::STD, 1)],
        4 => vec![term(Sp4Weight::TRIVIAL, 2)],
        _ => return Err(Error::DegreeOutOfRange { degree: k, max: 4 }),
    })
}

/// Per-degree pieces of one slot: `table[d]` lists `(part, internal twist, mult)`.
type SlotTable = Vec<Vec<(SlotPart, i32, u64)>>;

fn elliptic_table(n: u32) -> Result<SlotTable> {
    (0..=2 * n)
        .map(|d| {
            Ok(cohomology_of_elliptic_power(n, d)?
                .into_iter()
                .map(|t| (SlotPart::Elliptic(t.k), t.twist, t.mult))
                .collect())
        })
        .collect()
}

fn surface_table(m: u32) -> Result<SlotTable> {
    // Künneth over copies; permuting copies gives isomorphic pieces, so
    // weights are kept sorted and merged.
    type Key = (u32, Vec<Sp4Weight>, i32);
    let mut acc: BTreeMap<Key, u64> = BTreeMap::from([((0, Vec::new(), 0), 1)]);
    for _ in 0..m {
        let mut next: BTreeMap<Key, u64> = BTreeMap::new();
        for ((deg, ws, tw), mult) in &acc {
            for k in 0..=4 {
                for t in cohomology_of_surface(k)? {
                    let mut ws = ws.clone();
                    ws.push(t.weight);
                    ws.sort_unstable_by(|a, b| b.cmp(a));
                    *next.entry((deg + k, ws, tw + t.twist)).or_insert(0) += mult * t.mult;
                }
            }
        }
        acc = next;
    }
    let mut table: SlotTable = vec![Vec::new(); 4 * m as usize + 1];
    for ((deg, ws, tw), mult) in acc {
        table[deg as usize].push((SlotPart::Surface(ws), tw, mult));
    }
    Ok(table)
}

/// Decompose `H^{2r}(X)(r)` into labelled summands.
pub fn build_motive(spec: &ProductSpec) -> Result<MotiveDecomposition> {
    let tables = spec
        .factors()
        .iter()
        .map(|f| match f.kind {
            FactorKind::Elliptic => elliptic_table(f.exponent),
            FactorKind::Surface => surface_table(f.exponent),
        })
        .collect::<Result<Vec<_>>>()?;

    let r = spec.r();
    let mut acc: BTreeMap<(Vec<SlotPart>, i32), u64> = BTreeMap::new();
    let mut parts = Vec::with_capacity(tables.len());
    distribute(&tables, 2 * r, &mut parts, 0, 1, &mut acc);

    let mut summands = BTreeMap::new();
    for ((parts, internal), mult) in acc {
        let label = IrrepLabel {
            parts,
            twist: r as i32 - internal,
        };
        if label.motivic_weight() != 0 {
            return Err(Error::Inconsistent(format!(
                "label {label:?} has motivic weight {}",
                label.motivic_weight()
            )));
        }
        summands.insert(label, mult);
    }
    let d = MotiveDecomposition {
        slots: spec.factors().to_vec(),
        r,
        summands,
    };
    let expected = binomial(2 * spec.dim() as u64, 2 * r as u64);
    let got = total_dim(&d);
    if got != expected {
        return Err(Error::Inconsistent(format!(
            "total dimension {got}, expected binomial(2·{}, {}) = {expected}",
            spec.dim(),
            2 * r
        )));
    }
    Ok(d)
}

/// Walk all ways of splitting `remaining` cohomological degree over the slots.
fn distribute(
    tables: &[SlotTable],
    remaining: u32,
    parts: &mut Vec<SlotPart>,
    twist: i32,
    mult: u64,
    acc: &mut BTreeMap<(Vec<SlotPart>, i32), u64>,
) {
    let Some((table, rest)) = tables.split_first() else {
        if remaining == 0 {
            *acc.entry((parts.clone(), twist)).or_insert(0) += mult;
        }
        return;
    };
    let top = remaining.min(table.len() as u32 - 1);
    for d in 0..=top {
        for (part, tw, m) in &table[d as usize] {
            parts.push(part.clone());
            distribute(rest, remaining - d, parts, twist + tw, mult * m, acc);
            parts.pop();
        }
    }
}
