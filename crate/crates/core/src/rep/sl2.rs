//! Finite-dimensional representations of SU(2), equivalently algebraic
//! representations of SL(2), in the basis of symmetric powers.

use std::collections::BTreeMap;

use super::charpoly::CharPoly;
use super::Character;
use crate::error::{Error, Result};

/// A direct sum `⊕ mult·Sym^k`, carrying a uniform power of the determinant.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Sl2Rep {
    mults: BTreeMap<u32, u64>,
    twist: i32,
}

impl Sl2Rep {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn irreducible(k: u32) -> Self {
        let mut r = Self::empty();
        r.insert(k, 1);
        r
    }

    pub fn trivial() -> Self {
        Self::irreducible(0)
    }

    pub fn from_multiplicities(mults: impl IntoIterator<Item = (u32, u64)>) -> Self {
        let mut r = Self::empty();
        for (k, m) in mults {
            r.insert(k, m);
        }
        r
    }

    pub fn with_twist(mut self, twist: i32) -> Self {
        self.twist = twist;
        self
    }

    pub fn twist(&self) -> i32 {
        self.twist
    }

    fn insert(&mut self, k: u32, m: u64) {
        if m > 0 {
            *self.mults.entry(k).or_insert(0) += m;
        }
    }

    pub fn multiplicity(&self, k: u32) -> u64 {
        self.mults.get(&k).copied().unwrap_or(0)
    }

    /// `(k, mult)` pairs in ascending `k`.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (u32, u64)> + '_ {
        self.mults.iter().map(|(k, m)| (*k, *m))
    }

    pub fn is_empty(&self) -> bool {
        self.mults.is_empty()
    }

    pub fn dim(&self) -> u64 {
        self.iter().map(|(k, m)| m * (k as u64 + 1)).sum()
    }

    /// Multiplicity of the trivial representation.
    pub fn invariant_dim(&self) -> u64 {
        self.multiplicity(0)
    }

    pub fn direct_sum(&self, other: &Sl2Rep) -> Sl2Rep {
        let mut out = self.clone();
        for (k, m) in other.iter() {
            out.insert(k, m);
        }
        out
    }

    /// Tensor product, extended bilinearly from [`clebsch_gordan`].
    pub fn tensor(&self, other: &Sl2Rep) -> Sl2Rep {
        let mut out = Sl2Rep::empty().with_twist(self.twist + other.twist);
        for (a, ma) in self.iter() {
            for (b, mb) in other.iter() {
                for (c, mc) in clebsch_gordan(a, b).iter() {
                    out.insert(c, ma * mb * mc);
                }
            }
        }
        out
    }

    /// Recover the decomposition from a character by peeling off the highest
    /// surviving weight.
    pub fn from_character(chi: &CharPoly<i32>) -> Result<Sl2Rep> {
        let mut rest = chi.clone();
        let mut out = Sl2Rep::empty();
        while let Some((top, c)) = rest.leading() {
            if top < 0 || c < 0 {
                return Err(Error::Inconsistent(format!(
                    "weight {top} survives with coefficient {c}"
                )));
            }
            let k = top as u32;
            out.insert(k, c as u64);
            rest = rest.sub(&CharPoly::sym(k).scale(c));
        }
        Ok(out)
    }
}

impl Character for Sl2Rep {
    type Weight = i32;

    fn character(&self) -> CharPoly<i32> {
        let mut chi = CharPoly::zero();
        for (k, m) in self.iter() {
            chi.add_assign(&CharPoly::sym(k).scale(m as i64));
        }
        chi
    }
}

/// `Sym^a ⊗ Sym^b = ⊕_{c = |a-b|, step 2}^{a+b} Sym^c`.
pub fn clebsch_gordan(a: u32, b: u32) -> Sl2Rep {
    let lo = a.abs_diff(b);
    Sl2Rep::from_multiplicities((lo..=a + b).step_by(2).map(|c| (c, 1)))
}

/// One summand `mult · Sym^k ⊗ det^twist`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwistedTerm {
    pub k: u32,
    pub twist: i32,
    pub mult: u64,
}

/// Decompose `(Sym^1)^{⊗n}` by iterated Clebsch–Gordan. `Sym^k` appears with
/// determinant twist `(n-k)/2`. Terms are returned in descending `k`.
pub fn tensor_power_decompose(n: u32) -> Vec<TwistedTerm> {
    let std = Sl2Rep::irreducible(1);
    let power = (0..n).fold(Sl2Rep::trivial(), |acc, _| acc.tensor(&std));
    power
        .iter()
        .rev()
        .map(|(k, mult)| TwistedTerm {
            k,
            twist: ((n - k) / 2) as i32,
            mult,
        })
        .collect()
}
