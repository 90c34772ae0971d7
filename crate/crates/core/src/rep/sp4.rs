//! Irreducible representations of Sp(4) labelled by dominant weights
//! `(a, b)` with `a >= b >= 0` in the basis `e1, e2` of the maximal torus.
//! The standard representation is `(1, 0)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::charpoly::{CharPoly, Weight2};
use super::Character;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sp4Weight {
    pub a: u32,
    pub b: u32,
}

impl Sp4Weight {
    pub const TRIVIAL: Sp4Weight = Sp4Weight { a: 0, b: 0 };
    pub const STD: Sp4Weight = Sp4Weight { a: 1, b: 0 };
    /// The 5-dimensional summand of `Λ²(std)`.
    pub const WEDGE2: Sp4Weight = Sp4Weight { a: 1, b: 1 };

    pub fn new(a: u32, b: u32) -> Result<Self> {
        if a < b {
            return Err(Error::InvalidSpec(format!("({a},{b}) is not dominant")));
        }
        Ok(Sp4Weight { a, b })
    }

    /// Weyl dimension formula. With `l = λ + ρ = (a+2, b+1)`:
    /// `dim = (l1² − l2²)·l1·l2 / 6`.
    pub fn dim(self) -> u64 {
        let l1 = self.a as u64 + 2;
        let l2 = self.b as u64 + 1;
        (l1 * l1 - l2 * l2) * l1 * l2 / 6
    }

    /// Degree in which this weight first occurs in the tensor algebra of `std`.
    pub fn degree(self) -> u32 {
        self.a + self.b
    }

    pub fn is_trivial(self) -> bool {
        self == Self::TRIVIAL
    }

    /// Irreducible character via the Weyl character formula, as an exact
    /// quotient of alternants `A(λ+ρ) / A(ρ)`.
    pub fn character(self) -> CharPoly<Weight2> {
        let rho = Weight2(2, 1);
        let lr = Weight2(self.a as i32 + 2, self.b as i32 + 1);
        alternant(lr)
            .exact_div(&alternant(rho))
            .expect("Weyl denominator divides every alternant")
    }
}

impl fmt::Display for Sp4Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// `Σ_w sgn(w) z^{w μ}` over the eight signed permutations.
fn alternant(mu: Weight2) -> CharPoly<Weight2> {
    let Weight2(x, y) = mu;
    let mut out = CharPoly::zero();
    for (s1, s2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        let flips = (s1 < 0) as i64 + (s2 < 0) as i64;
        let sign = if flips % 2 == 0 { 1 } else { -1 };
        out.add_term(Weight2(s1 * x, s2 * y), sign);
        // the coordinate swap contributes an extra sign
        out.add_term(Weight2(s1 * y, s2 * x), -sign);
    }
    out
}

fn is_dominant(w: Weight2) -> bool {
    w.0 >= w.1 && w.1 >= 0
}

/// Direct sum of Sp(4) irreducibles with positive multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Sp4Rep {
    mults: BTreeMap<Sp4Weight, u64>,
}

impl Sp4Rep {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn irreducible(w: Sp4Weight) -> Self {
        Self::from_multiplicities([(w, 1)])
    }

    pub fn trivial() -> Self {
        Self::irreducible(Sp4Weight::TRIVIAL)
    }

    pub fn from_multiplicities(terms: impl IntoIterator<Item = (Sp4Weight, u64)>) -> Self {
        let mut out = Self::empty();
        for (w, m) in terms {
            out.insert(w, m);
        }
        out
    }

    fn insert(&mut self, w: Sp4Weight, m: u64) {
        if m > 0 {
            *self.mults.entry(w).or_insert(0) += m;
        }
    }

    pub fn multiplicity(&self, w: Sp4Weight) -> u64 {
        self.mults.get(&w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Sp4Weight, u64)> + '_ {
        self.mults.iter().map(|(w, m)| (*w, *m))
    }

    pub fn is_empty(&self) -> bool {
        self.mults.is_empty()
    }

    pub fn dim(&self) -> u64 {
        self.iter().map(|(w, m)| m * w.dim()).sum()
    }

    pub fn invariant_dim(&self) -> u64 {
        self.multiplicity(Sp4Weight::TRIVIAL)
    }

    pub fn direct_sum(&self, other: &Sp4Rep) -> Sp4Rep {
        let mut out = self.clone();
        for (w, m) in other.iter() {
            out.insert(w, m);
        }
        out
    }

    /// Decompose a virtual character into irreducibles by repeatedly removing
    /// the irreducible of the lexicographically highest surviving weight.
    pub fn from_character(chi: &CharPoly<Weight2>) -> Result<Sp4Rep> {
        let mut cache = HashMap::new();
        let mut rest = chi.clone();
        let mut out = Sp4Rep::empty();
        while let Some((top, c)) = rest.leading() {
            if !is_dominant(top) || c < 0 {
                return Err(Error::Inconsistent(format!(
                    "weight ({},{}) survives with coefficient {c}",
                    top.0, top.1
                )));
            }
            let w = Sp4Weight {
                a: top.0 as u32,
                b: top.1 as u32,
            };
            let irr = cache.entry(w).or_insert_with(|| w.character());
            rest = rest.sub(&irr.scale(c));
            out.insert(w, c as u64);
        }
        Ok(out)
    }
}

impl Character for Sp4Rep {
    type Weight = Weight2;

    fn character(&self) -> CharPoly<Weight2> {
        let mut chi = CharPoly::zero();
        for (w, m) in self.iter() {
            chi.add_assign(&w.character().scale(m as i64));
        }
        chi
    }
}

/// Tensor product of two Sp(4) representations, decomposed into irreducibles.
pub fn sp4_decompose_product(x: &Sp4Rep, y: &Sp4Rep) -> Result<Sp4Rep> {
    Sp4Rep::from_character(&x.character().mul(&y.character()))
}
