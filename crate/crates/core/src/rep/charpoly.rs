//! Exact integer Laurent polynomials used as torus characters.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// A torus weight. The ordering must be a monomial order (compatible with
/// addition); the derived lexicographic orders below satisfy this.
pub trait Weight:
    Copy + Ord + Add<Output = Self> + Sub<Output = Self> + Neg<Output = Self>
{
    fn zero() -> Self;
}

impl Weight for i32 {
    fn zero() -> Self {
        0
    }
}

/// Weight of the rank-two torus `diag(z1, z2, 1/z1, 1/z2)` of Sp(4).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight2(pub i32, pub i32);

impl Add for Weight2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Weight2(self.0 + o.0, self.1 + o.1)
    }
}

impl Sub for Weight2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Weight2(self.0 - o.0, self.1 - o.1)
    }
}

impl Neg for Weight2 {
    type Output = Self;
    fn neg(self) -> Self {
        Weight2(-self.0, -self.1)
    }
}

impl Weight for Weight2 {
    fn zero() -> Self {
        Weight2(0, 0)
    }
}

/// Sparse Laurent polynomial with integer coefficients. Absent keys are zero.
#[derive(Clone, PartialEq, Eq)]
pub struct CharPoly<W: Weight> {
    coeffs: BTreeMap<W, i64>,
}

impl<W: Weight> Default for CharPoly<W> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<W: Weight + fmt::Debug> fmt::Debug for CharPoly<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.coeffs.iter()).finish()
    }
}

impl<W: Weight> CharPoly<W> {
    pub fn zero() -> Self {
        CharPoly {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(W::zero(), 1)
    }

    pub fn monomial(w: W, c: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (W, i64)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: W, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.coeffs.entry(w).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&w);
        }
    }

    pub fn coeff(&self, w: W) -> i64 {
        self.coeffs.get(&w).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (W, i64)> + '_ {
        self.coeffs.iter().map(|(w, c)| (*w, *c))
    }

    /// Number of monomials with nonzero coefficient.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest weight in the monomial order, with its coefficient.
    pub fn leading(&self) -> Option<(W, i64)> {
        self.coeffs.iter().next_back().map(|(w, c)| (*w, *c))
    }

    pub fn trailing(&self) -> Option<(W, i64)> {
        self.coeffs.iter().next().map(|(w, c)| (*w, *c))
    }

    /// Value at the identity, i.e. the dimension of the represented module.
    pub fn dimension(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().all(|(w, c)| self.coeff(-*w) == *c)
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        CharPoly {
            coeffs: self.coeffs.iter().map(|(w, c)| (*w, c * k)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (w, c) in other.terms() {
            self.add_term(w, c);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w, -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (wa, ca) in self.terms() {
            for (wb, cb) in other.terms() {
                out.add_term(wa + wb, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Exact division by `d`; `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (d_lead, d_c) = d.leading()?;
        let Some((self_min, _)) = self.trailing() else {
            return Some(Self::zero());
        };
        let (d_min, _) = d.trailing()?;
        // every quotient term lies at or above this weight
        let floor = self_min - d_min;
        let mut rem = self.clone();
        let mut q = Self::zero();
        while let Some((r_lead, r_c)) = rem.leading() {
            let shift = r_lead - d_lead;
            if shift < floor || r_c % d_c != 0 {
                return None;
            }
            let c = r_c / d_c;
            q.add_term(shift, c);
            for (w, dc) in d.terms() {
                rem.add_term(w + shift, -c * dc);
            }
        }
        Some(q)
    }
}

impl CharPoly<i32> {
    /// Character of `Sym^k` of the standard representation of SU(2):
    /// `z^k + z^(k-2) + ... + z^(-k)`.
    pub fn sym(k: u32) -> Self {
        let k = k as i32;
        Self::from_terms((0..=k).map(|j| (k - 2 * j, 1)))
    }

    /// Evaluate at `z = e^{i theta}`; real because the polynomial is palindromic.
    pub fn eval_angle(&self, theta: f64) -> f64 {
        self.terms()
            .map(|(w, c)| c as f64 * (w as f64 * theta).cos())
            .sum()
    }
}

impl CharPoly<Weight2> {
    pub fn eval_angles(&self, t1: f64, t2: f64) -> f64 {
        self.terms()
            .map(|(Weight2(x, y), c)| c as f64 * (x as f64 * t1 + y as f64 * t2).cos())
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sym_characters() {
        assert_eq!(CharPoly::sym(0), CharPoly::one());
        let s2 = CharPoly::sym(2);
        assert_eq!(s2.coeff(2), 1);
        assert_eq!(s2.coeff(0), 1);
        assert_eq!(s2.coeff(-2), 1);
        assert_eq!(s2.len(), 3);
        assert!(s2.is_palindromic());
    }

    #[test]
    fn division_round_trip() {
        let a = CharPoly::sym(3);
        let b = CharPoly::sym(2);
        let prod = a.mul(&b);
        assert_eq!(prod.exact_div(&b), Some(a.clone()));
        assert_eq!(prod.exact_div(&a), Some(b));
        // z^2 + 1 does not divide z^2 + z + 1
        let num = CharPoly::from_terms([(2, 1), (1, 1), (0, 1)]);
        let den = CharPoly::from_terms([(2, 1), (0, 1)]);
        assert_eq!(num.exact_div(&den), None);
    }

    #[test]
    fn two_variable_division() {
        let d = CharPoly::from_terms([(Weight2(1, 0), 1), (Weight2(0, -1), -1)]);
        let q =
            CharPoly::from_terms([(Weight2(2, 1), 3), (Weight2(-1, 0), 1), (Weight2(0, 0), -2)]);
        assert_eq!(q.mul(&d).exact_div(&d), Some(q));
    }

    #[test]
    fn zero_is_absent() {
        let mut p = CharPoly::monomial(3, 2);
        p.add_term(3, -2);
        assert!(p.is_zero());
        assert_eq!(p, CharPoly::zero());
    }
}
