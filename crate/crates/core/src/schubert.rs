//! Schubert cycles on the Grassmannian `G(1, r)` of lines in `P^r`.
//!
//! `Omega(p, q)` is the class of lines inside a fixed `q`-plane meeting a fixed
//! `p`-plane within it; it has dimension `p + q - 1`. Only the intersection
//! pairing of complementary classes is implemented: `Omega(p, q)` pairs to 1
//! with `Omega(r - q, r - p)` and to 0 with every other basis class.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::double_points::BVector;
use crate::{Cycle, Integer, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchubertError {
    #[error("Omega({p}, {q}) is not a cell of G(1, {r}): need 0 <= p < q <= r")]
    InvalidCell { p: usize, q: usize, r: usize },
    #[error("Omega({p}, {q}) has dimension {got}, cycle has dimension {expected}")]
    MixedDimension { p: usize, q: usize, got: usize, expected: usize },
    #[error("cycles live on different Grassmannians G(1, {0}) and G(1, {1})")]
    AmbientMismatch(usize, usize),
    #[error("dimensions {0} + {1} are not complementary in G(1, {2})")]
    NotComplementary(usize, usize, usize),
    #[error("a variety of dimension {h} has no secant class in G(1, {r})")]
    SecantDimension { h: usize, r: usize },
    #[error("common secant count needs h + k = r - 1, got h={h}, k={k}, r={r}")]
    DimensionSum { h: usize, k: usize, r: usize },
}

/// Integer (or other [`Scalar`]) combination of the classes `Omega(p, q)` of a
/// single dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct SchubertCycle<T> {
    r: usize,
    dim: usize,
    terms: BTreeMap<(usize, usize), T>,
}

impl<T: Scalar> SchubertCycle<T> {
    /// The zero cycle of dimension `dim` on `G(1, r)`.
    pub fn zero(r: usize, dim: usize) -> Self {
        Self { r, dim, terms: BTreeMap::new() }
    }

    /// Builds a cycle from `(p, q, coefficient)` triples; all cells must share one dimension.
    pub fn from_terms(
        r: usize,
        terms: impl IntoIterator<Item = (usize, usize, T)>,
    ) -> Result<Self, SchubertError> {
        let mut it = terms.into_iter().peekable();
        let dim = match it.peek() {
            Some(&(p, q, _)) => (p + q).saturating_sub(1),
            None => 0,
        };
        let mut cycle = Self::zero(r, dim);
        for (p, q, c) in it {
            cycle.add_term(p, q, c)?;
        }
        Ok(cycle)
    }

    pub fn add_term(&mut self, p: usize, q: usize, coeff: T) -> Result<(), SchubertError> {
        if p >= q || q > self.r {
            return Err(SchubertError::InvalidCell { p, q, r: self.r });
        }
        if p + q - 1 != self.dim {
            return Err(SchubertError::MixedDimension { p, q, got: p + q - 1, expected: self.dim });
        }
        let entry = self.terms.entry((p, q)).or_insert_with(T::zero);
        *entry = entry.clone() + coeff;
        if entry.is_zero() {
            self.terms.remove(&(p, q));
        }
        Ok(())
    }

    pub fn ambient(&self) -> usize {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coefficient(&self, p: usize, q: usize) -> T {
        self.terms.get(&(p, q)).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.terms.iter().map(|(&(p, q), c)| (p, q, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Pointwise sum; both cycles must live in the same group.
    pub fn add(&self, other: &Self) -> Result<Self, SchubertError> {
        if self.r != other.r {
            return Err(SchubertError::AmbientMismatch(self.r, other.r));
        }
        let mut out = self.clone();
        for (p, q, c) in other.terms() {
            out.add_term(p, q, c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &T) -> Self {
        let mut out = Self::zero(self.r, self.dim);
        for (p, q, c) in self.terms() {
            out.add_term(p, q, c.clone() * factor.clone()).expect("same cell");
        }
        out
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for SchubertCycle<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(p, q, c)| format!("{c}*Omega({p},{q})")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Degree of the product of two complementary cycles.
pub fn pairing<T: Scalar>(a: &SchubertCycle<T>, b: &SchubertCycle<T>) -> Result<T, SchubertError> {
    if a.r != b.r {
        return Err(SchubertError::AmbientMismatch(a.r, b.r));
    }
    let r = a.r;
    if a.dim + b.dim != 2 * r - 2 {
        return Err(SchubertError::NotComplementary(a.dim, b.dim, r));
    }
    let mut total = T::zero();
    for (p, q, c) in a.terms() {
        if let Some(d) = b.terms.get(&(r - q, r - p)) {
            total = total + c.clone() * d.clone();
        }
    }
    Ok(total)
}

/// Class of the secant lines of an `h`-dimensional variety with
/// apparent-double-point vector `a`: the coefficient of `Omega(i, 2h + 1 - i)`
/// is `a_(h-i)`. Cells with `2h + 1 - i > r` do not exist and are dropped.
pub fn secant_cycle(a: &BVector, r: usize) -> Result<Cycle, SchubertError> {
    let h = a.dim();
    if h + 1 > r {
        return Err(SchubertError::SecantDimension { h, r });
    }
    let mut cycle = Cycle::zero(r, 2 * h);
    for i in 0..=h {
        let q = 2 * h + 1 - i;
        if q <= r {
            cycle.add_term(i, q, a.get(h - i).clone())?;
        }
    }
    Ok(cycle)
}

/// Number of lines secant to both an `h`-fold and a `k`-fold in general
/// position in `P^r` with `h + k = r - 1`: `sum_i a_i b_i`.
pub fn common_secant_count(a: &BVector, b: &BVector, r: usize) -> Result<Integer, SchubertError> {
    let (h, k) = (a.dim(), b.dim());
    if h + k + 1 != r {
        return Err(SchubertError::DimensionSum { h, k, r });
    }
    Ok(a.values().iter().zip(b.values()).map(|(x, y)| x * y).sum())
}
