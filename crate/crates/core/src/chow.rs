//! Truncated class polynomials in the hyperplane class `h`, and the numeric
//! data (degree, Segre numbers, sectional genus) of smooth complete intersections.
//!
//! Segre classes follow the convention `s(Y) = c(T_Y)^{-1}`. For a complete
//! intersection of multidegree `(e_1, ..., e_s)` in `P^m` this gives
//! `s(Y) = prod(1 + e_j h) / (1 + h)^(m + 1)`.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::{ClassPolynomial, Integer, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("constant term must be 1 to invert a class polynomial")]
    NonUnitConstant,
    #[error("{count} hypersurfaces cannot cut a variety out of P^{ambient}")]
    TooManyHypersurfaces { count: usize, ambient: usize },
    #[error("hypersurface degrees must be positive")]
    NonPositiveDegree,
    #[error("degree must be positive")]
    NonPositiveVarietyDegree,
    #[error("expected {expected} Segre numbers, got {got}")]
    SegreLength { expected: usize, got: usize },
    #[error("first Segre number must equal the degree")]
    SegreDegreeMismatch,
}

/// Polynomial in `h` with coefficients of `h^0 ..= h^order`; products drop
/// every term of degree above `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedClassPolynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> TruncatedClassPolynomial<T> {
    /// Pads with zeros or truncates so that exactly `order + 1` coefficients remain.
    pub fn new(mut coeffs: Vec<T>, order: usize) -> Self {
        coeffs.resize(order + 1, T::zero());
        Self { coeffs }
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![T::one()], order)
    }

    /// `1 + a h`.
    pub fn one_plus(a: T, order: usize) -> Self {
        Self::new(vec![T::one(), a], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &T {
        &self.coeffs[i]
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn truncated_product(&self, other: &Self) -> Result<Self, ClassError> {
        if self.order() != other.order() {
            return Err(ClassError::OrderMismatch(self.order(), other.order()));
        }
        let k = self.order();
        let mut out = vec![T::zero(); k + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=k - i].iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Ok(Self { coeffs: out })
    }

    /// Inverse of a polynomial with constant term 1, by the recurrence
    /// `q_n = -sum_{j=1..n} p_j q_{n-j}`.
    pub fn truncated_inverse(&self) -> Result<Self, ClassError> {
        if !self.coeffs[0].is_one() {
            return Err(ClassError::NonUnitConstant);
        }
        let k = self.order();
        let mut q: Vec<T> = Vec::with_capacity(k + 1);
        q.push(T::one());
        for n in 1..=k {
            let mut acc = T::zero();
            for j in 1..=n {
                acc = acc + self.coeffs[j].clone() * q[n - j].clone();
            }
            q.push(-acc);
        }
        Ok(Self { coeffs: q })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.truncated_product(&base).expect("same order");
            }
            base = base.truncated_product(&base).expect("same order");
            e >>= 1;
        }
        acc
    }
}

/// Numeric avatar of a smooth projective variety `Y` of dimension `k`.
///
/// `segre_numbers[i]` is the degree `H^(k-i) . s_i(Y)`, so entry 0 is the degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietyNumerics {
    dim: usize,
    degree: Integer,
    segre_numbers: Vec<Integer>,
    sectional_genus: Option<Integer>,
}

impl VarietyNumerics {
    pub fn new(
        dim: usize,
        degree: Integer,
        segre_numbers: Vec<Integer>,
        sectional_genus: Option<Integer>,
    ) -> Result<Self, ClassError> {
        if degree <= Integer::zero() {
            return Err(ClassError::NonPositiveVarietyDegree);
        }
        if segre_numbers.len() != dim + 1 {
            return Err(ClassError::SegreLength { expected: dim + 1, got: segre_numbers.len() });
        }
        if segre_numbers[0] != degree {
            return Err(ClassError::SegreDegreeMismatch);
        }
        Ok(Self { dim, degree, segre_numbers, sectional_genus })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> &Integer {
        &self.degree
    }

    pub fn segre_numbers(&self) -> &[Integer] {
        &self.segre_numbers
    }

    pub fn sectional_genus(&self) -> Option<&Integer> {
        self.sectional_genus.as_ref()
    }
}

/// Total Segre class of the complete intersection of the given degrees in `P^m`.
pub fn complete_intersection_segre_class(
    ambient_dim: usize,
    degrees: &[u64],
) -> Result<ClassPolynomial, ClassError> {
    if degrees.len() > ambient_dim {
        return Err(ClassError::TooManyHypersurfaces { count: degrees.len(), ambient: ambient_dim });
    }
    if degrees.contains(&0) {
        return Err(ClassError::NonPositiveDegree);
    }
    let k = ambient_dim - degrees.len();
    let normal = degrees
        .iter()
        .map(|&e| ClassPolynomial::one_plus(Integer::from(e), k))
        .try_fold(ClassPolynomial::one(k), |acc, f| acc.truncated_product(&f))?;
    let ambient = ClassPolynomial::one_plus(Integer::one(), k).pow(ambient_dim as u32 + 1);
    normal.truncated_product(&ambient.truncated_inverse()?)
}

/// Degree, Segre numbers and sectional genus of a smooth complete intersection.
///
/// The genus is that of the curve section, a complete intersection of the same
/// degrees in `P^(s+1)`: `2g - 2 = delta (sum e_j - s - 2)`.
pub fn complete_intersection_numerics(
    ambient_dim: usize,
    degrees: &[u64],
) -> Result<VarietyNumerics, ClassError> {
    let segre = complete_intersection_segre_class(ambient_dim, degrees)?;
    let k = segre.order();
    let delta: Integer = degrees.iter().map(|&e| Integer::from(e)).product();
    let numbers = segre.into_coeffs().into_iter().map(|s| s * &delta).collect();
    let genus = (k >= 1).then(|| {
        let s = degrees.len() as i64;
        let sum: Integer = degrees.iter().map(|&e| Integer::from(e)).sum();
        Integer::one() + (&delta * (sum - s - 2)) / 2
    });
    VarietyNumerics::new(k, delta, numbers, genus)
}

/// Smooth quadric of dimension `k`, i.e. a quadric hypersurface in `P^(k+1)`.
pub fn quadric_numerics(k: usize) -> VarietyNumerics {
    complete_intersection_numerics(k + 1, &[2]).expect("a quadric hypersurface is always valid")
}
