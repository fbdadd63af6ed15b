//! Apparent double points of a smooth variety, its linear sections, and its
//! 2-Veronese re-embedding.
//!
//! The double-point count of `v_2(Y)` is computed twice: once straight from
//! the Segre numbers of `Y`, once as `sum_i binom(2k + 1, k - i) b_i` from the
//! apparent-double-point vector. The two paths share nothing beyond the input
//! [`VarietyNumerics`].

use num_integer::Integer as _;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{choose, vandermonde_check};
use crate::chow::{quadric_numerics, VarietyNumerics};
use crate::{Integer, Natural};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DoublePointError {
    #[error("section codimension {q} exceeds dimension {k}")]
    SectionOutOfRange { q: usize, k: usize },
    #[error("double-point numerator {0} is odd; the Segre data is inconsistent")]
    OddNumerator(Integer),
    #[error("sectional genus {genus} disagrees with b_1 = {b1} (expected binom(delta - 1, 2) - g)")]
    GenusMismatch { genus: Integer, b1: Integer },
}

/// Apparent-double-point vector `(b_0, ..., b_k)`: `b_i` counts the double points
/// of a generic projection to `P^(2i)` of a generic `i`-dimensional linear section.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BVector(Vec<Integer>);

impl BVector {
    pub fn new(values: Vec<Integer>) -> Self {
        assert!(!values.is_empty(), "a b-vector has at least b_0");
        Self(values)
    }

    pub fn from_i64(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&v| Integer::from(v)).collect())
    }

    /// Dimension of the variety the vector belongs to.
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn values(&self) -> &[Integer] {
        &self.0
    }

    pub fn get(&self, i: usize) -> &Integer {
        &self.0[i]
    }
}

fn binom_int(n: usize, k: usize) -> Integer {
    Integer::from(choose(n as u64, k as u64))
}

fn halve(numerator: Integer) -> Result<Integer, DoublePointError> {
    if numerator.is_odd() {
        return Err(DoublePointError::OddNumerator(numerator));
    }
    Ok(numerator >> 1)
}

/// Segre numbers of the generic linear section of codimension `q`:
/// `H^(k-q-i) s_i(Y_(k-q)) = sum_j binom(q, j) H^(k-i+j) s_(i-j)(Y)`.
pub fn section_segre_numbers(v: &VarietyNumerics, q: usize) -> Result<Vec<Integer>, DoublePointError> {
    let k = v.dim();
    if q > k {
        return Err(DoublePointError::SectionOutOfRange { q, k });
    }
    let s = v.segre_numbers();
    Ok((0..=k - q)
        .map(|i| (0..=i.min(q)).map(|j| binom_int(q, j) * &s[i - j]).sum())
        .collect())
}

/// `b_k = (delta^2 - sum_i binom(2k + 1, k - i) H^(k-i) s_i) / 2`, applied to
/// every section `Y_(k-q)` in turn.
pub fn b_vector(v: &VarietyNumerics) -> Result<BVector, DoublePointError> {
    let k = v.dim();
    let delta_sq = v.degree() * v.degree();
    let mut b = vec![Integer::zero(); k + 1];
    for q in 0..=k {
        let kk = k - q;
        let s = section_segre_numbers(v, q)?;
        let weighted: Integer = s
            .iter()
            .enumerate()
            .map(|(i, si)| binom_int(2 * kk + 1, kk - i) * si)
            .sum();
        b[kk] = halve(&delta_sq - weighted)?;
    }
    if let (Some(g), true) = (v.sectional_genus(), k >= 1) {
        let d = v.degree();
        let expect = (((d - 1) * (d - 2)) >> 1) - g;
        if b[1] != expect {
            return Err(DoublePointError::GenusMismatch { genus: g.clone(), b1: b[1].clone() });
        }
    }
    Ok(BVector(b))
}

/// `Delta[v_2(Y)] = (2^(2k) delta^2 - sum_i binom(2k + 1, k - i) 2^(k-i) H^(k-i) s_i) / 2`.
pub fn veronese_double_points_direct(v: &VarietyNumerics) -> Result<Integer, DoublePointError> {
    let k = v.dim();
    let lead = (v.degree() * v.degree()) << (2 * k);
    let weighted: Integer = v
        .segre_numbers()
        .iter()
        .enumerate()
        .map(|(i, si)| (binom_int(2 * k + 1, k - i) * si) << (k - i))
        .sum();
    halve(lead - weighted)
}

/// `Delta[v_2(Y)] = sum_i binom(2k + 1, k - i) b_i`.
pub fn veronese_double_points_via_b(v: &VarietyNumerics) -> Result<Integer, DoublePointError> {
    let b = b_vector(v)?;
    Ok(weighted_b_sum(&b))
}

pub fn weighted_b_sum(b: &BVector) -> Integer {
    let k = b.dim();
    b.values()
        .iter()
        .enumerate()
        .map(|(i, bi)| binom_int(2 * k + 1, k - i) * bi)
        .sum()
}

/// `binom(2k+1, k-i) binom(k-i, q) == binom(2k+1, q) binom(2k-q+1, k-q-i)`,
/// with binomials vanishing for negative lower index.
pub fn coefficient_identity_check(k: u64, i: u64, q: u64) -> bool {
    let lhs = choose(2 * k + 1, k.saturating_sub(i)) * choose(k - i.min(k), q);
    let lower = k as i64 - q as i64 - i as i64;
    let rhs = if lower < 0 || q > 2 * k + 1 {
        Natural::zero()
    } else {
        choose(2 * k + 1, q) * choose(2 * k + 1 - q, lower as u64)
    };
    lhs == rhs
}

/// `sum_{i=0..k} binom(2k + 1, k - i) == 2^(2k)`.
pub fn weight_sum_check(k: u64) -> bool {
    let sum: Natural = (0..=k).map(|i| choose(2 * k + 1, k - i)).sum();
    sum == Natural::one() << (2 * k)
}

/// Outcome of one family of exhaustive checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityTally {
    pub name: &'static str,
    pub checked: u64,
    pub failures: Vec<String>,
}

impl IdentityTally {
    fn new(name: &'static str) -> Self {
        Self { name, checked: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(case());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs every binomial identity behind the Veronese double-point formula, plus
/// the quadric count `binom(2k + 1, k)` through both computation paths.
pub fn identity_suite(k_max: u64) -> Vec<IdentityTally> {
    let mut vandermonde = IdentityTally::new("vandermonde");
    for m in 0..=k_max {
        for a in 0..=k_max {
            for b in 0..=k_max {
                vandermonde.record(vandermonde_check(m, a, b), || format!("m={m} a={a} b={b}"));
            }
        }
    }

    let mut coefficient = IdentityTally::new("coefficient");
    for k in 1..=k_max {
        for i in 0..=k {
            for q in 1..=k {
                coefficient.record(coefficient_identity_check(k, i, q), || format!("k={k} i={i} q={q}"));
            }
        }
    }

    let mut weights = IdentityTally::new("weight-sum");
    for k in 0..=k_max {
        weights.record(weight_sum_check(k), || format!("k={k}"));
    }

    let mut quadrics = IdentityTally::new("quadric-veronese");
    for k in 0..=k_max as usize {
        let v = quadric_numerics(k);
        let expect = binom_int(2 * k + 1, k);
        let direct = veronese_double_points_direct(&v);
        let via_b = veronese_double_points_via_b(&v);
        let ok = direct.as_ref() == Ok(&expect) && via_b.as_ref() == Ok(&expect);
        quadrics.record(ok, || format!("k={k}: direct={direct:?} via_b={via_b:?}"));
    }

    vec![vandermonde, coefficient, weights, quadrics]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::complete_intersection_numerics;

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    #[test]
    fn section_numbers_of_quadric_surface() {
        let v = quadric_numerics(2);
        assert_eq!(section_segre_numbers(&v, 0).unwrap(), v.segre_numbers());
        assert_eq!(section_segre_numbers(&v, 1).unwrap(), ints(&[2, -2]));
        assert_eq!(section_segre_numbers(&v, 1).unwrap(), quadric_numerics(1).segre_numbers());
        assert_eq!(section_segre_numbers(&v, 2).unwrap(), ints(&[2]));
        assert_eq!(
            section_segre_numbers(&v, 3),
            Err(DoublePointError::SectionOutOfRange { q: 3, k: 2 })
        );
    }

    #[test]
    fn b_vectors() {
        for k in 0..=6 {
            let mut expect = vec![0; k + 1];
            expect[0] = 1;
            assert_eq!(b_vector(&quadric_numerics(k)).unwrap(), BVector::from_i64(&expect));
        }
        let elliptic_quartic = complete_intersection_numerics(3, &[2, 2]).unwrap();
        assert_eq!(b_vector(&elliptic_quartic).unwrap(), BVector::from_i64(&[6, 2]));
        let line = complete_intersection_numerics(2, &[1]).unwrap();
        assert_eq!(b_vector(&line).unwrap(), BVector::from_i64(&[0, 0]));
    }

    #[test]
    fn direct_count_for_quadric_surface_by_hand() {
        // (16*4 - [10*4*2 + 5*2*(-4) + 1*1*4]) / 2 = (64 - 44) / 2
        assert_eq!(veronese_double_points_direct(&quadric_numerics(2)).unwrap(), Integer::from(10));
    }

    #[test]
    fn quadric_counts_are_central_binomials() {
        for k in 0..=12usize {
            let v = quadric_numerics(k);
            let expect = binom_int(2 * k + 1, k);
            assert_eq!(veronese_double_points_direct(&v).unwrap(), expect);
            assert_eq!(veronese_double_points_via_b(&v).unwrap(), expect);
        }
        assert_eq!(veronese_double_points_via_b(&quadric_numerics(3)).unwrap(), Integer::from(35));
    }

    #[test]
    fn points_keep_their_pair_count() {
        for delta in 1..=9i64 {
            let v = VarietyNumerics::new(0, Integer::from(delta), ints(&[delta]), None).unwrap();
            let pairs = Integer::from(delta * (delta - 1) / 2);
            assert_eq!(veronese_double_points_direct(&v).unwrap(), pairs);
            assert_eq!(veronese_double_points_via_b(&v).unwrap(), pairs);
        }
    }

    #[test]
    fn elliptic_quartic_via_b() {
        let v = complete_intersection_numerics(3, &[2, 2]).unwrap();
        assert_eq!(veronese_double_points_via_b(&v).unwrap(), Integer::from(20));
        assert_eq!(veronese_double_points_direct(&v).unwrap(), Integer::from(20));
    }

    #[test]
    fn odd_numerators_are_rejected() {
        // degree 2 with an odd first Segre number cannot come from a smooth curve
        let bad = VarietyNumerics::new(1, Integer::from(2), ints(&[2, -1]), None).unwrap();
        assert!(matches!(b_vector(&bad), Err(DoublePointError::OddNumerator(_))));
        assert!(matches!(veronese_double_points_direct(&bad), Err(DoublePointError::OddNumerator(_))));
    }

    #[test]
    fn genus_mismatch_is_detected() {
        let bad = VarietyNumerics::new(1, Integer::from(4), ints(&[4, 0]), Some(Integer::from(0))).unwrap();
        assert!(matches!(b_vector(&bad), Err(DoublePointError::GenusMismatch { .. })));
    }

    #[test]
    fn coefficient_identity() {
        // 10 * 2 = 5 * 4
        assert_eq!(choose(5, 2) * choose(2, 1), choose(5, 1) * choose(4, 1));
        assert!(coefficient_identity_check(2, 0, 1));
        for k in 1..=30 {
            assert!(coefficient_identity_check(k, k, 1));
            for i in 0..=k {
                for q in 1..=k {
                    assert!(coefficient_identity_check(k, i, q), "k={k} i={i} q={q}");
                }
            }
        }
    }

    #[test]
    fn weight_sums() {
        for k in 0..=30 {
            assert!(weight_sum_check(k));
        }
    }

    #[test]
    fn suite_passes() {
        for tally in identity_suite(12) {
            assert!(tally.passed(), "{}: {:?}", tally.name, tally.failures);
            assert!(tally.checked > 0);
        }
    }
}
