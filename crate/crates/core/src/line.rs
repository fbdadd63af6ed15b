//! Restriction of a linear system of quadrics to a line.
//!
//! Pulling every quadric back along `x P + y Q` gives binary quadrics
//! `lambda x^2 + mu x y + nu y^2`. Their span, of dimension `sigma`, and the
//! common factor `G` of the span decide how the quadric map behaves on the line:
//!
//! | sigma | deg G | case |
//! |-------|-------|------|
//! | 0 | - | line contained in the base scheme (i) |
//! | 1 | 2 | line contracted to a point (ii) |
//! | 2 | 1 | line meets the base scheme once (iii) |
//! | 3 | 0 | Veronese embedding of the line (iv) |
//! | 2 | 0 | double cover of the image (v) |
//!
//! With `sigma = 1` the single form either has two distinct roots or a double
//! root; the second sub-case (a tangent line) is reported separately.

mod document;
mod sample;

use std::fmt;

use thiserror::Error;

pub use document::{forms_document_json, parse_forms_document, parse_point, FormsDocument};
pub use sample::{
    complete_system, fibre_secant_system, remw_hyperplane, remw_system, sample_lines, LineHistogram, SampleConfig,
};

use crate::ExactField;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LineError {
    #[error("points must be distinct points of projective space")]
    CoincidentPoints,
    #[error("point has {got} coordinates, ambient space needs {expected}")]
    PointDimension { expected: usize, got: usize },
    #[error("quadratic form matrix must be square and symmetric")]
    NotSymmetric,
    #[error("forms live in different ambient spaces")]
    MixedAmbient,
    #[error("at least one trial is required")]
    NoTrials,
    #[error("coordinate height must be positive")]
    BadHeight,
    #[error("subspace basis vectors must have {expected} coordinates")]
    SubspaceDimension { expected: usize },
    #[error("subspace must have dimension at least 1 (two independent vectors)")]
    SubspaceTooSmall,
    #[error("malformed forms document: {0}")]
    Document(String),
    #[error("malformed coordinate or coefficient {0:?}")]
    BadNumber(String),
    #[error("index ({i}, {j}) outside P^{r}")]
    IndexOutOfRange { i: usize, j: usize, r: usize },
    #[error("entry ({i}, {j}) given twice")]
    DuplicateEntry { i: usize, j: usize },
}

/// `lambda x^2 + mu x y + nu y^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryQuadric<F> {
    pub x2: F,
    pub xy: F,
    pub y2: F,
}

impl<F: ExactField> BinaryQuadric<F> {
    pub fn new(x2: F, xy: F, y2: F) -> Self {
        Self { x2, xy, y2 }
    }

    pub fn from_i64(x2: i64, xy: i64, y2: i64) -> Self {
        let f = |v: i64| F::from_i64(v).expect("small integers embed in every field");
        Self::new(f(x2), f(xy), f(y2))
    }

    pub fn is_zero(&self) -> bool {
        self.x2.is_zero() && self.xy.is_zero() && self.y2.is_zero()
    }

    pub fn discriminant(&self) -> F {
        let four = F::from_u8(4).expect("4 embeds");
        self.xy.clone() * self.xy.clone() - four * self.x2.clone() * self.y2.clone()
    }

    fn as_row(&self) -> [F; 3] {
        [self.x2.clone(), self.xy.clone(), self.y2.clone()]
    }
}

/// Resultant of two binary quadrics; zero iff they share a root over the
/// algebraic closure (or one of them vanishes).
pub fn resultant<F: ExactField>(f: &BinaryQuadric<F>, g: &BinaryQuadric<F>) -> F {
    let (a0, a1, a2) = (&f.x2, &f.xy, &f.y2);
    let (b0, b1, b2) = (&g.x2, &g.xy, &g.y2);
    let m02 = a0.clone() * b2.clone() - a2.clone() * b0.clone();
    let m01 = a0.clone() * b1.clone() - a1.clone() * b0.clone();
    let m12 = a1.clone() * b2.clone() - a2.clone() * b1.clone();
    m02.clone() * m02 - m01 * m12
}

/// Symmetric matrix `M` of the quadric `x^T M x` on `P^r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm<F> {
    matrix: Vec<Vec<F>>,
}

impl<F: ExactField> QuadraticForm<F> {
    pub fn from_matrix(matrix: Vec<Vec<F>>) -> Result<Self, LineError> {
        let n = matrix.len();
        if n == 0 || matrix.iter().any(|row| row.len() != n) {
            return Err(LineError::NotSymmetric);
        }
        if (0..n).any(|i| (0..i).any(|j| matrix[i][j] != matrix[j][i])) {
            return Err(LineError::NotSymmetric);
        }
        Ok(Self { matrix })
    }

    /// Zero form on `P^r`.
    pub fn zero(r: usize) -> Self {
        Self { matrix: vec![vec![F::zero(); r + 1]; r + 1] }
    }

    /// Builds a form from monomial coefficients: `(i, j, c)` contributes `c x_i x_j`.
    pub fn from_monomials(r: usize, terms: impl IntoIterator<Item = (usize, usize, F)>) -> Result<Self, LineError> {
        let mut form = Self::zero(r);
        let two = F::from_u8(2).expect("2 embeds");
        for (i, j, c) in terms {
            if i > r || j > r {
                return Err(LineError::IndexOutOfRange { i, j, r });
            }
            if i == j {
                form.matrix[i][i] = form.matrix[i][i].clone() + c;
            } else {
                let half = c / two.clone();
                form.matrix[i][j] = form.matrix[i][j].clone() + half.clone();
                form.matrix[j][i] = form.matrix[j][i].clone() + half;
            }
        }
        Ok(form)
    }

    /// Ambient dimension `r` of `P^r`.
    pub fn ambient_dim(&self) -> usize {
        self.matrix.len() - 1
    }

    pub fn matrix(&self) -> &[Vec<F>] {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &F {
        &self.matrix[i][j]
    }

    /// `P^T M Q`.
    pub fn bilinear(&self, p: &[F], q: &[F]) -> F {
        let mut acc = F::zero();
        for (i, row) in self.matrix.iter().enumerate() {
            if p[i].is_zero() {
                continue;
            }
            let mut inner = F::zero();
            for (j, m) in row.iter().enumerate() {
                if !m.is_zero() && !q[j].is_zero() {
                    inner = inner + m.clone() * q[j].clone();
                }
            }
            acc = acc + p[i].clone() * inner;
        }
        acc
    }

    pub fn evaluate(&self, p: &[F]) -> F {
        self.bilinear(p, p)
    }
}

fn distinct_points<F: ExactField>(p: &[F], q: &[F]) -> bool {
    if p.iter().all(|x| x.is_zero()) || q.iter().all(|x| x.is_zero()) {
        return false;
    }
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i].clone() * q[j].clone() != p[j].clone() * q[i].clone() {
                return true;
            }
        }
    }
    false
}

/// Pulls every form back along `x P + y Q`: `(f(P, P), 2 f(P, Q), f(Q, Q))`.
pub fn restrict_to_line<F: ExactField>(
    forms: &[QuadraticForm<F>],
    p: &[F],
    q: &[F],
) -> Result<Vec<BinaryQuadric<F>>, LineError> {
    let n = match forms.first() {
        Some(f) => f.matrix.len(),
        None => p.len(),
    };
    if forms.iter().any(|f| f.matrix.len() != n) {
        return Err(LineError::MixedAmbient);
    }
    for pt in [p, q] {
        if pt.len() != n {
            return Err(LineError::PointDimension { expected: n, got: pt.len() });
        }
    }
    if !distinct_points(p, q) {
        return Err(LineError::CoincidentPoints);
    }
    let two = F::from_u8(2).expect("2 embeds");
    Ok(forms
        .iter()
        .map(|f| BinaryQuadric::new(f.evaluate(p), two.clone() * f.bilinear(p, q), f.evaluate(q)))
        .collect())
}

/// How the quadrics cut a line whose restriction is a single form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Contact {
    /// Two distinct base points on the line.
    TwoPoints,
    /// One base point of multiplicity two.
    Tangent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LineCase {
    ContainedInX,
    Contracted(Contact),
    MeetsAtOnePoint,
    VeroneseEmbedding,
    DoubleCover,
}

impl LineCase {
    pub const ALL: [LineCase; 6] = [
        LineCase::ContainedInX,
        LineCase::Contracted(Contact::TwoPoints),
        LineCase::Contracted(Contact::Tangent),
        LineCase::MeetsAtOnePoint,
        LineCase::VeroneseEmbedding,
        LineCase::DoubleCover,
    ];

    pub fn label(self) -> &'static str {
        match self {
            LineCase::ContainedInX => "contained",
            LineCase::Contracted(Contact::TwoPoints) => "contracted-two-points",
            LineCase::Contracted(Contact::Tangent) => "contracted-tangent",
            LineCase::MeetsAtOnePoint => "meets-at-one-point",
            LineCase::VeroneseEmbedding => "veronese-embedding",
            LineCase::DoubleCover => "double-cover",
        }
    }

    /// Roman numeral of the case in the five-case classification.
    pub fn numeral(self) -> &'static str {
        match self {
            LineCase::ContainedInX => "i",
            LineCase::Contracted(_) => "ii",
            LineCase::MeetsAtOnePoint => "iii",
            LineCase::VeroneseEmbedding => "iv",
            LineCase::DoubleCover => "v",
        }
    }

    /// The line misses the base scheme.
    pub fn is_disjoint(self) -> bool {
        matches!(self, LineCase::VeroneseEmbedding | LineCase::DoubleCover)
    }
}

impl fmt::Display for LineCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}", self.numeral(), self.label())
    }
}

/// Row-reduces the coefficient triples and returns a basis of their span.
pub fn span_basis<F: ExactField>(restricted: &[BinaryQuadric<F>]) -> Vec<BinaryQuadric<F>> {
    let mut rows: Vec<[F; 3]> = restricted.iter().filter(|b| !b.is_zero()).map(|b| b.as_row()).collect();
    let mut rank = 0;
    for col in 0..3 {
        let Some(pivot) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let lead = rows[rank][col].clone();
        for v in rows[rank].iter_mut() {
            *v = v.clone() / lead.clone();
        }
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                *v = v.clone() - factor.clone() * p.clone();
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    rows.into_iter().map(|[a, b, c]| BinaryQuadric::new(a, b, c)).collect()
}

pub fn classify<F: ExactField>(restricted: &[BinaryQuadric<F>]) -> LineCase {
    let basis = span_basis(restricted);
    match basis.len() {
        0 => LineCase::ContainedInX,
        1 => {
            if basis[0].discriminant().is_zero() {
                LineCase::Contracted(Contact::Tangent)
            } else {
                LineCase::Contracted(Contact::TwoPoints)
            }
        }
        2 => {
            if resultant(&basis[0], &basis[1]).is_zero() {
                LineCase::MeetsAtOnePoint
            } else {
                LineCase::DoubleCover
            }
        }
        _ => LineCase::VeroneseEmbedding,
    }
}

/// Classifies the line through `p` and `q`.
pub fn classify_line<F: ExactField>(forms: &[QuadraticForm<F>], p: &[F], q: &[F]) -> Result<LineCase, LineError> {
    Ok(classify(&restrict_to_line(forms, p, q)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Integer, Rational, RationalBinaryQuadric as BQ, RationalForm};

    fn q(v: i64) -> Rational {
        Rational::from_integer(Integer::from(v))
    }

    fn pt(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn restriction_examples() {
        let x0x1 = RationalForm::from_monomials(2, [(0, 1, q(1))]).unwrap();
        let x0sq = RationalForm::from_monomials(2, [(0, 0, q(1))]).unwrap();
        let zero = RationalForm::zero(2);
        let (p, qq) = (pt(&[1, 0, 0]), pt(&[0, 1, 0]));
        let out = restrict_to_line(&[x0x1, x0sq, zero], &p, &qq).unwrap();
        assert_eq!(out, vec![BQ::from_i64(0, 1, 0), BQ::from_i64(1, 0, 0), BQ::from_i64(0, 0, 0)]);
    }

    #[test]
    fn restriction_errors() {
        let f = RationalForm::zero(2);
        let p = pt(&[1, 2, 3]);
        assert_eq!(restrict_to_line(std::slice::from_ref(&f), &p, &pt(&[2, 4, 6])), Err(LineError::CoincidentPoints));
        assert_eq!(restrict_to_line(std::slice::from_ref(&f), &p, &pt(&[0, 0, 0])), Err(LineError::CoincidentPoints));
        assert_eq!(
            restrict_to_line(std::slice::from_ref(&f), &p, &pt(&[1, 0])),
            Err(LineError::PointDimension { expected: 3, got: 2 })
        );
        assert_eq!(restrict_to_line(&[f, RationalForm::zero(3)], &p, &p), Err(LineError::MixedAmbient));
        let asym = vec![vec![q(0), q(1)], vec![q(2), q(0)]];
        assert_eq!(RationalForm::from_matrix(asym), Err(LineError::NotSymmetric));
    }

    #[test]
    fn five_cases() {
        assert_eq!(classify::<Rational>(&[]), LineCase::ContainedInX);
        assert_eq!(classify(&[BQ::from_i64(0, 0, 0)]), LineCase::ContainedInX);
        assert_eq!(classify(&[BQ::from_i64(0, 1, 0)]), LineCase::Contracted(Contact::TwoPoints));
        assert_eq!(classify(&[BQ::from_i64(1, 2, 1)]), LineCase::Contracted(Contact::Tangent));
        // x^2 + y^2 has two distinct conjugate roots
        assert_eq!(classify(&[BQ::from_i64(1, 0, 1)]), LineCase::Contracted(Contact::TwoPoints));
        assert_eq!(classify(&[BQ::from_i64(0, 1, 0), BQ::from_i64(0, 0, 1)]), LineCase::MeetsAtOnePoint);
        assert_eq!(classify(&[BQ::from_i64(1, 0, 0), BQ::from_i64(0, 0, 1)]), LineCase::DoubleCover);
        assert_eq!(
            classify(&[BQ::from_i64(1, 0, 0), BQ::from_i64(0, 1, 0), BQ::from_i64(0, 0, 1)]),
            LineCase::VeroneseEmbedding
        );
        // dependent generators do not raise the rank
        assert_eq!(
            classify(&[BQ::from_i64(0, 2, 0), BQ::from_i64(0, 1, 0), BQ::from_i64(0, -3, 0)]),
            LineCase::Contracted(Contact::TwoPoints)
        );
    }

    // 4x4 Sylvester determinant by cofactor expansion.
    fn sylvester(f: &BQ, g: &BQ) -> Rational {
        let z = q(0);
        let m = [
            [f.x2.clone(), f.xy.clone(), f.y2.clone(), z.clone()],
            [z.clone(), f.x2.clone(), f.xy.clone(), f.y2.clone()],
            [g.x2.clone(), g.xy.clone(), g.y2.clone(), z.clone()],
            [z.clone(), g.x2.clone(), g.xy.clone(), g.y2.clone()],
        ];
        fn det(m: &[Vec<Rational>]) -> Rational {
            if m.len() == 1 {
                return m[0][0].clone();
            }
            let mut acc = Rational::from_integer(Integer::from(0));
            for c in 0..m.len() {
                let minor: Vec<Vec<Rational>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, v)| v.clone()).collect())
                    .collect();
                let term = m[0][c].clone() * det(&minor);
                acc = if c % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
        let rows: Vec<Vec<Rational>> = m.iter().map(|r| r.to_vec()).collect();
        det(&rows)
    }

    #[test]
    fn resultant_matches_sylvester_determinant() {
        let mut seed = 7u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 11) as i64 - 5
        };
        for _ in 0..300 {
            let f = BQ::from_i64(next(), next(), next());
            let g = BQ::from_i64(next(), next(), next());
            assert_eq!(resultant(&f, &g), sylvester(&f, &g));
        }
        // (x - 2y)(x + y) and (x - 2y)(3x - y) share x = 2y
        let f = BQ::from_i64(1, -1, -2);
        let g = BQ::from_i64(3, -7, 2);
        assert_eq!(resultant(&f, &g), q(0));
    }
}
