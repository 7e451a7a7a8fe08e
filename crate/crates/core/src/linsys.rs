//! Max-min linear systems `A ⊗ x = b`.
//!
//! The principal solution `x̂_j = min_i residual(a_ij, b_i)` is the greatest
//! `x` with `A ⊗ x <= b`, so the system is solvable exactly when `x̂` solves
//! it and every solution lies below `x̂`.
//!
//! Uniqueness. If `x <= x' <= x̂` and `x` solves, so does `x'`. Hence a
//! second solution exists iff `x̂` with a single coordinate lowered still
//! solves. Lowering `x̂_j` breaks a row `i` exactly when `j` is the only
//! column attaining `b_i` in that row (`cover(i) = {j}`) and `b_i = x̂_j`.
//! So coordinate `j` is pinned iff `x̂_j = 0` or such a row exists, and `x̂`
//! is the unique solution iff every coordinate is pinned. Among solutions
//! with `⊕_j x_j = 1`, a lowerable coordinate only matters if lowering it
//! keeps some other coordinate at 1.

use crate::error::{Error, Result};
use crate::hull::principal_solution;
use crate::regularity::{verify_certificate, Certificate, CertificateShape};
use crate::scalar::{mat_vec, Matrix, Scalar, Vector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionReport {
    pub principal: Vector,
    /// `A ⊗ x̂ = b`.
    pub solves: bool,
    /// `x̂` is the only solution.
    pub unique_plain: bool,
    /// `x̂` is the only solution with `⊕_j x_j = 1`.
    pub unique_normalized: bool,
    /// `cover_sets[i] = { j : min(a_ij, x̂_j) = b_i }`.
    pub cover_sets: Vec<Vec<usize>>,
}

impl SolutionReport {
    /// Coordinates of `x̂` that can be lowered without losing solvability.
    pub fn lowerable(&self, b: &Vector) -> Vec<usize> {
        (0..self.principal.len())
            .filter(|&j| {
                !self.principal[j].is_zero()
                    && !self
                        .cover_sets
                        .iter()
                        .enumerate()
                        .any(|(i, cover)| cover.as_slice() == [j] && b[i] == self.principal[j])
            })
            .collect()
    }
}

pub fn solve(a: &Matrix, b: &Vector) -> Result<SolutionReport> {
    let principal = principal_solution(a, b)?;
    let solves = mat_vec(a, &principal)? == *b;
    let cover_sets: Vec<Vec<usize>> = (0..a.nrows())
        .map(|i| {
            (0..a.ncols())
                .filter(|&j| a.get(i, j).otimes(&principal[j]) == b[i])
                .collect()
        })
        .collect();
    let mut report = SolutionReport {
        principal,
        solves,
        unique_plain: false,
        unique_normalized: false,
        cover_sets,
    };
    if solves {
        let lowerable = report.lowerable(b);
        let ones: Vec<usize> = (0..report.principal.len())
            .filter(|&j| report.principal[j].is_one())
            .collect();
        report.unique_plain = lowerable.is_empty();
        report.unique_normalized =
            !ones.is_empty() && lowerable.iter().all(|&j| ones.as_slice() == [j]);
    }
    Ok(report)
}

/// Right-hand side and solution of a uniquely solvable system built from a
/// strong-regularity certificate of the first `k` rows of `a`.
///
/// `x` carries `λ_c` at every certified column and 1 at the omitted one;
/// `b = A ⊗ x` holds the row maxima of `A[λ]`. The coefficients must be
/// pairwise distinct and avoid the entries of `a`, 0 and 1 (see
/// [`crate::regularity::normalize_certificate`]); otherwise the system
/// need not be uniquely solvable.
pub fn build_unique_system(a: &Matrix, cert: &Certificate) -> Result<(Vector, Vector)> {
    let k = cert.pi.len();
    if cert.shape() != CertificateShape::Rect {
        return Err(Error::InvalidCertificate(
            "a k x (k+1) certificate is required".into(),
        ));
    }
    if a.ncols() != k + 1 || a.nrows() < k {
        return Err(Error::DimensionMismatch(format!(
            "certificate for {k} rows needs a d x {} matrix with d >= {k}, got {}x{}",
            k + 1,
            a.nrows(),
            a.ncols()
        )));
    }
    if k > 0 {
        let rows: Vec<usize> = (0..k).collect();
        let cols: Vec<usize> = (0..=k).collect();
        if !verify_certificate(&a.select(&rows, &cols)?, cert)? {
            return Err(Error::InvalidCertificate(
                "certificate does not verify".into(),
            ));
        }
    }
    if !cert.is_normalized(a) {
        return Err(Error::InvalidCertificate(
            "coefficients must be pairwise distinct and distinct from the entries, 0 and 1".into(),
        ));
    }
    let x = Vector::new(
        (0..=k)
            .map(|c| cert.coefficient(c).unwrap_or_else(Scalar::one))
            .collect(),
    )?;
    let b = mat_vec(a, &x)?;
    Ok((b, x))
}
