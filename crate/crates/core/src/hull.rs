//! Membership in max-min spans and convex hulls.
//!
//! `x ∈ span(A)` is decided by the principal solution
//! `x̂_j = min_i residual(a_ij, x_i)`, the greatest `λ` with `A ⊗ λ <= x`:
//! `x` is in the span exactly when `A ⊗ x̂ = x`. Hull membership is span
//! membership of `(x, 1)` for the homogenized matrix `Â`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{mat_vec, Matrix, Scalar, Vector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipResult {
    pub member: bool,
    /// Coefficients reproducing the query point; for hull queries their
    /// maximum is 1.
    pub witness: Option<Vector>,
    /// First row where `A ⊗ x̂` differs from the target. For hull queries
    /// this may be `d`, the appended row of ones.
    pub failing_row: Option<usize>,
}

/// Principal solution over any bounded chain, `entries` row-major.
pub(crate) fn principal<T: Ord + Clone>(
    entries: &[T],
    ncols: usize,
    target: &[T],
    one: &T,
) -> Vec<T> {
    (0..ncols)
        .map(|j| {
            target
                .iter()
                .enumerate()
                .map(|(i, b)| if entries[i * ncols + j] <= *b { one } else { b })
                .min()
                .unwrap_or(one)
                .clone()
        })
        .collect()
}

/// First row where `A ⊗ x` differs from `target`.
pub(crate) fn first_mismatch<T: Ord + Clone>(
    entries: &[T],
    ncols: usize,
    x: &[T],
    target: &[T],
) -> Option<usize> {
    target.iter().enumerate().position(|(i, b)| {
        let row = &entries[i * ncols..(i + 1) * ncols];
        let value = row.iter().zip(x).map(|(a, xj)| a.min(xj)).max();
        value != Some(b)
    })
}

/// `Â`: `A` with a row of ones appended.
pub fn homogenize(a: &Matrix) -> Matrix {
    a.with_row(&Vector::ones(a.ncols()))
        .expect("row of ones matches the column count")
}

/// The principal solution `x̂_j = min_i residual(a_ij, x_i)`.
pub fn principal_solution(a: &Matrix, x: &Vector) -> Result<Vector> {
    if a.nrows() != x.len() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows, point has {} coordinates",
            a.nrows(),
            x.len()
        )));
    }
    let entries: Vec<Scalar> = a.entries().cloned().collect();
    Vector::new(principal(&entries, a.ncols(), x.as_slice(), &Scalar::one()))
}

pub fn span_membership(a: &Matrix, x: &Vector) -> Result<MembershipResult> {
    let hat = principal_solution(a, x)?;
    let image = mat_vec(a, &hat)?;
    let failing_row = (0..x.len()).find(|&i| image[i] != x[i]);
    Ok(match failing_row {
        None => MembershipResult {
            member: true,
            witness: Some(hat),
            failing_row: None,
        },
        Some(row) => MembershipResult {
            member: false,
            witness: None,
            failing_row: Some(row),
        },
    })
}

pub fn hull_membership(a: &Matrix, x: &Vector) -> Result<MembershipResult> {
    if a.nrows() != x.len() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows, point has {} coordinates",
            a.nrows(),
            x.len()
        )));
    }
    span_membership(&homogenize(a), &x.pushed(Scalar::one()))
}

/// Membership verdicts on the `(res + 1) × (res + 1)` lattice of points
/// `(i / res, j / res)` of the unit square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Raster {
    pub resolution: usize,
    cells: Vec<bool>,
}

impl Raster {
    /// Verdict at the point `(i / res, j / res)`.
    pub fn get(&self, i: usize, j: usize) -> bool {
        let side = self.resolution + 1;
        assert!(i < side && j < side, "raster index out of bounds");
        self.cells[j * side + i]
    }

    pub fn count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    /// Lattice indices `(i, j)` of member points, row by row.
    pub fn members(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let side = self.resolution + 1;
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .map(move |(k, _)| (k % side, k / side))
    }
}

pub fn hull_raster_2d(a: &Matrix, resolution: usize) -> Result<Raster> {
    if a.nrows() != 2 {
        return Err(Error::InvalidArgument(format!(
            "raster requires d = 2, got d = {}",
            a.nrows()
        )));
    }
    if resolution == 0 {
        return Err(Error::InvalidArgument("resolution must be positive".into()));
    }
    let side = resolution + 1;
    let coord =
        |k: usize| Scalar::from_ratio(k as i64, resolution as i64).expect("k <= resolution");
    let hat = homogenize(a);
    let cells: Vec<bool> = (0..side * side)
        .into_par_iter()
        .map(|k| {
            let point = Vector::new(vec![coord(k % side), coord(k / side), Scalar::one()])
                .expect("three coordinates");
            span_membership(&hat, &point)
                .map(|r| r.member)
                .unwrap_or(false)
        })
        .collect();
    Ok(Raster { resolution, cells })
}
