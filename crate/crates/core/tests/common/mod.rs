//! Independent oracles and generators shared by the integration tests.

#![allow(dead_code)]

use itertools::Itertools;
use maxmin::{is_trapezoidal, mat_vec, principal_solution, Matrix, Scalar, Vector};
use rand::Rng;

pub fn m(text: &str) -> Matrix {
    text.parse().unwrap()
}

pub fn v(text: &str) -> Vector {
    text.parse().unwrap()
}

pub fn s(text: &str) -> Scalar {
    text.parse().unwrap()
}

pub fn example1() -> Matrix {
    m(".01 .02 .03 .04; .05 .06 .07 .08; .09 .10 .11 .12")
}

pub fn example2() -> Matrix {
    m(".01 .04 .07 .10; .02 .05 .08 .11; .03 .06 .09 .12")
}

pub fn grid(k: i64, den: i64) -> Scalar {
    Scalar::from_ratio(k, den).unwrap()
}

pub fn random_scalar<R: Rng>(rng: &mut R, den: i64) -> Scalar {
    grid(rng.random_range(0..=den), den)
}

pub fn random_vector<R: Rng>(rng: &mut R, d: usize, den: i64) -> Vector {
    Vector::new((0..d).map(|_| random_scalar(rng, den)).collect()).unwrap()
}

pub fn random_matrix<R: Rng>(rng: &mut R, d: usize, n: usize, den: i64) -> Matrix {
    Matrix::from_fn(d, n, |_, _| random_scalar(rng, den))
}

/// Existence of row and column orders making `a` trapezoidal, by trying
/// every pair of permutations.
pub fn trapezoidal_by_permutations(a: &Matrix) -> bool {
    let (k, n) = a.shape();
    (0..k).permutations(k).any(|rows| {
        (0..n)
            .permutations(n)
            .any(|cols| is_trapezoidal(&a.select(&rows, &cols).unwrap()).unwrap())
    })
}

/// All solutions `x <= x̂` of `A ⊗ x = b` with coordinates in the critical
/// set `{0} ∪ {b_i} ∪ {x̂_j}`. If any solution other than `x̂` exists, one
/// exists in this set: lowering a lowerable `x̂_j` to the next critical
/// value below it keeps every row satisfied.
pub fn critical_solutions(a: &Matrix, b: &Vector) -> Vec<Vector> {
    let hat = principal_solution(a, b).unwrap();
    let mut critical: Vec<Scalar> = b.iter().chain(hat.iter()).cloned().collect();
    critical.push(Scalar::zero());
    critical.sort();
    critical.dedup();
    (0..a.ncols())
        .map(|j| {
            critical
                .iter()
                .filter(|c| **c <= hat[j])
                .cloned()
                .collect::<Vec<_>>()
        })
        .multi_cartesian_product()
        .map(|x| Vector::new(x).unwrap())
        .filter(|x| mat_vec(a, x).unwrap() == *b)
        .collect()
}

/// `(unique, unique among solutions with maximum 1)` by enumeration.
pub fn uniqueness_by_enumeration(a: &Matrix, b: &Vector) -> (bool, bool) {
    let sols = critical_solutions(a, b);
    let normalized = sols.iter().filter(|x| x.sum().is_one()).count();
    (
        sols.len() == 1,
        normalized == 1 && sols.iter().any(|x| x.sum().is_one()),
    )
}
