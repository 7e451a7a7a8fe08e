//! Strong regularity, the trapezoidal canonical form and max-min rank.
//!
//! A `k × (k+1)` matrix is strongly regular when, after scaling every
//! column but one (`j`) by a coefficient `λ_c`, each row's maximum is
//! attained only at its own column `π(i)` and equals `λ_{π(i)}`. The square
//! `k × k` variant scales every column. Both are equivalent to the matrix
//! becoming trapezoidal under some row and column permutation, which is
//! what the search below looks for.
//!
//! The max-min rank is the largest `k` with a strongly regular
//! `k × (k+1)` submatrix; it equals the dimension of the column hull.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::{Matrix, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateShape {
    /// `k × (k+1)`, one column left unscaled.
    Rect,
    /// `k × k`, every column scaled.
    Square,
}

/// Witness of strong regularity. Indices refer to the certified matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    /// The unscaled column `j` (rectangular certificates only).
    pub omitted_column: Option<usize>,
    /// `pi[i]` is the column attaining the maximum of row `i`.
    pub pi: Vec<usize>,
    /// Coefficient of every column in the range of `pi`.
    pub lambdas: BTreeMap<usize, Scalar>,
}

impl Certificate {
    pub fn shape(&self) -> CertificateShape {
        match self.omitted_column {
            Some(_) => CertificateShape::Rect,
            None => CertificateShape::Square,
        }
    }

    /// Coefficient applied to column `c` in `A[λ]`; the omitted column has 1.
    pub fn coefficient(&self, c: usize) -> Option<Scalar> {
        if self.omitted_column == Some(c) {
            return Some(Scalar::one());
        }
        self.lambdas.get(&c).cloned()
    }

    /// `λ` values pairwise distinct and distinct from every entry of `a`,
    /// from 0 and from 1.
    pub fn is_normalized(&self, a: &Matrix) -> bool {
        let entries: BTreeSet<&Scalar> = a.entries().collect();
        let mut seen = BTreeSet::new();
        self.lambdas
            .values()
            .all(|l| !l.is_zero() && !l.is_one() && !entries.contains(l) && seen.insert(l.clone()))
    }

    fn check_structure(&self, a: &Matrix) -> Result<()> {
        let (k, n) = a.shape();
        let expected = match self.shape() {
            CertificateShape::Rect => k + 1,
            CertificateShape::Square => k,
        };
        if n != expected {
            return Err(Error::DimensionMismatch(format!(
                "{:?} certificate needs a {k}x{expected} matrix, got {k}x{n}",
                self.shape()
            )));
        }
        if self.pi.len() != k {
            return Err(Error::InvalidCertificate(format!(
                "bijection covers {} rows, matrix has {k}",
                self.pi.len()
            )));
        }
        if let Some(j) = self.omitted_column {
            if j >= n {
                return Err(Error::InvalidCertificate(format!(
                    "omitted column {j} out of range"
                )));
            }
        }
        let mut range = BTreeSet::new();
        for &c in &self.pi {
            if c >= n {
                return Err(Error::InvalidCertificate(format!(
                    "column {c} out of range"
                )));
            }
            if Some(c) == self.omitted_column {
                return Err(Error::InvalidCertificate(format!(
                    "omitted column {c} is in the range of the bijection"
                )));
            }
            if !range.insert(c) {
                return Err(Error::InvalidCertificate(format!(
                    "column {c} is assigned to two rows"
                )));
            }
        }
        let keys: BTreeSet<usize> = self.lambdas.keys().copied().collect();
        if keys != range {
            return Err(Error::InvalidCertificate(
                "coefficients must be given exactly for the columns in the range of the bijection"
                    .into(),
            ));
        }
        Ok(())
    }
}

/// `A[λ]`: every certified column scaled by its coefficient.
pub fn scaled_matrix(a: &Matrix, cert: &Certificate) -> Result<Matrix> {
    cert.check_structure(a)?;
    Ok(Matrix::from_fn(a.nrows(), a.ncols(), |i, c| {
        let coef = cert.coefficient(c).expect("structure checked");
        a.get(i, c).otimes(&coef)
    }))
}

/// Checks that in every row `i` of `A[λ]` the maximum equals `λ_{π(i)}`
/// and is attained only at column `π(i)`.
///
/// Errors on a malformed certificate or a shape mismatch; returns `false`
/// when the certificate is well formed but does not certify.
pub fn verify_certificate(a: &Matrix, cert: &Certificate) -> Result<bool> {
    let scaled = scaled_matrix(a, cert)?;
    if cert.lambdas.values().any(Scalar::is_zero) {
        return Ok(false);
    }
    for (i, &target) in cert.pi.iter().enumerate() {
        let lambda = &cert.lambdas[&target];
        if scaled.get(i, target) != lambda {
            return Ok(false);
        }
        let dominated = (0..a.ncols())
            .filter(|&c| c != target)
            .all(|c| scaled.get(i, c) < lambda);
        if !dominated {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Right-hand sides `α_i = max_{ℓ <= i, t > ℓ} a_{ℓt}` of the trapezoidal
/// inequalities; an empty maximum counts as 0.
fn trapezoidal_thresholds(a: &Matrix) -> Vec<Scalar> {
    let mut running = Scalar::zero();
    (0..a.nrows())
        .map(|i| {
            for t in i + 1..a.ncols() {
                running = running.oplus(a.get(i, t));
            }
            running.clone()
        })
        .collect()
}

/// `a_ii > max_{ℓ <= i, t > ℓ} a_{ℓt}` for every row `i`.
pub fn is_trapezoidal(a: &Matrix) -> Result<bool> {
    if a.nrows() > a.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "trapezoidal form needs rows <= columns, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    Ok(trapezoidal_thresholds(a)
        .iter()
        .enumerate()
        .all(|(i, alpha)| a.get(i, i) > alpha))
}

fn check_regularity_shape(a: &Matrix) -> Result<()> {
    let (k, n) = a.shape();
    if n != k && n != k + 1 {
        return Err(Error::DimensionMismatch(format!(
            "expected a k x (k+1) or k x k matrix, got {k}x{n}"
        )));
    }
    Ok(())
}

struct TrapezoidSearch<'a> {
    a: &'a Matrix,
    used_rows: Vec<bool>,
    used_cols: Vec<bool>,
    row_order: Vec<usize>,
    col_order: Vec<usize>,
}

impl TrapezoidSearch<'_> {
    /// Extends the partial diagonal by one (row, column) pair. A pair is
    /// admissible when its entry beats both the running threshold and every
    /// other entry of the row among the still unused columns.
    fn extend(&mut self, threshold: &Scalar) -> bool {
        if self.row_order.len() == self.a.nrows() {
            return true;
        }
        let zero = Scalar::zero();
        for r in 0..self.a.nrows() {
            if self.used_rows[r] {
                continue;
            }
            let row = self.a.row(r);
            let free: Vec<usize> = (0..self.a.ncols())
                .filter(|&c| !self.used_cols[c])
                .collect();
            // The only admissible column is the strict maximum of the free part of the row.
            let Some(&best) = free
                .iter()
                .max_by(|&&x, &&y| row[x].cmp(&row[y]).then(y.cmp(&x)))
            else {
                return false;
            };
            let rest = free
                .iter()
                .filter(|&&c| c != best)
                .map(|&c| &row[c])
                .max()
                .unwrap_or(&zero);
            if row[best] <= *rest || row[best] <= *threshold {
                continue;
            }
            let next = threshold.oplus(rest);
            self.used_rows[r] = true;
            self.used_cols[best] = true;
            self.row_order.push(r);
            self.col_order.push(best);
            if self.extend(&next) {
                return true;
            }
            self.used_rows[r] = false;
            self.used_cols[best] = false;
            self.row_order.pop();
            self.col_order.pop();
        }
        false
    }
}

/// Row and column orders `(row_perm, col_perm)` under which the matrix is
/// trapezoidal, where `row_perm[i]` is the original row placed at position
/// `i` (likewise for columns; a leftover column goes last). `None` when no
/// such orders exist, which happens exactly when the matrix is not
/// strongly regular.
pub fn trapezoidalize(a: &Matrix) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    check_regularity_shape(a)?;
    let mut search = TrapezoidSearch {
        a,
        used_rows: vec![false; a.nrows()],
        used_cols: vec![false; a.ncols()],
        row_order: Vec::with_capacity(a.nrows()),
        col_order: Vec::with_capacity(a.ncols()),
    };
    if !search.extend(&Scalar::zero()) {
        return Ok(None);
    }
    let mut cols = search.col_order;
    cols.extend((0..a.ncols()).filter(|&c| !search.used_cols[c]));
    Ok(Some((search.row_order, cols)))
}

fn check_permutation(perm: &[usize], len: usize, what: &str) -> Result<()> {
    let set: BTreeSet<usize> = perm.iter().copied().collect();
    if perm.len() != len || set.len() != len || perm.iter().any(|&p| p >= len) {
        return Err(Error::InvalidArgument(format!(
            "{what} is not a permutation of 0..{len}"
        )));
    }
    Ok(())
}

/// Certificate for a matrix that is trapezoidal under the given orders.
///
/// `λ_i` is the midpoint between `max(α_i, λ_{i-1})` and the next larger
/// value among the entries of `a` and 1. The resulting coefficients are
/// strictly increasing along the diagonal, lie strictly between `α_i` and
/// `a_ii`, and avoid every entry as well as 0 and 1.
pub fn certificate_from_trapezoidal(
    a: &Matrix,
    row_perm: &[usize],
    col_perm: &[usize],
) -> Result<Certificate> {
    check_regularity_shape(a)?;
    check_permutation(row_perm, a.nrows(), "row order")?;
    check_permutation(col_perm, a.ncols(), "column order")?;
    let permuted = a.select(row_perm, col_perm)?;
    if !is_trapezoidal(&permuted)? {
        return Err(Error::NotTrapezoidal);
    }
    let mut critical = a.distinct_entries();
    critical.push(Scalar::one());
    critical.dedup();

    let mut lambdas = BTreeMap::new();
    let mut pi = vec![0; a.nrows()];
    let mut previous: Option<Scalar> = None;
    for (i, alpha) in trapezoidal_thresholds(&permuted).into_iter().enumerate() {
        let lo = match previous {
            Some(p) if p > alpha => p,
            _ => alpha,
        };
        let hi = critical
            .iter()
            .find(|&c| *c > lo)
            .expect("the diagonal entry lies above the threshold");
        let lambda = lo.midpoint(hi);
        pi[row_perm[i]] = col_perm[i];
        lambdas.insert(col_perm[i], lambda.clone());
        previous = Some(lambda);
    }
    let omitted_column = (a.ncols() == a.nrows() + 1).then(|| col_perm[a.nrows()]);
    Ok(Certificate {
        omitted_column,
        pi,
        lambdas,
    })
}

/// A verifying certificate if the `k × (k+1)` or `k × k` matrix is strongly
/// regular, found through the trapezoidal form.
pub fn is_strongly_regular(a: &Matrix) -> Result<Option<Certificate>> {
    match trapezoidalize(a)? {
        Some((rows, cols)) => Ok(Some(certificate_from_trapezoidal(a, &rows, &cols)?)),
        None => Ok(None),
    }
}

/// Lowers the coefficients of a verifying certificate so that they become
/// pairwise distinct and distinct from the entries of `a`, from 0 and from
/// 1, keeping the bijection. Already normalized certificates come back
/// unchanged.
///
/// Each `λ_c` moves down by less than half the smallest gap between the
/// distinct values among entries, coefficients, 0 and 1, so no row maximum
/// changes its position.
pub fn normalize_certificate(a: &Matrix, cert: &Certificate) -> Result<Certificate> {
    normalize_certificate_with(a, &[], cert)
}

/// [`normalize_certificate`] that also keeps the coefficients away from
/// `extra` values.
pub(crate) fn normalize_certificate_with(
    a: &Matrix,
    extra: &[Scalar],
    cert: &Certificate,
) -> Result<Certificate> {
    if !verify_certificate(a, cert)? {
        return Err(Error::InvalidCertificate(
            "certificate does not verify".into(),
        ));
    }
    if cert.is_normalized(a) && cert.lambdas.values().all(|l| !extra.contains(l)) {
        return Ok(cert.clone());
    }
    let mut values: Vec<Scalar> = a.distinct_entries();
    values.extend(extra.iter().cloned());
    values.extend(cert.lambdas.values().cloned());
    values.push(Scalar::zero());
    values.push(Scalar::one());
    values.sort();
    values.dedup();
    let gap = values
        .windows(2)
        .map(|w| w[1].as_ratio() - w[0].as_ratio())
        .min()
        .expect("0 and 1 are both present");
    let slots = BigRational::from_integer((2 * (cert.lambdas.len() + 1)).into());
    let lambdas = cert
        .lambdas
        .iter()
        .enumerate()
        .map(|(rank, (&c, l))| {
            let step = &gap * BigRational::from_integer((rank + 1).into()) / &slots;
            Ok((c, Scalar::new(l.as_ratio() - step)?))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(Certificate {
        lambdas,
        ..cert.clone()
    })
}

/// Witness for the max-min rank: a strongly regular `k × (k+1)` submatrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankWitness {
    pub rank: usize,
    /// Rows of the witness submatrix, increasing.
    pub rows: Vec<usize>,
    /// Columns of the witness submatrix, increasing.
    pub cols: Vec<usize>,
    /// Certificate in the submatrix's own indexing.
    pub certificate: Certificate,
    /// Orders making the submatrix trapezoidal (submatrix indexing).
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
}

impl RankWitness {
    pub fn submatrix(&self, a: &Matrix) -> Result<Matrix> {
        a.select(&self.rows, &self.cols)
    }

    /// The certificate with row and column indices of the full matrix.
    pub fn global_certificate(&self) -> Certificate {
        Certificate {
            omitted_column: self.certificate.omitted_column.map(|j| self.cols[j]),
            pi: self.certificate.pi.iter().map(|&c| self.cols[c]).collect(),
            lambdas: self
                .certificate
                .lambdas
                .iter()
                .map(|(&c, l)| (self.cols[c], l.clone()))
                .collect(),
        }
    }

    /// `(global row, global column)` pairs of the bijection.
    pub fn assignments(&self) -> Vec<(usize, usize)> {
        self.certificate
            .pi
            .iter()
            .enumerate()
            .map(|(i, &c)| (self.rows[i], self.cols[c]))
            .collect()
    }

    fn point() -> Self {
        RankWitness {
            rank: 0,
            rows: Vec::new(),
            cols: vec![0],
            certificate: Certificate {
                omitted_column: Some(0),
                pi: Vec::new(),
                lambdas: BTreeMap::new(),
            },
            row_perm: Vec::new(),
            col_perm: vec![0],
        }
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn recurse(
        start: usize,
        n: usize,
        k: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            if n - i < k - current.len() {
                break;
            }
            current.push(i);
            recurse(i + 1, n, k, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        recurse(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Max-min rank with a witness. Sizes are tried from the largest down;
/// within a size, row subsets and then column subsets go in lexicographic
/// order and the first strongly regular submatrix wins. A matrix without
/// any strongly regular `1 × 2` submatrix (all columns equal) has rank 0.
pub fn rank(a: &Matrix) -> RankWitness {
    let (d, n) = a.shape();
    let top = d.min(n.saturating_sub(1));
    for k in (1..=top).rev() {
        for rows in combinations(d, k) {
            for cols in combinations(n, k + 1) {
                let sub = a.select(&rows, &cols).expect("indices in range");
                if let Some((row_perm, col_perm)) = trapezoidalize(&sub).expect("k x (k+1) shape") {
                    let certificate = certificate_from_trapezoidal(&sub, &row_perm, &col_perm)
                        .expect("orders come from the search");
                    return RankWitness {
                        rank: k,
                        rows,
                        cols,
                        certificate,
                        row_perm,
                        col_perm,
                    };
                }
            }
        }
    }
    RankWitness::point()
}

/// Largest `k` such that `a` has a strongly regular `k × k` submatrix.
pub fn square_rank(a: &Matrix) -> usize {
    let (d, n) = a.shape();
    for k in (1..=d.min(n)).rev() {
        for rows in combinations(d, k) {
            for cols in combinations(n, k) {
                let sub = a.select(&rows, &cols).expect("indices in range");
                if trapezoidalize(&sub).expect("square shape").is_some() {
                    return k;
                }
            }
        }
    }
    0
}

/// Dimension of the max-min convex hull of the columns, which equals the
/// max-min rank.
pub fn dimension(a: &Matrix) -> usize {
    rank(a).rank
}

/// Whether the hull of the `m + 1 >= d + 1` columns has nonempty interior
/// in `[0,1]^d`, i.e. whether the rank is full.
pub fn has_nonempty_interior(a: &Matrix) -> Result<bool> {
    let (d, n) = a.shape();
    if n < d + 1 {
        return Err(Error::InvalidArgument(format!(
            "need at least d + 1 = {} columns, got {n}",
            d + 1
        )));
    }
    Ok(rank(a).rank == d)
}

/// `max(column i) <= min(column i + 1)` for every consecutive pair; when it
/// holds the rank is at most 2.
pub fn chain_condition(a: &Matrix) -> bool {
    let cols = a.columns();
    cols.windows(2).all(|w| {
        let upper = w[0].iter().max().expect("nonempty column");
        let lower = w[1].iter().min().expect("nonempty column");
        upper <= lower
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(text: &str) -> Matrix {
        text.parse().unwrap()
    }

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    fn example1() -> Matrix {
        m(".01 .02 .03 .04; .05 .06 .07 .08; .09 .10 .11 .12")
    }

    fn example2() -> Matrix {
        m(".01 .04 .07 .10; .02 .05 .08 .11; .03 .06 .09 .12")
    }

    fn cert(omitted: Option<usize>, pi: &[usize], lambdas: &[(usize, &str)]) -> Certificate {
        Certificate {
            omitted_column: omitted,
            pi: pi.to_vec(),
            lambdas: lambdas.iter().map(|&(c, l)| (c, s(l))).collect(),
        }
    }

    fn reference_certificate() -> Certificate {
        // j = 1, λ_2 = .10, λ_3 = .07, λ_4 = .04; rows 1,2,3 -> columns 4,3,2.
        cert(Some(0), &[3, 2, 1], &[(1, ".10"), (2, ".07"), (3, ".04")])
    }

    #[test]
    fn reference_certificate_verifies() {
        assert!(verify_certificate(&example1(), &reference_certificate()).unwrap());
    }

    #[test]
    fn wrong_bijection_fails() {
        let c = cert(Some(0), &[1, 2, 3], &[(1, ".10"), (2, ".07"), (3, ".04")]);
        assert!(!verify_certificate(&example1(), &c).unwrap());
    }

    #[test]
    fn second_example_certificate_verifies() {
        let sub = example2().select(&[0, 2], &[0, 2, 3]).unwrap();
        // Local columns: 0 -> col 1, 1 -> col 3, 2 -> col 4.
        let c = cert(Some(0), &[2, 1], &[(1, ".09"), (2, ".08")]);
        assert!(verify_certificate(&sub, &c).unwrap());
    }

    #[test]
    fn malformed_certificates_are_errors() {
        let a = example1();
        // Column used twice.
        let dup = cert(Some(0), &[3, 3, 1], &[(1, ".10"), (3, ".04")]);
        assert!(matches!(
            verify_certificate(&a, &dup),
            Err(Error::InvalidCertificate(_))
        ));
        // Omitted column in range of pi.
        let clash = cert(Some(3), &[3, 2, 1], &[(1, ".10"), (2, ".07"), (3, ".04")]);
        assert!(verify_certificate(&a, &clash).is_err());
        // Missing coefficient.
        let missing = cert(Some(0), &[3, 2, 1], &[(1, ".10"), (2, ".07")]);
        assert!(verify_certificate(&a, &missing).is_err());
        // Square certificate on a rectangular matrix.
        let square = cert(None, &[0, 1, 2], &[(0, ".1"), (1, ".1"), (2, ".1")]);
        assert!(matches!(
            verify_certificate(&a, &square),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn zero_coefficient_never_certifies() {
        let c = cert(None, &[0], &[(0, "0")]);
        assert!(!verify_certificate(&m("0"), &c).unwrap());
    }

    #[test]
    fn trapezoidal_examples() {
        assert!(is_trapezoidal(&m(".04 .03 .02 .01; .08 .07 .06 .05; .12 .11 .10 .09")).unwrap());
        assert!(!is_trapezoidal(&example1()).unwrap());
        assert!(is_trapezoidal(&m(".5")).unwrap());
        assert!(!is_trapezoidal(&m("0")).unwrap());
        assert!(is_trapezoidal(&m(".5; .3")).is_err());
    }

    #[test]
    fn trapezoidalize_examples() {
        let (rows, cols) = trapezoidalize(&example1()).unwrap().unwrap();
        assert_eq!(rows, vec![0, 1, 2]);
        assert_eq!(cols, vec![3, 2, 1, 0]);
        assert_eq!(trapezoidalize(&m(".3 .3 .3; .3 .3 .3")).unwrap(), None);
        assert_eq!(trapezoidalize(&example2()).unwrap(), None);
        assert!(trapezoidalize(&m(".1 .2 .3 .4")).is_err());
    }

    #[test]
    fn certificate_from_reversed_first_example() {
        let a = example1();
        let c = certificate_from_trapezoidal(&a, &[0, 1, 2], &[3, 2, 1, 0]).unwrap();
        assert!(verify_certificate(&a, &c).unwrap());
        assert_eq!(c.omitted_column, Some(0));
        assert_eq!(c.lambdas[&3], s(".035"));
        assert_eq!(c.lambdas[&2], s(".065"));
        assert_eq!(c.lambdas[&1], s(".095"));
        assert!(c.is_normalized(&a));
    }

    #[test]
    fn certificate_for_one_by_two() {
        let a = m(".5 .3");
        let c = certificate_from_trapezoidal(&a, &[0], &[0, 1]).unwrap();
        assert_eq!(c.omitted_column, Some(1));
        assert_eq!(c.lambdas[&0], s(".4"));
        assert!(verify_certificate(&a, &c).unwrap());
        assert_eq!(
            certificate_from_trapezoidal(&m(".3 .3"), &[0], &[0, 1]),
            Err(Error::NotTrapezoidal)
        );
    }

    #[test]
    fn coefficients_increase_when_thresholds_tie() {
        // α_1 = α_2 = .1 while a_11 = .9: the midpoint of (α_1, a_11) would overshoot a_22.
        let a = m(".9 .1 .1; .1 .3 .1");
        assert!(is_trapezoidal(&a).unwrap());
        let c = certificate_from_trapezoidal(&a, &[0, 1], &[0, 1, 2]).unwrap();
        assert!(c.lambdas[&0] < c.lambdas[&1]);
        assert!(verify_certificate(&a, &c).unwrap());
    }

    #[test]
    fn strong_regularity_examples() {
        let c = is_strongly_regular(&example1()).unwrap().unwrap();
        assert!(verify_certificate(&example1(), &c).unwrap());
        assert_eq!(is_strongly_regular(&m(".3 .3 .3; .3 .3 .3")).unwrap(), None);
        let sq = m(".9 .1; .1 .9");
        let c = is_strongly_regular(&sq).unwrap().unwrap();
        assert_eq!(c.shape(), CertificateShape::Square);
        assert!(verify_certificate(&sq, &c).unwrap());
    }

    #[test]
    fn rank_examples() {
        let w = rank(&example1());
        assert_eq!(w.rank, 3);
        let sub = w.submatrix(&example1()).unwrap();
        assert!(verify_certificate(&sub, &w.certificate).unwrap());

        let w = rank(&example2());
        assert_eq!(w.rank, 2);
        // Lexicographically first; rows {1, 3} work as well.
        assert_eq!(w.rows, vec![0, 1]);
        assert_eq!(w.cols, vec![0, 1, 2]);
        let sub = m(".01 .07 .10; .03 .09 .12");
        assert!(is_strongly_regular(&sub).unwrap().is_some());

        assert_eq!(rank(&m(".3 .3 .3; .3 .3 .3")).rank, 0);
        assert_eq!(rank(&m(".3; .4")).rank, 0);
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dimension(&example1()), 3);
        assert_eq!(dimension(&example2()), 2);
        assert_eq!(dimension(&m(".2; .7; .1")), 0);
    }

    #[test]
    fn interior_examples() {
        assert!(has_nonempty_interior(&example1()).unwrap());
        assert!(!has_nonempty_interior(&example2()).unwrap());
        assert!(!has_nonempty_interior(&m(".3 .3 .3 .3; .3 .3 .3 .3; .3 .3 .3 .3")).unwrap());
        assert!(has_nonempty_interior(&m(".1 .2; .3 .4; .5 .6")).is_err());
    }

    #[test]
    fn chain_condition_examples() {
        assert!(chain_condition(&example2()));
        assert!(!chain_condition(&example1()));
        assert!(chain_condition(&m(".7; .1; .4")));
    }

    #[test]
    fn normalization_moves_colliding_coefficients() {
        let a = example1();
        let reference = reference_certificate();
        assert!(!reference.is_normalized(&a));
        let fixed = normalize_certificate(&a, &reference).unwrap();
        assert!(fixed.is_normalized(&a));
        assert!(verify_certificate(&a, &fixed).unwrap());
        assert_eq!(fixed.pi, reference.pi);
        for (c, l) in &fixed.lambdas {
            assert!(*l < reference.lambdas[c]);
        }
        assert_eq!(normalize_certificate(&a, &fixed).unwrap(), fixed);
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(
            combinations(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(combinations(2, 3), Vec::<Vec<usize>>::new());
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
