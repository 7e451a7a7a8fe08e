//! Exact scalars on the unit interval and the max-min semiring operations
//! on scalars, vectors and matrices.
//!
//! Addition is `max`, multiplication is `min`. Every value is an exact
//! rational in `[0, 1]`; construction outside that range is an error.

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An exact rational number in `[0, 1]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn new(value: BigRational) -> Result<Self> {
        if value.is_negative() || value > BigRational::one() {
            return Err(Error::OutOfRange(value.to_string()));
        }
        Ok(Scalar(value))
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::Parse(format!("{numer}/{denom}")));
        }
        Scalar::new(BigRational::new(numer.into(), denom.into()))
    }

    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn into_ratio(self) -> BigRational {
        self.0
    }

    /// `max(self, other)`.
    pub fn oplus(&self, other: &Scalar) -> Scalar {
        self.max(other).clone()
    }

    /// `min(self, other)`.
    pub fn otimes(&self, other: &Scalar) -> Scalar {
        self.min(other).clone()
    }

    /// Largest `t` with `min(self, t) <= bound`: 1 if `self <= bound`, else `bound`.
    pub fn residual(&self, bound: &Scalar) -> Scalar {
        if self <= bound {
            Scalar::one()
        } else {
            bound.clone()
        }
    }

    /// Arithmetic mean, which stays inside the interval.
    pub fn midpoint(&self, other: &Scalar) -> Scalar {
        Scalar((&self.0 + &other.0) / BigRational::from_integer(2.into()))
    }

    /// Renders as `p/q` (or `p` for integers); used wherever exactness has
    /// to survive serialization.
    pub fn to_fraction_string(&self) -> String {
        if self.0.denom().is_one() {
            self.0.numer().to_string()
        } else {
            format!("{}/{}", self.0.numer(), self.0.denom())
        }
    }

    /// Terminating decimal expansion, if the denominator has no prime
    /// factors other than 2 and 5.
    pub fn to_decimal_string(&self) -> Option<String> {
        let mut denom = self.0.denom().clone();
        let two = BigInt::from(2);
        let five = BigInt::from(5);
        let (mut twos, mut fives) = (0usize, 0usize);
        while denom.is_multiple_of(&two) {
            denom /= &two;
            twos += 1;
        }
        while denom.is_multiple_of(&five) {
            denom /= &five;
            fives += 1;
        }
        if !denom.is_one() {
            return None;
        }
        let digits = twos.max(fives);
        if digits == 0 {
            return Some(self.0.numer().to_string());
        }
        let scaled = (&self.0 * BigRational::from_integer(BigInt::from(10).pow(digits as u32)))
            .to_integer()
            .to_string();
        let padded = format!("{scaled:0>width$}", width = digits + 1);
        let (int_part, frac_part) = padded.split_at(padded.len() - digits);
        Some(format!("{int_part}.{frac_part}"))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_decimal_string() {
            Some(s) => f.write_str(&s),
            None => f.write_str(&self.to_fraction_string()),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl TryFrom<BigRational> for Scalar {
    type Error = Error;

    fn try_from(value: BigRational) -> Result<Self> {
        Scalar::new(value)
    }
}

fn parse_unsigned_int(digits: &str, original: &str) -> Result<BigInt> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(original.to_string()));
    }
    digits
        .parse::<BigInt>()
        .map_err(|_| Error::Parse(original.to_string()))
}

/// Accepts decimal literals (`0.07`, `.07`, `1`) and fractions (`7/100`).
/// Decimals are read exactly, never through binary floating point.
impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        if let Some((numer, denom)) = text.split_once('/') {
            let numer = parse_unsigned_int(numer.trim(), text)?;
            let denom = parse_unsigned_int(denom.trim(), text)?;
            if denom.is_zero() {
                return Err(Error::Parse(text.to_string()));
            }
            return Scalar::new(BigRational::new(numer, denom));
        }
        if let Some(rest) = text.strip_prefix('-') {
            // Parses fine as a number, but can never be a valid scalar.
            let magnitude: Scalar = rest.parse()?;
            if magnitude.is_zero() {
                return Ok(magnitude);
            }
            return Err(Error::OutOfRange(text.to_string()));
        }
        let (int_part, frac_part) = text.split_once('.').unwrap_or((text, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(Error::Parse(text.to_string()));
        }
        let int_value = if int_part.is_empty() {
            BigInt::zero()
        } else {
            parse_unsigned_int(int_part, text)?
        };
        let value = if frac_part.is_empty() {
            if text.ends_with('.') && int_part.is_empty() {
                return Err(Error::Parse(text.to_string()));
            }
            BigRational::from_integer(int_value)
        } else {
            let frac_value = parse_unsigned_int(frac_part, text)?;
            let scale = BigInt::from(10).pow(frac_part.len() as u32);
            BigRational::new(int_value * &scale + frac_value, scale)
        };
        Scalar::new(value)
    }
}

pub fn oplus(a: &Scalar, b: &Scalar) -> Scalar {
    a.oplus(b)
}

pub fn otimes(a: &Scalar, b: &Scalar) -> Scalar {
    a.otimes(b)
}

pub fn residual(a: &Scalar, b: &Scalar) -> Scalar {
    a.residual(b)
}

/// A fixed-length vector of scalars, `d >= 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vector(Vec<Scalar>);

impl Vector {
    pub fn new(entries: Vec<Scalar>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty("vector needs at least one entry".into()));
        }
        Ok(Vector(entries))
    }

    pub fn zeros(len: usize) -> Self {
        assert!(len > 0, "vector length must be positive");
        Vector(vec![Scalar::zero(); len])
    }

    pub fn ones(len: usize) -> Self {
        assert!(len > 0, "vector length must be positive");
        Vector(vec![Scalar::one(); len])
    }

    /// The unit vector with a 1 in position `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Vector::zeros(len);
        v.0[index] = Scalar::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Scalar> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Scalar> {
        self.0
    }

    /// Componentwise `<=`; `false` on length mismatch.
    pub fn le(&self, other: &Vector) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn oplus(&self, other: &Vector) -> Result<Vector> {
        check_len(self.len(), other.len(), "oplus")?;
        Ok(Vector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.oplus(b))
                .collect(),
        ))
    }

    /// `lambda ⊗ self`, entrywise `min(lambda, x_i)`.
    pub fn scale(&self, lambda: &Scalar) -> Vector {
        Vector(self.0.iter().map(|x| x.otimes(lambda)).collect())
    }

    /// Largest entry (the max-min sum of all entries).
    pub fn sum(&self) -> Scalar {
        self.0.iter().max().cloned().unwrap_or_else(Scalar::zero)
    }

    /// Copy with `value` appended.
    pub fn pushed(&self, value: Scalar) -> Vector {
        let mut entries = self.0.clone();
        entries.push(value);
        Vector(entries)
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;

    fn index(&self, index: usize) -> &Scalar {
        &self.0[index]
    }
}

impl<'a> IntoIterator for &'a Vector {
    type Item = &'a Scalar;
    type IntoIter = std::slice::Iter<'a, Scalar>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Whitespace- or comma-separated scalars.
impl FromStr for Vector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Scalar>>>()?;
        Vector::new(entries)
    }
}

fn check_len(left: usize, right: usize, what: &str) -> Result<()> {
    if left != right {
        return Err(Error::DimensionMismatch(format!(
            "{what}: length {left} vs {right}"
        )));
    }
    Ok(())
}

/// Dense `d × n` matrix of scalars, stored row-major. Columns are the
/// generators of the associated polytope.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let nrows = rows.len();
        if nrows == 0 {
            return Err(Error::Empty("matrix needs at least one row".into()));
        }
        let ncols = rows[0].len();
        if ncols == 0 {
            return Err(Error::Empty("matrix needs at least one column".into()));
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != ncols) {
            return Err(Error::DimensionMismatch(format!(
                "row {} has {} entries, expected {ncols}",
                i + 1,
                r.len()
            )));
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_columns(columns: &[Vector]) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::Empty("matrix needs at least one column".into()));
        }
        let d = columns[0].len();
        for c in columns {
            check_len(d, c.len(), "column")?;
        }
        Ok(Matrix::from_fn(d, columns.len(), |i, j| {
            columns[j][i].clone()
        }))
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| Scalar::zero())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &Scalar> {
        self.data.iter()
    }

    /// Submatrix on the given row and column indices, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Result<Matrix> {
        if rows.is_empty() || cols.is_empty() {
            return Err(Error::Empty("submatrix needs rows and columns".into()));
        }
        if let Some(&i) = rows.iter().find(|&&i| i >= self.rows) {
            return Err(Error::DimensionMismatch(format!(
                "row index {i} out of range"
            )));
        }
        if let Some(&j) = cols.iter().find(|&&j| j >= self.cols) {
            return Err(Error::DimensionMismatch(format!(
                "column index {j} out of range"
            )));
        }
        Ok(Matrix::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        }))
    }

    pub fn select_columns(&self, cols: &[usize]) -> Result<Matrix> {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, cols)
    }

    /// Copy with one extra row appended at the bottom.
    pub fn with_row(&self, row: &Vector) -> Result<Matrix> {
        check_len(self.cols, row.len(), "appended row")?;
        let mut data = self.data.clone();
        data.extend(row.iter().cloned());
        Ok(Matrix {
            rows: self.rows + 1,
            cols: self.cols,
            data,
        })
    }

    /// Copy with one extra column appended on the right.
    pub fn with_column(&self, column: &Vector) -> Result<Matrix> {
        check_len(self.rows, column.len(), "appended column")?;
        Ok(Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                column[i].clone()
            }
        }))
    }

    /// Sorted distinct entries.
    pub fn distinct_entries(&self) -> Vec<Scalar> {
        let mut values: Vec<Scalar> = self.data.clone();
        values.sort();
        values.dedup();
        values
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(Scalar::to_string).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Rows separated by `;` or newlines, entries by whitespace or commas.
impl FromStr for Matrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows = s
            .split([';', '\n'])
            .map(str::trim)
            .filter(|r| !r.is_empty())
            .map(|r| r.parse::<Vector>().map(Vector::into_vec))
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows)
    }
}

/// `(A ⊗ x)_i = max_j min(a_ij, x_j)`.
pub fn mat_vec(a: &Matrix, x: &Vector) -> Result<Vector> {
    check_len(a.ncols(), x.len(), "matrix-vector product")?;
    Ok(Vector(
        (0..a.nrows())
            .map(|i| {
                a.row(i)
                    .iter()
                    .zip(x)
                    .map(|(aij, xj)| aij.min(xj))
                    .max()
                    .cloned()
                    .unwrap_or_else(Scalar::zero)
            })
            .collect(),
    ))
}

/// The max-min linear combination `⊕_j λ_j ⊗ A_{•j}`; same as [`mat_vec`].
pub fn linear_combination(a: &Matrix, lambda: &Vector) -> Result<Vector> {
    mat_vec(a, lambda)
}

/// `λ ⊗ A`, entrywise `min(λ, a_ij)`.
pub fn scale_matrix(lambda: &Scalar, a: &Matrix) -> Matrix {
    Matrix::from_fn(a.nrows(), a.ncols(), |i, j| a.get(i, j).otimes(lambda))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    fn example1() -> Matrix {
        ".01 .02 .03 .04; .05 .06 .07 .08; .09 .10 .11 .12"
            .parse()
            .unwrap()
    }

    #[test]
    fn oplus_examples() {
        assert_eq!(oplus(&s("0.3"), &s("0.7")), s("0.7"));
        assert_eq!(oplus(&s("0.5"), &s("0.5")), s("0.5"));
        assert_eq!(oplus(&s("0"), &s("1")), s("1"));
    }

    #[test]
    fn otimes_examples() {
        assert_eq!(otimes(&s("0.3"), &s("0.7")), s("0.3"));
        assert_eq!(otimes(&s("1"), &s("0.4")), s("0.4"));
        assert_eq!(otimes(&s("0"), &s("0.9")), s("0"));
    }

    #[test]
    fn residual_examples() {
        assert_eq!(residual(&s("0.3"), &s("0.7")), s("1"));
        assert_eq!(residual(&s("0.7"), &s("0.3")), s("0.3"));
        assert_eq!(residual(&s("0.5"), &s("0.5")), s("1"));
    }

    #[test]
    fn decimals_parse_exactly() {
        assert_eq!(s(".07"), Scalar::from_ratio(7, 100).unwrap());
        assert_eq!(s("0.10"), Scalar::from_ratio(1, 10).unwrap());
        assert_eq!(s("7/100"), s(".07"));
        assert_eq!(s("1"), Scalar::one());
        assert_eq!(s("1.000"), Scalar::one());
        assert_eq!(s("-0"), Scalar::zero());
    }

    #[test]
    fn out_of_range_is_an_error_not_a_clamp() {
        assert!(matches!(
            "1.01".parse::<Scalar>(),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!(
            "-0.2".parse::<Scalar>(),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!("3/2".parse::<Scalar>(), Err(Error::OutOfRange(_))));
        assert!(matches!("10".parse::<Scalar>(), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn malformed_literals_are_rejected() {
        for bad in [
            "", ".", "abc", "0.1.2", "1/0", "1e-2", "0x1", "1/", "/3", "0.5a",
        ] {
            assert!(bad.parse::<Scalar>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(s(".07").to_string(), "0.07");
        assert_eq!(s("1").to_string(), "1");
        assert_eq!(s("0").to_string(), "0");
        assert_eq!(s("1/3").to_string(), "1/3");
        assert_eq!(s("7/200").to_string(), "0.035");
        assert_eq!(s(".07").to_fraction_string(), "7/100");
        assert_eq!(s("1").to_fraction_string(), "1");
    }

    #[test]
    fn mat_vec_examples() {
        let a: Matrix = ".01 .02; .05 .06".parse().unwrap();
        let x: Vector = "1 1".parse().unwrap();
        assert_eq!(mat_vec(&a, &x).unwrap(), ".02 .06".parse().unwrap());

        let x: Vector = "1 .10 .07 .04".parse().unwrap();
        assert_eq!(
            mat_vec(&example1(), &x).unwrap(),
            ".04 .07 .10".parse().unwrap()
        );

        assert_eq!(
            mat_vec(&example1(), &Vector::zeros(4)).unwrap(),
            Vector::zeros(3)
        );
    }

    #[test]
    fn mat_vec_dimension_mismatch() {
        let x: Vector = "1 1".parse().unwrap();
        assert!(matches!(
            mat_vec(&example1(), &x),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn linear_combination_examples() {
        let single: Matrix = ".3; .6".parse().unwrap();
        assert_eq!(
            linear_combination(&single, &Vector::ones(1)).unwrap(),
            single.column(0)
        );
        let a = example1();
        for j in 0..4 {
            assert_eq!(
                linear_combination(&a, &Vector::unit(4, j)).unwrap(),
                a.column(j)
            );
        }
        let lambda: Vector = "1 .10 .07 .04".parse().unwrap();
        assert_eq!(
            linear_combination(&a, &lambda).unwrap(),
            ".04 .07 .10".parse().unwrap()
        );
    }

    #[test]
    fn scale_matrix_examples() {
        let a = example1();
        assert_eq!(scale_matrix(&Scalar::one(), &a), a);
        assert_eq!(scale_matrix(&Scalar::zero(), &a), Matrix::zeros(3, 4));
        let capped = scale_matrix(&s(".05"), &a);
        let expected: Matrix = ".01 .02 .03 .04; .05 .05 .05 .05; .05 .05 .05 .05"
            .parse()
            .unwrap();
        assert_eq!(capped, expected);
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(".1 .2; .3".parse::<Matrix>().is_err());
        assert!("".parse::<Matrix>().is_err());
    }
}
