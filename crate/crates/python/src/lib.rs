//! Python bindings. Scalars go in as `str`, `int`, `fractions.Fraction` or
//! `float` (read through its shortest decimal repr, so `0.07` is exactly
//! 7/100) and always come back as `fractions.Fraction`. Indices are 0-based.

use std::collections::BTreeMap;

use maxmin::{Error, Scalar, Vector};
use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyFloat, PyString};

fn value_error(err: Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn to_scalar(obj: &Bound<'_, PyAny>) -> PyResult<Scalar> {
    if let Ok(text) = obj.cast::<PyString>() {
        return text.to_str()?.parse().map_err(value_error);
    }
    if obj.is_instance_of::<PyFloat>() {
        return obj.repr()?.to_str()?.parse().map_err(value_error);
    }
    let ratio: num_rational::Ratio<BigInt> = obj.extract()?;
    Scalar::new(ratio).map_err(value_error)
}

fn to_vector(values: &Bound<'_, PyAny>) -> PyResult<Vector> {
    let scalars = values
        .try_iter()?
        .map(|v| to_scalar(&v?))
        .collect::<PyResult<Vec<_>>>()?;
    Vector::new(scalars).map_err(value_error)
}

fn ratios(v: &Vector) -> Vec<BigRational> {
    v.iter().map(|s| s.as_ratio().clone()).collect()
}

/// Exact matrix with entries in `[0, 1]`.
#[pyclass(name = "Matrix", module = "pymaxmin", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyMatrix {
    inner: maxmin::Matrix,
}

#[pymethods]
impl PyMatrix {
    /// Builds a matrix from a sequence of rows.
    #[new]
    fn new(rows: &Bound<'_, PyAny>) -> PyResult<Self> {
        let rows = rows
            .try_iter()?
            .map(|row| Ok(to_vector(&row?)?.into_vec()))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyMatrix {
            inner: maxmin::Matrix::from_rows(rows).map_err(value_error)?,
        })
    }

    /// Parses rows separated by `;` or newlines.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyMatrix {
            inner: text.parse().map_err(value_error)?,
        })
    }

    #[getter]
    fn shape(&self) -> (usize, usize) {
        self.inner.shape()
    }

    fn rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.inner.nrows())
            .map(|i| {
                self.inner
                    .row(i)
                    .iter()
                    .map(|s| s.as_ratio().clone())
                    .collect()
            })
            .collect()
    }

    fn column(&self, j: usize) -> PyResult<Vec<BigRational>> {
        if j >= self.inner.ncols() {
            return Err(PyValueError::new_err(format!("column {j} out of range")));
        }
        Ok(ratios(&self.inner.column(j)))
    }

    fn __repr__(&self) -> String {
        let rows: Vec<String> = (0..self.inner.nrows())
            .map(|i| {
                self.inner
                    .row(i)
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        format!("Matrix(\"{}\")", rows.join("; "))
    }
}

/// Omitted column, row-to-column bijection and coefficients.
#[pyclass(
    name = "Certificate",
    module = "pymaxmin",
    get_all,
    set_all,
    skip_from_py_object
)]
#[derive(Clone)]
struct PyCertificate {
    omitted_column: Option<usize>,
    pi: Vec<usize>,
    lambdas: BTreeMap<usize, BigRational>,
}

impl PyCertificate {
    fn from_inner(c: &maxmin::Certificate) -> Self {
        PyCertificate {
            omitted_column: c.omitted_column,
            pi: c.pi.clone(),
            lambdas: c
                .lambdas
                .iter()
                .map(|(&k, v)| (k, v.as_ratio().clone()))
                .collect(),
        }
    }

    fn to_inner(&self) -> PyResult<maxmin::Certificate> {
        let lambdas = self
            .lambdas
            .iter()
            .map(|(&k, v)| Ok((k, Scalar::new(v.clone()).map_err(value_error)?)))
            .collect::<PyResult<_>>()?;
        Ok(maxmin::Certificate {
            omitted_column: self.omitted_column,
            pi: self.pi.clone(),
            lambdas,
        })
    }
}

#[pymethods]
impl PyCertificate {
    #[new]
    #[pyo3(signature = (omitted_column, pi, lambdas))]
    fn new(
        omitted_column: Option<usize>,
        pi: Vec<usize>,
        lambdas: BTreeMap<usize, Bound<'_, PyAny>>,
    ) -> PyResult<Self> {
        let lambdas = lambdas
            .iter()
            .map(|(&k, v)| Ok((k, to_scalar(v)?.into_ratio())))
            .collect::<PyResult<_>>()?;
        Ok(PyCertificate {
            omitted_column,
            pi,
            lambdas,
        })
    }

    fn __repr__(&self) -> String {
        let lambdas: Vec<String> = self
            .lambdas
            .iter()
            .map(|(k, v)| format!("{k}: {v}"))
            .collect();
        format!(
            "Certificate(omitted_column={:?}, pi={:?}, lambdas={{{}}})",
            self.omitted_column,
            self.pi,
            lambdas.join(", ")
        )
    }
}

/// Strongly regular `k × (k+1)` submatrix realizing the rank.
#[pyclass(name = "RankWitness", module = "pymaxmin", frozen, get_all)]
struct PyRankWitness {
    rank: usize,
    rows: Vec<usize>,
    cols: Vec<usize>,
    /// Certificate in the submatrix's own indexing.
    certificate: PyCertificate,
    row_perm: Vec<usize>,
    col_perm: Vec<usize>,
}

#[pyfunction]
fn oplus(a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>) -> PyResult<BigRational> {
    Ok(maxmin::oplus(&to_scalar(a)?, &to_scalar(b)?).into_ratio())
}

#[pyfunction]
fn otimes(a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>) -> PyResult<BigRational> {
    Ok(maxmin::otimes(&to_scalar(a)?, &to_scalar(b)?).into_ratio())
}

#[pyfunction]
fn residual(a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>) -> PyResult<BigRational> {
    Ok(maxmin::residual(&to_scalar(a)?, &to_scalar(b)?).into_ratio())
}

#[pyfunction]
fn mat_vec(a: &PyMatrix, x: &Bound<'_, PyAny>) -> PyResult<Vec<BigRational>> {
    Ok(ratios(
        &maxmin::mat_vec(&a.inner, &to_vector(x)?).map_err(value_error)?,
    ))
}

#[pyfunction]
fn homogenize(a: &PyMatrix) -> PyMatrix {
    PyMatrix {
        inner: maxmin::homogenize(&a.inner),
    }
}

/// `(member, witness or None, failing row or None)`.
type Membership = (bool, Option<Vec<BigRational>>, Option<usize>);

fn membership(r: maxmin::MembershipResult) -> Membership {
    (r.member, r.witness.as_ref().map(ratios), r.failing_row)
}

#[pyfunction]
fn span_membership(a: &PyMatrix, x: &Bound<'_, PyAny>) -> PyResult<Membership> {
    Ok(membership(
        maxmin::span_membership(&a.inner, &to_vector(x)?).map_err(value_error)?,
    ))
}

#[pyfunction]
fn hull_membership(a: &PyMatrix, x: &Bound<'_, PyAny>) -> PyResult<Membership> {
    Ok(membership(
        maxmin::hull_membership(&a.inner, &to_vector(x)?).map_err(value_error)?,
    ))
}

/// Membership grid indexed `[j][i]` for the point `(i / res, j / res)`.
#[pyfunction]
fn hull_raster_2d(py: Python<'_>, a: &PyMatrix, resolution: usize) -> PyResult<Vec<Vec<bool>>> {
    let raster = py
        .detach(|| maxmin::hull_raster_2d(&a.inner, resolution))
        .map_err(value_error)?;
    Ok((0..=resolution)
        .map(|j| (0..=resolution).map(|i| raster.get(i, j)).collect())
        .collect())
}

/// `(comparable, junction, pieces)`.
type Decomposition<'py> = (bool, Option<Vec<BigRational>>, Vec<Bound<'py, PyDict>>);

/// Pieces of `[x, y]` as dicts with keys `beta`, `start`, `end`,
/// `active`, `low`, `high`, plus the junction for incomparable endpoints.
#[pyfunction]
fn decompose<'py>(
    py: Python<'py>,
    x: &Bound<'py, PyAny>,
    y: &Bound<'py, PyAny>,
) -> PyResult<Decomposition<'py>> {
    let dec = maxmin::decompose(&to_vector(x)?, &to_vector(y)?).map_err(value_error)?;
    let pieces = dec
        .pieces
        .iter()
        .map(|p| {
            let d = PyDict::new(py);
            d.set_item(
                "beta",
                (
                    p.beta_interval.0.as_ratio().clone(),
                    p.beta_interval.1.as_ratio().clone(),
                ),
            )?;
            d.set_item("start", ratios(&p.start))?;
            d.set_item("end", ratios(&p.end))?;
            d.set_item("active", p.active.clone())?;
            d.set_item("low", p.low.clone())?;
            d.set_item("high", p.high.clone())?;
            Ok(d)
        })
        .collect::<PyResult<Vec<_>>>()?;
    Ok((dec.comparable, dec.junction.as_ref().map(ratios), pieces))
}

#[pyfunction]
fn segment_point(
    x: &Bound<'_, PyAny>,
    y: &Bound<'_, PyAny>,
    beta: &Bound<'_, PyAny>,
) -> PyResult<Vec<BigRational>> {
    let z = maxmin::segment_point(&to_vector(x)?, &to_vector(y)?, &to_scalar(beta)?)
        .map_err(value_error)?;
    Ok(ratios(&z))
}

#[pyfunction]
fn is_ordinary(y: &Bound<'_, PyAny>, u: &Bound<'_, PyAny>) -> PyResult<bool> {
    maxmin::is_ordinary(&to_vector(y)?, &to_vector(u)?).map_err(value_error)
}

#[pyfunction]
fn verify_certificate(a: &PyMatrix, certificate: &PyCertificate) -> PyResult<bool> {
    maxmin::verify_certificate(&a.inner, &certificate.to_inner()?).map_err(value_error)
}

#[pyfunction]
fn normalize_certificate(a: &PyMatrix, certificate: &PyCertificate) -> PyResult<PyCertificate> {
    let c =
        maxmin::normalize_certificate(&a.inner, &certificate.to_inner()?).map_err(value_error)?;
    Ok(PyCertificate::from_inner(&c))
}

#[pyfunction]
fn is_trapezoidal(a: &PyMatrix) -> PyResult<bool> {
    maxmin::is_trapezoidal(&a.inner).map_err(value_error)
}

#[pyfunction]
fn trapezoidalize(a: &PyMatrix) -> PyResult<Option<(Vec<usize>, Vec<usize>)>> {
    maxmin::trapezoidalize(&a.inner).map_err(value_error)
}

#[pyfunction]
fn is_strongly_regular(a: &PyMatrix) -> PyResult<Option<PyCertificate>> {
    Ok(maxmin::is_strongly_regular(&a.inner)
        .map_err(value_error)?
        .as_ref()
        .map(PyCertificate::from_inner))
}

#[pyfunction]
fn rank(py: Python<'_>, a: &PyMatrix) -> PyRankWitness {
    let w = py.detach(|| maxmin::rank(&a.inner));
    PyRankWitness {
        rank: w.rank,
        certificate: PyCertificate::from_inner(&w.certificate),
        rows: w.rows,
        cols: w.cols,
        row_perm: w.row_perm,
        col_perm: w.col_perm,
    }
}

#[pyfunction]
fn square_rank(py: Python<'_>, a: &PyMatrix) -> usize {
    py.detach(|| maxmin::square_rank(&a.inner))
}

#[pyfunction]
fn dimension(py: Python<'_>, a: &PyMatrix) -> usize {
    py.detach(|| maxmin::dimension(&a.inner))
}

#[pyfunction]
fn chain_condition(a: &PyMatrix) -> bool {
    maxmin::chain_condition(&a.inner)
}

/// `(principal, solves, unique, unique_normalized, cover_sets)`.
type Solution = (Vec<BigRational>, bool, bool, bool, Vec<Vec<usize>>);

#[pyfunction]
fn solve(a: &PyMatrix, b: &Bound<'_, PyAny>) -> PyResult<Solution> {
    let r = maxmin::solve(&a.inner, &to_vector(b)?).map_err(value_error)?;
    Ok((
        ratios(&r.principal),
        r.solves,
        r.unique_plain,
        r.unique_normalized,
        r.cover_sets,
    ))
}

/// `(b, x)` with `x` the unique normalized solution of `A ⊗ x = b`.
#[pyfunction]
fn build_unique_system(
    a: &PyMatrix,
    certificate: &PyCertificate,
) -> PyResult<(Vec<BigRational>, Vec<BigRational>)> {
    let (b, x) =
        maxmin::build_unique_system(&a.inner, &certificate.to_inner()?).map_err(value_error)?;
    Ok((ratios(&b), ratios(&x)))
}

/// `(center, blocks, epsilon)` of the quasibox built from the rank witness.
#[pyfunction]
fn quasibox(a: &PyMatrix) -> PyResult<(Vec<BigRational>, Vec<Vec<usize>>, BigRational)> {
    let w = maxmin::rank(&a.inner);
    let (b, _) = maxmin::quasibox_from_certificate(&a.inner, &w).map_err(value_error)?;
    Ok((
        ratios(b.center()),
        b.blocks().to_vec(),
        b.epsilon().as_ratio().clone(),
    ))
}

#[pyfunction]
fn dimension_lower_bound(py: Python<'_>, a: &PyMatrix, grid_denominator: usize) -> PyResult<usize> {
    py.detach(|| maxmin::dimension_lower_bound(&a.inner, grid_denominator))
        .map_err(value_error)
}

#[pymodule]
fn pymaxmin(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMatrix>()?;
    m.add_class::<PyCertificate>()?;
    m.add_class::<PyRankWitness>()?;
    m.add_function(wrap_pyfunction!(oplus, m)?)?;
    m.add_function(wrap_pyfunction!(otimes, m)?)?;
    m.add_function(wrap_pyfunction!(residual, m)?)?;
    m.add_function(wrap_pyfunction!(mat_vec, m)?)?;
    m.add_function(wrap_pyfunction!(homogenize, m)?)?;
    m.add_function(wrap_pyfunction!(span_membership, m)?)?;
    m.add_function(wrap_pyfunction!(hull_membership, m)?)?;
    m.add_function(wrap_pyfunction!(hull_raster_2d, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(segment_point, m)?)?;
    m.add_function(wrap_pyfunction!(is_ordinary, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(normalize_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(is_trapezoidal, m)?)?;
    m.add_function(wrap_pyfunction!(trapezoidalize, m)?)?;
    m.add_function(wrap_pyfunction!(is_strongly_regular, m)?)?;
    m.add_function(wrap_pyfunction!(rank, m)?)?;
    m.add_function(wrap_pyfunction!(square_rank, m)?)?;
    m.add_function(wrap_pyfunction!(dimension, m)?)?;
    m.add_function(wrap_pyfunction!(chain_condition, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(build_unique_system, m)?)?;
    m.add_function(wrap_pyfunction!(quasibox, m)?)?;
    m.add_function(wrap_pyfunction!(dimension_lower_bound, m)?)?;
    Ok(())
}
