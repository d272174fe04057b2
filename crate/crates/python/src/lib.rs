//! Python bindings for `frobmod_core`.

// pyo3 0.22 macros expand `?` in a way clippy flags on every PyResult method.
#![allow(clippy::useless_conversion)]

use std::sync::Arc;

use frobmod_core::arith::{GaloisField, PolyRing, Ring, RingDescriptor, RingScalar};
use frobmod_core::io::{parse_document, AnyDocument, Document};
use frobmod_core::stable::{self, Subspace};
use frobmod_core::{certify as cert, frobmod as fm, matrix, submodule, with_document, Config, Error};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(frobmod, FrobmodError, PyValueError);

fn err(e: Error) -> PyErr {
    FrobmodError::new_err(format!("{}: {e}", e.code()))
}

fn literal(obj: &Bound<'_, PyAny>) -> PyResult<String> {
    Ok(obj.str()?.to_string())
}

/// An element of one of the supported rings.
#[pyclass(name = "Scalar", module = "frobmod")]
#[derive(Clone)]
struct PyScalar(RingScalar);

#[pymethods]
impl PyScalar {
    /// `Scalar(p, ring, literal)`, e.g. `Scalar(3, "poly", "x^2+1")`.
    #[new]
    fn new(p: u64, ring: &str, value: &Bound<'_, PyAny>) -> PyResult<Self> {
        let ring = RingDescriptor::parse(p, ring).map_err(err)?;
        RingScalar::parse(Arc::new(ring), &literal(value)?).map(PyScalar).map_err(err)
    }

    /// Parses `value` in the same ring as this element.
    fn like(&self, value: &Bound<'_, PyAny>) -> PyResult<Self> {
        RingScalar::parse(self.0.ring().clone(), &literal(value)?).map(PyScalar).map_err(err)
    }

    #[getter]
    fn ring(&self) -> String {
        self.0.descriptor().to_string()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    #[pyo3(signature = (e=1))]
    fn frobenius(&self, e: u32) -> Self {
        PyScalar(self.0.frobenius_power(e))
    }

    #[pyo3(signature = (e=1))]
    fn root(&self, e: u32) -> PyResult<Self> {
        self.0.p_th_root(e).map(PyScalar).map_err(err)
    }

    fn inverse(&self) -> PyResult<Self> {
        self.0.inv().map(PyScalar).map_err(err)
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.0.add(&other.0).map(PyScalar).map_err(err)
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        self.0.sub(&other.0).map(PyScalar).map_err(err)
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.0.mul(&other.0).map(PyScalar).map_err(err)
    }

    fn __truediv__(&self, other: &Self) -> PyResult<Self> {
        self.0.div(&other.0).map(PyScalar).map_err(err)
    }

    fn __neg__(&self) -> Self {
        PyScalar(self.0.neg())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.render()
    }

    fn __repr__(&self) -> String {
        format!("Scalar({:?} in {})", self.0.render(), self.0.descriptor())
    }
}

/// A Frobenius module `F(v) = A v^[p^e]` of rank `n`.
#[pyclass(name = "Module", module = "frobmod")]
#[derive(Clone)]
struct PyModule_(AnyDocument);

type Rows = Vec<Vec<String>>;

fn vectors<R: Ring>(ring: &R, vs: &[Vec<R::Elem>]) -> Rows {
    vs.iter().map(|v| v.iter().map(|x| ring.render(x)).collect()).collect()
}

impl PyModule_ {
    fn finite(&self) -> PyResult<&Document<GaloisField>> {
        match &self.0 {
            AnyDocument::Galois(d) => Ok(d),
            other => Err(err(Error::UnsupportedRing(format!(
                "this operation needs a finite field, got {}",
                other.descriptor()
            )))),
        }
    }

    fn poly(&self) -> PyResult<&Document<PolyRing>> {
        match &self.0 {
            AnyDocument::Poly(d) => Ok(d),
            other => Err(err(Error::UnsupportedRing(format!("roots need F_p[x], got {}", other.descriptor())))),
        }
    }

    fn parse_vectors<R: Ring>(ring: &R, n: usize, vs: &[Vec<Bound<'_, PyAny>>]) -> PyResult<Vec<Vec<R::Elem>>> {
        vs.iter()
            .map(|v| {
                if v.len() != n {
                    return Err(err(Error::DimensionMismatch { expected: n, got: v.len() }));
                }
                v.iter().map(|x| ring.parse(&literal(x)?).map_err(err)).collect()
            })
            .collect()
    }
}

#[pymethods]
impl PyModule_ {
    /// `Module(p, ring, matrix, e=1)` with `matrix` a list of rows of literals.
    #[new]
    #[pyo3(signature = (p, ring, matrix, e=1))]
    fn new(p: u64, ring: &str, matrix: Vec<Vec<Bound<'_, PyAny>>>, e: u32) -> PyResult<Self> {
        let n = matrix.len();
        if matrix.iter().any(|row| row.len() != n) {
            return Err(err(Error::Validation("structure matrix must be square".into())));
        }
        let entries = matrix
            .iter()
            .flatten()
            .map(literal)
            .collect::<PyResult<Vec<_>>>()?
            .join(", ");
        let text = format!("p = {p}\ne = {e}\nring = {ring}\nn = {n}\nmatrix = {entries}\n");
        parse_document(&text).map(PyModule_).map_err(err)
    }

    /// Parses the text module description format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_document(text).map(PyModule_).map_err(err)
    }

    fn to_text(&self) -> String {
        self.0.emit()
    }

    #[getter]
    fn ring(&self) -> String {
        self.0.descriptor().to_string()
    }

    #[getter]
    fn n(&self) -> usize {
        with_document!(&self.0, d => d.module.n())
    }

    #[getter]
    fn e(&self) -> u32 {
        with_document!(&self.0, d => d.module.e())
    }

    /// Entries of `A_r`, the matrix of `F^r`.
    #[pyo3(signature = (r=1))]
    fn power_matrix(&self, r: u32) -> PyResult<Rows> {
        with_document!(&self.0, d => {
            let ar = d.module.power_matrix(r).map_err(err)?.matrix;
            Ok(matrix::render_entries(d.module.ring(), &ar))
        })
    }

    /// `F^r` applied to a vector of literals.
    #[pyo3(signature = (v, r=1))]
    fn apply(&self, v: Vec<Bound<'_, PyAny>>, r: u32) -> PyResult<Vec<String>> {
        with_document!(&self.0, d => {
            let ring = d.module.ring();
            let v = Self::parse_vectors(ring, d.module.n(), &[v])?.remove(0);
            let w = d.module.apply(&v, r).map_err(err)?;
            Ok(w.iter().map(|x| ring.render(x)).collect())
        })
    }

    fn determinant(&self) -> String {
        with_document!(&self.0, d => d.module.ring().render(&d.module.determinant()))
    }

    fn is_unit(&self) -> bool {
        with_document!(&self.0, d => d.module.is_unit())
    }

    /// The module viewed through `F^r`.
    fn compose_twist(&self, r: u32) -> PyResult<Self> {
        let twist = |doc: &AnyDocument| -> frobmod_core::Result<AnyDocument> {
            Ok(match doc {
                AnyDocument::Galois(d) => AnyDocument::Galois(Document::new(d.module.compose_twist(r)?)),
                AnyDocument::Poly(d) => AnyDocument::Poly(Document::new(d.module.compose_twist(r)?)),
                AnyDocument::RatFunc(d) => AnyDocument::RatFunc(Document::new(d.module.compose_twist(r)?)),
                AnyDocument::Perfect(d) => AnyDocument::Perfect(Document::new(d.module.compose_twist(r)?)),
                AnyDocument::Quotient(d) => AnyDocument::Quotient(Document::new(d.module.compose_twist(r)?)),
            })
        };
        twist(&self.0).map(PyModule_).map_err(err)
    }

    /// Scalar extension of a finite-field module to `F_(p^(m*s))`.
    fn extend(&self, s: usize) -> PyResult<Self> {
        let d = self.finite()?;
        let field = d.module.ring().extension(s).map_err(err)?;
        let m = d.module.extend_scalars(&field).map_err(err)?;
        Ok(PyModule_(AnyDocument::Galois(Document::new(m))))
    }

    #[pyo3(signature = (r=1))]
    fn is_simple(&self, r: u32) -> PyResult<bool> {
        stable::is_simple(&self.finite()?.module, r, &Config::default()).map_err(err)
    }

    /// Every `F^r`-stable subspace, as lists of echelon basis vectors.
    #[pyo3(signature = (r=1))]
    fn stable_subspaces(&self, r: u32) -> PyResult<Vec<Rows>> {
        let d = self.finite()?;
        let list = stable::enumerate_stable_subspaces(&d.module, r, &Config::default()).map_err(err)?;
        Ok(list.iter().map(|w| w.render(d.module.ring())).collect())
    }

    #[pyo3(signature = (r=1))]
    fn length(&self, r: u32) -> PyResult<usize> {
        stable::length_by_charpoly(&self.finite()?.module, r).map_err(err)
    }

    /// `(length, s)` with `s` the least extension degree reaching length `n`.
    #[pyo3(signature = (s_max=12))]
    fn geometric_length(&self, s_max: u32) -> PyResult<(usize, u32)> {
        let cfg = Config { s_max, ..Config::default() };
        let g = stable::geometric_length(&self.finite()?.module, &cfg).map_err(err)?;
        Ok((g.length, g.s))
    }

    #[pyo3(signature = (r=1))]
    fn fixed_points<'py>(&self, py: Python<'py>, r: u32) -> PyResult<Bound<'py, PyDict>> {
        let d = self.finite()?;
        let fs = stable::fixed_points(&d.module, r).map_err(err)?;
        let out = PyDict::new_bound(py);
        out.set_item("count", fs.count)?;
        out.set_item("subfield_degree", fs.subfield_degree)?;
        out.set_item("basis", vectors(d.module.ring(), &fs.fp_basis))?;
        Ok(out)
    }

    /// Preimage under `F^r` of the span of `vectors`.
    #[pyo3(signature = (vectors, r=1))]
    fn descent(&self, vectors: Vec<Vec<Bound<'_, PyAny>>>, r: u32) -> PyResult<Rows> {
        let d = self.finite()?;
        let field = d.module.ring();
        let vs = Self::parse_vectors(field, d.module.n(), &vectors)?;
        let target = Subspace::span(field, d.module.n(), &vs).map_err(err)?;
        let pre = stable::descent_preimage(&d.module, &target, r).map_err(err)?;
        Ok(pre.render(field))
    }

    /// Root generated by `generators` over `F_p[x]`.
    fn root<'py>(&self, py: Python<'py>, generators: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Bound<'py, PyDict>> {
        let d = self.poly()?;
        let gens = Self::parse_vectors(d.module.ring(), d.module.n(), &generators)?;
        let report = submodule::root_from_generators(&d.module, &gens, &Config::default()).map_err(err)?;
        let out = PyDict::new_bound(py);
        out.set_item("m_used", report.m_used)?;
        out.set_item("verified", report.verified)?;
        out.set_item("chain_steps", report.chain_steps)?;
        out.set_item("columns", report.root.render())?;
        Ok(out)
    }

    fn __repr__(&self) -> String {
        with_document!(&self.0, d => format!(
            "Module(n={}, e={}, ring={}, matrix=[{}])",
            d.module.n(),
            d.module.e(),
            d.module.ring().descriptor(),
            d.module.render_matrix()
        ))
    }
}

/// `a_r` for `A = [[0, 1], [1, x]]`.
#[pyfunction]
#[pyo3(signature = (p, r, e=1))]
fn coefficient_sequence(p: u64, r: i64, e: u32) -> PyResult<String> {
    fm::coefficient_sequence(p, e, r).map(|a| a.render("x")).map_err(err)
}

/// Simplicity certificates for `r = 1..=r_max`.
#[pyfunction]
#[pyo3(signature = (p, r_max, e=1))]
fn certify<'py>(py: Python<'py>, p: u64, r_max: u32, e: u32) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let certs = cert::simplicity_certificate(p, e, r_max).map_err(err)?;
    certs
        .iter()
        .map(|c| {
            let out = PyDict::new_bound(py);
            out.set_item("r", c.r)?;
            out.set_item("verdict", c.verdict)?;
            out.set_item("s_r", c.s_r.render("x"))?;
            out.set_item("t_r", c.t_r.render("x"))?;
            out.set_item("transcript", c.transcript())?;
            Ok(out)
        })
        .collect()
}

#[pyfunction]
fn adjoined_root_check<'py>(py: Python<'py>, p: u64) -> PyResult<Bound<'py, PyDict>> {
    let rep = cert::adjoined_root_check(p).map_err(err)?;
    let out = PyDict::new_bound(py);
    out.set_item("modulus", &rep.modulus)?;
    out.set_item("fixed", rep.fixed)?;
    out.set_item("basis_vector_fixed", rep.basis_vector_fixed)?;
    out.set_item("not_simple", rep.not_simple)?;
    out.set_item("passed", rep.passed())?;
    Ok(out)
}

#[pymodule]
fn frobmod(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyScalar>()?;
    m.add_class::<PyModule_>()?;
    m.add_function(wrap_pyfunction!(coefficient_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(adjoined_root_check, m)?)?;
    m.add("FrobmodError", m.py().get_type_bound::<FrobmodError>())?;
    Ok(())
}
