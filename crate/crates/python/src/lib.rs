//! Python bindings for the `matroid_hopf` library.

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use matroid_hopf::characters;
use matroid_hopf::dendriform;
use matroid_hopf::expr::parse_expr;
use matroid_hopf::hopf;
use matroid_hopf::io;
use matroid_hopf::verify;
use matroid_hopf::{canonical_key, is_isomorphic, CoproductMode, Error, SubsetMask, TensorElement};

create_exception!(matroid_hopf_py, MatroidError, PyException);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Parse(_) => PyValueError::new_err(e.to_string()),
        other => MatroidError::new_err(other.to_string()),
    }
}

fn mode_of(text: &str) -> PyResult<CoproductMode> {
    text.parse().map_err(to_py)
}

fn mask_of(m: &matroid_hopf::Matroid, elements: Vec<usize>) -> PyResult<SubsetMask> {
    if let Some(&bad) = elements.iter().find(|&&e| e >= m.n()) {
        return Err(to_py(Error::BadElement { element: bad, n: m.n() }));
    }
    Ok(SubsetMask::from_elements(elements))
}

type Terms = Vec<(BigInt, Vec<String>)>;

fn tensor_terms(t: &TensorElement) -> Terms {
    t.terms()
        .map(|(legs, c)| (c.clone(), legs.iter().map(ToString::to_string).collect()))
        .collect()
}

/// A matroid on the ground set `0..n`, given by its independent sets.
#[pyclass(name = "Matroid", module = "matroid_hopf_py", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyMatroid {
    inner: matroid_hopf::Matroid,
}

#[pymethods]
impl PyMatroid {
    #[new]
    fn new(n: usize, independent: Vec<Vec<usize>>) -> PyResult<Self> {
        let record = io::MatroidRecord { n, independent };
        Ok(PyMatroid {
            inner: record.to_matroid().map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn uniform(rank: i64, n: usize) -> PyResult<Self> {
        Ok(matroid_hopf::Matroid::uniform(rank, n).map_err(to_py)?.into())
    }

    #[staticmethod]
    fn graphic(vertices: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(matroid_hopf::Matroid::graphic(vertices, &edges).map_err(to_py)?.into())
    }

    /// Parses a constructor expression such as `"dsum(uniform(1,2), uniform(1,3))"`.
    #[staticmethod]
    fn parse(expr: &str) -> PyResult<Self> {
        Ok(parse_expr(expr).map_err(to_py)?.into())
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(io::parse_matroid(text).map_err(to_py)?.into())
    }

    fn to_json(&self) -> String {
        io::to_json(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[pyo3(signature = (subset = None))]
    fn rank(&self, subset: Option<Vec<usize>>) -> PyResult<usize> {
        match subset {
            None => Ok(self.inner.matroid_rank()),
            Some(elements) => Ok(self.inner.rank(mask_of(&self.inner, elements)?)),
        }
    }

    fn independent_sets(&self) -> Vec<Vec<usize>> {
        self.inner.independents().iter().map(|s| s.elements().collect()).collect()
    }

    fn bases(&self) -> Vec<Vec<usize>> {
        self.inner.bases().iter().map(|s| s.elements().collect()).collect()
    }

    fn restriction(&self, subset: Vec<usize>) -> PyResult<Self> {
        Ok(self.inner.restriction(mask_of(&self.inner, subset)?).into())
    }

    fn deletion(&self, subset: Vec<usize>) -> PyResult<Self> {
        Ok(self.inner.deletion(mask_of(&self.inner, subset)?).into())
    }

    fn contraction(&self, subset: Vec<usize>) -> PyResult<Self> {
        Ok(self.inner.contraction(mask_of(&self.inner, subset)?).into())
    }

    fn direct_sum(&self, other: &PyMatroid) -> Self {
        self.inner.direct_sum(&other.inner).into()
    }

    fn dual(&self) -> Self {
        self.inner.dual().into()
    }

    /// Rendering of the isomorphism class, e.g. `U_{2,4}`.
    fn iso_class(&self) -> PyResult<String> {
        Ok(canonical_key(&self.inner).map_err(to_py)?.to_string())
    }

    fn is_isomorphic(&self, other: &PyMatroid) -> PyResult<bool> {
        is_isomorphic(&self.inner, &other.inner).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("Matroid{}", self.inner)
    }
}

impl From<matroid_hopf::Matroid> for PyMatroid {
    fn from(inner: matroid_hopf::Matroid) -> Self {
        PyMatroid { inner }
    }
}

#[pyfunction]
#[pyo3(signature = (m, mode = "rd"))]
fn coproduct(m: &PyMatroid, mode: &str) -> PyResult<String> {
    Ok(hopf::coproduct(mode_of(mode)?, &m.inner).map_err(to_py)?.to_string())
}

/// Coproduct as a list of `(coefficient, [left, right])` pairs.
#[pyfunction]
#[pyo3(signature = (m, mode = "rd"))]
fn coproduct_terms(m: &PyMatroid, mode: &str) -> PyResult<Terms> {
    Ok(tensor_terms(&hopf::coproduct(mode_of(mode)?, &m.inner).map_err(to_py)?))
}

#[pyfunction]
fn antipode(m: &PyMatroid) -> PyResult<String> {
    Ok(hopf::antipode_of_matroid(&m.inner).map_err(to_py)?.to_string())
}

#[pyfunction]
#[pyo3(signature = (m, mode = "rd"))]
fn split(m: &PyMatroid, mode: &str) -> PyResult<(String, String)> {
    let pair = dendriform::split(mode_of(mode)?, &m.inner).map_err(to_py)?;
    Ok((pair.prec.to_string(), pair.succ.to_string()))
}

#[pyfunction]
#[pyo3(signature = (m, mode = "rd"))]
fn dendriform_check(m: &PyMatroid, mode: &str) -> PyResult<(bool, bool, bool)> {
    let report = dendriform::check_dendriform_axioms(mode_of(mode)?, &m.inner).map_err(to_py)?;
    Ok((report.first, report.second, report.third))
}

#[pyfunction]
fn codendriform_gap(m: &PyMatroid, n: &PyMatroid) -> PyResult<String> {
    Ok(dendriform::codendriform_gap(&m.inner, &n.inner).map_err(to_py)?.to_string())
}

#[pyfunction]
fn poly(m: &PyMatroid) -> String {
    characters::poly_p(&m.inner).to_string()
}

#[pyfunction]
fn alpha(m: &PyMatroid) -> PyResult<String> {
    Ok(characters::alpha(&m.inner).map_err(to_py)?.to_string())
}

/// Runs the identity suites; one dict per suite.
#[pyfunction]
#[pyo3(signature = (max_n = 3))]
fn run_verify(py: Python<'_>, max_n: usize) -> PyResult<Vec<Bound<'_, PyDict>>> {
    let results = py.detach(|| verify::run_all(max_n, None)).map_err(to_py)?;
    results
        .into_iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("suite", &r.name)?;
            d.set_item("checked", r.checked)?;
            d.set_item("failed", r.failed)?;
            d.set_item("passed", r.passed())?;
            d.set_item("examples", &r.examples)?;
            Ok(d)
        })
        .collect()
}

#[pymodule]
fn matroid_hopf_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMatroid>()?;
    m.add("MatroidError", m.py().get_type::<MatroidError>())?;
    m.add_function(wrap_pyfunction!(coproduct, m)?)?;
    m.add_function(wrap_pyfunction!(coproduct_terms, m)?)?;
    m.add_function(wrap_pyfunction!(antipode, m)?)?;
    m.add_function(wrap_pyfunction!(split, m)?)?;
    m.add_function(wrap_pyfunction!(dendriform_check, m)?)?;
    m.add_function(wrap_pyfunction!(codendriform_gap, m)?)?;
    m.add_function(wrap_pyfunction!(poly, m)?)?;
    m.add_function(wrap_pyfunction!(alpha, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    Ok(())
}
