//! Python bindings. Matrices are built from rows of strings or integers;
//! structured results come back as the same dictionaries the CLI emits.

use jcfrob::cli::{self, io};
use jcfrob::frobenius::{fine_frobenius, normalize};
use jcfrob::jordan_chevalley::{complete_jc, jc_decompose_newton};
use jcfrob::matrix::GroundMatrix;
use jcfrob::series::{apply_series, complete_jc_of_image, in_omega_hat, SeriesOptions, SeriesSpec};
use jcfrob::{AbsValue, Error, Field, Matrix, Polynomial, Scalar};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::{json, Value};

create_exception!(pyjcfrob, JcfrobError, PyValueError);

fn err(e: Error) -> PyErr {
    JcfrobError::new_err(format!("{}: {}", e.code(), e))
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn scalar_text(obj: &Bound<'_, PyAny>) -> PyResult<String> {
    Ok(obj.str()?.to_string())
}

fn series(function: &str, coefficients: Option<Vec<String>>, radius: Option<String>) -> Result<SeriesSpec, Error> {
    match coefficients {
        Some(c) => cli::parse_custom_series(&json!({"coefficients": c, "radius": radius})),
        None => SeriesSpec::parse_name(function),
    }
}

/// Square matrix over ℚ (`"Q"`) or 𝔽_p (`"Fp:<p>"`).
#[pyclass(name = "Matrix", module = "pyjcfrob", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyMatrix {
    inner: GroundMatrix,
}

fn wrap(inner: GroundMatrix) -> PyMatrix {
    PyMatrix { inner }
}

#[pymethods]
impl PyMatrix {
    #[new]
    #[pyo3(signature = (rows, field = "Q"))]
    fn new(rows: Vec<Vec<Bound<'_, PyAny>>>, field: &str) -> PyResult<Self> {
        let field = Field::parse(field).map_err(err)?;
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| Scalar::parse(field, &scalar_text(x)?).map_err(err))
                    .collect::<PyResult<Vec<_>>>()
            })
            .collect::<PyResult<Vec<_>>>()?;
        Matrix::from_rows(&field, rows).map(wrap).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (n, field = "Q"))]
    fn identity(n: usize, field: &str) -> PyResult<Self> {
        let field = Field::parse(field).map_err(err)?;
        Ok(wrap(Matrix::identity(&field, n)))
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn field(&self) -> String {
        self.inner.field().tag()
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.inner
            .rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect()
    }

    fn __repr__(&self) -> String {
        format!("Matrix({:?}, field={:?})", self.rows(), self.field())
    }

    fn __add__(&self, other: &PyMatrix) -> PyResult<Self> {
        self.inner.checked_add(&other.inner).map(wrap).map_err(err)
    }

    fn __sub__(&self, other: &PyMatrix) -> PyResult<Self> {
        self.inner.checked_sub(&other.inner).map(wrap).map_err(err)
    }

    fn __matmul__(&self, other: &PyMatrix) -> PyResult<Self> {
        self.inner.checked_mul(&other.inner).map(wrap).map_err(err)
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn is_nilpotent(&self) -> bool {
        self.inner.is_nilpotent()
    }

    /// Coefficients, constant term first.
    fn minimal_polynomial(&self) -> Vec<String> {
        self.inner
            .minimal_polynomial()
            .coeffs()
            .iter()
            .map(|c| c.to_string())
            .collect()
    }

    /// `(S, N)` with `S` semisimple, `N` nilpotent, commuting.
    fn jordan_chevalley(&self) -> PyResult<(PyMatrix, PyMatrix)> {
        let jc = jc_decompose_newton(&self.inner).map_err(err)?;
        Ok((wrap(jc.semisimple), wrap(jc.nilpotent)))
    }

    /// `(H, V, N)`; both semisimple routes are cross-checked internally.
    fn complete_jordan_chevalley(&self) -> PyResult<(PyMatrix, PyMatrix, PyMatrix)> {
        let d = complete_jc(&self.inner).map_err(err)?;
        Ok((wrap(d.h), wrap(d.v), wrap(d.n)))
    }

    fn fine_frobenius<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let dec = fine_frobenius(&self.inner).map_err(err)?;
        to_py(py, &cli::fine_json(&dec))
    }

    fn normalized_frobenius<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let dec = fine_frobenius(&self.inner).and_then(|d| normalize(&d)).map_err(err)?;
        to_py(py, &cli::normalized_json(&dec))
    }

    #[pyo3(signature = (function = "exp", abs = "arch", coefficients = None, radius = None))]
    fn in_omega_hat(
        &self,
        function: &str,
        abs: &str,
        coefficients: Option<Vec<String>>,
        radius: Option<String>,
    ) -> PyResult<bool> {
        let spec = series(function, coefficients, radius).map_err(err)?;
        let av = AbsValue::parse(abs).map_err(err)?;
        in_omega_hat(&self.inner, &spec, av).map_err(err)
    }

    /// `f(M)` with its `Hf`/`Vf` split, as a dictionary of renderings.
    #[pyo3(signature = (function = "exp", abs = "arch", prec = 128, terms = None, valuation = 10, coefficients = None, radius = None))]
    #[allow(clippy::too_many_arguments)]
    fn apply_series<'py>(
        &self,
        py: Python<'py>,
        function: &str,
        abs: &str,
        prec: u32,
        terms: Option<usize>,
        valuation: i64,
        coefficients: Option<Vec<String>>,
        radius: Option<String>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let spec = series(function, coefficients, radius).map_err(err)?;
        let av = AbsValue::parse(abs).map_err(err)?;
        let opts = SeriesOptions {
            prec,
            terms,
            padic_target: valuation,
        };
        let value = apply_series(&self.inner, &spec, av, opts).map_err(err)?;
        let parts = complete_jc_of_image(&self.inner, &spec, av, opts).map_err(err)?;
        to_py(
            py,
            &json!({
                "series": cli::series_json(&spec),
                "abs": av.to_string(),
                "value": io::series_matrix(&value),
                "Hf": io::series_matrix(&parts.hf),
                "Vf": io::series_matrix(&parts.vf),
            }),
        )
    }
}

/// Factorization of a polynomial given by coefficients, constant first.
#[pyfunction]
#[pyo3(signature = (coeffs, field = "Q", seed = jcfrob::poly::DEFAULT_SEED))]
fn factor<'py>(py: Python<'py>, coeffs: Vec<Bound<'py, PyAny>>, field: &str, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let field = Field::parse(field).map_err(err)?;
    let coeffs = coeffs
        .iter()
        .map(|c| Scalar::parse(field, &scalar_text(c)?).map_err(err))
        .collect::<PyResult<Vec<_>>>()?;
    let fac = Polynomial::new(field, coeffs).factor_with_seed(seed).map_err(err)?;
    to_py(py, &cli::factorization_json(&fac))
}

#[pymodule]
fn pyjcfrob(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMatrix>()?;
    m.add_function(wrap_pyfunction!(factor, m)?)?;
    m.add("JcfrobError", m.py().get_type::<JcfrobError>())?;
    Ok(())
}
