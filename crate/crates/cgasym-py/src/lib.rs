//! Python bindings: exact coupling coefficients, stationary-phase
//! asymptotics, region classification and the 1-D model integral.
//!
//! Quantum numbers accept Python ints, half-integer floats (x.5) and
//! strings ("3", "601/2", "150.5").

use pyo3::exceptions::{PyOverflowError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use cgasym::model1d::{self, ModelInput};
use cgasym::region::{Branch, RegionClass};
use cgasym::{exact, region};
use cgasym::{CgError, HalfInt, Method};

fn to_py_err(e: CgError) -> PyErr {
    match e {
        CgError::Overflow => PyOverflowError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Reads one quantum number from an int, a float on the half-integer
/// grid, or a string in any form the command line accepts.
fn half_from_py(v: &Bound<'_, PyAny>, name: &str) -> PyResult<HalfInt> {
    if let Ok(i) = v.extract::<i64>() {
        return Ok(HalfInt::from_int(i));
    }
    if let Ok(x) = v.extract::<f64>() {
        let twice = 2.0 * x;
        if twice.fract() == 0.0 && twice.abs() < 9.0e18 {
            return Ok(HalfInt::from_twice(twice as i64));
        }
        return Err(PyValueError::new_err(format!(
            "{name} = {x} is not on the half-integer grid"
        )));
    }
    if let Ok(s) = v.extract::<String>() {
        return HalfInt::parse(&s).map_err(to_py_err);
    }
    Err(PyValueError::new_err(format!(
        "{name} must be an int, a half-integer float or a string, not {}",
        v.get_type().name()?
    )))
}

/// Sign times the square root of a nonnegative rational, kept exact.
#[pyclass(frozen, name = "ExactRadical", module = "cgasym_py")]
struct PyExactRadical {
    inner: exact::ExactRadical,
}

#[pymethods]
impl PyExactRadical {
    /// -1, 0 or +1.
    #[getter]
    fn sign(&self) -> i64 {
        self.inner.sign() as i64
    }

    /// The rational under the square root, as a "p/q" or integer string.
    #[getter]
    fn radicand(&self) -> String {
        self.inner.radicand().to_string()
    }

    /// Nearest binary64; raises OverflowError outside the binary64 range.
    fn value(&self) -> PyResult<f64> {
        self.inner.to_f64().map_err(to_py_err)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("ExactRadical({})", self.inner)
    }
}

/// A coupled pair (j1, m1) x (j2, m2) -> (j, m) on the half-integer grid.
#[pyclass(frozen, name = "QuantumNumbers", module = "cgasym_py")]
struct PyQuantumNumbers {
    inner: cgasym::QuantumNumbers,
}

impl PyQuantumNumbers {
    fn run(&self, method: Method) -> PyResult<f64> {
        cgasym::evaluate(&self.inner, method)
            .map(|e| e.value)
            .map_err(to_py_err)
    }
}

#[pymethods]
impl PyQuantumNumbers {
    #[new]
    #[allow(clippy::too_many_arguments)]
    fn new(
        j1: &Bound<'_, PyAny>,
        m1: &Bound<'_, PyAny>,
        j2: &Bound<'_, PyAny>,
        m2: &Bound<'_, PyAny>,
        j: &Bound<'_, PyAny>,
        m: &Bound<'_, PyAny>,
    ) -> PyResult<Self> {
        let inner = cgasym::QuantumNumbers::new(
            half_from_py(j1, "j1")?,
            half_from_py(m1, "m1")?,
            half_from_py(j2, "j2")?,
            half_from_py(m2, "m2")?,
            half_from_py(j, "j")?,
            half_from_py(m, "m")?,
        )
        .map_err(to_py_err)?;
        Ok(PyQuantumNumbers { inner })
    }

    #[getter]
    fn j1(&self) -> f64 {
        self.inner.j1.to_f64()
    }
    #[getter]
    fn m1(&self) -> f64 {
        self.inner.m1.to_f64()
    }
    #[getter]
    fn j2(&self) -> f64 {
        self.inner.j2.to_f64()
    }
    #[getter]
    fn m2(&self) -> f64 {
        self.inner.m2.to_f64()
    }
    #[getter]
    fn j(&self) -> f64 {
        self.inner.j.to_f64()
    }
    #[getter]
    fn m(&self) -> f64 {
        self.inner.m.to_f64()
    }

    /// Exact coefficient as the nearest binary64.
    fn exact(&self) -> PyResult<f64> {
        self.run(Method::Exact)
    }

    /// Exact coefficient as a sign and a rational radicand.
    fn exact_radical(&self) -> PyExactRadical {
        PyExactRadical {
            inner: exact::wigner_sum(&self.inner),
        }
    }

    /// Leading stationary-phase approximation.
    fn first_order(&self) -> PyResult<f64> {
        self.run(Method::First)
    }

    /// Leading approximation through the real closed forms (no complex
    /// arithmetic); dispatches on the region by itself.
    fn allreal(&self) -> PyResult<f64> {
        self.run(Method::AllReal)
    }

    /// First order plus the next correction in 1/j.
    fn higher_order(&self) -> PyResult<f64> {
        self.run(Method::Higher)
    }

    /// Region classification as a dict with a "tag" key; forbidden points
    /// carry subregion, branch, sign_function, largest_lambda, degenerate.
    fn region<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let class = region::classify(&self.inner);
        let d = PyDict::new(py);
        d.set_item("tag", class.tag())?;
        if let RegionClass::Forbidden(info) = class {
            d.set_item("subregion", info.subregion.to_string())?;
            d.set_item(
                "branch",
                match info.branch {
                    Branch::Upper => "Upper",
                    Branch::Lower => "Lower",
                },
            )?;
            d.set_item("sign_function", info.sign_function as i64)?;
            d.set_item("largest_lambda", info.largest_lambda.to_string())?;
            d.set_item("degenerate", info.degenerate)?;
        }
        Ok(d)
    }

    /// The caustic discriminant as a binary64.
    fn beta_squared(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&region::beta_squared(&self.inner)).unwrap_or(f64::NAN)
    }

    /// The caustic discriminant as an exact rational string.
    fn beta_squared_exact(&self) -> String {
        region::beta_squared(&self.inner).to_string()
    }

    /// Whether |beta^2| < scale x (j1+j2+j)^3, the band where the
    /// asymptotic error deteriorates.
    #[pyo3(signature = (scale = 1.0))]
    fn near_caustic(&self, scale: f64) -> bool {
        region::near_caustic(&self.inner, scale)
    }

    fn __repr__(&self) -> String {
        let q = &self.inner;
        format!(
            "QuantumNumbers(j1={}, m1={}, j2={}, m2={}, j={}, m={})",
            q.j1, q.m1, q.j2, q.m2, q.j, q.m
        )
    }
}

/// Exact value of the model integral F(m, n).
#[pyfunction]
fn model1d_exact(m: i64, n: i64) -> PyResult<f64> {
    let inp = ModelInput::new(m, n).map_err(to_py_err)?;
    Ok(model1d::f_exact(&inp).value())
}

/// Closed form of F(m, n) as a string, "p/q" or "(p/q)*pi".
#[pyfunction]
fn model1d_closed_form(m: i64, n: i64) -> PyResult<String> {
    let inp = ModelInput::new(m, n).map_err(to_py_err)?;
    let fe = model1d::f_exact(&inp);
    Ok(if fe.times_pi {
        format!("({})*pi", fe.coefficient)
    } else {
        fe.coefficient.to_string()
    })
}

/// Two-point stationary-phase approximation of F(m, n); raises
/// ValueError at the critical ratio m = n.
#[pyfunction]
fn model1d_asymptotic(m: i64, n: i64) -> PyResult<f64> {
    let inp = ModelInput::new(m, n).map_err(to_py_err)?;
    model1d::f_asymptotic(&inp).map_err(to_py_err)
}

/// Adaptive quadrature of F(m, n) to an absolute tolerance.
#[pyfunction]
#[pyo3(signature = (m, n, tol = 1e-9))]
fn model1d_quadrature(m: i64, n: i64, tol: f64) -> PyResult<f64> {
    let inp = ModelInput::new(m, n).map_err(to_py_err)?;
    model1d::f_quadrature(&inp, tol).map_err(to_py_err)
}

#[pymodule]
fn cgasym_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyQuantumNumbers>()?;
    m.add_class::<PyExactRadical>()?;
    m.add_function(wrap_pyfunction!(model1d_exact, m)?)?;
    m.add_function(wrap_pyfunction!(model1d_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(model1d_asymptotic, m)?)?;
    m.add_function(wrap_pyfunction!(model1d_quadrature, m)?)?;
    Ok(())
}
