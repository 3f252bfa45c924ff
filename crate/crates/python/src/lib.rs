//! Python bindings: solvers, the numerical evaluator, positivity and generator series.

use fourier_eigen::cli::{is_usage_error, sample_points, solve_json, SignArg, Target};
use fourier_eigen::evaluator::{EvalConfig, Evaluator as Inner};
use fourier_eigen::forms::{gen, GeneratorId};
use fourier_eigen::psi::{build, Sign, Variant};
use fourier_eigen::{positivity as pos, Error};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use rug::Float;
use serde_json::Value;

fn err(e: Error) -> PyErr {
    if is_usage_error(&e) {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(e.to_string())
    }
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<PyObject> {
    Ok(match v {
        Value::Null => py.None(),
        Value::Bool(b) => b.into_py(py),
        Value::Number(n) => match (n.as_i64(), n.as_f64()) {
            (Some(i), _) => i.into_py(py),
            (None, Some(f)) => f.into_py(py),
            _ => n.to_string().into_py(py),
        },
        Value::String(s) => s.into_py(py),
        Value::Array(a) => {
            let l = PyList::empty_bound(py);
            for x in a {
                l.append(to_py(py, x)?)?;
            }
            l.into_py(py)
        }
        Value::Object(o) => {
            let d = PyDict::new_bound(py);
            for (k, x) in o {
                d.set_item(k, to_py(py, x)?)?;
            }
            d.into_py(py)
        }
    })
}

fn sign(s: &str) -> PyResult<Sign> {
    Sign::parse(s).ok_or_else(|| PyValueError::new_err(format!("sign must be 'plus' or 'minus', got {s:?}")))
}

fn variant(v: &str) -> PyResult<Variant> {
    match v {
        "optimal" => Ok(Variant::Optimal),
        "origin-zero" => Ok(Variant::OriginZero),
        "lower-depth" => Ok(Variant::LowerDepth),
        _ => Err(PyValueError::new_err(format!("unknown variant {v:?}"))),
    }
}

/// Parameters, polynomials and principal part for dimension `d`.
#[pyfunction]
#[pyo3(signature = (d, sign = "plus", trunc = 64, variant = "optimal"))]
fn solve(py: Python<'_>, d: i64, sign: &str, trunc: i64, variant: &str) -> PyResult<PyObject> {
    let v = self::variant(variant)?;
    let t = Target {
        dim: d,
        sign: match self::sign(sign)? {
            Sign::Plus => SignArg::Plus,
            Sign::Minus => SignArg::Minus,
        },
        trunc,
        precision: 256,
        origin_zero: v == Variant::OriginZero,
        lower_depth: v == Variant::LowerDepth,
    };
    to_py(py, &solve_json(&t).map_err(err)?)
}

/// Certified positivity report for the weight `w` member of the f family.
#[pyfunction]
#[pyo3(signature = (w, up_to = None))]
fn positivity(py: Python<'_>, w: i64, up_to: Option<i64>) -> PyResult<PyObject> {
    let rep = pos::positivity(w, up_to).map_err(err)?;
    to_py(py, &serde_json::to_value(rep).map_err(|e| err(e.into()))?)
}

/// `[(exponent, coefficient)]` of a generator below `q^trunc`, both as exact strings.
#[pyfunction]
fn generator(name: &str, trunc: i64) -> PyResult<Vec<(String, String)>> {
    let id = GeneratorId::parse(name).ok_or_else(|| PyValueError::new_err(format!("unknown generator {name:?}")))?;
    Ok(gen(id, trunc).terms().map(|(e, c)| (e.to_rational().to_string(), c.to_string())).collect())
}

/// High-precision evaluation of `psi`, `W`, `U` and the radial profile.
#[pyclass]
struct Evaluator {
    inner: Inner,
}

impl Evaluator {
    fn f(&self, x: f64) -> Float {
        Float::with_val(self.inner.config().precision, x)
    }
}

#[pymethods]
impl Evaluator {
    #[new]
    #[pyo3(signature = (d, sign = "plus", trunc = 64, precision = 256, variant = "optimal"))]
    fn new(d: i64, sign: &str, trunc: i64, precision: u32, variant: &str) -> PyResult<Self> {
        let psi = build(d, self::sign(sign)?, trunc, self::variant(variant)?).map_err(err)?;
        let cfg = EvalConfig { precision, trunc, ..EvalConfig::default() };
        Ok(Evaluator { inner: Inner::new(&psi, cfg).map_err(err)? })
    }

    #[getter]
    fn depth(&self) -> usize {
        self.inner.expansion().depth()
    }

    /// `psi(i t)`.
    fn psi(&self, t: f64) -> PyResult<f64> {
        Ok(self.inner.eval_psi(&self.f(t)).map_err(err)?.to_f64())
    }

    fn w(&self, s: f64) -> PyResult<f64> {
        Ok(self.inner.eval_w(&self.f(s)).map_err(err)?.to_f64())
    }

    fn u(&self, s: f64) -> PyResult<f64> {
        Ok(self.inner.eval_u(&self.f(s)).map_err(err)?.to_f64())
    }

    /// Radial profile `F(r) = U(r^2)`.
    fn profile(&self, r: f64) -> PyResult<f64> {
        Ok(self.inner.eval_f(&self.f(r)).map_err(err)?.to_f64())
    }

    /// `(U(2m), U'(2m))`.
    fn special_values(&self, m: usize) -> (f64, f64) {
        let s = self.inner.special_values(m);
        (s.u.to_f64(), s.du.to_f64())
    }

    /// Largest functional-equation residual over the standard sample points.
    #[pyo3(signature = (epsilon = None))]
    fn functional_residual(&self, epsilon: Option<i32>) -> PyResult<f64> {
        let eps = epsilon.unwrap_or(self.inner.expansion().sign.epsilon());
        self.inner.functional_eq_check(&sample_points(self.inner.config().precision), eps).map_err(err)
    }

    fn sign_certificate(&self, py: Python<'_>) -> PyResult<PyObject> {
        let c = self.inner.sign_change_certificate().map_err(err)?;
        to_py(py, &serde_json::to_value(c).map_err(|e| err(e.into()))?)
    }

    /// `[(r, F(r))]` for the given radii.
    fn samples(&self, rs: Vec<f64>) -> PyResult<Vec<(f64, f64)>> {
        Ok(self.inner.samples(&rs).map_err(err)?.into_iter().map(|s| (s.r, s.f)).collect())
    }
}

#[pymodule]
pub fn fourier_eigen_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(positivity, m)?)?;
    m.add_function(wrap_pyfunction!(generator, m)?)?;
    m.add_class::<Evaluator>()?;
    Ok(())
}
