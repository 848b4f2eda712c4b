//! Python bindings: the compiler pipeline, linear representations,
//! recurrences, block analysis, and the Baum-Sweet family, driven in-process.
//!
//! Exact rationals cross the boundary as Python ints when integral and as
//! `fractions.Fraction` otherwise; sequence values are plain Python ints of
//! arbitrary size.

use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use rlt_core::analysis;
use rlt_core::baumsweet::{self, BsSpec};
use rlt_core::repfile::{Provenance, RepFile};
use rlt_core::rlt::recurrence_display;
use rlt_core::{
    identify_rlt, runs_of_ones, sum_oracle, LinearRecurrence, LinearRepresentation, ReadingOrder,
    SumSpec,
};

fn value_err(err: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn rational_to_py(py: Python<'_>, x: &BigRational) -> PyResult<Py<PyAny>> {
    if x.is_integer() {
        Ok(x.to_integer().into_pyobject(py)?.unbind().into_any())
    } else {
        Ok(x.clone().into_pyobject(py)?.unbind().into_any())
    }
}

/// A linear representation (v, gamma0, gamma1, w) over exact rationals.
#[pyclass(name = "Representation", skip_from_py_object)]
#[derive(Clone)]
struct PyRepresentation {
    inner: LinearRepresentation,
}

#[pymethods]
impl PyRepresentation {
    /// Parse from the JSON representation-file format.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let rep = RepFile::from_json_str(text)
            .and_then(|f| f.to_rep())
            .map_err(value_err)?;
        Ok(PyRepresentation { inner: rep })
    }

    /// Serialize to the JSON representation-file format.
    #[pyo3(signature = (spec=None, minimized=None))]
    fn to_json(&self, spec: Option<[i64; 4]>, minimized: Option<bool>) -> PyResult<String> {
        let provenance = if spec.is_some() || minimized.is_some() {
            Some(Provenance {
                spec,
                minimized,
                tool_version: Some(rlt_core::VERSION.to_string()),
            })
        } else {
            None
        };
        RepFile::from_rep(&self.inner, provenance)
            .to_json_string()
            .map_err(value_err)
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn order(&self) -> &'static str {
        self.inner.order().as_str()
    }

    /// Value at n (int when integral, else a (numerator, denominator) tuple).
    fn evaluate(&self, py: Python<'_>, n: u64) -> PyResult<Py<PyAny>> {
        rational_to_py(py, &self.inner.evaluate(n))
    }

    /// Values at 0..count, sharing digit prefixes.
    fn prefix(&self, py: Python<'_>, count: u64) -> PyResult<Vec<Py<PyAny>>> {
        self.inner
            .evaluate_prefix(count)
            .iter()
            .map(|x| rational_to_py(py, x))
            .collect()
    }

    fn minimize(&self) -> Self {
        PyRepresentation {
            inner: self.inner.minimize(),
        }
    }

    fn reverse(&self) -> Self {
        PyRepresentation {
            inner: self.inner.reverse(),
        }
    }

    /// Exact equivalence as formal series (same reading order required).
    fn equivalent(&self, other: &PyRepresentation) -> PyResult<bool> {
        if self.inner.order() != other.inner.order() {
            return Err(value_err("reading orders differ; reverse one side first"));
        }
        Ok(self.inner.minimize().equivalent(&other.inner.minimize()))
    }

    /// Exact sum of the first 2^r values (MSD order only).
    fn block_sum(&self, r: u32) -> PyResult<BigInt> {
        analysis::block_sum(&self.inner, r).map_err(value_err)
    }

    /// Exact average over [2^r, 2^{r+1}).
    fn block_average(&self, py: Python<'_>, r: u32) -> PyResult<Py<PyAny>> {
        let mu = analysis::block_average(&self.inner, r).map_err(value_err)?;
        rational_to_py(py, &mu)
    }

    /// Coefficients of the minimal polynomial of gamma0+gamma1, constant
    /// term first; the leading coefficient is 1.
    fn minimal_polynomial(&self) -> PyResult<Vec<BigInt>> {
        Ok(analysis::minimal_polynomial(&self.inner)
            .map_err(value_err)?
            .coeffs()
            .to_vec())
    }

    /// Recover the recurrence this representation is the run length
    /// transform of. Raises ValueError when it is not one.
    fn identify(&self) -> PyResult<PyRecurrence> {
        let msd = match self.inner.order() {
            ReadingOrder::Msd => self.inner.clone(),
            ReadingOrder::Lsd => self.inner.reverse(),
        };
        let rec = identify_rlt(&msd).map_err(value_err)?;
        Ok(PyRecurrence { inner: rec })
    }

    fn __repr__(&self) -> String {
        format!(
            "Representation(rank={}, order={:?})",
            self.inner.rank(),
            self.inner.order().as_str()
        )
    }
}

/// A linear recurrence S(n+1) = d0 S(n) + ... + dr S(n-r) with S(0) = 1.
#[pyclass(name = "Recurrence", skip_from_py_object)]
#[derive(Clone)]
struct PyRecurrence {
    inner: LinearRecurrence,
}

#[pymethods]
impl PyRecurrence {
    /// Build from coefficients [d0, ..., dr] and initial values
    /// [S(0)=1, c1, ..., cr].
    #[new]
    fn new(coeffs: Vec<BigInt>, initials: Vec<BigInt>) -> PyResult<Self> {
        Ok(PyRecurrence {
            inner: LinearRecurrence::new(coeffs, initials).map_err(value_err)?,
        })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn coefficients(&self) -> Vec<BigInt> {
        self.inner.coeffs().to_vec()
    }

    #[getter]
    fn initial_values(&self) -> Vec<BigInt> {
        self.inner.initials().to_vec()
    }

    /// S(0), ..., S(count-1).
    fn terms(&self, count: usize) -> Vec<BigInt> {
        self.inner.terms(count)
    }

    /// The run length transform T(n).
    fn run_length_transform(&self, n: u64) -> BigInt {
        self.inner.run_length_transform(n)
    }

    /// Companion normal form of the transform (MSD, rank order+1).
    fn normal_form(&self) -> PyRepresentation {
        PyRepresentation {
            inner: self.inner.normal_form(),
        }
    }

    fn __repr__(&self) -> String {
        let initials: Vec<String> = self.inner.initials().iter().map(|x| x.to_string()).collect();
        format!("Recurrence({}; {})", recurrence_display(&self.inner), initials.join(", "))
    }

    fn __eq__(&self, other: &PyRecurrence) -> bool {
        self.inner == other.inner
    }
}

/// Compile binom(a1 n + a2 k, a3 n + a4 k) * binom(n, k) (mod 2) summed over
/// k into an MSD linear representation.
#[pyfunction]
#[pyo3(signature = (a1, a2, a3, a4, minimize=true))]
fn compile_spec(a1: i64, a2: i64, a3: i64, a4: i64, minimize: bool) -> PyResult<PyRepresentation> {
    let spec = SumSpec::new(a1, a2, a3, a4).map_err(value_err)?;
    Ok(PyRepresentation {
        inner: rlt_core::compile(&spec, minimize),
    })
}

/// Brute-force ground truth for the sum T(n).
#[pyfunction(name = "sum_oracle")]
fn py_sum_oracle(a1: i64, a2: i64, a3: i64, a4: i64, n: u64) -> PyResult<u64> {
    let spec = SumSpec::new(a1, a2, a3, a4).map_err(value_err)?;
    Ok(sum_oracle(&spec, n))
}

/// Lengths of the maximal runs of 1's in [n]_2, most significant run first.
#[pyfunction(name = "runs_of_ones")]
fn py_runs_of_ones(n: u64) -> Vec<u32> {
    runs_of_ones(n).lengths().to_vec()
}

/// Parity of binom(n, k).
#[pyfunction(name = "binom_parity")]
fn py_binom_parity(n: u64, k: u64) -> u8 {
    rlt_core::binom_parity(n, k)
}

/// Classical Baum-Sweet bit of n.
#[pyfunction(name = "baum_sweet")]
fn py_baum_sweet(n: u64) -> u8 {
    baumsweet::baum_sweet(n)
}

/// Generalized Baum-Sweet T_m(n) by direct summation.
#[pyfunction]
fn tm_sum(m: u32, n: u64) -> PyResult<u64> {
    let spec = BsSpec::new(m).map_err(value_err)?;
    Ok(baumsweet::tm_sum(&spec, n))
}

/// T_m(n) by the divisibility-of-runs predicate.
#[pyfunction]
fn tm_predicate(m: u32, n: u64) -> PyResult<u8> {
    let spec = BsSpec::new(m).map_err(value_err)?;
    Ok(baumsweet::tm_predicate(&spec, n))
}

/// The unique odd-term witness k, or None when T_m(n) = 0.
#[pyfunction]
fn tm_witness(m: u32, n: u64) -> PyResult<Option<u64>> {
    let spec = BsSpec::new(m).map_err(value_err)?;
    Ok(baumsweet::tm_witness(&spec, n))
}

/// The recurrence whose run length transform is T_m.
#[pyfunction]
fn tm_recurrence(m: u32) -> PyResult<PyRecurrence> {
    let spec = BsSpec::new(m).map_err(value_err)?;
    Ok(PyRecurrence {
        inner: baumsweet::tm_run_length_form(&spec),
    })
}

/// Names of the registered fixtures.
#[pyfunction]
fn fixture_names() -> Vec<&'static str> {
    rlt_core::fixtures().into_iter().map(|f| f.name).collect()
}

/// Fixture metadata: spec, expected rank, sequence name, recurrence.
#[pyfunction]
fn fixture_info(py: Python<'_>, name: &str) -> PyResult<Py<PyAny>> {
    let f = rlt_core::fixture(name)
        .ok_or_else(|| value_err(format!("unknown fixture {name:?}")))?;
    let dict = PyDict::new(py);
    dict.set_item("name", f.name)?;
    dict.set_item("spec", f.spec.as_array())?;
    dict.set_item("rank", f.expected_rank)?;
    dict.set_item("sequence", f.sequence)?;
    dict.set_item("oeis", f.oeis)?;
    dict.set_item(
        "recurrence",
        PyRecurrence {
            inner: f.recurrence.clone(),
        }
        .into_pyobject(py)?
        .unbind(),
    )?;
    Ok(dict.unbind().into_any())
}

/// Run the verification battery on one fixture; returns
/// [(label, passed, detail), ...].
#[pyfunction]
#[pyo3(signature = (name, bound=512))]
fn verify_fixture(name: &str, bound: u64) -> PyResult<Vec<(String, bool, String)>> {
    let f = rlt_core::fixture(name)
        .ok_or_else(|| value_err(format!("unknown fixture {name:?}")))?;
    let report = rlt_core::verify_fixture(&f, bound);
    Ok(report
        .checks
        .into_iter()
        .map(|c| (c.label, c.passed, c.detail))
        .collect())
}

#[pymodule]
fn rlt_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", rlt_core::VERSION)?;
    m.add_class::<PyRepresentation>()?;
    m.add_class::<PyRecurrence>()?;
    m.add_function(wrap_pyfunction!(compile_spec, m)?)?;
    m.add_function(wrap_pyfunction!(py_sum_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(py_runs_of_ones, m)?)?;
    m.add_function(wrap_pyfunction!(py_binom_parity, m)?)?;
    m.add_function(wrap_pyfunction!(py_baum_sweet, m)?)?;
    m.add_function(wrap_pyfunction!(tm_sum, m)?)?;
    m.add_function(wrap_pyfunction!(tm_predicate, m)?)?;
    m.add_function(wrap_pyfunction!(tm_witness, m)?)?;
    m.add_function(wrap_pyfunction!(tm_recurrence, m)?)?;
    m.add_function(wrap_pyfunction!(fixture_names, m)?)?;
    m.add_function(wrap_pyfunction!(fixture_info, m)?)?;
    m.add_function(wrap_pyfunction!(verify_fixture, m)?)?;
    Ok(())
}
