//! Python bindings: elements, the named invariants, the Steenrod operations,
//! the closed formulas and the verification suites.

use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use mui_invariants::closed_forms::{power_on_m, power_on_q, power_on_u, power_on_v, ClosedFormResult};
use mui_invariants::duality::{duality_grid, run_duality};
use mui_invariants::render::{from_json, parse, to_json, to_latex, to_text};
use mui_invariants::verify::{run, Suite, VerifyConfig};
use mui_invariants::{AlgebraContext, AlgebraError, Frame, InvariantId, MilnorIndex};

fn err(e: AlgebraError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A homogeneous or inhomogeneous element of E(x_1..x_m) (x) P(y_1..y_m).
#[pyclass(name = "Element", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyElement(pub mui_invariants::Element);

#[pymethods]
impl PyElement {
    /// Parses the canonical text form, e.g. `"2*x1*y1^3*y2 + y2^9"`.
    #[staticmethod]
    #[pyo3(signature = (text, p, m=None))]
    fn parse(text: &str, p: u32, m: Option<usize>) -> PyResult<Self> {
        parse(text, p, m).map(PyElement).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        from_json(&v).map(PyElement).map_err(err)
    }

    #[getter]
    fn p(&self) -> u32 {
        self.0.ctx().p()
    }

    #[getter]
    fn m(&self) -> usize {
        self.0.ctx().m()
    }

    /// Degree if homogeneous and nonzero.
    fn degree(&self) -> Option<u32> {
        self.0.degree()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn to_text(&self) -> String {
        to_text(&self.0)
    }

    fn to_latex(&self) -> String {
        to_latex(&self.0)
    }

    fn to_json(&self) -> String {
        to_json(&self.0).to_string()
    }

    fn __add__(&self, other: &PyElement) -> PyResult<Self> {
        self.0.try_add(&other.0).map(PyElement).map_err(err)
    }

    fn __mul__(&self, other: &PyElement) -> PyResult<Self> {
        self.0.try_mul(&other.0).map(PyElement).map_err(err)
    }

    fn __pow__(&self, e: u64, modulo: Option<u64>) -> PyResult<Self> {
        if modulo.is_some() {
            return Err(PyTypeError::new_err("three-argument pow is not supported"));
        }
        self.0.pow(e).map(PyElement).map_err(err)
    }

    fn __str__(&self) -> String {
        to_text(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Element(p={}, m={}, {:?})", self.0.ctx().p(), self.0.ctx().m(), to_text(&self.0))
    }
}

/// `"Q"` with `n, s`; `"V"` with `k`; and likewise `L`, `Lt`, `M`, `Mt`, `U`,
/// `bracketE`, `bracketX`.
#[pyfunction]
#[pyo3(signature = (name, p, n=None, k=None, s=None, e=None))]
fn invariant(name: &str, p: u32, n: Option<u32>, k: Option<u32>, s: Option<i32>, e: Option<Vec<u32>>) -> PyResult<PyElement> {
    let missing = |flag: &str| PyValueError::new_err(format!("{name} needs {flag}"));
    let nat = |v: i32| u32::try_from(v).map_err(|_| PyValueError::new_err(format!("{name} needs s >= 0")));
    let id = match name {
        "L" => match s {
            Some(s) => InvariantId::Lks { k: k.ok_or_else(|| missing("k"))?, s: nat(s)? },
            None => InvariantId::L { k: k.ok_or_else(|| missing("k"))? },
        },
        "Lt" => InvariantId::Ltilde { n: n.ok_or_else(|| missing("n"))? },
        "M" => InvariantId::Mks { k: k.ok_or_else(|| missing("k"))?, s: nat(s.ok_or_else(|| missing("s"))?)? },
        "Mt" => InvariantId::Mtilde { n: n.ok_or_else(|| missing("n"))?, s: s.ok_or_else(|| missing("s"))? },
        "Q" => InvariantId::Q { n: n.ok_or_else(|| missing("n"))?, s: nat(s.ok_or_else(|| missing("s"))?)? },
        "U" => InvariantId::U { k: k.ok_or_else(|| missing("k"))? },
        "V" => InvariantId::V { k: k.ok_or_else(|| missing("k"))? },
        "bracketE" => InvariantId::BracketE(e.ok_or_else(|| missing("e"))?),
        "bracketX" => InvariantId::BracketX(e.unwrap_or_default()),
        other => return Err(PyValueError::new_err(format!("unknown invariant {other:?}"))),
    };
    id.validate().map_err(err)?;
    let ctx = AlgebraContext::new(p, id.pairs().max(1)).map_err(err)?;
    Frame::standard(ctx).get(&id).map(PyElement).map_err(err)
}

#[pyfunction]
fn p_power(r: usize, a: &PyElement) -> PyResult<PyElement> {
    mui_invariants::p_power(r, &a.0).map(PyElement).map_err(err)
}

#[pyfunction]
fn bockstein(a: &PyElement) -> PyResult<PyElement> {
    mui_invariants::bockstein(&a.0).map(PyElement).map_err(err)
}

/// The power map `d_n^* P_n`, prepending `n` pairs.
#[pyfunction]
fn power_map(n: usize, a: &PyElement) -> PyResult<PyElement> {
    mui_invariants::d_star_p(n, &a.0).map(PyElement).map_err(err)
}

#[pyfunction]
#[pyo3(name = "milnor_st")]
fn milnor(s: Vec<u32>, r: Vec<u32>, a: &PyElement) -> PyResult<PyElement> {
    mui_invariants::milnor_st(&MilnorIndex { s, r }, &a.0).map(PyElement).map_err(err)
}

fn result_dict<'py>(py: Python<'py>, res: ClosedFormResult) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("applicable", res.applicable)?;
    d.set_item("branch", res.branch)?;
    d.set_item("symbolic", res.symbolic)?;
    d.set_item("value", PyElement(res.value))?;
    Ok(d)
}

/// `P^r` of `U_{k+1}`, `Mt_{n,s}`, `V_{k+1}` or `Q_{n,s}` by its closed form.
/// `of` is one of `"U"`, `"Mt"`, `"V"`, `"Q"`.
#[pyfunction]
#[pyo3(signature = (of, p, r, n=None, k=None, s=None))]
fn closed_form<'py>(
    py: Python<'py>,
    of: &str,
    p: u32,
    r: u64,
    n: Option<u32>,
    k: Option<u32>,
    s: Option<i32>,
) -> PyResult<Bound<'py, PyDict>> {
    let missing = |flag: &str| PyValueError::new_err(format!("{of} needs {flag}"));
    let res = match of {
        "U" | "V" => {
            let k = k.ok_or_else(|| missing("k"))?;
            let ctx = AlgebraContext::new(p, k as usize + 1).map_err(err)?;
            if of == "U" {
                power_on_u(ctx, r, k)
            } else {
                power_on_v(ctx, r, k)
            }
        }
        "Mt" | "Q" => {
            let n = n.ok_or_else(|| missing("n"))?;
            let s = s.ok_or_else(|| missing("s"))?;
            let ctx = AlgebraContext::new(p, n as usize).map_err(err)?;
            if of == "Mt" {
                power_on_m(ctx, r, n, s)
            } else {
                let s = u32::try_from(s).map_err(|_| PyValueError::new_err("Q needs s >= 0"))?;
                power_on_q(ctx, r, n, s)
            }
        }
        other => return Err(PyValueError::new_err(format!("unknown formula {other:?}"))),
    }
    .map_err(err)?;
    result_dict(py, res)
}

/// Runs verification suites and returns the report as a JSON string.
#[pyfunction]
#[pyo3(signature = (suite="all", p=3, max_n=2, seed=None, cases=None, budget=None, max_degree=None))]
fn verify(
    py: Python<'_>,
    suite: &str,
    p: u32,
    max_n: usize,
    seed: Option<u64>,
    cases: Option<usize>,
    budget: Option<u64>,
    max_degree: Option<u64>,
) -> PyResult<String> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        suite.split(',').map(|s| s.trim().parse::<Suite>()).collect::<Result<_, _>>().map_err(err)?
    };
    let d = VerifyConfig::default();
    let cfg = VerifyConfig {
        p,
        max_n,
        seed: seed.unwrap_or(d.seed),
        cases: cases.unwrap_or(d.cases),
        budget: budget.unwrap_or(d.budget),
        max_degree: max_degree.unwrap_or(d.max_degree),
    };
    let report = py.detach(|| run(&suites, &cfg)).map_err(err)?;
    serde_json::to_string(&report).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Checks every duality case for the block sizes `(n, k)` up to `max_degree`.
/// Returns `(cases, mismatches)`.
#[pyfunction]
#[pyo3(signature = (p, n, k, max_degree=40))]
fn duality_grid_check(py: Python<'_>, p: u32, n: usize, k: usize, max_degree: u64) -> PyResult<(usize, usize)> {
    AlgebraContext::new(p, 1).map_err(err)?;
    py.detach(|| {
        let cases = duality_grid(p, n, k, max_degree);
        let mut bad = 0;
        for report in run_duality(&cases, p) {
            if !report.map_err(err)?.equal {
                bad += 1;
            }
        }
        Ok((cases.len(), bad))
    })
}

#[pymodule]
pub fn pymui(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyElement>()?;
    m.add_function(wrap_pyfunction!(invariant, m)?)?;
    m.add_function(wrap_pyfunction!(p_power, m)?)?;
    m.add_function(wrap_pyfunction!(bockstein, m)?)?;
    m.add_function(wrap_pyfunction!(power_map, m)?)?;
    m.add_function(wrap_pyfunction!(milnor, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(duality_grid_check, m)?)?;
    Ok(())
}
