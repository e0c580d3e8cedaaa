use pyo3::prelude::*;
use pyo3::types::PyDict;
use pyo3::wrap_pymodule;

fn with_module<F: FnOnce(Python<'_>, &Bound<'_, PyModule>)>(f: F) {
    Python::initialize();
    Python::attach(|py| {
        let m = wrap_pymodule!(pymui::pymui)(py).into_bound(py);
        let m = m.cast_into::<PyModule>().unwrap();
        f(py, &m);
    });
}

#[test]
fn invariants_and_operations() {
    with_module(|py, m| {
        let kw = PyDict::new(py);
        kw.set_item("k", 2).unwrap();
        let v2 = m.getattr("invariant").unwrap().call(("V", 3), Some(&kw)).unwrap();
        let text: String = v2.call_method0("to_text").unwrap().extract().unwrap();
        assert_eq!(text, "y2^3 + 2*y2*y1^2");
        let top = m.getattr("p_power").unwrap().call1((3, &v2)).unwrap();
        let cube = v2.call_method1("__pow__", (3, py.None())).unwrap();
        assert!(top.eq(&cube).unwrap());
    });
}

#[test]
fn errors_become_value_errors() {
    with_module(|py, m| {
        let kw = PyDict::new(py);
        kw.set_item("k", 2).unwrap();
        let e = m.getattr("invariant").unwrap().call(("V", 4), Some(&kw)).unwrap_err();
        assert!(e.is_instance_of::<pyo3::exceptions::PyValueError>(py));
    });
}

#[test]
fn closed_form_dict() {
    with_module(|py, m| {
        let kw = PyDict::new(py);
        kw.set_item("n", 2).unwrap();
        kw.set_item("s", 1).unwrap();
        let d = m.getattr("closed_form").unwrap().call(("Q", 3, 6), Some(&kw)).unwrap();
        let sym: String = d.get_item("symbolic").unwrap().extract().unwrap();
        assert_eq!(sym, "Q_{2,1}^3");
    });
}
