//! Python bindings: loops, constructions, isomorphism and enumeration.

use aloop_core::catalog::{self, EnumerateOptions};
use aloop_core::cocycle::{cocycle_space, CocycleFlags};
use aloop_core::construct::{build_gf, build_qn, build_terg, GfSpec, TergParams};
use aloop_core::{iso, structure, Error, LoopTable, Permutation};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A finite loop given by its Cayley table, neutral element `0`.
#[pyclass(name = "Loop", module = "aloop", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyLoop {
    inner: LoopTable,
}

#[pymethods]
impl PyLoop {
    #[new]
    fn new(rows: Vec<Vec<usize>>) -> PyResult<Self> {
        LoopTable::from_rows(&rows).map(|inner| PyLoop { inner }).map_err(err)
    }

    #[staticmethod]
    fn from_aloop(text: &str) -> PyResult<Self> {
        catalog::read_table(text).map(|inner| PyLoop { inner }).map_err(err)
    }

    fn to_aloop(&self) -> String {
        self.inner.to_aloop_string()
    }

    fn to_json(&self) -> String {
        catalog::table_to_json(&self.inner)
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn rows(&self) -> Vec<Vec<usize>> {
        self.inner.rows()
    }

    fn mul(&self, x: usize, y: usize) -> PyResult<usize> {
        self.inner.multiply(x, y).map_err(err)
    }

    fn is_commutative(&self) -> bool {
        self.inner.is_commutative()
    }

    fn is_associative(&self) -> bool {
        self.inner.is_associative()
    }

    fn is_a_loop(&self) -> bool {
        structure::is_a_loop(&self.inner)
    }

    /// Sizes of the left, middle and right nuclei and of the center.
    fn nucleus_sizes(&self) -> [usize; 4] {
        structure::nucleus_sizes(&self.inner)
    }

    fn exponent(&self) -> Option<usize> {
        self.inner.exponent().ok()
    }

    fn direct_product(&self, other: &PyLoop) -> PyLoop {
        PyLoop { inner: self.inner.direct_product(&other.inner) }
    }

    fn analyze<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let a = structure::analyze(&self.inner);
        let d = PyDict::new(py);
        d.set_item("order", a.order)?;
        d.set_item("commutative", a.commutative)?;
        d.set_item("associative", a.associative)?;
        d.set_item("a_loop", a.a_loop)?;
        d.set_item("left_nucleus", a.left_nucleus)?;
        d.set_item("middle_nucleus", a.middle_nucleus)?;
        d.set_item("right_nucleus", a.right_nucleus)?;
        d.set_item("center", a.center)?;
        d.set_item("exponent", a.exponent)?;
        d.set_item("inn_order", a.inn_order)?;
        d.set_item("mlt_order", a.mlt_order)?;
        d.set_item("element_orders", a.element_orders)?;
        Ok(d)
    }

    fn __eq__(&self, other: &PyLoop) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Loop(order={})", self.inner.order())
    }
}

#[pyfunction]
fn cyclic(n: usize) -> PyLoop {
    PyLoop { inner: LoopTable::cyclic(n) }
}

#[pyfunction]
fn abelian(moduli: Vec<usize>) -> PyLoop {
    PyLoop { inner: LoopTable::abelian(&moduli) }
}

#[pyfunction]
fn terg(n: usize, a: usize, b: usize) -> PyResult<PyLoop> {
    let p = TergParams::new(n, a, b).map_err(err)?;
    build_terg(p).map(|inner| PyLoop { inner }).map_err(err)
}

#[pyfunction]
fn qn(n: usize) -> PyResult<PyLoop> {
    build_qn(n).map(|inner| PyLoop { inner }).map_err(err)
}

/// The doubling construction over `Z_{m1} × …` with `f(x) = g(x)·t`.
#[pyfunction]
fn gf(moduli: Vec<usize>, g: Vec<usize>, t: usize) -> PyResult<PyLoop> {
    let g = Permutation::new(g).map_err(err)?;
    let spec = GfSpec::from_automorphism(LoopTable::abelian(&moduli), g, t).map_err(err)?;
    build_gf(&spec).map(|inner| PyLoop { inner }).map_err(err)
}

#[pyfunction]
fn find_isomorphism(a: &PyLoop, b: &PyLoop) -> Option<Vec<usize>> {
    iso::find_isomorphism(&a.inner, &b.inner).map(|p| p.images())
}

#[pyfunction]
fn are_isotopic(a: &PyLoop, b: &PyLoop) -> bool {
    iso::are_isotopic(&a.inner, &b.inner)
}

/// Catalog of a supported order as a list of loops.
#[pyfunction]
#[pyo3(signature = (order, center_nontrivial = false, exponent = None))]
fn enumerate(order: usize, center_nontrivial: bool, exponent: Option<usize>) -> PyResult<Vec<PyLoop>> {
    let e = catalog::enumerate(order, EnumerateOptions { center_nontrivial, exponent }).map_err(err)?;
    Ok(e.catalog.tables().into_iter().map(|inner| PyLoop { inner }).collect())
}

/// Isomorphism classes of the `Z_p³` family as lists of `(a, b)` pairs.
#[pyfunction]
fn classify_p3(p: usize) -> PyResult<Vec<Vec<(usize, usize)>>> {
    Ok(catalog::classify_p3(p).map_err(err)?.classes.into_iter().map(|c| c.members).collect())
}

/// Basis of the cocycle space, each vector as a flat `n × n` table.
#[pyfunction]
#[pyo3(signature = (base, p, symmetric = true, zero_diagonal = false))]
fn cocycles(base: &PyLoop, p: usize, symmetric: bool, zero_diagonal: bool) -> PyResult<Vec<Vec<u16>>> {
    let flags = CocycleFlags { symmetric, zero_diagonal };
    Ok(cocycle_space(&base.inner, p, flags).map_err(err)?.into_iter().map(|v| v.values().to_vec()).collect())
}

#[pymodule]
fn aloop(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLoop>()?;
    m.add_function(wrap_pyfunction!(cyclic, m)?)?;
    m.add_function(wrap_pyfunction!(abelian, m)?)?;
    m.add_function(wrap_pyfunction!(terg, m)?)?;
    m.add_function(wrap_pyfunction!(qn, m)?)?;
    m.add_function(wrap_pyfunction!(gf, m)?)?;
    m.add_function(wrap_pyfunction!(find_isomorphism, m)?)?;
    m.add_function(wrap_pyfunction!(are_isotopic, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(classify_p3, m)?)?;
    m.add_function(wrap_pyfunction!(cocycles, m)?)?;
    Ok(())
}
