//! Python bindings: groups, triangulated surfaces and 3-manifolds, and the invariants computed on them.

use num_rational::BigRational;
use pachner::complexes::builders::{genus_surface, mapping_torus, torus_grid};
use pachner::complexes::io::{parse_surface, parse_tri3, serialize_surface, serialize_tri3};
use pachner::complexes::{DehnWord, SurfaceComplex, Triangulation3};
use pachner::groups::{FiniteGroup, DEFAULT_HOM_CAP};
use pachner::qsim::{compile, hadamard_estimate, DEFAULT_MAX_QUBITS};
use pachner::scalars::{FibScalar, Scalar};
use pachner::tensornet::{DEFAULT_BUDGET, DEFAULT_MEMORY};
use pachner::{tlft2d, turaevviro};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, q: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((q.to_string(),))
}

/// Exact value in the golden field as four rational coefficients of 1, t, t², t³ with t⁴ = t² + 1.
fn fib_coeffs<'py>(py: Python<'py>, v: &FibScalar) -> PyResult<Vec<Bound<'py, PyAny>>> {
    v.coeffs().iter().map(|c| fraction(py, c)).collect()
}

#[pyclass(name = "Group", frozen)]
pub struct PyGroup(FiniteGroup);

#[pymethods]
impl PyGroup {
    /// A named group such as `cyclic:3`, `symmetric:3`, `quaternion8`.
    #[new]
    fn new(name: &str) -> PyResult<Self> {
        FiniteGroup::named(name).map(Self).map_err(value_err)
    }

    /// Parses a multiplication-table file body.
    #[staticmethod]
    fn from_table(text: &str) -> PyResult<Self> {
        FiniteGroup::parse(text).map(Self).map_err(value_err)
    }

    #[getter]
    fn name(&self) -> String {
        self.0.name().to_string()
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    fn irrep_dims(&self) -> Option<Vec<u32>> {
        self.0.irrep_dims().map(<[u32]>::to_vec)
    }

    fn hom_count(&self, genus: usize) -> PyResult<u64> {
        self.0.hom_count(genus, DEFAULT_HOM_CAP).map_err(value_err)
    }

    fn __len__(&self) -> usize {
        self.0.order()
    }

    fn __repr__(&self) -> String {
        format!("Group({:?}, order={})", self.0.name(), self.0.order())
    }
}

#[pyclass(name = "Surface", frozen)]
pub struct PySurface(SurfaceComplex);

#[pymethods]
impl PySurface {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_surface(text).map(Self).map_err(value_err)
    }

    #[staticmethod]
    fn torus(k: usize) -> PyResult<Self> {
        torus_grid(k).map(Self).map_err(value_err)
    }

    #[staticmethod]
    fn of_genus(genus: usize) -> PyResult<Self> {
        genus_surface(genus).map(Self).map_err(value_err)
    }

    fn serialize(&self) -> String {
        serialize_surface(&self.0)
    }

    #[getter]
    fn triangles(&self) -> usize {
        self.0.triangle_count()
    }

    #[getter]
    fn edges(&self) -> usize {
        self.0.edge_count()
    }

    #[getter]
    fn vertices(&self) -> usize {
        self.0.vertex_count()
    }

    #[getter]
    fn euler_characteristic(&self) -> i64 {
        self.0.euler_characteristic()
    }

    #[getter]
    fn genus(&self) -> Option<usize> {
        self.0.genus()
    }

    fn incidence_matrix(&self) -> Vec<Vec<u8>> {
        self.0.incidence_matrix()
    }

    fn pachner22(&self, t: usize, k: usize) -> PyResult<Self> {
        self.0.pachner22(t, k).map(Self).map_err(value_err)
    }

    fn pachner13(&self, t: usize) -> PyResult<Self> {
        self.0.pachner13(t).map(Self).map_err(value_err)
    }

    fn pachner31(&self, v: usize) -> PyResult<Self> {
        self.0.pachner31(v).map(Self).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!("Surface(triangles={}, edges={}, vertices={})", self.0.triangle_count(), self.0.edge_count(), self.0.vertex_count())
    }
}

#[pyclass(name = "Triangulation", frozen)]
pub struct PyTriangulation(Triangulation3);

#[pymethods]
impl PyTriangulation {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_tri3(text).map(Self).map_err(value_err)
    }

    #[staticmethod]
    fn two_tet_sphere() -> Self {
        Self(Triangulation3::two_tet_sphere())
    }

    #[staticmethod]
    fn five_tet_sphere() -> Self {
        Self(Triangulation3::five_tet_sphere())
    }

    /// Mapping torus of a genus-1 Dehn word of signed curve indices such as `"1 -2"`, on the 1×k torus grid.
    #[staticmethod]
    #[pyo3(signature = (word = "", k = 3))]
    fn mapping_torus(word: &str, k: usize) -> PyResult<Self> {
        let w = DehnWord::parse(1, word).map_err(value_err)?;
        mapping_torus(&w, k).map(|b| Self(b.manifold)).map_err(value_err)
    }

    fn serialize(&self) -> String {
        serialize_tri3(&self.0)
    }

    #[getter]
    fn tetrahedra(&self) -> usize {
        self.0.tet_count()
    }

    #[getter]
    fn edges(&self) -> usize {
        self.0.edge_count()
    }

    #[getter]
    fn vertices(&self) -> usize {
        self.0.vertex_count()
    }

    #[getter]
    fn is_closed(&self) -> bool {
        self.0.is_closed()
    }

    fn pachner23(&self, t: usize, f: usize) -> PyResult<Self> {
        self.0.pachner23(t, f).map(Self).map_err(value_err)
    }

    fn pachner32(&self, e: usize) -> PyResult<Self> {
        self.0.pachner32(e).map(Self).map_err(value_err)
    }

    fn pachner14(&self, t: usize) -> PyResult<Self> {
        self.0.pachner14(t).map(Self).map_err(value_err)
    }

    fn pachner41(&self, v: usize) -> PyResult<Self> {
        self.0.pachner41(v).map(Self).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!("Triangulation(tetrahedra={}, edges={}, vertices={})", self.0.tet_count(), self.0.edge_count(), self.0.vertex_count())
    }
}

/// The surface invariant as an exact state sum.
#[pyfunction]
#[pyo3(signature = (group, surface, budget = DEFAULT_BUDGET))]
fn tlft_invariant<'py>(py: Python<'py>, group: &PyGroup, surface: &PySurface, budget: u64) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &tlft2d::invariant_exact(&group.0, &surface.0, budget).map_err(value_err)?)
}

/// The surface invariant by tensor contraction along `plan` (greedy when omitted).
#[pyfunction]
#[pyo3(signature = (group, surface, plan = None))]
fn tlft_contract<'py>(py: Python<'py>, group: &PyGroup, surface: &PySurface, plan: Option<Vec<usize>>) -> PyResult<(Bound<'py, PyAny>, f64)> {
    let (v, r) = tlft2d::invariant_contract(&group.0, &surface.0, plan.as_deref(), DEFAULT_MEMORY).map_err(value_err)?;
    Ok((fraction(py, &v)?, r.delta))
}

#[pyfunction]
fn mednykh<'py>(py: Python<'py>, group: &PyGroup, surface: &PySurface) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &tlft2d::mednykh_rhs(&group.0, &surface.0, DEFAULT_HOM_CAP).map_err(value_err)?)
}

#[pyfunction]
fn closed_form<'py>(py: Python<'py>, group: &PyGroup, surface: &PySurface) -> PyResult<Option<Bound<'py, PyAny>>> {
    tlft2d::closed_form(&group.0, &surface.0).map_err(value_err)?.map(|q| fraction(py, &q)).transpose()
}

/// Returns `(estimate, standard_error)`.
#[pyfunction]
#[pyo3(signature = (group, surface, samples = 1_000_000, seed = 0))]
fn monte_carlo(group: &PyGroup, surface: &PySurface, samples: u64, seed: u64) -> PyResult<(f64, f64)> {
    let e = tlft2d::monte_carlo_estimate(&group.0, &surface.0, samples, seed).map_err(value_err)?;
    Ok((e.estimate, e.std_error))
}

/// Returns `(coefficients, decimal)`.
#[pyfunction]
#[pyo3(signature = (manifold, budget = DEFAULT_BUDGET))]
fn tv_exact<'py>(py: Python<'py>, manifold: &PyTriangulation, budget: u64) -> PyResult<(Vec<Bound<'py, PyAny>>, f64)> {
    let v = turaevviro::tv_exact(&manifold.0, budget).map_err(value_err)?;
    Ok((fib_coeffs(py, &v)?, v.to_f64()))
}

/// Returns `(coefficients, decimal, scale)`.
#[pyfunction]
#[pyo3(signature = (manifold, plan = None))]
fn tv_contract<'py>(py: Python<'py>, manifold: &PyTriangulation, plan: Option<Vec<usize>>) -> PyResult<(Vec<Bound<'py, PyAny>>, f64, f64)> {
    let r = turaevviro::tv_contract(&manifold.0, plan.as_deref(), DEFAULT_MEMORY).map_err(value_err)?;
    Ok((fib_coeffs(py, &r.value)?, r.value.to_f64(), r.scale))
}

/// Compiles the surface network to a dilated circuit and runs one Hadamard-test estimate.
#[pyfunction]
#[pyo3(signature = (group, surface, eps = 0.2, seed = 0, max_qubits = DEFAULT_MAX_QUBITS))]
fn qsim_estimate<'py>(py: Python<'py>, group: &PyGroup, surface: &PySurface, eps: f64, seed: u64, max_qubits: usize) -> PyResult<Bound<'py, PyDict>> {
    let net = tlft2d::build_network(&group.0, &surface.0).map_err(value_err)?.network;
    let c = compile(&net, &net.greedy_plan(), max_qubits).map_err(value_err)?;
    let h = hadamard_estimate(&c, eps, seed).map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("estimate", h.x)?;
    d.set_item("entry", c.entry())?;
    d.set_item("delta", c.delta)?;
    d.set_item("qubits", c.qubits())?;
    d.set_item("ancillas", c.ancillas)?;
    d.set_item("samples", h.samples)?;
    Ok(d)
}

#[pymodule]
pub fn pachner_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PySurface>()?;
    m.add_class::<PyTriangulation>()?;
    m.add_function(wrap_pyfunction!(tlft_invariant, m)?)?;
    m.add_function(wrap_pyfunction!(tlft_contract, m)?)?;
    m.add_function(wrap_pyfunction!(mednykh, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(monte_carlo, m)?)?;
    m.add_function(wrap_pyfunction!(tv_exact, m)?)?;
    m.add_function(wrap_pyfunction!(tv_contract, m)?)?;
    m.add_function(wrap_pyfunction!(qsim_estimate, m)?)?;
    Ok(())
}
