//! Python bindings for the string-net engine.
//!
//! Exact cyclotomic numbers are exposed as [`PyCycNum`]; structured results
//! are returned as plain dictionaries and lists mirroring the JSON forms of
//! the core crate.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::{PyComplex, PyDict, PyList};
use serde::Serialize;
use serde_json::Value;

use stringnet_core::centre::{h_vector, list_centre_simples, multiplicity, CentreSimple};
use stringnet_core::frobenius::{frobenius_zr, nakayama, sigma_f};
use stringnet_core::graded_category::{CategoryParams, GradedObject, Grade};
use stringnet_core::linalg::rank_of_vectors;
use stringnet_core::modular::{self, ModularData};
use stringnet_core::rspin::{self, MarkedPlcw, Plcw};
use stringnet_core::stringnet_spaces::{self, DEFAULT_CAP};
use stringnet_core::{CycNum, Error};

create_exception!(stringnet, StringnetError, PyException, "A failed string-net computation.");

fn err(e: Error) -> PyErr {
    StringnetError::new_err(e.to_string())
}

fn params(r: u32, zeta_exponent: i64) -> PyResult<CategoryParams> {
    CategoryParams::with_zeta_exponent(r, zeta_exponent).map_err(err)
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.into_pyobject(py)?.into_any(),
            (None, Some(u)) => u.into_pyobject(py)?.into_any(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

fn serialize<'py, T: Serialize>(py: Python<'py>, x: &T) -> PyResult<Bound<'py, PyAny>> {
    let v = serde_json::to_value(x).map_err(|e| StringnetError::new_err(e.to_string()))?;
    to_py(py, &v)
}

/// An exact element of the cyclotomic field `Q(ζ_n)`.
#[pyclass(name = "CycNum", module = "stringnet", frozen, from_py_object)]
#[derive(Clone)]
pub struct PyCycNum(pub CycNum);

#[pymethods]
impl PyCycNum {
    /// `CycNum(order, coeffs)` with rational coefficients written as
    /// strings `"p/q"` in the power basis of `ζ_order`.
    #[new]
    fn new(order: u32, coeffs: Vec<String>) -> PyResult<Self> {
        let v = serde_json::json!({"order": order, "coeffs": coeffs});
        serde_json::from_value(v)
            .map(PyCycNum)
            .map_err(|e| StringnetError::new_err(e.to_string()))
    }

    /// `ζ_order^k`.
    #[staticmethod]
    fn root_of_unity(order: u32, k: i64) -> Self {
        PyCycNum(CycNum::root_of_unity(order, k))
    }

    #[staticmethod]
    fn from_int(k: i64) -> Self {
        PyCycNum(CycNum::from_int(1, k))
    }

    #[getter]
    fn order(&self) -> u32 {
        self.0.order()
    }

    #[getter]
    fn coeffs(&self) -> Vec<String> {
        self.0.coeffs().iter().map(|q| q.to_string()).collect()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn inverse(&self) -> PyResult<Self> {
        self.0.inverse().map(PyCycNum).map_err(err)
    }

    fn conjugate(&self) -> Self {
        PyCycNum(self.0.conjugate())
    }

    /// The complex value as a Python `complex`.
    fn __complex__<'py>(&self, py: Python<'py>) -> Bound<'py, PyComplex> {
        let (re, im) = self.0.to_complex();
        PyComplex::from_doubles(py, re, im)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("serialisable")
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text)
            .map(PyCycNum)
            .map_err(|e| StringnetError::new_err(e.to_string()))
    }

    fn __add__(&self, other: &PyCycNum) -> Self {
        let (a, b) = CycNum::common_field(&self.0, &other.0);
        PyCycNum(&a + &b)
    }

    fn __sub__(&self, other: &PyCycNum) -> Self {
        let (a, b) = CycNum::common_field(&self.0, &other.0);
        PyCycNum(&a - &b)
    }

    fn __mul__(&self, other: &PyCycNum) -> Self {
        let (a, b) = CycNum::common_field(&self.0, &other.0);
        PyCycNum(&a * &b)
    }

    fn __truediv__(&self, other: &PyCycNum) -> PyResult<Self> {
        let (a, b) = CycNum::common_field(&self.0, &other.0);
        Ok(PyCycNum(&a * &b.inverse().map_err(err)?))
    }

    /// Equality as complex numbers, across different cyclotomic orders.
    fn __eq__(&self, other: &PyCycNum) -> bool {
        let (a, b) = CycNum::common_field(&self.0, &other.0);
        a == b
    }

    fn __neg__(&self) -> Self {
        PyCycNum(-&self.0)
    }

    fn __pow__(&self, k: i64, _modulo: Option<i64>) -> PyResult<Self> {
        self.0.pow(k).map(PyCycNum).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("CycNum({})", self.0)
    }
}

fn cycnums(v: Vec<CycNum>) -> Vec<PyCycNum> {
    v.into_iter().map(PyCycNum).collect()
}

/// `dim SN(Σ_g)` for `Vec_{Z_r}` with its `ζ`-deformed pivotal structure.
#[pyfunction]
#[pyo3(signature = (r, genus, zeta_exponent = 1))]
fn sn_closed_dim(r: u32, genus: u32, zeta_exponent: i64) -> PyResult<u128> {
    stringnet_spaces::sn_closed_dim(&params(r, zeta_exponent)?, genus).map_err(err)
}

/// `dim SN(S^2)`, decided by the exact value of `Σ_U dim_r(U)^2 / Dim(C)`.
#[pyfunction]
#[pyo3(signature = (r, zeta_exponent = 1))]
fn sphere_sn_dim(r: u32, zeta_exponent: i64) -> PyResult<u32> {
    Ok(stringnet_spaces::sphere_sn_dim(&params(r, zeta_exponent)?))
}

/// The scalar by which the puncture projector acts on `C(1, H^g)`.
#[pyfunction]
#[pyo3(signature = (r, genus, zeta_exponent = 1))]
fn bp_scalar(r: u32, genus: u32, zeta_exponent: i64) -> PyResult<PyCycNum> {
    Ok(PyCycNum(stringnet_spaces::bp_scalar(&params(r, zeta_exponent)?, genus)))
}

/// Brute-force puncture projector; raises unless it equals the analytic
/// scalar times the identity.
#[pyfunction]
#[pyo3(signature = (r, genus, cap = DEFAULT_CAP, zeta_exponent = 1))]
fn tilde_bp_operator<'py>(
    py: Python<'py>,
    r: u32,
    genus: u32,
    cap: u128,
    zeta_exponent: i64,
) -> PyResult<Bound<'py, PyAny>> {
    let p = params(r, zeta_exponent)?;
    let report = py.detach(|| stringnet_spaces::tilde_bp_operator(&p, genus, cap)).map_err(err)?;
    serialize(py, &report)
}

/// `dim C(C_a, A(C_b))`.
#[pyfunction]
#[pyo3(signature = (r, a, b, zeta_exponent = 1))]
fn annulus_hom_dim(r: u32, a: i64, b: i64, zeta_exponent: i64) -> PyResult<usize> {
    let p = params(r, zeta_exponent)?;
    Ok(stringnet_spaces::annulus_hom_dim(p.reduce(a), p.reduce(b), &p))
}

/// The `r^2` simples `(a, k)` of the Drinfeld centre.
#[pyfunction]
fn centre_simples(r: u32) -> PyResult<Vec<(Grade, Grade)>> {
    let p = params(r, 1)?;
    Ok(list_centre_simples(&p).into_iter().map(|z| (z.a, z.k)).collect())
}

/// The torus vector `h_Z` of the centre simple `(a, k)`.
#[pyfunction]
#[pyo3(signature = (r, a, k, zeta_exponent = 1))]
fn torus_vector(r: u32, a: i64, k: i64, zeta_exponent: i64) -> PyResult<Vec<PyCycNum>> {
    let p = params(r, zeta_exponent)?;
    Ok(cycnums(h_vector(&CentreSimple::new(a, k, &p), &p).map_err(err)?.coords))
}

/// Multiplicity of the centre simple `(a, k)` in the induced object of `C_m`.
#[pyfunction]
fn centre_multiplicity(r: u32, a: i64, k: i64, m: i64) -> PyResult<usize> {
    let p = params(r, 1)?;
    multiplicity(&CentreSimple::new(a, k, &p), &GradedObject::simple(r, m), &p).map_err(err)
}

/// Exact rank of a family of vectors over `Q(ζ_order)`.
#[pyfunction]
fn rank(order: u32, vectors: Vec<Vec<PyCycNum>>) -> usize {
    let vs: Vec<Vec<CycNum>> = vectors.into_iter().map(|v| v.into_iter().map(|c| c.0).collect()).collect();
    rank_of_vectors(order, &vs)
}

/// Number of r-spin structures on the closed surface of genus `genus`.
#[pyfunction]
fn count_rspin(genus: u32, r: u32) -> u128 {
    rspin::count_rspin(genus, r)
}

fn complex(genus: Option<u32>, complex_json: Option<&str>) -> PyResult<Plcw> {
    match (genus, complex_json) {
        (Some(g), None) => Ok(rspin::decomposition_for_genus(g)),
        (None, Some(text)) => serde_json::from_str(text).map_err(|e| StringnetError::new_err(e.to_string())),
        _ => Err(StringnetError::new_err("give exactly one of genus or complex_json")),
    }
}

fn marked(r: u32, genus: u32, indices: Vec<i64>) -> PyResult<MarkedPlcw> {
    let c = rspin::decomposition_for_genus(genus);
    let ids = c.edge_ids();
    if ids.len() != indices.len() {
        return Err(StringnetError::new_err(format!(
            "expected {} edge indices, got {}",
            ids.len(),
            indices.len()
        )));
    }
    let map = ids.into_iter().zip(indices).map(|(id, s)| (id, s.rem_euclid(r as i64) as Grade)).collect();
    MarkedPlcw::new(c, r, map).map_err(err)
}

/// Admissible markings, as `{"r": …, "indices": {edge: s}}` dictionaries.
#[pyfunction]
#[pyo3(signature = (r, genus = None, complex_json = None, cap = DEFAULT_CAP))]
fn enumerate_admissible<'py>(
    py: Python<'py>,
    r: u32,
    genus: Option<u32>,
    complex_json: Option<&str>,
    cap: u128,
) -> PyResult<Bound<'py, PyAny>> {
    let c = complex(genus, complex_json)?;
    let found = py.detach(|| rspin::enumerate_admissible(&c, r, cap)).map_err(err)?;
    let markings: Vec<_> = found.iter().map(MarkedPlcw::marking).collect();
    serialize(py, &markings)
}

/// Admissibility report of the marking of the standard decomposition whose
/// edge indices are `indices` in edge order.
#[pyfunction]
fn check_admissible<'py>(py: Python<'py>, r: u32, genus: u32, indices: Vec<i64>) -> PyResult<Bound<'py, PyAny>> {
    serialize(py, &rspin::is_admissible(&marked(r, genus, indices)?))
}

/// The coordinates of `σ_F` of an admissible marking in `C(1, H^g)`.
#[pyfunction]
#[pyo3(signature = (r, genus, indices, zeta_exponent = 1))]
fn sigma_f_vector(r: u32, genus: u32, indices: Vec<i64>, zeta_exponent: i64) -> PyResult<Vec<PyCycNum>> {
    let f = frobenius_zr(&params(r, zeta_exponent)?).map_err(err)?;
    Ok(cycnums(sigma_f(&marked(r, genus, indices)?, &f).map_err(err)?.coords))
}

/// Frobenius axioms of `CZ_r` and the diagonal of its Nakayama automorphism.
#[pyfunction]
#[pyo3(signature = (r, zeta_exponent = 1))]
fn frobenius_check<'py>(py: Python<'py>, r: u32, zeta_exponent: i64) -> PyResult<Bound<'py, PyDict>> {
    let f = frobenius_zr(&params(r, zeta_exponent)?).map_err(err)?;
    let axioms = f.check_axioms().map_err(err)?;
    let n = nakayama(&f).map_err(err)?.n;
    let out = PyDict::new(py);
    out.set_item("axioms", serialize(py, &axioms)?)?;
    let diagonal: Vec<CycNum> = (0..f.object.dim()).map(|i| n.matrix().get(i, i)).collect();
    out.set_item("nakayama_diagonal", cycnums(diagonal))?;
    Ok(out)
}

/// Modular data: labels, duality, dimensions and an unnormalised s-matrix.
#[pyclass(name = "ModularData", module = "stringnet", frozen)]
pub struct PyModularData(ModularData);

impl PyModularData {
    fn index(&self, label: &str) -> PyResult<usize> {
        self.0.label_index(label).map_err(err)
    }
}

#[pymethods]
impl PyModularData {
    /// One of the shipped samples: `trivial`, `semion`, `z3`, `z5`.
    #[staticmethod]
    fn sample(name: &str) -> PyResult<Self> {
        modular::sample(name).map(PyModularData).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        ModularData::from_json(text).map(PyModularData).map_err(err)
    }

    #[staticmethod]
    fn load(path: std::path::PathBuf) -> PyResult<Self> {
        modular::load_modular_data(path).map(PyModularData).map_err(err)
    }

    /// The pointed category on `Z_n` with quadratic form `q(x) = ζ_n^{c x^2}`.
    #[staticmethod]
    fn pointed(n: u32, c: i64) -> PyResult<Self> {
        modular::pointed_modular_data(modular::PointedFormSpec { n, c })
            .map(PyModularData)
            .map_err(err)
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.0.labels.clone()
    }

    #[getter]
    fn global_dim(&self) -> PyCycNum {
        PyCycNum(self.0.global_dim.clone())
    }

    fn s(&self, a: &str, b: &str) -> PyResult<PyCycNum> {
        Ok(PyCycNum(self.0.s[self.index(a)?][self.index(b)?].clone()))
    }

    fn violations(&self) -> Vec<String> {
        self.0.violations()
    }

    fn is_invertible(&self, j: &str) -> PyResult<bool> {
        self.0.is_invertible(self.index(j)?).map_err(err)
    }

    /// Whether the pivotal structure deformed by `j` is spherical.
    fn is_spherical(&self, j: &str) -> PyResult<bool> {
        Ok(modular::deformed_dims(self.index(j)?, &self.0).map_err(err)?.is_spherical)
    }

    /// `dim SN(S^2(U, V))` for the category deformed by `j`.
    fn sphere_charge_dim(&self, j: &str, u: &str, v: &str) -> PyResult<u32> {
        modular::sphere_charge_dim(self.index(j)?, self.index(u)?, self.index(v)?, &self.0).map_err(err)
    }

    /// The pairs `(U, V)` with one-dimensional charged sphere space.
    fn charge_support(&self, j: &str) -> PyResult<Vec<(String, String)>> {
        let pairs = modular::charge_support(self.index(j)?, &self.0).map_err(err)?;
        Ok(pairs
            .into_iter()
            .map(|(u, v)| (self.0.labels[u].clone(), self.0.labels[v].clone()))
            .collect())
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("serialisable")
    }

    fn __repr__(&self) -> String {
        format!("ModularData(labels={:?})", self.0.labels)
    }
}

#[pymodule]
fn stringnet(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("StringnetError", m.py().get_type::<StringnetError>())?;
    m.add("DEFAULT_CAP", DEFAULT_CAP)?;
    m.add_class::<PyCycNum>()?;
    m.add_class::<PyModularData>()?;
    m.add_function(wrap_pyfunction!(sn_closed_dim, m)?)?;
    m.add_function(wrap_pyfunction!(sphere_sn_dim, m)?)?;
    m.add_function(wrap_pyfunction!(bp_scalar, m)?)?;
    m.add_function(wrap_pyfunction!(tilde_bp_operator, m)?)?;
    m.add_function(wrap_pyfunction!(annulus_hom_dim, m)?)?;
    m.add_function(wrap_pyfunction!(centre_simples, m)?)?;
    m.add_function(wrap_pyfunction!(torus_vector, m)?)?;
    m.add_function(wrap_pyfunction!(centre_multiplicity, m)?)?;
    m.add_function(wrap_pyfunction!(rank, m)?)?;
    m.add_function(wrap_pyfunction!(count_rspin, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_admissible, m)?)?;
    m.add_function(wrap_pyfunction!(check_admissible, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_f_vector, m)?)?;
    m.add_function(wrap_pyfunction!(frobenius_check, m)?)?;
    Ok(())
}
