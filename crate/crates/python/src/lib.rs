//! Python bindings for `tensorrep`.
//!
//! Symmetric tensors cross the boundary as `(c11, c22, c12)` tuples, vectors
//! as `(x, y)` and skew tensors as their scalar `w`.

use std::collections::HashMap;

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ::tensorrep::anisorep::{self, ModelKind};
use ::tensorrep::exprdsl;
use ::tensorrep::isotropic::{self, ArgumentList};
use ::tensorrep::pointgroups::group;
use ::tensorrep::structural::{self, StructuralPayload};
use ::tensorrep::tensor2d::{OrthKind, OrthTransform, SkewTensor2, SymTensor2, Vector2};
use ::tensorrep::GroupId;

create_exception!(tensorrep, TensorrepError, PyValueError);

type Sym = (f64, f64, f64);

fn err(e: impl std::fmt::Display) -> PyErr {
    TensorrepError::new_err(e.to_string())
}

fn gid(name: &str) -> PyResult<GroupId> {
    name.parse().map_err(err)
}

fn sym(c: Sym) -> SymTensor2 {
    SymTensor2::new(c.0, c.1, c.2)
}

fn tup(t: SymTensor2) -> Sym {
    (t.c11, t.c22, t.c12)
}

/// Element of O(2).
#[pyclass(name = "Transform", module = "tensorrep", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PyTransform(OrthTransform);

#[pymethods]
impl PyTransform {
    /// Rotation by `theta` radians.
    #[staticmethod]
    fn rotation(theta: f64) -> Self {
        Self(OrthTransform::rotation(theta))
    }

    /// Reflection across the line at `phi` radians.
    #[staticmethod]
    fn reflection(phi: f64) -> Self {
        Self(OrthTransform::reflection(phi))
    }

    #[getter]
    fn kind(&self) -> &'static str {
        match self.0.kind {
            OrthKind::Rotation => "rotation",
            OrthKind::Reflection => "reflection",
        }
    }

    #[getter]
    fn angle(&self) -> f64 {
        self.0.angle
    }

    #[getter]
    fn name(&self) -> String {
        self.0.name()
    }

    fn matrix(&self) -> [[f64; 2]; 2] {
        self.0.matrix().0
    }

    fn det(&self) -> f64 {
        self.0.det()
    }

    fn compose(&self, other: &PyTransform) -> Self {
        Self(self.0.compose(&other.0))
    }

    fn inverse(&self) -> Self {
        Self(self.0.inverse())
    }

    fn __repr__(&self) -> String {
        format!("Transform({})", self.0.name())
    }
}

/// Names of all twelve groups.
#[pyfunction]
fn groups() -> Vec<&'static str> {
    GroupId::ALL.iter().map(GroupId::as_str).collect()
}

/// Elements of a finite group in canonical order.
#[pyfunction]
fn group_elements(name: &str) -> PyResult<Vec<PyTransform>> {
    let g = group(gid(name)?);
    let elements = g.enumerate_elements().map_err(err)?;
    Ok(elements.into_iter().map(PyTransform).collect())
}

/// `(names, entries)` with `entries[a][b]` the index of `a·b`.
#[pyfunction]
fn cayley_table(name: &str) -> PyResult<(Vec<String>, Vec<Vec<usize>>)> {
    let t = group(gid(name)?).cayley_table().map_err(err)?;
    Ok((t.names, t.entries))
}

/// `(label, kind, components)` for each element of the group's structural set.
#[pyfunction]
fn structural_set(name: &str) -> PyResult<Vec<(String, &'static str, Vec<f64>)>> {
    let s = structural::structural_set(gid(name)?);
    Ok(s.elements
        .iter()
        .map(|e| {
            let kind = match e.payload {
                StructuralPayload::Vector(_) => "vector",
                StructuralPayload::Symmetric(_) => "symmetric",
                StructuralPayload::Skew(_) => "skew",
                StructuralPayload::Tensor(_) => "tensor",
            };
            (e.label.clone(), kind, e.payload.components())
        })
        .collect())
}

/// Stabilizer of the group's structural set over a sampled O(2) grid.
#[pyfunction]
#[pyo3(signature = (name, grid = structural::DEFAULT_GRID))]
fn characterized_group(name: &str, grid: usize) -> PyResult<Vec<PyTransform>> {
    let s = structural::structural_set(gid(name)?);
    let stab = structural::characterized_group(&s, grid, structural::MATCH_TOL).map_err(err)?;
    Ok(stab.into_iter().map(PyTransform).collect())
}

/// Components of the order-`n` tensor `P_n`, row-major over indices, in the
/// frame `a1` (default `(1, 0)`).
#[pyfunction]
#[pyo3(signature = (n, a1 = (1.0, 0.0)))]
fn zheng_tensor(n: usize, a1: (f64, f64)) -> PyResult<Vec<f64>> {
    let t = structural::zheng_tensor_in_frame(n, &Vector2::new(a1.0, a1.1)).map_err(err)?;
    Ok(t.components().to_vec())
}

/// Frame vector `a1` that aligns `P_n` with the group's mirrors.
#[pyfunction]
fn zheng_frame(name: &str) -> PyResult<(f64, f64)> {
    let a = structural::zheng_frame(gid(name)?);
    Ok((a.x, a.y))
}

fn args(vectors: Vec<(f64, f64)>, syms: Vec<Sym>, skews: Vec<f64>) -> ArgumentList {
    ArgumentList::new(
        vectors.into_iter().map(|(x, y)| Vector2::new(x, y)).collect(),
        syms.into_iter().map(sym).collect(),
        skews.into_iter().map(SkewTensor2::new).collect(),
    )
}

/// Isotropic invariant basis for `m` vectors, `n` symmetric and `p` skew tensors.
#[pyfunction]
fn isotropic_basis(m: usize, n: usize, p: usize) -> Vec<String> {
    isotropic::functional_basis(m, n, p).iter().map(ToString::to_string).collect()
}

/// Isotropic symmetric-tensor generators for the same argument counts.
#[pyfunction]
fn isotropic_generators(m: usize, n: usize, p: usize) -> Vec<String> {
    isotropic::generator_set(m, n, p).iter().map(ToString::to_string).collect()
}

/// Values of the isotropic basis at the given arguments.
#[pyfunction]
#[pyo3(signature = (vectors = Vec::new(), syms = Vec::new(), skews = Vec::new()))]
fn isotropic_invariants(vectors: Vec<(f64, f64)>, syms: Vec<Sym>, skews: Vec<f64>) -> PyResult<Vec<f64>> {
    let a = args(vectors, syms, skews);
    let (m, n, p) = a.counts();
    isotropic::evaluate_invariants(&isotropic::functional_basis(m, n, p), &a).map_err(err)
}

/// Values of the isotropic generators at the given arguments.
#[pyfunction]
#[pyo3(signature = (vectors = Vec::new(), syms = Vec::new(), skews = Vec::new()))]
fn isotropic_generator_values(vectors: Vec<(f64, f64)>, syms: Vec<Sym>, skews: Vec<f64>) -> PyResult<Vec<Sym>> {
    let a = args(vectors, syms, skews);
    let (m, n, p) = a.counts();
    let values = isotropic::evaluate_generators(&isotropic::generator_set(m, n, p), &a).map_err(err)?;
    Ok(values.into_iter().map(tup).collect())
}

/// Invariants, generators, slot actions and relations of one group.
#[pyclass(name = "Representation", module = "tensorrep", frozen)]
struct PyRepresentation(anisorep::RepresentationSpec);

#[pymethods]
impl PyRepresentation {
    #[new]
    fn new(name: &str) -> PyResult<Self> {
        Ok(Self(anisorep::representation_spec(gid(name)?)))
    }

    #[getter]
    fn group(&self) -> &'static str {
        self.0.group.as_str()
    }

    #[getter]
    fn structural(&self) -> Vec<String> {
        self.0.structural.labels().into_iter().map(String::from).collect()
    }

    #[getter]
    fn invariants(&self) -> Vec<String> {
        self.0.invariant_labels()
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.0.generator_labels()
    }

    #[getter]
    fn relations(&self) -> Vec<String> {
        self.0.relations.iter().map(|r| r.text.clone()).collect()
    }

    fn eval_invariants(&self, c: Sym) -> PyResult<Vec<f64>> {
        self.0.eval_invariants(&sym(c)).map_err(err)
    }

    fn eval_generators(&self, c: Sym) -> PyResult<Vec<Sym>> {
        Ok(self.0.eval_generators(&sym(c)).map_err(err)?.into_iter().map(tup).collect())
    }

    fn to_json(&self) -> PyResult<String> {
        self.0.to_json().map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_text()
    }
}

fn kind_of(name: &str) -> PyResult<ModelKind> {
    match name {
        "scalar" => Ok(ModelKind::Scalar),
        "tensor" => Ok(ModelKind::Tensor),
        other => Err(err(format!("unknown model kind `{other}`; use scalar or tensor"))),
    }
}

/// Scalar potential or tensor function built from free coefficient
/// expressions in `I1..In`.
#[pyclass(name = "Model", module = "tensorrep", frozen)]
struct PyModel(anisorep::Model);

#[pymethods]
impl PyModel {
    #[new]
    #[pyo3(signature = (group, kind, free, symmetrize = true, allow_unsymmetrized = false))]
    fn new(group: &str, kind: &str, free: Vec<String>, symmetrize: bool, allow_unsymmetrized: bool) -> PyResult<Self> {
        let refs: Vec<&str> = free.iter().map(String::as_str).collect();
        let m = anisorep::Model::parse(gid(group)?, kind_of(kind)?, &refs, symmetrize).map_err(err)?;
        Ok(Self(if allow_unsymmetrized { m.allowing_unsymmetrized() } else { m }))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        anisorep::Model::from_json(text).map(Self).map_err(err)
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        anisorep::Model::load(path).map(Self).map_err(err)
    }

    fn to_json(&self) -> PyResult<String> {
        self.0.to_json().map_err(err)
    }

    #[getter]
    fn group(&self) -> &'static str {
        self.0.group().as_str()
    }

    #[getter]
    fn kind(&self) -> &'static str {
        match self.0.kind {
            ModelKind::Scalar => "scalar",
            ModelKind::Tensor => "tensor",
        }
    }

    #[getter]
    fn symmetrized(&self) -> bool {
        self.0.symmetrized
    }

    /// Coefficient expressions after symmetrization.
    #[getter]
    fn effective(&self) -> Vec<String> {
        self.0.effective_exprs().iter().map(exprdsl::print).collect()
    }

    fn coefficients(&self, invariants: Vec<f64>) -> PyResult<Vec<f64>> {
        self.0.coefficients(&invariants).map_err(err)
    }

    fn eval_scalar(&self, c: Sym) -> PyResult<f64> {
        self.0.eval_scalar(&sym(c)).map_err(err)
    }

    fn eval_tensor(&self, c: Sym) -> PyResult<Sym> {
        self.0.eval_tensor(&sym(c)).map(tup).map_err(err)
    }

    /// `2 ∂ψ/∂C` for a scalar model.
    fn stress(&self, c: Sym) -> PyResult<Sym> {
        self.0.stress(&sym(c)).map(tup).map_err(err)
    }

    /// Largest equivariance defect over random `C` and group elements.
    #[pyo3(signature = (samples = 100, seed = 0, group = None))]
    fn equivariance_residual(&self, samples: usize, seed: u64, group: Option<&str>) -> PyResult<f64> {
        let over = group.map(gid).transpose()?;
        let r = anisorep::equivariance_residual(&self.0, samples, over, seed).map_err(err)?;
        Ok(r.max)
    }

    #[pyo3(signature = (samples = 100, seed = 0))]
    fn stress_equivariance_residual(&self, samples: usize, seed: u64) -> PyResult<f64> {
        let r = anisorep::stress_equivariance_residual(&self.0, samples, None, seed).map_err(err)?;
        Ok(r.max)
    }

    /// `(relation, max residual)` for each printed relation.
    #[pyo3(signature = (samples = 100, seed = 0))]
    fn constraint_residuals(&self, samples: usize, seed: u64) -> PyResult<Vec<(String, f64)>> {
        let rs = anisorep::constraint_residuals(&self.0, samples, seed).map_err(err)?;
        Ok(rs.into_iter().map(|r| (r.text, r.residual.max)).collect())
    }

    fn __repr__(&self) -> String {
        format!("Model(group={}, kind={})", self.group(), self.kind())
    }
}

/// Canonical printed form of an expression.
#[pyfunction]
fn parse_expr(text: &str) -> PyResult<String> {
    exprdsl::parse(text).map(|e| exprdsl::print(&e)).map_err(err)
}

#[pyfunction]
fn differentiate(text: &str, var: &str) -> PyResult<String> {
    let e = exprdsl::parse(text).map_err(err)?;
    Ok(exprdsl::print(&exprdsl::differentiate(&e, var)))
}

#[pyfunction]
fn evaluate(text: &str, bindings: HashMap<String, f64>) -> PyResult<f64> {
    let e = exprdsl::parse(text).map_err(err)?;
    exprdsl::evaluate(&e, &bindings).map_err(err)
}

#[pymodule]
#[pyo3(name = "tensorrep")]
pub fn tensorrep_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("TensorrepError", m.py().get_type::<TensorrepError>())?;
    m.add_class::<PyTransform>()?;
    m.add_class::<PyRepresentation>()?;
    m.add_class::<PyModel>()?;
    m.add_function(wrap_pyfunction!(groups, m)?)?;
    m.add_function(wrap_pyfunction!(group_elements, m)?)?;
    m.add_function(wrap_pyfunction!(cayley_table, m)?)?;
    m.add_function(wrap_pyfunction!(structural_set, m)?)?;
    m.add_function(wrap_pyfunction!(characterized_group, m)?)?;
    m.add_function(wrap_pyfunction!(zheng_tensor, m)?)?;
    m.add_function(wrap_pyfunction!(zheng_frame, m)?)?;
    m.add_function(wrap_pyfunction!(isotropic_basis, m)?)?;
    m.add_function(wrap_pyfunction!(isotropic_generators, m)?)?;
    m.add_function(wrap_pyfunction!(isotropic_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(isotropic_generator_values, m)?)?;
    m.add_function(wrap_pyfunction!(parse_expr, m)?)?;
    m.add_function(wrap_pyfunction!(differentiate, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    Ok(())
}
