use std::path::Path;

use serde::{Deserialize, Serialize};

use super::RepresentationSpec;
use crate::exprdsl::{differentiate, parse, Expr};
use crate::pointgroups::GroupId;
use crate::tensor2d::SymTensor2;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Scalar,
    Tensor,
}

fn default_true() -> bool {
    true
}

/// On-disk model description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub group: GroupId,
    pub kind: ModelKind,
    pub free: Vec<String>,
    #[serde(default = "default_true")]
    pub symmetrize: bool,
}

/// A scalar potential `ψ(C)` or tensor function `T(C) = Σ α_k G_k` over a
/// group's representation.
#[derive(Clone, Debug)]
pub struct Model {
    pub spec: RepresentationSpec,
    pub kind: ModelKind,
    pub free: Vec<Expr>,
    pub symmetrized: bool,
    /// Permits evaluating an unsymmetrized model whose group acts
    /// nontrivially, for negative controls.
    pub allow_unsymmetrized: bool,
    effective: Vec<Expr>,
    gradient: Vec<Expr>,
}

fn invariant_index(name: &str, count: usize) -> Option<usize> {
    let k: usize = name.strip_prefix('I')?.parse().ok()?;
    (1..=count).contains(&k).then(|| k - 1)
}

fn sum(terms: Vec<Expr>) -> Expr {
    let mut it = terms.into_iter();
    let first = it.next().unwrap_or(Expr::Num(0.0));
    it.fold(first, |acc, t| match t {
        Expr::Neg(inner) => Expr::Sub(Box::new(acc), inner),
        other => Expr::Add(Box::new(acc), Box::new(other)),
    })
}

/// Reynolds average of the free expressions over the spec's action group.
fn reynolds(spec: &RepresentationSpec, kind: ModelKind, free: &[Expr]) -> Vec<Expr> {
    let h = spec.action_group();
    if h.len() == 1 {
        return free.to_vec();
    }
    let n = spec.invariants.len();
    let moved: Vec<Vec<Expr>> = h
        .iter()
        .map(|(pi, _)| {
            free.iter()
                .map(|f| {
                    f.substitute(&|name: &str| {
                        let j = invariant_index(name, n)?;
                        let v = Expr::var(format!("I{}", pi.src[j] + 1));
                        Some(if pi.sign[j] < 0 { Expr::Neg(Box::new(v)) } else { v })
                    })
                })
                .collect()
        })
        .collect();
    let order = Expr::Num(h.len() as f64);
    let average = |terms: Vec<Expr>| Expr::Div(Box::new(sum(terms)), Box::new(order.clone()));
    match kind {
        ModelKind::Scalar => vec![average(moved.into_iter().map(|m| m[0].clone()).collect())],
        ModelKind::Tensor => (0..free.len())
            .map(|i| {
                let terms = h
                    .iter()
                    .zip(&moved)
                    .map(|((_, rho), m)| {
                        let k = rho.src.iter().position(|&s| s == i).expect("permutation");
                        if rho.sign[k] < 0 {
                            Expr::Neg(Box::new(m[k].clone()))
                        } else {
                            m[k].clone()
                        }
                    })
                    .collect();
                average(terms)
            })
            .collect(),
    }
}

impl Model {
    /// Validates arity and variable names; averages over the action group
    /// when `symmetrize` is set.
    pub fn new(spec: RepresentationSpec, kind: ModelKind, free: Vec<Expr>, symmetrize: bool) -> Result<Self> {
        let expected = match kind {
            ModelKind::Scalar => 1,
            ModelKind::Tensor => spec.generators.len(),
        };
        if free.len() != expected {
            return Err(Error::Arity { expected, got: free.len() });
        }
        let count = spec.invariants.len();
        for e in &free {
            if let Some(var) = e.variables().into_iter().find(|v| invariant_index(v, count).is_none()) {
                return Err(Error::UnknownVariable { var, count });
            }
        }
        let effective = if symmetrize { reynolds(&spec, kind, &free) } else { free.clone() };
        let gradient = match kind {
            ModelKind::Scalar => (1..=count)
                .map(|k| differentiate(&effective[0], &format!("I{k}")))
                .collect(),
            ModelKind::Tensor => Vec::new(),
        };
        Ok(Self { spec, kind, free, symmetrized: symmetrize, allow_unsymmetrized: false, effective, gradient })
    }

    pub fn parse(group: GroupId, kind: ModelKind, free: &[&str], symmetrize: bool) -> Result<Self> {
        let exprs = free.iter().map(|s| parse(s)).collect::<std::result::Result<Vec<_>, _>>()?;
        Model::new(super::representation_spec(group), kind, exprs, symmetrize)
    }

    pub fn allowing_unsymmetrized(mut self) -> Self {
        self.allow_unsymmetrized = true;
        self
    }

    pub fn group(&self) -> GroupId {
        self.spec.group
    }

    /// Coefficient expressions actually evaluated (symmetrized if requested).
    pub fn effective_exprs(&self) -> &[Expr] {
        &self.effective
    }

    /// The same model rebuilt from its effective expressions and symmetrized
    /// again.
    pub fn resymmetrized(&self) -> Result<Model> {
        Model::new(self.spec.clone(), self.kind, self.effective.clone(), true)
    }

    fn ready(&self) -> Result<()> {
        if !self.symmetrized && !self.allow_unsymmetrized && !self.spec.actions.is_empty() {
            return Err(Error::Unsymmetrized);
        }
        Ok(())
    }

    fn invariants(&self, c: &SymTensor2) -> Result<Vec<f64>> {
        let j = self.spec.eval_invariants(c)?;
        if j.iter().all(|x| x.is_finite()) {
            Ok(j)
        } else {
            Err(Error::NonFinite("invariant"))
        }
    }

    /// Coefficient values at invariant values `j`.
    pub fn coefficients(&self, j: &[f64]) -> Result<Vec<f64>> {
        let n = j.len();
        let lookup = |name: &str| invariant_index(name, n).map(|k| j[k]);
        Ok(self
            .effective
            .iter()
            .map(|e| e.eval_with(&lookup))
            .collect::<std::result::Result<Vec<_>, _>>()?)
    }

    pub fn eval_scalar(&self, c: &SymTensor2) -> Result<f64> {
        if self.kind != ModelKind::Scalar {
            return Err(Error::WrongKind("a scalar model"));
        }
        self.ready()?;
        Ok(self.coefficients(&self.invariants(c)?)?[0])
    }

    pub fn eval_tensor(&self, c: &SymTensor2) -> Result<SymTensor2> {
        if self.kind != ModelKind::Tensor {
            return Err(Error::WrongKind("a tensor model"));
        }
        self.ready()?;
        let alpha = self.coefficients(&self.invariants(c)?)?;
        let g = self.spec.eval_generators(c)?;
        Ok(alpha.iter().zip(&g).fold(SymTensor2::ZERO, |acc, (a, gk)| acc + gk.scale(*a)))
    }

    /// `T = 2 ∂ψ/∂C` by the chain rule through the invariants.
    pub fn stress(&self, c: &SymTensor2) -> Result<SymTensor2> {
        if self.kind != ModelKind::Scalar {
            return Err(Error::WrongKind("a scalar model"));
        }
        self.ready()?;
        let j = self.invariants(c)?;
        let n = j.len();
        let lookup = |name: &str| invariant_index(name, n).map(|k| j[k]);
        let s = self.spec.payloads();
        let mut t = SymTensor2::ZERO;
        for (form, d) in self.spec.invariants.iter().zip(&self.gradient) {
            let dpsi = d.eval_with(&lookup)?;
            if dpsi != 0.0 {
                t = t + form.gradient(c, &s)?.scale(2.0 * dpsi);
            }
        }
        Ok(t)
    }

    pub fn to_file(&self) -> ModelFile {
        ModelFile {
            group: self.group(),
            kind: self.kind,
            free: self.free.iter().map(|e| e.to_string()).collect(),
            symmetrize: self.symmetrized,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_file())?)
    }

    /// A file with `"symmetrize": false` yields a model that may be evaluated
    /// unsymmetrized.
    pub fn from_file(file: &ModelFile) -> Result<Self> {
        let refs: Vec<&str> = file.free.iter().map(String::as_str).collect();
        let m = Model::parse(file.group, file.kind, &refs, file.symmetrize)?;
        Ok(if file.symmetrize { m } else { m.allowing_unsymmetrized() })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ModelFile = serde_json::from_str(text)?;
        Model::from_file(&file)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Model::from_json(&std::fs::read_to_string(path)?)
    }
}

/// Builds a symmetrized model from free expressions.
pub fn symmetrize(spec: &RepresentationSpec, kind: ModelKind, free: Vec<Expr>) -> Result<Model> {
    Model::new(spec.clone(), kind, free, true)
}

pub fn stress_from_potential(m: &Model, c: &SymTensor2) -> Result<SymTensor2> {
    m.stress(c)
}
