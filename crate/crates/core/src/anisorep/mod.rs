//! Anisotropic representations of `ψ(C)` and `T(C)` for the twelve point
//! groups.
//!
//! Every group gets an isotropic extension in `C` and a structural set. The
//! representation spec lists the invariants and generators, how each group
//! generator permutes their slots, and the coefficient relations those
//! permutations impose. [`Model`] turns free coefficient expressions into a
//! symmetrized coefficient family by Reynolds averaging.

mod checks;
mod model;
mod spec;

use serde::Serialize;

pub use checks::{
    action_consistency_check, constraint_residuals, equivariance_residual, full_constraint_residual,
    random_sym, stress_equivariance_residual, RelationResidual, Residual,
};
pub use model::{stress_from_potential, symmetrize, Model, ModelFile, ModelKind};
pub use spec::representation_spec;

use crate::pointgroups::GroupId;
use crate::structural::{StructuralPayload, StructuralSet};
use crate::tensor2d::{outer, Mat2, OrthTransform, SymTensor2, Vector2};
use crate::{Error, Result};

/// A factor in a trace chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    C,
    S(usize),
}

/// Scalar invariant of `C` and the structural elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvariantForm {
    /// `tr(X1 X2 …)`.
    Chain(Vec<Factor>),
    /// `v_a · C v_b`.
    Quad(usize, usize),
}

/// Symmetric tensor generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorForm {
    Identity,
    C,
    Struct(usize),
    /// `v_a⊗v_a`, or `v_a⊗v_b + v_b⊗v_a` when `a != b`.
    Dyad(usize, usize),
    /// `Cε − εC` with ε at the given slot.
    CommC(usize),
    /// `Sε − εS`.
    CommStruct(usize, usize),
    /// Symmetric part of `S_a S_b`.
    StructProduct(usize, usize),
}

/// Signed permutation: `(p·x)[k] = sign[k] · x[src[k]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SignedPerm {
    pub src: Vec<usize>,
    pub sign: Vec<i8>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        Self { src: (0..n).collect(), sign: vec![1; n] }
    }

    pub fn new(src: Vec<usize>, sign: Vec<i8>) -> Self {
        Self { src, sign }
    }

    pub fn unsigned(src: Vec<usize>) -> Self {
        let n = src.len();
        Self { src, sign: vec![1; n] }
    }

    pub fn len(&self) -> usize {
        self.src.len()
    }

    pub fn is_empty(&self) -> bool {
        self.src.is_empty()
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.src.iter().zip(&self.sign).map(|(&s, &g)| g as f64 * x[s]).collect()
    }

    pub fn apply_sym(&self, x: &[SymTensor2]) -> Vec<SymTensor2> {
        self.src.iter().zip(&self.sign).map(|(&s, &g)| x[s].scale(g as f64)).collect()
    }

    /// `self ∘ other`, acting as `x ↦ self·(other·x)`.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let src = self.src.iter().map(|&k| other.src[k]).collect();
        let sign = self.src.iter().zip(&self.sign).map(|(&k, &g)| g * other.sign[k]).collect();
        SignedPerm { src, sign }
    }

    pub fn is_identity(&self) -> bool {
        self.src.iter().enumerate().all(|(k, &s)| k == s) && self.sign.iter().all(|&g| g == 1)
    }
}

/// Slot action of one group generator on invariants (π) and generators (ρ):
/// substituting `⟨Q⟩S` for `S` gives `J ↦ π·J` and `G ↦ ρ·G`.
#[derive(Clone, Debug, PartialEq)]
pub struct SlotAction {
    pub element: OrthTransform,
    pub invariants: SignedPerm,
    pub generators: SignedPerm,
}

/// Which coefficient family a relation constrains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RelationKind {
    /// `α_lhs(C, S) = sign · α_rhs(C, S∘perm)`.
    Coefficient { lhs: usize, rhs: usize, sign: i8 },
    /// `ψ(C, S) = ψ(C, S∘perm)`.
    Potential,
}

/// A printed coefficient relation, with `S∘perm` meaning the structural list
/// whose `k`-th entry is `S[perm[k]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub kind: RelationKind,
    pub perm: Vec<usize>,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RepresentationSpec {
    pub group: GroupId,
    pub structural: StructuralSet,
    pub invariants: Vec<InvariantForm>,
    pub generators: Vec<GeneratorForm>,
    pub actions: Vec<SlotAction>,
    pub relations: Vec<Relation>,
}

fn mat_of(payloads: &[StructuralPayload], k: usize) -> Result<Mat2> {
    payloads
        .get(k)
        .ok_or(Error::IndexOutOfRange { what: "structural element", index: k, len: payloads.len() })?
        .as_mat()
        .ok_or(Error::WrongKind("a second-order structural element"))
}

fn vec_of(payloads: &[StructuralPayload], k: usize) -> Result<Vector2> {
    payloads
        .get(k)
        .ok_or(Error::IndexOutOfRange { what: "structural element", index: k, len: payloads.len() })?
        .as_vector()
        .ok_or(Error::WrongKind("a vector structural element"))
}

fn chain_mats(chain: &[Factor], c: &Mat2, s: &[StructuralPayload]) -> Result<Vec<Mat2>> {
    chain
        .iter()
        .map(|f| match f {
            Factor::C => Ok(*c),
            Factor::S(k) => mat_of(s, *k),
        })
        .collect()
}

fn product(ms: &[Mat2]) -> Mat2 {
    ms.iter().fold(Mat2::IDENTITY, |acc, m| acc * *m)
}

impl InvariantForm {
    pub fn evaluate(&self, c: &SymTensor2, s: &[StructuralPayload]) -> Result<f64> {
        match self {
            InvariantForm::Chain(chain) => {
                let ms = chain_mats(chain, &c.to_mat(), s)?;
                crate::tensor2d::trace_chain(&ms)
            }
            InvariantForm::Quad(a, b) => {
                let (va, vb) = (vec_of(s, *a)?, vec_of(s, *b)?);
                Ok(va.dot(&c.to_mat().apply(&vb)))
            }
        }
    }

    /// Symmetrized `∂J/∂C`.
    pub fn gradient(&self, c: &SymTensor2, s: &[StructuralPayload]) -> Result<SymTensor2> {
        match self {
            InvariantForm::Chain(chain) => {
                let ms = chain_mats(chain, &c.to_mat(), s)?;
                let n = ms.len();
                let mut g = Mat2::ZERO;
                for (k, f) in chain.iter().enumerate() {
                    if *f == Factor::C {
                        let rest: Vec<Mat2> = (1..n).map(|d| ms[(k + d) % n]).collect();
                        g = g + product(&rest).transpose();
                    }
                }
                Ok(g.sym_part())
            }
            InvariantForm::Quad(a, b) => Ok(outer(&vec_of(s, *a)?, &vec_of(s, *b)?).sym_part()),
        }
    }

    pub fn label(&self, names: &[&str]) -> String {
        match self {
            InvariantForm::Chain(chain) if chain.iter().all(|f| *f == Factor::C) => {
                if chain.len() == 1 {
                    "tr(C)".to_string()
                } else {
                    format!("tr(C^{})", chain.len())
                }
            }
            InvariantForm::Chain(chain) => {
                let parts: Vec<&str> = chain
                    .iter()
                    .map(|f| match f {
                        Factor::C => "C",
                        Factor::S(k) => names[*k],
                    })
                    .collect();
                format!("tr({})", parts.join("*"))
            }
            InvariantForm::Quad(a, b) => format!("{}.C*{}", names[*a], names[*b]),
        }
    }
}

impl GeneratorForm {
    pub fn evaluate(&self, c: &SymTensor2, s: &[StructuralPayload]) -> Result<SymTensor2> {
        Ok(match *self {
            GeneratorForm::Identity => SymTensor2::IDENTITY,
            GeneratorForm::C => *c,
            GeneratorForm::Struct(k) => mat_of(s, k)?.sym_part(),
            GeneratorForm::Dyad(a, b) if a == b => {
                let v = vec_of(s, a)?;
                outer(&v, &v).sym_part()
            }
            GeneratorForm::Dyad(a, b) => {
                let (va, vb) = (vec_of(s, a)?, vec_of(s, b)?);
                (outer(&va, &vb) + outer(&vb, &va)).sym_part()
            }
            GeneratorForm::CommC(e) => {
                let (cm, eps) = (c.to_mat(), mat_of(s, e)?);
                (cm * eps - eps * cm).sym_part()
            }
            GeneratorForm::CommStruct(k, e) => {
                let (m, eps) = (mat_of(s, k)?, mat_of(s, e)?);
                (m * eps - eps * m).sym_part()
            }
            GeneratorForm::StructProduct(a, b) => (mat_of(s, a)? * mat_of(s, b)?).sym_part(),
        })
    }

    pub fn label(&self, names: &[&str]) -> String {
        match *self {
            GeneratorForm::Identity => "I".to_string(),
            GeneratorForm::C => "C".to_string(),
            GeneratorForm::Struct(k) => names[k].to_string(),
            GeneratorForm::Dyad(a, b) if a == b => format!("{0}(x){0}", names[a]),
            GeneratorForm::Dyad(a, b) => format!("{0}(x){1} + {1}(x){0}", names[a], names[b]),
            GeneratorForm::CommC(e) => format!("C*{0} - {0}*C", names[e]),
            GeneratorForm::CommStruct(k, e) => format!("{0}*{1} - {1}*{0}", names[k], names[e]),
            GeneratorForm::StructProduct(a, b) => format!("sym({}*{})", names[a], names[b]),
        }
    }
}

#[derive(Serialize)]
struct ActionJson {
    element: String,
    invariants: SignedPerm,
    generators: SignedPerm,
}

#[derive(Serialize)]
struct RelationJson<'a> {
    text: &'a str,
    #[serde(flatten)]
    kind: RelationKind,
    perm: &'a [usize],
}

#[derive(Serialize)]
struct SpecJson<'a> {
    group: GroupId,
    structural: Vec<&'a str>,
    invariants: Vec<String>,
    generators: Vec<String>,
    actions: Vec<ActionJson>,
    relations: Vec<RelationJson<'a>>,
}

impl RepresentationSpec {
    pub fn payloads(&self) -> Vec<StructuralPayload> {
        self.structural.payloads()
    }

    pub fn invariant_names(&self) -> Vec<String> {
        (1..=self.invariants.len()).map(|k| format!("I{k}")).collect()
    }

    pub fn invariant_labels(&self) -> Vec<String> {
        let names = self.structural.labels();
        self.invariants.iter().map(|f| f.label(&names)).collect()
    }

    pub fn generator_labels(&self) -> Vec<String> {
        let names = self.structural.labels();
        self.generators.iter().map(|g| g.label(&names)).collect()
    }

    pub fn eval_invariants_with(&self, c: &SymTensor2, s: &[StructuralPayload]) -> Result<Vec<f64>> {
        self.invariants.iter().map(|f| f.evaluate(c, s)).collect()
    }

    pub fn eval_generators_with(&self, c: &SymTensor2, s: &[StructuralPayload]) -> Result<Vec<SymTensor2>> {
        self.generators.iter().map(|g| g.evaluate(c, s)).collect()
    }

    pub fn eval_invariants(&self, c: &SymTensor2) -> Result<Vec<f64>> {
        self.eval_invariants_with(c, &self.payloads())
    }

    pub fn eval_generators(&self, c: &SymTensor2) -> Result<Vec<SymTensor2>> {
        self.eval_generators_with(c, &self.payloads())
    }

    /// Closure of the slot actions under composition, identity first.
    pub fn action_group(&self) -> Vec<(SignedPerm, SignedPerm)> {
        let id = (SignedPerm::identity(self.invariants.len()), SignedPerm::identity(self.generators.len()));
        let mut out = vec![id];
        let mut k = 0;
        while k < out.len() {
            for a in &self.actions {
                let next = (out[k].0.compose(&a.invariants), out[k].1.compose(&a.generators));
                if !out.contains(&next) {
                    out.push(next);
                }
            }
            k += 1;
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        let doc = SpecJson {
            group: self.group,
            structural: self.structural.labels(),
            invariants: self.invariant_labels(),
            generators: self.generator_labels(),
            actions: self
                .actions
                .iter()
                .map(|a| ActionJson {
                    element: a.element.name(),
                    invariants: a.invariants.clone(),
                    generators: a.generators.clone(),
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| RelationJson { text: &r.text, kind: r.kind, perm: &r.perm })
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("group {}\n", self.group);
        out += &format!("structural: {}\n", self.structural.labels().join(", "));
        out += "invariants:\n";
        for (k, l) in self.invariant_labels().iter().enumerate() {
            out += &format!("  I{} = {l}\n", k + 1);
        }
        out += "generators:\n";
        for (k, l) in self.generator_labels().iter().enumerate() {
            out += &format!("  g{k} = {l}\n");
        }
        if self.actions.is_empty() {
            out += "actions: none (structural set individually invariant)\n";
        } else {
            out += "actions:\n";
            for a in &self.actions {
                out += &format!(
                    "  {}: invariants {} generators {}\n",
                    a.element.name(),
                    perm_text(&a.invariants, "I", 1),
                    perm_text(&a.generators, "g", 0)
                );
            }
        }
        if !self.relations.is_empty() {
            out += "relations:\n";
            for r in &self.relations {
                out += &format!("  {}\n", r.text);
            }
        }
        out
    }
}

fn perm_text(p: &SignedPerm, prefix: &str, base: usize) -> String {
    let parts: Vec<String> = p
        .src
        .iter()
        .zip(&p.sign)
        .map(|(&s, &g)| format!("{}{prefix}{}", if g < 0 { "-" } else { "" }, s + base))
        .collect();
    format!("[{}]", parts.join(", "))
}
