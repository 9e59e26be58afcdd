//! Structural tensor sets, Zheng's structural tensors and the symmetry they
//! characterize.
//!
//! A set characterizes a group when the orthogonal transformations mapping the
//! set onto itself are exactly the group elements. For the six groups with
//! high-order Zheng tensors the proposed sets only need to be invariant as a
//! set (members may permute); for the remaining six every member must be
//! fixed individually.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::pointgroups::GroupId;
use crate::tensor2d::{
    outer, Mat2, OrthKind, OrthTransform, SkewTensor2, SymTensor2, TensorN, Transformable, Vector2,
};
use crate::{Error, Result};

/// Default stabilizer-scan resolution.
pub const DEFAULT_GRID: usize = 7200;
/// Default matching tolerance for induced actions.
pub const MATCH_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ElementKind {
    Vector,
    Symmetric,
    Skew,
    TensorN,
}

#[derive(Clone, Debug, PartialEq)]
pub enum StructuralPayload {
    Vector(Vector2),
    Symmetric(SymTensor2),
    Skew(SkewTensor2),
    Tensor(TensorN),
}

impl StructuralPayload {
    pub fn kind(&self) -> ElementKind {
        match self {
            StructuralPayload::Vector(_) => ElementKind::Vector,
            StructuralPayload::Symmetric(_) => ElementKind::Symmetric,
            StructuralPayload::Skew(_) => ElementKind::Skew,
            StructuralPayload::Tensor(_) => ElementKind::TensorN,
        }
    }

    /// Row-major components.
    pub fn components(&self) -> Vec<f64> {
        match self {
            StructuralPayload::Vector(v) => vec![v.x, v.y],
            StructuralPayload::Symmetric(s) => s.components().to_vec(),
            StructuralPayload::Skew(w) => vec![0.0, w.w, -w.w, 0.0],
            StructuralPayload::Tensor(t) => t.components().to_vec(),
        }
    }

    /// 2×2 matrix form of second-order payloads.
    pub fn as_mat(&self) -> Option<Mat2> {
        match self {
            StructuralPayload::Symmetric(s) => Some(s.to_mat()),
            StructuralPayload::Skew(w) => Some(w.to_mat()),
            StructuralPayload::Tensor(t) if t.order() == 2 => {
                let c = t.components();
                Some(Mat2([[c[0], c[1]], [c[2], c[3]]]))
            }
            _ => None,
        }
    }

    pub fn as_vector(&self) -> Option<Vector2> {
        match self {
            StructuralPayload::Vector(v) => Some(*v),
            _ => None,
        }
    }

    /// Componentwise distance; infinite across kinds.
    pub fn distance(&self, other: &StructuralPayload) -> f64 {
        use StructuralPayload::*;
        match (self, other) {
            (Vector(a), Vector(b)) => a.max_abs_diff(b),
            (Symmetric(a), Symmetric(b)) => a.max_abs_diff(b),
            (Skew(a), Skew(b)) => (a.w - b.w).abs(),
            (Tensor(a), Tensor(b)) => a.max_abs_diff(b),
            _ => f64::INFINITY,
        }
    }
}

impl Transformable for StructuralPayload {
    fn transformed(&self, q: &OrthTransform) -> Self {
        match self {
            StructuralPayload::Vector(v) => StructuralPayload::Vector(v.transformed(q)),
            StructuralPayload::Symmetric(s) => StructuralPayload::Symmetric(s.transformed(q)),
            StructuralPayload::Skew(w) => StructuralPayload::Skew(w.transformed(q)),
            StructuralPayload::Tensor(t) => StructuralPayload::Tensor(t.transformed(q)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StructuralElement {
    pub label: String,
    pub payload: StructuralPayload,
}

impl StructuralElement {
    pub fn new(label: impl Into<String>, payload: StructuralPayload) -> Self {
        Self { label: label.into(), payload }
    }

    pub fn kind(&self) -> ElementKind {
        self.payload.kind()
    }
}

/// How a set has to be preserved by a symmetry operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Invariance {
    /// Members may permute among themselves.
    AsSet,
    /// Every member must be fixed.
    Individual,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StructuralSet {
    pub group: GroupId,
    pub elements: Vec<StructuralElement>,
    pub invariance: Invariance,
}

#[derive(Serialize)]
struct ElementJson<'a> {
    label: &'a str,
    kind: ElementKind,
    components: Vec<f64>,
}

#[derive(Serialize)]
struct SetJson<'a> {
    group: GroupId,
    invariance: Invariance,
    elements: Vec<ElementJson<'a>>,
}

impl StructuralSet {
    pub fn payloads(&self) -> Vec<StructuralPayload> {
        self.elements.iter().map(|e| e.payload.clone()).collect()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.elements.iter().map(|e| e.label.as_str()).collect()
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|e| e.label == label)
    }

    pub fn to_json(&self) -> Result<String> {
        let doc = SetJson {
            group: self.group,
            invariance: self.invariance,
            elements: self
                .elements
                .iter()
                .map(|e| ElementJson {
                    label: &e.label,
                    kind: e.kind(),
                    components: e.payload.components(),
                })
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }
}

/// The three unit vectors of the hexagonal sets.
pub fn hexagonal_vectors() -> [Vector2; 3] {
    let h = 3f64.sqrt() / 2.0;
    [Vector2::new(0.0, 1.0), Vector2::new(h, -0.5), Vector2::new(-h, -0.5)]
}

fn vec_el(label: &str, v: Vector2) -> StructuralElement {
    StructuralElement::new(label, StructuralPayload::Vector(v))
}

fn sym_el(label: &str, m: Mat2) -> StructuralElement {
    StructuralElement::new(label, StructuralPayload::Symmetric(m.sym_part()))
}

fn eps_el() -> StructuralElement {
    StructuralElement::new("eps", StructuralPayload::Skew(SkewTensor2::EPS))
}

/// `F = i⊗i − j⊗j`.
pub fn p2() -> SymTensor2 {
    SymTensor2::new(1.0, -1.0, 0.0)
}

/// Proposed low-order structural set of each group.
pub fn structural_set(id: GroupId) -> StructuralSet {
    let (i, j) = (Vector2::I, Vector2::J);
    let dyad = |v: Vector2| outer(&v, &v);
    let [v1, v2, v3] = hexagonal_vectors();
    let (elements, invariance) = match id {
        GroupId::C1 => (vec![vec_el("i", i), vec_el("j", j)], Invariance::Individual),
        GroupId::C1v => (vec![vec_el("i", i)], Invariance::Individual),
        GroupId::C2 => (vec![sym_el("P2", p2().to_mat()), eps_el()], Invariance::Individual),
        GroupId::C2v => (vec![sym_el("P2", p2().to_mat())], Invariance::Individual),
        GroupId::C4 => (
            vec![sym_el("M1", dyad(i)), sym_el("M2", dyad(j)), eps_el()],
            Invariance::AsSet,
        ),
        GroupId::C4v => (vec![sym_el("M1", dyad(i)), sym_el("M2", dyad(j))], Invariance::AsSet),
        GroupId::C3 => (
            vec![vec_el("v1", v1), vec_el("v2", v2), vec_el("v3", v3), eps_el()],
            Invariance::AsSet,
        ),
        GroupId::C3v => {
            (vec![vec_el("v1", v1), vec_el("v2", v2), vec_el("v3", v3)], Invariance::AsSet)
        }
        GroupId::C6 => (
            vec![
                sym_el("M1", dyad(v1)),
                sym_el("M2", dyad(v2)),
                sym_el("M3", dyad(v3)),
                eps_el(),
            ],
            Invariance::AsSet,
        ),
        GroupId::C6v => (
            vec![sym_el("M1", dyad(v1)), sym_el("M2", dyad(v2)), sym_el("M3", dyad(v3))],
            Invariance::AsSet,
        ),
        GroupId::Cinf => (vec![eps_el()], Invariance::Individual),
        GroupId::CinfV => (vec![sym_el("I", Mat2::IDENTITY)], Invariance::Individual),
    };
    StructuralSet { group: id, elements, invariance }
}

fn perpendicular(a: &Vector2) -> Vector2 {
    Vector2::new(-a.y, a.x)
}

/// Zheng's `n`-th order tensor `Re(a1 + i a2)^n` in the frame `a1 = i`.
pub fn zheng_tensor(n: usize) -> Result<TensorN> {
    zheng_tensor_in_frame(n, &Vector2::I)
}

/// Zheng's tensor for an orthonormal frame with first axis `a1` and
/// `a2 = a1` turned a quarter counter-clockwise.
pub fn zheng_tensor_in_frame(n: usize, a1: &Vector2) -> Result<TensorN> {
    let a2 = perpendicular(a1);
    let t1 = TensorN::from_vector(a1);
    let t2 = TensorN::from_vector(&a2);
    let f = TensorN::from_mat(&(outer(a1, a1) - outer(&a2, &a2)));
    let h = TensorN::from_mat(&(outer(a1, &a2) + outer(&a2, a1)));
    match n {
        1 => Ok(t1),
        2 => Ok(f),
        3 => t1.outer(&f)?.sub(&t2.outer(&h)?),
        4 => f.outer(&f)?.sub(&h.outer(&h)?),
        6 => {
            let fff = f.outer(&f)?.outer(&f)?;
            let fhh = f.outer(&h)?.outer(&h)?;
            let hfh = h.outer(&f)?.outer(&h)?;
            let hhf = h.outer(&h)?.outer(&f)?;
            fff.sub(&fhh.add(&hfh)?.add(&hhf)?)
        }
        _ => Err(Error::UnsupportedOrder(n)),
    }
}

/// First frame axis aligned with a mirror (or the reference direction) of
/// the group as oriented here. The hexagonal groups have their mirror along
/// `j`, so odd-order Zheng tensors need `a1 = j` there.
pub fn zheng_frame(id: GroupId) -> Vector2 {
    match id {
        GroupId::C3 | GroupId::C3v => Vector2::J,
        _ => Vector2::I,
    }
}

/// Zheng's structural tensors for `id`, each required to be individually
/// invariant.
pub fn zheng_set(id: GroupId) -> Result<StructuralSet> {
    let a1 = zheng_frame(id);
    let pn = |n: usize| -> Result<StructuralElement> {
        Ok(StructuralElement::new(
            format!("P{n}"),
            StructuralPayload::Tensor(zheng_tensor_in_frame(n, &a1)?),
        ))
    };
    let elements = match id {
        GroupId::C1 => vec![vec_el("i", Vector2::I), vec_el("j", Vector2::J)],
        GroupId::C1v => vec![vec_el("i", Vector2::I)],
        GroupId::C2 => vec![pn(2)?, eps_el()],
        GroupId::C2v => vec![pn(2)?],
        GroupId::C3 => vec![pn(3)?, eps_el()],
        GroupId::C3v => vec![pn(3)?],
        GroupId::C4 => vec![pn(4)?, eps_el()],
        GroupId::C4v => vec![pn(4)?],
        GroupId::C6 => vec![pn(6)?, eps_el()],
        GroupId::C6v => vec![pn(6)?],
        GroupId::Cinf => vec![eps_el()],
        GroupId::CinfV => vec![sym_el("I", Mat2::IDENTITY)],
    };
    Ok(StructuralSet { group: id, elements, invariance: Invariance::Individual })
}

/// Signed permutation induced on a structural set: `⟨Q⟩s_k = signs[k]·s_{perm[k]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InducedAction {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl InducedAction {
    pub fn identity(n: usize) -> Self {
        Self { perm: (0..n).collect(), signs: vec![1; n] }
    }

    /// Action of `Q1·Q2` given `self` for `Q1` and `other` for `Q2`.
    pub fn compose(&self, other: &InducedAction) -> InducedAction {
        let perm = other.perm.iter().map(|&k| self.perm[k]).collect();
        let signs = other.perm.iter().zip(&other.signs).map(|(&k, &s)| s * self.signs[k]).collect();
        InducedAction { perm, signs }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(k, &p)| k == p) && self.signs.iter().all(|&s| s == 1)
    }
}

/// Matches every transformed member against the set. Only sign `+1` matches
/// are accepted, so ε never matches its own negative.
pub fn induced_action(s: &StructuralSet, q: &OrthTransform, tol: f64) -> Result<InducedAction> {
    let n = s.elements.len();
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    for (k, el) in s.elements.iter().enumerate() {
        let image = el.payload.transformed(q);
        let hit = match s.invariance {
            Invariance::Individual => (image.distance(&el.payload) <= tol).then_some(k),
            Invariance::AsSet => s
                .elements
                .iter()
                .position(|other| image.distance(&other.payload) <= tol),
        };
        match hit {
            Some(j) if !used[j] => {
                used[j] = true;
                perm.push(j);
            }
            _ => {
                return Err(Error::NotClosed { label: el.label.clone(), element: q.name() });
            }
        }
    }
    Ok(InducedAction { perm, signs: vec![1; n] })
}

/// Scan grid over O(2): `grid_n` rotations over `[0, 2π)` and `grid_n`
/// reflections with axes over `[0, π)`, plus every multiple of `π/12` so the
/// crystallographic angles are hit exactly.
pub fn o2_grid(grid_n: usize) -> Result<Vec<OrthTransform>> {
    if grid_n < 360 {
        return Err(Error::GridTooCoarse(grid_n));
    }
    let merge = |uniform: Vec<f64>, exact: Vec<f64>| -> Vec<f64> {
        let mut all: Vec<f64> = uniform.into_iter().chain(exact).collect();
        all.sort_by(f64::total_cmp);
        all.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        all
    };
    let rot_angles = merge(
        (0..grid_n).map(|k| TAU * k as f64 / grid_n as f64).collect(),
        (0..24).map(|k| k as f64 * PI / 12.0).collect(),
    );
    let refl_angles = merge(
        (0..grid_n).map(|k| PI * k as f64 / grid_n as f64).collect(),
        (0..12).map(|k| k as f64 * PI / 12.0).collect(),
    );
    Ok(rot_angles
        .into_iter()
        .map(OrthTransform::rotation)
        .chain(refl_angles.into_iter().map(OrthTransform::reflection))
        .collect())
}

/// Sampled stabilizer of the set: grid elements under which the set is
/// preserved. This stands in for the quantifier over all of O(2).
pub fn characterized_group(s: &StructuralSet, grid_n: usize, tol: f64) -> Result<Vec<OrthTransform>> {
    Ok(o2_grid(grid_n)?
        .into_iter()
        .filter(|q| induced_action(s, q, tol).is_ok())
        .collect())
}

/// Whether a sampled stabilizer coincides with the elements of `id`. For the
/// continuous groups the comparison is against the grid itself.
pub fn stabilizer_matches(id: GroupId, stabilizer: &[OrthTransform], grid_n: usize) -> Result<bool> {
    let grid = o2_grid(grid_n)?;
    let expected: Vec<OrthTransform> = match id {
        GroupId::CinfV => grid,
        GroupId::Cinf => grid.into_iter().filter(|q| q.kind == OrthKind::Rotation).collect(),
        _ => crate::pointgroups::group(id).elements,
    };
    Ok(expected.len() == stabilizer.len()
        && expected
            .iter()
            .all(|e| stabilizer.iter().any(|q| q.distance(e) < crate::pointgroups::DEDUP_TOL)))
}

/// `⟨Q⟩` applied to each payload.
pub fn transform_payloads(payloads: &[StructuralPayload], q: &OrthTransform) -> Vec<StructuralPayload> {
    payloads.iter().map(|p| p.transformed(q)).collect()
}

/// Rotation by half the smallest rotation step of the group; never a member.
pub fn half_step_rotation(id: GroupId) -> Option<OrthTransform> {
    let n = match id {
        GroupId::C1 | GroupId::C1v => 1,
        GroupId::C2 | GroupId::C2v => 2,
        GroupId::C3 | GroupId::C3v => 3,
        GroupId::C4 | GroupId::C4v => 4,
        GroupId::C6 | GroupId::C6v => 6,
        GroupId::Cinf | GroupId::CinfV => return None,
    };
    Some(OrthTransform::rotation(PI / n as f64))
}
