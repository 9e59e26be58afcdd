use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Model, ModelKind, RelationKind, RepresentationSpec, SignedPerm};
use crate::pointgroups::{group, GroupId};
use crate::structural::{transform_payloads, StructuralPayload};
use crate::tensor2d::{OrthTransform, SymTensor2, Transformable};
use crate::Result;

/// Samples drawn for each continuous group check.
pub const CONTINUOUS_SAMPLES: usize = 64;

/// Symmetric part of a matrix with i.i.d. entries uniform in `[-1, 1]`.
pub fn random_sym<R: Rng + ?Sized>(rng: &mut R) -> SymTensor2 {
    let a: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..=1.0));
    SymTensor2::new(a[0], a[3], 0.5 * (a[1] + a[2]))
}

/// Largest defect seen and where it occurred.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Residual {
    pub max: f64,
    pub element: Option<OrthTransform>,
    pub c: Option<SymTensor2>,
}

impl Residual {
    fn record(&mut self, value: f64, q: Option<&OrthTransform>, c: &SymTensor2) {
        if value > self.max || self.c.is_none() {
            self.max = self.max.max(value);
            self.element = q.copied();
            self.c = Some(*c);
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationResidual {
    pub text: String,
    pub residual: Residual,
}

fn check_elements(id: GroupId, rng: &mut ChaCha8Rng) -> Vec<OrthTransform> {
    group(id).sample_elements(CONTINUOUS_SAMPLES, rng)
}

/// Max over random `C` and group elements of `‖⟨Q⟩T(C) − T(⟨Q⟩C)‖∞`, or
/// `|ψ(C) − ψ(⟨Q⟩C)|` for scalar models.
pub fn equivariance_residual(
    m: &Model,
    n_samples: usize,
    group_override: Option<GroupId>,
    seed: u64,
) -> Result<Residual> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let elements = check_elements(group_override.unwrap_or(m.group()), &mut rng);
    let mut out = Residual::default();
    for _ in 0..n_samples {
        let c = random_sym(&mut rng);
        match m.kind {
            ModelKind::Scalar => {
                let psi = m.eval_scalar(&c)?;
                for q in &elements {
                    let d = (psi - m.eval_scalar(&c.transformed(q))?).abs();
                    out.record(d, Some(q), &c);
                }
            }
            ModelKind::Tensor => {
                let t = m.eval_tensor(&c)?;
                for q in &elements {
                    let d = t.transformed(q).max_abs_diff(&m.eval_tensor(&c.transformed(q))?);
                    out.record(d, Some(q), &c);
                }
            }
        }
    }
    Ok(out)
}

/// Equivariance of the stress derived from a scalar model.
pub fn stress_equivariance_residual(
    m: &Model,
    n_samples: usize,
    group_override: Option<GroupId>,
    seed: u64,
) -> Result<Residual> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let elements = check_elements(group_override.unwrap_or(m.group()), &mut rng);
    let mut out = Residual::default();
    for _ in 0..n_samples {
        let c = random_sym(&mut rng);
        let t = m.stress(&c)?;
        for q in &elements {
            let d = t.transformed(q).max_abs_diff(&m.stress(&c.transformed(q))?);
            out.record(d, Some(q), &c);
        }
    }
    Ok(out)
}

fn permuted(s: &[StructuralPayload], perm: &[usize]) -> Vec<StructuralPayload> {
    perm.iter().map(|&k| s[k].clone()).collect()
}

/// Residual of each printed relation matching the model kind, over random `C`.
pub fn constraint_residuals(m: &Model, n_samples: usize, seed: u64) -> Result<Vec<RelationResidual>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = m.spec.payloads();
    let relations: Vec<_> = m
        .spec
        .relations
        .iter()
        .filter(|r| match r.kind {
            RelationKind::Coefficient { .. } => m.kind == ModelKind::Tensor,
            RelationKind::Potential => m.kind == ModelKind::Scalar,
        })
        .collect();
    let mut out: Vec<RelationResidual> = relations
        .iter()
        .map(|r| RelationResidual { text: r.text.clone(), residual: Residual::default() })
        .collect();
    for _ in 0..n_samples {
        let c = random_sym(&mut rng);
        let alpha = m.coefficients(&m.spec.eval_invariants_with(&c, &s)?)?;
        for (r, slot) in relations.iter().zip(out.iter_mut()) {
            let moved = m.coefficients(&m.spec.eval_invariants_with(&c, &permuted(&s, &r.perm))?)?;
            let d = match r.kind {
                RelationKind::Coefficient { lhs, rhs, sign } => (alpha[lhs] - sign as f64 * moved[rhs]).abs(),
                RelationKind::Potential => (alpha[0] - moved[0]).abs(),
            };
            slot.residual.record(d, None, &c);
        }
    }
    Ok(out)
}

/// Max defect of the unreduced relation set: `α = ρᵀ α(π·J)` for every
/// generator action, evaluated at random `C`.
pub fn full_constraint_residual(m: &Model, n_samples: usize, seed: u64) -> Result<Residual> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Residual::default();
    for _ in 0..n_samples {
        let c = random_sym(&mut rng);
        let j = m.spec.eval_invariants(&c)?;
        let alpha = m.coefficients(&j)?;
        for a in &m.spec.actions {
            let moved = m.coefficients(&a.invariants.apply(&j))?;
            let d = match m.kind {
                ModelKind::Scalar => (alpha[0] - moved[0]).abs(),
                ModelKind::Tensor => (0..alpha.len())
                    .map(|i| {
                        let k = a.generators.src.iter().position(|&s| s == i).expect("permutation");
                        (alpha[i] - a.generators.sign[k] as f64 * moved[k]).abs()
                    })
                    .fold(0.0, f64::max),
            };
            out.record(d, Some(&a.element), &c);
        }
    }
    Ok(out)
}

/// Slot actions of every group element, obtained by composing generator
/// actions along words; `A(g·e) = A(e) ∘ A(g)`.
fn element_actions(spec: &RepresentationSpec) -> Vec<(OrthTransform, SignedPerm, SignedPerm)> {
    let (ni, ng) = (spec.invariants.len(), spec.generators.len());
    let g = group(spec.group);
    let gens: Vec<(OrthTransform, SignedPerm, SignedPerm)> = g
        .generators
        .iter()
        .map(|q| {
            spec.actions
                .iter()
                .find(|a| a.element.distance(q) < 1e-9)
                .map(|a| (*q, a.invariants.clone(), a.generators.clone()))
                .unwrap_or((*q, SignedPerm::identity(ni), SignedPerm::identity(ng)))
        })
        .collect();
    let mut out = vec![(OrthTransform::identity(), SignedPerm::identity(ni), SignedPerm::identity(ng))];
    let mut k = 0;
    while k < out.len() {
        for (q, pi, rho) in &gens {
            let e = &out[k];
            let elem = q.compose(&e.0);
            if out.iter().all(|x| x.0.distance(&elem) >= 1e-9) {
                let next = (elem, e.1.compose(pi), e.2.compose(rho));
                out.push(next);
            }
        }
        k += 1;
    }
    out
}

/// Compares composed slot actions with re-evaluation after substituting
/// `⟨Q⟩S`, over every element of a finite group (sampled elements with the
/// trivial action for continuous ones). Returns the max deviation.
pub fn action_consistency_check(spec: &RepresentationSpec) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let s = spec.payloads();
    let actions = if spec.group.is_continuous() {
        let (ni, ng) = (spec.invariants.len(), spec.generators.len());
        check_elements(spec.group, &mut rng)
            .into_iter()
            .map(|q| (q, SignedPerm::identity(ni), SignedPerm::identity(ng)))
            .collect()
    } else {
        element_actions(spec)
    };
    let mut worst = 0.0f64;
    for _ in 0..8 {
        let c = random_sym(&mut rng);
        let j = spec.eval_invariants_with(&c, &s)?;
        let g = spec.eval_generators_with(&c, &s)?;
        for (q, pi, rho) in &actions {
            let moved = transform_payloads(&s, q);
            let j_q = spec.eval_invariants_with(&c, &moved)?;
            let g_q = spec.eval_generators_with(&c, &moved)?;
            for (a, b) in pi.apply(&j).iter().zip(&j_q) {
                worst = worst.max((a - b).abs());
            }
            for (a, b) in rho.apply_sym(&g).iter().zip(&g_q) {
                worst = worst.max(a.max_abs_diff(b));
            }
        }
    }
    Ok(worst)
}
