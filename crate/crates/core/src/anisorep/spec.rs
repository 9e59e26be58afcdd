use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

use super::{
    Factor, GeneratorForm, InvariantForm, Relation, RelationKind, RepresentationSpec, SignedPerm,
    SlotAction,
};
use crate::pointgroups::GroupId;
use crate::structural::structural_set;
use crate::tensor2d::OrthTransform;

use Factor::{C, S};
use GeneratorForm as G;
use InvariantForm::{Chain, Quad};

fn action(element: OrthTransform, inv: SignedPerm, gen: SignedPerm) -> SlotAction {
    SlotAction { element, invariants: inv, generators: gen }
}

fn args(labels: &[&str], perm: &[usize]) -> String {
    let mut parts = vec!["C"];
    parts.extend(perm.iter().map(|&k| labels[k]));
    parts.join(",")
}

fn coefficient(labels: &[&str], lhs: usize, rhs: usize, sign: i8, perm: &[usize]) -> Relation {
    let id: Vec<usize> = (0..labels.len()).collect();
    let text = format!(
        "a{lhs}({}) = {}a{rhs}({})",
        args(labels, &id),
        if sign < 0 { "-" } else { "" },
        args(labels, perm)
    );
    Relation { kind: RelationKind::Coefficient { lhs, rhs, sign }, perm: perm.to_vec(), text }
}

fn potential(labels: &[&str], perm: &[usize]) -> Relation {
    let id: Vec<usize> = (0..labels.len()).collect();
    let text = format!("psi({}) = psi({})", args(labels, &id), args(labels, perm));
    Relation { kind: RelationKind::Potential, perm: perm.to_vec(), text }
}

/// Representation of `id`: invariants, generators, slot actions of each group
/// generator, and the simplified coefficient relations.
pub fn representation_spec(id: GroupId) -> RepresentationSpec {
    let structural = structural_set(id);
    let labels = structural.labels();
    let r = OrthTransform::rotation;
    let unsigned = SignedPerm::unsigned;
    let (invariants, generators, actions, relations) = match id {
        GroupId::C4 => {
            let p = [1, 0, 2];
            (
                vec![Chain(vec![C, S(0)]), Chain(vec![C, S(1)]), Chain(vec![C, S(0), S(2)])],
                vec![G::C, G::Struct(0), G::Struct(1), G::CommC(2), G::CommStruct(0, 2)],
                vec![action(
                    r(FRAC_PI_2),
                    SignedPerm::new(vec![1, 0, 2], vec![1, 1, -1]),
                    SignedPerm::new(vec![0, 2, 1, 3, 4], vec![1, 1, 1, 1, -1]),
                )],
                vec![
                    coefficient(&labels, 0, 0, 1, &p),
                    coefficient(&labels, 1, 2, 1, &p),
                    coefficient(&labels, 3, 3, 1, &p),
                    coefficient(&labels, 4, 4, -1, &p),
                    potential(&labels, &p),
                ],
            )
        }
        GroupId::C4v => {
            let p = [1, 0];
            (
                vec![Chain(vec![C, C]), Chain(vec![C, S(0)]), Chain(vec![C, S(1)])],
                vec![G::C, G::Struct(0), G::Struct(1)],
                vec![
                    action(r(FRAC_PI_2), unsigned(vec![0, 2, 1]), unsigned(vec![0, 2, 1])),
                    action(
                        OrthTransform::reflection(0.0),
                        SignedPerm::identity(3),
                        SignedPerm::identity(3),
                    ),
                ],
                vec![
                    coefficient(&labels, 0, 0, 1, &p),
                    coefficient(&labels, 1, 2, 1, &p),
                    potential(&labels, &p),
                ],
            )
        }
        GroupId::C3 | GroupId::C3v => {
            let invariants = vec![Quad(0, 0), Quad(1, 1), Quad(2, 2)];
            let mut generators = vec![G::C, G::Dyad(0, 0), G::Dyad(1, 1), G::Dyad(2, 2)];
            if id == GroupId::C3 {
                generators.push(G::CommC(3));
                let p = [1, 2, 0, 3];
                let actions = vec![action(
                    r(2.0 * PI / 3.0),
                    unsigned(vec![1, 2, 0]),
                    unsigned(vec![0, 2, 3, 1, 4]),
                )];
                let relations = vec![
                    coefficient(&labels, 0, 0, 1, &p),
                    coefficient(&labels, 1, 3, 1, &p),
                    coefficient(&labels, 2, 1, 1, &p),
                    coefficient(&labels, 4, 4, 1, &p),
                    potential(&labels, &p),
                ];
                (invariants, generators, actions, relations)
            } else {
                let (p, q) = ([1, 2, 0], [0, 2, 1]);
                let actions = vec![
                    action(r(2.0 * PI / 3.0), unsigned(vec![1, 2, 0]), unsigned(vec![0, 2, 3, 1])),
                    action(
                        OrthTransform::reflection(FRAC_PI_2),
                        unsigned(vec![0, 2, 1]),
                        unsigned(vec![0, 1, 3, 2]),
                    ),
                ];
                let relations = vec![
                    coefficient(&labels, 0, 0, 1, &p),
                    coefficient(&labels, 1, 3, 1, &p),
                    coefficient(&labels, 2, 1, 1, &p),
                    coefficient(&labels, 3, 2, 1, &q),
                    potential(&labels, &p),
                    potential(&labels, &q),
                ];
                (invariants, generators, actions, relations)
            }
        }
        GroupId::C6 | GroupId::C6v => {
            let invariants = vec![Chain(vec![C, S(0)]), Chain(vec![C, S(1)]), Chain(vec![C, S(2)])];
            let mut generators = vec![G::C, G::Struct(0), G::Struct(1), G::Struct(2)];
            if id == GroupId::C6 {
                generators.push(G::CommC(3));
                let p = [2, 0, 1, 3];
                let actions = vec![action(
                    r(FRAC_PI_3),
                    unsigned(vec![2, 0, 1]),
                    unsigned(vec![0, 3, 1, 2, 4]),
                )];
                let relations = vec![
                    coefficient(&labels, 0, 0, 1, &p),
                    coefficient(&labels, 1, 2, 1, &p),
                    coefficient(&labels, 2, 3, 1, &p),
                    coefficient(&labels, 4, 4, 1, &p),
                    potential(&labels, &p),
                ];
                (invariants, generators, actions, relations)
            } else {
                let (p, q) = ([2, 0, 1], [0, 2, 1]);
                let actions = vec![
                    action(r(FRAC_PI_3), unsigned(vec![2, 0, 1]), unsigned(vec![0, 3, 1, 2])),
                    action(
                        OrthTransform::reflection(FRAC_PI_2),
                        unsigned(vec![0, 2, 1]),
                        unsigned(vec![0, 1, 3, 2]),
                    ),
                ];
                let relations = vec![
                    coefficient(&labels, 0, 0, 1, &p),
                    coefficient(&labels, 1, 2, 1, &p),
                    coefficient(&labels, 3, 1, 1, &p),
                    coefficient(&labels, 2, 3, 1, &q),
                    potential(&labels, &p),
                    potential(&labels, &q),
                ];
                (invariants, generators, actions, relations)
            }
        }
        GroupId::C1 => (
            vec![Quad(0, 0), Quad(1, 1), Quad(0, 1)],
            vec![G::Dyad(0, 0), G::Dyad(1, 1), G::Dyad(0, 1)],
            vec![],
            vec![],
        ),
        GroupId::C1v => (
            vec![Chain(vec![C]), Chain(vec![C, C]), Quad(0, 0)],
            vec![G::Identity, G::Dyad(0, 0), G::C],
            vec![],
            vec![],
        ),
        GroupId::C2 => (
            vec![Chain(vec![C]), Chain(vec![S(0), C]), Chain(vec![S(0), C, S(1)])],
            vec![G::Identity, G::Struct(0), G::StructProduct(0, 1)],
            vec![],
            vec![],
        ),
        GroupId::C2v => (
            vec![Chain(vec![C]), Chain(vec![C, C]), Chain(vec![S(0), C])],
            vec![G::Identity, G::Struct(0), G::C],
            vec![],
            vec![],
        ),
        GroupId::Cinf => (
            vec![Chain(vec![C]), Chain(vec![C, C])],
            vec![G::Identity, G::C, G::CommC(0)],
            vec![],
            vec![],
        ),
        GroupId::CinfV => (
            vec![Chain(vec![C]), Chain(vec![C, C])],
            vec![G::Identity, G::C],
            vec![],
            vec![],
        ),
    };
    RepresentationSpec { group: id, structural, invariants, generators, actions, relations }
}
