mod common;

use std::collections::HashMap;
use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tensorrep::anisorep::{equivariance_residual, Model, ModelKind};
use tensorrep::exprdsl::{evaluate, parse, print};
use tensorrep::pointgroups::{group, GroupId};
use tensorrep::structural::{induced_action, structural_set};
use tensorrep::tensor2d::{trace_chain, Mat2, OrthTransform, SkewTensor2, SymTensor2, Transformable, Vector2};

fn orth() -> impl Strategy<Value = OrthTransform> {
    (any::<bool>(), 0.0..2.0 * PI).prop_map(|(rot, a)| {
        if rot {
            OrthTransform::rotation(a)
        } else {
            OrthTransform::reflection(a / 2.0)
        }
    })
}

fn mat() -> impl Strategy<Value = Mat2> {
    prop::array::uniform4(-2.0..2.0f64).prop_map(|a| Mat2([[a[0], a[1]], [a[2], a[3]]]))
}

fn finite_group() -> impl Strategy<Value = GroupId> {
    prop::sample::select(GroupId::FINITE.to_vec())
}

proptest! {
    #[test]
    fn composition_is_matrix_product(a in orth(), b in orth()) {
        let lhs = a.compose(&b).matrix();
        let rhs = a.matrix() * b.matrix();
        assert_abs_diff_eq!(lhs.max_abs_diff(&rhs), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn action_is_a_homomorphism(a in orth(), b in orth(), m in mat()) {
        let lhs = m.transformed(&a.compose(&b));
        let rhs = m.transformed(&b).transformed(&a);
        assert_abs_diff_eq!(lhs.max_abs_diff(&rhs), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn eps_picks_up_the_determinant(q in orth()) {
        let e = SkewTensor2::EPS.transformed(&q);
        assert_abs_diff_eq!(e.w, q.det() * SkewTensor2::EPS.w, epsilon = 1e-12);
    }

    #[test]
    fn trace_chain_is_isotropic(q in orth(), a in mat(), b in mat(), c in mat()) {
        let t0 = trace_chain(&[a, b, c]).unwrap();
        let t1 = trace_chain(&[a.transformed(&q), b.transformed(&q), c.transformed(&q)]).unwrap();
        assert_abs_diff_eq!(t0, t1, epsilon = 1e-11);
    }

    #[test]
    fn vector_dot_is_isotropic(q in orth(), x in -3.0..3.0f64, y in -3.0..3.0f64) {
        let v = Vector2::new(x, y);
        let w = Vector2::new(y, -x * 0.5);
        assert_abs_diff_eq!(v.dot(&w), v.transformed(&q).dot(&w.transformed(&q)), epsilon = 1e-12);
    }

    #[test]
    fn inverse_undoes(q in orth(), m in mat()) {
        let back = m.transformed(&q).transformed(&q.inverse());
        assert_abs_diff_eq!(back.max_abs_diff(&m), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn group_elements_have_unit_determinant_magnitude(id in finite_group()) {
        for q in &group(id).elements {
            assert_abs_diff_eq!(q.det().abs(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn structural_set_is_permuted_by_its_group(id in finite_group()) {
        let s = structural_set(id);
        for q in &group(id).elements {
            let a = induced_action(&s, q, 1e-9).unwrap();
            let mut seen = a.perm.clone();
            seen.sort_unstable();
            prop_assert_eq!(seen, (0..s.elements.len()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn symmetrized_models_are_equivariant(seed in any::<u64>(), id in finite_group(), tensor in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = tensorrep::anisorep::representation_spec(id);
        let (kind, count) = if tensor {
            (ModelKind::Tensor, spec.generators.len())
        } else {
            (ModelKind::Scalar, 1)
        };
        let free = common::random_polys(&mut rng, spec.invariants.len(), count);
        let refs: Vec<&str> = free.iter().map(String::as_str).collect();
        let m = Model::parse(id, kind, &refs, true).unwrap();
        let r = equivariance_residual(&m, 10, None, seed).unwrap();
        prop_assert!(r.max <= 1e-9, "residual {}", r.max);
    }

    #[test]
    fn resymmetrizing_is_idempotent(seed in any::<u64>(), id in finite_group()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = tensorrep::anisorep::representation_spec(id);
        let free = common::random_polys(&mut rng, spec.invariants.len(), spec.generators.len());
        let refs: Vec<&str> = free.iter().map(String::as_str).collect();
        let m = Model::parse(id, ModelKind::Tensor, &refs, true).unwrap();
        let again = m.resymmetrized().unwrap();
        let c = tensorrep::anisorep::random_sym(&mut rng);
        let d = m.eval_tensor(&c).unwrap().max_abs_diff(&again.eval_tensor(&c).unwrap());
        assert_abs_diff_eq!(d, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn print_parse_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = common::random_expr(&mut rng, 5);
        let text = print(&e);
        let back = parse(&text).unwrap();
        prop_assert_eq!(print(&back), text);
        let b: HashMap<String, f64> = common::VARS.iter().map(|v| (v.to_string(), 1.25)).collect();
        match (evaluate(&e, &b), evaluate(&back, &b)) {
            (Ok(x), Ok(y)) => prop_assert_eq!(x.to_bits(), y.to_bits()),
            (Err(_), Err(_)) => {}
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn sym_tensor_round_trips_through_mat(a in -3.0..3.0f64, b in -3.0..3.0f64, c in -3.0..3.0f64) {
        let s = SymTensor2::new(a, b, c);
        prop_assert_eq!(s.to_mat().sym_part(), s);
    }
}
