use proptest::prelude::*;

use superchar::closed_forms::{branch_candidates, eval_supertrace, ProjKind};
use superchar::module::{tensor_vector_decompose, ModuleCache};
use superchar::operator::{char_matrix, projector, verify_char_identity, BranchingModule, CharKind, Measure};
use superchar::tower::{tower_scalars, DEFAULT_ORDER};
use superchar::verify::verify_kac;
use superchar::*;

fn w(even: &[i64], odd: &[i64]) -> Weight {
    Weight::from_ints(even, odd)
}

#[test]
fn measurements_match_closed_forms_across_signatures() {
    for top in [w(&[2], &[0]), w(&[3], &[1]), w(&[4], &[0, -1]), w(&[5], &[1, -2]), w(&[0, -2], &[4])] {
        let rep = verify_kac(&top).unwrap();
        assert!(rep.passed(), "{top}: {:#?}", rep.failures());
        assert_eq!(rep.undetermined_count(), 0, "{top}");
    }
}

#[test]
fn vanishing_projector_leaves_delta_undetermined() {
    // equal even labels on the (-2,-2|) component make P[1] the zero operator there
    let rep = verify_kac(&w(&[-1, -2], &[4])).unwrap();
    assert!(rep.passed(), "{:#?}", rep.failures());
    assert_eq!(rep.undetermined_count(), 2);
}

#[test]
fn gl02_trivial_supertrace_witness() {
    let sig = Signature::new(0, 2).unwrap();
    let triv = GModule::new(sig, vec![Matrix::zeros(1, 1); 4], vec![0], vec![Weight::zero(sig)]);
    let x = char_matrix(&triv, CharKind::Vector);
    let roots = characteristic_roots(&Weight::zero(sig)).vector_roots;
    let p2 = projector(&x, &roots, 2).unwrap();
    let measured = p2.supertrace(sig).as_scalar().unwrap();
    assert_eq!(measured, Scalar::from_int(-2));
    assert_eq!(eval_supertrace(&Weight::zero(sig), 2, ProjKind::P).unwrap(), measured);
    assert!(verify_char_identity(&triv, CharKind::Vector).is_zero());
}

#[test]
fn low_rank_measurements() {
    let bm = BranchingModule::new(build_kac_module(&w(&[4], &[0, -1])).unwrap()).unwrap();
    let strp: Vec<Scalar> = {
        let ci = bm.component_index(&w(&[4], &[0])).unwrap();
        (1..=2).map(|r| bm.measure(ci, Measure::StrP, r).unwrap()).collect()
    };
    assert_eq!(strp.iter().cloned().sum::<Scalar>(), Scalar::zero());
    let i2 = bm.measure(0, Measure::I2, 0).unwrap();
    assert_eq!(i2, casimir2_eigenvalue(&bm.components[0].weight));
}

#[test]
fn tower_on_two_modules() {
    for top in [w(&[4], &[0, -1]), w(&[-1, -3], &[-2])] {
        let m = build_kac_module(&top).unwrap();
        let rep = tower_scalars(&m, DEFAULT_ORDER).unwrap();
        assert!(rep.failures().is_empty(), "{top}: {:?}", rep.identities);
        assert_eq!(rep.casimir_top[2], rep.quadratic_form);
        for c in &rep.components {
            assert_eq!(c.tau[0], Scalar::one());
            assert!(c.casimir_from_roots);
        }
    }
}

#[test]
fn tensor_with_vector_and_dual() {
    for top in [w(&[2], &[0]), w(&[4], &[0, -1]), w(&[0, -2], &[4])] {
        let k = build_kac_module(&top).unwrap();
        let n = top.signature().size();
        for dual in [false, true] {
            let d = tensor_vector_decompose(&k, dual).unwrap();
            let total: usize = d.parts.iter().map(|c| c.dim()).sum();
            assert_eq!(total, n * k.dim(), "{top} dual={dual}");
            let mut ws = d.weights();
            ws.sort();
            ws.dedup();
            assert_eq!(ws.len(), d.parts.len());
        }
    }
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = ModuleCache::new(dir.path());
    let top = w(&[4], &[0, -1]);
    let built = cache.kac_module(&top).unwrap();
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    assert_eq!(cache.kac_module(&top).unwrap(), built);
}

#[test]
fn degenerate_inputs_are_rejected() {
    assert!(matches!(build_kac_module(&w(&[1], &[0, -1])), Err(Error::RootsCoincide { .. })));
    assert!(matches!(build_kac_module(&w(&[1], &[-1, -2])), Err(Error::Atypical { .. })));
    assert!(matches!(verify_kac(&w(&[3, 1], &[0])), Err(Error::RootsCoincide { .. })));
}

fn generic(w: &Weight) -> bool {
    let r = characteristic_roots(w);
    r.coinciding_pair().is_none() && r.coinciding_adjoint_pair().is_none()
}

fn gl12_weight() -> impl Strategy<Value = Weight> {
    (-2i64..=5, -2i64..=2, 0i64..=3).prop_map(|(a, b, d)| w(&[a], &[b, b - d]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    /// Every measured invariant equals its closed form on random gl(1|2) Kac
    /// modules whose components all have distinct roots.
    #[test]
    fn random_gl12_modules_verify(top in gl12_weight().prop_filter("valid", |t| {
        typicality(t).is_empty()
            && roots_distinct(&characteristic_roots(t))
            && branch_candidates(t).unwrap().iter().all(generic)
    })) {
        let rep = verify_kac(&top).unwrap();
        prop_assert!(rep.passed(), "{}: {:?}", top, rep.failures());
    }
}
