use proptest::prelude::*;

use superchar::closed_forms::{
    branch_candidates, casimir_from_roots, eval_index_free, eval_set_indexed, eval_supertrace, invariant_table,
    BranchPair, CasimirKind, Convention, Invariant, ProjKind,
};
use superchar::linalg::{inverse, kernel_basis, rank};
use superchar::module::kac_dimension;
use superchar::*;

fn sig_strategy() -> impl Strategy<Value = Signature> {
    (0usize..=3, 0usize..=3)
        .prop_filter("nonempty", |(m, n)| m + n > 0)
        .prop_map(|(m, n)| Signature::new(m, n).unwrap())
}

/// Dominant integral weights with labels in a small window.
fn weight_strategy(sig: Signature) -> impl Strategy<Value = Weight> {
    let even = prop::collection::vec(0i64..=3, sig.m);
    let odd = prop::collection::vec(0i64..=3, sig.n);
    (-3i64..=3, -3i64..=3, even, odd).prop_map(move |(e0, o0, de, dn)| {
        let mut even = Vec::with_capacity(de.len());
        let mut x = e0 + de.iter().sum::<i64>();
        for d in &de {
            even.push(x);
            x -= d;
        }
        let mut odd = Vec::with_capacity(dn.len());
        let mut y = o0 + dn.iter().sum::<i64>();
        for d in &dn {
            odd.push(y);
            y -= d;
        }
        Weight::from_ints(&even, &odd)
    })
}

fn any_weight() -> impl Strategy<Value = Weight> {
    sig_strategy().prop_flat_map(weight_strategy)
}

fn generic(w: &Weight) -> bool {
    let r = characteristic_roots(w);
    r.coinciding_pair().is_none() && r.coinciding_adjoint_pair().is_none()
}

/// A top weight over gl(m|n+1) with distinct roots and one of its components.
fn branching_pair() -> impl Strategy<Value = (Weight, Weight)> {
    (0usize..=2, 0usize..=2)
        .prop_filter("nonempty", |(m, n)| m + n > 0)
        .prop_flat_map(|(m, n)| weight_strategy(Signature::new(m, n + 1).unwrap()))
        .prop_filter("distinct roots", generic)
        .prop_flat_map(|top| {
            let cands = branch_candidates(&top).unwrap();
            let n = cands.len();
            (Just(top), Just(cands), 0..n)
        })
        .prop_map(|(top, cands, i)| (top, cands[i].clone()))
        .prop_filter("distinct sub roots", |(_, sub)| generic(sub))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn weight_text_round_trip(w in any_weight()) {
        let text = w.to_string();
        let back = Weight::parse_for(w.signature(), &text).unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn candidates_satisfy_betweenness(top in sig_strategy().prop_filter("n>0", |s| s.n > 0).prop_flat_map(weight_strategy)) {
        let cands = branch_candidates(&top).unwrap();
        prop_assert!(!cands.is_empty());
        for c in &cands {
            prop_assert!(c.is_dominant());
            prop_assert!(BranchPair::new(&top, c).is_ok());
        }
        let mut sorted = cands.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), cands.len());
    }

    /// Root-side traces against the weight-side eigenvalues: `Σ str P = m−n`,
    /// the linear trace is `Σ Λ_p` and the quadratic one is `(Λ, Λ+2ρ)`.
    #[test]
    fn supertraces_reproduce_low_casimirs(w in any_weight().prop_filter("generic", generic)) {
        let sig = w.signature();
        let total: Scalar = (1..=sig.size()).map(|r| eval_supertrace(&w, r, ProjKind::P).unwrap()).sum();
        prop_assert_eq!(total, Scalar::from_int(sig.m as i64 - sig.n as i64));
        let linear: Scalar = w.flat().into_iter().sum();
        prop_assert_eq!(casimir_from_roots(&w, 1, CasimirKind::I).unwrap(), linear);
        prop_assert_eq!(casimir_from_roots(&w, 2, CasimirKind::I).unwrap(), casimir2_eigenvalue(&w));
        prop_assert_eq!(
            casimir_from_roots(&w, 0, CasimirKind::IBar).unwrap(),
            Scalar::from_int(sig.m as i64 - sig.n as i64)
        );
    }

    /// Both closed forms agree, and the table's internal relations hold:
    /// `Σ c = 1`, the linear relations, `γ̄ = δ·strP`, `γ = δ̄·strP̄`.
    #[test]
    fn closed_forms_are_consistent((top, sub) in branching_pair()) {
        let pair = BranchPair::new(&top, &sub).unwrap();
        prop_assert!(invariant_table(&pair).is_ok(), "{:?}", invariant_table(&pair).err());
        for which in Invariant::ALL {
            for r in 1..=which.max_index(sub.signature()) {
                let set = eval_set_indexed(&pair, which, r).ok().and_then(|e| e.numeric());
                let free = eval_index_free(&pair, which, r, Convention::Measured).ok();
                if let (Some(a), Some(b)) = (set, free) {
                    prop_assert_eq!(a, b, "{} r={}", which.name(), r);
                }
            }
        }
    }

    #[test]
    fn kac_dimension_is_power_of_two_times_even_part(w in any_weight()) {
        let sig = w.signature();
        let d = kac_dimension(&w);
        let two = Scalar::from_int(2).pow((sig.m * sig.n) as u32);
        let even = d.checked_div(&two).unwrap();
        prop_assert!(even.is_integer() && !even.is_negative() && !even.is_zero());
    }

    #[test]
    fn inverse_and_kernel(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 4)) {
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let m = Matrix::from_i64(&refs);
        let k = kernel_basis(&m);
        prop_assert_eq!(k.dim() + rank(&m), 4);
        for v in k.basis() {
            prop_assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
        }
        match inverse(&m) {
            Some(inv) => {
                prop_assert_eq!(rank(&m), 4);
                prop_assert_eq!(inv.mul(&m), Matrix::identity(4));
            }
            None => prop_assert!(rank(&m) < 4),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Small Kac modules satisfy the relations and carry the right quadratic
    /// Casimir scalar (both asserted inside the builder).
    #[test]
    fn small_kac_modules_build(w in (0usize..=1, 1usize..=2)
        .prop_flat_map(|(m, n)| weight_strategy(Signature::new(m.max(1), n).unwrap()))
        .prop_filter("typical", |w| typicality(w).is_empty() && generic(w)))
    {
        let k = build_kac_module(&w).unwrap();
        prop_assert_eq!(Scalar::from_int(k.dim() as i64), kac_dimension(&w));
        prop_assert!(k.check_relations().is_ok());
    }
}
