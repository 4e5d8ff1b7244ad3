//! Randomized property checks: ordered-field laws for the Laurent scalars
//! (exact on dyadic coefficients), order/standard-part structure, and the
//! weighted-grid identities (reconstruction, Parseval, integration by
//! parts, negative semidefiniteness of the Laplacians).

use proptest::prelude::*;

use hfqm_core::deriv::{build_derivative, laplacian, LaplacianVariant};
use hfqm_core::distributions::{equivalent, pairing_symbolic, TestFamily, TestFunction};
use hfqm_core::grid::{delta, make_grid, sqrt_delta, GridFunction};
use hfqm_core::scalar::{Classification, ComplexEuclidean, EuclideanScalar, StandardPart};
use hfqm_core::symbolic::SymbolicState;

/// Scalars with dyadic coefficients (k/16) and exponents in [-1, 1]:
/// products of three stay inside the truncation window and all coefficient
/// arithmetic is exact in f64.
fn dyadic_scalar() -> impl Strategy<Value = EuclideanScalar> {
    proptest::collection::vec((-1i32..=1, -64i32..=64), 0..3).prop_map(|terms| {
        let mut s = EuclideanScalar::zero();
        for (k, num) in terms {
            s = s + EuclideanScalar::term(num as f64 / 16.0, k);
        }
        s
    })
}

/// Finite scalars (no negative exponents), still dyadic.
fn finite_dyadic_scalar() -> impl Strategy<Value = EuclideanScalar> {
    proptest::collection::vec((0i32..=2, -64i32..=64), 0..3).prop_map(|terms| {
        let mut s = EuclideanScalar::zero();
        for (k, num) in terms {
            s = s + EuclideanScalar::term(num as f64 / 16.0, k);
        }
        s
    })
}

proptest! {
    #[test]
    fn ring_laws_hold_exactly_on_dyadics(
        a in dyadic_scalar(),
        b in dyadic_scalar(),
        c in dyadic_scalar(),
    ) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!(
            (a.clone() + b.clone()) + c.clone(),
            a.clone() + (b.clone() + c.clone())
        );
        prop_assert_eq!(
            (a.clone() * b.clone()) * c.clone(),
            a.clone() * (b.clone() * c.clone())
        );
        prop_assert_eq!(
            a.clone() * (b.clone() + c.clone()),
            a.clone() * b.clone() + a.clone() * c.clone()
        );
    }

    #[test]
    fn order_is_compatible_with_arithmetic(
        a in dyadic_scalar(),
        b in dyadic_scalar(),
        c in dyadic_scalar(),
    ) {
        if a < b {
            prop_assert!(a.clone() + c.clone() < b.clone() + c.clone());
            if c > EuclideanScalar::zero() {
                prop_assert!(a.clone() * c.clone() < b.clone() * c.clone());
            }
        }
    }

    #[test]
    fn trichotomy(a in dyadic_scalar(), b in dyadic_scalar()) {
        let lt = a < b;
        let eq = a == b;
        let gt = a > b;
        prop_assert_eq!(u8::from(lt) + u8::from(eq) + u8::from(gt), 1);
    }

    #[test]
    fn standard_part_is_a_ring_morphism_on_finite_elements(
        a in finite_dyadic_scalar(),
        b in finite_dyadic_scalar(),
    ) {
        let st = |s: &EuclideanScalar| match s.standard_part() {
            StandardPart::Finite(x) => x,
            _ => unreachable!("finite by construction"),
        };
        prop_assert_eq!(st(&(a.clone() + b.clone())), st(&a) + st(&b));
        prop_assert_eq!(st(&(a.clone() * b.clone())), st(&a) * st(&b));
    }

    #[test]
    fn infinite_closeness_is_an_equivalence(
        a in dyadic_scalar(),
        b in dyadic_scalar(),
        c in dyadic_scalar(),
    ) {
        prop_assert!(a.infinitely_close(&a));
        if a.infinitely_close(&b) {
            prop_assert!(b.infinitely_close(&a));
            if b.infinitely_close(&c) {
                prop_assert!(a.infinitely_close(&c));
            }
        }
    }

    #[test]
    fn inverse_recovers_one_up_to_truncation(
        lead in prop::sample::select(vec![-2.0f64, -1.0, -0.5, 0.5, 1.0, 3.0]),
        tail in proptest::collection::vec((1i32..=2, -8i32..=8), 0..3),
    ) {
        // nonzero leading coefficient at ε⁰; junk can only appear past ε^K
        let mut a = EuclideanScalar::from_real(lead);
        for (k, num) in tail {
            a = a + EuclideanScalar::term(num as f64 / 4.0, k);
        }
        let inv = a.try_recip().unwrap();
        let prod = a * inv;
        let one = EuclideanScalar::one();
        for k in -4..=4 {
            let want = one.coeff(k);
            prop_assert!(
                (prod.coeff(k) - want).abs() <= 1e-9,
                "coeff at ε^{} is {}", k, prod.coeff(k)
            );
        }
    }
}

fn random_grid_function(grid: &hfqm_core::grid::Grid, values: &[f64]) -> GridFunction<f64> {
    GridFunction::from_values(grid, values.to_vec()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reconstruction_from_delta_coefficients_is_exact(
        values in proptest::collection::vec(-100.0f64..100.0, 21),
    ) {
        let g = make_grid(21, 0.05).unwrap();
        let u = random_grid_function(&g, &values);
        for a in 0..g.n() {
            let coeff = u.integral_of_product(&delta(&g, a).unwrap()).unwrap();
            prop_assert_eq!(coeff, *u.value(a));
        }
    }

    #[test]
    fn parseval_over_the_delta_basis(
        values in proptest::collection::vec(-10.0f64..10.0, 31),
    ) {
        let g = make_grid(31, 0.05).unwrap();
        let u = random_grid_function(&g, &values);
        let norm2 = u.inner_product(&u).unwrap();
        let mut total = 0.0;
        for a in 0..g.n() {
            let c = u.inner_product(&sqrt_delta(&g, a).unwrap()).unwrap();
            total += c * c;
        }
        prop_assert!((total - norm2).abs() <= 1e-12 * norm2.max(1e-30));
    }

    #[test]
    fn integration_by_parts_residual(
        u_vals in proptest::collection::vec(-5.0f64..5.0, 51),
        v_vals in proptest::collection::vec(-5.0f64..5.0, 51),
    ) {
        let g = make_grid(51, 0.1).unwrap();
        let u = random_grid_function(&g, &u_vals);
        let v = random_grid_function(&g, &v_vals);
        let d = build_derivative(&g);
        let lhs = d.apply(&u).integral_of_product(&v).unwrap();
        let rhs = u.integral_of_product(&d.apply(&v)).unwrap();
        let scale = u.norm() * v.norm();
        prop_assert!((lhs + rhs).abs() <= 1e-13 * scale.max(1e-30));
    }

    #[test]
    fn laplacians_are_negative_semidefinite(
        vals in proptest::collection::vec(-5.0f64..5.0, 41),
    ) {
        let g = make_grid(41, 0.07).unwrap();
        let u = random_grid_function(&g, &vals);
        for variant in [LaplacianVariant::PaperLiteral, LaplacianVariant::Compact] {
            let q = laplacian(&g, variant).apply(&u).inner_product(&u).unwrap();
            prop_assert!(q <= 1e-11 * u.norm().powi(2).max(1.0), "{:?}: {}", variant, q);
        }
    }

    #[test]
    fn distribution_equivalence_is_an_equivalence_relation(
        a_idx in 0usize..41,
        b_idx in 0usize..41,
        scale_num in -4i32..=4,
    ) {
        let g = make_grid(41, 0.05).unwrap();
        let fam = TestFamily::new(vec![
            TestFunction::poly_bump(0.0, 0.8),
            TestFunction::poly_bump(0.3, 0.5),
        ]);
        let base = SymbolicState::embedded(
            hfqm_core::grid::embed_total(|x| (-x * x).exp(), &g).unwrap(),
        );
        let eps = ComplexEuclidean::from_real(
            EuclideanScalar::epsilon() * (scale_num as f64 / 2.0),
        );
        let u = base
            .add(&SymbolicState::delta(&g, a_idx).unwrap().scale(&eps))
            .unwrap();
        let v = base
            .add(&SymbolicState::delta(&g, b_idx).unwrap().scale(&eps))
            .unwrap();
        // reflexive, symmetric, and transitive through the base state
        prop_assert!(equivalent(&u, &u, &fam).unwrap());
        prop_assert!(equivalent(&u, &base, &fam).unwrap());
        prop_assert!(equivalent(&base, &v, &fam).unwrap());
        prop_assert!(equivalent(&u, &v, &fam).unwrap());
    }

    #[test]
    fn associate_is_linear_on_delta_combinations(
        a_idx in 0usize..41,
        b_idx in 0usize..41,
        alpha_pow in -2i32..=2,
        beta_pow in -2i32..=2,
    ) {
        // power-of-two coefficients keep every float operation exact
        let g = make_grid(41, 0.05).unwrap();
        let phi = TestFunction::poly_bump(0.1, 0.7);
        let alpha = 2.0f64.powi(alpha_pow);
        let beta = -(2.0f64.powi(beta_pow));
        let da = SymbolicState::delta(&g, a_idx).unwrap();
        let db = SymbolicState::delta(&g, b_idx).unwrap();
        let combo = da
            .scale(&ComplexEuclidean::from_f64(alpha))
            .add(&db.scale(&ComplexEuclidean::from_f64(beta)))
            .unwrap();
        let lhs = pairing_symbolic(&combo, &phi).unwrap();
        let pa = pairing_symbolic(&da, &phi).unwrap();
        let pb = pairing_symbolic(&db, &phi).unwrap();
        let rhs = pa.scale_real(&EuclideanScalar::from_real(alpha))
            + pb.scale_real(&EuclideanScalar::from_real(beta));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn classification_of_scaled_deltas(
        k in -2i32..=2,
    ) {
        let g = make_grid(21, 0.05).unwrap();
        let state = SymbolicState::delta(&g, 10)
            .unwrap()
            .scale(&ComplexEuclidean::from_real(EuclideanScalar::term(1.0, k)));
        let phi = TestFunction::poly_bump(0.0, 0.4);
        let p = pairing_symbolic(&state, &phi).unwrap();
        let expected = match k {
            k if k > 0 => Classification::Infinitesimal,
            0 => Classification::Finite,
            _ => Classification::Infinite,
        };
        if phi.value(g.point(10)) != 0.0 {
            prop_assert_eq!(p.classify(), expected);
        }
    }
}
