use krylov_core::chain::{solve_chain, sum_rule_residual, SolverConfig};
use krylov_core::deform::{deform_b2_table, DeformationParams};
use krylov_core::families::{hahn_b2, hahn_b2_exact, subleading_report, HahnParams, HahnRational, LanczosSequence};
use krylov_core::moments::{
    b_from_moments, continued_fraction_laurent, hankel_ledger, moments_from_laurent, split_b2, z_ratio_b2, MomentTable,
};
use krylov_core::opcheck::orthogonality_residual;
use krylov_core::BigRational;
use num_traits::{One, ToPrimitive};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = BigRational> {
    (1i64..40, 1i64..12).prop_map(|(p, q)| BigRational::new(p.into(), q.into()))
}

fn unit_interval() -> impl Strategy<Value = BigRational> {
    (1i64..15).prop_map(|p| BigRational::new(p.into(), 16.into()))
}

fn moments_of(b2: &[BigRational], n: usize) -> MomentTable {
    let g = continued_fraction_laurent(b2, n, 2 * n + 2).unwrap();
    MomentTable::new(moments_from_laurent(&g), true, "continued fraction").unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn moment_inversion_round_trip(tail in prop::collection::vec(rational(), 6)) {
        let mut b2 = vec![BigRational::from_integer(0.into())];
        b2.extend(tail);
        let m = moments_of(&b2, 6);
        let back = b_from_moments(&m, 5).unwrap();
        prop_assert_eq!(&back[1..=5], &b2[1..=5]);
    }

    #[test]
    fn hankel_split_agrees_with_full_ledger(tail in prop::collection::vec(rational(), 8)) {
        let mut b2 = vec![BigRational::from_integer(0.into())];
        b2.extend(tail);
        let m = moments_of(&b2, 8);
        let ledger = hankel_ledger(&m, 5).unwrap();
        prop_assert!(ledger.split_consistent());
        prop_assert_eq!(split_b2(&ledger, 4).unwrap(), z_ratio_b2(&ledger, 4).unwrap());
    }

    #[test]
    fn deformations_compose(k1 in unit_interval(), k2 in unit_interval()) {
        let p = HahnRational::real_pair(BigRational::new(1.into(), 3.into()), BigRational::new(3.into(), 4.into()));
        let b2: Vec<BigRational> = (0..=12).map(|n| if n == 0 { BigRational::from_integer(0.into()) } else { hahn_b2_exact(n, &p) }).collect();
        let once = deform_b2_table(&b2, &DeformationParams::new(k1.clone()).unwrap(), 12).unwrap();
        let twice = deform_b2_table(&once, &DeformationParams::new(k2.clone()).unwrap(), 12).unwrap();
        let one = BigRational::one();
        let k = &one - (&one - &k1) * (&one - &k2);
        let direct = deform_b2_table(&b2, &DeformationParams::new(k).unwrap(), 12).unwrap();
        prop_assert_eq!(twice, direct);
    }

    #[test]
    fn exact_and_float_coefficients_agree(a in rational(), b in rational(), n in 1usize..200) {
        let p = HahnParams::real_pair(a.to_f64().unwrap(), b.to_f64().unwrap()).unwrap();
        let exact = hahn_b2_exact(n, &HahnRational::real_pair(a, b)).to_f64().unwrap();
        prop_assert!((hahn_b2(n, &p) - exact).abs() <= 1e-13 * exact);
    }

    #[test]
    fn criterion_reduces_to_squared_difference(a in 0.05f64..3.0, b in 0.05f64..3.0) {
        let r = subleading_report(&HahnParams::real_pair(a, b).unwrap());
        prop_assert!((r.criterion - (a - b).powi(2) / 2.0).abs() <= 1e-12 * (1.0 + (a - b).powi(2)));
    }

    #[test]
    fn conjugate_criterion_is_negative(r in 0.1f64..2.0, w in 0.05f64..2.0) {
        let rep = subleading_report(&HahnParams::conjugate_pair(r, w).unwrap());
        prop_assert!((rep.criterion + 2.0 * w * w).abs() <= 1e-12 * (1.0 + w * w));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn hahn_polynomials_are_orthonormal(a in 0.2f64..1.5, b in 0.2f64..1.5, n in 0usize..5, m in 0usize..5) {
        let p = HahnParams::real_pair(a, b).unwrap();
        prop_assert!(orthogonality_residual(&p, n, m).unwrap() <= 1e-8);
    }

    #[test]
    fn chain_solution_is_unitary(a in 0.1f64..1.5, b in 0.1f64..1.5) {
        let seq = LanczosSequence::hahn(HahnParams::real_pair(a, b).unwrap()).unwrap();
        let tr = solve_chain(&seq, &[0.5, 1.0, 2.0], &SolverConfig::default()).unwrap();
        for r in sum_rule_residual(&tr) {
            prop_assert!(r <= 1e-9);
        }
    }
}
