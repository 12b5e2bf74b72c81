//! Cross-module algebraic invariants, checked on randomized inputs.
//!
//! Everything here is exact: a property either holds coefficient-for-
//! coefficient or the test fails with the offending witness.

use proptest::prelude::*;

use mrm_core::jacobi::{gram_matrix, jacobi_to_moments, moments_to_jacobi, ortho_polys};
use mrm_core::rational::{rat, ratio, Rational};
use mrm_core::series::TruncSeries;
use mrm_core::transforms::{moments_to_r, r_to_moments};
use mrm_core::{JacobiParams, MomentSeq};

fn rational() -> impl Strategy<Value = Rational> {
    (-24i64..=24, 1i64..=6).prop_map(|(p, q)| ratio(p, q))
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=24, 1i64..=6).prop_map(|(p, q)| ratio(p, q))
}

fn series(order: usize) -> impl Strategy<Value = TruncSeries> {
    prop::collection::vec(rational(), order + 1).prop_map(TruncSeries::from_coeffs)
}

/// A series with nonzero constant term.
fn unit_series(order: usize) -> impl Strategy<Value = TruncSeries> {
    (series(order), prop_oneof![Just(1i64), Just(-1), Just(2), Just(3)]).prop_map(
        |(s, c0)| {
            let mut coeffs = s.coeffs().to_vec();
            coeffs[0] = rat(c0);
            TruncSeries::from_coeffs(coeffs)
        },
    )
}

/// A series with zero constant term and nonzero linear term.
fn composable_series(order: usize) -> impl Strategy<Value = TruncSeries> {
    (series(order), prop_oneof![Just(1i64), Just(-1), Just(2)]).prop_map(|(s, c1)| {
        let mut coeffs = s.coeffs().to_vec();
        coeffs[0] = rat(0);
        coeffs[1] = rat(c1);
        TruncSeries::from_coeffs(coeffs)
    })
}

/// Jacobi parameters with strictly positive omegas, given as heads.
fn positive_jacobi(levels: usize) -> impl Strategy<Value = JacobiParams> {
    (
        prop::collection::vec(rational(), levels),
        prop::collection::vec(positive_rational(), levels),
    )
        .prop_map(|(alpha, omega)| JacobiParams::new(alpha, omega, None).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws_hold_exactly(f in series(10), g in series(10), h in series(10)) {
        let left = f.mul(&g).unwrap().mul(&h).unwrap();
        let right = f.mul(&g.mul(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);

        let distl = f.mul(&g.add(&h).unwrap()).unwrap();
        let distr = f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap();
        prop_assert_eq!(distl, distr);

        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
    }

    #[test]
    fn reciprocal_is_a_right_and_left_inverse(f in unit_series(10)) {
        let inv = f.reciprocal().unwrap();
        prop_assert_eq!(f.mul(&inv).unwrap(), TruncSeries::one(10));
        prop_assert_eq!(inv.mul(&f).unwrap(), TruncSeries::one(10));
    }

    #[test]
    fn revert_round_trips_under_composition(f in composable_series(8)) {
        let h = f.revert().unwrap();
        prop_assert_eq!(f.compose(&h).unwrap(), TruncSeries::identity(8));
        prop_assert_eq!(h.compose(&f).unwrap(), TruncSeries::identity(8));
    }

    #[test]
    fn compose_is_associative(
        f in series(8),
        g in composable_series(8),
        h in composable_series(8),
    ) {
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn jacobi_moment_round_trip(j in positive_jacobi(8)) {
        // 2K moments pin the first K levels exactly
        let k = 8usize;
        let m = jacobi_to_moments(&j, 2 * k);
        let rec = moments_to_jacobi(&m).unwrap();
        prop_assert_eq!(rec.terminated, None);
        for n in 0..k {
            prop_assert_eq!(rec.params.alpha(n), j.alpha(n), "alpha_{}", n);
            prop_assert_eq!(rec.params.omega(n + 1), j.omega(n + 1), "omega_{}", n + 1);
        }
    }

    #[test]
    fn recurrence_polys_are_orthogonal_with_omega_product_norms(j in positive_jacobi(6)) {
        let n = 6usize;
        let basis = ortho_polys(&j, n);
        let m = jacobi_to_moments(&j, 2 * n);
        let gram = gram_matrix(&basis.polys, &m).unwrap();
        for i in 0..=n {
            for k in 0..=n {
                let want = if i == k { basis.norms[i].clone() } else { rat(0) };
                prop_assert_eq!(&gram[i][k], &want, "gram[{}][{}]", i, k);
            }
        }
    }

    #[test]
    fn zero_alphas_kill_odd_moments(
        omega in prop::collection::vec(positive_rational(), 6),
    ) {
        let j = JacobiParams::new(vec![], omega, None).unwrap();
        let m = jacobi_to_moments(&j, 12);
        for n in (1..=12).step_by(2) {
            prop_assert_eq!(m.get(n), &rat(0), "m_{} != 0", n);
        }
    }

    #[test]
    fn moment_cumulant_bijection(vals in prop::collection::vec(rational(), 12)) {
        let mut moments = vec![rat(1)];
        moments.extend(vals);
        let m = MomentSeq::new(moments).unwrap();
        let r = moments_to_r(&m).unwrap();
        prop_assert_eq!(r_to_moments(&r, 12), m);
    }
}

/// Termination: once some omega vanishes, the Gram diagonal vanishes from
/// that level on, exactly.
#[test]
fn zero_omega_truncates_gram_diagonal() {
    let j = JacobiParams::new(
        vec![rat(1), ratio(-1, 2)],
        vec![rat(2), ratio(1, 3), rat(0)],
        None,
    )
    .unwrap();
    let n = 6;
    let basis = ortho_polys(&j, n);
    let m = jacobi_to_moments(&j, 2 * n);
    let gram = gram_matrix(&basis.polys, &m).unwrap();
    for k in 3..=n {
        assert!(gram[k][k] == rat(0), "gram[{k}][{k}] = {:?}", gram[k][k]);
        for i in 0..=n {
            assert!(gram[k][i] == rat(0), "gram[{k}][{i}] = {:?}", gram[k][i]);
        }
    }
}
