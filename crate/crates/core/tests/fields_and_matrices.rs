mod common;

use cliffivp_core::{nullspace, parse_expr, rref, RatMatrix, Rational};
use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;

fn point(rng: &mut common::TestRng, vars: usize) -> Vec<Rational> {
    (0..vars).map(|_| common::rational(rng, 5)).collect()
}

fn matrix(rng: &mut common::TestRng, rows: usize, cols: usize) -> RatMatrix {
    // Sparse entries make rank deficiency common.
    RatMatrix::from_rows(
        (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| if rng.gen_bool(0.4) { common::rational(rng, 4) } else { Rational::zero() })
                    .collect()
            })
            .collect(),
    )
}

fn mat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    RatMatrix::from_rows(
        (0..a.rows())
            .map(|r| {
                (0..b.cols())
                    .map(|c| (0..a.cols()).fold(Rational::zero(), |acc, k| acc + a.get(r, k) * b.get(k, c)))
                    .collect()
            })
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn evaluation_is_a_homomorphism(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let alg = common::algebra(&mut rng, 3);
        let u = common::field(&mut rng, &alg, 2, 4);
        let v = common::field(&mut rng, &alg, 2, 4);
        let x = point(&mut rng, alg.n() + 1);
        let (ux, vx) = (u.evaluate(&x).unwrap(), v.evaluate(&x).unwrap());
        prop_assert_eq!((&u * &v).evaluate(&x).unwrap(), &ux * &vx);
        prop_assert_eq!((&u + &v).evaluate(&x).unwrap(), &ux + &vx);
    }

    #[test]
    fn leibniz_and_mixed_partials(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let alg = common::algebra(&mut rng, 3);
        let u = common::field(&mut rng, &alg, 3, 4);
        let v = common::field(&mut rng, &alg, 2, 4);
        for k in 0..=alg.n() {
            let lhs = (&u * &v).partial(k).unwrap();
            let rhs = &(&u.partial(k).unwrap() * &v) + &(&u * &v.partial(k).unwrap());
            prop_assert_eq!(lhs, rhs);
            for j in 0..=alg.n() {
                prop_assert_eq!(
                    u.partial(k).unwrap().partial(j).unwrap(),
                    u.partial(j).unwrap().partial(k).unwrap()
                );
            }
        }
        prop_assert!(u.partial(alg.n() + 1).is_err());
    }

    #[test]
    fn printer_parser_round_trip(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let alg = common::algebra(&mut rng, 4);
        let u = common::field(&mut rng, &alg, 3, 5);
        let text = u.to_expr_string();
        prop_assert_eq!(parse_expr(&text, &alg).unwrap(), u, "{}", text);
    }

    #[test]
    fn rref_and_nullspace_invariants(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let (rows, cols) = (rng.gen_range(1..6), rng.gen_range(1..7));
        let m = matrix(&mut rng, rows, cols);
        let (r, pivots) = rref(&m);
        prop_assert_eq!(rref(&r), (r.clone(), pivots.clone()));
        prop_assert_eq!(m.rank(), pivots.len());
        let kernel = nullspace(&m);
        prop_assert_eq!(kernel.len() + pivots.len(), cols);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        for (k, &c) in pivots.iter().enumerate() {
            prop_assert!((0..rows).all(|i| *r.get(i, c) == Rational::from_integer(i64::from(i == k).into())));
        }
    }

    #[test]
    fn determinant_is_multiplicative(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let size = rng.gen_range(1..5);
        let a = matrix(&mut rng, size, size);
        let b = matrix(&mut rng, size, size);
        prop_assert_eq!(mat_mul(&a, &b).determinant(), a.determinant() * b.determinant());
        prop_assert_eq!(a.determinant().is_zero(), a.rank() < size);
    }
}
