//! Fixtures shared by the benchmarks.

use cliffivp_core::{Algebra, AlgebraSignature, Ansatz, DiracOperator, PolyField, Rational};

/// Nonzero `γ` on every pair, so no product short-circuits.
pub fn dense_algebra(n: usize) -> Algebra {
    let alpha = (1..=n as i64).map(|k| Rational::new(k.into(), 2.into())).collect();
    let mut gamma = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            gamma.push((i, j, Rational::new(1.into(), ((i + j) as i64).into())));
        }
    }
    Algebra::new(AlgebraSignature::new(alpha, &gamma).unwrap())
}

pub fn classical_pair() -> (DiracOperator, Ansatz) {
    let alg = Algebra::classical(2).unwrap();
    (
        DiracOperator::standard(&alg),
        Ansatz {
            degree: 1,
            homogeneous: true,
            algebra_valued: true,
        },
    )
}

/// `λ = (1, 1 + x2, 1)` over a deformed two-generator algebra.
pub fn variable_pair() -> (DiracOperator, Ansatz) {
    let alg = dense_algebra(2);
    let one = PolyField::one(&alg);
    let lambda = vec![one.clone(), &one + &PolyField::var(&alg, 2).unwrap(), one];
    (
        DiracOperator::new(&alg, lambda).unwrap(),
        Ansatz {
            degree: 1,
            homogeneous: false,
            algebra_valued: true,
        },
    )
}
