//! Symbolic pass must imply that `D ∘ F` kills the degree-4 monogenic basis.

mod common;

use cliffivp_core::{
    check_case1, check_case2, check_case_a, enumerate_admissible, monogenic_basis, oracle_on_basis,
    Algebra, Ansatz, DiracOperator, EvolutionOperator, PolyField,
};
use rand::Rng;

const ORACLE_DEGREE: u32 = 4;
const PAIRS: u64 = 50;

fn some_dirac(rng: &mut common::TestRng, alg: &Algebra) -> DiracOperator {
    if rng.gen_bool(0.5) {
        common::constant_dirac(rng, alg)
    } else {
        common::affine_dirac(rng, alg)
    }
}

#[test]
fn real_coefficient_conditions_are_sound() {
    let mut passes = 0;
    for seed in 0..PAIRS {
        let mut rng = common::rng(1000 + seed);
        let alg = common::algebra(&mut rng, 2);
        let d = some_dirac(&mut rng, &alg);
        let ansatz = Ansatz { degree: 1, homogeneous: false, algebra_valued: false };
        let family = enumerate_admissible(&d, ansatz).unwrap().operators;
        let f = if seed % 3 == 0 {
            common::evolution(&mut rng, &alg, true, 1)
        } else {
            common::combination(&mut rng, &alg, &family)
        };
        let report = check_case1(&d, &f).unwrap();
        if report.pass {
            passes += 1;
            let basis = monogenic_basis(&d, ORACLE_DEGREE).unwrap();
            let oracle = oracle_on_basis(&d, &f, &basis, ORACLE_DEGREE).unwrap();
            assert!(oracle.pass, "seed {seed}: {f:?} with {d:?}");
        }
    }
    assert!(passes >= PAIRS as usize / 2);
}

#[test]
fn algebra_coefficient_conditions_are_sound() {
    let mut passes = 0;
    for seed in 0..PAIRS {
        let mut rng = common::rng(2000 + seed);
        let alg = Algebra::new(common::signature(&mut rng, 2));
        let d = some_dirac(&mut rng, &alg);
        let ansatz = Ansatz { degree: 1, homogeneous: false, algebra_valued: true };
        let family = enumerate_admissible(&d, ansatz).unwrap().operators;
        let f = if seed % 3 == 0 {
            common::evolution(&mut rng, &alg, false, 1)
        } else {
            common::combination(&mut rng, &alg, &family)
        };
        let report = check_case2(&d, &f).unwrap();
        if report.pass {
            passes += 1;
            let basis = monogenic_basis(&d, ORACLE_DEGREE).unwrap();
            let oracle = oracle_on_basis(&d, &f, &basis, ORACLE_DEGREE).unwrap();
            assert!(oracle.pass, "seed {seed}: {f:?} with {d:?}");
        }
    }
    assert!(passes >= PAIRS as usize / 2);
}

/// Real `A^{(i)}` depending on `x_i` only. Half the samples use the family
/// `A^{(i)} = c x_i + b_i`, which satisfies the conditions for constant `λ`.
fn separated_evolution(rng: &mut common::TestRng, alg: &Algebra, structured: bool) -> EvolutionOperator {
    let c = common::rational(rng, 3);
    let a = (0..=alg.n())
        .map(|i| {
            let xi = PolyField::var(alg, i).unwrap();
            let b = PolyField::scalar(alg, common::rational(rng, 3));
            if structured {
                &xi.scale(&c) + &b
            } else {
                let q = common::rational(rng, 2);
                &(&(&xi * &xi).scale(&q) + &xi.scale(&common::rational(rng, 3))) + &b
            }
        })
        .collect();
    EvolutionOperator::new(alg, a).unwrap()
}

#[test]
fn conditions_on_dirac_are_sound() {
    let mut passes = 0;
    for seed in 0..PAIRS {
        let mut rng = common::rng(3000 + seed);
        let alg = common::algebra(&mut rng, 2);
        let structured = rng.gen_bool(0.7);
        let d = if structured {
            common::constant_dirac(&mut rng, &alg)
        } else {
            common::affine_dirac(&mut rng, &alg)
        };
        let f = separated_evolution(&mut rng, &alg, structured);
        let report = check_case_a(&d, &f).unwrap();
        if report.pass {
            passes += 1;
            let basis = monogenic_basis(&d, ORACLE_DEGREE).unwrap();
            let oracle = oracle_on_basis(&d, &f, &basis, ORACLE_DEGREE).unwrap();
            assert!(oracle.pass, "seed {seed}: {f:?} with {d:?}");
        }
    }
    assert!(passes >= PAIRS as usize / 2);
}
