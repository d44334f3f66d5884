#![allow(dead_code)]

use cliffivp_core::{
    Algebra, AlgebraSignature, Blade, DiracOperator, EvolutionOperator, Monomial, Multivector,
    PolyField, Rational,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rational(rng: &mut TestRng, span: i64) -> Rational {
    let num = rng.gen_range(-span..=span);
    let den = *[1, 1, 1, 2, 3].choose(rng).unwrap();
    Rational::new(num.into(), den.into())
}

pub fn nonzero_rational(rng: &mut TestRng, span: i64) -> Rational {
    loop {
        let r = rational(rng, span);
        if r != Rational::from_integer(0.into()) {
            return r;
        }
    }
}

/// Random `α` (nonzero, either sign) and `γ` (about half the pairs zero).
pub fn signature(rng: &mut TestRng, n: usize) -> AlgebraSignature {
    let alpha = (0..n).map(|_| nonzero_rational(rng, 3)).collect();
    let mut gamma = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if rng.gen_bool(0.5) {
                gamma.push((i, j, nonzero_rational(rng, 2)));
            }
        }
    }
    AlgebraSignature::new(alpha, &gamma).unwrap()
}

pub fn algebra(rng: &mut TestRng, max_n: usize) -> Algebra {
    let n = rng.gen_range(1..=max_n);
    Algebra::new(signature(rng, n))
}

pub fn multivector(rng: &mut TestRng, alg: &Algebra) -> Multivector {
    let mut terms: Vec<(Blade, Rational)> = Vec::new();
    for b in alg.blades() {
        if rng.gen_bool(0.6) {
            terms.push((b, rational(rng, 4)));
        }
    }
    Multivector::from_terms(alg, terms).unwrap()
}

/// Sparse field with up to `terms` monomials of degree at most `max_degree`.
pub fn field(rng: &mut TestRng, alg: &Algebra, max_degree: u32, terms: usize) -> PolyField {
    let monomials = Monomial::up_to_degree(alg.n() + 1, max_degree);
    let mut out = PolyField::zero(alg);
    for _ in 0..rng.gen_range(0..=terms) {
        let m = monomials.choose(rng).unwrap().clone();
        out = &out + &PolyField::term(m, multivector(rng, alg));
    }
    out
}

pub fn real_field(rng: &mut TestRng, alg: &Algebra, max_degree: u32, terms: usize) -> PolyField {
    field(rng, alg, max_degree, terms).component(Blade::UNIT)
}

/// `D` with nonzero constant `λ`.
pub fn constant_dirac(rng: &mut TestRng, alg: &Algebra) -> DiracOperator {
    let lambda: Vec<Rational> = (0..=alg.n()).map(|_| nonzero_rational(rng, 3)).collect();
    DiracOperator::constant(alg, &lambda).unwrap()
}

/// `D` with affine `λ_j`; `λ_0` is constant half of the time.
pub fn affine_dirac(rng: &mut TestRng, alg: &Algebra) -> DiracOperator {
    let mut lambda = vec![PolyField::scalar(alg, nonzero_rational(rng, 3))];
    if rng.gen_bool(0.5) {
        lambda[0] = &lambda[0] + &real_field(rng, alg, 1, 1);
    }
    for _ in 1..=alg.n() {
        let c = PolyField::scalar(alg, nonzero_rational(rng, 3));
        lambda.push(&c + &real_field(rng, alg, 1, 2));
    }
    DiracOperator::new(alg, lambda).unwrap()
}

pub fn evolution(rng: &mut TestRng, alg: &Algebra, real: bool, max_degree: u32) -> EvolutionOperator {
    let a = (0..=alg.n())
        .map(|_| {
            if real {
                real_field(rng, alg, max_degree, 2)
            } else {
                field(rng, alg, max_degree, 2)
            }
        })
        .collect();
    EvolutionOperator::new(alg, a).unwrap()
}

/// Random rational combination of the given operators.
pub fn combination(rng: &mut TestRng, alg: &Algebra, ops: &[EvolutionOperator]) -> EvolutionOperator {
    let mut coeffs: Vec<(Rational, &EvolutionOperator)> = Vec::new();
    for f in ops {
        if rng.gen_bool(0.5) {
            coeffs.push((nonzero_rational(rng, 3), f));
        }
    }
    EvolutionOperator::combination(alg, &coeffs).unwrap()
}
