//! The generalized Cauchy-Riemann operator `D = Σ_j λ_j(x) e_j ∂_j`, its
//! conjugate, first-order evolution operators `F = Σ_i A^{(i)}(x) ∂_i`, and the
//! product and second-order identities relating them.

use num_traits::Zero;

use crate::algebra::{Algebra, Blade};
use crate::error::{Error, Result};
use crate::linalg::{is_positive_definite, RatMatrix};
use crate::poly::PolyField;
use crate::rational::Rational;

fn check_alg(expected: &Algebra, field: &PolyField) -> Result<()> {
    if expected.same(field.algebra()) {
        Ok(())
    } else {
        Err(Error::SignatureMismatch)
    }
}

/// `D u = Σ_{j=0}^{n} λ_j e_j ∂_j u` with real polynomial coefficients `λ_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiracOperator {
    alg: Algebra,
    lambda: Vec<PolyField>,
}

impl DiracOperator {
    pub fn new(alg: &Algebra, lambda: Vec<PolyField>) -> Result<DiracOperator> {
        let expected = alg.n() + 1;
        if lambda.len() != expected {
            return Err(Error::CoefficientCount {
                expected,
                actual: lambda.len(),
            });
        }
        for (j, l) in lambda.iter().enumerate() {
            check_alg(alg, l)?;
            if !l.is_real_valued() {
                return Err(Error::NotRealValued(format!("lambda_{j}")));
            }
        }
        Ok(DiracOperator {
            alg: alg.clone(),
            lambda,
        })
    }

    /// Constant coefficients `λ_0..λ_n`.
    pub fn constant(alg: &Algebra, lambda: &[Rational]) -> Result<DiracOperator> {
        DiracOperator::new(
            alg,
            lambda
                .iter()
                .map(|l| PolyField::scalar(alg, l.clone()))
                .collect(),
        )
    }

    /// All `λ_j = 1`.
    pub fn standard(alg: &Algebra) -> DiracOperator {
        DiracOperator::new(alg, vec![PolyField::one(alg); alg.n() + 1]).expect("well-formed")
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn lambda(&self, j: usize) -> &PolyField {
        &self.lambda[j]
    }

    pub fn lambdas(&self) -> &[PolyField] {
        &self.lambda
    }

    pub fn has_constant_coefficients(&self) -> bool {
        self.lambda.iter().all(PolyField::is_constant)
    }

    /// `λ_0..λ_n` as rationals when all are constant.
    pub fn constant_lambdas(&self) -> Option<Vec<Rational>> {
        self.lambda
            .iter()
            .map(|l| l.constant_value().map(|v| v.coefficient(Blade::UNIT)))
            .collect()
    }

    /// Fails when `λ_0 ≡ 0`, where `β_j = λ_j / λ_0` is undefined.
    pub fn require_nondegenerate(&self) -> Result<()> {
        if self.lambda[0].is_zero() {
            return Err(Error::DegenerateOperator("lambda_0 is identically zero".into()));
        }
        Ok(())
    }

    /// `λ_0² ∂_k β_j = λ_0 ∂_k λ_j − λ_j ∂_k λ_0`.
    pub fn cleared_beta_derivative(&self, j: usize, k: usize) -> Result<PolyField> {
        let l0 = &self.lambda[0];
        let lj = &self.lambda[j];
        Ok(&(l0 * &lj.partial(k)?) - &(lj * &l0.partial(k)?))
    }

    /// `D u`.
    pub fn apply(&self, u: &PolyField) -> Result<PolyField> {
        check_alg(&self.alg, u)?;
        let mut acc = PolyField::zero(&self.alg);
        for (j, l) in self.lambda.iter().enumerate() {
            let du = u.partial(j)?;
            if du.is_zero() || l.is_zero() {
                continue;
            }
            let term = &PolyField::blade(&self.alg, Blade::generator(j)) * &du;
            acc = &acc + &(l * &term);
        }
        Ok(acc)
    }

    /// `D̄ u = λ_0 ∂_0 u − Σ_{j≥1} λ_j e_j ∂_j u`.
    pub fn apply_conjugate(&self, u: &PolyField) -> Result<PolyField> {
        check_alg(&self.alg, u)?;
        let mut acc = &self.lambda[0] * &u.partial(0)?;
        for j in 1..self.lambda.len() {
            let term = &PolyField::blade(&self.alg, Blade::generator(j)) * &u.partial(j)?;
            acc = &acc - &(&self.lambda[j] * &term);
        }
        Ok(acc)
    }

    /// `D(u v)` through the product rule `D(u)·v + Σ_i λ_i e_i (u · ∂_i v)`.
    pub fn product_rule(&self, u: &PolyField, v: &PolyField) -> Result<PolyField> {
        check_alg(&self.alg, u)?;
        check_alg(&self.alg, v)?;
        let mut acc = &self.apply(u)? * v;
        for (i, l) in self.lambda.iter().enumerate() {
            let inner = u * &v.partial(i)?;
            let term = &PolyField::blade(&self.alg, Blade::generator(i)) * &inner;
            acc = &acc + &(l * &term);
        }
        Ok(acc)
    }

    /// `D(u v)` for two generators, written as `D(u)·v + u·D(v)` plus the
    /// commutator corrections `2 λ_j [e_j, u]/2 · ∂_j v` built from the
    /// components of `u`.
    pub fn product_rule_two_generators(&self, u: &PolyField, v: &PolyField) -> Result<PolyField> {
        check_alg(&self.alg, u)?;
        check_alg(&self.alg, v)?;
        let mut acc = &(&self.apply(u)? * v) + &(u * &self.apply(v)?);
        let two = PolyField::scalar(&self.alg, Rational::from_integer(2.into()));
        for j in 1..=2 {
            let bracket = generator_commutator(u, j)?;
            let term = &(&(&two * &self.lambda[j]) * &bracket) * &v.partial(j)?;
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// `D̄(D u)` by composition.
    pub fn second_order(&self, u: &PolyField) -> Result<PolyField> {
        self.apply_conjugate(&self.apply(u)?)
    }

    /// `D̄ D u` from its expansion into first- and second-order parts:
    ///
    /// ```text
    /// Σ_i λ_0 ∂_0λ_i e_i ∂_i u − Σ_{j≥1} Σ_i λ_j ∂_jλ_i e_j e_i ∂_i u
    ///   + λ_0² ∂_0² u + Σ_{i≥1} α_i λ_i² ∂_i² u − 2 Σ_{1≤i<j} γ_ij λ_i λ_j ∂_i ∂_j u
    /// ```
    pub fn second_order_expanded(&self, u: &PolyField) -> Result<PolyField> {
        check_alg(&self.alg, u)?;
        let alg = &self.alg;
        let sig = alg.signature();
        let n = alg.n();
        let l = &self.lambda;
        let e = |i: usize| PolyField::blade(alg, Blade::generator(i));
        let du: Vec<PolyField> = (0..=n).map(|i| u.partial(i)).collect::<Result<_>>()?;

        let mut acc = PolyField::zero(alg);
        for i in 0..=n {
            let coeff = &l[0] * &l[i].partial(0)?;
            acc = &acc + &(&coeff * &(&e(i) * &du[i]));
        }
        for j in 1..=n {
            for i in 0..=n {
                let coeff = &l[j] * &l[i].partial(j)?;
                let ee = &e(j) * &e(i);
                acc = &acc - &(&coeff * &(&ee * &du[i]));
            }
        }
        acc = &acc + &(&(&l[0] * &l[0]) * &du[0].partial(0)?);
        for i in 1..=n {
            let coeff = (&l[i] * &l[i]).scale(sig.alpha(i));
            acc = &acc + &(&coeff * &du[i].partial(i)?);
        }
        for i in 1..=n {
            for j in i + 1..=n {
                let g = sig.gamma(i, j);
                if g.is_zero() {
                    continue;
                }
                let coeff = (&l[i] * &l[j]).scale(&(g * Rational::from_integer(2.into())));
                acc = &acc - &(&coeff * &du[i].partial(j)?);
            }
        }
        Ok(acc)
    }

    /// `λ_0 D(∂_k u) + Σ_j λ_0² ∂_kβ_j e_j ∂_j u`, which vanishes for every
    /// monogenic `u` and every axis `k`.
    pub fn monogenic_propagation_residual(&self, u: &PolyField, k: usize) -> Result<PolyField> {
        check_alg(&self.alg, u)?;
        let mut acc = &self.lambda[0] * &self.apply(&u.partial(k)?)?;
        for j in 1..self.lambda.len() {
            let db = self.cleared_beta_derivative(j, k)?;
            if db.is_zero() {
                continue;
            }
            let term = &PolyField::blade(&self.alg, Blade::generator(j)) * &u.partial(j)?;
            acc = &acc + &(&db * &term);
        }
        Ok(acc)
    }

    /// Definiteness of the principal symbol of `D̄ D` for constant `λ`.
    pub fn ellipticity(&self) -> Result<EllipticityVerdict> {
        let lambda = self.constant_lambdas().ok_or_else(|| {
            Error::Unsupported("ellipticity is only decided for constant lambda".into())
        })?;
        let sig = self.alg.signature();
        let n = self.alg.n();
        let mut symbol = RatMatrix::zeros(n + 1, n + 1);
        symbol.set(0, 0, &lambda[0] * &lambda[0]);
        for i in 1..=n {
            symbol.set(i, i, sig.alpha(i) * &lambda[i] * &lambda[i]);
            for j in 1..=n {
                if i != j {
                    symbol.set(i, j, -(sig.gamma(i, j) * &lambda[i] * &lambda[j]));
                }
            }
        }
        let alphas_positive = sig.alphas().iter().all(|a| *a > Rational::zero());
        Ok(EllipticityVerdict {
            definite: is_positive_definite(&symbol),
            symbol,
            c1_satisfied: alphas_positive,
            c2_applicable_and_satisfied: sig.gamma_is_zero() && alphas_positive,
        })
    }
}

/// Outcome of the ellipticity analysis of `D̄ D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticityVerdict {
    /// Symmetric principal symbol; the `∂_i ∂_j` coefficient is split evenly
    /// between `(i, j)` and `(j, i)`.
    pub symbol: RatMatrix,
    pub definite: bool,
    /// All `α_j > 0`.
    pub c1_satisfied: bool,
    /// `γ ≡ 0` and all `α_j > 0`.
    pub c2_applicable_and_satisfied: bool,
}

/// `(e_j u − u e_j) / 2` for two generators, assembled from the components
/// `u_1, u_2, u_12`:
///
/// ```text
/// j = 1:  −u_2 γ e_0 − u_12 γ e_1 − u_12 α_1 e_2 + u_2 e_12
/// j = 2:   u_1 γ e_0 + u_12 α_2 e_1 + u_12 γ e_2 − u_1 e_12
/// ```
pub fn generator_commutator(u: &PolyField, j: usize) -> Result<PolyField> {
    let alg = u.algebra();
    if alg.n() != 2 {
        return Err(Error::Unsupported(
            "component commutator formula needs exactly two generators".into(),
        ));
    }
    let sig = alg.signature();
    let g = sig.gamma(1, 2);
    let b = |digits: &[usize]| Blade::from_indices(digits).expect("canonical");
    let (u1, u2, u12) = (
        u.component(b(&[1])),
        u.component(b(&[2])),
        u.component(b(&[1, 2])),
    );
    let with = |f: &PolyField, blade: Blade, factor: &Rational| {
        &f.scale(factor) * &PolyField::blade(alg, blade)
    };
    let one = Rational::from_integer(1.into());
    let terms: Vec<PolyField> = match j {
        1 => vec![
            with(&u2, Blade::UNIT, &-g),
            with(&u12, b(&[1]), &-g),
            with(&u12, b(&[2]), &-sig.alpha(1)),
            with(&u2, b(&[1, 2]), &one),
        ],
        2 => vec![
            with(&u1, Blade::UNIT, g),
            with(&u12, b(&[1]), sig.alpha(2)),
            with(&u12, b(&[2]), g),
            with(&u1, b(&[1, 2]), &-one),
        ],
        _ => {
            return Err(Error::AxisOutOfRange { axis: j, vars: 3 });
        }
    };
    Ok(terms
        .iter()
        .fold(PolyField::zero(alg), |acc, t| &acc + t))
}

/// `F u = Σ_{i=0}^{n} A^{(i)} ∂_i u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvolutionOperator {
    alg: Algebra,
    a: Vec<PolyField>,
    real_valued: bool,
}

impl EvolutionOperator {
    /// Coefficients `A^{(0)}..A^{(n)}`; the real-valued flag is inferred.
    pub fn new(alg: &Algebra, a: Vec<PolyField>) -> Result<EvolutionOperator> {
        let real = a.iter().all(PolyField::is_real_valued);
        EvolutionOperator::with_flag(alg, a, real)
    }

    /// As [`EvolutionOperator::new`] with an explicit flag; a real-valued
    /// flag is rejected when some coefficient has a non-scalar component.
    pub fn with_flag(alg: &Algebra, a: Vec<PolyField>, real_valued: bool) -> Result<EvolutionOperator> {
        let expected = alg.n() + 1;
        if a.len() != expected {
            return Err(Error::CoefficientCount {
                expected,
                actual: a.len(),
            });
        }
        for (i, c) in a.iter().enumerate() {
            check_alg(alg, c)?;
            if real_valued && !c.is_real_valued() {
                return Err(Error::NotRealValued(format!("A^({i})")));
            }
        }
        Ok(EvolutionOperator {
            alg: alg.clone(),
            a,
            real_valued,
        })
    }

    /// `F = ∂_k`.
    pub fn partial(alg: &Algebra, k: usize) -> Result<EvolutionOperator> {
        let mut a = vec![PolyField::zero(alg); alg.n() + 1];
        *a.get_mut(k).ok_or(Error::AxisOutOfRange { axis: k, vars: alg.n() + 1 })? =
            PolyField::one(alg);
        EvolutionOperator::new(alg, a)
    }

    pub fn zero(alg: &Algebra) -> EvolutionOperator {
        EvolutionOperator::new(alg, vec![PolyField::zero(alg); alg.n() + 1]).expect("well-formed")
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn coefficient(&self, i: usize) -> &PolyField {
        &self.a[i]
    }

    pub fn coefficients(&self) -> &[PolyField] {
        &self.a
    }

    pub fn is_real_valued(&self) -> bool {
        self.real_valued
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(PolyField::is_zero)
    }

    /// Component `A^{(i)}_B` as a real field.
    pub fn component(&self, i: usize, blade: Blade) -> PolyField {
        self.a[i].component(blade)
    }

    pub fn apply(&self, u: &PolyField) -> Result<PolyField> {
        check_alg(&self.alg, u)?;
        let mut acc = PolyField::zero(&self.alg);
        for (i, a) in self.a.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            acc = &acc + &(a * &u.partial(i)?);
        }
        Ok(acc)
    }

    /// Linear combination `Σ c_k F_k` of operators over the same algebra.
    pub fn combination(alg: &Algebra, terms: &[(Rational, &EvolutionOperator)]) -> Result<EvolutionOperator> {
        let mut a = vec![PolyField::zero(alg); alg.n() + 1];
        let mut real = true;
        for (c, f) in terms {
            if !f.alg.same(alg) {
                return Err(Error::SignatureMismatch);
            }
            real &= f.real_valued;
            for (slot, coeff) in a.iter_mut().zip(&f.a) {
                *slot = &*slot + &coeff.scale(c);
            }
        }
        EvolutionOperator::with_flag(alg, a, real)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSignature;
    use crate::expr::parse_expr;
    use crate::rational::{int, ratio};

    fn p(alg: &Algebra, s: &str) -> PolyField {
        parse_expr(s, alg).unwrap()
    }

    fn one_generator(alpha: Rational) -> Algebra {
        Algebra::new(AlgebraSignature::new(vec![alpha], &[]).unwrap())
    }

    #[test]
    fn dirac_examples() {
        let alg = one_generator(ratio(7, 2));
        let d = DiracOperator::standard(&alg);
        assert!(d.apply(&p(&alg, "x1 - x0*e1")).unwrap().is_zero());
        assert_eq!(d.apply(&p(&alg, "x0")).unwrap(), p(&alg, "1"));

        let alg3 = one_generator(int(3));
        let d3 = DiracOperator::standard(&alg3);
        assert!(d3.apply(&p(&alg3, "x0 + 1/3*x1*e1")).unwrap().is_zero());
    }

    #[test]
    fn conjugate_examples() {
        let alg = Algebra::classical(1).unwrap();
        let d = DiracOperator::standard(&alg);
        assert_eq!(d.apply_conjugate(&p(&alg, "x1 - x0*e1")).unwrap(), p(&alg, "-2*e1"));
        assert!(d.apply_conjugate(&p(&alg, "3 + e1")).unwrap().is_zero());
    }

    #[test]
    fn evolution_examples() {
        let alg = Algebra::classical(1).unwrap();
        let u = p(&alg, "x1 - x0*e1");
        let f = EvolutionOperator::partial(&alg, 0).unwrap();
        assert_eq!(f.apply(&u).unwrap(), u.partial(0).unwrap());
        assert!(EvolutionOperator::zero(&alg).apply(&u).unwrap().is_zero());
        let f = EvolutionOperator::new(&alg, vec![PolyField::zero(&alg), p(&alg, "x0")]).unwrap();
        assert_eq!(f.apply(&u).unwrap(), p(&alg, "x0"));
    }

    #[test]
    fn second_order_examples() {
        let alg = Algebra::classical(1).unwrap();
        let d = DiracOperator::standard(&alg);
        assert_eq!(d.second_order(&p(&alg, "x0^2")).unwrap(), p(&alg, "2"));
        assert!(d.second_order(&p(&alg, "x0^2 - x1^2")).unwrap().is_zero());
        assert!(d.second_order(&p(&alg, "x1 - x0*e1")).unwrap().is_zero());
    }

    #[test]
    fn ellipticity_examples() {
        let alg = Algebra::classical(2).unwrap();
        let v = DiracOperator::standard(&alg).ellipticity().unwrap();
        assert!(v.definite && v.c1_satisfied && v.c2_applicable_and_satisfied);
        assert!(v.symbol.is_symmetric());

        let neg = Algebra::new(AlgebraSignature::new(vec![int(-1), int(1)], &[]).unwrap());
        let v = DiracOperator::standard(&neg).ellipticity().unwrap();
        assert!(!v.definite && !v.c1_satisfied);

        let coupled = Algebra::new(AlgebraSignature::new(vec![int(1), int(1)], &[(1, 2, int(2))]).unwrap());
        let v = DiracOperator::standard(&coupled).ellipticity().unwrap();
        assert_eq!(v.symbol, RatMatrix::from_i64(&[&[1, 0, 0], &[0, 1, -2], &[0, -2, 1]]));
        assert!(!v.definite);
        assert!(v.c1_satisfied && !v.c2_applicable_and_satisfied);
    }

    #[test]
    fn ellipticity_needs_constant_lambda() {
        let alg = Algebra::classical(1).unwrap();
        let d = DiracOperator::new(&alg, vec![p(&alg, "1"), p(&alg, "x0")]).unwrap();
        assert!(matches!(d.ellipticity(), Err(Error::Unsupported(_))));
    }

    #[test]
    fn construction_is_validated() {
        let alg = Algebra::classical(1).unwrap();
        assert!(matches!(
            DiracOperator::new(&alg, vec![p(&alg, "1")]),
            Err(Error::CoefficientCount { expected: 2, actual: 1 })
        ));
        assert!(matches!(
            DiracOperator::new(&alg, vec![p(&alg, "1"), p(&alg, "e1")]),
            Err(Error::NotRealValued(_))
        ));
        assert!(matches!(
            EvolutionOperator::with_flag(&alg, vec![p(&alg, "e1"), p(&alg, "0")], true),
            Err(Error::NotRealValued(_))
        ));
        let other = Algebra::classical(2).unwrap();
        let d = DiracOperator::standard(&alg);
        assert_eq!(d.apply(&PolyField::one(&other)), Err(Error::SignatureMismatch));
        let zero_lead = DiracOperator::new(&alg, vec![p(&alg, "0"), p(&alg, "1")]).unwrap();
        assert!(matches!(zero_lead.require_nondegenerate(), Err(Error::DegenerateOperator(_))));
    }

    #[test]
    fn product_rule_with_constant_right_factor() {
        let alg = Algebra::new(AlgebraSignature::new(vec![int(2), int(3)], &[(1, 2, int(1))]).unwrap());
        let d = DiracOperator::new(&alg, vec![p(&alg, "1 + x1"), p(&alg, "2"), p(&alg, "x0")]).unwrap();
        let u = p(&alg, "x0*x2*e1 + x1^2*e12 - x2");
        let v = p(&alg, "3*e2 - e12");
        assert_eq!(d.product_rule(&u, &v).unwrap(), &d.apply(&u).unwrap() * &v);
        assert_eq!(d.apply(&(&u * &v)).unwrap(), &d.apply(&u).unwrap() * &v);
    }

    #[test]
    fn commutator_formula_needs_two_generators() {
        let alg = Algebra::classical(3).unwrap();
        assert!(matches!(
            generator_commutator(&PolyField::one(&alg), 1),
            Err(Error::Unsupported(_))
        ));
    }
}
