//! Polynomial fields `R^{n+1} → A_n(2, α_j, γ_ij)` in the variables `x_0..x_n`.
//!
//! A term is `monomial · multivector`. The variables are real, so they commute
//! with every blade; only the multivector coefficients are multiplied in order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::algebra::{Algebra, Blade, Multivector};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Exponent vector of `x_0^{k_0} ⋯ x_n^{k_n}`, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(vars: usize) -> Monomial {
        Monomial(vec![0; vars])
    }

    pub fn new(exponents: Vec<u32>) -> Monomial {
        Monomial(exponents)
    }

    pub fn var(vars: usize, k: usize) -> Monomial {
        let mut e = vec![0; vars];
        e[k] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// All monomials in `vars` variables of total degree exactly `degree`, ascending.
    pub fn of_degree(vars: usize, degree: u32) -> Vec<Monomial> {
        fn rec(vars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if prefix.len() + 1 == vars {
                prefix.push(left);
                out.push(Monomial(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=left).rev() {
                prefix.push(e);
                rec(vars, left - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(vars, degree, &mut Vec::with_capacity(vars), &mut out);
        out.sort();
        out
    }

    /// All monomials of total degree at most `degree`, ascending.
    pub fn up_to_degree(vars: usize, degree: u32) -> Vec<Monomial> {
        (0..=degree).flat_map(|d| Monomial::of_degree(vars, d)).collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial with multivector coefficients. No stored coefficient is zero.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyField {
    alg: Algebra,
    terms: BTreeMap<Monomial, Multivector>,
}

impl PolyField {
    pub fn zero(alg: &Algebra) -> PolyField {
        PolyField {
            alg: alg.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(value: Multivector) -> PolyField {
        let alg = value.algebra().clone();
        let vars = alg.n() + 1;
        PolyField::term(Monomial::one(vars), value)
    }

    pub fn scalar(alg: &Algebra, value: Rational) -> PolyField {
        PolyField::constant(alg.scalar(value))
    }

    pub fn one(alg: &Algebra) -> PolyField {
        PolyField::scalar(alg, Rational::one())
    }

    /// The blade `e_A` as a constant field.
    pub fn blade(alg: &Algebra, blade: Blade) -> PolyField {
        PolyField::constant(alg.blade(blade))
    }

    /// The real coordinate function `x_k`.
    pub fn var(alg: &Algebra, k: usize) -> Result<PolyField> {
        let vars = alg.n() + 1;
        if k >= vars {
            return Err(Error::AxisOutOfRange { axis: k, vars });
        }
        Ok(PolyField::term(Monomial::var(vars, k), alg.unit()))
    }

    /// `monomial · value`. The monomial must have `n + 1` exponents.
    pub fn term(monomial: Monomial, value: Multivector) -> PolyField {
        let alg = value.algebra().clone();
        assert_eq!(monomial.0.len(), alg.n() + 1, "monomial arity");
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(monomial, value);
        }
        PolyField { alg, terms }
    }

    pub fn from_terms(
        alg: &Algebra,
        terms: impl IntoIterator<Item = (Monomial, Multivector)>,
    ) -> Result<PolyField> {
        let mut out = PolyField::zero(alg);
        for (m, c) in terms {
            if m.0.len() != out.nvars() {
                return Err(Error::CoefficientCount {
                    expected: out.nvars(),
                    actual: m.0.len(),
                });
            }
            if !c.algebra().same(alg) {
                return Err(Error::SignatureMismatch);
            }
            out.accumulate(m, &c);
        }
        Ok(out)
    }

    /// Builds a field from scalar coordinates `(monomial, blade) → value`.
    pub fn from_coordinates(
        alg: &Algebra,
        coords: impl IntoIterator<Item = (Monomial, Blade, Rational)>,
    ) -> Result<PolyField> {
        let mut out = PolyField::zero(alg);
        for (m, b, c) in coords {
            alg.check_blade(b)?;
            out.accumulate(m, &alg.term(b, c));
        }
        Ok(out)
    }

    fn accumulate(&mut self, monomial: Monomial, value: &Multivector) {
        if value.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(monomial) {
            Entry::Vacant(slot) => {
                slot.insert(value.clone());
            }
            Entry::Occupied(mut slot) => {
                let sum = slot.get() + value;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    /// Number of real variables, `n + 1`.
    pub fn nvars(&self) -> usize {
        self.alg.n() + 1
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Multivector)> {
        self.terms.iter()
    }

    /// Scalar coordinates `(monomial, blade, value)` in ascending order.
    pub fn coordinates(&self) -> impl Iterator<Item = (&Monomial, Blade, &Rational)> {
        self.terms
            .iter()
            .flat_map(|(m, c)| c.terms().map(move |(b, v)| (m, b, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, `None` for the zero field.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// True when every coefficient lies in the `e_0` component.
    pub fn is_real_valued(&self) -> bool {
        self.terms.values().all(Multivector::is_scalar)
    }

    /// True when some term contains `x_k`.
    pub fn depends_on(&self, k: usize) -> bool {
        self.terms.keys().any(|m| m.0.get(k).copied().unwrap_or(0) > 0)
    }

    /// Constant value, if the field is constant.
    pub fn constant_value(&self) -> Option<Multivector> {
        if !self.is_constant() {
            return None;
        }
        Some(
            self.terms
                .values()
                .next()
                .cloned()
                .unwrap_or_else(|| self.alg.zero()),
        )
    }

    /// The real-valued field `u_A` with `u = Σ u_A e_A`.
    pub fn component(&self, blade: Blade) -> PolyField {
        let mut out = PolyField::zero(&self.alg);
        for (m, c) in &self.terms {
            let v = c.coefficient(blade);
            if !v.is_zero() {
                out.terms.insert(m.clone(), self.alg.scalar(v));
            }
        }
        out
    }

    pub fn scale(&self, factor: &Rational) -> PolyField {
        if factor.is_zero() {
            return PolyField::zero(&self.alg);
        }
        PolyField {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.scale(factor)))
                .collect(),
        }
    }

    fn check(&self, other: &PolyField) -> Result<()> {
        if self.alg.same(&other.alg) {
            Ok(())
        } else {
            Err(Error::SignatureMismatch)
        }
    }

    pub fn checked_add(&self, other: &PolyField) -> Result<PolyField> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &PolyField) -> Result<PolyField> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), &-c);
        }
        Ok(out)
    }

    /// Product with the left factor's coefficients kept on the left.
    pub fn checked_mul(&self, other: &PolyField) -> Result<PolyField> {
        self.check(other)?;
        let mut out = PolyField::zero(&self.alg);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.accumulate(ma.mul(mb), &(ca * cb));
            }
        }
        Ok(out)
    }

    /// `∂u/∂x_k`.
    pub fn partial(&self, k: usize) -> Result<PolyField> {
        let vars = self.nvars();
        if k >= vars {
            return Err(Error::AxisOutOfRange { axis: k, vars });
        }
        let mut out = PolyField::zero(&self.alg);
        for (m, c) in &self.terms {
            let e = m.0[k];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[k] -= 1;
            out.accumulate(dm, &c.scale(&Rational::from_integer(e.into())));
        }
        Ok(out)
    }

    /// Substitutes `x = point`.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Multivector> {
        if point.len() != self.nvars() {
            return Err(Error::PointDimension {
                expected: self.nvars(),
                actual: point.len(),
            });
        }
        let mut acc = self.alg.zero();
        for (m, c) in &self.terms {
            let mut factor = Rational::one();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    factor *= x;
                }
            }
            acc = &acc + &c.scale(&factor);
        }
        Ok(acc)
    }

    /// Formats in the parser's surface syntax, highest monomial first.
    pub fn to_expr_string(&self) -> String {
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            for (blade, coeff) in c.terms().collect::<Vec<_>>().into_iter().rev() {
                crate::expr::write_term(&mut out, coeff, m.exponents(), blade);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for PolyField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr_string())
    }
}

impl fmt::Debug for PolyField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyField({})", self.to_expr_string())
    }
}

impl<'a> Add<&'a PolyField> for &'a PolyField {
    type Output = PolyField;
    fn add(self, rhs: &'a PolyField) -> PolyField {
        self.checked_add(rhs).expect("signature mismatch")
    }
}

impl<'a> Sub<&'a PolyField> for &'a PolyField {
    type Output = PolyField;
    fn sub(self, rhs: &'a PolyField) -> PolyField {
        self.checked_sub(rhs).expect("signature mismatch")
    }
}

impl<'a> Mul<&'a PolyField> for &'a PolyField {
    type Output = PolyField;
    fn mul(self, rhs: &'a PolyField) -> PolyField {
        self.checked_mul(rhs).expect("signature mismatch")
    }
}

impl Neg for &PolyField {
    type Output = PolyField;
    fn neg(self) -> PolyField {
        self.scale(&-Rational::one())
    }
}
