//! Clifford-type algebras `A_n(2, α_j, γ_ij)`.
//!
//! The algebra is generated by `e_1..e_n` subject to
//!
//! ```text
//! e_j e_j = -α_j          e_i e_j + e_j e_i = 2 γ_ij   (i ≠ j)
//! ```
//!
//! with `e_0` acting as the unit. Basis blades are products of distinct
//! generators in strictly increasing order and are encoded as bitmasks
//! (bit `j - 1` set when `e_j` is a factor).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Largest supported generator count. Blade names concatenate single digits.
pub const MAX_GENERATORS: usize = 9;

/// Full product tables are cached up to this many generators.
const TABLE_CACHE_LIMIT: usize = 6;

/// Structure constants `α_1..α_n` and the symmetric matrix `γ_ij`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraSignature {
    n: usize,
    alpha: Vec<Rational>,
    // n × n, symmetric, zero diagonal. Indexed from 0 for generator 1.
    gamma: Vec<Vec<Rational>>,
}

impl AlgebraSignature {
    /// Builds a signature from `α_1..α_n` and a list of `(i, j, γ_ij)` entries
    /// with 1-based generator indices. Unlisted pairs default to zero.
    pub fn new(alpha: Vec<Rational>, gamma_entries: &[(usize, usize, Rational)]) -> Result<Self> {
        let n = alpha.len();
        Self::check_n(n)?;
        let mut gamma = vec![vec![Rational::zero(); n]; n];
        let mut seen = vec![vec![false; n]; n];
        for (i, j, value) in gamma_entries {
            let (i, j) = (*i, *j);
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::InvalidSignature(format!(
                    "gamma entry ({i},{j}) outside 1..={n}"
                )));
            }
            if i == j {
                return Err(Error::InvalidSignature(format!(
                    "gamma entry ({i},{j}) is on the diagonal"
                )));
            }
            let (a, b) = (i - 1, j - 1);
            if seen[a][b] && gamma[a][b] != *value {
                return Err(Error::InvalidSignature(format!(
                    "conflicting gamma values for ({i},{j})"
                )));
            }
            seen[a][b] = true;
            seen[b][a] = true;
            gamma[a][b] = value.clone();
            gamma[b][a] = value.clone();
        }
        Ok(AlgebraSignature { n, alpha, gamma })
    }

    /// Builds a signature from a full `γ` matrix. The matrix must be symmetric;
    /// its diagonal is ignored.
    #[allow(clippy::needless_range_loop)]
    pub fn from_matrix(alpha: Vec<Rational>, gamma: Vec<Vec<Rational>>) -> Result<Self> {
        let n = alpha.len();
        Self::check_n(n)?;
        if gamma.len() != n || gamma.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidSignature(format!("gamma must be {n}×{n}")));
        }
        let mut gamma = gamma;
        for i in 0..n {
            gamma[i][i] = Rational::zero();
            for j in 0..i {
                if gamma[i][j] != gamma[j][i] {
                    return Err(Error::InvalidSignature(format!(
                        "gamma is not symmetric at ({},{})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(AlgebraSignature { n, alpha, gamma })
    }

    /// The classical algebra `A_n(2, 1, 0)`: `e_j² = -1`, generators anticommute.
    pub fn classical(n: usize) -> Result<Self> {
        Self::new(vec![Rational::one(); n], &[])
    }

    fn check_n(n: usize) -> Result<()> {
        if n == 0 || n > MAX_GENERATORS {
            return Err(Error::InvalidSignature(format!(
                "generator count {n} outside 1..={MAX_GENERATORS}"
            )));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `α_j` for `j` in `1..=n`.
    pub fn alpha(&self, j: usize) -> &Rational {
        &self.alpha[j - 1]
    }

    pub fn alphas(&self) -> &[Rational] {
        &self.alpha
    }

    /// `γ_ij` for `i, j` in `1..=n`; zero on the diagonal.
    pub fn gamma(&self, i: usize, j: usize) -> &Rational {
        &self.gamma[i - 1][j - 1]
    }

    pub fn gamma_is_zero(&self) -> bool {
        self.gamma.iter().flatten().all(Zero::is_zero)
    }

    pub fn is_classical(&self) -> bool {
        self.gamma_is_zero() && self.alpha.iter().all(One::is_one)
    }
}

/// A canonical basis element `e_A`. The empty index set is `e_0`, the unit.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Blade(u16);

impl Blade {
    pub const UNIT: Blade = Blade(0);

    pub fn from_bits(bits: u16) -> Blade {
        Blade(bits)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    /// `e_j` for `j ≥ 1`; `generator(0)` is the unit.
    pub fn generator(j: usize) -> Blade {
        if j == 0 {
            Blade::UNIT
        } else {
            Blade(1 << (j - 1))
        }
    }

    /// Builds a blade from strictly increasing generator indices in `1..=9`.
    pub fn from_indices(indices: &[usize]) -> Option<Blade> {
        let mut bits = 0u16;
        let mut last = 0;
        for &j in indices {
            if j <= last || j > MAX_GENERATORS {
                return None;
            }
            bits |= 1 << (j - 1);
            last = j;
        }
        Some(Blade(bits))
    }

    /// Generator indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..16).filter(move |b| self.0 & (1 << b) != 0).map(|b| b + 1)
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, j: usize) -> bool {
        j >= 1 && self.0 & (1 << (j - 1)) != 0
    }

    /// Largest generator index, or 0 for the unit.
    pub fn top(self) -> usize {
        16 - self.0.leading_zeros() as usize
    }

    pub fn is_unit(self) -> bool {
        self.0 == 0
    }

    /// Digit string used in reports: `"0"` for the unit, `"12"` for `e_12`.
    pub fn digits(self) -> String {
        if self.is_unit() {
            "0".to_string()
        } else {
            self.indices().map(|j| char::from(b'0' + j as u8)).collect()
        }
    }

    fn with(self, j: usize) -> Blade {
        Blade(self.0 | (1 << (j - 1)))
    }

    fn without(self, j: usize) -> Blade {
        Blade(self.0 & !(1 << (j - 1)))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.digits())
    }
}

type Terms = BTreeMap<Blade, Rational>;

fn accumulate(terms: &mut Terms, blade: Blade, value: Rational) {
    if value.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(blade) {
        Entry::Vacant(slot) => {
            slot.insert(value);
        }
        Entry::Occupied(mut slot) => {
            *slot.get_mut() += value;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

/// Normal form of `blade · e_g`.
///
/// The generator is bubbled leftward: `e_t e_g = 2γ_tg - e_g e_t` for `t > g`,
/// `e_g e_g = -α_g`. Every recursive call works on a strictly shorter prefix.
fn times_generator(sig: &AlgebraSignature, blade: Blade, g: usize) -> Terms {
    let mut out = Terms::new();
    let top = blade.top();
    if top < g {
        out.insert(blade.with(g), Rational::one());
        return out;
    }
    let prefix = blade.without(top);
    if top == g {
        accumulate(&mut out, prefix, -sig.alpha(g).clone());
        return out;
    }
    let two_gamma = sig.gamma(top, g) * Rational::from_integer(2.into());
    accumulate(&mut out, prefix, two_gamma);
    for (b, c) in times_generator(sig, prefix, g) {
        // Every generator of b is below `top`, so appending e_top stays canonical.
        accumulate(&mut out, b.with(top), -c);
    }
    out
}

/// Normal form of the word `a · b` for canonical blades of `sig`.
fn blade_product(sig: &AlgebraSignature, a: Blade, b: Blade) -> Terms {
    let mut acc = Terms::new();
    acc.insert(a, Rational::one());
    for g in b.indices() {
        let mut next = Terms::new();
        for (blade, coeff) in &acc {
            for (p, c) in times_generator(sig, *blade, g) {
                accumulate(&mut next, p, coeff * c);
            }
        }
        acc = next;
    }
    acc
}

struct AlgebraInner {
    sig: AlgebraSignature,
    table: OnceLock<Vec<Vec<(Blade, Rational)>>>,
}

/// Shared handle to an algebra. Cloning is cheap; all values built from the
/// same handle (or from handles with equal signatures) may be combined.
#[derive(Clone)]
pub struct Algebra(Arc<AlgebraInner>);

impl Algebra {
    pub fn new(sig: AlgebraSignature) -> Algebra {
        Algebra(Arc::new(AlgebraInner {
            sig,
            table: OnceLock::new(),
        }))
    }

    pub fn classical(n: usize) -> Result<Algebra> {
        Ok(Algebra::new(AlgebraSignature::classical(n)?))
    }

    pub fn signature(&self) -> &AlgebraSignature {
        &self.0.sig
    }

    pub fn n(&self) -> usize {
        self.0.sig.n
    }

    /// `2^n`.
    pub fn dim(&self) -> usize {
        1 << self.n()
    }

    /// All basis blades in bitmask order.
    pub fn blades(&self) -> impl Iterator<Item = Blade> {
        (0..self.dim() as u16).map(Blade)
    }

    pub fn check_blade(&self, b: Blade) -> Result<()> {
        if b.top() > self.n() {
            return Err(Error::InvalidBlade {
                index: b.top(),
                n: self.n(),
            });
        }
        Ok(())
    }

    /// Product of two basis blades in normal form.
    pub fn blade_mul(&self, a: Blade, b: Blade) -> Result<Multivector> {
        self.check_blade(a)?;
        self.check_blade(b)?;
        let terms = self.product_terms(a, b).iter().cloned().collect();
        Ok(Multivector {
            alg: self.clone(),
            terms,
        })
    }

    fn product_terms(&self, a: Blade, b: Blade) -> std::borrow::Cow<'_, [(Blade, Rational)]> {
        if self.n() <= TABLE_CACHE_LIMIT {
            let table = self.0.table.get_or_init(|| {
                let dim = self.dim();
                let mut table = Vec::with_capacity(dim * dim);
                for a in 0..dim as u16 {
                    for b in 0..dim as u16 {
                        table.push(
                            blade_product(&self.0.sig, Blade(a), Blade(b))
                                .into_iter()
                                .collect(),
                        );
                    }
                }
                table
            });
            std::borrow::Cow::Borrowed(&table[a.0 as usize * self.dim() + b.0 as usize])
        } else {
            std::borrow::Cow::Owned(blade_product(&self.0.sig, a, b).into_iter().collect())
        }
    }

    pub fn zero(&self) -> Multivector {
        Multivector {
            alg: self.clone(),
            terms: Terms::new(),
        }
    }

    pub fn scalar(&self, value: Rational) -> Multivector {
        self.term(Blade::UNIT, value)
    }

    pub fn unit(&self) -> Multivector {
        self.scalar(Rational::one())
    }

    /// `value · blade`. Panics if the blade is outside the algebra.
    pub fn term(&self, blade: Blade, value: Rational) -> Multivector {
        self.check_blade(blade).expect("blade outside algebra");
        let mut terms = Terms::new();
        accumulate(&mut terms, blade, value);
        Multivector {
            alg: self.clone(),
            terms,
        }
    }

    pub fn blade(&self, blade: Blade) -> Multivector {
        self.term(blade, Rational::one())
    }

    /// `e_j`; `generator(0)` is the unit.
    pub fn generator(&self, j: usize) -> Multivector {
        self.blade(Blade::generator(j))
    }

    pub fn same(&self, other: &Algebra) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.sig == other.0.sig
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for Algebra {}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Algebra").field(&self.0.sig).finish()
    }
}

/// Element of the algebra, stored sparsely with no zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Multivector {
    alg: Algebra,
    terms: Terms,
}

impl Multivector {
    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn from_terms(alg: &Algebra, terms: impl IntoIterator<Item = (Blade, Rational)>) -> Result<Self> {
        let mut out = Terms::new();
        for (b, c) in terms {
            alg.check_blade(b)?;
            accumulate(&mut out, b, c);
        }
        Ok(Multivector {
            alg: alg.clone(),
            terms: out,
        })
    }

    /// Nonzero coefficients in bitmask order.
    pub fn terms(&self) -> impl Iterator<Item = (Blade, &Rational)> {
        self.terms.iter().map(|(b, c)| (*b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, blade: Blade) -> Rational {
        self.terms.get(&blade).cloned().unwrap_or_else(Rational::zero)
    }

    /// True when only the `e_0` component may be nonzero.
    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|b| b.is_unit())
    }

    pub fn scale(&self, factor: &Rational) -> Multivector {
        if factor.is_zero() {
            return self.alg.zero();
        }
        Multivector {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(b, c)| (*b, c * factor)).collect(),
        }
    }

    fn check(&self, other: &Multivector) -> Result<()> {
        if self.alg.same(&other.alg) {
            Ok(())
        } else {
            Err(Error::SignatureMismatch)
        }
    }

    pub fn checked_add(&self, other: &Multivector) -> Result<Multivector> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (b, c) in &other.terms {
            accumulate(&mut terms, *b, c.clone());
        }
        Ok(Multivector {
            alg: self.alg.clone(),
            terms,
        })
    }

    pub fn checked_sub(&self, other: &Multivector) -> Result<Multivector> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (b, c) in &other.terms {
            accumulate(&mut terms, *b, -c);
        }
        Ok(Multivector {
            alg: self.alg.clone(),
            terms,
        })
    }

    pub fn checked_mul(&self, other: &Multivector) -> Result<Multivector> {
        self.check(other)?;
        let mut terms = Terms::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let coeff = ca * cb;
                for (p, cp) in self.alg.product_terms(*a, *b).iter() {
                    accumulate(&mut terms, *p, &coeff * cp);
                }
            }
        }
        Ok(Multivector {
            alg: self.alg.clone(),
            terms,
        })
    }

    /// Formats as an expression in the parser's surface syntax.
    pub fn to_expr_string(&self) -> String {
        let mut out = String::new();
        for (blade, coeff) in self.terms.iter().rev() {
            crate::expr::write_term(&mut out, coeff, &[], *blade);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr_string())
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector({})", self.to_expr_string())
    }
}

// Operator forms panic on signature mismatch; the `checked_*` methods report it.
impl<'a> Add<&'a Multivector> for &'a Multivector {
    type Output = Multivector;
    fn add(self, rhs: &'a Multivector) -> Multivector {
        self.checked_add(rhs).expect("signature mismatch")
    }
}

impl<'a> Sub<&'a Multivector> for &'a Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &'a Multivector) -> Multivector {
        self.checked_sub(rhs).expect("signature mismatch")
    }
}

impl<'a> Mul<&'a Multivector> for &'a Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &'a Multivector) -> Multivector {
        self.checked_mul(rhs).expect("signature mismatch")
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        Multivector {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(b, c)| (*b, -c)).collect(),
        }
    }
}

/// Product of two blades in the classical algebra `A_n(2, 1, 0)`, computed by
/// inversion counting: each pair `(i ∈ a, j ∈ b)` with `i > j` contributes one
/// transposition, each shared generator contributes `e_j² = -1`.
pub fn classical_sign_oracle(a: Blade, b: Blade) -> (Blade, i8) {
    let mut inversions = 0u32;
    for i in a.indices() {
        inversions += b.indices().filter(|&j| j < i).count() as u32;
    }
    let squares = (a.bits() & b.bits()).count_ones();
    let sign = if (inversions + squares).is_multiple_of(2) { 1 } else { -1 };
    (Blade(a.bits() ^ b.bits()), sign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn two_generator(a1: Rational, a2: Rational, g: Rational) -> Algebra {
        Algebra::new(AlgebraSignature::new(vec![a1, a2], &[(1, 2, g)]).unwrap())
    }

    fn e(digits: &[usize]) -> Blade {
        Blade::from_indices(digits).unwrap()
    }

    #[test]
    fn generator_squares_to_minus_alpha() {
        let alg = two_generator(int(3), int(5), int(7));
        assert_eq!(alg.blade_mul(e(&[1]), e(&[1])).unwrap(), alg.scalar(int(-3)));
        assert_eq!(alg.blade_mul(e(&[2]), e(&[2])).unwrap(), alg.scalar(int(-5)));
    }

    #[test]
    fn canonical_order_is_kept() {
        let alg = two_generator(int(3), int(5), int(7));
        assert_eq!(alg.blade_mul(e(&[1]), e(&[2])).unwrap(), alg.blade(e(&[1, 2])));
    }

    #[test]
    fn swapped_generators_pick_up_gamma() {
        let g = ratio(2, 3);
        let alg = two_generator(int(1), int(1), g.clone());
        let expected = &alg.scalar(&g * int(2)) - &alg.blade(e(&[1, 2]));
        assert_eq!(alg.blade_mul(e(&[2]), e(&[1])).unwrap(), expected);
    }

    #[test]
    fn bivector_times_first_generator() {
        // e_12 e_1 = e_1 (2γ - e_1 e_2) = 2γ e_1 + α_1 e_2
        let (a1, g) = (ratio(5, 2), int(-3));
        let alg = two_generator(a1.clone(), int(4), g.clone());
        let expected = &alg.term(e(&[1]), &g * int(2)) + &alg.term(e(&[2]), a1);
        assert_eq!(alg.blade_mul(e(&[1, 2]), e(&[1])).unwrap(), expected);
    }

    #[test]
    fn classical_bivector_squares_to_minus_one() {
        let alg = Algebra::classical(2).unwrap();
        let b = alg.blade(e(&[1, 2]));
        assert_eq!(&b * &b, alg.scalar(int(-1)));
    }

    #[test]
    fn rejects_blades_outside_algebra() {
        let alg = Algebra::classical(2).unwrap();
        assert_eq!(
            alg.blade_mul(e(&[3]), e(&[1])),
            Err(Error::InvalidBlade { index: 3, n: 2 })
        );
    }

    #[test]
    fn mismatched_signatures_are_reported() {
        let a = Algebra::classical(2).unwrap();
        let b = Algebra::classical(3).unwrap();
        assert_eq!(
            a.unit().checked_mul(&b.unit()),
            Err(Error::SignatureMismatch)
        );
        // Distinct handles with equal signatures interoperate.
        let c = Algebra::classical(2).unwrap();
        assert!(a.unit().checked_add(&c.unit()).is_ok());
    }

    #[test]
    fn scalar_two_scales() {
        let alg = two_generator(int(2), int(3), ratio(1, 2));
        let v = &alg.term(e(&[1]), int(4)) + &alg.term(e(&[1, 2]), ratio(-1, 3));
        assert_eq!(&alg.scalar(int(2)) * &v, v.scale(&int(2)));
    }

    #[test]
    fn sign_oracle_examples() {
        assert_eq!(classical_sign_oracle(e(&[1]), e(&[2])), (e(&[1, 2]), 1));
        assert_eq!(classical_sign_oracle(e(&[2]), e(&[1])), (e(&[1, 2]), -1));
        assert_eq!(classical_sign_oracle(e(&[1, 2]), e(&[2])), (e(&[1]), -1));
    }

    #[test]
    fn signature_validation() {
        assert!(AlgebraSignature::new(vec![], &[]).is_err());
        assert!(AlgebraSignature::new(vec![int(1); 10], &[]).is_err());
        assert!(AlgebraSignature::new(vec![int(1); 2], &[(1, 1, int(1))]).is_err());
        assert!(AlgebraSignature::new(vec![int(1); 2], &[(1, 3, int(1))]).is_err());
        assert!(AlgebraSignature::new(vec![int(1); 2], &[(1, 2, int(1)), (2, 1, int(2))]).is_err());
        let sig = AlgebraSignature::new(vec![int(1); 2], &[(2, 1, int(4))]).unwrap();
        assert_eq!(sig.gamma(1, 2), &int(4));
        assert!(AlgebraSignature::from_matrix(
            vec![int(1); 2],
            vec![vec![int(0), int(1)], vec![int(2), int(0)]]
        )
        .is_err());
    }

    #[test]
    fn blade_names() {
        assert_eq!(Blade::UNIT.to_string(), "e0");
        assert_eq!(e(&[1, 2]).to_string(), "e12");
        assert_eq!(e(&[2, 5, 9]).digits(), "259");
        assert_eq!(Blade::from_indices(&[2, 1]), None);
        assert_eq!(Blade::from_indices(&[1, 1]), None);
    }
}
