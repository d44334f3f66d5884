//! Associated operator pairs `(F, D)`: `D u = 0` implies `D(F u) = 0`.
//!
//! Three symbolic sufficient-condition checkers are provided, together with
//! an independent brute-force oracle that applies `D ∘ F` to an exact basis
//! of monogenic polynomials, and an exact enumeration of admissible `F`.
//!
//! Quotients `β_j = λ_j / λ_0` never appear: every condition is multiplied
//! through by the power of `λ_0` that makes it a polynomial identity.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::algebra::{Algebra, Blade};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, RatMatrix};
use crate::operators::{DiracOperator, EvolutionOperator};
use crate::poly::{Monomial, PolyField};
use crate::rational::Rational;

/// Which family of sufficient conditions a report checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseKind {
    /// Real-valued `A^{(i)}`, conditions on `F` for a given `D`.
    RealCoefficients,
    /// Algebra-valued `A^{(i)}` with two generators.
    AlgebraCoefficients,
    /// Real `A^{(i)} = A^{(i)}(x_i)` given; conditions on the `β_i` of `D`.
    GivenEvolution,
}

impl CaseKind {
    pub fn tag(self) -> &'static str {
        match self {
            CaseKind::RealCoefficients => "I",
            CaseKind::AlgebraCoefficients => "II",
            CaseKind::GivenEvolution => "A",
        }
    }
}

impl fmt::Display for CaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// One labeled polynomial identity; it holds iff the residual is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionEntry {
    pub label: String,
    pub residual: PolyField,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub case: CaseKind,
    pub entries: Vec<ConditionEntry>,
    pub pass: bool,
}

impl ConditionReport {
    fn new(case: CaseKind, raw: Vec<(String, PolyField)>) -> ConditionReport {
        let entries: Vec<ConditionEntry> = raw
            .into_iter()
            .map(|(label, residual)| ConditionEntry {
                pass: residual.is_zero(),
                label,
                residual,
            })
            .collect();
        ConditionReport {
            case,
            pass: entries.iter().all(|e| e.pass),
            entries,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConditionEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    pub fn entry(&self, label: &str) -> Option<&ConditionEntry> {
        self.entries.iter().find(|e| e.label == label)
    }
}

fn check_pair(d: &DiracOperator, f: &EvolutionOperator) -> Result<()> {
    if !d.algebra().same(f.algebra()) {
        return Err(Error::SignatureMismatch);
    }
    d.require_nondegenerate()
}

fn blade_field(alg: &Algebra, j: usize) -> PolyField {
    PolyField::blade(alg, Blade::generator(j))
}

/// `λ_0 · [D A^{(i)} − (D A^{(0)}) β_i e_i − Σ_j A^{(j)} λ_0 ∂_j β_i e_i]`,
/// the coefficient of `∂_i u` in `D(F u)` after eliminating `∂_0 u` through
/// `D u = 0`, with the commutator terms of algebra-valued `A^{(0)}` left out.
fn first_order_residual(d: &DiracOperator, f: &EvolutionOperator, i: usize) -> Result<PolyField> {
    let alg = d.algebra();
    let ei = blade_field(alg, i);
    let mut acc = d.lambda(0) * &d.apply(f.coefficient(i))?;
    let da0 = d.apply(f.coefficient(0))?;
    acc = &acc - &(d.lambda(i) * &(&da0 * &ei));
    for j in 0..=alg.n() {
        let a = f.coefficient(j);
        if a.is_zero() {
            continue;
        }
        let db = d.cleared_beta_derivative(i, j)?;
        acc = &acc - &(&db * &(a * &ei));
    }
    Ok(acc)
}

/// Conditions for real-valued `F`: for each `i = 1..n`,
/// `D A^{(i)} − D A^{(0)} β_i e_i − Σ_j A^{(j)} λ_0 ∂_j β_i e_i = 0`,
/// reported multiplied by `λ_0` under the label `first-order[i=…]`.
pub fn check_case1(d: &DiracOperator, f: &EvolutionOperator) -> Result<ConditionReport> {
    check_pair(d, f)?;
    if !f.is_real_valued() {
        return Err(Error::WrongCase(
            "real-coefficient conditions need real-valued A^(i)".into(),
        ));
    }
    let raw = (1..=d.algebra().n())
        .map(|i| Ok((format!("first-order[i={i}]"), first_order_residual(d, f, i)?)))
        .collect::<Result<_>>()?;
    Ok(ConditionReport::new(CaseKind::RealCoefficients, raw))
}

/// `Σ_j λ_j [e_j, A^{(0)}] (λ_0² ∂_j β_k) e_k`.
fn commutator_drift(d: &DiracOperator, a0: &PolyField, k: usize) -> Result<PolyField> {
    let alg = d.algebra();
    let ek = blade_field(alg, k);
    let mut drift = PolyField::zero(alg);
    for j in 1..=alg.n() {
        let ej = blade_field(alg, j);
        let commutator = &(&ej * a0) - &(a0 * &ej);
        let weight = d.lambda(j) * &d.cleared_beta_derivative(k, j)?;
        drift = &drift + &(&weight * &(&commutator * &ek));
    }
    Ok(drift)
}

/// Conditions for algebra-valued `F` over two generators.
///
/// The first-order coefficients of `∂_1 u` and `∂_2 u` give eight scalar
/// identities (`first-order[i=…,eA]`, multiplied by `λ_0`). The second-order
/// coefficients give five pointwise identities between components, labeled
/// by the relation they impose:
///
/// ```text
/// A1_2  = α_1 β_1 A0_12        A1_12 = −β_1 A0_2
/// −A2_1 = α_2 β_2 A0_12        A2_12 =  β_2 A0_1
/// β_2 A1_1 − β_1 A2_2 = 2 γ β_1 β_2 A0_12
/// ```
///
/// When `λ` is not constant, eliminating `∂_j ∂_0 u` through the commutator
/// `[e_j, A^{(0)}]` also feeds `−λ_j [e_j, A^{(0)}] ∂_j β_i e_i` into the
/// coefficient of `∂_i u`. The first-order entries then include that term and
/// are multiplied by `λ_0²` instead of `λ_0`. Without it, nonconstant `λ`
/// admits operators with `D(F u) ≠ 0`.
pub fn check_case2(d: &DiracOperator, f: &EvolutionOperator) -> Result<ConditionReport> {
    check_pair(d, f)?;
    let alg = d.algebra();
    if alg.n() != 2 {
        return Err(Error::Unsupported(format!(
            "algebra-valued conditions are derived for two generators, got {}",
            alg.n()
        )));
    }
    let sig = alg.signature();
    let b = |digits: &[usize]| Blade::from_indices(digits).expect("canonical");
    let (e1, e2, e12) = (b(&[1]), b(&[2]), b(&[1, 2]));
    let mut raw = Vec::new();

    let constant = d.has_constant_coefficients();
    for i in 1..=2 {
        let mut r = first_order_residual(d, f, i)?;
        if !constant {
            r = &(d.lambda(0) * &r) - &commutator_drift(d, f.coefficient(0), i)?;
        }
        for blade in alg.blades() {
            raw.push((format!("first-order[i={i},{blade}]"), r.component(blade)));
        }
    }

    let (l0, l1, l2) = (d.lambda(0), d.lambda(1), d.lambda(2));
    let c = |i: usize, blade: Blade| f.component(i, blade);
    let alpha1 = sig.alpha(1);
    let alpha2 = sig.alpha(2);
    let gamma = sig.gamma(1, 2);
    let two_gamma = gamma * Rational::from_integer(2.into());

    raw.push((
        "second-order[A1_2 = alpha1*beta1*A0_12]".into(),
        &(l0 * &c(1, e2)) - &(l1 * &c(0, e12)).scale(alpha1),
    ));
    raw.push((
        "second-order[A1_12 = -beta1*A0_2]".into(),
        &(l0 * &c(1, e12)) + &(l1 * &c(0, e2)),
    ));
    raw.push((
        "second-order[-A2_1 = alpha2*beta2*A0_12]".into(),
        &-&(l0 * &c(2, e1)) - &(l2 * &c(0, e12)).scale(alpha2),
    ));
    raw.push((
        "second-order[A2_12 = beta2*A0_1]".into(),
        &(l0 * &c(2, e12)) - &(l2 * &c(0, e1)),
    ));
    raw.push((
        "second-order[beta2*A1_1 - beta1*A2_2 = 2*gamma*beta1*beta2*A0_12]".into(),
        &(l0 * &(&(l2 * &c(1, e1)) - &(l1 * &c(2, e2))))
            - &(&(l1 * l2) * &c(0, e12)).scale(&two_gamma),
    ));

    Ok(ConditionReport::new(CaseKind::AlgebraCoefficients, raw))
}

/// Conditions on `D` for a given real `F` with `A^{(i)} = A^{(i)}(x_i)`.
///
/// Dividing the real-coefficient conditions by `λ_0` and splitting by blade
/// gives, for each `i = 1..n` (all multiplied by the needed power of `λ_0`):
///
/// ```text
/// time[i]             ∂_0 A^(i) + α_i β_i² ∂_i A^(0) − 2 β_i Σ_{k>i} γ_ik β_k ∂_k A^(0)
/// cross[i,j]          β_j ∂_j A^(i)                      (j ≥ 1, j ≠ i)
/// diagonal[i]         β_i ∂_i A^(i) − β_i ∂_0 A^(0) − Σ_j A^(j) ∂_j β_i
/// base-cross[i,j]     β_j β_i ∂_j A^(0)                  (j ≥ 1, j ≠ i)
/// uncoupled[i]        β_i (∂_i A^(i) − ∂_0 A^(0)) − Σ_j A^(j) ∂_j β_i
/// ```
pub fn check_case_a(d: &DiracOperator, f: &EvolutionOperator) -> Result<ConditionReport> {
    check_pair(d, f)?;
    if !f.is_real_valued() {
        return Err(Error::WrongCase(
            "conditions on D need real-valued A^(i)".into(),
        ));
    }
    let alg = d.algebra();
    let n = alg.n();
    for i in 0..=n {
        if let Some(k) = (0..=n).find(|&k| k != i && f.coefficient(i).depends_on(k)) {
            return Err(Error::PreconditionViolated(format!(
                "A^({i}) depends on x{k}; it may depend on x{i} only"
            )));
        }
    }
    let sig = alg.signature();
    let l = d.lambdas();
    let da = |i: usize, k: usize| f.coefficient(i).partial(k);
    let mut time = Vec::new();
    let mut cross = Vec::new();
    let mut diagonal = Vec::new();
    let mut base_cross = Vec::new();
    let mut uncoupled = Vec::new();
    for i in 1..=n {
        let mut t = &(&l[0] * &l[0]) * &da(i, 0)?;
        t = &t + &(&(&l[i] * &l[i]) * &da(0, i)?).scale(sig.alpha(i));
        for k in i + 1..=n {
            let g = sig.gamma(i, k) * Rational::from_integer(2.into());
            t = &t - &(&(&l[i] * &l[k]) * &da(0, k)?).scale(&g);
        }
        time.push((format!("time[i={i}]"), t));

        for j in (1..=n).filter(|&j| j != i) {
            cross.push((format!("cross[i={i},j={j}]"), &l[j] * &da(i, j)?));
            base_cross.push((format!("base-cross[i={i},j={j}]"), &(&l[j] * &l[i]) * &da(0, j)?));
        }

        let mut diag = &(&l[0] * &l[i]) * &(&da(i, i)? - &da(0, 0)?);
        for j in 0..=n {
            diag = &diag - &(f.coefficient(j) * &d.cleared_beta_derivative(i, j)?);
        }
        diagonal.push((format!("diagonal[i={i}]"), diag.clone()));
        uncoupled.push((format!("uncoupled[i={i}]"), diag));
    }
    let raw = time
        .into_iter()
        .chain(cross)
        .chain(diagonal)
        .chain(base_cross)
        .chain(uncoupled)
        .collect();
    Ok(ConditionReport::new(CaseKind::GivenEvolution, raw))
}

/// Matrix with one column per unknown, rows keyed by the distinct keys that
/// occur, in key order.
fn assemble<K: Ord + Clone>(columns: &[Vec<(K, Rational)>]) -> RatMatrix {
    let mut rows: BTreeMap<K, usize> = BTreeMap::new();
    for col in columns {
        for (k, _) in col {
            rows.entry(k.clone()).or_insert(0);
        }
    }
    for (idx, slot) in rows.values_mut().enumerate() {
        *slot = idx;
    }
    let mut m = RatMatrix::zeros(rows.len(), columns.len());
    for (c, col) in columns.iter().enumerate() {
        for (k, v) in col {
            let r = rows[k];
            let sum = m.get(r, c) + v;
            m.set(r, c, sum);
        }
    }
    m
}

fn field_coordinates(u: &PolyField) -> Vec<((Monomial, Blade), Rational)> {
    u.coordinates()
        .map(|(m, b, v)| ((m.clone(), b), v.clone()))
        .collect()
}

/// Exact basis of `{u : deg u ≤ degree, D u = 0}`.
///
/// Coordinates are `(monomial, blade)` in grlex-then-bitmask order; the
/// basis is the nullspace of the assembled matrix of `D`.
pub fn monogenic_basis(d: &DiracOperator, degree: u32) -> Result<Vec<PolyField>> {
    let alg = d.algebra();
    let coords: Vec<(Monomial, Blade)> = Monomial::up_to_degree(alg.n() + 1, degree)
        .into_iter()
        .flat_map(|m| alg.blades().map(move |b| (m.clone(), b)))
        .collect();
    let columns = coords
        .iter()
        .map(|(m, b)| Ok(field_coordinates(&d.apply(&PolyField::term(m.clone(), alg.blade(*b)))?)))
        .collect::<Result<Vec<_>>>()?;
    let matrix = assemble(&columns);
    let basis = if matrix.rows() == 0 {
        (0..coords.len())
            .map(|k| {
                let mut v = vec![Rational::zero(); coords.len()];
                v[k] = Rational::from_integer(1.into());
                v
            })
            .collect()
    } else {
        nullspace(&matrix)
    };
    basis
        .iter()
        .map(|v| {
            PolyField::from_coordinates(
                alg,
                coords
                    .iter()
                    .zip(v)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|((m, b), c)| (m.clone(), *b, c.clone())),
            )
        })
        .collect()
}

/// Outcome of applying `D ∘ F` to every monogenic basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub pass: bool,
    pub degree: u32,
    /// Number of monogenic basis elements tested.
    pub checked: usize,
    /// First basis element `u` with `D(F u) ≠ 0`, and that image.
    pub witness: Option<(PolyField, PolyField)>,
}

/// Checks `D(F u) = 0` exactly for every `u` in `monogenic_basis(D, degree)`.
pub fn empirical_associated(
    d: &DiracOperator,
    f: &EvolutionOperator,
    degree: u32,
) -> Result<OracleReport> {
    if !d.algebra().same(f.algebra()) {
        return Err(Error::SignatureMismatch);
    }
    let basis = monogenic_basis(d, degree)?;
    oracle_on_basis(d, f, &basis, degree)
}

/// As [`empirical_associated`] with a precomputed monogenic basis.
pub fn oracle_on_basis(
    d: &DiracOperator,
    f: &EvolutionOperator,
    basis: &[PolyField],
    degree: u32,
) -> Result<OracleReport> {
    for u in basis {
        let image = d.apply(&f.apply(u)?)?;
        if !image.is_zero() {
            return Ok(OracleReport {
                pass: false,
                degree,
                checked: basis.len(),
                witness: Some((u.clone(), image)),
            });
        }
    }
    Ok(OracleReport {
        pass: true,
        degree,
        checked: basis.len(),
        witness: None,
    })
}

/// Polynomial shape of the unknown coefficients `A^{(i)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ansatz {
    /// Maximum (or, if homogeneous, exact) total degree; at most 2.
    pub degree: u32,
    pub homogeneous: bool,
    pub algebra_valued: bool,
}

impl Ansatz {
    pub const MAX_DEGREE: u32 = 2;

    pub fn monomials(&self, vars: usize) -> Vec<Monomial> {
        if self.homogeneous {
            Monomial::of_degree(vars, self.degree)
        } else {
            Monomial::up_to_degree(vars, self.degree)
        }
    }
}

/// Basis of the admissible evolution operators within an ansatz.
#[derive(Clone, Debug)]
pub struct AdmissibleBasis {
    pub ansatz: Ansatz,
    pub operators: Vec<EvolutionOperator>,
    pub dimension: usize,
    /// Number of unknown coefficients.
    pub unknowns: usize,
    pub rank: usize,
    /// Rows: `(condition, monomial, blade)` in order; columns: unknowns
    /// ordered by operator index, then blade, then monomial.
    pub condition_matrix: RatMatrix,
    pub case: CaseKind,
}

/// Solves the condition system of the ansatz exactly.
///
/// Every coefficient of every component `A^{(i)}_B` is an unknown; the
/// conditions are linear in them, so their residual coordinates form a
/// homogeneous system whose nullspace is the admissible family.
pub fn enumerate_admissible(d: &DiracOperator, ansatz: Ansatz) -> Result<AdmissibleBasis> {
    let alg = d.algebra();
    d.require_nondegenerate()?;
    if ansatz.degree > Ansatz::MAX_DEGREE {
        return Err(Error::Unsupported(format!(
            "ansatz degree {} above {}",
            ansatz.degree,
            Ansatz::MAX_DEGREE
        )));
    }
    if ansatz.algebra_valued && alg.n() != 2 {
        return Err(Error::Unsupported(
            "algebra-valued enumeration needs two generators".into(),
        ));
    }
    let n = alg.n();
    let blades: Vec<Blade> = if ansatz.algebra_valued {
        alg.blades().collect()
    } else {
        vec![Blade::UNIT]
    };
    let monomials = ansatz.monomials(n + 1);
    let mut unknowns: Vec<EvolutionOperator> = Vec::new();
    for i in 0..=n {
        for &b in &blades {
            for m in &monomials {
                let mut a = vec![PolyField::zero(alg); n + 1];
                a[i] = PolyField::term(m.clone(), alg.blade(b));
                unknowns.push(EvolutionOperator::with_flag(alg, a, !ansatz.algebra_valued)?);
            }
        }
    }
    let case = if ansatz.algebra_valued {
        CaseKind::AlgebraCoefficients
    } else {
        CaseKind::RealCoefficients
    };
    let columns = unknowns
        .iter()
        .map(|f| {
            let report = match case {
                CaseKind::AlgebraCoefficients => check_case2(d, f)?,
                _ => check_case1(d, f)?,
            };
            Ok(report
                .entries
                .iter()
                .enumerate()
                .flat_map(|(idx, e)| {
                    e.residual
                        .coordinates()
                        .map(move |(m, b, v)| ((idx, m.clone(), b), v.clone()))
                })
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let matrix = assemble(&columns);
    let kernel: Vec<Vec<Rational>> = if matrix.rows() == 0 {
        (0..unknowns.len())
            .map(|k| {
                let mut v = vec![Rational::zero(); unknowns.len()];
                v[k] = Rational::from_integer(1.into());
                v
            })
            .collect()
    } else {
        nullspace(&matrix)
    };
    let operators = kernel
        .iter()
        .map(|v| {
            let terms: Vec<(Rational, &EvolutionOperator)> = v
                .iter()
                .zip(&unknowns)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, f)| (c.clone(), f))
                .collect();
            EvolutionOperator::combination(alg, &terms)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AdmissibleBasis {
        ansatz,
        dimension: operators.len(),
        unknowns: unknowns.len(),
        rank: unknowns.len() - operators.len(),
        operators,
        condition_matrix: matrix,
        case,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSignature;
    use crate::expr::parse_expr;
    use crate::rational::int;

    fn p(alg: &Algebra, s: &str) -> PolyField {
        parse_expr(s, alg).unwrap()
    }

    fn op(alg: &Algebra, coeffs: &[&str]) -> EvolutionOperator {
        EvolutionOperator::new(alg, coeffs.iter().map(|s| p(alg, s)).collect()).unwrap()
    }

    #[test]
    fn constant_pairs_pass_case1() {
        let alg = Algebra::new(AlgebraSignature::new(vec![int(2), int(5)], &[(1, 2, int(1))]).unwrap());
        let d = DiracOperator::constant(&alg, &[int(2), int(-1), int(3)]).unwrap();
        let f = op(&alg, &["3", "-1/2", "7"]);
        assert!(check_case1(&d, &f).unwrap().pass);
    }

    #[test]
    fn case1_failing_example() {
        let alg = Algebra::classical(1).unwrap();
        let d = DiracOperator::standard(&alg);
        let f = op(&alg, &["0", "x0"]);
        let report = check_case1(&d, &f).unwrap();
        assert!(!report.pass);
        let entry = report.entry("first-order[i=1]").unwrap();
        assert_eq!(entry.residual, p(&alg, "1"));

        let oracle = empirical_associated(&d, &f, 1).unwrap();
        assert!(!oracle.pass);
        let (u, image) = oracle.witness.unwrap();
        assert!(!image.is_zero());
        assert_eq!(d.apply(&f.apply(&u).unwrap()).unwrap(), image);
        assert!(d.apply(&u).unwrap().is_zero());
    }

    #[test]
    fn case1_rejects_algebra_valued() {
        let alg = Algebra::classical(1).unwrap();
        let d = DiracOperator::standard(&alg);
        assert!(matches!(
            check_case1(&d, &op(&alg, &["e1", "0"])),
            Err(Error::WrongCase(_))
        ));
        let zero_lead = DiracOperator::new(&alg, vec![p(&alg, "0"), p(&alg, "1")]).unwrap();
        assert!(matches!(
            check_case1(&zero_lead, &op(&alg, &["1", "0"])),
            Err(Error::DegenerateOperator(_))
        ));
    }

    #[test]
    fn case2_constructed_pair_passes() {
        let alg = Algebra::classical(2).unwrap();
        let d = DiracOperator::standard(&alg);
        let f = op(&alg, &["e12", "e2", "-e1"]);
        let report = check_case2(&d, &f).unwrap();
        assert_eq!(report.entries.len(), 13);
        assert!(report.pass, "{:?}", report.failures().collect::<Vec<_>>());
        assert!(empirical_associated(&d, &f, 3).unwrap().pass);
    }

    #[test]
    fn case2_single_violation() {
        let alg = Algebra::classical(2).unwrap();
        let d = DiracOperator::standard(&alg);
        let f = op(&alg, &["e12", "2*e2", "-e1"]);
        let report = check_case2(&d, &f).unwrap();
        let failures: Vec<_> = report.failures().collect();
        assert_eq!(failures.len(), 1);
        assert_eq!(failures[0].label, "second-order[A1_2 = alpha1*beta1*A0_12]");
        assert_eq!(failures[0].residual, p(&alg, "1"));
    }

    #[test]
    fn case2_needs_two_generators() {
        let alg = Algebra::classical(3).unwrap();
        let d = DiracOperator::standard(&alg);
        assert!(matches!(
            check_case2(&d, &EvolutionOperator::zero(&alg)),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn case_a_examples() {
        let alg = Algebra::classical(1).unwrap();
        let f = op(&alg, &["x0", "2*x1"]);
        let d = DiracOperator::new(&alg, vec![p(&alg, "1"), p(&alg, "x0")]).unwrap();
        assert!(check_case_a(&d, &f).unwrap().pass);

        let d = DiracOperator::standard(&alg);
        let report = check_case_a(&d, &f).unwrap();
        assert!(!report.pass);
        assert_eq!(report.entry("uncoupled[i=1]").unwrap().residual, p(&alg, "1"));

        let constant = op(&alg, &["2", "3"]);
        assert!(check_case_a(&d, &constant).unwrap().pass);

        let coupled = op(&alg, &["x1", "0"]);
        assert!(matches!(
            check_case_a(&d, &coupled),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn monogenic_basis_dimensions() {
        let alg = Algebra::new(AlgebraSignature::new(vec![int(5)], &[]).unwrap());
        let d = DiracOperator::standard(&alg);
        assert_eq!(monogenic_basis(&d, 0).unwrap().len(), 2);
        let basis = monogenic_basis(&d, 1).unwrap();
        assert_eq!(basis.len(), 4);
        assert!(basis.iter().all(|u| d.apply(u).unwrap().is_zero()));

        let alg2 = Algebra::classical(2).unwrap();
        let d2 = DiracOperator::standard(&alg2);
        assert_eq!(monogenic_basis(&d2, 0).unwrap().len(), 4);
        assert_eq!(monogenic_basis(&d2, 1).unwrap().len(), 12);
    }

    #[test]
    fn enumeration_small_cases() {
        let alg = Algebra::classical(2).unwrap();
        let d = DiracOperator::constant(&alg, &[int(2), int(3), int(-1)]).unwrap();
        let real_const = Ansatz { degree: 0, homogeneous: true, algebra_valued: false };
        assert_eq!(enumerate_admissible(&d, real_const).unwrap().dimension, 3);

        let d = DiracOperator::standard(&alg);
        let alg_const = Ansatz { degree: 0, homogeneous: true, algebra_valued: true };
        assert_eq!(enumerate_admissible(&d, alg_const).unwrap().dimension, 7);

        let too_high = Ansatz { degree: 3, homogeneous: true, algebra_valued: false };
        assert!(matches!(enumerate_admissible(&d, too_high), Err(Error::Unsupported(_))));
        let alg3 = Algebra::classical(3).unwrap();
        let d3 = DiracOperator::standard(&alg3);
        let av = Ansatz { degree: 1, homogeneous: true, algebra_valued: true };
        assert!(matches!(enumerate_admissible(&d3, av), Err(Error::Unsupported(_))));
    }

    #[test]
    fn nonconstant_lambda_needs_commutator_term() {
        let alg = Algebra::classical(2).unwrap();
        let d = DiracOperator::new(&alg, vec![p(&alg, "1"), p(&alg, "1+x2"), p(&alg, "1")]).unwrap();
        let f = op(&alg, &["e1", "x2", "e12"]);
        // Without the commutator term all thirteen identities hold.
        for i in 1..=2 {
            assert!(first_order_residual(&d, &f, i).unwrap().is_zero());
        }
        assert!(!empirical_associated(&d, &f, 2).unwrap().pass);
        assert!(!check_case2(&d, &f).unwrap().pass);

        let ansatz = Ansatz { degree: 1, homogeneous: false, algebra_valued: true };
        let basis = enumerate_admissible(&d, ansatz).unwrap();
        assert!(basis.dimension > 0);
        let mono = monogenic_basis(&d, 3).unwrap();
        for f in &basis.operators {
            assert!(oracle_on_basis(&d, f, &mono, 3).unwrap().pass);
        }
    }

    #[test]
    fn classical_two_generator_linear_family() {
        let alg = Algebra::classical(2).unwrap();
        let d = DiracOperator::standard(&alg);
        let ansatz = Ansatz { degree: 1, homogeneous: true, algebra_valued: true };
        let basis = enumerate_admissible(&d, ansatz).unwrap();
        assert_eq!(basis.unknowns, 36);
        assert_eq!(basis.dimension, 13);
    }
}
